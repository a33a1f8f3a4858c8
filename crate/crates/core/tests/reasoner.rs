mod common;

use common::{brute_force, Query};
use missing_why::reasoner::{canonical_model, entails, is_consistent, model_satisfies, normalize, Reasoner};
use missing_why::syntax::{parse_axiom, parse_axioms, parse_ontology, Axiom, Concept, Ontology};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn queries(rng: &mut StdRng) -> Vec<Query> {
    let mut qs: Vec<Query> = (0..4).map(|_| {
        let (c, d) = (common::concept(rng, 1), common::concept(rng, 1));
        Query::Gci(c, d)
    }).collect();
    qs.push(Query::Instance(common::concept(rng, 1), common::individual(rng)));
    qs
}

fn as_axiom(q: &Query) -> Axiom {
    match q {
        Query::Gci(c, d) => Axiom::SubClassOf(c.clone(), d.clone()),
        Query::Instance(c, a) => Axiom::ClassAssertion(c.clone(), a.clone()),
    }
}

#[test]
fn agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut inconsistent, mut yes, mut no) = (0, 0, 0);
    for round in 0..300 {
        let o = common::random_ontology(&mut rng, 6, 1, true);
        let qs = queries(&mut rng);
        let (consistent, expected) = brute_force(&o, &qs);
        assert_eq!(is_consistent(&o).unwrap(), consistent, "round {round}\n{o}");
        inconsistent += usize::from(!consistent);
        for (q, want) in qs.iter().zip(expected) {
            let ax = as_axiom(q);
            assert_eq!(entails(&o, &ax).unwrap(), want, "round {round}: {ax}\n{o}");
            if consistent {
                if want { yes += 1 } else { no += 1 }
            }
        }
    }
    assert!(inconsistent > 0 && yes > 50 && no > 50, "{inconsistent} {yes} {no}");
}

#[test]
fn normalization_is_conservative() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let o = common::random_ontology(&mut rng, 6, 2, false);
        let normal: Vec<Axiom> = normalize(o.axioms()).axioms.iter().map(|a| a.to_axiom()).collect();
        let mut before = Reasoner::from_ontology(&o);
        let mut after = Reasoner::from_axioms(&normal);
        for a in common::NAMES {
            for b in common::NAMES {
                let (a, b) = (Concept::name(a), Concept::name(b));
                assert_eq!(before.subsumes(&a, &b).unwrap(), after.subsumes(&a, &b).unwrap());
            }
        }
    }
}

#[test]
fn canonical_model_is_a_model_and_refutes_non_subsumptions() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..200 {
        let o = common::random_ontology(&mut rng, 6, 2, false);
        let tbox: Vec<Axiom> = o.axioms().cloned().collect();
        let (a, b) = common::random_name_gci(&mut rng);
        let mut r = Reasoner::from_ontology(&o);
        if !r.is_satisfiable(&a).unwrap() {
            continue;
        }
        let m = canonical_model(&tbox, &[a.clone()]).unwrap();
        for ax in &tbox {
            assert!(model_satisfies(&m, ax).unwrap(), "{ax}\n{o}");
        }
        let entailed = r.subsumes(&a, &b).unwrap();
        assert_eq!(!entailed, !m.is_instance(0, &b));
    }
}

#[test]
fn saturation_is_monotone_under_additions() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..100 {
        let o = common::random_ontology(&mut rng, 5, 2, false);
        let mut r = Reasoner::from_ontology(&o);
        let pairs: Vec<(Concept, Concept)> =
            (0..8).map(|_| (common::name(&mut rng), common::concept(&mut rng, 1))).collect();
        let before = r.subsumes_all(&pairs).unwrap();
        r.add_axiom(&common::tbox_axiom(&mut rng, 2));
        let after = r.subsumes_all(&pairs).unwrap();
        for (b, a) in before.iter().zip(&after) {
            assert!(!b || *a);
        }
        let mut fresh = Reasoner::from_ontology(&o);
        let again = fresh.subsumes_all(&pairs).unwrap();
        assert_eq!(before, again);
    }
}

#[test]
fn incremental_matches_from_scratch() {
    let mut rng = StdRng::seed_from_u64(19);
    for _ in 0..100 {
        let axioms: Vec<Axiom> = (0..rng.gen_range(2..7)).map(|_| common::tbox_axiom(&mut rng, 2)).collect();
        let mut inc = Reasoner::new();
        let pairs: Vec<(Concept, Concept)> =
            (0..6).map(|_| (common::concept(&mut rng, 1), common::concept(&mut rng, 1))).collect();
        for ax in &axioms {
            inc.add_axiom(ax);
            inc.subsumes_all(&pairs).unwrap();
        }
        let mut scratch = Reasoner::from_axioms(&axioms);
        assert_eq!(inc.subsumes_all(&pairs).unwrap(), scratch.subsumes_all(&pairs).unwrap());
    }
}

#[test]
fn documented_examples() {
    let o = parse_ontology("SubClassOf(:A :B)\nSubClassOf(:B :C)").unwrap();
    assert!(entails(&o, &parse_axiom("SubClassOf(:A :C)").unwrap()).unwrap());
    let tbox = parse_axioms("SubClassOf(:A ObjectSomeValuesFrom(:r :B))").unwrap();
    let m = canonical_model(&tbox, &[Concept::name("A")]).unwrap();
    assert_eq!(m.len(), 2);
    assert!(is_consistent(&Ontology::new()).unwrap());
}
