mod common;

use missing_why::syntax::{parse_axiom, parse_extended_axiom, parse_ontology, Ontology};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn core_axioms_round_trip(seed in any::<u64>()) {
        let a = common::any_axiom(&mut StdRng::seed_from_u64(seed));
        let printed = a.to_string();
        prop_assert_eq!(parse_axiom(&printed).unwrap(), a, "{}", printed);
    }

    #[test]
    fn extended_axioms_round_trip(seed in any::<u64>()) {
        let a = common::any_ext_axiom(&mut StdRng::seed_from_u64(seed));
        let printed = a.to_string();
        prop_assert_eq!(parse_extended_axiom(&printed).unwrap(), a, "{}", printed);
    }

    #[test]
    fn ontologies_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let o = Ontology::from_axioms((0..5).map(|_| common::any_axiom(&mut rng)));
        let text = o.serialize();
        let back = parse_ontology(&text).unwrap();
        prop_assert_eq!(back.serialize(), text);
        prop_assert!(back.axioms().eq(o.axioms()));
    }
}
