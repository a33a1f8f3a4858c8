//! Save files for the missing entailment and the permitted vocabulary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{parse_axiom, Axiom, ConceptName, IndividualName, RoleName, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryFile {
    pub missing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VocabularyFile {
    pub permitted: Signature,
}

fn invalid(e: serde_json::Error) -> Error {
    Error::InvalidRequest(e.to_string())
}

pub fn query_to_json(missing: &[Axiom]) -> String {
    let f = QueryFile { missing: missing.iter().map(ToString::to_string).collect() };
    serde_json::to_string_pretty(&f).unwrap_or_default()
}

pub fn query_from_json(text: &str) -> Result<Vec<Axiom>> {
    let f: QueryFile = serde_json::from_str(text).map_err(invalid)?;
    f.missing.iter().map(|a| parse_axiom(a)).collect()
}

pub fn vocabulary_to_json(sig: &Signature) -> String {
    serde_json::to_string_pretty(&VocabularyFile { permitted: sig.clone() }).unwrap_or_default()
}

pub fn vocabulary_from_json(text: &str) -> Result<Signature> {
    let f: VocabularyFile = serde_json::from_str(text).map_err(invalid)?;
    Ok(strip_prefixes(&f.permitted))
}

/// Names may be written with or without the leading `:`.
pub fn strip_prefixes(sig: &Signature) -> Signature {
    let strip = |s: &str| s.strip_prefix(':').unwrap_or(s).to_string();
    Signature {
        concepts: sig.concepts.iter().map(|c| ConceptName::new(strip(c.as_str()))).collect(),
        roles: sig.roles.iter().map(|r| RoleName::new(strip(r.as_str()))).collect(),
        individuals: sig.individuals.iter().map(|i| IndividualName::new(strip(i.as_str()))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_round_trip() {
        let missing = vec![parse_axiom("SubClassOf(:A ObjectSomeValuesFrom(:r :B))").unwrap()];
        let text = query_to_json(&missing);
        assert!(text.contains("\"missing\""));
        assert_eq!(query_from_json(&text).unwrap(), missing);
    }

    #[test]
    fn vocabulary_round_trip() {
        let mut sig = Signature::new();
        sig.concepts.insert(ConceptName::new("A"));
        sig.roles.insert(RoleName::new("r"));
        let text = vocabulary_to_json(&sig);
        assert_eq!(
            serde_json::from_str::<serde_json::Value>(&text).unwrap(),
            serde_json::json!({"permitted": {"concepts": ["A"], "roles": ["r"], "individuals": []}})
        );
        assert_eq!(vocabulary_from_json(&text).unwrap(), sig);
        let prefixed = r#"{"permitted":{"concepts":[":A"],"roles":[":r"],"individuals":[]}}"#;
        assert_eq!(vocabulary_from_json(prefixed).unwrap(), sig);
    }

    #[test]
    fn bad_axiom_in_query_file() {
        let err = query_from_json(r#"{"missing":["SubClassOf(:A"]}"#).unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }
}
