//! Group descriptions as read from the command line or a JSON file.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{CoxeterMatrix, CoxeterSystem, GroupType};
use crate::sorting::CoxeterElement;

/// A group given by type and rank, or by an explicit Coxeter matrix
/// (`null` entries stand for infinity), with an optional Coxeter word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// The label of a dihedral group `I2(m)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Option<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coxeter_word: Option<Vec<usize>>,
}

impl GroupSpec {
    pub fn named(t: GroupType) -> Self {
        let (letter, rank, m) = match t {
            GroupType::I2(m) => ("I".to_string(), 2, Some(m)),
            other => {
                let s = other.to_string();
                (s[..1].to_string(), other.rank(), None)
            }
        };
        GroupSpec { kind: Some(letter), rank: Some(rank), m, matrix: None, coxeter_word: None }
    }

    /// Accepts a JSON object, a path to a file holding one, or a short
    /// name such as `B4` or `I2(5)`.
    pub fn parse(input: &str) -> Result<Self> {
        let text = input.trim();
        if text.starts_with('{') {
            return Self::from_json(text);
        }
        let path = Path::new(text);
        if path.is_file() {
            let body = std::fs::read_to_string(path).map_err(|e| Error::InvalidSpec(format!("{text}: {e}")))?;
            return Self::from_json(&body);
        }
        GroupType::parse(text).map(Self::named)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        match (&spec.kind, &spec.matrix) {
            (Some(_), None) | (None, Some(_)) => Ok(spec),
            _ => Err(Error::InvalidSpec("give exactly one of \"type\" and \"matrix\"".into())),
        }
    }

    pub fn matrix(&self) -> Result<CoxeterMatrix> {
        match (&self.kind, &self.matrix) {
            (Some(letter), None) => {
                let rank = self.rank.ok_or_else(|| Error::InvalidSpec("missing \"rank\"".into()))?;
                Ok(GroupType::from_parts(letter, rank, self.m)?.matrix())
            }
            (None, Some(rows)) => CoxeterMatrix::from_rows(rows),
            _ => Err(Error::InvalidSpec("give exactly one of \"type\" and \"matrix\"".into())),
        }
    }

    /// Named specs keep their type, which the classical models need.
    pub fn system(&self) -> Result<CoxeterSystem> {
        match (&self.kind, self.rank) {
            (Some(letter), Some(rank)) if self.matrix.is_none() => {
                CoxeterSystem::of_type(GroupType::from_parts(letter, rank, self.m)?)
            }
            _ => CoxeterSystem::build(&self.matrix()?),
        }
    }

    /// The spec's Coxeter word, or `s0 s1 ... s(n-1)`.
    pub fn coxeter_element(&self, sys: &CoxeterSystem) -> Result<CoxeterElement> {
        match &self.coxeter_word {
            Some(w) => CoxeterElement::full(sys, w),
            None => Ok(CoxeterElement::standard(sys)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_matrix_forms_agree() {
        let a = GroupSpec::parse(r#"{"type":"B","rank":2}"#).unwrap();
        let b = GroupSpec::parse(r#"{"matrix":[[1,4],[4,1]]}"#).unwrap();
        let c = GroupSpec::parse("B2").unwrap();
        assert_eq!(a, c);
        assert_eq!(a.matrix().unwrap(), b.matrix().unwrap());
        assert_eq!(a.system().unwrap().kind(), Some(GroupType::B(2)));
        assert_eq!(b.system().unwrap().kind(), None);
    }

    #[test]
    fn dihedral_and_words() {
        let s = GroupSpec::parse(r#"{"type":"I","rank":2,"m":5,"coxeter_word":[1,0]}"#).unwrap();
        let sys = s.system().unwrap();
        assert_eq!(sys.num_reflections(), 5);
        assert_eq!(s.coxeter_element(&sys).unwrap().word(), &[1, 0]);
        assert_eq!(GroupSpec::parse("I2(5)").unwrap().m, Some(5));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GroupSpec::parse(r#"{"type":"B"}"#).unwrap().matrix().is_err());
        assert!(GroupSpec::parse(r#"{"type":"B","rank":2,"matrix":[[1]]}"#).is_err());
        assert!(GroupSpec::parse(r#"{"colour":"B"}"#).is_err());
        assert!(GroupSpec::parse("Q7").is_err());
        let inf = GroupSpec::parse(r#"{"matrix":[[1,null],[null,1]]}"#).unwrap();
        assert!(matches!(inf.system(), Err(Error::NotFinite(_)) | Err(Error::MalformedMatrix(_))));
        let s = GroupSpec::parse(r#"{"type":"A","rank":2,"coxeter_word":[0,0]}"#).unwrap();
        assert!(s.coxeter_element(&s.system().unwrap()).is_err());
    }
}
