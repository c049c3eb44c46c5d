//! JSON file formats. Elements are 1-based in every file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decomposition::{Classification, Decomposition};
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, DEFAULT_CIRCUIT_BUDGET};
use crate::paving::PavingMatroid;
use crate::quasi::QuasiRep;

/// `{"d", "rank", "circuits", "labels"?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    pub d: usize,
    pub rank: usize,
    pub circuits: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PavingFile {
    pub d: usize,
    pub n: usize,
    pub hyperplanes: Vec<Vec<usize>>,
}

/// `{"d", "n"?, "H"}`; the level may also come from the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiFile {
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "H")]
    pub members: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    pub partition: Vec<Vec<String>>,
    pub classification: Classification,
    pub matroid: MatroidFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub family: String,
    pub params: BTreeMap<String, usize>,
    pub components: Vec<ComponentJson>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn to_sets(d: usize, lists: &[Vec<usize>]) -> Result<Vec<ElementSet>> {
    lists
        .iter()
        .map(|l| {
            if let Some(&bad) = l.iter().find(|&&x| x == 0 || x > d) {
                return Err(Error::Format(format!("label {bad} is outside 1..={d}")));
            }
            Ok(ElementSet::from_one_based(l.iter().copied()).unwrap())
        })
        .collect()
}

fn to_lists(sets: &[ElementSet]) -> Vec<Vec<usize>> {
    sets.iter().map(ElementSet::to_one_based).collect()
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        let circuits = m.circuit_list(DEFAULT_CIRCUIT_BUDGET)?;
        Ok(Self {
            d: m.ground_size(),
            rank: m.rank(),
            circuits: to_lists(&circuits),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: &[String]) -> Self {
        self.labels = Some(labels.iter().enumerate().map(|(i, l)| ((i + 1).to_string(), l.clone())).collect());
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn circuit_sets(&self) -> Result<Vec<ElementSet>> {
        to_sets(self.d, &self.circuits)
    }

    /// Validates the circuit axioms and the declared rank.
    pub fn to_matroid(&self) -> Result<Matroid> {
        Matroid::from_circuits(self.d, self.rank, self.circuit_sets()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

impl PavingFile {
    pub fn from_paving(p: &PavingMatroid) -> Self {
        Self {
            d: p.ground_size(),
            n: p.rank(),
            hyperplanes: to_lists(p.hyperplanes()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn to_paving(&self) -> Result<PavingMatroid> {
        PavingMatroid::new(self.d, self.n, to_sets(self.d, &self.hyperplanes)?)
    }
}

impl QuasiFile {
    pub fn from_rep(rep: &QuasiRep) -> Self {
        Self {
            d: rep.ground_size(),
            n: Some(rep.level()),
            members: to_lists(rep.members()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    /// Builds the rep; `level` overrides the file's `n`.
    pub fn to_rep(&self, level: Option<usize>) -> Result<QuasiRep> {
        let n = level
            .or(self.n)
            .ok_or_else(|| Error::Format("no level n in the file or on the command line".into()))?;
        QuasiRep::new(self.d, n, to_sets(self.d, &self.members)?)
    }
}

impl DecompositionJson {
    pub fn new(family: &str, params: &[(&str, usize)], dec: &Decomposition) -> Result<Self> {
        let components = dec
            .components
            .iter()
            .map(|c| {
                Ok(ComponentJson {
                    partition: dec.labeled_blocks(c),
                    classification: c.classification.clone(),
                    matroid: MatroidFile::from_matroid(&c.matroid)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            family: family.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            components,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::grid_matroid;

    #[test]
    fn matroid_round_trip() {
        let m = grid_matroid(3, 3).unwrap().to_matroid();
        let file = MatroidFile::from_matroid(&m).unwrap();
        let back = MatroidFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        let rebuilt = back.to_matroid().unwrap();
        assert!(rebuilt.same_dependence(&m, 100_000).unwrap());
    }

    #[test]
    fn lenient_reading() {
        let text = r#"{"d": 3, "rank": 1, "circuits": [[3, 1], [2, 1], [3, 2]]}"#;
        let m = MatroidFile::parse(text).unwrap().to_matroid().unwrap();
        assert_eq!(m.is_uniform(), Some((1, 3)));
        let bad = r#"{"d": 3, "rank": 1, "circuits": [[4]]}"#;
        assert!(matches!(MatroidFile::parse(bad).unwrap().to_matroid(), Err(Error::Format(_))));
        assert!(matches!(MatroidFile::parse("{"), Err(Error::Format(_))));
    }

    #[test]
    fn quasi_file_level() {
        let text = r#"{"d": 7, "H": [[1,4,5,6,7],[1,2,3,6,7]]}"#;
        let f = QuasiFile::parse(text).unwrap();
        assert!(f.to_rep(None).is_err());
        let rep = f.to_rep(Some(3)).unwrap();
        assert_eq!(QuasiFile::from_rep(&rep).to_rep(None).unwrap(), rep);
    }

    #[test]
    fn paving_file() {
        let p = grid_matroid(3, 4).unwrap();
        let f = PavingFile::from_paving(&p);
        assert_eq!(f.hyperplanes[0], vec![1, 4, 7, 10]);
        assert_eq!(PavingFile::parse(&serde_json::to_string(&f).unwrap()).unwrap().to_paving().unwrap(), p);
    }
}
