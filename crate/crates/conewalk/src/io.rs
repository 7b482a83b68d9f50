//! JSON file formats: lattices with named vectors, and cones.
//!
//! Rationals serialize as strings, "p" for integers and "p/q" otherwise,
//! so outputs stay exact and byte-stable. Input also accepts plain JSON
//! integers for convenience.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num::One;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::cones::{Cone, Halfspace};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mat::{QMat, QVec, Q, Z};

/// Exact rational carried through serde as a "p/q" string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qs(pub Q);

pub fn q_to_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = Z::from_str(num).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    match den {
        None => Ok(Q::from_integer(n)),
        Some(d) => {
            let d = Z::from_str(d).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if d == Z::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
    }
}

impl Serialize for Qs {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&q_to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for Qs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QsVisitor;
        impl<'de> Visitor<'de> for QsVisitor {
            type Value = Qs;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" string or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Qs, E> {
                parse_q(v).map(Qs).map_err(|e| E::custom(e.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Qs, E> {
                Ok(Qs(Q::from_integer(Z::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Qs, E> {
                Ok(Qs(Q::from_integer(Z::from(v))))
            }
        }
        deserializer.deserialize_any(QsVisitor)
    }
}

pub fn wrap_vec(v: &[Q]) -> Vec<Qs> {
    v.iter().map(|x| Qs(x.clone())).collect()
}

pub fn unwrap_vec(v: &[Qs]) -> QVec {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub label: String,
    pub rank: usize,
    pub gram: Vec<Vec<Qs>>,
    #[serde(default)]
    pub named_vectors: BTreeMap<String, Vec<Qs>>,
}

impl LatticeFile {
    pub fn from_lattice(lat: &Lattice, named: &BTreeMap<String, QVec>) -> LatticeFile {
        let n = lat.rank();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| Qs(lat.gram()[(i, j)].clone())).collect())
            .collect();
        LatticeFile {
            label: lat.label().unwrap_or("").to_string(),
            rank: n,
            gram,
            named_vectors: named.iter().map(|(k, v)| (k.clone(), wrap_vec(v))).collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<(Lattice, BTreeMap<String, QVec>)> {
        let n = self.rank;
        if self.gram.len() != n || self.gram.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!(
                "gram must be {n}x{n} to match the declared rank"
            )));
        }
        let mut gram = QMat::zero(n, n);
        for (i, row) in self.gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                gram[(i, j)] = x.0.clone();
            }
        }
        let label = if self.label.is_empty() { None } else { Some(self.label.clone()) };
        let lat = Lattice::new(gram, label)?;
        let mut named = BTreeMap::new();
        for (name, v) in &self.named_vectors {
            if v.len() != n {
                return Err(Error::Parse(format!(
                    "named vector {name:?} has length {}, expected {n}",
                    v.len()
                )));
            }
            named.insert(name.clone(), unwrap_vec(v));
        }
        Ok((lat, named))
    }

    pub fn load(path: &Path) -> Result<(Lattice, BTreeMap<String, QVec>)> {
        let text = std::fs::read_to_string(path)?;
        let file: LatticeFile = serde_json::from_str(&text)?;
        file.to_lattice()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeFile {
    #[serde(default)]
    pub generators: Vec<Vec<Qs>>,
    #[serde(default)]
    pub halfspaces: Vec<Vec<Qs>>,
    #[serde(default)]
    pub strict: Vec<bool>,
    pub reference: Vec<Qs>,
}

impl ConeFile {
    pub fn to_cone(&self, lat: &Lattice) -> Result<Cone> {
        let reference = unwrap_vec(&self.reference);
        if !self.generators.is_empty() {
            let gens = self.generators.iter().map(|g| unwrap_vec(g)).collect();
            Cone::from_generators(lat, gens, reference)
        } else if !self.halfspaces.is_empty() {
            if !self.strict.is_empty() && self.strict.len() != self.halfspaces.len() {
                return Err(Error::Parse(
                    "strict flags must match the halfspace count".into(),
                ));
            }
            let hs = self
                .halfspaces
                .iter()
                .enumerate()
                .map(|(i, n)| Halfspace {
                    normal: unwrap_vec(n),
                    strict: self.strict.get(i).copied().unwrap_or(false),
                })
                .collect();
            Cone::from_halfspaces(lat, hs, reference)
        } else {
            Err(Error::NoGenerators)
        }
    }

    pub fn load(path: &Path, lat: &Lattice) -> Result<Cone> {
        let text = std::fs::read_to_string(path)?;
        let file: ConeFile = serde_json::from_str(&text)?;
        file.to_cone(lat)
    }
}

/// Parse "1,0,-2" or "1/2,0,3" as a rational vector.
pub fn parse_qvec(s: &str) -> Result<QVec> {
    s.split(',').map(parse_q).collect()
}

/// Resolve a vector argument: a name from the lattice file, or inline
/// comma-separated coordinates.
pub fn resolve_vector(
    arg: &str,
    named: &BTreeMap<String, QVec>,
    rank: usize,
) -> Result<QVec> {
    if let Some(v) = named.get(arg) {
        return Ok(v.clone());
    }
    let v = parse_qvec(arg).map_err(|_| Error::UnknownName(arg.to_string()))?;
    if v.len() != rank {
        return Err(Error::Parse(format!(
            "vector {arg:?} has length {}, expected {rank}",
            v.len()
        )));
    }
    Ok(v)
}
