//! Entanglement semi-metrics on the qubit point cloud.
//!
//! `D(i, j) = 1 / E(i, j)` uses pair entanglement only. `D̃(i, j)` adds the
//! product of `E(S ∪ {i}, S̄ ∪ {j})` over every subset `S` of the remaining
//! qubits, so it is finite whenever `i` and `j` sit in the same entangled
//! block. Neither satisfies the triangle inequality.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::monotones::{evaluate, MonotoneKind, MonotoneSettings, MonotoneValue};
use crate::statevec::{Bipartition, PureState};

/// Non-negative real or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinite => None,
        }
    }

    /// `f64::INFINITY` for the infinite case.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    pub fn from_f64(v: f64) -> Self {
        if v.is_finite() {
            ExtReal::Finite(v)
        } else {
            ExtReal::Infinite
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(ExtReal::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(ExtReal::Infinite),
            Repr::Str(s) => Err(de::Error::custom(format!("expected number or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceKind {
    #[serde(rename = "D")]
    D,
    #[serde(rename = "Dtilde")]
    Dtilde,
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" => Ok(DistanceKind::D),
            "dtilde" => Ok(DistanceKind::Dtilde),
            other => Err(Error::Config(format!("unknown distance `{other}`"))),
        }
    }
}

/// Symmetric matrix of extended-real distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    which: Option<DistanceKind>,
    kind: Option<MonotoneKind>,
    entries: Vec<Vec<ExtReal>>,
}

impl DistanceMatrix {
    /// Builds a matrix from a function of the unordered pair `i < j`.
    pub fn from_pairs(n: usize, mut f: impl FnMut(usize, usize) -> ExtReal) -> Result<Self> {
        let mut entries = vec![vec![ExtReal::Finite(0.0); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                entries[i][j] = d;
                entries[j][i] = d;
            }
        }
        Self::from_rows(entries)
    }

    pub fn from_rows(entries: Vec<Vec<ExtReal>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Config(format!("row {i} has length {}", row.len())));
            }
            if row[i] != ExtReal::Finite(0.0) {
                return Err(Error::Config(format!("diagonal entry {i} is not 0")));
            }
            for (j, d) in row.iter().enumerate() {
                if *d != entries[j][i] {
                    return Err(Error::Config(format!("asymmetric entry ({i}, {j})")));
                }
                if i != j {
                    if let ExtReal::Finite(v) = d {
                        if !(*v > 0.0 && v.is_finite()) {
                            return Err(Error::Config(format!(
                                "off-diagonal entry ({i}, {j}) = {v} is not positive"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self {
            n,
            which: None,
            kind: None,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> ExtReal {
        self.entries[i][j]
    }

    pub fn which(&self) -> Option<DistanceKind> {
        self.which
    }

    pub fn kind(&self) -> Option<MonotoneKind> {
        self.kind
    }

    pub fn rows(&self) -> &[Vec<ExtReal>] {
        &self.entries
    }

    /// Old point `q` becomes point `perm[q]`.
    pub fn relabeled(&self, perm: &[usize]) -> DistanceMatrix {
        let mut entries = self.entries.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                entries[perm[i]][perm[j]] = self.entries[i][j];
            }
        }
        DistanceMatrix {
            entries,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "which": self.which,
            "kind": self.kind,
            "entries": self.entries,
        })
    }
}

/// Memoizes monotone values per unordered cut.
struct CutCache<'a> {
    state: &'a PureState,
    settings: &'a MonotoneSettings,
    values: HashMap<Bipartition, MonotoneValue>,
}

impl<'a> CutCache<'a> {
    fn new(state: &'a PureState, settings: &'a MonotoneSettings) -> Self {
        Self {
            state,
            settings,
            values: HashMap::new(),
        }
    }

    /// `E(a, b)` with zero-flagged values mapped to exactly 0.
    fn value(&mut self, a: &[usize], b: &[usize]) -> Result<f64> {
        let bp = Bipartition::new(a, b, self.state.n())?.canonical();
        let v = match self.values.get(&bp) {
            Some(v) => *v,
            None => {
                let v = evaluate(self.state, &bp, self.settings)?;
                self.values.insert(bp, v);
                v
            }
        };
        Ok(if v.is_zero { 0.0 } else { v.value })
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.state.n();
        if i == j {
            return Err(Error::DiagonalQuery(i));
        }
        if i >= n || j >= n {
            return Err(Error::BadSubset(format!("pair ({i}, {j}) out of range for n = {n}")));
        }
        Ok(())
    }

    fn d(&mut self, i: usize, j: usize) -> Result<ExtReal> {
        self.check_pair(i, j)?;
        let e = self.value(&[i], &[j])?;
        Ok(self.invert(e))
    }

    fn dtilde(&mut self, i: usize, j: usize) -> Result<ExtReal> {
        self.check_pair(i, j)?;
        let n = self.state.n();
        let others: Vec<usize> = (0..n).filter(|&q| q != i && q != j).collect();
        let mut product = 1.0;
        for mask in 0u32..(1 << others.len()) {
            let mut side_i = vec![i];
            let mut side_j = vec![j];
            for (bit, &q) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    side_i.push(q);
                } else {
                    side_j.push(q);
                }
            }
            product *= self.value(&side_i, &side_j)?;
            if product == 0.0 {
                break;
            }
        }
        let denominator = self.value(&[i], &[j])? + product;
        Ok(self.invert(denominator))
    }

    fn invert(&self, denominator: f64) -> ExtReal {
        if denominator < self.settings.zero_eps {
            ExtReal::Infinite
        } else {
            ExtReal::Finite(1.0 / denominator)
        }
    }
}

/// `D(i, j) = 1 / E(i, j)`, or `+∞` when the pair is unentangled.
pub fn distance_d(
    state: &PureState,
    i: usize,
    j: usize,
    settings: &MonotoneSettings,
) -> Result<ExtReal> {
    CutCache::new(state, settings).d(i, j)
}

/// `D̃(i, j) = 1 / [E(i, j) + Π_S E(S ∪ {i}, S̄ ∪ {j})]`.
pub fn distance_dtilde(
    state: &PureState,
    i: usize,
    j: usize,
    settings: &MonotoneSettings,
) -> Result<ExtReal> {
    CutCache::new(state, settings).dtilde(i, j)
}

pub fn distance_matrix(
    state: &PureState,
    which: DistanceKind,
    settings: &MonotoneSettings,
) -> Result<DistanceMatrix> {
    let n = state.n();
    let mut cache = CutCache::new(state, settings);
    let mut entries = vec![vec![ExtReal::Finite(0.0); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = match which {
                DistanceKind::D => cache.d(i, j)?,
                DistanceKind::Dtilde => cache.dtilde(i, j)?,
            };
            entries[i][j] = d;
            entries[j][i] = d;
        }
    }
    Ok(DistanceMatrix {
        n,
        which: Some(which),
        kind: Some(settings.kind),
        entries,
    })
}
