//! Persistence barcodes by boundary-matrix reduction over GF(2).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::filtration::FilteredComplex;
use crate::semimetric::ExtReal;

/// Half-open interval `[birth, death)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub birth: f64,
    pub death: ExtReal,
}

impl Bar {
    pub fn is_infinite(&self) -> bool {
        !self.death.is_finite()
    }

    pub fn contains(&self, eps: f64) -> bool {
        self.birth <= eps && eps < self.death.to_f64()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Barcode {
    dims: Vec<Vec<Bar>>,
}

impl Barcode {
    pub fn from_bars(max_dim: usize, bars: impl IntoIterator<Item = (usize, Bar)>) -> Self {
        let mut dims = vec![Vec::new(); max_dim + 1];
        for (d, bar) in bars {
            if d >= dims.len() {
                dims.resize(d + 1, Vec::new());
            }
            dims[d].push(bar);
        }
        for bars in &mut dims {
            bars.sort_by(|a, b| {
                a.birth
                    .total_cmp(&b.birth)
                    .then(a.death.to_f64().total_cmp(&b.death.to_f64()))
            });
        }
        Self { dims }
    }

    /// Drops every dimension above `max_dim`.
    pub fn truncated(mut self, max_dim: usize) -> Self {
        self.dims.truncate(max_dim + 1);
        self
    }

    /// Highest dimension with a (possibly empty) bar list.
    pub fn max_dim(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn bars(&self, dim: usize) -> &[Bar] {
        self.dims.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Bar)> {
        self.dims
            .iter()
            .enumerate()
            .flat_map(|(d, bars)| bars.iter().map(move |b| (d, b)))
    }

    pub fn len(&self) -> usize {
        self.dims.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn finite_count(&self, dim: usize) -> usize {
        self.bars(dim).iter().filter(|b| !b.is_infinite()).count()
    }

    pub fn infinite_count(&self, dim: usize) -> usize {
        self.bars(dim).iter().filter(|b| b.is_infinite()).count()
    }

    /// Largest finite birth or death value, if any bar has one.
    pub fn largest_finite_endpoint(&self) -> Option<f64> {
        self.iter()
            .flat_map(|(_, b)| [Some(b.birth), b.death.finite()])
            .flatten()
            .filter(|v| *v > 0.0)
            .reduce(f64::max)
    }

    /// `{"dims": {"0": [[b, d|"inf"], ...], ...}}`
    pub fn to_json(&self) -> serde_json::Value {
        let dims: BTreeMap<String, Vec<serde_json::Value>> = self
            .dims
            .iter()
            .enumerate()
            .map(|(d, bars)| {
                (
                    d.to_string(),
                    bars.iter().map(|b| json!([b.birth, b.death])).collect(),
                )
            })
            .collect();
        json!({ "dims": dims })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |msg: &str| Error::MalformedBarcode(msg.to_string());
        let dims = value
            .get("dims")
            .and_then(|d| d.as_object())
            .ok_or_else(|| bad("missing `dims` object"))?;
        let mut bars = Vec::new();
        let mut max_dim = 0;
        for (key, list) in dims {
            let d: usize = key.parse().map_err(|_| bad("non-integer dimension key"))?;
            max_dim = max_dim.max(d);
            for pair in list.as_array().ok_or_else(|| bad("bar list is not an array"))? {
                let (birth, death): (f64, ExtReal) = serde_json::from_value(pair.clone())
                    .map_err(|e| Error::MalformedBarcode(e.to_string()))?;
                if death.to_f64() < birth {
                    return Err(bad("bar dies before it is born"));
                }
                bars.push((d, Bar { birth, death }));
            }
        }
        Ok(Self::from_bars(max_dim, bars))
    }
}

/// Betti numbers at one scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BettiProfile {
    pub epsilon: f64,
    pub betti: Vec<usize>,
}

pub fn betti_at(bc: &Barcode, epsilon: f64) -> BettiProfile {
    BettiProfile {
        epsilon,
        betti: (0..=bc.max_dim())
            .map(|d| bc.bars(d).iter().filter(|b| b.contains(epsilon)).count())
            .collect(),
    }
}

/// Dense GF(2) column; the pivot is the highest set bit.
#[derive(Debug, Clone, Default)]
struct BitColumn {
    words: Vec<u64>,
}

impl BitColumn {
    fn from_indices(indices: impl IntoIterator<Item = usize>, len: usize) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for i in indices {
            words[i / 64] ^= 1 << (i % 64);
        }
        Self { words }
    }

    fn pivot(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    fn add(&mut self, other: &BitColumn) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
}

/// Standard persistence pairing with the clearing optimization: columns are
/// reduced from the top dimension down, and every pivot row found in
/// dimension `d` is a zero column in dimension `d - 1`.
pub fn compute_barcode(fc: &FilteredComplex) -> Barcode {
    let simplices = fc.simplices();
    let m = simplices.len();
    let index = fc.index();
    let mut columns: Vec<BitColumn> = simplices
        .iter()
        .map(|s| BitColumn::from_indices(s.faces().map(|f| index[f.as_slice()]), m))
        .collect();

    let top = simplices.iter().map(|s| s.dim()).max().unwrap_or(0);
    let mut pivot_owner: Vec<Option<usize>> = vec![None; m];
    let mut cleared = vec![false; m];

    for d in (1..=top).rev() {
        for j in 0..m {
            if simplices[j].dim() != d || cleared[j] {
                continue;
            }
            let mut col = std::mem::take(&mut columns[j]);
            while let Some(p) = col.pivot() {
                match pivot_owner[p] {
                    Some(k) => col.add(&columns[k]),
                    None => break,
                }
            }
            if let Some(p) = col.pivot() {
                pivot_owner[p] = Some(j);
                cleared[p] = true;
                columns[p].clear();
            }
            columns[j] = col;
        }
    }

    let mut bars = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        if columns[i].pivot().is_some() {
            continue; // negative simplex
        }
        let death = match pivot_owner[i] {
            Some(j) => {
                let d = simplices[j].birth;
                if d <= s.birth {
                    continue;
                }
                ExtReal::Finite(d)
            }
            None => ExtReal::Infinite,
        };
        bars.push((
            s.dim(),
            Bar {
                birth: s.birth,
                death,
            },
        ));
    }
    Barcode::from_bars(fc.max_dim(), bars)
}
