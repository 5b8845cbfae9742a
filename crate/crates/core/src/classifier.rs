//! Barcode signatures, final-graph canonical forms and class lookup.
//!
//! Classification only looks at bar counts per dimension (plus the graph of
//! finite distances as a sub-variant); bar endpoints depend on the chosen
//! monotone and are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::ComplexKind;
use crate::homology::Barcode;
use crate::semimetric::DistanceMatrix;

const CLASS_TABLE_JSON: &str = include_str!("../resources/class_table.json");

/// Relative tolerance used to group equal H0 death values.
const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Separability,
    GenuineRips,
    GenuineCech,
}

impl Scheme {
    pub fn for_complex(kind: ComplexKind) -> Self {
        match kind {
            ComplexKind::Rips => Scheme::GenuineRips,
            ComplexKind::Cech => Scheme::GenuineCech,
        }
    }
}

/// Per-dimension `(finite, infinite)` bar counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarcodeSignature {
    counts: Vec<(usize, usize)>,
    /// Number of H0 bars dying at each distinct finite death value, in
    /// increasing order of death. Informational only.
    h0_merges: Vec<usize>,
}

impl BarcodeSignature {
    pub fn from_barcode(bc: &Barcode) -> Self {
        let mut counts: Vec<(usize, usize)> = (0..=bc.max_dim())
            .map(|d| (bc.finite_count(d), bc.infinite_count(d)))
            .collect();
        while counts.len() > 1 && counts.last() == Some(&(0, 0)) {
            counts.pop();
        }
        let mut deaths: Vec<f64> = bc.bars(0).iter().filter_map(|b| b.death.finite()).collect();
        deaths.sort_by(f64::total_cmp);
        let mut h0_merges: Vec<usize> = Vec::new();
        let mut last: Option<f64> = None;
        for d in deaths {
            match last {
                Some(l) if (d - l).abs() <= MERGE_TOL * l.abs().max(1.0) => {
                    *h0_merges.last_mut().expect("group exists") += 1;
                }
                _ => h0_merges.push(1),
            }
            last = Some(d);
        }
        Self { counts, h0_merges }
    }

    pub fn counts(&self) -> &[(usize, usize)] {
        &self.counts
    }

    pub fn h0_merges(&self) -> &[usize] {
        &self.h0_merges
    }

    pub fn finite(&self, dim: usize) -> usize {
        self.counts.get(dim).map_or(0, |c| c.0)
    }

    pub fn infinite(&self, dim: usize) -> usize {
        self.counts.get(dim).map_or(0, |c| c.1)
    }

    /// Compact key such as `H0:3f1i,H1:1f0i`; trailing empty dimensions and
    /// interior ones without bars are omitted.
    pub fn key(&self) -> String {
        self.counts
            .iter()
            .enumerate()
            .filter(|(d, c)| *d == 0 || **c != (0, 0))
            .map(|(d, (f, i))| format!("H{d}:{f}f{i}i"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for BarcodeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl FromStr for BarcodeSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedBarcode(format!("bad signature `{s}`"));
        let mut by_dim = BTreeMap::new();
        for part in s.split(',') {
            let (dim, counts) = part.strip_prefix('H').and_then(|p| p.split_once(':')).ok_or_else(bad)?;
            let dim: usize = dim.parse().map_err(|_| bad())?;
            let (f, rest) = counts.split_once('f').ok_or_else(bad)?;
            let i = rest.strip_suffix('i').ok_or_else(bad)?;
            by_dim.insert(dim, (f.parse().map_err(|_| bad())?, i.parse().map_err(|_| bad())?));
        }
        let top = *by_dim.keys().last().ok_or_else(bad)?;
        let counts = (0..=top).map(|d| by_dim.get(&d).copied().unwrap_or((0, 0))).collect();
        Ok(Self {
            counts,
            h0_merges: Vec::new(),
        })
    }
}

impl Serialize for BarcodeSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

/// Graph on the points with an edge for every finite distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    canonical_code: String,
}

impl FinalGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let edges: Vec<_> = set.into_iter().collect();
        let canonical_code = canonical_code(n, &edges);
        Self {
            n,
            edges,
            canonical_code,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Lexicographically smallest upper-triangle adjacency string over all
    /// vertex relabelings, pairs ordered (0,1), (0,2), …, (n-2,n-1).
    pub fn canonical_code(&self) -> &str {
        &self.canonical_code
    }

    /// Connected components as sorted vertex lists, ordered by first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Human-readable isomorphism class, e.g. `P3+K1` or `paw`.
    pub fn name(&self) -> String {
        let mut parts: Vec<(usize, String)> = self
            .components()
            .into_iter()
            .map(|comp| {
                let e = self
                    .edges
                    .iter()
                    .filter(|(a, _)| comp.contains(a))
                    .count();
                let max_deg = comp
                    .iter()
                    .map(|v| self.edges.iter().filter(|(a, b)| a == v || b == v).count())
                    .max()
                    .unwrap_or(0);
                (comp.len(), component_name(comp.len(), e, max_deg))
            })
            .collect();
        parts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        parts.into_iter().map(|(_, name)| name).collect::<Vec<_>>().join("+")
    }
}

fn component_name(v: usize, e: usize, max_deg: usize) -> String {
    match (v, e, max_deg) {
        (1, 0, _) => "K1".into(),
        (2, 1, _) => "K2".into(),
        (3, 2, _) => "P3".into(),
        (3, 3, _) => "K3".into(),
        (4, 3, 3) => "S3".into(),
        (4, 3, _) => "P4".into(),
        (4, 4, 2) => "C4".into(),
        (4, 4, _) => "paw".into(),
        (4, 5, _) => "diamond".into(),
        (4, 6, _) => "K4".into(),
        (v, e, _) if e == v * (v - 1) / 2 => format!("K{v}"),
        (v, e, _) => format!("G{v}e{e}"),
    }
}

fn canonical_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut best: Option<Vec<bool>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    // perm[old] = new; code reads the permuted graph's upper triangle.
    let mut code_of = |perm: &[usize]| {
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                code.push(adj[inv[i]][inv[j]]);
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    };
    heap_permutations(&mut perm, &mut code_of);
    best.unwrap_or_default()
        .into_iter()
        .map(|b| if b { '1' } else { '0' })
        .collect()
}

/// Visits every permutation of `items` (Heap's algorithm).
pub(crate) fn heap_permutations(items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn final_graph(dm: &DistanceMatrix) -> FinalGraph {
    let n = dm.n();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| dm.get(i, j).is_finite());
    FinalGraph::new(n, edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassLabel {
    pub scheme: Scheme,
    pub label: String,
    /// Isomorphism class of the final graph, when one was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    /// Whether the (signature, graph) pair appears verbatim in the class table.
    pub known_variant: bool,
}

impl ClassLabel {
    fn new(scheme: Scheme, label: impl Into<String>) -> Self {
        Self {
            scheme,
            label: label.into(),
            variant: None,
            known_variant: true,
        }
    }

    /// Trailing `B<k>` barcode id of four-qubit genuine labels.
    pub fn barcode_id(&self) -> Option<&str> {
        let tail = self.label.rsplit(['/', '-']).next()?;
        (tail.starts_with('B') && tail[1..].chars().all(|c| c.is_ascii_digit())).then_some(tail)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variant {
            Some(v) => write!(f, "{}/graph-{}", self.label, v),
            None => f.write_str(&self.label),
        }
    }
}

/// Separability class read off the infinite H0 bars of a D̃ barcode.
pub fn separability_class(
    bc: &Barcode,
    n: usize,
    graph: Option<&FinalGraph>,
) -> Result<ClassLabel> {
    let c = bc.infinite_count(0);
    if c == 0 || c > n {
        return Err(Error::MalformedBarcode(format!(
            "{c} infinite H0 bars for {n} qubits"
        )));
    }
    let label = match (n, c) {
        (_, c) if c == n => "product".to_string(),
        (_, 1) => "fully-inseparable".to_string(),
        (3, 2) => "bi-separable".to_string(),
        (4, 3) => "tri-separable".to_string(),
        (4, 2) => {
            let pair_pair = graph.is_some_and(|g| {
                let comps = g.components();
                comps.len() == 2 && comps.iter().all(|c| c.len() == 2)
            });
            if pair_pair {
                "bi-separable(2+2)".to_string()
            } else {
                "bi-separable".to_string()
            }
        }
        (_, c) => format!("{c}-separable"),
    };
    Ok(ClassLabel::new(Scheme::Separability, label))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub scheme: Scheme,
    pub signature: String,
    pub canonical_code: String,
    pub label: String,
    pub source: String,
}

/// Lookup from barcode signature (and final graph) to class label.
#[derive(Debug, Clone)]
pub struct ClassTable {
    entries: Vec<ClassEntry>,
    by_signature: BTreeMap<(Scheme, String), String>,
}

impl ClassTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<ClassEntry> =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("class table: {e}")))?;
        Self::from_entries(entries)
    }

    pub fn from_entries(entries: Vec<ClassEntry>) -> Result<Self> {
        let mut by_signature = BTreeMap::new();
        for e in &entries {
            let key = e.signature.parse::<BarcodeSignature>()?.key();
            if let Some(prev) = by_signature.insert((e.scheme, key.clone()), e.label.clone()) {
                if prev != e.label {
                    return Err(Error::Config(format!(
                        "signature {key} maps to both {prev} and {}",
                        e.label
                    )));
                }
            }
        }
        Ok(Self {
            entries,
            by_signature,
        })
    }

    /// The table shipped with the crate.
    pub fn builtin() -> &'static ClassTable {
        static TABLE: OnceLock<ClassTable> = OnceLock::new();
        TABLE.get_or_init(|| ClassTable::from_json(CLASS_TABLE_JSON).expect("bundled class table is valid"))
    }

    pub fn entries(&self) -> &[ClassEntry] {
        &self.entries
    }

    pub fn lookup(
        &self,
        scheme: Scheme,
        signature: &BarcodeSignature,
        graph: Option<&FinalGraph>,
    ) -> Result<ClassLabel> {
        let key = signature.key();
        let label = self
            .by_signature
            .get(&(scheme, key.clone()))
            .ok_or(Error::UnclassifiedSignature(key.clone()))?;
        let known_variant = graph.is_none_or(|g| {
            self.entries.iter().any(|e| {
                e.scheme == scheme && e.signature == key && e.canonical_code == g.canonical_code()
            })
        });
        Ok(ClassLabel {
            scheme,
            label: label.clone(),
            variant: graph.map(FinalGraph::name),
            known_variant,
        })
    }
}

/// Genuine-entanglement class of a D barcode, for a state already known to
/// be fully inseparable.
pub fn genuine_class(
    bc: &Barcode,
    graph: &FinalGraph,
    complex: ComplexKind,
) -> Result<ClassLabel> {
    genuine_class_with(ClassTable::builtin(), bc, graph, complex)
}

pub fn genuine_class_with(
    table: &ClassTable,
    bc: &Barcode,
    graph: &FinalGraph,
    complex: ComplexKind,
) -> Result<ClassLabel> {
    let signature = BarcodeSignature::from_barcode(bc);
    table.lookup(Scheme::for_complex(complex), &signature, Some(graph))
}

/// Number of unlabeled graphs on `n` vertices with `e` edges, for every `e`.
pub fn unlabeled_graph_counts(n: usize) -> Vec<u64> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut classes: Vec<BTreeSet<String>> = vec![BTreeSet::new(); pairs.len() + 1];
    for mask in 0u64..(1 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &p)| p);
        let g = FinalGraph::new(n, edges);
        classes[mask.count_ones() as usize].insert(g.canonical_code);
    }
    classes.iter().map(|c| c.len() as u64).collect()
}

/// Upper bound `Σ_e G_n(e) · e!` on the number of distinct barcodes of an
/// `n`-point cloud.
pub fn barcode_count_bound(n: usize) -> Result<u64> {
    if !(2..=5).contains(&n) {
        return Err(Error::UnsupportedSize { n, min: 2, max: 5 });
    }
    Ok(unlabeled_graph_counts(n)
        .iter()
        .enumerate()
        .map(|(e, &g)| g * (1..=e as u64).product::<u64>())
        .sum())
}
