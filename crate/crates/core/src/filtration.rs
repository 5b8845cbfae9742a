//! Rips and Čech filtrations over an extended-real distance matrix.
//!
//! Simplices touching an infinite pairwise distance are never born and are
//! left out of the complex entirely.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semimetric::DistanceMatrix;

/// Clamped Gram eigenvalues below `-EMBED_TOL * λ_max` flag an embedding failure.
pub const EMBED_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Rips,
    Cech,
}

impl ComplexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComplexKind::Rips => "rips",
            ComplexKind::Cech => "cech",
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rips" => Ok(ComplexKind::Rips),
            "cech" | "čech" => Ok(ComplexKind::Cech),
            other => Err(Error::Config(format!("unknown complex kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub birth: f64,
    /// Set when the vertex set could not be embedded isometrically and the
    /// Rips value was used instead.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub embedding_failure: bool,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, in lexicographic order.
    pub fn faces(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = self.vertices.len();
        (0..k).rev().filter(move |_| k > 1).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    n: usize,
    kind: ComplexKind,
    max_dim: usize,
    simplices: Vec<Simplex>,
}

impl FilteredComplex {
    /// Sorts `simplices` into filtration order. The caller guarantees face
    /// closure and monotone births; see [`FilteredComplex::is_face_closed`].
    pub fn from_simplices(
        n: usize,
        kind: ComplexKind,
        max_dim: usize,
        mut simplices: Vec<Simplex>,
    ) -> Self {
        for s in &mut simplices {
            s.vertices.sort_unstable();
        }
        simplices.sort_by(|a, b| {
            a.birth
                .total_cmp(&b.birth)
                .then(a.dim().cmp(&b.dim()))
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
        Self {
            n,
            kind,
            max_dim,
            simplices,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index(&self) -> HashMap<&[usize], usize> {
        self.simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.vertices.as_slice(), i))
            .collect()
    }

    /// Every face is present, precedes its cofaces, and is born no later.
    pub fn is_face_closed(&self) -> bool {
        let index = self.index();
        self.simplices.iter().enumerate().all(|(i, s)| {
            s.faces().all(|f| match index.get(f.as_slice()) {
                Some(&j) => j < i && self.simplices[j].birth <= s.birth,
                None => false,
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = self.kind;
        serde_json::Value::Array(
            self.simplices
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "vertices": s.vertices,
                        "birth": s.birth,
                        "kind": kind,
                    })
                })
                .collect(),
        )
    }
}

/// Index sets of size `k` drawn from `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Largest pairwise distance among `vertices`, `None` if any is infinite.
fn diameter(dm: &DistanceMatrix, vertices: &[usize]) -> Option<f64> {
    let mut best = 0.0f64;
    for (a, &u) in vertices.iter().enumerate() {
        for &v in &vertices[a + 1..] {
            best = best.max(dm.get(u, v).finite()?);
        }
    }
    Some(best)
}

fn build(
    dm: &DistanceMatrix,
    max_dim: usize,
    kind: ComplexKind,
    mut higher_birth: impl FnMut(&[usize], f64) -> (f64, bool),
) -> FilteredComplex {
    let n = dm.n();
    let max_dim = max_dim.min(n.saturating_sub(1));
    let mut births: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut simplices = Vec::new();
    for size in 1..=max_dim + 1 {
        for vertices in combinations(n, size) {
            let Some(rips) = diameter(dm, &vertices) else {
                continue;
            };
            let (mut birth, failed) = if size <= 2 {
                (rips, false)
            } else {
                higher_birth(&vertices, rips)
            };
            let simplex = Simplex {
                vertices,
                birth,
                embedding_failure: failed,
            };
            for face in simplex.faces() {
                if let Some(&fb) = births.get(&face) {
                    birth = birth.max(fb);
                }
            }
            let simplex = Simplex { birth, ..simplex };
            births.insert(simplex.vertices.clone(), birth);
            simplices.push(simplex);
        }
    }
    FilteredComplex::from_simplices(n, kind, max_dim, simplices)
}

/// Vietoris–Rips filtration: a simplex is born at its largest edge.
pub fn rips_filtration(dm: &DistanceMatrix, max_dim: usize) -> FilteredComplex {
    build(dm, max_dim, ComplexKind::Rips, |_, rips| (rips, false))
}

/// Čech filtration: a simplex is born when the closed `ε/2`-balls around its
/// vertices first share a point, i.e. at twice its minimal enclosing radius.
///
/// Each vertex subset is embedded on its own from its pairwise distances, so
/// the construction works on semi-metrics that admit no global embedding.
pub fn cech_filtration(dm: &DistanceMatrix, max_dim: usize) -> FilteredComplex {
    build(dm, max_dim, ComplexKind::Cech, |vertices, rips| {
        let sub = submatrix(dm, vertices);
        match enclosing_diameter(&sub) {
            Some(d) => (d.max(rips), false),
            None => (rips, true),
        }
    })
}

fn submatrix(dm: &DistanceMatrix, vertices: &[usize]) -> DMatrix<f64> {
    let k = vertices.len();
    DMatrix::from_fn(k, k, |a, b| dm.get(vertices[a], vertices[b]).to_f64())
}

/// Classical multidimensional scaling of a distance matrix. Returns point
/// coordinates as rows, or `None` if the Gram matrix has a significantly
/// negative eigenvalue.
pub fn embed(dist: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let m = dist.nrows();
    let sq = dist.map(|d| d * d);
    let centering = DMatrix::<f64>::identity(m, m) - DMatrix::from_element(m, m, 1.0 / m as f64);
    let gram = &centering * sq * &centering * -0.5;
    let eig = SymmetricEigen::new(gram);
    let largest = eig.eigenvalues.iter().copied().fold(0.0f64, f64::max);
    if eig.eigenvalues.iter().any(|&l| l < -EMBED_TOL * largest) {
        return None;
    }
    let scale = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    Some(&eig.eigenvectors * DMatrix::from_diagonal(&scale))
}

/// Twice the minimal enclosing ball radius of the embedded point set.
fn enclosing_diameter(dist: &DMatrix<f64>) -> Option<f64> {
    let coords = embed(dist)?;
    let m = coords.nrows();
    let sq = DMatrix::from_fn(m, m, |a, b| (coords.row(a) - coords.row(b)).norm_squared());
    Some(2.0 * minimal_enclosing_radius(&sq))
}

/// Exact minimal enclosing ball of at most a handful of points, given their
/// squared Euclidean distances: the smallest circumscribed ball of any point
/// subset that still contains every point.
pub fn minimal_enclosing_radius(sq: &DMatrix<f64>) -> f64 {
    let m = sq.nrows();
    let scale = sq.iter().copied().fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
    let mut best = f64::INFINITY;
    for size in 1..=m {
        for support in combinations(m, size) {
            let Some((weights, r2)) = circumsphere(sq, &support) else {
                continue;
            };
            if r2.sqrt() >= best {
                continue;
            }
            // |q − c|² = Σ_j w_j |q − p_j|² − r²
            let contains_all = (0..m).all(|q| {
                let d2: f64 = support
                    .iter()
                    .zip(weights.iter())
                    .map(|(&p, w)| w * sq[(q, p)])
                    .sum::<f64>()
                    - r2;
                d2 <= r2 + 1e-10 * scale
            });
            if contains_all {
                best = r2.sqrt();
            }
        }
    }
    best
}

/// Barycentric weights of the circumcenter of `support` within its affine
/// hull and the squared circumradius, from the bordered Cayley–Menger system
/// `[[0, 1ᵀ], [1, D²]] · [-2r², w] = [1, 0]`.
fn circumsphere(sq: &DMatrix<f64>, support: &[usize]) -> Option<(Vec<f64>, f64)> {
    let k = support.len();
    if k == 1 {
        return Some((vec![1.0], 0.0));
    }
    let mut a = DMatrix::<f64>::zeros(k + 1, k + 1);
    for i in 0..k {
        a[(0, i + 1)] = 1.0;
        a[(i + 1, 0)] = 1.0;
        for j in 0..k {
            a[(i + 1, j + 1)] = sq[(support[i], support[j])];
        }
    }
    let mut rhs = DVector::<f64>::zeros(k + 1);
    rhs[0] = 1.0;
    let sol = a.clone().full_piv_lu().solve(&rhs)?;
    if sol.iter().any(|x| !x.is_finite()) || (&a * &sol - &rhs).norm() > 1e-8 {
        return None;
    }
    let r2 = -sol[0] / 2.0;
    if r2 < 0.0 {
        return None;
    }
    Some((sol.iter().skip(1).copied().collect(), r2))
}

/// Circumradius of a simplex from its pairwise distances via the
/// Cayley–Menger determinant: `R² = −det(D²) / (2 det(CM))`.
pub fn cm_circumradius(pairwise: &[Vec<f64>]) -> Result<f64> {
    let k = pairwise.len();
    if k == 0 || k > 5 || pairwise.iter().any(|row| row.len() != k) {
        return Err(Error::BadDimension {
            expected: 5,
            got: k,
        });
    }
    if pairwise.iter().flatten().any(|d| !d.is_finite()) {
        return Err(Error::DegenerateSimplex);
    }
    if k == 1 {
        return Ok(0.0);
    }
    let scale = pairwise.iter().flatten().copied().fold(0.0f64, f64::max);
    if scale <= 0.0 {
        return Err(Error::DegenerateSimplex);
    }
    let sq = DMatrix::from_fn(k, k, |i, j| (pairwise[i][j] / scale).powi(2));
    let mut cm = DMatrix::<f64>::zeros(k + 1, k + 1);
    for i in 0..k {
        cm[(0, i + 1)] = 1.0;
        cm[(i + 1, 0)] = 1.0;
        for j in 0..k {
            cm[(i + 1, j + 1)] = sq[(i, j)];
        }
    }
    let det_cm = cm.determinant();
    if det_cm.abs() < 1e-10 {
        return Err(Error::DegenerateSimplex);
    }
    let r2 = -sq.determinant() / (2.0 * det_cm);
    if r2.is_nan() || r2 < 0.0 {
        return Err(Error::DegenerateSimplex);
    }
    Ok(r2.sqrt() * scale)
}
