//! Dense n-qubit pure states, partial traces and the named-state corpus.
//!
//! Qubit 0 is the leftmost ket label: in the basis index `k`, qubit `q`
//! occupies bit `n - 1 - q`.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_QUBITS: usize = 2;
pub const DEFAULT_MAX_QUBITS: usize = 6;

const NORM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
    normalization: f64,
}

impl PureState {
    /// Builds a normalized state, rescaling the amplitudes if needed.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_cap(n, amplitudes, DEFAULT_MAX_QUBITS)
    }

    pub fn with_cap(n: usize, amplitudes: Vec<Complex64>, cap: usize) -> Result<Self> {
        Self::build(n, amplitudes, cap, true)
    }

    fn build(n: usize, mut amplitudes: Vec<Complex64>, cap: usize, warn: bool) -> Result<Self> {
        if n < MIN_QUBITS || n > cap {
            return Err(Error::UnsupportedSize {
                n,
                min: MIN_QUBITS,
                max: cap,
            });
        }
        let dim = 1usize << n;
        if amplitudes.len() != dim {
            return Err(Error::MalformedState(format!(
                "{} amplitudes for {} qubits (expected {})",
                amplitudes.len(),
                n,
                dim
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::MalformedState("non-finite amplitude".into()));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        if warn && (norm - 1.0).abs() > NORM_TOL {
            log::warn!("input state has norm {norm:.6e}; normalizing");
        }
        let normalization = 1.0 / norm;
        for a in &mut amplitudes {
            *a *= normalization;
        }
        Ok(Self {
            n,
            amplitudes,
            normalization,
        })
    }

    /// Superposition of computational basis kets given as bit strings.
    pub fn from_kets(terms: &[(&str, f64)]) -> Result<Self> {
        let n = terms
            .first()
            .map(|(k, _)| k.len())
            .ok_or_else(|| Error::MalformedState("no kets".into()))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (ket, w) in terms {
            if ket.len() != n {
                return Err(Error::MalformedState(format!("ket `{ket}` has wrong length")));
            }
            let k = usize::from_str_radix(ket, 2)
                .map_err(|_| Error::MalformedState(format!("bad ket `{ket}`")))?;
            amps[k] += Complex64::new(*w, 0.0);
        }
        // Ket lists are written unnormalized on purpose; no warning.
        Self::build(n, amps, DEFAULT_MAX_QUBITS, false)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Factor the raw input amplitudes were multiplied by.
    pub fn normalization_factor(&self) -> f64 {
        self.normalization
    }

    /// `self ⊗ other`, with `other`'s qubits appended on the right.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        PureState::new(self.n + other.n, amps)
    }

    /// Relabels qubits: old qubit `q` becomes qubit `perm[q]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<PureState> {
        let n = self.n;
        let set: BTreeSet<_> = perm.iter().copied().collect();
        if perm.len() != n || set.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::BadSubset(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (k, a) in self.amplitudes.iter().enumerate() {
            let mut k2 = 0;
            for (q, &p) in perm.iter().enumerate() {
                if bit(k, n, q) {
                    k2 |= 1 << (n - 1 - p);
                }
            }
            amps[k2] = *a;
        }
        PureState::new(n, amps)
    }

    /// Applies `U_0 ⊗ U_1 ⊗ … ⊗ U_{n-1}`.
    pub fn apply_local(&self, unitaries: &[Matrix2<Complex64>]) -> Result<PureState> {
        if unitaries.len() != self.n {
            return Err(Error::BadDimension {
                expected: self.n,
                got: unitaries.len(),
            });
        }
        let n = self.n;
        let mut amps = self.amplitudes.clone();
        for (q, u) in unitaries.iter().enumerate() {
            let stride = 1 << (n - 1 - q);
            for k in 0..amps.len() {
                if k & stride == 0 {
                    let (a0, a1) = (amps[k], amps[k | stride]);
                    amps[k] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                    amps[k | stride] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
                }
            }
        }
        PureState::new(n, amps)
    }

    /// Partial trace over the complement of `keep`. The result's basis orders
    /// the kept qubits by increasing index.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = checked_subset(keep, self.n)?;
        let rest: Vec<usize> = (0..self.n).filter(|q| !keep.contains(q)).collect();
        let m = keep.len();
        let env_dim = 1usize << rest.len();
        let dim = 1usize << m;

        // Reshape into a dim × env_dim matrix, then ρ = M M†.
        let mut psi = DMatrix::<Complex64>::zeros(dim, env_dim);
        for (k, a) in self.amplitudes.iter().enumerate() {
            let row = gather_bits(k, self.n, &keep);
            let col = gather_bits(k, self.n, &rest);
            psi[(row, col)] = *a;
        }
        let matrix = &psi * psi.adjoint();
        Ok(DensityMatrix {
            qubits: keep,
            matrix,
        })
    }
}

impl std::fmt::Display for PureState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, a) in self.amplitudes.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.4}{:+.4}i)|{:0width$b}⟩", a.re, a.im, k, width = self.n)?;
        }
        Ok(())
    }
}

fn bit(k: usize, n: usize, q: usize) -> bool {
    (k >> (n - 1 - q)) & 1 == 1
}

/// Packs the bits of `qubits` (first = most significant) out of basis index `k`.
fn gather_bits(k: usize, n: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | usize::from(bit(k, n, q)))
}

fn checked_subset(qubits: &[usize], n: usize) -> Result<Vec<usize>> {
    if qubits.is_empty() {
        return Err(Error::BadSubset("empty qubit set".into()));
    }
    if let Some(q) = qubits.iter().find(|&&q| q >= n) {
        return Err(Error::BadSubset(format!("qubit {q} out of range for n = {n}")));
    }
    let set: BTreeSet<usize> = qubits.iter().copied().collect();
    if set.len() != qubits.len() {
        return Err(Error::BadSubset(format!("repeated qubit in {qubits:?}")));
    }
    Ok(set.into_iter().collect())
}

#[derive(Deserialize)]
struct StateDocument {
    n: i64,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct StateDocumentOut<'a> {
    n: usize,
    amplitudes: &'a [[f64; 2]],
}

/// Parses `{"n": .., "amplitudes": [[re, im], ..]}` and normalizes it.
pub fn parse_state(text: &str) -> Result<PureState> {
    parse_state_with_cap(text, DEFAULT_MAX_QUBITS)
}

pub fn parse_state_with_cap(text: &str, cap: usize) -> Result<PureState> {
    let doc: StateDocument =
        serde_json::from_str(text).map_err(|e| Error::MalformedState(e.to_string()))?;
    let max = cap as i64;
    if doc.n < MIN_QUBITS as i64 || doc.n > max {
        return Err(Error::UnsupportedSize {
            n: doc.n.max(0) as usize,
            min: MIN_QUBITS,
            max: cap,
        });
    }
    let amps = doc
        .amplitudes
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    PureState::with_cap(doc.n as usize, amps, cap)
}

pub fn state_to_json(state: &PureState) -> serde_json::Value {
    let pairs: Vec<[f64; 2]> = state.amplitudes.iter().map(|a| [a.re, a.im]).collect();
    serde_json::to_value(StateDocumentOut {
        n: state.n,
        amplitudes: &pairs,
    })
    .expect("plain numbers serialize")
}

/// Names accepted by [`named_state`].
pub const NAMED_STATES: &[&str] = &[
    "bell2", "ghz3", "w3", "psi_b3", "psi_c3", "ghz4", "w4", "B", "C", "Cp", "Cpp", "D", "Dp",
    "Dpp", "Dppp", "E", "F", "product3", "product4", "bisep3", "trisep4", "bisep4", "bisep22",
];

fn qubit(theta: f64, phi: f64) -> [Complex64; 2] {
    [
        Complex64::new(theta.cos(), 0.0),
        Complex64::from_polar(theta.sin(), phi),
    ]
}

fn product_of(parts: &[&[Complex64]]) -> Result<PureState> {
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for p in parts {
        amps = amps
            .iter()
            .flat_map(|a| p.iter().map(move |b| a * b))
            .collect();
    }
    let n = amps.len().trailing_zeros() as usize;
    PureState::new(n, amps)
}

/// The corpus of representative states. Table-style states given with
/// integer weights are normalized on construction.
pub fn named_state(name: &str) -> Result<PureState> {
    let kets = |terms: &[&str]| {
        let weighted: Vec<(&str, f64)> = terms.iter().map(|t| (*t, 1.0)).collect();
        PureState::from_kets(&weighted)
    };
    let q0 = qubit(0.3, 0.1);
    let q1 = qubit(0.7, 1.2);
    let q2 = qubit(1.1, -0.4);
    let q3 = qubit(0.45, 2.5);
    // Non-maximally entangled pair cos(a)|00⟩ + sin(a)|11⟩.
    let a = 0.5f64;
    let z = Complex64::new(0.0, 0.0);
    let pair = [Complex64::new(a.cos(), 0.0), z, z, Complex64::new(a.sin(), 0.0)];
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let ghz3 = [h, z, z, z, z, z, z, h];

    match name {
        "bell2" => kets(&["00", "11"]),
        "ghz3" => kets(&["000", "111"]),
        "w3" => kets(&["100", "010", "001"]),
        "psi_b3" => kets(&["000", "011", "111"]),
        "psi_c3" => kets(&["000", "001", "011", "111"]),
        "ghz4" => kets(&["0000", "1111"]),
        "w4" => kets(&["1000", "0100", "0010", "0001"]),
        "B" => kets(&["0000", "0111", "1101"]),
        "C" => kets(&["0000", "0111", "1010", "1011"]),
        "Cp" => kets(&["0000", "0011", "1111"]),
        "Cpp" => kets(&["0011", "1011", "1101", "1110"]),
        "D" => kets(&["0000", "0001", "1001", "1101", "1011", "1111"]),
        "Dp" => kets(&["0000", "0011", "0111", "1110", "1111"]),
        "Dpp" => kets(&["0000", "0011", "0110", "0111", "1011"]),
        "Dppp" => kets(&["0000", "0001", "0011", "0101", "0111", "1101"]),
        "E" => PureState::from_kets(&[
            ("0000", 2.0),
            ("0011", 1.0),
            ("0110", 1.0),
            ("1001", 1.0),
            ("1100", 1.0),
            ("1111", 2.0),
        ]),
        "F" => kets(&["0000", "0011", "1010", "1111"]),
        "product3" => product_of(&[&q0, &q1, &q2]),
        "product4" => product_of(&[&q0, &q1, &q2, &q3]),
        "bisep3" => product_of(&[&q0, &pair]),
        "trisep4" => product_of(&[&q0, &q1, &pair]),
        "bisep4" => product_of(&[&q0, &ghz3]),
        "bisep22" => product_of(&[&pair, &pair]),
        other => Err(Error::UnknownState(other.to_string())),
    }
}

/// Reduced state of a subset of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: Vec<usize>,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(qubits: Vec<usize>, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << qubits.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::BadDimension {
                expected: dim,
                got: matrix.nrows(),
            });
        }
        Ok(Self { qubits, matrix })
    }

    /// Qubit labels (relative to the parent state) in basis order.
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Ascending eigenvalues of the Hermitian matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Checks the density-matrix invariants at tolerance `tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        let m = &self.matrix;
        let hermitian = (m - m.adjoint()).iter().all(|z| z.norm() <= tol);
        let unit_trace = (self.trace() - Complex64::new(1.0, 0.0)).norm() <= tol;
        hermitian && unit_trace && self.eigenvalues().iter().all(|&l| l >= -tol)
    }

    /// Partial transpose over the qubits in `over` (labels, not positions).
    pub fn partial_transpose(&self, over: &[usize]) -> Result<DMatrix<Complex64>> {
        let m = self.qubits.len();
        let mut mask = 0usize;
        for q in over {
            let pos = self
                .qubits
                .iter()
                .position(|x| x == q)
                .ok_or_else(|| Error::BadSubset(format!("qubit {q} not in {:?}", self.qubits)))?;
            mask |= 1 << (m - 1 - pos);
        }
        let dim = self.dim();
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                let swap = (r ^ c) & mask;
                out[(r ^ swap, c ^ swap)] = self.matrix[(r, c)];
            }
        }
        Ok(out)
    }

    /// Further partial trace down to `keep ⊆ self.qubits()`.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        if keep.is_empty() || !keep.iter().all(|q| self.qubits.contains(q)) {
            return Err(Error::BadSubset(format!(
                "{keep:?} is not a nonempty subset of {:?}",
                self.qubits
            )));
        }
        let m = self.qubits.len();
        let kept_pos: Vec<usize> = (0..m).filter(|&p| keep.contains(&self.qubits[p])).collect();
        let rest_pos: Vec<usize> = (0..m).filter(|&p| !keep.contains(&self.qubits[p])).collect();
        let dim = 1usize << kept_pos.len();
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                if gather_bits(r, m, &rest_pos) == gather_bits(c, m, &rest_pos) {
                    out[(gather_bits(r, m, &kept_pos), gather_bits(c, m, &kept_pos))] +=
                        self.matrix[(r, c)];
                }
            }
        }
        Ok(DensityMatrix {
            qubits: keep.into_iter().collect(),
            matrix: out,
        })
    }
}

pub(crate) fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Two disjoint nonempty sets of qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    part_a: Vec<usize>,
    part_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(part_a: &[usize], part_b: &[usize], n: usize) -> Result<Self> {
        let a = checked_subset(part_a, n).map_err(|e| Error::BadBipartition(e.to_string()))?;
        let b = checked_subset(part_b, n).map_err(|e| Error::BadBipartition(e.to_string()))?;
        if a.iter().any(|q| b.contains(q)) {
            return Err(Error::BadBipartition(format!("{a:?} and {b:?} overlap")));
        }
        Ok(Self {
            part_a: a,
            part_b: b,
        })
    }

    pub fn part_a(&self) -> &[usize] {
        &self.part_a
    }

    pub fn part_b(&self) -> &[usize] {
        &self.part_b
    }

    pub fn swapped(&self) -> Self {
        Self {
            part_a: self.part_b.clone(),
            part_b: self.part_a.clone(),
        }
    }

    /// Union of both parts, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.part_a.iter().chain(&self.part_b).copied().collect();
        s.sort_unstable();
        s
    }

    pub fn covers(&self, n: usize) -> bool {
        self.part_a.len() + self.part_b.len() == n
    }

    pub fn is_pair(&self) -> bool {
        self.part_a.len() == 1 && self.part_b.len() == 1
    }

    /// Orientation-free key: the two parts ordered so the one holding the
    /// smallest qubit comes first.
    pub fn canonical(&self) -> Self {
        if self.part_a[0] < self.part_b[0] {
            self.clone()
        } else {
            self.swapped()
        }
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}|{:?}", self.part_a, self.part_b)
    }
}
