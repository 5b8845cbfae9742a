//! Bipartite entanglement monotones evaluated on pure states.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{hermitian_eigenvalues, Bipartition, DensityMatrix, PureState};

pub const DEFAULT_ZERO_EPS: f64 = 1e-9;

const SPECTRAL_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotoneKind {
    Negativity,
    Concurrence,
    Entropy,
}

impl MonotoneKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MonotoneKind::Negativity => "negativity",
            MonotoneKind::Concurrence => "concurrence",
            MonotoneKind::Entropy => "entropy",
        }
    }
}

impl fmt::Display for MonotoneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MonotoneKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negativity" => Ok(MonotoneKind::Negativity),
            "concurrence" => Ok(MonotoneKind::Concurrence),
            "entropy" => Ok(MonotoneKind::Entropy),
            other => Err(Error::Config(format!("unknown monotone kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneSettings {
    pub kind: MonotoneKind,
    /// Values strictly below this are treated as exactly zero.
    pub zero_eps: f64,
}

impl Default for MonotoneSettings {
    fn default() -> Self {
        Self {
            kind: MonotoneKind::Negativity,
            zero_eps: DEFAULT_ZERO_EPS,
        }
    }
}

impl MonotoneSettings {
    pub fn new(kind: MonotoneKind, zero_eps: f64) -> Result<Self> {
        if !(zero_eps > 0.0 && zero_eps.is_finite()) {
            return Err(Error::Config(format!("zero_eps must be positive, got {zero_eps}")));
        }
        Ok(Self { kind, zero_eps })
    }

    pub fn with_kind(kind: MonotoneKind) -> Self {
        Self {
            kind,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneValue {
    pub value: f64,
    pub is_zero: bool,
    /// Monotone that was actually evaluated (differs from the requested one
    /// when the dispatcher fell back to negativity).
    pub evaluated: MonotoneKind,
}

impl MonotoneValue {
    fn new(value: f64, zero_eps: f64, evaluated: MonotoneKind) -> Self {
        let value = value.max(0.0);
        Self {
            value,
            is_zero: value < zero_eps,
            evaluated,
        }
    }
}

/// `(‖ρ^{T_A}‖₁ − 1) / 2` on the marginal of `A ∪ B`.
pub fn negativity(state: &PureState, bp: &Bipartition, zero_eps: f64) -> Result<MonotoneValue> {
    let rho = state.reduced_density(&bp.support())?;
    let pt = rho.partial_transpose(bp.part_a())?;
    let trace_norm: f64 = hermitian_eigenvalues(&pt).iter().map(|l| l.abs()).sum();
    Ok(MonotoneValue::new(
        (trace_norm - 1.0) / 2.0,
        zero_eps,
        MonotoneKind::Negativity,
    ))
}

/// Wootters concurrence of a two-qubit density matrix.
pub fn concurrence_pair(rho: &DensityMatrix, zero_eps: f64) -> Result<MonotoneValue> {
    if rho.dim() != 4 {
        return Err(Error::BadDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let m = rho.matrix();
    let yy = sigma_yy();
    let flipped = &yy * m.map(|z| z.conj()) * &yy;

    // The spectrum of ρ ρ̃ equals that of √ρ ρ̃ √ρ, which is Hermitian.
    let sqrt_rho = hermitian_sqrt(m);
    let r = &sqrt_rho * flipped * &sqrt_rho;
    // Eigenvalues are squared concurrences, so rounding noise near 1e-16
    // would surface as spurious concurrence near 1e-8.
    let mut mu: Vec<f64> = hermitian_eigenvalues(&r)
        .into_iter()
        .map(|l| if l < SPECTRAL_FLOOR { 0.0 } else { l.sqrt() })
        .collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    let c = mu[0] - mu[1] - mu[2] - mu[3];
    Ok(MonotoneValue::new(c, zero_eps, MonotoneKind::Concurrence))
}

/// Von Neumann entropy (bits) of `ρ_A` for a bipartition covering every qubit.
pub fn entanglement_entropy(
    state: &PureState,
    bp: &Bipartition,
    zero_eps: f64,
) -> Result<MonotoneValue> {
    if !bp.covers(state.n()) {
        return Err(Error::BadBipartition(format!(
            "entropy needs a full cut of {} qubits, got {bp}",
            state.n()
        )));
    }
    let rho = state.reduced_density(bp.part_a())?;
    let s: f64 = rho
        .eigenvalues()
        .into_iter()
        .filter(|&l| l > 1e-15)
        .map(|l| -l * l.log2())
        .sum();
    Ok(MonotoneValue::new(s, zero_eps, MonotoneKind::Entropy))
}

/// `E(A, B)` for the configured monotone kind.
///
/// Concurrence is only defined for single-qubit parts and entropy only for
/// cuts covering the whole register; outside those cases negativity is used
/// and reported through [`MonotoneValue::evaluated`].
pub fn monotone(
    state: &PureState,
    a: &[usize],
    b: &[usize],
    settings: &MonotoneSettings,
) -> Result<MonotoneValue> {
    let bp = Bipartition::new(a, b, state.n())?;
    evaluate(state, &bp, settings)
}

pub fn evaluate(
    state: &PureState,
    bp: &Bipartition,
    settings: &MonotoneSettings,
) -> Result<MonotoneValue> {
    let eps = settings.zero_eps;
    match settings.kind {
        MonotoneKind::Concurrence if bp.is_pair() => {
            concurrence_pair(&state.reduced_density(&bp.support())?, eps)
        }
        MonotoneKind::Entropy if bp.covers(state.n()) => entanglement_entropy(state, bp, eps),
        _ => negativity(state, bp, eps),
    }
}

fn sigma_yy() -> DMatrix<Complex64> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    // σy ⊗ σy is real: anti-diagonal (-1, 1, 1, -1).
    let mut m = DMatrix::from_element(4, 4, z);
    m[(0, 3)] = -one;
    m[(1, 2)] = one;
    m[(2, 1)] = one;
    m[(3, 0)] = -one;
    m
}

fn hermitian_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let roots = eig
        .eigenvalues
        .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    v * DMatrix::from_diagonal(&roots) * v.adjoint()
}
