//! Random-state survey of genuine barcode signatures.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{BarcodeSignature, ClassTable, Scheme};
use crate::error::{Error, Result};
use crate::filtration::ComplexKind;
use crate::monotones::MonotoneSettings;
use crate::pipeline::barcode_of;
use crate::semimetric::{distance_matrix, DistanceKind};
use crate::statevec::PureState;

pub const SURVEY_MIN_QUBITS: usize = 3;
pub const SURVEY_MAX_QUBITS: usize = 5;

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized.
pub fn haar_state(n: usize, rng: &mut impl rand::Rng) -> Result<PureState> {
    let amps = (0..1usize << n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    PureState::new(n, amps)
}

/// Independent stream per sample so results do not depend on scheduling.
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureCount {
    pub signature: String,
    pub count: usize,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub complex: ComplexKind,
    pub fully_inseparable: usize,
    pub signatures: Vec<SignatureCount>,
}

impl SurveyReport {
    pub fn distinct(&self) -> usize {
        self.signatures.len()
    }
}

pub fn survey(
    n: usize,
    samples: usize,
    seed: u64,
    settings: &MonotoneSettings,
    complex: ComplexKind,
    max_dim: usize,
) -> Result<SurveyReport> {
    if !(SURVEY_MIN_QUBITS..=SURVEY_MAX_QUBITS).contains(&n) {
        return Err(Error::UnsupportedSize {
            n,
            min: SURVEY_MIN_QUBITS,
            max: SURVEY_MAX_QUBITS,
        });
    }
    let observed: Vec<Option<String>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<Option<String>> {
            let state = haar_state(n, &mut sample_rng(seed, i))?;
            let dt = distance_matrix(&state, DistanceKind::Dtilde, settings)?;
            if barcode_of(&dt, ComplexKind::Rips, max_dim).infinite_count(0) != 1 {
                return Ok(None);
            }
            let d = distance_matrix(&state, DistanceKind::D, settings)?;
            let bc = barcode_of(&d, complex, max_dim);
            Ok(Some(BarcodeSignature::from_barcode(&bc).key()))
        })
        .collect::<Result<_>>()?;

    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for sig in observed.iter().flatten() {
        *tally.entry(sig.clone()).or_default() += 1;
    }
    let table = ClassTable::builtin();
    let scheme = Scheme::for_complex(complex);
    let signatures = tally
        .into_iter()
        .map(|(signature, count)| {
            let label = signature
                .parse::<BarcodeSignature>()
                .ok()
                .and_then(|s| table.lookup(scheme, &s, None).ok())
                .map(|l| l.label);
            SignatureCount {
                signature,
                count,
                label,
            }
        })
        .collect();
    Ok(SurveyReport {
        n,
        samples,
        seed,
        complex,
        fully_inseparable: observed.iter().flatten().count(),
        signatures,
    })
}
