//! End-to-end composition: state → distances → filtration → barcode → label.

use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{
    final_graph, separability_class, BarcodeSignature, ClassLabel, ClassTable, FinalGraph, Scheme,
};
use crate::error::{Error, Result};
use crate::filtration::{cech_filtration, rips_filtration, ComplexKind, FilteredComplex};
use crate::homology::{compute_barcode, Barcode};
use crate::monotones::MonotoneSettings;
use crate::semimetric::{distance_matrix, DistanceKind, DistanceMatrix};
use crate::statevec::{state_to_json, PureState};

pub fn build_filtration(dm: &DistanceMatrix, kind: ComplexKind, max_dim: usize) -> FilteredComplex {
    match kind {
        ComplexKind::Rips => rips_filtration(dm, max_dim),
        ComplexKind::Cech => cech_filtration(dm, max_dim),
    }
}

/// Barcode up to homology dimension `max_dim`. The filtration is built one
/// dimension higher so that `H_max_dim` classes can die.
pub fn barcode_of(dm: &DistanceMatrix, kind: ComplexKind, max_dim: usize) -> Barcode {
    compute_barcode(&build_filtration(dm, kind, max_dim + 1)).truncated(max_dim)
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub state: PureState,
    pub distances: DistanceMatrix,
    pub complex: ComplexKind,
    pub barcode: Barcode,
    pub signature: BarcodeSignature,
    /// Simplices whose Čech birth fell back to the Rips value.
    pub embedding_failures: usize,
}

impl Analysis {
    pub fn to_json(&self) -> Value {
        json!({
            "state": state_to_json(&self.state),
            "distance_matrix": self.distances.to_json(),
            "complex": self.complex,
            "barcode": self.barcode.to_json(),
            "signature": self.signature.key(),
            "embedding_failures": self.embedding_failures,
        })
    }
}

pub fn analyze(
    state: &PureState,
    which: DistanceKind,
    settings: &MonotoneSettings,
    complex: ComplexKind,
    max_dim: usize,
) -> Result<Analysis> {
    let distances = distance_matrix(state, which, settings)?;
    let fc = build_filtration(&distances, complex, max_dim + 1);
    let embedding_failures = fc.simplices().iter().filter(|s| s.embedding_failure).count();
    let barcode = compute_barcode(&fc).truncated(max_dim);
    let signature = BarcodeSignature::from_barcode(&barcode);
    Ok(Analysis {
        state: state.clone(),
        distances,
        complex,
        barcode,
        signature,
        embedding_failures,
    })
}

/// Outcome of one genuine-class lookup.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenuineOutcome {
    pub signature: BarcodeSignature,
    /// `None` when the signature is not in the class table.
    pub label: Option<ClassLabel>,
}

impl GenuineOutcome {
    fn lookup(table: &ClassTable, scheme: Scheme, bc: &Barcode, graph: &FinalGraph) -> Result<Self> {
        let signature = BarcodeSignature::from_barcode(bc);
        let label = match table.lookup(scheme, &signature, Some(graph)) {
            Ok(l) => Some(l),
            Err(Error::UnclassifiedSignature(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self { signature, label })
    }

    pub fn label_str(&self) -> Option<&str> {
        self.label.as_ref().map(|l| l.label.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub separability: ClassLabel,
    pub separability_signature: BarcodeSignature,
    /// Present only for fully inseparable states.
    pub genuine_rips: Option<GenuineOutcome>,
    pub genuine_cech: Option<GenuineOutcome>,
    pub final_graph: Option<FinalGraph>,
}

impl Classification {
    pub fn genuine_rips_label(&self) -> Option<&str> {
        self.genuine_rips.as_ref().and_then(GenuineOutcome::label_str)
    }

    pub fn genuine_cech_label(&self) -> Option<&str> {
        self.genuine_cech.as_ref().and_then(GenuineOutcome::label_str)
    }

    /// Flat summary: labels as strings, details alongside.
    pub fn to_json(&self) -> Value {
        let detail = |g: &Option<GenuineOutcome>| {
            g.as_ref().map(|g| {
                json!({
                    "signature": g.signature.key(),
                    "variant": g.label.as_ref().and_then(|l| l.variant.clone()),
                    "known_variant": g.label.as_ref().map(|l| l.known_variant),
                })
            })
        };
        json!({
            "separability": self.separability.label,
            "genuine_rips": self.genuine_rips_label(),
            "genuine_cech": self.genuine_cech_label(),
            "details": {
                "separability_signature": self.separability_signature.key(),
                "final_graph": self.final_graph.as_ref().map(|g| json!({
                    "name": g.name(),
                    "canonical_code": g.canonical_code(),
                    "edges": g.edges(),
                })),
                "genuine_rips": detail(&self.genuine_rips),
                "genuine_cech": detail(&self.genuine_cech),
            }
        })
    }
}

pub fn classify(state: &PureState, settings: &MonotoneSettings, max_dim: usize) -> Result<Classification> {
    classify_with(ClassTable::builtin(), state, settings, max_dim)
}

pub fn classify_with(
    table: &ClassTable,
    state: &PureState,
    settings: &MonotoneSettings,
    max_dim: usize,
) -> Result<Classification> {
    let n = state.n();
    let dt = distance_matrix(state, DistanceKind::Dtilde, settings)?;
    let sep_bc = barcode_of(&dt, ComplexKind::Rips, max_dim);
    let separability = separability_class(&sep_bc, n, Some(&final_graph(&dt)))?;
    let separability_signature = BarcodeSignature::from_barcode(&sep_bc);

    if sep_bc.infinite_count(0) != 1 {
        return Ok(Classification {
            separability,
            separability_signature,
            genuine_rips: None,
            genuine_cech: None,
            final_graph: None,
        });
    }

    let d = distance_matrix(state, DistanceKind::D, settings)?;
    let graph = final_graph(&d);
    let rips = barcode_of(&d, ComplexKind::Rips, max_dim);
    let cech = barcode_of(&d, ComplexKind::Cech, max_dim);
    Ok(Classification {
        separability,
        separability_signature,
        genuine_rips: Some(GenuineOutcome::lookup(table, Scheme::GenuineRips, &rips, &graph)?),
        genuine_cech: Some(GenuineOutcome::lookup(table, Scheme::GenuineCech, &cech, &graph)?),
        final_graph: Some(graph),
    })
}
