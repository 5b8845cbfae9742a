//! Persistent homology of multi-qubit pure states.
//!
//! Every qubit of an n-qubit pure state becomes a point of a cloud. Pairwise
//! distances are inverse bipartite entanglement ([`semimetric`]), the cloud is
//! turned into a Rips or Čech filtration ([`filtration`]), and the barcode
//! computed over GF(2) ([`homology`]) is mapped to separability classes and
//! to finer classes of genuinely entangled states ([`classifier`]).
//!
//! ```
//! use enthom::prelude::*;
//!
//! let ghz = named_state("ghz3").unwrap();
//! let settings = MonotoneSettings::default();
//! let dm = distance_matrix(&ghz, DistanceKind::Dtilde, &settings).unwrap();
//! let barcode = compute_barcode(&rips_filtration(&dm, 2));
//! assert_eq!(barcode.infinite_count(0), 1);
//! ```

pub mod classifier;
pub mod config;
pub mod error;
pub mod filtration;
pub mod homology;
pub mod monotones;
pub mod pipeline;
pub mod render;
pub mod semimetric;
pub mod statevec;
pub mod survey;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::classifier::{
        barcode_count_bound, final_graph, genuine_class, separability_class, BarcodeSignature,
        ClassLabel, ClassTable, FinalGraph, Scheme,
    };
    pub use crate::error::{Error, Result};
    pub use crate::filtration::{
        cech_filtration, cm_circumradius, rips_filtration, ComplexKind, FilteredComplex, Simplex,
    };
    pub use crate::homology::{betti_at, compute_barcode, Bar, Barcode, BettiProfile};
    pub use crate::monotones::{
        concurrence_pair, entanglement_entropy, monotone, negativity, MonotoneKind,
        MonotoneSettings, MonotoneValue,
    };
    pub use crate::semimetric::{
        distance_d, distance_dtilde, distance_matrix, DistanceKind, DistanceMatrix, ExtReal,
    };
    pub use crate::statevec::{
        named_state, parse_state, Bipartition, DensityMatrix, PureState, NAMED_STATES,
    };
}
