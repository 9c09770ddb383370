//! Agglomerative hierarchical clustering with Lance–Williams and ordered
//! weighted averaging (OWA) linkages, plus tools for deciding when an OWA
//! coefficient sequence yields monotone merge heights.
//!
//! The numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` and `*32` aliases at the crate root fix the precision.
//!
//! ```
//! use owalink::{cluster, Dataset64, DistanceMatrix64, LinkageMethod64, Strategy};
//!
//! let d = DistanceMatrix64::from_square(&[
//!     vec![0.0, 0.4, 0.6, 0.9],
//!     vec![0.4, 0.0, 0.9, 0.6],
//!     vec![0.6, 0.9, 0.0, 0.7],
//!     vec![0.9, 0.6, 0.7, 0.0],
//! ])
//! .unwrap();
//! let method = LinkageMethod64::parse("owa:lo:1,1;zero", Strategy::Recompute).unwrap();
//! let tree = cluster(&Dataset64::from_distances(d), &method).unwrap();
//! assert_eq!(tree.heights(), vec![0.4, 0.7, 0.6]);
//! assert_eq!(tree.detect_inversions(1e-12).len(), 1);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod agglomerate;
pub mod conditions;
pub mod dendrogram;
mod error;
pub mod geometry;
pub mod io;
pub mod linkage;
pub mod owa;
pub mod report;
mod scalar;
pub mod sum;
pub mod witness;

pub use agglomerate::{
    certify, cluster, cluster_traced, compare_strategies, monotonicity_certificate,
    MonotonicityCertificate, StepTrace, StrategyComparison,
};
pub use conditions::{
    audit, check, search_counterexample, Audit, ConditionId, ConditionVerdict,
    CounterexampleCertificate, Status,
};
pub use dendrogram::{Dendrogram, Inversion, InversionReport, MergeRecord};
pub use error::{Error, Result};
pub use geometry::{euclidean_distances, CondensedDistanceMatrix, PointSet};
pub use linkage::{
    classical_linkage, lw_update, owa_linkage, ClassicalKind, Cluster, Dataset,
    LanceWilliamsScheme, Linkage, LinkageMethod, Strategy,
};
pub use owa::{owa, CoefficientSequence, Orientation, OwaLinkageSpec, TailPolicy};
pub use scalar::Scalar;
pub use witness::{representability_witness, RepresentabilityWitness, WitnessBudget};

pub type PointSet64 = PointSet<f64>;
pub type DistanceMatrix64 = CondensedDistanceMatrix<f64>;
pub type Dataset64 = Dataset<f64>;
pub type CoefficientSequence64 = CoefficientSequence<f64>;
pub type OwaLinkageSpec64 = OwaLinkageSpec<f64>;
pub type LinkageMethod64 = LinkageMethod<f64>;
pub type Dendrogram64 = Dendrogram<f64>;
pub type Audit64 = Audit<f64>;

pub type PointSet32 = PointSet<f32>;
pub type DistanceMatrix32 = CondensedDistanceMatrix<f32>;
pub type Dataset32 = Dataset<f32>;
pub type CoefficientSequence32 = CoefficientSequence<f32>;
pub type OwaLinkageSpec32 = OwaLinkageSpec<f32>;
pub type LinkageMethod32 = LinkageMethod<f32>;
pub type Dendrogram32 = Dendrogram<f32>;
