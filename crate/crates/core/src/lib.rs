//! Exact computations in the May spectral sequence for the mod-p Steenrod
//! algebra: the E1-term, its first differential, monomial bases of E1
//! tridegrees and the resulting E2 dimensions.
//!
//! ```
//! use mayss_core::{d1, parse_element, render_element, PrimeContext};
//!
//! let ctx = PrimeContext::new(5).unwrap();
//! let x = parse_element("h(2,0)", &ctx).unwrap();
//! assert_eq!(render_element(&d1(&x, &ctx), &ctx), "-1*h(1,0) h(1,1)");
//! ```

pub mod algebra;
pub mod differential;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod grading;
pub mod linalg;
pub mod pages;
mod serde_util;
pub mod verify;

pub use algebra::{
    anticommutes, canonicalize, parse_element, parse_monomial, render_element, Element, GenKind,
    Generator, Homogeneity, Monomial,
};
pub use differential::{d1, d1_generator, d1_matrix, d1_monomial};
pub use enumerate::{
    enumerate_basis, generator_universe, BidegreeBasis, EnumConfig, Prune, PruneFlags,
};
pub use error::{Error, Result};
pub use exec::ExecMode;
pub use grading::{make_context, PAdicProfile, PrimeContext, Tridegree};
pub use linalg::MatrixFp;
pub use verify::{CheckRecord, Scenario, ScenarioParams, VerificationReport, Verifier};
pub use pages::{BasisKey, BasisStore, Engine, HitReport, PageQueryResult, SurvivalVerdict};

/// Version string recorded in caches and machine-readable output.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
