//! Dominating and closure operators on finite set systems.
//!
//! Subsets of a ground set of at most 24 elements are bit words. Operators map
//! subsets to subsets and are checked, not trusted: every axiom (expansive,
//! monotone, idempotent, anti-exchange, ...) is decided by exhaustive or seeded
//! model checking, and every failure comes with a witness.
//!
//! ```
//! use domclose::{closure, instances, properties};
//!
//! let delta = instances::dstar();
//! let g = delta.ground().clone();
//! assert!(properties::is_monotone(&delta).unwrap().holds);
//! assert!(!properties::is_idempotent(&delta).unwrap().holds);
//!
//! let phi = closure::dominated_closure(&delta).unwrap();
//! let a = g.parse_subset("a").unwrap();
//! assert_eq!(g.render(phi.eval(a).unwrap()), "{a}");
//! ```

pub mod category;
pub mod closure;
pub mod error;
pub mod instances;
pub mod io;
pub mod operators;
pub mod properties;
pub mod search;
pub mod setcore;
pub mod transforms;

pub use error::{Error, Result};
pub use operators::{ClosureMode, Operator, OperatorSpec};
pub use properties::{CheckMode, PropertyReport, Witness};
pub use setcore::{GroundSet, Subset, SubsetFamily, MAX_GROUND, MAX_TABLE};
pub use transforms::{GaloisPair, Transformation};
