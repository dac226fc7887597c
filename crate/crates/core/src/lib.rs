//! Exact computation with capacities (non-additive measures) and inclusion
//! hyperspaces on finite ground sets.
//!
//! Every value is an exact rational in `[0, 1]`, so the monad laws, the
//! hyperspace-to-capacity morphism and the integral identities can be
//! checked by exact equality.
//!
//! * [`space`]: ground sets, subsets, unit values, observables, maps.
//! * [`capacity`]: capacities, Dirac capacities, pushforward, support.
//! * [`hyperspace`]: inclusion hyperspaces and their monad.
//! * [`integrals`]: Sugeno, Choquet and generalized fuzzy integrals.
//! * [`functional`]: Sugeno functionals, axiom checks, reconstruction.
//! * [`monad`]: finitely supported level-2/3 capacities and `μ_M`.
//! * [`subgraph`]: subgraph and α-section representations.
//! * [`laws`]: seeded law-checking suites.
//! * [`cli`]: the document-based command-line front end.

pub mod capacity;
pub mod cli;
pub mod error;
pub mod functional;
pub mod gen;
pub mod hyperspace;
pub mod integrals;
pub mod laws;
pub mod monad;
pub mod report;
pub mod space;
pub mod subgraph;

pub use capacity::{BuildMode, Capacity};
pub use error::{Error, Result};
pub use hyperspace::{GeneratedHyperHyperspace, GeneratedLevel3, InclusionHyperspace};
pub use integrals::{choquet, fuzzy, sugeno, Pseudomultiplication};
pub use monad::{Capacity2, Capacity3};
pub use report::{Report, Violation};
pub use space::{parse_value, GroundSet, Observable, SpaceMap, Subset, UnitValue};
