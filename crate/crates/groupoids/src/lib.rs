//! Computing with finite groupoids.
//!
//! A groupoid is a nonempty set with a partially defined associative product
//! in which every element has an inverse and a left and right identity. Every
//! finite groupoid decomposes into connected components, and every connected
//! component with `d` identities and isotropy group `G` is isomorphic to the
//! product `A_d x G` of the coarse groupoid on `d` objects with `G`. This
//! crate represents groupoids in that structured form and builds on it:
//!
//! - [`group`]: Cayley-table finite groups, subgroup lattices, Sylow
//!   subgroups, normalizers, and isomorphism testing — the computational
//!   substrate for all isotropy-group arithmetic.
//! - [`groupoid`]: groupoids, raw partial-table validation, the structure
//!   decomposition, hom-sets, and composition.
//! - [`subgroupoid`]: subgroupoid validation and exhaustive enumeration,
//!   cosets, the index, and the Lagrange identities, each closed formula
//!   paired with a brute-force oracle.
//! - [`sylow`]: normal/characteristic subgroupoids, the center, isotropic
//!   conjugation, and the three Sylow theorems for connected groupoids.
//! - [`classify`]: counting and enumerating all groupoids of a given order
//!   up to isomorphism via the partition method.
//! - [`schema`]: serde-backed JSON forms for every public object.
//!
//! All types are immutable after validation and all operations are pure, so
//! values can be shared freely across threads. With the default `parallel`
//! feature the enumeration kernels fan out over rayon; results are merged in
//! canonical order, so output never depends on the schedule.

pub mod classify;
mod combin;
mod exec;
pub mod group;
pub mod groupoid;
pub mod schema;
pub mod subgroupoid;
pub mod sylow;

pub use group::{FiniteGroup, Subgroup};
pub use groupoid::{Element, Groupoid, RawGroupoid};
pub use subgroupoid::Subgroupoid;

/// Exhaustive-search limits. Operations that would scan past a cap return a
/// `CapExceeded` error instead of silently degrading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order accepted by subgroup-lattice and isomorphism
    /// searches.
    pub max_group: usize,
    /// Largest groupoid order accepted by exhaustive subgroupoid scans.
    pub max_groupoid: usize,
    /// Largest order accepted by the constructive classifier.
    pub max_atlas: usize,
    /// Most members any single enumeration is allowed to produce.
    pub max_family: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group: 512,
            max_groupoid: 64,
            max_atlas: 12,
            max_family: 1_000_000,
        }
    }
}

impl Caps {
    /// Caps with every limit raised to its maximum. Useful for oracles that
    /// manage their own budgets.
    pub fn unbounded() -> Self {
        Caps {
            max_group: usize::MAX,
            max_groupoid: usize::MAX,
            max_atlas: usize::MAX,
            max_family: usize::MAX,
        }
    }
}
