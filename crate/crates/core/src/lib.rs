//! Exact chain-level workbench for the cyclic complexes of group rings and
//! standard algebras over concrete group geometries, together with the
//! resolutions, homotopy operators, weighted norms and trace cochains that
//! tie them to group homology. Everything is exact rational arithmetic;
//! floats only appear in reports.

pub mod bar;
pub mod chain;
pub mod complex;
pub mod cyclic;
pub mod exact;
pub mod group;
pub mod metric;
pub mod norms;
pub mod pipeline;
pub mod report;
pub mod sample;
pub mod suites;
pub mod tilt;
pub mod trace;
pub mod num;

pub use chain::Chain;
pub use group::{Elem, GroupModel};
pub use metric::{Dist, DistSum};
pub use num::Q;
