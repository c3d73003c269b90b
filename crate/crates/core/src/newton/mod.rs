//! Newton polygons, first truncations, Puiseux branches and separation orders.

mod branches;
mod node;
mod polygon;
mod symbolic;

pub use branches::{
    expand_branches_exact, expand_branches_numeric, separation_orders, Backend, BranchLine,
    BranchReport, BranchSet, ExactBranches, NumericBranches, SeparationOrders,
    DEFAULT_CLUSTER_TOL_LOG2, DEPTH_CAP,
};
pub use node::BranchCoeff;
pub use polygon::{char_poly_to_string, first_truncation, newton_polygon, NewtonPolygonData, TruncationData};
pub use symbolic::{separation_orders_symbolic, SymbolicSeparation};
