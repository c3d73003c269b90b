//! Homogeneous families, coordinate conditions and the limit cycle.

mod cycle;
mod family;

pub use cycle::{
    check_coordinates, dehomogenize, limit_dual_cycle, vertices_report, CoordinateReport, DualComponent,
    HomogeneousZd, LimitCycle, Pencil, PencilSource, VertexPoint, VerticesReport,
};
pub use family::HomogeneousFamily;
