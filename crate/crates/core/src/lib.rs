//! Limits of dual plane curves in one-parameter degenerations.
//!
//! A family `F(x, t) = Σ F_i(x) t^i` over Q or Q[y] degenerates a plane curve
//! to its special fiber `F_0 = ∏ f_ν^{n_ν}`. This crate computes the leading
//! coefficient Δ'₀ of the discriminant, the vertex ver(F) that remains after
//! removing `∏ Δ(f_ν)^{n_ν}`, Puiseux branch data, the type τ, and the
//! assembled limit cycle of dual curves, cross-checking every closed form
//! against a brute-force discriminant.

pub mod arith;
pub mod disc;
pub mod dual;
pub mod elim;
pub mod error;
pub mod newton;
pub mod parse;
pub mod report;
pub mod types;
pub mod vertex;

pub use arith::{
    BigFloat, Cplx, ExactSeries, NumericSeries, PolyXY, PolyXYZ, PuiseuxSeriesT, QPoly,
    TruncatedFamily, Q,
};
pub use error::{Error, Result};
pub use disc::DiscriminantLimit;
pub use dual::{HomogeneousFamily, LimitCycle, VerticesReport};
pub use newton::{Backend, BranchSet, NewtonPolygonData, SeparationOrders};
pub use parse::FamilyFile;
pub use types::{ComponentType, SufficiencyReport, TypeReport};
pub use vertex::{VertexMethod, VertexReport, VertexRoute, ZdDecomposition};
