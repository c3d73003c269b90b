//! Exact scalars, polynomials, truncated families and series.

pub mod family;
pub mod numeric;
pub mod polyxy;
pub mod polyxyz;
pub mod puiseux;
pub mod ring;
pub mod roots;
pub mod upoly;

pub use family::TruncatedFamily;
pub use numeric::{BigFloat, Cplx, DEFAULT_PRECISION_BITS};
pub use polyxyz::PolyXYZ;
pub use polyxy::{PolyOp, PolyXY, Term, DEFAULT_DEGREE_CAP};
pub use puiseux::{ExactSeries, NumericSeries, PuiseuxSeriesT};
pub use ring::{lcm_denom_poly, q, qr, GcdDomain, Ring, ScalarMul, Q};
pub use upoly::{QPoly, UPoly};
