//! Resultants, discriminants, gcds, square-free decomposition and rational roots.

mod factor;
mod resultant;
mod truncated;

pub use factor::{
    exact_divide, gcd, rational_roots, split_over_q, squarefree_decompose, squarefree_qpoly,
    SquareFreeDecomposition,
};
pub use resultant::{bareiss_det, discriminant, resultant, resultant_sylvester};
pub use truncated::discriminant_mod_tpow;
