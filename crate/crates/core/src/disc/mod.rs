//! Leading coefficient of the discriminant of a degenerating family.

mod gfd;
mod series;

pub use gfd::{
    gfd_leading, special_fiber_components, verify_product_formula, ComponentFactor, CrossFactor, GfdMethod,
    GfdValue, ProductCheck, Scalar, NUMERIC_REL_TOL,
};
pub use series::{delta_prime_0_q, discriminant_mod_t, discriminant_series, series_text, DiscriminantLimit};
