//! Shared inputs for the benchmarks in `benches/`.

use dualimit_core::parse::parse_family;
use dualimit_core::TruncatedFamily;

/// Families of increasing size used across the benchmark groups.
pub fn corpus() -> Vec<(&'static str, TruncatedFamily)> {
    [
        ("first-kind", "x^2*(x+1) + (x+2)*t", 1),
        ("second-kind", "x^3 + x^2 + 2*x*t - t^2", 2),
        ("zd-order-3", "x^2 + 2*x*t + t^2 + t^3", 3),
        ("multi", "(x-t)*(x+t)*(x-1-2*t)*(x-1+3*t)*(x+2+t)", 5),
        ("ramified", "x^3 + x*t", 3),
        ("over-qy", "x^2*(x+y+1) + (x+y^2+2)*t", 1),
    ]
    .into_iter()
    .map(|(name, text, trunc)| (name, parse_family(text, trunc).expect("benchmark family parses")))
    .collect()
}
