use crate::arith::{PolyXYZ, TruncatedFamily};
use crate::error::{Error, Result};

/// `F(x, y, z, t) = Σ F_i t^i` with every F_i homogeneous of degree n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousFamily {
    degree: u32,
    coeffs: Vec<PolyXYZ>,
    trunc: usize,
}

impl HomogeneousFamily {
    pub fn new(degree: u32, mut coeffs: Vec<PolyXYZ>, trunc: usize) -> Result<Self> {
        if coeffs.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::hyp("zero family (F_0 must be nonzero)"));
        }
        if coeffs.iter().skip(trunc + 1).any(|c| !c.is_zero()) {
            return Err(Error::trunc(format!(
                "family has t-terms beyond the truncation order {trunc}"
            )));
        }
        coeffs.resize(trunc + 1, PolyXYZ::zero());
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match c.homogeneous_degree() {
                Some(d) if d == degree => {}
                _ => {
                    return Err(Error::hyp(format!(
                        "F_{i} is not homogeneous of degree {degree}"
                    )))
                }
            }
        }
        Ok(HomogeneousFamily {
            degree,
            coeffs,
            trunc,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[PolyXYZ] {
        &self.coeffs
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn t_degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn with_trunc(&self, trunc: usize) -> Result<Self> {
        if self.t_degree() > trunc {
            return Err(Error::trunc(format!(
                "trunc = {trunc} would drop nonzero terms of order {}",
                self.t_degree()
            )));
        }
        let mut c = self.coeffs.clone();
        c.truncate(trunc + 1);
        HomogeneousFamily::new(self.degree, c, trunc)
    }

    /// The affine chart `z = 1` as a family over Q[y], unnormalized.
    pub fn affine_chart(&self) -> Result<TruncatedFamily> {
        TruncatedFamily::new(
            self.coeffs.iter().map(|c| c.dehomogenize()).collect(),
            self.trunc,
        )
    }

    /// Applies a linear change of coordinates to every coefficient.
    pub fn transform(&self, m: &[[crate::arith::Q; 3]; 3]) -> Result<Self> {
        HomogeneousFamily::new(
            self.degree,
            self.coeffs.iter().map(|c| c.linear_change(m)).collect(),
            self.trunc,
        )
    }
}
