use crate::arith::{Ring, UPoly};

/// Resultant by the subresultant pseudo-remainder sequence.
///
/// Works over any integral domain with exact division. A nonzero constant
/// argument gives that constant to the power of the other degree; two
/// constants give 1; a zero argument gives 0.
pub fn resultant<C: Ring>(f: &UPoly<C>, g: &UPoly<C>) -> C {
    if f.is_zero() || g.is_zero() {
        return C::zero();
    }
    let (df, dg) = (f.deg(), g.deg());
    if df == 0 && dg == 0 {
        return C::one();
    }
    if dg == 0 {
        return g.lc().pow(df as u32);
    }
    if df == 0 {
        return f.lc().pow(dg as u32);
    }
    let (mut a, mut b, mut negate) = if df < dg {
        (g.clone(), f.clone(), df % 2 == 1 && dg % 2 == 1)
    } else {
        (f.clone(), g.clone(), false)
    };
    let mut gg = C::one();
    let mut h = C::one();
    loop {
        let (da, db) = (a.deg(), b.deg());
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return C::zero();
        }
        let div = gg.mul(&h.pow(delta));
        a = b;
        b = UPoly::new(
            r.coeffs()
                .iter()
                .map(|c| c.exact_div(&div).expect("subresultant division is exact"))
                .collect(),
        );
        gg = a.lc();
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
        if b.deg() == 0 {
            let da = a.deg() as u32;
            let val = b
                .lc()
                .pow(da)
                .exact_div(&h.pow(da - 1))
                .expect("subresultant division is exact");
            return if negate { val.neg() } else { val };
        }
    }
}

/// Resultant as the determinant of the Sylvester matrix, by fraction-free
/// (Bareiss) elimination. Slower; kept as an independent cross-check.
pub fn resultant_sylvester<C: Ring>(f: &UPoly<C>, g: &UPoly<C>) -> C {
    if f.is_zero() || g.is_zero() {
        return C::zero();
    }
    let (m, n) = (f.deg(), g.deg());
    if m == 0 && n == 0 {
        return C::one();
    }
    let size = m + n;
    let mut mat = vec![vec![C::zero(); size]; size];
    // rows 0..n: shifted f, rows n..n+m: shifted g; columns by descending power
    for r in 0..n {
        for (i, c) in f.coeffs().iter().enumerate() {
            mat[r][r + m - i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.coeffs().iter().enumerate() {
            mat[n + r][r + n - i] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det<C: Ring>(mut a: Vec<Vec<C>>) -> C {
    let n = a.len();
    if n == 0 {
        return C::one();
    }
    let mut sign = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return C::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = C::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Discriminant `(-1)^(n(n-1)/2) res(f, f') / lc(f)`; for degree 1 this is 1.
pub fn discriminant<C: Ring>(f: &UPoly<C>) -> C {
    let n = f.deg();
    assert!(n >= 1, "discriminant needs degree at least 1");
    let r = resultant(f, &f.derivative());
    let d = r
        .exact_div(&f.lc())
        .expect("leading coefficient divides res(f, f')");
    if (n * (n - 1) / 2) % 2 == 1 {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, QPoly};

    fn p(v: &[i64]) -> QPoly {
        UPoly::new(v.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn spec_resultants() {
        assert_eq!(resultant(&p(&[0, 1]), &p(&[-1, 1])), q(-1));
        assert_eq!(resultant(&p(&[0, 1]), &p(&[1, 1])), q(1));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 0, 1])), q(4));
        // res_x(x - y, x + y) = 2y
        let y = p(&[0, 1]);
        let a = UPoly::new(vec![y.neg_poly(), p(&[1])]);
        let b = UPoly::new(vec![y.clone(), p(&[1])]);
        assert_eq!(resultant(&a, &b), y.scale(&q(2)));
        assert_eq!(resultant_sylvester(&a, &b), y.scale(&q(2)));
    }

    #[test]
    fn spec_discriminants() {
        assert_eq!(discriminant(&p(&[-1, 0, 1])), q(4));
        assert_eq!(discriminant(&p(&[0, 1])), q(1));
        // x^3 + x^2 + t x + 2t over Q[t]
        let t = p(&[0, 1]);
        let f = UPoly::new(vec![t.scale(&q(2)), t.clone(), p(&[1]), p(&[1])]);
        assert_eq!(discriminant(&f), p(&[0, -8, -71, -4]));
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(resultant(&p(&[3]), &p(&[1, 1, 1])), q(9));
        assert_eq!(resultant(&p(&[3]), &p(&[5])), q(1));
        assert_eq!(resultant(&p(&[]), &p(&[1, 1])), q(0));
    }

    #[test]
    fn sylvester_agrees() {
        let a = p(&[3, -1, 4, 1, -5]);
        let b = p(&[2, 7, -1, 8]);
        assert_eq!(resultant(&a, &b), resultant_sylvester(&a, &b));
        let c = p(&[1, 2, 1]);
        let d = p(&[-1, 0, 1]);
        assert_eq!(resultant(&c, &d), q(0));
        assert_eq!(resultant_sylvester(&c, &d), q(0));
    }
}
