//! Discriminants modulo a power of t.
//!
//! Working in `Z[t]/(t^L)` keeps every intermediate at length L, where the
//! subresultant sequence over `Q[t]` carries the full t-degree. The ring is
//! not a domain, so the determinant is taken without divisions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::ring::lcm_denoms;
use crate::arith::{QPoly, UPoly, Q};

type Ser = Vec<BigInt>;

fn ser_mul(a: &[BigInt], b: &[BigInt]) -> Ser {
    let l = a.len();
    let mut out = vec![BigInt::zero(); l];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..l - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn ser_mul_add(acc: &mut Ser, a: &[BigInt], b: &[BigInt]) {
    let l = acc.len();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..l - i].iter().enumerate() {
            if !y.is_zero() {
                acc[i + j] += x * y;
            }
        }
    }
}

fn ser_neg(a: &[BigInt]) -> Ser {
    a.iter().map(|x| -x).collect()
}

fn ser_one(l: usize) -> Ser {
    let mut v = vec![BigInt::zero(); l];
    v[0] = BigInt::one();
    v
}

/// Determinant by the Samuelson-Berkowitz recursion on leading principal
/// blocks; only ring operations.
pub(crate) fn berkowitz_det(m: &[Vec<Ser>], l: usize) -> Ser {
    let n = m.len();
    // characteristic polynomial of the leading k x k block, highest power first
    let mut p: Vec<Ser> = vec![ser_one(l)];
    for k in 0..n {
        let mut toeplitz = vec![ser_one(l), ser_neg(&m[k][k])];
        let mut v: Vec<Ser> = (0..k).map(|i| m[i][k].clone()).collect();
        for step in 0..k {
            let mut rv = vec![BigInt::zero(); l];
            for (i, vi) in v.iter().enumerate() {
                ser_mul_add(&mut rv, &m[k][i], vi);
            }
            toeplitz.push(ser_neg(&rv));
            if step + 1 < k {
                v = (0..k)
                    .map(|i| {
                        let mut s = vec![BigInt::zero(); l];
                        for (j, vj) in v.iter().enumerate() {
                            ser_mul_add(&mut s, &m[i][j], vj);
                        }
                        s
                    })
                    .collect();
            }
        }
        let mut next = vec![vec![BigInt::zero(); l]; k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                ser_mul_add(slot, &toeplitz[i - j], pj);
            }
        }
        p = next;
    }
    if n % 2 == 1 {
        ser_neg(&p[n])
    } else {
        p.swap_remove(n)
    }
}

fn inverse_q(a: &[Q]) -> Vec<Q> {
    let mut inv = vec![Q::zero(); a.len()];
    inv[0] = Q::one() / &a[0];
    for k in 1..a.len() {
        let mut s = Q::zero();
        for j in 1..=k {
            s += &a[j] * &inv[k - j];
        }
        inv[k] = -s * &inv[0];
    }
    inv
}

fn q_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let l = a.len();
    let mut out = vec![Q::zero(); l];
    for i in 0..l {
        for j in 0..l - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// `Δ(f) mod t^len` for `f` in `Q[t][x]` whose x-leading coefficient has a
/// nonzero constant term.
///
/// With `a` that leading coefficient, `f~ = a^(n-1) f(x / a)` is monic and
/// `Δ(f~) = a^((n-1)(n-2)) Δ(f)`; `Δ(f~)` is `±det` of multiplication by
/// `f~'` on `R[x]/(f~)`.
pub fn discriminant_mod_tpow(f: &UPoly<QPoly>, len: usize) -> Vec<Q> {
    let n = f.deg();
    assert!(n >= 1, "discriminant needs degree at least 1");
    assert!(len >= 1);
    let mut out = vec![Q::zero(); len];
    if n == 1 {
        out[0] = Q::one();
        return out;
    }
    let series: Vec<Vec<Q>> = f
        .coeffs()
        .iter()
        .map(|c| (0..len).map(|k| c.coeff(k)).collect())
        .collect();
    assert!(!series[n][0].is_zero(), "leading coefficient must be a unit mod t");
    let d = lcm_denoms(series.iter().flatten());
    let ints: Vec<Ser> = series
        .iter()
        .map(|s| s.iter().map(|c| (c * Q::from_integer(d.clone())).to_integer()).collect())
        .collect();
    let a = &ints[n];
    // b_i = a_i a^(n-1-i), b_n = 1
    let mut b: Vec<Ser> = Vec::with_capacity(n + 1);
    let mut apow = ser_one(len);
    let mut rev = Vec::with_capacity(n);
    for i in (0..n).rev() {
        rev.push(ser_mul(&ints[i], &apow));
        apow = ser_mul(&apow, a);
    }
    b.extend(rev.into_iter().rev());
    b.push(ser_one(len));
    let g: Vec<Ser> = (0..n)
        .map(|i| {
            let k = BigInt::from(i + 1);
            b[i + 1].iter().map(|c| c * &k).collect()
        })
        .collect();
    // column k holds x^k g mod f~
    let mut cols: Vec<Vec<Ser>> = Vec::with_capacity(n);
    let mut v = g;
    for _ in 0..n {
        cols.push(v.clone());
        let top = v.pop().expect("n >= 2");
        v.insert(0, vec![BigInt::zero(); len]);
        for (vi, bi) in v.iter_mut().zip(&b) {
            let t = ser_mul(&top, bi);
            for (x, y) in vi.iter_mut().zip(t) {
                *x -= y;
            }
        }
    }
    let m: Vec<Vec<Ser>> = (0..n).map(|i| (0..n).map(|k| cols[k][i].clone()).collect()).collect();
    let mut det = berkowitz_det(&m, len);
    if (n * (n - 1) / 2) % 2 == 1 {
        det = ser_neg(&det);
    }
    // undo the monic substitution, then the integer scaling
    let to_q = |s: &Ser| s.iter().map(|c| Q::from_integer(c.clone())).collect::<Vec<Q>>();
    let a_inv = inverse_q(&to_q(a));
    let mut undo = vec![Q::zero(); len];
    undo[0] = Q::one();
    for _ in 0..(n - 1) * (n - 2) {
        undo = q_mul(&undo, &a_inv);
    }
    let scale = Q::one() / Q::from_integer(num_traits::pow(d, 2 * n - 2));
    q_mul(&to_q(&det), &undo).into_iter().map(|c| c * &scale).collect()
}
