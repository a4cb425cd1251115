//! Characteristic polynomials by the Berkowitz method.
//!
//! Berkowitz's algorithm is division-free, so integer matrices stay in Z
//! throughout; a rational matrix is handled by clearing denominators first
//! and rescaling the argument afterwards, `det(xI - A/d) = d^-n det(dxI - A)`.
//! The callers in this crate only ever take characteristic polynomials of
//! matrices conjugate to integral ones, so a non-integral result is reported
//! as an error rather than silently truncated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::mat::{IntMat, RatMat};
use super::poly::Poly;
use super::Error;

/// Coefficients of `det(xI - a)`, constant term first.
pub fn char_poly_int(a: &IntMat) -> Vec<BigInt> {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // Vector of coefficients, highest degree first, for the leading 1x1
    // principal submatrix.
    let mut c = vec![BigInt::one(), -a[(0, 0)].clone()];
    for i in 1..n {
        // Toeplitz column for the step from size i to i+1:
        // [1, -a_ii, -(R S), -(R M S), ..., -(R M^{i-1} S)].
        let mut t = Vec::with_capacity(i + 2);
        t.push(BigInt::one());
        t.push(-a[(i, i)].clone());
        let mut v: Vec<BigInt> = (0..i).map(|r| a[(r, i)].clone()).collect();
        for step in 0..i {
            let dot: BigInt = (0..i).map(|k| &a[(i, k)] * &v[k]).sum();
            t.push(-dot);
            if step + 1 < i {
                v = (0..i)
                    .map(|r| (0..i).map(|k| &a[(r, k)] * &v[k]).sum())
                    .collect();
            }
        }
        let mut next = vec![BigInt::zero(); i + 2];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, cj) in c.iter().enumerate() {
                if j > k {
                    break;
                }
                if k - j < t.len() {
                    acc += &t[k - j] * cj;
                }
            }
            *slot = acc;
        }
        c = next;
    }
    c.reverse();
    c
}

/// Exact characteristic polynomial of a rational matrix, which must have
/// integer (monic) characteristic coefficients; everything this crate feeds
/// in is conjugate to an integer matrix, so a fractional coefficient means
/// the input was not what the caller thought it was.
pub fn char_poly(m: &RatMat) -> Result<Poly, Error> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    let (a, d) = m.clear_denominators();
    let scaled = char_poly_int(&a);
    // scaled[k] is the x^k coefficient of det(xI - dA'); dividing by
    // d^{n-k} undoes the scaling.
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut power = BigInt::one(); // d^{n-k}, built from k = n downwards
    let mut divided = vec![BigInt::zero(); n + 1];
    divided[n] = scaled[n].clone();
    for k in (0..n).rev() {
        power = &power * &d;
        let (q, r) = scaled[k].div_rem(&power);
        if !r.is_zero() {
            return Err(Error::NonIntegralCharPoly);
        }
        divided[k] = q;
    }
    coeffs.append(&mut divided);
    Ok(Poly::from_coeffs(coeffs))
}
