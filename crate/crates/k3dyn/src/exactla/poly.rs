//! Univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored constant term first, with no trailing zeros; the
//! zero polynomial is the empty coefficient vector. All arithmetic is exact.
//!
//! ```
//! use k3dyn::exactla::Poly;
//!
//! let p = Poly::from_i64(&[-1, 0, 1]); // x^2 - 1
//! let q = Poly::from_i64(&[1, 1]); // x + 1
//! assert_eq!(p.divide_exact(&q), Some(Poly::from_i64(&[-1, 1])));
//! assert_eq!(p.to_string(), "x^2 - 1");
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division over Z: `Some(q)` with `self = q * d` when such an
    /// integer quotient exists, `None` otherwise.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dn, dd) = (self.degree().unwrap(), d.degree().unwrap());
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        let lead = d.leading().unwrap();
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[k + j] -= t;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(quot))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` at a rational point: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// gcd of the coefficients (1 for the zero polynomial, by convention).
    pub fn content(&self) -> BigInt {
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    /// Content-free copy with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Coefficient reversal `x^deg * p(1/x)`.
    pub fn reverse(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    /// `p(c * x)`: coefficient of `x^k` is scaled by `c^k`.
    pub fn scale_argument(&self, c: &BigInt) -> Poly {
        let mut power = BigInt::one();
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| {
                    let out = a * &power;
                    power = &power * c;
                    out
                })
                .collect(),
        )
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = gcd_q(self, &self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        self.primitive_part()
            .divide_exact(&g)
            .or_else(|| {
                // The primitive quotient exists over Q; clear content after
                // a rational division when the integral one fails.
                let (q, r) = ratpoly::divrem(
                    &ratpoly::from_poly(self),
                    &ratpoly::from_poly(&g),
                );
                debug_assert!(r.is_empty());
                Some(ratpoly::to_primitive_poly(&q))
            })
            .unwrap()
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Primitive gcd over Q with positive leading coefficient.
pub fn gcd_q(a: &Poly, b: &Poly) -> Poly {
    let mut f = ratpoly::from_poly(a);
    let mut g = ratpoly::from_poly(b);
    while !g.is_empty() {
        let (_, r) = ratpoly::divrem(&f, &g);
        f = g;
        g = r;
    }
    if f.is_empty() {
        Poly::zero()
    } else {
        ratpoly::to_primitive_poly(&f)
    }
}

/// The n-th cyclotomic polynomial, by the recursion
/// `x^n - 1 = prod_{d | n} Phi_d(x)` with exact integer division.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n >= 1);
    if n == 1 {
        return Poly::from_i64(&[-1, 1]);
    }
    let mut xn1 = vec![BigInt::zero(); n as usize + 1];
    xn1[0] = -BigInt::one();
    xn1[n as usize] = BigInt::one();
    let mut p = Poly::from_coeffs(xn1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p
                .divide_exact(&cyclotomic(d))
                .expect("cyclotomic division is exact");
        }
    }
    p
}

/// Polynomials over Q, used internally for remainder sequences. Kept as raw
/// coefficient vectors (constant first, trailing zeros trimmed).
pub(crate) mod ratpoly {
    use super::*;

    pub type RPoly = Vec<BigRational>;

    pub fn trim(mut p: RPoly) -> RPoly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn from_poly(p: &Poly) -> RPoly {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect()
    }

    /// Division with remainder; panics on zero divisor.
    pub fn divrem(num: &RPoly, den: &RPoly) -> (RPoly, RPoly) {
        assert!(!den.is_empty(), "division by zero polynomial");
        if num.len() < den.len() {
            return (Vec::new(), num.clone());
        }
        let mut rem = num.clone();
        let mut quot = vec![BigRational::zero(); num.len() - den.len() + 1];
        let lead = den.last().unwrap();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + den.len() - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                let t = &c * d;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        (trim(quot), trim(rem))
    }

    /// Clears denominators and content; sign chosen so the leading
    /// coefficient is positive. Scaling by a positive rational, which is all
    /// this does, preserves signs of values everywhere.
    pub fn to_primitive_poly(p: &RPoly) -> Poly {
        let lcm = p
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        Poly::from_coeffs(ints).primitive_part()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Poly::from_i64(&[1, 0, 0, -1]).to_string(), "-x^3 + 1");
        assert_eq!(Poly::from_i64(&[0, 2]).to_string(), "2*x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division_detects_failure() {
        let p = Poly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(
            p.divide_exact(&Poly::from_i64(&[1, 1])),
            Some(Poly::from_i64(&[1, 1]))
        );
        assert_eq!(p.divide_exact(&Poly::from_i64(&[-1, 1])), None);
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_recovers_xn_minus_one() {
        let n = 12u64;
        let mut prod = Poly::one();
        for d in 1..=n {
            if n.is_multiple_of(d) {
                prod = prod.mul(&cyclotomic(d));
            }
        }
        let mut expect = vec![BigInt::zero(); 13];
        expect[0] = BigInt::from(-1);
        expect[12] = BigInt::from(1);
        assert_eq!(prod, Poly::from_coeffs(expect));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = Poly::from_i64(&[-1, 0, 1]); // (x-1)(x+1)
        let b = Poly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(gcd_q(&a, &b), Poly::from_i64(&[1, 1]));
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let p = Poly::from_i64(&[1, 1]).mul(&Poly::from_i64(&[1, 1])).mul(&Poly::from_i64(&[-2, 1]));
        assert_eq!(
            p.squarefree_part(),
            Poly::from_i64(&[1, 1]).mul(&Poly::from_i64(&[-2, 1]))
        );
    }
}
