//! Short vector enumeration on definite lattices.
//!
//! This is the Fincke-Pohst strategy carried out entirely over Q: the
//! (negated) positive definite form is decomposed as a weighted sum of
//! squares `sum_i d_i (x_i + sum_{j>i} c_ij x_j)^2` by a rational LDL^T
//! sweep, and the coordinates are enumerated back to front inside the exact
//! integer bounds that decomposition gives. No radius is approximated; the
//! match `(x, x) = n` is tested by exact rational equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::lattice::Lattice;
use super::mat::{sign_normalize, IntVec, RatMat};
use super::Error;

/// All vectors with `(x, x) = n` on a negative definite lattice, one
/// representative per `±x` pair (the one whose first nonzero coordinate is
/// positive), sorted lexicographically.
pub fn short_vectors(l: &Lattice, n: &BigInt) -> Result<Vec<IntVec>, Error> {
    if !n.is_negative() {
        return Err(Error::NonNegativeTarget);
    }
    let r = l.rank();
    if r == 0 {
        return Ok(Vec::new());
    }
    // Work with the positive definite negation.
    let mut q = RatMat::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            q[(i, j)] = BigRational::from(-&l.gram()[(i, j)]);
        }
    }
    let (d, c) = decompose(&q).ok_or(Error::NotNegativeDefinite)?;
    let target = BigRational::from(-n);

    let mut out: Vec<IntVec> = Vec::new();
    let mut x = vec![BigInt::zero(); r];
    enumerate(&d, &c, r, &target, &mut x, &mut out);
    for v in &mut out {
        let canon = sign_normalize(std::mem::take(v));
        *v = canon;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Weighted-squares data: `q(x) = sum d_i (x_i + sum_{j>i} c[i][j] x_j)^2`.
/// Fails (returns `None`) exactly when the form is not positive definite.
fn decompose(q: &RatMat) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let r = q.rows();
    let mut a = q.clone();
    let mut d = Vec::with_capacity(r);
    let mut c = vec![vec![BigRational::zero(); r]; r];
    for i in 0..r {
        let pivot = a[(i, i)].clone();
        if !pivot.is_positive() {
            return None;
        }
        for j in i + 1..r {
            c[i][j] = &a[(i, j)] / &pivot;
        }
        for k in i + 1..r {
            for m in k..r {
                let t = &a[(i, k)] * &a[(i, m)] / &pivot;
                a[(k, m)] -= t.clone();
                if m != k {
                    a[(m, k)] = a[(k, m)].clone();
                }
            }
        }
        d.push(pivot);
    }
    Some((d, c))
}

/// Depth-first assignment of coordinates `x_{r-1}, ..., x_0`. At level `i`
/// the remaining budget is `t`; the admissible range for `x_i` is
/// `|x_i + u_i| <= sqrt(t / d_i)` with `u_i = sum_{j>i} c[i][j] x_j`.
fn enumerate(
    d: &[BigRational],
    c: &[Vec<BigRational>],
    level: usize,
    t: &BigRational,
    x: &mut [BigInt],
    out: &mut Vec<IntVec>,
) {
    if level == 0 {
        if t.is_zero() {
            out.push(x.to_vec());
        }
        return;
    }
    let i = level - 1;
    let u: BigRational = (i + 1..x.len())
        .map(|j| &c[i][j] * BigRational::from(x[j].clone()))
        .sum();
    let s = t / &d[i];
    // Integer window [lo, hi] with (k + u)^2 <= s, found from a floor
    // estimate and corrected by direct predicate checks.
    let ok = |k: &BigInt| -> bool {
        let v = BigRational::from(k.clone()) + &u;
        &v * &v <= s
    };
    let root = floor_sqrt(&s);
    let center = -&u;
    let floor_limit = center.floor().to_integer() - &root - BigInt::from(2);
    let mut hi = center.floor().to_integer() + &root + BigInt::from(1);
    while !ok(&hi) {
        hi -= 1;
        if hi < floor_limit {
            return; // window is empty
        }
    }
    let mut lo = center.ceil().to_integer() - &root - BigInt::from(1);
    while !ok(&lo) {
        lo += 1;
    }
    let mut k = lo;
    while k <= hi {
        x[i] = k.clone();
        let v = BigRational::from(k.clone()) + &u;
        let spent = &d[i] * &v * &v;
        let rest = t - &spent;
        enumerate(d, c, i, &rest, x, out);
        k += 1;
    }
    x[i] = BigInt::zero();
}

/// `floor(sqrt(p/q))` for a non-negative rational, exactly:
/// `floor(sqrt(pq)) div q` (valid because no integer multiple of `q` can sit
/// between `sqrt(pq)` and its floor).
fn floor_sqrt(s: &BigRational) -> BigInt {
    debug_assert!(!s.is_negative());
    let pq = s.numer() * s.denom();
    pq.sqrt().div_floor(s.denom())
}
