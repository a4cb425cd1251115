//! Integral lattices presented by a Gram matrix.
//!
//! A lattice here is Z^n equipped with the symmetric bilinear form
//! `(x, y) = x^T G y` for an integer Gram matrix `G`. The form may be
//! degenerate; the signature records positive, negative and zero inertia
//! indices separately, and by Sylvester's law of inertia those three numbers
//! do not depend on the diagonalizing basis.
//!
//! ```
//! use k3dyn::exactla::{IntMat, make_lattice, signature};
//!
//! // The hyperbolic plane U has signature (1, 1).
//! let u = make_lattice(IntMat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
//! let sig = signature(&u);
//! assert_eq!((sig.positive, sig.negative, sig.zero), (1, 1, 0));
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::mat::{primitive_vector, rat_kernel, rat_vec_from_int, IntMat, IntVec, RatMat, RatVec};
use super::Error;

/// A finitely generated quadratic module over Z: the free module Z^rank with
/// an integer-valued symmetric pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    gram: IntMat,
}

/// Inertia indices of a symmetric bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0 && self.negative > 0
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.zero == 0 {
            write!(f, "({}, {})", self.positive, self.negative)
        } else {
            write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
        }
    }
}

/// Validates a Gram matrix. The only structural requirements are squareness
/// and symmetry; degenerate forms are allowed.
pub fn make_lattice(gram: IntMat) -> Result<Lattice, Error> {
    if !gram.is_square() {
        return Err(Error::NotSquare);
    }
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(Lattice {
        rank: gram.rows(),
        gram,
    })
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    /// Determinant of the Gram matrix, exact. Zero for degenerate forms.
    pub fn det(&self) -> BigInt {
        det_bareiss(&self.gram)
    }

    /// `x^T G y` for integer vectors.
    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt, Error> {
        if x.len() != self.rank || y.len() != self.rank {
            return Err(Error::DimensionMismatch);
        }
        let gy = self.gram.mul_vec(y);
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    /// `x^T G y` for rational vectors.
    pub fn inner_rat(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational, Error> {
        if x.len() != self.rank || y.len() != self.rank {
            return Err(Error::DimensionMismatch);
        }
        let g = self.gram.to_rat();
        let gy = g.mul_vec(y);
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    /// The functional `y -> (x, y)` as a row vector `x^T G`.
    pub fn pairing_row(&self, x: &[BigRational]) -> RatVec {
        let g = self.gram.to_rat();
        (0..self.rank)
            .map(|j| {
                x.iter()
                    .enumerate()
                    .map(|(i, xi)| xi * BigRational::from(g[(i, j)].numer().clone()))
                    .sum()
            })
            .collect()
    }
}

/// Exact signature by symmetric Gaussian elimination over Q.
///
/// The loop keeps a shrinking active index set. Whenever some active
/// diagonal entry is nonzero it serves as a pivot and its row and column are
/// eliminated symmetrically; the pivot's sign feeds the inertia count. If
/// every active diagonal entry vanishes but some off-diagonal entry
/// `m[i][j]` does not, the basis change `e_i += e_j` makes the `(i, i)`
/// entry `2 m[i][j] != 0` and the loop resumes. When nothing is left the
/// remaining dimensions belong to the radical.
pub fn signature(l: &Lattice) -> Signature {
    signature_of_rat(&l.gram.to_rat())
}

/// Signature of an arbitrary rational symmetric matrix (used both for
/// lattices and for forms induced on subquotients).
pub fn signature_of_rat(m: &RatMat) -> Signature {
    assert!(m.is_square(), "signature of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !active.is_empty() {
        let pivot = active.iter().position(|&i| !a[(i, i)].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // All active diagonal entries are zero. Look for an
                // off-diagonal entry to fold onto the diagonal.
                let mut found = None;
                'outer: for (pi, &i) in active.iter().enumerate() {
                    for &j in &active {
                        if i != j && !a[(i, j)].is_zero() {
                            found = Some((pi, i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    None => {
                        sig.zero += active.len();
                        break;
                    }
                    Some((pi, i, j)) => {
                        // e_i += e_j: row and column update. New (i,i) entry
                        // is a[i][i] + 2 a[i][j] + a[j][j] = 2 a[i][j].
                        for &k in &active {
                            let t = a[(j, k)].clone();
                            a[(i, k)] += t;
                        }
                        for &k in &active {
                            let t = a[(k, j)].clone();
                            a[(k, i)] += t;
                        }
                        pi
                    }
                }
            }
        };
        let i = active[pivot];
        let d = a[(i, i)].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        active.remove(pivot);
        for &r in &active {
            if a[(r, i)].is_zero() {
                continue;
            }
            let factor = &a[(r, i)] / &d;
            for &c in &active {
                let t = &factor * &a[(i, c)];
                a[(r, c)] -= t;
            }
        }
    }
    sig
}

/// Basis of the rational null space of `m`, returned as primitive integer
/// vectors (the canonical Hermite basis of the saturated kernel lattice).
pub fn kernel(m: &RatMat) -> Vec<IntVec> {
    rat_kernel(m)
}

/// Saturated orthogonal complement `S^perp = { x in Z^n : (x, s) = 0 }`.
///
/// The complement is the integer kernel of the matrix whose rows are the
/// pairing functionals `s^T G`, so it is automatically saturated: doubling
/// the input vectors does not change the result.
pub fn orthogonal_complement(l: &Lattice, s: &[IntVec]) -> Result<Vec<IntVec>, Error> {
    if s.is_empty() {
        return Ok((0..l.rank)
            .map(|i| {
                let mut v = vec![BigInt::zero(); l.rank];
                v[i] = BigInt::from(1);
                v
            })
            .collect());
    }
    if s.iter().any(|v| v.len() != l.rank) {
        return Err(Error::DimensionMismatch);
    }
    let rows: Vec<RatVec> = s
        .iter()
        .map(|v| l.pairing_row(&rat_vec_from_int(v)))
        .collect();
    Ok(rat_kernel(&RatMat::from_rows(rows)))
}

/// Complement of a set of rational vectors; each is replaced by the
/// primitive integer vector on its ray first (zero vectors are dropped).
pub fn orthogonal_complement_rat(l: &Lattice, s: &[RatVec]) -> Result<Vec<IntVec>, Error> {
    let ints: Vec<IntVec> = s.iter().filter_map(|v| primitive_vector(v)).collect();
    orthogonal_complement(l, &ints)
}

/// Gram matrix of the form restricted to the span of the given rational
/// vectors (in the given order).
pub fn restricted_gram(l: &Lattice, vecs: &[RatVec]) -> RatMat {
    let k = vecs.len();
    let mut g = RatMat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = l.inner_rat(&vecs[i], &vecs[j]).expect("dimension checked");
        }
    }
    g
}

/// Exact determinant by the Bareiss fraction-free elimination.
fn det_bareiss(m: &IntMat) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[(r, k)].is_zero());
            match swap {
                None => return BigInt::zero(),
                Some(r) => {
                    for j in 0..n {
                        let tmp = a[(k, j)].clone();
                        a[(k, j)] = a[(r, j)].clone();
                        a[(r, j)] = tmp;
                    }
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::mat::int_vec;

    #[test]
    fn rejects_asymmetric_gram() {
        let g = IntMat::from_i64(&[&[0, 1], &[2, 0]]);
        assert!(matches!(make_lattice(g), Err(Error::NotSymmetric)));
    }

    #[test]
    fn hyperbolic_plane_signature() {
        let u = make_lattice(IntMat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let s = signature(&u);
        assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
    }

    #[test]
    fn degenerate_form_counts_radical() {
        let g = IntMat::from_i64(&[&[-2, 2], &[2, -2]]);
        let l = make_lattice(g).unwrap();
        let s = signature(&l);
        assert_eq!((s.positive, s.negative, s.zero), (0, 1, 1));
    }

    #[test]
    fn complement_in_hyperbolic_plane() {
        // (1, 0)^perp in U: (x, (1,0)) = x_2, so the complement is Z(1, 0).
        let u = make_lattice(IntMat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let c = orthogonal_complement(&u, &[int_vec(&[1, 0])]).unwrap();
        assert_eq!(c, vec![int_vec(&[1, 0])]);
    }

    #[test]
    fn complement_is_saturated() {
        let u = make_lattice(IntMat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let doubled = orthogonal_complement(&u, &[int_vec(&[2, 0])]).unwrap();
        let plain = orthogonal_complement(&u, &[int_vec(&[1, 0])]).unwrap();
        assert_eq!(doubled, plain);
    }

    #[test]
    fn determinant_matches_hand_value() {
        let g = IntMat::from_i64(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]]);
        let l = make_lattice(g).unwrap();
        // A_3 negated: det = -4.
        assert_eq!(l.det(), BigInt::from(-4));
    }
}
