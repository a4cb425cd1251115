//! Dense integer and rational matrices.
//!
//! Everything here is exact: entries are [`BigInt`] or [`BigRational`] and no
//! operation ever rounds. The matrices are small (lattice ranks in the double
//! digits), so the representation is a plain row-major `Vec` and the
//! algorithms are the classical cubic ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Error;

/// Integer column vector, written as a plain `Vec`.
pub type IntVec = Vec<BigInt>;
/// Rational column vector.
pub type RatVec = Vec<BigRational>;

pub fn int_vec(entries: &[i64]) -> IntVec {
    entries.iter().map(|&e| BigInt::from(e)).collect()
}

pub fn rat_vec_from_int(v: &[BigInt]) -> RatVec {
    v.iter().map(|e| BigRational::from(e.clone())).collect()
}

/// Scales a rational vector to the unique primitive integer vector on the
/// same ray (positive multiple; direction is preserved).
pub fn primitive_vector(v: &[BigRational]) -> Option<IntVec> {
    if v.iter().all(|e| e.is_zero()) {
        return None;
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let ints: IntVec = v
        .iter()
        .map(|e| e.numer() * (&lcm / e.denom()))
        .collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, e| acc.gcd(e));
    Some(ints.iter().map(|e| e / &gcd).collect())
}

/// Flips the sign so the first nonzero entry is positive. Used to pick one
/// representative of a `±v` pair deterministically.
pub fn sign_normalize(mut v: IntVec) -> IntVec {
    if let Some(first) = v.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            for e in &mut v {
                *e = -&*e;
            }
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<IntVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMat::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> IntVec {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect()
    }

    pub fn to_rat(&self) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|e| BigRational::from(e.clone()))
                .collect(),
        }
    }

    /// Divides every entry by the gcd of all entries, returning the gcd.
    /// The zero matrix is left untouched (content 1 by convention).
    pub fn reduce_content(&mut self) -> BigInt {
        let g = self
            .data
            .iter()
            .fold(BigInt::zero(), |acc, e| acc.gcd(e));
        if g.is_zero() || g.is_one() {
            return BigInt::one();
        }
        for e in &mut self.data {
            *e = &*e / &g;
        }
        g
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<RatVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<RatVec>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = RatMat::zero(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, e) in col.into_iter().enumerate() {
                m[(i, j)] = e;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> RatVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigRational>()
            })
            .collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Smallest `d > 0` with `d * self` integral, together with that integer
    /// matrix.
    pub fn clear_denominators(&self) -> (IntMat, BigInt) {
        let d = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let data = self
            .data
            .iter()
            .map(|e| e.numer() * (&d / e.denom()))
            .collect();
        (
            IntMat {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            d,
        )
    }

    /// Solves `self * x = b` for a unique `x`; requires `self` square and
    /// invertible. Gaussian elimination with partial (first nonzero) pivoting.
    pub fn solve(&self, b: &[BigRational]) -> Result<RatVec, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        assert_eq!(b.len(), n, "dimension mismatch");
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                }
                rhs.swap(pivot, col);
            }
            let inv = a[(col, col)].recip();
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] * &inv;
                for j in col..n {
                    let t = &factor * &a[(col, j)];
                    a[(r, j)] -= t;
                }
                let t = &factor * &rhs[col];
                rhs[r] -= t;
            }
        }
        Ok((0..n).map(|i| &rhs[i] / &a[(i, i)]).collect())
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Row Hermite normal form `(h, u)` with `u * a = h`, `u` unimodular, `h` in
/// row echelon shape with positive pivots and reduced entries above each
/// pivot. The pair is computed by integer row reduction (Euclidean steps on
/// the pivot column), which keeps everything exact.
pub fn row_hermite(a: &IntMat) -> (IntMat, IntMat) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMat::identity(m);
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m {
                if h[(r, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if h[(r, col)].abs() < h[(b, col)].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            if b != pivot_row {
                swap_rows(&mut h, b, pivot_row);
                swap_rows(&mut u, b, pivot_row);
            }
            let mut finished = true;
            for r in pivot_row + 1..m {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                row_axpy(&mut h, r, pivot_row, &q);
                row_axpy(&mut u, r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if !h[(pivot_row, col)].is_zero() {
            if h[(pivot_row, col)].is_negative() {
                negate_row(&mut h, pivot_row);
                negate_row(&mut u, pivot_row);
            }
            for r in 0..pivot_row {
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                if !q.is_zero() {
                    row_axpy(&mut h, r, pivot_row, &q);
                    row_axpy(&mut u, r, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
    }
    (h, u)
}

fn swap_rows(m: &mut IntMat, a: usize, b: usize) {
    for j in 0..m.cols() {
        let tmp = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = tmp;
    }
}

/// `row_a -= q * row_b`.
fn row_axpy(m: &mut IntMat, a: usize, b: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let t = q * &m[(b, j)];
        m[(a, j)] -= t;
    }
}

fn negate_row(m: &mut IntMat, r: usize) {
    for j in 0..m.cols() {
        let v = -&m[(r, j)];
        m[(r, j)] = v;
    }
}

/// Z-basis of `{ x in Z^n : a * x = 0 }`, returned as rows of the canonical
/// Hermite basis of the kernel lattice. The kernel of a homomorphism into
/// Z^m is saturated, so every basis row is a primitive vector.
pub fn int_kernel(a: &IntMat) -> Vec<IntVec> {
    let at = a.transpose();
    let (h, u) = row_hermite(&at);
    let mut gens: Vec<IntVec> = Vec::new();
    for r in 0..h.rows() {
        if h.row(r).iter().all(|e| e.is_zero()) {
            gens.push(u.row_vec(r));
        }
    }
    if gens.is_empty() {
        return gens;
    }
    let (basis, _) = row_hermite(&IntMat::from_rows(gens));
    (0..basis.rows())
        .filter(|&r| !basis.row(r).iter().all(|e| e.is_zero()))
        .map(|r| basis.row_vec(r))
        .collect()
}

/// Kernel of a rational matrix as a saturated integer lattice basis. Row
/// scaling does not change the kernel, so each row is cleared to integers
/// independently before the integer computation.
pub fn rat_kernel(a: &RatMat) -> Vec<IntVec> {
    let rows: Vec<IntVec> = (0..a.rows())
        .map(|i| {
            let d = a
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            a.row(i)
                .iter()
                .map(|e| e.numer() * (&d / e.denom()))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    int_kernel(&IntMat::from_rows(rows))
}

/// A full-rank lattice `N` in Q^n, stored as `(1/scale) * rowspan(basis)`
/// with `basis` a Hermite-form integer matrix. Supports exact membership
/// tests, which is all the callers need.
#[derive(Debug, Clone)]
pub struct RowLattice {
    scale: BigInt,
    basis: IntMat,
}

impl RowLattice {
    /// Lattice generated by the given rational vectors (as rows).
    pub fn from_generators(gens: &[RatVec]) -> Self {
        assert!(!gens.is_empty(), "empty generating set");
        let m = RatMat::from_rows(gens.to_vec());
        let (int, scale) = m.clear_denominators();
        let (h, _) = row_hermite(&int);
        let rank = (0..h.rows())
            .take_while(|&r| !h.row(r).iter().all(|e| e.is_zero()))
            .count();
        let basis = IntMat::from_rows((0..rank).map(|r| h.row_vec(r)).collect());
        RowLattice { scale, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Hermite basis row `i`, as a rational vector in the ambient space
    /// (the stored integer row divided by the scale).
    pub fn basis_row(&self, i: usize) -> RatVec {
        let s = BigRational::from(self.scale.clone());
        self.basis
            .row(i)
            .iter()
            .map(|e| BigRational::from(e.clone()) / &s)
            .collect()
    }

    /// Exact membership test for a rational vector.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Integer coordinates of `v` with respect to the Hermite basis rows,
    /// or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<IntVec> {
        // v in N  iff  scale*v is an integer row combination of the basis.
        let scaled: Vec<BigRational> = v
            .iter()
            .map(|e| e * BigRational::from(self.scale.clone()))
            .collect();
        if scaled.iter().any(|e| !e.is_integer()) {
            return None;
        }
        let mut target: IntVec = scaled.iter().map(|e| e.to_integer()).collect();
        let mut coords = vec![BigInt::zero(); self.basis.rows()];
        // Back-substitute against the Hermite basis rows.
        let n = self.basis.cols();
        let mut row = 0;
        for col in 0..n {
            if row < self.basis.rows() && !self.basis[(row, col)].is_zero() {
                let (q, r) = target[col].div_rem(&self.basis[(row, col)]);
                if !r.is_zero() {
                    return None;
                }
                for (j, entry) in target.iter_mut().enumerate().skip(col) {
                    let t = &q * &self.basis[(row, j)];
                    *entry -= t;
                }
                coords[row] = q;
                row += 1;
            } else if !target[col].is_zero() {
                return None;
            }
        }
        Some(coords)
    }
}
