//! Isometry dynamics on lattice models: Eichler transvections realizing
//! Mordell-Weil translations, exact entropy via characteristic polynomials,
//! word search over generator groups, common fixed isotropic vectors, free
//! group checks, and inertia certificates for rational curves.
//!
//! Everything runs in exact rational arithmetic. Spectral radii are
//! enclosed by Sturm bisection on the integer characteristic polynomial
//! after cyclotomic factors are stripped; the only floating point anywhere
//! is the display value of the entropy logarithm.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curveconf::{self, LatticeModel};
use crate::exactla::{
    self, char_poly, int_kernel, signature_of_rat, IntMat, IntVec, Poly, RatMat, RatVec,
};
use crate::fibration::{self, sections_of, shioda_project, trivial_lattice, FiberData};
use crate::salem::{self, isolate_largest_root_above_one, strip_cyclotomic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matrix does not preserve the bilinear form")]
    NotAnIsometry,
    #[error("matrix maps the positive cone to the opposite component")]
    ConeReversed,
    #[error("no integral power of the translation found below {bound}")]
    NoIntegralPower { bound: u32 },
    #[error("expected exactly {expected} generators, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("image of component {0} is not a component class")]
    NotComponentStable(String),
    #[error("the isometry moves the class of {0}")]
    ClassNotFixed(String),
    #[error(transparent)]
    Fibration(#[from] fibration::Error),
    #[error(transparent)]
    Config(#[from] curveconf::Error),
    #[error(transparent)]
    Linalg(#[from] exactla::Error),
    #[error(transparent)]
    Salem(#[from] salem::Error),
}

/// A verified isometry of a lattice model, acting on model coordinates as a
/// column-vector map `x -> M x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    matrix: RatMat,
    label: String,
}

impl Isometry {
    /// Wraps a matrix after checking `M^T G M = G` exactly and, when the
    /// model designates a positive cone, that the cone component is
    /// preserved.
    pub fn new(model: &LatticeModel, matrix: RatMat, label: impl Into<String>) -> Result<Self, Error> {
        let r = model.rank();
        if matrix.rows() != r || matrix.cols() != r {
            return Err(Error::PreconditionViolated(format!(
                "matrix must be {r}x{r}"
            )));
        }
        let g = model.lattice().gram().to_rat();
        if matrix.transpose().mul(&g).mul(&matrix) != g {
            return Err(Error::NotAnIsometry);
        }
        if let Some(c) = model.cone_rep() {
            let image = matrix.mul_vec(c);
            if !model.inner(&image, c).is_positive() {
                return Err(Error::ConeReversed);
            }
        }
        Ok(Isometry {
            matrix,
            label: label.into(),
        })
    }

    pub fn identity(model: &LatticeModel) -> Self {
        Isometry {
            matrix: RatMat::identity(model.rank()),
            label: "1".to_string(),
        }
    }

    pub fn matrix(&self) -> &RatMat {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn apply(&self, x: &RatVec) -> RatVec {
        self.matrix.mul_vec(x)
    }

    pub fn fixes(&self, x: &RatVec) -> bool {
        self.apply(x) == *x
    }

    /// `self` after `other`: the word `self.label · other.label`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: self.matrix.mul(&other.matrix),
            label: format!("{}·{}", self.label, other.label),
        }
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            matrix: invert(&self.matrix).expect("isometries are invertible"),
            label: format!("({})^-1", self.label),
        }
    }

    pub fn power(&self, k: u64) -> Isometry {
        Isometry {
            matrix: matrix_power(&self.matrix, k),
            label: format!("({})^{k}", self.label),
        }
    }
}

fn invert(m: &RatMat) -> Option<RatMat> {
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        cols.push(m.solve(&e).ok()?);
    }
    Some(RatMat::from_cols(cols))
}

fn matrix_power(m: &RatMat, mut k: u64) -> RatMat {
    let mut acc = RatMat::identity(m.rows());
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// Eichler transvection `x -> x + (x,e)a - (x,a)e - (a,a)/2 (x,e)e` for an
/// isotropic `e` and `a` orthogonal to it.
pub fn eichler(model: &LatticeModel, e: &RatVec, a: &RatVec) -> Result<Isometry, Error> {
    if e.iter().all(|c| c.is_zero()) {
        return Err(Error::PreconditionViolated("e must be nonzero".into()));
    }
    if !model.inner(e, e).is_zero() {
        return Err(Error::PreconditionViolated("e must be isotropic".into()));
    }
    if !model.inner(e, a).is_zero() {
        return Err(Error::PreconditionViolated(
            "a must be orthogonal to e".into(),
        ));
    }
    let r = model.rank();
    let g = model.lattice().gram().to_rat();
    let ge = g.mul_vec(e);
    let ga = g.mul_vec(a);
    let half_aa = model.inner(a, a) / BigRational::from(BigInt::from(2));
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let mut col: RatVec = (0..r)
            .map(|i| {
                let mut v = &ge[j] * &a[i] - &ga[j] * &e[i] - &half_aa * &ge[j] * &e[i];
                if i == j {
                    v += BigRational::one();
                }
                v
            })
            .collect();
        col.shrink_to_fit();
        cols.push(col);
    }
    Isometry::new(model, RatMat::from_cols(cols), "E")
}

/// A Mordell-Weil translation modeled as the transvection
/// `E(F, n·φ(P))` for the smallest integral power `n`.
#[derive(Debug, Clone)]
pub struct TranslationData {
    /// Smallest `n ≥ 1` making the matrix integral on every curve class.
    pub power: u32,
    /// Smallest `k ≥ 1` with `k·φ(P)` inside the class lattice. The two
    /// numbers agree on every builtin scenario; a disagreement is reported
    /// rather than resolved.
    pub class_order: u32,
    pub isometry: Isometry,
}

const POWER_BOUND: u32 = 24;

/// Builds the translation isometry for sections `O` (origin) and `P` of a
/// fiber. The result fixes the fiber class and every vertical root class;
/// with `power == 1` it sends `class(O)` to `class(P)`.
pub fn translation_isometry(
    model: &LatticeModel,
    fd: &FiberData,
    origin: &str,
    section: &str,
) -> Result<TranslationData, Error> {
    if origin == section {
        return Err(Error::PreconditionViolated(
            "sections must be distinct".into(),
        ));
    }
    let sections = sections_of(model, fd);
    for name in [origin, section] {
        if !sections.iter().any(|s| s == name) {
            return Err(Error::Fibration(fibration::Error::NotASection(
                name.to_string(),
            )));
        }
    }
    let triv = trivial_lattice(model, fd, origin)?;
    let phi = shioda_project(model, &triv, section)?;

    // Order of φ(P) against the class lattice: clear the exact rational
    // coordinates in the lattice basis.
    let lat = model.class_lattice();
    let basis: Vec<RatVec> = (0..lat.rank()).map(|i| lat.basis_row(i)).collect();
    let coords = RatMat::from_cols(basis)
        .solve(&phi)
        .map_err(|_| Error::PreconditionViolated("projection outside the model span".into()))?;
    let class_order = coords
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let class_order = class_order.to_u32().unwrap_or(u32::MAX);

    let all_classes: Vec<&RatVec> = (0..model.config().len()).map(|i| model.class(i)).collect();
    for n in 1..=POWER_BOUND {
        let scaled: RatVec = phi
            .iter()
            .map(|c| c * BigRational::from(BigInt::from(n)))
            .collect();
        let t = eichler(model, &fd.fiber_class, &scaled)?;
        let integral = all_classes
            .iter()
            .all(|c| lat.coordinates(&t.apply(c)).is_some());
        if integral {
            let label = format!("t[{section}/{origin}]^{n}");
            return Ok(TranslationData {
                power: n,
                class_order,
                isometry: t.with_label(label),
            });
        }
    }
    Err(Error::NoIntegralPower { bound: POWER_BOUND })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Elliptic => "elliptic",
            Classification::Parabolic => "parabolic",
            Classification::Hyperbolic => "hyperbolic",
        };
        write!(f, "{s}")
    }
}

/// Exact spectral data of an isometry. The enclosure is rational with
/// width at most 10^-12; `entropy` holds the natural logs of the interval
/// endpoints and exists for display only.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyResult {
    pub lambda_lo: BigRational,
    pub lambda_hi: BigRational,
    pub entropy: (f64, f64),
    pub char_poly: Poly,
    pub cyclotomic_factors: Vec<(u64, u32)>,
    /// The cyclotomic-free part of the characteristic polynomial when it is
    /// nonconstant; its largest real root is the spectral radius.
    pub non_cyclotomic_factor: Option<Poly>,
    pub classification: Classification,
}

fn enclosure_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Spectral radius of a matrix known to act by isometries: characteristic
/// polynomial, cyclotomic stripping, Sturm isolation of the leading real
/// eigenvalue of the remainder.
pub fn entropy_of_matrix(m: &RatMat) -> Result<EntropyResult, Error> {
    let p = char_poly(m)?;
    let strip = strip_cyclotomic(&p)?;
    if strip.remainder.degree() == Some(0) {
        // Every eigenvalue is a root of unity: finite order means elliptic,
        // otherwise a unipotent part makes the map parabolic.
        let order = strip
            .factors
            .iter()
            .fold(1u64, |acc, &(k, _)| num_integer::lcm(acc, k));
        let finite = matrix_power(m, order) == RatMat::identity(m.rows());
        let one = BigRational::one();
        return Ok(EntropyResult {
            lambda_lo: one.clone(),
            lambda_hi: one,
            entropy: (0.0, 0.0),
            char_poly: p,
            cyclotomic_factors: strip.factors,
            non_cyclotomic_factor: None,
            classification: if finite {
                Classification::Elliptic
            } else {
                Classification::Parabolic
            },
        });
    }
    let mut width = enclosure_width();
    let (mut lo, mut hi) = isolate_largest_root_above_one(&strip.remainder, &width)?;
    // The leading eigenvalue is strictly above 1 (a root at 1 would be the
    // cyclotomic factor x - 1); tighten until the enclosure shows it.
    while lo.is_one() {
        width /= BigRational::from(BigInt::from(1000));
        let next = isolate_largest_root_above_one(&strip.remainder, &width)?;
        lo = next.0;
        hi = next.1;
    }
    let entropy = (
        lo.to_f64().map(f64::ln).unwrap_or(f64::NAN),
        hi.to_f64().map(f64::ln).unwrap_or(f64::NAN),
    );
    Ok(EntropyResult {
        lambda_lo: lo,
        lambda_hi: hi,
        entropy,
        char_poly: p,
        cyclotomic_factors: strip.factors,
        non_cyclotomic_factor: Some(strip.remainder),
        classification: Classification::Hyperbolic,
    })
}

pub fn spectral_radius(t: &Isometry) -> Result<EntropyResult, Error> {
    entropy_of_matrix(t.matrix())
}

/// Outcome of the breadth-first word search.
#[derive(Debug, Clone)]
pub struct WordReport {
    /// Human-readable word in the generator labels; `1` for the empty word.
    pub word: String,
    /// Letters as (index into the canonicalized generator list, inverted).
    pub letters: Vec<(usize, bool)>,
    pub isometry: Isometry,
    pub entropy: EntropyResult,
    /// Distinct group elements visited.
    pub explored: usize,
}

fn canonical_generator_order(gens: &[Isometry]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| (gens[i].label.clone(), format!("{:?}", gens[i].matrix)));
    order
}

fn word_label(gens: &[&Isometry], letters: &[(usize, bool)]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    letters
        .iter()
        .map(|&(i, inv)| {
            if inv {
                format!("{}^-1", gens[i].label)
            } else {
                gens[i].label.clone()
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

/// Breadth-first search over reduced words in the generators and their
/// inverses, deduplicated by exact matrix, maximizing the exact lower bound
/// of the spectral radius. Ties go to the shortlex-smallest word over the
/// label-canonicalized alphabet, so the result does not depend on the order
/// generators are supplied in. `threads` > 1 evaluates each frontier in
/// parallel with a deterministic merge.
pub fn word_search(
    gens: &[Isometry],
    max_len: usize,
    threads: usize,
) -> Result<WordReport, Error> {
    if gens.is_empty() {
        return Err(Error::PreconditionViolated(
            "at least one generator required".into(),
        ));
    }
    if max_len == 0 {
        return Err(Error::PreconditionViolated("max_len must be >= 1".into()));
    }
    let order = canonical_generator_order(gens);
    let sorted: Vec<&Isometry> = order.iter().map(|&i| &gens[i]).collect();
    let n = sorted[0].matrix.rows();
    // Alphabet: letter 2i is generator i, letter 2i+1 its inverse.
    let mut alphabet: Vec<RatMat> = Vec::with_capacity(2 * sorted.len());
    for g in &sorted {
        alphabet.push(g.matrix.clone());
        alphabet.push(invert(&g.matrix).expect("isometries are invertible"));
    }
    let identity = RatMat::identity(n);
    let mut visited: HashSet<RatMat> = HashSet::new();
    visited.insert(identity.clone());
    let mut frontier: Vec<(Vec<usize>, RatMat)> = vec![(Vec::new(), identity.clone())];
    let mut all_words: Vec<(Vec<usize>, RatMat)> = vec![(Vec::new(), identity)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (word, matrix) in &frontier {
            for (letter, gen_matrix) in alphabet.iter().enumerate() {
                if word.last().is_some_and(|&l| l ^ 1 == letter) {
                    continue; // cancellation: not a reduced word
                }
                let product = matrix.mul(gen_matrix);
                if !visited.insert(product.clone()) {
                    continue;
                }
                let mut extended = word.clone();
                extended.push(letter);
                next.push((extended.clone(), product.clone()));
                all_words.push((extended, product));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    // Evaluate every distinct element; BFS order is shortlex, so the first
    // strict maximum is the shortlex tie-break winner.
    let results = evaluate_parallel(&all_words, threads)?;
    let mut best: Option<(usize, EntropyResult)> = None;
    for (idx, entropy) in results.into_iter().enumerate() {
        let better = match &best {
            None => true,
            Some((_, cur)) => entropy.lambda_lo > cur.lambda_lo,
        };
        if better {
            best = Some((idx, entropy));
        }
    }
    let (idx, entropy) = best.expect("search space contains the identity");
    let (word, matrix) = &all_words[idx];
    let letters: Vec<(usize, bool)> = word.iter().map(|&l| (l / 2, l % 2 == 1)).collect();
    let label = word_label(&sorted, &letters);
    Ok(WordReport {
        word: label.clone(),
        letters,
        isometry: Isometry {
            matrix: matrix.clone(),
            label,
        },
        entropy,
        explored: all_words.len(),
    })
}

fn evaluate_parallel(
    words: &[(Vec<usize>, RatMat)],
    threads: usize,
) -> Result<Vec<EntropyResult>, Error> {
    let threads = threads.max(1);
    if threads == 1 || words.len() < 2 * threads {
        return words
            .iter()
            .map(|(_, m)| entropy_of_matrix(m))
            .collect();
    }
    let chunk = words.len().div_ceil(threads);
    let mut out: Vec<Result<Vec<EntropyResult>, Error>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = words
            .chunks(chunk)
            .map(|slice| {
                scope.spawn(move || {
                    slice
                        .iter()
                        .map(|(_, m)| entropy_of_matrix(m))
                        .collect::<Result<Vec<_>, _>>()
                })
            })
            .collect();
        for h in handles {
            out.push(h.join().expect("worker panicked"));
        }
    });
    let mut merged = Vec::with_capacity(words.len());
    for part in out {
        merged.extend(part?);
    }
    Ok(merged)
}

/// Result of searching the common fixed space for a primitive isotropic
/// class on the boundary of the positive cone.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedIsotropic {
    Found {
        /// Coordinates in the model basis.
        ambient: RatVec,
        /// Coordinates in the class lattice basis; primitive.
        in_lattice: IntVec,
    },
    /// The fixed space provably contains no nonzero integral isotropic
    /// vector.
    NoneCertified,
    /// Box search over lattice coordinates up to the reported height found
    /// nothing; existence beyond it is open.
    NoneUpToHeight(u64),
    NoGenerators,
}

/// Intersects the fixed spaces of the generators with the class lattice and
/// looks for a primitive isotropic vector there. Rank ≤ 2 intersections and
/// degenerate or definite restrictions are decided exactly; indefinite
/// intersections of higher rank fall back to a bounded search.
pub fn common_fixed_isotropic(
    model: &LatticeModel,
    gens: &[Isometry],
) -> Result<FixedIsotropic, Error> {
    if gens.is_empty() {
        return Ok(FixedIsotropic::NoGenerators);
    }
    let lat = model.class_lattice();
    let r = lat.rank();
    let basis: Vec<RatVec> = (0..r).map(|i| lat.basis_row(i)).collect();
    let c_mat = RatMat::from_cols(basis.clone());
    // Generators conjugated into class lattice coordinates, stacked as rows
    // of (A_i - I) with denominators cleared; the integer kernel is the
    // saturated common fixed sublattice.
    let mut stacked: Vec<IntVec> = Vec::new();
    for g in gens {
        let a_cols: Vec<RatVec> = basis
            .iter()
            .map(|b| c_mat.solve(&g.apply(b)))
            .collect::<Result<_, _>>()
            .map_err(|_| Error::PreconditionViolated("class lattice basis degenerate".into()))?;
        for row in 0..r {
            let mut entries: Vec<BigRational> =
                (0..r).map(|col| a_cols[col][row].clone()).collect();
            entries[row] -= BigRational::one();
            if entries.iter().any(|e| !e.is_zero()) {
                stacked.push(clear_row(&entries));
            }
        }
    }
    let kernel = if stacked.is_empty() {
        // Every generator acts as the identity: the whole lattice is fixed.
        (0..r)
            .map(|i| {
                let mut e = vec![BigInt::zero(); r];
                e[i] = BigInt::one();
                e
            })
            .collect()
    } else {
        int_kernel(&IntMat::from_rows(stacked))
    };
    if kernel.is_empty() {
        return Ok(FixedIsotropic::NoneCertified);
    }
    let dim = kernel.len();
    // Gram of the fixed sublattice in kernel coordinates; integral because
    // the class lattice is.
    let ambient_basis: Vec<RatVec> = kernel.iter().map(|k| ambient_of(k, &basis)).collect();
    let mut q = IntMat::zero(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = model.inner(&ambient_basis[i], &ambient_basis[j]);
            assert!(v.is_integer(), "class lattice pairings are integral");
            q[(i, j)] = v.to_integer();
        }
    }
    let finish = |c: IntVec| -> FixedIsotropic {
        let c = primitive_int(c);
        let mut ambient = vec![BigRational::zero(); model.rank()];
        let mut in_lattice = vec![BigInt::zero(); r];
        for (coeff, (amb, row)) in c.iter().zip(ambient_basis.iter().zip(&kernel)) {
            for (slot, e) in ambient.iter_mut().zip(amb) {
                *slot += BigRational::from(coeff.clone()) * e;
            }
            for (slot, e) in in_lattice.iter_mut().zip(row) {
                *slot += coeff * e;
            }
        }
        if let Some(cone) = model.cone_rep() {
            if model.inner(&ambient, cone).is_negative() {
                ambient = ambient.iter().map(|x| -x).collect();
                in_lattice = in_lattice.iter().map(|x| -x).collect();
            }
        }
        FixedIsotropic::Found {
            ambient,
            in_lattice,
        }
    };
    // Radical vectors of the restriction are isotropic outright.
    let radical = int_kernel(&q);
    if let Some(first) = radical.first() {
        return Ok(finish(first.clone()));
    }
    if dim == 1 {
        // Nondegenerate rank 1: (v,v) != 0.
        return Ok(FixedIsotropic::NoneCertified);
    }
    if dim == 2 {
        return Ok(solve_binary_isotropic(&q)
            .map(finish)
            .unwrap_or(FixedIsotropic::NoneCertified));
    }
    let sig = signature_of_rat(&q.to_rat());
    if sig.positive == 0 || sig.negative == 0 {
        return Ok(FixedIsotropic::NoneCertified);
    }
    // Indefinite of rank >= 3: box search over kernel coordinates, with the
    // height chosen so the box volume stays capped. The height is reported,
    // never silently assumed exhaustive.
    let height = box_height(dim);
    if height == 0 {
        return Ok(FixedIsotropic::NoneUpToHeight(0));
    }
    let mut coeffs = vec![BigInt::zero(); dim];
    if let Some(c) = box_search(&q, &mut coeffs, 0, height as i64) {
        return Ok(finish(c));
    }
    Ok(FixedIsotropic::NoneUpToHeight(height))
}

/// Largest height whose box (2h+1)^dim stays within the enumeration budget.
fn box_height(dim: usize) -> u64 {
    const BUDGET: u128 = 3_000_000;
    let mut h: u64 = 0;
    loop {
        let side = 2 * (h as u128 + 1) + 1;
        match side.checked_pow(dim as u32) {
            Some(v) if v <= BUDGET => h += 1,
            _ => return h,
        }
    }
}

fn ambient_of(c: &IntVec, basis: &[RatVec]) -> RatVec {
    let mut v = vec![BigRational::zero(); basis[0].len()];
    for (coeff, b) in c.iter().zip(basis) {
        for (slot, e) in v.iter_mut().zip(b) {
            let t = BigRational::from(coeff.clone()) * e;
            *slot += t;
        }
    }
    v
}

fn clear_row(row: &[BigRational]) -> IntVec {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, e| num_integer::lcm(acc, e.denom().clone()));
    row.iter()
        .map(|e| (e * BigRational::from(lcm.clone())).to_integer())
        .collect()
}

fn primitive_int(v: IntVec) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, e| num_integer::gcd(acc, e.clone()));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.iter().map(|e| e / &g).collect()
}

/// Integral isotropic vector of a binary integer form, exactly: the lines
/// are rational precisely when the discriminant is a perfect square.
fn solve_binary_isotropic(q: &IntMat) -> Option<IntVec> {
    let (a, b, c) = (q[(0, 0)].clone(), q[(0, 1)].clone(), q[(1, 1)].clone());
    if a.is_zero() {
        return Some(vec![BigInt::one(), BigInt::zero()]);
    }
    let disc = &b * &b - &a * &c;
    if disc.is_negative() {
        return None;
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return None;
    }
    // a x^2 + 2 b x y + c y^2 = 0 with y = a: x = -b ± s.
    Some(vec![-&b + &s, a])
}

fn box_search(q: &IntMat, coeffs: &mut Vec<BigInt>, level: usize, height: i64) -> Option<IntVec> {
    let dim = q.rows();
    if level == dim {
        if coeffs.iter().all(|c| c.is_zero()) {
            return None;
        }
        let mut acc = BigInt::zero();
        for i in 0..dim {
            for j in 0..dim {
                acc += &coeffs[i] * &q[(i, j)] * &coeffs[j];
            }
        }
        return acc.is_zero().then(|| coeffs.clone());
    }
    for k in -height..=height {
        coeffs[level] = BigInt::from(k);
        if let Some(hit) = box_search(q, coeffs, level + 1, height) {
            return Some(hit);
        }
    }
    coeffs[level] = BigInt::zero();
    None
}

/// Result of the free-group check on two generators.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeCheck {
    pub free_up_to: usize,
    /// First reduced word equal to the identity, in shortlex order, if any.
    pub relator: Option<String>,
}

/// Filter prime for the free-word walk: residues fit u64 and products fit
/// u128, so the tree is traversed in machine words. Non-identity mod p
/// proves non-identity over Q; only mod-p collisions are recomputed
/// exactly, keeping the verdict certified.
const FILTER_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FILTER_PRIME as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

/// Row-major residues of a rational matrix; `None` when a denominator is
/// divisible by the filter prime.
fn mat_mod_p(m: &RatMat) -> Option<Vec<u64>> {
    let p = BigInt::from(FILTER_PRIME);
    let n = m.rows();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let e = &m[(i, j)];
            let den = e.denom().mod_floor(&p).to_u64().unwrap();
            if den == 0 {
                return None;
            }
            let num = e.numer().mod_floor(&p).to_u64().unwrap();
            out.push(mulmod(num, powmod(den, FILTER_PRIME - 2)));
        }
    }
    Some(out)
}

fn mul_mod_p(a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let cell = &mut out[i * n + j];
                *cell = (*cell + mulmod(aik, b[k * n + j])) % FILTER_PRIME;
            }
        }
    }
    out
}

fn identity_mod_p(n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        out[i * n + i] = 1;
    }
    out
}

/// Exhaustively multiplies out every reduced word of length ≤ `max_len` in
/// two generators and their inverses, with no deduplication, reporting the
/// first word that collapses to the identity.
pub fn free_word_check(gens: &[Isometry], max_len: usize) -> Result<FreeCheck, Error> {
    if gens.len() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: gens.len(),
        });
    }
    let order = canonical_generator_order(gens);
    let sorted: Vec<&Isometry> = order.iter().map(|&i| &gens[i]).collect();
    let n = sorted[0].matrix.rows();
    let mut alphabet = Vec::with_capacity(4);
    for g in &sorted {
        alphabet.push(g.matrix.clone());
        alphabet.push(invert(&g.matrix).expect("isometries are invertible"));
    }
    let residues: Option<Vec<Vec<u64>>> = alphabet.iter().map(mat_mod_p).collect();
    let exact_product = |word: &[usize]| {
        let mut m = RatMat::identity(n);
        for &letter in word {
            m = m.mul(&alphabet[letter]);
        }
        m
    };
    let relator_at = |word: &[usize]| {
        let letters: Vec<(usize, bool)> = word.iter().map(|&l| (l / 2, l % 2 == 1)).collect();
        FreeCheck {
            free_up_to: word.len() - 1,
            relator: Some(word_label(&sorted, &letters)),
        }
    };

    if let Some(residues) = residues {
        let identity = identity_mod_p(n);
        let exact_identity = RatMat::identity(n);
        let mut frontier: Vec<(Vec<usize>, Vec<u64>)> = vec![(Vec::new(), identity.clone())];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (word, matrix) in &frontier {
                for (letter, res) in residues.iter().enumerate() {
                    if word.last().is_some_and(|&l| l ^ 1 == letter) {
                        continue;
                    }
                    let product = mul_mod_p(matrix, res, n);
                    let mut extended = word.clone();
                    extended.push(letter);
                    if product == identity && exact_product(&extended) == exact_identity {
                        return Ok(relator_at(&extended));
                    }
                    next.push((extended, product));
                }
            }
            frontier = next;
        }
        return Ok(FreeCheck {
            free_up_to: max_len,
            relator: None,
        });
    }

    let identity = RatMat::identity(n);
    let mut frontier: Vec<(Vec<usize>, RatMat)> = vec![(Vec::new(), identity.clone())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (word, matrix) in &frontier {
            for (letter, gen_matrix) in alphabet.iter().enumerate() {
                if word.last().is_some_and(|&l| l ^ 1 == letter) {
                    continue;
                }
                let product = matrix.mul(gen_matrix);
                let mut extended = word.clone();
                extended.push(letter);
                if product == identity {
                    return Ok(relator_at(&extended));
                }
                next.push((extended, product));
            }
        }
        frontier = next;
    }
    Ok(FreeCheck {
        free_up_to: max_len,
        relator: None,
    })
}

/// Permutation induced by `T` on the component classes of a fiber:
/// `perm[i] = j` when `T` maps component `i` to component `j`.
pub fn component_permutation(
    t: &Isometry,
    model: &LatticeModel,
    fd: &FiberData,
) -> Result<Vec<usize>, Error> {
    if !t.fixes(&fd.fiber_class) {
        return Err(Error::PreconditionViolated(
            "isometry must fix the fiber class".into(),
        ));
    }
    let classes: Vec<&RatVec> = fd
        .component_classes
        .iter()
        .map(|(name, _)| model.class_of(name))
        .collect::<Result<_, _>>()?;
    let mut perm = Vec::with_capacity(classes.len());
    for (i, class) in classes.iter().enumerate() {
        let image = t.apply(class);
        let j = classes
            .iter()
            .position(|c| **c == image)
            .ok_or_else(|| Error::NotComponentStable(fd.component_classes[i].0.clone()))?;
        perm.push(j);
    }
    Ok(perm)
}

/// Verdict of the lattice-level inertia test on a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertVerdict {
    /// At least three neighbors with T-fixed classes meeting the curve at
    /// pairwise distinct points: T restricts to the identity on the curve.
    InertiaCertified { witnesses: Vec<String> },
    /// A neighbor class is carried to the class of a neighbor through a
    /// different point: T moves a point of the curve.
    NontrivialOnCurve { from: String, to: String },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertResult {
    pub curve: String,
    pub verdict: CertVerdict,
}

/// Certifies that the Mordell-Weil translation taking section `origin` to
/// section `section` acts nontrivially on the fiber component `curve`.
///
/// When both sections meet `curve` itself, the translation stabilizes every
/// component of this fiber and shifts the affine part of `curve` by the
/// difference of the two intersection points. Distinct points (per the
/// coincidence table) therefore certify a nontrivial action on the curve,
/// independently of any matrix model of the translation.
pub fn translation_nontriviality(
    model: &LatticeModel,
    fd: &FiberData,
    origin: &str,
    section: &str,
    curve: &str,
) -> Result<CertResult, Error> {
    if origin == section {
        return Err(Error::PreconditionViolated(
            "sections must be distinct".into(),
        ));
    }
    let sections = sections_of(model, fd);
    for name in [origin, section] {
        if !sections.iter().any(|s| s == name) {
            return Err(Error::Fibration(fibration::Error::NotASection(
                name.to_string(),
            )));
        }
    }
    if !fd.component_classes.iter().any(|(n, _)| n == curve) {
        return Err(Error::PreconditionViolated(format!(
            "{curve} is not a component of the fiber"
        )));
    }
    let cfg = model.config();
    let c_idx = cfg.index_of(curve)?;
    let o_idx = cfg.index_of(origin)?;
    let p_idx = cfg.index_of(section)?;
    let groups = cfg.point_classes_on(c_idx);
    let group_of = |j: usize| groups.iter().position(|g| g.contains(&j));
    let (Some(go), Some(gp)) = (group_of(o_idx), group_of(p_idx)) else {
        return Err(Error::PreconditionViolated(format!(
            "both sections must meet {curve}"
        )));
    };
    let verdict = if go == gp {
        CertVerdict::Inconclusive {
            reason: format!("{origin} and {section} meet {curve} at a common point"),
        }
    } else {
        CertVerdict::NontrivialOnCurve {
            from: origin.to_string(),
            to: section.to_string(),
        }
    };
    Ok(CertResult {
        curve: curve.to_string(),
        verdict,
    })
}

/// Runs the fixed-point test of the inertia criterion for `T` on the curve
/// `C`: three fixed intersection points force the identity on a rational
/// curve, one moved intersection point rules it out.
pub fn inertia_certificate(
    t: &Isometry,
    model: &LatticeModel,
    curve: &str,
) -> Result<CertResult, Error> {
    let cfg = model.config();
    let idx = cfg.index_of(curve)?;
    if !t.fixes(model.class(idx)) {
        return Err(Error::ClassNotFixed(curve.to_string()));
    }
    let point_classes = cfg.point_classes_on(idx);
    let fixed = |j: usize| t.fixes(model.class(j));
    let mut witnesses: Vec<String> = Vec::new();
    for group in &point_classes {
        if let Some(&j) = group.iter().find(|&&j| fixed(j)) {
            witnesses.push(cfg.curve_name(j).to_string());
        }
    }
    if witnesses.len() >= 3 {
        return Ok(CertResult {
            curve: curve.to_string(),
            verdict: CertVerdict::InertiaCertified { witnesses },
        });
    }
    // A class moved onto another neighbor through a different point.
    for (gi, group) in point_classes.iter().enumerate() {
        for &j in group {
            let image = t.apply(model.class(j));
            for (gk, other) in point_classes.iter().enumerate() {
                if gk == gi {
                    continue;
                }
                for &k in other {
                    if model.class(k) != model.class(j) && *model.class(k) == image {
                        return Ok(CertResult {
                            curve: curve.to_string(),
                            verdict: CertVerdict::NontrivialOnCurve {
                                from: cfg.curve_name(j).to_string(),
                                to: cfg.curve_name(k).to_string(),
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(CertResult {
        curve: curve.to_string(),
        verdict: CertVerdict::Inconclusive {
            reason: format!(
                "{} fixed intersection points and no moved neighbor class",
                witnesses.len()
            ),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curveconf::{builtin, lattice_model, CurveConfig, Divisor};
    use crate::fibration::fiber_check;

    fn kummer() -> LatticeModel {
        lattice_model(&builtin("kummer_fig1").unwrap()).unwrap()
    }

    fn kummer_fiber(k: usize) -> Divisor {
        match k {
            1 => Divisor::new(&[
                ("F1", 1),
                ("C14", 2),
                ("F2", 1),
                ("C24", 2),
                ("F3", 1),
                ("C34", 2),
                ("E4", 3),
            ]),
            3 => Divisor::new(&[
                ("E4", 1),
                ("C44", 2),
                ("E3", 1),
                ("C43", 2),
                ("E2", 1),
                ("C42", 2),
                ("F4", 3),
            ]),
            _ => unreachable!(),
        }
    }

    fn most_algebraic() -> LatticeModel {
        lattice_model(&builtin("most_algebraic_fig2").unwrap()).unwrap()
    }

    fn most_algebraic_fiber() -> Divisor {
        Divisor::new(&[
            ("G3", 1),
            ("E33", 2),
            ("E33'", 3),
            ("F3", 4),
            ("E31'", 3),
            ("E31", 2),
            ("G1", 1),
            ("E32'", 2),
        ])
    }

    #[test]
    fn eichler_with_zero_a_is_the_identity() {
        let model = kummer();
        let fd = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let zero = vec![BigRational::zero(); model.rank()];
        let t = eichler(&model, &fd.fiber_class, &zero).unwrap();
        assert_eq!(*t.matrix(), RatMat::identity(model.rank()));
    }

    #[test]
    fn translation_on_d1_is_integral_at_the_cube() {
        let model = kummer();
        let fd = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let td = translation_isometry(&model, &fd, "C11", "C12").unwrap();
        // C11 and C12 meet different components of the pencil's second
        // reducible fiber, so the section class has order 3 against the
        // class lattice and the cube is the first integral power.
        assert_eq!(td.power, 3);
        assert_eq!(td.class_order, 3);
        let t = &td.isometry;
        assert_eq!(t.label(), "t[C12/C11]^3");
        assert!(t.fixes(&fd.fiber_class));
        let vrs = fibration::vertical_root_system(&model, &fd.fiber_class).unwrap();
        for root in &vrs.simple_roots {
            assert!(t.fixes(root));
        }
        let img = t.apply(model.class_of("C11").unwrap());
        assert_ne!(img, *model.class_of("C11").unwrap());
        assert!(model.class_lattice().coordinates(&img).is_some());
    }

    #[test]
    fn disjoint_sections_of_a_smooth_pencil_translate_exactly() {
        let cfg = CurveConfig::build(
            "pencil",
            &[("fib", 0), ("s1", -2), ("s2", -2)],
            &[("fib", "s1", 1), ("fib", "s2", 1)],
            &[],
        )
        .unwrap();
        let model = lattice_model(&cfg).unwrap();
        let fd = fiber_check(&model, &Divisor::new(&[("fib", 1)])).unwrap();
        let td = translation_isometry(&model, &fd, "s1", "s2").unwrap();
        assert_eq!(td.power, 1);
        assert_eq!(td.class_order, 1);
        assert_eq!(
            td.isometry.apply(model.class_of("s1").unwrap()),
            *model.class_of("s2").unwrap()
        );
    }

    #[test]
    fn translation_rejects_equal_sections() {
        let model = kummer();
        let fd = fiber_check(&model, &kummer_fiber(1)).unwrap();
        assert!(matches!(
            translation_isometry(&model, &fd, "C11", "C11"),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn most_algebraic_translation_preserves_components() {
        let model = most_algebraic();
        let fd = fiber_check(&model, &most_algebraic_fiber()).unwrap();
        let td = translation_isometry(&model, &fd, "E13", "E23").unwrap();
        // E13 and E23 meet opposite forks of the pencil's second reducible
        // fiber, so the square is the first integral power.
        assert_eq!(td.power, 2);
        assert_eq!(td.class_order, 2);
        let perm = component_permutation(&td.isometry, &model, &fd).unwrap();
        assert!(perm.iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn identity_is_elliptic_with_unit_radius() {
        let model = kummer();
        let e = spectral_radius(&Isometry::identity(&model)).unwrap();
        assert_eq!(e.classification, Classification::Elliptic);
        assert!(e.lambda_lo.is_one() && e.lambda_hi.is_one());
        assert_eq!(e.entropy, (0.0, 0.0));
    }

    #[test]
    fn single_translation_is_parabolic() {
        let model = kummer();
        let fd = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let td = translation_isometry(&model, &fd, "C11", "C12").unwrap();
        let e = spectral_radius(&td.isometry).unwrap();
        assert_eq!(e.classification, Classification::Parabolic);
        assert!(e.lambda_lo.is_one());
    }

    #[test]
    fn product_of_transverse_translations_is_hyperbolic() {
        let model = kummer();
        let fd1 = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let fd3 = fiber_check(&model, &kummer_fiber(3)).unwrap();
        let t1 = translation_isometry(&model, &fd1, "C11", "C12")
            .unwrap()
            .isometry;
        let t3 = translation_isometry(&model, &fd3, "C14", "C24")
            .unwrap()
            .isometry;
        let product = t1.compose(&t3);
        let e = spectral_radius(&product).unwrap();
        assert_eq!(e.classification, Classification::Hyperbolic);
        assert!(e.lambda_lo > BigRational::one());
        // Char polys of isometries are plus or minus reciprocal.
        assert_ne!(
            salem::is_reciprocal(&e.char_poly),
            salem::Reciprocity::Neither
        );
    }

    #[test]
    fn entropy_is_additive_under_squaring() {
        let model = kummer();
        let fd1 = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let fd3 = fiber_check(&model, &kummer_fiber(3)).unwrap();
        let t1 = translation_isometry(&model, &fd1, "C11", "C12")
            .unwrap()
            .isometry;
        let t3 = translation_isometry(&model, &fd3, "C14", "C24")
            .unwrap()
            .isometry;
        let f = t1.compose(&t3);
        let e1 = spectral_radius(&f).unwrap();
        let e2 = spectral_radius(&f.power(2)).unwrap();
        // lambda(T^2) = lambda(T)^2: the exact enclosures must overlap.
        let lo2 = &e1.lambda_lo * &e1.lambda_lo;
        let hi2 = &e1.lambda_hi * &e1.lambda_hi;
        assert!(e2.lambda_lo <= hi2 && lo2 <= e2.lambda_hi);
    }

    #[test]
    fn word_search_on_identity_returns_identity() {
        let model = kummer();
        let report = word_search(&[Isometry::identity(&model)], 3, 1).unwrap();
        assert_eq!(report.word, "1");
        assert!(report.entropy.lambda_lo.is_one());
        assert_eq!(report.explored, 1);
    }

    #[test]
    fn word_search_finds_a_hyperbolic_word_and_ignores_generator_order() {
        let model = kummer();
        let fd1 = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let fd3 = fiber_check(&model, &kummer_fiber(3)).unwrap();
        let t1 = translation_isometry(&model, &fd1, "C11", "C12")
            .unwrap()
            .isometry;
        let t3 = translation_isometry(&model, &fd3, "C14", "C24")
            .unwrap()
            .isometry;
        let a = word_search(&[t1.clone(), t3.clone()], 2, 1).unwrap();
        let b = word_search(&[t3, t1], 2, 1).unwrap();
        assert_eq!(a.entropy.classification, Classification::Hyperbolic);
        assert_eq!(a.word, b.word);
        assert_eq!(a.entropy.lambda_lo, b.entropy.lambda_lo);
    }

    #[test]
    fn free_check_requires_two_generators() {
        let model = kummer();
        assert!(matches!(
            free_word_check(&[Isometry::identity(&model)], 2),
            Err(Error::WrongArity {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn free_check_finds_a_relator_for_an_involution() {
        let model = lattice_model(&builtin("e8_thm51").unwrap()).unwrap();
        let r = model.rank();
        let minus = RatMat::from_cols(
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|i| {
                            if i == j {
                                -BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        );
        let s = Isometry::new(&model, minus, "s").unwrap();
        let t = Isometry::identity(&model).with_label("t");
        let check = free_word_check(&[s, t], 4).unwrap();
        let relator = check.relator.expect("t is the identity");
        assert!(!relator.is_empty());
    }

    #[test]
    fn transvection_center_is_a_common_fixed_isotropic_vector() {
        let model = kummer();
        let fd = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let td = translation_isometry(&model, &fd, "C11", "C12").unwrap();
        match common_fixed_isotropic(&model, &[td.isometry]).unwrap() {
            FixedIsotropic::Found { ambient, .. } => {
                assert!(model.inner(&ambient, &ambient).is_zero());
                // The found vector must be proportional to the fiber class.
                let f = &fd.fiber_class;
                let k = ambient
                    .iter()
                    .zip(f)
                    .find(|(_, b)| !b.is_zero())
                    .map(|(a, b)| a / b)
                    .unwrap();
                assert!(k.is_positive());
                let scaled: RatVec = f.iter().map(|b| &k * b).collect();
                assert_eq!(ambient, scaled);
            }
            other => panic!("expected a fixed isotropic vector, got {other:?}"),
        }
    }

    #[test]
    fn hyperbolic_pair_has_no_common_fixed_isotropic_vector() {
        let model = kummer();
        let fd1 = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let fd3 = fiber_check(&model, &kummer_fiber(3)).unwrap();
        let t1 = translation_isometry(&model, &fd1, "C11", "C12")
            .unwrap()
            .isometry;
        let t3 = translation_isometry(&model, &fd3, "C14", "C24")
            .unwrap()
            .isometry;
        let res = common_fixed_isotropic(&model, &[t1, t3]).unwrap();
        assert!(
            matches!(res, FixedIsotropic::NoneCertified),
            "got {res:?}"
        );
    }

    #[test]
    fn empty_generator_list_is_flagged() {
        let model = kummer();
        assert_eq!(
            common_fixed_isotropic(&model, &[]).unwrap(),
            FixedIsotropic::NoGenerators
        );
    }

    #[test]
    fn component_permutation_of_identity_is_identity() {
        let model = kummer();
        let fd = fiber_check(&model, &kummer_fiber(3)).unwrap();
        let perm = component_permutation(&Isometry::identity(&model), &model, &fd).unwrap();
        assert!(perm.iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn swapping_isometry_transposes_fiber_components() {
        // Two curves meeting doubly plus a section: the reflection in
        // (a - b) swaps the components and fixes the fiber class.
        let cfg = CurveConfig::build(
            "swap",
            &[("a", -2), ("b", -2), ("s", -2)],
            &[("a", "b", 2), ("s", "a", 1)],
            &[],
        )
        .unwrap();
        let model = lattice_model(&cfg).unwrap();
        let fd = fiber_check(&model, &Divisor::new(&[("a", 1), ("b", 1)])).unwrap();
        let v: RatVec = model
            .class_of("a")
            .unwrap()
            .iter()
            .zip(model.class_of("b").unwrap())
            .map(|(x, y)| x - y)
            .collect();
        let vv = model.inner(&v, &v);
        let r = model.rank();
        let cols: Vec<RatVec> = (0..r)
            .map(|j| {
                let mut e = vec![BigRational::zero(); r];
                e[j] = BigRational::one();
                let coeff = model.inner(&e, &v) * BigRational::from(BigInt::from(2)) / &vv;
                e.iter()
                    .zip(&v)
                    .map(|(x, y)| x - &coeff * y)
                    .collect()
            })
            .collect();
        let t = Isometry::new(&model, RatMat::from_cols(cols), "swap").unwrap();
        let perm = component_permutation(&t, &model, &fd).unwrap();
        assert_eq!(perm, vec![1, 0]);
    }

    #[test]
    fn translation_is_nontrivial_on_the_central_curve() {
        let model = kummer();
        let fd3 = fiber_check(&model, &kummer_fiber(3)).unwrap();
        let cert = translation_nontriviality(&model, &fd3, "C14", "C24", "E4").unwrap();
        assert_eq!(cert.curve, "E4");
        match cert.verdict {
            CertVerdict::NontrivialOnCurve { from, to } => {
                assert_eq!((from.as_str(), to.as_str()), ("C14", "C24"));
            }
            other => panic!("expected a moved pair, got {other:?}"),
        }
    }

    #[test]
    fn central_translation_moves_g3_points_apart() {
        let model = most_algebraic();
        let fd = fiber_check(&model, &most_algebraic_fiber()).unwrap();
        let cert = translation_nontriviality(&model, &fd, "E13", "E23", "G3").unwrap();
        match cert.verdict {
            CertVerdict::NontrivialOnCurve { from, to } => {
                assert_eq!((from.as_str(), to.as_str()), ("E13", "E23"));
            }
            other => panic!("expected a moved pair, got {other:?}"),
        }
    }

    #[test]
    fn nontriviality_requires_incidence_with_the_curve() {
        let model = kummer();
        let fd3 = fiber_check(&model, &kummer_fiber(3)).unwrap();
        // C34 meets E4 but C14 does not meet C44, so C44 as target curve
        // fails the incidence precondition.
        assert!(matches!(
            translation_nontriviality(&model, &fd3, "C14", "C34", "C44"),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            translation_nontriviality(&model, &fd3, "C14", "C24", "F1"),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            translation_nontriviality(&model, &fd3, "E1", "C24", "E4"),
            Err(Error::Fibration(fibration::Error::NotASection(_)))
        ));
    }

    #[test]
    fn identity_is_certified_inert_on_e4() {
        let model = kummer();
        let cert = inertia_certificate(&Isometry::identity(&model), &model, "E4").unwrap();
        match cert.verdict {
            CertVerdict::InertiaCertified { witnesses } => {
                assert!(witnesses.len() >= 3);
                for w in ["C14", "C24", "C34"] {
                    assert!(witnesses.contains(&w.to_string()));
                }
            }
            other => panic!("expected certification, got {other:?}"),
        }
    }

    #[test]
    fn pencil_translation_is_certified_inert_on_e4() {
        let model = kummer();
        let fd = fiber_check(&model, &kummer_fiber(1)).unwrap();
        let td = translation_isometry(&model, &fd, "C11", "C12").unwrap();
        let cert = inertia_certificate(&td.isometry, &model, "E4").unwrap();
        match cert.verdict {
            CertVerdict::InertiaCertified { witnesses } => {
                assert_eq!(witnesses, vec!["C14", "C24", "C34"]);
            }
            other => panic!("expected certification, got {other:?}"),
        }
    }

    #[test]
    fn most_algebraic_pencil_translation_is_certified_inert_on_g3() {
        let model = most_algebraic();
        let d1 = Divisor::new(&[
            ("F1", 1),
            ("E13'", 2),
            ("E13", 3),
            ("G3", 4),
            ("E23", 3),
            ("E23'", 2),
            ("F2", 1),
            ("E33", 2),
        ]);
        let fd = fiber_check(&model, &d1).unwrap();
        let td = translation_isometry(&model, &fd, "E11'", "E12'").unwrap();
        let cert = inertia_certificate(&td.isometry, &model, "G3").unwrap();
        match cert.verdict {
            CertVerdict::InertiaCertified { witnesses } => {
                assert_eq!(witnesses, vec!["E13", "E23", "E33"]);
            }
            other => panic!("expected certification, got {other:?}"),
        }
    }

    #[test]
    fn swapping_rulings_moves_a_neighbor_class() {
        let model = kummer();
        let cfg = model.config();
        // The graph automorphism exchanging the first two horizontal fibers
        // (F1 with F2 and C1j with C2j) preserves the pairing and fixes E4.
        let swap = |name: &str| -> String {
            let mut chars: Vec<char> = name.chars().collect();
            if matches!(chars[0], 'F' | 'C') {
                match chars[1] {
                    '1' => chars[1] = '2',
                    '2' => chars[1] = '1',
                    _ => {}
                }
            }
            chars.into_iter().collect()
        };
        let cols: Vec<RatVec> = model
            .basis_curves()
            .iter()
            .map(|&i| model.class_of(&swap(cfg.curve_name(i))).unwrap().clone())
            .collect();
        let t = Isometry::new(&model, RatMat::from_cols(cols), "swap12").unwrap();
        let cert = inertia_certificate(&t, &model, "E4").unwrap();
        match cert.verdict {
            CertVerdict::NontrivialOnCurve { from, to } => {
                assert_eq!((from.as_str(), to.as_str()), ("C14", "C24"));
            }
            other => panic!("expected a moved neighbor, got {other:?}"),
        }
    }

    #[test]
    fn single_neighbor_curve_is_inconclusive() {
        let model = lattice_model(&builtin("e8_thm51").unwrap()).unwrap();
        let cert = inertia_certificate(&Isometry::identity(&model), &model, "C8").unwrap();
        assert!(matches!(cert.verdict, CertVerdict::Inconclusive { .. }));
    }

    #[test]
    fn moved_class_is_rejected_as_base() {
        let model = kummer();
        let fd3 = fiber_check(&model, &kummer_fiber(3)).unwrap();
        let td = translation_isometry(&model, &fd3, "C14", "C24").unwrap();
        // The translation moves C14, so C14 cannot be certified at all.
        assert!(matches!(
            inertia_certificate(&td.isometry, &model, "C14"),
            Err(Error::ClassNotFixed(_))
        ));
    }
}
