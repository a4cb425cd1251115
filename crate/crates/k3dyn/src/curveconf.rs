//! Configurations of rational curves and their intersection lattices.
//!
//! A [`CurveConfig`] is a finite list of named curves, a self-intersection
//! number per curve (`-2` for the smooth rational curves this crate is
//! about), a symmetric table of pairwise intersection multiplicities, and an
//! optional table of point coincidences. The coincidence triple `(a, b, c)`
//! asserts that the intersection points `a ∩ c` and `b ∩ c` are the same
//! point of `c`; absent such a triple, distinct curves meeting `c` are taken
//! to meet it at distinct points.
//!
//! The numerical classes of the curves usually satisfy linear relations, so
//! the Gram matrix of the full configuration is degenerate. The
//! [`LatticeModel`] picks a maximal linearly independent subset of curves
//! (greedy, first fit in listed order), restricts the form to it, and
//! expresses every curve as a rational vector in that basis. The model is
//! the nondegenerate quotient of the curve span by its radical, and all
//! fibration and dynamics computations run inside it.
//!
//! Three configurations are built in:
//!
//! * `kummer_fig1`: the 24-curve configuration on a Kummer surface of a
//!   product of two elliptic curves: four horizontal curves `E1..E4`, four
//!   vertical curves `F1..F4`, and sixteen exceptional curves `Cij` with
//!   `Cij` meeting exactly `Fi` and `Ej`. Span rank 18, signature (1, 17).
//! * `most_algebraic_fig2`: the 24-curve configuration on the most
//!   algebraic K3 surface: `F1..F3`, `G1..G3`, and chains
//!   `Fi - Eij' - Eij - Gj`. Span rank 20, signature (1, 19).
//! * `e8_thm51`: eight curves whose dual graph is the E8 diagram (arms of
//!   lengths 1, 2 and 4 at the trivalent node). Negative definite,
//!   determinant of absolute value 1, 240 roots, no nontrivial graph
//!   automorphisms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactla::{
    make_lattice, IntMat, Lattice, RatMat, RatVec, RowLattice,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown builtin configuration `{0}`")]
    UnknownName(String),
    #[error("duplicate curve name `{0}`")]
    DuplicateCurve(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("edge endpoints must be distinct curves (`{0}`)")]
    SelfEdge(String),
    #[error("intersection multiplicity on edge `{0}`-`{1}` must be positive")]
    ZeroEdge(String, String),
    #[error("coincidence ({0}, {1}, {2}) needs two distinct curves meeting the third")]
    BadCoincidence(String, String, String),
    #[error("configuration has {0} curves; automorphism search is limited to 32")]
    TooLarge(usize),
    #[error("curve classes span a zero lattice")]
    EmptySpan,
    #[error(transparent)]
    Linalg(#[from] crate::exactla::Error),
}

/// A named configuration of curves with exact intersection data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    name: String,
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    self_int: Vec<BigInt>,
    edges: BTreeMap<(usize, usize), u32>,
    coincidences: Vec<(usize, usize, usize)>,
}

impl CurveConfig {
    /// Builds a configuration from explicit data. `curves` lists
    /// `(name, self intersection)`; `edges` lists
    /// `(name, name, multiplicity)`; `coincidences` lists `(a, b, c)`
    /// triples identifying `a ∩ c` with `b ∩ c`.
    pub fn build(
        name: &str,
        curves: &[(&str, i64)],
        edges: &[(&str, &str, u32)],
        coincidences: &[(&str, &str, &str)],
    ) -> Result<Self, Error> {
        let mut cfg = CurveConfig {
            name: name.to_string(),
            names: Vec::new(),
            index: BTreeMap::new(),
            self_int: Vec::new(),
            edges: BTreeMap::new(),
            coincidences: Vec::new(),
        };
        for &(n, s) in curves {
            if cfg.index.insert(n.to_string(), cfg.names.len()).is_some() {
                return Err(Error::DuplicateCurve(n.to_string()));
            }
            cfg.names.push(n.to_string());
            cfg.self_int.push(BigInt::from(s));
        }
        for &(a, b, w) in edges {
            let (i, j) = (cfg.index_of(a)?, cfg.index_of(b)?);
            if i == j {
                return Err(Error::SelfEdge(a.to_string()));
            }
            if w == 0 {
                return Err(Error::ZeroEdge(a.to_string(), b.to_string()));
            }
            let key = (i.min(j), i.max(j));
            cfg.edges.insert(key, w);
        }
        for &(a, b, c) in coincidences {
            let (i, j, k) = (cfg.index_of(a)?, cfg.index_of(b)?, cfg.index_of(c)?);
            if i == j || i == k || j == k || cfg.pairing_u32(i, k) == 0 || cfg.pairing_u32(j, k) == 0
            {
                return Err(Error::BadCoincidence(
                    a.to_string(),
                    b.to_string(),
                    c.to_string(),
                ));
            }
            cfg.coincidences.push((i, j, k));
        }
        Ok(cfg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn curve_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize, Error> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn self_int(&self, i: usize) -> &BigInt {
        &self.self_int[i]
    }

    fn pairing_u32(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        self.edges
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0)
    }

    /// Intersection number of curves `i` and `j` (self-intersection on the
    /// diagonal).
    pub fn pairing(&self, i: usize, j: usize) -> BigInt {
        if i == j {
            self.self_int[i].clone()
        } else {
            BigInt::from(self.pairing_u32(i, j))
        }
    }

    /// Curves meeting `i`, with multiplicities, in index order.
    pub fn neighbors(&self, i: usize) -> Vec<(usize, u32)> {
        (0..self.len())
            .filter(|&j| j != i)
            .filter_map(|j| {
                let w = self.pairing_u32(i, j);
                (w > 0).then_some((j, w))
            })
            .collect()
    }

    pub fn coincidences(&self) -> &[(usize, usize, usize)] {
        &self.coincidences
    }

    /// Partition of the curves meeting `c` into classes of equal
    /// intersection points on `c`: the finest partition consistent with the
    /// coincidence table. Without coincidences every neighbor sits alone.
    pub fn point_classes_on(&self, c: usize) -> Vec<Vec<usize>> {
        let nbrs: Vec<usize> = self.neighbors(c).into_iter().map(|(j, _)| j).collect();
        let mut parent: BTreeMap<usize, usize> = nbrs.iter().map(|&j| (j, j)).collect();
        fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let p = parent[&x];
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r);
            r
        }
        for &(a, b, base) in &self.coincidences {
            if base == c && parent.contains_key(&a) && parent.contains_key(&b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent.insert(ra.max(rb), ra.min(rb));
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &j in &nbrs {
            let r = find(&mut parent, j);
            classes.entry(r).or_default().push(j);
        }
        classes.into_values().collect()
    }

    /// Full Gram matrix of the configuration, in curve order.
    pub fn gram(&self) -> IntMat {
        let n = self.len();
        let mut g = IntMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.pairing(i, j);
            }
        }
        g
    }
}

/// One of the builtin configurations, by name.
pub fn builtin(name: &str) -> Result<CurveConfig, Error> {
    match name {
        "kummer_fig1" => kummer_fig1(),
        "most_algebraic_fig2" => most_algebraic_fig2(),
        "e8_thm51" => e8_thm51(),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Names of all builtin configurations.
pub fn builtin_names() -> [&'static str; 3] {
    ["kummer_fig1", "most_algebraic_fig2", "e8_thm51"]
}

fn kummer_fig1() -> Result<CurveConfig, Error> {
    let mut names: Vec<String> = Vec::new();
    for i in 1..=4 {
        names.push(format!("E{i}"));
    }
    for i in 1..=4 {
        names.push(format!("F{i}"));
    }
    for i in 1..=4 {
        for j in 1..=4 {
            names.push(format!("C{i}{j}"));
        }
    }
    let curves: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), -2)).collect();
    // C_ij is the exceptional curve over the point where the horizontal
    // curve E_j and the vertical curve F_i used to meet; after blowing up it
    // meets exactly those two.
    let mut edges: Vec<(String, String, u32)> = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            edges.push((format!("C{i}{j}"), format!("F{i}"), 1));
            edges.push((format!("C{i}{j}"), format!("E{j}"), 1));
        }
    }
    let edge_refs: Vec<(&str, &str, u32)> = edges
        .iter()
        .map(|(a, b, w)| (a.as_str(), b.as_str(), *w))
        .collect();
    CurveConfig::build("kummer_fig1", &curves, &edge_refs, &[])
}

fn most_algebraic_fig2() -> Result<CurveConfig, Error> {
    let mut names: Vec<String> = Vec::new();
    for i in 1..=3 {
        names.push(format!("F{i}"));
    }
    for j in 1..=3 {
        names.push(format!("G{j}"));
    }
    for i in 1..=3 {
        for j in 1..=3 {
            names.push(format!("E{i}{j}"));
        }
    }
    for i in 1..=3 {
        for j in 1..=3 {
            names.push(format!("E{i}{j}'"));
        }
    }
    let curves: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), -2)).collect();
    // Chains F_i - E_ij' - E_ij - G_j.
    let mut edges: Vec<(String, String, u32)> = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            edges.push((format!("F{i}"), format!("E{i}{j}'"), 1));
            edges.push((format!("E{i}{j}'"), format!("E{i}{j}"), 1));
            edges.push((format!("E{i}{j}"), format!("G{j}"), 1));
        }
    }
    let edge_refs: Vec<(&str, &str, u32)> = edges
        .iter()
        .map(|(a, b, w)| (a.as_str(), b.as_str(), *w))
        .collect();
    CurveConfig::build("most_algebraic_fig2", &curves, &edge_refs, &[])
}

fn e8_thm51() -> Result<CurveConfig, Error> {
    let names: Vec<String> = (1..=8).map(|i| format!("C{i}")).collect();
    let curves: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), -2)).collect();
    let edge_idx = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)];
    let edges: Vec<(String, String, u32)> = edge_idx
        .iter()
        .map(|&(a, b)| (format!("C{a}"), format!("C{b}"), 1))
        .collect();
    let edge_refs: Vec<(&str, &str, u32)> = edges
        .iter()
        .map(|(a, b, w)| (a.as_str(), b.as_str(), *w))
        .collect();
    CurveConfig::build("e8_thm51", &curves, &edge_refs, &[])
}

/// The nondegenerate lattice the curve classes span, together with rational
/// coordinates for every curve.
///
/// Basis selection is greedy first fit in listed curve order: a curve joins
/// the basis when its pairing functional is linearly independent of those
/// already chosen. Since the pairing descends to a nondegenerate form on
/// the span modulo its radical, functional independence is exactly class
/// independence in that quotient, and a full greedy pass yields a basis of
/// it. Construction verifies that the coordinates reproduce every pairwise
/// intersection number.
#[derive(Debug, Clone)]
pub struct LatticeModel {
    config: CurveConfig,
    lattice: Lattice,
    basis: Vec<usize>,
    coords: Vec<RatVec>,
    class_lattice: RowLattice,
    cone_rep: Option<RatVec>,
}

impl LatticeModel {
    pub fn config(&self) -> &CurveConfig {
        &self.config
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Indices (into the config) of the curves chosen as basis.
    pub fn basis_curves(&self) -> &[usize] {
        &self.basis
    }

    /// Coordinates of curve `i` in the basis.
    pub fn class(&self, i: usize) -> &RatVec {
        &self.coords[i]
    }

    pub fn class_of(&self, name: &str) -> Result<&RatVec, Error> {
        Ok(&self.coords[self.config.index_of(name)?])
    }

    /// The lattice `N` generated by all curve classes; a finite-index
    /// overlattice of Z^rank in general.
    pub fn class_lattice(&self) -> &RowLattice {
        &self.class_lattice
    }

    /// Designated ample-like class fixing the positive cone: the sum of all
    /// curve classes, when that sum has positive square.
    pub fn cone_rep(&self) -> Option<&RatVec> {
        self.cone_rep.as_ref()
    }

    pub fn inner(&self, x: &RatVec, y: &RatVec) -> BigRational {
        self.lattice
            .inner_rat(x, y)
            .expect("model vectors have model rank")
    }
}

/// Builds the [`LatticeModel`] of a configuration.
pub fn lattice_model(cfg: &CurveConfig) -> Result<LatticeModel, Error> {
    let n = cfg.len();
    let g = cfg.gram();
    // Greedy basis: maintain reduced echelon rows of the selected pairing
    // functionals and accept curves that add rank.
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<(usize, RatVec)> = Vec::new(); // (pivot column, reduced row)
    for i in 0..n {
        let mut row: RatVec = (0..n)
            .map(|j| BigRational::from(g[(i, j)].clone()))
            .collect();
        for (pivot, basis_row) in &echelon {
            if !row[*pivot].is_zero() {
                let f = &row[*pivot] / &basis_row[*pivot];
                for (r, b) in row.iter_mut().zip(basis_row) {
                    let t = &f * b;
                    *r -= t;
                }
            }
        }
        if let Some(pivot) = row.iter().position(|e| !e.is_zero()) {
            echelon.push((pivot, row));
            basis.push(i);
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptySpan);
    }
    let r = basis.len();
    let mut sub = IntMat::zero(r, r);
    for (a, &i) in basis.iter().enumerate() {
        for (b, &j) in basis.iter().enumerate() {
            sub[(a, b)] = g[(i, j)].clone();
        }
    }
    let lattice = make_lattice(sub)?;
    // Coordinates: x_i solves  G[B,B] x_i = G[B, i].
    let gb = lattice.gram().to_rat();
    let mut coords: Vec<RatVec> = Vec::with_capacity(n);
    for i in 0..n {
        let rhs: RatVec = basis
            .iter()
            .map(|&b| BigRational::from(g[(b, i)].clone()))
            .collect();
        coords.push(gb.solve(&rhs)?);
    }
    // Every pairwise product must be reproduced exactly.
    for i in 0..n {
        for j in 0..n {
            let got = lattice
                .inner_rat(&coords[i], &coords[j])
                .expect("coords have basis length");
            assert_eq!(
                got,
                BigRational::from(g[(i, j)].clone()),
                "model fails to reproduce ({}, {})",
                cfg.curve_name(i),
                cfg.curve_name(j)
            );
        }
    }
    let class_lattice = RowLattice::from_generators(&coords);
    let sum: RatVec = (0..r)
        .map(|k| coords.iter().map(|c| &c[k]).sum::<BigRational>())
        .collect();
    let square = lattice.inner_rat(&sum, &sum).expect("rank checked");
    let cone_rep = square.is_positive().then_some(sum);
    Ok(LatticeModel {
        config: cfg.clone(),
        lattice,
        basis,
        coords,
        class_lattice,
        cone_rep,
    })
}

/// All permutations of the curves preserving self-intersections and
/// pairwise intersection multiplicities, as index maps `i -> perm[i]`,
/// in lexicographic order. Backtracking with degree and self-intersection
/// pruning; configurations beyond 32 curves are rejected.
pub fn dual_graph_automorphisms(cfg: &CurveConfig) -> Result<Vec<Vec<usize>>, Error> {
    let n = cfg.len();
    if n > 32 {
        return Err(Error::TooLarge(n));
    }
    // Cheap invariant per curve: (self intersection, sorted multiset of
    // (edge weight, neighbor self intersection)).
    let invariant: Vec<(BigInt, Vec<(u32, BigInt)>)> = (0..n)
        .map(|i| {
            let mut nb: Vec<(u32, BigInt)> = cfg
                .neighbors(i)
                .into_iter()
                .map(|(j, w)| (w, cfg.self_int(j).clone()))
                .collect();
            nb.sort();
            (cfg.self_int(i).clone(), nb)
        })
        .collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        cfg: &CurveConfig,
        invariant: &[(BigInt, Vec<(u32, BigInt)>)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = cfg.len();
        if depth == n {
            out.push(perm.clone());
            return;
        }
        for cand in 0..n {
            if used[cand] || invariant[depth] != invariant[cand] {
                continue;
            }
            let compatible = (0..depth)
                .all(|k| cfg.pairing_u32(depth, k) == cfg.pairing_u32(cand, perm[k]));
            if compatible {
                perm[depth] = cand;
                used[cand] = true;
                extend(cfg, invariant, perm, used, depth + 1, out);
                used[cand] = false;
                perm[depth] = usize::MAX;
            }
        }
    }
    extend(cfg, &invariant, &mut perm, &mut used, 0, &mut out);
    out.sort();
    Ok(out)
}

/// A formal integer combination of named curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    multiplicities: BTreeMap<String, BigInt>,
}

impl Divisor {
    pub fn new(parts: &[(&str, i64)]) -> Self {
        Divisor {
            multiplicities: parts
                .iter()
                .filter(|(_, m)| *m != 0)
                .map(|&(n, m)| (n.to_string(), BigInt::from(m)))
                .collect(),
        }
    }

    pub fn from_map(multiplicities: BTreeMap<String, BigInt>) -> Self {
        let multiplicities = multiplicities
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .collect();
        Divisor { multiplicities }
    }

    pub fn parts(&self) -> impl Iterator<Item = (&str, &BigInt)> {
        self.multiplicities.iter().map(|(n, m)| (n.as_str(), m))
    }

    pub fn multiplicity(&self, name: &str) -> BigInt {
        self.multiplicities
            .get(name)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn support_len(&self) -> usize {
        self.multiplicities.len()
    }

    /// gcd of the multiplicities (1 for the zero divisor).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        let g = self
            .multiplicities
            .values()
            .fold(BigInt::zero(), |acc, m| acc.gcd(m));
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }
}

impl std::fmt::Display for Divisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.multiplicities.is_empty() {
            return write!(f, "0");
        }
        for (k, (name, m)) in self.multiplicities.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{m}*{name}")?;
            }
        }
        Ok(())
    }
}

/// Class of a divisor in the model: the multiplicity-weighted sum of the
/// curve coordinate vectors.
pub fn divisor_class(model: &LatticeModel, d: &Divisor) -> Result<RatVec, Error> {
    let r = model.rank();
    let mut acc = vec![BigRational::zero(); r];
    for (name, mult) in d.parts() {
        let class = model.class_of(name)?;
        let m = BigRational::from(mult.clone());
        for (a, c) in acc.iter_mut().zip(class) {
            let t = &m * c;
            *a += t;
        }
    }
    Ok(acc)
}

/// Gram matrix as a rational matrix of the classes of the given curves.
pub fn classes_gram(model: &LatticeModel, curves: &[usize]) -> RatMat {
    let k = curves.len();
    let mut g = RatMat::zero(k, k);
    for (a, &i) in curves.iter().enumerate() {
        for (b, &j) in curves.iter().enumerate() {
            g[(a, b)] = model.inner(model.class(i), model.class(j));
        }
    }
    g
}
