//! Elliptic fibration layer: Kodaira classification of configured divisors,
//! sections, vertical root systems, the trivial lattice, the Shioda
//! projection, and Mordell-Weil rank bookkeeping.
//!
//! A fiber is handed in as a [`Divisor`] on a curve configuration. The
//! classifier matches the weighted dual graph of its support, together with
//! the multiplicities, against the affine ADE templates; the templates
//! themselves are produced by [`render`], so classification and generation
//! cannot drift apart. Everything downstream (vertical roots, trivial
//! lattice, Shioda projection) works in the class lattice of a
//! [`LatticeModel`] with exact arithmetic throughout.
//!
//! Two curves meeting with multiplicity two support both an `I2` fiber (two
//! transverse points) and a `III` fiber (one tangent point), and the
//! configuration data cannot tell them apart, so the classifier returns an
//! explicit marker for that shape. A triangle is `I3` by default; it becomes
//! `IV` only when the coincidence table identifies the three pairwise
//! intersection points.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::curveconf::{self, divisor_class, CurveConfig, Divisor, LatticeModel};
use crate::exactla::{
    self, int_kernel, make_lattice, rat_vec_from_int, row_hermite, short_vectors, IntMat, IntVec,
    RatMat, RatVec, RowLattice,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a fiber: {0}")]
    NotAFiber(String),
    #[error("fiber support is disconnected")]
    DisconnectedSupport,
    #[error("class has nonzero square {0}")]
    NotIsotropic(BigRational),
    #[error("class is zero in the lattice model")]
    ZeroClass,
    #[error("curve {0} is not a section of this fiber")]
    NotASection(String),
    #[error("component group is undefined for an irreducible fiber")]
    IrreducibleType,
    #[error("no synthetic template for this fiber type")]
    NoTemplate,
    #[error("linear system on the trivial lattice is singular")]
    SingularSystem,
    #[error(transparent)]
    Config(#[from] curveconf::Error),
    #[error(transparent)]
    Linalg(#[from] exactla::Error),
}

/// Kodaira fiber types reachable from curve configurations, plus the
/// irreducible catch-all `Smooth` for a fiber given as a single curve of
/// square zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaType {
    /// Cycle of `b >= 2` curves, all multiplicity one.
    I(u32),
    /// Chain of `b + 1` curves of multiplicity two with two reduced leaves
    /// at each end (`b >= 0`).
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
    /// Three curves through one common point.
    IV,
    /// Two curves meeting at one point with contact of order two. Never
    /// produced by the classifier: see `AmbiguousI2OrIII`.
    III,
    /// Two curves meeting with total multiplicity two: `I2` when the points
    /// are distinct, `III` when they coincide, and the configuration data
    /// carries no way to distinguish them.
    AmbiguousI2OrIII,
    /// Irreducible fiber: a single curve of square zero.
    Smooth,
}

impl std::fmt::Display for KodairaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaType::I(b) => write!(f, "I{b}"),
            KodairaType::IStar(b) => write!(f, "I{b}*"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::III => write!(f, "III"),
            KodairaType::AmbiguousI2OrIII => write!(f, "I2|III"),
            KodairaType::Smooth => write!(f, "smooth"),
        }
    }
}

/// Synthetic configuration realizing a fiber type, together with the fiber
/// divisor carrying the standard multiplicities. Curve names are generated;
/// the shapes are the affine ADE diagrams. `III` (a tangency) and `Smooth`
/// have no faithful configuration and return `NoTemplate`.
pub fn render(t: &KodairaType) -> Result<(CurveConfig, Divisor), Error> {
    let cycle = |b: u32| -> Result<(CurveConfig, Divisor), Error> {
        let names: Vec<String> = (0..b).map(|i| format!("c{i}")).collect();
        let curves: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), -2)).collect();
        let mut edges: Vec<(&str, &str, u32)> = Vec::new();
        if b == 2 {
            edges.push((&names[0], &names[1], 2));
        } else {
            for i in 0..b as usize {
                edges.push((&names[i], &names[(i + 1) % b as usize], 1));
            }
        }
        let cfg = CurveConfig::build(&format!("I{b}"), &curves, &edges, &[])?;
        let div = Divisor::new(&names.iter().map(|n| (n.as_str(), 1)).collect::<Vec<_>>());
        Ok((cfg, div))
    };
    match t {
        KodairaType::I(b) if *b >= 2 => cycle(*b),
        KodairaType::AmbiguousI2OrIII => cycle(2),
        KodairaType::IV => {
            let cfg = CurveConfig::build(
                "IV",
                &[("t0", -2), ("t1", -2), ("t2", -2)],
                &[("t0", "t1", 1), ("t1", "t2", 1), ("t0", "t2", 1)],
                &[("t0", "t1", "t2"), ("t1", "t2", "t0"), ("t0", "t2", "t1")],
            )?;
            Ok((cfg, Divisor::new(&[("t0", 1), ("t1", 1), ("t2", 1)])))
        }
        KodairaType::IStar(b) => {
            let b = *b as usize;
            let centers: Vec<String> = (0..=b).map(|i| format!("z{i}")).collect();
            let mut curves: Vec<(String, i64)> =
                centers.iter().map(|n| (n.clone(), -2)).collect();
            for leaf in ["p0", "p1", "q0", "q1"] {
                curves.push((leaf.to_string(), -2));
            }
            let mut edges: Vec<(String, String, u32)> = Vec::new();
            for i in 0..b {
                edges.push((centers[i].clone(), centers[i + 1].clone(), 1));
            }
            edges.push(("p0".into(), centers[0].clone(), 1));
            edges.push(("p1".into(), centers[0].clone(), 1));
            edges.push(("q0".into(), centers[b].clone(), 1));
            edges.push(("q1".into(), centers[b].clone(), 1));
            let curves_ref: Vec<(&str, i64)> =
                curves.iter().map(|(n, s)| (n.as_str(), *s)).collect();
            let edges_ref: Vec<(&str, &str, u32)> = edges
                .iter()
                .map(|(a, b, w)| (a.as_str(), b.as_str(), *w))
                .collect();
            let cfg = CurveConfig::build(&format!("I{b}*"), &curves_ref, &edges_ref, &[])?;
            let mut parts: Vec<(&str, i64)> =
                centers.iter().map(|n| (n.as_str(), 2)).collect();
            parts.extend([("p0", 1), ("p1", 1), ("q0", 1), ("q1", 1)]);
            Ok((cfg, Divisor::new(&parts)))
        }
        KodairaType::IVStar => {
            let cfg = CurveConfig::build(
                "IV*",
                &[
                    ("z", -2),
                    ("m0", -2),
                    ("m1", -2),
                    ("m2", -2),
                    ("l0", -2),
                    ("l1", -2),
                    ("l2", -2),
                ],
                &[
                    ("z", "m0", 1),
                    ("z", "m1", 1),
                    ("z", "m2", 1),
                    ("m0", "l0", 1),
                    ("m1", "l1", 1),
                    ("m2", "l2", 1),
                ],
                &[],
            )?;
            let div = Divisor::new(&[
                ("z", 3),
                ("m0", 2),
                ("m1", 2),
                ("m2", 2),
                ("l0", 1),
                ("l1", 1),
                ("l2", 1),
            ]);
            Ok((cfg, div))
        }
        KodairaType::IIIStar => {
            let cfg = CurveConfig::build(
                "III*",
                &[
                    ("a0", -2),
                    ("a1", -2),
                    ("a2", -2),
                    ("z", -2),
                    ("b2", -2),
                    ("b1", -2),
                    ("b0", -2),
                    ("m", -2),
                ],
                &[
                    ("a0", "a1", 1),
                    ("a1", "a2", 1),
                    ("a2", "z", 1),
                    ("z", "b2", 1),
                    ("b2", "b1", 1),
                    ("b1", "b0", 1),
                    ("m", "z", 1),
                ],
                &[],
            )?;
            let div = Divisor::new(&[
                ("a0", 1),
                ("a1", 2),
                ("a2", 3),
                ("z", 4),
                ("b2", 3),
                ("b1", 2),
                ("b0", 1),
                ("m", 2),
            ]);
            Ok((cfg, div))
        }
        KodairaType::IIStar => {
            let cfg = CurveConfig::build(
                "II*",
                &[
                    ("a1", -2),
                    ("a2", -2),
                    ("a3", -2),
                    ("a4", -2),
                    ("a5", -2),
                    ("z", -2),
                    ("b2", -2),
                    ("b1", -2),
                    ("m", -2),
                ],
                &[
                    ("a1", "a2", 1),
                    ("a2", "a3", 1),
                    ("a3", "a4", 1),
                    ("a4", "a5", 1),
                    ("a5", "z", 1),
                    ("z", "b2", 1),
                    ("b2", "b1", 1),
                    ("z", "m", 1),
                ],
                &[],
            )?;
            let div = Divisor::new(&[
                ("a1", 1),
                ("a2", 2),
                ("a3", 3),
                ("a4", 4),
                ("a5", 5),
                ("z", 6),
                ("b2", 4),
                ("b1", 2),
                ("m", 3),
            ]);
            Ok((cfg, div))
        }
        _ => Err(Error::NoTemplate),
    }
}

/// A node-labeled weighted graph: the data the classifier compares.
struct LabeledGraph {
    mult: Vec<BigInt>,
    adj: Vec<Vec<(usize, u32)>>,
}

fn labeled_graph(cfg: &CurveConfig, support: &[usize], d: &Divisor) -> LabeledGraph {
    let pos: BTreeMap<usize, usize> = support.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mult = support
        .iter()
        .map(|&i| d.multiplicity(cfg.curve_name(i)))
        .collect();
    let adj = support
        .iter()
        .map(|&i| {
            cfg.neighbors(i)
                .into_iter()
                .filter_map(|(j, w)| pos.get(&j).map(|&k| (k, w)))
                .collect()
        })
        .collect();
    LabeledGraph { mult, adj }
}

fn node_profile(g: &LabeledGraph, v: usize) -> (BigInt, Vec<(u32, BigInt)>) {
    let mut nbrs: Vec<(u32, BigInt)> = g.adj[v]
        .iter()
        .map(|&(u, w)| (w, g.mult[u].clone()))
        .collect();
    nbrs.sort();
    (g.mult[v].clone(), nbrs)
}

/// Isomorphism of labeled weighted graphs by backtracking with profile
/// pruning. Sizes here are at most 13 nodes.
fn isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    let n = a.mult.len();
    if b.mult.len() != n {
        return false;
    }
    let pa: Vec<_> = (0..n).map(|v| node_profile(a, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| node_profile(b, v)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    let weight = |g: &LabeledGraph, x: usize, y: usize| -> u32 {
        g.adj[x]
            .iter()
            .find_map(|&(u, w)| (u == y).then_some(w))
            .unwrap_or(0)
    };
    #[allow(clippy::too_many_arguments)]
    fn assign(
        v: usize,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        n: usize,
        pa: &[(BigInt, Vec<(u32, BigInt)>)],
        pb: &[(BigInt, Vec<(u32, BigInt)>)],
        a: &LabeledGraph,
        weight_b: &dyn Fn(usize, usize) -> u32,
    ) -> bool {
        if v == n {
            return true;
        }
        for img in 0..n {
            if used[img] || pa[v] != pb[img] {
                continue;
            }
            let consistent = a.adj[v].iter().all(|&(u, w)| match map[u] {
                Some(mu) => weight_b(img, mu) == w,
                None => true,
            });
            if !consistent {
                continue;
            }
            map[v] = Some(img);
            used[img] = true;
            if assign(v + 1, map, used, n, pa, pb, a, weight_b) {
                return true;
            }
            map[v] = None;
            used[img] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    assign(0, &mut map, &mut used, n, &pa, &pb, a, &|x, y| {
        weight(b, x, y)
    })
}

/// Classifies a divisor as a Kodaira fiber by matching its weighted dual
/// graph with multiplicities against the affine ADE templates.
pub fn kodaira_classify(cfg: &CurveConfig, d: &Divisor) -> Result<KodairaType, Error> {
    let mut support: Vec<usize> = Vec::new();
    let mut mult: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (name, m) in d.parts() {
        let i = cfg.index_of(name)?;
        if !m.is_positive() {
            return Err(Error::NotAFiber(format!(
                "multiplicity of {name} is not positive"
            )));
        }
        if *cfg.self_int(i) != BigInt::from(-2) {
            return Err(Error::NotAFiber(format!(
                "support curve {name} has self-intersection {}",
                cfg.self_int(i)
            )));
        }
        support.push(i);
        mult.insert(i, m.clone());
    }
    if support.is_empty() {
        return Err(Error::NotAFiber("empty divisor".into()));
    }
    // The whole divisor must pair to zero with each of its components.
    for &i in &support {
        let pair: BigInt = support.iter().map(|&j| &mult[&j] * cfg.pairing(i, j)).sum();
        if !pair.is_zero() {
            return Err(Error::NotAFiber(format!(
                "pairs to {pair} with component {}",
                cfg.curve_name(i)
            )));
        }
    }
    // Connectivity of the support subgraph.
    {
        let sup: BTreeSet<usize> = support.iter().copied().collect();
        let mut seen = BTreeSet::from([support[0]]);
        let mut queue = VecDeque::from([support[0]]);
        while let Some(i) = queue.pop_front() {
            for (j, _) in cfg.neighbors(i) {
                if sup.contains(&j) && seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        if seen.len() != support.len() {
            return Err(Error::DisconnectedSupport);
        }
    }
    let n = support.len();
    let sup: BTreeSet<usize> = support.iter().copied().collect();
    let coincident = cfg
        .coincidences()
        .iter()
        .any(|&(a, b, c)| sup.contains(&a) && sup.contains(&b) && sup.contains(&c));
    // Candidate by coarse shape: cycle rank of the support multigraph and
    // the largest multiplicity.
    let edge_count: u32 = support
        .iter()
        .flat_map(|&i| {
            let sup = &sup;
            cfg.neighbors(i)
                .into_iter()
                .filter(move |&(j, _)| j > i && sup.contains(&j))
                .map(|(_, w)| w)
        })
        .sum();
    let cycle_rank = edge_count as i64 - n as i64 + 1;
    let max_mult = mult.values().max().cloned().unwrap_or_else(BigInt::zero);
    let tree_candidate = [
        (6, KodairaType::IIStar),
        (4, KodairaType::IIIStar),
        (3, KodairaType::IVStar),
    ]
    .into_iter()
    .find_map(|(m, t)| (max_mult == BigInt::from(m)).then_some(t))
    .or_else(|| {
        (max_mult == BigInt::from(2) && n >= 5).then(|| KodairaType::IStar(n as u32 - 5))
    });
    let candidate = match cycle_rank {
        0 => tree_candidate.ok_or_else(|| {
            Error::NotAFiber("tree shape matches no affine template".into())
        })?,
        1 if n == 2 => KodairaType::AmbiguousI2OrIII,
        1 if n == 3 && coincident => KodairaType::IV,
        1 if n >= 3 => KodairaType::I(n as u32),
        _ => {
            return Err(Error::NotAFiber(
                "support graph is not a tree or a single cycle".into(),
            ))
        }
    };
    if coincident && candidate != KodairaType::IV {
        // Identified intersection points break every template except the
        // three-curves-through-a-point fiber.
        return Err(Error::NotAFiber(
            "coincident intersection points in the support".into(),
        ));
    }
    let (tcfg, td) = render(&candidate)?;
    let t_support: Vec<usize> = (0..tcfg.len()).collect();
    let ga = labeled_graph(cfg, &support, d);
    let gb = labeled_graph(&tcfg, &t_support, &td);
    if !isomorphic(&ga, &gb) {
        return Err(Error::NotAFiber(format!(
            "support does not match the {candidate} template"
        )));
    }
    Ok(candidate)
}

/// A checked fiber: the divisor, its type, its class in the model, and the
/// named components.
#[derive(Debug, Clone)]
pub struct FiberData {
    pub divisor: Divisor,
    pub kodaira: KodairaType,
    pub fiber_class: RatVec,
    pub component_classes: Vec<(String, BigInt)>,
}

/// Validates a divisor as a fiber of the model: square zero first, then the
/// Kodaira template match, then exact orthogonality of the class against
/// every component class.
pub fn fiber_check(model: &LatticeModel, d: &Divisor) -> Result<FiberData, Error> {
    let class = divisor_class(model, d)?;
    let square = model.inner(&class, &class);
    if !square.is_zero() {
        return Err(Error::NotIsotropic(square));
    }
    if class.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroClass);
    }
    let cfg = model.config();
    let components: Vec<(String, BigInt)> =
        d.parts().map(|(n, m)| (n.to_string(), m.clone())).collect();
    // A single curve of square zero is an irreducible fiber; everything
    // else must be a Kodaira configuration of (-2)-curves.
    let kodaira = if components.len() == 1
        && components[0].1.is_one()
        && cfg.self_int(cfg.index_of(&components[0].0)?).is_zero()
    {
        KodairaType::Smooth
    } else {
        kodaira_classify(cfg, d)?
    };
    for (name, _) in &components {
        let c = model.class_of(name)?;
        assert!(
            model.inner(&class, c).is_zero(),
            "fiber class must pair to zero with component {name}"
        );
    }
    Ok(FiberData {
        divisor: d.clone(),
        kodaira,
        fiber_class: class,
        component_classes: components,
    })
}

/// Configuration curves meeting the fiber exactly once, excluding the fiber
/// components themselves, in configuration order.
pub fn sections_of(model: &LatticeModel, fd: &FiberData) -> Vec<String> {
    let cfg = model.config();
    let in_support: BTreeSet<&str> = fd
        .component_classes
        .iter()
        .map(|(n, _)| n.as_str())
        .collect();
    (0..cfg.len())
        .filter(|&i| !in_support.contains(cfg.curve_name(i)))
        .filter(|&i| model.inner(model.class(i), &fd.fiber_class).is_one())
        .map(|i| cfg.curve_name(i).to_string())
        .collect()
}

/// An irreducible ADE factor of a root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdeComponent {
    pub family: char,
    pub rank: usize,
}

impl std::fmt::Display for AdeComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Root system of `(F^perp cap L) / ZF` for the class lattice `L` of the
/// model.
#[derive(Debug, Clone)]
pub struct VerticalRootSystem {
    /// Number of simple roots (the vertical contribution to the Picard
    /// rank in the Shioda-Tate formula).
    pub root_rank: usize,
    /// Total number of norm -2 classes, counting both signs.
    pub root_count: usize,
    /// ADE decomposition, sorted.
    pub components: Vec<AdeComponent>,
    /// A simple-root basis lifted back to model coordinates. The lift is
    /// the representative with zero coefficient on `F` in a fixed completed
    /// basis, sorted lexicographically; deterministic.
    pub simple_roots: Vec<RatVec>,
}

fn integral_inner(model: &LatticeModel, x: &RatVec, y: &RatVec) -> BigInt {
    let v = model.inner(x, y);
    assert!(v.is_integer(), "class lattice pairing must be integral");
    v.to_integer()
}

/// Positive roots under the sign convention of `short_vectors` (first
/// nonzero coordinate positive), restricted to the indecomposable ones.
fn simple_system(positives: &[IntVec]) -> Vec<IntVec> {
    let set: BTreeSet<&IntVec> = positives.iter().collect();
    positives
        .iter()
        .filter(|r| {
            !positives.iter().any(|p| {
                if p == *r {
                    return false;
                }
                let diff: IntVec = r.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
                set.contains(&diff)
            })
        })
        .cloned()
        .collect()
}

/// Number of positive roots of an irreducible ADE system.
fn positive_root_count(c: &AdeComponent) -> usize {
    match (c.family, c.rank) {
        ('A', n) => n * (n + 1) / 2,
        ('D', n) => n * (n - 1),
        ('E', 6) => 36,
        ('E', 7) => 63,
        ('E', 8) => 120,
        _ => unreachable!("no such ADE component"),
    }
}

/// Identifies the connected components of a simple-root diagram. The input
/// comes from a negative definite integral lattice, whose norm -2 root
/// systems are always simply laced, so the arm-length case split is total.
fn ade_decompose(simples: &[IntVec], gram: &IntMat) -> Vec<AdeComponent> {
    let k = simples.len();
    let pair = |a: usize, b: usize| -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..gram.rows() {
            for j in 0..gram.cols() {
                acc += &simples[a][i] * &gram[(i, j)] * &simples[b][j];
            }
        }
        acc
    };
    let mut adj = vec![Vec::new(); k];
    for a in 0..k {
        for b in a + 1..k {
            let p = pair(a, b);
            assert!(
                p.is_zero() || p.is_one(),
                "simple roots of a definite lattice pair to 0 or 1"
            );
            if p.is_one() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    queue.push_back(u);
                }
            }
        }
        let n = comp.len();
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
        let family = match branch.len() {
            0 => 'A',
            1 => {
                let b = branch[0];
                assert_eq!(adj[b].len(), 3, "root diagrams have no degree-4 nodes");
                let mut arms: Vec<usize> = adj[b]
                    .iter()
                    .map(|&first| {
                        let (mut prev, mut cur, mut len) = (b, first, 1);
                        loop {
                            let next: Vec<usize> =
                                adj[cur].iter().copied().filter(|&u| u != prev).collect();
                            match next.as_slice() {
                                [] => break len,
                                [u] => {
                                    prev = cur;
                                    cur = *u;
                                    len += 1;
                                }
                                _ => unreachable!("second branch on an arm"),
                            }
                        }
                    })
                    .collect();
                arms.sort();
                match (arms[0], arms[1], arms[2]) {
                    (1, 1, _) => 'D',
                    (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => 'E',
                    other => unreachable!("arm lengths {other:?} are not ADE"),
                }
            }
            _ => unreachable!("two branch nodes in a root diagram"),
        };
        out.push(AdeComponent { family, rank: n });
    }
    out.sort();
    out
}

/// Computes the vertical root system of an isotropic class `F` with respect
/// to the full class lattice of the model, so reducible fibers that are not
/// spelled out in any divisor are still accounted for.
pub fn vertical_root_system(
    model: &LatticeModel,
    f_ambient: &RatVec,
) -> Result<VerticalRootSystem, Error> {
    if f_ambient.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroClass);
    }
    let square = model.inner(f_ambient, f_ambient);
    if !square.is_zero() {
        return Err(Error::NotIsotropic(square));
    }
    let lat = model.class_lattice();
    let r = lat.rank();
    let basis: Vec<RatVec> = (0..r).map(|i| lat.basis_row(i)).collect();
    let mut gl = IntMat::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            gl[(i, j)] = integral_inner(model, &basis[i], &basis[j]);
        }
    }
    // Primitive generator of QF inside the class lattice.
    let coords = RatMat::from_cols(basis.clone())
        .solve(f_ambient)
        .expect("class lattice basis spans the model");
    let f = crate::exactla::primitive_vector(&coords).expect("F is nonzero");

    let empty = VerticalRootSystem {
        root_rank: 0,
        root_count: 0,
        components: Vec::new(),
        simple_roots: Vec::new(),
    };
    if r < 3 {
        return Ok(empty);
    }
    // V = F-perp in L, then a basis of V whose first vector is F itself.
    let glf = gl.mul_vec(&f);
    let v_rows = int_kernel(&IntMat::from_rows(vec![glf]));
    assert_eq!(v_rows.len(), r - 1, "perp of a nonzero class in L");
    let v_lat = RowLattice::from_generators(
        &v_rows.iter().map(|row| rat_vec_from_int(row)).collect::<Vec<_>>(),
    );
    let c = v_lat
        .coordinates(&rat_vec_from_int(&f))
        .expect("an isotropic class lies in its own perp");
    let c_col = IntMat::from_rows(c.iter().map(|e| vec![e.clone()]).collect());
    let (h, u) = row_hermite(&c_col);
    assert!(h[(0, 0)].is_one(), "fiber class is primitive in its perp");
    // (U^T)^{-1} is integral with first row c, completing F to a basis.
    let t = invert_unimodular(&u.transpose());
    assert_eq!(t.row_vec(0), c);
    let m_rows: Vec<IntVec> = (0..v_lat.rank())
        .map(|i| {
            v_lat
                .basis_row(i)
                .iter()
                .map(|e| {
                    assert!(e.is_integer());
                    e.to_integer()
                })
                .collect()
        })
        .collect();
    let n_mat = t.mul(&IntMat::from_rows(m_rows));
    assert_eq!(n_mat.row_vec(0), f, "first completed basis vector is F");

    // Gram of the quotient V/ZF on the remaining basis vectors.
    let q_rank = r - 2;
    if q_rank == 0 {
        return Ok(empty);
    }
    let n_in_l: Vec<IntVec> = (1..r - 1).map(|i| n_mat.row_vec(i)).collect();
    let mut gq = IntMat::zero(q_rank, q_rank);
    for a in 0..q_rank {
        for b in 0..q_rank {
            let mut acc = BigInt::zero();
            for i in 0..r {
                for j in 0..r {
                    acc += &n_in_l[a][i] * &gl[(i, j)] * &n_in_l[b][j];
                }
            }
            gq[(a, b)] = acc;
        }
    }
    let q_lattice = make_lattice(gq.clone())?;
    let positives = short_vectors(&q_lattice, &BigInt::from(-2))?;
    let root_count = positives.len() * 2;
    let simples = simple_system(&positives);
    let components = ade_decompose(&simples, &gq);
    let expected: usize = components.iter().map(positive_root_count).sum();
    assert_eq!(
        expected,
        positives.len(),
        "every root must belong to an identified component"
    );
    // Lift: quotient coords -> L coords (zero F-coefficient by construction)
    // -> ambient model coordinates.
    let mut lifts: Vec<RatVec> = simples
        .iter()
        .map(|s| {
            let mut in_l = vec![BigInt::zero(); r];
            for (k, coeff) in s.iter().enumerate() {
                for (slot, e) in in_l.iter_mut().zip(&n_in_l[k]) {
                    *slot += coeff * e;
                }
            }
            let mut ambient = vec![BigRational::zero(); model.rank()];
            for (k, coeff) in in_l.iter().enumerate() {
                let cr = BigRational::from(coeff.clone());
                for (slot, e) in ambient.iter_mut().zip(&basis[k]) {
                    let term = &cr * e;
                    *slot += term;
                }
            }
            ambient
        })
        .collect();
    lifts.sort();
    Ok(VerticalRootSystem {
        root_rank: simples.len(),
        root_count,
        components,
        simple_roots: lifts,
    })
}

fn invert_unimodular(a: &IntMat) -> IntMat {
    let n = a.rows();
    let ar = a.to_rat();
    let mut out = IntMat::zero(n, n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        let col = ar.solve(&e).expect("unimodular matrix is invertible");
        for (i, v) in col.into_iter().enumerate() {
            assert!(v.is_integer(), "inverse of a unimodular matrix is integral");
            out[(i, j)] = v.to_integer();
        }
    }
    out
}

/// The sublattice spanned by the fiber class, a zero section, and the
/// vertical simple roots.
#[derive(Debug, Clone)]
pub struct TrivialLattice {
    /// Fiber class, zero section class, then the lifted simple roots.
    pub basis: Vec<RatVec>,
    pub gram: IntMat,
    fiber_class: RatVec,
    support: BTreeSet<String>,
}

impl TrivialLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn is_section(&self, model: &LatticeModel, name: &str) -> Result<RatVec, Error> {
        let class = model.class_of(name)?.clone();
        if self.support.contains(name) || !model.inner(&class, &self.fiber_class).is_one() {
            return Err(Error::NotASection(name.to_string()));
        }
        Ok(class)
    }
}

/// Assembles the trivial lattice for a fiber and a zero section `O`.
pub fn trivial_lattice(
    model: &LatticeModel,
    fd: &FiberData,
    zero_section: &str,
) -> Result<TrivialLattice, Error> {
    if !sections_of(model, fd).iter().any(|s| s == zero_section) {
        return Err(Error::NotASection(zero_section.to_string()));
    }
    let o_class = model.class_of(zero_section)?.clone();
    if model.inner(&o_class, &o_class) != BigRational::from(BigInt::from(-2)) {
        return Err(Error::NotASection(zero_section.to_string()));
    }
    let vrs = vertical_root_system(model, &fd.fiber_class)?;
    let mut basis = vec![fd.fiber_class.clone(), o_class];
    basis.extend(vrs.simple_roots.iter().cloned());
    let k = basis.len();
    let mut gram = IntMat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = integral_inner(model, &basis[i], &basis[j]);
        }
    }
    assert!(gram[(0, 0)].is_zero() && gram[(0, 1)].is_one());
    let lat = make_lattice(gram.clone())?;
    if lat.det().is_zero() {
        return Err(Error::SingularSystem);
    }
    Ok(TrivialLattice {
        basis,
        gram,
        fiber_class: fd.fiber_class.clone(),
        support: fd
            .component_classes
            .iter()
            .map(|(n, _)| n.clone())
            .collect(),
    })
}

/// Shioda projection of a section: the unique vector in
/// `class(P) + span_Q(triv)` orthogonal to all of `triv`.
pub fn shioda_project(
    model: &LatticeModel,
    triv: &TrivialLattice,
    section: &str,
) -> Result<RatVec, Error> {
    let p_class = triv.is_section(model, section)?;
    let k = triv.rank();
    let rhs: RatVec = (0..k)
        .map(|i| model.inner(&p_class, &triv.basis[i]))
        .collect();
    let x = triv
        .gram
        .to_rat()
        .solve(&rhs)
        .map_err(|_| Error::SingularSystem)?;
    let mut phi = p_class;
    for (coeff, b) in x.iter().zip(&triv.basis) {
        for (slot, e) in phi.iter_mut().zip(b) {
            let term = coeff * e;
            *slot -= term;
        }
    }
    for b in &triv.basis {
        assert!(
            model.inner(&phi, b).is_zero(),
            "projection must be orthogonal to the trivial lattice"
        );
    }
    assert!(
        !model.inner(&phi, &phi).is_positive(),
        "height is nonnegative on the orthogonal complement"
    );
    Ok(phi)
}

/// Canonical height of a section: `-(phi(P), phi(P))`, a nonnegative
/// rational, zero exactly when the projection vanishes.
pub fn section_height(
    model: &LatticeModel,
    triv: &TrivialLattice,
    section: &str,
) -> Result<BigRational, Error> {
    let phi = shioda_project(model, triv, section)?;
    Ok(-model.inner(&phi, &phi))
}

/// Mordell-Weil rank within the modeled lattice: `rank - 2 - root rank`.
pub fn mw_rank(model: &LatticeModel, fd: &FiberData, zero_section: &str) -> Result<usize, Error> {
    let triv = trivial_lattice(model, fd, zero_section)?;
    // basis = F, O, simple roots: root rank is everything past the first two.
    Ok(model.rank() - triv.rank())
}

/// Finite cyclic invariants of the component group of a reducible fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroup {
    /// Cyclic factors, e.g. `[2, 2]` for Z/2 x Z/2; empty means trivial.
    pub invariants: Vec<u64>,
}

impl ComponentGroup {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
}

impl std::fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.invariants.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Component group of a reducible Kodaira fiber, from the standard table.
/// The `I2`/`III` ambiguity is immaterial here: both have group Z/2.
pub fn component_group(t: &KodairaType) -> Result<ComponentGroup, Error> {
    let invariants = match t {
        KodairaType::I(b) if *b >= 2 => vec![*b as u64],
        KodairaType::I(_) | KodairaType::Smooth => return Err(Error::IrreducibleType),
        KodairaType::AmbiguousI2OrIII | KodairaType::III | KodairaType::IIIStar => vec![2],
        KodairaType::IV | KodairaType::IVStar => vec![3],
        KodairaType::IStar(b) if b % 2 == 0 => vec![2, 2],
        KodairaType::IStar(_) => vec![4],
        KodairaType::IIStar => Vec::new(),
    };
    Ok(ComponentGroup { invariants })
}
