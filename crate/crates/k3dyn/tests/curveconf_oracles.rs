//! Automorphism groups of the builtin configurations, cross-checked against
//! a brute-force permutation scan where that is feasible and against group
//! axioms plus orbit counting where it is not.

use k3dyn::curveconf::{builtin, dual_graph_automorphisms, CurveConfig};

/// Exhaustive scan over all permutations; only usable for small configs.
fn brute_force_autos(cfg: &CurveConfig) -> Vec<Vec<usize>> {
    let n = cfg.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    permute(&mut perm, 0, &mut |p| {
        let ok = (0..n).all(|i| {
            (i..n).all(|j| cfg.pairing(i, j) == cfg.pairing(p[i], p[j]))
        });
        if ok {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

fn is_group(perms: &[Vec<usize>]) -> bool {
    use std::collections::BTreeSet;
    let set: BTreeSet<&Vec<usize>> = perms.iter().collect();
    let n = perms[0].len();
    let id: Vec<usize> = (0..n).collect();
    if !set.contains(&id) {
        return false;
    }
    for a in perms {
        let inv = {
            let mut v = vec![0; n];
            for (i, &ai) in a.iter().enumerate() {
                v[ai] = i;
            }
            v
        };
        if !set.contains(&inv) {
            return false;
        }
        for b in perms {
            let comp: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
            if !set.contains(&comp) {
                return false;
            }
        }
    }
    true
}

#[test]
fn e8_brute_force_confirms_trivial_group() {
    let cfg = builtin("e8_thm51").unwrap();
    let fast = dual_graph_automorphisms(&cfg).unwrap();
    let slow = brute_force_autos(&cfg);
    assert_eq!(fast, slow);
    assert_eq!(fast.len(), 1);
}

#[test]
fn pentagon_brute_force_gives_dihedral_group() {
    let cfg = CurveConfig::build(
        "pentagon",
        &[("A", -2), ("B", -2), ("C", -2), ("D", -2), ("E", -2)],
        &[
            ("A", "B", 1),
            ("B", "C", 1),
            ("C", "D", 1),
            ("D", "E", 1),
            ("E", "A", 1),
        ],
        &[],
    )
    .unwrap();
    let fast = dual_graph_automorphisms(&cfg).unwrap();
    let slow = brute_force_autos(&cfg);
    assert_eq!(fast, slow);
    assert_eq!(fast.len(), 10);
}

#[test]
fn kummer_group_order_is_1152() {
    // (4!)^2 for independent relabelings of the E and F families (the C
    // curves follow), times 2 for the involution exchanging the families.
    let cfg = builtin("kummer_fig1").unwrap();
    let autos = dual_graph_automorphisms(&cfg).unwrap();
    assert_eq!(autos.len(), 1152);
    assert!(is_group(&autos));
    for p in &autos {
        for i in 0..cfg.len() {
            for j in i..cfg.len() {
                assert_eq!(cfg.pairing(i, j), cfg.pairing(p[i], p[j]));
            }
        }
    }
}

#[test]
fn most_algebraic_group_order_is_72() {
    // (3!)^2 for relabelings of the F and G families, times 2 for the
    // involution swapping the two chain directions.
    let cfg = builtin("most_algebraic_fig2").unwrap();
    let autos = dual_graph_automorphisms(&cfg).unwrap();
    assert_eq!(autos.len(), 72);
    assert!(is_group(&autos));
}

#[test]
fn oversized_config_is_rejected() {
    let names: Vec<String> = (0..33).map(|i| format!("X{i}")).collect();
    let curves: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), -2)).collect();
    let cfg = CurveConfig::build("big", &curves, &[], &[]).unwrap();
    assert!(dual_graph_automorphisms(&cfg).is_err());
}
