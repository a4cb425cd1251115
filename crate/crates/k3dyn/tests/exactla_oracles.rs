//! Cross-checks of the exact linear algebra layer against independently
//! written oracles: a plain rational row reduction, a bounded-box brute
//! force for short vectors, and a cofactor-expansion characteristic
//! polynomial. The oracles share no code with the production paths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3dyn::exactla::{
    char_poly, int_vec, kernel, make_lattice, orthogonal_complement, short_vectors, signature,
    signature_of_rat, IntMat, IntVec, Poly, RatMat, RowLattice,
};

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

fn br(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

/// Textbook Gaussian elimination, kept deliberately separate from the
/// Hermite-form machinery in the crate. Returns the rank.
fn rank_oracle(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] * &inv;
                for (entry, piv) in row.iter_mut().zip(&pivot) {
                    *entry -= &f * piv;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Brute force over the coordinate box |x_i| <= m * (Q^-1)_ii, which is a
/// valid bound for x^T Q x = m on positive definite Q.
fn short_vectors_oracle(gram: &IntMat, n: i64) -> Vec<IntVec> {
    let r = gram.rows();
    let q = {
        let mut q = RatMat::zero(r, r);
        for i in 0..r {
            for j in 0..r {
                q[(i, j)] = BigRational::from(-&gram[(i, j)]);
            }
        }
        q
    };
    let m = BigRational::from(bi(-n));
    // Diagonal of Q^-1 by solving against unit vectors.
    let mut bounds = Vec::with_capacity(r);
    for i in 0..r {
        let mut e = vec![BigRational::zero(); r];
        e[i] = BigRational::one();
        let col = q.solve(&e).expect("definite, hence invertible");
        let b2 = &m * &col[i];
        let mut b = 0i64;
        while BigRational::from(bi((b + 1) * (b + 1))) <= b2 {
            b += 1;
        }
        bounds.push(b);
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; r];
    enumerate_box(&bounds, 0, &mut x, &mut |x| {
        let xv: IntVec = x.iter().map(|&c| bi(c)).collect();
        let gx = gram.mul_vec(&xv);
        let val: BigInt = xv.iter().zip(&gx).map(|(a, b)| a * b).sum();
        if val == bi(n) {
            let first = xv.iter().find(|e| !e.is_zero());
            if first.is_some_and(|f| f.is_positive()) {
                out.push(xv);
            }
        }
    });
    out.sort();
    out
}

fn enumerate_box(bounds: &[i64], i: usize, x: &mut [i64], f: &mut impl FnMut(&[i64])) {
    if i == bounds.len() {
        f(x);
        return;
    }
    for v in -bounds[i]..=bounds[i] {
        x[i] = v;
        enumerate_box(bounds, i + 1, x, f);
    }
}

/// Characteristic polynomial by recursive cofactor expansion of xI - M over
/// the polynomial ring.
fn char_poly_oracle(m: &IntMat) -> Poly {
    let n = m.rows();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = Poly::from_coeffs(vec![-&m[(i, j)]]);
                    if i == j {
                        a.add(&Poly::x())
                    } else {
                        a
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for (j, top) in m[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let term = top.mul(&poly_det(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// The E8 configuration Gram (all curves of square -2, the tree with arms
/// of lengths 1, 2, 4 at the trivalent node), negated definite of
/// determinant 1 with 240 roots.
fn e8_gram() -> IntMat {
    let edges = [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    let mut g = IntMat::zero(8, 8);
    for i in 0..8 {
        g[(i, i)] = bi(-2);
    }
    for &(a, b) in &edges {
        g[(a, b)] = bi(1);
        g[(b, a)] = bi(1);
    }
    g
}

#[test]
fn e8_has_240_roots_and_unimodular_gram() {
    let l = make_lattice(e8_gram()).unwrap();
    assert_eq!(l.det(), bi(1));
    let s = signature(&l);
    assert_eq!((s.positive, s.negative, s.zero), (0, 8, 0));
    let roots = short_vectors(&l, &bi(-2)).unwrap();
    assert_eq!(roots.len(), 120, "240 roots come in 120 +- pairs");
}

#[test]
fn e8_complement_of_a_root_has_rank_seven() {
    let l = make_lattice(e8_gram()).unwrap();
    let mut root = vec![BigInt::zero(); 8];
    root[0] = BigInt::one();
    let c = orthogonal_complement(&l, &[root]).unwrap();
    assert_eq!(c.len(), 7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_matches_rank_oracle(entries in prop::collection::vec(-4i64..=4, 1..=20)) {
        // Shape the entry pool into a matrix of up to 5x4.
        let cols = 4usize.min(entries.len());
        let rows = entries.len() / cols;
        prop_assume!(rows >= 1);
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|r| entries[r * cols..(r + 1) * cols].to_vec())
            .collect();
        let rat_rows: Vec<Vec<BigRational>> = data
            .iter()
            .map(|r| r.iter().map(|&e| br(e)).collect())
            .collect();
        let m = RatMat::from_rows(rat_rows.clone());
        let ker = kernel(&m);
        let rank = rank_oracle(rat_rows);
        prop_assert_eq!(ker.len(), cols - rank);
        for v in &ker {
            let img = m.mul_vec(&v.iter().map(|e| BigRational::from(e.clone())).collect::<Vec<_>>());
            prop_assert!(img.iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn short_vectors_match_brute_force(
        entries in prop::collection::vec(-2i64..=2, 16),
        rank in 1usize..=4,
        target in prop::sample::select(vec![-2i64, -4, -6]),
    ) {
        // G = -(B^T B + I) is negative definite for any integer B.
        let mut b = IntMat::zero(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                b[(i, j)] = bi(entries[i * 4 + j]);
            }
        }
        let bt_b = b.transpose().mul(&b);
        let mut g = IntMat::zero(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                g[(i, j)] = -&bt_b[(i, j)];
            }
            g[(i, i)] -= bi(1);
        }
        let l = make_lattice(g.clone()).unwrap();
        let fast = short_vectors(&l, &bi(target)).unwrap();
        let slow = short_vectors_oracle(&g, target);
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn char_poly_matches_cofactor_expansion(entries in prop::collection::vec(-5i64..=5, 25)) {
        let n = 5;
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = bi(entries[i * n + j]);
            }
        }
        let fast = char_poly(&m.to_rat()).unwrap();
        let slow = char_poly_oracle(&m);
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn signature_is_permutation_invariant(
        entries in prop::collection::vec(-5i64..=5, 21),
        seed in any::<u64>(),
    ) {
        // Build a random 6x6 symmetric matrix from 21 free entries.
        let n = 6;
        let mut g = IntMat::zero(n, n);
        let mut it = entries.iter();
        for i in 0..n {
            for j in i..n {
                let e = bi(*it.next().unwrap());
                g[(i, j)] = e.clone();
                g[(j, i)] = e;
            }
        }
        // Deterministic pseudo-random permutation from the seed.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let mut p = IntMat::zero(n, n);
        for (i, &pi) in perm.iter().enumerate() {
            p[(i, pi)] = bi(1);
        }
        let conj = p.mul(&g).mul(&p.transpose());
        let s1 = signature_of_rat(&g.to_rat());
        let s2 = signature_of_rat(&conj.to_rat());
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn double_complement_contains_the_span(idx in prop::collection::vec(0usize..8, 1..=3)) {
        let l = make_lattice(e8_gram()).unwrap();
        let s: Vec<IntVec> = idx
            .iter()
            .map(|&i| {
                let mut v = int_vec(&[0; 8]);
                v[i] = bi(1) + bi(i as i64); // deliberately imprimitive sometimes
                v
            })
            .collect();
        let c1 = orthogonal_complement(&l, &s).unwrap();
        let c2 = orthogonal_complement(&l, &c1).unwrap();
        let span = RowLattice::from_generators(
            &c2.iter()
                .map(|v| v.iter().map(|e| BigRational::from(e.clone())).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        for v in &s {
            let vr: Vec<BigRational> = v.iter().map(|e| BigRational::from(e.clone())).collect();
            prop_assert!(span.contains(&vr));
        }
    }
}
