//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive and independent of the library's linear algebra.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};

type R = BigRational;

fn r(v: i64) -> R {
    R::from_integer(BigInt::from(v))
}

/// Row echelon form; returns the pivot columns.
fn echelon(m: &mut [Vec<R>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = R::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..cols {
                    let d = f.clone() * m[row][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<R>> = rows.iter().map(|r0| r0.iter().map(|&x| r(x)).collect()).collect();
    echelon(&mut m).len()
}

/// Basis of `{x : rows * x = 0}` in `Q^ncols`.
pub fn kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<R>> {
    let mut m: Vec<Vec<R>> = rows.iter().map(|r0| r0.iter().map(|&x| r(x)).collect()).collect();
    let pivots = echelon(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![R::zero(); ncols];
            v[f] = R::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Clears denominators and divides by the content; sign kept.
pub fn primitive(v: &[R]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x.clone() * R::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    ints.iter().map(|x| i64::try_from(x / &g).expect("small")).collect()
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) <= max {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Support-minimal nonnegative solutions of `sum_j a_j w_j = 0`: for each
/// coordinate subset whose weights have a one-dimensional kernel with a
/// nowhere-zero generator of constant sign.
pub fn positive_circuits(weights: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = weights.len();
    let dim = weights.first().map_or(0, |w| w.len());
    let mut out = BTreeSet::new();
    for s in subsets(n, dim + 1) {
        // columns = chosen weights
        let rows: Vec<Vec<i64>> = (0..dim).map(|i| s.iter().map(|&j| weights[j][i]).collect()).collect();
        let k = kernel(&rows, s.len());
        if k.len() != 1 {
            continue;
        }
        let v = primitive(&k[0]);
        let signs: BTreeSet<i64> = v.iter().map(|x| x.signum()).collect();
        if signs.len() != 1 || signs.contains(&0) {
            continue;
        }
        let flip = if signs.contains(&-1) { -1 } else { 1 };
        let mut full = vec![0i64; n];
        for (t, &j) in s.iter().enumerate() {
            full[j] = flip * v[t];
        }
        out.insert(full);
    }
    out.into_iter().collect()
}

/// Dimension of the cone of invariant exponents, via its extreme rays.
pub fn invariant_cone_dim(weights: &[Vec<i64>]) -> usize {
    rank(&positive_circuits(weights))
}

/// Generators that are not a sum of two or more generators.
pub fn brute_indecomposables(gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let distinct: BTreeSet<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    let list: Vec<Vec<i64>> = distinct.iter().cloned().collect();
    let mut memo: HashMap<Vec<i64>, bool> = HashMap::new();
    fn reachable(v: &[i64], gens: &[Vec<i64>], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&b) = memo.get(v) {
            return b;
        }
        let mut ok = false;
        for g in gens {
            if g.iter().zip(v).all(|(a, b)| a <= b) {
                let rest: Vec<i64> = v.iter().zip(g).map(|(a, b)| a - b).collect();
                if reachable(&rest, gens, memo) {
                    ok = true;
                    break;
                }
            }
        }
        memo.insert(v.to_vec(), ok);
        ok
    }
    list.iter()
        .filter(|g| {
            !list.iter().any(|h| {
                h != *g && h.iter().zip(g.iter()).all(|(a, b)| a <= b) && {
                    let rest: Vec<i64> = g.iter().zip(h).map(|(a, b)| a - b).collect();
                    reachable(&rest, &list, &mut memo)
                }
            })
        })
        .cloned()
        .collect()
}

fn dot_r(n: &[R], v: &[i64]) -> R {
    n.iter().zip(v).fold(R::zero(), |acc, (a, &b)| acc + a.clone() * r(b))
}

/// Extremal rays of the cone spanned by `gens`, from its facets: the cone
/// is written in coordinates of its span, every hyperplane through
/// `dim - 1` generators with all generators on one side is a facet, and a
/// generator spans an extremal ray iff the facets through it cut out a line.
pub fn brute_extremal_rays(gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let nz: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    let k = rank(&nz);
    let prim = |g: &[i64]| primitive(&g.iter().map(|&x| r(x)).collect::<Vec<_>>());
    if k == 0 {
        return BTreeSet::new();
    }
    if k == 1 {
        return std::iter::once(prim(&nz[0])).collect();
    }
    // coordinates where the generator matrix has full column rank k
    let t: Vec<Vec<i64>> = (0..nz[0].len()).map(|i| nz.iter().map(|g| g[i]).collect()).collect();
    let mut coords = Vec::new();
    for i in 0..t.len() {
        let mut trial: Vec<Vec<i64>> = coords.iter().map(|&c: &usize| t[c].clone()).collect();
        trial.push(t[i].clone());
        if rank(&trial) == trial.len() {
            coords.push(i);
        }
    }
    let proj: Vec<Vec<i64>> = nz.iter().map(|g| coords.iter().map(|&c| g[c]).collect()).collect();
    let mut facets: Vec<Vec<R>> = Vec::new();
    for s in subsets(proj.len(), k - 1) {
        if s.len() != k - 1 {
            continue;
        }
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| proj[i].clone()).collect();
        let ker = kernel(&rows, k);
        if ker.len() != 1 {
            continue;
        }
        let n = ker[0].clone();
        let vals: Vec<R> = proj.iter().map(|g| dot_r(&n, g)).collect();
        if vals.iter().all(|v| !v.is_negative()) || vals.iter().all(|v| !v.is_positive()) {
            facets.push(n);
        }
    }
    let mut out = BTreeSet::new();
    for (g, p) in nz.iter().zip(&proj) {
        let tight: Vec<Vec<i64>> =
            facets.iter().filter(|n| dot_r(n, p).is_zero()).map(|n| primitive(n)).collect();
        if rank(&tight) == k - 1 {
            out.insert(prim(g));
        }
    }
    out
}

/// All `a in N^n` with `1 <= |a| <= degree`.
pub fn compositions(n: usize, degree: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x != 0) {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=left {
            cur[i] = v as i64;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

/// Result of the bounded enumeration for the `chi = 0` slice.
pub struct SliceOracle {
    /// Indecomposables of the monoid generated by the images.
    pub generators: BTreeSet<Vec<i64>>,
    /// Minimal kernel vectors found up to the bound.
    pub minimal_kernel: Vec<Vec<i64>>,
    /// Every kernel vector up to `check_degree` dominates a minimal one of
    /// degree at most `degree`.
    pub stable: bool,
}

/// `{sum a_i lambda_i : sum a_i chi_i = 0, |a| <= degree}`, reduced to its
/// indecomposables; stability is probed up to `check_degree`.
pub fn slice_oracle(pairs: &[(Vec<i64>, Vec<i64>)], degree: usize, check_degree: usize) -> SliceOracle {
    let n = pairs.len();
    let q = pairs.first().map_or(0, |p| p.1.len());
    let rk = pairs.first().map_or(0, |p| p.0.len());
    let in_kernel = |a: &[i64]| (0..q).all(|j| a.iter().zip(pairs).map(|(x, p)| x * p.1[j]).sum::<i64>() == 0);
    let mut kernel_vecs: Vec<Vec<i64>> = compositions(n, degree).into_iter().filter(|a| in_kernel(a)).collect();
    kernel_vecs.sort_by_key(|a| a.iter().sum::<i64>());
    let dominates = |a: &[i64], b: &[i64]| a.iter().zip(b).all(|(x, y)| x >= y);
    let mut minimal: Vec<Vec<i64>> = Vec::new();
    for a in &kernel_vecs {
        if !minimal.iter().any(|m| dominates(a, m)) {
            minimal.push(a.clone());
        }
    }
    let stable = compositions(n, check_degree)
        .into_iter()
        .filter(|a| in_kernel(a))
        .all(|a| minimal.iter().any(|m| dominates(&a, m)));
    let image = |a: &[i64]| -> Vec<i64> {
        (0..rk).map(|i| a.iter().zip(pairs).map(|(x, p)| x * p.0[i]).sum()).collect()
    };
    let images: Vec<Vec<i64>> = minimal.iter().map(|a| image(a)).collect();
    SliceOracle { generators: brute_indecomposables(&images), minimal_kernel: minimal, stable }
}

/// Random symmetric torus action: `c` zero weights and `d` opposite pairs,
/// shuffled. Returns `(torus_rank, weights, c, d)`.
pub fn random_symmetric_action(rng: &mut ChaCha8Rng, max_rank: usize, max_n: usize, bound: i64) -> (usize, Vec<Vec<i64>>, usize, usize) {
    let rank = rng.gen_range(1..=max_rank);
    let d = rng.gen_range(0..=max_n / 2);
    let c = rng.gen_range(0..=max_n - 2 * d);
    let mut weights = Vec::new();
    for _ in 0..d {
        let chi = loop {
            let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect();
            if v.iter().any(|&x| x != 0) {
                break v;
            }
        };
        weights.push(chi.iter().map(|x| -x).collect());
        weights.push(chi);
    }
    for _ in 0..c {
        weights.push(vec![0; rank]);
    }
    for i in (1..weights.len()).rev() {
        let j = rng.gen_range(0..=i);
        weights.swap(i, j);
    }
    (rank, weights, c, d)
}

/// Random nonnegative generators for monoid tests.
pub fn random_monoid(rng: &mut ChaCha8Rng, max_dim: usize, max_gens: usize, bound: i64) -> (usize, Vec<Vec<i64>>) {
    let dim = rng.gen_range(1..=max_dim);
    let n = rng.gen_range(1..=max_gens);
    let gens = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(0..=bound)).collect()).collect();
    (dim, gens)
}
