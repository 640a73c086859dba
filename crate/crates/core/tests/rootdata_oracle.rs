//! Root data checked against explicit realisations of the simple roots in
//! `R^n` and against the longest Weyl group element computed by reflection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sphex::rootdata::{dual_weight, weight_inner_product, AmbientGroup, DominantWeight, Series, SimpleFactor};

type R = BigRational;

fn r(p: i64, q: i64) -> R {
    R::new(BigInt::from(p), BigInt::from(q))
}

fn e(n: usize, entries: &[(usize, R)]) -> Vec<R> {
    let mut v = vec![R::zero(); n];
    for (i, x) in entries {
        v[*i] = v[*i].clone() + x.clone();
    }
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<R> {
    e(n, &[(i, r(1, 1)), (j, r(-1, 1))])
}

/// Simple roots in the usual orthonormal coordinates.
fn simple_roots(series: Series, rank: usize) -> Vec<Vec<R>> {
    let chain = |n: usize, k: usize| (0..k).map(|i| diff(n, i, i + 1)).collect::<Vec<_>>();
    match series {
        Series::A => chain(rank + 1, rank),
        Series::B => {
            let mut v = chain(rank, rank - 1);
            v.push(e(rank, &[(rank - 1, r(1, 1))]));
            v
        }
        Series::C => {
            let mut v = chain(rank, rank - 1);
            v.push(e(rank, &[(rank - 1, r(2, 1))]));
            v
        }
        Series::D => {
            let mut v = chain(rank, rank - 1);
            v.push(e(rank, &[(rank - 2, r(1, 1)), (rank - 1, r(1, 1))]));
            v
        }
        Series::E => {
            let h = r(1, 2);
            let mut a1 = vec![-h.clone(); 8];
            a1[0] = h.clone();
            a1[7] = h;
            let mut v = vec![a1, e(8, &[(0, r(1, 1)), (1, r(1, 1))])];
            for i in 0..6 {
                v.push(diff(8, i + 1, i));
            }
            v.truncate(rank);
            v
        }
        Series::F => vec![
            diff(4, 1, 2),
            diff(4, 2, 3),
            e(4, &[(3, r(1, 1))]),
            e(4, &[(0, r(1, 2)), (1, r(-1, 2)), (2, r(-1, 2)), (3, r(-1, 2))]),
        ],
        Series::G => vec![diff(3, 0, 1), e(3, &[(0, r(-2, 1)), (1, r(1, 1)), (2, r(1, 1))])],
    }
}

fn dot(a: &[R], b: &[R]) -> R {
    a.iter().zip(b).fold(R::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn all_types() -> Vec<(Series, usize)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((Series::A, n));
    }
    for n in 2..=5 {
        out.push((Series::B, n));
        out.push((Series::C, n));
    }
    for n in 3..=7 {
        out.push((Series::D, n));
    }
    for n in 6..=8 {
        out.push((Series::E, n));
    }
    out.push((Series::F, 4));
    out.push((Series::G, 2));
    out
}

fn gram(series: Series, rank: usize) -> Vec<Vec<R>> {
    let roots = simple_roots(series, rank);
    let raw: Vec<Vec<R>> = roots.iter().map(|a| roots.iter().map(|b| dot(a, b)).collect()).collect();
    let longest = (0..rank).map(|i| raw[i][i].clone()).max().unwrap();
    let scale = r(2, 1) / longest;
    raw.into_iter().map(|row| row.into_iter().map(|x| x * scale.clone()).collect()).collect()
}

/// `C_ij = 2 (a_i, a_j) / (a_j, a_j)`.
fn cartan(g: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = g.len();
    (0..n).map(|i| (0..n).map(|j| r(2, 1) * g[i][j].clone() / g[j][j].clone()).collect()).collect()
}

fn invert(m: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = m.len();
    let mut a: Vec<Vec<R>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|j| if i == j { R::one() } else { R::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let inv = R::one() / a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let d = f.clone() * a[c][j].clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[test]
fn simple_root_gram_matches_realisation() {
    for (s, n) in all_types() {
        let f = SimpleFactor::new(s, n).unwrap();
        assert_eq!(f.simple_root_gram(), gram(s, n), "{f}");
        assert_eq!(f.cartan_matrix(), cartan(&gram(s, n)), "{f}");
    }
}

#[test]
fn fundamental_gram_matches_realisation() {
    // omega_i = sum_k (C^-1)_ik alpha_k
    for (s, n) in all_types() {
        let g = gram(s, n);
        let ci = invert(&cartan(&g));
        let want: Vec<Vec<R>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = R::zero();
                        for k in 0..n {
                            for l in 0..n {
                                acc = acc + ci[i][k].clone() * g[k][l].clone() * ci[j][l].clone();
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let f = SimpleFactor::new(s, n).unwrap();
        assert_eq!(f.fundamental_gram(), want, "{f}");
    }
}

/// `-w_0(lambda)`: reflect to the antidominant chamber and negate.
fn minus_w0(c: &[Vec<R>], lambda: &[i64]) -> Vec<i64> {
    let n = c.len();
    let mut v: Vec<R> = lambda.iter().map(|&x| r(x, 1)).collect();
    while let Some(i) = (0..n).find(|&i| v[i] > R::zero()) {
        let coef = v[i].clone();
        for j in 0..n {
            v[j] = v[j].clone() - coef.clone() * c[i][j].clone();
        }
    }
    v.iter().map(|x| -x.to_integer().try_into().unwrap_or(0i64)).collect()
}

#[test]
fn dual_permutation_matches_longest_element() {
    for (s, n) in all_types() {
        let c = cartan(&gram(s, n));
        let f = SimpleFactor::new(s, n).unwrap();
        let perm = f.dual_permutation();
        for k in 0..n {
            let mut w = vec![0; n];
            w[k] = 1;
            let image = minus_w0(&c, &w);
            let mut expected = vec![0; n];
            expected[perm[k]] = 1;
            assert_eq!(image, expected, "{f}, omega_{}", k + 1);
        }
    }
}

#[test]
fn dual_weight_preserves_inner_products() {
    let ambient = AmbientGroup::new(vec![
        SimpleFactor::new(Series::A, 4).unwrap(),
        SimpleFactor::new(Series::D, 5).unwrap(),
        SimpleFactor::new(Series::E, 6).unwrap(),
    ])
    .unwrap();
    let rank = ambient.rank();
    for seed in 0..20i64 {
        let a: Vec<i64> = (0..rank as i64).map(|i| (i * 7 + seed * 3) % 4).collect();
        let b: Vec<i64> = (0..rank as i64).map(|i| (i * 5 + seed) % 3).collect();
        let wa = DominantWeight::new(ambient.clone(), a).unwrap();
        let wb = DominantWeight::new(ambient.clone(), b).unwrap();
        let before = weight_inner_product(&wa, &wb).unwrap();
        let after = weight_inner_product(&dual_weight(&wa), &dual_weight(&wb)).unwrap();
        assert_eq!(before, after);
        assert_eq!(dual_weight(&dual_weight(&wa)), wa);
    }
}
