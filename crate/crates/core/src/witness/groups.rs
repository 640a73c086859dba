//! Classical matrix groups with fixed forms: `SO_n` preserves the
//! antidiagonal form `F_n`, `Sp_2m` preserves `[[0, F_m], [-F_m, 0]]`.
//! Borel, maximal unipotent and torus subgroups are the upper triangular,
//! upper unitriangular and diagonal matrices of each group.

use super::qsqrt2::QSqrt2;
use crate::linalg::{determinant, identity, inverse, mat_mul, transpose, Field, Matrix, Q};
use crate::rootdata::Series;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

pub type S = QSqrt2;
pub type M = Matrix<S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    SL,
    Sp,
    SO,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub size: usize,
}

impl GroupSpec {
    pub fn sl(n: usize) -> Self {
        GroupSpec { kind: GroupKind::SL, size: n }
    }

    pub fn sp(size: usize) -> Self {
        assert!(size % 2 == 0, "Sp needs even size");
        GroupSpec { kind: GroupKind::Sp, size }
    }

    pub fn so(n: usize) -> Self {
        GroupSpec { kind: GroupKind::SO, size: n }
    }

    /// Matrix of the invariant form, if any.
    pub fn form(&self) -> Option<M> {
        match self.kind {
            GroupKind::SL => None,
            GroupKind::SO => Some(antidiagonal(self.size)),
            GroupKind::Sp => Some(symplectic_form(self.size / 2)),
        }
    }

    /// Number of free torus coordinates.
    pub fn torus_rank(&self) -> usize {
        match self.kind {
            GroupKind::SL => self.size - 1,
            GroupKind::Sp | GroupKind::SO => self.size / 2,
        }
    }

    /// Root system type of the group.
    pub fn series(&self) -> (Series, usize) {
        match self.kind {
            GroupKind::SL => (Series::A, self.size - 1),
            GroupKind::Sp => (Series::C, self.size / 2),
            GroupKind::SO if self.size % 2 == 1 => (Series::B, self.size / 2),
            GroupKind::SO => (Series::D, self.size / 2),
        }
    }
}

fn to_strings(m: &M) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn serialize_matrix<Ser: Serializer>(m: &M, s: Ser) -> Result<Ser::Ok, Ser::Error> {
    to_strings(m).serialize(s)
}

/// A matrix tagged with the group it is meant to lie in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupElement {
    pub group: GroupSpec,
    #[serde(serialize_with = "serialize_matrix")]
    pub entries: M,
}

pub fn s_int(v: i64) -> S {
    S::from_int(v)
}

pub fn s_q(v: Q) -> S {
    S::rational(v)
}

/// `F_n`: ones on the antidiagonal.
pub fn antidiagonal(n: usize) -> M {
    (0..n).map(|i| (0..n).map(|j| if i + j == n - 1 { S::one() } else { S::zero() }).collect()).collect()
}

/// `[[0, F_m], [-F_m, 0]]`.
pub fn symplectic_form(m: usize) -> M {
    let n = 2 * m;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i + j != n - 1 {
                        S::zero()
                    } else if i < m {
                        S::one()
                    } else {
                        -S::one()
                    }
                })
                .collect()
        })
        .collect()
}

/// Exact membership under the fixed forms.
pub fn is_in_group(g: &GroupElement) -> bool {
    let n = g.group.size;
    let m = &g.entries;
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return false;
    }
    match g.group.kind {
        GroupKind::SL => determinant(m) == S::one(),
        GroupKind::Sp => {
            let j = g.group.form().expect("Sp has a form");
            mat_mul(&mat_mul(&transpose(m), &j), m) == j
        }
        GroupKind::SO => {
            let f = g.group.form().expect("SO has a form");
            mat_mul(&mat_mul(&transpose(m), &f), m) == f && determinant(m) == S::one()
        }
    }
}

/// Diagonal torus element. For `SL_n` the parameters are `t_1..t_{n-1}` and
/// `t_n` is fixed by the determinant; for `Sp` and `SO` they are
/// `t_1..t_k` with diagonal `(t_1, .., t_k, [1], t_k^-1, .., t_1^-1)`.
pub fn torus_element(spec: GroupSpec, params: &[S]) -> M {
    assert_eq!(params.len(), spec.torus_rank());
    let n = spec.size;
    let mut diag = vec![S::one(); n];
    match spec.kind {
        GroupKind::SL => {
            let mut prod = S::one();
            for (i, t) in params.iter().enumerate() {
                diag[i] = t.clone();
                prod = prod * t.clone();
            }
            diag[n - 1] = prod.inv();
        }
        GroupKind::Sp | GroupKind::SO => {
            for (i, t) in params.iter().enumerate() {
                diag[i] = t.clone();
                diag[n - 1 - i] = t.inv();
            }
        }
    }
    let mut m = identity(n);
    for (i, d) in diag.into_iter().enumerate() {
        m[i][i] = d;
    }
    m
}

/// Fundamental-weight coordinates of one factor in the coordinates
/// `eps_1..eps_k` of the torus parameters, or `None` if the weight is not a
/// character of the matrix group (a spin weight).
pub fn epsilon_coords(spec: GroupSpec, coords: &[i64]) -> Option<Vec<i64>> {
    let (series, rank) = spec.series();
    assert_eq!(coords.len(), rank);
    let k = spec.torus_rank();
    // twice the eps coordinates, to absorb the halves of spin weights
    let mut twice = vec![0i64; k];
    for (idx, &a) in coords.iter().enumerate() {
        let i = idx + 1;
        let half_spin = match series {
            Series::B => i == rank,
            Series::D => i + 1 >= rank,
            _ => false,
        };
        if half_spin {
            let last_sign = if series == Series::D && i == rank - 1 { -1 } else { 1 };
            for (j, t) in twice.iter_mut().enumerate() {
                *t += if j + 1 == rank { a * last_sign } else { a };
            }
        } else {
            for t in twice.iter_mut().take(i) {
                *t += 2 * a;
            }
        }
    }
    if twice.iter().any(|t| t % 2 != 0) {
        return None;
    }
    Some(twice.into_iter().map(|t| t / 2).collect())
}

/// `prod t_i^{eps_i}`.
pub fn character_value(eps: &[i64], params: &[S]) -> S {
    eps.iter().zip(params).fold(S::one(), |acc, (&e, t)| acc * t.pow(e))
}

fn unit(n: usize, i: usize, j: usize) -> M {
    let mut m = vec![vec![S::zero(); n]; n];
    m[i][j] = S::one();
    m
}

fn add(a: &M, b: &M, sign: i64) -> M {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.clone() + s_int(sign) * y.clone()).collect())
        .collect()
}

fn in_lie_algebra(x: &M, form: &M) -> bool {
    let lhs = add(&mat_mul(&transpose(x), form), &mat_mul(form, x), 1);
    lhs.iter().all(|r| r.iter().all(|v| v.is_zero()))
}

/// Root vectors spanning the Lie algebra of the maximal unipotent subgroup.
pub fn positive_root_vectors(spec: GroupSpec) -> Vec<M> {
    let n = spec.size;
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let e = unit(n, i, j);
            match spec.form() {
                None => out.push(e),
                Some(form) => {
                    let (jp, ip) = (n - 1 - j, n - 1 - i);
                    if (jp, ip) < (i, j) {
                        continue;
                    }
                    let candidates = if (jp, ip) == (i, j) {
                        vec![e]
                    } else {
                        let partner = unit(n, jp, ip);
                        vec![add(&e, &partner, 1), add(&e, &partner, -1)]
                    };
                    if let Some(x) = candidates.into_iter().find(|x| in_lie_algebra(x, &form)) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

/// `exp(s x)` for nilpotent `x`, as a finite sum.
pub fn exp_nilpotent(x: &M, s: &S) -> M {
    let n = x.len();
    let mut result = identity(n);
    let mut term: M = identity(n);
    for k in 1..=n {
        term = mat_mul(&term, x);
        let coef = s.pow(k as i64) / s_int((1..=k as i64).product());
        if term.iter().all(|r| r.iter().all(|v| v.is_zero())) {
            break;
        }
        let scaled: M = term.iter().map(|r| r.iter().map(|v| coef.clone() * v.clone()).collect()).collect();
        result = add(&result, &scaled, 1);
    }
    result
}

/// Places `block` into the identity of order `size` at the rows and
/// columns `indices` (0-based).
pub fn embed(size: usize, block: &M, indices: &[usize]) -> M {
    assert_eq!(block.len(), indices.len());
    let mut m = identity(size);
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            m[i][j] = block[a][b].clone();
        }
    }
    m
}

/// Rows and columns `1` and `size` (first and last).
pub fn corner_indices(size: usize) -> Vec<usize> {
    vec![0, size - 1]
}

/// The central block of order `k` in a matrix of order `size`.
pub fn central_indices(size: usize, k: usize) -> Vec<usize> {
    let start = (size - k) / 2;
    (start..start + k).collect()
}

/// `theta_m : SO_m -> SO_{m+1}`, extending `P` by the identity on the
/// vector fixed in [`theta_frame`].
pub fn theta(m: usize, p: &M) -> M {
    let (e, v) = theta_frame(m);
    let ep = mat_mul(&e, p);
    let with_v = |a: &M| -> M {
        a.iter()
            .zip(&v)
            .map(|(row, vi)| {
                let mut r = row.clone();
                r.push(vi.clone());
                r
            })
            .collect()
    };
    let frame = with_v(&e);
    let inv = inverse(&frame).expect("frame is a basis");
    mat_mul(&with_v(&ep), &inv)
}

/// The isometric embedding `C^m -> C^{m+1}` as an `(m+1) x m` matrix, and
/// the vector spanning the orthogonal complement of its image. For even `m`
/// the basis goes to `e_1, .., e_{m/2}, e_{m/2+2}, .., e_{m+1}` and the vector
/// is `e_{m/2+1}`. For odd `m` the middle basis vector goes to
/// `(e_{(m+1)/2} + e_{(m+3)/2}) / sqrt 2` and the vector is
/// `e_{(m+1)/2} - e_{(m+3)/2}`.
pub fn theta_frame(m: usize) -> (M, Vec<S>) {
    let mut e = vec![vec![S::zero(); m]; m + 1];
    let mut v = vec![S::zero(); m + 1];
    let k = m / 2;
    if m % 2 == 0 {
        for i in 0..m {
            let row = if i < k { i } else { i + 1 };
            e[row][i] = S::one();
        }
        v[k] = S::one();
    } else {
        let half_sqrt2 = S::new(Q::from_integer(BigInt::from(0)), Q::new(BigInt::from(1), BigInt::from(2)));
        for i in 0..m {
            if i < k {
                e[i][i] = S::one();
            } else if i == k {
                e[k][k] = half_sqrt2.clone();
                e[k + 1][k] = half_sqrt2.clone();
            } else {
                e[i + 1][i] = S::one();
            }
        }
        v[k] = S::one();
        v[k + 1] = -S::one();
    }
    (e, v)
}

/// Seeded source of random exact group elements.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// `p/q` with `|p| <= 3`, `1 <= q <= 3`, possibly zero.
    pub fn rational(&mut self) -> S {
        let p: i64 = self.rng.gen_range(-3..=3);
        let q: i64 = self.rng.gen_range(1..=3);
        s_q(Q::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn nonzero_rational(&mut self) -> S {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn nonzero_q(&mut self) -> Q {
        self.nonzero_rational().a
    }

    pub fn torus_params(&mut self, spec: GroupSpec) -> Vec<S> {
        (0..spec.torus_rank()).map(|_| self.nonzero_rational()).collect()
    }

    pub fn unipotent(&mut self, spec: GroupSpec) -> M {
        let mut g = identity(spec.size);
        for x in positive_root_vectors(spec) {
            let s = self.rational();
            if !s.is_zero() {
                g = mat_mul(&g, &exp_nilpotent(&x, &s));
            }
        }
        g
    }

    fn lower_unipotent(&mut self, spec: GroupSpec) -> M {
        transpose(&self.unipotent(spec))
    }

    pub fn borel(&mut self, spec: GroupSpec) -> M {
        let params = self.torus_params(spec);
        mat_mul(&torus_element(spec, &params), &self.unipotent(spec))
    }

    /// A generic element `u_1 l t u_2`.
    pub fn element(&mut self, spec: GroupSpec) -> M {
        let u1 = self.unipotent(spec);
        let l = self.lower_unipotent(spec);
        let params = self.torus_params(spec);
        let t = torus_element(spec, &params);
        let u2 = self.unipotent(spec);
        mat_mul(&mat_mul(&mat_mul(&u1, &l), &t), &u2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(spec: GroupSpec, m: M) -> GroupElement {
        GroupElement { group: spec, entries: m }
    }

    #[test]
    fn identity_and_torus_membership() {
        assert!(is_in_group(&el(GroupSpec::sp(4), identity(4))));
        let t = s_int(3);
        for n in [4, 5] {
            let mut params = vec![S::one(); n / 2];
            params[0] = t.clone();
            let m = torus_element(GroupSpec::so(n), &params);
            assert_eq!(m[0][0], t);
            assert_eq!(m[n - 1][n - 1], t.inv());
            assert!(is_in_group(&el(GroupSpec::so(n), m)));
        }
        let not_so = torus_element(GroupSpec::sl(3), &[s_int(2), s_int(3)]);
        assert!(!is_in_group(&el(GroupSpec::so(3), not_so)));
    }

    #[test]
    fn root_vector_counts() {
        assert_eq!(positive_root_vectors(GroupSpec::sl(4)).len(), 6);
        assert_eq!(positive_root_vectors(GroupSpec::sp(4)).len(), 4);
        assert_eq!(positive_root_vectors(GroupSpec::sp(6)).len(), 9);
        assert_eq!(positive_root_vectors(GroupSpec::so(5)).len(), 4);
        assert_eq!(positive_root_vectors(GroupSpec::so(6)).len(), 6);
        assert_eq!(positive_root_vectors(GroupSpec::so(7)).len(), 9);
    }

    #[test]
    fn sampled_elements_are_members() {
        let mut s = Sampler::new(7);
        for spec in [GroupSpec::sl(3), GroupSpec::sp(4), GroupSpec::sp(2), GroupSpec::so(5), GroupSpec::so(6)] {
            for _ in 0..3 {
                assert!(is_in_group(&el(spec, s.element(spec))), "{spec:?}");
                assert!(is_in_group(&el(spec, s.borel(spec))), "{spec:?}");
            }
        }
    }

    #[test]
    fn theta_fixes_vector_and_is_multiplicative() {
        let mut s = Sampler::new(11);
        for m in [4, 5, 6] {
            let p = s.element(GroupSpec::so(m));
            let q = s.element(GroupSpec::so(m));
            let tp = theta(m, &p);
            assert!(is_in_group(&el(GroupSpec::so(m + 1), tp.clone())));
            let (_, v) = theta_frame(m);
            assert_eq!(crate::linalg::mat_vec(&tp, &v), v);
            assert_eq!(theta(m, &mat_mul(&p, &q)), mat_mul(&tp, &theta(m, &q)));
        }
        assert_eq!(theta(5, &identity(5)), identity(6));
    }

    #[test]
    fn epsilon_coordinates() {
        assert_eq!(epsilon_coords(GroupSpec::sl(4), &[0, 1, 0]), Some(vec![1, 1, 0]));
        assert_eq!(epsilon_coords(GroupSpec::sp(4), &[0, 1]), Some(vec![1, 1]));
        assert_eq!(epsilon_coords(GroupSpec::so(5), &[0, 1]), None);
        assert_eq!(epsilon_coords(GroupSpec::so(6), &[0, 1, 1]), Some(vec![1, 1, 0]));
        assert_eq!(epsilon_coords(GroupSpec::so(7), &[1, 0, 0]), Some(vec![1, 0, 0]));
    }
}
