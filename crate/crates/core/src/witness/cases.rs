//! The functions `f_1, f_2, f_3` of the Case 2 spaces, the subgroups they
//! are invariant under, and explicit points of their common zero locus.
//!
//! Matrix positions in the formulas below are 1-based.

use super::groups::{
    central_indices, corner_indices, embed, epsilon_coords, is_in_group, s_q, theta, GroupElement, GroupSpec, Sampler,
    M, S,
};
use super::WitnessError;
use crate::catalog::{self, Params};
use crate::linalg::{determinant, identity, inverse, mat_mul, Field, Q};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    C21,
    C22,
    C23,
    C24,
    C25,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::C21, CaseId::C22, CaseId::C23, CaseId::C24, CaseId::C25];

    pub fn catalog_id(self) -> &'static str {
        match self {
            CaseId::C21 => "case2-1",
            CaseId::C22 => "case2-2",
            CaseId::C23 => "case2-3",
            CaseId::C24 => "case2-4",
            CaseId::C25 => "case2-5",
        }
    }

    /// Whether an explicit witness family `(P_0, Q_0, ..)` exists.
    pub fn has_witness(self) -> bool {
        matches!(self, CaseId::C22 | CaseId::C24)
    }

    /// Whether `f_3` is built so that it vanishes wherever `f_1, f_2` do.
    pub fn has_zero_locus_check(self) -> bool {
        matches!(self, CaseId::C21 | CaseId::C23 | CaseId::C25)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseId::C21 => "2-1",
            CaseId::C22 => "2-2",
            CaseId::C23 => "2-3",
            CaseId::C24 => "2-4",
            CaseId::C25 => "2-5",
        };
        f.write_str(s)
    }
}

impl Serialize for CaseId {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

impl FromStr for CaseId {
    type Err = WitnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim_start_matches("case");
        CaseId::ALL.into_iter().find(|c| c.to_string() == s).ok_or_else(|| WitnessError::UnknownCase(s.to_string()))
    }
}

fn at(m: &M, i: usize, j: usize) -> S {
    m[i - 1][j - 1].clone()
}

/// Minor on 1-based `rows` and `cols`.
fn minor(m: &M, rows: &[usize], cols: &[usize]) -> S {
    let sub: M = rows.iter().map(|&r| cols.iter().map(|&c| at(m, r, c)).collect()).collect();
    determinant(&sub)
}

/// `(i, j)`-cofactor, 1-based.
fn cofactor(m: &M, i: usize, j: usize) -> S {
    let n = m.len();
    let rows: Vec<usize> = (1..=n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
    let d = minor(m, &rows, &cols);
    if (i + j) % 2 == 0 {
        d
    } else {
        -d
    }
}

fn mul3(a: &M, b: &M, c: &M) -> M {
    mat_mul(&mat_mul(a, b), c)
}

/// A case with concrete parameters: its groups, functions and the weights
/// documented for the functions.
#[derive(Clone, Debug)]
pub struct CaseFunctions {
    pub case: CaseId,
    pub params: Params,
    groups: Vec<GroupSpec>,
    /// Per function, per factor: the weight in torus parameter coordinates.
    eps_weights: Vec<Vec<Vec<i64>>>,
    /// Readable form of the weights.
    pub weight_labels: Vec<String>,
}

impl CaseFunctions {
    pub fn new(case: CaseId, params: &Params) -> Result<Self, WitnessError> {
        let inst = catalog::instantiate(case.catalog_id(), params)?;
        let p = |k: &str| params[k] as usize;
        let groups = match case {
            CaseId::C21 => vec![GroupSpec::so(p("n")), GroupSpec::so(p("n") + 1)],
            CaseId::C22 => vec![GroupSpec::sl(p("n")), GroupSpec::sp(2 * p("m"))],
            CaseId::C23 => vec![GroupSpec::sp(2 * p("n")), GroupSpec::sp(4)],
            CaseId::C24 => vec![GroupSpec::sp(2 * p("n")), GroupSpec::sp(2 * p("m")), GroupSpec::sp(2 * p("l"))],
            CaseId::C25 => vec![GroupSpec::sp(2 * p("n")), GroupSpec::sp(4), GroupSpec::sp(2 * p("m"))],
        };
        let offsets = inst.ambient.offsets();
        let mut eps_weights = Vec::new();
        for w in &inst.t_weights {
            let mut per_factor = Vec::new();
            for (k, g) in groups.iter().enumerate() {
                let (_, rank) = g.series();
                let coords = &w[offsets[k]..offsets[k] + rank];
                let eps = epsilon_coords(*g, coords).ok_or_else(|| {
                    WitnessError::Shape(format!("weight {w:?} is not a character of the matrix group"))
                })?;
                per_factor.push(eps);
            }
            eps_weights.push(per_factor);
        }
        if eps_weights.len() != 3 {
            return Err(WitnessError::Shape(format!("expected three weights, catalog has {}", eps_weights.len())));
        }
        Ok(CaseFunctions { case, params: params.clone(), groups, eps_weights, weight_labels: inst.labels })
    }

    pub fn groups(&self) -> &[GroupSpec] {
        &self.groups
    }

    fn param(&self, k: &str) -> usize {
        self.params[k] as usize
    }

    /// `(f_1, f_2, f_3)` at a tuple of matrices.
    pub fn eval(&self, g: &[M]) -> Result<[S; 3], WitnessError> {
        if g.len() != self.groups.len()
            || g.iter().zip(&self.groups).any(|(m, s)| m.len() != s.size || m.iter().any(|r| r.len() != s.size))
        {
            return Err(WitnessError::Shape(format!("case {} expects matrices of orders {:?}", self.case, self.sizes())));
        }
        Ok(match self.case {
            CaseId::C21 => {
                let n = self.param("n");
                let k = n / 2;
                let r = mat_mul(&g[1], &inverse(&theta(n, &g[0])).expect("invertible"));
                let f1 = at(&r, n + 1, 1);
                if n % 2 == 0 {
                    let f2 = at(&r, n + 1, k + 1);
                    let f3 = f1.clone() * at(&r, n, k + 1) - f2.clone() * at(&r, n, 1);
                    [f1, f2, f3]
                } else {
                    let f2 = at(&r, n + 1, k + 1) - at(&r, n + 1, k + 2);
                    let f3 = f1.clone() * (at(&r, n, k + 1) - at(&r, n, k + 2)) - f2.clone() * at(&r, n, 1);
                    [f1, f2, f3]
                }
            }
            CaseId::C22 => {
                let (n, m2) = (self.param("n"), 2 * self.param("m"));
                let (p, q) = (&g[0], &g[1]);
                let (c1, c2) = (cofactor(p, 1, n - 1), cofactor(p, 1, n));
                let f1 = at(p, n, n - 1) * at(q, m2, m2) - at(p, n, n) * at(q, m2, 1);
                let f2 = at(p, n, n - 1) * c1.clone() + at(p, n, n) * c2.clone();
                let f3 = at(q, m2, 1) * c1 + at(q, m2, m2) * c2;
                [f1, f2, f3]
            }
            CaseId::C23 => {
                let n2 = 2 * self.param("n");
                let r = mat_mul(&g[0], &inverse(&self.iota23(&g[1])).expect("invertible"));
                let rows = [n2 - 2, n2 - 1, n2];
                let f1 = at(&r, n2, 1);
                let f2 = minor(&r, &rows, &[1, 2, n2 - 1]);
                let w = minor(&r, &rows, &[1, 2, n2]);
                let f3 = f1.clone() * w + f2.clone() * at(&r, n2, 2);
                [f1, f2, f3]
            }
            CaseId::C24 => {
                let (p, q, r) = (&g[0], &g[1], &g[2]);
                let (a, b, c) = (p.len(), q.len(), r.len());
                let f1 = at(p, a, 1) * at(q, b, b) - at(p, a, a) * at(q, b, 1);
                let f2 = at(q, b, 1) * at(r, c, c) - at(q, b, b) * at(r, c, 1);
                let f3 = at(p, a, 1) * at(r, c, c) - at(p, a, a) * at(r, c, 1);
                [f1, f2, f3]
            }
            CaseId::C25 => {
                let (p, q, r) = (&g[0], &g[1], &g[2]);
                let (a, c) = (p.len(), r.len());
                let f1 = at(p, a, 1) * at(q, 4, 4) - at(p, a, a) * at(q, 4, 1);
                let f2 = at(r, c, 1) * at(q, 4, 3) - at(r, c, c) * at(q, 4, 2);
                let x = at(p, a, 1) * at(q, 3, 4) - at(p, a, a) * at(q, 3, 1);
                let y = at(r, c, 1) * at(q, 3, 3) - at(r, c, c) * at(q, 3, 2);
                let f3 = f2.clone() * x - f1.clone() * y;
                [f1, f2, f3]
            }
        })
    }

    fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.size).collect()
    }

    /// `Sp_4` placed in rows and columns `1, 2, 2n-1, 2n` of `Sp_2n`.
    fn iota23(&self, q: &M) -> M {
        let n2 = 2 * self.param("n");
        embed(n2, q, &[0, 1, n2 - 2, n2 - 1])
    }

    /// `lambda_i(t)` for torus parameters of every factor.
    pub fn weight_value(&self, i: usize, params: &[Vec<S>]) -> S {
        let mut v = S::one();
        for (eps, t) in self.eps_weights[i].iter().zip(params) {
            v = v * super::groups::character_value(eps, t);
        }
        v
    }

    /// A random element of the subgroup `H`, as a tuple acting on the right.
    pub fn random_h(&self, s: &mut Sampler) -> Vec<M> {
        let sp_central = |s: &mut Sampler, size: usize, k: usize| -> M {
            if k == 0 {
                identity(size)
            } else {
                embed(size, &s.element(GroupSpec::sp(k)), &central_indices(size, k))
            }
        };
        match self.case {
            CaseId::C21 => {
                let n = self.param("n");
                let p = s.element(GroupSpec::so(n));
                let tp = theta(n, &p);
                vec![p, tp]
            }
            CaseId::C22 => {
                let (n, m2) = (self.param("n"), 2 * self.param("m"));
                let a = s.element(GroupSpec::sl(2));
                let upper = embed(n, &s.element(GroupSpec::sl(n - 2)), &(0..n - 2).collect::<Vec<_>>());
                let h1 = mat_mul(&upper, &embed(n, &a, &[n - 2, n - 1]));
                let h2 = mat_mul(&embed(m2, &a, &corner_indices(m2)), &sp_central(s, m2, m2 - 2));
                vec![h1, h2]
            }
            CaseId::C23 => {
                let n2 = 2 * self.param("n");
                let a = s.element(GroupSpec::sp(4));
                let h1 = mat_mul(&self.iota23(&a), &sp_central(s, n2, n2 - 4));
                vec![h1, a]
            }
            CaseId::C24 => {
                let a = s.element(GroupSpec::sl(2));
                self.groups
                    .iter()
                    .map(|g| mat_mul(&embed(g.size, &a, &corner_indices(g.size)), &sp_central(s, g.size, g.size - 2)))
                    .collect()
            }
            CaseId::C25 => {
                let (n2, m2) = (2 * self.param("n"), 2 * self.param("m"));
                let a = s.element(GroupSpec::sl(2));
                let b = s.element(GroupSpec::sl(2));
                let h1 = mat_mul(&embed(n2, &a, &corner_indices(n2)), &sp_central(s, n2, n2 - 2));
                let h2 = mat_mul(&embed(4, &a, &[0, 3]), &embed(4, &b, &[1, 2]));
                let h3 = mat_mul(&embed(m2, &b, &corner_indices(m2)), &sp_central(s, m2, m2 - 2));
                vec![h1, h2, h3]
            }
        }
    }

    /// A random point with `f_1 = f_2 = 0` forced by construction, for the
    /// cases where `f_3` must then vanish as well.
    pub fn zero_locus_sample(&self, s: &mut Sampler) -> Option<Vec<M>> {
        match self.case {
            CaseId::C21 => {
                // R = Q theta(P)^-1 upper triangular
                let n = self.param("n");
                let p = s.element(GroupSpec::so(n));
                let r = s.borel(GroupSpec::so(n + 1));
                let q = mat_mul(&r, &theta(n, &p));
                Some(vec![p, q])
            }
            CaseId::C23 => {
                // R = P iota(Q)^-1 upper triangular
                let n2 = 2 * self.param("n");
                let q = s.element(GroupSpec::sp(4));
                let r = s.borel(GroupSpec::sp(n2));
                let p = mat_mul(&r, &self.iota23(&q));
                Some(vec![p, q])
            }
            CaseId::C25 => {
                // last rows of P and R proportional to the matching entries of row 4 of Q
                let (n2, m2) = (2 * self.param("n"), 2 * self.param("m"));
                let q = s.element(GroupSpec::sp(4));
                let p = self.aligned(s, n2, at(&q, 4, 1), at(&q, 4, 4))?;
                let r = self.aligned(s, m2, at(&q, 4, 2), at(&q, 4, 3))?;
                Some(vec![p, q, r])
            }
            _ => None,
        }
    }

    /// `b X c` in `Sp_size`: `b` Borel, `c` central, `X` a corner block whose
    /// last row is a nonzero multiple of `(u, v)`.
    fn aligned(&self, s: &mut Sampler, size: usize, u: S, v: S) -> Option<M> {
        if u.is_zero() && v.is_zero() {
            return None;
        }
        let alpha = s.nonzero_rational();
        let (au, av) = (alpha.clone() * u, alpha * v);
        let block = if !av.is_zero() {
            vec![vec![av.inv(), S::zero()], vec![au, av]]
        } else {
            vec![vec![S::zero(), -au.inv()], vec![au, S::zero()]]
        };
        let x = embed(size, &block, &corner_indices(size));
        let b = s.borel(GroupSpec::sp(size));
        let c = if size > 2 {
            embed(size, &s.element(GroupSpec::sp(size - 2)), &central_indices(size, size - 2))
        } else {
            identity(size)
        };
        Some(mul3(&b, &x, &c))
    }
}

/// Explicit points of the zero locus with prescribed coordinate values.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub case: CaseId,
    pub params: Params,
    pub abcd: [String; 4],
    pub elements: Vec<GroupElement>,
    pub membership: Vec<bool>,
    pub coordinate_names: Vec<String>,
    pub values: Vec<String>,
    pub expected_values: Vec<String>,
    pub f_values: Vec<String>,
    pub passed: bool,
}

/// Corner block `[[0, -1/x], [x, x d]]`, written as
/// `diag(s, 1/s) [[0, 1], [-1, 0]] [[1, d], [0, 1]]` with `s = -1/x`.
fn corner_block(x: &S, d: &S) -> M {
    let s = -x.inv();
    let diag = vec![vec![s.clone(), S::zero()], vec![S::zero(), s.inv()]];
    let w = vec![vec![S::zero(), S::one()], vec![-S::one(), S::zero()]];
    let shear = vec![vec![S::one(), d.clone()], vec![S::zero(), S::one()]];
    mul3(&diag, &w, &shear)
}

/// The families `(P_0, Q_0)` of case 2-2 and `(P_0, Q_0, R_0)` of case 2-4.
pub fn case_witness(case: CaseId, params: &Params, a: Q, b: Q, c: Q, d: Q) -> Result<WitnessRecord, WitnessError> {
    if [&a, &b, &c, &d].iter().any(|x| num_traits::Zero::is_zero(*x)) {
        return Err(WitnessError::ZeroParameter);
    }
    let cf = CaseFunctions::new(case, params)?;
    let abcd = [a.to_string(), b.to_string(), c.to_string(), d.to_string()];
    let (a, b, c, d) = (s_q(a), s_q(b), s_q(c), s_q(d));
    let (elements, names, values, expected): (Vec<M>, Vec<String>, Vec<S>, Vec<S>) = match case {
        CaseId::C22 => {
            let (n, m2) = (cf.param("n"), 2 * cf.param("m"));
            let mut p = vec![vec![S::zero(); n]; n];
            p[0][n - 1] = b.inv();
            for i in 1..n - 2 {
                p[i][i] = S::one();
            }
            p[n - 2][0] = d.inv();
            p[n - 1][n - 2] = b.clone() * d.clone();
            p[n - 1][n - 1] = -(a.clone() * d.clone());
            let corner = vec![vec![(a.clone() * c.clone()).inv(), S::zero()], vec![-(b.clone() * c.clone()), a.clone() * c.clone()]];
            let q = embed(m2, &corner, &corner_indices(m2));
            let names = vec![
                format!("P_{{1,{}}}", n - 1),
                format!("P_{{1,{n}}}"),
                format!("p_{{{n},{}}}", n - 1),
                format!("p_{{{n},{n}}}"),
                format!("q_{{{m2},1}}"),
                format!("q_{{{m2},{m2}}}"),
            ];
            let values = vec![
                cofactor(&p, 1, n - 1),
                cofactor(&p, 1, n),
                at(&p, n, n - 1),
                at(&p, n, n),
                at(&q, m2, 1),
                at(&q, m2, m2),
            ];
            let expected = vec![
                a.clone(),
                b.clone(),
                b.clone() * d.clone(),
                -(a.clone() * d.clone()),
                -(b.clone() * c.clone()),
                a.clone() * c.clone(),
            ];
            (vec![p, q], names, values, expected)
        }
        CaseId::C24 => {
            let mut mats = Vec::new();
            let mut names = Vec::new();
            let mut values = Vec::new();
            let mut expected = Vec::new();
            for (g, (x, letter)) in cf.groups.iter().zip([(&a, "p"), (&b, "q"), (&c, "r")]) {
                let k = g.size;
                let m = embed(k, &corner_block(x, &d), &corner_indices(k));
                names.push(format!("{letter}_{{{k},1}}"));
                names.push(format!("{letter}_{{{k},{k}}}"));
                values.push(at(&m, k, 1));
                values.push(at(&m, k, k));
                expected.push(x.clone());
                expected.push(x.clone() * d.clone());
                mats.push(m);
            }
            (mats, names, values, expected)
        }
        _ => return Err(WitnessError::NoWitness(case)),
    };
    let elements: Vec<GroupElement> =
        elements.into_iter().zip(&cf.groups).map(|(entries, g)| GroupElement { group: *g, entries }).collect();
    let membership: Vec<bool> = elements.iter().map(is_in_group).collect();
    let mats: Vec<M> = elements.iter().map(|e| e.entries.clone()).collect();
    let f = cf.eval(&mats)?;
    let passed = membership.iter().all(|&m| m) && values == expected && f.iter().all(|x| x.is_zero());
    let show = |v: &[S]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(WitnessRecord {
        case,
        params: params.clone(),
        abcd,
        elements,
        membership,
        coordinate_names: names,
        values: show(&values),
        expected_values: show(&expected),
        f_values: show(&f),
        passed,
    })
}
