//! Explicit semi-invariants for the non-equidimensional cases, exact checks
//! of their invariance properties, and the points of their zero locus that
//! witness a fibre of too large dimension.

pub mod cases;
pub mod groups;
pub mod qsqrt2;

use crate::catalog::{CatalogError, Params};
use crate::linalg::{inverse, mat_mul, Field, Q};
use cases::{case_witness, CaseFunctions, CaseId, WitnessRecord};
use groups::{torus_element, Sampler, M, S};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WitnessError {
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("witness parameters a, b, c, d must be nonzero")]
    ZeroParameter,
    #[error("case {0} has no explicit witness family")]
    NoWitness(CaseId),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Default parameters of each case, the smallest admissible ones.
pub fn default_params(case: CaseId) -> Params {
    let pairs: &[(&str, i64)] = match case {
        CaseId::C21 => &[("n", 5)],
        CaseId::C22 => &[("n", 5), ("m", 1)],
        CaseId::C23 => &[("n", 3)],
        CaseId::C24 => &[("n", 1), ("m", 1), ("l", 1)],
        CaseId::C25 => &[("n", 1), ("m", 1)],
    };
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
}

impl CheckTally {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

/// First failing sample of a check.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub function: usize,
    pub sample: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiInvarianceReport {
    pub case: CaseId,
    pub params: Params,
    pub samples: usize,
    pub seed: u64,
    pub weights: Vec<String>,
    pub left_u: CheckTally,
    pub torus: CheckTally,
    pub right_h: CheckTally,
    pub zero_locus: CheckTally,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_hom: Option<CheckTally>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Counterexample>,
}

fn show(ms: &[M]) -> Vec<Vec<Vec<String>>> {
    ms.iter().map(|m| m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()).collect()
}

fn product(a: &[M], b: &[M]) -> Vec<M> {
    a.iter().zip(b).map(|(x, y)| mat_mul(x, y)).collect()
}

struct Run<'a> {
    cf: &'a CaseFunctions,
    failure: Option<Counterexample>,
}

impl Run<'_> {
    /// Compares `got` with `expected` entrywise, keeping the first mismatch.
    fn compare(&mut self, tally: &mut CheckTally, check: &str, sample: usize, g: &[M], expected: &[S; 3], got: &[S; 3]) {
        let mut ok = true;
        for i in 0..3 {
            if expected[i] != got[i] {
                ok = false;
                if self.failure.is_none() {
                    self.failure = Some(Counterexample {
                        check: check.to_string(),
                        function: i + 1,
                        sample,
                        matrices: show(g),
                        expected: expected[i].to_string(),
                        got: got[i].to_string(),
                    });
                }
            }
        }
        tally.record(ok);
    }

    fn eval(&self, g: &[M]) -> [S; 3] {
        self.cf.eval(g).expect("sampled tuples have the right shape")
    }
}

/// Exact checks on `samples` random rational points:
/// `f_i(u g) = f_i(g)` for `u` upper unitriangular,
/// `f_i(t^-1 g) = lambda_i(t) f_i(g)` for `t` in the torus,
/// `f_i(g h) = f_i(g)` for `h` in the subgroup, and `f_3 = 0` on points where
/// `f_1 = f_2 = 0` is forced by construction.
pub fn check_semiinvariance(cf: &CaseFunctions, samples: usize, seed: u64) -> SemiInvarianceReport {
    let mut s = Sampler::new(seed);
    let specs = cf.groups().to_vec();
    let mut run = Run { cf, failure: None };
    let (mut left_u, mut torus, mut right_h, mut zero_locus) =
        (CheckTally::default(), CheckTally::default(), CheckTally::default(), CheckTally::default());
    let mut theta_hom = (cf.case == CaseId::C21).then(CheckTally::default);
    let zero = [S::zero(), S::zero(), S::zero()];

    for k in 0..samples {
        let g: Vec<M> = specs.iter().map(|sp| s.element(*sp)).collect();
        let fg = run.eval(&g);

        let u: Vec<M> = specs.iter().map(|sp| s.unipotent(*sp)).collect();
        let ug = product(&u, &g);
        let f = run.eval(&ug);
        run.compare(&mut left_u, "left_u", k, &ug, &fg, &f);

        let params: Vec<Vec<S>> = specs.iter().map(|sp| s.torus_params(*sp)).collect();
        let t_inv: Vec<M> = specs
            .iter()
            .zip(&params)
            .map(|(sp, p)| inverse(&torus_element(*sp, p)).expect("torus elements are invertible"))
            .collect();
        let tg = product(&t_inv, &g);
        let f = run.eval(&tg);
        let expected: [S; 3] = std::array::from_fn(|i| cf.weight_value(i, &params) * fg[i].clone());
        run.compare(&mut torus, "torus", k, &tg, &expected, &f);

        let h = cf.random_h(&mut s);
        let gh = product(&g, &h);
        let f = run.eval(&gh);
        run.compare(&mut right_h, "right_h", k, &gh, &fg, &f);

        if let Some(tally) = theta_hom.as_mut() {
            let n = cf.params["n"] as usize;
            let spec = specs[0];
            let (p, q) = (s.element(spec), s.element(spec));
            let ok = groups::theta(n, &mat_mul(&p, &q)) == mat_mul(&groups::theta(n, &p), &groups::theta(n, &q));
            tally.record(ok);
            if !ok && run.failure.is_none() {
                run.failure = Some(Counterexample {
                    check: "theta_hom".into(),
                    function: 0,
                    sample: k,
                    matrices: show(&[p, q]),
                    expected: "theta(PQ) = theta(P) theta(Q)".into(),
                    got: "mismatch".into(),
                });
            }
        }

        if cf.case.has_zero_locus_check() {
            if let Some(z) = cf.zero_locus_sample(&mut s) {
                let f = run.eval(&z);
                run.compare(&mut zero_locus, "zero_locus", k, &z, &zero, &f);
            }
        }
    }

    let tallies = [&left_u, &torus, &right_h, &zero_locus];
    let passed = tallies.iter().all(|t| t.failed == 0) && theta_hom.as_ref().map_or(true, |t| t.failed == 0);
    SemiInvarianceReport {
        case: cf.case,
        params: cf.params.clone(),
        samples,
        seed,
        weights: cf.weight_labels.clone(),
        left_u,
        torus,
        right_h,
        zero_locus,
        theta_hom,
        passed,
        failure: run.failure,
    }
}

/// Output of [`run`]: the semi-invariance report, plus the explicit witness
/// when the case has one and `abcd` is given.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessRun {
    pub semiinvariance: SemiInvarianceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    pub passed: bool,
}

pub fn run(
    case: CaseId,
    params: &Params,
    samples: usize,
    seed: u64,
    abcd: Option<[Q; 4]>,
) -> Result<WitnessRun, WitnessError> {
    let cf = CaseFunctions::new(case, params)?;
    let semiinvariance = check_semiinvariance(&cf, samples, seed);
    let witness = match abcd {
        Some([a, b, c, d]) if case.has_witness() => Some(case_witness(case, params, a, b, c, d)?),
        Some(_) => return Err(WitnessError::NoWitness(case)),
        None => None,
    };
    let passed = semiinvariance.passed && witness.as_ref().map_or(true, |w| w.passed);
    Ok(WitnessRun { semiinvariance, witness, passed })
}
