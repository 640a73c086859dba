//! Diagonal torus actions on vector spaces: symmetry, excellence, and the
//! dimensions of the categorical quotient and of the null cone.
//!
//! A coordinate set `A` is *unstable* when no nonzero `alpha >= 0` supported
//! on `A` satisfies `sum alpha_j mu_j = 0`, i.e. when `0` is not in the convex
//! hull of `{mu_j : j in A}`. The null cone is the union of the coordinate
//! subspaces over unstable sets, so its dimension is the largest unstable set.

use crate::linalg::{q, rank_int, to_q_rows, transpose, Q};
use crate::lp;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

/// Subset enumeration in [`null_cone_dimension`] is exponential; larger
/// inputs are rejected.
pub const MAX_NULL_CONE_COORDS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("weight {index} has length {got}, torus rank is {expected}")]
    WeightLength { index: usize, expected: usize, got: usize },
    #[error("null-cone search supports at most {MAX_NULL_CONE_COORDS} coordinates, got {0}")]
    TooLarge(usize),
}

/// Weights of a diagonal torus action, one per coordinate line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAction")]
pub struct TorusActionSpec {
    torus_rank: usize,
    weights: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawAction {
    torus_rank: usize,
    weights: Vec<Vec<i64>>,
}

impl TryFrom<RawAction> for TorusActionSpec {
    type Error = TorusError;
    fn try_from(raw: RawAction) -> Result<Self, Self::Error> {
        TorusActionSpec::new(raw.torus_rank, raw.weights)
    }
}

impl TorusActionSpec {
    pub fn new(torus_rank: usize, weights: Vec<Vec<i64>>) -> Result<Self, TorusError> {
        if let Some((index, w)) = weights.iter().enumerate().find(|(_, w)| w.len() != torus_rank) {
            return Err(TorusError::WeightLength { index, expected: torus_rank, got: w.len() });
        }
        Ok(TorusActionSpec { torus_rank, weights })
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// `dim V`.
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricDecomposition {
    pub c: usize,
    pub d: usize,
    /// One representative per `{chi, -chi}` pair, the lexicographically
    /// larger one, repeated by multiplicity, in decreasing order.
    pub pair_weights: Vec<Vec<i64>>,
}

/// A weight whose multiplicity differs from that of its negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("weight {chi:?} has multiplicity {multiplicity} but its negative has {opposite_multiplicity}")]
pub struct AsymmetricWeight {
    pub chi: Vec<i64>,
    pub multiplicity: usize,
    pub opposite_multiplicity: usize,
}

fn negate(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

pub fn symmetry_check(a: &TorusActionSpec) -> Result<SymmetricDecomposition, AsymmetricWeight> {
    let mut mult: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for w in &a.weights {
        *mult.entry(w.clone()).or_default() += 1;
    }
    let zero = vec![0; a.torus_rank];
    let c = mult.get(&zero).copied().unwrap_or(0);
    let mut pair_weights = Vec::new();
    // descending order visits the larger member of each pair first
    for (chi, &m) in mult.iter().rev() {
        if *chi == zero {
            continue;
        }
        let neg = negate(chi);
        let m_neg = mult.get(&neg).copied().unwrap_or(0);
        if m != m_neg {
            let (chi, multiplicity, opposite_multiplicity) =
                if *chi > neg { (chi.clone(), m, m_neg) } else { (neg, m_neg, m) };
            return Err(AsymmetricWeight { chi, multiplicity, opposite_multiplicity });
        }
        if *chi > neg {
            pair_weights.extend(std::iter::repeat(chi.clone()).take(m));
        }
    }
    Ok(SymmetricDecomposition { c, d: pair_weights.len(), pair_weights })
}

/// Excellent: the pair weights are linearly independent.
pub fn is_excellent_action(dec: &SymmetricDecomposition) -> bool {
    rank_int(&dec.pair_weights) == dec.d
}

/// Is there a nonzero `alpha >= 0` supported on `coords` with
/// `sum alpha_j w_j = 0` (and `alpha_pin = 1` when `pin` is given)?
fn has_invariant(weights: &[Vec<i64>], torus_rank: usize, coords: &[usize], pin: Option<usize>) -> bool {
    if coords.is_empty() {
        return false;
    }
    let cols: Vec<Vec<i64>> = coords.iter().map(|&j| weights[j].clone()).collect();
    let mut a = if torus_rank == 0 { Vec::new() } else { transpose(&to_q_rows(&cols)) };
    let mut b: Vec<Q> = vec![q(0); torus_rank];
    match pin {
        Some(p) => a.push(coords.iter().map(|&j| q(i64::from(j == p))).collect()),
        None => a.push(vec![q(1); coords.len()]),
    }
    b.push(q(1));
    lp::is_feasible(&a, &b)
}

/// Coordinates `j` that appear with positive exponent in some invariant
/// monomial.
pub fn saturated_support(a: &TorusActionSpec) -> Vec<usize> {
    let all: Vec<usize> = (0..a.dim()).collect();
    all.iter()
        .copied()
        .filter(|&j| has_invariant(&a.weights, a.torus_rank, &all, Some(j)))
        .collect()
}

/// `dim V // S`: the rank of the invariant-monomial lattice, computed as
/// `dim(ker(weight map) restricted to the saturated support)`.
pub fn quotient_dimension(a: &TorusActionSpec) -> usize {
    let s = saturated_support(a);
    let restricted: Vec<Vec<i64>> = s.iter().map(|&j| a.weights[j].clone()).collect();
    s.len() - rank_int(&restricted)
}

/// Largest unstable coordinate set. Unstable sets are closed under subsets,
/// so they are grown level by level and a candidate is tested only when all
/// of its maximal proper subsets are unstable.
pub fn null_cone_dimension(a: &TorusActionSpec) -> Result<usize, TorusError> {
    let n = a.dim();
    if n > MAX_NULL_CONE_COORDS {
        return Err(TorusError::TooLarge(n));
    }
    let zero = vec![0; a.torus_rank];
    let usable: Vec<usize> = (0..n).filter(|&j| a.weights[j] != zero).collect();
    let mut level: Vec<u32> = vec![0];
    let mut best = 0;
    let mut size = 0;
    while !level.is_empty() {
        best = size;
        let known: HashSet<u32> = level.iter().copied().collect();
        let mut next = Vec::new();
        for &set in &level {
            let top = (0..n).rev().find(|&j| set & (1 << j) != 0);
            for &j in usable.iter().filter(|&&j| top.map_or(true, |t| j > t)) {
                let cand = set | (1 << j);
                let subsets_ok = (0..n)
                    .filter(|&i| cand & (1 << i) != 0 && i != j)
                    .all(|i| known.contains(&(cand & !(1 << i))));
                if !subsets_ok {
                    continue;
                }
                let coords: Vec<usize> = (0..n).filter(|&i| cand & (1 << i) != 0).collect();
                if !has_invariant(&a.weights, a.torus_rank, &coords, None) {
                    next.push(cand);
                }
            }
        }
        level = next;
        size += 1;
    }
    Ok(best)
}

/// The null fiber has the generic fiber dimension `dim V - dim V // S`.
pub fn is_equidimensional_quotient(a: &TorusActionSpec) -> Result<bool, TorusError> {
    Ok(null_cone_dimension(a)? == a.dim() - quotient_dimension(a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusReport {
    pub symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<AsymmetricWeight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_weights: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excellent: Option<bool>,
    pub quotient_dim: usize,
    pub null_cone_dim: usize,
    pub equidimensional: bool,
}

pub fn analyze(a: &TorusActionSpec) -> Result<TorusReport, TorusError> {
    let quotient_dim = quotient_dimension(a);
    let null_cone_dim = null_cone_dimension(a)?;
    let equidimensional = null_cone_dim == a.dim() - quotient_dim;
    let report = match symmetry_check(a) {
        Ok(dec) => TorusReport {
            symmetric: true,
            violation: None,
            c: Some(dec.c),
            d: Some(dec.d),
            excellent: Some(is_excellent_action(&dec)),
            pair_weights: Some(dec.pair_weights),
            quotient_dim,
            null_cone_dim,
            equidimensional,
        },
        Err(v) => TorusReport {
            symmetric: false,
            violation: Some(v),
            c: None,
            d: None,
            pair_weights: None,
            excellent: None,
            quotient_dim,
            null_cone_dim,
            equidimensional,
        },
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank1(ws: &[i64]) -> TorusActionSpec {
        TorusActionSpec::new(1, ws.iter().map(|&w| vec![w]).collect()).unwrap()
    }

    #[test]
    fn symmetry_examples() {
        let dec = symmetry_check(&rank1(&[1, -1, 0])).unwrap();
        assert_eq!((dec.c, dec.d), (1, 1));
        assert_eq!(dec.pair_weights, vec![vec![1]]);
        let dec = symmetry_check(&rank1(&[2, -1, 1, -2])).unwrap();
        assert_eq!((dec.c, dec.d), (0, 2));
        assert_eq!(dec.pair_weights, vec![vec![2], vec![1]]);
        let err = symmetry_check(&rank1(&[1, 1, -1])).unwrap_err();
        assert_eq!(err.chi, vec![1]);
        assert_eq!((err.multiplicity, err.opposite_multiplicity), (2, 1));
    }

    #[test]
    fn excellence_examples() {
        assert!(is_excellent_action(&SymmetricDecomposition { c: 3, d: 0, pair_weights: vec![] }));
        assert!(!is_excellent_action(&symmetry_check(&rank1(&[2, 1, -1, -2])).unwrap()));
        let two = TorusActionSpec::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap();
        assert!(is_excellent_action(&symmetry_check(&two).unwrap()));
    }

    #[test]
    fn quotient_dimension_examples() {
        assert_eq!(quotient_dimension(&rank1(&[1, -1])), 1);
        assert_eq!(quotient_dimension(&rank1(&[1, 1, -1, -1])), 3);
        assert_eq!(quotient_dimension(&rank1(&[0, 0])), 2);
        assert_eq!(quotient_dimension(&rank1(&[1, 2])), 0);
    }

    #[test]
    fn null_cone_examples() {
        assert_eq!(null_cone_dimension(&rank1(&[1, -1])).unwrap(), 1);
        assert_eq!(null_cone_dimension(&rank1(&[1, 1, -1, -1])).unwrap(), 2);
        assert_eq!(null_cone_dimension(&rank1(&[0, 0])).unwrap(), 0);
        assert_eq!(null_cone_dimension(&rank1(&[1, 2])).unwrap(), 2);
        let big = rank1(&[1; 21]);
        assert_eq!(null_cone_dimension(&big), Err(TorusError::TooLarge(21)));
    }

    #[test]
    fn equidimensionality_examples() {
        assert!(is_equidimensional_quotient(&rank1(&[1, -1])).unwrap());
        assert!(!is_equidimensional_quotient(&rank1(&[1, 1, -1, -1])).unwrap());
        assert!(is_equidimensional_quotient(&rank1(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn json_shape() {
        let a: TorusActionSpec = serde_json::from_str(r#"{"torus_rank":1, "weights":[[2],[-1],[1],[-2]]}"#).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(serde_json::from_str::<TorusActionSpec>(r#"{"torus_rank":2, "weights":[[1]]}"#).is_err());
    }
}
