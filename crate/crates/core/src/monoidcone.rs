//! Affine monoids of dominant weights and the rational cones they span.
//!
//! Monoids here are always pointed with nonnegative generators (dominant
//! weights, or kernel vectors in `N^n`), which is what makes indecomposables
//! well defined and finite.

use crate::linalg::{q, rank_int, same_ray, primitive, to_q_rows, transpose, Q};
use crate::lp;
use crate::rootdata::{support_of, AmbientGroup, DominantWeight, RootDataError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator {index} has a negative coordinate")]
    NegativeEntry { index: usize },
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// Finitely generated submonoid of `N^rank` (usually of the dominant
/// weights of an ambient group).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient: Option<AmbientGroup>,
    rank: usize,
    generators: Vec<Vec<i64>>,
    quasi_affine: bool,
}

impl AffineMonoid {
    pub fn from_weights(
        ambient: AmbientGroup,
        generators: &[DominantWeight],
        quasi_affine: bool,
    ) -> Result<Self, MonoidError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ambient() != &ambient {
                return Err(RootDataError::AmbientMismatch.into());
            }
            gens.push(g.coords().to_vec());
        }
        Ok(AffineMonoid { rank: ambient.rank(), ambient: Some(ambient), generators: gens, quasi_affine })
    }

    pub fn from_vectors(rank: usize, generators: Vec<Vec<i64>>, quasi_affine: bool) -> Result<Self, MonoidError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != rank {
                return Err(MonoidError::DimensionMismatch { expected: rank, got: g.len() });
            }
            if g.iter().any(|&x| x < 0) {
                return Err(MonoidError::NegativeEntry { index });
            }
        }
        Ok(AffineMonoid { ambient: None, rank, generators, quasi_affine })
    }

    pub fn ambient(&self) -> Option<&AmbientGroup> {
        self.ambient.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn quasi_affine(&self) -> bool {
        self.quasi_affine
    }

    /// Generators as supplied.
    pub fn raw_generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Distinct nonzero generators in lexicographic order.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        canonical(&self.generators)
    }
}

#[derive(Serialize, Deserialize)]
struct RawMonoid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<Vec<crate::rootdata::SimpleFactor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    generators: Vec<Vec<i64>>,
    #[serde(default = "default_true")]
    quasi_affine: bool,
}

fn default_true() -> bool {
    true
}

/// JSON form `{"ambient"?, "rank"?, "generators", "quasi_affine"}`. With an
/// ambient group the generators are fundamental-weight coordinates and
/// `rank` may be omitted; `quasi_affine` defaults to true.
impl Serialize for AffineMonoid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawMonoid {
            ambient: self.ambient.as_ref().map(|a| a.factors().to_vec()),
            rank: Some(self.rank),
            generators: self.generators.clone(),
            quasi_affine: self.quasi_affine,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMonoid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawMonoid::deserialize(d)?;
        let rank = match (&raw.ambient, raw.rank) {
            (Some(f), r) => {
                let ambient = AmbientGroup::new(f.clone()).map_err(D::Error::custom)?;
                if r.is_some_and(|r| r != ambient.rank()) {
                    return Err(D::Error::custom(format!("rank does not match ambient {ambient}")));
                }
                ambient.rank()
            }
            (None, Some(r)) => r,
            (None, None) => match raw.generators.first() {
                Some(g) => g.len(),
                None => return Err(D::Error::custom("need \"ambient\" or \"rank\" when there are no generators")),
            },
        };
        let mut m = AffineMonoid::from_vectors(rank, raw.generators, raw.quasi_affine).map_err(D::Error::custom)?;
        if let Some(f) = raw.ambient {
            m.ambient = Some(AmbientGroup::new(f).map_err(D::Error::custom)?);
        }
        Ok(m)
    }
}

fn canonical(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let set: BTreeSet<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    set.into_iter().collect()
}

/// Primitive integer direction of an extremal ray.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConeRay {
    direction: Vec<i64>,
}

impl ConeRay {
    pub fn through(v: &[i64]) -> Self {
        assert!(v.iter().any(|&x| x != 0), "a ray needs a nonzero direction");
        ConeRay { direction: primitive(v) }
    }

    pub fn direction(&self) -> &[i64] {
        &self.direction
    }
}

fn check_dims(dim: usize, vecs: &[Vec<i64>]) -> Result<(), MonoidError> {
    match vecs.iter().find(|g| g.len() != dim) {
        Some(g) => Err(MonoidError::DimensionMismatch { expected: dim, got: g.len() }),
        None => Ok(()),
    }
}

/// `v` in the rational cone spanned by `gens`.
pub fn cone_membership(v: &[i64], gens: &[Vec<i64>]) -> Result<bool, MonoidError> {
    check_dims(v.len(), gens)?;
    if v.iter().all(|&x| x == 0) {
        return Ok(true);
    }
    if gens.is_empty() {
        return Ok(false);
    }
    // columns are the generators
    let a = transpose(&to_q_rows(gens));
    let b: Vec<Q> = v.iter().map(|&x| q(x)).collect();
    Ok(lp::is_feasible(&a, &b))
}

/// Extremal rays of the cone spanned by `gens`, sorted lexicographically.
/// A generator spans an extremal ray iff it is not in the cone of the
/// generators off its ray.
pub fn extremal_rays(gens: &[Vec<i64>]) -> Vec<ConeRay> {
    let gens = canonical(gens);
    let mut rays: BTreeSet<ConeRay> = BTreeSet::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for g in &gens {
        let dir = primitive(g);
        if !seen.insert(dir.clone()) {
            continue;
        }
        let others: Vec<Vec<i64>> = gens.iter().filter(|h| !same_ray(h, g)).cloned().collect();
        let inside = cone_membership(g, &others).expect("generators share a dimension");
        if !inside {
            rays.insert(ConeRay { direction: dir });
        }
    }
    rays.into_iter().collect()
}

/// `target` as an `N`-combination of `gens` (all nonnegative). Depth-first
/// over generators with a failure memo.
fn in_monoid(target: &[i64], gens: &[Vec<i64>]) -> bool {
    fn go(i: usize, target: &mut Vec<i64>, gens: &[Vec<i64>], failed: &mut HashSet<(usize, Vec<i64>)>) -> bool {
        if target.iter().all(|&x| x == 0) {
            return true;
        }
        if i == gens.len() {
            return false;
        }
        if failed.contains(&(i, target.clone())) {
            return false;
        }
        let g = &gens[i];
        let max = g
            .iter()
            .zip(target.iter())
            .filter(|(gc, _)| **gc > 0)
            .map(|(gc, tc)| tc / gc)
            .min()
            .unwrap_or(0);
        for c in (0..=max).rev() {
            for (t, gc) in target.iter_mut().zip(g) {
                *t -= c * gc;
            }
            let ok = go(i + 1, target, gens, failed);
            for (t, gc) in target.iter_mut().zip(g) {
                *t += c * gc;
            }
            if ok {
                return true;
            }
        }
        failed.insert((i, target.clone()));
        false
    }
    if target.iter().any(|&x| x < 0) {
        return false;
    }
    let useful: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    go(0, &mut target.to_vec(), &useful, &mut HashSet::new())
}

/// Membership in the monoid generated by `m`.
pub fn monoid_contains(m: &AffineMonoid, v: &[i64]) -> bool {
    v.len() == m.rank && in_monoid(v, &m.generators())
}

/// The minimal generating set of the monoid, lexicographically sorted.
pub fn indecomposables(m: &AffineMonoid) -> Vec<Vec<i64>> {
    indecomposables_of(&m.generators)
}

pub(crate) fn indecomposables_of(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let gens = canonical(gens);
    gens.iter()
        .enumerate()
        .filter(|(i, g)| {
            let others: Vec<Vec<i64>> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            !in_monoid(g, &others)
        })
        .map(|(_, g)| g.clone())
        .collect()
}

pub fn is_free(m: &AffineMonoid) -> bool {
    let ind = indecomposables(m);
    rank_int(&ind) == ind.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcellenceVerdict {
    pub excellent: bool,
    pub indecomposables: Vec<Vec<i64>>,
    /// Index pairs into `indecomposables` whose supports meet.
    pub witnesses: Vec<(usize, usize)>,
}

fn overlapping_pairs(vectors: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let supports: Vec<BTreeSet<usize>> = vectors.iter().map(|v| support_of(v)).collect();
    let mut out = Vec::new();
    for i in 0..supports.len() {
        for j in (i + 1)..supports.len() {
            if !supports[i].is_disjoint(&supports[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Excellent: quasi-affine and the indecomposables have pairwise disjoint
/// supports.
pub fn is_excellent_semigroup(m: &AffineMonoid) -> ExcellenceVerdict {
    let indecomposables = indecomposables(m);
    let witnesses = overlapping_pairs(&indecomposables);
    ExcellenceVerdict { excellent: m.quasi_affine && witnesses.is_empty(), indecomposables, witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostExcellenceVerdict {
    pub almost_excellent: bool,
    pub extremal_rays: Vec<ConeRay>,
    /// Index pairs into `extremal_rays` whose supports meet.
    pub witnesses: Vec<(usize, usize)>,
}

/// Almost excellent: quasi-affine and the extremal rays of the weight cone
/// carry pairwise disjoint supports.
pub fn is_almost_excellent(m: &AffineMonoid) -> AlmostExcellenceVerdict {
    let extremal_rays = extremal_rays(&m.generators);
    let dirs: Vec<Vec<i64>> = extremal_rays.iter().map(|r| r.direction.clone()).collect();
    let witnesses = overlapping_pairs(&dirs);
    AlmostExcellenceVerdict { almost_excellent: m.quasi_affine && witnesses.is_empty(), extremal_rays, witnesses }
}

/// Hilbert basis of `{a in N^N : sum_j a_j weights_j = 0}` by the
/// Contejean-Devie completion: grow candidates `p + e_j` only along
/// directions that decrease the defect `A p`, prune anything dominating a
/// solution already found. Sorted lexicographically.
pub fn kernel_hilbert_basis(weights: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = weights.len();
    if n == 0 {
        return Vec::new();
    }
    let r = weights[0].len();
    assert!(weights.iter().all(|w| w.len() == r), "weights must share a length");

    let defect = |p: &[i64]| -> Vec<i64> {
        let mut s = vec![0i64; r];
        for (a, w) in p.iter().zip(weights) {
            if *a != 0 {
                for (sk, wk) in s.iter_mut().zip(w) {
                    *sk += a * wk;
                }
            }
        }
        s
    };
    let dominates = |x: &[i64], b: &[i64]| x.iter().zip(b).all(|(xi, bi)| xi >= bi);

    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut frontier: BTreeSet<Vec<i64>> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            e
        })
        .collect();
    while !frontier.is_empty() {
        let mut solved = Vec::new();
        let mut open = Vec::new();
        for p in frontier {
            let s = defect(&p);
            if s.iter().all(|&x| x == 0) {
                solved.push(p);
            } else {
                open.push((p, s));
            }
        }
        for p in solved {
            if !basis.iter().any(|b| dominates(&p, b)) {
                basis.push(p);
            }
        }
        let mut next = BTreeSet::new();
        for (p, s) in open {
            for (j, w) in weights.iter().enumerate() {
                let dot: i64 = s.iter().zip(w).map(|(a, b)| a * b).sum();
                if dot >= 0 {
                    continue;
                }
                let mut c = p.clone();
                c[j] += 1;
                if !basis.iter().any(|b| dominates(&c, b)) {
                    next.insert(c);
                }
            }
        }
        frontier = next;
    }
    basis.sort();
    basis
}
