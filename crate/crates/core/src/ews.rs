//! Extended weight semigroups: free monoids of pairs `(lambda, chi)` of a
//! dominant weight and a character of the subgroup.
//!
//! Also hosts the product construction of spherical spaces from blocks of
//! types I, II and III, the extraction of the weight monoid as the `chi = 0`
//! slice, and the equidimensionality predictor.

use crate::lattice::is_saturated;
use crate::linalg::rank_int;
use crate::monoidcone::{
    indecomposables_of, is_almost_excellent, is_excellent_semigroup, kernel_hilbert_basis, AffineMonoid, ConeRay,
};
use crate::rootdata::{dual_weight, AmbientGroup, DominantWeight, RootDataError, SimpleFactor};
use crate::torusquot::{is_excellent_action, symmetry_check, AsymmetricWeight, TorusActionSpec};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EwsError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("generator {index}: character has length {got}, char_rank is {expected}")]
    CharLength { index: usize, expected: usize, got: usize },
    #[error("generator {index} has zero weight part")]
    ZeroLambda { index: usize },
    #[error("generators are linearly dependent, so they are not a free basis")]
    NotFree,
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("cocharacter matrix rows do not span a saturated sublattice")]
    NotSaturated,
    #[error("inconsistent verdict: {0}")]
    Inconsistent(String),
    #[error("catalog: {0}")]
    Catalog(String),
}

/// One generator `(lambda, chi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtGenerator {
    pub lambda: DominantWeight,
    pub chi: Vec<i64>,
}

impl ExtGenerator {
    fn key(&self) -> (Vec<i64>, Vec<i64>) {
        (self.lambda.coords().to_vec(), self.chi.clone())
    }
}

/// A free extended weight semigroup given by its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedWeightSemigroup {
    ambient: AmbientGroup,
    char_rank: usize,
    generators: Vec<ExtGenerator>,
}

#[derive(Serialize, Deserialize)]
struct RawGenerator {
    lambda: Vec<i64>,
    chi: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawSemigroup {
    ambient: Vec<SimpleFactor>,
    char_rank: usize,
    generators: Vec<RawGenerator>,
}

impl Serialize for ExtendedWeightSemigroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawSemigroup {
            ambient: self.ambient.factors().to_vec(),
            char_rank: self.char_rank,
            generators: self
                .generators
                .iter()
                .map(|g| RawGenerator { lambda: g.lambda.coords().to_vec(), chi: g.chi.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtendedWeightSemigroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSemigroup::deserialize(d)?;
        let ambient = AmbientGroup::new(raw.ambient).map_err(serde::de::Error::custom)?;
        let pairs = raw.generators.into_iter().map(|g| (g.lambda, g.chi)).collect();
        ExtendedWeightSemigroup::from_coords(ambient, raw.char_rank, pairs).map_err(serde::de::Error::custom)
    }
}

impl ExtendedWeightSemigroup {
    /// Validates lengths, nonzero weight parts and freeness.
    pub fn new(ambient: AmbientGroup, char_rank: usize, generators: Vec<ExtGenerator>) -> Result<Self, EwsError> {
        for (index, g) in generators.iter().enumerate() {
            if g.lambda.ambient() != &ambient {
                return Err(RootDataError::AmbientMismatch.into());
            }
            if g.chi.len() != char_rank {
                return Err(EwsError::CharLength { index, expected: char_rank, got: g.chi.len() });
            }
            if g.lambda.is_zero() {
                return Err(EwsError::ZeroLambda { index });
            }
        }
        let s = ExtendedWeightSemigroup { ambient, char_rank, generators };
        if rank_int(&s.stacked()) != s.generators.len() {
            return Err(EwsError::NotFree);
        }
        Ok(s)
    }

    pub fn from_coords(
        ambient: AmbientGroup,
        char_rank: usize,
        pairs: Vec<(Vec<i64>, Vec<i64>)>,
    ) -> Result<Self, EwsError> {
        let mut gens = Vec::with_capacity(pairs.len());
        for (lambda, chi) in pairs {
            gens.push(ExtGenerator { lambda: DominantWeight::new(ambient.clone(), lambda)?, chi });
        }
        Self::new(ambient, char_rank, gens)
    }

    pub fn ambient(&self) -> &AmbientGroup {
        &self.ambient
    }

    pub fn char_rank(&self) -> usize {
        self.char_rank
    }

    pub fn generators(&self) -> &[ExtGenerator] {
        &self.generators
    }

    /// `rk` of the semigroup, the number of basis elements.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn stacked(&self) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .map(|g| g.lambda.coords().iter().chain(&g.chi).copied().collect())
            .collect()
    }

    /// Generator set as a sorted set of `(lambda, chi)` coordinate pairs.
    pub fn generator_set(&self) -> BTreeSet<(Vec<i64>, Vec<i64>)> {
        self.generators.iter().map(ExtGenerator::key).collect()
    }

    pub fn same_generators(&self, other: &ExtendedWeightSemigroup) -> bool {
        self.ambient == other.ambient && self.char_rank == other.char_rank && self.generator_set() == other.generator_set()
    }

    /// Weight monoid `Lambda_+(G/H)`, the `chi = 0` slice.
    pub fn weight_monoid(&self) -> AffineMonoid {
        chi_zero_slice(&self.ambient, &self.generators)
    }
}

impl fmt::Display for ExtendedWeightSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.generators.iter().map(|g| format!("({}, {:?})", g.lambda.pretty(), g.chi)).collect();
        write!(f, "{}: {{{}}}", self.ambient, parts.join(", "))
    }
}

/// `(lambda, chi) -> (lambda*, -chi)` on every generator.
pub fn dual_automorphism(s: &ExtendedWeightSemigroup) -> ExtendedWeightSemigroup {
    let generators = s
        .generators
        .iter()
        .map(|g| ExtGenerator { lambda: dual_weight(&g.lambda), chi: g.chi.iter().map(|x| -x).collect() })
        .collect();
    ExtendedWeightSemigroup { ambient: s.ambient.clone(), char_rank: s.char_rank, generators }
}

/// The torus `H/H_0` acting on `Y_0` with weights `-chi_i`.
pub fn y0_action(s: &ExtendedWeightSemigroup) -> TorusActionSpec {
    let weights = s.generators.iter().map(|g| g.chi.iter().map(|x| -x).collect()).collect();
    TorusActionSpec::new(s.char_rank, weights).expect("character lengths are validated on construction")
}

/// Monoid of `sum a_i lambda_i` over `a in N^n` with `sum a_i chi_i = 0`,
/// generated by the images of the kernel Hilbert basis and reduced to its
/// indecomposables.
fn chi_zero_slice(ambient: &AmbientGroup, gens: &[ExtGenerator]) -> AffineMonoid {
    let chis: Vec<Vec<i64>> = gens.iter().map(|g| g.chi.clone()).collect();
    let r = ambient.rank();
    let images: Vec<Vec<i64>> = kernel_hilbert_basis(&chis)
        .iter()
        .map(|a| {
            let mut v = vec![0; r];
            for (k, g) in a.iter().zip(gens) {
                if *k != 0 {
                    for (vi, li) in v.iter_mut().zip(g.lambda.coords()) {
                        *vi += k * li;
                    }
                }
            }
            v
        })
        .collect();
    let reduced = indecomposables_of(&images);
    let weights: Vec<DominantWeight> =
        reduced.into_iter().map(|c| DominantWeight::new(ambient.clone(), c).expect("nonnegative")).collect();
    AffineMonoid::from_weights(ambient.clone(), &weights, true).expect("same ambient")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BlockType {
    I,
    II,
    III,
}

impl BlockType {
    pub fn char_rank(self) -> usize {
        match self {
            BlockType::I | BlockType::II => 1,
            BlockType::III => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(rename = "type")]
    pub block_type: BlockType,
    pub semigroup: ExtendedWeightSemigroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Blocks `G_1/H_1, ..., G_n/H_n` ordered type I, then II, then III, and a
/// connected subtorus `Z` of the central torus given by the rows of a
/// `k x q` cocharacter matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    blocks: Vec<Block>,
    cochar_matrix: Vec<Vec<i64>>,
}

/// Wire form of a block: inline data or a catalog reference.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BlockSource {
    Inline {
        #[serde(rename = "type")]
        block_type: BlockType,
        semigroup: ExtendedWeightSemigroup,
    },
    Entry {
        entry: String,
        #[serde(default)]
        params: BTreeMap<String, i64>,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct ConstructionInput {
    pub blocks: Vec<BlockSource>,
    #[serde(default)]
    pub cochar_matrix: Vec<Vec<i64>>,
}

impl ConstructionInput {
    /// Looks up catalog references and validates the result.
    pub fn resolve(self) -> Result<ConstructionSpec, EwsError> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in self.blocks {
            blocks.push(match b {
                BlockSource::Inline { block_type, semigroup } => Block { block_type, semigroup, label: None },
                BlockSource::Entry { entry, params } => crate::catalog::construction_block(&entry, &params)
                    .map_err(|e| EwsError::Catalog(e.to_string()))?,
            });
        }
        ConstructionSpec::new(blocks, self.cochar_matrix)
    }
}

impl ConstructionSpec {
    pub fn new(blocks: Vec<Block>, cochar_matrix: Vec<Vec<i64>>) -> Result<Self, EwsError> {
        if blocks.windows(2).any(|w| w[0].block_type > w[1].block_type) {
            return Err(EwsError::Construction("blocks must be ordered type I, then II, then III".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.semigroup.char_rank != b.block_type.char_rank() {
                return Err(EwsError::Construction(format!(
                    "block {i} of type {:?} must have char_rank {}",
                    b.block_type,
                    b.block_type.char_rank()
                )));
            }
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.block_type == BlockType::III {
                continue;
            }
            // G/H' is spherical iff the weight parts of the basis are independent
            let lambdas: Vec<Vec<i64>> = b.semigroup.generators.iter().map(|g| g.lambda.coords().to_vec()).collect();
            let independent = rank_int(&lambdas) == lambdas.len();
            if independent != (b.block_type == BlockType::II) {
                return Err(EwsError::Construction(format!(
                    "block {i} is of type {}, not {:?}",
                    if independent { "II" } else { "I" },
                    b.block_type
                )));
            }
        }
        let spec = ConstructionSpec { blocks, cochar_matrix };
        let q = spec.q();
        if let Some(row) = spec.cochar_matrix.iter().position(|r| r.len() != q) {
            return Err(EwsError::Construction(format!("cocharacter row {row} must have length q = {q}")));
        }
        if rank_int(&spec.cochar_matrix) != spec.cochar_matrix.len() {
            return Err(EwsError::Construction("cocharacter rows must be linearly independent".into()));
        }
        if !is_saturated(&spec.cochar_matrix) {
            return Err(EwsError::NotSaturated);
        }
        Ok(spec)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn cochar_matrix(&self) -> &[Vec<i64>] {
        &self.cochar_matrix
    }

    /// Number of type I blocks.
    pub fn p(&self) -> usize {
        self.blocks.iter().filter(|b| b.block_type == BlockType::I).count()
    }

    /// Number of type I and II blocks, the rank of the character lattice of
    /// the product of the blocks' subgroups.
    pub fn q(&self) -> usize {
        self.blocks.iter().filter(|b| b.block_type != BlockType::III).count()
    }

    /// Dimension of `Z`.
    pub fn k(&self) -> usize {
        self.cochar_matrix.len()
    }

    /// `tau(e_j)`: column `j` of the cocharacter matrix.
    pub fn tau(&self, j: usize) -> Vec<i64> {
        self.cochar_matrix.iter().map(|row| row[j]).collect()
    }

    fn tau_of(&self, chi: &[i64]) -> Vec<i64> {
        self.cochar_matrix.iter().map(|row| row.iter().zip(chi).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn ambient(&self) -> AmbientGroup {
        let factors = self.blocks.iter().flat_map(|b| b.semigroup.ambient.factors().iter().copied()).collect();
        AmbientGroup::new(factors).expect("blocks have nonempty ambients")
    }

    /// Direct sum of the block semigroups: weights padded into the product
    /// ambient, characters placed in the block's coordinate of `Z^q`.
    pub fn combined(&self) -> ExtendedWeightSemigroup {
        let ambient = self.ambient();
        let q = self.q();
        let mut generators = Vec::new();
        let mut offset = 0;
        for (j, b) in self.blocks.iter().enumerate() {
            let r = b.semigroup.ambient.rank();
            for g in &b.semigroup.generators {
                let mut lambda = vec![0; ambient.rank()];
                lambda[offset..offset + r].copy_from_slice(g.lambda.coords());
                let mut chi = vec![0; q];
                if b.block_type != BlockType::III {
                    chi[j] = g.chi[0];
                }
                generators.push(ExtGenerator { lambda: DominantWeight::new(ambient.clone(), lambda).unwrap(), chi });
            }
            offset += r;
        }
        ExtendedWeightSemigroup { ambient, char_rank: q, generators }
    }

    /// Generators `(lambda_i, tau(chi_i))` of the extended semigroup of the
    /// constructed space, reduced to the indecomposable ones.
    pub fn image_generators(&self) -> Vec<ExtGenerator> {
        let combined = self.combined();
        let mut seen = HashSet::new();
        let mut images: Vec<ExtGenerator> = combined
            .generators
            .iter()
            .map(|g| ExtGenerator { lambda: g.lambda.clone(), chi: self.tau_of(&g.chi) })
            .filter(|g| seen.insert(g.key()))
            .collect();
        images.sort_by_key(ExtGenerator::key);
        let all = images.clone();
        images.retain(|g| {
            let others: Vec<&ExtGenerator> = all.iter().filter(|h| h.key() != g.key()).collect();
            !is_sum_of(g, &others)
        });
        images
    }
}

/// Is `target` a nonnegative integer combination of `gens`? Weight parts
/// are nonnegative and nonzero, which bounds the search.
fn is_sum_of(target: &ExtGenerator, gens: &[&ExtGenerator]) -> bool {
    fn go(i: usize, lam: &mut Vec<i64>, chi: &mut Vec<i64>, gens: &[&ExtGenerator]) -> bool {
        if lam.iter().all(|&x| x == 0) {
            return chi.iter().all(|&x| x == 0);
        }
        if i == gens.len() {
            return false;
        }
        let g = gens[i];
        let max = g
            .lambda
            .coords()
            .iter()
            .zip(lam.iter())
            .filter(|(gc, _)| **gc > 0)
            .map(|(gc, lc)| lc / gc)
            .min()
            .unwrap_or(0);
        for k in (0..=max).rev() {
            for (l, gc) in lam.iter_mut().zip(g.lambda.coords()) {
                *l -= k * gc;
            }
            for (c, gc) in chi.iter_mut().zip(&g.chi) {
                *c -= k * gc;
            }
            let found = go(i + 1, lam, chi, gens);
            for (l, gc) in lam.iter_mut().zip(g.lambda.coords()) {
                *l += k * gc;
            }
            for (c, gc) in chi.iter_mut().zip(&g.chi) {
                *c += k * gc;
            }
            if found {
                return true;
            }
        }
        false
    }
    go(0, &mut target.lambda.coords().to_vec(), &mut target.chi.clone(), gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericityVerdict {
    pub spherical: bool,
    pub p: usize,
    pub q: usize,
    /// `tau(chi_1), ..., tau(chi_p)`.
    pub tau: Vec<Vec<i64>>,
}

/// Spherical iff `tau(chi_1), ..., tau(chi_p)` are linearly independent.
pub fn check_sphericity_of_construction(c: &ConstructionSpec) -> SphericityVerdict {
    let p = c.p();
    let tau: Vec<Vec<i64>> = (0..p).map(|j| c.tau(j)).collect();
    let spherical = if c.k() == 0 { p == 0 } else { rank_int(&tau) == p };
    SphericityVerdict { spherical, p, q: c.q(), tau }
}

/// `Lambda_+(G/H)` of the constructed space.
pub fn weight_semigroup_of_construction(c: &ConstructionSpec) -> AffineMonoid {
    let ambient = c.ambient();
    let gens: Vec<ExtGenerator> = c
        .combined()
        .generators
        .into_iter()
        .map(|g| ExtGenerator { chi: c.tau_of(&g.chi), lambda: g.lambda })
        .collect();
    chi_zero_slice(&ambient, &gens)
}

/// The extended weight semigroup of the constructed space. Fails with
/// [`EwsError::NotFree`] when the images of the block generators are not a
/// free basis, which happens for non-spherical constructions.
pub fn extended_semigroup_of_construction(c: &ConstructionSpec) -> Result<ExtendedWeightSemigroup, EwsError> {
    ExtendedWeightSemigroup::new(c.ambient(), c.k(), c.image_generators())
}

/// Inputs of [`predict_equidimensional`]: the weight monoid (carrying the
/// quasi-affine flag) and the extended weight semigroup of the same space.
#[derive(Clone, Debug)]
pub struct SpaceRecord {
    pub weight_monoid: AffineMonoid,
    pub extended: ExtendedWeightSemigroup,
}

impl SpaceRecord {
    pub fn from_extended(extended: ExtendedWeightSemigroup) -> Self {
        SpaceRecord { weight_monoid: extended.weight_monoid(), extended }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquidimVerdict {
    pub equidimensional: bool,
    pub excellent: bool,
    pub almost_excellent: bool,
    pub necessary_condition_y0: bool,
    pub indecomposables: Vec<Vec<i64>>,
    pub extremal_rays: Vec<ConeRay>,
    /// Index pairs into `extremal_rays` with overlapping supports.
    pub ray_overlaps: Vec<(usize, usize)>,
    pub y0_weights: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y0_asymmetry: Option<AsymmetricWeight>,
}

/// Equidimensionality of `pi_U` is almost-excellence of the weight monoid;
/// excellence of the `Y_0` action is a necessary condition for it.
pub fn predict_equidimensional(space: &SpaceRecord) -> Result<EquidimVerdict, EwsError> {
    let exc = is_excellent_semigroup(&space.weight_monoid);
    let almost = is_almost_excellent(&space.weight_monoid);
    let y0 = y0_action(&space.extended);
    let (necessary, asym) = match symmetry_check(&y0) {
        Ok(dec) => (is_excellent_action(&dec), None),
        Err(a) => (false, Some(a)),
    };
    if exc.excellent && !almost.almost_excellent {
        return Err(EwsError::Inconsistent("excellent but not almost excellent".into()));
    }
    if almost.almost_excellent && !necessary {
        return Err(EwsError::Inconsistent("equidimensional but the Y0 action is not excellent".into()));
    }
    Ok(EquidimVerdict {
        equidimensional: almost.almost_excellent,
        excellent: exc.excellent,
        almost_excellent: almost.almost_excellent,
        necessary_condition_y0: necessary,
        indecomposables: exc.indecomposables,
        extremal_rays: almost.extremal_rays,
        ray_overlaps: almost.witnesses,
        y0_weights: y0.weights().to_vec(),
        y0_asymmetry: asym,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Series;

    fn ews(ambient: AmbientGroup, q: usize, pairs: &[(&[i64], &[i64])]) -> ExtendedWeightSemigroup {
        let pairs = pairs.iter().map(|(l, c)| (l.to_vec(), c.to_vec())).collect();
        ExtendedWeightSemigroup::from_coords(ambient, q, pairs).unwrap()
    }

    fn d5_entry() -> ExtendedWeightSemigroup {
        let d5 = AmbientGroup::simple(Series::D, 5).unwrap();
        ews(
            d5,
            1,
            &[
                (&[1, 0, 0, 0, 0], &[2]),
                (&[1, 0, 0, 0, 0], &[-2]),
                (&[0, 1, 0, 0, 0], &[0]),
                (&[0, 0, 0, 1, 0], &[1]),
                (&[0, 0, 0, 0, 1], &[-1]),
            ],
        )
    }

    #[test]
    fn duality_examples() {
        let s = d5_entry();
        let d = dual_automorphism(&s);
        assert!(d.same_generators(&s));
        let a2 = AmbientGroup::simple(Series::A, 2).unwrap();
        let s = ews(a2, 1, &[(&[1, 0], &[1])]);
        let d = dual_automorphism(&s);
        assert_eq!(d.generators()[0].lambda.coords(), &[0, 1]);
        assert_eq!(d.generators()[0].chi, vec![-1]);
        assert_eq!(dual_automorphism(&d), s);
    }

    #[test]
    fn freeness_enforced() {
        let a1 = AmbientGroup::simple(Series::A, 1).unwrap();
        let pairs = vec![(vec![1], vec![1]), (vec![1], vec![-1]), (vec![2], vec![0])];
        assert_eq!(ExtendedWeightSemigroup::from_coords(a1.clone(), 1, pairs), Err(EwsError::NotFree));
        let pairs = vec![(vec![0], vec![1])];
        assert_eq!(ExtendedWeightSemigroup::from_coords(a1, 1, pairs), Err(EwsError::ZeroLambda { index: 0 }));
    }

    #[test]
    fn y0_weights() {
        let a4 = AmbientGroup::simple(Series::A, 4).unwrap();
        let s = ews(a4, 1, &[(&[1, 0, 0, 0], &[2]), (&[0, 1, 0, 0], &[-1]), (&[0, 0, 1, 0], &[1]), (&[0, 0, 0, 1], &[-2])]);
        let y = y0_action(&s);
        assert_eq!(y.weights(), &[vec![-2], vec![1], vec![-1], vec![2]]);
        let dec = symmetry_check(&y).unwrap();
        assert!(!is_excellent_action(&dec));
    }

    fn block(t: BlockType, s: ExtendedWeightSemigroup) -> Block {
        Block { block_type: t, semigroup: s, label: None }
    }

    fn sl2_mod_torus() -> ExtendedWeightSemigroup {
        ews(AmbientGroup::simple(Series::A, 1).unwrap(), 1, &[(&[1], &[1]), (&[1], &[-1])])
    }

    #[test]
    fn sphericity_examples() {
        let two = vec![block(BlockType::I, sl2_mod_torus()), block(BlockType::I, sl2_mod_torus())];
        let c = ConstructionSpec::new(two.clone(), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(check_sphericity_of_construction(&c).spherical);
        let c = ConstructionSpec::new(two.clone(), vec![vec![1, 1]]).unwrap();
        assert!(!check_sphericity_of_construction(&c).spherical);
        let c = ConstructionSpec::new(two.clone(), vec![]).unwrap();
        assert!(!check_sphericity_of_construction(&c).spherical);
        assert_eq!(ConstructionSpec::new(two.clone(), vec![vec![2, 0]]), Err(EwsError::NotSaturated));
        assert!(matches!(ConstructionSpec::new(two, vec![vec![1, 1], vec![2, 2]]), Err(EwsError::Construction(_))));
    }

    #[test]
    fn bookkeeping_errors() {
        let diag = ews(AmbientGroup::new(vec![SimpleFactor::new(Series::A, 1).unwrap(); 2]).unwrap(), 0, &[(&[1, 1], &[])]);
        let bad = vec![block(BlockType::III, diag.clone()), block(BlockType::I, sl2_mod_torus())];
        assert!(matches!(ConstructionSpec::new(bad, vec![]), Err(EwsError::Construction(_))));
        let bad = vec![block(BlockType::I, diag)];
        assert!(matches!(ConstructionSpec::new(bad, vec![]), Err(EwsError::Construction(_))));
    }

    #[test]
    fn eq3_examples() {
        // trivial Z keeps every weight
        let c = ConstructionSpec::new(vec![block(BlockType::I, sl2_mod_torus())], vec![]).unwrap();
        assert_eq!(weight_semigroup_of_construction(&c).generators(), vec![vec![1]]);
        // full torus pairs the two generators
        let c = ConstructionSpec::new(vec![block(BlockType::I, sl2_mod_torus())], vec![vec![1]]).unwrap();
        assert_eq!(weight_semigroup_of_construction(&c).generators(), vec![vec![2]]);
        // (1,0,0,0,2) and (0,1,0,2,0) are kernel vectors too
        let expected = vec![
            vec![0, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 2],
            vec![1, 0, 0, 2, 0],
            vec![2, 0, 0, 0, 0],
        ];
        assert_eq!(d5_entry().weight_monoid().generators(), expected);
    }

    #[test]
    fn predictor_examples() {
        let a3 = AmbientGroup::simple(Series::A, 3).unwrap();
        let slnln = ews(a3, 1, &[(&[1, 0, 1], &[0]), (&[0, 1, 0], &[1]), (&[0, 1, 0], &[-1])]);
        let v = predict_equidimensional(&SpaceRecord::from_extended(slnln)).unwrap();
        assert!(v.excellent && v.almost_excellent && v.equidimensional && v.necessary_condition_y0);

        let a4 = AmbientGroup::simple(Series::A, 4).unwrap();
        let s = ews(a4, 1, &[(&[1, 0, 0, 0], &[2]), (&[0, 1, 0, 0], &[-1]), (&[0, 0, 1, 0], &[1]), (&[0, 0, 0, 1], &[-2])]);
        let v = predict_equidimensional(&SpaceRecord::from_extended(s)).unwrap();
        assert!(!v.necessary_condition_y0 && !v.equidimensional);
    }

    #[test]
    fn inconsistent_data_is_rejected() {
        // an excellent monoid paired with a non-excellent Y0 action
        let a1a1 = AmbientGroup::new(vec![SimpleFactor::new(Series::A, 1).unwrap(); 2]).unwrap();
        let monoid = AffineMonoid::from_vectors(2, vec![vec![1, 0], vec![0, 1]], true).unwrap();
        let gen = |f: usize, k: i64, chi: i64| ExtGenerator { lambda: a1a1.fundamental(f, 1).scaled(k), chi: vec![chi] };
        let fake = ExtendedWeightSemigroup {
            ambient: a1a1.clone(),
            char_rank: 1,
            generators: vec![gen(0, 1, 1), gen(0, 2, 2), gen(1, 1, -1), gen(1, 2, -2)],
        };
        let record = SpaceRecord { weight_monoid: monoid, extended: fake };
        assert!(matches!(predict_equidimensional(&record), Err(EwsError::Inconsistent(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = d5_entry();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with(r#"{"ambient":[{"series":"D","rank":5}],"char_rank":1,"generators":[{"lambda""#));
        let back: ExtendedWeightSemigroup = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
