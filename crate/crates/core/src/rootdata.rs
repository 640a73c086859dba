//! Root-system data for products of simple factors.
//!
//! Dominant weights are stored in fundamental-weight coordinates,
//! concatenated factor by factor, with Bourbaki numbering inside each factor.
//! The invariant form is normalised so that long roots have squared length 2
//! in every factor; fundamental weights of different factors are orthogonal.

use crate::linalg::{inverse, q, qq, Matrix, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("invalid simple type {series:?}{rank}")]
    InvalidFactor { series: Series, rank: usize },
    #[error("ambient group must have at least one simple factor")]
    EmptyAmbient,
    #[error("weight has {got} coordinates, ambient rank is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate {index} of a dominant weight is negative ({value})")]
    NegativeCoordinate { index: usize, value: i64 },
    #[error("weights live in different ambient groups")]
    AmbientMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFactor", into = "RawFactor")]
pub struct SimpleFactor {
    series: Series,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct RawFactor {
    series: Series,
    rank: usize,
}

impl TryFrom<RawFactor> for SimpleFactor {
    type Error = RootDataError;
    fn try_from(raw: RawFactor) -> Result<Self, Self::Error> {
        SimpleFactor::new(raw.series, raw.rank)
    }
}

impl From<SimpleFactor> for RawFactor {
    fn from(f: SimpleFactor) -> Self {
        RawFactor { series: f.series, rank: f.rank }
    }
}

impl SimpleFactor {
    /// `C1` is accepted as `Sp_2`; `B` starts at rank 2 and `D` at rank 3.
    pub fn new(series: Series, rank: usize) -> Result<Self, RootDataError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 1,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleFactor { series, rank })
        } else {
            Err(RootDataError::InvalidFactor { series, rank })
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Gram matrix `(alpha_i, alpha_j)` of the simple roots.
    pub fn simple_root_gram(&self) -> Matrix<Q> {
        let n = self.rank;
        let mut b = vec![vec![q(0); n]; n];
        let mut link = |i: usize, j: usize, v: Q| {
            b[i][j] = v.clone();
            b[j][i] = v;
        };
        match self.series {
            Series::A => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, q(-1));
                }
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = q(2);
                }
            }
            Series::B => {
                for i in 0..n - 1 {
                    link(i, i + 1, q(-1));
                }
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = if i == n - 1 { q(1) } else { q(2) };
                }
            }
            Series::C => {
                for i in 0..n.saturating_sub(2) {
                    link(i, i + 1, qq(-1, 2));
                }
                if n >= 2 {
                    link(n - 2, n - 1, q(-1));
                }
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = if i == n - 1 { q(2) } else { q(1) };
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, q(-1));
                }
                link(n - 3, n - 1, q(-1));
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = q(2);
                }
            }
            Series::E => {
                // 1-3-4-5-6(-7-8), node 2 hangs off node 4
                link(0, 2, q(-1));
                link(1, 3, q(-1));
                for i in 2..n - 1 {
                    link(i, i + 1, q(-1));
                }
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = q(2);
                }
            }
            Series::F => {
                link(0, 1, q(-1));
                link(1, 2, q(-1));
                link(2, 3, qq(-1, 2));
                for (i, row) in b.iter_mut().enumerate() {
                    row[i] = if i < 2 { q(2) } else { q(1) };
                }
            }
            Series::G => {
                link(0, 1, q(-1));
                b[0][0] = qq(2, 3);
                b[1][1] = q(2);
            }
        }
        b
    }

    /// Cartan matrix `<alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> Matrix<Q> {
        let b = self.simple_root_gram();
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| q(2) * b[i][j].clone() / b[j][j].clone()).collect())
            .collect()
    }

    /// Gram matrix of the fundamental weights, `D B^{-1} D` with
    /// `D = diag((alpha_i, alpha_i) / 2)`.
    pub fn fundamental_gram(&self) -> Matrix<Q> {
        let b = self.simple_root_gram();
        let binv = inverse(&b).expect("simple roots are linearly independent");
        let d: Vec<Q> = (0..self.rank).map(|i| b[i][i].clone() / q(2)).collect();
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| d[i].clone() * binv[i][j].clone() * d[j].clone()).collect())
            .collect()
    }

    /// The diagram automorphism induced by `-w_0`, as a permutation of node
    /// indices (0-based).
    pub fn dual_permutation(&self) -> Vec<usize> {
        let n = self.rank;
        let id: Vec<usize> = (0..n).collect();
        match self.series {
            Series::A => (0..n).rev().collect(),
            Series::D if n % 2 == 1 => {
                let mut p = id;
                p.swap(n - 2, n - 1);
                p
            }
            Series::E if n == 6 => vec![5, 1, 4, 3, 2, 0],
            _ => id,
        }
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<SimpleFactor>", into = "Vec<SimpleFactor>")]
pub struct AmbientGroup {
    factors: Vec<SimpleFactor>,
}

impl TryFrom<Vec<SimpleFactor>> for AmbientGroup {
    type Error = RootDataError;
    fn try_from(factors: Vec<SimpleFactor>) -> Result<Self, Self::Error> {
        AmbientGroup::new(factors)
    }
}

impl From<AmbientGroup> for Vec<SimpleFactor> {
    fn from(a: AmbientGroup) -> Self {
        a.factors
    }
}

impl AmbientGroup {
    pub fn new(factors: Vec<SimpleFactor>) -> Result<Self, RootDataError> {
        if factors.is_empty() {
            return Err(RootDataError::EmptyAmbient);
        }
        Ok(AmbientGroup { factors })
    }

    pub fn simple(series: Series, rank: usize) -> Result<Self, RootDataError> {
        AmbientGroup::new(vec![SimpleFactor::new(series, rank)?])
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    /// Start offset of each factor inside the concatenated coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.factors
            .iter()
            .map(|f| {
                let o = acc;
                acc += f.rank;
                o
            })
            .collect()
    }

    /// Factor index owning global coordinate `i`.
    pub fn factor_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (k, f) in self.factors.iter().enumerate() {
            acc += f.rank;
            if i < acc {
                return k;
            }
        }
        panic!("coordinate {i} out of range for rank {}", self.rank())
    }

    /// Global version of the per-factor `-w_0` node permutations.
    pub fn dual_permutation(&self) -> Vec<usize> {
        self.factors
            .iter()
            .zip(self.offsets())
            .flat_map(|(f, o)| f.dual_permutation().into_iter().map(move |i| i + o))
            .collect()
    }

    /// Human label of the fundamental weight at global coordinate `i`; the
    /// first three factors use pi, phi, psi.
    pub fn label(&self, i: usize) -> String {
        const LETTERS: [&str; 3] = ["pi", "phi", "psi"];
        let k = self.factor_of(i);
        let local = i - self.offsets()[k] + 1;
        match LETTERS.get(k) {
            Some(l) => format!("{l}_{local}"),
            None => format!("w{}_{local}", k + 1),
        }
    }

    /// Unit weight for the `local`-th (1-based) fundamental weight of factor
    /// `factor`.
    pub fn fundamental(&self, factor: usize, local: usize) -> DominantWeight {
        let mut coords = vec![0; self.rank()];
        assert!(local >= 1 && local <= self.factors[factor].rank, "fundamental index out of range");
        coords[self.offsets()[factor] + local - 1] = 1;
        DominantWeight { ambient: self.clone(), coords }
    }

    pub fn zero_weight(&self) -> DominantWeight {
        DominantWeight { ambient: self.clone(), coords: vec![0; self.rank()] }
    }
}

impl fmt::Display for AmbientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    ambient: AmbientGroup,
    coords: Vec<i64>,
}

impl DominantWeight {
    pub fn new(ambient: AmbientGroup, coords: Vec<i64>) -> Result<Self, RootDataError> {
        if coords.len() != ambient.rank() {
            return Err(RootDataError::LengthMismatch { expected: ambient.rank(), got: coords.len() });
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, &c)| c < 0) {
            return Err(RootDataError::NegativeCoordinate { index, value });
        }
        Ok(DominantWeight { ambient, coords })
    }

    pub fn ambient(&self) -> &AmbientGroup {
        &self.ambient
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &DominantWeight) -> Result<DominantWeight, RootDataError> {
        if self.ambient != other.ambient {
            return Err(RootDataError::AmbientMismatch);
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(DominantWeight { ambient: self.ambient.clone(), coords })
    }

    pub fn scaled(&self, k: i64) -> DominantWeight {
        assert!(k >= 0, "dominant weights are closed under nonnegative scaling only");
        DominantWeight { ambient: self.ambient.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Readable form such as `pi_1 + 2phi_2`.
    pub fn pretty(&self) -> String {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.ambient.label(i)
                } else {
                    format!("{c}{}", self.ambient.label(i))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Indices (0-based, global) of the fundamental weights with positive
/// coefficient.
pub fn support(w: &DominantWeight) -> BTreeSet<usize> {
    support_of(&w.coords)
}

/// Support of a plain coordinate vector: positions with positive entry.
pub fn support_of(coords: &[i64]) -> BTreeSet<usize> {
    coords.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect()
}

pub fn weight_inner_product(w1: &DominantWeight, w2: &DominantWeight) -> Result<Q, RootDataError> {
    if w1.ambient != w2.ambient {
        return Err(RootDataError::AmbientMismatch);
    }
    let mut total = q(0);
    for (f, o) in w1.ambient.factors.iter().zip(w1.ambient.offsets()) {
        let g = f.fundamental_gram();
        for i in 0..f.rank {
            let a = w1.coords[o + i];
            if a == 0 {
                continue;
            }
            for j in 0..f.rank {
                let b = w2.coords[o + j];
                if b != 0 {
                    total += g[i][j].clone() * q(a * b);
                }
            }
        }
    }
    Ok(total)
}

/// `lambda*`, the highest weight of the dual module: `-w_0 lambda`.
pub fn dual_weight(w: &DominantWeight) -> DominantWeight {
    let perm = w.ambient.dual_permutation();
    let mut coords = vec![0; w.coords.len()];
    for (i, &c) in w.coords.iter().enumerate() {
        coords[perm[i]] = c;
    }
    DominantWeight { ambient: w.ambient.clone(), coords }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(rank: usize) -> AmbientGroup {
        AmbientGroup::simple(Series::A, rank).unwrap()
    }

    fn w(amb: &AmbientGroup, c: &[i64]) -> DominantWeight {
        DominantWeight::new(amb.clone(), c.to_vec()).unwrap()
    }

    #[test]
    fn factor_validity() {
        assert!(SimpleFactor::new(Series::D, 2).is_err());
        assert!(SimpleFactor::new(Series::E, 5).is_err());
        assert!(SimpleFactor::new(Series::F, 4).is_ok());
        assert!(SimpleFactor::new(Series::G, 3).is_err());
        assert!(SimpleFactor::new(Series::A, 0).is_err());
        assert!(SimpleFactor::new(Series::C, 1).is_ok());
        assert_eq!(AmbientGroup::new(vec![]), Err(RootDataError::EmptyAmbient));
    }

    #[test]
    fn support_examples() {
        let a3 = a(3);
        assert_eq!(support(&w(&a3, &[1, 0, 1])), BTreeSet::from([0, 2]));
        assert!(support(&a3.zero_weight()).is_empty());
        let c2 = AmbientGroup::simple(Series::C, 2).unwrap();
        assert_eq!(support(&w(&c2, &[0, 2])), BTreeSet::from([1]));
    }

    #[test]
    fn inner_product_examples() {
        let a1 = a(1);
        assert_eq!(weight_inner_product(&w(&a1, &[1]), &w(&a1, &[1])).unwrap(), qq(1, 2));
        let a2 = a(2);
        assert_eq!(weight_inner_product(&w(&a2, &[1, 0]), &w(&a2, &[0, 1])).unwrap(), qq(1, 3));
        let a1a1 = AmbientGroup::new(vec![SimpleFactor::new(Series::A, 1).unwrap(); 2]).unwrap();
        assert_eq!(weight_inner_product(&w(&a1a1, &[1, 0]), &w(&a1a1, &[0, 1])).unwrap(), q(0));
        assert_eq!(
            weight_inner_product(&w(&a1, &[1]), &w(&a2, &[1, 0])),
            Err(RootDataError::AmbientMismatch)
        );
    }

    #[test]
    fn duality_examples() {
        let a3 = a(3);
        assert_eq!(dual_weight(&w(&a3, &[1, 0, 0])).coords(), &[0, 0, 1]);
        let c3 = AmbientGroup::simple(Series::C, 3).unwrap();
        assert_eq!(dual_weight(&w(&c3, &[1, 2, 3])).coords(), &[1, 2, 3]);
        let d5 = AmbientGroup::simple(Series::D, 5).unwrap();
        assert_eq!(dual_weight(&d5.fundamental(0, 4)), d5.fundamental(0, 5));
        let d4 = AmbientGroup::simple(Series::D, 4).unwrap();
        assert_eq!(dual_weight(&d4.fundamental(0, 3)), d4.fundamental(0, 3));
    }

    #[test]
    fn rejects_bad_weights() {
        let a2 = a(2);
        assert!(matches!(DominantWeight::new(a2.clone(), vec![1]), Err(RootDataError::LengthMismatch { .. })));
        assert!(matches!(DominantWeight::new(a2, vec![1, -1]), Err(RootDataError::NegativeCoordinate { index: 1, .. })));
    }

    #[test]
    fn labels() {
        let g = AmbientGroup::new(vec![
            SimpleFactor::new(Series::A, 2).unwrap(),
            SimpleFactor::new(Series::C, 2).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.label(0), "pi_1");
        assert_eq!(g.label(3), "phi_2");
        assert_eq!(w(&g, &[1, 0, 2, 0]).pretty(), "pi_1 + 2phi_1");
    }

    #[test]
    fn ambient_json_round_trip() {
        let json = r#"[{"series":"A","rank":3},{"series":"C","rank":2}]"#;
        let g: AmbientGroup = serde_json::from_str(json).unwrap();
        assert_eq!(g.rank(), 5);
        assert_eq!(serde_json::to_string(&g).unwrap(), json);
        assert!(serde_json::from_str::<AmbientGroup>(r#"[{"series":"D","rank":2}]"#).is_err());
        assert!(serde_json::from_str::<AmbientGroup>("[]").is_err());
    }
}
