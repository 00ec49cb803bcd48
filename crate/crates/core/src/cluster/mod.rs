//! Seeds with principal coefficients, exact cluster variables and tests for
//! membership in the upper cluster algebra.

mod laurent;

use serde::{Deserialize, Serialize};

use crate::class::{enumerate_class, ClassCaps};
use crate::error::QuiverError;
use crate::quiver::{ExchangeMatrix, IceQuiver};
use crate::sequence::MutationSequence;

pub use laurent::{parse_laurent, LaurentPoly, Monomial, ParsePolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClusterError {
    #[error("exchange at vertex {} is not an exact Laurent division", .vertex + 1)]
    LaurentViolation { vertex: usize },
    #[error("cluster variable has a negative coefficient")]
    NegativeCoefficient,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Cluster variables expressed in the initial cluster, with the ice quiver
/// of the seed. Frozen row `r` carries the coefficient `y_{r+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub cluster: Vec<LaurentPoly>,
    pub ice: IceQuiver,
}

impl Seed {
    /// The initial seed of `b` with principal coefficients.
    pub fn initial(b: &ExchangeMatrix) -> Self {
        Self::from_ice(IceQuiver::frame(b))
    }

    /// Initial cluster `x_1..x_n` for an arbitrary ice quiver.
    pub fn from_ice(ice: IceQuiver) -> Self {
        let (n, ny) = (ice.n(), ice.frozen_count());
        Self {
            cluster: (0..n).map(|i| LaurentPoly::x(n, ny, i)).collect(),
            ice,
        }
    }

    /// The two monomials of the exchange relation at `k`, arrows out of `k`
    /// first: `prod_{k->j*} y_j prod_{k->j} x_j` and
    /// `prod_{i*->k} y_i prod_{i->k} x_i`, in the current cluster.
    pub fn exchange_monomials(&self, k: usize) -> Result<(LaurentPoly, LaurentPoly), QuiverError> {
        let q = &self.ice;
        q.principal().row(k).first().ok_or(QuiverError::VertexOutOfRange {
            vertex: k,
            n: q.n(),
        })?;
        let (n, ny) = (q.n(), q.frozen_count());
        let mut out_y = Monomial::one(n, ny);
        let mut in_y = Monomial::one(n, ny);
        for r in 0..ny {
            let c = q.frozen_entry(r, k);
            if c > 0 {
                out_y.y[r] = c as u64;
            } else {
                in_y.y[r] = c.unsigned_abs();
            }
        }
        let mut out = LaurentPoly::monomial(1, out_y);
        let mut inc = LaurentPoly::monomial(1, in_y);
        for j in 0..n {
            let b = q.principal().get(k, j);
            if b > 0 {
                out = &out * &self.cluster[j].pow(b as u32);
            } else if b < 0 {
                inc = &inc * &self.cluster[j].pow(b.unsigned_abs() as u32);
            }
        }
        Ok((out, inc))
    }

    /// The exchange binomial at `k` in the current cluster.
    pub fn exchange_binomial(&self, k: usize) -> Result<LaurentPoly, QuiverError> {
        let (a, b) = self.exchange_monomials(k)?;
        Ok(&a + &b)
    }

    pub fn mutate(&self, k: usize) -> Result<Self, ClusterError> {
        let f = self.exchange_binomial(k)?;
        let new = f
            .div_exact(&self.cluster[k])
            .ok_or(ClusterError::LaurentViolation { vertex: k })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Self {
            cluster,
            ice: self.ice.mutate(k)?,
        })
    }
}

pub fn seed_mutate(seed: &Seed, k: usize) -> Result<Seed, ClusterError> {
    seed.mutate(k)
}

/// The variable created by the last step of `s`, starting from the initial
/// principal-coefficient seed of `b`; for the empty sequence, `x_n`.
pub fn cluster_variable(b: &ExchangeMatrix, s: &MutationSequence) -> Result<LaurentPoly, ClusterError> {
    let mut seed = Seed::initial(b);
    for &k in s.steps() {
        seed = seed.mutate(k)?;
    }
    let idx = match s.steps().last() {
        Some(&k) => k,
        None => b.n().checked_sub(1).ok_or(QuiverError::VertexOutOfRange { vertex: 0, n: 0 })?,
    };
    let v = seed.cluster[idx].clone();
    if !v.all_coefficients_positive() {
        return Err(ClusterError::NegativeCoefficient);
    }
    Ok(v)
}

/// No two columns of the extended matrix are linearly dependent.
pub fn is_coprime_matrix(q: &IceQuiver) -> bool {
    let (n, m) = (q.n(), q.m());
    let col = |j: usize| -> Vec<i128> { (0..m).map(|r| i128::from(q.entry(r, j))).collect() };
    let cols: Vec<Vec<i128>> = (0..n).map(col).collect();
    for a in 0..n {
        for b in (a + 1)..n {
            let independent = (0..m)
                .any(|r| (0..m).any(|s| cols[a][r] * cols[b][s] != cols[a][s] * cols[b][r]));
            if !independent {
                return false;
            }
        }
    }
    true
}

/// Coprimality of every quiver in the enumerated class of `b`. `exhaustive`
/// is false when the enumeration stopped at a cap, in which case `coprime`
/// only covers the quivers seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCoprimality {
    pub coprime: bool,
    pub exhaustive: bool,
    pub checked: usize,
}

pub fn is_totally_coprime_over_class(
    b: &ExchangeMatrix,
    caps: ClassCaps,
) -> Result<ClassCoprimality, QuiverError> {
    let class = enumerate_class(b, caps)?;
    let coprime = class
        .representatives
        .iter()
        .all(|m| is_coprime_matrix(&IceQuiver::from_principal(m.canonical.clone())));
    Ok(ClassCoprimality {
        coprime,
        exhaustive: class.complete,
        checked: class.len(),
    })
}

/// First failure of the adjacent-ring test in one direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionFailure {
    #[serde(with = "crate::serde_util::one_based_index")]
    pub direction: usize,
    /// The power `m` for which `f^m` does not divide the coefficient of
    /// `x_k^{-m}`.
    pub power: u32,
}

/// Per-direction detail of [`depth1_upper_membership`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperReport {
    pub failures: Vec<DirectionFailure>,
}

impl UpperReport {
    pub fn member(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Membership of `p` in the initial Laurent ring and each of the `n`
/// adjacent ones, which is membership in the upper cluster algebra when the
/// exchange matrix is totally coprime.
///
/// In direction `k`, with `p = sum_j p_j x_k^j` and `f` the exchange binomial,
/// `p` lies in the adjacent ring iff `f^m` divides `p_{-m}` for every
/// `m >= 1`: the adjacent ring is `Z[y][x_i^±1 (i != k), x_k'^±1]` with
/// `x_k = f / x_k'`, and `x_k'` is free over the other variables.
pub fn depth1_upper_report(p: &LaurentPoly, b: &ExchangeMatrix) -> UpperReport {
    let seed = Seed::initial(b);
    assert!(
        p.nx() == b.n() && p.ny() == b.n(),
        "polynomial variables do not match the quiver"
    );
    let mut failures = Vec::new();
    for k in 0..b.n() {
        let f = seed.exchange_binomial(k).expect("k is a vertex");
        for (&j, coeff) in p.coefficients_in_x(k).range(..0) {
            let power = j.unsigned_abs() as u32;
            if coeff.div_exact(&f.pow(power)).is_none() {
                failures.push(DirectionFailure { direction: k, power });
                break;
            }
        }
    }
    UpperReport { failures }
}

pub fn depth1_upper_membership(p: &LaurentPoly, b: &ExchangeMatrix) -> bool {
    depth1_upper_report(p, b).member()
}

/// Degrees of `x_1..x_n`; every `y` has degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingVector(pub Vec<i64>);

/// `sum_i b[i][k] d_i = 0` for every column `k`.
pub fn grading_check(b: &ExchangeMatrix, d: &GradingVector) -> bool {
    let n = b.n();
    d.0.len() == n
        && (0..n).all(|k| {
            (0..n)
                .map(|i| i128::from(b.get(i, k)) * i128::from(d.0[i]))
                .sum::<i128>()
                == 0
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Degree {
    Homogeneous { degree: i64 },
    /// Terms of different degrees, or the zero polynomial.
    NotHomogeneous,
}

pub fn degree(p: &LaurentPoly, d: &GradingVector) -> Degree {
    let mut degrees = p
        .terms()
        .map(|(m, _)| m.x.iter().zip(&d.0).map(|(e, w)| e * w).sum::<i64>());
    let Some(first) = degrees.next() else {
        return Degree::NotHomogeneous;
    };
    if degrees.all(|g| g == first) {
        Degree::Homogeneous { degree: first }
    } else {
        Degree::NotHomogeneous
    }
}
