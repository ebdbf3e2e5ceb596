//! Integer n-tuples and the twisting bookkeeping on them: the star product
//! `α ∗ β = Σ_{i>j} α_i β_j` and the bicharacter `θ(α, β) = q^{α∗β − β∗α}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, Error, Result};
use crate::qring::LaurentPoly;

/// A vector in `Z^n`. Used both as a monomial exponent (nonnegative
/// entries) and as a weight for `Θ` or an exponent vector for `σ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The unit vector `ε_i`, with `i` 1-based.
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidIndex(format!("ε_{i} out of range 1..={n}")));
        }
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Ok(Self(v))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Entry `i`, 1-based.
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    /// Total degree `|β| = Σ β_i`.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&b| b >= 0)
    }

    /// Adds `k` to entry `i` (1-based).
    pub fn shifted(&self, i: usize, k: i64) -> Self {
        let mut v = self.0.clone();
        v[i - 1] += k;
        Self(v)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    pub fn checked_add(&self, other: &MultiIndex) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i64; N]> for MultiIndex {
    fn from(v: [i64; N]) -> Self {
        Self(v.to_vec())
    }
}

// Panicking operators for internal use where ranks are already known to agree.
impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        self.checked_add(rhs).expect("rank mismatch in MultiIndex addition")
    }
}

impl Sub for &MultiIndex {
    type Output = MultiIndex;
    fn sub(self, rhs: &MultiIndex) -> MultiIndex {
        self.checked_sub(rhs).expect("rank mismatch in MultiIndex subtraction")
    }
}

impl Neg for &MultiIndex {
    type Output = MultiIndex;
    fn neg(self) -> MultiIndex {
        self.scaled(-1)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `α ∗ β = Σ_{j=1}^{n-1} Σ_{i>j} α_i β_j`.
pub fn star(alpha: &MultiIndex, beta: &MultiIndex) -> Result<i64> {
    check_rank(alpha.rank(), beta.rank())?;
    Ok(star_unchecked(alpha.entries(), beta.entries()))
}

pub(crate) fn star_unchecked(alpha: &[i64], beta: &[i64]) -> i64 {
    // Σ_i α_i · (β_1 + ... + β_{i-1})
    let mut prefix = 0;
    let mut acc = 0;
    for (a, b) in alpha.iter().zip(beta) {
        acc += a * prefix;
        prefix += b;
    }
    acc
}

/// Exponent of `θ(α, β)`, i.e. `α∗β − β∗α`.
pub fn theta_exp(alpha: &MultiIndex, beta: &MultiIndex) -> Result<i64> {
    check_rank(alpha.rank(), beta.rank())?;
    Ok(theta_exp_unchecked(alpha.entries(), beta.entries()))
}

pub(crate) fn theta_exp_unchecked(alpha: &[i64], beta: &[i64]) -> i64 {
    star_unchecked(alpha, beta) - star_unchecked(beta, alpha)
}

/// `θ(α, β) = q^{α∗β − β∗α}`.
pub fn theta(alpha: &MultiIndex, beta: &MultiIndex) -> Result<LaurentPoly> {
    theta_exp(alpha, beta).map(LaurentPoly::q_pow)
}

/// Exponent of `θ(ε_i, β) = q^{Σ_{s<i} β_s − Σ_{s>i} β_s}` for 1-based `i`.
pub(crate) fn theta_unit_exp(i: usize, beta: &[i64]) -> i64 {
    let below: i64 = beta[..i - 1].iter().sum();
    let above: i64 = beta[i..].iter().sum();
    below - above
}
