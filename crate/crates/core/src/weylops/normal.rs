//! Normal ordering of operator words.
//!
//! The canonical word is `X-block · D-block · σ-block · Θ-block`, indices
//! ascending inside the X and D blocks, the σ exponents written as repeated
//! `σ_i^{±1}` factors in ascending `i`, and the Θ weights merged into one
//! `Θ(μ)`. A word is brought to this form by multiplying generators onto a
//! normal monomial from the right and commuting the new generator leftwards:
//!
//! ```text
//! ∂_i x_i  -> q x_i ∂_i + σ_i^{-1}
//! ∂_i x_j  -> θ(ε_j, ε_i) x_j ∂_i          (i ≠ j)
//! x_i x_j  -> θ(ε_i, ε_j) x_j x_i          (i > j)
//! ∂_i ∂_j  -> θ(ε_i, ε_j) ∂_j ∂_i          (i > j)
//! σ_i^e x_j -> q^{e δ_ij} x_j σ_i^e
//! σ_i^e ∂_j -> q^{-e δ_ij} ∂_j σ_i^e
//! Θ(μ) x_j -> θ(μ, ε_j) x_j Θ(μ)
//! Θ(μ) ∂_j -> θ(ε_j, μ) ∂_j Θ(μ)
//! ```

use crate::qindex::{theta_unit_exp, MultiIndex};

use super::{GenSymbol, OpWord, Operator};

/// The commutation rules used by [`normalize_with`], parameterized by an
/// extra power of `q` per rule family.
///
/// [`RewriteRules::default`] is the presentation of `W_q(2n)`; any other
/// value describes a deliberately corrupted rule set, which the verifiers
/// must reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRules {
    /// Added to the exponent in `∂_i x_i -> q x_i ∂_i + ...`.
    pub dx_diag_offset: i64,
    /// Whether `∂_i x_i` produces the `σ_i^{-1}` term.
    pub dx_diag_sigma: bool,
    pub dx_skew_offset: i64,
    pub xx_offset: i64,
    pub dd_offset: i64,
    pub sigma_x_offset: i64,
    pub sigma_d_offset: i64,
    pub theta_x_offset: i64,
    pub theta_d_offset: i64,
}

impl Default for RewriteRules {
    fn default() -> Self {
        Self {
            dx_diag_offset: 0,
            dx_diag_sigma: true,
            dx_skew_offset: 0,
            xx_offset: 0,
            dd_offset: 0,
            sigma_x_offset: 0,
            sigma_d_offset: 0,
            theta_x_offset: 0,
            theta_d_offset: 0,
        }
    }
}

#[derive(Clone, Debug)]
struct NormalTerm {
    exp: i64,
    xs: Vec<usize>,
    ds: Vec<usize>,
    sigma: Vec<i64>,
    theta: Vec<i64>,
}

/// `D(ds) X(j) = Σ q^exp X(j)^{[x]} D(ds') σ_j^{sigma}`.
struct Passed {
    exp: i64,
    ds: Vec<usize>,
    x: bool,
    sigma: i64,
}

fn pass_x_through_d(ds: &[usize], j: usize, rules: &RewriteRules) -> Vec<Passed> {
    let Some((&last, prefix)) = ds.split_last() else {
        return vec![Passed { exp: 0, ds: Vec::new(), x: true, sigma: 0 }];
    };
    let mut out = Vec::new();
    if last != j {
        // θ(ε_j, ε_last) = q^{±1}
        let swap = if j > last { 1 } else { -1 } + rules.dx_skew_offset;
        for mut p in pass_x_through_d(prefix, j, rules) {
            p.exp += swap;
            p.ds.push(last);
            out.push(p);
        }
    } else {
        for mut p in pass_x_through_d(prefix, j, rules) {
            p.exp += 1 + rules.dx_diag_offset;
            if p.sigma != 0 {
                // σ_j^s ∂_j = q^{-s} ∂_j σ_j^s
                p.exp += -p.sigma + rules.sigma_d_offset;
            }
            p.ds.push(last);
            out.push(p);
        }
        if rules.dx_diag_sigma {
            out.push(Passed { exp: 0, ds: prefix.to_vec(), x: false, sigma: -1 });
        }
    }
    out
}

impl NormalTerm {
    fn identity(n: usize, exp: i64) -> Self {
        Self { exp, xs: Vec::new(), ds: Vec::new(), sigma: vec![0; n], theta: vec![0; n] }
    }

    fn times(mut self, g: &GenSymbol, rules: &RewriteRules) -> Vec<NormalTerm> {
        match g {
            GenSymbol::Theta(mu) => {
                for (t, m) in self.theta.iter_mut().zip(mu.entries()) {
                    *t += m;
                }
                vec![self]
            }
            GenSymbol::Sigma(i, e) => {
                self.sigma[i - 1] += e;
                vec![self]
            }
            GenSymbol::D(j) => {
                let j = *j;
                if self.theta.iter().any(|&t| t != 0) {
                    // Θ(μ) ∂_j = θ(ε_j, μ) ∂_j Θ(μ)
                    self.exp += theta_unit_exp(j, &self.theta) + rules.theta_d_offset;
                }
                let s = self.sigma[j - 1];
                if s != 0 {
                    self.exp += -s + rules.sigma_d_offset;
                }
                let pos = self.ds.partition_point(|&a| a <= j);
                let moved = (self.ds.len() - pos) as i64;
                self.exp += moved * (1 + rules.dd_offset);
                self.ds.insert(pos, j);
                vec![self]
            }
            GenSymbol::X(j) => {
                let j = *j;
                if self.theta.iter().any(|&t| t != 0) {
                    // θ(μ, ε_j) = θ(ε_j, μ)^{-1}
                    self.exp += -theta_unit_exp(j, &self.theta) + rules.theta_x_offset;
                }
                let s = self.sigma[j - 1];
                if s != 0 {
                    self.exp += s + rules.sigma_x_offset;
                }
                pass_x_through_d(&self.ds, j, rules)
                    .into_iter()
                    .map(|p| {
                        let mut t = self.clone();
                        t.exp += p.exp;
                        t.ds = p.ds;
                        t.sigma[j - 1] += p.sigma;
                        if p.x {
                            let pos = t.xs.partition_point(|&a| a <= j);
                            let moved = (t.xs.len() - pos) as i64;
                            t.exp += moved * (1 + rules.xx_offset);
                            t.xs.insert(pos, j);
                        }
                        t
                    })
                    .collect()
            }
        }
    }

    fn into_word(self, n: usize) -> (OpWord, i64) {
        let mut w: OpWord = Vec::new();
        w.extend(self.xs.into_iter().map(GenSymbol::X));
        w.extend(self.ds.into_iter().map(GenSymbol::D));
        for (k, &s) in self.sigma.iter().enumerate() {
            for _ in 0..s.abs() {
                w.push(GenSymbol::Sigma(k + 1, s.signum()));
            }
        }
        if self.theta.iter().any(|&t| t != 0) {
            w.push(GenSymbol::Theta(MultiIndex::new(self.theta)));
        }
        debug_assert!(w.iter().all(|g| g.validate(n).is_ok()));
        (w, self.exp)
    }
}

/// Rewrites every word into the canonical order with the given rules.
pub fn normalize_with(op: &Operator, rules: &RewriteRules) -> Operator {
    let n = op.rank();
    let mut out = Operator::zero(n);
    for (word, c) in op.terms() {
        let mut acc = vec![NormalTerm::identity(n, 0)];
        for g in word {
            acc = acc.into_iter().flat_map(|t| t.times(g, rules)).collect();
        }
        for t in acc {
            let (w, exp) = t.into_word(n);
            out.add_term(w, c.shift(exp));
        }
    }
    out
}

/// Rewrites every word into the canonical order `X · D · σ · Θ`. The result
/// has the same action on `A_q(n)` as the input.
pub fn normalize(op: &Operator) -> Operator {
    normalize_with(op, &RewriteRules::default())
}
