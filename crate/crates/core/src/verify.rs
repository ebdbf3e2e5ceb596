//! Verification of operator identities by their action on every basis
//! monomial up to a degree bound, and the report type shared by all
//! verification suites.
//!
//! Equality here is decided only on `{x^(β) : |β| ≤ D}`; it is a checking
//! semantics, not a decision procedure for `W_q(2n)`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aqn::{monomials_up_to, Element};
use crate::error::{check_rank, Result};
use crate::qindex::MultiIndex;
use crate::qring::LaurentPoly;
use crate::weylops::Operator;

/// Right-hand side of an identity.
#[derive(Clone, Debug)]
pub enum Rhs {
    Operator(Operator),
    /// `numer / den`, where the division is carried out exactly on each
    /// coefficient of `numer(x^(β))`.
    Divided {
        numer: Operator,
        den: LaurentPoly,
    },
}

/// One operator identity `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Identity {
    pub label: String,
    pub lhs: Operator,
    pub rhs: Rhs,
}

impl Identity {
    pub fn new(label: impl Into<String>, lhs: Operator, rhs: Operator) -> Self {
        Self { label: label.into(), lhs, rhs: Rhs::Operator(rhs) }
    }

    pub fn divided(label: impl Into<String>, lhs: Operator, numer: Operator, den: LaurentPoly) -> Self {
        Self { label: label.into(), lhs, rhs: Rhs::Divided { numer, den } }
    }

    fn rank(&self) -> usize {
        self.lhs.rank()
    }

    /// First failing monomial in lexicographic order, if any.
    pub fn check(&self, degree: u32) -> Option<Counterexample> {
        monomials_up_to(self.rank(), degree).into_iter().find_map(|beta| self.check_monomial(&beta))
    }

    fn check_monomial(&self, beta: &MultiIndex) -> Option<Counterexample> {
        let lhs = self.lhs.apply_monomial(beta);
        let (rhs, note) = match &self.rhs {
            Rhs::Operator(op) => (op.apply_monomial(beta), None),
            Rhs::Divided { numer, den } => {
                let num = numer.apply_monomial(beta);
                match divide_exact(&num, den) {
                    Ok(q) => (q, None),
                    Err(msg) => (num, Some(msg)),
                }
            }
        };
        (lhs != rhs || note.is_some()).then(|| Counterexample {
            identity: self.label.clone(),
            beta: beta.clone(),
            lhs,
            rhs,
            note,
        })
    }
}

fn divide_exact(e: &Element, den: &LaurentPoly) -> std::result::Result<Element, String> {
    let mut out = Element::zero(e.rank());
    for (b, c) in e.terms() {
        let q = c.exact_div(den).map_err(|_| format!("coefficient {c} of x^{b} is not divisible by {den}"))?;
        out.add_term(b.clone(), q);
    }
    Ok(out)
}

/// A named relation made of one or more identities; it passes when all of
/// them hold.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub identities: Vec<Identity>,
}

impl Relation {
    pub fn new(id: impl Into<String>, identities: Vec<Identity>) -> Self {
        Self { id: id.into(), identities }
    }

    pub fn single(id: impl Into<String>, identity: Identity) -> Self {
        Self::new(id, vec![identity])
    }

    pub fn check(&self, degree: u32) -> RelationResult {
        match self.identities.iter().find_map(|ident| ident.check(degree)) {
            None => RelationResult::pass(&self.id),
            Some(cex) => RelationResult::fail(&self.id, cex),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub identity: String,
    pub beta: MultiIndex,
    pub lhs: Element,
    pub rhs: Element,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationResult {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl RelationResult {
    pub fn pass(id: &str) -> Self {
        Self { id: id.to_string(), status: Status::Pass, counterexample: None }
    }

    pub fn fail(id: &str, cex: Counterexample) -> Self {
        Self { id: id.to_string(), status: Status::Fail, counterexample: Some(cex) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of one verification suite. Relation order is fixed by the suite,
/// independent of how the sweep was scheduled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub n: usize,
    pub rank_sl: usize,
    pub degree: u32,
    pub relations: Vec<RelationResult>,
    pub failed: usize,
}

impl VerificationReport {
    pub fn new(check: &str, n: usize, degree: u32, relations: Vec<RelationResult>) -> Self {
        let failed = relations.iter().filter(|r| !r.passed()).count();
        Self { check: check.to_string(), n, rank_sl: n + 1, degree, relations, failed }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationResult> + '_ {
        self.relations.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} n={} (U_q(sl_{})) degree={}: {} relations, {} failed",
            self.check,
            self.n,
            self.rank_sl,
            self.degree,
            self.relations.len(),
            self.failed
        )?;
        for r in &self.relations {
            match &r.counterexample {
                None => writeln!(f, "  PASS {}", r.id)?,
                Some(c) => {
                    writeln!(f, "  FAIL {} [{}] at x^{}", r.id, c.identity, c.beta)?;
                    writeln!(f, "       lhs = {}", c.lhs)?;
                    writeln!(f, "       rhs = {}", c.rhs)?;
                    if let Some(note) = &c.note {
                        writeln!(f, "       note: {note}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks every relation (in parallel) and assembles the report in the
/// given relation order.
pub fn check_relations(check: &str, n: usize, degree: u32, relations: &[Relation]) -> VerificationReport {
    let results: Vec<RelationResult> = relations.par_iter().map(|r| r.check(degree)).collect();
    VerificationReport::new(check, n, degree, results)
}

/// Result of comparing two operators on all monomials up to a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpComparison {
    Equal,
    Differs { beta: MultiIndex, lhs: Element, rhs: Element },
}

impl OpComparison {
    pub fn holds(&self) -> bool {
        matches!(self, OpComparison::Equal)
    }
}

/// Compares `a` and `b` on every `x^(β)` with `|β| ≤ degree`. On failure
/// reports the lexicographically smallest failing `β`.
pub fn op_eq_up_to_degree(a: &Operator, b: &Operator, degree: u32) -> Result<OpComparison> {
    check_rank(a.rank(), b.rank())?;
    let found = monomials_up_to(a.rank(), degree).into_par_iter().find_map_first(|beta| {
        let lhs = a.apply_monomial(&beta);
        let rhs = b.apply_monomial(&beta);
        (lhs != rhs).then_some(OpComparison::Differs { beta, lhs, rhs })
    });
    Ok(found.unwrap_or(OpComparison::Equal))
}

/// Like [`op_eq_up_to_degree`], with `b = numer / den` divided exactly per
/// monomial. A non-exact division counts as a difference.
pub fn op_eq_divided_up_to_degree(
    a: &Operator,
    numer: &Operator,
    den: &LaurentPoly,
    degree: u32,
) -> Result<OpComparison> {
    check_rank(a.rank(), numer.rank())?;
    let ident = Identity::divided("", a.clone(), numer.clone(), den.clone());
    Ok(match ident.check(degree) {
        None => OpComparison::Equal,
        Some(c) => OpComparison::Differs { beta: c.beta, lhs: c.lhs, rhs: c.rhs },
    })
}
