//! The realization of `U_q(sl_{n+1})` by quantum differential operators in
//! `n` variables, its closed-form action on `A_q(n)`, and the verifiers for
//! the quantum group relations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aqn::{monomials_up_to, Element};
use crate::error::{Error, Result};
use crate::qindex::{theta, MultiIndex};
use crate::qring::{q_int, LaurentPoly};
use crate::verify::{check_relations, Counterexample, Identity, Relation, RelationResult, VerificationReport};
use crate::weylops::{GenSymbol, Operator};

use GenSymbol::{Sigma, Theta, D, X};

/// Cartan matrix of type `A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn type_a(n: usize) -> Self {
        let entries = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `a_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// A Chevalley generator of `U_q(sl_{n+1})` (or an inverse Cartan element).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

impl Generator {
    pub fn index(&self) -> usize {
        match *self {
            Generator::E(i) | Generator::F(i) | Generator::K(i) | Generator::KInv(i) => i,
        }
    }

    /// All generators for rank `n`, in a fixed order.
    pub fn all(n: usize) -> Vec<Generator> {
        (1..=n).flat_map(|i| [Generator::E(i), Generator::F(i), Generator::K(i), Generator::KInv(i)]).collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
            Generator::K(i) => write!(f, "K{i}"),
            Generator::KInv(i) => write!(f, "K{i}^-1"),
        }
    }
}

/// Operators `e_i, f_i, K_i^{±1}` (`1 ≤ i ≤ n`) in `W_q(2n)`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub rank_sl: usize,
    pub n: usize,
    pub e: Vec<Operator>,
    pub f: Vec<Operator>,
    pub k: Vec<Operator>,
    pub k_inv: Vec<Operator>,
}

impl Realization {
    pub fn get(&self, g: Generator) -> Result<&Operator> {
        let i = g.index();
        if i == 0 || i > self.n {
            return Err(Error::InvalidIndex(format!("{g} is out of range for n = {}", self.n)));
        }
        Ok(match g {
            Generator::E(_) => &self.e[i - 1],
            Generator::F(_) => &self.f[i - 1],
            Generator::K(_) => &self.k[i - 1],
            Generator::KInv(_) => &self.k_inv[i - 1],
        })
    }
}

pub(crate) fn sigmas(range: impl IntoIterator<Item = usize>, e: i64) -> Vec<GenSymbol> {
    range.into_iter().map(|i| Sigma(i, e)).collect()
}

/// `(Π_{t ∈ range} σ_t^{-1}) · x_s · Σ_k x_k ∂_k Θ(ε_k)`.
pub(crate) fn raising_to_top(n: usize, s: usize, lowered: impl IntoIterator<Item = usize> + Clone) -> Operator {
    let mut op = Operator::zero(n);
    for k in 1..=n {
        let mut w = sigmas(lowered.clone(), -1);
        w.extend([X(s), X(k), D(k), Theta(MultiIndex::unit(n, k).expect("k ≤ n"))]);
        op.add_term(w, LaurentPoly::one());
    }
    op
}

/// `-∂_s · Π_{t ∈ range} σ_t`.
pub(crate) fn lowering_from_top(n: usize, s: usize, raised: impl IntoIterator<Item = usize>) -> Operator {
    let mut w = vec![D(s)];
    w.extend(sigmas(raised, 1));
    Operator::term(n, w, LaurentPoly::constant(-1)).expect("indices in range")
}

/// Builds the realization of `U_q(sl_{n+1})` on `A_q(n)`.
pub fn build_realization(n: usize) -> Result<Realization> {
    if n == 0 {
        return Err(Error::InvalidArgs("n must be ≥ 1".into()));
    }
    let word = |w: Vec<GenSymbol>| Operator::word(n, w).expect("indices in range");
    let mut r = Realization { rank_sl: n + 1, n, e: vec![], f: vec![], k: vec![], k_inv: vec![] };
    for i in 1..n {
        r.e.push(word(vec![X(i), D(i + 1), Sigma(i, 1)]));
        r.f.push(word(vec![Sigma(i, -1), X(i + 1), D(i)]));
        r.k.push(word(vec![Sigma(i, 1), Sigma(i + 1, -1)]));
        r.k_inv.push(word(vec![Sigma(i, -1), Sigma(i + 1, 1)]));
    }
    r.e.push(raising_to_top(n, n, 1..n));
    r.f.push(lowering_from_top(n, n, 1..n));
    let mut kn = vec![Sigma(n, 1)];
    kn.extend(sigmas(1..=n, 1));
    r.k.push(word(kn));
    let mut kn_inv = vec![Sigma(n, -1)];
    kn_inv.extend(sigmas(1..=n, -1));
    r.k_inv.push(word(kn_inv));
    Ok(r)
}

/// `Σ_k θ(ε_k, β)[β_k]`.
pub fn weight_sum(beta: &MultiIndex) -> LaurentPoly {
    let n = beta.rank();
    (1..=n)
        .map(|k| {
            let ek = MultiIndex::unit(n, k).expect("k ≤ n");
            &theta(&ek, beta).expect("same rank") * &q_int(beta.get(k))
        })
        .sum()
}

fn shifted_term(beta: &MultiIndex, shifts: &[(usize, i64)], c: LaurentPoly) -> Element {
    let mut b = beta.clone();
    for &(i, k) in shifts {
        b = b.shifted(i, k);
    }
    if b.is_nonnegative() && !c.is_zero() {
        Element::term(b, c)
    } else {
        Element::zero(beta.rank())
    }
}

/// The action of a generator on `x^(β)` from its closed form.
pub fn closed_form_action(g: Generator, beta: &MultiIndex) -> Result<Element> {
    let n = beta.rank();
    let i = g.index();
    if i == 0 || i > n {
        return Err(Error::InvalidIndex(format!("{g} is out of range for n = {n}")));
    }
    if !beta.is_nonnegative() {
        return Err(Error::InvalidArgs(format!("x^{beta} is not a basis monomial")));
    }
    let b = |k: usize| beta.get(k);
    let total = beta.degree();
    Ok(match g {
        Generator::E(i) if i < n => shifted_term(beta, &[(i, 1), (i + 1, -1)], q_int(b(i) + 1)),
        Generator::F(i) if i < n => shifted_term(beta, &[(i, -1), (i + 1, 1)], q_int(b(i + 1) + 1)),
        Generator::K(i) if i < n => Element::term(beta.clone(), LaurentPoly::q_pow(b(i) - b(i + 1))),
        Generator::KInv(i) if i < n => Element::term(beta.clone(), LaurentPoly::q_pow(b(i + 1) - b(i))),
        Generator::E(_) => shifted_term(beta, &[(n, 1)], &q_int(b(n) + 1) * &weight_sum(beta)),
        Generator::F(_) => shifted_term(beta, &[(n, -1)], LaurentPoly::constant(-1)),
        Generator::K(_) => Element::term(beta.clone(), LaurentPoly::q_pow(total + b(n))),
        Generator::KInv(_) => Element::term(beta.clone(), LaurentPoly::q_pow(-total - b(n))),
    })
}

/// Checks a custom per-monomial property and packages the first failure.
pub(crate) fn sweep_result(
    id: &str,
    n: usize,
    degree: u32,
    check: impl Fn(&MultiIndex) -> Option<Counterexample>,
) -> RelationResult {
    match monomials_up_to(n, degree).iter().find_map(check) {
        None => RelationResult::pass(id),
        Some(c) => RelationResult::fail(id, c),
    }
}

fn validate(n: usize, degree: u32, min_n: usize, min_degree: u32) -> Result<()> {
    if n < min_n {
        return Err(Error::InvalidArgs(format!("n must be ≥ {min_n}")));
    }
    if degree < min_degree {
        return Err(Error::InvalidArgs(format!("degree must be ≥ {min_degree}")));
    }
    Ok(())
}

fn q_pow(k: i64) -> LaurentPoly {
    LaurentPoly::q_pow(k)
}

fn compose(ops: &[&Operator]) -> Operator {
    let n = ops[0].rank();
    Operator::product(n, ops.iter().copied()).expect("same rank")
}

/// Quantum Serre relations `e_i^2 e_j - [2] e_i e_j e_i + e_j e_i^2`.
fn serre_lhs(a: &Operator, b: &Operator) -> Operator {
    let two = q_int(2);
    &(&compose(&[a, a, b]) - &compose(&[a, b, a]).scale(&two)) + &compose(&[b, a, a])
}

/// The relations among `e_i, f_i, K_i^{±1}` for `i, j` in `indices`, with
/// `(K_i - K_i^{-1})/(q - q^{-1})` divided exactly per monomial.
fn chevalley_relations(r: &Realization, cartan: &CartanMatrix, indices: &[usize]) -> Vec<Relation> {
    let n = r.n;
    let zero = Operator::zero(n);
    let id = Operator::identity(n);
    let den = &LaurentPoly::q() - &q_pow(-1);
    let (e, f, k, ki) = (&r.e, &r.f, &r.k, &r.k_inv);
    let mut rels = Vec::new();
    for &i in indices {
        for &j in indices {
            let (ei, ej, fi, fj) = (&e[i - 1], &e[j - 1], &f[i - 1], &f[j - 1]);
            let (kki, kkj, kii) = (&k[i - 1], &k[j - 1], &ki[i - 1]);
            let mut r1 = vec![Identity::new("K_iK_j = K_jK_i", compose(&[kki, kkj]), compose(&[kkj, kki]))];
            if i == j {
                r1.push(Identity::new("K_iK_i^-1 = 1", compose(&[kki, kii]), id.clone()));
                r1.push(Identity::new("K_i^-1K_i = 1", compose(&[kii, kki]), id.clone()));
            }
            rels.push(Relation::new(format!("R1:i={i},j={j}"), r1));
            let a = cartan.get(i, j);
            rels.push(Relation::new(
                format!("R2:i={i},j={j}"),
                vec![
                    Identity::new("K_ie_jK_i^-1 = q^a_ij e_j", compose(&[kki, ej, kii]), ej.scale(&q_pow(a))),
                    Identity::new("K_if_jK_i^-1 = q^-a_ij f_j", compose(&[kki, fj, kii]), fj.scale(&q_pow(-a))),
                ],
            ));
            let comm = &compose(&[ei, fj]) - &compose(&[fj, ei]);
            let r3 = if i == j {
                Identity::divided("[e_i,f_i] = (K_i - K_i^-1)/(q - q^-1)", comm, kki - kii, den.clone())
            } else {
                Identity::new("[e_i,f_j] = 0", comm, zero.clone())
            };
            rels.push(Relation::single(format!("R3:i={i},j={j}"), r3));
            match i.abs_diff(j) {
                1 => {
                    rels.push(Relation::single(
                        format!("R4:i={i},j={j}"),
                        Identity::new("e_i^2e_j - [2]e_ie_je_i + e_je_i^2 = 0", serre_lhs(ei, ej), zero.clone()),
                    ));
                    rels.push(Relation::single(
                        format!("R6:i={i},j={j}"),
                        Identity::new("f_i^2f_j - [2]f_if_jf_i + f_jf_i^2 = 0", serre_lhs(fi, fj), zero.clone()),
                    ));
                }
                0 => {}
                _ => {
                    rels.push(Relation::single(
                        format!("R5:i={i},j={j}"),
                        Identity::new("e_ie_j = e_je_i", compose(&[ei, ej]), compose(&[ej, ei])),
                    ));
                    rels.push(Relation::single(
                        format!("R7:i={i},j={j}"),
                        Identity::new("f_if_j = f_jf_i", compose(&[fi, fj]), compose(&[fj, fi])),
                    ));
                }
            }
        }
    }
    sort_by_family(rels)
}

/// Orders relations by family number, keeping the index order within one.
fn sort_by_family(mut rels: Vec<Relation>) -> Vec<Relation> {
    rels.sort_by_key(|r| r.id.split(':').next().map(str::to_owned));
    rels
}

/// Verifies `(R1)–(R7)` for the realization of `U_q(sl_{n+1})`.
pub fn verify_serre(n: usize, degree: u32) -> Result<VerificationReport> {
    verify_serre_with(&build_realization(n)?, degree)
}

/// As [`verify_serre`] for an arbitrary (possibly altered) realization.
pub fn verify_serre_with(r: &Realization, degree: u32) -> Result<VerificationReport> {
    validate(r.n, degree, 1, 2)?;
    let indices: Vec<usize> = (1..=r.n).collect();
    let rels = chevalley_relations(r, &CartanMatrix::type_a(r.n), &indices);
    Ok(check_relations("serre", r.n, degree, &rels))
}

/// Verifies the `U_q(gl_n)` structure with `k_i = σ_i` together with the
/// `U_q(sl_n)` generators `e_j, f_j, K_j` for `j < n`.
pub fn verify_gl(n: usize, degree: u32) -> Result<VerificationReport> {
    verify_gl_with(&build_realization(n)?, degree)
}

pub fn verify_gl_with(r: &Realization, degree: u32) -> Result<VerificationReport> {
    validate(r.n, degree, 2, 0)?;
    let n = r.n;
    let sigma = |i: usize, e: i64| Operator::word(n, vec![Sigma(i, e)]).expect("i ≤ n");
    let id = Operator::identity(n);
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let mut ids = vec![Identity::new(
                "k_ik_j = k_jk_i",
                compose(&[&sigma(i, 1), &sigma(j, 1)]),
                compose(&[&sigma(j, 1), &sigma(i, 1)]),
            )];
            if i == j {
                ids.push(Identity::new("k_ik_i^-1 = 1", compose(&[&sigma(i, 1), &sigma(i, -1)]), id.clone()));
                ids.push(Identity::new("k_i^-1k_i = 1", compose(&[&sigma(i, -1), &sigma(i, 1)]), id.clone()));
            }
            rels.push(Relation::new(format!("GL1:i={i},j={j}"), ids));
        }
    }
    for i in 1..=n {
        for j in 1..n {
            let pairing = i64::from(i == j) - i64::from(i == j + 1);
            let (ej, fj) = (&r.e[j - 1], &r.f[j - 1]);
            rels.push(Relation::new(
                format!("GL2:i={i},j={j}"),
                vec![
                    Identity::new(
                        "k_ie_jk_i^-1 = q^<ε_i,α_j> e_j",
                        compose(&[&sigma(i, 1), ej, &sigma(i, -1)]),
                        ej.scale(&q_pow(pairing)),
                    ),
                    Identity::new(
                        "k_if_jk_i^-1 = q^-<ε_i,α_j> f_j",
                        compose(&[&sigma(i, 1), fj, &sigma(i, -1)]),
                        fj.scale(&q_pow(-pairing)),
                    ),
                ],
            ));
        }
    }
    for i in 1..n {
        rels.push(Relation::new(
            format!("GL3:i={i}"),
            vec![
                Identity::new("K_i = k_ik_{i+1}^-1", r.k[i - 1].clone(), compose(&[&sigma(i, 1), &sigma(i + 1, -1)])),
                Identity::new(
                    "K_i^-1 = k_i^-1k_{i+1}",
                    r.k_inv[i - 1].clone(),
                    compose(&[&sigma(i, -1), &sigma(i + 1, 1)]),
                ),
            ],
        ));
    }
    let indices: Vec<usize> = (1..n).collect();
    rels.extend(chevalley_relations(r, &CartanMatrix::type_a(n), &indices));
    Ok(check_relations("gl", n, degree, &rels))
}

/// Checks that `Σ_k θ(ε_k, β)[β_k]` is unchanged by `β ↦ β + m(ε_i − ε_{i+1})`
/// for all `|β| ≤ degree`, `1 ≤ i < n`, `|m| ≤ max_shift`, whenever the
/// shifted index stays in `Z₊ⁿ`.
pub fn lemma21_check(n: usize, degree: u32, max_shift: i64) -> Result<VerificationReport> {
    validate(n, degree, 1, 0)?;
    let cases: Vec<(usize, i64)> = (1..n).flat_map(|i| (-max_shift..=max_shift).map(move |m| (i, m))).collect();
    let relations = cases
        .par_iter()
        .map(|&(i, m)| {
            sweep_result(&format!("L21:i={i},m={m}"), n, degree, |beta| {
                let shifted = beta.shifted(i, m).shifted(i + 1, -m);
                if !shifted.is_nonnegative() {
                    return None;
                }
                let lhs = weight_sum(beta);
                let rhs = weight_sum(&shifted);
                (lhs != rhs).then(|| Counterexample {
                    identity: "Σθ(ε_k,β)[β_k] is shift invariant".into(),
                    beta: beta.clone(),
                    lhs: Element::term(beta.clone(), lhs),
                    rhs: Element::term(beta.clone(), rhs),
                    note: Some(format!("shifted index {shifted}")),
                })
            })
        })
        .collect();
    Ok(VerificationReport::new("lemma21", n, degree, relations))
}

/// A linear combination of monomials with integer coefficients, i.e. an
/// element of the classical divided power algebra.
type ClassicalElement = std::collections::BTreeMap<Vec<i64>, BigInt>;

#[derive(Clone, Copy)]
enum ClassicalOp {
    /// `x_i · x^(β) = (β_i + 1) x^(β+ε_i)`
    Mul(usize),
    /// `∂_i x^(β) = x^(β−ε_i)`
    Der(usize),
}

fn classical_word(word: &[ClassicalOp], beta: &[i64]) -> Option<(Vec<i64>, BigInt)> {
    let mut b = beta.to_vec();
    let mut c = BigInt::one();
    for op in word.iter().rev() {
        match *op {
            ClassicalOp::Mul(i) => {
                b[i - 1] += 1;
                c *= b[i - 1];
            }
            ClassicalOp::Der(i) => {
                if b[i - 1] == 0 {
                    return None;
                }
                b[i - 1] -= 1;
            }
        }
    }
    Some((b, c))
}

/// The `sl_{n+1}` generators acting on the classical divided power algebra.
fn classical_action(g: Generator, n: usize, beta: &[i64]) -> ClassicalElement {
    use ClassicalOp::{Der, Mul};
    let words: Vec<(i64, Vec<ClassicalOp>)> = match g {
        Generator::K(_) | Generator::KInv(_) => vec![(1, vec![])],
        Generator::E(i) if i < n => vec![(1, vec![Mul(i), Der(i + 1)])],
        Generator::F(i) if i < n => vec![(1, vec![Mul(i + 1), Der(i)])],
        Generator::E(_) => (1..=n).map(|k| (1, vec![Mul(n), Mul(k), Der(k)])).collect(),
        Generator::F(_) => vec![(-1, vec![Der(n)])],
    };
    let mut out = ClassicalElement::new();
    for (sign, w) in words {
        if let Some((b, c)) = classical_word(&w, beta) {
            *out.entry(b).or_insert_with(BigInt::zero) += c * sign;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn classical_to_element(n: usize, e: &ClassicalElement) -> Element {
    let mut out = Element::zero(n);
    for (b, c) in e {
        out.add_term(MultiIndex::new(b.clone()), LaurentPoly::constant(c.clone()));
    }
    out
}

/// Checks that setting `q = 1` in every coefficient of the realized action
/// gives the classical `sl_{n+1}` action by differential operators.
pub fn classical_degeneration_check(n: usize, degree: u32) -> Result<VerificationReport> {
    classical_degeneration_check_with(&build_realization(n)?, degree)
}

pub fn classical_degeneration_check_with(r: &Realization, degree: u32) -> Result<VerificationReport> {
    let n = r.n;
    validate(n, degree, 1, 0)?;
    let relations = Generator::all(n)
        .par_iter()
        .map(|&g| {
            let op = r.get(g).expect("generator in range");
            sweep_result(&format!("C:{g}"), n, degree, |beta| {
                let quantum = op.apply_monomial(beta);
                let mut at_one = ClassicalElement::new();
                for (b, c) in quantum.terms() {
                    let v = c.eval_at_one();
                    if !v.is_zero() {
                        *at_one.entry(b.entries().to_vec()).or_insert_with(BigInt::zero) += v;
                    }
                }
                at_one.retain(|_, c| !c.is_zero());
                let classical = classical_action(g, n, beta.entries());
                (at_one != classical).then(|| Counterexample {
                    identity: format!("{g} at q = 1"),
                    beta: beta.clone(),
                    lhs: classical_to_element(n, &at_one),
                    rhs: classical_to_element(n, &classical),
                    note: None,
                })
            })
        })
        .collect();
    Ok(VerificationReport::new("classical", n, degree, relations))
}

/// Compares every realized generator with its closed-form action.
pub fn closed_form_check(r: &Realization, degree: u32) -> Result<VerificationReport> {
    let n = r.n;
    let relations = Generator::all(n)
        .par_iter()
        .map(|&g| {
            let op = r.get(g).expect("generator in range");
            sweep_result(&format!("CF:{g}"), n, degree, |beta| {
                let lhs = op.apply_monomial(beta);
                let rhs = closed_form_action(g, beta).expect("valid generator");
                (lhs != rhs).then(|| Counterexample {
                    identity: format!("{g} word = closed form"),
                    beta: beta.clone(),
                    lhs,
                    rhs,
                    note: None,
                })
            })
        })
        .collect();
    Ok(VerificationReport::new("closed-form", n, degree, relations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn rank_one_words() {
        let r = build_realization(1).unwrap();
        let e1 = Operator::word(1, vec![X(1), X(1), D(1), Theta(mi(&[1]))]).unwrap();
        assert_eq!(r.e[0], e1);
        assert_eq!(r.f[0], Operator::term(1, vec![D(1)], LaurentPoly::constant(-1)).unwrap());
        assert_eq!(r.k[0], Operator::word(1, vec![Sigma(1, 1), Sigma(1, 1)]).unwrap());
    }

    #[test]
    fn rank_two_examples() {
        let r = build_realization(2).unwrap();
        let x11 = Element::monomial(mi(&[1, 1]));
        let two = q_int(2);
        assert_eq!(r.e[1].apply(&x11).unwrap(), Element::term(mi(&[1, 2]), &two * &two));
        assert_eq!(r.f[1].apply(&x11).unwrap(), Element::term(mi(&[1, 0]), LaurentPoly::constant(-1)));
        assert_eq!(r.k[1].apply(&x11).unwrap(), Element::term(mi(&[1, 1]), q_pow(3)));
    }

    #[test]
    fn closed_form_examples() {
        assert!(closed_form_action(Generator::E(2), &mi(&[0, 0])).unwrap().is_zero());
        assert_eq!(closed_form_action(Generator::F(1), &mi(&[1, 0])).unwrap(), Element::monomial(mi(&[0, 1])));
        assert_eq!(closed_form_action(Generator::K(2), &mi(&[1, 1])).unwrap(), Element::term(mi(&[1, 1]), q_pow(3)));
        assert!(closed_form_action(Generator::E(3), &mi(&[1, 1])).is_err());
    }

    #[test]
    fn words_match_closed_forms() {
        for n in 1..=3 {
            let report = closed_form_check(&build_realization(n).unwrap(), 5).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn serre_small() {
        assert!(verify_serre(1, 6).unwrap().passed());
        let report = verify_serre(2, 4).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.relations.iter().any(|r| r.id == "R3:i=2,j=2"));
        assert!(verify_serre(1, 1).is_err());
    }

    #[test]
    fn gl_small() {
        let report = verify_gl(2, 5).unwrap();
        assert!(report.passed(), "{report}");
        assert!(verify_gl(1, 5).is_err());
    }

    #[test]
    fn lemma21_examples() {
        let beta = mi(&[1, 1]);
        assert_eq!(weight_sum(&beta), q_int(2));
        assert_eq!(weight_sum(&mi(&[2, 0])), q_int(2));
        assert!(lemma21_check(3, 4, 2).unwrap().passed());
    }

    #[test]
    fn classical_small() {
        for n in 1..=2 {
            assert!(classical_degeneration_check(n, 4).unwrap().passed());
        }
    }

    #[test]
    fn dropping_theta_in_top_raising_is_caught() {
        let n = 2;
        let mut r = build_realization(n).unwrap();
        let mut broken = Operator::zero(n);
        for (w, c) in r.e[n - 1].terms() {
            let w: Vec<GenSymbol> = w.iter().filter(|g| !matches!(g, Theta(_))).cloned().collect();
            broken.add_term(w, c.clone());
        }
        r.e[n - 1] = broken;
        let report = verify_serre_with(&r, 4).unwrap();
        assert!(!report.passed());
        assert!(report.failures().all(|f| f.counterexample.is_some()));
    }
}
