//! The quantum Weyl algebra `W_q(2n)` realized as operator words acting on
//! `A_q(n)`.
//!
//! An [`Operator`] is a Laurent-coefficient combination of words over the
//! generators `x_i`, `∂_i`, `σ_i^{±1}` and `Θ(μ)`. Words act right to left:
//! the word `[X(1), D(2), Sigma(1, 1)]` is `x_1 ∂_2 σ_1`, with `σ_1` applied
//! first.

mod action;
mod normal;
mod relations;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, Error, Result};
use crate::qindex::MultiIndex;
use crate::qring::LaurentPoly;

pub use action::{apply_generator, apply_word_monomial};
pub use normal::{normalize, normalize_with, RewriteRules};
pub use relations::{verify_weyl_relations, verify_weyl_relations_with, weyl_relations};

/// One generator of `W_q(2n)`. Indices are 1-based.
///
/// The derived order (`X < D < Sigma < Theta`) is the block order of the
/// normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SymbolRepr", into = "SymbolRepr")]
pub enum GenSymbol {
    /// Left multiplication by `x^(ε_i)`.
    X(usize),
    /// The q-derivative `∂_i`.
    D(usize),
    /// `σ_i^e` with `e = ±1`.
    Sigma(usize, i64),
    /// `Θ(μ)` for an arbitrary integer weight `μ`.
    Theta(MultiIndex),
}

impl GenSymbol {
    /// Change in total degree.
    pub fn degree_shift(&self) -> i64 {
        match self {
            GenSymbol::X(_) => 1,
            GenSymbol::D(_) => -1,
            GenSymbol::Sigma(..) | GenSymbol::Theta(_) => 0,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let idx = |i: usize| {
            if (1..=n).contains(&i) {
                Ok(())
            } else {
                Err(Error::InvalidIndex(format!("generator index {i} out of range 1..={n}")))
            }
        };
        match self {
            GenSymbol::X(i) | GenSymbol::D(i) => idx(*i),
            GenSymbol::Sigma(i, e) => {
                idx(*i)?;
                if e.abs() == 1 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgs(format!("σ exponent must be ±1, got {e}")))
                }
            }
            GenSymbol::Theta(mu) => check_rank(n, mu.rank()),
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSymbol::X(i) => write!(f, "x{i}"),
            GenSymbol::D(i) => write!(f, "d{i}"),
            GenSymbol::Sigma(i, 1) => write!(f, "s{i}"),
            GenSymbol::Sigma(i, e) => write!(f, "s{i}^{e}"),
            GenSymbol::Theta(mu) => write!(f, "t{mu}"),
        }
    }
}

impl fmt::Debug for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "k")]
enum SymbolRepr {
    X { i: usize },
    D { i: usize },
    S { i: usize, e: i64 },
    T { mu: MultiIndex },
}

impl From<GenSymbol> for SymbolRepr {
    fn from(g: GenSymbol) -> Self {
        match g {
            GenSymbol::X(i) => SymbolRepr::X { i },
            GenSymbol::D(i) => SymbolRepr::D { i },
            GenSymbol::Sigma(i, e) => SymbolRepr::S { i, e },
            GenSymbol::Theta(mu) => SymbolRepr::T { mu },
        }
    }
}

impl TryFrom<SymbolRepr> for GenSymbol {
    type Error = String;
    fn try_from(r: SymbolRepr) -> std::result::Result<Self, String> {
        Ok(match r {
            SymbolRepr::X { i } => GenSymbol::X(i),
            SymbolRepr::D { i } => GenSymbol::D(i),
            SymbolRepr::S { i, e } if e.abs() == 1 => GenSymbol::Sigma(i, e),
            SymbolRepr::S { e, .. } => return Err(format!("σ exponent must be ±1, got {e}")),
            SymbolRepr::T { mu } => GenSymbol::Theta(mu),
        })
    }
}

/// A word over [`GenSymbol`]; the empty word is the identity.
pub type OpWord = Vec<GenSymbol>;

/// Total degree shift of a word.
pub fn word_degree_shift(word: &[GenSymbol]) -> i64 {
    word.iter().map(GenSymbol::degree_shift).sum()
}

/// An element of `W_q(2n)` as a combination of words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    n: usize,
    terms: BTreeMap<OpWord, LaurentPoly>,
}

impl Operator {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, LaurentPoly::one())
    }

    pub fn scalar(n: usize, c: LaurentPoly) -> Self {
        let mut op = Self::zero(n);
        op.add_term(Vec::new(), c);
        op
    }

    /// A single word with coefficient 1, validated against rank `n`.
    pub fn word(n: usize, word: OpWord) -> Result<Self> {
        Self::term(n, word, LaurentPoly::one())
    }

    pub fn term(n: usize, word: OpWord, coeff: LaurentPoly) -> Result<Self> {
        for g in &word {
            g.validate(n)?;
        }
        let mut op = Self::zero(n);
        op.add_term(word, coeff);
        Ok(op)
    }

    pub fn generator(n: usize, g: GenSymbol) -> Result<Self> {
        Self::word(n, vec![g])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpWord, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[GenSymbol]) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, word: OpWord, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, p) in &self.terms {
            out.add_term(w.clone(), p * c);
        }
        out
    }

    pub fn checked_add(&self, other: &Operator) -> Result<Self> {
        check_rank(self.n, other.n)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Operator) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// `self ∘ other`: words concatenated, `other` acting first.
    pub fn compose(&self, other: &Operator) -> Result<Self> {
        check_rank(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = Vec::with_capacity(wa.len() + wb.len());
                w.extend_from_slice(wa);
                w.extend_from_slice(wb);
                out.add_term(w, ca * cb);
            }
        }
        Ok(out)
    }

    /// Composes a sequence left to right: `ops[0] ∘ ops[1] ∘ ...`.
    pub fn product<'a>(n: usize, ops: impl IntoIterator<Item = &'a Operator>) -> Result<Self> {
        ops.into_iter().try_fold(Self::identity(n), |acc, op| acc.compose(op))
    }

    /// `self^k` under composition.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| acc.compose(self).expect("same rank"))
    }

    /// Action on an element of `A_q(n)`.
    pub fn apply(&self, e: &crate::aqn::Element) -> Result<crate::aqn::Element> {
        action::apply(self, e)
    }

    /// Action on a single monomial `x^(β)`.
    pub fn apply_monomial(&self, beta: &MultiIndex) -> crate::aqn::Element {
        action::apply_monomial(self, beta)
    }
}

/// The q-bracket `[a, b]_c = ab − c·ba`.
pub fn q_bracket(a: &Operator, b: &Operator, c: &LaurentPoly) -> Result<Operator> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    ab.checked_sub(&ba.scale(c))
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.checked_add(rhs).expect("rank mismatch in Operator addition")
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.checked_sub(rhs).expect("rank mismatch in Operator subtraction")
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(&LaurentPoly::constant(-1))
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator[n={}]({self})", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    n: usize,
    terms: Vec<OperatorTermRepr>,
}

#[derive(Serialize, Deserialize)]
struct OperatorTermRepr {
    word: OpWord,
    coeff: LaurentPoly,
}

impl Serialize for Operator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorRepr {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| OperatorTermRepr { word: w.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = OperatorRepr::deserialize(d)?;
        let mut op = Operator::zero(repr.n);
        for t in repr.terms {
            for g in &t.word {
                g.validate(repr.n).map_err(D::Error::custom)?;
            }
            op.add_term(t.word, t.coeff);
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aqn::{monomials_up_to, Element};
    use crate::verify::op_eq_up_to_degree;

    #[test]
    fn word_validation() {
        assert!(Operator::word(2, vec![GenSymbol::X(3)]).is_err());
        assert!(Operator::word(2, vec![GenSymbol::D(0)]).is_err());
        assert!(Operator::word(2, vec![GenSymbol::Sigma(1, 2)]).is_err());
        assert!(Operator::word(2, vec![GenSymbol::Theta(MultiIndex::from([1, 0, 0]))]).is_err());
        assert!(Operator::word(2, vec![GenSymbol::Theta(MultiIndex::from([1, -3]))]).is_ok());
    }

    #[test]
    fn compose_examples() {
        let a = Operator::word(2, vec![GenSymbol::X(1), GenSymbol::D(2)]).unwrap();
        assert_eq!(Operator::identity(2).compose(&a).unwrap(), a);
        assert!(a.compose(&Operator::identity(3)).is_err());

        let s = Operator::generator(2, GenSymbol::Sigma(1, 1)).unwrap();
        let si = Operator::generator(2, GenSymbol::Sigma(1, -1)).unwrap();
        assert!(op_eq_up_to_degree(&s.compose(&si).unwrap(), &Operator::identity(2), 6).unwrap().holds());

        // ∂_1 x_1 − q x_1 ∂_1 = σ_1^{-1}
        let x1 = Operator::generator(2, GenSymbol::X(1)).unwrap();
        let d1 = Operator::generator(2, GenSymbol::D(1)).unwrap();
        let lhs = q_bracket(&d1, &x1, &LaurentPoly::q()).unwrap();
        assert!(op_eq_up_to_degree(&lhs, &si, 6).unwrap().holds());
    }

    #[test]
    fn compose_matches_sequential_apply() {
        let a = &Operator::word(2, vec![GenSymbol::X(2), GenSymbol::D(1)]).unwrap()
            + &Operator::term(2, vec![GenSymbol::Sigma(2, -1)], LaurentPoly::q()).unwrap();
        let b = &Operator::word(2, vec![GenSymbol::D(2), GenSymbol::Theta(MultiIndex::from([1, -1]))]).unwrap()
            + &Operator::identity(2);
        let ab = a.compose(&b).unwrap();
        for beta in monomials_up_to(2, 5) {
            let e = Element::monomial(beta);
            assert_eq!(ab.apply(&e).unwrap(), a.apply(&b.apply(&e).unwrap()).unwrap());
        }
    }

    #[test]
    fn q_bracket_trivial_cases() {
        let a = &Operator::word(2, vec![GenSymbol::X(1), GenSymbol::D(2)]).unwrap()
            + &Operator::generator(2, GenSymbol::Sigma(2, 1)).unwrap();
        let zero = Operator::zero(2);
        assert!(q_bracket(&a, &a, &LaurentPoly::one()).unwrap().is_zero());
        let br = q_bracket(&Operator::identity(2), &a, &LaurentPoly::one()).unwrap();
        assert!(op_eq_up_to_degree(&br, &zero, 5).unwrap().holds());
    }

    #[test]
    fn json_shape() {
        let op = Operator::word(2, vec![GenSymbol::X(1), GenSymbol::D(2), GenSymbol::Sigma(1, 1)]).unwrap();
        let s = serde_json::to_string(&op).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"terms":[{"word":[{"k":"X","i":1},{"k":"D","i":2},{"k":"S","i":1,"e":1}],"coeff":{"0":1}}]}"#
        );
        assert_eq!(serde_json::from_str::<Operator>(&s).unwrap(), op);
        let t = Operator::generator(2, GenSymbol::Theta(MultiIndex::from([1, 0]))).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains(r#"{"k":"T","mu":[1,0]}"#));
        assert!(serde_json::from_str::<Operator>(r#"{"n":1,"terms":[{"word":[{"k":"X","i":2}],"coeff":{"0":1}}]}"#)
            .is_err());
    }
}
