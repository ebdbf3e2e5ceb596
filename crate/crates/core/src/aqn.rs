//! The quantum divided power algebra `A_q(n)`: basis monomials `x^(β)`,
//! the twisted product `x^(α) x^(β) = q^{α∗β} [α+β over α] x^(α+β)`, and
//! degree-bounded enumeration of the monomial basis.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{check_rank, Error, Result};
use crate::qindex::{star_unchecked, MultiIndex};
use crate::qring::{q_binom, LaurentPoly};

/// A finite `Z[q, q^-1]`-linear combination of monomials `x^(β)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    n: usize,
    terms: BTreeMap<MultiIndex, LaurentPoly>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// The unit `x^(0)`.
    pub fn one(n: usize) -> Self {
        Self::monomial(MultiIndex::zero(n))
    }

    /// `x^(β)`. Panics if `β` has a negative entry.
    pub fn monomial(beta: MultiIndex) -> Self {
        Self::term(beta, LaurentPoly::one())
    }

    /// `c · x^(β)`. Panics if `β` has a negative entry.
    pub fn term(beta: MultiIndex, coeff: LaurentPoly) -> Self {
        assert!(beta.is_nonnegative(), "monomial exponent {beta} has a negative entry");
        let mut e = Self::zero(beta.rank());
        e.add_term(beta, coeff);
        e
    }

    /// Validating constructor for untrusted input.
    pub fn try_term(n: usize, beta: MultiIndex, coeff: LaurentPoly) -> Result<Self> {
        check_rank(n, beta.rank())?;
        if !beta.is_nonnegative() {
            return Err(Error::InvalidArgs(format!("monomial exponent {beta} has a negative entry")));
        }
        Ok(Self::term(beta, coeff))
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

    /// Terms in lexicographic order of the exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, beta: &MultiIndex) -> LaurentPoly {
        self.terms.get(beta).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, beta: MultiIndex, coeff: LaurentPoly) {
        debug_assert_eq!(beta.rank(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(beta) {
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
        if c.is_zero() {
            return out;
        }
        for (b, p) in &self.terms {
            out.add_term(b.clone(), p * c);
        }
        out
    }

    /// Applies `f` to every coefficient (e.g. `bar` or specialization).
    pub fn map_coeffs(&self, mut f: impl FnMut(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (b, p) in &self.terms {
            out.add_term(b.clone(), f(p));
        }
        out
    }

    pub fn checked_add(&self, other: &Element) -> Result<Self> {
        check_rank(self.n, other.n)?;
        let mut out = self.clone();
        out += other;
        Ok(out)
    }

    /// Product in `A_q(n)`, the bilinear extension of [`mul_monomial`].
    pub fn mul(&self, other: &Element) -> Result<Element> {
        check_rank(self.n, other.n)?;
        let mut out = Element::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = &monomial_product_coeff(a, b) * &(ca * cb);
                out.add_term(a + b, c);
            }
        }
        Ok(out)
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert_eq!(self.n, rhs.n, "rank mismatch in Element addition");
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        assert_eq!(self.n, rhs.n, "rank mismatch in Element subtraction");
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), -c);
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map_coeffs(|c| -c)
    }
}

/// The structure constant `q^{α∗β} Π_i [α_i+β_i over α_i]`.
pub(crate) fn monomial_product_coeff(alpha: &MultiIndex, beta: &MultiIndex) -> LaurentPoly {
    let mut c = LaurentPoly::q_pow(star_unchecked(alpha.entries(), beta.entries()));
    for (&a, &b) in alpha.entries().iter().zip(beta.entries()) {
        if a > 0 && b > 0 {
            c = &c * &q_binom((a + b) as u32, a as u32).expect("a <= a + b");
        }
    }
    c
}

/// `x^(α) x^(β) = q^{α∗β} [α+β over α] x^(α+β)`.
pub fn mul_monomial(alpha: &MultiIndex, beta: &MultiIndex) -> Result<Element> {
    check_rank(alpha.rank(), beta.rank())?;
    if !alpha.is_nonnegative() || !beta.is_nonnegative() {
        return Err(Error::InvalidArgs("monomial exponents must be nonnegative".into()));
    }
    Ok(Element::term(alpha + beta, monomial_product_coeff(alpha, beta)))
}

/// All `β ∈ Z₊ⁿ` with `|β| ≤ degree`, in lexicographic order.
pub fn monomials_up_to(n: usize, degree: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == n {
            out.push(MultiIndex::new(prefix.clone()));
            return;
        }
        for b in 0..=left {
            prefix.push(b);
            rec(n, left - b, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, degree as i64, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    terms: Vec<ElementTermRepr>,
}

#[derive(Serialize, Deserialize)]
struct ElementTermRepr {
    beta: MultiIndex,
    coeff: LaurentPoly,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.n,
            terms: self.terms.iter().map(|(b, c)| ElementTermRepr { beta: b.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(d)?;
        let mut e = Element::zero(repr.n);
        for t in repr.terms {
            if t.beta.rank() != repr.n || !t.beta.is_nonnegative() {
                return Err(D::Error::custom(format!("invalid monomial {} for rank {}", t.beta, repr.n)));
            }
            e.add_term(t.beta, t.coeff);
        }
        Ok(e)
    }
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Element[n={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::q_int;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn mul_monomial_examples() {
        assert_eq!(mul_monomial(&mi(&[1, 0]), &mi(&[0, 1])).unwrap(), Element::monomial(mi(&[1, 1])));
        assert_eq!(mul_monomial(&mi(&[0, 1]), &mi(&[1, 0])).unwrap(), Element::term(mi(&[1, 1]), LaurentPoly::q()));
        let beta = mi(&[2, 0, 3]);
        assert_eq!(mul_monomial(&MultiIndex::zero(3), &beta).unwrap(), Element::monomial(beta));
        assert!(mul_monomial(&mi(&[1]), &mi(&[1, 0])).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = &Element::monomial(mi(&[1, 0])) + &Element::monomial(mi(&[0, 1]));
        assert_eq!(a.mul(&Element::one(2)).unwrap(), a);
        let prod = a.mul(&Element::monomial(mi(&[1, 0]))).unwrap();
        let expected = &Element::term(mi(&[2, 0]), q_int(2)) + &Element::term(mi(&[1, 1]), LaurentPoly::q());
        assert_eq!(prod, expected);
        assert!(Element::zero(2).mul(&a).unwrap().is_zero());
        assert!(a.mul(&Element::one(3)).is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(monomials_up_to(1, 2), vec![mi(&[0]), mi(&[1]), mi(&[2])]);
        assert_eq!(monomials_up_to(2, 1), vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0])]);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        let all = monomials_up_to(3, 6);
        assert_eq!(all.len(), 84);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn json_shape() {
        let e = Element::term(mi(&[1, 1]), LaurentPoly::q());
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"n":2,"terms":[{"beta":[1,1],"coeff":{"1":1}}]}"#);
        assert_eq!(serde_json::from_str::<Element>(&s).unwrap(), e);
        assert!(serde_json::from_str::<Element>(r#"{"n":2,"terms":[{"beta":[1],"coeff":{"0":1}}]}"#).is_err());
    }
}
