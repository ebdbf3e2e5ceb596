use crate::aqn::Element;
use crate::error::{check_rank, Result};
use crate::qindex::{theta_exp_unchecked, MultiIndex};
use crate::qring::{q_int, LaurentPoly};

use super::{GenSymbol, Operator};

/// Scalar `q^exp Π [m_k]` accumulated while a word runs over a monomial.
struct MonomialScalar {
    exp: i64,
    q_ints: Vec<i64>,
}

impl MonomialScalar {
    fn into_poly(self) -> LaurentPoly {
        let mut c = LaurentPoly::q_pow(self.exp);
        for m in self.q_ints {
            if m != 1 {
                c = &c * &q_int(m);
            }
        }
        c
    }
}

/// One generator on `x^(β)`, in place. Returns `false` when the result is 0.
fn step(g: &GenSymbol, beta: &mut [i64], acc: &mut MonomialScalar) -> bool {
    match g {
        GenSymbol::X(i) => {
            let below: i64 = beta[..i - 1].iter().sum();
            acc.exp += below;
            acc.q_ints.push(beta[i - 1] + 1);
            beta[i - 1] += 1;
        }
        GenSymbol::D(i) => {
            if beta[i - 1] == 0 {
                return false;
            }
            let below: i64 = beta[..i - 1].iter().sum();
            acc.exp -= below;
            beta[i - 1] -= 1;
        }
        GenSymbol::Sigma(i, e) => acc.exp += e * beta[i - 1],
        GenSymbol::Theta(mu) => acc.exp += theta_exp_unchecked(mu.entries(), beta),
    }
    true
}

/// Runs a word (rightmost symbol first) over `x^(β)`. Every generator maps
/// a monomial to a scalar multiple of a monomial, so the result is a single
/// term or `None` for zero.
pub fn apply_word_monomial(word: &[GenSymbol], beta: &MultiIndex) -> Option<(MultiIndex, LaurentPoly)> {
    let mut b = beta.entries().to_vec();
    let mut acc = MonomialScalar { exp: 0, q_ints: Vec::new() };
    for g in word.iter().rev() {
        if !step(g, &mut b, &mut acc) {
            return None;
        }
    }
    Some((MultiIndex::new(b), acc.into_poly()))
}

/// The action of a single generator, extended linearly:
///
/// - `X(i)`: `x^(β) ↦ q^{ε_i∗β} [β_i+1] x^(β+ε_i)`
/// - `D(i)`: `x^(β) ↦ q^{−ε_i∗β} x^(β−ε_i)`, zero when `β_i = 0`
/// - `Sigma(i, e)`: `x^(β) ↦ q^{e β_i} x^(β)`
/// - `Theta(μ)`: `x^(β) ↦ θ(μ, β) x^(β)`
pub fn apply_generator(g: &GenSymbol, e: &Element) -> Result<Element> {
    g.validate(e.rank())?;
    let mut out = Element::zero(e.rank());
    for (beta, c) in e.terms() {
        if let Some((b, k)) = apply_word_monomial(std::slice::from_ref(g), beta) {
            out.add_term(b, &k * c);
        }
    }
    Ok(out)
}

pub(crate) fn apply_monomial(op: &Operator, beta: &MultiIndex) -> Element {
    let mut out = Element::zero(op.rank());
    for (word, c) in op.terms() {
        if let Some((b, k)) = apply_word_monomial(word, beta) {
            out.add_term(b, &k * c);
        }
    }
    out
}

pub(crate) fn apply(op: &Operator, e: &Element) -> Result<Element> {
    check_rank(op.rank(), e.rank())?;
    let mut out = Element::zero(op.rank());
    for (beta, c) in e.terms() {
        out += &apply_monomial(op, beta).scale(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aqn::{monomials_up_to, mul_monomial};

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn generator_examples() {
        let d2 = apply_generator(&GenSymbol::D(2), &Element::monomial(mi(&[2, 1]))).unwrap();
        assert_eq!(d2, Element::term(mi(&[2, 0]), LaurentPoly::q_pow(-2)));

        let zero = apply_generator(&GenSymbol::D(1), &Element::monomial(mi(&[0, 3]))).unwrap();
        assert!(zero.is_zero());

        let x2 = apply_generator(&GenSymbol::X(2), &Element::monomial(mi(&[1, 1]))).unwrap();
        assert_eq!(x2, Element::term(mi(&[1, 2]), &LaurentPoly::q() * &q_int(2)));

        assert!(apply_generator(&GenSymbol::X(3), &Element::one(2)).is_err());
    }

    #[test]
    fn x_acts_as_left_multiplication() {
        for beta in monomials_up_to(3, 4) {
            for i in 1..=3 {
                let lhs = apply_generator(&GenSymbol::X(i), &Element::monomial(beta.clone())).unwrap();
                let rhs = mul_monomial(&MultiIndex::unit(3, i).unwrap(), &beta).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn e1_word_example() {
        let e1 = Operator::word(2, vec![GenSymbol::X(1), GenSymbol::D(2), GenSymbol::Sigma(1, 1)]).unwrap();
        let out = e1.apply(&Element::monomial(mi(&[1, 1]))).unwrap();
        assert_eq!(out, Element::term(mi(&[2, 0]), q_int(2)));
        assert_eq!(Operator::identity(2).apply(&out).unwrap(), out);
        assert!(Operator::zero(2).apply(&out).unwrap().is_zero());
    }
}
