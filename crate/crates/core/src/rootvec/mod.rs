//! Root-vector operators `e_{ij}` for `1 ≤ i ≠ j ≤ n+1`, the Lusztig
//! symmetries on formal `U_q(sl_{n+1})` expressions, and the checks that tie
//! the two together.

mod checks;
mod formal;

use std::collections::BTreeMap;

use crate::aqn::Element;
use crate::error::{Error, Result};
use crate::qindex::MultiIndex;
use crate::qring::{q_int, LaurentPoly};
use crate::uqrealize::{lowering_from_top, raising_to_top, weight_sum};
use crate::weylops::{GenSymbol, Operator};

pub use checks::{
    braid_relation_check, braid_relation_check_with, lemma34_check, lemma34_check_with, prop32_check,
    prop32_check_with, root_closed_form_check, theorem33_check, theorem33_check_with,
};
pub use formal::{
    braid_root_vector, default_reduced_word, evaluate, lusztig_t, positive_root_pair, root_of_prefix, BraidWord,
    FormalUq, RootSign, UqSymbol, UqWord,
};

fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    if i == j || i == 0 || j == 0 || i > n + 1 || j > n + 1 {
        return Err(Error::InvalidIndex(format!("root vector ({i},{j}) needs 1 ≤ i ≠ j ≤ {}", n + 1)));
    }
    Ok(())
}

/// The operator `e_{ij}` of `W_q(2n)`.
pub fn root_op(i: usize, j: usize, n: usize) -> Result<Operator> {
    check_pair(i, j, n)?;
    use GenSymbol::{Sigma, D, X};
    let top = n + 1;
    Ok(if j == top {
        raising_to_top(n, i, (1..=n).filter(move |&t| t != i))
    } else if i == top {
        lowering_from_top(n, j, (1..=n).filter(|&t| t != j))
    } else if i < j {
        Operator::word(n, vec![X(i), D(j), Sigma(i, 1)])?
    } else {
        Operator::word(n, vec![Sigma(j, -1), X(i), D(j)])?
    })
}

/// The action of `e_{ij}` on `x^(β)` from its closed form; `n` is the rank
/// of `β`.
pub fn closed_form_root_action(i: usize, j: usize, beta: &MultiIndex) -> Result<Element> {
    let n = beta.rank();
    check_pair(i, j, n)?;
    if !beta.is_nonnegative() {
        return Err(Error::InvalidArgs(format!("x^{beta} is not a basis monomial")));
    }
    let b = beta.entries();
    let sum = |range: std::ops::Range<usize>| -> i64 { range.map(|t| b[t - 1]).sum() };
    let top = n + 1;
    let (shifted, coeff) = if j == top {
        let s = i;
        let c = &(&LaurentPoly::q_pow(-sum(s + 1..top)) * &q_int(b[s - 1] + 1)) * &weight_sum(beta);
        (beta.shifted(s, 1), c)
    } else if i == top {
        let s = j;
        (beta.shifted(s, -1), LaurentPoly::monomial(-1, sum(s + 1..top)))
    } else if i < j {
        let c = &LaurentPoly::q_pow(-sum(i + 1..j)) * &q_int(b[i - 1] + 1);
        (beta.shifted(i, 1).shifted(j, -1), c)
    } else {
        let c = &LaurentPoly::q_pow(sum(j + 1..i)) * &q_int(b[i - 1] + 1);
        (beta.shifted(j, -1).shifted(i, 1), c)
    };
    Ok(if shifted.is_nonnegative() && !coeff.is_zero() { Element::term(shifted, coeff) } else { Element::zero(n) })
}

/// The table of all `e_{ij}`, `1 ≤ i ≠ j ≤ n+1`.
#[derive(Clone, Debug)]
pub struct RootOps {
    pub n: usize,
    pub ops: BTreeMap<(usize, usize), Operator>,
}

impl RootOps {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgs("n must be ≥ 1".into()));
        }
        let mut ops = BTreeMap::new();
        for i in 1..=n + 1 {
            for j in 1..=n + 1 {
                if i != j {
                    ops.insert((i, j), root_op(i, j, n)?);
                }
            }
        }
        Ok(Self { n, ops })
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&Operator> {
        check_pair(i, j, self.n)?;
        Ok(&self.ops[&(i, j)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqrealize::build_realization;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn simple_roots_are_chevalley_generators() {
        for n in 1..=3 {
            let r = build_realization(n).unwrap();
            for i in 1..=n {
                assert_eq!(root_op(i, i + 1, n).unwrap(), r.e[i - 1]);
                assert_eq!(root_op(i + 1, i, n).unwrap(), r.f[i - 1]);
            }
        }
    }

    #[test]
    fn lowering_example() {
        let out = root_op(3, 1, 2).unwrap().apply(&Element::monomial(mi(&[1, 1]))).unwrap();
        assert_eq!(out, Element::term(mi(&[0, 1]), LaurentPoly::monomial(-1, 1)));
    }

    #[test]
    fn closed_form_examples() {
        assert!(closed_form_root_action(1, 3, &mi(&[0, 2, 0])).unwrap().is_zero());
        assert_eq!(
            closed_form_root_action(1, 3, &mi(&[1, 1, 1])).unwrap(),
            Element::term(mi(&[2, 1, 0]), &LaurentPoly::q_pow(-1) * &q_int(2))
        );
        assert!(closed_form_root_action(1, 3, &mi(&[0, 0])).unwrap().is_zero());
    }

    #[test]
    fn invalid_pairs() {
        assert!(root_op(2, 2, 2).is_err());
        assert!(root_op(1, 4, 2).is_err());
        assert!(root_op(0, 1, 2).is_err());
        assert!(closed_form_root_action(3, 3, &mi(&[0, 0])).is_err());
    }
}
