//! Exact arithmetic for the quantum Weyl algebra `W_q(2n)`, its action on
//! the quantum divided power algebra `A_q(n)`, and the realization of
//! `U_q(sl_{n+1})` inside it.
//!
//! Every identity is checked by letting both sides act on all basis
//! monomials `x^(β)` with `|β| ≤ D` and comparing the results exactly in
//! `Z[q, q^-1]`.

pub mod aqn;
mod display;
pub mod error;
pub mod exprparse;
pub mod qindex;
pub mod qring;
pub mod rootvec;
pub mod uqrealize;
pub mod verify;
pub mod weylops;

pub use aqn::{monomials_up_to, mul_monomial, Element};
pub use error::{Error, Result};
pub use exprparse::{parse_element, parse_operator};
pub use qindex::{star, theta, theta_exp, MultiIndex};
pub use qring::{q_binom, q_fact, q_int, LaurentPoly};
pub use rootvec::{root_op, BraidWord, FormalUq, RootOps};
pub use uqrealize::{build_realization, Generator, Realization};
pub use verify::{Counterexample, RelationResult, Status, VerificationReport};
pub use weylops::{apply_generator, normalize, GenSymbol, OpWord, Operator};
