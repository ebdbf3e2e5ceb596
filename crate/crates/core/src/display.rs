//! Text forms of elements and operators. Everything printed here parses
//! back to a structurally equal value.

use std::fmt;

use num_traits::Signed;

use crate::aqn::Element;
use crate::qring::LaurentPoly;
use crate::weylops::Operator;

/// Writes `Σ coeff · body` with `+`/`-` joins; an empty body stands for the
/// unit.
pub(crate) fn write_combination<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a LaurentPoly, String)>,
{
    let mut first = true;
    for (c, body) in terms {
        let (negative, coeff) = match c.as_monomial() {
            Some((k, _)) if k.is_negative() => (true, -c),
            _ => (false, c.clone()),
        };
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let coeff_text = if coeff.num_terms() > 1 { format!("({coeff})") } else { coeff.to_string() };
        match (body.is_empty(), coeff.is_one()) {
            (true, _) => f.write_str(&coeff_text)?,
            (false, true) => f.write_str(&body)?,
            (false, false) => write!(f, "{coeff_text} {body}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms().map(|(b, c)| (c, format!("x^{b}"))))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.terms().map(|(w, c)| {
                let body = w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
                (c, body)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qindex::MultiIndex;
    use crate::qring::q_int;
    use crate::weylops::GenSymbol::*;

    #[test]
    fn element_text() {
        let e = Element::term(MultiIndex::from([1, 2]), &q_int(2) * &q_int(2));
        assert_eq!(e.to_string(), "(q^2+2+q^-2) x^(1,2)");
        let e = Element::term(MultiIndex::from([1, 0]), LaurentPoly::constant(-1));
        assert_eq!(e.to_string(), "-x^(1,0)");
        let e = Element::term(MultiIndex::from([1, 1]), LaurentPoly::q_pow(3));
        assert_eq!(e.to_string(), "q^3 x^(1,1)");
        assert_eq!(Element::zero(2).to_string(), "0");
    }

    #[test]
    fn operator_text() {
        let op = &Operator::term(1, vec![X(1), D(1)], LaurentPoly::q()).unwrap()
            + &Operator::word(1, vec![Sigma(1, -1)]).unwrap();
        assert_eq!(op.to_string(), "q x1 d1 + s1^-1");
        let t = Operator::term(2, vec![Theta(MultiIndex::from([1, -1]))], LaurentPoly::constant(-2)).unwrap();
        assert_eq!(t.to_string(), "-2 t(1,-1)");
        assert_eq!(Operator::identity(2).to_string(), "1");
    }
}
