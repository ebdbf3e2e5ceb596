//! Exact arithmetic in the Laurent polynomial ring `Z[q, q^-1]` and the
//! q-integers, q-factorials and Gaussian binomials built on it.
//!
//! A [`LaurentPoly`] is stored as a sparse map from exponent to nonzero
//! coefficient. The ring has a unique canonical form under that invariant,
//! so derived structural equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The generator `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, collecting
    /// repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// If `self = c q^k` returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
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

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// The involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Specialization at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / den`.
    ///
    /// Fails with [`Error::NotDivisible`] when `den` does not divide `self`
    /// in `Z[q, q^-1]`, and with [`Error::InvalidArgs`] when `den` is zero.
    pub fn exact_div(&self, den: &LaurentPoly) -> Result<LaurentPoly> {
        let (den_hi, den_lc) = match den.terms.iter().next_back() {
            Some((e, c)) => (*e, c),
            None => return Err(Error::InvalidArgs("division by zero".into())),
        };
        let den_span = den_hi - den.min_exp().unwrap_or(den_hi);
        let not_divisible = || Error::NotDivisible { num: self.to_string(), den: den.to_string() };

        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let (Some(lo), Some((&hi, c))) = (rem.min_exp(), rem.terms.iter().next_back()) {
            if hi - lo < den_span {
                return Err(not_divisible());
            }
            let (qc, r) = c.div_rem(den_lc);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let shift = hi - den_hi;
            for (e, dc) in den.terms() {
                rem.add_term(e + shift, -(&qc * dc));
            }
            quot.add_term(shift, qc);
        }
        Ok(quot)
    }
}

/// The balanced q-integer `[m] = (q^m - q^-m) / (q - q^-1)`.
///
/// For `m >= 0` this is `q^{m-1} + q^{m-3} + ... + q^{1-m}`; `[-m] = -[m]`.
pub fn q_int(m: i64) -> LaurentPoly {
    let sign: BigInt = if m < 0 { -BigInt::one() } else { BigInt::one() };
    let m = m.abs();
    LaurentPoly::from_terms((0..m).map(|k| (m - 1 - 2 * k, sign.clone())))
}

/// `[m]! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn q_fact(m: u32) -> LaurentPoly {
    (1..=m as i64).fold(LaurentPoly::one(), |acc, k| &acc * &q_int(k))
}

/// The Gaussian binomial `[a over b]`, computed by the Pascal recurrence
/// `[a over b] = q^b [a-1 over b] + q^{b-a} [a-1 over b-1]`.
pub fn q_binom(a: u32, b: u32) -> Result<LaurentPoly> {
    if b > a {
        return Err(Error::InvalidArgs(format!("q_binom requires b <= a, got a={a}, b={b}")));
    }
    let b = b.min(a - b) as usize;
    // row[k] holds [r over k] for the current r.
    let mut row = vec![LaurentPoly::one()];
    for r in 1..=a as i64 {
        let mut next = Vec::with_capacity(row.len() + 1);
        let width = (r as usize).min(b) + 1;
        for k in 0..width {
            let ki = k as i64;
            let mut v = LaurentPoly::zero();
            if let Some(prev) = row.get(k) {
                v += prev.shift(ki);
            }
            if k > 0 {
                v += row[k - 1].shift(ki - r);
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(b))
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c);
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

/// Prints in descending exponent order with no spaces, e.g. `q^2+2+q^-2`.
/// The output is valid input for the expression parser.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, false) => write!(f, "{mag}")?,
                _ => {}
            }
            match e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

// JSON form: {"2":1,"0":2,"-2":1}. Coefficients outside the i64 range are
// written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms().rev() {
            let key = e.to_string();
            match c.to_i64() {
                Some(small) => map.serialize_entry(&key, &small)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((key, coeff)) = access.next_entry::<String, CoeffRepr>()? {
                    let exp: i64 = key.parse().map_err(|_| de::Error::custom(format!("bad exponent key {key:?}")))?;
                    let c = match coeff {
                        CoeffRepr::Int(c) => BigInt::from(c),
                        CoeffRepr::Str(s) => {
                            s.parse().map_err(|_| de::Error::custom(format!("bad coefficient {s:?}")))?
                        }
                    };
                    if c.is_zero() {
                        return Err(de::Error::custom("zero coefficients are not serialized"));
                    }
                    if p.terms.contains_key(&exp) {
                        return Err(de::Error::custom(format!("duplicate exponent {exp}")));
                    }
                    p.terms.insert(exp, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn add_examples() {
        assert_eq!(LaurentPoly::q() + LaurentPoly::q_pow(-1), lp(&[(1, 1), (-1, 1)]));
        let p = lp(&[(3, 2), (-1, -5)]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        let a = lp(&[(1, 1), (-1, -1)]);
        let b = lp(&[(-1, 1), (1, -1)]);
        assert!((a + b).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert!((LaurentPoly::q() * LaurentPoly::q_pow(-1)).is_one());
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(a * b, lp(&[(2, 1), (-2, -1)]));
        assert!((lp(&[(4, 7)]) * LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn exact_div_examples() {
        let den = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(lp(&[(2, 1), (-2, -1)]).exact_div(&den).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert!(LaurentPoly::zero().exact_div(&den).unwrap().is_zero());
        assert!(matches!(lp(&[(1, 1), (0, 1)]).exact_div(&den), Err(Error::NotDivisible { .. })));
        assert!(matches!(den.exact_div(&LaurentPoly::zero()), Err(Error::InvalidArgs(_))));
    }

    #[test]
    fn exact_div_rejects_non_integral_quotient() {
        // 3q = (2q) * (3/2), not integral
        assert!(lp(&[(1, 3)]).exact_div(&lp(&[(0, 2)])).is_err());
        assert_eq!(lp(&[(5, 6), (2, -4)]).exact_div(&lp(&[(1, 2)])).unwrap(), lp(&[(4, 3), (1, -2)]));
    }

    #[test]
    fn q_int_examples() {
        assert!(q_int(0).is_zero());
        assert!(q_int(1).is_one());
        assert_eq!(q_int(3), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(q_int(-3), -q_int(3));
        let num = lp(&[(3, 1), (-3, -1)]);
        let den = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(num.exact_div(&den).unwrap(), q_int(3));
    }

    #[test]
    fn q_fact_examples() {
        assert!(q_fact(0).is_one());
        assert_eq!(q_fact(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(q_fact(3), lp(&[(1, 1), (-1, 1)]) * lp(&[(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn q_binom_examples() {
        for m in 0..6 {
            assert!(q_binom(m, 0).unwrap().is_one());
        }
        assert_eq!(q_binom(2, 1).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(q_binom(4, 2).unwrap(), lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
        assert!(matches!(q_binom(2, 3), Err(Error::InvalidArgs(_))));
    }

    #[test]
    fn eval_and_bar_examples() {
        assert_eq!(lp(&[(1, 1), (-1, 1)]).eval_at_one(), BigInt::from(2));
        for m in 0..10 {
            assert_eq!(q_int(m).eval_at_one(), BigInt::from(m));
            assert_eq!(q_int(m).bar(), q_int(m));
        }
        assert_eq!(q_binom(4, 2).unwrap().eval_at_one(), BigInt::from(6));
        assert_eq!(LaurentPoly::q_pow(2).bar(), LaurentPoly::q_pow(-2));
    }

    #[test]
    fn display() {
        assert_eq!(lp(&[(2, 1), (0, 2), (-2, 1)]).to_string(), "q^2+2+q^-2");
        assert_eq!(lp(&[(1, -1), (-1, 3)]).to_string(), "-q+3q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::constant(-1).to_string(), "-1");
    }

    #[test]
    fn json_shape() {
        let p = lp(&[(2, 1), (0, 2), (-2, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"2":1,"0":2,"-2":1}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"1":0}"#).is_err());
        let big = q_fact(25);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }
}
