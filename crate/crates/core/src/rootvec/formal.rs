use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::display::write_combination;
use crate::error::{check_rank, Error, Result};
use crate::qring::LaurentPoly;
use crate::uqrealize::{CartanMatrix, Realization};
use crate::weylops::Operator;

/// An abstract generator of `U_q(sl_{n+1})`. `K(v)` is `Π K_i^{v_i}` with
/// `v` in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "k")]
pub enum UqSymbol {
    E { i: usize },
    F { i: usize },
    K { v: Vec<i64> },
}

impl fmt::Display for UqSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UqSymbol::E { i } => write!(f, "E{i}"),
            UqSymbol::F { i } => write!(f, "F{i}"),
            UqSymbol::K { v } => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "K({})", parts.join(","))
            }
        }
    }
}

impl fmt::Debug for UqSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type UqWord = Vec<UqSymbol>;

/// Adjacent `K` factors merge and `K(0)` disappears.
fn canonical_word(word: UqWord) -> UqWord {
    let mut out: UqWord = Vec::with_capacity(word.len());
    for s in word {
        match (out.last_mut(), s) {
            (Some(UqSymbol::K { v: acc }), UqSymbol::K { v }) => {
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += b;
                }
                if acc.iter().all(|&x| x == 0) {
                    out.pop();
                }
            }
            (_, UqSymbol::K { v }) if v.iter().all(|&x| x == 0) => {}
            (_, s) => out.push(s),
        }
    }
    out
}

/// A Laurent-coefficient combination of words in `E_i, F_i, K(v)`, with no
/// relations imposed beyond merging adjacent `K` factors.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalUq {
    n: usize,
    terms: BTreeMap<UqWord, LaurentPoly>,
}

impl FormalUq {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::term(n, Vec::new(), LaurentPoly::one()).expect("empty word")
    }

    pub fn term(n: usize, word: UqWord, coeff: LaurentPoly) -> Result<Self> {
        for s in &word {
            validate_symbol(s, n)?;
        }
        let mut out = Self::zero(n);
        out.add_term(word, coeff);
        Ok(out)
    }

    pub fn e(n: usize, i: usize) -> Result<Self> {
        Self::term(n, vec![UqSymbol::E { i }], LaurentPoly::one())
    }

    pub fn f(n: usize, i: usize) -> Result<Self> {
        Self::term(n, vec![UqSymbol::F { i }], LaurentPoly::one())
    }

    pub fn k(n: usize, v: Vec<i64>) -> Result<Self> {
        Self::term(n, vec![UqSymbol::K { v }], LaurentPoly::one())
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UqWord, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    fn add_term(&mut self, word: UqWord, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let word = canonical_word(word);
        let slot = self.terms.entry(word.clone()).or_insert_with(LaurentPoly::zero);
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    pub fn checked_mul(&self, other: &FormalUq) -> Result<Self> {
        check_rank(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                out.add_term(w, c * d);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &FormalUq) -> Result<Self> {
        check_rank(self.n, other.n)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }
}

fn validate_symbol(s: &UqSymbol, n: usize) -> Result<()> {
    match s {
        UqSymbol::E { i } | UqSymbol::F { i } if *i == 0 || *i > n => {
            Err(Error::InvalidIndex(format!("{s} is out of range for rank {n}")))
        }
        UqSymbol::K { v } if v.len() != n => Err(Error::RankMismatch { expected: n, found: v.len() }),
        _ => Ok(()),
    }
}

impl Add for &FormalUq {
    type Output = FormalUq;
    fn add(self, rhs: &FormalUq) -> FormalUq {
        self.checked_add(rhs).expect("rank mismatch in FormalUq addition")
    }
}

impl Neg for &FormalUq {
    type Output = FormalUq;
    fn neg(self) -> FormalUq {
        self.scale(&LaurentPoly::constant(-1))
    }
}

impl Sub for &FormalUq {
    type Output = FormalUq;
    fn sub(self, rhs: &FormalUq) -> FormalUq {
        self + &(-rhs)
    }
}

impl Mul for &FormalUq {
    type Output = FormalUq;
    fn mul(self, rhs: &FormalUq) -> FormalUq {
        self.checked_mul(rhs).expect("rank mismatch in FormalUq product")
    }
}

impl fmt::Display for FormalUq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.terms.iter().map(|(w, c)| (c, w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "))),
        )
    }
}

impl fmt::Debug for FormalUq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalUq[n={}]({self})", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct FormalRepr {
    n: usize,
    terms: Vec<FormalTermRepr>,
}

#[derive(Serialize, Deserialize)]
struct FormalTermRepr {
    word: UqWord,
    coeff: LaurentPoly,
}

impl Serialize for FormalUq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormalRepr {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| FormalTermRepr { word: w.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalUq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FormalRepr::deserialize(d)?;
        let mut out = FormalUq::zero(repr.n);
        for t in repr.terms {
            for s in &t.word {
                validate_symbol(s, repr.n).map_err(D::Error::custom)?;
            }
            out.add_term(t.word, t.coeff);
        }
        Ok(out)
    }
}

/// `s_i(v) = v - (Σ_j a_ij v_j) ε_i` in simple-root coordinates.
fn reflect(cartan: &CartanMatrix, i: usize, v: &[i64]) -> Vec<i64> {
    let pairing: i64 = cartan.rows()[i - 1].iter().zip(v).map(|(a, x)| a * x).sum();
    let mut out = v.to_vec();
    out[i - 1] -= pairing;
    out
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i - 1] = 1;
    v
}

/// Image of one symbol under `T_i`:
///
/// ```text
/// E_i -> -F_i K_i^{-1}                F_i -> -K_i E_i
/// E_j -> E_i E_j - q E_j E_i          F_j -> F_j F_i - q^{-1} F_i F_j   (|i-j| = 1)
/// E_j -> E_j,  F_j -> F_j                                                (|i-j| > 1)
/// K(v) -> K(s_i v)
/// ```
fn t_symbol(cartan: &CartanMatrix, i: usize, s: &UqSymbol) -> FormalUq {
    let n = cartan.size();
    let q = LaurentPoly::q();
    let qi = LaurentPoly::q_pow(-1);
    let w = |word: UqWord, c: LaurentPoly| FormalUq::term(n, word, c).expect("valid symbols");
    let e = |k| UqSymbol::E { i: k };
    let f = |k| UqSymbol::F { i: k };
    let minus = LaurentPoly::constant(-1);
    match *s {
        UqSymbol::E { i: j } if j == i => {
            let mut kinv = unit(n, i);
            kinv[i - 1] = -1;
            w(vec![f(i), UqSymbol::K { v: kinv }], minus)
        }
        UqSymbol::F { i: j } if j == i => w(vec![UqSymbol::K { v: unit(n, i) }, e(i)], minus),
        UqSymbol::E { i: j } if i.abs_diff(j) == 1 => {
            &w(vec![e(i), e(j)], LaurentPoly::one()) - &w(vec![e(j), e(i)], q)
        }
        UqSymbol::F { i: j } if i.abs_diff(j) == 1 => {
            &w(vec![f(j), f(i)], LaurentPoly::one()) - &w(vec![f(i), f(j)], qi)
        }
        UqSymbol::K { ref v } => w(vec![UqSymbol::K { v: reflect(cartan, i, v) }], LaurentPoly::one()),
        ref other => w(vec![other.clone()], LaurentPoly::one()),
    }
}

/// The Lusztig symmetry `T_i` applied to a formal expression: every symbol
/// is substituted and the products are expanded.
pub fn lusztig_t(i: usize, expr: &FormalUq) -> Result<FormalUq> {
    let n = expr.rank();
    if i == 0 || i > n {
        return Err(Error::InvalidIndex(format!("T_{i} is out of range for rank {n}")));
    }
    let cartan = CartanMatrix::type_a(n);
    let mut cache: BTreeMap<&UqSymbol, FormalUq> = BTreeMap::new();
    let mut out = FormalUq::zero(n);
    for (word, c) in expr.terms() {
        let mut acc = FormalUq::term(n, Vec::new(), c.clone())?;
        for s in word {
            let img = cache.entry(s).or_insert_with(|| t_symbol(&cartan, i, s));
            acc = &acc * img;
        }
        out = &out + &acc;
    }
    Ok(out)
}

/// Substitutes the realized operators for the abstract generators.
pub fn evaluate(expr: &FormalUq, r: &Realization) -> Result<Operator> {
    check_rank(r.n, expr.rank())?;
    let n = r.n;
    let symbol = |s: &UqSymbol| -> Operator {
        match s {
            UqSymbol::E { i } => r.e[i - 1].clone(),
            UqSymbol::F { i } => r.f[i - 1].clone(),
            UqSymbol::K { v } => {
                let mut op = Operator::identity(n);
                for (idx, &p) in v.iter().enumerate() {
                    let base = if p >= 0 { &r.k[idx] } else { &r.k_inv[idx] };
                    op = op.compose(&base.pow(p.unsigned_abs() as u32)).expect("same rank");
                }
                op
            }
        }
    };
    let mut out = Operator::zero(n);
    for (word, c) in expr.terms() {
        let mut acc = Operator::scalar(n, c.clone());
        for s in word {
            acc = acc.compose(&symbol(s))?;
        }
        out = out.checked_add(&acc)?;
    }
    Ok(out)
}

/// A word `i_1 … i_m` in the simple reflections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BraidWord(Vec<usize>);

impl BraidWord {
    /// A braid word for rank `n`; every index must lie in `1..=n`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidIndex(format!("reflection s_{bad} is out of range for rank {n}")));
        }
        Ok(Self(indices))
    }

    /// A reduced word for the longest element `w_0` of rank `n`: it has
    /// length `n(n+1)/2` and its prefixes produce every positive root once.
    pub fn longest(indices: Vec<usize>, n: usize) -> Result<Self> {
        let w = Self::new(indices, n)?;
        let expected = n * (n + 1) / 2;
        if w.len() != expected {
            return Err(Error::InvalidArgs(format!(
                "the braid word {w} has length {}, but reduced words of w_0 have length {expected}",
                w.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in 1..=w.len() {
            let root = root_of_prefix(n, p, &w)?;
            if positive_root_pair(&root).is_none_or(|pair| !seen.insert(pair)) {
                return Err(Error::InvalidArgs(format!("the braid word {w} is not reduced")));
            }
        }
        Ok(w)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses `"1,2,1"`; the indices are checked later against a rank.
    fn from_str(s: &str) -> Result<Self> {
        let indices = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgs(format!("bad reflection index {t:?} in braid word")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(indices))
    }
}

/// The reduced word `s_1 · s_2 s_1 · s_3 s_2 s_1 ⋯ s_n ⋯ s_1` of the longest
/// element of the Weyl group of `sl_{n+1}`.
pub fn default_reduced_word(n: usize) -> BraidWord {
    BraidWord((1..=n).flat_map(|k| (1..=k).rev()).collect())
}

/// `s_{i_1} ⋯ s_{i_{p-1}}(α_{i_p})` in simple-root coordinates.
pub fn root_of_prefix(n: usize, p: usize, w: &BraidWord) -> Result<Vec<i64>> {
    check_prefix(n, p, w)?;
    let cartan = CartanMatrix::type_a(n);
    let idx = w.indices();
    let mut v = unit(n, idx[p - 1]);
    for &i in idx[..p - 1].iter().rev() {
        v = reflect(&cartan, i, &v);
    }
    Ok(v)
}

/// The pair `(a, b)` with `α_a + ⋯ + α_{b-1} = v`, if `v` is a positive
/// root of type `A`.
pub fn positive_root_pair(v: &[i64]) -> Option<(usize, usize)> {
    let first = v.iter().position(|&x| x != 0)?;
    let last = v.iter().rposition(|&x| x != 0)?;
    let contiguous = v.iter().enumerate().all(|(k, &x)| x == i64::from(first <= k && k <= last));
    contiguous.then_some((first + 1, last + 2))
}

fn check_prefix(n: usize, p: usize, w: &BraidWord) -> Result<()> {
    BraidWord::new(w.0.clone(), n)?;
    if p == 0 || p > w.len() {
        return Err(Error::InvalidIndex(format!("prefix length {p} is out of range 1..={}", w.len())));
    }
    Ok(())
}

/// Which family of root vectors to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    Positive,
    Negative,
}

/// `T_{i_1} ⋯ T_{i_{p-1}}(E_{i_p})` or the same applied to `F_{i_p}`.
pub fn braid_root_vector(n: usize, p: usize, w: &BraidWord, sign: RootSign) -> Result<FormalUq> {
    check_prefix(n, p, w)?;
    let idx = w.indices();
    let mut expr = match sign {
        RootSign::Positive => FormalUq::e(n, idx[p - 1])?,
        RootSign::Negative => FormalUq::f(n, idx[p - 1])?,
    };
    for &i in idx[..p - 1].iter().rev() {
        expr = lusztig_t(i, &expr)?;
    }
    Ok(expr)
}
