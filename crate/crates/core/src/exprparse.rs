//! Text syntax for operators and elements.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom | '(' expr ')' | '[' expr ',' expr ']' qtag?
//! qtag   := '_q' | '_{q^-1}'
//! atom   := x<i> | d<i> | s<i> ['^-1'] | t(ints) | e<i> | f<i> | K<i> ['^-1']
//!         | E(i,j) | q ['^' int] | int | x^(ints)
//! ```
//!
//! Juxtaposition is composition of operators or multiplication in `A_q(n)`.
//! Operator atoms (`x1`, `d2`, `e1`, `E(1,3)`, …) and element atoms
//! (`x^(…)`) cannot appear in the same expression; `q` and integers are
//! scalars and fit either.

use num_bigint::BigInt;

use crate::aqn::Element;
use crate::error::{check_rank, Error, Result};
use crate::qindex::MultiIndex;
use crate::qring::LaurentPoly;
use crate::rootvec::root_op;
use crate::uqrealize::{build_realization, Generator, Realization};
use crate::weylops::{GenSymbol, Operator};

const MAX_DEPTH: usize = 200;

/// A leaf of the expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    X(usize),
    D(usize),
    Sigma(usize, i64),
    Theta(Vec<i64>),
    E(usize),
    F(usize),
    K(usize, i64),
    Root(usize, usize),
    Q(i64),
    Int(BigInt),
    Monomial(Vec<i64>),
}

impl Atom {
    fn is_element_atom(&self) -> bool {
        matches!(self, Atom::Monomial(_))
    }

    fn is_scalar(&self) -> bool {
        matches!(self, Atom::Q(_) | Atom::Int(_))
    }
}

/// Parsed expression tree; every node remembers its byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Atom {
        offset: usize,
        atom: Atom,
    },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Product(Vec<Ast>),
    /// `[a, b]_c = ab − c·ba` with `c` one of `1`, `q`, `q^-1`.
    Bracket {
        a: Box<Ast>,
        b: Box<Ast>,
        q_exp: Option<i64>,
    },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

fn syntax(offset: usize, expected: &[&str]) -> Error {
    Error::Syntax { offset, expected: expected.iter().map(|s| s.to_string()).collect() }
}

const TERM_START: &[&str] = &["atom", "'('", "'['"];

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Next byte without skipping whitespace.
    fn peek_raw(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, name: &str) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos, &[name]))
        }
    }

    fn eat_raw(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || b"xdstefKEq([".contains(&c))
    }

    fn expr(&mut self) -> Result<Ast> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(syntax(self.pos, &["shallower nesting"]));
        }
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = Ast::Neg(Box::new(acc));
        }
        loop {
            let op_pos = {
                self.skip_ws();
                self.pos
            };
            let minus = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            if !self.starts_factor() {
                return Err(syntax(op_pos, TERM_START));
            }
            let rhs = self.term()?;
            acc = if minus { Ast::Sub(Box::new(acc), Box::new(rhs)) } else { Ast::Add(Box::new(acc), Box::new(rhs)) };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut factors = vec![self.factor()?];
        loop {
            let star_pos = {
                self.skip_ws();
                self.pos
            };
            if self.eat(b'*') {
                if !self.starts_factor() {
                    return Err(syntax(star_pos, TERM_START));
                }
            } else if !self.starts_factor() {
                break;
            }
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Ast::Product(factors) })
    }

    fn factor(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',', "','")?;
                let b = self.expr()?;
                self.expect(b']', "']'")?;
                let q_exp = if self.peek_raw() == Some(b'_') {
                    let at = self.pos;
                    if self.eat_raw("_{q^-1}") {
                        Some(-1)
                    } else if self.eat_raw("_q") {
                        Some(1)
                    } else {
                        return Err(syntax(at, &["'_q'", "'_{q^-1}'"]));
                    }
                } else {
                    None
                };
                Ok(Ast::Bracket { a: Box::new(a), b: Box::new(b), q_exp })
            }
            Some(_) => self.atom(),
            None => Err(syntax(self.pos, TERM_START)),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let d = self.digits().ok_or_else(|| syntax(at, &["index"]))?;
        d.parse().map_err(|_| Error::InvalidIndex(format!("index {d} at offset {at} is too large")))
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let at = self.pos;
        let neg = if self.peek_raw() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let d = self.digits().ok_or_else(|| syntax(self.pos, &["integer"]))?;
        let v: i64 = d.parse().map_err(|_| Error::InvalidIndex(format!("integer {d} at offset {at} is too large")))?;
        Ok(if neg { -v } else { v })
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect(b'(', "'('")?;
        let mut out = vec![self.signed_int()?];
        while self.eat(b',') {
            out.push(self.signed_int()?);
        }
        self.expect(b')', "')'")?;
        Ok(out)
    }

    fn inverse_suffix(&mut self) -> Result<i64> {
        if self.peek_raw() == Some(b'^') {
            let at = self.pos;
            if self.eat_raw("^-1") {
                return Ok(-1);
            }
            return Err(syntax(at, &["'^-1'"]));
        }
        Ok(1)
    }

    fn atom(&mut self) -> Result<Ast> {
        self.skip_ws();
        let offset = self.pos;
        let c = self.src[self.pos];
        let atom = if c.is_ascii_digit() {
            let d = self.digits().expect("starts with a digit");
            Atom::Int(d.parse().expect("decimal digits"))
        } else {
            self.pos += 1;
            match c {
                b'x' if self.peek_raw() == Some(b'^') => {
                    self.pos += 1;
                    Atom::Monomial(self.int_list()?)
                }
                b'x' => Atom::X(self.index()?),
                b'd' => Atom::D(self.index()?),
                b's' => {
                    let i = self.index()?;
                    Atom::Sigma(i, self.inverse_suffix()?)
                }
                b't' => Atom::Theta(self.int_list()?),
                b'e' => Atom::E(self.index()?),
                b'f' => Atom::F(self.index()?),
                b'K' => {
                    let i = self.index()?;
                    Atom::K(i, self.inverse_suffix()?)
                }
                b'E' => {
                    let list = self.int_list()?;
                    match list[..] {
                        [i, j] if i > 0 && j > 0 => Atom::Root(i as usize, j as usize),
                        [_, _] => return Err(Error::InvalidIndex(format!("E{list:?} at offset {offset}"))),
                        _ => return Err(syntax(offset, &["E(i,j)"])),
                    }
                }
                b'q' => {
                    if self.peek_raw() == Some(b'^') {
                        self.pos += 1;
                        Atom::Q(self.signed_int()?)
                    } else {
                        Atom::Q(1)
                    }
                }
                _ => {
                    self.pos = offset;
                    return Err(syntax(offset, TERM_START));
                }
            }
        };
        Ok(Ast::Atom { offset, atom })
    }
}

/// Parses text into an expression tree without resolving any atoms.
pub fn parse_ast(src: &str) -> Result<Ast> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, depth: 0 };
    if p.peek().is_none() {
        return Err(syntax(p.pos, TERM_START));
    }
    let ast = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos, &["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(ast)
}

fn scalar(atom: &Atom) -> Option<LaurentPoly> {
    match atom {
        Atom::Q(k) => Some(LaurentPoly::q_pow(*k)),
        Atom::Int(v) => Some(LaurentPoly::constant(v.clone())),
        _ => None,
    }
}

fn check_index(i: usize, n: usize, what: &str, offset: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::InvalidIndex(format!("{what}{i} at offset {offset} needs 1 ≤ index ≤ {n}")));
    }
    Ok(())
}

fn bracket_coeff(q_exp: Option<i64>) -> LaurentPoly {
    q_exp.map_or_else(LaurentPoly::one, LaurentPoly::q_pow)
}

struct OperatorElab {
    n: usize,
    realization: Option<Realization>,
}

impl OperatorElab {
    fn realization(&mut self) -> Result<&Realization> {
        if self.realization.is_none() {
            self.realization = Some(build_realization(self.n)?);
        }
        Ok(self.realization.as_ref().expect("just built"))
    }

    fn atom(&mut self, offset: usize, atom: &Atom) -> Result<Operator> {
        let n = self.n;
        if let Some(c) = scalar(atom) {
            return Ok(Operator::scalar(n, c));
        }
        let word = |g: GenSymbol| Operator::word(n, vec![g]);
        match atom {
            Atom::X(i) => {
                check_index(*i, n, "x", offset)?;
                word(GenSymbol::X(*i))
            }
            Atom::D(i) => {
                check_index(*i, n, "d", offset)?;
                word(GenSymbol::D(*i))
            }
            Atom::Sigma(i, e) => {
                check_index(*i, n, "s", offset)?;
                word(GenSymbol::Sigma(*i, *e))
            }
            Atom::Theta(mu) => {
                check_rank(n, mu.len())?;
                word(GenSymbol::Theta(MultiIndex::new(mu.clone())))
            }
            Atom::E(i) | Atom::F(i) | Atom::K(i, _) => {
                let (name, g) = match atom {
                    Atom::E(_) => ("e", Generator::E(*i)),
                    Atom::F(_) => ("f", Generator::F(*i)),
                    Atom::K(_, 1) => ("K", Generator::K(*i)),
                    _ => ("K", Generator::KInv(*i)),
                };
                check_index(*i, n, name, offset)?;
                Ok(self.realization()?.get(g)?.clone())
            }
            Atom::Root(i, j) => root_op(*i, *j, n),
            Atom::Monomial(_) => {
                Err(Error::ContextMix { offset, message: "monomial x^(…) is an element, not an operator".into() })
            }
            Atom::Q(_) | Atom::Int(_) => unreachable!("scalars handled above"),
        }
    }

    fn eval(&mut self, ast: &Ast) -> Result<Operator> {
        Ok(match ast {
            Ast::Atom { offset, atom } => self.atom(*offset, atom)?,
            Ast::Neg(a) => -&self.eval(a)?,
            Ast::Add(a, b) => self.eval(a)?.checked_add(&self.eval(b)?)?,
            Ast::Sub(a, b) => self.eval(a)?.checked_sub(&self.eval(b)?)?,
            Ast::Product(fs) => {
                let mut acc = Operator::identity(self.n);
                for f in fs {
                    acc = acc.compose(&self.eval(f)?)?;
                }
                acc
            }
            Ast::Bracket { a, b, q_exp } => {
                crate::weylops::q_bracket(&self.eval(a)?, &self.eval(b)?, &bracket_coeff(*q_exp))?
            }
        })
    }
}

fn eval_element(ast: &Ast, n: usize) -> Result<Element> {
    Ok(match ast {
        Ast::Atom { offset, atom } => {
            if let Some(c) = scalar(atom) {
                Element::term(MultiIndex::zero(n), c)
            } else if let Atom::Monomial(b) = atom {
                check_rank(n, b.len())?;
                let beta = MultiIndex::new(b.clone());
                if !beta.is_nonnegative() {
                    return Err(Error::InvalidIndex(format!("x^{beta} at offset {offset} has a negative exponent")));
                }
                Element::monomial(beta)
            } else {
                return Err(Error::ContextMix {
                    offset: *offset,
                    message: format!("operator atom {atom:?} in an element expression"),
                });
            }
        }
        Ast::Neg(a) => -&eval_element(a, n)?,
        Ast::Add(a, b) => eval_element(a, n)?.checked_add(&eval_element(b, n)?)?,
        Ast::Sub(a, b) => eval_element(a, n)?.checked_add(&-&eval_element(b, n)?)?,
        Ast::Product(fs) => {
            let mut acc = Element::one(n);
            for f in fs {
                acc = acc.mul(&eval_element(f, n)?)?;
            }
            acc
        }
        Ast::Bracket { a, b, q_exp } => {
            let (x, y) = (eval_element(a, n)?, eval_element(b, n)?);
            let ab = x.mul(&y)?;
            let ba = y.mul(&x)?;
            ab.checked_add(&-&ba.scale(&bracket_coeff(*q_exp)))?
        }
    })
}

fn reject_rank_zero(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgs("n must be ≥ 1".into()));
    }
    Ok(())
}

/// Parses an operator on `A_q(n)`. The named atoms `e<i>`, `f<i>`,
/// `K<i>^{±1}` are the realized Chevalley generators and `E(i,j)` is the
/// root vector `e_{ij}`.
pub fn parse_operator(src: &str, n: usize) -> Result<Operator> {
    reject_rank_zero(n)?;
    let ast = parse_ast(src)?;
    OperatorElab { n, realization: None }.eval(&ast)
}

/// Parses an element of `A_q(n)`, e.g. `(q + q^-1) x^(1,0) - x^(0,2)`.
pub fn parse_element(src: &str, n: usize) -> Result<Element> {
    reject_rank_zero(n)?;
    let ast = parse_ast(src)?;
    eval_element(&ast, n)
}

/// Parses a scalar such as `q^2+2+q^-2`.
pub fn parse_scalar(src: &str) -> Result<LaurentPoly> {
    let e = parse_element(src, 1)?;
    if e.terms().any(|(b, _)| b.degree() != 0) {
        return Err(Error::ContextMix { offset: 0, message: "expected a scalar".into() });
    }
    Ok(e.coeff(&MultiIndex::zero(1)))
}

/// True if the tree contains only scalar atoms.
pub fn is_scalar_ast(ast: &Ast) -> bool {
    match ast {
        Ast::Atom { atom, .. } => atom.is_scalar(),
        Ast::Neg(a) => is_scalar_ast(a),
        Ast::Add(a, b) | Ast::Sub(a, b) => is_scalar_ast(a) && is_scalar_ast(b),
        Ast::Product(fs) => fs.iter().all(is_scalar_ast),
        Ast::Bracket { a, b, .. } => is_scalar_ast(a) && is_scalar_ast(b),
    }
}

/// True if the tree contains an element atom `x^(…)`.
pub fn mentions_element(ast: &Ast) -> bool {
    match ast {
        Ast::Atom { atom, .. } => atom.is_element_atom(),
        Ast::Neg(a) => mentions_element(a),
        Ast::Add(a, b) | Ast::Sub(a, b) => mentions_element(a) || mentions_element(b),
        Ast::Product(fs) => fs.iter().any(mentions_element),
        Ast::Bracket { a, b, .. } => mentions_element(a) || mentions_element(b),
    }
}
