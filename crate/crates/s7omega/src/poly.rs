//! Multivariate polynomials with arbitrary-precision integer coefficients
//! over a fixed, named generator list.
//!
//! Canonical form: a map from exponent vector to nonzero coefficient, so
//! equality is map equality. Printing orders terms by graded
//! lexicographic order, leading term first, as in "3*x1^2 - 2*x1*x2".

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial ring handle: the ordered list of generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Arc<Vec<String>>,
}

impl PolyRing {
    pub fn new(names: Vec<String>) -> Result<PolyRing> {
        for name in &names {
            let mut chars = name.chars();
            let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
            if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::argument(format!("bad generator name {name:?}")));
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::argument("duplicate generator names"));
        }
        Ok(PolyRing {
            vars: Arc::new(names),
        })
    }

    /// Z[x1, ..., xk].
    pub fn x_ring(k: usize) -> PolyRing {
        PolyRing::new((1..=k).map(|i| format!("x{i}")).collect()).expect("valid names")
    }

    /// Z[u1, ..., un].
    pub fn u_ring(n: usize) -> PolyRing {
        PolyRing::new((1..=n).map(|p| format!("u{p}")).collect()).expect("valid names")
    }

    /// Z[X_ab] over unordered pairs of [n], lexicographic.
    pub fn pair_ring(n: usize) -> PolyRing {
        let names = crate::idx::pairs(n)
            .map(|(a, b)| {
                if n <= 9 {
                    format!("X{a}{b}")
                } else {
                    format!("X{a}_{b}")
                }
            })
            .collect();
        PolyRing::new(names).expect("valid names")
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn zero(&self) -> IntPolynomial {
        IntPolynomial {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> IntPolynomial {
        self.constant(BigInt::one())
    }

    pub fn constant(&self, c: BigInt) -> IntPolynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; self.vars.len()], c);
        }
        IntPolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// The generator with the given 0-based index.
    pub fn var(&self, index: usize) -> IntPolynomial {
        assert!(index < self.vars.len(), "generator index out of range");
        let mut exps = vec![0u32; self.vars.len()];
        exps[index] = 1;
        self.monomial(exps, BigInt::one())
    }

    pub fn monomial(&self, exps: Vec<u32>, coeff: BigInt) -> IntPolynomial {
        assert_eq!(exps.len(), self.vars.len());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        IntPolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Parses the format produced by Display: signed terms of
    /// coefficient and caret powers joined by '*'.
    pub fn parse(&self, input: &str) -> Result<IntPolynomial> {
        Parser::new(self, input).parse()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPolynomial {
    pub fn ring(&self) -> PolyRing {
        PolyRing {
            vars: self.vars.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn same_ring(&self, other: &IntPolynomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::argument(format!(
                "mismatched generator lists {:?} vs {:?}",
                self.vars, other.vars
            )))
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(IntPolynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        IntPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.same_ring(other)?;
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(IntPolynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let ring = self.ring();
        let mut acc = ring.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn equal(&self, other: &IntPolynomial) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.terms == other.terms)
    }

    /// Ring map sending generator i to images[i]; the images must all lie
    /// in `target`.
    pub fn substitute(
        &self,
        target: &PolyRing,
        images: &[IntPolynomial],
    ) -> Result<IntPolynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::argument(format!(
                "expected {} images, got {}",
                self.vars.len(),
                images.len()
            )));
        }
        for im in images {
            if im.vars != target.vars {
                return Err(Error::argument(
                    "substitution image lies in the wrong ring".to_string(),
                ));
            }
        }
        let mut acc = target.zero();
        for (exps, coeff) in &self.terms {
            let mut term = target.constant(coeff.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e)).expect("same ring");
                }
            }
            acc = acc.add(&term).expect("same ring");
        }
        Ok(acc)
    }
}

/// Graded lexicographic comparison: total degree first, then the exponent
/// vector entrywise with earlier generators weighing more.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for (pos, exps) in keys.iter().enumerate() {
            let coeff = &self.terms[*exps];
            if pos == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mags = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mags.is_one() || exps.iter().all(|&e| e == 0) {
                factors.push(mags.to_string());
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    tokens: Vec<Token>,
    pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Int(BigInt),
    Ident(String),
}

impl<'a> Parser<'a> {
    fn new(ring: &'a PolyRing, input: &str) -> Parser<'a> {
        let mut tokens = Vec::new();
        let mut chars = input.chars().peekable();
        while let Some(&c) = chars.peek() {
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    chars.next();
                }
                '+' => {
                    tokens.push(Token::Plus);
                    chars.next();
                }
                '-' => {
                    tokens.push(Token::Minus);
                    chars.next();
                }
                '*' => {
                    tokens.push(Token::Star);
                    chars.next();
                }
                '^' => {
                    tokens.push(Token::Caret);
                    chars.next();
                }
                '0'..='9' => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    tokens.push(Token::Int(s.parse().expect("digits")));
                }
                c if c.is_ascii_alphabetic() => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            s.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    tokens.push(Token::Ident(s));
                }
                other => {
                    tokens.push(Token::Ident(format!("bad char {other:?}")));
                    chars.next();
                }
            }
        }
        Parser {
            ring,
            tokens,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse(mut self) -> Result<IntPolynomial> {
        let mut acc = self.ring.zero();
        let mut first = true;
        while self.peek().is_some() {
            let sign = match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    1
                }
                Some(Token::Minus) => {
                    self.next();
                    -1
                }
                _ if first => 1,
                Some(t) => {
                    return Err(Error::parse(format!("expected '+' or '-', got {t:?}")))
                }
                None => break,
            };
            first = false;
            let term = self.parse_term()?;
            let term = if sign < 0 { term.neg() } else { term };
            acc = acc.add(&term).expect("same ring");
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.next();
            let f = self.parse_factor()?;
            acc = acc.mul(&f).expect("same ring");
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<IntPolynomial> {
        match self.next() {
            Some(Token::Int(c)) => Ok(self.ring.constant(c)),
            Some(Token::Ident(name)) => {
                let index = self
                    .ring
                    .vars
                    .iter()
                    .position(|v| v == &name)
                    .ok_or_else(|| Error::parse(format!("unknown generator {name:?}")))?;
                let mut exp = 1u32;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.next();
                    match self.next() {
                        Some(Token::Int(e)) => {
                            exp = u32::try_from(&e)
                                .map_err(|_| Error::parse(format!("exponent {e} too large")))?;
                        }
                        other => {
                            return Err(Error::parse(format!(
                                "expected exponent after '^', got {other:?}"
                            )))
                        }
                    }
                }
                let mut exps = vec![0u32; self.ring.vars.len()];
                exps[index] = exp;
                Ok(self.ring.monomial(exps, BigInt::one()))
            }
            other => Err(Error::parse(format!("expected a factor, got {other:?}"))),
        }
    }
}
