//! Text and JSON forms of polynomials.
//!
//! Text grammar: terms joined by `+`/`-`; a term is a `*`-separated product
//! of rational coefficients (`p` or `p/q`) and variable powers (`var^k`).
//! Whitespace is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Poly, VarSet};
use super::scalar::{parse_rational, Field, Scalar};
use crate::error::{Error, Result};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = if neg { -c } else { c.clone() };
            let mono = format_monomial(self.vars(), m);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn format_monomial(vars: &VarSet, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{e}", vars.name(i))),
        }
    }
    parts.join("*")
}

/// Renders a polynomial in the text grammar.
pub fn format(p: &Poly) -> String {
    p.to_string()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(pos, |nl| pos - nl - 1) + 1;
        (line, column)
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn tokens(&mut self) -> Result<Vec<(Tok, usize)>> {
        let bytes = self.src.as_bytes();
        let mut out = Vec::new();
        while self.pos < bytes.len() {
            let start = self.pos;
            let c = bytes[self.pos] as char;
            if c.is_whitespace() {
                self.pos += 1;
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                d if d.is_ascii_digit() => {
                    while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    out.push((Tok::Num(self.src[start..self.pos].parse().unwrap()), start));
                    continue;
                }
                a if a.is_ascii_alphabetic() || a == '_' => {
                    while self.pos < bytes.len()
                        && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    out.push((Tok::Ident(self.src[start..self.pos].to_string()), start));
                    continue;
                }
                other => return Err(self.error(start, format!("unexpected character `{other}`"))),
            };
            self.pos += 1;
            out.push((tok, start));
        }
        Ok(out)
    }
}

struct RawTerm {
    coef: BigRational,
    factors: Vec<(String, u32)>,
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map_or(self.lexer.src.len(), |(_, p)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn number(&mut self) -> Result<BigInt> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            _ => Err(self.lexer.error(pos, "expected a number")),
        }
    }

    fn terms(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        if self.toks.is_empty() {
            return Err(self.lexer.error(0, "empty polynomial"));
        }
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.at += 1;
                1
            }
            _ => 1,
        };
        loop {
            let mut term = self.term()?;
            if sign < 0 {
                term.coef = -term.coef;
            }
            out.push(term);
            let pos = self.pos();
            match self.next() {
                None => break,
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                Some(_) => return Err(self.lexer.error(pos, "expected `+`, `-` or end of input")),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut term = RawTerm {
            coef: BigRational::one(),
            factors: Vec::new(),
        };
        loop {
            let pos = self.pos();
            match self.next() {
                Some(Tok::Num(n)) => {
                    let den = if self.peek() == Some(&Tok::Slash) {
                        self.at += 1;
                        let dpos = self.pos();
                        let d = self.number()?;
                        if d == BigInt::from(0) {
                            return Err(self.lexer.error(dpos, "zero denominator"));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    term.coef *= BigRational::new(n, den);
                }
                Some(Tok::Ident(name)) => {
                    let exp = if self.peek() == Some(&Tok::Caret) {
                        self.at += 1;
                        let epos = self.pos();
                        let e = self.number()?;
                        let e: u32 = e
                            .try_into()
                            .ok()
                            .filter(|&e: &u32| e >= 1 && e <= u16::MAX as u32)
                            .ok_or_else(|| self.lexer.error(epos, "exponent must be a positive integer"))?;
                        e
                    } else {
                        1
                    };
                    term.factors.push((name, exp));
                }
                _ => return Err(self.lexer.error(pos, "expected a coefficient or a variable")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            } else {
                return Ok(term);
            }
        }
    }
}

/// Parses text over Q. With `vars = None` the variable set is every name in
/// order of first appearance; otherwise names must belong to `vars`.
pub fn parse(text: &str, vars: Option<&VarSet>) -> Result<Poly> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let toks = lexer.tokens()?;
    let mut parser = Parser {
        lexer: Lexer { src: text, pos: 0 },
        toks,
        at: 0,
    };
    let raw = parser.terms()?;
    let vars = match vars {
        Some(v) => {
            for t in &raw {
                for (n, _) in &t.factors {
                    v.require(n)?;
                }
            }
            v.clone()
        }
        None => {
            let mut names: Vec<String> = Vec::new();
            for t in &raw {
                for (n, _) in &t.factors {
                    if !names.contains(n) {
                        names.push(n.clone());
                    }
                }
            }
            VarSet::new(names)?
        }
    };
    let terms = raw.into_iter().map(|t| {
        let mut exps = vec![0u32; vars.len()];
        for (n, e) in t.factors {
            exps[vars.index_of(&n).expect("checked")] += e;
        }
        (Monomial::from_exponents(&exps), Scalar::Rational(t.coef))
    });
    Poly::from_terms(&vars, Field::Rational, terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub exps: Vec<u32>,
}

/// `{"vars":[...],"terms":[{"coef":"-3/2","exps":[2,0,...]},...]}`; the
/// optional `prime` marks coefficients in F_p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            vars: p.vars().names().to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    coef: c.to_string(),
                    exps: m.exponents().iter().map(|&e| e as u32).collect(),
                })
                .collect(),
            prime: p.field().modulus(),
        }
    }
}

impl TryFrom<&PolyJson> for Poly {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<Poly> {
        let vars = VarSet::new(j.vars.iter().cloned())?;
        let field = match j.prime {
            Some(p) => Field::prime(p)?,
            None => Field::Rational,
        };
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let q = parse_rational(&t.coef)
                    .ok_or_else(|| Error::Json(format!("bad coefficient `{}`", t.coef)))?;
                if t.exps.len() != vars.len() {
                    return Err(Error::Json(format!(
                        "term has {} exponents for {} variables",
                        t.exps.len(),
                        vars.len()
                    )));
                }
                if field != Field::Rational && q.is_negative() {
                    return Err(Error::Json("F_p coefficients are non-negative residues".into()));
                }
                Ok((Monomial::from_exponents(&t.exps), field.from_rational(&q)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(&vars, field, terms)
    }
}

pub fn to_json(p: &Poly) -> String {
    serde_json::to_string(&PolyJson::from(p)).expect("serializable")
}

pub fn from_json(s: &str) -> Result<Poly> {
    let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    Poly::try_from(&j)
}

/// `{"vars":[...],"text":"..."}`, the readable form used inside reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyText {
    pub vars: Vec<String>,
    pub text: String,
}

impl From<&Poly> for PolyText {
    fn from(p: &Poly) -> Self {
        PolyText {
            vars: p.vars().names().to_vec(),
            text: p.to_string(),
        }
    }
}

impl TryFrom<&PolyText> for Poly {
    type Error = Error;

    fn try_from(t: &PolyText) -> Result<Poly> {
        let vars = VarSet::new(t.vars.iter().cloned())?;
        parse(&t.text, Some(&vars))
    }
}

/// Serde adapter storing a rational polynomial as [`PolyText`].
pub mod as_text {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::PolyText;
    use crate::ring::Poly;

    pub fn serialize<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
        PolyText::from(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
        let t = PolyText::deserialize(d)?;
        Poly::try_from(&t).map_err(serde::de::Error::custom)
    }
}
