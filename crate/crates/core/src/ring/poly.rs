use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// An ordered list of distinct variable names. Positions index exponent
/// vectors and fix the lexicographic monomial order (first name is largest).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<[String]>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(Error::InvalidVarSet(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVarSet(format!("`{n}` appears twice")));
            }
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidVarSet("too many variables".into()));
        }
        Ok(VarSet {
            names: names.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A new set with the listed names removed.
    pub fn without(&self, drop: &[&str]) -> Result<VarSet> {
        VarSet::new(
            self.names
                .iter()
                .filter(|n| !drop.contains(&n.as_str()))
                .cloned(),
        )
    }

    fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Exponent vector. The derived ordering is lexicographic in variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .map(|&e| u16::try_from(e).expect("exponent fits in u16"))
                .collect(),
        )
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| b - a)
                .collect(),
        )
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a map keyed by exponent vector with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(vars: &VarSet, field: Field) -> Self {
        Poly {
            vars: vars.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Scalar) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Poly {
            vars: vars.clone(),
            field,
            terms,
        }
    }

    pub fn from_i64(vars: &VarSet, field: Field, c: i64) -> Self {
        Poly::constant(vars, field.from_i64(c))
    }

    pub fn one(vars: &VarSet, field: Field) -> Self {
        Poly::from_i64(vars, field, 1)
    }

    pub fn var(vars: &VarSet, field: Field, name: &str) -> Result<Self> {
        let i = vars.require(name)?;
        Ok(Poly::var_index(vars, field, i))
    }

    pub fn var_index(vars: &VarSet, field: Field, i: usize) -> Self {
        let mut m = Monomial::one(vars.len());
        m.0[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, field.one());
        Poly {
            vars: vars.clone(),
            field,
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(vars: &VarSet, field: Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != vars.len() {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} for {} variables",
                    m.0.len(),
                    vars.len()
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("{} in {}", c.field(), field)));
            }
            accumulate(&mut map, m, c);
        }
        Ok(Poly {
            vars: vars.clone(),
            field,
            terms: map,
        })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term under lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest combined exponent of the given variables over all terms.
    pub fn degree_in(&self, names: &[&str]) -> Result<u32> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<_>>()?;
        Ok(self
            .terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.exponent(i)).sum())
            .max()
            .unwrap_or(0))
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if !self.vars.same(&other.vars) {
            return Err(Error::VarSetMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.vars, self.field));
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get() + &prod;
                        *e.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Ok(Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars, self.field);
        }
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Poly {
        self.scale(&self.field.from_i64(c))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(&self.vars, self.field);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        let i = self.vars.require(var)?;
        Ok(self.derivative_index(i))
    }

    pub fn derivative_index(&self, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] = e - 1;
            let dc = c * &self.field.from_i64(e as i64);
            if !dc.is_zero() {
                terms.insert(dm, dc);
            }
        }
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms,
        }
    }

    /// Composition `p(images[0], ..., images[n-1])`. All images must share one
    /// variable set, which becomes the variable set of the result.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            let missing = self
                .vars
                .names()
                .get(images.len())
                .cloned()
                .unwrap_or_default();
            return Err(Error::UnboundVariable(missing));
        }
        let Some(first) = images.first() else {
            return Err(Error::Invalid(
                "composition needs at least one image to fix the target ring".into(),
            ));
        };
        for img in images {
            img.check_compatible(first)?;
        }
        if first.field != self.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, first.field)));
        }
        let target = first.vars.clone();
        // powers[i][k] = images[i]^k, filled on demand
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|img| vec![Poly::one(&target, self.field), img.clone()])
            .collect();
        let mut result = Poly::zero(&target, self.field);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            result = &result + &term;
        }
        Ok(result)
    }

    /// Substitutes each variable by the polynomial bound to its name.
    pub fn substitute(&self, bindings: &BTreeMap<String, Poly>) -> Result<Poly> {
        let images = self
            .vars
            .names()
            .iter()
            .map(|n| {
                bindings
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::UnboundVariable(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.compose(&images)
    }

    /// Moves the polynomial into another variable set, mapping each used
    /// variable through `rename`.
    pub fn rename<F>(&self, target: &VarSet, rename: F) -> Result<Poly>
    where
        F: Fn(&str) -> String,
    {
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(&rename(n)))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(rename(self.vars.name(i))))?;
                nm.0[j] += e;
            }
            accumulate(&mut terms, nm, c.clone());
        }
        Ok(Poly {
            vars: target.clone(),
            field: self.field,
            terms,
        })
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &VarSet) -> Result<Poly> {
        self.rename(target, str::to_string)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(Error::PointLength {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(format!(
                "point coordinate in {} for a polynomial over {}",
                bad.field(),
                self.field
            )));
        }
        let maxdeg: Vec<u16> = (0..self.vars.len())
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d as usize + 1);
                v.push(self.field.one());
                for k in 1..=d as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `Some(d)` iff every term has total degree `d`. The zero polynomial
    /// reports `None`.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `sum over names of v * dp/dv`.
    pub fn euler_sum(&self, names: &[&str]) -> Result<Poly> {
        let mut acc = Poly::zero(&self.vars, self.field);
        for n in names {
            let v = Poly::var(&self.vars, self.field, n)?;
            acc = &acc + &(&v * &self.partial_derivative(n)?);
        }
        Ok(acc)
    }

    /// Checks Euler's identity `sum_i x_i dp/dx_i = d p`.
    pub fn euler_check(&self) -> Result<bool> {
        let d = match self.is_homogeneous() {
            Some(d) => d,
            None if self.is_zero() => return Ok(true),
            None => return Err(Error::NotHomogeneous),
        };
        let names: Vec<&str> = self.vars.names().iter().map(String::as_str).collect();
        let lhs = self.euler_sum(&names)?;
        Ok(lhs == self.scale_i64(d as i64))
    }

    /// Division with remainder by a single divisor under lex order. A term of
    /// the running remainder is eliminated whenever the divisor's leading
    /// monomial divides it.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv().ok_or(Error::DivisionByZero)?;
        let mut work = self.terms.clone();
        let mut quot = BTreeMap::new();
        let mut rem = BTreeMap::new();
        while let Some((m, c)) = work.pop_last() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                    accumulate(&mut work, dm.mul(&qm), -(dc * &qc));
                }
                quot.insert(qm, qc);
            } else {
                rem.insert(m, c);
            }
        }
        let mk = |terms| Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms,
        };
        Ok((mk(quot), mk(rem)))
    }

    /// `Some(q)` with `self = q * f` when `f` divides `self`.
    pub fn divides_by(&self, f: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(f)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Quotient of a division known to be exact. Panics otherwise.
    pub fn div_exact(&self, f: &Poly) -> Poly {
        let (q, r) = self.div_rem(f).expect("compatible nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Coefficient-wise image modulo `p`.
    pub fn reduce_mod_prime(&self, p: u64) -> Result<Poly> {
        let field = Field::prime(p)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.reduce(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(&self.vars, field, terms)
    }
}

/// `p` divides `q`: returns the quotient when it does.
pub fn divides(f: &Poly, p: &Poly) -> Result<Option<Poly>> {
    p.divides_by(f)
}

fn accumulate(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
