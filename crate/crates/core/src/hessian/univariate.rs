//! Dense univariate polynomials over F_p, coefficients from low to high
//! degree, with root extraction by `gcd(g, t^p - t)` and equal-degree
//! splitting.

use rand::Rng;

use crate::ring::scalar::{add_mod, inv_mod, mul_mod, sub_mod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coefs: Vec<u64>,
    p: u64,
}

impl UniPoly {
    pub fn new(mut coefs: Vec<u64>, p: u64) -> Self {
        for c in &mut coefs {
            *c %= p;
        }
        let mut u = UniPoly { coefs, p };
        u.trim();
        u
    }

    pub fn zero(p: u64) -> Self {
        UniPoly { coefs: Vec::new(), p }
    }

    pub fn monomial(c: u64, k: usize, p: u64) -> Self {
        let mut coefs = vec![0; k + 1];
        coefs[k] = c;
        UniPoly::new(coefs, p)
    }

    fn trim(&mut self) {
        while self.coefs.last() == Some(&0) {
            self.coefs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefs.len().checked_sub(1)
    }

    pub fn coefs(&self) -> &[u64] {
        &self.coefs
    }

    pub fn eval(&self, t: u64) -> u64 {
        self.coefs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, t, self.p), c, self.p))
    }

    fn zip_with(&self, o: &UniPoly, op: fn(u64, u64, u64) -> u64) -> UniPoly {
        let n = self.coefs.len().max(o.coefs.len());
        let coefs = (0..n)
            .map(|i| {
                let a = self.coefs.get(i).copied().unwrap_or(0);
                let b = o.coefs.get(i).copied().unwrap_or(0);
                op(a, b, self.p)
            })
            .collect();
        UniPoly::new(coefs, self.p)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        self.zip_with(o, add_mod)
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.zip_with(o, sub_mod)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coefs.len() + o.coefs.len() - 1];
        for (i, &a) in self.coefs.iter().enumerate() {
            for (j, &b) in o.coefs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        UniPoly::new(out, self.p)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.coefs[dd], self.p);
        let mut rem = self.coefs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv, self.p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coefs.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(c, dc, self.p), self.p);
            }
        }
        rem.truncate(dd);
        (UniPoly::new(quot, self.p), UniPoly::new(rem, self.p))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.coefs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                UniPoly::new(self.coefs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(), self.p)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::new(vec![1], self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Interpolates the values `ys[i]` at `t = i`.
    pub fn interpolate(ys: &[u64], p: u64) -> UniPoly {
        let n = ys.len();
        let mut result = UniPoly::zero(p);
        for (i, &yi) in ys.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            let mut basis = UniPoly::new(vec![1], p);
            let mut denom = 1u64;
            for j in 0..n {
                if j == i {
                    continue;
                }
                basis = basis.mul(&UniPoly::new(vec![sub_mod(0, j as u64 % p, p), 1], p));
                denom = mul_mod(denom, sub_mod(i as u64 % p, j as u64 % p, p), p);
            }
            let scale = mul_mod(yi, inv_mod(denom, p), p);
            let scaled = UniPoly::new(basis.coefs.iter().map(|&c| mul_mod(c, scale, p)).collect(), p);
            result = result.add(&scaled);
        }
        result
    }

    /// All distinct roots in F_p, sorted. The zero polynomial has no
    /// well-defined root set and yields an empty list.
    pub fn roots<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        if self.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        let p = self.p;
        let f = self.monic();
        let t = UniPoly::new(vec![0, 1], p);
        let tp = t.pow_mod(p, &f);
        let split = f.gcd(&tp.sub(&t));
        let mut roots = Vec::new();
        split_linear(&split, rng, &mut roots);
        roots.sort_unstable();
        roots
    }
}

/// Splits a monic product of distinct linear factors.
fn split_linear<R: Rng>(g: &UniPoly, rng: &mut R, out: &mut Vec<u64>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(sub_mod(0, g.coefs[0], g.p)),
        Some(_) => {
            let p = g.p;
            if p == 2 {
                out.extend((0..2).filter(|&t| g.eval(t) == 0));
                return;
            }
            loop {
                let delta = rng.gen_range(0..p);
                let shifted = UniPoly::new(vec![delta, 1], p);
                let h = shifted.pow_mod((p - 1) / 2, g).sub(&UniPoly::new(vec![1], p));
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    let (q, _) = g.div_rem(&d);
                    split_linear(&d, rng, out);
                    split_linear(&q.monic(), rng, out);
                    return;
                }
            }
        }
    }
}
