//! Compiled evaluation of polynomials at points of F_p^n.

use super::poly::Poly;
use super::scalar::{mul_mod, add_mod, Fp};
use crate::error::{Error, Result};

/// A polynomial reduced modulo `p`, laid out for repeated evaluation.
#[derive(Debug, Clone)]
pub struct ModPoly {
    prime: u64,
    nvars: usize,
    max_exp: Vec<u16>,
    terms: Vec<(u64, Vec<(usize, u16)>)>,
}

impl ModPoly {
    pub fn new(p: &Poly, prime: u64) -> Result<Self> {
        let nvars = p.vars().len();
        let mut max_exp = vec![0u16; nvars];
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let c = c.reduce(prime)?.as_fp().expect("reduced").value();
            if c == 0 {
                continue;
            }
            let sparse: Vec<(usize, u16)> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect();
            for &(i, e) in &sparse {
                max_exp[i] = max_exp[i].max(e);
            }
            terms.push((c, sparse));
        }
        Ok(ModPoly {
            prime,
            nvars,
            max_exp,
            terms,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn evaluate(&self, point: &[u64]) -> Result<u64> {
        if point.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let p = self.prime;
        let powers: Vec<Vec<u64>> = point
            .iter()
            .zip(&self.max_exp)
            .map(|(&x, &d)| {
                let mut v = vec![1u64; d as usize + 1];
                for k in 1..=d as usize {
                    v[k] = mul_mod(v[k - 1], x % p, p);
                }
                v
            })
            .collect();
        let mut acc = 0u64;
        for (c, mono) in &self.terms {
            let mut t = *c;
            for &(i, e) in mono {
                t = mul_mod(t, powers[i][e as usize], p);
            }
            acc = add_mod(acc, t, p);
        }
        Ok(acc)
    }

    pub fn evaluate_fp(&self, point: &[u64]) -> Result<Fp> {
        Ok(Fp::new(self.evaluate(point)?, self.prime))
    }
}
