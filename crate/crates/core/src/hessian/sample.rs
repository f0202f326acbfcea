use rand::Rng;

use super::config::SampleConfig;
use super::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::ring::scalar::{add_mod, mul_mod};
use crate::ring::{ModPoly, Poly};

/// Lines tried before giving up on finding a point.
pub const LINE_BUDGET: usize = 1000;

/// A hypersurface reduced modulo a prime, ready for point sampling.
#[derive(Debug, Clone)]
pub struct HypersurfaceSampler {
    f: ModPoly,
    gradient: Vec<ModPoly>,
    degree: usize,
    prime: u64,
}

impl HypersurfaceSampler {
    pub fn new(f: &Poly, prime: u64) -> Result<Self> {
        let degree = f.total_degree().unwrap_or(0) as usize;
        if degree == 0 {
            return Err(Error::Invalid("cannot sample points on a constant".into()));
        }
        Ok(HypersurfaceSampler {
            f: ModPoly::new(f, prime)?,
            gradient: (0..f.vars().len())
                .map(|i| ModPoly::new(&f.derivative_index(i), prime))
                .collect::<Result<_>>()?,
            degree,
            prime,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Restricts `f` to the line `a + t b`, intersects, and returns a random
    /// F_p point of the intersection. Lines without F_p points are redrawn.
    pub fn point<R: Rng>(&self, rng: &mut R) -> Result<Vec<u64>> {
        self.point_where(rng, |_| Ok(true))
    }

    /// Like [`point`](Self::point) but rejects points where every partial
    /// derivative vanishes.
    pub fn smooth_point<R: Rng>(&self, rng: &mut R) -> Result<Vec<u64>> {
        self.point_where(rng, |x| {
            for g in &self.gradient {
                if g.evaluate(x)? != 0 {
                    return Ok(true);
                }
            }
            Ok(false)
        })
    }

    fn point_where<R, F>(&self, rng: &mut R, accept: F) -> Result<Vec<u64>>
    where
        R: Rng,
        F: Fn(&[u64]) -> Result<bool>,
    {
        let n = self.f.nvars();
        let p = self.prime;
        let on_line = |a: &[u64], b: &[u64], t: u64| -> Vec<u64> {
            a.iter()
                .zip(b)
                .map(|(&ai, &bi)| add_mod(ai, mul_mod(t, bi, p), p))
                .collect()
        };
        for _ in 0..LINE_BUDGET {
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let b: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let ys = (0..=self.degree as u64)
                .map(|t| self.f.evaluate(&on_line(&a, &b, t)))
                .collect::<Result<Vec<_>>>()?;
            let g = UniPoly::interpolate(&ys, p);
            let t = if g.is_zero() {
                rng.gen_range(0..p)
            } else {
                let roots = g.roots(rng);
                if roots.is_empty() {
                    continue;
                }
                roots[rng.gen_range(0..roots.len())]
            };
            let x = on_line(&a, &b, t);
            if x.iter().all(|&c| c == 0) || !accept(&x)? {
                continue;
            }
            debug_assert_eq!(self.f.evaluate(&x)?, 0);
            return Ok(x);
        }
        Err(Error::RetryBudgetExhausted(LINE_BUDGET))
    }
}

/// One F_p point of `V(f)`, drawn from the `"hypersurface"` stream.
pub fn sample_point_on_hypersurface(f: &Poly, cfg: &SampleConfig) -> Result<Vec<u64>> {
    let sampler = HypersurfaceSampler::new(f, cfg.prime)?;
    sampler.point(&mut cfg.trial_rng("hypersurface", 0))
}
