//! Radii of a depth-`K` construction.
//!
//! `eps_0 = 2^-r0` and `eps_k = 2^-(r0+k+1)` for `k >= 1`, so that
//! `sum_{k>=1} eps_k < eps_0 / 2`. All sums are kept as integers in units
//! of `2^-(r0+K+1)`.

use crate::error::{Error, Result};
use crate::metric::Scale;
use crate::shift::Sft;
use crate::spec_props::coded::weak_spec_gap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleBudget {
    pub r0: u32,
    pub depth: usize,
}

impl ScaleBudget {
    pub fn new(r0: u32, depth: usize) -> Result<ScaleBudget> {
        if r0 == 0 {
            return Err(Error::OutOfRange("r0 must be at least 1".into()));
        }
        Ok(ScaleBudget { r0, depth })
    }

    fn unit_exp(&self) -> u32 {
        self.r0 + self.depth as u32 + 1
    }

    /// `eps_k` in units of `2^-(r0+K+1)`.
    fn units(&self, k: usize) -> u128 {
        let e = if k == 0 { self.r0 } else { self.r0 + k as u32 + 1 };
        1u128 << (self.unit_exp() - e)
    }

    pub fn eps(&self, k: usize) -> Scale {
        Scale { r: if k == 0 { self.r0 } else { self.r0 + k as u32 + 1 } }
    }

    /// `eps'_k = eps_0 - sum_{l=1}^k eps_l`, as units.
    pub fn eps_prime_units(&self, k: usize) -> u128 {
        self.units(0) - (1..=k).map(|l| self.units(l)).sum::<u128>()
    }

    /// `eps''_k = sum_{l=k+1}^K eps_l`, as units.
    pub fn eps_second_units(&self, k: usize) -> u128 {
        (k + 1..=self.depth).map(|l| self.units(l)).sum()
    }

    /// Largest dyadic radius not exceeding `eps'_k`.
    pub fn eps_prime(&self, k: usize) -> Scale {
        let u = self.eps_prime_units(k);
        let top = 127 - u.leading_zeros();
        Scale { r: self.unit_exp() - top }
    }

    /// `eps''_k <= eps'_k` for every stage.
    pub fn consistent(&self) -> bool {
        (0..=self.depth).all(|k| self.eps_second_units(k) <= self.eps_prime_units(k))
            && self.eps_second_units(0) * 2 < self.units(0)
    }

    /// Star gap `L_eps` for which the constraint sets at `eps` are never empty:
    /// two windows of reach `R` need `2R` letters between their centres plus
    /// the mixing gap.
    pub fn gap_for(x: &Sft, scale: Scale) -> Result<usize> {
        Ok(2 * scale.reach() + weak_spec_gap(x)?)
    }

    pub fn as_f64(&self, units: u128) -> f64 {
        units as f64 * 0.5f64.powi(self.unit_exp() as i32)
    }
}
