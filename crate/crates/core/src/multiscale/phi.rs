//! The maps `phi_k = psi_{Lambda_k} o pi_k` on windows of the inverse limit.
//!
//! `psi_Lambda` sends a point whose coordinate 0 is the orbit letter `S^j x`
//! of an element to `S^j x`, and every other point to the marker `o`.
//! Points of `Y` are compared on windows of `eps_0`-reach.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::stage::{LevelElement, Stage};
use super::stage0::Letter;
use super::tower::tower_membership;
use crate::error::{Error, Result};
use crate::shift::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Top {
    Marker(u32),
    Star,
    Core { block: usize, j: u32 },
}

/// A window of a point of the inverse limit: consecutive generating words of
/// `Lambda_1` with their images under `pi_0`.
#[derive(Clone, Debug)]
pub struct PhiWindow {
    pub blocks: Vec<Vec<usize>>,
    pub elements: Vec<LevelElement>,
    pub top: Vec<Top>,
    pub low: Vec<Letter>,
    pub top_starts: Vec<usize>,
    pub low_starts: Vec<usize>,
}

impl PhiWindow {
    pub fn new(stage: &Stage, blocks: Vec<Vec<usize>>) -> Result<PhiWindow> {
        let base = &stage.base;
        let plan = &stage.plan;
        let mut elements = Vec::new();
        let mut top = Vec::new();
        let mut low = Vec::new();
        let mut top_starts = Vec::new();
        let mut low_starts = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            let el = stage.element(block)?;
            top_starts.push(top.len());
            top.extend((0..=stage.m() as u32).map(Top::Marker));
            top.extend(std::iter::repeat_n(Top::Star, plan.big_l));
            top.extend((0..=el.n as u32).map(|j| Top::Core { block: b, j }));
            top.extend(std::iter::repeat_n(Top::Star, plan.l));
            for &w in block {
                low_starts.push(low.len());
                low.extend(base.word(base.e[w]));
            }
            elements.push(el);
        }
        debug_assert_eq!(top.len(), low.len());
        Ok(PhiWindow {
            blocks,
            elements,
            top,
            low,
            top_starts,
            low_starts,
        })
    }

    pub fn random(stage: &Stage, rng: &mut ChaCha8Rng, count: usize) -> Result<PhiWindow> {
        let n = stage.plan.n;
        let family = stage.base.e.len();
        let blocks = (0..count)
            .map(|_| {
                let k = n + rng.gen_range(0..2);
                (0..k).map(|_| rng.gen_range(0..family)).collect()
            })
            .collect();
        PhiWindow::new(stage, blocks)
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    /// `phi_1` at coordinate `i`: letters `-r ..= r` of the point.
    pub fn phi1(&self, stage: &Stage, i: usize, r: usize) -> Vec<Symbol> {
        let (w, j) = match self.top[i] {
            Top::Core { block, j } => (&self.elements[block].window, j as i64),
            _ => (&stage.marker, 0),
        };
        let r = r as i64;
        (-r..=r).map(|t| w[(stage.margin as i64 + j + t) as usize]).collect()
    }

    /// `phi_0` at coordinate `i`, shifted by `by` along the orbit.
    pub fn phi0(&self, stage: &Stage, i: usize, r: usize, by: i64) -> Vec<Symbol> {
        let (p, j) = match self.low[i] {
            Letter::Orbit { point, j } if point != 0 => (point, j as i64),
            _ => (0, 0),
        };
        let r = r as i64;
        (-r..=r).map(|t| stage.base.letter(p, j + by + t)).collect()
    }

    /// The 1-block start marks of the `Lambda_0` words in the window.
    pub fn marking(&self) -> Vec<u8> {
        self.low_starts.iter().map(|s| self.top_starts.contains(s) as u8).collect()
    }
}

/// Whether a marker start lies within `radius` of `i`.
pub fn flag(starts: &[usize], len: usize, i: usize, radius: usize) -> Result<bool> {
    let left = starts.iter().rev().find(|&&s| s <= i);
    let right = starts.iter().find(|&&s| s > i);
    if left.is_some_and(|&s| i - s <= radius) || right.is_some_and(|&s| s - i <= radius) {
        return Ok(true);
    }
    if (left.is_none() && i < radius) || (right.is_none() && i + radius >= len) {
        return Err(Error::WindowTooShort(format!(
            "coordinate {i} of {len}: no marker within reach {radius} can be ruled out"
        )));
    }
    Ok(false)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhiReport {
    pub windows: usize,
    /// Core coordinates (element letters at both levels) off `F_1`.
    pub core_checked: usize,
    pub core_failures: usize,
    /// Marker and star coordinates of `Lambda_0` off `F_1`, where `psi`
    /// sends the lower point to `o`.
    pub other_checked: usize,
    pub other_disagree: usize,
    pub equivariance_checked: usize,
    pub equivariance_failures: usize,
    pub tower_ok: bool,
    pub first_failure: Option<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.core_failures == 0 && self.equivariance_failures == 0 && self.tower_ok && self.core_checked > 0
    }
}

/// Checks, on `count` seeded random windows of three generating words, that
/// `phi_1` and `phi_0` agree at scale `eps_0` off `F_1`, that `phi_0`
/// commutes with the shift off `F_0`, and that block starts form a tower
/// word.
pub fn evaluate_phi(stage: &Stage, count: usize, seed: u64) -> Result<PhiReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r0 = stage.base.budget.eps(0).reach();
    let p1 = stage.plan.big_p;
    let p0 = stage.base.p0;
    let mut rep = PhiReport {
        tower_ok: true,
        ..PhiReport::default()
    };
    for _ in 0..count {
        let win = PhiWindow::random(stage, &mut rng, 3)?;
        rep.windows += 1;
        let from = win.top_starts[1];
        let to = win.top_starts[2];
        for i in from..to {
            if !flag(&win.top_starts, win.len(), i, p1)? {
                let core = matches!(win.low[i], Letter::Orbit { point, .. } if point != 0)
                    && matches!(win.top[i], Top::Core { .. });
                let agree = win.phi1(stage, i, r0) == win.phi0(stage, i, r0, 0);
                if core {
                    rep.core_checked += 1;
                    if !agree {
                        rep.core_failures += 1;
                        rep.first_failure.get_or_insert(format!("coordinate {i}: phi_1 and phi_0 differ"));
                    }
                } else {
                    rep.other_checked += 1;
                    rep.other_disagree += (!agree) as usize;
                }
            }
            if !flag(&win.low_starts, win.len(), i, p0)? {
                rep.equivariance_checked += 1;
                if win.phi0(stage, i + 1, r0, 0) != win.phi0(stage, i, r0, 1) {
                    rep.equivariance_failures += 1;
                    rep.first_failure.get_or_insert(format!("coordinate {i}: phi_0 does not commute with the shift"));
                }
            }
        }
        let n1 = stage.plan.n;
        if !tower_membership(&win.marking(), &[n1 - 1], 1) {
            rep.tower_ok = false;
            rep.first_failure.get_or_insert("block marks are not a tower word".into());
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        let starts = [10, 50];
        assert!(flag(&starts, 100, 12, 3).unwrap());
        assert!(flag(&starts, 100, 48, 3).unwrap());
        assert!(!flag(&starts, 100, 30, 3).unwrap());
        assert!(matches!(flag(&starts, 100, 98, 3), Err(Error::WindowTooShort(_))));
        assert!(matches!(flag(&starts, 100, 1, 3), Err(Error::WindowTooShort(_))));
    }
}
