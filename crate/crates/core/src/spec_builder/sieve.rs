//! Removal of elements whose orbit segments come close to the marker.

use super::elements::Exclusions;
use crate::error::{Error, Result};
use crate::metric::{Scale, SeparatedSet};
use crate::shift::{Sft, Symbol, Word};

/// `ceil(delta n / 2)`, the length of the compared orbit pieces.
pub fn sieve_len(delta: f64, n: usize) -> usize {
    (delta * n as f64 / 2.0).ceil() as usize
}

fn floor_of(v: f64) -> usize {
    // guards against 0.1 * 30 = 2.9999..
    (v + 1e-9).floor().max(0.0) as usize
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 2.0 / 3.0) {
        return Err(Error::OutOfRange(format!("delta = {delta} outside (0, 2/3)")));
    }
    Ok(())
}

/// Letters of the point through `w` on coordinates `from .. from + len`,
/// completing `w` by least extensions on both sides.
pub fn point_letters(x: &Sft, w: &Word, from: i64, len: usize) -> Option<Vec<Symbol>> {
    let lo = from.min(w.offset);
    let hi = (from + len as i64).max(w.end());
    let pattern: Vec<Option<Symbol>> = (lo..hi).map(|k| w.get(k)).collect();
    let full = x.least_matching(&pattern)?;
    let start = (from - lo) as usize;
    Some(full[start..start + len].to_vec())
}

/// Exclusions for windows at `reach` removing every `x` with
/// `S^l x` in `B(S^k y, delta n / 2, 2 eps)` for `(k, 0)`, `0 <= k <= delta n`,
/// or `(0, l)`, `0 <= l <= (1 - delta) n`. `y` lists the letters of the
/// point `y` from coordinate `-reach2` on, where `reach2` is the reach of
/// the `2 eps` scale.
pub fn sieve_exclusions(
    y: &[Symbol],
    delta: f64,
    n: usize,
    reach: usize,
    reach2: usize,
) -> Result<Exclusions> {
    check_delta(delta)?;
    if reach2 > reach {
        return Err(Error::OutOfRange("sieve scale finer than the element scale".into()));
    }
    let h = sieve_len(delta, n);
    let q = h + 2 * reach2;
    let kmax = floor_of(delta * n as f64);
    let lmax = floor_of((1.0 - delta) * n as f64);
    if y.len() < kmax + q {
        return Err(Error::LengthMismatch(format!(
            "sieve needs {} letters of y, got {}",
            kmax + q,
            y.len()
        )));
    }
    let base = reach - reach2;
    Ok(Exclusions {
        fixed: (0..=kmax).map(|k| (base, y[k..k + q].to_vec())).collect(),
        occurrences: vec![(y[..q].to_vec(), base, base + lmax)],
    })
}

/// Exclusions for windows at `reach` with `N(x) = n` whose ball can meet
/// `B(o, m, eps)` shifted by `k`, `-2m/3 <= k <= n - 2m/3`. `marker` is
/// the ball window of `o`.
pub fn marker_exclusions(marker: &[Symbol], m: usize, n: usize, reach: usize) -> Exclusions {
    let p = marker.len();
    let b = n + 2 * reach;
    let s_hi = (2 * m / 3) as i64;
    let s_lo = (2 * m).div_ceil(3) as i64 - n as i64;
    let mut ex = Exclusions::default();
    let mut occ_hi = None;
    for s in s_lo..=s_hi {
        if s >= 0 {
            let s = s as usize;
            let len = b.min(p - s);
            ex.fixed.push((0, marker[s..s + len].to_vec()));
        } else {
            let a = (-s) as usize;
            if a + p <= b {
                occ_hi = Some(occ_hi.map_or(a, |h: usize| h.max(a)));
            } else if a < b {
                ex.fixed.push((a, marker[..b - a].to_vec()));
            }
        }
    }
    if let Some(hi) = occ_hi {
        ex.occurrences.push((marker.to_vec(), 1, hi));
    }
    ex
}

#[derive(Clone, Debug)]
pub struct SieveOutcome {
    pub kept: SeparatedSet,
    /// Indices into the input of the removed elements.
    pub removed: Vec<usize>,
    /// `ln #F` against `sqrt(1 - delta/2) h n`.
    pub removed_ln: f64,
    pub bound_ln: f64,
}

impl SieveOutcome {
    pub fn within_bound(&self) -> bool {
        self.removed_ln <= self.bound_ln
    }
}

/// Sieve on an explicit separated set: drops every `x` with
/// `S^l x` in `B(S^k y, delta n / 2, 2 eps)` for some `(k, l)` in
/// `{(k, 0) : 0 <= k <= delta n} ∪ {(0, l) : 0 <= l <= (1 - delta) n}`.
/// Points are completed beyond their stored windows by least extensions.
pub fn sieve_separated(
    x: &Sft,
    g: &SeparatedSet,
    y: &Word,
    delta: f64,
    n: usize,
    scale: Scale,
    entropy: f64,
) -> Result<SieveOutcome> {
    check_delta(delta)?;
    let reach2 = scale.times_clamped(2).reach() as i64;
    let h = sieve_len(delta, n);
    let q = h + 2 * reach2 as usize;
    let kmax = floor_of(delta * n as f64);
    let lmax = floor_of((1.0 - delta) * n as f64);
    let yl = point_letters(x, y, -reach2, kmax + q).ok_or(Error::NotAWord)?;
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for (i, (w, nx)) in g.elements.iter().enumerate() {
        let xl = point_letters(x, w, -reach2, lmax + q).ok_or(Error::NotAWord)?;
        let hit = (0..=kmax).any(|k| xl[..q] == yl[k..k + q])
            || (0..=lmax).any(|l| xl[l..l + q] == yl[..q]);
        if hit {
            removed.push(i);
        } else {
            kept.push((w.clone(), *nx));
        }
    }
    let removed_ln = if removed.is_empty() {
        f64::NEG_INFINITY
    } else {
        (removed.len() as f64).ln()
    };
    Ok(SieveOutcome {
        kept: SeparatedSet {
            elements: kept,
            scale: g.scale,
        },
        removed,
        removed_ln,
        bound_ln: (1.0 - delta / 2.0).sqrt() * entropy * n as f64,
    })
}
