//! Choice of `p_k` and `n_k` for one stage.

use num_bigint::BigUint;
use num_traits::Zero;

use super::flower::Family;
use crate::error::{Error, Result};
use crate::metric::ln_big;

#[derive(Clone, Debug)]
pub struct PlanInput {
    /// Stage index `k >= 1`.
    pub k: usize,
    /// Marker block length `m_k`; the marker run has `m_k + 1` letters.
    pub m: usize,
    pub big_l: usize,
    pub l: usize,
    /// `N` max over the previous level.
    pub n_prev_max: usize,
    pub p_cap: usize,
    pub n_cap: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StagePlan {
    pub m: usize,
    pub big_l: usize,
    pub l: usize,
    pub p: usize,
    pub n: usize,
    /// `P_k = max(m_k + 1 + L(m_k) + p_k, l_k)`.
    pub big_p: usize,
    pub n_lo: usize,
    pub n_hi: usize,
    /// `ln #U''(p)` and `ln (#W(a) #W(l))`.
    pub u_ln: f64,
    pub w_ln: f64,
    pub u_count: BigUint,
    pub w_count: BigUint,
}

impl StagePlan {
    /// Length of the recoded prefix `D_1 D_2`.
    pub fn head(&self) -> usize {
        self.m + 1 + self.big_l + self.p
    }

    pub fn slack_ln(&self) -> f64 {
        self.u_ln - self.w_ln
    }

    /// Letters of a generating word outside the element core.
    pub fn overhead(&self) -> usize {
        self.m + 1 + self.big_l + self.l
    }
}

/// `#U''(p)`: words `t s` with `t` a proper tail (`j < g` letters) of a fixed
/// generating word and `s` whole words of total length `p - j`.
pub fn u_count(e2: &Family, p: usize) -> BigUint {
    let g = e2.min_len();
    let mut total = BigUint::zero();
    for j in 0..g.min(p + 1) {
        total += e2.seq(p - j);
    }
    total
}

/// Least `p` with `#U''(p) >= #W(m+1+L+p) #W(l)`, then least `n` with
/// `P >= m + L + l + N_prev`, `6 P / N_min < 2^-k` and `12 l < m < N_min`.
pub fn plan_stage(e: &Family, e2: &Family, input: &PlanInput) -> Result<StagePlan> {
    let PlanInput { k, m, big_l, l, n_prev_max, p_cap, n_cap } = *input;
    let k = k.max(1) as u32;
    if 12 * l >= m {
        return Err(Error::NoFeasiblePlan(format!("12 l = {} not below m = {m}", 12 * l)));
    }
    let offset = m + 1 + big_l;
    if e.horizon() < offset + p_cap || e2.horizon() < p_cap || e.horizon() < l {
        return Err(Error::NoFeasiblePlan("family horizon below the search range".into()));
    }
    let wl = e.paths(l);
    let p_floor = (l + n_prev_max).saturating_sub(1);
    let mut found = None;
    for p in p_floor.max(1)..=p_cap {
        let u = u_count(e2, p);
        let w = e.paths(offset + p) * &wl;
        if u >= w {
            found = Some((p, u, w));
            break;
        }
    }
    let (p, u, w) = found.ok_or_else(|| {
        Error::NoFeasiblePlan(format!(
            "counting inequality fails for every p <= {p_cap} (h'' = {:.6}, h = {:.6})",
            growth(e2, p_cap),
            growth(e, p_cap)
        ))
    })?;
    let big_p = (offset + p).max(l);
    let over = offset + l;
    for n in 2..=n_cap {
        let n_lo = (n * e.min_len()).saturating_sub(over + 1);
        let n_hi = ((n + 1) * e.max_len()).saturating_sub(over + 1);
        // 6 P / N_min < 2^-k, which implies P / N_min < 2^-(k+1)
        if 6 * (big_p << k) < n_lo && m < n_lo && n_lo + 1 > p {
            return Ok(StagePlan {
                m,
                big_l,
                l,
                p,
                n,
                big_p,
                n_lo,
                n_hi,
                u_ln: ln_big(&u),
                w_ln: ln_big(&w),
                u_count: u,
                w_count: w,
            });
        }
    }
    Err(Error::NoFeasiblePlan(format!("P = {big_p} needs n above {n_cap}")))
}

fn growth(f: &Family, t: usize) -> f64 {
    let v = f.seq(t);
    if v.is_zero() {
        0.0
    } else {
        ln_big(v) / t as f64
    }
}
