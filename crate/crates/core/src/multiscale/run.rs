//! A whole finite-depth run: base, stages, orbit capacities and the
//! finite-window checks of the limit map.

use std::fmt::Write;

use super::budget::ScaleBudget;
use super::ocap::{ocap_bound, OcapReport};
use super::phi::{evaluate_phi, PhiReport};
use super::stage::{Stage, StageOptions};
use super::stage0::{Base, StageZeroOptions};
use crate::error::{Error, Result};
use crate::shift::Sft;

/// Deepest stage this crate builds.
pub const MAX_DEPTH: usize = 1;

#[derive(Clone, Debug)]
pub struct MultiscaleOptions {
    pub depth: usize,
    pub r0: u32,
    /// Floor on `h(Lambda_0)`.
    pub alpha: f64,
    pub zero: StageZeroOptions,
    pub stage: StageOptions,
    pub windows: usize,
    pub seed: u64,
}

impl Default for MultiscaleOptions {
    fn default() -> Self {
        MultiscaleOptions {
            depth: 1,
            r0: 1,
            alpha: 0.001,
            zero: StageZeroOptions::default(),
            stage: StageOptions::default(),
            windows: 100,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultiscaleReport {
    pub stages: Vec<Stage>,
    pub ocap: Vec<OcapReport>,
    pub phi: Vec<PhiReport>,
    /// `sum_k 6 P_k / N_min_k`.
    pub budget_sum: f64,
}

impl MultiscaleReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.certificate.passed())
            && self.ocap.iter().all(OcapReport::holds)
            && self.phi.iter().all(PhiReport::passed)
            && self.budget_sum < 1.0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let Some(first) = self.stages.first() else {
            return out;
        };
        let base = &first.base;
        let _ = writeln!(out, "stage 0 {}", base.describe());
        let _ = writeln!(out, "stage 0 h(L0) = {:.9} h(L''0) = {:.9}", first.entropy.h0, first.entropy.h2_prev);
        let _ = write!(out, "{}", base.admissibility);
        let _ = write!(out, "{}", base.pairs);
        for (k, s) in self.stages.iter().enumerate() {
            let k = k + 1;
            let p = &s.plan;
            let _ = writeln!(
                out,
                "stage {k} m={} L={} l={} p={} n={} P={} N_min={} N_max={} slack={:.6}",
                s.m(),
                p.big_l,
                p.l,
                p.p,
                p.n,
                p.big_p,
                p.n_lo,
                p.n_hi,
                p.slack_ln()
            );
            let _ = write!(out, "{}", s.certificate);
            if let Some(o) = self.ocap.get(k - 1) {
                let _ = writeln!(
                    out,
                    "ocap {k} exact = {}/{} = {:.6} bound 6P/N_min = {:.6} petals {:?} {}",
                    o.ratio.num,
                    o.ratio.den,
                    o.ratio.value(),
                    o.bound,
                    o.lens,
                    if o.holds() { "pass" } else { "FAIL" }
                );
            }
            if let Some(r) = self.phi.get(k - 1) {
                let _ = writeln!(
                    out,
                    "phi {k} windows={} core={} core_fail={} other={} other_differ={} equivariance={} equivariance_fail={} tower={} {}",
                    r.windows,
                    r.core_checked,
                    r.core_failures,
                    r.other_checked,
                    r.other_disagree,
                    r.equivariance_checked,
                    r.equivariance_failures,
                    r.tower_ok,
                    if r.passed() { "pass" } else { "FAIL" }
                );
                if let Some(w) = &r.first_failure {
                    let _ = writeln!(out, "phi {k} first failure: {w}");
                }
            }
        }
        let _ = writeln!(out, "budget sum 6P_k/N_min_k = {:.6} < 1: {}", self.budget_sum, self.budget_sum < 1.0);
        out
    }
}

/// Builds stages `0..=depth` over `x` and checks them.
pub fn build_multiscale(x: &Sft, opts: &MultiscaleOptions) -> Result<MultiscaleReport> {
    if opts.depth == 0 {
        return Err(Error::OutOfRange("depth must be at least 1".into()));
    }
    let budget = ScaleBudget::new(opts.r0, opts.depth.max(MAX_DEPTH))?;
    let base = Base::build(x, budget, &opts.zero)?;
    let h0 = base.entropy_of(&base.e);
    if h0 <= opts.alpha {
        return Err(Error::EntropyShortfall(format!("h(L0) = {h0:.6} not above alpha = {}", opts.alpha)));
    }
    let stage = Stage::build(base, &opts.stage)?;
    if opts.depth > MAX_DEPTH {
        // stage 2 needs P_2 >= N1_max and N2_min > 24 P_2
        let n = 24 * stage.plan.n_hi;
        return Err(Error::NoFeasiblePlan(format!(
            "depth {} > {MAX_DEPTH}: stage-2 generating words would exceed {n} letters",
            opts.depth
        )));
    }
    let lens: Vec<usize> = stage.block_counts(&stage.base.e).iter().map(|c| c.0).collect();
    let ocap = ocap_bound(&lens, stage.plan.big_p, stage.plan.n_lo).ok_or(Error::EmptyLanguage)?;
    let phi = evaluate_phi(&stage, opts.windows, opts.seed)?;
    let budget_sum = 6.0 * stage.plan.big_p as f64 / stage.plan.n_lo as f64;
    Ok(MultiscaleReport {
        stages: vec![stage],
        ocap: vec![ocap],
        phi: vec![phi],
        budget_sum,
    })
}
