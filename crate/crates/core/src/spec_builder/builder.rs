//! Construction of admissible simple specifications above a given entropy.

use num_bigint::BigUint;
use num_traits::Zero;

use super::admissible::{marker_meets, verify_admissible};
use super::certificate::Certificate;
use super::elements::element_automaton;
use super::marker::find_marker;
use super::sieve::{marker_exclusions, point_letters, sieve_exclusions, sieve_len};
use super::spec::{Element, ElementSet, RegularPart, Specification};
use crate::error::{Error, Result};
use crate::metric::{entropy, Scale};
use crate::shift::{Sft, Word};
use crate::spec_props::SublinearL;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub delta: f64,
    /// Smallest `n_0` tried.
    pub n0_min: usize,
    /// Largest `n_0` the parameter search may reach.
    pub n0_cap: usize,
    /// Keep only the first elements (lexicographically), for small specs.
    pub max_elements: Option<usize>,
    /// Largest automaton layer allowed.
    pub state_cap: usize,
    /// Times `n_0` is doubled after an entropy shortfall.
    pub doublings: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            delta: 0.1,
            n0_min: 16,
            n0_cap: 1 << 14,
            max_elements: None,
            state_cap: 200_000,
            doublings: 4,
        }
    }
}

/// `n_0`, `m`, `l` for a given `L` and `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parameters {
    pub n0: usize,
    pub m: usize,
    pub l: usize,
}

fn violated(big_l: &SublinearL, delta: f64, n0: usize) -> Option<String> {
    let l = big_l.at(n0 + 1);
    let m = (1.5 * delta * n0 as f64 + 1e-9).floor() as usize;
    if 8.0 * l as f64 >= delta * n0 as f64 {
        return Some(format!("L(n0+1)/n0 = {l}/{n0} not below delta/8 = {}", delta / 8.0));
    }
    if m < 8 {
        return Some(format!("m = floor(3 delta n0 / 2) = {m} below 8"));
    }
    if 12 * l >= m {
        return Some(format!("12 l = {} not below m = {m}", 12 * l));
    }
    if m >= n0 {
        return Some(format!("m = {m} not below n0 = {n0}"));
    }
    None
}

/// Least `n_0 >= max(n0_min, 16)` with `L(n_0+1)/n_0 < delta/8`,
/// `m = floor(3 delta n_0 / 2) >= 8` and `12 l < m < n_0`, `l = L(n_0+1)`.
pub fn choose_parameters(big_l: &SublinearL, delta: f64, n0_min: usize, n0_cap: usize) -> Result<Parameters> {
    if !(delta > 0.0 && delta < 2.0 / 3.0) {
        return Err(Error::InfeasibleParameters(format!("delta = {delta} outside (0, 2/3)")));
    }
    let start = n0_min.max(16);
    for n0 in start..=n0_cap.max(start) {
        if violated(big_l, delta, n0).is_none() {
            return Ok(Parameters {
                n0,
                m: (1.5 * delta * n0 as f64 + 1e-9).floor() as usize,
                l: big_l.at(n0 + 1),
            });
        }
    }
    Err(Error::InfeasibleParameters(
        violated(big_l, delta, n0_cap.max(start)).unwrap_or_default(),
    ))
}

/// Counts gathered while building.
#[derive(Clone, Debug, PartialEq)]
pub struct BuildReport {
    pub params: Parameters,
    pub scale: Scale,
    /// `#G`: canonical points, one per allowed `n_0`-word.
    pub separated: BigUint,
    /// `#F`: removed by the sieve.
    pub sieved: BigUint,
    /// `ln #F` and the bound `sqrt(1 - delta/2) h n_0`.
    pub sieved_ln: f64,
    pub sieve_bound_ln: f64,
    /// Removed after the sieve for meeting the marker ball.
    pub marker_removed: BigUint,
    /// Rank (among survivors) of the element lengthened to `n_0 + 1`.
    pub z_rank: BigUint,
    pub entropy: f64,
    pub attempts: usize,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub spec: Specification,
    pub report: BuildReport,
    pub admissibility: Certificate,
}

fn marker_element(x: &Sft, ball: &Word) -> Result<Element> {
    let reach = (-ball.offset) as usize;
    let letters = point_letters(x, ball, ball.offset, ball.len() + 1).ok_or(Error::NotAWord)?;
    Element::new(ball.len() - 2 * reach, letters, reach)
}

/// One build at fixed parameters.
pub fn build_at(
    x: &Sft,
    big_l: &SublinearL,
    scale: Scale,
    params: Parameters,
    opts: &BuildOptions,
) -> Result<(Specification, BuildReport)> {
    let Parameters { n0, m, l } = params;
    let reach = scale.reach();
    let reach2 = scale.times_clamped(2).reach();
    let h = entropy(x);

    let ball = find_marker(x, m, scale)?;
    let marker = marker_element(x, &ball)?;

    let kmax = (opts.delta * n0 as f64 + 1e-9).floor() as usize;
    let ylen = kmax + sieve_len(opts.delta, n0) + 2 * reach2;
    let y = point_letters(x, &ball, -(reach2 as i64), ylen).ok_or(Error::NotAWord)?;
    let sieve = sieve_exclusions(&y, opts.delta, n0, reach, reach2)?;
    let sieved_only = element_automaton(x, n0, reach, &sieve, opts.state_cap)?;
    let mut all = sieve.clone();
    all.extend(marker_exclusions(marker.ball_window(), m, n0, reach));
    let dfa = element_automaton(x, n0, reach, &all, opts.state_cap)?;

    let separated = x.count_words(n0);
    let sieved = &separated - sieved_only.count();
    let marker_removed = sieved_only.count() - dfa.count();

    // z: least survivor that also works with N = n0 + 1
    let mut z = None;
    let total = dfa.count();
    let mut r = BigUint::zero();
    while r < total && r < BigUint::from(4096u32) {
        let w = dfa.unrank(&r)?;
        let key = &w[reach..reach + n0 + 1];
        if let Some(e) = Element::canonical(x, key, reach) {
            if marker_meets(x, marker.ball_window(), m, &e, reach).is_none() {
                z = Some((r.clone(), e));
                break;
            }
        }
        r += 1u32;
    }
    let (z_rank, z) = z.ok_or_else(|| Error::EntropyShortfall(format!("no element survives at n0 = {n0}")))?;

    let elements = match opts.max_elements {
        Some(cap) => {
            let mut list = vec![z];
            let mut r = BigUint::zero();
            while list.len() < cap && r < total {
                if r != z_rank {
                    list.push(Element {
                        n: n0,
                        window: dfa.unrank(&r)?,
                    });
                }
                r += 1u32;
            }
            ElementSet::explicit(reach, list)
        }
        None => ElementSet {
            reach,
            regular: Some(RegularPart {
                dfa,
                n: n0,
                excluded: vec![z_rank.clone()],
            }),
            explicit: vec![z],
        },
    };
    let spec = Specification {
        target: x.clone(),
        scale,
        marker,
        l,
        big_l: big_l.clone(),
        elements,
        dense: None,
    };
    let report = BuildReport {
        params,
        scale,
        separated,
        sieved_ln: if sieved.is_zero() { f64::NEG_INFINITY } else { crate::metric::ln_big(&sieved) },
        sieved,
        sieve_bound_ln: (1.0 - opts.delta / 2.0).sqrt() * h * n0 as f64,
        marker_removed,
        z_rank,
        entropy: spec.entropy(),
        attempts: 1,
    };
    Ok((spec, report))
}

/// An admissible simple specification over `x` with entropy above `alpha`.
pub fn build_simple_spec(
    x: &Sft,
    alpha: f64,
    big_l: &SublinearL,
    scale: Scale,
    opts: &BuildOptions,
) -> Result<Built> {
    let h = entropy(x);
    if alpha.is_nan() || alpha <= 0.0 || alpha >= h {
        return Err(Error::InfeasibleParameters(format!(
            "alpha = {alpha} must lie in (0, h_top) = (0, {h:.6})"
        )));
    }
    let mut n0_min = opts.n0_min;
    let mut last = String::new();
    for attempt in 1..=opts.doublings + 1 {
        let params = choose_parameters(big_l, opts.delta, n0_min, opts.n0_cap)?;
        let (spec, mut report) = match build_at(x, big_l, scale, params, opts) {
            Ok(v) => v,
            Err(Error::EntropyShortfall(msg)) => {
                last = msg;
                n0_min = params.n0 * 2;
                continue;
            }
            Err(e) => return Err(e),
        };
        report.attempts = attempt;
        if report.entropy > alpha {
            let admissibility = verify_admissible(&spec);
            return Ok(Built {
                spec,
                report,
                admissibility,
            });
        }
        last = format!(
            "entropy {:.6} not above alpha = {alpha} at n0 = {}",
            report.entropy, params.n0
        );
        if opts.max_elements.is_some() {
            // a longer n_0 only lowers the entropy of a capped set
            break;
        }
        n0_min = params.n0 * 2;
    }
    Err(Error::EntropyShortfall(last))
}
