//! Exact verification of the four admissibility conditions.

use super::certificate::{Certificate, CertificateKind};
use super::marker::self_overlap;
use super::spec::{Element, RegularPart, Specification};
use crate::metric::Pattern;
use crate::shift::{Sft, Symbol, Word};

/// Range of `s = -k` for `-2m/3 <= k <= n - 2m/3`: the position of the
/// origin of `x` relative to that of the marker.
pub fn offset_range(m: usize, n: usize) -> (i64, i64) {
    ((2 * m).div_ceil(3) as i64 - n as i64, (2 * m / 3) as i64)
}

fn ball_pattern(window: &[Symbol], origin: i64, reach: usize) -> Pattern {
    Pattern::new(origin - reach as i64, window.iter().map(|&a| Some(a)).collect())
}

/// Some `k` in `[-2m/3, n - 2m/3]` with `B(o, m, eps)` meeting
/// `S^k B(x, n, eps)` inside `x`, together with a common point.
pub fn marker_meets(
    target: &Sft,
    marker_ball: &[Symbol],
    m: usize,
    e: &Element,
    reach: usize,
) -> Option<(i64, Word)> {
    let p = ball_pattern(marker_ball, 0, reach);
    let (lo, hi) = offset_range(m, e.n);
    let ball = e.ball_window();
    (lo..=hi).find_map(|s| {
        // marker index i sits over ball index i - s
        let from = s.max(0);
        let to = (marker_ball.len() as i64).min(s + ball.len() as i64);
        if (from..to).any(|i| marker_ball[i as usize] != ball[(i - s) as usize]) {
            return None;
        }
        let q = ball_pattern(ball, s, reach);
        let w = p.meet(&q)?.realize(target)?;
        Some((-s, w))
    })
}

fn fmt(x: &Sft, w: &[Symbol]) -> String {
    x.alphabet().format(w)
}

/// Two members of `part` with the same ball window, if any.
fn regular_collision(part: &RegularPart) -> Option<(Vec<Symbol>, Vec<Symbol>)> {
    let last = part.dfa.word_len() - 1;
    for s in 0..part.dfa.layer_width(last) as u32 {
        let out = part.dfa.transitions(last, s);
        if out.len() < 2 {
            continue;
        }
        let mut a = part.dfa.least_through(last, s)?;
        let mut b = a.clone();
        a[last] = out[0].0;
        b[last] = out[1].0;
        if part.contains(&a) && part.contains(&b) {
            return Some((a, b));
        }
    }
    None
}

fn item_two(spec: &Specification, cert: &mut Certificate) {
    let x = &spec.target;
    let set = &spec.elements;
    let mut failure: Option<String> = None;
    if let Some(part) = &set.regular {
        if let Some((a, b)) = regular_collision(part) {
            failure = Some(format!("N={} {} ~ {}", part.n, fmt(x, &a), fmt(x, &b)));
        }
        for (i, e) in set.explicit.iter().enumerate() {
            if failure.is_some() || e.n != part.n {
                continue;
            }
            let pat: Vec<Option<Symbol>> = e.ball_window().iter().map(|&a| Some(a)).collect();
            if let Some(w) = part.dfa.least_matching(&pat) {
                if part.contains(&w) {
                    failure = Some(format!(
                        "N={} explicit#{i} {} ~ member {}",
                        e.n,
                        fmt(x, &e.window),
                        fmt(x, &w)
                    ));
                }
            }
        }
    }
    let ex = &set.explicit;
    'outer: for i in 0..ex.len() {
        for j in i + 1..ex.len() {
            if failure.is_some() {
                break 'outer;
            }
            if ex[i].n == ex[j].n && ex[i].ball_window() == ex[j].ball_window() {
                failure = Some(format!(
                    "N={} explicit#{i} {} ~ explicit#{j} {}",
                    ex[i].n,
                    fmt(x, &ex[i].window),
                    fmt(x, &ex[j].window)
                ));
            }
        }
    }
    let classes: Vec<String> = set
        .length_classes()
        .iter()
        .map(|(n, c)| format!("#N={n}: {c}"))
        .collect();
    match failure {
        Some(w) => cert.check("item2", false, w),
        None => cert.check("item2", true, classes.join(", ")),
    }
}

fn item_four(spec: &Specification, cert: &mut Certificate) {
    let x = &spec.target;
    let reach = spec.reach();
    let m = spec.m();
    let marker_ball = spec.marker.ball_window();
    let mem = x.memory() as i64;
    let mut failure: Option<String> = None;
    for (i, e) in spec.elements.explicit.iter().enumerate() {
        if let Some((k, w)) = marker_meets(x, marker_ball, m, e, reach) {
            failure = Some(format!(
                "explicit#{i} {} k={k} common point {} at {}",
                fmt(x, &e.window),
                fmt(x, &w.symbols),
                w.offset
            ));
            break;
        }
    }
    if let (None, Some(part)) = (&failure, &spec.elements.regular) {
        let n = part.n;
        let b = (n + 2 * reach) as i64;
        let plen = marker_ball.len() as i64;
        let (lo, hi) = offset_range(m, n);
        for s in lo..=hi {
            // window index i of x sits under marker index i + s
            let pat: Vec<Option<Symbol>> = (0..b)
                .map(|i| {
                    let j = i + s;
                    (0..plen).contains(&j).then(|| marker_ball[j as usize])
                })
                .collect();
            let Some(cand) = part.dfa.least_matching(&pat) else {
                continue;
            };
            if !part.contains(&cand) {
                continue;
            }
            let overlap = (b.min(plen - s) - 0i64.max(-s)).max(0);
            let e = Element { n, window: cand };
            let q = ball_pattern(e.ball_window(), s, reach);
            let common = ball_pattern(marker_ball, 0, reach).meet(&q).and_then(|p| p.realize(x));
            failure = Some(match common {
                Some(w) => format!(
                    "N={n} {} k={} common point {} at {}",
                    fmt(x, &e.window),
                    -s,
                    fmt(x, &w.symbols),
                    w.offset
                ),
                None if overlap < mem => format!(
                    "N={n} {} k={} undecided: overlap {overlap} below memory",
                    fmt(x, &e.window),
                    -s
                ),
                None => unreachable!("letters agreeing on {overlap} >= memory letters glue"),
            });
            break;
        }
    }
    match failure {
        Some(w) => cert.check("item4", false, w),
        None => cert.check("item4", true, format!("no meeting for k in [-2m/3, N-2m/3], m={m}")),
    }
}

/// Checks the four admissibility conditions exactly.
pub fn verify_admissible(spec: &Specification) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::Admissibility);
    let m = spec.m();
    let l = spec.l;
    cert.param("scale", spec.scale);
    cert.param("m", m);
    cert.param("l", l);
    cert.param("L", &spec.big_l);
    cert.param("#E", spec.elements.count());
    let (n_lo, n_hi) = match (spec.elements.n_min(), spec.elements.n_max()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            cert.check("item1", false, "E is empty");
            return cert;
        }
    };
    cert.param("N_min", n_lo);
    cert.param("N_max", n_hi);
    let ok1 = 12 * l < m && m < n_lo;
    cert.check(
        "item1",
        ok1,
        format!("12l = {} {} m = {m} {} N_min = {n_lo}", 12 * l, if 12 * l < m { "<" } else { ">=" }, if m < n_lo { "<" } else { ">=" }),
    );
    let need = spec.big_l.at(n_hi);
    cert.check("padding", l >= need, format!("l = {l}, L(N_max) = {need}"));

    item_two(spec, &mut cert);

    let max_shift = 3 * m / 4;
    let ball = Word::at(spec.marker.ball_window().to_vec(), -(spec.reach() as i64));
    match self_overlap(&spec.target, &ball, max_shift) {
        Some(k) => cert.check("item3", false, format!("marker overlaps its shift by {k}")),
        None => cert.check("item3", true, format!("no overlap for 0 < k <= {max_shift}")),
    }

    item_four(spec, &mut cert);
    cert
}
