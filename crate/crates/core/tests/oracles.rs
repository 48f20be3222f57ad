use num_bigint::BigUint;

use shiftspec::metric::{entropy, flower_entropy};
use shiftspec::multiscale::{build_multiscale, MultiscaleOptions};
use shiftspec::shift::text::parse_sft;
use shiftspec::shift::Sft;
use shiftspec::Error;

/// Largest real root of a monic polynomial, by bisection on `[1, 2 max|c|+2]`.
fn largest_root(coeffs: &[f64]) -> f64 {
    let p = |x: f64| coeffs.iter().fold(1.0, |acc, c| acc * x + c);
    let (mut lo, mut hi) = (1.0, 2.0 + 2.0 * coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())));
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if p(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

fn load(text: &str) -> Sft {
    parse_sft(text).unwrap()
}

#[test]
fn perron_roots() {
    // no 111: x^3 - x^2 - x - 1
    let x = load("alphabet: 0 1\nforbid: 111\n");
    assert!((entropy(&x) - largest_root(&[-1.0, -1.0, -1.0]).ln()).abs() < 1e-9);
    // (1,3) run lengths: x^4 - x^2 - x - 1
    let x = load("alphabet: 0 1\nforbid: 11\nforbid: 0000\n");
    assert!((entropy(&x) - largest_root(&[0.0, -1.0, -1.0, -1.0]).ln()).abs() < 1e-9);
    let x = load("alphabet: a b c\nforbid: aa\n");
    // x^2 - 2x - 2
    assert!((entropy(&x) - (1.0 + 3f64.sqrt()).ln()).abs() < 1e-9);
}

#[test]
fn golden_counts_are_fibonacci() {
    let x = Sft::golden_mean();
    let (mut a, mut b) = (BigUint::from(1u32), BigUint::from(2u32));
    for n in 1..=90 {
        assert_eq!(x.count_words(n), b, "n = {n}");
        let c = &a + &b;
        a = b;
        b = c;
    }
}

#[test]
fn flower_of_one_length() {
    // k words of length n: h = ln k / n
    let h = flower_entropy(&[(7, BigUint::from(5u32))]);
    assert!((h - 5f64.ln() / 7.0).abs() < 1e-12);
    // lengths 1 and 2, one each: golden ratio
    let h = flower_entropy(&[(1, BigUint::from(1u32)), (2, BigUint::from(1u32))]);
    assert!((h - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
}

#[test]
fn depth_one_parameters_frozen() {
    let r = build_multiscale(&Sft::full_shift(2), &MultiscaleOptions { windows: 10, ..MultiscaleOptions::default() }).unwrap();
    assert!(r.passed(), "{}", r.render());
    let s = &r.stages[0];
    let p = &s.plan;
    assert_eq!((s.base.n0(), s.base.spec.m(), s.base.spec.l, s.base.p0), (131, 49, 4, 58));
    assert_eq!((s.m(), p.big_l, p.l, p.p, p.n, p.big_p), (380, 6, 6, 953, 87, 1340));
    assert_eq!((p.n_lo, p.n_hi), (16136, 16414));
    assert_eq!((r.ocap[0].ratio.num, r.ocap[0].ratio.den), (8041, 16530));
    assert!((r.budget_sum - 6.0 * 1340.0 / 16136.0).abs() < 1e-12);
}

#[test]
fn depth_two_is_refused() {
    let opts = MultiscaleOptions { depth: 2, windows: 1, ..MultiscaleOptions::default() };
    match build_multiscale(&Sft::full_shift(2), &opts) {
        Err(Error::NoFeasiblePlan(msg)) => assert!(msg.contains("393936"), "{msg}"),
        other => panic!("{other:?}"),
    }
}
