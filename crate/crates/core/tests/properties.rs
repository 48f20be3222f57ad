use num_bigint::BigUint;
use proptest::prelude::*;

use shiftspec::embedder::{delta_nonempty, DeltaConstraint};
use shiftspec::metric::{entropy, growth_entropy, DynBall, Pattern, Scale};
use shiftspec::multiscale::{tower_membership, Family, ScaleBudget};
use shiftspec::shift::text::parse_sft;
use shiftspec::shift::{Alphabet, BlockCode, MixingStatus, Sft, Symbol, Word};
use shiftspec::spec_props::coded::synchronizer_counterexample;
use shiftspec::spec_props::{find_synchronizer, weak_spec_gap, SublinearL};

fn sft_strategy() -> impl Strategy<Value = Sft> {
    (2usize..=3)
        .prop_flat_map(|k| {
            let word = prop::collection::vec(0..k as u16, 1..=3);
            (Just(k), prop::collection::vec(word, 0..4))
        })
        .prop_filter_map("empty language", |(k, words)| {
            let forbidden = words.into_iter().map(|w| w.into_iter().map(Symbol).collect()).collect();
            Sft::from_forbidden(Alphabet::numeric(k), forbidden).ok()
        })
}

fn mixing_strategy() -> impl Strategy<Value = Sft> {
    sft_strategy().prop_filter("not mixing", |x| matches!(x.mixing_status(), MixingStatus::Mixing { .. }))
}

fn reachable(x: &Sft, from: usize, len: usize) -> Vec<bool> {
    let mut at = vec![false; x.vertex_count()];
    at[from] = true;
    for _ in 0..len {
        let mut next = vec![false; at.len()];
        for (v, _) in at.iter().enumerate().filter(|(_, &b)| b) {
            for &(_, w) in x.successors(v) {
                next[w] = true;
            }
        }
        at = next;
    }
    at
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counting_matches_enumeration(x in sft_strategy()) {
        for n in 0..=8 {
            let words = x.enumerate_words(n).unwrap();
            prop_assert_eq!(x.count_words(n), BigUint::from(words.len()));
            for (i, w) in words.iter().enumerate() {
                prop_assert_eq!(x.rank_word(w).unwrap(), BigUint::from(i));
                prop_assert_eq!(&x.unrank_word(n, &BigUint::from(i)).unwrap(), w);
            }
        }
    }

    #[test]
    fn growth_bounds_entropy(x in sft_strategy()) {
        let h = entropy(&x);
        for n in 1..=64 {
            prop_assert!(growth_entropy(&x, n) >= h - 1e-9);
        }
    }

    #[test]
    fn normalization_is_idempotent(x in sft_strategy()) {
        let y = Sft::from_forbidden(x.alphabet().clone(), x.induced_forbidden()).unwrap();
        for n in 0..=8 {
            prop_assert_eq!(x.count_words(n), y.count_words(n));
        }
        let z = parse_sft(&x.to_text()).unwrap();
        for n in 0..=6 {
            prop_assert_eq!(x.enumerate_words(n).unwrap(), z.enumerate_words(n).unwrap());
        }
    }

    #[test]
    fn mixing_gap_gives_every_length(x in mixing_strategy()) {
        let MixingStatus::Mixing { gap } = x.mixing_status() else { unreachable!() };
        prop_assume!(gap <= 16);
        for from in 0..x.vertex_count() {
            for len in gap..gap + 4 {
                prop_assert!(reachable(&x, from, len).iter().all(|&b| b));
            }
        }
    }

    #[test]
    fn synchronizer_law(x in mixing_strategy()) {
        let u = find_synchronizer(&x).unwrap();
        prop_assert!(synchronizer_counterexample(&x, &u, x.memory() + 3).is_none());
    }

    #[test]
    fn gluing_words_at_every_length(x in mixing_strategy()) {
        let g = weak_spec_gap(&x).unwrap();
        let m = x.memory();
        for len in g..=g + m + 4 {
            for a in 0..x.vertex_count() {
                for b in 0..x.vertex_count() {
                    // u w v with u ending in a and v starting with b
                    prop_assert!(x.connecting_word(a, b, len + m).is_some(), "{a} -> {b} at {len}");
                }
            }
        }
    }

    #[test]
    fn shift_commutes_with_block_code(w in prop::collection::vec(0u16..2, 3..40), by in -5i64..5) {
        let x = Sft::full_shift(2);
        let f = BlockCode::from_fn(x.clone(), x, 1, 0, |b| Symbol((b[0].0 + b[2].0) % 2)).unwrap();
        let w = Word::at(w.into_iter().map(Symbol).collect(), 3);
        let a = f.apply(&w.shifted(by)).unwrap();
        let b = f.apply(&w).unwrap().shifted(by);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn finer_balls_are_smaller(w in prop::collection::vec(0u16..2, 30), p in prop::collection::vec(0u16..2, 30), r in 1u32..5, n in 1usize..8) {
        let c = Word::at(w.into_iter().map(Symbol).collect(), -12);
        let pt = Word::at(p.into_iter().map(Symbol).collect(), -12);
        let coarse = DynBall::new(&c, n, Scale::new(r).unwrap()).unwrap();
        let fine = DynBall::new(&c, n, Scale::new(r + 1).unwrap()).unwrap();
        prop_assert!(!fine.contains(&pt) || coarse.contains(&pt));
    }

    #[test]
    fn fewer_constraints_stay_nonempty(
        fixed in prop::collection::vec(prop::option::of(0u16..2), 1..20),
        drop in prop::collection::vec(any::<bool>(), 20),
    ) {
        let x = Sft::golden_mean();
        let letters: Vec<Option<Symbol>> = fixed.iter().map(|a| a.map(Symbol)).collect();
        let looser: Vec<Option<Symbol>> = letters.iter().zip(&drop).map(|(&a, &d)| if d { None } else { a }).collect();
        let c = DeltaConstraint::from_letters(0, &letters);
        let d = DeltaConstraint::from_letters(0, &looser);
        if delta_nonempty(&x, &c).is_some() {
            prop_assert!(delta_nonempty(&x, &d).is_some());
        }
    }

    #[test]
    fn tables_must_not_decrease(v in prop::collection::vec(1usize..20, 1..12)) {
        let sorted = v.windows(2).all(|w| w[0] <= w[1]);
        let t = SublinearL::table(v.clone());
        prop_assert_eq!(t.is_ok(), sorted);
        if let Ok(l) = t {
            prop_assert_eq!(l.floor(), *v.iter().min().unwrap());
            for n in 0..30 {
                prop_assert!(l.at(n) <= l.at(n + 1));
            }
        }
    }

    #[test]
    fn hub_paths_round_trip(lens in prop::collection::btree_set(2usize..9, 1..4), t in 0usize..30) {
        let f = Family::new(lens.into_iter().collect(), 40);
        let total = f.hub(t).clone();
        let cap = total.clone().min(BigUint::from(50u32));
        let mut r = BigUint::from(0u32);
        while r < cap {
            let path = f.unrank_hub(&r, t).unwrap();
            prop_assert_eq!(f.rank_hub(&path, t).unwrap(), r.clone());
            r += 1u32;
        }
        prop_assert!(f.unrank_hub(&total, t).is_err());
    }

    #[test]
    fn built_towers_are_members(counts in prop::collection::vec(any::<bool>(), 2..8), n in 2usize..6) {
        // level-1 symbols separated by n or n+1 zeros
        let mut x = vec![1u8];
        for &longer in &counts {
            x.extend(std::iter::repeat_n(0u8, n + longer as usize));
            x.push(1);
        }
        prop_assert!(tower_membership(&x, &[n], 1));
        x.insert(1, 1);
        prop_assert!(!tower_membership(&x, &[n], 1));
    }

    #[test]
    fn radii_stay_in_budget(r0 in 1u32..8, depth in 1usize..8) {
        let b = ScaleBudget::new(r0, depth).unwrap();
        prop_assert!(b.consistent());
        for k in 0..=depth {
            prop_assert!(b.eps_second_units(k) <= b.eps_prime_units(k));
            prop_assert!(b.eps_prime(k).epsilon() <= b.as_f64(b.eps_prime_units(k)) + 1e-15);
        }
    }

    #[test]
    fn patterns_meet_symmetrically(a in prop::collection::vec(prop::option::of(0u16..2), 0..12), b in prop::collection::vec(prop::option::of(0u16..2), 0..12), s in -6i64..6) {
        let p = Pattern::new(0, a.into_iter().map(|v| v.map(Symbol)).collect());
        let q = Pattern::new(s, b.into_iter().map(|v| v.map(Symbol)).collect());
        match (p.meet(&q), q.meet(&p)) {
            (Some(u), Some(v)) => {
                for k in -8..20 {
                    prop_assert_eq!(u.get(k), v.get(k));
                }
            }
            (u, v) => prop_assert_eq!(u.is_none(), v.is_none()),
        }
        prop_assert_eq!(p.meet(&q).is_none(), p.clash(&q).is_some());
    }
}
