use crate::error::{Error, Result};
use crate::metric::{DynBall, Pattern, Scale};
use crate::shift::{Sft, Symbol, Word};

const SEARCH_BUDGET: usize = 200_000;

/// First shift `0 < k <= max_shift` at which the ball cylinder `window`
/// meets its own `k`-shift inside `x`.
pub fn self_overlap(x: &Sft, window: &Word, max_shift: usize) -> Option<usize> {
    let p = Pattern::from_word(window);
    (1..=max_shift).find(|&k| match p.meet(&p.shifted(k as i64)) {
        None => false,
        Some(q) => q.realize(x).is_some(),
    })
}

fn window_len(m: usize, scale: Scale) -> usize {
    m + 2 * scale.reach()
}

fn accept(x: &Sft, symbols: &[Symbol], m: usize, scale: Scale) -> Option<Word> {
    if !x.is_allowed(symbols) {
        return None;
    }
    let w = Word::at(symbols.to_vec(), -(scale.reach() as i64));
    self_overlap(x, &w, 3 * m / 4).is_none().then_some(w)
}

/// A word whose `(m, eps)`-ball has no self-overlap at shifts
/// `1..=floor(3m/4)`, returned as the ball window.
///
/// Tries `p c c c ...` for short cycles `c` and short prefixes `p` first,
/// then falls back to a bounded lexicographic search.
pub fn find_marker(x: &Sft, m: usize, scale: Scale) -> Result<Word> {
    if m < 4 {
        return Err(Error::OutOfRange(format!("marker length {m} below 4")));
    }
    let len = window_len(m, scale);
    for clen in 1..=4usize {
        let cycles = x.enumerate_words(clen)?;
        for c in &cycles {
            let rep: Vec<Symbol> = c.symbols.iter().cycle().take(clen * (x.memory() + 2)).cloned().collect();
            if !x.is_allowed(&rep) {
                continue;
            }
            for plen in 1..=4usize {
                for p in x.enumerate_words(plen)? {
                    let mut w = p.symbols.clone();
                    w.extend(c.symbols.iter().cycle().take(len.saturating_sub(plen)));
                    w.truncate(len);
                    if let Some(found) = accept(x, &w, m, scale) {
                        return Ok(found);
                    }
                }
            }
        }
    }
    let mut budget = SEARCH_BUDGET;
    let mut stack: Vec<Vec<Symbol>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if budget == 0 {
            break;
        }
        budget -= 1;
        if w.len() == len {
            if let Some(found) = accept(x, &w, m, scale) {
                return Ok(found);
            }
            continue;
        }
        for s in x.alphabet().symbols().rev() {
            let mut n = w.clone();
            n.push(s);
            if x.is_allowed(&n) {
                stack.push(n);
            }
        }
    }
    Err(Error::NoMarkerFound(m))
}

/// Ball of the marker point, `B(o, m, eps)`.
pub fn marker_ball(window: &Word, m: usize, scale: Scale) -> Result<DynBall> {
    DynBall::new(window, m, scale)
}
