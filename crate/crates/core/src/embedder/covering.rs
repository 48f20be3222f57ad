use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::shift::{Sft, Symbol, Word};

/// Largest `#L_j` accepted.
const COVER_LIMIT: u64 = 1 << 14;

/// A word containing every allowed word of length `j`, grown greedily: from
/// the current end, the shortest allowed continuation that ends in a word not
/// yet covered, preferring larger letters among equally short ones.
pub fn find_covering_word(x: &Sft, j: usize) -> Result<Word> {
    if !x.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    if j == 0 {
        return Ok(Word::new(Vec::new()));
    }
    let wanted: BTreeSet<Vec<Symbol>> = x
        .enumerate_words_limited(j, COVER_LIMIT)?
        .into_iter()
        .map(|w| w.symbols)
        .collect();
    let k = j.max(x.memory());
    let mut word = x.least_matching(&vec![None; k]).ok_or(Error::EmptyLanguage)?;
    let mut covered: BTreeSet<Vec<Symbol>> = word.windows(j).map(<[Symbol]>::to_vec).collect();
    while covered.len() < wanted.len() {
        let start = word[word.len() - k..].to_vec();
        let mut prev: HashMap<Vec<Symbol>, (Vec<Symbol>, Symbol)> = HashMap::new();
        let mut queue = VecDeque::from([start.clone()]);
        let mut found = None;
        'bfs: while let Some(s) = queue.pop_front() {
            let tail = x.terminal_vertex(&s).ok_or(Error::NotAWord)?;
            for &(a, _) in x.successors(tail).iter().rev() {
                let mut t = s[1..].to_vec();
                t.push(a);
                if t == start || prev.contains_key(&t) {
                    continue;
                }
                prev.insert(t.clone(), (s.clone(), a));
                if !covered.contains(&t[k - j..]) {
                    found = Some(t);
                    break 'bfs;
                }
                queue.push_back(t);
            }
        }
        let mut t = found.ok_or(Error::NotIrreducible)?;
        let mut path = Vec::new();
        while t != start {
            let (s, a) = prev[&t].clone();
            path.push(a);
            t = s;
        }
        path.reverse();
        word.extend(path);
        covered.extend(word.windows(j).map(<[Symbol]>::to_vec));
    }
    debug_assert!(x.is_allowed(&word));
    Ok(Word::new(word))
}
