//! Counting and ranking concatenations of generating words.
//!
//! A family lists generating words by length. Three counts are kept up to a
//! horizon `t`:
//!
//! * `seq(t)`: sequences of whole words of total length `t`;
//! * `hub(t)`: paths of length `t` leaving the hub of the flower graph, the
//!   last petal possibly unfinished (read backwards, paths arriving at it);
//! * `paths(t)`: paths of length `t` from any vertex, an upper bound on the
//!   number of words of length `t`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Family {
    pub lens: Vec<usize>,
    seq: Vec<BigUint>,
    hub: Vec<BigUint>,
}

impl Family {
    pub fn new(lens: Vec<usize>, horizon: usize) -> Family {
        assert!(lens.iter().all(|&n| n > 0), "empty generating word");
        let mut seq = vec![BigUint::one()];
        let mut hub = vec![BigUint::one()];
        for t in 1..=horizon {
            let mut s = BigUint::zero();
            let mut h = BigUint::zero();
            for &n in &lens {
                if n <= t {
                    s += &seq[t - n];
                }
                if t <= n {
                    h += 1u32;
                } else {
                    h += &hub[t - n];
                }
            }
            seq.push(s);
            hub.push(h);
        }
        Family { lens, seq, hub }
    }

    pub fn horizon(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn min_len(&self) -> usize {
        self.lens.iter().copied().min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.lens.iter().copied().max().unwrap_or(0)
    }

    pub fn seq(&self, t: usize) -> &BigUint {
        &self.seq[t]
    }

    pub fn hub(&self, t: usize) -> &BigUint {
        &self.hub[t]
    }

    pub fn paths(&self, t: usize) -> BigUint {
        if t == 0 {
            return BigUint::one();
        }
        let mut total = BigUint::zero();
        for &n in &self.lens {
            for rest in 1..=n {
                if t <= rest {
                    total += 1u32;
                } else {
                    total += &self.hub[t - rest];
                }
            }
        }
        total
    }

    fn hub_branch(&self, rem: usize, w: usize) -> BigUint {
        if rem <= self.lens[w] {
            BigUint::one()
        } else {
            self.hub[rem - self.lens[w]].clone()
        }
    }

    /// Rank of a hub path of length `t`, given by its petals in order.
    pub fn rank_hub(&self, path: &[usize], t: usize) -> Result<BigUint> {
        let mut r = BigUint::zero();
        let mut rem = t;
        for (k, &w) in path.iter().enumerate() {
            if rem == 0 || w >= self.lens.len() {
                return Err(Error::RankOverflow(format!("path does not have length {t}")));
            }
            for v in 0..w {
                r += self.hub_branch(rem, v);
            }
            if rem <= self.lens[w] {
                if k + 1 != path.len() {
                    return Err(Error::RankOverflow(format!("path runs past length {t}")));
                }
                return Ok(r);
            }
            rem -= self.lens[w];
        }
        if rem == 0 {
            Ok(r)
        } else {
            Err(Error::RankOverflow(format!("path shorter than {t}")))
        }
    }

    pub fn unrank_hub(&self, rank: &BigUint, t: usize) -> Result<Vec<usize>> {
        if rank >= &self.hub[t] {
            return Err(Error::RankOverflow(format!("hub rank {rank} of length {t}")));
        }
        let mut r = rank.clone();
        let mut rem = t;
        let mut path = Vec::new();
        while rem > 0 {
            let mut chosen = None;
            for w in 0..self.lens.len() {
                let c = self.hub_branch(rem, w);
                if r < c {
                    chosen = Some(w);
                    break;
                }
                r -= c;
            }
            let w = chosen.expect("rank below the count");
            path.push(w);
            rem = rem.saturating_sub(self.lens[w]);
        }
        Ok(path)
    }

    pub fn rank_seq(&self, words: &[usize]) -> Result<BigUint> {
        let t: usize = words.iter().map(|&w| self.lens[w]).sum();
        let mut rem = t;
        let mut r = BigUint::zero();
        for &w in words {
            for v in 0..w {
                if self.lens[v] <= rem {
                    r += &self.seq[rem - self.lens[v]];
                }
            }
            rem -= self.lens[w];
        }
        Ok(r)
    }

    pub fn unrank_seq(&self, rank: &BigUint, t: usize) -> Result<Vec<usize>> {
        if rank >= &self.seq[t] {
            return Err(Error::RankOverflow(format!("sequence rank {rank} of length {t}")));
        }
        let mut r = rank.clone();
        let mut rem = t;
        let mut out = Vec::new();
        while rem > 0 {
            let mut chosen = None;
            for w in 0..self.lens.len() {
                if self.lens[w] > rem {
                    continue;
                }
                let c = &self.seq[rem - self.lens[w]];
                if &r < c {
                    chosen = Some(w);
                    break;
                }
                r -= c;
            }
            let w = chosen.expect("rank below the count");
            out.push(w);
            rem -= self.lens[w];
        }
        Ok(out)
    }
}
