//! Recoding of the prefix `D_1 D_2` and suffix `D_4` of a block into a word
//! of `U''(p)`.

use num_bigint::BigUint;

use super::flower::Family;
use super::plan::u_count;
use crate::error::{Error, Result};

/// A member of `U''(p)`: the last `j` letters of the first `E''` word, then
/// whole `E''` words (indices into the family).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UWord {
    pub j: usize,
    pub words: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Theta {
    pub e: Family,
    pub e2: Family,
    pub p: usize,
    pub head: usize,
    pub l: usize,
    pub u_total: BigUint,
}

impl Theta {
    pub fn new(e: Family, e2: Family, p: usize, head: usize, l: usize) -> Theta {
        let u_total = u_count(&e2, p);
        Theta { e, e2, p, head, l, u_total }
    }

    fn unrank_u(&self, idx: &BigUint) -> Result<UWord> {
        let mut r = idx.clone();
        for j in 0..self.e2.min_len().min(self.p + 1) {
            let c = self.e2.seq(self.p - j);
            if &r < c {
                return Ok(UWord {
                    j,
                    words: self.e2.unrank_seq(&r, self.p - j)?,
                });
            }
            r -= c;
        }
        Err(Error::RankOverflow(format!("index {idx} beyond #U''(p) = {}", self.u_total)))
    }

    fn rank_u(&self, u: &UWord) -> Result<BigUint> {
        if u.j >= self.e2.min_len() {
            return Err(Error::RankOverflow(format!("tail of {} letters", u.j)));
        }
        let len: usize = u.words.iter().map(|&w| self.e2.lens[w]).sum();
        if len + u.j != self.p {
            return Err(Error::LengthMismatch(format!("U'' word of length {} not {}", len + u.j, self.p)));
        }
        let mut r = BigUint::from(0u32);
        for j in 0..u.j {
            r += self.e2.seq(self.p - j);
        }
        Ok(r + self.e2.rank_seq(&u.words)?)
    }

    /// `Theta^{-1}`: `head` is the hub path of `D_1 D_2`, `tail` the path of
    /// `D_4` read from the end.
    pub fn encode(&self, head: &[usize], tail: &[usize]) -> Result<UWord> {
        let a = self.e.rank_hub(head, self.head)?;
        let b = self.e.rank_hub(tail, self.l)?;
        let idx = a * self.e.hub(self.l) + b;
        if idx >= self.u_total {
            return Err(Error::RankOverflow(format!("pair index {idx} beyond #U''(p) = {}", self.u_total)));
        }
        self.unrank_u(&idx)
    }

    pub fn decode(&self, u: &UWord) -> Result<(Vec<usize>, Vec<usize>)> {
        let idx = self.rank_u(u)?;
        let base = self.e.hub(self.l);
        let (a, b) = (&idx / base, &idx % base);
        if a >= *self.e.hub(self.head) {
            return Err(Error::RankOverflow(format!("{idx} is not a pair index")));
        }
        Ok((self.e.unrank_hub(&a, self.head)?, self.e.unrank_hub(&b, self.l)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiscale::plan::{plan_stage, PlanInput};

    fn theta() -> Theta {
        let e = Family::new(vec![10, 11], 600);
        let e2 = Family::new(vec![10, 10, 10, 10, 11, 11, 11, 11], 600);
        let plan = plan_stage(
            &e,
            &e2,
            &PlanInput { k: 1, m: 30, big_l: 2, l: 2, n_prev_max: 5, p_cap: 500, n_cap: 1000 },
        )
        .unwrap();
        Theta::new(e, e2, plan.p, plan.head(), plan.l)
    }

    #[test]
    fn round_trip_and_distinct_suffixes() {
        let t = theta();
        let heads = [0u32, 1, 7, 200].map(|r| t.e.unrank_hub(&BigUint::from(r), t.head).unwrap());
        let mut seen = std::collections::HashSet::new();
        for h in &heads {
            for r in 0..t.e.hub(t.l).to_u32_digits()[0] {
                let tail = t.e.unrank_hub(&BigUint::from(r), t.l).unwrap();
                let u = t.encode(h, &tail).unwrap();
                assert_eq!(t.decode(&u).unwrap(), (h.clone(), tail));
                assert!(seen.insert(u));
            }
        }
    }

    #[test]
    fn decode_rejects_bad_words() {
        let t = theta();
        let bad = UWord { j: t.e2.min_len(), words: vec![] };
        assert!(t.decode(&bad).is_err());
        let short = UWord { j: 0, words: vec![0] };
        assert!(matches!(t.decode(&short), Err(Error::LengthMismatch(_))));
    }
}
