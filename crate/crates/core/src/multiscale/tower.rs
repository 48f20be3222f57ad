//! Tower subshifts `Z^k` over `{0, ..., k}`.

/// `eta_k`: letters above `k` become `k`.
pub fn eta(x: &[u8], k: u8) -> Vec<u8> {
    x.iter().map(|&a| a.min(k)).collect()
}

/// Whether the finite window `x` is a word of `Z^k` for `n = (n_1, ...)`.
///
/// Between two consecutive occurrences `p < q` of `k`, the number of
/// `k - 1` in `p ..= q-1` must be `n_k` or `n_k + 1`, and recursively for
/// `eta_{k-1}(x)`. Stretches before the first or after the last `k` are
/// partial and only bounded above.
pub fn tower_membership(x: &[u8], n: &[usize], k: usize) -> bool {
    if x.iter().any(|&a| a as usize > k) {
        return false;
    }
    if k == 0 {
        return true;
    }
    let Some(&nk) = n.get(k - 1) else { return false };
    let top = k as u8;
    let below = top - 1;
    let marks: Vec<usize> = (0..x.len()).filter(|&i| x[i] == top).collect();
    let count = |lo: usize, hi: usize| x[lo..hi].iter().filter(|&&a| a == below).count();
    for w in marks.windows(2) {
        let c = count(w[0], w[1]);
        if c != nk && c != nk + 1 {
            return false;
        }
    }
    let (first, last) = match (marks.first(), marks.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => (x.len(), x.len()),
    };
    if count(0, first) > nk + 1 || count(last, x.len()) > nk + 1 {
        return false;
    }
    tower_membership(&eta(x, below), n, k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn gaps_of_three_and_four() {
        assert!(tower_membership(&parse("1000100001"), &[3], 1));
        assert!(!tower_membership(&parse("10000010"), &[3], 1));
        assert!(!tower_membership(&parse("10010"), &[3], 1));
        // partial ends
        assert!(tower_membership(&parse("0010001"), &[3], 1));
        assert!(!tower_membership(&parse("000001"), &[3], 1));
    }

    #[test]
    fn second_level() {
        // level-1 marks every 2 or 3 zeros, level-2 every 1 or 2 ones
        let x = parse("2001000200100");
        assert!(tower_membership(&x, &[2, 1], 2));
        assert!(tower_membership(&eta(&x, 1), &[2, 1], 1));
        let bad = parse("2001001001002");
        assert!(!tower_membership(&bad, &[2, 1], 2));
        assert!(!tower_membership(&parse("3"), &[2, 1], 2));
    }
}
