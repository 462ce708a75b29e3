//! Lexicographic enumeration of `k`-subsets of `{0, .., n-1}`.

use crate::exec::{self, Parallelism};

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step.
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// The combination of lexicographic rank `rank` among all `k`-subsets of `[0, n)`.
pub fn unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let with_next = binomial(n - next - 1, remaining);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// Advances `comb` to its lexicographic successor. Returns `false` after the last one.
pub fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Iterator over all `k`-subsets of `[0, n)` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_combination(&mut succ, self.n) {
            self.current = Some(succ);
        }
        Some(cur)
    }
}

const CHUNK: u128 = 1 << 12;

/// The lexicographically first `k`-subset accepted by `pred`.
///
/// The caller is responsible for checking `C(n, k)` against its budget.
pub fn first_combination<F>(n: usize, k: usize, par: Parallelism, pred: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    let total = binomial(n, k);
    if total == 0 {
        return None;
    }
    let chunks = total.div_ceil(CHUNK) as u64;
    exec::find_map_first(chunks, par, |ci| {
        let start = ci as u128 * CHUNK;
        let mut comb = unrank(n, k, start);
        let len = CHUNK.min(total - start);
        for _ in 0..len {
            if pred(&comb) {
                return Some(comb);
            }
            next_combination(&mut comb, n);
        }
        None
    })
}

/// True iff `pred` accepts every `k`-subset.
pub fn all_combinations<F>(n: usize, k: usize, par: Parallelism, pred: F) -> bool
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    first_combination(n, k, par, |c| !pred(c)).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(16, 4), 1820);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn unrank_matches_iteration() {
        for (n, k) in [(6, 3), (7, 0), (5, 5), (9, 2)] {
            for (rank, comb) in Combinations::new(n, k).enumerate() {
                assert_eq!(unrank(n, k, rank as u128), comb);
            }
            assert_eq!(Combinations::new(n, k).count() as u128, binomial(n, k));
        }
    }

    #[test]
    fn first_is_lexicographic() {
        for par in [Parallelism::Sequential, Parallelism::Parallel] {
            let hit = first_combination(20, 3, par, |c| c.iter().sum::<usize>() == 40);
            let expected = Combinations::new(20, 3).find(|c| c.iter().sum::<usize>() == 40);
            assert_eq!(hit, expected);
            assert_eq!(first_combination(4, 5, par, |_| true), None);
        }
    }
}
