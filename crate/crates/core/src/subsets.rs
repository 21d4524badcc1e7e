//! Small combinatorial helpers shared by the counting and canonical-labeling code.

use alloc::vec::Vec;

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub(crate) fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Falling factorial `(n)_k = n (n-1) ... (n-k+1)`.
pub(crate) fn falling(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).map(|i| (n - i) as u128).product()
}

/// Lexicographic walk over the k-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Vec<u32>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k as u32).collect(),
            done: k > n,
        }
    }

    /// Current subset, or `None` once exhausted. Call [`Self::advance`] to move on.
    pub(crate) fn get(&self) -> Option<&[u32]> {
        if self.done {
            None
        } else {
            Some(&self.current)
        }
    }

    pub(crate) fn advance(&mut self) {
        let k = self.current.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if (self.current[i] as usize) < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

/// Collects every k-subset of `0..n` in lexicographic order.
pub(crate) fn all_subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut it = Combinations::new(n, k);
    while let Some(c) = it.get() {
        out.push(c.to_vec());
        it.advance();
    }
    out
}

/// Rank tables for sorted k-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub(crate) struct LexRanker {
    n: usize,
    k: usize,
    binom: Vec<Vec<u128>>,
}

impl LexRanker {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let binom = (0..=n)
            .map(|a| (0..=k).map(|b| binomial(a, b)).collect())
            .collect();
        LexRanker { n, k, binom }
    }

    pub(crate) fn total(&self) -> usize {
        self.binom[self.n][self.k] as usize
    }

    /// Lexicographic rank of a strictly increasing subset.
    pub(crate) fn rank(&self, subset: &[u32]) -> usize {
        let mut rank = 0u128;
        let mut prev: usize = 0;
        for (i, &c) in subset.iter().enumerate() {
            let c = c as usize;
            for j in prev..c {
                rank += self.binom[self.n - j - 1][self.k - i - 1];
            }
            prev = c + 1;
        }
        rank as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_rank_matches_enumeration_order() {
        for n in 0..8 {
            for k in 1..=n.min(4) {
                let ranker = LexRanker::new(n, k);
                let all = all_subsets(n, k);
                assert_eq!(all.len(), ranker.total());
                for (i, s) in all.iter().enumerate() {
                    assert_eq!(ranker.rank(s), i, "n={n} k={k} s={s:?}");
                }
            }
        }
    }

    #[test]
    fn binomials_and_falling() {
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(falling(10, 5), 30240);
        assert_eq!(factorial(5), 120);
    }
}
