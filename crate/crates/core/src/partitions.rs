//! Brute-force partition counting: the oracle the generating-function
//! engine is judged against.
//!
//! Counts here come from direct partition recurrences with memoization.
//! Nothing in this module touches [`crate::bigpoly`] or [`crate::perpgf`];
//! the two sides share no code path, so their agreement over large sweeps
//! is meaningful evidence rather than a tautology.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::HashMap;

/// Memo table for the partition counts `p(n, m, N)` (at most `m` parts,
/// each at most `N`) and `p(n, m)` (at most `m` parts, unbounded size).
///
/// Negative `n` counts as 0 so difference operators compose without guards;
/// `p(0, m, N) = 1` for all `m, N >= 0` (the empty partition).
#[derive(Debug, Default)]
pub struct PartitionTable {
    memo: HashMap<(i64, u64, u64), BigInt>,
    memo2: HashMap<(i64, u64), BigInt>,
}

impl PartitionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Partitions of `n` into at most `m` parts, each at most `N`.
    ///
    /// Recursion on the largest part: a partition either avoids the part
    /// `N` entirely, or removes one copy of `N` and keeps the bound.
    pub fn p_bounded(&mut self, n: i64, m: u64, cap: u64) -> BigInt {
        if n < 0 {
            return BigInt::zero();
        }
        if n == 0 {
            return BigInt::one();
        }
        if m == 0 || cap == 0 {
            return BigInt::zero();
        }
        // n > 0 here, so n > m*cap means no partition fits.
        if n as u128 > m as u128 * cap as u128 {
            return BigInt::zero();
        }
        let key = (n, m, cap);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.p_bounded(n, m, cap - 1) + self.p_bounded(n - cap as i64, m - 1, cap);
        self.memo.insert(key, v.clone());
        v
    }

    /// Partitions of `n` into at most `m` parts of unbounded size.
    ///
    /// Recursion: either at most `m - 1` parts are used, or all `m` parts
    /// are nonzero and subtracting 1 from each leaves `n - m`.
    pub fn p_atmost(&mut self, n: i64, m: u64) -> BigInt {
        if n < 0 {
            return BigInt::zero();
        }
        if n == 0 {
            return BigInt::one();
        }
        if m == 0 {
            return BigInt::zero();
        }
        let key = (n, m);
        if let Some(v) = self.memo2.get(&key) {
            return v.clone();
        }
        let v = self.p_atmost(n, m - 1) + self.p_atmost(n - m as i64, m);
        self.memo2.insert(key, v.clone());
        v
    }

    /// `p(n, m, N) - p(n - x, m, N)`; zero when `x = 0` by convention.
    pub fn delta_bounded(&mut self, x: i64, n: i64, m: u64, cap: u64) -> BigInt {
        if x == 0 {
            return BigInt::zero();
        }
        self.p_bounded(n, m, cap) - self.p_bounded(n - x, m, cap)
    }

    /// `p(n, m) - p(n - x, m)`; zero when `x = 0` by convention.
    pub fn delta_atmost(&mut self, x: i64, n: i64, m: u64) -> BigInt {
        if x == 0 {
            return BigInt::zero();
        }
        self.p_atmost(n, m) - self.p_atmost(n - x, m)
    }

    /// Partitions of `n` whose parts all come from `parts` (with repetition
    /// allowed). Plain coin-change table, independent of the other counts.
    pub fn p_parts_from(&mut self, n: i64, parts: &[u64]) -> BigInt {
        if n < 0 {
            return BigInt::zero();
        }
        let n = n as usize;
        let mut table = vec![BigInt::zero(); n + 1];
        table[0] = BigInt::one();
        for &part in parts {
            let part = part as usize;
            for i in part..=n {
                let add = table[i - part].clone();
                table[i] += add;
            }
        }
        table[n].clone()
    }
}

thread_local! {
    static TABLE: RefCell<PartitionTable> = RefCell::new(PartitionTable::new());
}

/// Thread-local convenience wrapper around [`PartitionTable::p_bounded`].
pub fn p_bounded(n: i64, m: u64, cap: u64) -> BigInt {
    TABLE.with(|t| t.borrow_mut().p_bounded(n, m, cap))
}

/// Thread-local convenience wrapper around [`PartitionTable::p_atmost`].
pub fn p_atmost(n: i64, m: u64) -> BigInt {
    TABLE.with(|t| t.borrow_mut().p_atmost(n, m))
}

/// Thread-local convenience wrapper around [`PartitionTable::delta_bounded`].
pub fn delta_bounded(x: i64, n: i64, m: u64, cap: u64) -> BigInt {
    TABLE.with(|t| t.borrow_mut().delta_bounded(x, n, m, cap))
}

/// Thread-local convenience wrapper around [`PartitionTable::delta_atmost`].
pub fn delta_atmost(x: i64, n: i64, m: u64) -> BigInt {
    TABLE.with(|t| t.borrow_mut().delta_atmost(x, n, m))
}

/// Thread-local convenience wrapper around [`PartitionTable::p_parts_from`].
pub fn p_parts_from(n: i64, parts: &[u64]) -> BigInt {
    TABLE.with(|t| t.borrow_mut().p_parts_from(n, parts))
}

/// True iff the sequence weakly rises and then weakly falls. Empty and
/// singleton sequences count as unimodal.
pub fn is_unimodal(seq: &[BigInt]) -> bool {
    let mut i = 0;
    while i + 1 < seq.len() && seq[i] <= seq[i + 1] {
        i += 1;
    }
    while i + 1 < seq.len() && seq[i] >= seq[i + 1] {
        i += 1;
    }
    i + 1 >= seq.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(p_bounded(10, 4, 3), big(2));
        assert_eq!(p_bounded(2, 4, 3), big(2));
        assert_eq!(p_bounded(0, 7, 9), big(1));
        assert_eq!(p_bounded(0, 0, 0), big(1));
        assert_eq!(p_bounded(13, 4, 3), big(0));
        assert_eq!(p_bounded(6, 3, 4), big(5));
        assert_eq!(p_bounded(-3, 4, 4), big(0));
    }

    #[test]
    fn atmost_examples() {
        assert_eq!(p_atmost(38, 3), big(140));
        assert_eq!(p_atmost(8, 3), big(10));
        assert_eq!(p_atmost(4, 3), big(4));
        assert_eq!(p_atmost(0, 0), big(1));
        assert_eq!(p_atmost(5, 0), big(0));
    }

    #[test]
    fn delta_conventions() {
        assert_eq!(delta_bounded(0, 8, 4, 4), big(0));
        assert_eq!(delta_bounded(1, 8, 4, 4), big(1));
        assert_eq!(delta_atmost(30, 38, 3), big(130));
        assert_eq!(delta_atmost(0, 17, 3), big(0));
        assert_eq!(delta_atmost(1, 4, 3), big(1));
    }

    #[test]
    fn parts_from_small() {
        // Partitions of 4 from {1,2,3,5}: 3+1, 2+2, 2+1+1, 1+1+1+1.
        assert_eq!(p_parts_from(4, &[1, 2, 3, 5]), big(4));
        assert_eq!(p_parts_from(0, &[1, 2, 3, 5]), big(1));
        assert_eq!(p_parts_from(-2, &[1, 2, 3, 5]), big(0));
    }

    #[test]
    fn unimodal_examples() {
        let rises_falls: Vec<BigInt> =
            [1, 1, 2, 3, 3, 3, 3, 2, 1, 1].iter().map(|&v| big(v)).collect();
        assert!(is_unimodal(&rises_falls));
        let wiggles: Vec<BigInt> = [1, 2, 1, 2].iter().map(|&v| big(v)).collect();
        assert!(!is_unimodal(&wiggles));
        assert!(is_unimodal(&[]));
        assert!(is_unimodal(&[big(5)]));
        let falls: Vec<BigInt> = [3, 2, 2, 1].iter().map(|&v| big(v)).collect();
        assert!(is_unimodal(&falls));
    }

    #[test]
    fn stabilization() {
        for n in 0..30i64 {
            for m in 0..6u64 {
                assert_eq!(p_bounded(n, m, n.max(1) as u64), p_atmost(n, m));
            }
        }
    }
}
