//! Permutations in one-line notation, pattern containment, and the
//! statistics compared by the bijections: fixed points, excedances,
//! antiexcedances, longest increasing subsequence and rank.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// A permutation of `{1, .., n}` in one-line notation.
///
/// Positions and values are both 1-indexed: `at(i)` is `σ(i)`. The empty
/// permutation (`n = 0`) is a valid value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

/// Patterns share the permutation representation.
pub type Pattern = Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermError {
    /// A token that is not a positive decimal integer. `position` is the
    /// 1-based index of the token.
    BadToken {
        position: usize,
        token: String,
    },
    Zero {
        position: usize,
    },
    OutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },
    Duplicate {
        position: usize,
        value: usize,
    },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::BadToken { position, token } => {
                write!(f, "bad token {token:?} at position {position}")
            }
            PermError::Zero { position } => write!(f, "zero value at position {position}"),
            PermError::OutOfRange { position, value, n } => {
                write!(f, "value {value} at position {position} is outside 1..={n}")
            }
            PermError::Duplicate { position, value } => {
                write!(f, "duplicate value {value} at position {position}")
            }
        }
    }
}

impl core::error::Error for PermError {}

impl Permutation {
    /// Builds a permutation from one-line values, checking that they are a
    /// rearrangement of `1..=n`.
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (idx, &v) in values.iter().enumerate() {
            let position = idx + 1;
            if v == 0 {
                return Err(PermError::Zero { position });
            }
            if v > n {
                return Err(PermError::OutOfRange {
                    position,
                    value: v,
                    n,
                });
            }
            if seen[v] {
                return Err(PermError::Duplicate { position, value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// `(n, n-1, .., 1)`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// `σ(i)` for `1 <= i <= n`.
    ///
    /// Panics when `i` is out of range.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (idx, &v) in self.values.iter().enumerate() {
            inv[v - 1] = idx + 1;
        }
        Permutation { values: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(idx, &v)| self.values[v - 1] == idx + 1)
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    /// A pattern longer than `self` is never contained.
    pub fn contains(&self, pattern: &Pattern) -> bool {
        let pattern = pattern.values();
        if pattern.len() > self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(pattern.len());
        extend_occurrence(&self.values, pattern, 0, &mut chosen)
    }

    pub fn avoids(&self, pattern: &Pattern) -> bool {
        !self.contains(pattern)
    }

    pub fn fixed_points(&self) -> usize {
        self.count_positions(|i, v| v == i)
    }

    pub fn excedances(&self) -> usize {
        self.count_positions(|i, v| v > i)
    }

    pub fn antiexcedances(&self) -> usize {
        self.count_positions(|i, v| v < i)
    }

    fn count_positions(&self, pred: impl Fn(usize, usize) -> bool) -> usize {
        self.values
            .iter()
            .enumerate()
            .filter(|&(idx, &v)| pred(idx + 1, v))
            .count()
    }

    /// Length of the longest strictly increasing subsequence (patience
    /// sorting: `tails[k]` is the smallest possible last value of an
    /// increasing subsequence of length `k + 1`).
    pub fn lis(&self) -> usize {
        let mut tails: Vec<usize> = Vec::with_capacity(self.len());
        for &v in &self.values {
            let slot = tails.partition_point(|&t| t < v);
            if slot == tails.len() {
                tails.push(v);
            } else {
                tails[slot] = v;
            }
        }
        tails.len()
    }

    /// Largest `k` with `σ(i) > k` for every `i <= k`.
    pub fn rank(&self) -> usize {
        let mut prefix_min = usize::MAX;
        let mut k = 0;
        for &v in &self.values {
            prefix_min = prefix_min.min(v);
            if prefix_min > k + 1 {
                k += 1;
            } else {
                break;
            }
        }
        k
    }

    /// The permutation of `1..=len` order-isomorphic to `values`
    /// (values must be distinct).
    pub fn standardize(values: &[usize]) -> Permutation {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut out = vec![0; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank + 1;
        }
        Permutation { values: out }
    }
}

/// Backtracking search for an occurrence of `pattern` in `values`, with
/// `chosen` holding the indices picked for the first `chosen.len()` pattern
/// letters. Every new index is checked against all previous ones.
fn extend_occurrence(
    values: &[usize],
    pattern: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let k = chosen.len();
    if k == pattern.len() {
        return true;
    }
    let remaining = pattern.len() - k;
    for idx in from..=values.len() - remaining {
        if consistent(values, pattern, chosen, idx) {
            chosen.push(idx);
            if extend_occurrence(values, pattern, idx + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn consistent(values: &[usize], pattern: &[usize], chosen: &[usize], idx: usize) -> bool {
    let k = chosen.len();
    chosen
        .iter()
        .zip(pattern)
        .all(|(&c, &p)| (values[c] < values[idx]) == (p < pattern[k]))
}

/// Whether `values` has an occurrence of `pattern` that uses its last entry.
fn occurrence_ending_at_last(values: &[usize], pattern: &[usize]) -> bool {
    let (m, d) = (pattern.len(), values.len());
    if m == 0 {
        return true;
    }
    if m > d {
        return false;
    }
    let last = d - 1;
    let mut chosen = Vec::with_capacity(m);
    fn go(
        values: &[usize],
        pattern: &[usize],
        from: usize,
        last: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let k = chosen.len();
        if k + 1 == pattern.len() {
            return consistent(values, pattern, chosen, last);
        }
        let still_needed = pattern.len() - 1 - k;
        for idx in from..=last - still_needed {
            if consistent(values, pattern, chosen, idx) {
                chosen.push(idx);
                if go(values, pattern, idx + 1, last, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(values, pattern, 0, last, &mut chosen)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Comma-separated decimal values, whitespace around commas ignored. The
/// empty (or all-blank) string is the empty permutation.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Permutation { values: Vec::new() });
        }
        let mut values = Vec::new();
        for (idx, token) in s.split(',').enumerate() {
            let token = token.trim();
            let bad = || PermError::BadToken {
                position: idx + 1,
                token: token.into(),
            };
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            values.push(token.parse::<usize>().map_err(|_| bad())?);
        }
        Permutation::new(values)
    }
}

/// Restrictions applied while enumerating.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    pub fixed_point_free: bool,
    pub involutions_only: bool,
}

impl Filters {
    pub const NONE: Filters = Filters {
        fixed_point_free: false,
        involutions_only: false,
    };
    pub const FIXED_POINT_FREE: Filters = Filters {
        fixed_point_free: true,
        involutions_only: false,
    };
    pub const INVOLUTIONS: Filters = Filters {
        fixed_point_free: false,
        involutions_only: true,
    };
}

/// All permutations of length `n` avoiding `pattern` and passing `filters`,
/// in lexicographic order of one-line notation.
pub fn enumerate_avoiding(n: usize, pattern: &Pattern, filters: Filters) -> AvoidingPermutations {
    AvoidingPermutations {
        n,
        pattern: pattern.values.clone(),
        filters,
        prefix: Vec::with_capacity(n),
        position_of: vec![0; n + 1],
        cursor: vec![1],
        // nothing avoids the empty pattern
        done: pattern.is_empty(),
    }
}

/// Depth-first backtracking over prefixes. A prefix is abandoned as soon as
/// it contains the pattern, which only needs checking for occurrences that
/// end at the newly placed value.
#[derive(Clone, Debug)]
pub struct AvoidingPermutations {
    n: usize,
    pattern: Vec<usize>,
    filters: Filters,
    prefix: Vec<usize>,
    // position_of[v] = position holding value v, 0 if unused
    position_of: Vec<usize>,
    // next candidate value for each depth 0..=prefix.len()
    cursor: Vec<usize>,
    done: bool,
}

impl AvoidingPermutations {
    fn admissible(&self, v: usize) -> bool {
        if self.position_of[v] != 0 {
            return false;
        }
        let i = self.prefix.len() + 1;
        if self.filters.fixed_point_free && v == i {
            return false;
        }
        if self.filters.involutions_only {
            let forced = if i <= self.n { self.position_of[i] } else { 0 };
            if forced != 0 {
                return v == forced;
            }
            if v < i {
                return false;
            }
        }
        true
    }

    fn pop(&mut self) -> bool {
        match self.prefix.pop() {
            Some(v) => {
                self.position_of[v] = 0;
                self.cursor.pop();
                true
            }
            None => false,
        }
    }
}

impl Iterator for AvoidingPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.prefix.len();
            if depth == self.n {
                let out = Permutation {
                    values: self.prefix.clone(),
                };
                if !self.pop() {
                    self.done = true;
                }
                return Some(out);
            }
            let mut advanced = false;
            while self.cursor[depth] <= self.n {
                let v = self.cursor[depth];
                self.cursor[depth] += 1;
                if !self.admissible(v) {
                    continue;
                }
                self.prefix.push(v);
                if occurrence_ending_at_last(&self.prefix, &self.pattern) {
                    self.prefix.pop();
                    continue;
                }
                self.position_of[v] = depth + 1;
                self.cursor.push(1);
                advanced = true;
                break;
            }
            if !advanced && !self.pop() {
                self.done = true;
                return None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Exhaustive oracle: standardize every index subset of size m.
    fn contains_brute(sigma: &Permutation, pi: &Pattern) -> bool {
        let (n, m) = (sigma.len(), pi.len());
        if m > n {
            return false;
        }
        (0u32..1 << n)
            .filter(|mask| mask.count_ones() as usize == m)
            .any(|mask| {
                let sub: Vec<usize> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sigma.values[i])
                    .collect();
                Permutation::standardize(&sub) == *pi
            })
    }

    fn lis_brute(sigma: &Permutation) -> usize {
        let n = sigma.len();
        (0u32..1 << n)
            .filter(|mask| {
                let sub: Vec<usize> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sigma.values[i])
                    .collect();
                sub.windows(2).all(|w| w[0] < w[1])
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        enumerate_avoiding(n, &Permutation::identity(n + 1), Filters::NONE).collect()
    }

    fn s3() -> Vec<Pattern> {
        ["123", "132", "213", "231", "312", "321"]
            .iter()
            .map(|s| Permutation::new(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap())
            .collect()
    }

    #[test]
    fn containment_examples() {
        assert!(p("2,4,5,3,1").contains(&p("1,3,2")));
        assert!(!p("4,2,3,5,1").contains(&p("1,3,2")));
        assert!(p("1,2,3").contains(&p("1")));
        assert!(!p("1,2").contains(&p("1,2,3")));
        assert!(p("").contains(&p("")));
    }

    #[test]
    fn statistics_examples() {
        let id = Permutation::identity(6);
        assert_eq!(
            (id.fixed_points(), id.excedances(), id.antiexcedances()),
            (6, 0, 0)
        );
        let fig2 = p("2,3,5,1,4,6,8,7");
        assert_eq!((fig2.fixed_points(), fig2.excedances()), (1, 4));
        let fig4 = p("4,1,2,5,7,8,3,6,11,9,10");
        assert_eq!(
            (
                fig4.fixed_points(),
                fig4.excedances(),
                fig4.antiexcedances()
            ),
            (0, 5, 6)
        );
    }

    #[test]
    fn lis_examples() {
        assert_eq!(Permutation::identity(7).lis(), 7);
        assert_eq!(p("2,3,5,1,4,6,8,7").lis(), 5);
        assert_eq!(p("4,1,2,5,7,8,3,6,11,9,10").lis(), 7);
        assert_eq!(p("").lis(), 0);
        // exhaustive oracle agrees on the anchors
        assert_eq!(lis_brute(&p("2,3,5,1,4,6,8,7")), 5);
        assert_eq!(lis_brute(&p("4,1,2,5,7,8,3,6,11,9,10")), 7);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Permutation::identity(5).rank(), 0);
        assert_eq!(p("").rank(), 0);
        assert_eq!(p("6,7,4,3,5,2,8,1").rank(), 3);
        assert_eq!(p("4,3,2,1").rank(), 2);
        assert_eq!(p("2,1").rank(), 1);
    }

    #[test]
    fn inverse_and_involutions() {
        let id = Permutation::identity(4);
        assert_eq!(id.inverse(), id);
        assert!(id.is_involution());
        assert_eq!(p("2,3,1").inverse(), p("3,1,2"));
        assert!(!p("2,3,1").is_involution());
        assert_eq!(p("2,1,4,3").inverse(), p("2,1,4,3"));
        assert!(p("2,1,4,3").is_involution());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(p(" 2 , 1 "), p("2,1"));
        assert_eq!(p("").len(), 0);
        assert_eq!(
            "1,1".parse::<Permutation>(),
            Err(PermError::Duplicate {
                position: 2,
                value: 1
            })
        );
        assert_eq!(
            "0,1".parse::<Permutation>(),
            Err(PermError::Zero { position: 1 })
        );
        assert_eq!(
            "1,3".parse::<Permutation>(),
            Err(PermError::OutOfRange {
                position: 2,
                value: 3,
                n: 2
            })
        );
        assert!(matches!(
            "1,x".parse::<Permutation>(),
            Err(PermError::BadToken { position: 2, .. })
        ));
        assert!(matches!(
            "1,,2".parse::<Permutation>(),
            Err(PermError::BadToken { position: 2, .. })
        ));
        assert!(matches!(
            "-1".parse::<Permutation>(),
            Err(PermError::BadToken { position: 1, .. })
        ));
        assert_eq!(p("2,3,5,1,4,6,8,7").to_string(), "2,3,5,1,4,6,8,7");
    }

    #[test]
    fn enumeration_counts() {
        for pi in s3() {
            assert_eq!(enumerate_avoiding(0, &pi, Filters::NONE).count(), 1);
        }
        assert_eq!(
            enumerate_avoiding(4, &p("3,2,1"), Filters::NONE).count(),
            14
        );
        assert_eq!(
            enumerate_avoiding(6, &p("1,3,2"), Filters::FIXED_POINT_FREE).count(),
            57
        );
        assert_eq!(
            enumerate_avoiding(6, &p("3,2,1"), Filters::FIXED_POINT_FREE).count(),
            57
        );
        for n in 0..=8 {
            for pi in s3() {
                let c = enumerate_avoiding(n, &pi, Filters::NONE).count() as u64;
                assert_eq!(c, crate::catalan(n), "n={n} pattern={pi}");
            }
        }
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        for n in 0..=6 {
            let all = all_perms(n);
            assert_eq!(all.len(), (1..=n).product::<usize>().max(1));
            assert!(all.windows(2).all(|w| w[0] < w[1]), "lexicographic order");
            for pi in s3() {
                for filters in [
                    Filters::NONE,
                    Filters::FIXED_POINT_FREE,
                    Filters::INVOLUTIONS,
                ] {
                    let want: Vec<_> = all
                        .iter()
                        .filter(|s| !contains_brute(s, &pi))
                        .filter(|s| !filters.fixed_point_free || s.fixed_points() == 0)
                        .filter(|s| !filters.involutions_only || s.is_involution())
                        .cloned()
                        .collect();
                    let got: Vec<_> = enumerate_avoiding(n, &pi, filters).collect();
                    assert_eq!(got, want, "n={n} pattern={pi} {filters:?}");
                }
            }
        }
    }

    #[test]
    fn enumeration_restarts() {
        let it = enumerate_avoiding(5, &p("3,2,1"), Filters::NONE);
        let a: Vec<_> = it.clone().collect();
        let b: Vec<_> = it.collect();
        assert_eq!(a, b);
    }

    fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
        (0..=max_n)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn classes_partition_positions(sigma in perm_strategy(12)) {
            prop_assert_eq!(
                sigma.fixed_points() + sigma.excedances() + sigma.antiexcedances(),
                sigma.len()
            );
        }

        #[test]
        fn lis_matches_exhaustive(sigma in perm_strategy(8)) {
            prop_assert_eq!(sigma.lis(), lis_brute(&sigma));
        }

        #[test]
        fn containment_matches_exhaustive(sigma in perm_strategy(8), pi in perm_strategy(4)) {
            prop_assert_eq!(sigma.contains(&pi), contains_brute(&sigma, &pi));
        }

        #[test]
        fn rank_is_largest_empty_corner_square(sigma in perm_strategy(10)) {
            let n = sigma.len();
            let fits = |k: usize| (1..=k).all(|i| sigma.at(i) > k);
            let want = (0..=n).filter(|&k| fits(k)).max().unwrap();
            prop_assert_eq!(sigma.rank(), want);
        }

        #[test]
        fn inverse_composes_to_identity(sigma in perm_strategy(12)) {
            let inv = sigma.inverse();
            for i in 1..=sigma.len() {
                prop_assert_eq!(inv.at(sigma.at(i)), i);
            }
            prop_assert_eq!(sigma.is_involution(), inv == sigma);
        }

        #[test]
        fn text_round_trip(sigma in perm_strategy(12)) {
            prop_assert_eq!(sigma.to_string().parse::<Permutation>().unwrap(), sigma);
        }
    }
}
