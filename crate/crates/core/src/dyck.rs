//! Dyck paths, their tunnels, and the statistics read off them.
//!
//! Abscissas run over the lattice points `0..=2n`; step `k` (0-based) goes
//! from `x = k` to `x = k + 1`. A tunnel joins the start of an up-step to the
//! end of its matching down-step, so its length is even and its midpoint is
//! always an integer.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn flip(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'u',
            Step::Down => 'd',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DyckError {
    /// `position` is the 1-based character index in the input text.
    BadCharacter {
        position: usize,
        found: char,
    },
    /// The path drops below the axis at abscissa `x`.
    NegativePrefix {
        x: usize,
    },
    Unbalanced {
        final_height: usize,
    },
    OutOfRange {
        value: isize,
        limit: usize,
    },
}

impl fmt::Display for DyckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyckError::BadCharacter { position, found } => {
                write!(f, "bad character {found:?} at position {position}")
            }
            DyckError::NegativePrefix { x } => write!(f, "path goes below the axis at x={x}"),
            DyckError::Unbalanced { final_height } => {
                write!(f, "path ends at height {final_height}, not 0")
            }
            DyckError::OutOfRange { value, limit } => {
                write!(f, "{value} is outside the allowed range (limit {limit})")
            }
        }
    }
}

impl core::error::Error for DyckError {}

/// Where a tunnel sits relative to the vertical line `x = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TunnelClass {
    LeftSide,
    LeftAcross,
    Centered,
    RightAcross,
    RightSide,
}

impl TunnelClass {
    pub fn name(self) -> &'static str {
        match self {
            TunnelClass::LeftSide => "left-side",
            TunnelClass::LeftAcross => "left-across",
            TunnelClass::Centered => "centered",
            TunnelClass::RightAcross => "right-across",
            TunnelClass::RightSide => "right-side",
        }
    }

    fn classify(start: usize, end: usize, n: usize) -> TunnelClass {
        let mid = (start + end) / 2;
        let across = start < n && n < end;
        match (mid.cmp(&n), across) {
            (core::cmp::Ordering::Equal, _) => TunnelClass::Centered,
            (core::cmp::Ordering::Less, true) => TunnelClass::LeftAcross,
            (core::cmp::Ordering::Less, false) => TunnelClass::LeftSide,
            (core::cmp::Ordering::Greater, true) => TunnelClass::RightAcross,
            (core::cmp::Ordering::Greater, false) => TunnelClass::RightSide,
        }
    }
}

impl fmt::Display for TunnelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tunnel {
    pub start: usize,
    pub end: usize,
    pub height: usize,
    pub class: TunnelClass,
}

impl Tunnel {
    pub fn midpoint(&self) -> usize {
        (self.start + self.end) / 2
    }
}

/// `start end height class`
impl fmt::Display for Tunnel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.start, self.end, self.height, self.class
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TunnelCounts {
    pub left_side: usize,
    pub left_across: usize,
    pub centered: usize,
    pub right_across: usize,
    pub right_side: usize,
}

impl TunnelCounts {
    pub fn ct(&self) -> usize {
        self.centered
    }

    pub fn rt(&self) -> usize {
        self.right_side + self.right_across
    }

    pub fn lt(&self) -> usize {
        self.left_side + self.left_across
    }

    pub fn total(&self) -> usize {
        self.lt() + self.ct() + self.rt()
    }

    /// Left and right swapped.
    pub fn mirrored(&self) -> TunnelCounts {
        TunnelCounts {
            left_side: self.right_side,
            left_across: self.right_across,
            centered: self.centered,
            right_across: self.left_across,
            right_side: self.left_side,
        }
    }
}

/// A balanced word over `{u, d}` whose prefixes never have more `d`s than
/// `u`s.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, DyckError> {
        let mut h: usize = 0;
        for (k, s) in steps.iter().enumerate() {
            match s {
                Step::Up => h += 1,
                Step::Down if h == 0 => return Err(DyckError::NegativePrefix { x: k + 1 }),
                Step::Down => h -= 1,
            }
        }
        if h != 0 {
            return Err(DyckError::Unbalanced { final_height: h });
        }
        Ok(DyckPath { steps })
    }

    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(DyckPath::new(steps.clone()).is_ok());
        DyckPath { steps }
    }

    /// `u^n d^n`.
    pub fn pyramid(n: usize) -> Self {
        let mut steps = alloc::vec![Step::Up; n];
        steps.resize(2 * n, Step::Down);
        DyckPath { steps }
    }

    /// `(ud)^n`.
    pub fn sawtooth(n: usize) -> Self {
        DyckPath {
            steps: [Step::Up, Step::Down].repeat(n),
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of up-steps.
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// All `n` tunnels sorted by start abscissa, one per up-step.
    pub fn tunnels(&self) -> Vec<Tunnel> {
        let n = self.semilength();
        let mut open: Vec<usize> = Vec::with_capacity(n);
        let mut found = Vec::with_capacity(n);
        for (x, s) in self.steps.iter().enumerate() {
            match s {
                Step::Up => open.push(x),
                Step::Down => {
                    let start = open.pop().expect("valid Dyck path");
                    let end = x + 1;
                    found.push(Tunnel {
                        start,
                        end,
                        height: open.len(),
                        class: TunnelClass::classify(start, end, n),
                    });
                }
            }
        }
        found.sort_unstable_by_key(|t| t.start);
        found
    }

    pub fn tunnel_counts(&self) -> TunnelCounts {
        let mut c = TunnelCounts::default();
        for t in self.tunnels() {
            *match t.class {
                TunnelClass::LeftSide => &mut c.left_side,
                TunnelClass::LeftAcross => &mut c.left_across,
                TunnelClass::Centered => &mut c.centered,
                TunnelClass::RightAcross => &mut c.right_across,
                TunnelClass::RightSide => &mut c.right_side,
            } += 1;
        }
        c
    }

    pub fn ct(&self) -> usize {
        self.tunnel_counts().ct()
    }

    pub fn rt(&self) -> usize {
        self.tunnel_counts().rt()
    }

    pub fn lt(&self) -> usize {
        self.tunnel_counts().lt()
    }

    pub fn right_side(&self) -> usize {
        self.tunnel_counts().right_side
    }

    pub fn right_across(&self) -> usize {
        self.tunnel_counts().right_across
    }

    pub fn left_side(&self) -> usize {
        self.tunnel_counts().left_side
    }

    pub fn left_across(&self) -> usize {
        self.tunnel_counts().left_across
    }

    /// Height after the first `x` steps, `0 <= x <= 2n`.
    pub fn height_at(&self, x: usize) -> Result<usize, DyckError> {
        if x > self.steps.len() {
            return Err(DyckError::OutOfRange {
                value: x as isize,
                limit: self.steps.len(),
            });
        }
        let ups = self.steps[..x].iter().filter(|&&s| s == Step::Up).count();
        Ok(2 * ups - x)
    }

    /// Height at the middle abscissa `x = n`.
    pub fn he(&self) -> usize {
        self.height_at(self.semilength()).expect("n <= 2n")
    }

    /// Height at `x = n - c`, for `|c| <= n - 1`.
    pub fn he_c(&self, c: isize) -> Result<usize, DyckError> {
        let n = self.semilength();
        if n == 0 || c.unsigned_abs() > n - 1 {
            return Err(DyckError::OutOfRange {
                value: c,
                limit: n.saturating_sub(1),
            });
        }
        self.height_at((n as isize - c) as usize)
    }

    /// Mirror image in the line `x = n`: reversed, with `u` and `d` swapped.
    pub fn reflect(&self) -> DyckPath {
        DyckPath {
            steps: self.steps.iter().rev().map(|s| s.flip()).collect(),
        }
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            fmt::Write::write_char(f, s.as_char())?;
        }
        Ok(())
    }
}

/// Letters `u`/`d` in either case; whitespace is skipped.
impl FromStr for DyckPath {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::with_capacity(s.len());
        for (idx, ch) in s.chars().enumerate() {
            match ch {
                'u' | 'U' => steps.push(Step::Up),
                'd' | 'D' => steps.push(Step::Down),
                c if c.is_whitespace() => {}
                c => {
                    return Err(DyckError::BadCharacter {
                        position: idx + 1,
                        found: c,
                    })
                }
            }
        }
        DyckPath::new(steps)
    }
}

/// All Dyck paths of semilength `n`, in lexicographic order with `u < d`
/// (the pyramid first, the sawtooth last).
pub fn enumerate_paths(n: usize) -> DyckPaths {
    DyckPaths {
        current: Some(DyckPath::pyramid(n)),
    }
}

#[derive(Clone, Debug)]
pub struct DyckPaths {
    current: Option<DyckPath>,
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let out = self.current.take()?;
        self.current = successor(&out);
        Some(out)
    }
}

/// Next path in `u < d` order: turn the rightmost up-step that can become a
/// down-step (height before it at least 1) into one, then fill the rest with
/// all remaining ups followed by all remaining downs.
fn successor(path: &DyckPath) -> Option<DyckPath> {
    let steps = &path.steps;
    let n = path.semilength();
    let mut heights = Vec::with_capacity(steps.len());
    let mut h = 0usize;
    for s in steps {
        heights.push(h);
        if *s == Step::Up {
            h += 1;
        } else {
            h -= 1;
        }
    }
    let pivot = (0..steps.len())
        .rev()
        .find(|&k| steps[k] == Step::Up && heights[k] >= 1)?;
    let mut next = steps[..pivot].to_vec();
    let ups_before = next.iter().filter(|&&s| s == Step::Up).count();
    next.push(Step::Down);
    let ups_left = n - ups_before;
    next.resize(next.len() + ups_left, Step::Up);
    next.resize(2 * n, Step::Down);
    Some(DyckPath::from_steps_unchecked(next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIG1: &str = "uduuduududduuddd";

    fn d(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    /// Independent tunnel finder: for every up-step scan right for the
    /// first return to its starting height.
    fn tunnels_by_rescan(path: &DyckPath) -> Vec<(usize, usize, usize)> {
        let n = path.semilength();
        let mut out = Vec::new();
        for (x, s) in path.steps().iter().enumerate() {
            if *s != Step::Up {
                continue;
            }
            let h = path.height_at(x).unwrap();
            let end = (x + 1..=2 * n)
                .find(|&e| path.height_at(e).unwrap() == h)
                .unwrap();
            out.push((x, end, h));
        }
        out
    }

    fn all_words(len: usize) -> impl Iterator<Item = Vec<Step>> {
        (0u32..1 << len).map(move |mask| {
            (0..len)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Step::Up
                    } else {
                        Step::Down
                    }
                })
                .collect()
        })
    }

    #[test]
    fn parsing() {
        assert_eq!(d("uudd").semilength(), 2);
        assert_eq!(d("UdUd").to_string(), "udud");
        assert_eq!(d("").semilength(), 0);
        assert_eq!(
            "uddu".parse::<DyckPath>(),
            Err(DyckError::NegativePrefix { x: 3 })
        );
        assert_eq!(
            "ud d u".parse::<DyckPath>(),
            Err(DyckError::NegativePrefix { x: 3 })
        );
        assert_eq!(
            "uud".parse::<DyckPath>(),
            Err(DyckError::Unbalanced { final_height: 1 })
        );
        assert_eq!(
            "uxdd".parse::<DyckPath>(),
            Err(DyckError::BadCharacter {
                position: 2,
                found: 'x'
            })
        );
        assert_eq!(
            "(())".parse::<DyckPath>(),
            Err(DyckError::BadCharacter {
                position: 1,
                found: '('
            })
        );
    }

    #[test]
    fn figure_tunnel_profile() {
        let path = d(FIG1);
        let c = path.tunnel_counts();
        assert_eq!(
            c,
            TunnelCounts {
                left_side: 3,
                left_across: 0,
                centered: 1,
                right_across: 1,
                right_side: 3
            }
        );
        assert_eq!((path.ct(), path.rt(), path.lt()), (1, 4, 3));
        assert_eq!(path.he(), 2);
        assert_eq!(path.tunnels().len(), 8);
    }

    #[test]
    fn small_profiles() {
        let t = d("uudd").tunnels();
        assert!(t.iter().all(|t| t.class == TunnelClass::Centered));
        assert_eq!(t.iter().map(|t| t.midpoint()).collect::<Vec<_>>(), [2, 2]);

        let t = d("udud").tunnels();
        assert_eq!(t[0].class, TunnelClass::LeftSide);
        assert_eq!(t[1].class, TunnelClass::RightSide);
        assert_eq!(d("udud").ct(), 0);

        for n in 0..=8 {
            let pyr = DyckPath::pyramid(n);
            assert_eq!((pyr.ct(), pyr.rt(), pyr.lt(), pyr.he()), (n, 0, 0, n));
            assert_eq!(pyr.reflect(), pyr);
            let saw = DyckPath::sawtooth(n);
            assert_eq!(saw.ct(), n % 2);
            assert_eq!(saw.he(), n % 2);
        }
    }

    #[test]
    fn heights() {
        let path = d(FIG1);
        assert_eq!(path.height_at(0), Ok(0));
        assert_eq!(path.height_at(16), Ok(0));
        assert_eq!(path.height_at(3), Ok(1));
        assert!(path.height_at(17).is_err());
        assert_eq!(path.he_c(0), Ok(2));
        assert_eq!(path.he_c(1), path.height_at(7));
        assert_eq!(path.he_c(-7), path.height_at(15));
        assert!(path.he_c(8).is_err());
        assert!(path.he_c(-8).is_err());
        assert_eq!(DyckPath::pyramid(0).he(), 0);
        assert!(DyckPath::pyramid(0).he_c(0).is_err());
    }

    #[test]
    fn reflection() {
        assert_eq!(d("uuddud").reflect(), d("uduudd"));
        let r = d(FIG1).reflect();
        assert_eq!((r.ct(), r.rt(), r.lt()), (1, 3, 4));
    }

    #[test]
    fn rendering() {
        let t = d("udud").tunnels();
        assert_eq!(t[0].to_string(), "0 2 0 left-side");
        assert_eq!(t[1].to_string(), "2 4 0 right-side");
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(
            enumerate_paths(0).collect::<Vec<_>>(),
            [DyckPath::pyramid(0)]
        );
        assert_eq!(enumerate_paths(3).count(), 5);
        assert_eq!(enumerate_paths(10).count(), 16796);
        for n in 0..=10 {
            let paths: Vec<_> = enumerate_paths(n).collect();
            assert_eq!(paths.len() as u64, crate::catalan(n));
            assert!(paths.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(paths.last(), Some(&DyckPath::sawtooth(n)));
        }
    }

    #[test]
    fn enumeration_matches_filtered_words() {
        for n in 0..=7 {
            let mut want: Vec<DyckPath> = all_words(2 * n)
                .filter_map(|w| DyckPath::new(w).ok())
                .collect();
            want.sort();
            assert_eq!(enumerate_paths(n).collect::<Vec<_>>(), want);
        }
    }

    #[test]
    fn tunnel_invariants_exhaustive() {
        for (n, &f) in crate::fine_numbers(10).iter().enumerate() {
            let mut centered_free = 0;
            for path in enumerate_paths(n) {
                let tunnels = path.tunnels();
                assert_eq!(tunnels.len(), n);
                assert_eq!(path.tunnel_counts().total(), n);
                for t in &tunnels {
                    assert!(t.end > t.start && (t.end - t.start) % 2 == 0);
                    assert_eq!(path.height_at(t.start).unwrap(), t.height);
                    assert_eq!(path.height_at(t.end).unwrap(), t.height);
                    for x in t.start + 1..t.end {
                        assert!(path.height_at(x).unwrap() > t.height);
                    }
                }
                if n <= 8 {
                    let mut ours: Vec<_> =
                        tunnels.iter().map(|t| (t.start, t.end, t.height)).collect();
                    ours.sort();
                    assert_eq!(ours, tunnels_by_rescan(&path));
                }
                assert_eq!(path.he() % 2, n % 2);
                assert_eq!(path.height_at(2 * n), Ok(0));
                let r = path.reflect();
                assert_eq!(r.reflect(), path);
                assert_eq!(r.tunnel_counts(), path.tunnel_counts().mirrored());
                if path.ct() == 0 {
                    centered_free += 1;
                }
            }
            assert_eq!(centered_free, f, "n={n}");
        }
    }

    fn path_strategy() -> impl Strategy<Value = DyckPath> {
        (0usize..=12)
            .prop_flat_map(|n| proptest::collection::vec(any::<bool>(), 2 * n))
            .prop_map(|bits| {
                // map an arbitrary word to a Dyck path by reflecting negative excursions
                let n = bits.len() / 2;
                let (mut ups, mut h, mut steps) = (0, 0usize, Vec::new());
                for b in bits {
                    let up = (b && ups < n) || h == 0;
                    if up {
                        ups += 1;
                        h += 1;
                        steps.push(Step::Up);
                    } else {
                        h -= 1;
                        steps.push(Step::Down);
                    }
                }
                DyckPath::new(steps).unwrap()
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(path in path_strategy()) {
            prop_assert_eq!(path.to_string().parse::<DyckPath>().unwrap(), path);
        }

        #[test]
        fn class_counts_partition(path in path_strategy()) {
            let c = path.tunnel_counts();
            prop_assert_eq!(c.lt() + c.ct() + c.rt(), path.semilength());
            prop_assert_eq!(path.reflect().ct(), path.ct());
            prop_assert_eq!(path.reflect().rt(), path.lt());
        }
    }
}
