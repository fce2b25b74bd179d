//! The two bijections into Dyck paths and their composition.
//!
//! * [`knu`] sends a 321-avoider to the path whose first half is read from
//!   the insertion tableau (`u` for a first-row entry, `d` for a second-row
//!   entry) and whose second half is the analogous word of the recording
//!   tableau reversed with `u` and `d` exchanged.
//! * [`krar`] sends a 132-avoider to the boundary of the unshaded Young
//!   diagram left after shading every cross together with the cells due
//!   south and due east of it.
//! * [`theta`] is `krar_inverse ∘ knu`. It preserves fixed points and
//!   excedances and turns the longest increasing subsequence `ℓ` into rank
//!   `n - ℓ`.
//!
//! [`match_crosses`] pairs excedances with antiexcedances of a 321-avoider;
//! matched pairs are exactly the RSK bumps, which gives a second,
//! tableau-free construction of `knu` in [`path_from_matching`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dyck::{DyckPath, Step};
use crate::perm::Permutation;
use crate::tableau::{inverse_rsk, rsk, TwoRowTableau};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BijectionError {
    Contains321,
    Contains132,
    HasFixedPoints,
}

impl fmt::Display for BijectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BijectionError::Contains321 => "input must avoid 321",
            BijectionError::Contains132 => "input must avoid 132",
            BijectionError::HasFixedPoints => "input must have no fixed points",
        })
    }
}

impl core::error::Error for BijectionError {}

fn pattern_132() -> Permutation {
    Permutation::from_values_unchecked(vec![1, 3, 2])
}

fn pattern_321() -> Permutation {
    Permutation::from_values_unchecked(vec![3, 2, 1])
}

fn row_word(t: &TwoRowTableau) -> impl DoubleEndedIterator<Item = Step> + '_ {
    (1..=t.len()).map(|i| {
        if t.in_first_row(i) {
            Step::Up
        } else {
            Step::Down
        }
    })
}

/// 321-avoiders to Dyck paths of the same semilength, through RSK.
pub fn knu(sigma: &Permutation) -> Result<DyckPath, BijectionError> {
    let (p, q) = rsk(sigma).map_err(|_| BijectionError::Contains321)?;
    let mut steps: Vec<Step> = row_word(&p).collect();
    steps.extend(row_word(&q).rev().map(Step::flip));
    Ok(DyckPath::from_steps_unchecked(steps))
}

fn tableau_from_word(word: impl Iterator<Item = Step>) -> TwoRowTableau {
    let (mut row1, mut row2) = (Vec::new(), Vec::new());
    for (idx, s) in word.enumerate() {
        match s {
            Step::Up => row1.push(idx + 1),
            Step::Down => row2.push(idx + 1),
        }
    }
    TwoRowTableau::new(row1, row2).expect("prefix of a Dyck path gives a standard tableau")
}

/// Inverse of [`knu`]: rebuild both tableaux from the two halves and undo RSK.
pub fn knu_inverse(path: &DyckPath) -> Permutation {
    let n = path.semilength();
    let (first, second) = path.steps().split_at(n);
    let p = tableau_from_word(first.iter().copied());
    let q = tableau_from_word(second.iter().rev().map(|s| s.flip()));
    inverse_rsk(&p, &q).expect("both halves have the shape fixed by the middle height")
}

/// Unshaded cells per row: `λ_i = #{ j < σ(i) : σ⁻¹(j) > i }`.
fn unshaded_row_lengths(sigma: &Permutation) -> Vec<usize> {
    let inv = sigma.inverse();
    (1..=sigma.len())
        .map(|i| (1..sigma.at(i)).filter(|&j| inv.at(j) > i).count())
        .collect()
}

/// 132-avoiders to Dyck paths: walk the diagram boundary from the lower-left
/// corner, one `u` per row (bottom row first), and after row `i` one `d` per
/// column the boundary moves right before the next row up (`λ_0 = n`).
pub fn krar(sigma: &Permutation) -> Result<DyckPath, BijectionError> {
    if sigma.contains(&pattern_132()) {
        return Err(BijectionError::Contains132);
    }
    let n = sigma.len();
    let lambda = unshaded_row_lengths(sigma);
    let mut steps = Vec::with_capacity(2 * n);
    for i in (1..=n).rev() {
        let above = if i == 1 { n } else { lambda[i - 2] };
        steps.push(Step::Up);
        steps.extend(core::iter::repeat_n(Step::Down, above - lambda[i - 1]));
    }
    Ok(DyckPath::from_steps_unchecked(steps))
}

/// Inverse of [`krar`]: read the row lengths back off the path, then row by
/// row put the cross in the leftmost shaded cell whose column is still free.
pub fn krar_inverse(path: &DyckPath) -> Permutation {
    let n = path.semilength();
    // lambda[i] for i = 0..=n, lambda[n] = 0
    let mut lambda = vec![0usize; n + 1];
    let mut row = n + 1;
    for s in path.steps() {
        match s {
            Step::Up => {
                row -= 1;
                lambda[row - 1] = lambda[row];
            }
            Step::Down => lambda[row - 1] += 1,
        }
    }
    debug_assert_eq!(lambda[0], n);
    let mut used = vec![false; n + 1];
    let mut values = Vec::with_capacity(n);
    for &len in &lambda[1..] {
        let col = (len + 1..=n)
            .find(|&j| !used[j])
            .expect("λ_i <= n - i leaves a free column");
        used[col] = true;
        values.push(col);
    }
    Permutation::from_values_unchecked(values)
}

/// 321-avoiders to 132-avoiders.
pub fn theta(sigma: &Permutation) -> Result<Permutation, BijectionError> {
    Ok(krar_inverse(&knu(sigma)?))
}

/// 132-avoiders to 321-avoiders.
pub fn theta_inverse(sigma: &Permutation) -> Result<Permutation, BijectionError> {
    Ok(knu_inverse(&krar(sigma)?))
}

/// Pairing of excedance crosses with antiexcedance crosses. Positions are
/// 1-based rows of the permutation array.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    /// `(excedance position, antiexcedance position)`, in matching order.
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_exc: Vec<usize>,
    pub unmatched_antiexc: Vec<usize>,
}

impl Matching {
    pub fn is_matched_exc(&self, i: usize) -> bool {
        self.pairs.iter().any(|&(e, _)| e == i)
    }

    pub fn is_matched_antiexc(&self, j: usize) -> bool {
        self.pairs.iter().any(|&(_, a)| a == j)
    }
}

/// Two-pointer matching over excedances and antiexcedances, each sorted by
/// value. An antiexcedance above the current excedance is skipped, an
/// excedance whose value is below the current antiexcedance's is skipped,
/// otherwise the two are paired.
pub fn match_crosses(sigma: &Permutation) -> Result<Matching, BijectionError> {
    if sigma.contains(&pattern_321()) {
        return Err(BijectionError::Contains321);
    }
    let by_value = |pred: fn(usize, usize) -> bool| {
        let mut v: Vec<usize> = (1..=sigma.len())
            .filter(|&i| pred(i, sigma.at(i)))
            .collect();
        v.sort_unstable_by_key(|&i| sigma.at(i));
        v
    };
    let exc = by_value(|i, v| v > i);
    let anti = by_value(|i, v| v < i);

    let mut m = Matching::default();
    let (mut a, mut b) = (0, 0);
    while a < exc.len() && b < anti.len() {
        let (i, j) = (exc[a], anti[b]);
        if i > j {
            m.unmatched_antiexc.push(j);
            b += 1;
        } else if sigma.at(i) < sigma.at(j) {
            m.unmatched_exc.push(i);
            a += 1;
        } else {
            m.pairs.push((i, j));
            a += 1;
            b += 1;
        }
    }
    m.unmatched_exc.extend_from_slice(&exc[a..]);
    m.unmatched_antiexc.extend_from_slice(&anti[b..]);
    Ok(m)
}

/// `knu(σ)` for a fixed-point-free 321-avoider, built from the matching
/// alone. The left half reads columns left to right (`d` for a matched
/// excedance, `u` otherwise); the right half reads rows top to bottom while
/// drawing from the right end (`u` for a matched antiexcedance, `d`
/// otherwise).
pub fn path_from_matching(sigma: &Permutation) -> Result<DyckPath, BijectionError> {
    let m = match_crosses(sigma)?;
    if sigma.fixed_points() > 0 {
        return Err(BijectionError::HasFixedPoints);
    }
    let n = sigma.len();
    let inv = sigma.inverse();
    let mut steps = Vec::with_capacity(2 * n);
    steps.extend((1..=n).map(|col| {
        if m.is_matched_exc(inv.at(col)) {
            Step::Down
        } else {
            Step::Up
        }
    }));
    steps.extend((1..=n).rev().map(|row| {
        if m.is_matched_antiexc(row) {
            Step::Up
        } else {
            Step::Down
        }
    }));
    Ok(DyckPath::new(steps).expect("matching description of knu yields a Dyck path"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::enumerate_paths;
    use crate::perm::{enumerate_avoiding, Filters};
    use alloc::collections::BTreeSet;

    const FIG1: &str = "uduuduududduuddd";

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn d(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn knu_examples() {
        assert_eq!(knu(&p("2,3,5,1,4,6,8,7")).unwrap(), d(FIG1));
        assert_eq!(knu(&p("2,1")).unwrap(), d("udud"));
        for n in 0..=8 {
            assert_eq!(
                knu(&Permutation::identity(n)).unwrap(),
                DyckPath::pyramid(n)
            );
        }
        assert_eq!(knu(&p("3,2,1")), Err(BijectionError::Contains321));
    }

    #[test]
    fn knu_inverse_examples() {
        assert_eq!(knu_inverse(&d(FIG1)), p("2,3,5,1,4,6,8,7"));
        for n in 0..=8 {
            assert_eq!(knu_inverse(&DyckPath::pyramid(n)), Permutation::identity(n));
        }
    }

    #[test]
    fn krar_examples() {
        assert_eq!(krar(&p("6,7,4,3,5,2,8,1")).unwrap(), d(FIG1));
        assert_eq!(krar_inverse(&d(FIG1)), p("6,7,4,3,5,2,8,1"));
        assert_eq!(krar(&p("1,3,2")), Err(BijectionError::Contains132));
        assert_eq!(krar(&p("1")).unwrap(), d("ud"));
        for n in 0..=8 {
            // identity: no unshaded cells, every d comes after the last u
            assert_eq!(
                krar(&Permutation::identity(n)).unwrap(),
                DyckPath::pyramid(n)
            );
            assert_eq!(
                krar_inverse(&DyckPath::pyramid(n)),
                Permutation::identity(n)
            );
            // decreasing: λ_i = n - i, one d after every u
            assert_eq!(
                krar(&Permutation::decreasing(n)).unwrap(),
                DyckPath::sawtooth(n)
            );
            assert_eq!(
                krar_inverse(&DyckPath::sawtooth(n)),
                Permutation::decreasing(n)
            );
        }
    }

    #[test]
    fn unshaded_lengths_of_figure_example() {
        assert_eq!(
            unshaded_row_lengths(&p("6,7,4,3,5,2,8,1")),
            [5, 5, 3, 2, 2, 1, 1, 0]
        );
    }

    #[test]
    fn theta_examples() {
        let sigma = p("2,3,5,1,4,6,8,7");
        let tau = p("6,7,4,3,5,2,8,1");
        assert_eq!(theta(&sigma).unwrap(), tau);
        assert_eq!(theta_inverse(&tau).unwrap(), sigma);
        for n in 0..=8 {
            assert_eq!(
                theta(&Permutation::identity(n)).unwrap(),
                Permutation::identity(n)
            );
        }
        assert_eq!(theta(&p("3,2,1")), Err(BijectionError::Contains321));
        assert_eq!(theta_inverse(&p("1,3,2")), Err(BijectionError::Contains132));
    }

    #[test]
    fn matching_examples() {
        let m = match_crosses(&p("4,1,2,5,7,8,3,6,11,9,10")).unwrap();
        assert_eq!(m.pairs, [(1, 2), (4, 7), (5, 8), (9, 10)]);
        assert_eq!(m.unmatched_exc, [6]);
        assert_eq!(m.unmatched_antiexc, [3, 11]);

        let m = match_crosses(&p("2,1")).unwrap();
        assert_eq!(m.pairs, [(1, 2)]);
        assert!(m.unmatched_exc.is_empty() && m.unmatched_antiexc.is_empty());

        assert_eq!(
            match_crosses(&Permutation::identity(5)).unwrap(),
            Matching::default()
        );
        assert_eq!(match_crosses(&p("3,2,1")), Err(BijectionError::Contains321));
    }

    #[test]
    fn path_from_matching_examples() {
        assert_eq!(path_from_matching(&p("2,1")).unwrap(), d("udud"));
        let fig4 = p("4,1,2,5,7,8,3,6,11,9,10");
        assert_eq!(path_from_matching(&fig4).unwrap(), knu(&fig4).unwrap());
        assert_eq!(
            path_from_matching(&p("1,2")),
            Err(BijectionError::HasFixedPoints)
        );
        assert_eq!(
            path_from_matching(&p("3,2,1")),
            Err(BijectionError::Contains321)
        );
    }

    #[test]
    fn round_trips_exhaustive() {
        for n in 0..=8 {
            for path in enumerate_paths(n) {
                let s = knu_inverse(&path);
                assert!(s.avoids(&pattern_321()));
                assert_eq!(knu(&s).unwrap(), path);
                let t = krar_inverse(&path);
                assert!(t.avoids(&pattern_132()), "{path} -> {t}");
                assert_eq!(krar(&t).unwrap(), path);
            }
            let images: BTreeSet<_> = enumerate_avoiding(n, &pattern_132(), Filters::NONE)
                .map(|s| krar(&s).unwrap())
                .collect();
            assert_eq!(images.len() as u64, crate::catalan(n));
        }
    }

    #[test]
    fn matched_pairs_are_inversions_and_equal_bumps() {
        for n in 0..=8 {
            for sigma in enumerate_avoiding(n, &pattern_321(), Filters::NONE) {
                let m = match_crosses(&sigma).unwrap();
                for &(i, j) in &m.pairs {
                    assert!(i < j && sigma.at(i) > sigma.at(j));
                }
                let (pt, _) = rsk(&sigma).unwrap();
                assert_eq!(m.pairs.len(), pt.row2().len(), "{sigma}");
                let mut seen: Vec<usize> = m
                    .pairs
                    .iter()
                    .flat_map(|&(a, b)| [a, b])
                    .chain(m.unmatched_exc.iter().copied())
                    .chain(m.unmatched_antiexc.iter().copied())
                    .collect();
                seen.sort_unstable();
                let moved: Vec<usize> = (1..=n).filter(|&i| sigma.at(i) != i).collect();
                assert_eq!(seen, moved);
            }
        }
    }

    #[test]
    fn reflection_equivariance() {
        for n in 0..=8 {
            for sigma in enumerate_avoiding(n, &pattern_321(), Filters::NONE) {
                assert_eq!(
                    knu(&sigma.inverse()).unwrap(),
                    knu(&sigma).unwrap().reflect()
                );
            }
            for sigma in enumerate_avoiding(n, &pattern_132(), Filters::NONE) {
                assert_eq!(
                    krar(&sigma.inverse()).unwrap(),
                    krar(&sigma).unwrap().reflect()
                );
            }
        }
    }
}
