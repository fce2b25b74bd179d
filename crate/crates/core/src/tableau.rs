//! Two-row standard Young tableaux and RSK row insertion restricted to
//! 321-avoiding permutations, where the tableaux never grow a third row.

use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;

/// A standard Young tableau with at most two rows, each row strictly
/// increasing, `row2[j] > row1[j]` for every column, and the entries
/// forming `{1, .., n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoRowTableau {
    row1: Vec<usize>,
    row2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableauError {
    /// Row insertion would need a third row.
    Contains321,
    ShapeMismatch {
        p: (usize, usize),
        q: (usize, usize),
    },
    NotStandard,
}

impl fmt::Display for TableauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableauError::Contains321 => f.write_str("permutation contains 321"),
            TableauError::ShapeMismatch { p, q } => {
                write!(f, "shape mismatch: P has shape {p:?}, Q has shape {q:?}")
            }
            TableauError::NotStandard => f.write_str("not a standard two-row tableau"),
        }
    }
}

impl core::error::Error for TableauError {}

impl TwoRowTableau {
    pub fn new(row1: Vec<usize>, row2: Vec<usize>) -> Result<Self, TableauError> {
        let t = TwoRowTableau { row1, row2 };
        if t.is_standard() {
            Ok(t)
        } else {
            Err(TableauError::NotStandard)
        }
    }

    fn is_standard(&self) -> bool {
        let n = self.len();
        let increasing = |r: &[usize]| r.windows(2).all(|w| w[0] < w[1]);
        if self.row2.len() > self.row1.len() || !increasing(&self.row1) || !increasing(&self.row2) {
            return false;
        }
        if self.row1.iter().zip(&self.row2).any(|(a, b)| b <= a) {
            return false;
        }
        let mut seen = alloc::vec![false; n + 1];
        for &v in self.row1.iter().chain(&self.row2) {
            if v == 0 || v > n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn row1(&self) -> &[usize] {
        &self.row1
    }

    pub fn row2(&self) -> &[usize] {
        &self.row2
    }

    /// `(|row1|, |row2|)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.row1.len(), self.row2.len())
    }

    pub fn len(&self) -> usize {
        self.row1.len() + self.row2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row1.is_empty()
    }

    /// Whether entry `i` sits in the first row.
    pub fn in_first_row(&self, i: usize) -> bool {
        self.row1.binary_search(&i).is_ok()
    }
}

/// Two lines, entries space-separated; the second line may be empty.
impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in [&self.row1, &self.row2].into_iter().enumerate() {
            if r > 0 {
                f.write_str("\n")?;
            }
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Insertion tableau `P` and recording tableau `Q` of a 321-avoiding
/// permutation.
///
/// Each `σ(i)` either extends the first row or bumps the leftmost larger
/// first-row entry, which must then land at the end of the second row.
pub fn rsk(sigma: &Permutation) -> Result<(TwoRowTableau, TwoRowTableau), TableauError> {
    let mut p = TwoRowTableau {
        row1: Vec::new(),
        row2: Vec::new(),
    };
    let mut q = p.clone();
    for (idx, &v) in sigma.values().iter().enumerate() {
        let step = idx + 1;
        let slot = p.row1.partition_point(|&x| x < v);
        if slot == p.row1.len() {
            p.row1.push(v);
            q.row1.push(step);
        } else {
            let bumped = core::mem::replace(&mut p.row1[slot], v);
            if p.row2.last().is_some_and(|&last| last > bumped) {
                return Err(TableauError::Contains321);
            }
            p.row2.push(bumped);
            q.row2.push(step);
        }
    }
    Ok((p, q))
}

/// The unique 321-avoiding permutation with `rsk(σ) = (P, Q)`.
///
/// Recording entries are processed from `n` down to `1`. When `i` is in the
/// second row of `Q`, the last second-row entry of `P` is reverse-bumped into
/// the first row, displacing the rightmost smaller entry, which is `σ(i)`.
pub fn inverse_rsk(p: &TwoRowTableau, q: &TwoRowTableau) -> Result<Permutation, TableauError> {
    if p.shape() != q.shape() {
        return Err(TableauError::ShapeMismatch {
            p: p.shape(),
            q: q.shape(),
        });
    }
    if !p.is_standard() || !q.is_standard() {
        return Err(TableauError::NotStandard);
    }
    let n = p.len();
    let mut row1 = p.row1.clone();
    let mut row2 = p.row2.clone();
    let mut values = alloc::vec![0; n];
    for i in (1..=n).rev() {
        // row2 of P shrinks in step with the unprocessed part of Q's row2
        let v = if q.row2[..row2.len()].last() == Some(&i) {
            let m = row2.pop().expect("shapes agree");
            let slot = row1.partition_point(|&x| x < m) - 1;
            core::mem::replace(&mut row1[slot], m)
        } else {
            row1.pop().expect("shapes agree")
        };
        values[i - 1] = v;
    }
    Ok(Permutation::from_values_unchecked(values))
}
