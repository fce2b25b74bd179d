//! Exhaustive small-`n` verification of the equidistribution results and of
//! the per-element correspondences behind them.
//!
//! Every check enumerates its universe completely for each `n` in
//! `0..=n_max` and collects counterexamples rather than stopping at the
//! first one. Reports are deterministic; `elapsed` is left at zero here and
//! filled in by callers that have a clock.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;
use core::str::FromStr;
use core::time::Duration;

use crate::bijections::{knu, krar, match_crosses, path_from_matching, theta, theta_inverse};
use crate::bijections::{knu_inverse, krar_inverse};
use crate::dyck::{enumerate_paths, DyckPath, Step};
use crate::perm::{enumerate_avoiding, Filters, Pattern, Permutation};
use crate::tableau::{inverse_rsk, rsk};
use crate::{catalan, fine_numbers};

/// Stored counterexamples per report; further failures are only counted.
pub const MAX_COUNTEREXAMPLES: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stat {
    Fp,
    Exc,
    Lis,
    Rank,
}

impl Stat {
    pub fn name(self) -> &'static str {
        match self {
            Stat::Fp => "fp",
            Stat::Exc => "exc",
            Stat::Lis => "lis",
            Stat::Rank => "rank",
        }
    }

    pub fn of(self, sigma: &Permutation) -> usize {
        match self {
            Stat::Fp => sigma.fixed_points(),
            Stat::Exc => sigma.excedances(),
            Stat::Lis => sigma.lis(),
            Stat::Rank => sigma.rank(),
        }
    }
}

impl FromStr for Stat {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "fp" => Ok(Stat::Fp),
            "exc" => Ok(Stat::Exc),
            "lis" => Ok(Stat::Lis),
            "rank" => Ok(Stat::Rank),
            other => Err(OracleError::UnknownName(other.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    OverCap { n: usize, cap: usize },
    DuplicateStat(Stat),
    UnknownName(String),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::OverCap { n, cap } => write!(f, "n={n} exceeds the cap of {cap}"),
            OracleError::DuplicateStat(s) => write!(f, "statistic {} listed twice", s.name()),
            OracleError::UnknownName(s) => write!(f, "unknown name {s:?}"),
        }
    }
}

impl core::error::Error for OracleError {}

/// Joint distribution of a list of statistics over one enumerated class.
/// Keys are the statistic values in the declared order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub pattern: Pattern,
    pub filters: Filters,
    pub stats: Vec<Stat>,
    counts: BTreeMap<Vec<usize>, u64>,
}

impl DistributionTable {
    pub fn counts(&self) -> &BTreeMap<Vec<usize>, u64> {
        &self.counts
    }

    pub fn count(&self, key: &[usize]) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Rows in ascending key order.
    pub fn rows(&self) -> impl Iterator<Item = (&[usize], u64)> {
        self.counts.iter().map(|(k, &c)| (k.as_slice(), c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Refined,
    Propositions,
    Lemmas,
    Roundtrips,
    Duality,
    Fine,
    Involutions,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Refined,
        Check::Propositions,
        Check::Lemmas,
        Check::Roundtrips,
        Check::Duality,
        Check::Fine,
        Check::Involutions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Refined => "refined",
            Check::Propositions => "props",
            Check::Lemmas => "lemmas",
            Check::Roundtrips => "roundtrip",
            Check::Duality => "duality",
            Check::Fine => "fine",
            Check::Involutions => "involutions",
        }
    }
}

impl FromStr for Check {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| OracleError::UnknownName(s.into()))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// One failing element (or table cell) with enough data to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    /// Permutation or path text.
    pub subject: String,
    /// Image of `subject` under the map being checked, when there is one.
    pub image: Option<String>,
    /// Statistic values on both sides.
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} subject={}", self.n, self.subject)?;
        if let Some(image) = &self.image {
            write!(f, " image={image}")?;
        }
        write!(f, " {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: Check,
    pub n_range: RangeInclusive<usize>,
    /// At most [`MAX_COUNTEREXAMPLES`] entries.
    pub counterexamples: Vec<Counterexample>,
    /// Total failures, including those not stored.
    pub failures: usize,
    /// Informational lines (summaries, exploratory findings). Never affect
    /// the status.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(check: Check, n_range: RangeInclusive<usize>) -> Self {
        VerificationReport {
            check,
            n_range,
            counterexamples: Vec::new(),
            failures: 0,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn status(&self) -> Status {
        if self.counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    fn fail(&mut self, n: usize, subject: impl ToString, image: Option<String>, detail: String) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample {
                n,
                subject: subject.to_string(),
                image,
                detail,
            });
        }
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(
        &mut self,
        n: usize,
        subject: impl ToString,
        image: Option<&DyckPath>,
        what: &str,
        left: T,
        right: T,
    ) {
        if left != right {
            let detail = format!("{what}: {left:?} != {right:?}");
            self.fail(n, subject, image.map(|d| d.to_string()), detail);
        }
    }
}

/// Deliberate corruption of a single correspondence, used as a negative
/// control: the affected check must then fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tamper {
    /// `refined`/`involutions`: key the 132 side by `rank` instead of `n - rank`.
    DropRankFlip,
    /// `props`: compare `exc` with left instead of right tunnels.
    ExcAgainstLeftTunnels,
    /// `props`: compare `lis` with `(n - he) / 2` instead of `(n + he) / 2`.
    LisAgainstLowerHeight,
    /// `lemmas`: compare unmatched excedances with left-across tunnels.
    UnmatchedAgainstLeftAcross,
}

/// Entry point for exhaustive sweeps, with a cap on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
    tamper: Option<Tamper>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

fn pattern(values: [usize; 3]) -> Pattern {
    Permutation::from_values_unchecked(values.to_vec())
}

fn p321() -> Pattern {
    pattern([3, 2, 1])
}

fn p132() -> Pattern {
    pattern([1, 3, 2])
}

/// Keyed by `(fp, exc, k)`, each cell with the first permutation seen there.
type Refined = BTreeMap<[usize; 3], (u64, Permutation)>;

fn refined_table(
    universe: impl Iterator<Item = Permutation>,
    key: impl Fn(&Permutation) -> [usize; 3],
) -> Refined {
    let mut table = Refined::new();
    for sigma in universe {
        table
            .entry(key(&sigma))
            .or_insert_with(|| (0, sigma.clone()))
            .0 += 1;
    }
    table
}

impl Oracle {
    /// `C_11 = 58786` permutations per class.
    pub const DEFAULT_CAP: usize = 11;

    pub fn new() -> Self {
        Oracle {
            cap: Self::DEFAULT_CAP,
            tamper: None,
        }
    }

    pub fn with_cap(self, cap: usize) -> Self {
        Oracle { cap, ..self }
    }

    pub fn with_tamper(self, tamper: Tamper) -> Self {
        Oracle {
            tamper: Some(tamper),
            ..self
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn tampered(&self, t: Tamper) -> bool {
        self.tamper == Some(t)
    }

    fn guard(&self, n: usize) -> Result<(), OracleError> {
        if n > self.cap {
            Err(OracleError::OverCap { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Exact joint counts of `stats` over `enumerate_avoiding(n, pattern, filters)`.
    pub fn distribution(
        &self,
        n: usize,
        pattern: &Pattern,
        stats: &[Stat],
        filters: Filters,
    ) -> Result<DistributionTable, OracleError> {
        self.guard(n)?;
        for (i, s) in stats.iter().enumerate() {
            if stats[..i].contains(s) {
                return Err(OracleError::DuplicateStat(*s));
            }
        }
        let mut counts = BTreeMap::new();
        for sigma in enumerate_avoiding(n, pattern, filters) {
            let key: Vec<usize> = stats.iter().map(|s| s.of(&sigma)).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
        Ok(DistributionTable {
            n,
            pattern: pattern.clone(),
            filters,
            stats: stats.to_vec(),
            counts,
        })
    }

    pub fn verify(&self, check: Check, n_max: usize) -> Result<VerificationReport, OracleError> {
        match check {
            Check::Refined => self.verify_theorem_refined(n_max),
            Check::Propositions => self.verify_propositions(n_max),
            Check::Lemmas => self.verify_lemmas(n_max),
            Check::Roundtrips => self.verify_roundtrips(n_max),
            Check::Duality => self.verify_duality_schensted(n_max),
            Check::Fine => self.verify_fine(n_max),
            Check::Involutions => self.verify_involutions(n_max),
        }
    }

    fn compare_refined(&self, report: &mut VerificationReport, n: usize, filters: Filters) {
        let flip = !self.tampered(Tamper::DropRankFlip);
        let left = refined_table(enumerate_avoiding(n, &p321(), filters), |s| {
            [s.fixed_points(), s.excedances(), s.lis()]
        });
        let right = refined_table(enumerate_avoiding(n, &p132(), filters), |s| {
            let k = if flip { n - s.rank() } else { s.rank() };
            [s.fixed_points(), s.excedances(), k]
        });
        let mut keys: Vec<&[usize; 3]> = left.keys().chain(right.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            let (l, r) = (left.get(key), right.get(key));
            let (lc, rc) = (l.map_or(0, |e| e.0), r.map_or(0, |e| e.0));
            if lc != rc {
                let witness = &l.or(r).expect("key came from one side").1;
                let image = if l.is_some() {
                    knu(witness)
                } else {
                    krar(witness)
                };
                let detail = format!(
                    "(fp,exc,k)=({},{},{}) count321={lc} count132={rc}",
                    key[0], key[1], key[2]
                );
                report.fail(n, witness, image.ok().map(|d| d.to_string()), detail);
            }
        }
    }

    /// Joint `(fp, exc, lis)` over `S_n(321)` against joint
    /// `(fp, exc, n - rank)` over `S_n(132)`, for every `n <= n_max`.
    pub fn verify_theorem_refined(&self, n_max: usize) -> Result<VerificationReport, OracleError> {
        self.guard(n_max)?;
        let mut report = VerificationReport::new(Check::Refined, 0..=n_max);
        for n in 0..=n_max {
            self.compare_refined(&mut report, n, Filters::NONE);
        }
        Ok(report)
    }

    /// Per-element statistic correspondences of both maps into Dyck paths.
    pub fn verify_propositions(&self, n_max: usize) -> Result<VerificationReport, OracleError> {
        self.guard(n_max)?;
        let mut report = VerificationReport::new(Check::Propositions, 0..=n_max);
        for n in 0..=n_max {
            for sigma in enumerate_avoiding(n, &p321(), Filters::NONE) {
                let d = knu(&sigma).expect("enumerated 321-avoider");
                let c = d.tunnel_counts();
                let r = &mut report;
                r.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "knu fp vs ct",
                    sigma.fixed_points(),
                    c.ct(),
                );
                let tunnels = if self.tampered(Tamper::ExcAgainstLeftTunnels) {
                    c.lt()
                } else {
                    c.rt()
                };
                r.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "knu exc vs rt",
                    sigma.excedances(),
                    tunnels,
                );
                let twice_lis = if self.tampered(Tamper::LisAgainstLowerHeight) {
                    n as isize - d.he() as isize
                } else {
                    (n + d.he()) as isize
                };
                r.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "knu 2*lis vs n+he",
                    2 * sigma.lis() as isize,
                    twice_lis,
                );
            }
            for sigma in enumerate_avoiding(n, &p132(), Filters::NONE) {
                let d = krar(&sigma).expect("enumerated 132-avoider");
                let c = d.tunnel_counts();
                let r = &mut report;
                r.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "krar fp vs ct",
                    sigma.fixed_points(),
                    c.ct(),
                );
                r.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "krar exc vs rt",
                    sigma.excedances(),
                    c.rt(),
                );
                r.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "krar 2*rank vs n-he",
                    2 * sigma.rank() + d.he(),
                    n,
                );
            }
        }
        Ok(report)
    }

    /// The matched/unmatched lemmas on fixed-point-free 321-avoiders, the
    /// matching description of `knu`, and the centered-tunnel decomposition
    /// at each fixed point. Whether the lemmas also hold verbatim on
    /// permutations with fixed points is recorded in the notes only.
    pub fn verify_lemmas(&self, n_max: usize) -> Result<VerificationReport, OracleError> {
        self.guard(n_max)?;
        let mut report = VerificationReport::new(Check::Lemmas, 0..=n_max);
        let (mut general_total, mut matched_holds, mut unmatched_holds) = (0usize, 0usize, 0usize);
        for n in 0..=n_max {
            for sigma in enumerate_avoiding(n, &p321(), Filters::NONE) {
                let d = knu(&sigma).expect("enumerated 321-avoider");
                let m = match_crosses(&sigma).expect("enumerated 321-avoider");
                let (pt, _) = rsk(&sigma).expect("enumerated 321-avoider");
                let c = d.tunnel_counts();
                let six = [
                    m.pairs.len(),
                    pt.row2().len(),
                    c.right_side,
                    c.left_side,
                    (n - d.he()) / 2,
                    n - sigma.lis(),
                ];
                let unmatched = [
                    (m.unmatched_exc.len(), c.right_across),
                    (m.unmatched_antiexc.len(), c.left_across),
                ];
                let six_equal = six.iter().all(|&q| q == six[0]);
                let unmatched_equal = unmatched.iter().all(|(a, b)| a == b);

                for &(i, j) in &m.pairs {
                    if !(i < j && sigma.at(i) > sigma.at(j)) {
                        report.fail(
                            n,
                            &sigma,
                            None,
                            format!("pair ({i},{j}) is not an inversion"),
                        );
                    }
                }

                if sigma.fixed_points() > 0 {
                    general_total += 1;
                    matched_holds += six_equal as usize;
                    unmatched_holds += unmatched_equal as usize;
                    check_fixed_point_decomposition(&mut report, &sigma, &d);
                    continue;
                }

                if !six_equal {
                    let detail = format!(
                        "matched lemma quantities (pairs,row2,rs,ls,(n-he)/2,n-lis)={six:?}"
                    );
                    report.fail(n, &sigma, Some(d.to_string()), detail);
                }
                let right_target = if self.tampered(Tamper::UnmatchedAgainstLeftAcross) {
                    c.left_across
                } else {
                    c.right_across
                };
                report.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "unmatched exc vs right-across",
                    m.unmatched_exc.len(),
                    right_target,
                );
                report.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "unmatched antiexc vs left-across",
                    m.unmatched_antiexc.len(),
                    c.left_across,
                );
                let via_matching =
                    path_from_matching(&sigma).expect("fixed-point-free 321-avoider");
                report.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "path_from_matching vs knu",
                    via_matching.to_string(),
                    d.to_string(),
                );
            }
        }
        report.notes.push(format!(
            "exploratory, permutations with fixed points: matched lemma holds on {matched_holds}/{general_total}, unmatched lemma holds on {unmatched_holds}/{general_total}"
        ));
        Ok(report)
    }

    /// Both maps and their inverses compose to the identity, and each map is
    /// onto `D_n` with `C_n` distinct images.
    pub fn verify_roundtrips(&self, n_max: usize) -> Result<VerificationReport, OracleError> {
        self.guard(n_max)?;
        let mut report = VerificationReport::new(Check::Roundtrips, 0..=n_max);
        for n in 0..=n_max {
            let mut paths = 0u64;
            for d in enumerate_paths(n) {
                paths += 1;
                let s = knu_inverse(&d);
                match knu(&s) {
                    Ok(back) if back == d => {}
                    other => report.fail(
                        n,
                        &d,
                        Some(s.to_string()),
                        format!("knu(knu_inverse(D)) = {other:?}"),
                    ),
                }
                let t = krar_inverse(&d);
                match krar(&t) {
                    Ok(back) if back == d => {}
                    other => report.fail(
                        n,
                        &d,
                        Some(t.to_string()),
                        format!("krar(krar_inverse(D)) = {other:?}"),
                    ),
                }
            }
            report.expect_eq(n, "D_n", None, "|D_n| vs C_n", paths, catalan(n));

            for (pat, forward, backward, name) in [
                (
                    p321(),
                    knu as fn(&Permutation) -> Result<DyckPath, crate::BijectionError>,
                    knu_inverse as fn(&DyckPath) -> Permutation,
                    "knu",
                ),
                (p132(), krar, krar_inverse, "krar"),
            ] {
                let mut images = alloc::collections::BTreeSet::new();
                let mut size = 0u64;
                for sigma in enumerate_avoiding(n, &pat, Filters::NONE) {
                    size += 1;
                    let d = forward(&sigma).expect("enumerated avoider");
                    report.expect_eq(
                        n,
                        &sigma,
                        Some(&d),
                        &format!("{name}_inverse({name}(σ))"),
                        backward(&d),
                        sigma.clone(),
                    );
                    images.insert(d);
                }
                report.expect_eq(
                    n,
                    name,
                    None,
                    "distinct images vs C_n",
                    images.len() as u64,
                    catalan(n),
                );
                report.expect_eq(n, name, None, "class size vs C_n", size, catalan(n));
            }

            for sigma in enumerate_avoiding(n, &p321(), Filters::NONE) {
                let tau = theta(&sigma).expect("enumerated 321-avoider");
                if tau.contains(&p132()) {
                    report.fail(
                        n,
                        &sigma,
                        Some(tau.to_string()),
                        "theta image contains 132".into(),
                    );
                    continue;
                }
                report.expect_eq(
                    n,
                    &sigma,
                    None,
                    "theta_inverse(theta(σ))",
                    theta_inverse(&tau),
                    Ok(sigma.clone()),
                );
            }
        }
        Ok(report)
    }

    /// RSK duality `rsk(σ⁻¹) = (Q, P)`, Schensted's `lis = |row1(P)|`, and
    /// `inverse_rsk ∘ rsk = id` on `S_n(321)`.
    pub fn verify_duality_schensted(
        &self,
        n_max: usize,
    ) -> Result<VerificationReport, OracleError> {
        self.guard(n_max)?;
        let mut report = VerificationReport::new(Check::Duality, 0..=n_max);
        for n in 0..=n_max {
            for sigma in enumerate_avoiding(n, &p321(), Filters::NONE) {
                let (pt, qt) = rsk(&sigma).expect("enumerated 321-avoider");
                match rsk(&sigma.inverse()) {
                    Ok((pi, qi)) if pi == qt && qi == pt => {}
                    other => report.fail(
                        n,
                        &sigma,
                        None,
                        format!("rsk(σ⁻¹) = {other:?}, expected (Q, P)"),
                    ),
                }
                report.expect_eq(
                    n,
                    &sigma,
                    None,
                    "lis vs |row1(P)|",
                    sigma.lis(),
                    pt.row1().len(),
                );
                report.expect_eq(
                    n,
                    &sigma,
                    None,
                    "inverse_rsk(rsk(σ))",
                    inverse_rsk(&pt, &qt),
                    Ok(sigma.clone()),
                );
            }
        }
        Ok(report)
    }

    /// Fixed-point-free 321- and 132-avoiders and centered-tunnel-free
    /// paths are all counted by the Fine numbers.
    pub fn verify_fine(&self, n_max: usize) -> Result<VerificationReport, OracleError> {
        self.guard(n_max)?;
        let mut report = VerificationReport::new(Check::Fine, 0..=n_max);
        let fine = fine_numbers(n_max);
        for (n, &f) in fine.iter().enumerate() {
            let free321 = enumerate_avoiding(n, &p321(), Filters::FIXED_POINT_FREE).count() as u64;
            let free132 = enumerate_avoiding(n, &p132(), Filters::FIXED_POINT_FREE).count() as u64;
            let ct_free = enumerate_paths(n).filter(|d| d.ct() == 0).count() as u64;
            for (what, got) in [
                ("fp-free S_n(321)", free321),
                ("fp-free S_n(132)", free132),
                ("ct-free D_n", ct_free),
            ] {
                report.expect_eq(n, what, None, "count vs F_n", got, f);
            }
            report.notes.push(format!(
                "n={n} F={f} fp-free-321={free321} fp-free-132={free132} ct-free={ct_free}"
            ));
        }
        let listed: Vec<String> = fine.iter().map(|f| f.to_string()).collect();
        report
            .notes
            .push(format!("F_0..F_{n_max} = {}", listed.join(",")));
        Ok(report)
    }

    /// `theta` restricted to involutions, the refined table over
    /// involutions, and reflection equivariance of both maps.
    pub fn verify_involutions(&self, n_max: usize) -> Result<VerificationReport, OracleError> {
        self.guard(n_max)?;
        let mut report = VerificationReport::new(Check::Involutions, 0..=n_max);
        for n in 0..=n_max {
            let mut inv321 = 0u64;
            for sigma in enumerate_avoiding(n, &p321(), Filters::INVOLUTIONS) {
                inv321 += 1;
                let tau = theta(&sigma).expect("enumerated 321-avoider");
                if !tau.is_involution() {
                    report.fail(
                        n,
                        &sigma,
                        Some(tau.to_string()),
                        "theta image is not an involution".into(),
                    );
                }
            }
            let mut inv132 = 0u64;
            for tau in enumerate_avoiding(n, &p132(), Filters::INVOLUTIONS) {
                inv132 += 1;
                let sigma = theta_inverse(&tau).expect("enumerated 132-avoider");
                if !sigma.is_involution() {
                    report.fail(
                        n,
                        &tau,
                        Some(sigma.to_string()),
                        "theta_inverse image is not an involution".into(),
                    );
                }
            }
            report.expect_eq(
                n,
                "involutions",
                None,
                "321 count vs 132 count",
                inv321,
                inv132,
            );
            self.compare_refined(&mut report, n, Filters::INVOLUTIONS);

            for sigma in enumerate_avoiding(n, &p321(), Filters::NONE) {
                let d = knu(&sigma).expect("enumerated 321-avoider");
                let di = knu(&sigma.inverse()).expect("inverse avoids 321");
                report.expect_eq(
                    n,
                    &sigma,
                    Some(&d),
                    "knu(σ⁻¹) vs reflect(knu(σ))",
                    di,
                    d.reflect(),
                );
            }
            for sigma in enumerate_avoiding(n, &p132(), Filters::NONE) {
                let d = krar(&sigma).expect("enumerated 132-avoider");
                match krar(&sigma.inverse()) {
                    Ok(di) if di == d.reflect() => {}
                    other => report.fail(
                        n,
                        &sigma,
                        Some(d.to_string()),
                        format!("krar(σ⁻¹) = {other:?}, expected reflect"),
                    ),
                }
            }
        }
        Ok(report)
    }
}

/// At a fixed point `i`, `knu(σ) = A u B d C` with `|A| = |C| = i - 1`,
/// `A·C = knu(σ(1..i-1))` and `B = knu` of the suffix shifted down by `i`.
fn check_fixed_point_decomposition(
    report: &mut VerificationReport,
    sigma: &Permutation,
    d: &DyckPath,
) {
    let n = sigma.len();
    let steps = d.steps();
    for i in (1..=n).filter(|&i| sigma.at(i) == i) {
        let prefix = Permutation::new(sigma.values()[..i - 1].to_vec());
        let suffix = Permutation::new(sigma.values()[i..].iter().map(|&v| v - i).collect());
        let (Ok(prefix), Ok(suffix)) = (prefix, suffix) else {
            report.fail(
                n,
                sigma,
                None,
                format!("fixed point {i} does not split σ into blocks"),
            );
            continue;
        };
        let outer: Vec<Step> = steps[..i - 1]
            .iter()
            .chain(&steps[2 * n - i + 1..])
            .copied()
            .collect();
        let inner = &steps[i..2 * n - i];
        let ok = steps[i - 1] == Step::Up
            && steps[2 * n - i] == Step::Down
            && knu(&prefix).is_ok_and(|p| p.steps() == outer.as_slice())
            && knu(&suffix).is_ok_and(|s| s.steps() == inner);
        if !ok {
            report.fail(
                n,
                sigma,
                Some(d.to_string()),
                format!("no centered-tunnel decomposition at fixed point {i}"),
            );
        }
    }
}
