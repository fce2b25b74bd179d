//! Pattern-avoiding permutations, Dyck path tunnels, and the bijection
//! between 321-avoiding and 132-avoiding permutations that preserves fixed
//! points and excedances and carries the longest increasing subsequence of
//! the former to the rank of the latter.
//!
//! The bijection is the composition of two maps into Dyck paths:
//!
//! * [`knu`]: 321-avoiders to Dyck paths, through two-row RSK;
//! * [`krar`]: 132-avoiders to Dyck paths, through the boundary of the
//!   permutation diagram.
//!
//! and [`theta`] = `krar⁻¹ ∘ knu`.
//!
//! ```
//! use dyckbij_core::{knu, krar, theta, Permutation};
//!
//! let sigma: Permutation = "2,3,5,1,4,6,8,7".parse().unwrap();
//! let tau: Permutation = "6,7,4,3,5,2,8,1".parse().unwrap();
//! assert_eq!(knu(&sigma).unwrap().to_string(), "uduuduududduuddd");
//! assert_eq!(krar(&tau).unwrap(), knu(&sigma).unwrap());
//! assert_eq!(theta(&sigma).unwrap(), tau);
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bijections;
pub mod dyck;
pub mod oracle;
pub mod perm;
pub mod tableau;

pub use bijections::{
    knu, knu_inverse, krar, krar_inverse, match_crosses, path_from_matching, theta, theta_inverse,
    BijectionError, Matching,
};
pub use dyck::{enumerate_paths, DyckError, DyckPath, Step, Tunnel, TunnelClass, TunnelCounts};
pub use oracle::{
    Check, Counterexample, DistributionTable, Oracle, OracleError, Stat, Status, Tamper,
    VerificationReport,
};
pub use perm::{enumerate_avoiding, Filters, Pattern, PermError, Permutation};
pub use tableau::{inverse_rsk, rsk, TableauError, TwoRowTableau};

/// `n`-th Catalan number, `binomial(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> u64 {
    // C_{k+1} = C_k * 2(2k+1) / (k+2), exact at every step.
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// Fine numbers `F_0..=F_n_max`, from `C_n = 2 F_n + F_{n-1}` with
/// `F_1 = 0`, `F_2 = 1`. `F_0 = 1` is the value forced by `C_1`.
pub fn fine_numbers(n_max: usize) -> alloc::vec::Vec<u64> {
    let mut f = alloc::vec::Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = match n {
            0 => 1,
            1 => 0,
            2 => 1,
            _ => (catalan(n) - f[n - 1]) / 2,
        };
        f.push(v);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), c);
        }
    }

    #[test]
    fn fine_values() {
        assert_eq!(
            fine_numbers(10),
            [1, 0, 1, 2, 6, 18, 57, 186, 622, 2120, 7338]
        );
        for n in 2..=10 {
            let f = fine_numbers(n);
            assert_eq!(catalan(n), 2 * f[n] + f[n - 1]);
        }
    }
}
