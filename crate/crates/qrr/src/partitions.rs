//! Independent combinatorial oracles: exact partition counts for the classes
//! with series interpretations, by two algorithmically unrelated routes.
//!
//! The dynamic-programming route works with generating-function tables; the
//! enumeration route explicitly lists partitions and filters by predicate, so
//! it cannot share a bug with the series engine it checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Default cap for explicit enumeration. Listing all partitions of 40
/// (about 37k objects) is instantaneous; beyond that the DP route suffices.
pub const DEFAULT_ENUM_LIMIT: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionClass {
    /// Parts not divisible by 4.
    NotDiv4,
    /// Parts congruent to +-1 mod 5.
    Mod5Pm1,
    /// Parts congruent to +-2 mod 5.
    Mod5Pm2,
    /// No repeated or consecutive parts (all gaps >= 2).
    Superdistinct,
    /// Superdistinct with smallest part >= 2.
    SuperdistinctMin2,
}

impl PartitionClass {
    pub const ALL: [PartitionClass; 5] = [
        PartitionClass::NotDiv4,
        PartitionClass::Mod5Pm1,
        PartitionClass::Mod5Pm2,
        PartitionClass::Superdistinct,
        PartitionClass::SuperdistinctMin2,
    ];

    pub fn description(&self) -> &'static str {
        match self {
            PartitionClass::NotDiv4 => "parts not divisible by 4",
            PartitionClass::Mod5Pm1 => "parts congruent to +-1 mod 5",
            PartitionClass::Mod5Pm2 => "parts congruent to +-2 mod 5",
            PartitionClass::Superdistinct => "no repeated or consecutive parts",
            PartitionClass::SuperdistinctMin2 => {
                "no repeated or consecutive parts, smallest part >= 2"
            }
        }
    }

    fn admits(&self, partition: &[u32]) -> bool {
        match self {
            PartitionClass::NotDiv4 => partition.iter().all(|&p| p % 4 != 0),
            PartitionClass::Mod5Pm1 => partition.iter().all(|&p| p % 5 == 1 || p % 5 == 4),
            PartitionClass::Mod5Pm2 => partition.iter().all(|&p| p % 5 == 2 || p % 5 == 3),
            PartitionClass::Superdistinct => partition.windows(2).all(|w| w[0] >= w[1] + 2),
            PartitionClass::SuperdistinctMin2 => {
                partition.windows(2).all(|w| w[0] >= w[1] + 2)
                    && partition.last().is_none_or(|&p| p >= 2)
            }
        }
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PartitionClass::NotDiv4 => "NOT_DIV_4",
            PartitionClass::Mod5Pm1 => "MOD5_PM1",
            PartitionClass::Mod5Pm2 => "MOD5_PM2",
            PartitionClass::Superdistinct => "SUPERDISTINCT",
            PartitionClass::SuperdistinctMin2 => "SUPERDISTINCT_MIN2",
        };
        f.write_str(name)
    }
}

impl FromStr for PartitionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NOT_DIV_4" => Ok(PartitionClass::NotDiv4),
            "MOD5_PM1" => Ok(PartitionClass::Mod5Pm1),
            "MOD5_PM2" => Ok(PartitionClass::Mod5Pm2),
            "SUPERDISTINCT" => Ok(PartitionClass::Superdistinct),
            "SUPERDISTINCT_MIN2" => Ok(PartitionClass::SuperdistinctMin2),
            other => Err(Error::UnknownSeries(other.to_string())),
        }
    }
}

/// Exact counts for 0..=n via generating-function dynamic programming:
/// residue-class coin tables for the congruence classes, and the
/// staircase-shifted "at most k parts" tables for the superdistinct classes
/// (the coefficients of sum_k q^{k^2 (+k)} / (q;q)_k).
pub fn count_dp(class: PartitionClass, n: u32) -> Vec<BigInt> {
    let n = n as usize;
    match class {
        PartitionClass::NotDiv4 => coin_dp(n, |p| p % 4 != 0),
        PartitionClass::Mod5Pm1 => coin_dp(n, |p| p % 5 == 1 || p % 5 == 4),
        PartitionClass::Mod5Pm2 => coin_dp(n, |p| p % 5 == 2 || p % 5 == 3),
        PartitionClass::Superdistinct => staircase_dp(n, 0),
        PartitionClass::SuperdistinctMin2 => staircase_dp(n, 1),
    }
}

fn coin_dp(n: usize, allowed: impl Fn(usize) -> bool) -> Vec<BigInt> {
    let mut dp = vec![BigInt::zero(); n + 1];
    dp[0] = BigInt::from(1);
    for p in 1..=n {
        if !allowed(p) {
            continue;
        }
        for m in p..=n {
            let add = dp[m - p].clone();
            dp[m] += add;
        }
    }
    dp
}

/// Partitions with gaps >= 2 (and smallest part >= 1 + `extra`) exactly
/// match "k parts cost k^2 + extra*k, the rest is a partition into at most
/// k parts", so accumulate p_{<=k}(n - k^2 - extra*k) over k.
fn staircase_dp(n: usize, extra: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::from(1);
    // dp = partitions into parts <= k, grown one part size at a time
    let mut dp = vec![BigInt::zero(); n + 1];
    dp[0] = BigInt::from(1);
    let mut k = 1usize;
    while k * k + extra * k <= n {
        for m in k..=n {
            let add = dp[m - k].clone();
            dp[m] += add;
        }
        let offset = k * k + extra * k;
        for m in offset..=n {
            let add = dp[m - offset].clone();
            out[m] += add;
        }
        k += 1;
    }
    out
}

/// Count by explicit recursive enumeration of all partitions of n, filtered
/// by the class predicate. No generating functions anywhere in this path.
pub fn count_enumerate(class: PartitionClass, n: u32, limit: u32) -> Result<u64> {
    if n > limit {
        return Err(Error::EnumerationLimit { n, limit });
    }
    let mut stack = Vec::new();
    let mut count = 0u64;
    enumerate(n, n, &mut stack, &mut |p| {
        if class.admits(p) {
            count += 1;
        }
    });
    Ok(count)
}

fn enumerate(remaining: u32, max_part: u32, stack: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if remaining == 0 {
        visit(stack);
        return;
    }
    let top = remaining.min(max_part);
    for part in (1..=top).rev() {
        stack.push(part);
        enumerate(remaining - part, part, stack, visit);
        stack.pop();
    }
}
