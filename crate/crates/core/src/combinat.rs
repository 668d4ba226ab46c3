//! Subset-sum multiplicities α(r, m, n) and β(r, m, n).
//!
//! α(r, m, n) counts the m-element subsets of the 2n odd integers
//! `{1-2n, 3-2n, ..., 2n-1}` whose elements sum to r, and
//! β(r, m, n) = α(r, m, n) - α(r, m-2, n) with α at negative m equal to zero.

use std::collections::BTreeMap;

use serde::Serialize;

/// The 2n-element set `{1-2n, 3-2n, ..., 2n-1}`.
pub fn odd_set(n: u32) -> impl Iterator<Item = i64> {
    let n = n as i64;
    (0..2 * n).map(move |i| 1 - 2 * n + 2 * i)
}

/// `r = -m(2n-m), ..., m(2n-m)` in steps of 2.
pub fn r_range(m: u32, n: u32) -> impl Iterator<Item = i64> {
    let bound = m as i64 * (2 * n as i64 - m as i64);
    (-bound..=bound).step_by(2)
}

/// Counts of `c`-subsets by sum, `counts[c][sum + n^2]`.
fn subset_sum_counts(n: u32) -> Vec<Vec<u64>> {
    let size = 2 * n as usize;
    let offset = (n as i64) * (n as i64);
    let width = (2 * offset + 1) as usize;
    let mut counts = vec![vec![0u64; width]; size + 1];
    counts[0][offset as usize] = 1;
    for (used, x) in odd_set(n).enumerate() {
        // descending subset size so each element is used at most once
        for c in (0..=used).rev() {
            for s in 0..width {
                let v = counts[c][s];
                if v == 0 {
                    continue;
                }
                let target = s as i64 + x;
                counts[c + 1][target as usize] += v;
            }
        }
    }
    counts
}

/// α(r, m, n); zero outside the natural range.
pub fn alpha_count(r: i64, m: i64, n: u32) -> u64 {
    if n == 0 || m < 0 || m > 2 * n as i64 {
        return if n == 0 && m == 0 && r == 0 { 1 } else { 0 };
    }
    let offset = (n as i64) * (n as i64);
    if r.abs() > offset {
        return 0;
    }
    subset_sum_counts(n)[m as usize][(r + offset) as usize]
}

/// β(r, m, n) = α(r, m, n) - α(r, m-2, n).
pub fn beta_value(r: i64, m: i64, n: u32) -> i64 {
    alpha_count(r, m, n) as i64 - alpha_count(r, m - 2, n) as i64
}

/// Precomputed α and β for one `n`.
///
/// Optional per-entry adjustments of β exist only to build deliberately
/// corrupted tables for negative controls.
#[derive(Clone, Debug)]
pub struct BetaTable {
    n: u32,
    counts: Vec<Vec<u64>>,
    adjustments: BTreeMap<(i64, i64), i64>,
}

impl BetaTable {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "BetaTable requires n >= 1");
        BetaTable {
            n,
            counts: subset_sum_counts(n),
            adjustments: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self, r: i64, m: i64) -> u64 {
        let offset = (self.n as i64) * (self.n as i64);
        if m < 0 || m > 2 * self.n as i64 || r.abs() > offset {
            return 0;
        }
        self.counts[m as usize][(r + offset) as usize]
    }

    pub fn beta(&self, r: i64, m: i64) -> i64 {
        self.alpha(r, m) as i64 - self.alpha(r, m - 2) as i64 + self.adjustments.get(&(r, m)).copied().unwrap_or(0)
    }

    /// A copy with β(r, m) shifted by `delta`.
    pub fn perturbed(&self, r: i64, m: i64, delta: i64) -> Self {
        let mut out = self.clone();
        *out.adjustments.entry((r, m)).or_default() += delta;
        out
    }

    pub fn is_perturbed(&self) -> bool {
        self.adjustments.values().any(|d| *d != 0)
    }

    /// Σ_{m=0}^{n} Σ_r β(r,m,n)·(n-m+1); equals 2^{2n} for an intact table.
    pub fn ikeda_degree_sum(&self) -> i64 {
        let n = self.n;
        (0..=n)
            .map(|m| {
                r_range(m, n)
                    .map(|r| self.beta(r, m as i64) * (n - m + 1) as i64)
                    .sum::<i64>()
            })
            .sum()
    }

    /// 2(n+1) + Σ_{m=1}^{n} Σ_r β(r,m,n)·2(n+1-m), the degree of the
    /// Miyawaki-Ikeda spinor product built on this table (genus 2n+1).
    pub fn miyawaki_degree_sum(&self) -> i64 {
        let n = self.n;
        let big_n = n + 1;
        2 * big_n as i64
            + (1..=n)
                .map(|m| {
                    r_range(m, n)
                        .map(|r| self.beta(r, m as i64) * 2 * (big_n - m) as i64)
                        .sum::<i64>()
                })
                .sum::<i64>()
    }

    /// Rows `(m, r, alpha, beta)` for `0 <= m <= n`, `r` in range.
    pub fn rows(&self) -> Vec<BetaRow> {
        (0..=self.n)
            .flat_map(|m| {
                r_range(m, self.n).map(move |r| BetaRow {
                    m,
                    r,
                    alpha: self.alpha(r, m as i64),
                    beta: self.beta(r, m as i64),
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BetaRow {
    pub m: u32,
    pub r: i64,
    pub alpha: u64,
    pub beta: i64,
}

/// Σβ·deg = 2^{2n} for the Ikeda spinor product.
pub fn degree_audit_ikeda(n: u32) -> bool {
    n >= 1 && BetaTable::new(n).ikeda_degree_sum() == 1i64 << (2 * n)
}

/// 2n + Σ_{m=1}^{n-1} Σ_r β(r,m,n-1)·2(n-m) = 2^{2n-1}.
pub fn degree_audit_miyawaki(n: u32) -> bool {
    n >= 2 && BetaTable::new(n - 1).miyawaki_degree_sum() == 1i64 << (2 * n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive enumeration over all subsets.
    fn brute_alpha(r: i64, m: i64, n: u32) -> u64 {
        let elems: Vec<i64> = odd_set(n).collect();
        (0u32..(1 << elems.len()))
            .filter(|mask| mask.count_ones() as i64 == m)
            .filter(|mask| {
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, x)| x)
                    .sum::<i64>()
                    == r
            })
            .count() as u64
    }

    #[test]
    fn alpha_examples() {
        for n in 1..=6 {
            assert_eq!(alpha_count(0, 0, n), 1);
            assert_eq!(alpha_count(2 * n as i64 - 1, 1, n), 1);
        }
        assert_eq!(alpha_count(0, 2, 3), 3);
        assert_eq!(brute_alpha(0, 2, 3), 3);
        assert_eq!(alpha_count(0, -1, 3), 0);
        assert_eq!(alpha_count(1, 0, 3), 0);
    }

    #[test]
    fn beta_examples() {
        for n in 1..=6 {
            assert_eq!(beta_value(0, 0, n), 1);
            assert_eq!(beta_value(2, 0, n), 0);
        }
        assert_eq!(beta_value(1, 1, 1), 1);
        assert_eq!(beta_value(-1, 1, 1), 1);
        assert_eq!(beta_value(0, 2, 3), 2);
    }

    #[test]
    fn dp_matches_enumeration() {
        for n in 1..=4 {
            let table = BetaTable::new(n);
            for m in -2..=(2 * n as i64 + 1) {
                for r in -(n as i64 * n as i64) - 2..=(n as i64 * n as i64) + 2 {
                    let brute = brute_alpha(r, m, n);
                    assert_eq!(table.alpha(r, m), brute, "alpha({r},{m},{n})");
                    assert_eq!(alpha_count(r, m, n), brute);
                }
            }
        }
    }

    #[test]
    fn degree_audits() {
        assert_eq!(BetaTable::new(1).ikeda_degree_sum(), 4);
        assert_eq!(BetaTable::new(2).ikeda_degree_sum(), 16);
        assert_eq!(BetaTable::new(6).ikeda_degree_sum(), 4096);
        assert_eq!(BetaTable::new(1).miyawaki_degree_sum(), 8);
        assert_eq!(BetaTable::new(2).miyawaki_degree_sum(), 32);
        assert_eq!(BetaTable::new(3).miyawaki_degree_sum(), 128);
        for n in 1..=6 {
            assert!(degree_audit_ikeda(n));
            assert!(degree_audit_miyawaki(n + 1));
        }
        assert!(!degree_audit_miyawaki(1));
    }

    #[test]
    fn perturbation_breaks_audit() {
        let t = BetaTable::new(3).perturbed(0, 2, 1);
        assert!(t.is_perturbed());
        assert_eq!(t.beta(0, 2), 3);
        assert_ne!(t.ikeda_degree_sum(), 64);
    }

    #[test]
    fn structural_properties() {
        for n in 1..=6u32 {
            let t = BetaTable::new(n);
            let n2 = n as i64 * n as i64;
            for m in 0..=2 * n as i64 {
                for r in -n2..=n2 {
                    let a = t.alpha(r, m);
                    assert_eq!(a, t.alpha(-r, m));
                    assert_eq!(a, t.alpha(-r, 2 * n as i64 - m));
                    assert_eq!(a, t.alpha(r, 2 * n as i64 - m));
                    if (r - m).rem_euclid(2) != 0 || r.abs() > m * (2 * n as i64 - m) {
                        assert_eq!(a, 0);
                    }
                    assert_eq!(t.beta(r, m), t.beta(-r, m));
                }
            }
            for m in 0..=n {
                for r in r_range(m, n) {
                    assert!(t.beta(r, m as i64) >= 0, "beta({r},{m},{n}) < 0");
                }
            }
        }
    }
}
