//! Exact counts of threshold graphs and the number sequences behind them.

use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fixed::Fixed;
use crate::graph::BlockSequence;

/// Memoized t(k), R_k and k! for k ≤ `max_n`.
#[derive(Clone, Debug)]
pub struct CountTable {
    max_n: usize,
    fact: Vec<BigUint>,
    surj: Vec<BigUint>,
    t: Vec<BigUint>,
}

impl CountTable {
    pub fn new(max_n: usize) -> Self {
        let mut fact = vec![BigUint::one()];
        for k in 1..=max_n {
            let next = &fact[k - 1] * BigUint::from(k);
            fact.push(next);
        }
        // ordered Stirling numbers k!·S(n,k), one row at a time:
        // k!S(n,k) = k·(k!S(n−1,k) + (k−1)!S(n−1,k−1))
        let mut row: Vec<BigUint> = vec![BigUint::one()];
        let mut surj = vec![BigUint::one()];
        for n in 1..=max_n {
            let mut next = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let mut v = row[k - 1].clone();
                if k < row.len() {
                    v += &row[k];
                }
                next[k] = v * BigUint::from(k);
            }
            surj.push(next.iter().sum());
            row = next;
        }
        let mut t = vec![BigUint::one(); max_n + 1];
        for n in 2..=max_n {
            t[n] = BigUint::from(2u8) * &surj[n] - BigUint::from(2 * n) * &surj[n - 1];
        }
        CountTable {
            max_n,
            fact,
            surj,
            t,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check(&self, n: usize) {
        assert!(n <= self.max_n, "count table built only up to {}", self.max_n);
    }

    pub fn factorial(&self, n: usize) -> &BigUint {
        self.check(n);
        &self.fact[n]
    }

    pub fn binomial(&self, n: usize, k: usize) -> BigUint {
        self.check(n);
        if k > n {
            return BigUint::zero();
        }
        &self.fact[n] / (&self.fact[k] * &self.fact[n - k])
    }

    /// R_n, the number of ordered set partitions of an n-set.
    pub fn surjection(&self, n: usize) -> &BigUint {
        self.check(n);
        &self.surj[n]
    }

    /// Labeled threshold graphs on n vertices; t(0) = t(1) = 1.
    pub fn t(&self, n: usize) -> &BigUint {
        self.check(n);
        &self.t[n]
    }

    /// Labeled threshold graphs on n vertices with exactly j isolated vertices.
    pub fn t_isolated(&self, n: usize, j: usize) -> Result<BigUint> {
        if n < 2 || j > n {
            return Err(Error::Domain(format!(
                "t(n, j) needs n >= 2 and 0 <= j <= n, got n = {n}, j = {j}"
            )));
        }
        self.check(n);
        Ok(if j == n {
            BigUint::one()
        } else if j == n - 1 {
            BigUint::zero()
        } else {
            self.binomial(n, j) * &self.t[n - j] / BigUint::from(2u8)
        })
    }

    /// Add one to t(n); a deliberately broken table for negative-control checks.
    pub fn corrupt(&mut self, n: usize) {
        self.check(n);
        self.t[n] += BigUint::one();
    }
}

/// Table covering at least `n`, shared process-wide and grown on demand.
pub fn shared_table(n: usize) -> Arc<CountTable> {
    static CACHE: Mutex<Option<Arc<CountTable>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    match guard.as_ref() {
        Some(t) if t.max_n() >= n => Arc::clone(t),
        _ => {
            let size = n.max(64);
            let table = Arc::new(CountTable::new(size));
            *guard = Some(Arc::clone(&table));
            table
        }
    }
}

pub fn surjection_number(n: usize) -> BigUint {
    CountTable::new(n).surjection(n).clone()
}

pub fn t_labeled(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("t(n) needs n >= 1".into()));
    }
    Ok(CountTable::new(n).t(n).clone())
}

pub fn t_isolated(n: usize, j: usize) -> Result<BigUint> {
    CountTable::new(n.max(2)).t_isolated(n, j)
}

/// Leading term of t(n)/n! and an upper bound on the remaining error.
#[derive(Clone, Debug)]
pub struct Asymptotic {
    pub approximation: Fixed,
    pub error_bound: Fixed,
}

/// `(1/ln2 − 1)(1/ln2)^n` and `2ζ(n)/(2π)^n`.
pub fn t_asymptotic(n: usize) -> Result<Asymptotic> {
    if n < 2 {
        return Err(Error::Domain("asymptotic formula needs n >= 2".into()));
    }
    let n32 = n as u32;
    let inv_ln2 = Fixed::one().div(&Fixed::ln2());
    let approximation = &(&inv_ln2 - &Fixed::one()) * &inv_ln2.pow(n32);
    let two_pi = &Fixed::pi() * &Fixed::from_int(2);
    let error_bound = (&Fixed::zeta(n32) * &Fixed::from_int(2)).div(&two_pi.pow(n32));
    Ok(Asymptotic {
        approximation,
        error_bound,
    })
}

/// t(n)/n! at full fixed-point precision.
pub fn t_over_factorial(table: &CountTable, n: usize) -> Fixed {
    Fixed::ratio(
        num_bigint::BigInt::from(table.t(n).clone()),
        num_bigint::BigInt::from(table.factorial(n).clone()),
    )
}

/// Unlabeled threshold graphs on n vertices: 2^{n−1}.
pub fn unlabeled_count(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(BigUint::one() << (n - 1))
}

/// Unlabeled bipartite threshold graphs with parts of sizes n1, n2: C(n1+n2, n1).
pub fn bipartite_unlabeled_count(n1: usize, n2: usize) -> Result<BigUint> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Domain("both parts need at least one vertex".into()));
    }
    Ok(CountTable::new(n1 + n2).binomial(n1 + n2, n1))
}

/// ∏ b_j!.
pub fn automorphisms(b: &BlockSequence) -> BigUint {
    let table = CountTable::new(*b.lengths().iter().max().unwrap_or(&0));
    b.lengths()
        .iter()
        .fold(BigUint::one(), |acc, &l| acc * table.factorial(l))
}

/// n!/∏ b_j!.
pub fn labelings(b: &BlockSequence) -> BigUint {
    let n = b.order();
    CountTable::new(n).factorial(n) / automorphisms(b)
}

/// All compositions of n with first part ≥ 2, in lexicographic order.
pub fn block_compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        let min = if prefix.is_empty() { 2 } else { 1 };
        for b in min..=rest {
            prefix.push(b);
            rec(rest - b, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BlockKind;
    use num_bigint::BigInt;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Taylor coefficients of (1−x)eˣ/(2−eˣ), scaled by n!:
    /// t₀ = 1 and t_n = Σ_{k<n} C(n,k) t_k + 1 − n.
    fn gf_oracle(max_n: usize) -> Vec<BigInt> {
        let mut t = vec![BigInt::one()];
        let mut binom_row = vec![BigInt::one()];
        for n in 1..=max_n {
            let mut next = vec![BigInt::one(); n + 1];
            for k in 1..n {
                next[k] = &binom_row[k - 1] + &binom_row[k];
            }
            binom_row = next;
            let s: BigInt = (0..n).map(|k| &binom_row[k] * &t[k]).sum();
            t.push(s + BigInt::from(1) - BigInt::from(n));
        }
        t
    }

    #[test]
    fn known_table() {
        let expect = [1u64, 2, 8, 46, 332, 2874, 29024, 334982, 4349492, 62749906];
        let table = CountTable::new(10);
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(*table.t(i + 1), big(e), "t({})", i + 1);
        }
        assert_eq!(t_labeled(3).unwrap(), big(2 * 13 - 6 * 3));
    }

    #[test]
    fn surjection_values() {
        assert_eq!(surjection_number(0), big(1));
        assert_eq!(surjection_number(1), big(1));
        assert_eq!(surjection_number(2), big(3));
        assert_eq!(surjection_number(3), big(13));
        assert_eq!(surjection_number(4), big(75));
    }

    #[test]
    fn formula_matches_generating_function() {
        let table = CountTable::new(200);
        let oracle = gf_oracle(200);
        for n in 1..=200 {
            assert_eq!(BigInt::from(table.t(n).clone()), oracle[n], "n = {n}");
        }
    }

    #[test]
    fn isolated_counts() {
        let got: Vec<_> = (0..=4).map(|j| t_isolated(4, j).unwrap()).collect();
        assert_eq!(got, vec![big(23), big(16), big(6), big(0), big(1)]);
        assert_eq!(t_isolated(2, 2).unwrap(), big(1));
        assert!(t_isolated(1, 0).is_err());
        assert!(t_isolated(3, 4).is_err());
        let table = CountTable::new(100);
        for n in 2..=100 {
            let s = (0..=n).fold(BigUint::zero(), |acc, j| acc + table.t_isolated(n, j).unwrap());
            assert_eq!(s, *table.t(n), "n = {n}");
            assert!(table.t_isolated(n, n - 1).unwrap().is_zero());
        }
    }

    #[test]
    fn series_cross_check_for_surjections() {
        // R_n = Σ_{ℓ≥0} ℓ^n / 2^{ℓ+1}, summed far enough that the tail is negligible
        for n in 0..=20u32 {
            let mut sum = Fixed::zero();
            for l in 0..600u64 {
                let num = BigInt::from(l).pow(n);
                let den = BigInt::one() << (l + 1);
                sum = &sum + &Fixed::ratio(num, den);
            }
            let exact = Fixed::from_biguint(&surjection_number(n as usize));
            assert!((&sum - &exact).abs().to_f64() < 1e-40, "n = {n}");
        }
    }

    #[test]
    fn asymptotic_bound_holds() {
        let table = CountTable::new(30);
        let mut prev_zeta = f64::INFINITY;
        for n in 2..=30 {
            let a = t_asymptotic(n).unwrap();
            let exact = t_over_factorial(&table, n);
            let err = (&exact - &a.approximation).abs();
            assert!(err <= a.error_bound, "n = {n}");
            let z = Fixed::zeta(n as u32).to_f64();
            assert!(z < prev_zeta && z > 1.0);
            prev_zeta = z;
        }
        let a = t_asymptotic(10).unwrap();
        assert!(a.error_bound.to_f64() / a.approximation.to_f64() < 1e-6);
    }

    #[test]
    fn unlabeled_and_bipartite() {
        assert_eq!(unlabeled_count(3).unwrap(), big(4));
        assert_eq!(unlabeled_count(1).unwrap(), big(1));
        assert_eq!(unlabeled_count(10).unwrap(), big(512));
        assert_eq!(bipartite_unlabeled_count(1, 1).unwrap(), big(2));
        assert_eq!(bipartite_unlabeled_count(2, 2).unwrap(), big(6));
        assert_eq!(bipartite_unlabeled_count(3, 4).unwrap(), big(35));
    }

    #[test]
    fn automorphisms_and_labelings() {
        let b = BlockSequence::new(vec![2, 1, 1, 1], BlockKind::Isolated).unwrap();
        assert_eq!(automorphisms(&b), big(2));
        assert_eq!(labelings(&b), big(60));
        let b = BlockSequence::new(vec![6], BlockKind::Dominating).unwrap();
        assert_eq!(automorphisms(&b), big(720));
        assert_eq!(labelings(&b), big(1));
    }

    #[test]
    fn compositions_sum_to_t() {
        let table = CountTable::new(20);
        for n in 2..=20 {
            let comps = block_compositions(n);
            assert_eq!(comps.len(), 1 << (n - 2));
            if n <= 12 {
                let total = comps.into_iter().fold(BigUint::zero(), |acc, c| {
                    let b = BlockSequence::new(c, BlockKind::Isolated).unwrap();
                    acc + labelings(&b) * 2u8
                });
                assert_eq!(total, *table.t(n));
            }
        }
    }

    #[test]
    fn stirling_route_matches_direct_sum() {
        // R_n = Σ_k k!·S(n,k) with S from the classical recurrence
        let mut row = vec![BigUint::one()];
        for n in 1..=30usize {
            let mut next = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let keep = if k < row.len() { &row[k] * k } else { BigUint::zero() };
                next[k] = keep + &row[k - 1];
            }
            let mut fact = BigUint::one();
            let mut r = BigUint::zero();
            for (k, s) in next.iter().enumerate().skip(1) {
                fact *= k;
                r += &fact * s;
            }
            assert_eq!(r, surjection_number(n));
            row = next;
        }
    }

    #[test]
    fn shared_table_grows() {
        assert!(shared_table(5).max_n() >= 5);
        assert!(shared_table(70).max_n() >= 70);
        assert_eq!(*shared_table(10).t(10), big(62749906));
    }

    #[test]
    fn corruption_breaks_identity() {
        let mut table = CountTable::new(8);
        table.corrupt(6);
        let s = (0..=6).fold(BigUint::zero(), |acc, j| acc + table.t_isolated(6, j).unwrap());
        assert_ne!(s, *table.t(6));
    }
}
