//! Degree-count laws, exact expectations, limiting constants and distribution distances.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::shared_table;
use crate::error::{Error, Result};
use crate::fixed::Fixed;
use crate::graph::{classify_four, enumerate_threshold_codes, ForbiddenPattern, Graph};

/// N_d(G) for d = 0..n−1.
pub fn degree_counts(degrees: &[usize]) -> Vec<u64> {
    let n = degrees.len();
    let mut counts = vec![0u64; n.max(1)];
    for &d in degrees {
        counts[d] += 1;
    }
    counts
}

/// A law on nonnegative integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteLaw {
    probs: BTreeMap<u64, f64>,
}

impl DiscreteLaw {
    pub fn new(probs: BTreeMap<u64, f64>) -> Result<Self> {
        if probs.values().any(|&p| !(p >= 0.0)) {
            return Err(Error::Domain("probabilities must be nonnegative".into()));
        }
        let total = kahan_sum(probs.values().copied());
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("probabilities sum to {total}")));
        }
        Ok(DiscreteLaw { probs })
    }

    /// Relative frequencies of observed values.
    pub fn empirical(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut total = 0u64;
        for v in values {
            *counts.entry(v).or_default() += 1;
            total += 1;
        }
        if total == 0 {
            return Err(Error::Domain("no observations".into()));
        }
        let probs = counts
            .into_iter()
            .map(|(k, c)| (k, c as f64 / total as f64))
            .collect();
        DiscreteLaw::new(probs)
    }

    pub fn from_rationals(probs: &BTreeMap<u64, BigRational>) -> Result<Self> {
        DiscreteLaw::new(
            probs
                .iter()
                .map(|(&k, p)| (k, p.to_f64().unwrap_or(0.0)))
                .collect(),
        )
    }

    pub fn prob(&self, k: u64) -> f64 {
        self.probs.get(&k).copied().unwrap_or(0.0)
    }

    pub fn probs(&self) -> &BTreeMap<u64, f64> {
        &self.probs
    }

    pub fn mean(&self) -> f64 {
        kahan_sum(self.probs.iter().map(|(&k, &p)| k as f64 * p))
    }
}

pub fn tv_distance(a: &DiscreteLaw, b: &DiscreteLaw) -> f64 {
    tv_distance_maps(&a.probs, &b.probs)
}

/// Half the L¹ distance between two probability maps on any ordered support.
pub fn tv_distance_maps<K: Ord>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let mut diffs = Vec::new();
    for (k, &p) in a {
        diffs.push((p - b.get(k).copied().unwrap_or(0.0)).abs());
    }
    for (k, &q) in b {
        if !a.contains_key(k) {
            diffs.push(q);
        }
    }
    0.5 * kahan_sum(diffs)
}

/// Normalized frequencies of keyed observations.
pub fn frequencies<K: Ord + Clone>(counts: &BTreeMap<K, u64>) -> BTreeMap<K, f64> {
    let total: u64 = counts.values().sum();
    counts
        .iter()
        .map(|(k, &c)| (k.clone(), c as f64 / total as f64))
        .collect()
}

/// Compensated (Neumaier) summation in iteration order.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// P(Bin(n, p) ≤ d): pmf ratios walked outward from the mode, self-normalized.
pub fn binomial_cdf(n: u64, p: f64, d: u64) -> f64 {
    if d >= n {
        return 1.0;
    }
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    let q = 1.0 - p;
    let mode = (((n + 1) as f64 * p).floor() as u64).min(n);
    let mut w = vec![0.0f64; n as usize + 1];
    w[mode as usize] = 1.0;
    let ratio_up = p / q;
    for k in mode + 1..=n {
        // pmf(k)/pmf(k−1) = (n−k+1)/k · p/q
        let r = (n - k + 1) as f64 / k as f64 * ratio_up;
        w[k as usize] = w[k as usize - 1] * r;
        if w[k as usize] < 1e-300 {
            break;
        }
    }
    for k in (0..mode).rev() {
        // pmf(k)/pmf(k+1) = (k+1)/(n−k) · q/p
        let r = (k + 1) as f64 / (n - k) as f64 / ratio_up;
        w[k as usize] = w[k as usize + 1] * r;
        if w[k as usize] < 1e-300 {
            break;
        }
    }
    let total = kahan_sum(w.iter().copied());
    // sum whichever side is smaller to keep relative accuracy in the tails
    if d < mode {
        kahan_sum(w[..=d as usize].iter().copied()) / total
    } else {
        1.0 - kahan_sum(w[d as usize + 1..].iter().copied()) / total
    }
}

/// Exact P(Bin(n, p) ≤ d).
pub fn binomial_cdf_exact(n: u64, p: &BigRational, d: u64) -> BigRational {
    let q = BigRational::one() - p;
    let mut s = BigRational::zero();
    let mut binom = BigInt::one();
    for k in 0..=d.min(n) {
        if k > 0 {
            binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
        }
        s += BigRational::from_integer(binom.clone()) * p.pow(k as i32) * q.pow((n - k) as i32);
    }
    s
}

/// E N_d under the attachment model T_{n,p}: q/p + (p/q − q/p)·P(Bin(n,p) ≤ d).
pub fn expected_nd_attachment(n: usize, p: f64, d: usize) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain("closed form needs 0 < p < 1".into()));
    }
    if n == 0 || d >= n {
        return Err(Error::Domain(format!("degree {d} out of range for n = {n}")));
    }
    let q = 1.0 - p;
    Ok(q / p + (p / q - q / p) * binomial_cdf(n as u64, p, d as u64))
}

pub fn expected_nd_attachment_exact(n: usize, p: &BigRational, d: usize) -> Result<BigRational> {
    if *p <= BigRational::zero() || *p >= BigRational::one() {
        return Err(Error::Domain("closed form needs 0 < p < 1".into()));
    }
    if n == 0 || d >= n {
        return Err(Error::Domain(format!("degree {d} out of range for n = {n}")));
    }
    let q = BigRational::one() - p;
    Ok(&q / p + (p / &q - &q / p) * binomial_cdf_exact(n as u64, p, d as u64))
}

/// E N_d for d = 0..n−1 by summing over all 2^{n−1} codes, each weighted p^{#1} q^{#0}.
pub fn expected_nd_exhaustive(n: usize, p: &BigRational) -> Result<Vec<BigRational>> {
    let q = BigRational::one() - p;
    let mut out = vec![BigRational::zero(); n];
    for code in enumerate_threshold_codes(n)? {
        let ones = code.bits().iter().filter(|&&b| b).count() as i32;
        let w = p.pow(ones) * q.pow(n as i32 - 1 - ones);
        for (d, c) in degree_counts(&code.degrees()).into_iter().enumerate() {
            if c > 0 {
                out[d] += &w * BigRational::from_integer(BigInt::from(c));
            }
        }
    }
    Ok(out)
}

/// Exact law of N₀ for the uniform unlabeled threshold graph.
pub fn n0_law_unlabeled_exact(n: usize) -> Result<BTreeMap<u64, BigRational>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let mut law = BTreeMap::new();
    let two = BigRational::from_integer(BigInt::from(2));
    for j in 0..=n {
        let p = if j + 2 <= n {
            two.pow(-(j as i32) - 1)
        } else if j + 1 == n {
            BigRational::zero()
        } else {
            two.pow(1 - n as i32)
        };
        law.insert(j as u64, p);
    }
    Ok(law)
}

pub fn n0_law_unlabeled(n: usize) -> Result<DiscreteLaw> {
    DiscreteLaw::from_rationals(&n0_law_unlabeled_exact(n)?)
}

/// Exact law of N₀ for the uniform labeled threshold graph: t(n, j)/t(n).
pub fn n0_law_labeled_exact(n: usize) -> Result<BTreeMap<u64, BigRational>> {
    if n < 2 {
        return Err(Error::Domain("labeled N0 law needs n >= 2".into()));
    }
    let table = shared_table(n);
    let total = BigInt::from(table.t(n).clone());
    let mut law = BTreeMap::new();
    for j in 0..=n {
        let c = BigInt::from(table.t_isolated(n, j)?);
        law.insert(j as u64, BigRational::new(c, total.clone()));
    }
    Ok(law)
}

pub fn n0_law_labeled(n: usize) -> Result<DiscreteLaw> {
    DiscreteLaw::from_rationals(&n0_law_labeled_exact(n)?)
}

pub fn rational_mean(law: &BTreeMap<u64, BigRational>) -> BigRational {
    law.iter().fold(BigRational::zero(), |acc, (&k, p)| {
        acc + p * BigRational::from_integer(BigInt::from(k))
    })
}

/// γ_d; `None` means d = ∞.
pub fn gamma_d(d: Option<usize>) -> f64 {
    match d {
        None => 1.0,
        Some(0) => std::f64::consts::LN_2,
        Some(d) => {
            let table = shared_table(d);
            let ln2 = Fixed::ln2();
            let r = Fixed::from_biguint(table.surjection(d));
            let v = (&(&r * &ln2.pow(d as u32 + 1)) * &Fixed::from_int(2))
                .div(&Fixed::from_biguint(table.factorial(d)));
            v.to_f64()
        }
    }
}

/// Law of X_d: P(ℓ) = γ_d (ln2)^{ℓ−1}/(2·ℓ!) for ℓ ≥ 1 and 1 − γ_d/(2 ln 2) at 0.
/// The support is truncated once the remaining tail is below 1e-18 and the residue
/// added to the last point.
pub fn x_d_law(d: Option<usize>) -> DiscreteLaw {
    let g = gamma_d(d);
    let ln2 = std::f64::consts::LN_2;
    let mut probs = BTreeMap::new();
    probs.insert(0, 1.0 - g / (2.0 * ln2));
    let mut term = g / 2.0; // ℓ = 1
    let mut l = 1u64;
    let mut acc = vec![probs[&0]];
    while term > 1e-18 {
        probs.insert(l, term);
        acc.push(term);
        l += 1;
        term *= ln2 / l as f64;
    }
    let total = kahan_sum(acc);
    *probs.get_mut(&(l - 1)).expect("nonempty") += 1.0 - total;
    DiscreteLaw::new(probs).expect("normalized")
}

/// Counts of 4-subsets inducing 2K₂, P₄ and C₄, by direct enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedCounts {
    pub two_k2: u64,
    pub p4: u64,
    pub c4: u64,
}

pub fn induced_counts(g: &Graph) -> Result<InducedCounts> {
    let n = g.n();
    let limit = crate::graph::FORBIDDEN_SCAN_LIMIT;
    if n > limit {
        return Err(Error::SizeGuard { n, limit });
    }
    let mut c = InducedCounts::default();
    for a in 0..n {
        for b in a + 1..n {
            for x in b + 1..n {
                for y in x + 1..n {
                    match classify_four(g, [a, b, x, y]) {
                        Some(ForbiddenPattern::TwoK2) => c.two_k2 += 1,
                        Some(ForbiddenPattern::P4) => c.p4 += 1,
                        Some(ForbiddenPattern::C4) => c.c4 += 1,
                        None => {}
                    }
                }
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_labeled, is_threshold};

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn binomial_cdf_matches_exact() {
        for &(n, a, b) in &[(10u64, 3, 10), (30, 1, 2), (200, 1, 100), (1000, 7, 10), (2000, 1, 4)] {
            let p = a as f64 / b as f64;
            let pr = ratio(a, b);
            for d in [0, 1, n / 10, n / 4, n / 2, n - 1] {
                let exact = binomial_cdf_exact(n, &pr, d).to_f64().unwrap();
                let got = binomial_cdf(n, p, d);
                let rel = (got - exact).abs() / exact.max(1e-300);
                assert!(rel < 1e-11 || (got - exact).abs() < 1e-300, "n={n} p={p} d={d}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn attachment_expectation_examples() {
        for n in [2, 5, 40] {
            for d in 0..n {
                assert!((expected_nd_attachment(n, 0.5, d).unwrap() - 1.0).abs() < 1e-12);
            }
        }
        for p in [0.1, 0.3, 0.8] {
            assert!((expected_nd_attachment(2, p, 0).unwrap() - 2.0 * (1.0 - p)).abs() < 1e-12);
        }
        assert!(expected_nd_attachment(3, 0.0, 0).is_err());
    }

    #[test]
    fn closed_form_equals_exhaustive() {
        for n in 1..=6 {
            for p in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
                let ex = expected_nd_exhaustive(n, &p).unwrap();
                for (d, e) in ex.iter().enumerate() {
                    assert_eq!(*e, expected_nd_attachment_exact(n, &p, d).unwrap(), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn n0_unlabeled() {
        let law = n0_law_unlabeled_exact(3).unwrap();
        let v: Vec<_> = law.values().cloned().collect();
        assert_eq!(v, vec![ratio(1, 2), ratio(1, 4), ratio(0, 1), ratio(1, 4)]);
        // direct enumeration of the four codes
        let mut counts = BTreeMap::new();
        for c in enumerate_threshold_codes(3).unwrap() {
            *counts.entry(degree_counts(&c.degrees())[0]).or_insert(0u64) += 1;
        }
        for (j, p) in &law {
            let c = counts.get(j).copied().unwrap_or(0);
            assert_eq!(*p, ratio(c as i64, 4));
        }
        for n in 2..=50 {
            assert_eq!(rational_mean(&n0_law_unlabeled_exact(n).unwrap()), ratio(1, 1));
        }
        let big = n0_law_unlabeled(40).unwrap();
        for j in 0..10 {
            assert!((big.prob(j) - 0.5f64.powi(j as i32 + 1)).abs() < 1e-12);
        }
    }

    #[test]
    fn n0_labeled() {
        let law = n0_law_labeled_exact(4).unwrap();
        assert_eq!(law[&0], ratio(1, 2));
        assert_eq!(law[&3], ratio(0, 1));
        let m = rational_mean(&n0_law_labeled_exact(30).unwrap()).to_f64().unwrap();
        assert!((m - std::f64::consts::LN_2).abs() < 1e-3);
        // against enumeration of labeled graphs on 5 vertices
        let mut counts = BTreeMap::new();
        let mut total = 0;
        for g in enumerate_labeled(5).unwrap().filter(is_threshold) {
            *counts.entry(degree_counts(&g.degrees())[0]).or_insert(0i64) += 1;
            total += 1;
        }
        for (j, p) in n0_law_labeled_exact(5).unwrap() {
            assert_eq!(p, ratio(counts.get(&j).copied().unwrap_or(0), total));
        }
    }

    #[test]
    #[allow(clippy::approx_constant, clippy::excessive_precision)]
    fn gamma_values() {
        // 21-digit references computed independently
        let exact = [
            0.693147180559945309417,
            0.960906027836402849334,
            0.999073955966788439157,
            1.000285427193361624846,
        ];
        for (d, e) in exact.iter().enumerate() {
            assert!((gamma_d(Some(d)) - e).abs() < 1e-12, "d={d}");
        }
        // printed five-decimal values agree to printed precision; the last is truncated
        for (d, e) in [0.69315, 0.96091, 0.99907].iter().enumerate() {
            assert!((gamma_d(Some(d)) - e).abs() < 5e-6, "d={d}");
        }
        assert_eq!((gamma_d(Some(3)) * 1e5).floor(), 100028.0);
        for d in 3..=10 {
            assert!((gamma_d(Some(d)) - 1.0).abs() < 1e-3);
        }
        assert_eq!(gamma_d(None), 1.0);
    }

    #[test]
    fn x_d_laws() {
        for d in [Some(0), Some(1), Some(2), Some(7), None] {
            let law = x_d_law(d);
            let total = kahan_sum(law.probs().values().copied());
            assert!((total - 1.0).abs() < 1e-15);
            assert!((law.mean() - gamma_d(d)).abs() < 1e-12, "{d:?}");
        }
    }

    #[test]
    fn induced_count_examples() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(induced_counts(&p4).unwrap(), InducedCounts { two_k2: 0, p4: 1, c4: 0 });
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(induced_counts(&c4).unwrap(), InducedCounts { two_k2: 0, p4: 0, c4: 1 });
        let g: crate::graph::CreationCode = "0110100".parse().unwrap();
        assert_eq!(induced_counts(&g.decode()).unwrap(), InducedCounts::default());
    }

    #[test]
    fn distances() {
        let law = n0_law_unlabeled(5).unwrap();
        assert_eq!(tv_distance(&law, &law), 0.0);
        let a = DiscreteLaw::empirical([0, 0, 1, 1]).unwrap();
        let b = DiscreteLaw::empirical([1, 2]).unwrap();
        assert!((tv_distance(&a, &b) - 0.5).abs() < 1e-15);
    }
}
