//! Laplacian spectra of threshold graphs in exact integer arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{encode, Graph};
use crate::measures::EmpiricalDist;

/// Largest order accepted by the characteristic-polynomial oracle.
pub const ORACLE_LIMIT: usize = 12;

/// Sorted integer Laplacian eigenvalues, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerSpectrum {
    values: Vec<u64>,
}

impl IntegerSpectrum {
    pub fn new(mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        IntegerSpectrum { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Σλ = 2e and Σλ² = Σd² + Σd.
    pub fn satisfies_trace_identities(&self, g: &Graph) -> bool {
        let degrees = g.degrees();
        let s1: u64 = self.values.iter().sum();
        let s2: u64 = self.values.iter().map(|l| l * l).sum();
        let d1: u64 = degrees.iter().map(|&d| d as u64).sum();
        let d2: u64 = degrees.iter().map(|&d| (d * d) as u64).sum();
        s1 == 2 * g.edge_count() as u64 && s2 == d2 + d1
    }

    /// Multiplicities of 0..=n, for histogram output.
    pub fn histogram(&self, n: usize) -> Vec<usize> {
        let mut h = vec![0; n + 1];
        for &v in &self.values {
            h[v as usize] += 1;
        }
        h
    }
}

/// {0} ∪ {d(i) + α_i : i ≥ 2}, with i running over the peeling order of `encode`.
pub fn laplacian_spectrum(g: &Graph) -> Result<IntegerSpectrum> {
    let enc = encode(g)?;
    Ok(IntegerSpectrum::new(formula(g, &enc.order, enc.code.bits())))
}

fn formula(g: &Graph, order: &[usize], bits: &[bool]) -> Vec<u64> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut values = vec![0u64];
    for (a, &b) in bits.iter().enumerate() {
        values.push((g.degree(order[a + 1]) + b as usize) as u64);
    }
    values
}

/// Checks L·φ_i = λ_i·φ_i for the explicit eigenbasis and its orthogonality.
/// φ₁ is all ones; for position a ≥ 1 (0-based), φ is −1 before a, a at a, 0 after.
pub fn verify_eigenpairs(g: &Graph) -> Result<bool> {
    let n = g.n();
    let enc = encode(g)?;
    let lambdas = formula(g, &enc.order, enc.code.bits());
    if n <= 1 {
        return Ok(true);
    }
    let order = &enc.order;
    let deg: Vec<i64> = order.iter().map(|&v| g.degree(v) as i64).collect();
    // prefix[v][a] = #{positions b < a : order[b] ~ order[v]}, in position coordinates
    let mut prefix = vec![vec![0i64; n + 1]; n];
    for v in 0..n {
        for b in 0..n {
            let adj = g.has_edge(order[v], order[b]) as i64;
            prefix[v][b + 1] = prefix[v][b] + adj;
        }
    }
    // L·1 = 0
    for v in 0..n {
        if deg[v] != prefix[v][n] {
            return Ok(false);
        }
    }
    for a in 1..n {
        let lambda = lambdas[a] as i64;
        let top = a as i64;
        let mut sum = 0i64;
        for v in 0..n {
            let phi_v = match v.cmp(&a) {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => top,
                std::cmp::Ordering::Greater => 0,
            };
            sum += phi_v;
            // Σ_{u~v} φ(u) = −#{u before a adjacent} + a·[order[a] ~ order[v]]
            let adj_a = g.has_edge(order[v], order[a]) as i64;
            let neigh = -prefix[v][a] + top * adj_a;
            if deg[v] * phi_v - neigh != lambda * phi_v {
                return Ok(false);
            }
        }
        // φ_a ⊥ 1, and φ_c is −1 on the whole support of φ_a for c > a, so
        // ⟨φ_a, φ_c⟩ = −Σφ_a; both vanish iff the entries sum to zero.
        if sum != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normalized spectral distribution: eigenvalues divided by n.
pub fn spectral_distribution(g: &Graph) -> Result<EmpiricalDist> {
    let n = g.n();
    let spec = laplacian_spectrum(g)?;
    EmpiricalDist::new(spec.values.iter().map(|&l| l as f64 / n as f64).collect())
}

/// Completed CDF polyline of the empirical law of `values/n`, scaled by n on both axes.
fn scaled_polyline(values: &[u64], n: u64) -> Vec<(i64, i64)> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut pts = vec![(0i64, 0i64)];
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        pts.push((v as i64, i as i64));
        pts.push((v as i64, j as i64));
        i = j;
    }
    pts.push((n as i64, n as i64));
    simplify(pts)
}

/// Drops repeated points and interior points of straight runs.
fn simplify(pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() == Some(&p) {
            continue;
        }
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - b.1) - (b.1 - a.1) * (p.0 - b.0);
            if cross == 0 {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

/// ν_L(G) = ν(G)†, compared as exact integer polylines.
pub fn ferrers_check(g: &Graph) -> Result<bool> {
    let n = g.n() as u64;
    if n == 0 {
        return Err(Error::Domain("graph must have a vertex".into()));
    }
    let spec = laplacian_spectrum(g)?;
    let degrees: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    let nu = scaled_polyline(&degrees, n);
    let dagger: Vec<(i64, i64)> = nu
        .iter()
        .rev()
        .map(|&(x, y)| (n as i64 - y, n as i64 - x))
        .collect();
    Ok(simplify(dagger) == scaled_polyline(&spec.values, n))
}

/// Characteristic polynomial of L by Faddeev–LeVerrier; `c[k]` multiplies x^k.
fn char_poly(l: &[Vec<i128>]) -> Vec<i128> {
    let n = l.len();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = L·M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for t in 0..n {
                    s += l[i][t] * m[t][j];
                }
                next[i][j] = s;
            }
            next[i][i] += c[n - k + 1];
        }
        m = next;
        // c_{n−k} = −tr(L·M_k)/k
        let mut tr = 0i128;
        for i in 0..n {
            for t in 0..n {
                tr += l[i][t] * m[t][i];
            }
        }
        c[n - k] = -tr / k as i128;
    }
    c
}

/// Integer roots of the characteristic polynomial of L, found among 0..=n by synthetic division.
pub fn spectrum_oracle(g: &Graph) -> Result<IntegerSpectrum> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(Error::SizeGuard { n, limit: ORACLE_LIMIT });
    }
    let mut l = vec![vec![0i128; n]; n];
    for u in 0..n {
        l[u][u] = g.degree(u) as i128;
        for v in g.neighbors(u) {
            l[u][v] = -1;
        }
    }
    let mut poly = char_poly(&l);
    let mut roots = Vec::new();
    for r in 0..=n as i128 {
        loop {
            if poly.len() <= 1 {
                break;
            }
            // divide by (x − r) from the top coefficient down
            let deg = poly.len() - 1;
            let mut q = vec![0i128; deg];
            let mut acc = 0i128;
            for k in (0..=deg).rev() {
                acc = acc * r + poly[k];
                if k > 0 {
                    q[k - 1] = acc;
                }
            }
            if acc != 0 {
                break;
            }
            roots.push(r as u64);
            poly = q;
        }
    }
    if poly.len() > 1 {
        return Err(Error::NonIntegerRoot { degree: poly.len() - 1 });
    }
    Ok(IntegerSpectrum::new(roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_threshold_codes, CreationCode};

    fn code(s: &str) -> Graph {
        s.parse::<CreationCode>().unwrap().decode()
    }

    #[test]
    fn small_examples() {
        assert_eq!(laplacian_spectrum(&code("001")).unwrap().values(), &[0, 1, 1, 4]);
        assert_eq!(laplacian_spectrum(&Graph::complete(3)).unwrap().values(), &[0, 3, 3]);
        assert_eq!(laplacian_spectrum(&Graph::empty(3)).unwrap().values(), &[0, 0, 0]);
        assert_eq!(spectrum_oracle(&code("001")).unwrap().values(), &[0, 1, 1, 4]);
        assert_eq!(spectrum_oracle(&Graph::empty(5)).unwrap().values(), &[0; 5]);
        let sd = spectral_distribution(&Graph::complete(3)).unwrap();
        assert_eq!(sd.values(), &[0.0, 1.0, 1.0]);
        assert!(verify_eigenpairs(&Graph::empty(1)).unwrap());
    }

    #[test]
    fn p4_is_rejected() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(spectrum_oracle(&p4), Err(Error::NonIntegerRoot { degree: 2 })));
        assert!(matches!(laplacian_spectrum(&p4), Err(Error::NotThreshold { .. })));
    }

    #[test]
    fn k3_last_eigenvector() {
        // φ for the last position of K₃ is (−1, −1, 2) with eigenvalue 3
        let g = Graph::complete(3);
        let phi = [-1i64, -1, 2];
        for v in 0..3 {
            let lv = g.degree(v) as i64 * phi[v] - g.neighbors(v).map(|u| phi[u]).sum::<i64>();
            assert_eq!(lv, 3 * phi[v]);
        }
        assert!(verify_eigenpairs(&g).unwrap());
    }

    #[test]
    fn exhaustive_small() {
        for n in 1..=6 {
            for c in enumerate_threshold_codes(n).unwrap() {
                let g = c.decode();
                let s = laplacian_spectrum(&g).unwrap();
                assert_eq!(s, spectrum_oracle(&g).unwrap(), "{c}");
                assert!(s.satisfies_trace_identities(&g));
                assert!(verify_eigenpairs(&g).unwrap(), "{c}");
                assert!(ferrers_check(&g).unwrap(), "{c}");
            }
        }
        for n in 2..=10 {
            assert!(ferrers_check(&Graph::complete(n)).unwrap());
        }
    }

    #[test]
    fn relabeled_graphs() {
        let g = code("0110100").relabel(&[3, 7, 0, 5, 1, 6, 2, 4]);
        assert_eq!(laplacian_spectrum(&g).unwrap(), spectrum_oracle(&g).unwrap());
        assert!(verify_eigenpairs(&g).unwrap());
        assert!(ferrers_check(&g).unwrap());
    }

    #[test]
    fn ferrers_detects_mismatch() {
        // a non-dual pair: degrees of K₃ against the spectrum of E₃
        let nu = scaled_polyline(&[2, 2, 2], 3);
        let bad = scaled_polyline(&[0, 0, 0], 3);
        let dagger: Vec<_> = nu.iter().rev().map(|&(x, y)| (3 - y, 3 - x)).collect();
        assert_ne!(simplify(dagger), bad);
    }
}
