//! Weight distributions on the real line and the limit measure of the weight model.

use serde::{Deserialize, Serialize};
use libm::erfc;

use crate::error::{Error, Result};
use crate::measures::StepLinearCdf;
use crate::rng::RngState;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum RealCdf {
    Uniform { a: f64, b: f64 },
    Normal { mean: f64, sd: f64 },
    /// Density 1−p on (−1,0) and p on (0,1).
    TwoLevel { p: f64 },
    /// `(value, probability)` pairs.
    PointMasses(Vec<(f64, f64)>),
    /// Atoms `(x, mass)` and uniform pieces `(a, b, mass)`.
    Piecewise {
        atoms: Vec<(f64, f64)>,
        pieces: Vec<(f64, f64, f64)>,
    },
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal quantile: Acklam's rational approximation followed by one
/// Halley step against `erfc`, giving absolute error well below 1e-9.
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383_577_518_672_69e2,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const LOW: f64 = 0.02425;
    let x = if p < LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    let e = normal_cdf(x) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
    x - u / (1.0 + x * u / 2.0)
}

impl RealCdf {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Domain(m.to_string()));
        match self {
            RealCdf::Uniform { a, b } if !(a < b) => bad("uniform needs a < b"),
            RealCdf::Normal { sd, .. } if !(*sd > 0.0) => bad("normal needs sd > 0"),
            RealCdf::TwoLevel { p } if !(0.0..=1.0).contains(p) => bad("two-level needs p in [0,1]"),
            RealCdf::PointMasses(list) => {
                if list.is_empty() || list.iter().any(|&(_, w)| !(w >= 0.0)) {
                    return bad("point masses need nonnegative probabilities");
                }
                let total: f64 = list.iter().map(|&(_, w)| w).sum();
                if (total - 1.0).abs() > 1e-9 {
                    return bad("point-mass probabilities must sum to 1");
                }
                Ok(())
            }
            RealCdf::Piecewise { atoms, pieces } => {
                let total: f64 = atoms.iter().map(|a| a.1).chain(pieces.iter().map(|p| p.2)).sum();
                if (total - 1.0).abs() > 1e-9
                    || pieces.iter().any(|&(a, b, m)| !(a < b) || !(m >= 0.0))
                    || atoms.iter().any(|&(_, m)| !(m >= 0.0))
                {
                    return bad("piecewise components must be valid and sum to 1");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Atoms and uniform pieces, when the distribution has that shape.
    fn components(&self) -> Option<(Vec<(f64, f64)>, Vec<(f64, f64, f64)>)> {
        match self {
            RealCdf::Uniform { a, b } => Some((vec![], vec![(*a, *b, 1.0)])),
            RealCdf::TwoLevel { p } => {
                let mut pieces = Vec::new();
                if *p < 1.0 {
                    pieces.push((-1.0, 0.0, 1.0 - p));
                }
                if *p > 0.0 {
                    pieces.push((0.0, 1.0, *p));
                }
                Some((vec![], pieces))
            }
            RealCdf::PointMasses(list) => Some((list.clone(), vec![])),
            RealCdf::Piecewise { atoms, pieces } => Some((atoms.clone(), pieces.clone())),
            RealCdf::Normal { .. } => None,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            RealCdf::Normal { mean, sd } => normal_cdf((x - mean) / sd),
            _ => {
                let (atoms, pieces) = self.components().expect("piecewise");
                let mut s = 0.0;
                for (at, m) in atoms {
                    if at <= x {
                        s += m;
                    }
                }
                for (a, b, m) in pieces {
                    s += m * ((x - a) / (b - a)).clamp(0.0, 1.0);
                }
                s.min(1.0)
            }
        }
    }

    /// Generalized inverse inf{x : F(x) ≥ u} for u ∈ (0,1).
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        match self {
            RealCdf::Uniform { a, b } => a + (b - a) * u,
            RealCdf::Normal { mean, sd } => mean + sd * normal_quantile(u),
            RealCdf::TwoLevel { p } => {
                let q = 1.0 - p;
                if u < q {
                    u / q - 1.0
                } else {
                    (u - q) / p
                }
            }
            _ => {
                let (atoms, pieces) = self.components().expect("piecewise");
                let mut knots: Vec<f64> = atoms.iter().map(|a| a.0).collect();
                for &(a, b, _) in &pieces {
                    knots.push(a);
                    knots.push(b);
                }
                knots.sort_by(f64::total_cmp);
                knots.dedup();
                // first knot whose right value reaches u; the crossing lies in the gap before it
                let k = knots.partition_point(|&x| self.cdf(x) < u);
                if k >= knots.len() {
                    return *knots.last().expect("nonempty");
                }
                let at = knots[k];
                let below = f_left(self, at);
                if k == 0 || below < u {
                    return at;
                }
                let prev = knots[k - 1];
                let f0 = self.cdf(prev);
                prev + (at - prev) * (u - f0) / (below - f0)
            }
        }
    }

    /// One draw by inversion; consumes one 64-bit word.
    pub fn sample(&self, rng: &mut RngState) -> f64 {
        self.inverse_cdf(rng.open01())
    }
}

/// Distribution of 1 − F(t − X) for X ~ F.
pub fn weight_limit(f: &RealCdf, t: f64) -> Result<StepLinearCdf> {
    f.validate()?;
    match f {
        RealCdf::Normal { mean, sd } => Ok(normal_weight_limit((t - 2.0 * mean) / sd)),
        _ => piecewise_weight_limit(f, t),
    }
}

fn piecewise_weight_limit(f: &RealCdf, t: f64) -> Result<StepLinearCdf> {
    let (atoms, pieces) = f.components().ok_or_else(|| Error::Unsupported("weight limit".into()))?;
    let mut knots: Vec<f64> = atoms.iter().map(|a| a.0).collect();
    for &(a, b, _) in &pieces {
        knots.push(a);
        knots.push(b);
    }
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let y_of = |z: f64| (1.0 - f.cdf(z)).clamp(0.0, 1.0);
    let mut out_atoms = Vec::new();
    let mut out_pieces = Vec::new();
    for &(x, m) in &atoms {
        if m > 0.0 {
            out_atoms.push((y_of(t - x), m));
        }
    }
    for &(a, b, m) in &pieces {
        if m <= 0.0 {
            continue;
        }
        // z = t − X is uniform on (t − b, t − a); F is linear between knots
        let (z_lo, z_hi) = (t - b, t - a);
        let mut cuts = vec![z_lo, z_hi];
        cuts.extend(knots.iter().copied().filter(|&k| k > z_lo && k < z_hi));
        cuts.sort_by(f64::total_cmp);
        for w in cuts.windows(2) {
            let (z0, z1) = (w[0], w[1]);
            if z1 <= z0 {
                continue;
            }
            let mass = m * (z1 - z0) / (b - a);
            let mid = 0.5 * (z0 + z1);
            let slope_probe = f.cdf(mid);
            // F on (z0, z1) runs linearly from its right limit at z0 to its left limit at z1
            let f0 = f.cdf(z0);
            let f1 = f_left(f, z1);
            if (f1 - f0).abs() <= 1e-15 {
                out_atoms.push(((1.0 - slope_probe).clamp(0.0, 1.0), mass));
            } else {
                out_pieces.push(((1.0 - f1).clamp(0.0, 1.0), (1.0 - f0).clamp(0.0, 1.0), mass));
            }
        }
    }
    StepLinearCdf::from_components(&out_atoms, &out_pieces)
}

fn f_left(f: &RealCdf, x: f64) -> f64 {
    match f.components() {
        Some((atoms, pieces)) => {
            let mut s = 0.0;
            for (at, m) in atoms {
                if at < x {
                    s += m;
                }
            }
            for (a, b, m) in pieces {
                s += m * ((x - a) / (b - a)).clamp(0.0, 1.0);
            }
            s.min(1.0)
        }
        None => f.cdf(x),
    }
}

/// For normal weights the limit has CDF G(y) = Φ(τ + Φ⁻¹(y)). The graph of G is
/// sampled adaptively until linear interpolation is within 1e-9 everywhere.
fn normal_weight_limit(tau: f64) -> StepLinearCdf {
    let g = |y: f64| {
        if y <= 0.0 {
            0.0
        } else if y >= 1.0 {
            1.0
        } else {
            normal_cdf(tau + normal_quantile(y))
        }
    };
    const TOL: f64 = 1e-9;
    const MIN_WIDTH: f64 = 1e-13;
    let start = 64;
    let mut pts = Vec::new();
    for i in 0..start {
        let (a, b) = (i as f64 / start as f64, (i + 1) as f64 / start as f64);
        refine(&g, a, g(a), b, g(b), TOL, MIN_WIDTH, &mut pts);
    }
    pts.push((1.0, 1.0));
    // G equals its own dagger, so reflected samples also lie on its graph
    let mirrored: Vec<(f64, f64)> = pts.iter().map(|&(y, gy)| (1.0 - gy, 1.0 - y)).collect();
    pts.extend(mirrored);
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    StepLinearCdf::from_polyline(&pts).expect("monotone")
}

#[allow(clippy::too_many_arguments)]
fn refine(
    g: &impl Fn(f64) -> f64,
    a: f64,
    ga: f64,
    b: f64,
    gb: f64,
    tol: f64,
    min_width: f64,
    out: &mut Vec<(f64, f64)>,
) {
    let m = 0.5 * (a + b);
    let gm = g(m);
    let q1 = g(0.5 * (a + m));
    let q3 = g(0.5 * (m + b));
    let lin = |x: f64| ga + (gb - ga) * (x - a) / (b - a);
    let err = (gm - lin(m))
        .abs()
        .max((q1 - lin(0.5 * (a + m))).abs())
        .max((q3 - lin(0.5 * (m + b))).abs());
    if err <= tol || b - a <= min_width {
        out.push((a, ga));
        return;
    }
    refine(g, a, ga, m, gm, tol, min_width, out);
    refine(g, m, gm, b, gb, tol, min_width, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::mu_p;

    #[test]
    fn normal_quantile_accuracy() {
        for i in 1..1000 {
            let p = i as f64 / 1000.0;
            let x = normal_quantile(p);
            assert!((normal_cdf(x) - p).abs() < 1e-14, "p = {p}");
        }
        for p in [1e-12, 1e-8, 1e-4, 1.0 - 1e-4, 1.0 - 1e-10] {
            let x = normal_quantile(p);
            assert!(((normal_cdf(x) - p) / p.min(1.0 - p)).abs() < 1e-9, "p = {p}");
        }
        assert!((normal_quantile(0.975) - 1.959963984540054).abs() < 1e-12);
    }

    #[test]
    fn inverse_cdf_examples() {
        let two = RealCdf::TwoLevel { p: 0.3 };
        assert!((two.inverse_cdf(0.35) - -0.5).abs() < 1e-15);
        assert!((two.inverse_cdf(0.85) - 0.5).abs() < 1e-12);
        assert!((two.cdf(0.0) - 0.7).abs() < 1e-15);
        let pm = RealCdf::PointMasses(vec![(1.0, 0.25), (3.0, 0.75)]);
        assert_eq!(pm.inverse_cdf(0.2), 1.0);
        assert_eq!(pm.inverse_cdf(0.3), 3.0);
        let pw = RealCdf::Piecewise {
            atoms: vec![(0.5, 0.5)],
            pieces: vec![(0.0, 1.0, 0.5)],
        };
        assert_eq!(pw.inverse_cdf(0.1), 0.2);
        assert_eq!(pw.inverse_cdf(0.3), 0.5);
        assert!((pw.inverse_cdf(0.9) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn uniform_weights_give_uniform_limit() {
        let mu = weight_limit(&RealCdf::Uniform { a: 0.0, b: 1.0 }, 1.0).unwrap();
        assert!(mu.approx_eq(&StepLinearCdf::uniform(), 1e-12));
    }

    #[test]
    fn two_level_weights_give_mu_p() {
        for p in [0.0, 0.1, 0.3, 0.5, 0.8, 1.0] {
            let mu = weight_limit(&RealCdf::TwoLevel { p }, 0.0).unwrap();
            assert!(mu.approx_eq(&mu_p(p).unwrap(), 1e-12), "p = {p}");
            assert!(mu.is_symmetric_within(1e-12));
        }
    }

    #[test]
    fn point_mass_weights() {
        // Example weights: limit is the law of the normalized degree in the infinite blow-up
        let f = RealCdf::PointMasses(vec![
            (1.0, 0.2),
            (5.0, 0.2),
            (2.0, 0.2),
            (3.0, 0.2),
            (2.0, 0.2),
        ]);
        let mu = weight_limit(&f, 4.5).unwrap();
        // vertex of weight w sees mass P(X > 4.5 − w)
        let expect = StepLinearCdf::from_components(
            &[(0.2, 0.2), (1.0, 0.2), (0.4, 0.4), (0.8, 0.2)],
            &[],
        )
        .unwrap();
        assert!(mu.approx_eq(&expect, 1e-12));
        assert!(mu.is_symmetric_within(1e-12));
    }

    #[test]
    fn shifted_uniform_is_symmetric() {
        let mu = weight_limit(&RealCdf::Uniform { a: 0.0, b: 2.0 }, 1.5).unwrap();
        assert!(mu.is_symmetric_within(1e-12));
        // P(X + X' > 1.5) for X, X' uniform on (0,2)
        let expect = 1.0 - 1.5 * 1.5 / 8.0;
        assert!((mu.mean() - expect).abs() < 1e-12);
    }

    #[test]
    fn normal_limit_mean_matches_quadrature() {
        for t in [0.0, 1.0, 3.0, 6.0] {
            let mu = weight_limit(&RealCdf::Normal { mean: 0.0, sd: 1.0 }, t).unwrap();
            // P(X + X' > t) by midpoint quadrature over x of P(X' > t − x) φ(x)
            let h = 1e-3;
            let mut q = 0.0;
            let mut x: f64 = -10.0 + h / 2.0;
            while x < 10.0 {
                let phi = (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
                q += phi * (1.0 - normal_cdf(t - x)) * h;
                x += h;
            }
            assert!((mu.mean() - q).abs() < 1e-8, "t = {t}: {} vs {q}", mu.mean());
            assert!(mu.is_symmetric_within(1e-7));
        }
        let mu = weight_limit(&RealCdf::Normal { mean: 0.0, sd: 1.0 }, 6.0).unwrap();
        assert!(mu.cdf(0.01) > 0.99);
    }
}
