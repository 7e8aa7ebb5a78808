//! Probability measures on [0,1] made of atoms plus piecewise-constant
//! densities, their CDFs and quantiles, the dagger involution, and distances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Horizontal extent below which a polyline segment counts as vertical (an atom).
const FLAT_EPS: f64 = 1e-14;
/// Allowed total-mass defect when building a measure.
const MASS_TOL: f64 = 1e-9;

/// Atoms at breakpoints `0 = x_0 < … < x_m = 1` and a constant density on each gap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepLinearCdf {
    xs: Vec<f64>,
    atoms: Vec<f64>,
    dens: Vec<f64>,
    /// F(x_i−) and F(x_i).
    left: Vec<f64>,
    right: Vec<f64>,
}

impl StepLinearCdf {
    pub fn new(xs: Vec<f64>, atoms: Vec<f64>, dens: Vec<f64>) -> Result<Self> {
        let m = xs.len();
        if m < 2 || xs[0] != 0.0 || xs[m - 1] != 1.0 {
            return Err(Error::Domain("breakpoints must run from 0 to 1".into()));
        }
        if atoms.len() != m || dens.len() != m - 1 {
            return Err(Error::Domain("atoms/densities do not match breakpoints".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("breakpoints must increase strictly".into()));
        }
        if atoms.iter().chain(&dens).any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::Domain("atoms and densities must be finite and >= 0".into()));
        }
        let mut left = Vec::with_capacity(m);
        let mut right = Vec::with_capacity(m);
        let mut acc = 0.0;
        for i in 0..m {
            if i > 0 {
                acc += dens[i - 1] * (xs[i] - xs[i - 1]);
            }
            left.push(acc);
            acc += atoms[i];
            right.push(acc);
        }
        if (acc - 1.0).abs() > MASS_TOL {
            return Err(Error::Domain(format!("total mass {acc} differs from 1")));
        }
        // pin F(1) = 1 exactly
        right[m - 1] = 1.0;
        for v in left.iter_mut().chain(right.iter_mut()) {
            *v = v.min(1.0);
        }
        Ok(StepLinearCdf {
            xs,
            atoms,
            dens,
            left,
            right,
        })
    }

    pub fn uniform() -> Self {
        StepLinearCdf::new(vec![0.0, 1.0], vec![0.0, 0.0], vec![1.0]).unwrap()
    }

    /// δ_x.
    pub fn point_mass(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("point mass at {x} outside [0,1]")));
        }
        StepLinearCdf::from_components(&[(x, 1.0)], &[])
    }

    /// Measure from atoms `(location, mass)` and uniform pieces `(a, b, mass)`.
    pub fn from_components(atoms: &[(f64, f64)], pieces: &[(f64, f64, f64)]) -> Result<Self> {
        let mut xs = vec![0.0, 1.0];
        for &(x, _) in atoms {
            xs.push(x);
        }
        for &(a, b, _) in pieces {
            if !(a < b) {
                return Err(Error::Domain(format!("empty piece ({a}, {b})")));
            }
            xs.push(a);
            xs.push(b);
        }
        if xs.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::Domain("component outside [0,1]".into()));
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut atom_mass = vec![0.0; xs.len()];
        for &(x, m) in atoms {
            let i = xs.partition_point(|&v| v < x);
            atom_mass[i] += m;
        }
        let mut dens = vec![0.0; xs.len() - 1];
        for &(a, b, m) in pieces {
            let i0 = xs.partition_point(|&v| v < a);
            let i1 = xs.partition_point(|&v| v < b);
            let d = m / (b - a);
            for slot in &mut dens[i0..i1] {
                *slot += d;
            }
        }
        StepLinearCdf::new(xs, atom_mass, dens)
    }

    /// (weight, measure) mixture; weights must sum to 1.
    pub fn mixture(parts: &[(f64, &StepLinearCdf)]) -> Result<Self> {
        let mut atoms = Vec::new();
        let mut pieces = Vec::new();
        for &(w, mu) in parts {
            for (i, &a) in mu.atoms.iter().enumerate() {
                if a > 0.0 {
                    atoms.push((mu.xs[i], w * a));
                }
            }
            for i in 0..mu.dens.len() {
                let mass = mu.dens[i] * (mu.xs[i + 1] - mu.xs[i]);
                if mass > 0.0 {
                    pieces.push((mu.xs[i], mu.xs[i + 1], w * mass));
                }
            }
        }
        StepLinearCdf::from_components(&atoms, &pieces)
    }

    /// Measure whose completed CDF graph is the given monotone polyline from (0,0) to (1,1).
    pub fn from_polyline(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("polyline needs two points".into()));
        }
        let mut xs = vec![0.0];
        let mut atoms = vec![0.0];
        let mut dens = Vec::new();
        let mut last_x = 0.0;
        for w in points.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if x1 < x0 - FLAT_EPS || y1 < y0 - FLAT_EPS {
                return Err(Error::Domain("polyline must be nondecreasing".into()));
            }
            let dy = (y1 - y0).max(0.0);
            if x1 - last_x <= FLAT_EPS {
                *atoms.last_mut().unwrap() += dy;
            } else {
                let x = if x1 > 1.0 - FLAT_EPS { 1.0 } else { x1 };
                dens.push(dy / (x - last_x));
                xs.push(x);
                atoms.push(0.0);
                last_x = x;
            }
        }
        if *xs.last().unwrap() != 1.0 {
            *xs.last_mut().unwrap() = 1.0;
        }
        if xs.len() == 1 {
            xs.push(1.0);
            atoms.push(0.0);
            dens.push(0.0);
        }
        StepLinearCdf::new(xs, atoms, dens)
    }

    /// Completed CDF graph: (0,0), then up atoms and along densities, ending at (1,1).
    pub fn polyline(&self) -> Vec<(f64, f64)> {
        let mut pts = vec![(0.0, 0.0)];
        for i in 0..self.xs.len() {
            let p = (self.xs[i], self.left[i]);
            if *pts.last().unwrap() != p {
                pts.push(p);
            }
            if self.atoms[i] > 0.0 {
                pts.push((self.xs[i], self.right[i]));
            }
        }
        if *pts.last().unwrap() != (1.0, 1.0) {
            pts.push((1.0, 1.0));
        }
        pts
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn densities(&self) -> &[f64] {
        &self.dens
    }

    /// F(x) = μ[0, x]; 0 below 0 and 1 from 1 on.
    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        if self.xs[i] == x {
            self.right[i]
        } else {
            (self.right[i] + self.dens[i] * (x - self.xs[i])).min(1.0)
        }
    }

    /// F(x−) = μ[0, x).
    pub fn cdf_left(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x > 1.0 {
            return 1.0;
        }
        let j = self.xs.partition_point(|&v| v < x) - 1;
        if self.xs[j + 1] == x {
            self.left[j + 1]
        } else {
            (self.right[j] + self.dens[j] * (x - self.xs[j])).min(1.0)
        }
    }

    /// F⁻¹(x) = sup{t ≤ 1 : F(t) ≤ x} with sup ∅ = 0; equals inf{t : F(t) > x}.
    pub fn quantile(&self, x: f64) -> f64 {
        if x >= 1.0 {
            return 1.0;
        }
        if x < 0.0 {
            return 0.0;
        }
        let pts = self.polyline();
        quantile_on_polyline(&pts, x)
    }

    /// Quantile function with the polyline cached, for repeated evaluation.
    pub fn quantile_fn(&self) -> impl Fn(f64) -> f64 {
        let pts = self.polyline();
        move |x| {
            if x >= 1.0 {
                1.0
            } else if x < 0.0 {
                0.0
            } else {
                quantile_on_polyline(&pts, x)
            }
        }
    }

    /// μ†: reflect the completed CDF graph through (x, y) ↦ (1 − y, 1 − x).
    pub fn dagger(&self) -> StepLinearCdf {
        let pts: Vec<(f64, f64)> = self
            .polyline()
            .iter()
            .rev()
            .map(|&(x, y)| (1.0 - y, 1.0 - x))
            .collect();
        StepLinearCdf::from_polyline(&pts).expect("reflection of a valid CDF graph")
    }

    pub fn upper_set(&self) -> UpperSet {
        UpperSet::from_curve(self.polyline().iter().map(|&(s, f)| (f, 1.0 - s)).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric_within(1e-12)
    }

    pub fn is_symmetric_within(&self, tol: f64) -> bool {
        self.approx_eq(&self.dagger(), tol)
    }

    /// Equality at continuity points: one-sided limits agree at every breakpoint of either.
    pub fn approx_eq(&self, other: &StepLinearCdf, tol: f64) -> bool {
        self.max_discrepancy(other) <= tol
    }

    /// Largest |F₁ − F₂| at continuity points next to the union of breakpoints.
    ///
    /// Points are taken `KNOT_GAP` to either side of each knot, so jumps that
    /// differ only by rounding in their location do not register.
    pub fn max_discrepancy(&self, other: &StepLinearCdf) -> f64 {
        const KNOT_GAP: f64 = 1e-10;
        let mut pts: Vec<f64> = self.xs.iter().chain(&other.xs).copied().collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let mut worst: f64 = 0.0;
        for &x in &pts {
            for y in [x - KNOT_GAP, x + KNOT_GAP] {
                if (0.0..1.0).contains(&y) {
                    worst = worst.max((self.cdf(y) - other.cdf(y)).abs());
                }
            }
        }
        worst
    }

    /// ∫ t^k dμ.
    pub fn moment(&self, k: u32) -> f64 {
        let k = k as i32;
        let mut s = 0.0;
        for (i, &a) in self.atoms.iter().enumerate() {
            s += a * self.xs[i].powi(k);
        }
        for i in 0..self.dens.len() {
            let (a, b) = (self.xs[i], self.xs[i + 1]);
            s += self.dens[i] * (b.powi(k + 1) - a.powi(k + 1)) / f64::from(k + 1);
        }
        s
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    /// Edge density of the limit object: the mean.
    pub fn edge_density(&self) -> f64 {
        self.mean()
    }
}

fn quantile_on_polyline(pts: &[(f64, f64)], x: f64) -> f64 {
    let k = pts.partition_point(|&(_, y)| y <= x);
    if k == 0 {
        return 0.0;
    }
    if k >= pts.len() {
        return 1.0;
    }
    let (x0, y0) = pts[k - 1];
    let (x1, y1) = pts[k];
    if x1 - x0 <= 0.0 {
        x1
    } else {
        (x0 + (x - y0) * (x1 - x0) / (y1 - y0)).clamp(x0, x1)
    }
}

/// μ_p: density (1−p)/p on (0,p) and p/(1−p) on (p,1); μ₀ = δ₀, μ₁ = δ₁.
pub fn mu_p(p: f64) -> Result<StepLinearCdf> {
    mu_p1p2(p, p)
}

/// μ_{p1,p2}: CDF polyline (0,0) → (p2, 1−p1) → (1,1).
pub fn mu_p1p2(p1: f64, p2: f64) -> Result<StepLinearCdf> {
    if !(0.0..=1.0).contains(&p1) || !(0.0..=1.0).contains(&p2) {
        return Err(Error::Domain(format!("p1 = {p1}, p2 = {p2} must lie in [0,1]")));
    }
    StepLinearCdf::from_polyline(&[(0.0, 0.0), (p2, 1.0 - p1), (1.0, 1.0)])
}

/// Sorted values in [0,1] carrying mass 1/n each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDist {
    values: Vec<f64>,
}

impl EmpiricalDist {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empirical distribution needs a value".into()));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Domain("empirical values must lie in [0,1]".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(EmpiricalDist { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }

    pub fn cdf_left(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v < x) as f64 / self.values.len() as f64
    }

    pub fn moment(&self, k: u32) -> f64 {
        self.values.iter().map(|v| v.powi(k as i32)).sum::<f64>() / self.values.len() as f64
    }

    pub fn to_measure(&self) -> StepLinearCdf {
        let w = 1.0 / self.values.len() as f64;
        let atoms: Vec<(f64, f64)> = self.values.iter().map(|&v| (v, w)).collect();
        StepLinearCdf::from_components(&atoms, &[]).expect("values in [0,1]")
    }
}

/// ν(G): degrees divided by n.
pub fn nu(g: &Graph) -> EmpiricalDist {
    let n = g.n() as f64;
    EmpiricalDist::new(g.degrees().iter().map(|&d| d as f64 / n).collect()).expect("n >= 1")
}

/// ν₁: V1 degrees divided by n2.
pub fn nu1(b: &BipartiteGraph) -> EmpiricalDist {
    let n2 = b.n2() as f64;
    EmpiricalDist::new(b.degrees1().iter().map(|&d| d as f64 / n2).collect()).expect("n1 >= 1")
}

/// ν₂: V2 degrees divided by n1.
pub fn nu2(b: &BipartiteGraph) -> EmpiricalDist {
    let n1 = b.n1() as f64;
    EmpiricalDist::new(b.degrees2().iter().map(|&d| d as f64 / n1).collect()).expect("n2 >= 1")
}

/// ∫ t^k dν(G) as an exact rational: (1/n) Σ_v (d(v)/n)^k.
pub fn degree_moment_exact(g: &Graph, k: u32) -> BigRational {
    let n = BigInt::from(g.n());
    let mut s = BigRational::zero();
    for d in g.degrees() {
        s += BigRational::new(BigInt::from(d), n.clone()).pow(k as i32);
    }
    s / BigRational::from_integer(n)
}

/// Homomorphism density of the star K_{1,k}: Σ_v d(v)^k / n^{k+1}.
pub fn star_density(g: &Graph, k: u32) -> BigRational {
    let num: BigInt = g.degrees().iter().map(|&d| BigInt::from(d).pow(k)).sum();
    BigRational::new(num, BigInt::from(g.n()).pow(k + 1))
}

/// Closed increasing subset of [0,1]², stored by its boundary curve.
///
/// The curve runs from (0,1) to (1,0) with x nondecreasing and y nonincreasing;
/// (x, y) belongs to the set iff x ≥ g(y), g(y) being the smallest curve x at height ≤ y.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperSet {
    curve: Vec<(f64, f64)>,
}

impl UpperSet {
    pub fn from_curve(curve: Vec<(f64, f64)>) -> Self {
        debug_assert!(curve.len() >= 2);
        UpperSet { curve }
    }

    /// {x + y ≥ 1}.
    pub fn triangle() -> Self {
        UpperSet::from_curve(vec![(0.0, 1.0), (1.0, 0.0)])
    }

    /// [0,1]².
    pub fn full() -> Self {
        UpperSet::from_curve(vec![(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)])
    }

    pub fn curve(&self) -> &[(f64, f64)] {
        &self.curve
    }

    /// Boundary g(y).
    pub fn boundary(&self, y: f64) -> f64 {
        let k = self.curve.partition_point(|&(_, cy)| cy > y);
        if k == 0 {
            return self.curve[0].0;
        }
        if k >= self.curve.len() {
            return 1.0;
        }
        let (x0, y0) = self.curve[k - 1];
        let (x1, y1) = self.curve[k];
        if y0 - y1 <= 0.0 {
            x1
        } else {
            (x0 + (y0 - y) * (x1 - x0) / (y0 - y1)).clamp(x0, x1)
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.boundary(y)
    }

    /// Lebesgue measure of the vertical section {y : (u, y) ∈ S}.
    pub fn slice(&self, u: f64) -> f64 {
        let k = self.curve.partition_point(|&(cx, _)| cx <= u);
        if k == 0 {
            return 0.0;
        }
        if k >= self.curve.len() {
            return 1.0 - self.curve[k - 1].1;
        }
        let (x0, y0) = self.curve[k - 1];
        let (x1, y1) = self.curve[k];
        let y = if x1 - x0 <= 0.0 {
            y0
        } else {
            y0 + (u - x0) * (y1 - y0) / (x1 - x0)
        };
        1.0 - y
    }

    /// Slice function as linear pieces `(u0, u1, v0, v1)` covering [0,1].
    fn slice_pieces(&self) -> Vec<(f64, f64, f64, f64)> {
        let mut out = Vec::new();
        let first = self.curve[0].0;
        if first > 0.0 {
            out.push((0.0, first, 0.0, 0.0));
        }
        for w in self.curve.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if x1 > x0 {
                out.push((x0, x1, 1.0 - y0, 1.0 - y1));
            }
        }
        let last = self.curve.last().unwrap();
        if last.0 < 1.0 {
            out.push((last.0, 1.0, 1.0 - last.1, 1.0 - last.1));
        }
        out
    }

    pub fn area(&self) -> f64 {
        self.slice_pieces()
            .iter()
            .map(|&(u0, u1, v0, v1)| (u1 - u0) * (v0 + v1) / 2.0)
            .sum()
    }

    /// Mirror image in the diagonal.
    pub fn reflect(&self) -> UpperSet {
        UpperSet::from_curve(self.curve.iter().rev().map(|&(x, y)| (y, x)).collect())
    }

    /// Measure whose upper set this is: the distribution of slice(U).
    pub fn to_measure(&self) -> Result<StepLinearCdf> {
        let pts: Vec<(f64, f64)> = self.curve.iter().map(|&(x, y)| (1.0 - y, x)).collect();
        StepLinearCdf::from_polyline(&pts)
    }
}

/// Area of the symmetric difference.
pub fn set_measure_distance(a: &UpperSet, b: &UpperSet) -> f64 {
    let pa = a.slice_pieces();
    let pb = b.slice_pieces();
    let mut cuts: Vec<f64> = pa
        .iter()
        .chain(&pb)
        .flat_map(|&(u0, u1, _, _)| [u0, u1])
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let eval = |pieces: &[(f64, f64, f64, f64)], lo: f64, hi: f64| {
        // piece containing (lo, hi)
        let mid = 0.5 * (lo + hi);
        let p = pieces
            .iter()
            .find(|&&(u0, u1, _, _)| u0 <= mid && mid <= u1)
            .expect("pieces cover [0,1]");
        let at = |u: f64| p.2 + (u - p.0) * (p.3 - p.2) / (p.1 - p.0);
        (at(lo), at(hi))
    };
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let (a0, a1) = eval(&pa, lo, hi);
        let (b0, b1) = eval(&pb, lo, hi);
        total += abs_linear_integral(a0 - b0, a1 - b1, hi - lo);
    }
    total
}

/// ∫₀ʰ |f| for f linear from `d0` to `d1`.
fn abs_linear_integral(d0: f64, d1: f64, h: f64) -> f64 {
    if d0 * d1 >= 0.0 {
        h * (d0.abs() + d1.abs()) / 2.0
    } else {
        let r = d0.abs() / (d0.abs() + d1.abs());
        h * (r * d0.abs() + (1.0 - r) * d1.abs()) / 2.0
    }
}

/// Distribution functions with one-sided limits and jump locations.
pub trait Cdf {
    fn at(&self, x: f64) -> f64;
    fn at_left(&self, x: f64) -> f64;
    /// Points outside of which the function is linear.
    fn knots(&self) -> Vec<f64>;
}

impl Cdf for StepLinearCdf {
    fn at(&self, x: f64) -> f64 {
        self.cdf(x)
    }
    fn at_left(&self, x: f64) -> f64 {
        self.cdf_left(x)
    }
    fn knots(&self) -> Vec<f64> {
        self.xs.clone()
    }
}

impl Cdf for EmpiricalDist {
    fn at(&self, x: f64) -> f64 {
        self.cdf(x)
    }
    fn at_left(&self, x: f64) -> f64 {
        self.cdf_left(x)
    }
    fn knots(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.dedup();
        v.push(0.0);
        v.push(1.0);
        v
    }
}

/// Lévy distance, by bisection on ε to absolute accuracy 1e-9.
pub fn levy_distance(a: &dyn Cdf, b: &dyn Cdf) -> f64 {
    let ka = a.knots();
    let kb = b.knots();
    // sup over x of both inequalities: F_a(x−ε) − ε ≤ F_b(x) ≤ F_a(x+ε) + ε
    let ok = |eps: f64| {
        let slack = 1e-13;
        let mut cands: Vec<f64> = kb.clone();
        for &k in &ka {
            cands.push(k + eps);
            cands.push(k - eps);
        }
        cands.iter().all(|&x| {
            a.at(x - eps) - eps <= b.at(x) + slack
                && a.at_left(x - eps) - eps <= b.at_left(x) + slack
                && b.at(x) <= a.at(x + eps) + eps + slack
                && b.at_left(x) <= a.at_left(x + eps) + eps + slack
        })
    };
    if ok(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Kolmogorov–Smirnov distance sup |F_a − F_b|, exact for these CDF shapes.
pub fn ks_distance(a: &dyn Cdf, b: &dyn Cdf) -> f64 {
    let mut cands = a.knots();
    cands.extend(b.knots());
    cands
        .iter()
        .map(|&x| (a.at(x) - b.at(x)).abs().max((a.at_left(x) - b.at_left(x)).abs()))
        .fold(0.0, f64::max)
}

/// A fixed catalog of twenty measures covering atoms, densities, and mixtures.
pub fn measure_library() -> Vec<(String, StepLinearCdf)> {
    let mut lib: Vec<(String, StepLinearCdf)> = Vec::new();
    let mut add = |name: &str, mu: StepLinearCdf| lib.push((name.to_string(), mu));
    add("uniform", StepLinearCdf::uniform());
    add("delta0", StepLinearCdf::point_mass(0.0).unwrap());
    add("delta1", StepLinearCdf::point_mass(1.0).unwrap());
    add("delta0.5", StepLinearCdf::point_mass(0.5).unwrap());
    add("delta0.3", StepLinearCdf::point_mass(0.3).unwrap());
    for p in [0.1, 0.3, 0.7, 0.9] {
        add(&format!("mu_p{p}"), mu_p(p).unwrap());
    }
    for (p1, p2) in [(0.2, 0.6), (0.6, 0.2), (0.0, 0.5), (1.0, 0.3), (0.4, 0.0), (0.5, 1.0)] {
        add(&format!("mu_p{p1}_{p2}"), mu_p1p2(p1, p2).unwrap());
    }
    let half = StepLinearCdf::point_mass(0.5).unwrap();
    let u = StepLinearCdf::uniform();
    add("uniform+delta0.5", StepLinearCdf::mixture(&[(0.5, &u), (0.5, &half)]).unwrap());
    add(
        "three-atoms",
        StepLinearCdf::from_components(&[(0.1, 0.2), (0.4, 0.5), (0.95, 0.3)], &[]).unwrap(),
    );
    add(
        "two-pieces",
        StepLinearCdf::from_components(&[], &[(0.0, 0.25, 0.6), (0.5, 1.0, 0.4)]).unwrap(),
    );
    add(
        "atoms-and-pieces",
        StepLinearCdf::from_components(
            &[(0.0, 0.1), (0.6, 0.2), (1.0, 0.1)],
            &[(0.1, 0.3, 0.3), (0.2, 0.9, 0.3)],
        )
        .unwrap(),
    );
    add(
        "steep",
        StepLinearCdf::from_components(&[], &[(0.0, 0.01, 0.5), (0.01, 1.0, 0.5)]).unwrap(),
    );
    lib
}
