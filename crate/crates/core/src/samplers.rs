//! Random threshold and bipartite threshold graphs.
//!
//! Every sampler is a pure function of its parameters and the [`RngState`].
//! Each function states the words it draws, in order.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteGraph;
use crate::counting::{shared_table, CountTable};
use crate::error::{Error, Result};
use crate::graph::{from_weights, BlockKind, BlockSequence, CreationCode, Graph};
use crate::measures::UpperSet;
use crate::real_dist::RealCdf;
use crate::rng::RngState;

/// Rejections allowed in the block sampler before giving up.
pub const RESTART_LIMIT: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockLaw {
    /// B* ~ Geometric(1/2) on {0, 1, …}.
    Unlabeled,
    /// B* ~ Poisson(ln 2).
    Labeled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModelSpec {
    UniformUnlabeled { n: usize },
    UniformLabeled { n: usize },
    Blocks { law: BlockLaw, n: usize },
    Attachment { n: usize, p: f64 },
    AttachmentShuffled { n: usize, p: f64 },
    Weights { n: usize, dist: RealCdf, t: f64 },
    /// Vertex i gets weight `weights[i]`; no randomness.
    FixedWeights { weights: Vec<f64>, t: f64 },
    UpperSetModel { n: usize, set: UpperSet },
    BipAttachment { n1: usize, n2: usize, p1: f64, p2: f64 },
    BipWeights { n1: usize, n2: usize, fx: RealCdf, fy: RealCdf, t: f64 },
    BipUniform { n1: usize, n2: usize },
    BipUpperSet { n1: usize, n2: usize, set: UpperSet },
}

/// Output of [`sample`].
#[derive(Clone, Debug, PartialEq)]
pub enum Sample {
    /// A code-valued draw; the graph is its decoding.
    Code(CreationCode),
    Graph(Graph),
    Bipartite(BipartiteGraph),
}

impl Sample {
    pub fn graph(&self) -> Option<Graph> {
        match self {
            Sample::Code(c) => Some(c.decode()),
            Sample::Graph(g) => Some(g.clone()),
            Sample::Bipartite(_) => None,
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("probability {p} outside [0,1]")))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::UniformUnlabeled { n } | ModelSpec::UniformLabeled { n } => check_n(*n),
            ModelSpec::Blocks { n, .. } => {
                if *n < 2 {
                    Err(Error::Domain("block sampler needs n >= 2".into()))
                } else {
                    Ok(())
                }
            }
            ModelSpec::Attachment { n, p } | ModelSpec::AttachmentShuffled { n, p } => {
                check_n(*n)?;
                check_p(*p)
            }
            ModelSpec::Weights { n, dist, .. } => {
                check_n(*n)?;
                dist.validate()
            }
            ModelSpec::FixedWeights { weights, .. } => check_n(weights.len()),
            ModelSpec::UpperSetModel { n, .. } => check_n(*n),
            ModelSpec::BipAttachment { n1, n2, p1, p2 } => {
                check_n(*n1)?;
                check_n(*n2)?;
                check_p(*p1)?;
                check_p(*p2)
            }
            ModelSpec::BipWeights { n1, n2, fx, fy, .. } => {
                check_n(*n1)?;
                check_n(*n2)?;
                fx.validate()?;
                fy.validate()
            }
            ModelSpec::BipUniform { n1, n2 } | ModelSpec::BipUpperSet { n1, n2, .. } => {
                check_n(*n1)?;
                check_n(*n2)
            }
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(
            self,
            ModelSpec::BipAttachment { .. }
                | ModelSpec::BipWeights { .. }
                | ModelSpec::BipUniform { .. }
                | ModelSpec::BipUpperSet { .. }
        )
    }

    /// Vertex count (n1 + n2 for bipartite models).
    pub fn order(&self) -> usize {
        match self {
            ModelSpec::UniformUnlabeled { n }
            | ModelSpec::UniformLabeled { n }
            | ModelSpec::Blocks { n, .. }
            | ModelSpec::Attachment { n, .. }
            | ModelSpec::AttachmentShuffled { n, .. }
            | ModelSpec::Weights { n, .. }
            | ModelSpec::UpperSetModel { n, .. } => *n,
            ModelSpec::FixedWeights { weights, .. } => weights.len(),
            ModelSpec::BipAttachment { n1, n2, .. }
            | ModelSpec::BipWeights { n1, n2, .. }
            | ModelSpec::BipUniform { n1, n2 }
            | ModelSpec::BipUpperSet { n1, n2, .. } => n1 + n2,
        }
    }
}

/// Draw one graph from `spec`.
pub fn sample(spec: &ModelSpec, rng: &mut RngState) -> Result<Sample> {
    spec.validate()?;
    Ok(match spec {
        ModelSpec::UniformUnlabeled { n } => Sample::Code(sample_unlabeled_uniform(*n, rng)),
        ModelSpec::UniformLabeled { n } => Sample::Graph(sample_labeled_uniform(*n, rng)),
        ModelSpec::Blocks { law, n } => match law {
            BlockLaw::Unlabeled => Sample::Code(sample_blocks(*law, *n, rng)?.blocks.code()),
            BlockLaw::Labeled => Sample::Graph(sample_blocks_labeled_graph(*n, rng)?),
        },
        ModelSpec::Attachment { n, p } => Sample::Code(sample_attachment_code(*n, *p, rng)),
        ModelSpec::AttachmentShuffled { n, p } => {
            Sample::Graph(sample_attachment_shuffled(*n, *p, rng))
        }
        ModelSpec::Weights { n, dist, t } => Sample::Graph(sample_weights(*n, dist, *t, rng).0),
        ModelSpec::FixedWeights { weights, t } => Sample::Graph(from_weights(weights, *t)),
        ModelSpec::UpperSetModel { n, set } => Sample::Graph(sample_upper_set(*n, set, rng)),
        ModelSpec::BipAttachment { n1, n2, p1, p2 } => {
            Sample::Bipartite(sample_bip_attachment(*n1, *n2, *p1, *p2, rng))
        }
        ModelSpec::BipWeights { n1, n2, fx, fy, t } => {
            Sample::Bipartite(sample_bip_weights(*n1, *n2, fx, fy, *t, rng))
        }
        ModelSpec::BipUniform { n1, n2 } => Sample::Bipartite(sample_bip_uniform(*n1, *n2, rng)),
        ModelSpec::BipUpperSet { n1, n2, set } => {
            Sample::Bipartite(sample_bip_upper_set(*n1, *n2, set, rng))
        }
    })
}

/// Vertex degrees of the graph [`sample`] would return for the same RNG state,
/// without materializing its adjacency where a shortcut exists.
pub fn sample_degrees(spec: &ModelSpec, rng: &mut RngState) -> Result<Vec<usize>> {
    spec.validate()?;
    Ok(match spec {
        ModelSpec::UniformUnlabeled { n } => sample_unlabeled_uniform(*n, rng).degrees(),
        ModelSpec::UniformLabeled { n } => {
            let table = shared_table(*n);
            let chunks = labeled_chunks(&table, *n, rng);
            let perm = rng.permutation(*n);
            let mut deg = vec![0; *n];
            let mut a = 0;
            let mut earlier_dominating = 0;
            let mut kind = BlockKind::Isolated;
            for &j in &chunks {
                for _ in 0..j {
                    let own = if kind == BlockKind::Dominating { *n - 1 - a } else { 0 };
                    deg[perm[a]] = earlier_dominating + own;
                    if kind == BlockKind::Dominating {
                        earlier_dominating += 1;
                    }
                    a += 1;
                }
                kind = kind.other();
            }
            deg
        }
        ModelSpec::Blocks { law, n } => {
            let code = sample_blocks(*law, *n, rng)?.blocks.code();
            let d = code.degrees();
            if *law == BlockLaw::Labeled {
                let perm = rng.permutation(*n);
                let mut deg = vec![0; *n];
                for (a, &v) in perm.iter().enumerate() {
                    deg[v] = d[a];
                }
                deg
            } else {
                d
            }
        }
        ModelSpec::Attachment { n, p } => degrees_attachment(*n, *p, rng),
        ModelSpec::AttachmentShuffled { n, p } => {
            let d = degrees_attachment(*n, *p, rng);
            let perm = rng.permutation(*n);
            let mut deg = vec![0; *n];
            for (a, &v) in perm.iter().enumerate() {
                deg[v] = d[a];
            }
            deg
        }
        ModelSpec::Weights { n, dist, t } => degrees_weights(*n, dist, *t, rng),
        ModelSpec::FixedWeights { weights, t } => degrees_from_weights(weights, *t),
        ModelSpec::UpperSetModel { n, set } => degrees_upper_set(*n, set, rng),
        _ => {
            return Err(Error::Unsupported(
                "degree statistics are defined for one-part models only".into(),
            ))
        }
    })
}

/// One fair coin per position α₂…α_n: n − 1 words.
pub fn sample_unlabeled_uniform(n: usize, rng: &mut RngState) -> CreationCode {
    CreationCode::new((1..n).map(|_| rng.coin()).collect())
}

/// Uniform labeled threshold graph by exact categorical draws on counts.
///
/// Draws: a big integer below t(n) selects j₀ (weights t(n, j), j = 0..n); then while
/// n′ > 0 a big integer below t(n′) selects j ≥ 1 (weights 2t(n′, j)). Chunks are
/// isolated, dominating, isolated, … in peeling order. Finally a Fisher–Yates
/// permutation assigns vertices to peeling positions.
pub fn sample_labeled_uniform(n: usize, rng: &mut RngState) -> Graph {
    assert!(n >= 1);
    let table = shared_table(n);
    sample_labeled_uniform_with(&table, n, rng)
}

pub fn sample_labeled_uniform_with(table: &CountTable, n: usize, rng: &mut RngState) -> Graph {
    let chunks = labeled_chunks(table, n, rng);
    let mut dominating = Vec::with_capacity(n);
    let mut kind = BlockKind::Isolated;
    for &j in &chunks {
        dominating.extend(std::iter::repeat_n(kind == BlockKind::Dominating, j));
        kind = kind.other();
    }
    let perm = rng.permutation(n);
    // position a dominating ⇒ joined to every later position
    let mut g = Graph::empty(n);
    for a in 0..n {
        if dominating[a] {
            for b in a + 1..n {
                g.add_edge(perm[a], perm[b]);
            }
        }
    }
    g
}

/// Chunk sizes j₀, j₁, … of the peeling (j₀ may be 0).
pub fn labeled_chunks(table: &CountTable, n: usize, rng: &mut RngState) -> Vec<usize> {
    if n == 1 {
        // a lone vertex is isolated
        return vec![1];
    }
    let mut chunks = Vec::new();
    let mut rest = n;
    let mut first = true;
    while rest > 0 {
        let r = rng.biguint_below(table.t(rest));
        let j = walk_isolated_weights(table, rest, &r, first);
        chunks.push(j);
        rest -= j;
        first = false;
    }
    chunks
}

/// Smallest j with r < Σ_{i ≤ j} w(i), where w(i) = t(m, i) on the first step
/// (i from 0) and 2t(m, i) afterwards (i from 1). Binomials are updated in place.
fn walk_isolated_weights(table: &CountTable, m: usize, r: &BigUint, first: bool) -> usize {
    let mut acc = BigUint::from(0u8);
    let mut binom = BigUint::from(1u8);
    for j in 0..=m {
        if j > 0 {
            binom = binom * BigUint::from(m - j + 1) / BigUint::from(j);
        }
        if !first && j == 0 {
            continue;
        }
        let w = if j == m {
            BigUint::from(if first { 1u8 } else { 2u8 })
        } else if j == m - 1 {
            BigUint::from(0u8)
        } else if first {
            &binom * table.t(m - j) / BigUint::from(2u8)
        } else {
            &binom * table.t(m - j)
        };
        acc += w;
        if *r < acc {
            return j;
        }
    }
    unreachable!("weights sum to t(m)")
}

/// Outcome of the block sampler.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDraw {
    pub blocks: BlockSequence,
    /// Rejected attempts before success.
    pub rejections: usize,
}

/// Block lengths by renewal with rejection.
///
/// Draws: per attempt, one word per block length (B₁ from the law conditioned on
/// ≥ 2, later blocks conditioned on ≥ 1) until the sum reaches n; then one coin for
/// the first kind.
pub fn sample_blocks(law: BlockLaw, n: usize, rng: &mut RngState) -> Result<BlockDraw> {
    if n < 2 {
        return Err(Error::Domain("block sampler needs n >= 2".into()));
    }
    let mut rejections = 0;
    loop {
        let mut lengths = Vec::new();
        let mut sum = 0;
        while sum < n {
            let min = if lengths.is_empty() { 2 } else { 1 };
            let b = conditioned_draw(law, min, rng);
            lengths.push(b);
            sum += b;
        }
        if sum == n {
            let kind = if rng.coin() {
                BlockKind::Isolated
            } else {
                BlockKind::Dominating
            };
            return Ok(BlockDraw {
                blocks: BlockSequence::new(lengths, kind)?,
                rejections,
            });
        }
        rejections += 1;
        if rejections >= RESTART_LIMIT {
            return Err(Error::RestartLimit {
                attempts: rejections,
            });
        }
    }
}

/// Labeled block sampler: blocks, then a Fisher–Yates labeling.
pub fn sample_blocks_labeled_graph(n: usize, rng: &mut RngState) -> Result<Graph> {
    let draw = sample_blocks(BlockLaw::Labeled, n, rng)?;
    let perm = rng.permutation(n);
    Ok(draw.blocks.code().decode().relabel(&perm))
}

/// (B* | B* ≥ min) by inversion on the renormalized tail; one word.
fn conditioned_draw(law: BlockLaw, min: usize, rng: &mut RngState) -> usize {
    let u = rng.open01();
    match law {
        BlockLaw::Unlabeled => {
            // P(B* − min ≥ j | B* ≥ min) = 2^{−j}
            min + (-u.log2()).floor() as usize
        }
        BlockLaw::Labeled => {
            let lambda = std::f64::consts::LN_2;
            let mut pk = (-lambda).exp();
            let mut head = 0.0;
            for k in 0..min {
                head += pk;
                pk *= lambda / (k + 1) as f64;
            }
            let tail = 1.0 - head;
            let target = u * tail;
            let mut acc = 0.0;
            let mut k = min;
            loop {
                acc += pk;
                if target < acc || pk < 1e-300 {
                    return k;
                }
                k += 1;
                pk *= lambda / k as f64;
            }
        }
    }
}

/// Code bits i.i.d. Bernoulli(p): n − 1 words.
pub fn sample_attachment_code(n: usize, p: f64, rng: &mut RngState) -> CreationCode {
    CreationCode::new((1..n).map(|_| rng.bernoulli(p)).collect())
}

pub fn sample_attachment(n: usize, p: f64, rng: &mut RngState) -> Graph {
    sample_attachment_code(n, p, rng).decode()
}

/// Attachment code (n − 1 words) followed by a Fisher–Yates relabeling.
pub fn sample_attachment_shuffled(n: usize, p: f64, rng: &mut RngState) -> Graph {
    let g = sample_attachment(n, p, rng);
    let perm = rng.permutation(n);
    g.relabel(&perm)
}

/// Weights X₁…X_n in vertex order (one word each); edge ij iff X_i + X_j > t.
pub fn sample_weights(n: usize, dist: &RealCdf, t: f64, rng: &mut RngState) -> (Graph, Vec<f64>) {
    let w: Vec<f64> = (0..n).map(|_| dist.sample(rng)).collect();
    (from_weights(&w, t), w)
}

/// Same draws and edge rule as [`sample_weights`], counting degrees in O(n log n).
pub fn degrees_weights(n: usize, dist: &RealCdf, t: f64, rng: &mut RngState) -> Vec<usize> {
    let w: Vec<f64> = (0..n).map(|_| dist.sample(rng)).collect();
    degrees_from_weights(&w, t)
}

pub fn degrees_from_weights(w: &[f64], t: f64) -> Vec<usize> {
    let mut sorted = w.to_vec();
    sorted.sort_by(f64::total_cmp);
    w.iter()
        .map(|&x| {
            // x + y is monotone in y, so the partners form a suffix
            let k = sorted.partition_point(|&y| !(x + y > t));
            let own = usize::from(x + x > t);
            sorted.len() - k - own
        })
        .collect()
}

/// U₁…U_n uniform in vertex order (one word each); edge ij iff (max, min) of
/// (U_i, U_j) as (x, y) lies in the set.
pub fn sample_upper_set(n: usize, set: &UpperSet, rng: &mut RngState) -> Graph {
    let u: Vec<f64> = (0..n).map(|_| rng.uniform01()).collect();
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = if u[i] >= u[j] { (u[i], u[j]) } else { (u[j], u[i]) };
            if set.contains(x, y) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Degrees of [`sample_upper_set`] from the same draws, by binary search.
pub fn degrees_upper_set(n: usize, set: &UpperSet, rng: &mut RngState) -> Vec<usize> {
    let u: Vec<f64> = (0..n).map(|_| rng.uniform01()).collect();
    let mut sorted = u.clone();
    sorted.sort_by(f64::total_cmp);
    u.iter()
        .map(|&a| {
            let lo = sorted.partition_point(|&v| v < a);
            let hi = sorted.partition_point(|&v| v <= a);
            // partners above a: v ≥ g(a)
            let g_a = set.boundary(a);
            let above = sorted.len() - hi - sorted[hi..].partition_point(|&v| v < g_a);
            // partners below a: a ≥ g(v), a suffix of the prefix since g decreases
            let below = lo - sorted[..lo].partition_point(|&v| !(a >= set.boundary(v)));
            // ties with a (other than itself): contains(a, a)
            let ties = if set.contains(a, a) { hi - lo - 1 } else { 0 };
            above + below + ties
        })
        .collect()
}

/// Degrees of the attachment graph straight from the code: n − 1 words.
pub fn degrees_attachment(n: usize, p: f64, rng: &mut RngState) -> Vec<usize> {
    sample_attachment_code(n, p, rng).degrees()
}

/// Fisher–Yates over the n1 + n2 markers (items below n1 are white V1 vertices),
/// then one word per position in order: white joins all earlier black with
/// probability p1, black joins all earlier white with probability p2.
pub fn sample_bip_attachment(
    n1: usize,
    n2: usize,
    p1: f64,
    p2: f64,
    rng: &mut RngState,
) -> BipartiteGraph {
    let order = rng.permutation(n1 + n2);
    let coins: Vec<bool> = order
        .iter()
        .map(|&v| rng.bernoulli(if v < n1 { p1 } else { p2 }))
        .collect();
    let mut b = BipartiteGraph::empty(n1, n2);
    for (pos, &v) in order.iter().enumerate() {
        if !coins[pos] {
            continue;
        }
        for &u in &order[..pos] {
            match (v < n1, u < n1) {
                (true, false) => b.add_edge(v, u - n1),
                (false, true) => b.add_edge(u, v - n1),
                _ => {}
            }
        }
    }
    b
}

/// Fisher–Yates over the markers; each white vertex joins every earlier black one.
pub fn sample_bip_uniform(n1: usize, n2: usize, rng: &mut RngState) -> BipartiteGraph {
    let order = rng.permutation(n1 + n2);
    let mut b = BipartiteGraph::empty(n1, n2);
    for (pos, &v) in order.iter().enumerate() {
        if v < n1 {
            for &u in &order[..pos] {
                if u >= n1 {
                    b.add_edge(v, u - n1);
                }
            }
        }
    }
    b
}

/// X₁…X_{n1} then Y₁…Y_{n2}, one word each; edge ij iff X_i + Y_j > t.
pub fn sample_bip_weights(
    n1: usize,
    n2: usize,
    fx: &RealCdf,
    fy: &RealCdf,
    t: f64,
    rng: &mut RngState,
) -> BipartiteGraph {
    let x: Vec<f64> = (0..n1).map(|_| fx.sample(rng)).collect();
    let y: Vec<f64> = (0..n2).map(|_| fy.sample(rng)).collect();
    let mut b = BipartiteGraph::empty(n1, n2);
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            if xi + yj > t {
                b.add_edge(i, j);
            }
        }
    }
    b
}

/// U₁…U_{n1} then V₁…V_{n2}, one word each; edge ij iff (U_i, V_j) lies in the set.
pub fn sample_bip_upper_set(
    n1: usize,
    n2: usize,
    set: &UpperSet,
    rng: &mut RngState,
) -> BipartiteGraph {
    let u: Vec<f64> = (0..n1).map(|_| rng.uniform01()).collect();
    let v: Vec<f64> = (0..n2).map(|_| rng.uniform01()).collect();
    let mut b = BipartiteGraph::empty(n1, n2);
    for (i, &ui) in u.iter().enumerate() {
        for (j, &vj) in v.iter().enumerate() {
            if set.contains(ui, vj) {
                b.add_edge(i, j);
            }
        }
    }
    b
}
