//! Labeled simple graphs, creation codes, and threshold recognition.
//!
//! Vertices are `0..n` internally. Text and JSON formats use 1-based labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default limit for the O(n^4) forbidden-subgraph scans.
pub const FORBIDDEN_SCAN_LIMIT: usize = 500;

/// Largest order for which [`enumerate_labeled`] is allowed (2^21 graphs).
pub const ENUMERATION_LIMIT: usize = 7;

/// Simple labeled graph stored as a dense symmetric bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Build from 0-based edge pairs. Loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Format(format!(
                    "edge ({}, {}) out of range for n = {n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::Format(format!("loop at vertex {}", u + 1)));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Graph on `n ≤ 11` vertices whose edge set is the bit mask produced by [`Graph::edge_mask`].
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Neighbors of `u` in increasing order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Edge indicator bits in the order (0,1), (0,2), …, (n-2,n-1). Requires `n ≤ 11`.
    pub fn edge_mask(&self) -> u64 {
        assert!(self.n <= 11, "edge_mask needs n <= 11");
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Relabel: vertex `i` of `self` becomes vertex `perm[i]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Induced subgraph on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Binary creation code α₂…α_n; `true` means the vertex was added dominating.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CreationCode {
    bits: Vec<bool>,
}

impl CreationCode {
    pub fn new(bits: Vec<bool>) -> Self {
        CreationCode { bits }
    }

    /// Code of length `n - 1` taken from the low bits of `value`; bit `i` of
    /// `value` is α_{i+2}.
    pub fn from_index(n: usize, value: u64) -> Self {
        assert!(n >= 1);
        CreationCode {
            bits: (0..n - 1).map(|i| value >> i & 1 == 1).collect(),
        }
    }

    pub fn index(&self) -> u64 {
        assert!(self.bits.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of vertices encoded.
    pub fn order(&self) -> usize {
        self.bits.len() + 1
    }

    /// Bitwise complement; encodes the complementary graph.
    pub fn flipped(&self) -> CreationCode {
        CreationCode {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// Builds the graph by adding vertex `i` (creation order) dominating iff α_i = 1.
    pub fn decode(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        for (k, &dominating) in self.bits.iter().enumerate() {
            let v = k + 1;
            if dominating {
                for u in 0..v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Degrees of the decoded graph in creation order, without building it.
    pub fn degrees(&self) -> Vec<usize> {
        let n = self.order();
        let mut deg = vec![0usize; n];
        // later dominating vertices contribute to every earlier vertex
        let mut later_dominating = 0usize;
        for v in (0..n).rev() {
            let alpha = if v == 0 { false } else { self.bits[v - 1] };
            deg[v] = later_dominating + if alpha { v } else { 0 };
            if alpha {
                later_dominating += 1;
            }
        }
        deg
    }

    pub fn extend(&self) -> Result<ExtendedCode> {
        let first = *self
            .bits
            .first()
            .ok_or_else(|| Error::Domain("extended code needs n >= 2".into()))?;
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.push(first);
        bits.extend_from_slice(&self.bits);
        Ok(ExtendedCode { bits })
    }
}

impl fmt::Display for CreationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CreationCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Format(format!("invalid code character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CreationCode { bits })
    }
}

/// α₁α₂…α_n with α₁ = α₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedCode {
    bits: Vec<bool>,
}

impl ExtendedCode {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() < 2 || bits[0] != bits[1] {
            return Err(Error::Domain(
                "extended code needs length >= 2 and a repeated first digit".into(),
            ));
        }
        Ok(ExtendedCode { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn code(&self) -> CreationCode {
        CreationCode::new(self.bits[1..].to_vec())
    }

    /// Run-length decomposition into blocks.
    pub fn blocks(&self) -> BlockSequence {
        let mut lengths = Vec::new();
        let mut run = 0usize;
        for (i, &b) in self.bits.iter().enumerate() {
            if i > 0 && b != self.bits[i - 1] {
                lengths.push(run);
                run = 0;
            }
            run += 1;
        }
        lengths.push(run);
        BlockSequence {
            lengths,
            first_kind: if self.bits[0] {
                BlockKind::Dominating
            } else {
                BlockKind::Isolated
            },
        }
    }
}

impl fmt::Display for ExtendedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        CreationCode::new(self.bits.clone()).fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    Isolated,
    Dominating,
}

impl BlockKind {
    pub fn other(self) -> BlockKind {
        match self {
            BlockKind::Isolated => BlockKind::Dominating,
            BlockKind::Dominating => BlockKind::Isolated,
        }
    }
}

/// Block lengths b₁…b_τ in creation order with b₁ ≥ 2; kinds alternate from `first_kind`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockSequence {
    lengths: Vec<usize>,
    first_kind: BlockKind,
}

impl BlockSequence {
    pub fn new(lengths: Vec<usize>, first_kind: BlockKind) -> Result<Self> {
        if lengths.is_empty() || lengths[0] < 2 || lengths.contains(&0) {
            return Err(Error::Domain(format!(
                "invalid block lengths {lengths:?}: need b1 >= 2 and bk >= 1"
            )));
        }
        Ok(BlockSequence {
            lengths,
            first_kind,
        })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn first_kind(&self) -> BlockKind {
        self.first_kind
    }

    pub fn order(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn extended_code(&self) -> ExtendedCode {
        let mut bits = Vec::with_capacity(self.order());
        let mut kind = self.first_kind;
        for &b in &self.lengths {
            bits.extend(std::iter::repeat_n(kind == BlockKind::Dominating, b));
            kind = kind.other();
        }
        ExtendedCode { bits }
    }

    pub fn code(&self) -> CreationCode {
        self.extended_code().code()
    }
}

/// Result of peeling a threshold graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub code: CreationCode,
    /// `order[i]` is the vertex of the input graph playing creation position `i`,
    /// so `code.decode().relabel(&order) == g`.
    pub order: Vec<usize>,
}

/// The three forbidden induced subgraphs on four vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForbiddenPattern {
    TwoK2,
    P4,
    C4,
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForbiddenPattern::TwoK2 => "2K2",
            ForbiddenPattern::P4 => "P4",
            ForbiddenPattern::C4 => "C4",
        })
    }
}

/// Classify the subgraph induced on four distinct vertices.
pub fn classify_four(g: &Graph, quad: [usize; 4]) -> Option<ForbiddenPattern> {
    let mut deg = [0u8; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(quad[i], quad[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    deg.sort_unstable();
    match (edges, deg) {
        (2, [1, 1, 1, 1]) => Some(ForbiddenPattern::TwoK2),
        (3, [1, 1, 2, 2]) => Some(ForbiddenPattern::P4),
        (4, [2, 2, 2, 2]) => Some(ForbiddenPattern::C4),
        _ => None,
    }
}

/// Peel dominating (preferred) or isolated vertices, highest index first among equals.
///
/// On failure the error carries an induced 2K₂, P₄ or C₄ found in the stuck subgraph.
pub fn encode(g: &Graph) -> Result<Encoding> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Domain("graph must have at least one vertex".into()));
    }
    let mut alive = vec![true; n];
    let mut deg = g.degrees();
    let mut remaining = n;
    // filled from the back: the first vertex peeled is the last created
    let mut order = vec![0usize; n];
    let mut bits = vec![false; n - 1];
    while remaining > 1 {
        let mut dominating = None;
        let mut isolated = None;
        for v in (0..n).rev() {
            if !alive[v] {
                continue;
            }
            if deg[v] == remaining - 1 {
                dominating = Some(v);
                break;
            }
            if deg[v] == 0 && isolated.is_none() {
                isolated = Some(v);
            }
        }
        let (v, alpha) = match (dominating, isolated) {
            (Some(v), _) => (v, true),
            (None, Some(v)) => (v, false),
            (None, None) => {
                let (pattern, quad) = stuck_witness(g, &alive, &deg);
                return Err(Error::NotThreshold { pattern, quad });
            }
        };
        alive[v] = false;
        remaining -= 1;
        order[remaining] = v;
        bits[remaining - 1] = alpha;
        for u in g.neighbors(v) {
            deg[u] -= 1;
        }
    }
    order[0] = (0..n).find(|&v| alive[v]).expect("one vertex left");
    Ok(Encoding {
        code: CreationCode::new(bits),
        order,
    })
}

/// In an induced subgraph with no isolated and no dominating vertex, locate an
/// alternating 4-cycle: u of maximum degree, w a non-neighbor of u, x a neighbor of w,
/// y a neighbor of u outside N[x]. Such y always exists because deg(x) ≤ deg(u).
fn stuck_witness(g: &Graph, alive: &[bool], deg: &[usize]) -> (ForbiddenPattern, [usize; 4]) {
    let live: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let u = *live.iter().max_by_key(|&&v| deg[v]).expect("nonempty");
    let w = *live
        .iter()
        .find(|&&v| v != u && !g.has_edge(u, v))
        .expect("u is not dominating");
    let x = g
        .neighbors(w)
        .find(|&v| alive[v])
        .expect("w is not isolated");
    let y = g
        .neighbors(u)
        .find(|&v| alive[v] && v != x && !g.has_edge(v, x))
        .expect("max-degree argument");
    let mut quad = [u, y, x, w];
    let pattern = classify_four(g, quad).expect("alternating 4-cycle is forbidden");
    quad.sort_unstable();
    (pattern, quad)
}

pub fn is_threshold(g: &Graph) -> bool {
    encode(g).is_ok()
}

/// Brute-force recognition: true iff no 4-subset induces 2K₂, P₄ or C₄.
pub fn forbidden_subgraph_oracle(g: &Graph) -> Result<bool> {
    forbidden_subgraph_oracle_with_limit(g, FORBIDDEN_SCAN_LIMIT)
}

pub fn forbidden_subgraph_oracle_with_limit(g: &Graph, limit: usize) -> Result<bool> {
    let n = g.n();
    if n > limit {
        return Err(Error::SizeGuard { n, limit });
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if classify_four(g, [a, b, c, d]).is_some() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Every labeled graph on `n` vertices, in edge-mask order.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    Ok((0..1u64 << pairs).map(move |m| Graph::from_edge_mask(n, m)))
}

/// Every creation code of length `n - 1`.
pub fn enumerate_threshold_codes(n: usize) -> Result<impl Iterator<Item = CreationCode>> {
    if n == 0 || n > 40 {
        return Err(Error::SizeGuard { n, limit: 40 });
    }
    Ok((0..1u64 << (n - 1)).map(move |i| CreationCode::from_index(n, i)))
}

/// Graph of the weight representation: edge ij iff w_i + w_j > t.
pub fn from_weights(weights: &[f64], t: f64) -> Graph {
    let n = weights.len();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if weights[u] + weights[v] > t {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> CreationCode {
        s.parse().unwrap()
    }

    fn path4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn two_k2() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
    }

    fn example_one() -> Graph {
        // edges 12, 23, 24, 25, 34, 45 in 1-based labels
        Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn decode_small_codes() {
        assert_eq!(code("00").decode(), Graph::empty(3));
        assert_eq!(code("11").decode(), Graph::complete(3));
        let single = code("").decode();
        assert_eq!(single.n(), 1);
        assert_eq!(single.edge_count(), 0);
    }

    #[test]
    fn example_one_from_weights_and_encoding() {
        let g = from_weights(&[1.0, 5.0, 2.0, 3.0, 2.0], 4.5);
        assert_eq!(g, example_one());
        let enc = encode(&g).unwrap();
        assert_eq!(enc.code.to_string(), "0101");
        assert_eq!(enc.order, vec![2, 4, 3, 0, 1]);
        assert_eq!(enc.code.decode().relabel(&enc.order), g);
        assert!(forbidden_subgraph_oracle(&code("0101").decode()).unwrap());
    }

    #[test]
    fn complete_graph_encodes_to_all_ones() {
        assert_eq!(encode(&Graph::complete(3)).unwrap().code.to_string(), "11");
    }

    #[test]
    fn forbidden_graphs_are_rejected_with_witness() {
        match encode(&path4()) {
            Err(Error::NotThreshold { pattern, quad }) => {
                assert_eq!(pattern, ForbiddenPattern::P4);
                assert_eq!(quad, [0, 1, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(!is_threshold(&c4));
        assert!(matches!(
            encode(&c4),
            Err(Error::NotThreshold {
                pattern: ForbiddenPattern::C4,
                ..
            })
        ));
        assert!(!is_threshold(&two_k2()));
        assert!(!forbidden_subgraph_oracle(&path4()).unwrap());
        assert!(!forbidden_subgraph_oracle(&two_k2()).unwrap());
    }

    #[test]
    fn star_is_threshold() {
        let star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(is_threshold(&star));
    }

    #[test]
    fn forty_six_threshold_graphs_on_four_vertices() {
        let (yes, no): (Vec<_>, Vec<_>) = enumerate_labeled(4).unwrap().partition(is_threshold);
        assert_eq!(yes.len(), 46);
        assert_eq!(no.len(), 18);
    }

    #[test]
    fn extend_and_blocks() {
        let e = code("0101").extend().unwrap();
        assert_eq!(e.to_string(), "00101");
        let b = e.blocks();
        assert_eq!(b.lengths(), &[2, 1, 1, 1]);
        assert_eq!(b.first_kind(), BlockKind::Isolated);
        let e = code("11").extend().unwrap();
        assert_eq!(e.to_string(), "111");
        assert_eq!(e.blocks().lengths(), &[3]);
        assert_eq!(e.blocks().first_kind(), BlockKind::Dominating);
        assert!(code("").extend().is_err());
    }

    #[test]
    fn twenty_vertex_example_blocks() {
        // j-sequence 0 2 3 1 1 1 3 1 1 3 1 1 2 in peeling order
        let peeled = "d d i i i d i d i i i d i d d d i d i i";
        let ext: String = peeled
            .split_whitespace()
            .rev()
            .map(|s| if s == "d" { '1' } else { '0' })
            .collect();
        assert_eq!(ext, "00101110100010100011");
        let code: CreationCode = ext[1..].parse().unwrap();
        let e = code.extend().unwrap();
        assert_eq!(e.to_string(), ext);
        let mut js = vec![2, 3, 1, 1, 1, 3, 1, 1, 3, 1, 1, 2];
        js.reverse();
        assert_eq!(e.blocks().lengths(), js.as_slice());
    }

    #[test]
    fn complement_rules() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(code("01").decode().complement(), code("10").decode());
        let c4 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(two_k2().complement(), c4);
    }

    #[test]
    fn enumeration_counts_and_guards() {
        let codes: Vec<_> = enumerate_threshold_codes(3).unwrap().map(|c| c.to_string()).collect();
        assert_eq!(codes, vec!["00", "10", "01", "11"]);
        assert_eq!(enumerate_labeled(2).unwrap().count(), 2);
        assert!(matches!(
            enumerate_labeled(8).err(),
            Some(Error::SizeGuard { n: 8, .. })
        ));
        assert!(matches!(
            forbidden_subgraph_oracle_with_limit(&Graph::empty(10), 5),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn round_trip_exhaustive_up_to_eight() {
        for n in 1..=8 {
            for c in enumerate_threshold_codes(n).unwrap() {
                let g = c.decode();
                let enc = encode(&g).unwrap();
                assert_eq!(enc.code, c);
                assert_eq!(enc.code.decode().relabel(&enc.order), g);
                assert_eq!(encode(&g.complement()).unwrap().code, c.flipped());
                assert_eq!(c.degrees(), g.degrees());
                if n >= 2 {
                    assert_eq!(g.is_connected(), *c.bits().last().unwrap());
                }
            }
        }
    }

    #[test]
    fn blocks_match_distinct_degrees() {
        for n in 2..=9 {
            for c in enumerate_threshold_codes(n).unwrap() {
                let blocks = c.extend().unwrap().blocks();
                let deg = c.degrees();
                let mut start = 0;
                for &b in blocks.lengths() {
                    assert!(deg[start..start + b].iter().all(|&d| d == deg[start]));
                    start += b;
                }
                let mut distinct = deg.clone();
                distinct.sort_unstable();
                distinct.dedup();
                assert_eq!(distinct.len(), blocks.lengths().len());
                assert_eq!(blocks.code(), c);
            }
        }
    }

    #[test]
    fn recognition_matches_oracle_on_five_vertices() {
        for g in enumerate_labeled(5).unwrap() {
            assert_eq!(is_threshold(&g), forbidden_subgraph_oracle(&g).unwrap());
        }
    }

    #[test]
    fn degree_sequence_determines_threshold_graph() {
        for n in 1..=6 {
            let mut seen = std::collections::HashMap::new();
            for g in enumerate_labeled(n).unwrap().filter(is_threshold) {
                if let Some(prev) = seen.insert(g.degrees(), g.clone()) {
                    panic!("two threshold graphs share degrees: {prev:?} {g:?}");
                }
            }
        }
    }

    #[test]
    fn edge_mask_round_trip() {
        let g = example_one();
        assert_eq!(Graph::from_edge_mask(5, g.edge_mask()), g);
    }
}
