//! Bipartite graphs with explicit parts V1 = 0..n1 and V2 = 0..n2, and
//! recognition of bipartite threshold (difference) graphs.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    words: usize,
    /// Row i holds the V2-neighbors of V1 vertex i.
    bits: Vec<u64>,
}

impl BipartiteGraph {
    pub fn empty(n1: usize, n2: usize) -> Self {
        let words = n2.div_ceil(64).max(1);
        BipartiteGraph {
            n1,
            n2,
            words,
            bits: vec![0; n1 * words],
        }
    }

    pub fn complete(n1: usize, n2: usize) -> Self {
        let mut b = BipartiteGraph::empty(n1, n2);
        for i in 0..n1 {
            for j in 0..n2 {
                b.add_edge(i, j);
            }
        }
        b
    }

    /// Edges as (V1 index, V2 index), 0-based.
    pub fn from_edges(n1: usize, n2: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = BipartiteGraph::empty(n1, n2);
        for &(i, j) in edges {
            if i >= n1 || j >= n2 {
                return Err(Error::Format(format!(
                    "edge ({}, {}) out of range for parts {n1}, {n2}",
                    i + 1,
                    j + 1
                )));
            }
            b.add_edge(i, j);
        }
        Ok(b)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n1 {
            for j in 0..self.n2 {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees1(&self) -> Vec<usize> {
        (0..self.n1)
            .map(|i| {
                self.bits[i * self.words..(i + 1) * self.words]
                    .iter()
                    .map(|w| w.count_ones() as usize)
                    .sum()
            })
            .collect()
    }

    pub fn degrees2(&self) -> Vec<usize> {
        let mut d = vec![0; self.n2];
        for (_, j) in self.edges() {
            d[j] += 1;
        }
        d
    }

    /// Edge indicators in row-major order over V1 × V2. Requires n1·n2 ≤ 64.
    pub fn edge_mask(&self) -> u64 {
        assert!(self.n1 * self.n2 <= 64);
        let mut m = 0u64;
        for i in 0..self.n1 {
            for j in 0..self.n2 {
                if self.has_edge(i, j) {
                    m |= 1 << (i * self.n2 + j);
                }
            }
        }
        m
    }

    pub fn from_edge_mask(n1: usize, n2: usize, mask: u64) -> Self {
        let mut b = BipartiteGraph::empty(n1, n2);
        for i in 0..n1 {
            for j in 0..n2 {
                if mask >> (i * n2 + j) & 1 == 1 {
                    b.add_edge(i, j);
                }
            }
        }
        b
    }

    /// Sorted V1 degrees; determines a bipartite threshold graph up to
    /// permutations within each part.
    pub fn unlabeled_key(&self) -> Vec<usize> {
        let mut d = self.degrees1();
        d.sort_unstable();
        d
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("n1", &self.n1)
            .field("n2", &self.n2)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Repeatedly remove a vertex that is isolated or adjacent to every remaining
/// vertex of the other part. Fails with an induced 2K₂ when stuck.
pub fn check_bipartite_threshold(b: &BipartiteGraph) -> Result<()> {
    let mut alive1 = vec![true; b.n1];
    let mut alive2 = vec![true; b.n2];
    let mut deg1 = b.degrees1();
    let mut deg2 = b.degrees2();
    let (mut left1, mut left2) = (b.n1, b.n2);
    while left1 + left2 > 0 {
        if let Some(i) =
            (0..b.n1).find(|&i| alive1[i] && (deg1[i] == 0 || deg1[i] == left2))
        {
            alive1[i] = false;
            left1 -= 1;
            for j in 0..b.n2 {
                if alive2[j] && b.has_edge(i, j) {
                    deg2[j] -= 1;
                }
            }
            continue;
        }
        if let Some(j) =
            (0..b.n2).find(|&j| alive2[j] && (deg2[j] == 0 || deg2[j] == left1))
        {
            alive2[j] = false;
            left2 -= 1;
            for i in 0..b.n1 {
                if alive1[i] && b.has_edge(i, j) {
                    deg1[i] -= 1;
                }
            }
            continue;
        }
        return Err(stuck_witness(b, &alive1, &alive2));
    }
    Ok(())
}

pub fn is_bipartite_threshold(b: &BipartiteGraph) -> bool {
    check_bipartite_threshold(b).is_ok()
}

/// With no removable vertex left, take i1 of maximum degree, a V2 vertex j2 it
/// misses, a neighbor i2 of j2, and a neighbor j1 of i1 that i2 misses.
fn stuck_witness(b: &BipartiteGraph, alive1: &[bool], alive2: &[bool]) -> Error {
    let live2: Vec<usize> = (0..b.n2).filter(|&j| alive2[j]).collect();
    let deg = |i: usize| live2.iter().filter(|&&j| b.has_edge(i, j)).count();
    let i1 = (0..b.n1)
        .filter(|&i| alive1[i])
        .max_by_key(|&i| deg(i))
        .expect("V1 nonempty");
    let j2 = *live2.iter().find(|&&j| !b.has_edge(i1, j)).expect("not dominating");
    let i2 = (0..b.n1)
        .find(|&i| alive1[i] && b.has_edge(i, j2))
        .expect("j2 not isolated");
    let j1 = *live2
        .iter()
        .find(|&&j| b.has_edge(i1, j) && !b.has_edge(i2, j))
        .expect("max-degree argument");
    let mut v1 = [i1, i2];
    let mut v2 = [j1, j2];
    v1.sort_unstable();
    v2.sort_unstable();
    Error::NotBipartiteThreshold { v1, v2 }
}

/// Brute force: no i1, i2 ∈ V1 and j1, j2 ∈ V2 with i1j1, i2j2 edges and i1j2, i2j1 non-edges.
pub fn bipartite_oracle(b: &BipartiteGraph) -> bool {
    for i1 in 0..b.n1 {
        for i2 in 0..b.n1 {
            if i1 == i2 {
                continue;
            }
            for j1 in 0..b.n2 {
                if !b.has_edge(i1, j1) || b.has_edge(i2, j1) {
                    continue;
                }
                for j2 in 0..b.n2 {
                    if b.has_edge(i2, j2) && !b.has_edge(i1, j2) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
