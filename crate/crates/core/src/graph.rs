//! Weighted directed graphs, the input from which transition matrices are built.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A weighted directed graph on nodes `0..n`.
///
/// Repeated `(source, target)` pairs accumulate their weights. Self-loops are
/// ordinary edges.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl DirectedGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self {
            n,
            edges: BTreeMap::new(),
        })
    }

    /// Builds a graph from unit-weight edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(s, t) in edges {
            g.add_edge(s, t, 1.0)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, source: usize, target: usize, weight: f64) -> Result<()> {
        for id in [source, target] {
            if id >= self.n {
                return Err(Error::NodeOutOfRange { id, n: self.n });
            }
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::InvalidWeight {
                source_node: source,
                target,
                weight,
            });
        }
        *self.edges.entry((source, target)).or_insert(0.0) += weight;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Accumulated edges in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(s, t), &w)| (s, t, w))
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// Every node links only to itself, giving the identity transition.
    pub fn self_loops(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, i)).collect();
        Self::from_edges(n, &edges)
    }
}
