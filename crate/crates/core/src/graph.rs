//! Path-length distance on finite undirected graphs.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::Metric;

/// Simple undirected graph on vertices `0..vertex_count`, optionally with a
/// positive weight on every edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Graph {
    vertex_count: usize,
    /// Edges as `(min, max)` pairs in insertion order.
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, usize)>>,
    /// Parallel to `edges` when present.
    weights: Option<Vec<f64>>,
    #[serde(skip)]
    connected: bool,
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Parameter("a graph needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidEdge(u, v, "self-loop".into()));
            }
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: x,
                        count: vertex_count,
                    });
                }
            }
            let e = normalize(u, v);
            if !seen.insert(e) {
                return Err(Error::InvalidEdge(u, v, "duplicate edge".into()));
            }
            let idx = normalized.len();
            normalized.push(e);
            adjacency[u].push((v, idx));
            adjacency[v].push((u, idx));
        }
        let mut g = Graph {
            vertex_count,
            edges: normalized,
            adjacency,
            weights: None,
            connected: false,
        };
        g.connected = g.reachable_from(0).iter().all(|&r| r);
        Ok(g)
    }

    /// Build a weighted graph. `weights` must assign a finite positive value
    /// to every edge (keys in either orientation) and nothing else.
    pub fn with_weights(
        vertex_count: usize,
        edges: &[(usize, usize)],
        weights: &BTreeMap<(usize, usize), f64>,
    ) -> Result<Self> {
        let mut g = Graph::new(vertex_count, edges)?;
        let mut by_edge = BTreeMap::new();
        for (&(u, v), &w) in weights {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::NonpositiveWeight(u, v, w));
            }
            if by_edge.insert(normalize(u, v), w).is_some() {
                return Err(Error::InvalidEdge(u, v, "weight given twice".into()));
            }
        }
        let mut list = Vec::with_capacity(g.edges.len());
        for &(u, v) in &g.edges {
            list.push(by_edge.remove(&(u, v)).ok_or(Error::MissingWeight(u, v))?);
        }
        if let Some(&(u, v)) = by_edge.keys().next() {
            return Err(Error::InvalidEdge(
                u,
                v,
                "weight for an edge not in the graph".into(),
            ));
        }
        g.weights = Some(list);
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Neighbours of `v` with the index of the connecting edge.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn check_query(&self, v: usize, w: usize) -> Result<()> {
        for x in [v, w] {
            if x >= self.vertex_count {
                return Err(Error::InvalidVertex {
                    vertex: x,
                    count: self.vertex_count,
                });
            }
        }
        if !self.connected {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Fewest edges on a path from `v` to `w` (breadth-first search).
    pub fn distance(&self, v: usize, w: usize) -> Result<u64> {
        self.check_query(v, w)?;
        let mut dist = vec![u64::MAX; self.vertex_count];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(a) = queue.pop_front() {
            if a == w {
                return Ok(dist[a]);
            }
            for &(b, _) in &self.adjacency[a] {
                if dist[b] == u64::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        unreachable!("connected graph reaches every vertex")
    }

    /// Least total weight of a path from `v` to `w` (Dijkstra).
    pub fn weighted_distance(&self, v: usize, w: usize) -> Result<f64> {
        let weights = match &self.weights {
            Some(ws) => ws,
            None => {
                return match self.edges.first() {
                    Some(&(a, b)) => Err(Error::MissingWeight(a, b)),
                    None => {
                        self.check_query(v, w)?;
                        Ok(0.0)
                    }
                }
            }
        };
        self.check_query(v, w)?;
        let mut best = vec![f64::INFINITY; self.vertex_count];
        best[v] = 0.0;
        let mut heap = BinaryHeap::from([Reverse(Entry(0.0, v))]);
        while let Some(Reverse(Entry(d, a))) = heap.pop() {
            if a == w {
                return Ok(d);
            }
            if d > best[a] {
                continue;
            }
            for &(b, e) in &self.adjacency[a] {
                let nd = d + weights[e];
                if nd < best[b] {
                    best[b] = nd;
                    heap.push(Reverse(Entry(nd, b)));
                }
            }
        }
        unreachable!("connected graph reaches every vertex")
    }
}

#[derive(Debug, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

pub fn is_connected(g: &Graph) -> bool {
    g.is_connected()
}

pub fn graph_distance(g: &Graph, v: usize, w: usize) -> Result<u64> {
    g.distance(v, w)
}

pub fn weighted_graph_distance(g: &Graph, v: usize, w: usize) -> Result<f64> {
    g.weighted_distance(v, w)
}

/// Vertex metric of a connected graph: edge count, or total weight when the
/// graph carries weights.
impl Metric for Graph {
    type Point = usize;
    type Value = f64;

    fn name(&self) -> String {
        if self.is_weighted() {
            "weighted-graph"
        } else {
            "graph"
        }
        .into()
    }

    fn distance(&self, v: &usize, w: &usize) -> Result<f64> {
        if self.is_weighted() {
            self.weighted_distance(*v, *w)
        } else {
            Graph::distance(self, *v, *w).map(|d| d as f64)
        }
    }
}
