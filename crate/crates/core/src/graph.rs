//! Immutable simple undirected graphs and the distance/structure queries
//! everything else is built on.
//!
//! Vertices are the dense indices `0..n`. Adjacency lists are kept sorted so
//! two graphs built from the same edge set in any order compare equal.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Largest order accepted by any constructor.
pub const MAX_ORDER: usize = 4096;

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

// Labels are metadata; identity is the adjacency structure.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        Ok(Graph {
            adj: vec![Vec::new(); n],
            labels: None,
        })
    }

    /// Builds a graph from an edge list. Self-loops, duplicate edges (in
    /// either orientation) and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for (u, list) in g.adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(g)
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Graph { adj, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Human-readable name of `v`, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Open neighborhood as a bitset.
    pub fn neighborhood(&self, v: usize) -> Bitset {
        Bitset::from_indices(self.order(), self.adj[v].iter().copied())
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    fn bfs(&self, src: usize, out: &mut [Option<u32>]) {
        out.fill(None);
        out[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = out[u].expect("queued vertices are reached");
            for &v in &self.adj[u] {
                if out[v].is_none() {
                    out[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
    }

    /// All-pairs hop distances (one BFS per vertex).
    pub fn distances(&self) -> DistanceMatrix {
        let n = self.order();
        let mut d = vec![None; n * n];
        for (u, row) in d.chunks_mut(n.max(1)).enumerate().take(n) {
            self.bfs(u, row);
        }
        DistanceMatrix { n, d }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![None; n];
        self.bfs(0, &mut seen);
        seen.iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Result<u32> {
        self.distances().diameter()
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        // BFS from every vertex; a non-tree edge (u, v) closes a cycle of
        // length at most dist(u) + dist(v) + 1, and the minimum over all roots
        // is exact.
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        break;
                    }
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// All unordered pairs `(x, y)`, `x < y`, that are false twins
    /// (`N(x) = N(y)`) or true twins (`N[x] = N[y]`).
    pub fn twins(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if self.are_twins(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn are_twins(&self, x: usize, y: usize) -> bool {
        if self.degree(x) != self.degree(y) {
            return false;
        }
        if self.adj[x] == self.adj[y] {
            return true;
        }
        // closed neighborhoods: drop y from N(x) and x from N(y)
        self.is_adjacent(x, y)
            && self.adj[x]
                .iter()
                .filter(|&&w| w != y)
                .eq(self.adj[y].iter().filter(|&&w| w != x))
    }

    /// Every vertex has a twin.
    pub fn is_all_twins(&self) -> bool {
        let n = self.order();
        n >= 2 && (0..n).all(|x| (0..n).any(|y| y != x && self.are_twins(x, y)))
    }

    /// Parses the edge-list text format: header `n m`, then `m` lines `u v`
    /// with `0 <= u < v < n`. Lines starting with `#` and blank lines are
    /// ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let nums = |line: usize, l: &str| -> Result<(usize, usize)> {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(err(line, format!("expected two integers, got {l:?}")));
            }
            let a = parts[0]
                .parse()
                .map_err(|e| err(line, format!("{}: {e}", parts[0])))?;
            let b = parts[1]
                .parse()
                .map_err(|e| err(line, format!("{}: {e}", parts[1])))?;
            Ok((a, b))
        };
        let (hline, header) = lines.next().ok_or_else(|| err(0, "empty input".into()))?;
        let (n, m) = nums(hline, header)?;
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        let mut edges = Vec::with_capacity(m);
        let mut last_line = hline;
        for (line, l) in lines.by_ref() {
            last_line = line;
            let (u, v) = nums(line, l)?;
            if u >= v {
                return Err(err(line, format!("edge must satisfy u < v, got {u} {v}")));
            }
            if v >= n {
                return Err(err(line, format!("vertex {v} out of range for n = {n}")));
            }
            edges.push((u, v));
            if edges.len() > m {
                return Err(err(line, format!("more than the declared {m} edges")));
            }
        }
        if edges.len() != m {
            return Err(err(
                last_line,
                format!("declared {m} edges, found {}", edges.len()),
            ));
        }
        Graph::from_edges(n, edges).map_err(|e| err(0, e.to_string()))
    }

    /// Inverse of [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").expect("write to String");
        }
        s
    }
}

/// Hop distances between every pair of vertices. Unreachable pairs read as
/// `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Option<u32>>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Option<u32>] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        self.d.iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Result<u32> {
        self.d
            .iter()
            .try_fold(0, |m, d| d.map(|d| m.max(d)))
            .ok_or(Error::DisconnectedGraph)
    }
}
