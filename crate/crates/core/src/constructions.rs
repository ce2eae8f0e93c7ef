//! Constructors for the graph families used throughout the crate: paths,
//! cycles, complete graphs, stars, fans, wheels, joins, complements and the
//! corona product `G ⊙ {H_1, ..., H_n}`.
//!
//! Every constructor is deterministic. Product layouts are part of the API:
//!
//! * `join(g, h)`: vertices of `g` first (`0..|g|`), then `h`.
//! * `corona(spec)`: base vertex `i` is index `i`; the copy of `H_i` occupies
//!   a contiguous block after the base, blocks ordered by `i`.
//! * `fan(n)` / `wheel(n)`: hub is `0`, rim is `1..=n` in path/cycle order.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

fn check_order(family: &'static str, order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(Error::InvalidOrder { family, order, min });
    }
    if order > MAX_ORDER {
        return Err(Error::TooLarge(order));
    }
    Ok(())
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("family constructors emit simple graphs")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    check_order("path", n, 1)?;
    Ok(build(n, (1..n).map(|i| (i - 1, i))))
}

pub fn cycle(n: usize) -> Result<Graph> {
    check_order("cycle", n, 3)?;
    Ok(build(n, (1..n).map(|i| (i - 1, i)).chain([(n - 1, 0)])))
}

pub fn complete(n: usize) -> Result<Graph> {
    check_order("complete", n, 1)?;
    Ok(build(
        n,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    ))
}

/// Star on `n` vertices: center `0` and leaves `1..n`.
pub fn star(n: usize) -> Result<Graph> {
    check_order("star", n, 2)?;
    Ok(build(n, (1..n).map(|i| (0, i))))
}

/// The Petersen graph (outer 5-cycle `0..5`, inner pentagram `5..10`).
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner))
}

/// Where each operand of a join landed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinLayout {
    pub left: Range<usize>,
    pub right: Range<usize>,
}

/// `g + h`: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<(Graph, JoinLayout)> {
    let (a, b) = (g.order(), h.order());
    if a + b > MAX_ORDER {
        return Err(Error::TooLarge(a + b));
    }
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(a + b);
    for u in 0..a {
        let mut l = g.neighbors(u).to_vec();
        l.extend(a..a + b);
        adj.push(l);
    }
    for u in 0..b {
        let mut l: Vec<usize> = (0..a).collect();
        l.extend(h.neighbors(u).iter().map(|&v| v + a));
        adj.push(l);
    }
    let labels = (0..a)
        .map(|u| format!("L{}", g.label(u)))
        .chain((0..b).map(|u| format!("R{}", h.label(u))))
        .collect();
    Ok((
        Graph::from_sorted_adjacency(adj).with_labels(labels),
        JoinLayout {
            left: 0..a,
            right: a..a + b,
        },
    ))
}

/// `K_1 + h` with the hub at index 0.
pub fn cone(h: &Graph) -> Result<Graph> {
    let k1 = Graph::empty(1)?;
    Ok(join(&k1, h)?.0)
}

/// Fan `F_{1,n} = K_1 + P_n`.
pub fn fan(n: usize) -> Result<Graph> {
    check_order("fan", n, 1)?;
    cone(&path(n)?)
}

/// Wheel `W_{1,n} = K_1 + C_n`.
pub fn wheel(n: usize) -> Result<Graph> {
    check_order("wheel", n, 3)?;
    cone(&cycle(n)?)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let adj = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && !g.is_adjacent(u, v)).collect())
        .collect();
    let out = Graph::from_sorted_adjacency(adj);
    match g.labels() {
        Some(l) => out.with_labels(l.to_vec()),
        None => out,
    }
}

/// A base graph together with one attached graph per base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoronaSpec {
    base: Graph,
    attachments: Vec<Graph>,
}

impl CoronaSpec {
    pub fn new(base: Graph, attachments: Vec<Graph>) -> Result<Self> {
        if base.order() == 0 {
            return Err(Error::InvalidOrder {
                family: "corona base",
                order: 0,
                min: 1,
            });
        }
        if attachments.len() != base.order() {
            return Err(Error::AttachmentCount {
                expected: base.order(),
                got: attachments.len(),
            });
        }
        if let Some(h) = attachments.iter().find(|h| h.order() == 0) {
            return Err(Error::InvalidOrder {
                family: "corona attachment",
                order: h.order(),
                min: 1,
            });
        }
        let total = base.order() + attachments.iter().map(Graph::order).sum::<usize>();
        if total > MAX_ORDER {
            return Err(Error::TooLarge(total));
        }
        Ok(CoronaSpec { base, attachments })
    }

    /// `G ⊙ H`: the same graph attached at every base vertex.
    pub fn uniform(base: Graph, h: &Graph) -> Result<Self> {
        let n = base.order();
        Self::new(base, vec![h.clone(); n])
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn attachments(&self) -> &[Graph] {
        &self.attachments
    }

    /// Sum of attachment orders.
    pub fn attached_order(&self) -> usize {
        self.attachments.iter().map(Graph::order).sum()
    }

    /// Same base, every attachment complemented.
    pub fn complemented(&self) -> Self {
        CoronaSpec {
            base: self.base.clone(),
            attachments: self.attachments.iter().map(complement).collect(),
        }
    }

    /// Same base, every attachment `H_i` replaced by `K_1 + H_i`.
    pub fn coned(&self) -> Result<Self> {
        let attachments = self.attachments.iter().map(cone).collect::<Result<_>>()?;
        Self::new(self.base.clone(), attachments)
    }
}

/// Index map of a corona product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoronaLayout {
    base_order: usize,
    blocks: Vec<Range<usize>>,
}

impl CoronaLayout {
    pub fn base(&self) -> Range<usize> {
        0..self.base_order
    }

    pub fn base_vertex(&self, i: usize) -> usize {
        assert!(i < self.base_order);
        i
    }

    /// Block of corona indices holding the copy of `H_i`.
    pub fn copy(&self, i: usize) -> Range<usize> {
        self.blocks[i].clone()
    }

    /// Corona index of vertex `v` of `H_i`.
    pub fn copy_vertex(&self, i: usize, v: usize) -> usize {
        let r = &self.blocks[i];
        assert!(v < r.len(), "vertex {v} not in H_{i}");
        r.start + v
    }

    pub fn copies(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.blocks.iter().cloned()
    }

    pub fn order(&self) -> usize {
        self.blocks.last().map_or(self.base_order, |r| r.end)
    }
}

pub fn corona(spec: &CoronaSpec) -> (Graph, CoronaLayout) {
    let n = spec.base.order();
    let mut blocks = Vec::with_capacity(n);
    let mut next = n;
    for h in &spec.attachments {
        blocks.push(next..next + h.order());
        next += h.order();
    }
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(next);
    let mut labels = Vec::with_capacity(next);
    for i in 0..n {
        let mut l = spec.base.neighbors(i).to_vec();
        l.extend(blocks[i].clone());
        adj.push(l);
        labels.push(format!("v{i}"));
    }
    for (i, h) in spec.attachments.iter().enumerate() {
        let off = blocks[i].start;
        for u in 0..h.order() {
            let mut l = vec![i];
            l.extend(h.neighbors(u).iter().map(|&w| w + off));
            adj.push(l);
            labels.push(format!("h{i}.{}", h.label(u)));
        }
    }
    let g = Graph::from_sorted_adjacency(adj).with_labels(labels);
    (
        g,
        CoronaLayout {
            base_order: n,
            blocks,
        },
    )
}

/// Connected graph on `n` vertices whose edges form a single path.
pub fn is_path_graph(g: &Graph) -> bool {
    let n = g.order();
    n >= 1 && g.size() + 1 == n && g.max_degree() <= 2 && g.is_connected()
}

pub fn is_cycle_graph(g: &Graph) -> bool {
    g.order() >= 3 && g.is_connected() && g.degree_sequence().iter().all(|&d| d == 2)
}
