//! Distinctive vertex sets and the quantities derived from them.
//!
//! For a pair `x != y`, `D(x, y)` is the set of vertices `z` with
//! `d(x, z) != d(y, z)`. A set `S` is a k-metric generator iff
//! `|S ∩ D(x, y)| >= k` for every pair, so the largest usable `k` is the
//! minimum `|D(x, y)|` over all pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctiveSet {
    /// `(x, y)` with `x < y`.
    pub pair: (usize, usize),
    pub members: Bitset,
}

impl DistinctiveSet {
    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `D(x, y)` without `x` and `y`.
    pub fn nontrivial(&self) -> Bitset {
        let mut s = self.members.clone();
        s.remove(self.pair.0);
        s.remove(self.pair.1);
        s
    }
}

/// Outcome of checking a candidate generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GeneratorCheck {
    Generator,
    /// Lexicographically smallest pair the set fails to distinguish `k` times.
    Deficient {
        pair: (usize, usize),
        hits: usize,
        deficit: usize,
    },
}

impl GeneratorCheck {
    pub fn is_generator(&self) -> bool {
        matches!(self, GeneratorCheck::Generator)
    }
}

fn row_for(dist: &DistanceMatrix, x: usize, y: usize) -> Bitset {
    let n = dist.order();
    let (rx, ry) = (dist.row(x), dist.row(y));
    Bitset::from_indices(n, (0..n).filter(|&z| rx[z] != ry[z]))
}

fn check_pair(n: usize, x: usize, y: usize) -> Result<()> {
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: n,
            });
        }
    }
    if x == y {
        return Err(Error::SameVertex(x));
    }
    Ok(())
}

/// Every distinctive set of a connected graph, one bitset row per pair in
/// lexicographic pair order.
#[derive(Clone, Debug)]
pub struct PairTable {
    n: usize,
    rows: Vec<Bitset>,
    min_size: usize,
    argmin: Vec<(usize, usize)>,
}

impl PairTable {
    pub fn new(g: &Graph) -> Result<Self> {
        let dist = g.distances();
        if !dist.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(Self::from_distances(&dist))
    }

    pub fn from_distances(dist: &DistanceMatrix) -> Self {
        let n = dist.order();
        let rows: Vec<Bitset> = (0..n)
            .into_par_iter()
            .flat_map_iter(|x| (x + 1..n).map(move |y| row_for(dist, x, y)))
            .collect();
        let mut table = PairTable {
            n,
            rows,
            min_size: 0,
            argmin: Vec::new(),
        };
        if let Some(min) = table.rows.iter().map(Bitset::count).min() {
            table.min_size = min;
            table.argmin = table
                .pairs()
                .zip(&table.rows)
                .filter(|(_, r)| r.count() == min)
                .map(|(p, _)| p)
                .collect();
        }
        table
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Pairs `(x, y)`, `x < y`, in row order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
    }

    pub fn rows(&self) -> &[Bitset] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn index(&self, x: usize, y: usize) -> usize {
        let (x, y) = (x.min(y), x.max(y));
        // rows before x: sum_{i<x} (n-1-i)
        x * (2 * self.n - x - 1) / 2 + (y - x - 1)
    }

    pub fn get(&self, x: usize, y: usize) -> Result<DistinctiveSet> {
        check_pair(self.n, x, y)?;
        Ok(DistinctiveSet {
            pair: (x.min(y), x.max(y)),
            members: self.rows[self.index(x, y)].clone(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = DistinctiveSet> + '_ {
        self.pairs().zip(&self.rows).map(|(pair, r)| DistinctiveSet {
            pair,
            members: r.clone(),
        })
    }

    /// Minimum `|D(x, y)|` over all pairs (0 when the graph has one vertex).
    pub fn min_size(&self) -> usize {
        self.min_size
    }

    pub fn argmin_pairs(&self) -> &[(usize, usize)] {
        &self.argmin
    }

    /// The value `k'` such that the graph is k'-metric dimensional.
    pub fn dimensional_k(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(Error::TrivialGraph(self.n));
        }
        Ok(self.min_size)
    }

    /// Union of all distinctive sets with exactly `k` members.
    pub fn d_k_union(&self, k: usize) -> Bitset {
        let mut out = Bitset::new(self.n);
        for r in self.rows.iter().filter(|r| r.count() == k) {
            out.union_with(r);
        }
        out
    }

    pub fn check_generator(&self, s: &Bitset, k: usize) -> GeneratorCheck {
        for (pair, r) in self.pairs().zip(&self.rows) {
            let hits = r.intersection_count(s);
            if hits < k {
                return GeneratorCheck::Deficient {
                    pair,
                    hits,
                    deficit: k - hits,
                };
            }
        }
        GeneratorCheck::Generator
    }
}

pub fn distinctive_set(g: &Graph, x: usize, y: usize) -> Result<DistinctiveSet> {
    check_pair(g.order(), x, y)?;
    let dist = g.distances();
    if !dist.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    Ok(DistinctiveSet {
        pair: (x.min(y), x.max(y)),
        members: row_for(&dist, x, y),
    })
}

pub fn nontrivial_distinctive_set(g: &Graph, x: usize, y: usize) -> Result<Bitset> {
    Ok(distinctive_set(g, x, y)?.nontrivial())
}

pub fn dimensional_k(g: &Graph) -> Result<usize> {
    if g.order() < 2 {
        return Err(Error::TrivialGraph(g.order()));
    }
    PairTable::new(g)?.dimensional_k()
}

/// `|(N(x) △ N(y)) ∪ {x, y}|`; needs no distances, so `h` may be disconnected.
pub fn neighborhood_difference_size(h: &Graph, x: usize, y: usize) -> usize {
    let mut s = h.neighborhood(x);
    s.symmetric_difference_with(&h.neighborhood(y));
    s.insert(x);
    s.insert(y);
    s.count()
}

/// `C(H)`: minimum of `|(N(x) △ N(y)) ∪ {x, y}|` over all pairs.
pub fn c_of_h(h: &Graph) -> Result<usize> {
    let n = h.order();
    if n < 2 {
        return Err(Error::TrivialGraph(n));
    }
    let nbhd: Vec<Bitset> = (0..n).map(|v| h.neighborhood(v)).collect();
    let mut best = usize::MAX;
    for x in 0..n {
        for y in x + 1..n {
            let mut s = nbhd[x].clone();
            s.symmetric_difference_with(&nbhd[y]);
            s.insert(x);
            s.insert(y);
            best = best.min(s.count());
        }
    }
    Ok(best)
}

/// `C(ℋ)`: minimum of [`c_of_h`] over the family.
pub fn c_of_family<'a>(hs: impl IntoIterator<Item = &'a Graph>) -> Result<usize> {
    let mut best = None;
    for h in hs {
        let c = c_of_h(h)?;
        best = Some(best.map_or(c, |b: usize| b.min(c)));
    }
    best.ok_or(Error::TrivialGraph(0))
}

pub fn d_k_union(g: &Graph, k: usize) -> Result<Bitset> {
    Ok(PairTable::new(g)?.d_k_union(k))
}

pub fn is_k_generator(g: &Graph, s: &[usize], k: usize) -> Result<GeneratorCheck> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let n = g.order();
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: n,
        });
    }
    let table = PairTable::new(g)?;
    Ok(table.check_generator(&Bitset::from_indices(n, s.iter().copied()), k))
}
