//! Brute-force oracles and seeded random graphs shared by the integration
//! tests. Nothing here calls into the library's metric code.

#![allow(dead_code)]

use std::collections::VecDeque;

use kmetric::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All-pairs BFS distances from adjacency lists.
pub fn oracle_distances(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.order();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in g.neighbors(u) {
                    if d[v].is_none() {
                        d[v] = Some(d[u].unwrap() + 1);
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

/// `D(x, y)` for every pair `x < y`, as sorted vertex lists.
pub fn oracle_distinctive(g: &Graph) -> Vec<((usize, usize), Vec<usize>)> {
    let d = oracle_distances(g);
    let n = g.order();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let zs = (0..n).filter(|&z| d[x][z] != d[y][z]).collect();
            out.push(((x, y), zs));
        }
    }
    out
}

pub fn oracle_dimensional_k(g: &Graph) -> usize {
    oracle_distinctive(g).iter().map(|(_, s)| s.len()).min().unwrap()
}

pub fn oracle_is_generator(rows: &[((usize, usize), Vec<usize>)], s: &[bool], k: usize) -> bool {
    rows.iter()
        .all(|(_, zs)| zs.iter().filter(|&&z| s[z]).count() >= k)
}

/// Smallest k-metric generator, by enumerating subsets in increasing size.
pub fn oracle_dim(g: &Graph, k: usize) -> Option<usize> {
    let n = g.order();
    assert!(n <= 20, "oracle is exponential");
    let rows = oracle_distinctive(g);
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for (size, masks) in by_size.iter().enumerate() {
        for &mask in masks {
            let s: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            if oracle_is_generator(&rows, &s, k) {
                return Some(size);
            }
        }
    }
    None
}

/// Random connected graph: a random spanning tree plus each remaining edge
/// with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.push((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
