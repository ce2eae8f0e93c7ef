//! Exact and greedy k-metric dimension.
//!
//! `dim_k(G)` is a set-multicover problem: every pair row `D(x, y)` must be
//! hit at least `k` times by the chosen set. The exact solver deepens on the
//! solution size `t`; each level is a complete include/exclude search that
//! branches on a vertex of the tightest unsatisfied row. A level that fails
//! proves no solution of size `t` exists, so the first success is optimal.
//!
//! Any row with exactly `k` selectable members must be taken whole, so those
//! members are forced into every generator before the search starts.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::constructions::cone;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric_sets::PairTable;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Search nodes allowed per solve before giving up with
    /// [`Error::ResourceExhausted`].
    pub node_budget: u64,
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub pair: (usize, usize),
    pub members: Bitset,
}

#[derive(Clone, Debug)]
pub struct MulticoverInstance {
    n: usize,
    k: usize,
    rows: Vec<Row>,
    forced: Bitset,
    excluded: Bitset,
}

impl MulticoverInstance {
    /// Validates the instance and extends `forced` with every row that has
    /// exactly `k` selectable members.
    pub fn new(
        n: usize,
        k: usize,
        rows: Vec<Row>,
        forced: &[usize],
        excluded: &[usize],
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        let check = |v: usize| {
            if v >= n {
                Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: n,
                })
            } else {
                Ok(v)
            }
        };
        let excluded = Bitset::from_indices(n, excluded.iter().map(|&v| check(v)).collect::<Result<Vec<_>>>()?);
        let mut forced_set = Bitset::new(n);
        for &v in forced {
            check(v)?;
            if excluded.contains(v) {
                return Err(Error::ForcedExcluded(v));
            }
            forced_set.insert(v);
        }
        for row in &rows {
            let mut avail = row.members.clone();
            avail.difference_with(&excluded);
            let c = avail.count();
            if c < k {
                return Err(Error::Infeasible(row.pair.0, row.pair.1, k));
            }
            if c == k {
                forced_set.union_with(&avail);
            }
        }
        Ok(MulticoverInstance {
            n,
            k,
            rows,
            forced: forced_set,
            excluded,
        })
    }

    pub fn from_table(table: &PairTable, k: usize, forced: &[usize], excluded: &[usize]) -> Result<Self> {
        let rows = table
            .iter()
            .map(|d| Row {
                pair: d.pair,
                members: d.members,
            })
            .collect();
        Self::new(table.order(), k, rows, forced, excluded)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn forced(&self) -> &Bitset {
        &self.forced
    }

    pub fn excluded(&self) -> &Bitset {
        &self.excluded
    }

    /// Lexicographically first row that `s` hits fewer than `k` times.
    pub fn first_violation(&self, s: &Bitset) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .find(|r| r.members.intersection_count(s) < self.k)
            .map(|r| r.pair)
    }

    pub fn is_solution(&self, s: &Bitset) -> bool {
        s.is_disjoint(&self.excluded) && self.first_violation(s).is_none()
    }
}

/// Builds the multicover instance of `g` at multiplicity `k`.
pub fn build_instance(
    g: &Graph,
    k: usize,
    forced: Option<&[usize]>,
    excluded: Option<&[usize]>,
) -> Result<MulticoverInstance> {
    let table = PairTable::new(g)?;
    instance_from_table(&table, k, forced, excluded)
}

pub fn instance_from_table(
    table: &PairTable,
    k: usize,
    forced: Option<&[usize]>,
    excluded: Option<&[usize]>,
) -> Result<MulticoverInstance> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let max = table.dimensional_k()?;
    if k > max {
        return Err(Error::KTooLarge { k, max });
    }
    MulticoverInstance::from_table(table, k, forced.unwrap_or(&[]), excluded.unwrap_or(&[]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Proof {
    Exact,
    GreedyUpperBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisResult {
    pub k: usize,
    pub dim: usize,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    pub proof: Proof,
}

// ---------------------------------------------------------------------------
// search machinery

/// Row structure after dropping excluded vertices, duplicate rows and rows
/// that contain another row.
struct Prepared {
    n: usize,
    k: u32,
    row_members: Vec<Vec<u32>>,
    row_bits: Vec<Bitset>,
    vertex_rows: Vec<Vec<u32>>,
    forced: Vec<usize>,
    excluded: Vec<usize>,
}

const SUPERSET_PRUNE_LIMIT: usize = 6000;

impl Prepared {
    fn new(inst: &MulticoverInstance) -> Self {
        let n = inst.n;
        let mut bits: Vec<Bitset> = inst
            .rows
            .iter()
            .map(|r| {
                let mut b = r.members.clone();
                b.difference_with(&inst.excluded);
                b
            })
            .collect();
        bits.sort_by_key(|b| (b.count(), b.clone()));
        bits.dedup();
        if bits.len() <= SUPERSET_PRUNE_LIMIT {
            // sorted by size, so any subset of row i sits before it
            let mut keep: Vec<Bitset> = Vec::with_capacity(bits.len());
            for b in bits {
                if !keep.iter().any(|k| k.is_subset(&b)) {
                    keep.push(b);
                }
            }
            bits = keep;
        }
        let row_members: Vec<Vec<u32>> = bits
            .iter()
            .map(|b| b.iter().map(|v| v as u32).collect())
            .collect();
        let mut vertex_rows = vec![Vec::new(); n];
        for (r, m) in row_members.iter().enumerate() {
            for &v in m {
                vertex_rows[v as usize].push(r as u32);
            }
        }
        Prepared {
            n,
            k: inst.k as u32,
            row_members,
            row_bits: bits,
            vertex_rows,
            forced: inst.forced.to_vec(),
            excluded: inst.excluded.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mark {
    Free,
    In,
    Out,
}

#[derive(Clone, Copy, Debug)]
enum Decision {
    In(usize),
    Out(usize),
}

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    stop: AtomicBool,
}

impl Shared {
    fn new(budget: u64) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            budget,
            stop: AtomicBool::new(false),
        }
    }

    fn tick(&self) -> Result<()> {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.budget {
            return Err(Error::ResourceExhausted(self.budget));
        }
        Ok(())
    }

    fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed).min(self.budget)
    }
}

enum Step {
    Done,
    Dead,
    Branch(usize),
    TakeAll(usize),
}

struct Search<'a> {
    p: &'a Prepared,
    shared: &'a Shared,
    hits: Vec<u32>,
    avail: Vec<u32>,
    mark: Vec<Mark>,
    free: Bitset,
    chosen: Vec<usize>,
    trail: Vec<Decision>,
    scratch: Bitset,
    used: Bitset,
    cover: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(p: &'a Prepared, shared: &'a Shared) -> Self {
        let mut s = Search {
            p,
            shared,
            hits: vec![0; p.row_members.len()],
            avail: p.row_members.iter().map(|m| m.len() as u32).collect(),
            mark: vec![Mark::Free; p.n],
            free: Bitset::full(p.n),
            chosen: Vec::new(),
            trail: Vec::new(),
            scratch: Bitset::new(p.n),
            used: Bitset::new(p.n),
            cover: vec![0; p.n],
        };
        for &v in &p.excluded {
            // excluded vertices were stripped from the rows already
            s.mark[v] = Mark::Out;
            s.free.remove(v);
        }
        for &v in &p.forced {
            s.include(v);
        }
        s.trail.clear();
        s
    }

    fn include(&mut self, v: usize) {
        debug_assert_eq!(self.mark[v], Mark::Free);
        self.mark[v] = Mark::In;
        self.free.remove(v);
        for &r in &self.p.vertex_rows[v] {
            self.hits[r as usize] += 1;
            self.avail[r as usize] -= 1;
        }
        self.chosen.push(v);
        self.trail.push(Decision::In(v));
    }

    fn exclude(&mut self, v: usize) {
        debug_assert_eq!(self.mark[v], Mark::Free);
        self.mark[v] = Mark::Out;
        self.free.remove(v);
        for &r in &self.p.vertex_rows[v] {
            self.avail[r as usize] -= 1;
        }
        self.trail.push(Decision::Out(v));
    }

    fn undo(&mut self) {
        match self.trail.pop().expect("undo without decision") {
            Decision::In(v) => {
                self.mark[v] = Mark::Free;
                self.free.insert(v);
                for &r in &self.p.vertex_rows[v] {
                    self.hits[r as usize] -= 1;
                    self.avail[r as usize] += 1;
                }
                self.chosen.pop();
            }
            Decision::Out(v) => {
                self.mark[v] = Mark::Free;
                self.free.insert(v);
                for &r in &self.p.vertex_rows[v] {
                    self.avail[r as usize] += 1;
                }
            }
        }
    }

    fn apply(&mut self, path: &[Decision]) {
        for d in path {
            match *d {
                Decision::In(v) => self.include(v),
                Decision::Out(v) => self.exclude(v),
            }
        }
    }

    fn deficit(&self, r: usize) -> u32 {
        self.p.k.saturating_sub(self.hits[r])
    }

    /// Inspects the current node against a budget of `remaining` more
    /// vertices: detects success, infeasibility or a failed lower bound, and
    /// otherwise picks the row to branch on.
    fn step(&mut self, remaining: usize) -> Step {
        let rem = remaining as u32;
        let mut best: Option<(u32, usize)> = None;
        let mut sum_def: u64 = 0;
        for r in 0..self.hits.len() {
            let def = self.deficit(r);
            if def == 0 {
                continue;
            }
            let avail = self.avail[r];
            if avail < def || def > rem {
                return Step::Dead;
            }
            sum_def += u64::from(def);
            let slack = avail - def;
            if best.is_none_or(|(s, _)| slack < s) {
                best = Some((slack, r));
            }
        }
        let Some((slack, row)) = best else {
            return Step::Done;
        };

        // each free vertex covers at most `cover[v]` unit deficits
        let mut max_cover = 0;
        for v in self.free.iter() {
            let c = self.p.vertex_rows[v]
                .iter()
                .filter(|&&r| self.hits[r as usize] < self.p.k)
                .count() as u32;
            self.cover[v] = c;
            max_cover = max_cover.max(c);
        }
        if max_cover == 0 || sum_def.div_ceil(u64::from(max_cover)) > u64::from(rem) {
            return Step::Dead;
        }
        if self.packing_bound() > rem {
            return Step::Dead;
        }

        if slack == 0 {
            Step::TakeAll(row)
        } else {
            let v = self.p.row_members[row]
                .iter()
                .map(|&v| v as usize)
                .filter(|&v| self.mark[v] == Mark::Free)
                .max_by(|&a, &b| self.cover[a].cmp(&self.cover[b]).then(b.cmp(&a)))
                .expect("row with slack has free members");
            Step::Branch(v)
        }
    }

    /// Greedy packing of deficient rows with pairwise-disjoint free parts;
    /// each needs its deficit from distinct vertices.
    fn packing_bound(&mut self) -> u32 {
        self.used = Bitset::new(self.p.n);
        let mut lb = 0;
        for r in 0..self.hits.len() {
            let def = self.deficit(r);
            if def == 0 {
                continue;
            }
            self.scratch.clone_from(&self.p.row_bits[r]);
            self.scratch.intersect_with(&self.free);
            if self.scratch.is_disjoint(&self.used) {
                lb += def;
                self.used.union_with(&self.scratch);
            }
        }
        lb
    }

    /// Depth-first search for a solution with at most `t` chosen vertices.
    /// When `split` is set, nodes at that trail depth are recorded instead of
    /// explored.
    fn dfs(&mut self, t: usize, split: Option<(usize, &mut Vec<Vec<Decision>>)>) -> Result<bool> {
        self.shared.tick()?;
        if self.shared.stop.load(Ordering::Relaxed) {
            return Ok(false);
        }
        let remaining = t.saturating_sub(self.chosen.len());
        if self.chosen.len() > t {
            return Ok(false);
        }
        let step = self.step(remaining);
        match step {
            Step::Done => Ok(true),
            Step::Dead => Ok(false),
            _ => {
                if let Some((depth, frontier)) = split {
                    if self.trail.len() >= depth {
                        frontier.push(self.trail.clone());
                        return Ok(false);
                    }
                    return self.expand(t, step, Some((depth, frontier)));
                }
                self.expand(t, step, None)
            }
        }
    }

    fn expand(
        &mut self,
        t: usize,
        step: Step,
        mut split: Option<(usize, &mut Vec<Vec<Decision>>)>,
    ) -> Result<bool> {
        match step {
            Step::TakeAll(row) => {
                let take: Vec<usize> = self.p.row_members[row]
                    .iter()
                    .map(|&v| v as usize)
                    .filter(|&v| self.mark[v] == Mark::Free)
                    .collect();
                for &v in &take {
                    self.include(v);
                }
                let found = self.dfs(t, split.as_mut().map(|(d, f)| (*d, &mut **f)))?;
                if !found {
                    for _ in &take {
                        self.undo();
                    }
                }
                Ok(found)
            }
            Step::Branch(v) => {
                self.include(v);
                if self.dfs(t, split.as_mut().map(|(d, f)| (*d, &mut **f)))? {
                    return Ok(true);
                }
                self.undo();
                self.exclude(v);
                if self.dfs(t, split.as_mut().map(|(d, f)| (*d, &mut **f)))? {
                    return Ok(true);
                }
                self.undo();
                Ok(false)
            }
            Step::Done | Step::Dead => unreachable!(),
        }
    }

    fn witness(&self) -> Vec<usize> {
        let mut w = self.chosen.clone();
        w.sort_unstable();
        w
    }
}

fn greedy_cover(p: &Prepared, shared: &Shared) -> Result<Vec<usize>> {
    let mut s = Search::new(p, shared);
    loop {
        shared.tick()?;
        let mut best: Option<(usize, usize)> = None;
        for v in s.free.iter() {
            let c = p.vertex_rows[v]
                .iter()
                .filter(|&&r| s.hits[r as usize] < p.k)
                .count();
            if c > 0 && best.is_none_or(|(bc, _)| c > bc) {
                best = Some((c, v));
            }
        }
        match best {
            Some((_, v)) => s.include(v),
            None => break,
        }
    }
    if (0..s.hits.len()).any(|r| s.hits[r] < p.k) {
        // only reachable if the instance was infeasible
        return Err(Error::Infeasible(0, 0, p.k as usize));
    }
    Ok(s.witness())
}

fn ensure_feasible(inst: &MulticoverInstance) -> Result<()> {
    for r in &inst.rows {
        let mut a = r.members.clone();
        a.difference_with(&inst.excluded);
        if a.count() < inst.k {
            return Err(Error::Infeasible(r.pair.0, r.pair.1, inst.k));
        }
    }
    Ok(())
}

pub fn solve_greedy(inst: &MulticoverInstance) -> Result<BasisResult> {
    ensure_feasible(inst)?;
    let p = Prepared::new(inst);
    let shared = Shared::new(u64::MAX);
    let witness = greedy_cover(&p, &shared)?;
    Ok(BasisResult {
        k: inst.k,
        dim: witness.len(),
        witness,
        nodes_explored: shared.nodes(),
        proof: Proof::GreedyUpperBoundOnly,
    })
}

pub fn solve_exact(inst: &MulticoverInstance) -> Result<BasisResult> {
    solve_exact_with(inst, &SolverConfig::default())
}

pub fn solve_exact_with(inst: &MulticoverInstance, cfg: &SolverConfig) -> Result<BasisResult> {
    ensure_feasible(inst)?;
    let p = Prepared::new(inst);
    let shared = Shared::new(cfg.node_budget.max(1));
    let greedy = greedy_cover(&p, &shared)?;
    let upper = greedy.len();

    let mut root = Search::new(&p, &shared);
    let lower = (root.packing_bound() as usize + root.chosen.len())
        .max(inst.k)
        .max(root.chosen.len());

    for t in lower..upper {
        let found = if cfg.threads > 1 {
            parallel_level(&p, &shared, t, cfg.threads)?
        } else if root.dfs(t, None)? {
            Some(root.witness())
        } else {
            None
        };
        if let Some(witness) = found {
            return Ok(BasisResult {
                k: inst.k,
                dim: witness.len(),
                witness,
                nodes_explored: shared.nodes(),
                proof: Proof::Exact,
            });
        }
    }
    // every smaller size was refuted
    Ok(BasisResult {
        k: inst.k,
        dim: upper,
        witness: greedy,
        nodes_explored: shared.nodes(),
        proof: Proof::Exact,
    })
}

fn parallel_level(p: &Prepared, shared: &Shared, t: usize, threads: usize) -> Result<Option<Vec<usize>>> {
    let mut frontier = Vec::new();
    let mut root = Search::new(p, shared);
    let target = threads * 8;
    let mut depth = 1;
    // deepen the split until there is enough work to spread
    loop {
        frontier.clear();
        if root.dfs(t, Some((depth, &mut frontier)))? {
            return Ok(Some(root.witness()));
        }
        if frontier.len() >= target || frontier.is_empty() || depth >= 24 {
            break;
        }
        depth += 2;
    }
    if frontier.is_empty() {
        return Ok(None);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let found: Mutex<Option<Vec<usize>>> = Mutex::new(None);
    let res: Result<()> = pool.install(|| {
        frontier.par_iter().try_for_each(|path| {
            if shared.stop.load(Ordering::Relaxed) {
                return Ok(());
            }
            let mut s = Search::new(p, shared);
            s.apply(path);
            if s.dfs(t, None)? {
                shared.stop.store(true, Ordering::Relaxed);
                let mut slot = found.lock().expect("poisoned");
                if slot.is_none() {
                    *slot = Some(s.witness());
                }
            }
            Ok(())
        })
    });
    res?;
    shared.stop.store(false, Ordering::Relaxed);
    Ok(found.into_inner().expect("poisoned"))
}

/// Up to `limit` optimal solutions in lexicographic order of their sorted
/// vertex lists.
pub fn solve_exact_all(inst: &MulticoverInstance, limit: usize) -> Result<Vec<Vec<usize>>> {
    solve_exact_all_with(inst, limit, &SolverConfig::default())
}

pub fn solve_exact_all_with(
    inst: &MulticoverInstance,
    limit: usize,
    cfg: &SolverConfig,
) -> Result<Vec<Vec<usize>>> {
    let dim = solve_exact_with(
        inst,
        &SolverConfig {
            threads: 1,
            ..*cfg
        },
    )?
    .dim;
    let p = Prepared::new(inst);
    let shared = Shared::new(cfg.node_budget.max(1));
    let mut s = Search::new(&p, &shared);
    let mut out = Vec::new();
    if limit > 0 {
        enumerate(&mut s, 0, dim, limit, &mut out)?;
    }
    Ok(out)
}

fn enumerate(
    s: &mut Search<'_>,
    next: usize,
    dim: usize,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if out.len() >= limit {
        return Ok(());
    }
    s.shared.tick()?;
    let remaining = dim.saturating_sub(s.chosen.len());
    match s.step(remaining) {
        Step::Dead => return Ok(()),
        Step::Done => {
            out.push(s.witness());
            return Ok(());
        }
        _ => {}
    }
    let Some(v) = (next..s.p.n).find(|&v| s.mark[v] == Mark::Free) else {
        return Ok(());
    };
    s.include(v);
    enumerate(s, v + 1, dim, limit, out)?;
    s.undo();
    if out.len() >= limit {
        return Ok(());
    }
    s.exclude(v);
    enumerate(s, v + 1, dim, limit, out)?;
    s.undo();
    Ok(())
}

/// Exact `dim_k(g)`.
pub fn dim_k(g: &Graph, k: usize) -> Result<usize> {
    Ok(basis(g, k, &SolverConfig::default())?.dim)
}

/// One k-metric basis of `g` with its optimality certificate.
pub fn basis(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<BasisResult> {
    solve_exact_with(&build_instance(g, k, None, None)?, cfg)
}

/// `f(H, k)`: 1 when some k-metric basis of `K_1 + H` contains the hub,
/// decided by re-solving with the hub forced in.
pub fn f_of_h_k(h: &Graph, k: usize, cfg: &SolverConfig) -> Result<u8> {
    let g = cone(h)?;
    let table = PairTable::new(&g)?;
    let free = solve_exact_with(&instance_from_table(&table, k, None, None)?, cfg)?;
    let hub = solve_exact_with(&instance_from_table(&table, k, Some(&[0]), None)?, cfg)?;
    Ok(u8::from(hub.dim == free.dim))
}
