//! Checks closed forms and bounds against exact solver values and records
//! one [`TheoremReport`] per (claim, instance).
//!
//! Every corona instance that gets solved is also audited for basis
//! structure: a basis avoids the base vertices, meets each copy `V_i` in at
//! least `k` vertices, and restricts to a k-metric generator of each
//! connected `H_i`. A failed audit is reported as a violation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::constructions::{cone, corona, fan, wheel, CoronaLayout, CoronaSpec};
use crate::error::{Error, Result};
use crate::expr::GraphExpr;
use crate::formulas::{self, Applicability, TheoremId, TwinPrediction};
use crate::graph::Graph;
use crate::metric_sets::{c_of_family, PairTable};
use crate::solver::{self, BasisResult, SolverConfig};

/// Version of the report schema (JSON and CSV).
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Confirmed,
    BoundHeld,
    Inapplicable,
    #[serde(rename = "VIOLATED")]
    Violated,
    /// The solver ran out of budget; nothing was asserted.
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Confirmed => "Confirmed",
            Verdict::BoundHeld => "BoundHeld",
            Verdict::Inapplicable => "Inapplicable",
            Verdict::Violated => "VIOLATED",
            Verdict::Skipped => "Skipped",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Predicted {
    Value { value: usize },
    Bounds { lower: usize, upper: usize },
    AtMost { upper: usize },
    AtLeast { lower: usize },
    Below { bound: usize },
}

impl Predicted {
    fn verdict(self, observed: usize) -> Verdict {
        let (ok, exact) = match self {
            Predicted::Value { value } => (observed == value, true),
            Predicted::Bounds { lower, upper } => {
                (lower <= observed && observed <= upper, lower == upper)
            }
            Predicted::AtMost { upper } => (observed <= upper, false),
            Predicted::AtLeast { lower } => (observed >= lower, false),
            Predicted::Below { bound } => (observed < bound, false),
        };
        match (ok, exact) {
            (false, _) => Verdict::Violated,
            (true, true) => Verdict::Confirmed,
            (true, false) => Verdict::BoundHeld,
        }
    }

    fn csv_fields(self) -> (&'static str, String, String) {
        let s = |v: usize| v.to_string();
        match self {
            Predicted::Value { value } => ("value", s(value), s(value)),
            Predicted::Bounds { lower, upper } => ("bounds", s(lower), s(upper)),
            Predicted::AtMost { upper } => ("at_most", String::new(), s(upper)),
            Predicted::AtLeast { lower } => ("at_least", s(lower), String::new()),
            Predicted::Below { bound } => ("below", String::new(), s(bound)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub instance: String,
    pub k: Option<usize>,
    pub applicable: bool,
    pub reason: String,
    pub predicted: Option<Predicted>,
    pub observed: Option<usize>,
    pub verdict: Verdict,
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl TheoremReport {
    pub const CSV_HEADER: &'static str =
        "theorem,instance,k,applicable,reason,predicted_kind,predicted_lower,predicted_upper,observed,verdict";

    pub fn csv_row(&self) -> String {
        let (kind, lo, hi) = self
            .predicted
            .map_or(("", String::new(), String::new()), Predicted::csv_fields);
        let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
        [
            self.theorem.name().to_string(),
            csv_escape(&self.instance),
            opt(self.k),
            self.applicable.to_string(),
            csv_escape(&self.reason),
            kind.to_string(),
            lo,
            hi,
            opt(self.observed),
            self.verdict.as_str().to_string(),
        ]
        .join(",")
    }

    fn new(theorem: TheoremId, instance: impl Into<String>, k: Option<usize>) -> Self {
        TheoremReport {
            theorem,
            instance: instance.into(),
            k,
            applicable: false,
            reason: String::new(),
            predicted: None,
            observed: None,
            verdict: Verdict::Inapplicable,
        }
    }

    fn inapplicable(mut self, why: impl Into<String>) -> Self {
        self.reason = why.into();
        self.verdict = Verdict::Inapplicable;
        self
    }

    fn judge(mut self, predicted: Predicted, observed: usize) -> Self {
        self.applicable = true;
        self.predicted = Some(predicted);
        self.observed = Some(observed);
        self.verdict = predicted.verdict(observed);
        self
    }

    /// Applicable claim whose evaluation failed (budget or structural).
    fn failed(mut self, predicted: Option<Predicted>, err: &Error) -> Self {
        self.applicable = true;
        self.predicted = predicted;
        self.reason = err.to_string();
        self.verdict = match err {
            Error::ResourceExhausted(_) => Verdict::Skipped,
            _ => Verdict::Violated,
        };
        self
    }

    fn violated(mut self, why: String) -> Self {
        self.reason = why;
        self.verdict = Verdict::Violated;
        self
    }
}

/// Checks that `witness` has the shape every k-metric basis of a corona must
/// have.
pub fn check_corona_basis(
    spec: &CoronaSpec,
    layout: &CoronaLayout,
    witness: &[usize],
    k: usize,
) -> std::result::Result<(), String> {
    if let Some(v) = witness.iter().find(|&&v| layout.base().contains(&v)) {
        return Err(format!("basis contains base vertex {v}"));
    }
    for (i, h) in spec.attachments().iter().enumerate() {
        let block = layout.copy(i);
        let local: Vec<usize> = witness
            .iter()
            .filter(|v| block.contains(v))
            .map(|v| v - block.start)
            .collect();
        if local.len() < k {
            return Err(format!("basis meets V_{i} in {} < {k} vertices", local.len()));
        }
        if h.is_connected() {
            let table = PairTable::new(h).map_err(|e| e.to_string())?;
            let s = Bitset::from_indices(h.order(), local.iter().copied());
            if !table.check_generator(&s, k).is_generator() {
                return Err(format!("basis restricted to V_{i} is not a {k}-metric generator of H_{i}"));
            }
        }
    }
    Ok(())
}

/// A corona built from expressions, with the solved bases cached per `k`.
struct SolvedCorona {
    name: String,
    spec: CoronaSpec,
    graph: Graph,
    layout: CoronaLayout,
    table: PairTable,
    cache: BTreeMap<usize, BasisResult>,
}

impl SolvedCorona {
    fn new(name: String, spec: CoronaSpec) -> Result<Self> {
        let (graph, layout) = corona(&spec);
        let table = PairTable::new(&graph)?;
        Ok(SolvedCorona {
            name,
            spec,
            graph,
            layout,
            table,
            cache: BTreeMap::new(),
        })
    }

    fn dimensional_k(&self) -> usize {
        self.table.min_size()
    }

    /// Exact `dim_k` of the corona, audited for basis structure.
    fn dim(&mut self, k: usize, cfg: &SolverConfig) -> Result<std::result::Result<usize, String>> {
        if !self.cache.contains_key(&k) {
            let inst = solver::instance_from_table(&self.table, k, None, None)?;
            let r = solver::solve_exact_with(&inst, cfg)?;
            self.cache.insert(k, r);
        }
        let r = &self.cache[&k];
        debug_assert_eq!(self.graph.order(), self.layout.order());
        Ok(check_corona_basis(&self.spec, &self.layout, &r.witness, k).map(|()| r.dim))
    }
}

/// Evaluates claims against exact solver values.
#[derive(Clone, Copy, Debug, Default)]
pub struct Harness {
    pub cfg: SolverConfig,
}

impl Harness {
    pub fn new(cfg: SolverConfig) -> Self {
        Harness { cfg }
    }

    /// Fan/wheel closed form at order `n`.
    pub fn fan_wheel(&self, theorem: TheoremId, n: usize) -> TheoremReport {
        let (is_wheel, k) = theorem
            .fan_wheel()
            .unwrap_or_else(|| panic!("{theorem} is not a fan/wheel claim"));
        let name = format!("{}{n}", if is_wheel { 'W' } else { 'F' });
        let rep = TheoremReport::new(theorem, &name, Some(k));
        let formula = if is_wheel {
            formulas::wheel_dim(n, k)
        } else {
            formulas::fan_dim(n, k)
        };
        let value = match formula {
            Ok(v) => v,
            Err(e) => return rep.inapplicable(e.to_string()),
        };
        let g = match if is_wheel { wheel(n) } else { fan(n) } {
            Ok(g) => g,
            Err(e) => return rep.inapplicable(e.to_string()),
        };
        let predicted = Predicted::Value { value };
        match solver::basis(&g, k, &self.cfg) {
            Ok(r) => rep.judge(predicted, r.dim),
            Err(e) => rep.failed(Some(predicted), &e),
        }
    }

    /// Claims about a single connected graph.
    pub fn graph_claim(&self, theorem: TheoremId, expr: &GraphExpr) -> TheoremReport {
        let rep = TheoremReport::new(theorem, expr.to_string(), None);
        let g = match expr.build() {
            Ok(g) => g,
            Err(e) => return rep.inapplicable(e.to_string()),
        };
        match self.graph_claim_inner(theorem, &g, rep.clone()) {
            Ok(r) => r,
            Err(e) => rep.failed(None, &e),
        }
    }

    fn graph_claim_inner(&self, theorem: TheoremId, g: &Graph, rep: TheoremReport) -> Result<TheoremReport> {
        Ok(match theorem {
            TheoremId::JoinDimensionalK => {
                if g.order() < 2 {
                    return Ok(rep.inapplicable("H is trivial"));
                }
                let predicted = formulas::join_dimensional_k(g)?;
                let observed = PairTable::new(&cone(g)?)?.dimensional_k()?;
                rep.judge(Predicted::Value { value: predicted }, observed)
            }
            TheoremId::TwinsIffTwoDimensional => {
                if g.order() < 3 || !g.is_connected() {
                    return Ok(rep.inapplicable("needs a connected graph of order >= 3"));
                }
                let observed = PairTable::new(g)?.dimensional_k()?;
                let predicted = if g.twins().is_empty() {
                    Predicted::AtLeast { lower: 3 }
                } else {
                    Predicted::Value { value: 2 }
                };
                rep.judge(predicted, observed)
            }
            TheoremId::FullDimensionCharacterization => {
                if g.order() < 2 || !g.is_connected() {
                    return Ok(rep.inapplicable("needs a connected non-trivial graph"));
                }
                let table = PairTable::new(g)?;
                let k = table.dimensional_k()?;
                let n = g.order();
                let predicted = if table.d_k_union(k).count() == n {
                    Predicted::Value { value: n }
                } else {
                    Predicted::Below { bound: n }
                };
                let inst = solver::instance_from_table(&table, k, None, None)?;
                let observed = solver::solve_exact_with(&inst, &self.cfg)?.dim;
                TheoremReport { k: Some(k), ..rep }.judge(predicted, observed)
            }
            other => rep.inapplicable(format!("{other} is not a single-graph claim")),
        })
    }

    /// Claims about `base ⊙ attachments`. With `k = None` every
    /// `k ∈ 1..=k'` of the corona is tried (for k-dependent claims).
    pub fn corona_claim(
        &self,
        theorem: TheoremId,
        base: &GraphExpr,
        attachments: &[GraphExpr],
        k: Option<usize>,
    ) -> Vec<TheoremReport> {
        let name = GraphExpr::Corona(Box::new(base.clone()), attachments.to_vec()).to_string();
        let built = (|| -> Result<CoronaSpec> {
            let hs = attachments.iter().map(GraphExpr::build).collect::<Result<Vec<_>>>()?;
            CoronaSpec::new(base.build()?, hs)
        })();
        match built {
            Ok(spec) => self.corona_claim_spec(theorem, name, spec, k),
            Err(e) => vec![TheoremReport::new(theorem, name, k).inapplicable(e.to_string())],
        }
    }

    /// As [`Harness::corona_claim`], for a corona given directly.
    pub fn corona_claim_spec(
        &self,
        theorem: TheoremId,
        name: String,
        spec: CoronaSpec,
        k: Option<usize>,
    ) -> Vec<TheoremReport> {
        let mut main = match SolvedCorona::new(name.clone(), spec) {
            Ok(c) => c,
            Err(e) => return vec![TheoremReport::new(theorem, name, k).inapplicable(e.to_string())],
        };
        let ks: Vec<usize> = match (theorem, k) {
            (TheoremId::CoronaDimensionalValue | TheoremId::Girth5Regular2Delta, _) => vec![0],
            (TheoremId::TwinDim2Equality, _) => vec![2],
            (_, Some(k)) => vec![k],
            (_, None) => (1..=main.dimensional_k()).collect(),
        };
        let mut out = Vec::new();
        for k in ks {
            out.extend(self.corona_claim_at(theorem, &mut main, k));
        }
        out
    }

    fn corona_claim_at(&self, theorem: TheoremId, c: &mut SolvedCorona, k: usize) -> Vec<TheoremReport> {
        let cfg = &self.cfg;
        let kk = (k > 0).then_some(k);
        let rep = TheoremReport::new(theorem, c.name.clone(), kk);

        // three-way claims: the same prediction for ℋ, its complement and K_1 ◇ ℋ
        let three_way = |c: &mut SolvedCorona, pred: Applicability<usize>| -> Vec<TheoremReport> {
            let value = match pred {
                Applicability::Applies(v) => v,
                Applicability::Inapplicable(why) => return vec![rep.clone().inapplicable(why)],
            };
            let predicted = Predicted::Value { value };
            let mut reps = vec![self.judge_dim(rep.clone(), c, k, predicted)];
            let variants = [
                ("complement", Ok(c.spec.complemented())),
                ("cone", c.spec.coned()),
            ];
            for (tag, spec) in variants {
                let name = format!("{} [{tag}]", c.name);
                let r = TheoremReport::new(theorem, name.clone(), kk);
                let solved = spec.and_then(|s| SolvedCorona::new(name, s));
                reps.push(match solved {
                    Ok(mut v) => self.judge_dim(r, &mut v, k, predicted),
                    Err(e) => r.failed(Some(predicted), &e),
                });
            }
            reps
        };

        match theorem {
            TheoremId::CoronaDimensionalValue => match formulas::corona_dimensional_value(&c.spec) {
                Applicability::Applies(v) => vec![rep.judge(Predicted::Value { value: v }, c.dimensional_k())],
                Applicability::Inapplicable(why) => vec![rep.inapplicable(why)],
            },
            TheoremId::Girth5Regular2Delta => match formulas::girth5_regular_value(&c.spec) {
                Applicability::Applies(v) => vec![rep.judge(Predicted::Value { value: v }, c.dimensional_k())],
                Applicability::Inapplicable(why) => vec![rep.inapplicable(why)],
            },
            TheoremId::SandwichBounds => vec![self.solver_claim(rep, c, k, |s| {
                Ok(match formulas::sandwich_bounds(s, k, cfg)? {
                    Applicability::Applies((lower, upper)) => Ok(Predicted::Bounds { lower, upper }),
                    Applicability::Inapplicable(why) => Err(why),
                })
            })],
            TheoremId::UpperBoundEquality => vec![self.solver_claim(rep, c, k, |s| {
                let a = formulas::upper_bound_equality(s, k, cfg)?;
                Ok(match a {
                    Applicability::Applies(value) => Ok(Predicted::Value { value }),
                    Applicability::Inapplicable(why) => Err(why),
                })
            })],
            TheoremId::TwinDim2Equality => vec![self.solver_claim(rep, c, 2, |s| {
                Ok(match formulas::twin_dim2_equality(s) {
                    Applicability::Applies(TwinPrediction::EqualsTotal { total }) => {
                        Ok(Predicted::Value { value: total })
                    }
                    Applicability::Applies(TwinPrediction::BelowTotal { total }) => {
                        Ok(Predicted::Below { bound: total })
                    }
                    Applicability::Inapplicable(why) => Err(why),
                })
            })],
            TheoremId::Diam2Equality => vec![self.solver_claim(rep, c, k, |s| {
                Ok(match formulas::diam2_equality(s, k, cfg)? {
                    Applicability::Applies(value) => Ok(Predicted::Value { value }),
                    Applicability::Inapplicable(why) => Err(why),
                })
            })],
            TheoremId::K1HUpperBound => vec![self.solver_claim(rep, c, k, |s| {
                Ok(match formulas::k1h_upper_bound(s, k, cfg)? {
                    Applicability::Applies(upper) => Ok(Predicted::AtMost { upper }),
                    Applicability::Inapplicable(why) => Err(why),
                })
            })],
            TheoremId::Diam6Equality => match formulas::diam6_equality(&c.spec, k, cfg) {
                Ok(pred) => three_way(c, pred),
                Err(e) => vec![rep.failed(None, &e)],
            },
            TheoremId::CoronaPathsClosed | TheoremId::CoronaCyclesClosed => {
                let want_paths = theorem == TheoremId::CoronaPathsClosed;
                let hs = c.spec.attachments();
                let uniform = if want_paths {
                    hs.iter().all(crate::constructions::is_path_graph)
                } else {
                    hs.iter().all(crate::constructions::is_cycle_graph)
                };
                if !uniform {
                    let what = if want_paths { "paths" } else { "cycles" };
                    return vec![rep.inapplicable(format!("attachments are not all {what}"))];
                }
                three_way(c, formulas::corona_paths_cycles_closed(&c.spec, k))
            }
            other => vec![rep.inapplicable(format!("{other} is not a corona claim"))],
        }
    }

    fn judge_dim(&self, rep: TheoremReport, c: &mut SolvedCorona, k: usize, predicted: Predicted) -> TheoremReport {
        if k > c.dimensional_k() {
            let err = Error::KTooLarge { k, max: c.dimensional_k() };
            return rep.failed(Some(predicted), &err);
        }
        match c.dim(k, &self.cfg) {
            Ok(Ok(dim)) => rep.judge(predicted, dim),
            Ok(Err(structure)) => rep.judge(predicted, 0).violated(structure),
            Err(e) => rep.failed(Some(predicted), &e),
        }
    }

    fn solver_claim(
        &self,
        rep: TheoremReport,
        c: &mut SolvedCorona,
        k: usize,
        predict: impl FnOnce(&CoronaSpec) -> Result<std::result::Result<Predicted, String>>,
    ) -> TheoremReport {
        match predict(&c.spec) {
            Ok(Ok(p)) => self.judge_dim(rep, c, k, p),
            Ok(Err(why)) => rep.inapplicable(why),
            Err(e) => rep.failed(None, &e),
        }
    }
}

// ---------------------------------------------------------------------------
// curated corpus

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusItem {
    Order(usize),
    Graph(String),
    Corona {
        base: String,
        attachments: Vec<String>,
        k: Option<usize>,
    },
}

fn corona_item(base: &str, attachments: &str) -> CorpusItem {
    CorpusItem::Corona {
        base: base.into(),
        attachments: attachments.split(',').map(str::to_string).collect(),
        k: None,
    }
}

/// The curated verification corpus: every claim on desk-scale instances,
/// including instances outside the hypotheses (reported as inapplicable).
pub fn corpus() -> Vec<(TheoremId, CorpusItem)> {
    use TheoremId::*;
    let mut out = Vec::new();
    let orders = [
        (FanDim1, 1..=14),
        (FanDim2, 2..=14),
        (FanDim3, 4..=14),
        (WheelDim1, 3..=14),
        (WheelDim2, 3..=14),
        (WheelDim3, 5..=14),
        (WheelDim4, 5..=14),
    ];
    for (t, range) in orders {
        out.extend(range.map(|n| (t, CorpusItem::Order(n))));
    }
    let graphs: [(TheoremId, &[&str]); 3] = [
        (
            TwinsIffTwoDimensional,
            &["K5", "P4", "C4", "C5", "S4", "F5", "W4", "W6", "Petersen", "corona(P2;K2,K2)", "corona(P2;P4,P4)"],
        ),
        (
            FullDimensionCharacterization,
            &["K4", "P4", "C6", "C7", "S5", "F6", "W5", "W8", "corona(P2;P4,P4)"],
        ),
        (
            JoinDimensionalK,
            &["P2", "P3", "P4", "P6", "P8", "C3", "C4", "C5", "C8", "K3", "S5", "Petersen", "comp(C7)", "comp(P7)"],
        ),
    ];
    for (t, list) in graphs {
        out.extend(list.iter().map(|g| (t, CorpusItem::Graph(g.to_string()))));
    }
    let coronas: [(TheoremId, &[(&str, &str)]); 10] = [
        (
            CoronaDimensionalValue,
            &[
                ("P2", "K2,K2"),
                ("C3", "P4,P4,P4"),
                ("P2", "C5,C5"),
                ("P3", "C5,C6,C7"),
                ("P2", "P4,C5"),
                ("P2", "S4,P5"),
                ("P2", "K1,K2"),
            ],
        ),
        (
            Girth5Regular2Delta,
            &[("P2", "C5,C5"), ("P2", "Petersen,Petersen"), ("P3", "C6,C7,C8"), ("P2", "C4,C4")],
        ),
        (
            SandwichBounds,
            &[
                ("P2", "P4,P4"),
                ("P3", "P4,P4,P4"),
                ("C3", "P4,P4,P4"),
                ("P2", "C6,C6"),
                ("C3", "C6,C6,C6"),
                ("P2", "K3,K3"),
                ("P2", "C5,P5"),
                ("P3", "S4,C5,P4"),
            ],
        ),
        (
            UpperBoundEquality,
            &[
                ("P2", "P4,P4"),
                ("P3", "P4,P4,P4"),
                ("C3", "P4,P4,P4"),
                ("P2", "C6,C6"),
                ("P3", "C6,C6,C6"),
                ("C3", "C6,C6,C6"),
            ],
        ),
        (
            TwinDim2Equality,
            &[
                ("P3", "K2,K3,K2"),
                ("P2", "P4,K2"),
                ("P2", "C4,C4"),
                ("P3", "K4,C4,K2"),
                ("P2", "P4,P4"),
                ("P2", "C4,P5"),
                ("P3", "S3,S4,C5"),
            ],
        ),
        (
            Diam2Equality,
            &[
                ("P2", "C5,C5"),
                ("P2", "K4,K4"),
                ("P3", "F5,F5,F5"),
                ("P2", "S4,S5"),
                ("P2", "K3,S4"),
                ("P3", "W5,W6,F4"),
                ("P2", "Petersen,C5"),
                ("P2", "P4,P4"),
            ],
        ),
        (
            K1HUpperBound,
            &[("P2", "P6,P6"), ("P2", "C7,C7"), ("P2", "K2,K2"), ("P2", "P4,C5"), ("P3", "C5,S4,P5")],
        ),
        (
            Diam6Equality,
            &[("P2", "C7,C7"), ("P2", "P7,P7"), ("P2", "C8,P7"), ("P2", "P6,P6")],
        ),
        (
            CoronaPathsClosed,
            &[("P2", "P6,P7"), ("P2", "P6,P6"), ("P2", "P7,P7"), ("P3", "P6,P7,P8")],
        ),
        (CoronaCyclesClosed, &[("P2", "C7,C8"), ("P2", "C7,C7"), ("P2", "C7,P7")]),
    ];
    for (t, list) in coronas {
        out.extend(list.iter().map(|(b, hs)| (t, corona_item(b, hs))));
    }
    // family length mismatch is reported, not rejected
    out.push((
        CoronaCyclesClosed,
        CorpusItem::Corona {
            base: "P2".into(),
            attachments: vec!["C7".into()],
            k: Some(1),
        },
    ));
    out
}

impl Harness {
    pub fn run_item(&self, theorem: TheoremId, item: &CorpusItem) -> Vec<TheoremReport> {
        let parse = |s: &str| s.parse::<GraphExpr>();
        match item {
            CorpusItem::Order(n) => vec![self.fan_wheel(theorem, *n)],
            CorpusItem::Graph(g) => match parse(g) {
                Ok(e) => vec![self.graph_claim(theorem, &e)],
                Err(e) => vec![TheoremReport::new(theorem, g.clone(), None).inapplicable(e.to_string())],
            },
            CorpusItem::Corona { base, attachments, k } => {
                let parsed = parse(base).and_then(|b| {
                    let hs = attachments.iter().map(|h| parse(h)).collect::<Result<Vec<_>>>()?;
                    Ok((b, hs))
                });
                match parsed {
                    Ok((b, hs)) => self.corona_claim(theorem, &b, &hs, *k),
                    Err(e) => vec![TheoremReport::new(theorem, base.clone(), *k).inapplicable(e.to_string())],
                }
            }
        }
    }

    /// Runs the corpus (optionally one theorem only), one task per item on
    /// `threads` workers. Report order follows the corpus.
    pub fn verify(&self, only: Option<TheoremId>, threads: usize) -> VerifySummary {
        let items: Vec<_> = corpus()
            .into_iter()
            .filter(|(t, _)| only.is_none_or(|o| o == *t))
            .collect();
        let inner = Harness::new(SolverConfig {
            threads: 1,
            ..self.cfg
        });
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .expect("thread pool");
        let reports: Vec<TheoremReport> = pool.install(|| {
            items
                .par_iter()
                .map(|(t, item)| inner.run_item(*t, item))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        });
        VerifySummary::from_reports(reports)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremTally {
    pub confirmed: usize,
    pub bound_held: usize,
    pub inapplicable: usize,
    pub violated: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub schema_version: u32,
    pub per_theorem: BTreeMap<String, TheoremTally>,
    pub violations: usize,
    pub skipped: usize,
    pub reports: Vec<TheoremReport>,
}

impl VerifySummary {
    pub fn from_reports(reports: Vec<TheoremReport>) -> Self {
        let mut per_theorem: BTreeMap<String, TheoremTally> = BTreeMap::new();
        for r in &reports {
            let t = per_theorem.entry(r.theorem.name().to_string()).or_default();
            match r.verdict {
                Verdict::Confirmed => t.confirmed += 1,
                Verdict::BoundHeld => t.bound_held += 1,
                Verdict::Inapplicable => t.inapplicable += 1,
                Verdict::Violated => t.violated += 1,
                Verdict::Skipped => t.skipped += 1,
            }
        }
        let violations = per_theorem.values().map(|t| t.violated).sum();
        let skipped = per_theorem.values().map(|t| t.skipped).sum();
        VerifySummary {
            schema_version: REPORT_SCHEMA_VERSION,
            per_theorem,
            violations,
            skipped,
            reports,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(TheoremReport::CSV_HEADER);
        s.push('\n');
        for r in &self.reports {
            writeln!(s, "{}", r.csv_row()).expect("write to String");
        }
        s
    }
}

/// `C(ℋ)` of an expression family, for callers that want the corona `k'`
/// without building the product.
pub fn family_c(attachments: &[GraphExpr]) -> Result<usize> {
    let hs = attachments.iter().map(GraphExpr::build).collect::<Result<Vec<_>>>()?;
    c_of_family(&hs)
}
