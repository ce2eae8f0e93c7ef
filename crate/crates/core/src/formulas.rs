//! Closed forms and bounds for k-metric dimensions of fans, wheels, joins
//! and corona products.
//!
//! Each corona result is gated by an applicability check that mirrors its
//! hypotheses exactly. Outside them the functions return
//! [`Applicability::Inapplicable`] with the failed condition, never a value.
//! Bounds that are defined through exact dimensions of the attached graphs
//! call the solver.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::{cone, is_cycle_graph, is_path_graph, CoronaSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric_sets::{c_of_family, c_of_h, dimensional_k};
use crate::solver::{self, f_of_h_k, SolverConfig};

/// Every quantitative result covered by the verification harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    TwinsIffTwoDimensional,
    FullDimensionCharacterization,
    CoronaDimensionalValue,
    Girth5Regular2Delta,
    JoinDimensionalK,
    SandwichBounds,
    UpperBoundEquality,
    TwinDim2Equality,
    Diam2Equality,
    K1HUpperBound,
    Diam6Equality,
    CoronaPathsClosed,
    CoronaCyclesClosed,
    FanDim1,
    FanDim2,
    FanDim3,
    WheelDim1,
    WheelDim2,
    WheelDim3,
    WheelDim4,
}

impl TheoremId {
    pub const ALL: [TheoremId; 20] = [
        TheoremId::TwinsIffTwoDimensional,
        TheoremId::FullDimensionCharacterization,
        TheoremId::CoronaDimensionalValue,
        TheoremId::Girth5Regular2Delta,
        TheoremId::JoinDimensionalK,
        TheoremId::SandwichBounds,
        TheoremId::UpperBoundEquality,
        TheoremId::TwinDim2Equality,
        TheoremId::Diam2Equality,
        TheoremId::K1HUpperBound,
        TheoremId::Diam6Equality,
        TheoremId::CoronaPathsClosed,
        TheoremId::CoronaCyclesClosed,
        TheoremId::FanDim1,
        TheoremId::FanDim2,
        TheoremId::FanDim3,
        TheoremId::WheelDim1,
        TheoremId::WheelDim2,
        TheoremId::WheelDim3,
        TheoremId::WheelDim4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::TwinsIffTwoDimensional => "TwinsIffTwoDimensional",
            TheoremId::FullDimensionCharacterization => "FullDimensionCharacterization",
            TheoremId::CoronaDimensionalValue => "CoronaDimensionalValue",
            TheoremId::Girth5Regular2Delta => "Girth5Regular2Delta",
            TheoremId::JoinDimensionalK => "JoinDimensionalK",
            TheoremId::SandwichBounds => "SandwichBounds",
            TheoremId::UpperBoundEquality => "UpperBoundEquality",
            TheoremId::TwinDim2Equality => "TwinDim2Equality",
            TheoremId::Diam2Equality => "Diam2Equality",
            TheoremId::K1HUpperBound => "K1HUpperBound",
            TheoremId::Diam6Equality => "Diam6Equality",
            TheoremId::CoronaPathsClosed => "CoronaPathsClosed",
            TheoremId::CoronaCyclesClosed => "CoronaCyclesClosed",
            TheoremId::FanDim1 => "FanDim1",
            TheoremId::FanDim2 => "FanDim2",
            TheoremId::FanDim3 => "FanDim3",
            TheoremId::WheelDim1 => "WheelDim1",
            TheoremId::WheelDim2 => "WheelDim2",
            TheoremId::WheelDim3 => "WheelDim3",
            TheoremId::WheelDim4 => "WheelDim4",
        }
    }

    /// `(is_wheel, k)` for the fan/wheel closed-form theorems.
    pub fn fan_wheel(self) -> Option<(bool, usize)> {
        Some(match self {
            TheoremId::FanDim1 => (false, 1),
            TheoremId::FanDim2 => (false, 2),
            TheoremId::FanDim3 => (false, 3),
            TheoremId::WheelDim1 => (true, 1),
            TheoremId::WheelDim2 => (true, 2),
            TheoremId::WheelDim3 => (true, 3),
            TheoremId::WheelDim4 => (true, 4),
            _ => return None,
        })
    }

    /// Theorems stated about a corona `G ⊙ ℋ`.
    pub fn is_corona(self) -> bool {
        matches!(
            self,
            TheoremId::CoronaDimensionalValue
                | TheoremId::Girth5Regular2Delta
                | TheoremId::SandwichBounds
                | TheoremId::UpperBoundEquality
                | TheoremId::TwinDim2Equality
                | TheoremId::Diam2Equality
                | TheoremId::K1HUpperBound
                | TheoremId::Diam6Equality
                | TheoremId::CoronaPathsClosed
                | TheoremId::CoronaCyclesClosed
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("unknown theorem {s:?}"),
            })
    }
}

/// A prediction together with whether the hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicability<T> {
    Applies(T),
    Inapplicable(String),
}

impl<T> Applicability<T> {
    pub fn applies(&self) -> bool {
        matches!(self, Applicability::Applies(_))
    }

    pub fn value(self) -> Option<T> {
        match self {
            Applicability::Applies(v) => Some(v),
            Applicability::Inapplicable(_) => None,
        }
    }
}

macro_rules! require {
    ($cond:expr, $($why:tt)+) => {
        if !$cond {
            return Ok(Applicability::Inapplicable(format!($($why)+)));
        }
    };
}

// ---------------------------------------------------------------------------
// fans and wheels

/// `dim_k(F_{1,n})` for `k ∈ {1, 2, 3}`.
pub fn fan_dim(n: usize, k: usize) -> Result<usize> {
    let out = Error::OutOfRange { n, k };
    match (k, n) {
        (_, 0) => Err(out),
        (1, 1) => Ok(1),
        (1, 2 | 3) => Ok(2),
        (1, 6) => Ok(3),
        (1, _) => Ok((2 * n + 2) / 5),
        (2, 2) => Ok(3),
        (2, 3..=5) => Ok(4),
        (2, 6..) => Ok((n + 1).div_ceil(2)),
        (3, 4 | 5) => Ok(5),
        (3, 6..) => Ok(n - (n - 4) / 5),
        _ => Err(out),
    }
}

/// `dim_k(W_{1,n})` for `k ∈ {1, 2, 3, 4}`.
pub fn wheel_dim(n: usize, k: usize) -> Result<usize> {
    let out = Error::OutOfRange { n, k };
    match (k, n) {
        (_, 0..=2) => Err(out),
        (1, 3 | 6) => Ok(3),
        (1, 4 | 5) => Ok(2),
        (1, _) => Ok((2 * n + 2) / 5),
        (2, 3..=6) => Ok(4),
        (2, _) => Ok(n.div_ceil(2)),
        (3, 5 | 6) => Ok(5),
        (3, 7..) => Ok(n - n / 5),
        (4, 5 | 6) => Ok(6),
        (4, 7..) => Ok(n),
        _ => Err(out),
    }
}

/// `k'` of `K_1 + h`: `min{C(h), n' - Δ(h) + 1}`.
pub fn join_dimensional_k(h: &Graph) -> Result<usize> {
    let c = c_of_h(h)?;
    Ok(c.min(h.order() - h.max_degree() + 1))
}

// ---------------------------------------------------------------------------
// corona hypotheses

fn base_ok(spec: &CoronaSpec) -> Option<String> {
    let g = spec.base();
    if g.order() < 2 {
        return Some(format!("base has order {} < 2", g.order()));
    }
    if !g.is_connected() {
        return Some("base is disconnected".into());
    }
    None
}

fn all_nontrivial(spec: &CoronaSpec) -> Option<String> {
    spec.attachments()
        .iter()
        .position(|h| h.order() < 2)
        .map(|i| format!("H_{i} is trivial"))
}

fn all_connected_nontrivial(spec: &CoronaSpec) -> Option<String> {
    all_nontrivial(spec).or_else(|| {
        spec.attachments()
            .iter()
            .position(|h| !h.is_connected())
            .map(|i| format!("H_{i} is disconnected"))
    })
}

fn corona_c(spec: &CoronaSpec) -> Result<usize> {
    c_of_family(spec.attachments())
}

/// Dimensional value of `G ⊙ ℋ`: `C(ℋ)`.
pub fn corona_dimensional_value(spec: &CoronaSpec) -> Applicability<usize> {
    if let Some(why) = base_ok(spec).or_else(|| all_nontrivial(spec)) {
        return Applicability::Inapplicable(why);
    }
    Applicability::Applies(corona_c(spec).expect("non-trivial family"))
}

/// `2δ` when every attachment is δ-regular with girth at least 5.
pub fn girth5_regular_value(spec: &CoronaSpec) -> Applicability<usize> {
    if let Some(why) = base_ok(spec).or_else(|| all_nontrivial(spec)) {
        return Applicability::Inapplicable(why);
    }
    let hs = spec.attachments();
    let delta = hs[0].min_degree();
    for (i, h) in hs.iter().enumerate() {
        if !h.is_regular() || h.min_degree() != delta {
            return Applicability::Inapplicable(format!("H_{i} is not {delta}-regular"));
        }
        if h.girth().is_some_and(|g| g < 5) {
            return Applicability::Inapplicable(format!("H_{i} has girth < 5"));
        }
    }
    Applicability::Applies(2 * delta)
}

fn k_within_corona(spec: &CoronaSpec, k: usize) -> Result<Option<String>> {
    let c = corona_c(spec)?;
    Ok((k == 0 || k > c).then(|| format!("k = {k} outside 1..=C(H) = {c}")))
}

/// `(Σ dim_k(H_i), Σ |V_i|)`.
pub fn sandwich_bounds(spec: &CoronaSpec, k: usize, cfg: &SolverConfig) -> Result<Applicability<(usize, usize)>> {
    if let Some(why) = base_ok(spec).or_else(|| all_connected_nontrivial(spec)) {
        return Ok(Applicability::Inapplicable(why));
    }
    if let Some(why) = k_within_corona(spec, k)? {
        return Ok(Applicability::Inapplicable(why));
    }
    let mut lower = 0;
    for h in spec.attachments() {
        lower += solver::basis(h, k, cfg)?.dim;
    }
    Ok(Applicability::Applies((lower, spec.attached_order())))
}

/// `Σ |V_i|` when the corona is k-metric dimensional (`k = C(ℋ)`) and every
/// attachment has `dim_k(H_i) = |V_i|`.
pub fn upper_bound_equality(spec: &CoronaSpec, k: usize, cfg: &SolverConfig) -> Result<Applicability<usize>> {
    if let Some(why) = base_ok(spec).or_else(|| all_connected_nontrivial(spec)) {
        return Ok(Applicability::Inapplicable(why));
    }
    let c = corona_c(spec)?;
    require!(k == c, "k = {k} differs from C(H) = {c}");
    for (i, h) in spec.attachments().iter().enumerate() {
        let d = solver::basis(h, k, cfg)?.dim;
        require!(d == h.order(), "dim_{k}(H_{i}) = {d} < |V_{i}| = {}", h.order());
    }
    Ok(Applicability::Applies(spec.attached_order()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwinPrediction {
    /// Every attachment is made of twins: `dim_2 = Σ |V_i|`.
    EqualsTotal { total: usize },
    /// Some attachment has a non-twin vertex: `dim_2 < Σ |V_i|`.
    BelowTotal { total: usize },
}

pub fn twin_dim2_equality(spec: &CoronaSpec) -> Applicability<TwinPrediction> {
    if let Some(why) = base_ok(spec).or_else(|| all_connected_nontrivial(spec)) {
        return Applicability::Inapplicable(why);
    }
    let total = spec.attached_order();
    if spec.attachments().iter().all(Graph::is_all_twins) {
        Applicability::Applies(TwinPrediction::EqualsTotal { total })
    } else {
        Applicability::Applies(TwinPrediction::BelowTotal { total })
    }
}

/// `Σ dim_k(H_i)` when every attachment has diameter at most 2.
pub fn diam2_equality(spec: &CoronaSpec, k: usize, cfg: &SolverConfig) -> Result<Applicability<usize>> {
    if let Some(why) = base_ok(spec).or_else(|| all_nontrivial(spec)) {
        return Ok(Applicability::Inapplicable(why));
    }
    let mut kmin = usize::MAX;
    for (i, h) in spec.attachments().iter().enumerate() {
        match h.diameter() {
            Ok(d) => require!(d <= 2, "D(H_{i}) = {d} > 2"),
            Err(_) => require!(false, "H_{i} is disconnected"),
        }
        kmin = kmin.min(dimensional_k(h)?);
    }
    require!((1..=kmin).contains(&k), "k = {k} outside 1..={kmin}");
    let mut sum = 0;
    for h in spec.attachments() {
        sum += solver::basis(h, k, cfg)?.dim;
    }
    Ok(Applicability::Applies(sum))
}

/// `Σ (dim_k(K_1 + H_i) - f(H_i, k))`.
pub fn k1h_upper_bound(spec: &CoronaSpec, k: usize, cfg: &SolverConfig) -> Result<Applicability<usize>> {
    if let Some(why) = base_ok(spec).or_else(|| all_nontrivial(spec)) {
        return Ok(Applicability::Inapplicable(why));
    }
    let mut kmin = usize::MAX;
    for h in spec.attachments() {
        kmin = kmin.min(join_dimensional_k(h)?);
    }
    require!((1..=kmin).contains(&k), "k = {k} outside 1..={kmin}");
    let mut sum = 0;
    for h in spec.attachments() {
        let d = solver::basis(&cone(h)?, k, cfg)?.dim;
        sum += d - usize::from(f_of_h_k(h, k, cfg)?);
    }
    Ok(Applicability::Applies(sum))
}

/// `Σ dim_k(K_1 + H_i)` when every attachment has diameter at least 6 or is
/// a cycle of order at least 7. The same value holds for the complemented
/// family and for `K_1 ◇ ℋ`.
pub fn diam6_equality(spec: &CoronaSpec, k: usize, cfg: &SolverConfig) -> Result<Applicability<usize>> {
    if let Some(why) = base_ok(spec).or_else(|| all_connected_nontrivial(spec)) {
        return Ok(Applicability::Inapplicable(why));
    }
    for (i, h) in spec.attachments().iter().enumerate() {
        let long_cycle = is_cycle_graph(h) && h.order() >= 7;
        let wide = h.diameter()? >= 6;
        require!(long_cycle || wide, "H_{i} has diameter < 6 and is not a cycle of order >= 7");
    }
    if let Some(why) = k_within_corona(spec, k)? {
        return Ok(Applicability::Inapplicable(why));
    }
    let mut sum = 0;
    for h in spec.attachments() {
        sum += solver::basis(&cone(h)?, k, cfg)?.dim;
    }
    Ok(Applicability::Applies(sum))
}

/// Closed form for coronas whose attachments are all paths or all cycles.
/// The value also holds for the complemented family and for `K_1 ◇ ℋ`.
pub fn corona_paths_cycles_closed(spec: &CoronaSpec, k: usize) -> Applicability<usize> {
    if let Some(why) = base_ok(spec) {
        return Applicability::Inapplicable(why);
    }
    let hs = spec.attachments();
    let orders = hs.iter().map(Graph::order);
    let min_order = orders.clone().min().unwrap_or(0);
    if hs.iter().all(is_path_graph) {
        let need = if k == 1 { 7 } else { 6 };
        if !(1..=3).contains(&k) {
            return Applicability::Inapplicable(format!("k = {k} outside 1..=3 for paths"));
        }
        if min_order < need {
            return Applicability::Inapplicable(format!("path of order {min_order} < {need}"));
        }
        let per: fn(usize) -> usize = match k {
            1 => |n| (2 * n + 2) / 5,
            2 => |n| (n + 1).div_ceil(2),
            _ => |n| n - (n - 4) / 5,
        };
        Applicability::Applies(orders.map(per).sum())
    } else if hs.iter().all(is_cycle_graph) {
        if !(1..=4).contains(&k) {
            return Applicability::Inapplicable(format!("k = {k} outside 1..=4 for cycles"));
        }
        if min_order < 7 {
            return Applicability::Inapplicable(format!("cycle of order {min_order} < 7"));
        }
        let per: fn(usize) -> usize = match k {
            1 => |n| (2 * n + 2) / 5,
            2 => |n| n.div_ceil(2),
            3 => |n| n - n / 5,
            _ => |n| n,
        };
        Applicability::Applies(orders.map(per).sum())
    } else {
        Applicability::Inapplicable("family is not uniformly paths or cycles".into())
    }
}
