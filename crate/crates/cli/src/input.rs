use std::fmt;
use std::str::FromStr;

use kmetric::expr::{parse_list, GraphExpr};
use kmetric::{Error, Graph, Result};

/// Inclusive integer range written `a..b`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRange {
    pub lo: usize,
    pub hi: usize,
}

impl KRange {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad integer {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(KRange { lo, hi })
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// A graph from the command line: an expression or `@path` edge list.
pub struct GraphInput {
    pub name: String,
    pub graph: Graph,
}

pub fn load_graph(arg: &str) -> Result<GraphInput> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("{path}: {e}"),
        })?;
        return Ok(GraphInput {
            name: arg.to_string(),
            graph: Graph::parse_edge_list(&text)?,
        });
    }
    let expr: GraphExpr = arg.parse()?;
    Ok(GraphInput {
        name: expr.to_string(),
        graph: expr.build()?,
    })
}

pub fn parse_family(s: &str) -> Result<Vec<GraphExpr>> {
    parse_list(s)
}
