//! One-line graph expressions.
//!
//! ```text
//! expr   := family | corona | join | comp
//! family := ("P" | "C" | "K" | "S" | "F" | "W") integer | "Petersen"
//! corona := "corona(" expr ";" expr ("," expr)* ")"
//! join   := "join(" expr ";" expr ")"
//! comp   := "comp(" expr ")"
//! ```
//!
//! `Pn` path, `Cn` cycle, `Kn` complete, `Sn` star on `n` vertices, `Fn` fan
//! `K_1 + P_n`, `Wn` wheel `K_1 + C_n`. A corona lists one attachment per
//! base vertex. Whitespace is ignored everywhere.

use std::fmt;
use std::str::FromStr;

use crate::constructions::{
    complement, complete, corona, cycle, fan, join, path, petersen, star, wheel, CoronaLayout,
    CoronaSpec,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Fan,
    Wheel,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::Path => 'P',
            Family::Cycle => 'C',
            Family::Complete => 'K',
            Family::Star => 'S',
            Family::Fan => 'F',
            Family::Wheel => 'W',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'P' => Family::Path,
            'C' => Family::Cycle,
            'K' => Family::Complete,
            'S' => Family::Star,
            'F' => Family::Fan,
            'W' => Family::Wheel,
            _ => return None,
        })
    }

    pub fn build(self, n: usize) -> Result<Graph> {
        match self {
            Family::Path => path(n),
            Family::Cycle => cycle(n),
            Family::Complete => complete(n),
            Family::Star => star(n),
            Family::Fan => fan(n),
            Family::Wheel => wheel(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphExpr {
    Family(Family, usize),
    Petersen,
    Corona(Box<GraphExpr>, Vec<GraphExpr>),
    Join(Box<GraphExpr>, Box<GraphExpr>),
    Comp(Box<GraphExpr>),
}

impl GraphExpr {
    pub fn build(&self) -> Result<Graph> {
        Ok(match self {
            GraphExpr::Family(f, n) => f.build(*n)?,
            GraphExpr::Petersen => petersen(),
            GraphExpr::Corona(..) => corona(&self.corona_spec()?.expect("corona spec")).0,
            GraphExpr::Join(a, b) => join(&a.build()?, &b.build()?)?.0,
            GraphExpr::Comp(a) => complement(&a.build()?),
        })
    }

    /// The corona spec when the top-level operator is a corona.
    pub fn corona_spec(&self) -> Result<Option<CoronaSpec>> {
        match self {
            GraphExpr::Corona(base, attach) => {
                let hs = attach.iter().map(GraphExpr::build).collect::<Result<Vec<_>>>()?;
                Ok(Some(CoronaSpec::new(base.build()?, hs)?))
            }
            _ => Ok(None),
        }
    }

    pub fn build_corona(&self) -> Result<Option<(Graph, CoronaLayout, CoronaSpec)>> {
        Ok(self.corona_spec()?.map(|s| {
            let (g, l) = corona(&s);
            (g, l, s)
        }))
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Family(fam, n) => write!(f, "{}{n}", fam.letter()),
            GraphExpr::Petersen => f.write_str("Petersen"),
            GraphExpr::Corona(base, hs) => {
                write!(f, "corona({base};")?;
                for (i, h) in hs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{h}")?;
                }
                f.write_str(")")
            }
            GraphExpr::Join(a, b) => write!(f, "join({a};{b})"),
            GraphExpr::Comp(a) => write!(f, "comp({a})"),
        }
    }
}

impl FromStr for GraphExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            src: &compact,
            pos: 0,
        };
        let e = p.expr()?;
        if p.pos != compact.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

/// Parses a comma-separated list of expressions (top-level commas only).
pub fn parse_list(s: &str) -> Result<Vec<GraphExpr>> {
    let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src: &compact,
        pos: 0,
    };
    let mut out = vec![p.expr()?];
    while p.eat(',') {
        out.push(p.expr()?);
    }
    if p.pos != compact.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let text: String = self.src.iter().collect();
        Error::Parse {
            line: 1,
            msg: format!("{msg} at offset {} in {text:?}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        if self.src.len() >= self.pos + n
            && self.src[self.pos..self.pos + n].iter().copied().eq(kw.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an order"));
        }
        let digits: String = self.src[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("order too large"))
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        if self.keyword("corona(") {
            let base = self.expr()?;
            self.expect(';')?;
            let mut hs = vec![self.expr()?];
            while self.eat(',') {
                hs.push(self.expr()?);
            }
            self.expect(')')?;
            return Ok(GraphExpr::Corona(Box::new(base), hs));
        }
        if self.keyword("join(") {
            let a = self.expr()?;
            self.expect(';')?;
            let b = self.expr()?;
            self.expect(')')?;
            return Ok(GraphExpr::Join(Box::new(a), Box::new(b)));
        }
        if self.keyword("comp(") {
            let a = self.expr()?;
            self.expect(')')?;
            return Ok(GraphExpr::Comp(Box::new(a)));
        }
        if self.keyword("Petersen") {
            return Ok(GraphExpr::Petersen);
        }
        match self.peek().and_then(Family::from_letter) {
            Some(f) => {
                self.pos += 1;
                Ok(GraphExpr::Family(f, self.number()?))
            }
            None => Err(self.error("expected a graph")),
        }
    }
}
