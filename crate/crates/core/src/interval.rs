//! Interval representations with open or closed ends and exact rational endpoints.
//!
//! Text format, one line per vertex (any order, ids must be `0..n`):
//!
//! ```text
//! 0 [0,1]
//! 1 (1,2)
//! 2 [1/2,3/2)
//! ```

use std::fmt::{self, Write as _};

use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval of vertex {vertex} is malformed: {reason}")]
    Malformed { vertex: usize, reason: String },
    #[error("interval of vertex {0} does not have unit length")]
    NotUnit(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: Rational64,
    pub right: Rational64,
    pub left_closed: bool,
    pub right_closed: bool,
}

impl Interval {
    pub fn closed(left: Rational64, right: Rational64) -> Self {
        Interval {
            left,
            right,
            left_closed: true,
            right_closed: true,
        }
    }

    pub fn new(left: Rational64, right: Rational64, left_closed: bool, right_closed: bool) -> Self {
        Interval {
            left,
            right,
            left_closed,
            right_closed,
        }
    }

    /// Unit interval starting at `left`.
    pub fn unit(left: Rational64, left_closed: bool, right_closed: bool) -> Self {
        Interval::new(left, left + Rational64::one(), left_closed, right_closed)
    }

    pub fn is_valid(&self) -> bool {
        self.left < self.right || (self.left == self.right && self.left_closed && self.right_closed)
    }

    pub fn is_unit(&self) -> bool {
        self.right - self.left == Rational64::one()
    }

    /// Non-empty intersection; a shared endpoint counts only if both sides include it.
    pub fn intersects(&self, other: &Interval) -> bool {
        let (lo, lo_closed) = match self.left.cmp(&other.left) {
            std::cmp::Ordering::Greater => (self.left, self.left_closed),
            std::cmp::Ordering::Less => (other.left, other.left_closed),
            std::cmp::Ordering::Equal => (self.left, self.left_closed && other.left_closed),
        };
        let (hi, hi_closed) = match self.right.cmp(&other.right) {
            std::cmp::Ordering::Less => (self.right, self.right_closed),
            std::cmp::Ordering::Greater => (other.right, other.right_closed),
            std::cmp::Ordering::Equal => (self.right, self.right_closed && other.right_closed),
        };
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.left_closed { '[' } else { '(' },
            fmt_rational(self.left),
            fmt_rational(self.right),
            if self.right_closed { ']' } else { ')' },
        )
    }
}

fn fmt_rational(r: Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        return (q != 0).then(|| Rational64::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return None;
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: i64 = match int {
            "" | "-" | "+" => 0,
            _ => int.parse().ok()?,
        };
        let denom = 10i64.checked_pow(frac.len() as u32)?;
        let frac_part: i64 = frac.parse().ok()?;
        let magnitude = Rational64::from_integer(int_part.abs()) + Rational64::new(frac_part, denom);
        return Some(if negative { -magnitude } else { magnitude });
    }
    s.parse::<i64>().ok().map(Rational64::from_integer)
}

/// One interval per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalRep {
    pub intervals: Vec<Interval>,
}

impl IntervalRep {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, IntervalError> {
        let rep = IntervalRep { intervals };
        rep.validate()?;
        Ok(rep)
    }

    pub fn validate(&self) -> Result<(), IntervalError> {
        for (v, iv) in self.intervals.iter().enumerate() {
            if !iv.is_valid() {
                return Err(IntervalError::Malformed {
                    vertex: v,
                    reason: format!("{iv} is empty"),
                });
            }
        }
        Ok(())
    }

    /// Checks that every interval has length exactly one.
    pub fn validate_unit(&self) -> Result<(), IntervalError> {
        self.validate()?;
        match self.intervals.iter().position(|iv| !iv.is_unit()) {
            Some(v) => Err(IntervalError::NotUnit(v)),
            None => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Restriction to `vertices`; `vertices[i]` becomes `i`.
    pub fn restrict(&self, vertices: &[usize]) -> IntervalRep {
        IntervalRep {
            intervals: vertices.iter().map(|&v| self.intervals[v]).collect(),
        }
    }
}

/// Intersection graph of `rep`.
pub fn intersection_graph(rep: &IntervalRep) -> Result<Graph, IntervalError> {
    rep.validate()?;
    let n = rep.len();
    // sweep by left endpoint so we only compare intervals that can overlap
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| rep.intervals[a].left.cmp(&rep.intervals[b].left));
    let mut g = Graph::empty(n);
    for (i, &a) in order.iter().enumerate() {
        let ia = &rep.intervals[a];
        for &b in &order[i + 1..] {
            let ib = &rep.intervals[b];
            if ib.left > ia.right {
                break;
            }
            if ia.intersects(ib) {
                g.add_edge(a, b).expect("distinct vertices");
            }
        }
    }
    Ok(g)
}

pub fn parse_intervals(text: &str) -> Result<IntervalRep, IntervalError> {
    let err = |line: usize, msg: String| IntervalError::Parse { line, msg };
    let mut entries: Vec<(usize, Interval, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (id, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| err(lineno, format!("expected `<id> <interval>`, got `{line}`")))?;
        let id: usize = id
            .parse()
            .map_err(|_| err(lineno, format!("bad vertex id `{id}`")))?;
        let body: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = body.as_bytes();
        if bytes.len() < 5 {
            return Err(err(lineno, format!("bad interval `{body}`")));
        }
        let left_closed = match bytes[0] {
            b'[' => true,
            b'(' => false,
            _ => return Err(err(lineno, format!("bad left bracket in `{body}`"))),
        };
        let right_closed = match bytes[bytes.len() - 1] {
            b']' => true,
            b')' => false,
            _ => return Err(err(lineno, format!("bad right bracket in `{body}`"))),
        };
        let inner = &body[1..body.len() - 1];
        let (l, r) = inner
            .split_once(',')
            .ok_or_else(|| err(lineno, format!("missing comma in `{body}`")))?;
        let left = parse_rational(l).ok_or_else(|| err(lineno, format!("bad endpoint `{l}`")))?;
        let right = parse_rational(r).ok_or_else(|| err(lineno, format!("bad endpoint `{r}`")))?;
        entries.push((id, Interval::new(left, right, left_closed, right_closed), lineno));
    }
    let n = entries.len();
    let mut slots: Vec<Option<Interval>> = vec![None; n];
    for (id, iv, lineno) in entries {
        if id >= n {
            return Err(err(lineno, format!("vertex id {id} out of range 0..{n}")));
        }
        if slots[id].replace(iv).is_some() {
            return Err(err(lineno, format!("duplicate vertex id {id}")));
        }
    }
    IntervalRep::new(slots.into_iter().map(|s| s.expect("ids are a permutation")).collect())
}

pub fn write_intervals(rep: &IntervalRep) -> String {
    let mut out = String::new();
    for (v, iv) in rep.intervals.iter().enumerate() {
        writeln!(out, "{v} {iv}").unwrap();
    }
    out
}

/// Convenience for tests and generators: `p/q` as a rational.
pub fn rat(p: i64, q: i64) -> Rational64 {
    Rational64::new(p, q)
}

pub fn zero() -> Rational64 {
    Rational64::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claw_rep() -> IntervalRep {
        parse_intervals("0 [0,1]\n1 (1,2)\n2 [2,3]\n3 [1,2]\n").unwrap()
    }

    #[test]
    fn mixed_claw() {
        let rep = claw_rep();
        rep.validate_unit().unwrap();
        let g = intersection_graph(&rep).unwrap();
        assert_eq!(g, Graph::from_edges(4, [(0, 3), (1, 3), (2, 3)]).unwrap());
    }

    #[test]
    fn touching_endpoints() {
        let g = intersection_graph(&parse_intervals("0 [0,1]\n1 [0,1]\n").unwrap()).unwrap();
        assert_eq!(g.m(), 1);
        let g = intersection_graph(&parse_intervals("0 [0,1]\n1 (1,2)\n").unwrap()).unwrap();
        assert_eq!(g.m(), 0);
        let g = intersection_graph(&parse_intervals("0 [0,1)\n1 [1,2]\n").unwrap()).unwrap();
        assert_eq!(g.m(), 0);
        let g = intersection_graph(&parse_intervals("0 [0,1]\n1 [1,2]\n").unwrap()).unwrap();
        assert_eq!(g.m(), 1);
        // equal open left ends still overlap in the interior
        let g = intersection_graph(&parse_intervals("0 (0,1)\n1 (0,1]\n").unwrap()).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn degenerate_intervals() {
        assert!(IntervalRep::new(vec![Interval::new(rat(1, 1), rat(1, 1), true, false)]).is_err());
        assert!(IntervalRep::new(vec![Interval::closed(rat(1, 1), rat(1, 1))]).is_ok());
        assert!(IntervalRep::new(vec![Interval::closed(rat(2, 1), rat(1, 1))]).is_err());
        let rep = parse_intervals("0 [0,3/2]\n").unwrap();
        assert_eq!(rep.validate_unit(), Err(IntervalError::NotUnit(0)));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3"), Some(rat(3, 1)));
        assert_eq!(parse_rational("-1.25"), Some(rat(-5, 4)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1."), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn format_round_trip() {
        let text = "1 (1/2,3/2]\n0 [0.5,1.5)\n";
        let rep = parse_intervals(text).unwrap();
        let out = write_intervals(&rep);
        assert_eq!(out, "0 [1/2,3/2)\n1 (1/2,3/2]\n");
        assert_eq!(write_intervals(&parse_intervals(&out).unwrap()), out);
        assert!(parse_intervals("0 [0,1]\n0 [1,2]\n").is_err());
        assert!(parse_intervals("1 [0,1]\n").is_err());
        assert!(parse_intervals("0 {0,1]\n").is_err());
    }
}
