//! Edge-list text format:
//!
//! ```text
//! # optional comments
//! p <n> <m>
//! e <u> <v>
//! ```
//!
//! Ids are 0-based. Serialization writes `p` then edges in lexicographic order.

use std::fmt::Write as _;

use super::{Graph, GraphError};

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap();
        let nums: Vec<usize> = tok
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad integer `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        match (kind, nums.as_slice()) {
            ("p", &[n, m]) => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate `p` line"));
                }
                header = Some((n, m));
                g = Graph::empty(n);
            }
            ("e", &[u, v]) => {
                if header.is_none() {
                    return Err(parse_err(lineno, "edge before `p` line"));
                }
                g.add_edge(u, v).map_err(|e| parse_err(lineno, e.to_string()))?;
            }
            _ => return Err(parse_err(lineno, format!("unrecognized line `{line}`"))),
        }
    }
    let (_, m) = header.ok_or_else(|| parse_err(0, "missing `p` line"))?;
    if g.m() != m {
        return Err(parse_err(0, format!("header declares {m} edges, found {}", g.m())));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# a path\np 3 2\ne 0 1 # first\n\ne 2 1\n").unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(write_graph(&g), "p 3 2\ne 0 1\ne 1 2\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_graph("e 0 1\n").is_err());
        assert!(parse_graph("p 2 1\n").is_err());
        assert!(parse_graph("p 2 2\ne 0 1\ne 1 0\n").is_err());
        assert!(parse_graph("p 2 1\ne 0 2\n").is_err());
        assert!(parse_graph("p 2 1\ne 0 x\n").is_err());
        assert!(parse_graph("").is_err());
    }
}
