//! S-expression text form: `(intro l v)`, `(union e e)`, `(eta i j e)`,
//! `(rho i j e)`. Serialized on one line; parsing and writing are iterative
//! because construction outputs nest deeply.

use std::fmt::Write as _;

use super::{CwError, CwExpression, CwNode, NodeId};

pub fn write_expression(expr: &CwExpression) -> String {
    enum Item {
        Node(NodeId),
        Text(&'static str),
    }
    let mut out = String::new();
    let Some(root) = expr.root() else {
        return out;
    };
    let mut stack = vec![Item::Node(root)];
    while let Some(item) = stack.pop() {
        let id = match item {
            Item::Text(s) => {
                out.push_str(s);
                continue;
            }
            Item::Node(id) => id,
        };
        match expr.node(id) {
            CwNode::Intro { label, vertex } => write!(out, "(intro {label} {vertex})").unwrap(),
            CwNode::Union(a, b) => {
                out.push_str("(union ");
                stack.extend([Item::Text(")"), Item::Node(b), Item::Text(" "), Item::Node(a)]);
            }
            CwNode::Eta(i, j, c) => {
                write!(out, "(eta {i} {j} ").unwrap();
                stack.extend([Item::Text(")"), Item::Node(c)]);
            }
            CwNode::Rho { from, to, child } => {
                write!(out, "(rho {from} {to} ").unwrap();
                stack.extend([Item::Text(")"), Item::Node(child)]);
            }
        }
    }
    out.push('\n');
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Intro,
    Union,
    Eta,
    Rho,
}

impl Kind {
    fn arity(self) -> (usize, usize) {
        // (numeric arguments, subexpressions)
        match self {
            Kind::Intro => (2, 0),
            Kind::Union => (0, 2),
            Kind::Eta | Kind::Rho => (2, 1),
        }
    }
}

struct Frame {
    kind: Kind,
    nums: Vec<usize>,
    children: Vec<NodeId>,
    open_at: usize,
}

enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, Token<'_>)> {
    let bytes = text.as_bytes();
    let mut i = 0;
    std::iter::from_fn(move || {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            return None;
        }
        let start = i;
        let tok = match bytes[i] {
            b'(' => {
                i += 1;
                Token::Open
            }
            b')' => {
                i += 1;
                Token::Close
            }
            _ => {
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                    i += 1;
                }
                Token::Atom(&text[start..i])
            }
        };
        Some((start, tok))
    })
}

pub fn parse_expression(text: &str) -> Result<CwExpression, CwError> {
    let err = |pos: usize, msg: &str| CwError::Parse {
        pos,
        msg: msg.to_string(),
    };
    let mut expr = CwExpression::new();
    let mut stack: Vec<Frame> = Vec::new();
    let mut root: Option<NodeId> = None;
    let mut toks = tokens(text);
    while let Some((pos, tok)) = toks.next() {
        if root.is_some() {
            return Err(err(pos, "trailing input after expression"));
        }
        match tok {
            Token::Open => {
                if let Some(f) = stack.last() {
                    if f.nums.len() < f.kind.arity().0 {
                        return Err(err(pos, "expected a number"));
                    }
                    if f.children.len() == f.kind.arity().1 {
                        return Err(err(pos, "too many subexpressions"));
                    }
                }
                let kind = match toks.next() {
                    Some((_, Token::Atom("intro"))) => Kind::Intro,
                    Some((_, Token::Atom("union"))) => Kind::Union,
                    Some((_, Token::Atom("eta"))) => Kind::Eta,
                    Some((_, Token::Atom("rho"))) => Kind::Rho,
                    Some((p, _)) => return Err(err(p, "expected intro, union, eta or rho")),
                    None => return Err(err(text.len(), "unexpected end of input")),
                };
                stack.push(Frame {
                    kind,
                    nums: Vec::new(),
                    children: Vec::new(),
                    open_at: pos,
                });
            }
            Token::Atom(a) => {
                let f = stack.last_mut().ok_or_else(|| err(pos, "expected `(`"))?;
                if f.nums.len() == f.kind.arity().0 || !f.children.is_empty() {
                    return Err(err(pos, "unexpected number"));
                }
                let x = a.parse::<usize>().map_err(|_| err(pos, "expected a nonnegative integer"))?;
                f.nums.push(x);
            }
            Token::Close => {
                let f = stack.pop().ok_or_else(|| err(pos, "unbalanced `)`"))?;
                if (f.nums.len(), f.children.len()) != f.kind.arity() {
                    return Err(err(f.open_at, "wrong number of arguments"));
                }
                let id = match f.kind {
                    Kind::Intro => expr.intro(f.nums[0], f.nums[1]),
                    Kind::Union => expr.union(f.children[0], f.children[1]),
                    Kind::Eta => expr.eta(f.nums[0], f.nums[1], f.children[0]),
                    Kind::Rho => expr.rho(f.nums[0], f.nums[1], f.children[0]),
                };
                match stack.last_mut() {
                    Some(parent) => parent.children.push(id),
                    None => root = Some(id),
                }
            }
        }
    }
    if let Some(f) = stack.last() {
        return Err(err(f.open_at, "unclosed `(`"));
    }
    root.ok_or_else(|| err(0, "empty input"))?;
    Ok(expr)
}
