//! Line-oriented tree files.
//!
//! ```text
//! # comment
//! p=2 q=inf
//! 0 - 1 1
//! 1 0 0.5 2
//! ```
//!
//! The header names the exponents; every other line is `id parent u w`
//! with `-` as the parent of the root. Ids are arbitrary distinct
//! non-negative integers and are kept as labels.

use std::collections::HashMap;
use std::fmt;

use hardytree::{Error, Exponent, Exponents, RootedTree, VertexId, WeightedTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed tree file: dense vertices `0..n` plus their labels in the file.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeFile {
    pub tree: WeightedTree,
    pub exponents: Exponents,
    /// `labels[v]` is the id of dense vertex `v` in the file.
    pub labels: Vec<usize>,
}

impl TreeFile {
    /// A file for `tree` with the identity labelling.
    pub fn new(tree: WeightedTree, exponents: Exponents) -> Self {
        let labels = (0..tree.len()).collect();
        TreeFile {
            tree,
            exponents,
            labels,
        }
    }

    pub fn with_labels(tree: WeightedTree, exponents: Exponents, labels: Vec<usize>) -> Self {
        assert_eq!(tree.len(), labels.len());
        TreeFile {
            tree,
            exponents,
            labels,
        }
    }

    /// The dense vertex carrying `label`.
    pub fn vertex(&self, label: usize) -> Option<VertexId> {
        self.labels.iter().position(|&l| l == label).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> usize {
        self.labels[v.0]
    }
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(b, t)| (line[..b].chars().count() + 1, t))
        .collect()
}

fn parse_header(line_no: usize, toks: &[(usize, &str)]) -> Result<Exponents, ParseError> {
    let err = |column, message: String| ParseError {
        line: line_no,
        column,
        message,
    };
    let mut p = None;
    let mut q = None;
    for &(col, tok) in toks {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| err(col, "expected header 'p=<exponent> q=<exponent>'".into()))?;
        let e: Exponent = val
            .parse()
            .map_err(|e: Error| err(col + key.len() + 1, e.to_string()))?;
        match key {
            "p" if p.is_none() => p = Some(e),
            "q" if q.is_none() => q = Some(e),
            _ => return Err(err(col, format!("unexpected header field '{key}'"))),
        }
    }
    match (p, q) {
        (Some(p), Some(q)) => Ok(Exponents::new(p, q)),
        _ => Err(err(1, "header must set both p and q".into())),
    }
}

pub fn parse_tree_file(text: &str) -> Result<TreeFile, ParseError> {
    let mut exponents = None;
    struct Record {
        line: usize,
        id: usize,
        parent: Option<(usize, usize)>,
        u: f64,
        w: f64,
    }
    let mut records: Vec<Record> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        if toks.is_empty() {
            continue;
        }
        let err = |column, message: String| ParseError {
            line: line_no,
            column,
            message,
        };
        if exponents.is_none() {
            if !toks[0].1.contains('=') {
                return Err(err(toks[0].0, "expected header 'p=<exponent> q=<exponent>' before any vertex".into()));
            }
            exponents = Some(parse_header(line_no, &toks)?);
            continue;
        }
        if toks.len() != 4 {
            let col = toks.get(4).map_or(body.chars().count() + 1, |t| t.0);
            return Err(err(col, format!("expected 'id parent u w', found {} fields", toks.len())));
        }
        let int = |(col, tok): (usize, &str)| {
            tok.parse::<usize>()
                .map_err(|_| err(col, format!("'{tok}' is not a vertex id")))
        };
        let weight = |(col, tok): (usize, &str)| {
            let v: f64 = tok
                .parse()
                .map_err(|_| err(col, format!("'{tok}' is not a number")))?;
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(err(col, format!("weight {tok} must be positive and finite")))
            }
        };
        let id = int(toks[0])?;
        let parent = if toks[1].1 == "-" {
            None
        } else {
            Some((int(toks[1])?, toks[1].0))
        };
        records.push(Record {
            line: line_no,
            id,
            parent,
            u: weight(toks[2])?,
            w: weight(toks[3])?,
        });
    }
    let last_line = text.lines().count().max(1);
    let Some(exponents) = exponents else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "missing header 'p=<exponent> q=<exponent>'".into(),
        });
    };
    if records.is_empty() {
        return Err(ParseError {
            line: last_line,
            column: 1,
            message: "no vertices".into(),
        });
    }

    let mut labels: Vec<usize> = records.iter().map(|r| r.id).collect();
    labels.sort_unstable();
    let dense: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut parent = vec![None; labels.len()];
    let mut u = vec![0.0; labels.len()];
    let mut w = vec![0.0; labels.len()];
    let mut line_of = vec![0; labels.len()];
    let mut seen = vec![false; labels.len()];
    let mut root = None;
    for r in &records {
        let v = dense[&r.id];
        if seen[v] {
            return Err(ParseError {
                line: r.line,
                column: 1,
                message: format!("vertex {} is defined twice", r.id),
            });
        }
        seen[v] = true;
        line_of[v] = r.line;
        u[v] = r.u;
        w[v] = r.w;
        match r.parent {
            None => {
                if root.is_some() {
                    return Err(ParseError {
                        line: r.line,
                        column: 1,
                        message: format!("second root {}", r.id),
                    });
                }
                root = Some(v);
            }
            Some((p, col)) => {
                let Some(&pv) = dense.get(&p) else {
                    return Err(ParseError {
                        line: r.line,
                        column: col,
                        message: format!("orphan vertex {}: parent {p} is not defined", r.id),
                    });
                };
                parent[v] = Some(VertexId(pv));
            }
        }
    }
    let Some(root) = root else {
        return Err(ParseError {
            line: records[0].line,
            column: 1,
            message: "no root (a vertex with parent '-')".into(),
        });
    };
    let tree = RootedTree::from_parents(parent, VertexId(root)).map_err(|e| {
        let line = match &e {
            Error::Cycle(v) | Error::Disconnected(v) | Error::DuplicateParent(v) => line_of[v.0],
            _ => records[0].line,
        };
        let message = match &e {
            Error::Cycle(v) => format!("cycle through vertex {}", labels[v.0]),
            Error::Disconnected(v) => format!("vertex {} is not connected to the root", labels[v.0]),
            _ => e.to_string(),
        };
        ParseError {
            line,
            column: 1,
            message,
        }
    })?;
    let tree = WeightedTree::new(tree, u, w).map_err(|e| ParseError {
        line: records[0].line,
        column: 1,
        message: e.to_string(),
    })?;
    Ok(TreeFile {
        tree,
        exponents,
        labels,
    })
}

/// Writes a file that parses back to the same tree, labels and exponents.
pub fn emit_tree_file(tf: &TreeFile) -> String {
    let mut out = format!("p={} q={}\n", tf.exponents.p, tf.exponents.q);
    let t = &tf.tree;
    for v in t.tree.vertices() {
        let parent = match t.tree.parent(v) {
            Some(p) => tf.label(p).to_string(),
            None => "-".into(),
        };
        out += &format!("{} {} {} {}\n", tf.label(v), parent, t.u(v), t.w(v));
    }
    out
}
