//! Plain-text hypergraph format.
//!
//! ```text
//! # optional comment lines
//! n m r
//! v_1 v_2 ... v_r      (m lines, labels ascending, lines in colex order)
//! ```

use std::fmt::Write as _;

use super::Hypergraph;
use crate::error::{Error, Result};
use crate::kset::KSet;

pub fn write_text(g: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", g.n(), g.len(), g.r()).unwrap();
    for e in g.edges() {
        let labels: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", labels.join(" ")).unwrap();
    }
    out
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected a non-negative integer, found {tok:?}"),
            })
        })
        .collect()
}

/// Parses the format written by [`write_text`]. Lines starting with `#`
/// before the header are comments and are skipped.
pub fn read_text(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .skip_while(|(_, l)| l.starts_with('#'));
    let Some((head_no, header)) = lines.next() else {
        return parse_err(1, "missing header line \"n m r\"");
    };
    let head = numbers(head_no, header)?;
    let [n, m, r] = head[..] else {
        return parse_err(head_no, format!("header must be \"n m r\", found {header:?}"));
    };
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let Some((line_no, line)) = lines.next() else {
            return parse_err(head_no + i + 1, format!("expected {m} edge lines, found {i}"));
        };
        let labels = numbers(line_no, line)?;
        if labels.len() != r {
            return parse_err(line_no, format!("edge has {} labels, expected {r}", labels.len()));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return parse_err(line_no, "labels must be strictly ascending");
        }
        if let Some(&v) = labels.iter().find(|&&v| v == 0 || v > n) {
            return parse_err(line_no, format!("label {v} outside 1..={n}"));
        }
        let e = KSet::from_vertices(labels).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        if let Some(prev) = edges.last() {
            if *prev >= e {
                return parse_err(line_no, "edges must be listed in strictly increasing colex order");
            }
        }
        edges.push(e);
    }
    if let Some((extra, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return parse_err(extra, "trailing content after the declared edges");
    }
    Hypergraph::new(n, r, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete, random_hypergraph, tightness_graph};

    #[test]
    fn writes_the_documented_layout() {
        let c4 = tightness_graph(4, 2, 1).unwrap();
        assert_eq!(write_text(&c4), "4 4 2\n1 2\n2 3\n1 4\n3 4\n");
    }

    #[test]
    fn roundtrips() {
        for seed in 0..20 {
            let g = random_hypergraph(9, 3, 0.4, seed).unwrap();
            assert_eq!(read_text(&write_text(&g)).unwrap(), g);
        }
        let z = complete(3, 0).unwrap();
        assert_eq!(read_text(&write_text(&z)).unwrap(), z);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_text("").is_err());
        assert!(read_text("4 1 2\n2 1\n").is_err());
        assert!(read_text("4 2 2\n1 2\n").is_err());
        assert!(read_text("4 1 2\n1 5\n").is_err());
        assert!(read_text("4 2 2\n2 3\n1 2\n").is_err());
        assert!(read_text("4 1 2\n1 2\n3 4\n").is_err());
        assert!(read_text("4 1 2\n1 x\n").is_err());
        assert!(read_text("4 1\n").is_err());
        assert!(read_text("4 1 2\n# late comment\n").is_err());
    }

    #[test]
    fn skips_leading_comments() {
        let g = read_text("# made by hand\n#\n4 1 2\n1 3\n").unwrap();
        assert_eq!(g.edges(), &[KSet::from_vertices([1, 3]).unwrap()]);
        let err = read_text("# one\n4 1 2\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                msg: "expected a non-negative integer, found \"x\"".into()
            }
        );
    }
}
