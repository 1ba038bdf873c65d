use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{binom_u64, colex_rank, colex_unrank};
use crate::error::{range_err, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::kset::{KSet, MAX_VERTICES};

/// Sparse 0/1 matrix `M_s^r(G)`: rows are the edges of `G` in colex order,
/// columns are all `s`-subsets of `[n]` in colex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionMatrix {
    n: usize,
    r: usize,
    s: usize,
    rows: Vec<KSet>,
    /// Column indices of the ones in each row, ascending.
    entries: Vec<Vec<usize>>,
}

impl InclusionMatrix {
    pub fn build(g: &Hypergraph, s: usize) -> Result<Self> {
        if s > g.r() {
            return range_err(format!("s = {s} exceeds r = {}", g.r()));
        }
        let entries = g
            .edges()
            .iter()
            .map(|e| {
                // subsets come out in colex order, so ranks are ascending
                e.subsets(s).map(|sub| colex_rank(sub) as usize).collect()
            })
            .collect();
        Ok(InclusionMatrix {
            n: g.n(),
            r: g.r(),
            s,
            rows: g.edges().to_vec(),
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rows(&self) -> &[KSet] {
        &self.rows
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        binom_u64(self.n, self.s) as usize
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    /// The `s`-set labelling column `j`.
    pub fn column_set(&self, j: usize) -> KSet {
        colex_unrank(j as u64, self.s, self.n).expect("column index in range")
    }

    /// Columns with no ones.
    pub fn zero_columns(&self) -> Vec<usize> {
        let mut hit = vec![false; self.ncols()];
        for row in &self.entries {
            for &j in row {
                hit[j] = true;
            }
        }
        hit.iter()
            .enumerate()
            .filter(|(_, h)| !**h)
            .map(|(j, _)| j)
            .collect()
    }

    /// Exact `M x`.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ncols(), "vector length must match the column count");
        self.entries
            .iter()
            .map(|row| row.iter().map(|&j| &x[j]).sum())
            .collect()
    }

    /// True iff `M x = 0` exactly.
    pub fn annihilates(&self, x: &[BigInt]) -> bool {
        x.len() == self.ncols()
            && self
                .entries
                .iter()
                .all(|row| row.iter().map(|&j| &x[j]).sum::<BigInt>().is_zero())
    }

    /// Dense copy, rows by columns.
    pub fn to_dense<T: Clone>(&self, zero: T, one: T) -> Vec<Vec<T>> {
        let c = self.ncols();
        self.entries
            .iter()
            .map(|row| {
                let mut dense = vec![zero.clone(); c];
                for &j in row {
                    dense[j] = one.clone();
                }
                dense
            })
            .collect()
    }

    /// MatrixMarket coordinate export (1-based indices). `comments` are
    /// written as extra `%` lines after the fixed header.
    pub fn to_matrix_market(&self, comments: &[String]) -> String {
        let mut out = String::new();
        out.push_str("%%MatrixMarket matrix coordinate integer general\n");
        writeln!(out, "% inclusion matrix n={} r={} s={}", self.n, self.r, self.s).unwrap();
        out.push_str("% rows: edges in colex order; columns: s-subsets of [n] in colex order\n");
        for c in comments {
            for line in c.lines() {
                writeln!(out, "% {line}").unwrap();
            }
        }
        writeln!(out, "{} {} {}", self.nrows(), self.ncols(), self.nnz()).unwrap();
        for (i, row) in self.entries.iter().enumerate() {
            for &j in row {
                writeln!(out, "{} {} 1", i + 1, j + 1).unwrap();
            }
        }
        out
    }

    /// Re-imports a matrix written by [`to_matrix_market`]. Rows are
    /// recovered as the union of their column sets, so `s = 0` exports with
    /// `r > 0` cannot be read back.
    ///
    /// [`to_matrix_market`]: InclusionMatrix::to_matrix_market
    pub fn from_matrix_market(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, l)) if l.trim_start().starts_with("%%MatrixMarket matrix coordinate") => {}
            _ => return Err(perr(1, "missing %%MatrixMarket coordinate banner".into())),
        }
        let mut params: Option<(usize, usize, usize)> = None;
        let mut size_line = None;
        for (no, l) in lines.by_ref() {
            let t = l.trim();
            if let Some(rest) = t.strip_prefix('%') {
                if let Some(p) = rest.trim().strip_prefix("inclusion matrix ") {
                    params = Some(parse_nrs(p).ok_or_else(|| perr(no, format!("bad parameter line {t:?}")))?);
                }
                continue;
            }
            if t.is_empty() {
                continue;
            }
            size_line = Some((no, t.to_string()));
            break;
        }
        let (n, r, s) =
            params.ok_or_else(|| perr(1, "missing \"% inclusion matrix n=.. r=.. s=..\" line".into()))?;
        if n > MAX_VERTICES || s > r || r > n {
            return Err(perr(1, format!("invalid parameters n={n} r={r} s={s}")));
        }
        let (no, size) = size_line.ok_or_else(|| perr(1, "missing size line".into()))?;
        let dims: Vec<usize> = size
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| perr(no, format!("bad size line {size:?}"))))
            .collect::<Result<_>>()?;
        let [nrows, ncols, nnz] = dims[..] else {
            return Err(perr(no, format!("bad size line {size:?}")));
        };
        if ncols as u64 != binom_u64(n, s) {
            return Err(perr(no, format!("{ncols} columns, expected C({n},{s})")));
        }
        let mut entries = vec![Vec::new(); nrows];
        let mut seen = 0usize;
        for (no, l) in lines {
            let t = l.trim();
            if t.is_empty() || t.starts_with('%') {
                continue;
            }
            let f: Vec<&str> = t.split_whitespace().collect();
            let parsed = (f.len() == 3)
                .then(|| Some((f[0].parse::<usize>().ok()?, f[1].parse::<usize>().ok()?, f[2])))
                .flatten();
            let Some((i, j, v)) = parsed else {
                return Err(perr(no, format!("bad entry {t:?}")));
            };
            if v != "1" || i == 0 || i > nrows || j == 0 || j > ncols {
                return Err(perr(no, format!("entry {t:?} out of range or not 1")));
            }
            entries[i - 1].push(j - 1);
            seen += 1;
        }
        if seen != nnz {
            return Err(perr(no, format!("declared {nnz} entries, found {seen}")));
        }
        let mut rows = Vec::with_capacity(nrows);
        for (i, row) in entries.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            if row.len() as u64 != binom_u64(r, s) {
                return Err(perr(
                    no,
                    format!("row {} has {} ones, expected C({r},{s})", i + 1, row.len()),
                ));
            }
            if s == 0 && r > 0 {
                return range_err("rows of an s = 0 matrix cannot be reconstructed");
            }
            let edge = row
                .iter()
                .map(|&j| colex_unrank(j as u64, s, n).expect("checked column range"))
                .fold(KSet::EMPTY, KSet::union);
            if edge.len() != r {
                return Err(perr(no, format!("row {} is not the s-shadow of an r-set", i + 1)));
            }
            rows.push(edge);
        }
        let g = Hypergraph::new(n, r, rows.clone())?;
        if g.len() != rows.len() || g.edges() != &rows[..] {
            return Err(perr(no, "rows are not distinct edges in colex order".into()));
        }
        let rebuilt = InclusionMatrix::build(&g, s)?;
        if rebuilt.entries != entries {
            return Err(perr(no, "entries are not an inclusion pattern".into()));
        }
        Ok(rebuilt)
    }
}

fn parse_nrs(text: &str) -> Option<(usize, usize, usize)> {
    let mut n = None;
    let mut r = None;
    let mut s = None;
    for tok in text.split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        let v: usize = v.parse().ok()?;
        match k {
            "n" => n = Some(v),
            "r" => r = Some(v),
            "s" => s = Some(v),
            _ => {}
        }
    }
    Some((n?, r?, s?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete, random_hypergraph, star_deleted_graph, tightness_graph};

    #[test]
    fn build_examples() {
        let m = InclusionMatrix::build(&complete(4, 2).unwrap(), 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (6, 4));
        assert!(m.entries().iter().all(|r| r.len() == 2));

        let g = random_hypergraph(7, 3, 0.5, 3).unwrap();
        let id = InclusionMatrix::build(&g, 3).unwrap();
        let mut cols: Vec<usize> = id
            .entries()
            .iter()
            .map(|r| {
                assert_eq!(r.len(), 1);
                r[0]
            })
            .collect();
        let before = cols.clone();
        cols.dedup();
        assert_eq!(cols, before);

        let z = InclusionMatrix::build(&g, 0).unwrap();
        assert_eq!(z.ncols(), 1);
        assert!(z.entries().iter().all(|r| r == &vec![0]));

        let empty = InclusionMatrix::build(&Hypergraph::empty(5, 2).unwrap(), 1).unwrap();
        assert_eq!(empty.nrows(), 0);
        assert!(InclusionMatrix::build(&g, 4).is_err());
    }

    #[test]
    fn entries_follow_inclusion() {
        let g = random_hypergraph(8, 4, 0.3, 11).unwrap();
        let m = InclusionMatrix::build(&g, 2).unwrap();
        for (i, e) in m.rows().iter().enumerate() {
            for j in 0..m.ncols() {
                let inside = m.column_set(j).is_subset(*e);
                assert_eq!(inside, m.entries()[i].binary_search(&j).is_ok());
            }
        }
    }

    #[test]
    fn star_columns_are_zero() {
        let g = star_deleted_graph(6, 1, 3, 1).unwrap();
        let m = InclusionMatrix::build(&g, 1).unwrap();
        assert_eq!(m.zero_columns(), vec![0]);
    }

    #[test]
    fn matrix_market_roundtrip() {
        for g in [
            tightness_graph(6, 3, 2).unwrap(),
            random_hypergraph(8, 3, 0.4, 5).unwrap(),
            Hypergraph::empty(5, 2).unwrap(),
        ] {
            let m = InclusionMatrix::build(&g, 1).unwrap();
            let text = m.to_matrix_market(&["config: {}".to_string()]);
            assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n"));
            assert_eq!(InclusionMatrix::from_matrix_market(&text).unwrap(), m);
        }
        let m = InclusionMatrix::build(&tightness_graph(4, 2, 1).unwrap(), 1).unwrap();
        let text = m.to_matrix_market(&[]);
        assert_eq!(
            text,
            "%%MatrixMarket matrix coordinate integer general\n\
             % inclusion matrix n=4 r=2 s=1\n\
             % rows: edges in colex order; columns: s-subsets of [n] in colex order\n\
             4 4 8\n1 1 1\n1 2 1\n2 2 1\n2 3 1\n3 1 1\n3 4 1\n4 3 1\n4 4 1\n"
        );
        assert!(InclusionMatrix::from_matrix_market("4 4 8\n").is_err());
        let broken = text.replace("4 4 1\n", "4 2 1\n");
        assert!(InclusionMatrix::from_matrix_market(&broken).is_err());
    }
}
