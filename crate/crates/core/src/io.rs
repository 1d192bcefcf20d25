//! Plain-text formats: edge lists, DIMACS col graphs, vertex partitions and
//! DIMACS CNF.  Writers emit LF line endings and single spaces; parsers
//! return structured errors with 1-based line numbers and never panic.

use crate::graph::{build_graph, Graph};
use crate::verifier::{PartitionError, VertexPartition};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("input ended early: {reason}")]
    Truncated { reason: String },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn malformed(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Malformed { line, reason: reason.into() }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    tok.parse::<usize>().map_err(|_| malformed(line, format!("{what} is not a number: {tok:?}")))
}

/// Edge list: a header line `n m`, then m lines `u v` with 0-based ids.
/// Lines starting with `#` and blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = data
        .next()
        .ok_or(FormatError::Truncated { reason: "missing `n m` header".into() })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(malformed(hline, "header must be exactly `n m`"));
    }
    let n = parse_usize(toks[0], hline, "vertex count")?;
    let m = parse_usize(toks[1], hline, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = data
            .next()
            .ok_or(FormatError::Truncated { reason: format!("expected {m} edge lines") })?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(malformed(lno, "edge line must be exactly `u v`"));
        }
        let u = parse_usize(toks[0], lno, "endpoint")?;
        let v = parse_usize(toks[1], lno, "endpoint")?;
        if u >= n || v >= n {
            return Err(malformed(lno, format!("endpoint out of range 0..{n}")));
        }
        if u == v {
            return Err(malformed(lno, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    if let Some((lno, _)) = data.next() {
        return Err(malformed(lno, "unexpected content after the declared edges"));
    }
    Ok(build_graph(n, &edges).expect("endpoints were range-checked"))
}

/// Inverse of `parse_edge_list`: header, then edges as `u v` with u < v in
/// lexicographic order.  Duplicate collapse means the written m may be
/// smaller than the parsed input's claim.
pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.vertex_count(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// DIMACS col format: `c` comments, one `p edge n m` header, then `e u v`
/// lines with 1-based ids.
pub fn parse_dimacs_col(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(malformed(lno, "second `p` header"));
                }
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(malformed(lno, "header must be `p edge n m`"));
                }
                let n = parse_usize(toks[2], lno, "vertex count")?;
                let m = parse_usize(toks[3], lno, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header
                    .ok_or_else(|| malformed(lno, "edge line before `p edge` header"))?;
                if toks.len() != 3 {
                    return Err(malformed(lno, "edge line must be `e u v`"));
                }
                let u = parse_usize(toks[1], lno, "endpoint")?;
                let v = parse_usize(toks[2], lno, "endpoint")?;
                if u < 1 || v < 1 || u > n || v > n {
                    return Err(malformed(lno, format!("endpoint out of range 1..={n}")));
                }
                if u == v {
                    return Err(malformed(lno, format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(malformed(lno, format!("unknown line type {other:?}")));
            }
        }
    }
    let (n, m) = header.ok_or(FormatError::Truncated { reason: "missing `p edge` header".into() })?;
    if edges.len() != m {
        return Err(FormatError::Truncated {
            reason: format!("header declares {m} edges but {} were given", edges.len()),
        });
    }
    Ok(build_graph(n, &edges).expect("endpoints were range-checked"))
}

/// Partition file: first line k, then class i on line i+1 as ascending
/// space-separated vertex ids.  The graph supplies the vertex count for the
/// cover check; structural defects come back as `PartitionError`.
pub fn parse_partition(text: &str, g: &Graph) -> Result<VertexPartition, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hline, header) = lines
        .next()
        .ok_or(FormatError::Truncated { reason: "missing class-count header".into() })?;
    let k = parse_usize(header.trim(), hline, "class count")?;
    let mut classes = Vec::with_capacity(k);
    for c in 1..=k {
        let (lno, line) = lines
            .next()
            .ok_or(FormatError::Truncated { reason: format!("expected {k} class lines") })?;
        if line.trim().is_empty() {
            return Err(PartitionError::EmptyClass { class: c }.into());
        }
        let mut class = Vec::new();
        for tok in line.split_whitespace() {
            class.push(parse_usize(tok, lno, "vertex id")?);
        }
        classes.push(class);
    }
    for (lno, line) in lines {
        if !line.trim().is_empty() {
            return Err(malformed(lno, "unexpected content after the declared classes"));
        }
    }
    let p = VertexPartition::new(classes);
    p.validate(g.vertex_count())?;
    Ok(p)
}

pub fn write_partition(p: &VertexPartition) -> String {
    let mut out = format!("{}\n", p.size());
    for class in p.classes() {
        let ids: Vec<String> = class.iter().map(usize::to_string).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// CNF with positive/negative integer literals, 1-based variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn validate(&self) -> Result<(), String> {
        for (i, clause) in self.clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(format!("clause {i} is empty"));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.variable_count {
                    return Err(format!("clause {i} holds invalid literal {lit}"));
                }
            }
        }
        Ok(())
    }
}

/// DIMACS CNF: `p cnf vars clauses`, then each clause's literals ended by 0.
pub fn write_cnf_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count, f.clauses.len());
    for clause in &f.clauses {
        for &lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
