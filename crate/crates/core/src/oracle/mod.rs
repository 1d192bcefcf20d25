//! Brute-force reference solvers for small graphs, plus a CNF encoding of
//! the fixed-size partition question.  Everything here is deliberately
//! simple and independent of the structured solvers so the two routes can
//! be compared against each other in tests.

mod dpll;

pub use dpll::{dpll_solve, SolveOutcome};

use crate::graph::Graph;
use crate::io::CnfFormula;
use crate::verifier::VertexPartition;
use thiserror::Error;

/// Past this the backtracking search stops being a sane thing to run.
pub const DEFAULT_SIZE_LIMIT: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the brute-force limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("model length {got} does not match the {want} encoded variables")]
    ModelLength { got: usize, want: usize },
    #[error("model puts vertex {vertex} in {count} classes instead of exactly one")]
    InvalidModel { vertex: usize, count: usize },
}

fn guard(g: &Graph, limit: usize, need_connected: bool) -> Result<(), OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if need_connected && !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(())
}

/// Backtracking search for an ordered partition into exactly k nonempty
/// classes where every vertex of class j has, for each i < j, a neighbour in
/// class i whose comparison degree is at least its own.  `deg` is the vector
/// used for those comparisons: the true degrees for strong domination, all
/// zeros to erase the degree condition, or a caller-supplied override.
struct Search<'a> {
    g: &'a Graph,
    deg: &'a [usize],
    order: Vec<usize>,
    cls: Vec<usize>,
    missing: Vec<u32>,
    free_qual: Vec<usize>,
    class_count: Vec<usize>,
    empty_classes: usize,
    unassigned: usize,
    cap: Vec<usize>,
    log: Vec<(usize, u32)>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, deg: &'a [usize], k: usize) -> Self {
        let n = g.vertex_count();
        // assign high-degree vertices first; they are the hardest to place
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&v| (usize::MAX - g.degree(v), v));
        // a vertex with q qualified neighbours can never sit above class q+1
        let cap = (0..n)
            .map(|v| {
                let q = g.neighbors(v).iter().filter(|&&w| deg[w] >= deg[v]).count();
                (q + 1).min(k)
            })
            .collect();
        Search {
            g,
            deg,
            order,
            cls: vec![0; n],
            missing: vec![0; n],
            free_qual: vec![0; n],
            class_count: vec![0; k + 1],
            empty_classes: k,
            unassigned: n,
            cap,
            log: Vec::new(),
        }
    }

    /// Assign v to class c, updating every affected obligation.  Returns
    /// false when some obligation became unsatisfiable; the caller must
    /// still roll back via `unassign` with the mark taken beforehand.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.cls[v] = c;
        self.unassigned -= 1;
        self.class_count[c] += 1;
        if self.class_count[c] == 1 {
            self.empty_classes -= 1;
        }
        let mut ok = true;
        let mut miss = (1u32 << c) - 2; // bits 1..c-1
        let mut freeq = 0usize;
        for &w in self.g.neighbors(v) {
            let w_qualifies = self.deg[w] >= self.deg[v];
            if self.cls[w] == 0 {
                if w_qualifies {
                    freeq += 1;
                }
            } else if w_qualifies && self.cls[w] < c {
                miss &= !(1u32 << self.cls[w]);
            }
            if self.cls[w] != 0 && self.deg[v] >= self.deg[w] {
                self.free_qual[w] -= 1;
                if c < self.cls[w] {
                    let bit = 1u32 << c;
                    if self.missing[w] & bit != 0 {
                        self.missing[w] &= !bit;
                        self.log.push((w, bit));
                    }
                }
                if self.missing[w].count_ones() as usize > self.free_qual[w] {
                    ok = false;
                }
            }
        }
        self.missing[v] = miss;
        self.free_qual[v] = freeq;
        if miss.count_ones() as usize > freeq {
            ok = false;
        }
        if self.empty_classes > self.unassigned {
            ok = false;
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize, mark: usize) {
        while self.log.len() > mark {
            let (w, bit) = self.log.pop().unwrap();
            self.missing[w] |= bit;
        }
        for &w in self.g.neighbors(v) {
            if self.cls[w] != 0 && self.deg[v] >= self.deg[w] {
                self.free_qual[w] += 1;
            }
        }
        self.cls[v] = 0;
        self.unassigned += 1;
        self.class_count[c] -= 1;
        if self.class_count[c] == 0 {
            self.empty_classes += 1;
        }
    }

    fn run(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true; // every obligation was discharged along the way
        }
        let v = self.order[idx];
        if self.cls[v] != 0 {
            return self.run(idx + 1);
        }
        for c in 1..=self.cap[v] {
            let mark = self.log.len();
            if self.assign(v, c) && self.run(idx + 1) {
                return true;
            }
            self.unassign(v, c, mark);
        }
        false
    }
}

/// Does a partition into exactly k classes exist?  Optionally pins one
/// vertex to a class first.  Returns the witness assignment (1-based
/// classes) when found.
fn exists_partition(
    g: &Graph,
    deg: &[usize],
    k: usize,
    force: Option<(usize, usize)>,
) -> Option<Vec<usize>> {
    let mut s = Search::new(g, deg, k);
    if let Some((v, c)) = force {
        if c > s.cap[v] {
            return None;
        }
        if !s.assign(v, c) {
            return None;
        }
    }
    if s.run(0) {
        Some(s.cls.clone())
    } else {
        None
    }
}

/// Exact strong transitivity number with a witness.  Searches k downward
/// from max degree + 1; the first hit is the answer because collapsing all
/// classes above level j of a valid partition into class j stays valid.
pub fn brute_tr_st(g: &Graph) -> Result<(usize, VertexPartition), OracleError> {
    brute_tr_st_with_limit(g, DEFAULT_SIZE_LIMIT)
}

pub fn brute_tr_st_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<(usize, VertexPartition), OracleError> {
    guard(g, limit, true)?;
    for k in (1..=g.max_degree() + 1).rev() {
        if let Some(assign) = exists_partition(g, g.degrees(), k, None) {
            return Ok((k, VertexPartition::from_assignment(&assign)));
        }
    }
    unreachable!("k = 1 always succeeds on a nonempty graph")
}

/// Largest class index vertex v attains over all strong transitive
/// partitions.  By the collapse argument this equals the largest p such
/// that some partition of size exactly p puts v in the top class.
pub fn brute_st_number(g: &Graph, v: usize) -> Result<usize, OracleError> {
    guard(g, DEFAULT_SIZE_LIMIT, true)?;
    brute_st_number_with_degrees(g, v, g.degrees(), DEFAULT_SIZE_LIMIT)
}

/// Same search with a caller-supplied comparison-degree vector.  This is
/// the hook tests use to score a vertex inside a pruned tree while its
/// degree is still counted as in the full tree.
pub fn brute_st_number_with_degrees(
    g: &Graph,
    v: usize,
    deg: &[usize],
    limit: usize,
) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    if v >= n {
        return Err(OracleError::VertexOutOfRange { v, n });
    }
    guard(g, limit, true)?;
    assert_eq!(deg.len(), n);
    let quals = g.neighbors(v).iter().filter(|&&w| deg[w] >= deg[v]).count();
    for p in (2..=quals + 1).rev() {
        if exists_partition(g, deg, p, Some((v, p))).is_some() {
            return Ok(p);
        }
    }
    Ok(1)
}

/// Ordinary transitivity: same partition condition without the degree
/// comparison, realised by comparing all-zero degrees.
pub fn brute_tr(g: &Graph) -> Result<usize, OracleError> {
    brute_tr_with_limit(g, DEFAULT_SIZE_LIMIT)
}

pub fn brute_tr_with_limit(g: &Graph, limit: usize) -> Result<usize, OracleError> {
    guard(g, limit, true)?;
    let zero = vec![0usize; g.vertex_count()];
    for k in (1..=g.max_degree() + 1).rev() {
        if exists_partition(g, &zero, k, None).is_some() {
            return Ok(k);
        }
    }
    unreachable!("k = 1 always succeeds on a nonempty graph")
}

/// Proper 3-colouring by backtracking; colours are 1..=3.
pub fn brute_3coloring(g: &Graph) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    if n > DEFAULT_SIZE_LIMIT {
        return Err(OracleError::TooLarge { n, limit: DEFAULT_SIZE_LIMIT });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut colour = vec![0usize; n];
    fn go(g: &Graph, order: &[usize], colour: &mut [usize], idx: usize) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        'next: for c in 1..=3 {
            for &w in g.neighbors(v) {
                if colour[w] == c {
                    continue 'next;
                }
            }
            colour[v] = c;
            if go(g, order, colour, idx + 1) {
                return true;
            }
            colour[v] = 0;
        }
        false
    }
    Ok(if go(g, &order, &mut colour, 0) { Some(colour) } else { None })
}

/// CNF that is satisfiable iff the graph admits a strong transitive
/// partition into exactly k nonempty classes (equivalently, iff the strong
/// transitivity number is at least k).  Variable v*k + i states "vertex v
/// lies in class i", i = 1..=k.
pub fn encode_tr_st_sat(g: &Graph, k: usize) -> CnfFormula {
    let n = g.vertex_count();
    assert!(n >= 1 && k >= 1);
    let var = |v: usize, i: usize| (v * k + i) as i32;
    let mut clauses = Vec::new();
    for v in 0..n {
        // exactly one class per vertex
        clauses.push((1..=k).map(|i| var(v, i)).collect::<Vec<_>>());
        for i in 1..=k {
            for j in i + 1..=k {
                clauses.push(vec![-var(v, i), -var(v, j)]);
            }
        }
    }
    for i in 1..=k {
        clauses.push((0..n).map(|v| var(v, i)).collect::<Vec<_>>());
    }
    for v in 0..n {
        let quals: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| g.degree(u) >= g.degree(v))
            .collect();
        for j in 2..=k {
            for i in 1..j {
                let mut clause = vec![-var(v, j)];
                clause.extend(quals.iter().map(|&u| var(u, i)));
                clauses.push(clause);
            }
        }
    }
    let f = CnfFormula { variable_count: n * k, clauses };
    debug_assert!(f.validate().is_ok());
    f
}

/// Read a satisfying assignment of `encode_tr_st_sat(g, k)` back into a
/// partition.
pub fn decode_model(g: &Graph, k: usize, model: &[bool]) -> Result<VertexPartition, OracleError> {
    let n = g.vertex_count();
    if model.len() != n * k {
        return Err(OracleError::ModelLength { got: model.len(), want: n * k });
    }
    let mut assignment = vec![0usize; n];
    for v in 0..n {
        let mut chosen = 0;
        let mut count = 0;
        for i in 1..=k {
            if model[v * k + i - 1] {
                chosen = i;
                count += 1;
            }
        }
        if count != 1 {
            return Err(OracleError::InvalidModel { vertex: v, count });
        }
        assignment[v] = chosen;
    }
    Ok(VertexPartition::from_assignment(&assignment))
}
