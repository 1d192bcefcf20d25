//! Split graphs: recognition and an exact closed-form solver.
//!
//! A split graph partitions into a clique K and an independent set I.  The
//! recognition test is purely degree-based: sort degrees descending and find
//! the largest m with d_m >= m - 1; the graph is split iff the first m
//! degrees account for a complete graph on m vertices plus all edges leaving
//! the rest.  When the test passes, the m top-degree vertices really do form
//! a maximum clique, and the strong transitivity number equals its size:
//! lining the clique vertices up one per class (largest degree on top) and
//! pouring everything else into class 1 is always valid, and no partition
//! can do better because class k + 1 would need k distinct qualified
//! neighbours below it on a vertex whose neighbourhood is too independent.

use crate::graph::Graph;
use crate::verifier::VertexPartition;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("graph is not a split graph")]
    NotSplit,
    #[error("graph has no vertices")]
    Empty,
}

/// A clique/independent-set decomposition, each side sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

/// Degree-based split recognition.  Returns the decomposition whose clique
/// is the m top-degree vertices (ties broken by smaller id) where m is the
/// largest index with d_m >= m - 1 in the descending degree sequence.
pub fn recognize_split(g: &Graph) -> Result<SplitDecomposition, SplitError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SplitError::Empty);
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut m = 0;
    for (i, &v) in by_degree.iter().enumerate() {
        if g.degree(v) >= i {
            m = i + 1;
        } else {
            break;
        }
    }
    let head: usize = by_degree[..m].iter().map(|&v| g.degree(v)).sum();
    let tail: usize = by_degree[m..].iter().map(|&v| g.degree(v)).sum();
    if head != m * (m - 1) + tail {
        return Err(SplitError::NotSplit);
    }
    let mut clique = by_degree[..m].to_vec();
    let mut independent = by_degree[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    // The degree identity guarantees this decomposition is genuine; check it
    // anyway so a bookkeeping bug can never smuggle out a bogus answer.  One
    // adjacency scan per vertex keeps this linear: a clique member must see
    // every other clique member, an independent member must see none.
    let mut in_clique = vec![false; n];
    for &u in &clique {
        in_clique[u] = true;
    }
    for &u in &clique {
        let inside = g.neighbors(u).iter().filter(|&&w| in_clique[w]).count();
        assert!(inside == m - 1, "degree test accepted a non-clique: vertex {u}");
    }
    for &u in &independent {
        for &w in g.neighbors(u) {
            assert!(in_clique[w], "degree test accepted a non-independent set: {u}-{w}");
        }
    }
    Ok(SplitDecomposition { clique, independent })
}

/// Strong transitivity number of a split graph: the size of the maximum
/// clique, witnessed by one clique vertex per class with the rest of the
/// graph in class 1.  Clique degrees must not increase going up the chain:
/// the top-degree clique vertex stays in class 1, where it is adjacent to
/// every higher class and out-degrees all of them, and each clique vertex
/// strongly dominates the (lower-degree) clique vertices above it.
pub fn tr_st_split(g: &Graph) -> Result<(usize, VertexPartition), SplitError> {
    let d = recognize_split(g)?;
    let k = d.clique.len();
    let mut assignment = vec![1usize; g.vertex_count()];
    let mut chain = d.clique.clone();
    chain.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for (i, &v) in chain.iter().enumerate().skip(1) {
        assignment[v] = i + 1;
    }
    Ok((k, VertexPartition::from_assignment(&assignment)))
}
