//! Partition bookkeeping and the domination checks everything else is
//! validated against.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("class {class} is empty")]
    EmptyClass { class: usize },
    #[error("vertex {vertex} appears in more than one class")]
    DuplicateVertex { vertex: usize },
    #[error("vertex {vertex} is missing from the partition")]
    MissingVertex { vertex: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("dominator and dominated sets overlap at vertex {vertex}")]
    OverlappingSets { vertex: usize },
}

/// Ordered partition of the vertex set; `classes[i]` is class i+1.  Class
/// contents are kept sorted.  Structural soundness (nonempty classes that
/// cover every vertex exactly once) is checked by `validate`, not by
/// construction, so that parsers and verifiers can report defects precisely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    classes: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(mut classes: Vec<Vec<usize>>) -> Self {
        for class in classes.iter_mut() {
            class.sort_unstable();
        }
        VertexPartition { classes }
    }

    /// Build from a per-vertex class table with 1-based class indices.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let k = assignment.iter().copied().max().unwrap_or(0);
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in assignment.iter().enumerate() {
            assert!(c >= 1 && c <= k, "class indices are 1-based");
            classes[c - 1].push(v);
        }
        VertexPartition { classes }
    }

    pub fn size(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i - 1]
    }

    /// Per-vertex 1-based class index; fails on structural defects.
    pub fn assignment(&self, n: usize) -> Result<Vec<usize>, PartitionError> {
        self.validate(n)?;
        let mut out = vec![0usize; n];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = i + 1;
            }
        }
        Ok(out)
    }

    pub fn validate(&self, n: usize) -> Result<(), PartitionError> {
        let mut seen = vec![false; n];
        for (i, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(PartitionError::EmptyClass { class: i + 1 });
            }
            for &v in class {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { vertex: v, n });
                }
                if seen[v] {
                    return Err(PartitionError::DuplicateVertex { vertex: v });
                }
                seen[v] = true;
            }
        }
        if let Some(v) = (0..n).find(|&v| !seen[v]) {
            return Err(PartitionError::MissingVertex { vertex: v });
        }
        Ok(())
    }
}

/// First failed obligation, in lexicographic (i, j, y) order: class i has no
/// qualified neighbour for vertex y of class j.  Class indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub dominator_class: usize,
    pub dominated_class: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}

/// Does A strongly dominate B?  Every y in B needs a neighbour x in A with
/// deg(x) >= deg(y).  Vacuously true when B is empty; the sets must be
/// disjoint subsets of the vertex set.
pub fn strongly_dominates(g: &Graph, a: &[usize], b: &[usize]) -> Result<bool, PartitionError> {
    dominates(g, a, b, true)
}

fn dominates(g: &Graph, a: &[usize], b: &[usize], strong: bool) -> Result<bool, PartitionError> {
    let n = g.vertex_count();
    let mut in_a = vec![false; n];
    for &v in a {
        if v >= n {
            return Err(PartitionError::VertexOutOfRange { vertex: v, n });
        }
        in_a[v] = true;
    }
    for &y in b {
        if y >= n {
            return Err(PartitionError::VertexOutOfRange { vertex: y, n });
        }
        if in_a[y] {
            return Err(PartitionError::OverlappingSets { vertex: y });
        }
    }
    for &y in b {
        let covered = g
            .neighbors(y)
            .iter()
            .any(|&x| in_a[x] && (!strong || g.degree(x) >= g.degree(y)));
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check that every class strongly dominates every later class.  Structural
/// defects surface as `Err`; a clean structure with a failed obligation
/// yields `Ok(Invalid)` carrying the lexicographically first violation.
pub fn verify_strong_transitive(g: &Graph, p: &VertexPartition) -> Result<Verdict, PartitionError> {
    verify(g, p, true)
}

/// Same, but with plain domination (any neighbour counts).
pub fn verify_transitive(g: &Graph, p: &VertexPartition) -> Result<Verdict, PartitionError> {
    verify(g, p, false)
}

fn verify(g: &Graph, p: &VertexPartition, strong: bool) -> Result<Verdict, PartitionError> {
    let n = g.vertex_count();
    p.validate(n)?;
    let k = p.size();
    let mut in_class = vec![0usize; n]; // 1-based class of each vertex
    for (i, class) in p.classes().iter().enumerate() {
        for &v in class {
            in_class[v] = i + 1;
        }
    }
    // O(k (n + m)): for each dominator class, rescan the neighbourhoods of
    // all later-class vertices.  Iteration order makes the first hit the
    // lexicographically least violation.
    for i in 1..=k {
        for j in i + 1..=k {
            for &y in p.class(j) {
                let covered = g
                    .neighbors(y)
                    .iter()
                    .any(|&x| in_class[x] == i && (!strong || g.degree(x) >= g.degree(y)));
                if !covered {
                    return Ok(Verdict::Invalid(Violation {
                        dominator_class: i,
                        dominated_class: j,
                        vertex: y,
                    }));
                }
            }
        }
    }
    Ok(Verdict::Valid)
}
