//! Polynomial-time reduction from proper 3-coloring to the strong
//! transitivity decision problem, targeting chordal instances.
//!
//! Given a source graph G with n vertices and m >= 1 edges, the output
//! graph G' consists of:
//!
//! * a clique A = {edge vertices e_1..e_m, apex e} of size m + 1;
//! * one gadget tree per source vertex v_i, rooted at v_i, sized so the
//!   root's total degree lands on m + 3 after v_i is joined to the edge
//!   vertices of its incident edges;
//! * one gadget tree per edge, its root joined to that edge's clique
//!   vertex, and three more whose roots are joined to the apex; all of
//!   these roots also end up with total degree m + 3.
//!
//! Every gadget root can reach class 1, 2 or 3 inside its own tree and no
//! higher on tree support alone, the clique stacks up classes 4..m+3, and
//! the apex tops out at m + 4 exactly when, for every edge, the two
//! endpoint roots and the edge's own root occupy three distinct classes —
//! that is, exactly when the endpoint classes read off a proper 3-coloring.
//! So G is 3-colorable iff G' admits a strong transitive partition of size
//! k = m + 4.  Roots are pairwise non-adjacent and everything outside A is
//! a forest, so G' is chordal and the hardness lands inside that class.

use crate::graph::{build_graph, is_chordal, Graph, GraphError};
use crate::verifier::{verify_strong_transitive, VertexPartition};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("source graph needs at least one edge")]
    NoEdges,
    #[error("gadget root degree {d} is too small; the tree needs two heavy children")]
    GadgetDegree { d: usize },
    #[error("coloring has {got} entries for {want} vertices")]
    ColoringLength { got: usize, want: usize },
    #[error("vertex {vertex} carries color {color}, outside 1..=3")]
    BadColor { vertex: usize, color: usize },
    #[error("edge ({u}, {v}) joins two vertices of color {color}")]
    ImproperColoring { u: usize, v: usize, color: usize },
    #[error("partition is not a valid strong transitive partition of the instance")]
    InvalidPartition,
    #[error("partition has {got} classes, the instance needs {need}")]
    WrongClassCount { got: usize, need: usize },
    #[error("graph construction failed: {0}")]
    Graph(#[from] GraphError),
}

/// Ids of the skeleton of one gadget tree: the root, its two heavy
/// children, and the anchor below each heavy.  Leaves fill the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetTree {
    pub root: usize,
    pub heavy: [usize; 2],
    pub anchor: [usize; 2],
}

/// A built instance: the chordal graph, the class target, and enough
/// layout to map colorings to partitions and back.
///
/// Vertex ids in `graph` are laid out deterministically: source vertices
/// keep 0..n, edge vertices take n..n+m (edge j -> n + j), the apex is
/// n + m, edge roots take n+m+1..=n+2m, the three apex roots follow, and
/// gadget internals are appended per root in that same order.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: Graph,
    /// Decision target: the source is 3-colorable iff `graph` has a strong
    /// transitive partition of this many classes.
    pub k: usize,
    pub source_vertices: usize,
    pub source_edges: Vec<(usize, usize)>,
    /// Gadget skeletons, one per root: sources first, then edge roots,
    /// then the three apex roots.
    pub gadgets: Vec<GadgetTree>,
}

impl ReductionInstance {
    pub fn edge_vertex(&self, j: usize) -> usize {
        self.source_vertices + j
    }

    pub fn apex(&self) -> usize {
        self.source_vertices + self.source_edges.len()
    }

    pub fn edge_root(&self, j: usize) -> usize {
        self.apex() + 1 + j
    }

    /// Root of the apex-attached gadget that the canonical witness pins to
    /// class `level` (1, 2 or 3).
    pub fn apex_root(&self, level: usize) -> usize {
        debug_assert!((1..=3).contains(&level));
        self.apex() + self.source_edges.len() + level
    }

    fn gadget_of_root(&self, root: usize) -> Option<&GadgetTree> {
        let n = self.source_vertices;
        let m = self.source_edges.len();
        let idx = if root < n {
            root
        } else if root > n + m && root <= n + 2 * m {
            n + (root - (n + m + 1))
        } else if root > n + 2 * m && root <= n + 2 * m + 3 {
            n + m + (root - (n + 2 * m + 1))
        } else {
            return None;
        };
        Some(&self.gadgets[idx])
    }
}

struct Builder {
    edges: Vec<(usize, usize)>,
    next_id: usize,
    gadgets: Vec<GadgetTree>,
}

impl Builder {
    /// Hang a gadget tree off `root`, which must already have an id: the
    /// root gets `d - 2` leaves and two heavy children, each heavy an
    /// anchor plus `m + 1` leaves, each anchor `m + 2` leaves.  Heavies
    /// and anchors land on degree m + 3; the root's in-tree degree is `d`.
    fn attach_gadget(&mut self, root: usize, d: usize, m: usize) {
        let mut heavy = [0usize; 2];
        let mut anchor = [0usize; 2];
        for side in 0..2 {
            let h = self.fresh();
            let a = self.fresh();
            self.edges.push((root, h));
            self.edges.push((h, a));
            for _ in 0..m + 1 {
                let leaf = self.fresh();
                self.edges.push((h, leaf));
            }
            for _ in 0..m + 2 {
                let leaf = self.fresh();
                self.edges.push((a, leaf));
            }
            heavy[side] = h;
            anchor[side] = a;
        }
        for _ in 0..d - 2 {
            let leaf = self.fresh();
            self.edges.push((root, leaf));
        }
        self.gadgets.push(GadgetTree { root, heavy, anchor });
    }

    fn fresh(&mut self) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        id
    }
}

/// Stand-alone gadget tree with the root at id 0, for inspection: `d`
/// children on the root, leaf fan-outs sized for a reduction with `m`
/// edges.  The tree has 4m + d + 9 vertices.  Whenever d <= m + 3 — true
/// for every tree the reduction builds, where stitch edges top the root up
/// to total degree m + 3 — the heavy children qualify at the root and the
/// tree's strong transitivity number is exactly 3.
pub fn build_gadget_tree(d: usize, m: usize) -> Result<Graph, ReductionError> {
    if d < 2 {
        return Err(ReductionError::GadgetDegree { d });
    }
    let mut b = Builder { edges: Vec::new(), next_id: 1, gadgets: Vec::new() };
    b.attach_gadget(0, d, m);
    Ok(build_graph(b.next_id, &b.edges)?)
}

/// Build the decision instance for a source graph with at least one edge.
/// The source may be disconnected; the output is always connected and
/// chordal, with every root, clique vertex, heavy and anchor at degree
/// exactly m + 3.
pub fn reduce_3_coloring(g: &Graph) -> Result<ReductionInstance, ReductionError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m == 0 {
        return Err(ReductionError::NoEdges);
    }
    let source_edges = g.edges();
    let mut b = Builder {
        edges: Vec::new(),
        // sources, edge vertices, apex, edge roots, apex roots
        next_id: n + 2 * m + 4,
        gadgets: Vec::new(),
    };
    let edge_vertex = |j: usize| n + j;
    let apex = n + m;
    let edge_root = |j: usize| n + m + 1 + j;
    let apex_root = |level: usize| n + 2 * m + level;

    // clique on the edge vertices plus the apex
    for j in 0..m {
        for i in j + 1..m {
            b.edges.push((edge_vertex(j), edge_vertex(i)));
        }
        b.edges.push((edge_vertex(j), apex));
    }
    // stitch each edge vertex to its endpoints and its own root
    for (j, &(u, v)) in source_edges.iter().enumerate() {
        b.edges.push((edge_vertex(j), u));
        b.edges.push((edge_vertex(j), v));
        b.edges.push((edge_vertex(j), edge_root(j)));
    }
    for level in 1..=3 {
        b.edges.push((apex, apex_root(level)));
    }
    // gadgets, in the root order the id layout promises
    for v in 0..n {
        b.attach_gadget(v, m + 3 - g.degree(v), m);
    }
    for j in 0..m {
        b.attach_gadget(edge_root(j), m + 2, m);
    }
    for level in 1..=3 {
        b.attach_gadget(apex_root(level), m + 2, m);
    }

    let graph = build_graph(b.next_id, &b.edges)?;
    let inst = ReductionInstance {
        graph,
        k: m + 4,
        source_vertices: n,
        source_edges,
        gadgets: b.gadgets,
    };
    debug_assert!(inst.audit().is_ok(), "{:?}", inst.audit());
    Ok(inst)
}

impl ReductionInstance {
    /// Structural self-check: vertex count, uniform degree m + 3 on every
    /// root, clique, heavy and anchor vertex, the clique itself, chordality,
    /// and the neighbor-degree budgets the gadget trees are designed around
    /// (a root sees exactly two same-degree neighbors inside its own tree,
    /// and no internal vertex sees more than two neighbors at or above its
    /// own degree).
    pub fn audit(&self) -> Result<(), String> {
        let n = self.source_vertices;
        let m = self.source_edges.len();
        let g = &self.graph;
        let want = n * (5 * m + 12) + 5 * m * m + 25 * m + 34;
        if g.vertex_count() != want {
            return Err(format!("vertex count {} != {want}", g.vertex_count()));
        }
        if self.k != m + 4 {
            return Err(format!("target {} != {}", self.k, m + 4));
        }
        let mut heavyweight = vec![self.apex()];
        heavyweight.extend((0..m).map(|j| self.edge_vertex(j)));
        for t in &self.gadgets {
            heavyweight.push(t.root);
            heavyweight.extend(t.heavy);
            heavyweight.extend(t.anchor);
        }
        for &v in &heavyweight {
            if g.degree(v) != m + 3 {
                return Err(format!("vertex {v} has degree {} != {}", g.degree(v), m + 3));
            }
        }
        if g.max_degree() != m + 3 {
            return Err(format!("max degree {} != {}", g.max_degree(), m + 3));
        }
        for j in 0..m {
            for i in j + 1..m {
                if !g.has_edge(self.edge_vertex(j), self.edge_vertex(i)) {
                    return Err(format!("clique misses edge vertices {j} and {i}"));
                }
            }
            if !g.has_edge(self.edge_vertex(j), self.apex()) {
                return Err(format!("clique misses edge vertex {j} and the apex"));
            }
        }
        for t in &self.gadgets {
            // the two heavy children are the only tree-side neighbors that
            // can strongly dominate the root; its other tree neighbors are
            // leaves, so exactly two qualified ones must hang off the root
            let heavies_adjacent = g
                .neighbors(t.root)
                .iter()
                .filter(|&&w| t.heavy.contains(&w) && g.degree(w) >= m + 3)
                .count();
            let tree_leaves =
                g.neighbors(t.root).iter().filter(|&&w| g.degree(w) == 1).count();
            if heavies_adjacent != 2 {
                return Err(format!(
                    "root {} has {heavies_adjacent} qualified tree neighbors, wanted 2",
                    t.root
                ));
            }
            if 2 + tree_leaves > g.degree(t.root) {
                return Err(format!("root {} tree children overflow its degree", t.root));
            }
            // every internal vertex lives on a budget of at most two
            // neighbors of its own degree or higher
            let mut internals: Vec<usize> = Vec::new();
            internals.extend(t.heavy);
            internals.extend(t.anchor);
            for &hub in [t.root].iter().chain(t.heavy.iter()).chain(t.anchor.iter()) {
                internals.extend(g.neighbors(hub).iter().copied().filter(|&w| g.degree(w) == 1));
            }
            for &v in &internals {
                let at_or_above =
                    g.neighbors(v).iter().filter(|&&w| g.degree(w) >= g.degree(v)).count();
                if at_or_above > 2 {
                    return Err(format!(
                        "gadget vertex {v} has {at_or_above} neighbors at degree >= its own"
                    ));
                }
            }
        }
        if !is_chordal(g) {
            return Err("instance is not chordal".into());
        }
        // isolated source vertices keep their gadget trees as separate
        // components; otherwise the clique stitches everything together
        let mut touched = vec![false; n];
        for &(u, v) in &self.source_edges {
            touched[u] = true;
            touched[v] = true;
        }
        let all_touched = touched.iter().all(|&t| t);
        if g.is_connected() != all_touched {
            return Err(format!(
                "connectivity mismatch: connected={}, every source vertex on an edge={}",
                g.is_connected(),
                all_touched
            ));
        }
        Ok(())
    }
}

/// Turn a proper 3-coloring of the source into a strong transitive
/// partition of the instance with exactly k classes: sources take their
/// colors, each edge root takes the color its endpoints leave free, the
/// apex roots pin classes 1..3, edge vertex j takes class 4 + j, the apex
/// takes the top class, and gadget internals sit at 1 except that a root
/// in class 3 lifts its second heavy child to class 2.
pub fn coloring_to_partition(
    inst: &ReductionInstance,
    coloring: &[usize],
) -> Result<VertexPartition, ReductionError> {
    let n = inst.source_vertices;
    if coloring.len() != n {
        return Err(ReductionError::ColoringLength { got: coloring.len(), want: n });
    }
    for (vertex, &color) in coloring.iter().enumerate() {
        if !(1..=3).contains(&color) {
            return Err(ReductionError::BadColor { vertex, color });
        }
    }
    for &(u, v) in &inst.source_edges {
        if coloring[u] == coloring[v] {
            return Err(ReductionError::ImproperColoring { u, v, color: coloring[u] });
        }
    }
    let mut assignment = vec![1usize; inst.graph.vertex_count()];
    let root_class = |assignment: &mut Vec<usize>, root: usize, q: usize| {
        assignment[root] = q;
        if q == 3 {
            let t = inst.gadget_of_root(root).expect("every root has a gadget");
            assignment[t.heavy[1]] = 2;
        }
    };
    for v in 0..n {
        root_class(&mut assignment, v, coloring[v]);
    }
    for (j, &(u, v)) in inst.source_edges.iter().enumerate() {
        root_class(&mut assignment, inst.edge_root(j), 6 - coloring[u] - coloring[v]);
        assignment[inst.edge_vertex(j)] = 4 + j;
    }
    for level in 1..=3 {
        root_class(&mut assignment, inst.apex_root(level), level);
    }
    assignment[inst.apex()] = inst.k;
    Ok(VertexPartition::from_assignment(&assignment))
}

/// Recover a proper 3-coloring of the source from any valid strong
/// transitive partition of the instance with k classes.  Validity forces
/// the clique to occupy all classes above 3 and every source root to sit
/// in 1..=3; each edge vertex then needs its two endpoints and its edge
/// root spread over three distinct classes, so reading off the source
/// classes yields a proper coloring.
pub fn partition_to_coloring(
    inst: &ReductionInstance,
    partition: &VertexPartition,
) -> Result<Vec<usize>, ReductionError> {
    match verify_strong_transitive(&inst.graph, partition) {
        Ok(verdict) if verdict.is_valid() => {}
        _ => return Err(ReductionError::InvalidPartition),
    }
    if partition.size() != inst.k {
        return Err(ReductionError::WrongClassCount { got: partition.size(), need: inst.k });
    }
    let assignment = partition
        .assignment(inst.graph.vertex_count())
        .map_err(|_| ReductionError::InvalidPartition)?;
    let mut coloring = Vec::with_capacity(inst.source_vertices);
    for v in 0..inst.source_vertices {
        let color = assignment[v];
        if !(1..=3).contains(&color) {
            return Err(ReductionError::BadColor { vertex: v, color });
        }
        coloring.push(color);
    }
    for &(u, v) in &inst.source_edges {
        if coloring[u] == coloring[v] {
            return Err(ReductionError::ImproperColoring { u, v, color: coloring[u] });
        }
    }
    Ok(coloring)
}
