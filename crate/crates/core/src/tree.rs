//! Linear-time solver for trees.
//!
//! For an edge (x, u) let b(u -> x) be the largest class u can reach in a
//! strong transitive partition of u's branch away from x, with every degree
//! comparison made against whole-tree degrees.  The largest class x itself
//! can reach in the whole tree is then determined by a greedy chain over the
//! b-values of its qualified neighbours (those with degree at least x's):
//! walking those values in ascending order, each value that can still top
//! the chain extends it by one, and x reaches chain length + 1.
//!
//! A bottom-up pass over a rooted version computes b(v -> parent) for every
//! vertex.  The reverse values b(parent -> v) come from a top-down pass: the
//! parent's own number drops by exactly one when v's value is deleted from
//! the parent's list iff v is "required" there, and the required flags for
//! all children of a focus vertex are read off its sorted value list in one
//! scan.  Two linear passes therefore score every vertex, and the maximum
//! over vertices is the strong transitivity number of the tree.

use crate::graph::{bfs_ordering, is_tree, Graph};
use crate::verifier::VertexPartition;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("input graph is not a tree")]
    NotATree,
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("target class {target} exceeds the attainable maximum {limit} for this vertex")]
    TargetOutOfRange { target: usize, limit: usize },
    #[error("chain value {z} is not attainable from {len} qualified values")]
    InconsistentFlags { z: usize, len: usize },
}

/// Branch values of the qualified neighbours of a focus vertex, ascending,
/// with the owning neighbour ids parallel to the values.
///
/// Values are stored clamped at the input list length: every comparison the
/// greedy chain, the required-flag scan and the witness builder make uses a
/// threshold of at most that length, so anything larger behaves identically
/// and clamping lets a counting sort keep the whole pass linear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualifiedValueList {
    pub values: Vec<usize>,
    pub owners: Vec<usize>,
}

/// Filter `neighbor_values` down to the neighbours whose degree is at least
/// deg(x) and sort them by (clamped) value via a counting sort.  Owners with
/// equal values keep their input order, which is ascending id everywhere in
/// this crate.
pub fn qualified_values(
    g: &Graph,
    x: usize,
    neighbor_values: &[(usize, usize)],
) -> QualifiedValueList {
    let cnt = neighbor_values.len();
    let dx = g.degree(x);
    let mut buckets = vec![0usize; cnt + 1];
    let mut kept = 0;
    for &(u, val) in neighbor_values {
        if g.degree(u) >= dx {
            debug_assert!(val >= 1);
            buckets[val.min(cnt)] += 1;
            kept += 1;
        }
    }
    let mut next = 0;
    for b in buckets.iter_mut() {
        let here = *b;
        *b = next;
        next += here;
    }
    let mut values = vec![0usize; kept];
    let mut owners = vec![0usize; kept];
    for &(u, val) in neighbor_values {
        if g.degree(u) >= dx {
            let cv = val.min(cnt);
            let p = buckets[cv];
            buckets[cv] += 1;
            values[p] = cv;
            owners[p] = u;
        }
    }
    QualifiedValueList { values, owners }
}

/// Length of the greedy chain over an ascending value list, plus one: the
/// c-th chain link needs a value of at least c.  This is the largest class
/// the focus vertex can reach given those branch values.
pub fn strong_transitive_number(q: &QualifiedValueList) -> usize {
    let mut c = 1;
    for &l in &q.values {
        if l >= c {
            c += 1;
        }
    }
    c
}

/// For each qualified value, decide whether deleting it would shrink the
/// greedy chain: `true` means the focus vertex's number drops by one without
/// that neighbour.  `z` must be the chain number of the same list.
///
/// With n values and chain number z: when n = z - 1 every value is needed;
/// otherwise the first n - z + 1 values are never the difference-maker, and
/// scanning positions t = n - z + 2 ..= n, all values from the first
/// position where value[t-1] falls below t - (n - z + 1) onwards are needed.
pub fn mark_required(z: usize, q: &QualifiedValueList) -> Result<Vec<bool>, TreeError> {
    let n = q.values.len();
    if z == 0 || z > n + 1 {
        return Err(TreeError::InconsistentFlags { z, len: n });
    }
    debug_assert_eq!(z, strong_transitive_number(q), "z must match the list's chain number");
    let mut flags = vec![false; n];
    if z == n + 1 {
        flags.fill(true);
        return Ok(flags);
    }
    let lead = n - z + 1;
    let mut t = lead + 1;
    while t <= n && q.values[t - 2] >= t - lead {
        t += 1;
    }
    for f in flags.iter_mut().skip(t - 1) {
        *f = true;
    }
    Ok(flags)
}

/// Everything the two passes compute, rooted at `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeTables {
    pub root: usize,
    /// BFS order from the root; processing it in reverse visits children
    /// before parents.
    pub order: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// b(v -> parent): the largest class v reaches inside its own subtree,
    /// under whole-tree degree comparisons.  At the root this is its final
    /// score, since its "subtree" is the whole tree.
    pub mstr: Vec<usize>,
    /// Final per-vertex scores; filled by `top_down`.
    pub st: Vec<usize>,
    /// required[v]: deleting v's subtree value from its parent's list drops
    /// the parent's score by one.  Filled by `top_down`; false at the root.
    pub required: Vec<bool>,
}

fn subtree_entries(
    g: &Graph,
    v: usize,
    parent: Option<usize>,
    mstr: &[usize],
) -> Vec<(usize, usize)> {
    let mut vals = Vec::with_capacity(g.degree(v));
    for &w in g.neighbors(v) {
        if Some(w) != parent {
            vals.push((w, mstr[w]));
        }
    }
    vals
}

/// First pass: subtree scores for every vertex, children before parents.
pub fn bottom_up(g: &Graph, root: usize) -> Result<TreeTables, TreeError> {
    if !is_tree(g) {
        return Err(TreeError::NotATree);
    }
    let n = g.vertex_count();
    if root >= n {
        return Err(TreeError::VertexOutOfRange { v: root, n });
    }
    let b = bfs_ordering(g, root).expect("trees are connected");
    let mut mstr = vec![1usize; n];
    for &v in b.order.iter().rev() {
        let vals = subtree_entries(g, v, b.parent[v], &mstr);
        let q = qualified_values(g, v, &vals);
        mstr[v] = strong_transitive_number(&q);
    }
    let mut st = vec![0usize; n];
    st[root] = mstr[root];
    Ok(TreeTables {
        root,
        order: b.order,
        parent: b.parent,
        mstr,
        st,
        required: vec![false; n],
    })
}

/// Second pass: push parent-side branch values down the tree, scoring every
/// vertex.  The value a child x receives is st(parent) when x is not
/// required at the parent, st(parent) - 1 when it is.
pub fn top_down(g: &Graph, t: &mut TreeTables) {
    let root = t.root;
    let root_vals = subtree_entries(g, root, None, &t.mstr);
    let q = qualified_values(g, root, &root_vals);
    let flags = mark_required(t.st[root], &q).expect("bottom_up output is consistent");
    for (i, &owner) in q.owners.iter().enumerate() {
        t.required[owner] = flags[i];
    }
    for idx in 1..t.order.len() {
        let x = t.order[idx];
        let y = t.parent[x].expect("only the root lacks a parent");
        let pv = t.st[y] - usize::from(t.required[x]);
        debug_assert!(pv >= 1);
        let mut vals = Vec::with_capacity(g.degree(x));
        for &w in g.neighbors(x) {
            vals.push(if w == y { (w, pv) } else { (w, t.mstr[w]) });
        }
        let q = qualified_values(g, x, &vals);
        t.st[x] = strong_transitive_number(&q);
        let flags = mark_required(t.st[x], &q).expect("pass output is consistent");
        for (i, &owner) in q.owners.iter().enumerate() {
            if owner != y {
                t.required[owner] = flags[i];
            }
        }
    }
}

/// Strong transitivity number of a tree with a verified-shape witness: both
/// passes score every vertex, the best vertex is realised at its score.
pub fn tr_st_tree(g: &Graph) -> Result<(usize, VertexPartition), TreeError> {
    let mut t = bottom_up(g, 0)?;
    top_down(g, &mut t);
    let mut best = 0;
    for v in 1..g.vertex_count() {
        if t.st[v] > t.st[best] {
            best = v;
        }
    }
    let k = t.st[best];
    let witness = witness_partition_tree(g, best, k)?;
    Ok((k, witness))
}

/// Build a strong transitive partition of exactly `target` classes that
/// puts `v` in the top class.  The tree is re-rooted at v; v's chain picks
/// one qualified child per class below the target, each child realises its
/// class inside its own subtree the same way, and every untouched vertex
/// lands in class 1.
pub fn witness_partition_tree(
    g: &Graph,
    v: usize,
    target: usize,
) -> Result<VertexPartition, TreeError> {
    let n = g.vertex_count();
    if v >= n {
        return Err(TreeError::VertexOutOfRange { v, n });
    }
    let t = bottom_up(g, v)?;
    let attainable = t.mstr[v];
    if target == 0 || target > attainable {
        return Err(TreeError::TargetOutOfRange { target, limit: attainable });
    }
    let mut assignment = vec![1usize; n];
    let mut stack = vec![(v, target)];
    while let Some((x, c)) = stack.pop() {
        assignment[x] = c;
        if c == 1 {
            continue;
        }
        let vals = subtree_entries(g, x, t.parent[x], &t.mstr);
        let q = qualified_values(g, x, &vals);
        let mut need = 1;
        for (i, &val) in q.values.iter().enumerate() {
            if need == c {
                break;
            }
            if val >= need {
                stack.push((q.owners[i], need));
                need += 1;
            }
        }
        debug_assert_eq!(need, c, "the chain below class {c} must fill up");
    }
    Ok(VertexPartition::from_assignment(&assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, gen_path, gen_random_tree, gen_star};
    use crate::oracle::{brute_st_number, brute_tr_st};
    use crate::verifier::verify_strong_transitive;

    fn ql(values: Vec<usize>, owners: Vec<usize>) -> QualifiedValueList {
        QualifiedValueList { values, owners }
    }

    #[test]
    fn qualified_values_filters_and_sorts() {
        let p6 = gen_path(6);
        // internal vertex 2 (deg 2), neighbours 1 and 3 (deg 2): both stay
        let q = qualified_values(&p6, 2, &[(1, 1), (3, 2)]);
        assert_eq!(q, ql(vec![1, 2], vec![1, 3]));
        // the degree-1 end vertex does not qualify at its degree-2 neighbour
        let q = qualified_values(&p6, 1, &[(0, 1), (2, 2)]);
        assert_eq!(q, ql(vec![2], vec![2]));
        // star centre: no neighbour reaches its degree
        let star = gen_star(5);
        let entries: Vec<(usize, usize)> = (1..5).map(|v| (v, 1)).collect();
        assert_eq!(qualified_values(&star, 0, &entries), ql(vec![], vec![]));
        // leaf 5 of P_6 keeps its only neighbour
        let q = qualified_values(&p6, 5, &[(4, 2)]);
        assert_eq!(q, ql(vec![1], vec![4])); // clamped at list length 1
    }

    #[test]
    fn greedy_chain_examples() {
        assert_eq!(strong_transitive_number(&ql(vec![], vec![])), 1);
        assert_eq!(strong_transitive_number(&ql(vec![1], vec![0])), 2);
        assert_eq!(strong_transitive_number(&ql(vec![1, 1, 2], vec![0, 1, 2])), 3);
        assert_eq!(strong_transitive_number(&ql(vec![1, 1, 1], vec![0, 1, 2])), 2);
        assert_eq!(strong_transitive_number(&ql(vec![1, 2, 2], vec![0, 1, 2])), 3);
    }

    #[test]
    fn required_flag_examples() {
        let f = |z: usize, vals: Vec<usize>| {
            let owners = (0..vals.len()).collect();
            mark_required(z, &ql(vals, owners)).unwrap()
        };
        assert_eq!(f(3, vec![1, 2]), vec![true, true]);
        assert_eq!(f(2, vec![1, 1, 1]), vec![false, false, false]);
        assert_eq!(f(3, vec![1, 1, 2]), vec![false, false, true]);
        assert_eq!(f(3, vec![1, 2, 2]), vec![false, false, false]);
        assert_eq!(f(4, vec![1, 1, 3, 3]), vec![false, false, true, true]);
        assert_eq!(f(1, vec![]), Vec::<bool>::new());
        assert_eq!(
            mark_required(4, &ql(vec![1, 2], vec![0, 1])),
            Err(TreeError::InconsistentFlags { z: 4, len: 2 })
        );
    }

    /// Spot-check the flag semantics against brute force on a tree whose
    /// focus vertex has qualified subtree values [1, 1, 2]: vertex 0 with
    /// three degree-3 children, the third owning the value-2 subtree.
    #[test]
    fn required_flags_match_deletion_on_explicit_tree() {
        let g = build_graph(
            12,
            &[
                (0, 1), (1, 2), (1, 3),
                (0, 4), (4, 5), (4, 6),
                (0, 7), (7, 8), (8, 9), (8, 10), (7, 11),
            ],
        )
        .unwrap();
        let t = bottom_up(&g, 0).unwrap();
        assert_eq!(t.st[0], 3);
        assert_eq!(brute_st_number(&g, 0).unwrap(), 3);
        let vals = subtree_entries(&g, 0, None, &t.mstr);
        let q = qualified_values(&g, 0, &vals);
        assert_eq!(q.values, vec![1, 1, 2]);
        assert_eq!(q.owners, vec![1, 4, 7]);
        assert_eq!(mark_required(3, &q).unwrap(), vec![false, false, true]);
    }

    #[test]
    fn scores_on_small_trees() {
        let p3 = gen_path(3);
        let mut t = bottom_up(&p3, 0).unwrap();
        assert_eq!(t.mstr, vec![2, 1, 1]);
        top_down(&p3, &mut t);
        assert_eq!(t.st, vec![2, 1, 2]);

        let p6 = gen_path(6);
        let mut t = bottom_up(&p6, 0).unwrap();
        top_down(&p6, &mut t);
        assert_eq!(t.st, vec![2, 2, 3, 3, 2, 2]);

        let star = gen_star(5);
        let mut t = bottom_up(&star, 0).unwrap();
        assert_eq!(t.st[0], 1);
        top_down(&star, &mut t);
        assert_eq!(t.st, vec![1, 2, 2, 2, 2]);

        let single = build_graph(1, &[]).unwrap();
        let mut t = bottom_up(&single, 0).unwrap();
        top_down(&single, &mut t);
        assert_eq!(t.st, vec![1]);
    }

    #[test]
    fn solver_answers_on_fixed_trees() {
        assert_eq!(tr_st_tree(&gen_path(3)).unwrap().0, 2);
        for n in 6..=12 {
            assert_eq!(tr_st_tree(&gen_path(n)).unwrap().0, 3, "P_{n}");
        }
        assert_eq!(tr_st_tree(&gen_star(9)).unwrap().0, 2);
        assert_eq!(tr_st_tree(&build_graph(1, &[]).unwrap()).unwrap().0, 1);
        assert_eq!(tr_st_tree(&build_graph(2, &[(0, 1)]).unwrap()).unwrap().0, 2);
    }

    #[test]
    fn non_trees_are_rejected() {
        let c4 = crate::graph::gen_cycle(4);
        assert_eq!(tr_st_tree(&c4), Err(TreeError::NotATree));
        assert_eq!(bottom_up(&c4, 0).err(), Some(TreeError::NotATree));
        let forest = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(tr_st_tree(&forest), Err(TreeError::NotATree));
    }

    #[test]
    fn witnesses_verify_and_respect_targets() {
        let p6 = gen_path(6);
        let w = witness_partition_tree(&p6, 2, 3).unwrap();
        assert_eq!(w.size(), 3);
        assert!(verify_strong_transitive(&p6, &w).unwrap().is_valid());
        assert!(w.class(3).contains(&2));
        // any vertex at target 1: everything collapses into one class
        let w1 = witness_partition_tree(&p6, 4, 1).unwrap();
        assert_eq!(w1.size(), 1);
        assert_eq!(
            witness_partition_tree(&p6, 0, 3),
            Err(TreeError::TargetOutOfRange { target: 3, limit: 2 })
        );
    }

    #[test]
    fn matches_oracle_on_random_trees() {
        for seed in 0..50u64 {
            let n = 2 + (seed as usize % 11);
            let g = gen_random_tree(n, seed);
            let mut t = bottom_up(&g, 0).unwrap();
            top_down(&g, &mut t);
            let (k, w) = tr_st_tree(&g).unwrap();
            assert!(verify_strong_transitive(&g, &w).unwrap().is_valid());
            assert_eq!(k, brute_tr_st(&g).unwrap().0, "seed {seed}");
            for v in 0..n {
                assert!(t.st[v] <= g.degree(v) + 1);
                assert_eq!(t.st[v], brute_st_number(&g, v).unwrap(), "seed {seed} vertex {v}");
            }
            assert_eq!(k, t.st.iter().copied().max().unwrap());
        }
    }

    #[test]
    fn passes_are_deterministic() {
        let g = gen_random_tree(200, 9);
        let mut a = bottom_up(&g, 0).unwrap();
        top_down(&g, &mut a);
        let mut b = bottom_up(&g, 0).unwrap();
        top_down(&g, &mut b);
        assert_eq!(a, b);
        assert_eq!(tr_st_tree(&g).unwrap(), tr_st_tree(&g).unwrap());
    }
}
