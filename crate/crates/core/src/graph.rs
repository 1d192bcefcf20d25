//! Simple undirected graphs with sorted adjacency lists, plus the handful of
//! structure checks and generators the solvers need.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("graph is disconnected: vertex {unreached} is unreachable")]
    Disconnected { unreached: usize },
}

/// Undirected simple graph on vertices 0..n.  Parallel edges in the input
/// collapse to one; self-loops are rejected outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>, // each list sorted ascending, no duplicates
    deg: Vec<usize>,      // cached; deg[v] == adj[v].len()
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.deg[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push(w);
                }
            }
        }
        reached == self.n
    }

    /// Consistency check used by tests: adjacency symmetric, sorted, free of
    /// duplicates and loops, degree cache and edge count accurate.
    pub fn audit(&self) -> Result<(), String> {
        if self.adj.len() != self.n || self.deg.len() != self.n {
            return Err("adjacency/degree tables sized differently from n".into());
        }
        let mut half_edges = 0usize;
        for u in 0..self.n {
            let list = &self.adj[u];
            if self.deg[u] != list.len() {
                return Err(format!("cached degree of {u} is stale"));
            }
            half_edges += list.len();
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("adjacency of {u} not strictly ascending"));
                }
            }
            for &v in list {
                if v >= self.n {
                    return Err(format!("neighbour {v} of {u} out of range"));
                }
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(format!("edge ({u}, {v}) recorded in one direction only"));
                }
            }
        }
        if half_edges != 2 * self.m {
            return Err("edge count disagrees with adjacency lists".into());
        }
        Ok(())
    }
}

/// Build a graph from an edge list.  Duplicate edges are merged, so the
/// stored edge count may be smaller than `edges.len()`.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::EndpointOutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut m = 0;
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
        m += list.len();
    }
    let deg = adj.iter().map(Vec::len).collect();
    Ok(Graph { n, m: m / 2, adj, deg })
}

/// Breadth-first traversal from a root, recorded three ways: visit order,
/// parent pointers (None at the root), and rank = position in the order.
#[derive(Debug, Clone)]
pub struct BfsOrdering {
    pub root: usize,
    pub order: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub rank: Vec<usize>,
}

/// BFS over the whole graph; ties explored in ascending id order because the
/// adjacency lists are sorted.  Errors if some vertex is unreachable.
pub fn bfs_ordering(g: &Graph, root: usize) -> Result<BfsOrdering, GraphError> {
    let n = g.vertex_count();
    if root >= n {
        return Err(GraphError::VertexOutOfRange { v: root, n });
    }
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut rank = vec![usize::MAX; n];
    order.push(root);
    rank[root] = 0;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if rank[w] == usize::MAX && w != root {
                rank[w] = order.len();
                parent[w] = Some(u);
                order.push(w);
            }
        }
    }
    if order.len() != n {
        let unreached = (0..n).find(|&v| rank[v] == usize::MAX).unwrap();
        return Err(GraphError::Disconnected { unreached });
    }
    Ok(BfsOrdering { root, order, parent, rank })
}

pub fn is_tree(g: &Graph) -> bool {
    g.vertex_count() >= 1 && g.edge_count() == g.vertex_count() - 1 && g.is_connected()
}

/// Lexicographic BFS via partition refinement.  Returns the visit order.
/// Each cell of the refinement is an interval of `seq`; visiting a vertex
/// promotes its unvisited neighbours to a fresh sub-cell at the front of
/// their cell, which costs O(deg) per visit, O(n + m) overall.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seq: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    // cells[c] = (start, end) interval in seq; per-vertex cell id
    let mut cells: Vec<(usize, usize)> = vec![(0, n)];
    let mut cell_of = vec![0usize; n];
    // split bookkeeping: the sub-cell opened for cell c during round i
    let mut split_round = vec![usize::MAX];
    let mut split_target = vec![usize::MAX];

    for i in 0..n {
        let u = seq[i];
        let cu = cell_of[u];
        cells[cu].0 = i + 1; // u leaves its cell
        for &w in g.neighbors(u) {
            if pos[w] <= i {
                continue; // already visited
            }
            let c = cell_of[w];
            if split_round[c] != i {
                // open a new empty sub-cell at the current front of c
                let nc = cells.len();
                cells.push((cells[c].0, cells[c].0));
                split_round.push(usize::MAX);
                split_target.push(usize::MAX);
                split_round[c] = i;
                split_target[c] = nc;
            }
            let nc = split_target[c];
            // swap w to the front of c, then grow nc over that slot
            let front = cells[c].0;
            let other = seq[front];
            seq.swap(pos[w], front);
            pos[other] = pos[w];
            pos[w] = front;
            cells[c].0 += 1;
            cells[nc].1 += 1;
            cell_of[w] = nc;
        }
    }
    seq
}

/// Perfect elimination ordering when the graph is chordal, None otherwise.
/// The reverse of a lex-BFS order is a PEO exactly for chordal graphs; the
/// candidate is verified with the deferred-subset test, so a `Some` answer
/// is always a genuine certificate.
pub fn chordal_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut elim = lex_bfs(g);
    elim.reverse();
    let mut when = vec![0usize; n];
    for (i, &v) in elim.iter().enumerate() {
        when[v] = i;
    }
    // Deferred checks: each v demands that its later neighbourhood minus its
    // earliest later neighbour u shows up in N(u).  Total demand size <= m.
    let mut demands: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut marked = vec![false; n];
    for &v in &elim {
        // distinct demands only: several predecessors may demand the same w
        let mut missing = 0usize;
        for &d in &demands[v] {
            if !marked[d] {
                marked[d] = true;
                missing += 1;
            }
        }
        if missing > 0 {
            for &w in g.neighbors(v) {
                if marked[w] {
                    missing -= 1;
                }
            }
        }
        for &d in &demands[v] {
            marked[d] = false;
        }
        if missing > 0 {
            return None;
        }
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| when[w] > when[v])
            .collect();
        if let Some(&u) = later.iter().min_by_key(|&&w| when[w]) {
            for &w in &later {
                if w != u {
                    demands[u].push(w);
                }
            }
        }
    }
    Some(elim)
}

pub fn is_chordal(g: &Graph) -> bool {
    chordal_elimination_ordering(g).is_some()
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

pub fn gen_path(n: usize) -> Graph {
    assert!(n >= 1);
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build_graph(n, &edges).unwrap()
}

/// n = 1 gives a single vertex and n = 2 a single edge; proper cycles start
/// at n = 3.
pub fn gen_cycle(n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n >= 2 {
        edges.push((n - 1, 0));
    }
    build_graph(n, &edges).unwrap()
}

pub fn gen_complete(n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build_graph(n, &edges).unwrap()
}

/// Parts are 0..a and a..a+b.
pub fn gen_complete_bipartite(a: usize, b: usize) -> Graph {
    assert!(a >= 1 && b >= 1);
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    build_graph(a + b, &edges).unwrap()
}

/// Vertex 0 is the centre, joined to each of the n-1 leaves.
pub fn gen_star(n: usize) -> Graph {
    assert!(n >= 1);
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    build_graph(n, &edges).unwrap()
}

/// Uniform random labelled tree via a Prüfer sequence, decoded with the
/// usual two-pointer scan.
pub fn gen_random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return build_graph(1, &[]).unwrap();
    }
    if n == 2 {
        return build_graph(2, &[(0, 1)]).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &a in &code {
        degree[a] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &a in &code {
        edges.push((leaf, a));
        degree[a] -= 1;
        if degree[a] == 1 && a < ptr {
            leaf = a;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    build_graph(n, &edges).unwrap()
}

/// Random split graph: a clique on a random subset, an independent set on
/// the rest, and random clique/independent cross edges.  The clique size is
/// capped so the total edge count stays linear in n, which keeps large
/// instances benchable.
pub fn gen_random_split(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 64.max(8 * n);
    let mut cap = 1;
    while cap < n && (cap + 1) * cap / 2 <= budget {
        cap += 1;
    }
    let s = rng.gen_range(1..=cap);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let (clique, rest) = ids.split_at(s);
    let mut edges = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            edges.push((clique[i], clique[j]));
        }
    }
    let possible = s * rest.len();
    if possible > 0 {
        let want = rng.gen_range(0..=possible.min(2 * n));
        if want * 2 >= possible {
            // dense cross wiring: enumerate and sample without replacement
            let mut pairs = Vec::with_capacity(possible);
            for &c in clique {
                for &r in rest {
                    pairs.push((c, r));
                }
            }
            pairs.shuffle(&mut rng);
            edges.extend(pairs.into_iter().take(want));
        } else {
            let mut chosen = HashSet::new();
            while chosen.len() < want {
                let c = clique[rng.gen_range(0..s)];
                let r = rest[rng.gen_range(0..rest.len())];
                if chosen.insert((c, r)) {
                    edges.push((c, r));
                }
            }
        }
    }
    build_graph(n, &edges).unwrap()
}

/// Erdős–Rényi G(n, p).
pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!(n >= 1);
    assert!((0.0..=1.0).contains(&p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build_graph(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_p3() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), &[1, 2, 1]);
        assert_eq!(g.edge_count(), 2);
        g.audit().unwrap();
    }

    #[test]
    fn builds_k32_with_expected_degrees() {
        let g = gen_complete_bipartite(3, 2);
        assert_eq!(g.degrees(), &[2, 2, 2, 3, 3]);
        assert_eq!(g.edge_count(), 6);
        g.audit().unwrap();
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = build_graph(4, &[(0, 1), (0, 1), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            build_graph(3, &[(0, 3)]),
            Err(GraphError::EndpointOutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(build_graph(3, &[(1, 1)]), Err(GraphError::SelfLoop { v: 1 }));
    }

    #[test]
    fn bfs_on_p3_from_end() {
        let g = gen_path(3);
        let b = bfs_ordering(&g, 0).unwrap();
        assert_eq!(b.order, vec![0, 1, 2]);
        assert_eq!(b.parent, vec![None, Some(0), Some(1)]);
        assert_eq!(b.rank, vec![0, 1, 2]);
    }

    #[test]
    fn bfs_star_parents_all_centre() {
        let g = gen_star(6);
        let b = bfs_ordering(&g, 0).unwrap();
        for v in 1..6 {
            assert_eq!(b.parent[v], Some(0));
        }
    }

    #[test]
    fn bfs_reports_unreached_vertex() {
        let g = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        match bfs_ordering(&g, 0) {
            Err(GraphError::Disconnected { unreached }) => assert_eq!(unreached, 2),
            other => panic!("expected Disconnected, got {other:?}"),
        }
    }

    #[test]
    fn bfs_parents_of_tree_recover_its_edges() {
        for seed in 0..30 {
            let g = gen_random_tree(1 + (seed as usize * 7) % 40, seed);
            let b = bfs_ordering(&g, 0).unwrap();
            let mut edges: Vec<(usize, usize)> = (0..g.vertex_count())
                .filter_map(|v| b.parent[v].map(|p| (p.min(v), p.max(v))))
                .collect();
            edges.sort_unstable();
            assert_eq!(edges, g.edges());
        }
    }

    #[test]
    fn tree_recognition() {
        assert!(is_tree(&gen_path(7)));
        assert!(is_tree(&gen_star(5)));
        assert!(is_tree(&build_graph(1, &[]).unwrap()));
        assert!(!is_tree(&gen_cycle(4)));
        assert!(!is_tree(&build_graph(4, &[(0, 1), (2, 3)]).unwrap()));
    }

    /// Brute-force chordality: some induced subgraph on >= 4 vertices is a
    /// cycle iff the graph is not chordal.
    fn chordal_by_brute_force(g: &Graph) -> bool {
        let n = g.vertex_count();
        'subset: for mask in 0u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.len() < 4 {
                continue;
            }
            for &v in &verts {
                let d = g.neighbors(v).iter().filter(|&&w| mask >> w & 1 == 1).count();
                if d != 2 {
                    continue 'subset;
                }
            }
            // all degrees 2; connected <=> single cycle
            let mut seen = vec![false; n];
            let mut stack = vec![verts[0]];
            seen[verts[0]] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if mask >> w & 1 == 1 && !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            if count == verts.len() {
                return false;
            }
        }
        true
    }

    #[test]
    fn chordality_examples() {
        assert!(!is_chordal(&gen_cycle(4)));
        assert!(!is_chordal(&gen_cycle(6)));
        assert!(is_chordal(&gen_complete(5)));
        assert!(is_chordal(&gen_path(9)));
        assert!(is_chordal(&gen_random_tree(40, 3)));
        let peo = chordal_elimination_ordering(&gen_complete(4)).unwrap();
        assert_eq!(peo.len(), 4);
    }

    #[test]
    fn chordality_matches_brute_force_on_small_graphs() {
        let mut checked = 0;
        for seed in 0..400u64 {
            let n = 1 + (seed as usize % 8);
            let p = [0.15, 0.3, 0.5, 0.7, 0.9][seed as usize % 5];
            let g = gen_random_graph(n, p, seed);
            assert_eq!(is_chordal(&g), chordal_by_brute_force(&g), "seed {seed}");
            checked += 1;
        }
        assert_eq!(checked, 400);
    }

    #[test]
    fn generators_are_deterministic_and_well_formed() {
        for seed in 0..20 {
            let a = gen_random_tree(50, seed);
            let b = gen_random_tree(50, seed);
            assert_eq!(a, b);
            assert!(is_tree(&a));
            let s1 = gen_random_split(30, seed);
            let s2 = gen_random_split(30, seed);
            assert_eq!(s1, s2);
            s1.audit().unwrap();
            let r = gen_random_graph(12, 0.4, seed);
            r.audit().unwrap();
        }
    }

    #[test]
    fn cycle_and_star_shapes() {
        assert_eq!(gen_cycle(1).edge_count(), 0);
        assert_eq!(gen_cycle(2).edge_count(), 1);
        assert_eq!(gen_cycle(5).edge_count(), 5);
        assert_eq!(gen_star(5).degrees(), &[4, 1, 1, 1, 1]);
        assert_eq!(gen_complete(6).edge_count(), 15);
    }
}
