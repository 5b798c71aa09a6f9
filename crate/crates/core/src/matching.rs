//! Maximum matchings: Hopcroft–Karp for bipartite graphs, Edmonds' blossom
//! contraction for general graphs, and the predicates built on them.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

const NONE: usize = usize::MAX;

/// A matching stored as a partner table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    /// Builds a matching from pairs; panics if two pairs share a vertex.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut m = Self::empty(n);
        for (u, v) in pairs {
            assert!(m.mate[u].is_none() && m.mate[v].is_none() && u != v);
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    /// Pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    pub fn matched_vertices(&self) -> VertexSet {
        VertexSet::from_members(
            self.mate.len(),
            (0..self.mate.len()).filter(|&v| self.mate[v].is_some()),
        )
    }

    /// Every pair is an edge of `g` and the partner table is symmetric.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.mate.len() == g.order()
            && self.mate.iter().enumerate().all(|(u, m)| match *m {
                None => true,
                Some(v) => v < g.order() && self.mate[v] == Some(u) && g.has_edge(u, v),
            })
    }
}

/// Hopcroft–Karp on an explicit bipartite adjacency (`left[i]` lists right
/// indices in ascending order). Returns the left-side partner table.
pub(crate) fn hopcroft_karp(left: &[Vec<usize>], n_right: usize) -> Vec<usize> {
    let n_left = left.len();
    let mut mate_l = vec![NONE; n_left];
    let mut mate_r = vec![NONE; n_right];
    let mut dist = vec![0usize; n_left];
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if mate_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &r in &left[u] {
                match mate_r[r] {
                    NONE => found = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; n_left];
        for u in 0..n_left {
            if mate_l[u] == NONE {
                augment_layered(u, left, &mut mate_l, &mut mate_r, &mut dist, &mut cursor);
            }
        }
    }
    mate_l
}

// Iterative DFS along the BFS layers; returns whether `root` was augmented.
fn augment_layered(
    root: usize,
    left: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if cursor[u] == left[u].len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let r = left[u][cursor[u]];
        let w = mate_r[r];
        if w == NONE {
            // flip the path recorded on the stack
            let mut r = r;
            while let Some(u) = stack.pop() {
                let prev = mate_l[u];
                mate_l[u] = r;
                mate_r[r] = u;
                r = prev;
            }
            return true;
        }
        if dist[w] != usize::MAX && dist[w] == dist[u] + 1 {
            stack.push(w);
        } else {
            cursor[u] += 1;
        }
    }
    false
}

/// Maximum matching of a bipartite graph with the given sides.
pub fn max_matching_bipartite(g: &Graph, left: &VertexSet, right: &VertexSet) -> Result<Matching> {
    let left = g.adopt(left)?;
    let right = g.adopt(right)?;
    if let Some(v) = left.intersection(&right).first() {
        return Err(Error::Overlap(v));
    }
    if let Some(v) = left.union(&right).complement().first() {
        return Err(Error::precondition(alloc::format!(
            "vertex {v} is in neither side of the bipartition"
        )));
    }
    for (u, v) in g.edges() {
        if left.contains(u) == left.contains(v) {
            return Err(Error::InvalidPartition(u, v));
        }
    }
    Ok(side_matching(g, &left, &right))
}

// Maximum matching using only edges from `a` to `b`; sides must be disjoint.
fn side_matching(g: &Graph, a: &VertexSet, b: &VertexSet) -> Matching {
    let n = g.order();
    let lefts: Vec<usize> = a.to_vec();
    let rights: Vec<usize> = b.to_vec();
    let mut r_index = vec![NONE; n];
    for (i, &v) in rights.iter().enumerate() {
        r_index[v] = i;
    }
    let adj: Vec<Vec<usize>> = lefts
        .iter()
        .map(|&u| {
            g.neighbors(u)
                .iter()
                .filter_map(|&v| (r_index[v] != NONE).then_some(r_index[v]))
                .collect()
        })
        .collect();
    let mate_l = hopcroft_karp(&adj, rights.len());
    Matching::from_pairs(
        n,
        lefts
            .iter()
            .zip(&mate_l)
            .filter(|(_, &r)| r != NONE)
            .map(|(&u, &r)| (u, rights[r])),
    )
}

/// Maximum matching of an arbitrary graph (Edmonds' blossom algorithm).
///
/// Free vertices are grown in increasing order and neighbours scanned
/// lowest-first, so the result is reproducible.
pub fn max_matching_general(g: &Graph) -> Matching {
    Blossom::new(g).run()
}

/// `μ(G)`.
pub fn matching_number(g: &Graph) -> usize {
    max_matching_general(g).size()
}

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> Matching {
        let n = self.g.order();
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(end) = self.find_path(root) {
                let mut v = end;
                while v != NONE {
                    let pv = self.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
            }
        }
        Matching {
            mate: self
                .mate
                .into_iter()
                .map(|m| (m != NONE).then_some(m))
                .collect(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // odd cycle: contract the blossom
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Whether some matching of `a`–`b` edges saturates `a`; returns a witness.
pub fn matching_from_into(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Option<Matching>> {
    let a = g.adopt(a)?;
    let b = g.adopt(b)?;
    if let Some(v) = a.intersection(&b).first() {
        return Err(Error::Overlap(v));
    }
    let m = side_matching(g, &a, &b);
    Ok((m.size() == a.len()).then_some(m))
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.order().is_multiple_of(2) && matching_number(g) * 2 == g.order()
}

/// Every vertex-deleted subgraph has a perfect matching.
pub fn is_factor_critical(g: &Graph) -> bool {
    if g.order().is_multiple_of(2) {
        return false;
    }
    (0..g.order()).all(|v| {
        let sub = g.delete_vertex(v).expect("vertex in range");
        has_perfect_matching(&sub.graph)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn parts(g: &Graph, left: &[usize]) -> (VertexSet, VertexSet) {
        let l = g.vertex_set(left.iter().copied()).unwrap();
        let r = l.complement();
        (l, r)
    }

    #[test]
    fn bipartite_examples() {
        let c6 = Graph::cycle(6);
        let (l, r) = parts(&c6, &[0, 2, 4]);
        let m = max_matching_bipartite(&c6, &l, &r).unwrap();
        assert_eq!(m.size(), 3);
        assert!(m.is_valid_for(&c6));

        let k13 = Graph::star(3);
        let (l, r) = parts(&k13, &[0]);
        assert_eq!(max_matching_bipartite(&k13, &l, &r).unwrap().size(), 1);

        let p4 = Graph::path(4);
        let (l, r) = parts(&p4, &[0, 2]);
        let m = max_matching_bipartite(&p4, &l, &r).unwrap();
        assert_eq!(m.size(), oracle::max_matching_size(&p4));
        assert_eq!(m.size(), 2);
    }

    #[test]
    fn bipartite_rejects_bad_partition() {
        let c5 = Graph::cycle(5);
        let (l, r) = parts(&c5, &[0, 2]);
        assert!(matches!(
            max_matching_bipartite(&c5, &l, &r),
            Err(Error::InvalidPartition(..))
        ));
    }

    #[test]
    fn general_examples() {
        assert_eq!(matching_number(&Graph::cycle(5)), 2);
        let p = Graph::petersen();
        assert_eq!(oracle::max_matching_size(&p), 5);
        let m = max_matching_general(&p);
        assert_eq!(m.size(), 5);
        assert!(m.is_valid_for(&p));
        assert_eq!(matching_number(&Graph::empty(4)), 0);
    }

    #[test]
    fn blossom_needs_contraction() {
        // triangle 0-1-2 with stems 2-3 and 0-4 -- 4-5
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (4, 5)]).unwrap();
        assert_eq!(matching_number(&g), 3);
        // two triangles joined by a path, odd cycle on the augmenting route
        let g = Graph::new(
            8,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (6, 7)],
        )
        .unwrap();
        assert_eq!(matching_number(&g), oracle::max_matching_size(&g));
    }

    #[test]
    fn matching_from_into_examples() {
        let k13 = Graph::star(3);
        let centre = k13.vertex_set([0]).unwrap();
        let leaves = k13.vertex_set([1, 2, 3]).unwrap();
        let w = matching_from_into(&k13, &centre, &leaves).unwrap().unwrap();
        assert!(w.is_matched(0) && w.is_valid_for(&k13));
        assert!(matching_from_into(&k13, &leaves, &centre).unwrap().is_none());
        assert_eq!(
            matching_from_into(&k13, &leaves, &leaves),
            Err(Error::Overlap(1))
        );
        // N(X) into X for the critical independent set of leaves
        let nx = k13.neighborhood(&leaves).unwrap();
        assert!(matching_from_into(&k13, &nx, &leaves).unwrap().is_some());
    }

    #[test]
    fn perfect_matching_examples() {
        assert!(has_perfect_matching(&Graph::path(2)));
        assert!(!has_perfect_matching(&Graph::cycle(5)));
        assert!(has_perfect_matching(&Graph::cycle(6)));
        assert!(has_perfect_matching(&Graph::empty(0)));
    }

    #[test]
    fn factor_critical_examples() {
        assert!(is_factor_critical(&Graph::cycle(5)));
        assert!(is_factor_critical(&Graph::empty(1)));
        assert!(!is_factor_critical(&Graph::path(3)));
        assert!(is_factor_critical(&Graph::complete(5)));
        assert!(!is_factor_critical(&Graph::path(2)));
    }
}
