//! Finite simple graphs on the dense vertex range `0..n`.

use alloc::borrow::Cow;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::set::VertexSet;

/// An immutable finite simple graph.
///
/// Adjacency lists are kept sorted so every traversal visits neighbours
/// lowest-numbered first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints, self-loops and
    /// repeated edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// The cycle `0-1-..-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid complete bipartite graph")
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i-(i+5)`.
    pub fn petersen() -> Self {
        let edges = (0..5).flat_map(|i| {
            [
                (i, (i + 1) % 5),
                (i, i + 5),
                (5 + i, 5 + (i + 2) % 5),
            ]
        });
        Self::new(10, edges).expect("valid Petersen graph")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, members: I) -> Result<VertexSet> {
        let n = self.order();
        let mut s = VertexSet::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    order: n,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Re-expresses `x` over this graph's universe, rejecting members `>= n`.
    pub(crate) fn adopt<'a>(&self, x: &'a VertexSet) -> Result<Cow<'a, VertexSet>> {
        if x.universe() == self.order() {
            return Ok(Cow::Borrowed(x));
        }
        self.vertex_set(x.iter()).map(Cow::Owned)
    }

    /// `N(x)`: every vertex adjacent to some member of `x`. May meet `x`.
    pub fn neighborhood(&self, x: &VertexSet) -> Result<VertexSet> {
        let x = self.adopt(x)?;
        let mut out = VertexSet::empty(self.order());
        for u in x.iter() {
            for &v in &self.adj[u] {
                out.insert(v);
            }
        }
        Ok(out)
    }

    /// `d(x) = |x| - |N(x)|`.
    pub fn difference(&self, x: &VertexSet) -> Result<i64> {
        let nx = self.neighborhood(x)?;
        Ok(x.len() as i64 - nx.len() as i64)
    }

    /// Closed neighbourhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::from_members(self.order(), self.adj[v].iter().copied());
        s.insert(v);
        s
    }

    /// `G[u]`, relabelled to `0..|u|` in increasing order of original label.
    pub fn induced_subgraph(&self, u: &VertexSet) -> Result<Subgraph> {
        let u = self.adopt(u)?;
        let original: Vec<usize> = u.iter().collect();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); original.len()];
        let mut edge_count = 0;
        for (i, &v) in original.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if j > i {
                        edge_count += 1;
                    }
                }
            }
        }
        Ok(Subgraph {
            graph: Graph { adj, edge_count },
            original,
            parent_order: self.order(),
        })
    }

    /// `G - x`.
    pub fn delete_vertices(&self, x: &VertexSet) -> Result<Subgraph> {
        let x = self.adopt(x)?;
        self.induced_subgraph(&x.complement())
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Subgraph> {
        let x = self.vertex_set([v])?;
        self.delete_vertices(&x)
    }

    /// Components, each listed once, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = VertexSet::empty(n);
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Cyclomatic number `m - n + #components`.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count + self.connected_components().len() - self.order()
    }

    /// The vertices of the unique cycle in cyclic order, starting at its
    /// smallest vertex and stepping to the smaller of that vertex's two cycle
    /// neighbours. `None` for a forest.
    pub fn find_unique_cycle(&self) -> Result<Option<Vec<usize>>> {
        match self.cycle_rank() {
            0 => return Ok(None),
            1 => {}
            cycles => return Err(Error::NotUnicyclic { cycles }),
        }
        // Peel vertices of degree <= 1; with cycle rank one the 2-core is the cycle.
        let n = self.order();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        while let Some(u) = stack.pop() {
            if !alive[u] {
                continue;
            }
            alive[u] = false;
            for &v in &self.adj[u] {
                if alive[v] {
                    deg[v] -= 1;
                    if deg[v] == 1 {
                        stack.push(v);
                    }
                }
            }
        }
        let start = (0..n).find(|&v| alive[v]).expect("cycle rank one implies a cycle");
        let on_cycle = |v: usize| alive[v];
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = *self.adj[start]
            .iter()
            .find(|&&v| on_cycle(v))
            .expect("cycle vertex has cycle neighbours");
        while cur != start {
            cycle.push(cur);
            let next = *self.adj[cur]
                .iter()
                .find(|&&v| on_cycle(v) && v != prev)
                .expect("cycle vertex has two cycle neighbours");
            prev = cur;
            cur = next;
        }
        Ok(Some(cycle))
    }

    /// Two-colouring with the smallest vertex of each component in the first
    /// part, or `None` when the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        let left = VertexSet::from_members(n, (0..n).filter(|&v| side[v] == 0));
        let right = left.complement();
        Some((left, right))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// `self ⊕ other`; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&v| v + shift).collect()),
        );
        Graph {
            adj,
            edge_count: self.edge_count + other.edge_count,
        }
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        Graph::new(self.order(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("a permutation preserves simplicity")
    }

    /// Neighbourhood bitmasks, available when `n <= 64`.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        (self.order() <= 64).then(|| {
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect()
        })
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// An induced subgraph together with the map back to the parent graph.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[i]` is the parent vertex behind local vertex `i`.
    pub original: Vec<usize>,
    parent_order: usize,
}

impl Subgraph {
    pub fn to_original(&self, local: usize) -> usize {
        self.original[local]
    }

    pub fn to_local(&self, original: usize) -> Option<usize> {
        self.original.binary_search(&original).ok()
    }

    /// Maps a local vertex set into the parent universe.
    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        VertexSet::from_members(self.parent_order, local.iter().map(|v| self.original[v]))
    }

    /// Restricts a parent vertex set to the subgraph's local labels.
    pub fn restrict(&self, parent: &VertexSet) -> VertexSet {
        VertexSet::from_members(
            self.graph.order(),
            parent.iter().filter_map(|v| self.to_local(v)),
        )
    }
}

/// `N(x)` as a free function.
pub fn neighborhood(g: &Graph, x: &VertexSet) -> Result<VertexSet> {
    g.neighborhood(x)
}

/// `d(x) = |x| - |N(x)|` as a free function.
pub fn difference(g: &Graph, x: &VertexSet) -> Result<i64> {
    g.difference(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Graph, m: &[usize]) -> VertexSet {
        g.vertex_set(m.iter().copied()).unwrap()
    }

    #[test]
    fn neighborhood_examples() {
        let p3 = Graph::path(3);
        assert_eq!(p3.neighborhood(&set(&p3, &[1])).unwrap().to_vec(), [0, 2]);
        let c5 = Graph::cycle(5);
        assert!(c5.neighborhood(&VertexSet::empty(5)).unwrap().is_empty());
        assert_eq!(c5.neighborhood(&set(&c5, &[0, 2])).unwrap().to_vec(), [1, 3, 4]);
    }

    #[test]
    fn difference_examples() {
        let k13 = Graph::star(3);
        assert_eq!(k13.difference(&set(&k13, &[1, 2, 3])).unwrap(), 2);
        let c5 = Graph::cycle(5);
        assert_eq!(c5.difference(&VertexSet::empty(5)).unwrap(), 0);
        for v in 0..5 {
            assert_eq!(c5.difference(&set(&c5, &[v])).unwrap(), -1);
        }
    }

    #[test]
    fn invalid_vertex_rejected() {
        let p3 = Graph::path(3);
        let big = VertexSet::from_members(10, [7]);
        assert_eq!(
            p3.neighborhood(&big),
            Err(Error::InvalidVertex { vertex: 7, order: 3 })
        );
        assert!(p3.difference(&big).is_err());
        assert!(p3.induced_subgraph(&big).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::InvalidVertex { vertex: 2, order: 2 })
        ));
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = Graph::cycle(5);
        let sub = c5.induced_subgraph(&set(&c5, &[1, 2, 3])).unwrap();
        assert_eq!(sub.graph, Graph::path(3));
        assert_eq!(sub.original, [1, 2, 3]);

        let whole = c5.induced_subgraph(&c5.vertices()).unwrap();
        assert_eq!(whole.graph, c5);
        assert_eq!(whole.original, [0, 1, 2, 3, 4]);

        let k13 = Graph::star(3);
        let leaves = k13.induced_subgraph(&set(&k13, &[1, 2, 3])).unwrap();
        assert_eq!(leaves.graph, Graph::empty(3));
    }

    #[test]
    fn delete_vertices_examples() {
        let p3 = Graph::path(3);
        assert_eq!(p3.delete_vertex(1).unwrap().graph, Graph::empty(2));
        let c5 = Graph::cycle(5);
        assert_eq!(c5.delete_vertex(0).unwrap().graph, Graph::path(4));
        assert_eq!(c5.delete_vertices(&VertexSet::empty(5)).unwrap().graph, c5);
    }

    #[test]
    fn components_examples() {
        let comps = Graph::empty(3).connected_components();
        assert_eq!(
            comps.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
            [vec![0], vec![1], vec![2]]
        );
        assert_eq!(Graph::cycle(5).connected_components().len(), 1);
        let g = Graph::cycle(3).disjoint_union(&Graph::path(2));
        let sizes: Vec<usize> = g.connected_components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, [3, 2]);
    }

    #[test]
    fn unique_cycle_examples() {
        assert_eq!(
            Graph::cycle(5).find_unique_cycle().unwrap(),
            Some(vec![0, 1, 2, 3, 4])
        );
        assert_eq!(Graph::star(4).find_unique_cycle().unwrap(), None);
        assert_eq!(
            Graph::complete(4).find_unique_cycle(),
            Err(Error::NotUnicyclic { cycles: 3 })
        );
        // triangle 2-4-6 with pendant paths
        let g = Graph::new(7, [(2, 4), (4, 6), (6, 2), (0, 2), (1, 0), (3, 6), (5, 3)]).unwrap();
        assert_eq!(g.find_unique_cycle().unwrap(), Some(vec![2, 4, 6]));
    }

    #[test]
    fn bipartition_and_petersen() {
        let (l, r) = Graph::cycle(6).bipartition().unwrap();
        assert_eq!(l.to_vec(), [0, 2, 4]);
        assert_eq!(r.to_vec(), [1, 3, 5]);
        assert!(Graph::cycle(5).bipartition().is_none());
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }
}
