//! Critical difference, critical sets, `ker` and `diadem`.
//!
//! The polynomial routines reduce everything to maximum bipartite matching:
//! `d_c(G) = n - μ(B)` where `B` is the bipartite double cover of `G`. The
//! exhaustive routines walk all `2^n` subsets and serve as oracles for them.

mod gadget;
mod minimal;

use alloc::vec::Vec;

pub use gadget::{build_hx, verify_hx_ker, HxGadget};
pub use minimal::{
    check_strict_subsets, decompose_minimal, enumerate_minimal_positive_sets,
    min_cardinality_positive_subset, union_is_minimal_union, MinimalDecomposition,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::independence::{self, inner_edge};
use crate::matching::{hopcroft_karp, matching_from_into};
use crate::set::VertexSet;
use crate::subsets::SubsetTable;

/// Everything known about the critical structure of one graph. The
/// enumerated lists are present only when the graph was small enough to
/// enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalProfile {
    pub d_c: usize,
    pub ker: VertexSet,
    pub diadem: VertexSet,
    pub critical_sets: Option<Vec<VertexSet>>,
    pub critical_independent_sets: Option<Vec<VertexSet>>,
    pub minimal_positive_sets: Option<Vec<VertexSet>>,
}

/// `d_c(G)` via König on the bipartite double cover.
pub fn critical_difference(g: &Graph) -> usize {
    let n = g.order();
    let cover: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).to_vec()).collect();
    let matched = hopcroft_karp(&cover, n)
        .iter()
        .filter(|&&r| r != usize::MAX)
        .count();
    n - matched
}

/// `d_c(G)` as the maximum of `d` over all `2^n` subsets.
pub fn critical_difference_oracle(g: &Graph) -> Result<usize> {
    let table = SubsetTable::new(g, "critical difference oracle")?;
    Ok(table.max_difference() as usize)
}

/// All sets attaining `d_c(G)`, optionally only the independent ones, in
/// lexicographic order.
pub fn enumerate_critical_sets(g: &Graph, independent_only: bool) -> Result<Vec<VertexSet>> {
    let table = SubsetTable::new(g, "critical set enumeration")?;
    let best = table.max_difference();
    let mut out: Vec<VertexSet> = (0..table.count() as u32)
        .filter(|&s| table.difference(s) == best && (!independent_only || table.is_independent(s)))
        .map(|s| VertexSet::from_mask(g.order(), s as u64))
        .collect();
    out.sort();
    Ok(out)
}

/// `ker(G) = { v : d_c(G - v) = d_c(G) - 1 }`.
pub fn ker(g: &Graph) -> VertexSet {
    let dc = critical_difference(g) as i64;
    let members = (0..g.order()).filter(|&v| {
        let sub = g.delete_vertex(v).expect("vertex in range");
        critical_difference(&sub.graph) as i64 == dc - 1
    });
    VertexSet::from_members(g.order(), members)
}

/// The largest difference of an independent set containing `v`:
/// `1 - deg(v) + d_c(G - N[v])`.
pub fn best_difference_through(g: &Graph, v: usize) -> i64 {
    let rest = g
        .delete_vertices(&g.closed_neighborhood(v))
        .expect("closed neighbourhood in range");
    1 - g.degree(v) as i64 + critical_difference(&rest.graph) as i64
}

/// `diadem(G)`: the vertices lying in some critical independent set.
pub fn diadem(g: &Graph) -> VertexSet {
    let dc = critical_difference(g) as i64;
    VertexSet::from_members(
        g.order(),
        (0..g.order()).filter(|&v| best_difference_through(g, v) == dc),
    )
}

/// `ker` as the intersection of every critical set.
pub fn ker_oracle(g: &Graph) -> Result<VertexSet> {
    let mut meet = g.vertices();
    for s in enumerate_critical_sets(g, false)? {
        meet.intersect_with(&s);
    }
    Ok(meet)
}

/// `diadem` as the union of every critical independent set.
pub fn diadem_oracle(g: &Graph) -> Result<VertexSet> {
    let mut join = VertexSet::empty(g.order());
    for s in enumerate_critical_sets(g, true)? {
        join.union_with(&s);
    }
    Ok(join)
}

/// Builds the profile; the enumerated lists are filled when `n` is at most
/// `enumeration_limit` (itself capped by the hard enumeration limit).
pub fn critical_profile(g: &Graph, enumeration_limit: usize) -> CriticalProfile {
    let enumerate = g.order() <= enumeration_limit.min(crate::subsets::ENUMERATION_LIMIT);
    CriticalProfile {
        d_c: critical_difference(g),
        ker: ker(g),
        diadem: diadem(g),
        critical_sets: enumerate.then(|| enumerate_critical_sets(g, false).expect("within limit")),
        critical_independent_sets: enumerate
            .then(|| enumerate_critical_sets(g, true).expect("within limit")),
        minimal_positive_sets: enumerate
            .then(|| enumerate_minimal_positive_sets(g).expect("within limit")),
    }
}

fn require_independent(g: &Graph, x: &VertexSet) -> Result<()> {
    match inner_edge(g, x) {
        Some((u, v)) => Err(Error::NotIndependent(u, v)),
        None => Ok(()),
    }
}

/// For an independent `x ⊇ ker(G)`: whether `N(x)` can be matched into `x`,
/// which certifies that `x` is critical.
pub fn is_critical_by_matching(g: &Graph, x: &VertexSet) -> Result<bool> {
    let x = g.adopt(x)?;
    require_independent(g, &x)?;
    let k = ker(g);
    if !k.is_subset(&x) {
        return Err(Error::Precondition {
            reason: "set does not contain ker(G)".into(),
            witness: Some(k.minus(&x).to_vec()),
        });
    }
    let nx = g.neighborhood(&x)?;
    Ok(matching_from_into(g, &nx, &x)?.is_some())
}

fn require_critical_independent(g: &Graph, x: &VertexSet, dc: i64) -> Result<()> {
    require_independent(g, x)?;
    if g.difference(x)? != dc {
        return Err(Error::Precondition {
            reason: "set is not critical".into(),
            witness: Some(x.to_vec()),
        });
    }
    Ok(())
}

/// For critical independent `x`, `y`: `|N(x) ∩ y| = |N(y) ∩ x|`.
pub fn critical_pair_balance(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
    let (x, y) = (g.adopt(x)?, g.adopt(y)?);
    let dc = critical_difference(g) as i64;
    require_critical_independent(g, &x, dc)?;
    require_critical_independent(g, &y, dc)?;
    let nx = g.neighborhood(&x)?;
    let ny = g.neighborhood(&y)?;
    Ok(nx.intersection_len(&y) == ny.intersection_len(&x))
}

/// Critical independent sets that are inclusion-maximal among critical
/// independent sets.
pub fn maximal_critical_independent_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let all = enumerate_critical_sets(g, true)?;
    Ok(all
        .iter()
        .filter(|s| !all.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect())
}

/// For every maximal critical independent set `X`:
/// `diadem(G) ⊆ X ∪ N(X) - N(ker(G))`.
pub fn diadem_within_maximal_bounds(g: &Graph) -> Result<bool> {
    let maximal = maximal_critical_independent_sets(g)?;
    let dia = diadem(g);
    let nker = g.neighborhood(&ker(g))?;
    for x in &maximal {
        let bound = x.union(&g.neighborhood(x)?).minus(&nker);
        if !dia.is_subset(&bound) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|ker(G)| + |diadem(G)| <= 2 α(G)`, with `α` limited as in
/// [`independence::alpha_with_limit`].
pub fn ker_diadem_inequality(g: &Graph, alpha_limit: usize) -> Result<bool> {
    let a = independence::alpha_with_limit(g, alpha_limit)?;
    Ok(ker(g).len() + diadem(g).len() <= 2 * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lists(v: &[VertexSet]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.to_vec()).collect()
    }

    /// Isolated vertex plus an edge.
    fn isolated_plus_edge() -> Graph {
        Graph::new(3, [(1, 2)]).unwrap()
    }

    #[test]
    fn critical_difference_examples() {
        assert_eq!(critical_difference(&Graph::cycle(5)), 0);
        assert_eq!(critical_difference(&Graph::star(3)), 2);
        assert_eq!(critical_difference(&isolated_plus_edge()), 1);
        assert_eq!(critical_difference(&Graph::empty(0)), 0);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(critical_difference_oracle(&Graph::empty(4)).unwrap(), 4);
        assert_eq!(critical_difference_oracle(&Graph::cycle(5)).unwrap(), 0);
        assert_eq!(critical_difference_oracle(&Graph::path(3)).unwrap(), 1);
        assert_eq!(critical_difference_oracle(&Graph::star(3)).unwrap(), 2);
        assert_eq!(critical_difference_oracle(&isolated_plus_edge()).unwrap(), 1);
    }

    #[test]
    fn critical_set_examples() {
        assert_eq!(
            lists(&enumerate_critical_sets(&Graph::star(3), false).unwrap()),
            [vec![1, 2, 3]]
        );
        let c5 = enumerate_critical_sets(&Graph::cycle(5), false).unwrap();
        assert!(c5.iter().any(|s| s.is_empty()));
        assert_eq!(
            lists(&enumerate_critical_sets(&Graph::path(3), true).unwrap()),
            [vec![0, 2]]
        );
    }

    #[test]
    fn c5_critical_sets_exhaustive() {
        // Hand evaluation over all 32 subsets: singletons and non-adjacent
        // pairs sit at -1, everything else below zero except the two ends.
        let c5 = Graph::cycle(5);
        let sets = enumerate_critical_sets(&c5, false).unwrap();
        assert_eq!(lists(&sets), [vec![], vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn ker_examples() {
        assert_eq!(ker(&Graph::star(3)).to_vec(), [1, 2, 3]);
        assert!(ker(&Graph::cycle(5)).is_empty());
        assert_eq!(ker(&Graph::path(3)).to_vec(), [0, 2]);
    }

    #[test]
    fn diadem_examples() {
        assert_eq!(diadem(&Graph::star(3)).to_vec(), [1, 2, 3]);
        assert_eq!(diadem(&Graph::path(4)).to_vec(), [0, 1, 2, 3]);
        assert_eq!(diadem(&Graph::path(3)).to_vec(), [0, 2]);
        assert_eq!(best_difference_through(&Graph::star(3), 0), -2);
        for g in [Graph::star(3), Graph::path(4), Graph::path(3), Graph::cycle(5)] {
            assert_eq!(diadem(&g), diadem_oracle(&g).unwrap());
            assert_eq!(ker(&g), ker_oracle(&g).unwrap());
        }
    }

    #[test]
    fn critical_by_matching_examples() {
        let k13 = Graph::star(3);
        let leaves = k13.vertex_set([1, 2, 3]).unwrap();
        assert!(is_critical_by_matching(&k13, &leaves).unwrap());
        assert_eq!(k13.difference(&leaves).unwrap(), 2);
        let p3 = Graph::path(3);
        assert!(is_critical_by_matching(&p3, &ker(&p3)).unwrap());
        assert!(matches!(
            is_critical_by_matching(&k13, &k13.vertex_set([1]).unwrap()),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            is_critical_by_matching(&k13, &k13.vertex_set([0, 1]).unwrap()),
            Err(Error::NotIndependent(0, 1))
        ));
    }

    #[test]
    fn critical_pair_balance_examples() {
        let p4 = Graph::path(4);
        let x = p4.vertex_set([0, 2]).unwrap();
        let y = p4.vertex_set([1, 3]).unwrap();
        assert!(critical_pair_balance(&p4, &x, &y).unwrap());
        let k = ker(&Graph::star(3));
        assert!(critical_pair_balance(&Graph::star(3), &k, &k).unwrap());
        let bad = p4.vertex_set([1]).unwrap();
        assert!(critical_pair_balance(&p4, &bad, &y).is_err());
    }

    #[test]
    fn diadem_bound_examples() {
        assert!(diadem_within_maximal_bounds(&Graph::star(3)).unwrap());
        assert!(diadem_within_maximal_bounds(&Graph::cycle(5)).unwrap());
        assert!(diadem_within_maximal_bounds(&Graph::path(4)).unwrap());
        assert_eq!(
            lists(&maximal_critical_independent_sets(&Graph::path(4)).unwrap()),
            [vec![0, 2], vec![0, 3], vec![1, 3]]
        );
    }

    #[test]
    fn profile_respects_limit() {
        let p = critical_profile(&Graph::star(3), 16);
        assert_eq!(p.d_c, 2);
        assert_eq!(p.minimal_positive_sets.as_ref().unwrap().len(), 3);
        let q = critical_profile(&Graph::star(3), 2);
        assert!(q.critical_sets.is_none());
        assert!(ker_diadem_inequality(&Graph::star(3), 40).unwrap());
    }
}
