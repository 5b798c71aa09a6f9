//! Exact independence computations: `α(G)`, `Ω(G)` and `core(G)`.

use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::Graph;
use crate::set::{bits, VertexSet};
use crate::subsets::{check_limit, ENUMERATION_LIMIT};

/// Default cap on `n` for the branch-and-bound `α`.
pub const ALPHA_LIMIT: usize = 40;

/// Largest limit the bitmask search supports.
pub const ALPHA_HARD_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceProfile {
    pub alpha: usize,
    /// All maximum independent sets, lexicographically ordered.
    pub omega_sets: Vec<VertexSet>,
    pub core: VertexSet,
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    let s = g.adopt(s)?;
    Ok(s.iter().all(|u| g.neighbors(u).iter().all(|&v| !s.contains(v))))
}

/// An edge with both ends in `s`, if any.
pub(crate) fn inner_edge(g: &Graph, s: &VertexSet) -> Option<(usize, usize)> {
    s.iter().find_map(|u| {
        g.neighbors(u)
            .iter()
            .find(|&&v| v > u && s.contains(v))
            .map(|&v| (u, v))
    })
}

/// `α(G)` with the default limit.
pub fn alpha(g: &Graph) -> Result<usize> {
    alpha_with_limit(g, ALPHA_LIMIT)
}

pub fn alpha_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    Ok(maximum_independent_set_with_limit(g, limit)?.len())
}

/// One maximum independent set, found by branch and bound.
pub fn maximum_independent_set(g: &Graph) -> Result<VertexSet> {
    maximum_independent_set_with_limit(g, ALPHA_LIMIT)
}

pub fn maximum_independent_set_with_limit(g: &Graph, limit: usize) -> Result<VertexSet> {
    check_limit(
        "branch-and-bound independence number",
        limit.min(ALPHA_HARD_LIMIT),
        g.order(),
    )?;
    let masks = g.neighbor_masks().expect("n <= 64");
    let all = if g.order() == 64 {
        u64::MAX
    } else {
        (1u64 << g.order()) - 1
    };
    let mut search = MisSearch {
        masks: &masks,
        best: 0,
        best_size: 0,
    };
    search.run(all, 0, 0);
    Ok(VertexSet::from_mask(g.order(), search.best))
}

struct MisSearch<'a> {
    masks: &'a [u64],
    best: u64,
    best_size: u32,
}

impl MisSearch<'_> {
    fn run(&mut self, mut cand: u64, mut chosen: u64, mut size: u32) {
        loop {
            if cand == 0 {
                if size > self.best_size {
                    self.best_size = size;
                    self.best = chosen;
                }
                return;
            }
            if size + cand.count_ones() <= self.best_size {
                return;
            }
            // Degree <= 1 vertices are always safe to take.
            let mut pick_low = None;
            let mut pivot = 0;
            let mut pivot_deg = 0;
            for v in bits(cand) {
                let d = (self.masks[v] & cand).count_ones();
                if d <= 1 {
                    pick_low = Some(v);
                    break;
                }
                if d > pivot_deg {
                    pivot_deg = d;
                    pivot = v;
                }
            }
            if let Some(v) = pick_low {
                chosen |= 1 << v;
                size += 1;
                cand &= !(self.masks[v] | 1 << v);
                continue;
            }
            self.run(
                cand & !(self.masks[pivot] | 1 << pivot),
                chosen | 1 << pivot,
                size + 1,
            );
            cand &= !(1 << pivot);
        }
    }
}

/// `Ω(G)` in lexicographic order (`n <= 20`).
pub fn enumerate_maximum_independent_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    check_limit(
        "maximum independent set enumeration",
        ENUMERATION_LIMIT,
        g.order(),
    )?;
    let target = alpha_with_limit(g, ENUMERATION_LIMIT)? as u32;
    let masks = g.neighbor_masks().expect("n <= 20");
    let mut out = Vec::new();
    let all = (1u64 << g.order()) - 1;
    walk_maximum_sets(&masks, all, 0, target, &mut |s| {
        out.push(s);
        true
    });
    let mut sets: Vec<VertexSet> = out
        .into_iter()
        .map(|m| VertexSet::from_mask(g.order(), m))
        .collect();
    sets.sort();
    Ok(sets)
}

// Visits every independent set of size `target` inside `cand ∪ chosen`,
// lowest vertex included first. The visitor returns false to stop.
fn walk_maximum_sets(
    masks: &[u64],
    cand: u64,
    chosen: u64,
    target: u32,
    visit: &mut dyn FnMut(u64) -> bool,
) -> bool {
    let size = chosen.count_ones();
    if size == target {
        return visit(chosen);
    }
    if cand == 0 || size + cand.count_ones() < target {
        return true;
    }
    let v = cand.trailing_zeros() as usize;
    let bit = 1u64 << v;
    walk_maximum_sets(masks, cand & !(masks[v] | bit), chosen | bit, target, visit)
        && walk_maximum_sets(masks, cand & !bit, chosen, target, visit)
}

/// `core(G)`: the intersection of all maximum independent sets.
///
/// Keeps a running intersection during the walk and stops as soon as it is
/// empty.
pub fn core(g: &Graph) -> Result<VertexSet> {
    check_limit("core enumeration", ENUMERATION_LIMIT, g.order())?;
    let target = alpha_with_limit(g, ENUMERATION_LIMIT)? as u32;
    let masks = g.neighbor_masks().expect("n <= 20");
    let all = (1u64 << g.order()) - 1;
    let mut meet = all;
    walk_maximum_sets(&masks, all, 0, target, &mut |s| {
        meet &= s;
        meet != 0
    });
    Ok(VertexSet::from_mask(g.order(), meet))
}

pub fn independence_profile(g: &Graph) -> Result<IndependenceProfile> {
    let omega_sets = enumerate_maximum_independent_sets(g)?;
    let alpha = omega_sets.first().map_or(0, |s| s.len());
    let mut core = VertexSet::full(g.order());
    for s in &omega_sets {
        core.intersect_with(s);
    }
    Ok(IndependenceProfile {
        alpha,
        omega_sets,
        core,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::oracle;
    use alloc::vec;

    fn sets(v: &[VertexSet]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn independence_examples() {
        let k13 = Graph::star(3);
        assert!(is_independent(&k13, &VertexSet::empty(4)).unwrap());
        assert!(is_independent(&k13, &k13.vertex_set([1, 2, 3]).unwrap()).unwrap());
        assert!(!is_independent(&k13, &k13.vertex_set([0, 2]).unwrap()).unwrap());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(alpha(&Graph::star(3)).unwrap(), 3);
        assert_eq!(alpha(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(alpha(&Graph::petersen()).unwrap(), 4);
        assert_eq!(alpha(&Graph::complete(7)).unwrap(), 1);
        assert!(matches!(
            alpha(&Graph::empty(41)),
            Err(Error::LimitExceeded { limit: 40, .. })
        ));
        assert_eq!(alpha_with_limit(&Graph::cycle(64), 64).unwrap(), 32);
    }

    #[test]
    fn witness_is_independent() {
        let g = Graph::petersen();
        let s = maximum_independent_set(&g).unwrap();
        assert_eq!(s.len(), 4);
        assert!(is_independent(&g, &s).unwrap());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            sets(&enumerate_maximum_independent_sets(&Graph::path(3)).unwrap()),
            [vec![0, 2]]
        );
        let c5 = enumerate_maximum_independent_sets(&Graph::cycle(5)).unwrap();
        assert_eq!(
            sets(&c5),
            [vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]]
        );
        assert_eq!(
            sets(&enumerate_maximum_independent_sets(&Graph::path(2)).unwrap()),
            [vec![0], vec![1]]
        );
    }

    #[test]
    fn core_examples() {
        assert_eq!(core(&Graph::path(3)).unwrap().to_vec(), [0, 2]);
        assert!(core(&Graph::cycle(5)).unwrap().is_empty());
        assert_eq!(core(&Graph::star(3)).unwrap().to_vec(), [1, 2, 3]);
        assert!(core(&Graph::empty(0)).unwrap().is_empty());
    }

    #[test]
    fn core_equals_alpha_drop_vertices() {
        // v ∈ core(G) iff α(G - v) < α(G)
        for g in [Graph::petersen(), Graph::path(7), Graph::star(4), Graph::cycle(6)] {
            let a = oracle::independence_number(&g).unwrap();
            let expected: Vec<usize> = (0..g.order())
                .filter(|&v| {
                    oracle::independence_number(&g.delete_vertex(v).unwrap().graph).unwrap() < a
                })
                .collect();
            assert_eq!(core(&g).unwrap().to_vec(), expected);
            let profile = independence_profile(&g).unwrap();
            assert_eq!(profile.core.to_vec(), expected);
            assert_eq!(profile.alpha, a);
        }
    }
}
