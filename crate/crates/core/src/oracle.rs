//! Exhaustive reference computations for small graphs.
//!
//! Everything here is exponential and exists to cross-check the polynomial
//! routines elsewhere in the crate. None of it shares code with them beyond
//! the `Graph` type itself.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::Graph;
use crate::matching::Matching;
use crate::set::VertexSet;
use crate::subsets::check_limit;

/// Largest order accepted by the brute-force matching routines.
pub const MATCHING_ORACLE_LIMIT: usize = 14;

/// `μ(G)` by branch and bound over vertex choices.
pub fn max_matching_size(g: &Graph) -> usize {
    let mut used = vec![false; g.order()];
    let mut best = 0;
    search_matching(g, 0, &mut used, 0, &mut best);
    best
}

fn search_matching(g: &Graph, from: usize, used: &mut [bool], size: usize, best: &mut usize) {
    let n = g.order();
    let Some(v) = (from..n).find(|&v| !used[v]) else {
        *best = (*best).max(size);
        return;
    };
    let free = used[v..].iter().filter(|u| !**u).count();
    if size + free / 2 <= *best {
        return;
    }
    used[v] = true;
    for &u in g.neighbors(v) {
        if !used[u] {
            used[u] = true;
            search_matching(g, v + 1, used, size + 1, best);
            used[u] = false;
        }
    }
    search_matching(g, v + 1, used, size, best);
    used[v] = false;
}

/// Every maximum matching of `g`.
pub fn enumerate_maximum_matchings(g: &Graph) -> Result<Vec<Matching>> {
    check_limit(
        "maximum matching enumeration",
        MATCHING_ORACLE_LIMIT,
        g.order(),
    )?;
    let target = max_matching_size(g);
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    let mut used = vec![false; g.order()];
    collect_matchings(g, 0, &mut used, &mut pairs, target, &mut out);
    Ok(out)
}

fn collect_matchings(
    g: &Graph,
    from: usize,
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    target: usize,
    out: &mut Vec<Matching>,
) {
    let n = g.order();
    if pairs.len() == target {
        out.push(Matching::from_pairs(n, pairs.iter().copied()));
        return;
    }
    let Some(v) = (from..n).find(|&v| !used[v]) else {
        return;
    };
    let free = used[v..].iter().filter(|u| !**u).count();
    if pairs.len() + free / 2 < target {
        return;
    }
    used[v] = true;
    for &u in g.neighbors(v) {
        if !used[u] {
            used[u] = true;
            pairs.push((v, u));
            collect_matchings(g, v + 1, used, pairs, target, out);
            pairs.pop();
            used[u] = false;
        }
    }
    collect_matchings(g, v + 1, used, pairs, target, out);
    used[v] = false;
}

/// Vertices left unmatched by at least one maximum matching.
pub fn missed_by_some_maximum_matching(g: &Graph) -> Result<VertexSet> {
    let mut missed = VertexSet::empty(g.order());
    for m in enumerate_maximum_matchings(g)? {
        missed.union_with(&m.matched_vertices().complement());
    }
    Ok(missed)
}

/// `α(G)` by plain subset enumeration (`n <= 20`).
pub fn independence_number(g: &Graph) -> Result<usize> {
    check_limit(
        "independence oracle",
        crate::subsets::ENUMERATION_LIMIT,
        g.order(),
    )?;
    let masks = g.neighbor_masks().expect("n <= 20");
    let n = g.order();
    Ok((0u64..1 << n)
        .filter(|&s| crate::set::bits(s).all(|v| masks[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}
