use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::independence::inner_edge;
use crate::set::VertexSet;
use crate::subsets::{lex_combinations, LocalDifference, SubsetTable};

/// `x` split into `k = d(x)` inclusion-minimal positive sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalDecomposition {
    pub x: VertexSet,
    pub k: usize,
    pub parts: Vec<VertexSet>,
    /// `representatives[i] ∈ parts[i]` and lies in no later part.
    pub representatives: Vec<usize>,
}

/// All inclusion-minimal sets with positive difference, in lexicographic
/// order. Minimality is certified against every proper subset, not just the
/// one-vertex deletions.
pub fn enumerate_minimal_positive_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let table = SubsetTable::new(g, "minimal positive set enumeration")?;
    let flags = table.minimal_positive_flags();
    let mut out: Vec<VertexSet> = flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(s, _)| VertexSet::from_mask(g.order(), s as u64))
        .collect();
    out.sort();
    Ok(out)
}

/// A smallest subset of `s` with positive difference, lexicographically
/// first among those of that size. Such a subset is inclusion-minimal.
pub fn min_cardinality_positive_subset(g: &Graph, s: &VertexSet) -> Result<Option<VertexSet>> {
    let s = g.adopt(s)?;
    let mut local = LocalDifference::new(g, &s)?;
    for k in 1..=local.len() {
        for mask in lex_combinations(local.len(), k) {
            if local.difference(mask) > 0 {
                return Ok(Some(local.to_set(g.order(), mask)));
            }
        }
    }
    Ok(None)
}

/// Checks that `x` is independent, `d(x) > 0`, and every proper subset has
/// strictly smaller difference; returns `d(x)`.
pub fn check_strict_subsets(g: &Graph, x: &VertexSet) -> Result<usize> {
    let x = g.adopt(x)?;
    if let Some((u, v)) = inner_edge(g, &x) {
        return Err(Error::NotIndependent(u, v));
    }
    let mut local = LocalDifference::new(g, &x)?;
    let full = (1u64 << local.len()) - 1;
    let dx = local.difference(full);
    if dx <= 0 {
        return Err(Error::Precondition {
            reason: format!("difference {dx} is not positive"),
            witness: Some(x.to_vec()),
        });
    }
    let mut offender = None;
    local.walk(|mask, d| {
        if mask != full && d >= dx {
            offender = Some(mask);
        }
        offender.is_none()
    });
    match offender {
        Some(mask) => Err(Error::Precondition {
            reason: format!("proper subset reaches difference {dx}"),
            witness: Some(local.to_set(g.order(), mask).to_vec()),
        }),
        None => Ok(dx as usize),
    }
}

/// Splits `x` into `d(x)` distinct inclusion-minimal positive sets.
///
/// Part `i` is the lexicographically first minimum-cardinality positive
/// subset of `x` minus the earlier representatives; its representative is
/// its smallest vertex.
pub fn decompose_minimal(g: &Graph, x: &VertexSet) -> Result<MinimalDecomposition> {
    let x = g.adopt(x)?.into_owned();
    let k = check_strict_subsets(g, &x)?;
    let mut remaining = x.clone();
    let mut parts = Vec::with_capacity(k);
    let mut representatives = Vec::with_capacity(k);
    for _ in 0..k {
        let part = min_cardinality_positive_subset(g, &remaining)?
            .expect("d(remaining) >= k - i > 0 forces a positive subset");
        let rep = part.first().expect("positive sets are nonempty");
        remaining.remove(rep);
        representatives.push(rep);
        parts.push(part);
    }
    Ok(MinimalDecomposition {
        x,
        k,
        parts,
        representatives,
    })
}

/// Whether `x` is a (nonempty) union of inclusion-minimal positive sets.
pub fn union_is_minimal_union(g: &Graph, x: &VertexSet) -> Result<bool> {
    let x = g.adopt(x)?;
    if x.is_empty() {
        return Ok(false);
    }
    let mut join = VertexSet::empty(g.order());
    for s in enumerate_minimal_positive_sets(g)? {
        if s.is_subset(&x) {
            join.union_with(&s);
        }
    }
    Ok(join == *x)
}
