//! Bitmask machinery behind the exhaustive oracles.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::{bits, VertexSet};

/// Hard cap on `n` for routines that walk all `2^n` vertex subsets.
pub const ENUMERATION_LIMIT: usize = 20;

/// Hard cap on `|S|` for routines that walk all subsets of a given set `S`.
pub const SUBSET_LIMIT: usize = 25;

pub(crate) fn check_limit(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::LimitExceeded {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}

/// `N(S)` for every `S ⊆ V`, indexed by mask.
pub(crate) struct SubsetTable {
    nbhd: Vec<u32>,
}

impl SubsetTable {
    pub fn new(g: &Graph, what: &'static str) -> Result<Self> {
        let n = g.order();
        check_limit(what, ENUMERATION_LIMIT, n)?;
        let masks: Vec<u32> = g
            .neighbor_masks()
            .expect("n <= 20")
            .into_iter()
            .map(|m| m as u32)
            .collect();
        let mut nbhd = vec![0u32; 1 << n];
        for s in 1usize..1 << n {
            let low = s.trailing_zeros() as usize;
            nbhd[s] = nbhd[s & (s - 1)] | masks[low];
        }
        Ok(SubsetTable { nbhd })
    }

    pub fn count(&self) -> usize {
        self.nbhd.len()
    }

    pub fn difference(&self, s: u32) -> i32 {
        s.count_ones() as i32 - self.nbhd[s as usize].count_ones() as i32
    }

    pub fn is_independent(&self, s: u32) -> bool {
        self.nbhd[s as usize] & s == 0
    }

    pub fn max_difference(&self) -> i32 {
        (0..self.count() as u32)
            .map(|s| self.difference(s))
            .max()
            .unwrap_or(0)
    }

    /// `flags[S]` is true when `S` has positive difference and no proper
    /// subset of `S` does.
    pub fn minimal_positive_flags(&self) -> Vec<bool> {
        // below[S]: some proper subset of S has positive difference.
        let count = self.count();
        let mut below = vec![false; count];
        let mut positive_within = vec![false; count];
        for s in 0..count {
            let mut hit = false;
            let mut rest = s;
            while rest != 0 && !hit {
                let bit = rest & rest.wrapping_neg();
                hit = positive_within[s ^ bit];
                rest ^= bit;
            }
            below[s] = hit;
            positive_within[s] = hit || self.difference(s as u32) > 0;
        }
        (0..count)
            .map(|s| !below[s] && self.difference(s as u32) > 0)
            .collect()
    }
}

/// Differences of the subsets of a fixed vertex list, computed over the
/// compressed universe `N(members)`.
pub(crate) struct LocalDifference {
    members: Vec<usize>,
    nbrs: Vec<Vec<u64>>,
    lists: Vec<Vec<usize>>,
    width: usize,
    scratch: Vec<u64>,
}

impl LocalDifference {
    pub fn new(g: &Graph, x: &VertexSet) -> Result<Self> {
        let members = x.to_vec();
        check_limit("subset enumeration", SUBSET_LIMIT, members.len())?;
        let nx = g.neighborhood(x)?;
        let mut index = vec![usize::MAX; g.order()];
        for (i, v) in nx.iter().enumerate() {
            index[v] = i;
        }
        let words = nx.len().div_ceil(64).max(1);
        let nbrs = members
            .iter()
            .map(|&u| {
                let mut w = vec![0u64; words];
                for &v in g.neighbors(u) {
                    let i = index[v];
                    w[i / 64] |= 1 << (i % 64);
                }
                w
            })
            .collect();
        let lists = members
            .iter()
            .map(|&u| g.neighbors(u).iter().map(|&v| index[v]).collect())
            .collect();
        Ok(LocalDifference {
            members,
            nbrs,
            lists,
            width: nx.len(),
            scratch: vec![0; words],
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn difference(&mut self, mask: u64) -> i64 {
        self.scratch.iter_mut().for_each(|w| *w = 0);
        for i in bits(mask) {
            for (s, n) in self.scratch.iter_mut().zip(&self.nbrs[i]) {
                *s |= n;
            }
        }
        let covered: u32 = self.scratch.iter().map(|w| w.count_ones()).sum();
        mask.count_ones() as i64 - covered as i64
    }

    /// Visits every mask once in Gray-code order together with its
    /// difference; stops when `visit` returns false.
    pub fn walk(&self, mut visit: impl FnMut(u64, i64) -> bool) {
        let mut count = vec![0u32; self.width];
        let (mut mask, mut covered) = (0u64, 0i64);
        if !visit(0, 0) {
            return;
        }
        for step in 1..1u64 << self.len() {
            let i = step.trailing_zeros() as usize;
            mask ^= 1 << i;
            if mask & 1 << i != 0 {
                for &j in &self.lists[i] {
                    count[j] += 1;
                    covered += (count[j] == 1) as i64;
                }
            } else {
                for &j in &self.lists[i] {
                    count[j] -= 1;
                    covered -= (count[j] == 0) as i64;
                }
            }
            if !visit(mask, mask.count_ones() as i64 - covered) {
                return;
            }
        }
    }

    pub fn to_set(&self, universe: usize, mask: u64) -> VertexSet {
        VertexSet::from_members(universe, bits(mask).map(|i| self.members[i]))
    }
}

/// Index masks of the `k`-subsets of `0..len` in lexicographic order of the
/// sorted index lists.
pub(crate) fn lex_combinations(len: usize, k: usize) -> impl Iterator<Item = u64> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > len;
    core::iter::from_fn(move || {
        if done {
            return None;
        }
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < len - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<u64> = lex_combinations(4, 2).collect();
        assert_eq!(all, [0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(lex_combinations(3, 0).collect::<Vec<_>>(), [0]);
        assert_eq!(lex_combinations(2, 3).count(), 0);
        assert_eq!(lex_combinations(5, 5).collect::<Vec<_>>(), [0b11111]);
    }

    #[test]
    fn table_matches_direct_difference() {
        let g = Graph::petersen();
        let t = SubsetTable::new(&g, "test").unwrap();
        for s in [0u32, 1, 0b11, 0b1010110101, 0b1111111111] {
            let set = VertexSet::from_mask(10, s as u64);
            assert_eq!(t.difference(s) as i64, g.difference(&set).unwrap());
        }
    }

    #[test]
    fn local_difference_matches_graph() {
        let g = Graph::star(3);
        let x = g.vertex_set([1, 2, 3]).unwrap();
        let mut local = LocalDifference::new(&g, &x).unwrap();
        assert_eq!(local.difference(0b111), 2);
        assert_eq!(local.difference(0b001), 0);
        assert_eq!(local.difference(0), 0);
        let mut seen = Vec::new();
        local.walk(|m, d| {
            seen.push((m, d));
            true
        });
        seen.sort();
        let direct: Vec<_> = (0..8).map(|m| (m, local.difference(m))).collect();
        assert_eq!(seen, direct);
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            SubsetTable::new(&Graph::empty(21), "x"),
            Err(Error::LimitExceeded { limit: 20, actual: 21, .. })
        ));
    }
}
