//! The Gallai–Edmonds partition `V = D ⊔ A ⊔ C` and the checks that tie it
//! to `ker`.

use alloc::format;
use alloc::vec::Vec;

use crate::critical::{enumerate_critical_sets, ker};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{has_perfect_matching, is_factor_critical, matching_number, max_matching_general};
use crate::outcome::Outcome;
use crate::set::VertexSet;
use crate::subsets::{check_limit, ENUMERATION_LIMIT};

/// Largest `|A|` for which the surplus clause enumerates subsets of `A`.
pub const SURPLUS_LIMIT: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DComponent {
    pub vertices: VertexSet,
    pub factor_critical: bool,
}

impl DComponent {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiEdmondsPartition {
    /// Vertices missed by some maximum matching.
    pub d_set: VertexSet,
    /// `N(D) - D`.
    pub a_set: VertexSet,
    pub c_set: VertexSet,
    /// Components of `G[D]`, ordered by smallest vertex.
    pub d_components: Vec<DComponent>,
}

impl GallaiEdmondsPartition {
    /// Union of the one-vertex components of `G[D]`.
    pub fn singleton_components(&self) -> VertexSet {
        let mut out = VertexSet::empty(self.d_set.universe());
        for c in self.d_components.iter().filter(|c| c.order() == 1) {
            out.union_with(&c.vertices);
        }
        out
    }

    fn component_of(&self, v: usize) -> Option<usize> {
        self.d_components.iter().position(|c| c.vertices.contains(v))
    }
}

/// `D = {v : μ(G - v) = μ(G)}`, by one matching per vertex.
pub fn gallai_edmonds(g: &Graph) -> GallaiEdmondsPartition {
    let n = g.order();
    let mu = matching_number(g);
    let d_set = VertexSet::from_members(
        n,
        (0..n).filter(|&v| {
            matching_number(&g.delete_vertex(v).expect("vertex in range").graph) == mu
        }),
    );
    let a_set = g.neighborhood(&d_set).expect("same universe").minus(&d_set);
    let c_set = d_set.union(&a_set).complement();
    let sub = g.induced_subgraph(&d_set).expect("same universe");
    let d_components = sub
        .graph
        .connected_components()
        .into_iter()
        .map(|local| {
            let piece = sub.graph.induced_subgraph(&local).expect("same universe");
            DComponent {
                factor_critical: is_factor_critical(&piece.graph),
                vertices: sub.lift(&local),
            }
        })
        .collect();
    GallaiEdmondsPartition {
        d_set,
        a_set,
        c_set,
        d_components,
    }
}

/// Per-clause verdicts of the structure check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// `G[C]` has a perfect matching.
    pub c_perfect: Outcome,
    /// Every nonempty `S ⊆ A` is adjacent to at least `|S| + 1` components
    /// of `G[D]`.
    pub a_surplus: Outcome,
    /// The computed maximum matching sends `A` into distinct `D` components.
    pub a_matched_apart: Outcome,
    /// Every component of `G[D]` is factor-critical.
    pub d_factor_critical: Outcome,
    /// No edge joins `D` and `C`.
    pub d_c_separated: Outcome,
}

impl StructureReport {
    pub fn clauses(&self) -> [(&'static str, &Outcome); 5] {
        [
            ("c_perfect_matching", &self.c_perfect),
            ("a_surplus", &self.a_surplus),
            ("a_matched_to_distinct_components", &self.a_matched_apart),
            ("d_components_factor_critical", &self.d_factor_critical),
            ("no_d_c_edges", &self.d_c_separated),
        ]
    }

    pub fn any_failed(&self) -> bool {
        self.clauses().iter().any(|(_, o)| o.is_fail())
    }
}

pub fn check_structure(g: &Graph, p: &GallaiEdmondsPartition) -> StructureReport {
    let c_graph = g.induced_subgraph(&p.c_set).expect("same universe").graph;
    let c_perfect = Outcome::from_bool(has_perfect_matching(&c_graph));

    let a: Vec<usize> = p.a_set.to_vec();
    let a_surplus = if a.len() > SURPLUS_LIMIT {
        Outcome::Skipped(format!("|A| = {} exceeds {}", a.len(), SURPLUS_LIMIT))
    } else {
        // components touched by each vertex of A, as bitmasks over components
        let touch: Vec<Vec<u64>> = a
            .iter()
            .map(|&v| {
                let mut words = alloc::vec![0u64; p.d_components.len().div_ceil(64)];
                for &w in g.neighbors(v) {
                    if let Some(i) = p.component_of(w) {
                        words[i / 64] |= 1 << (i % 64);
                    }
                }
                words
            })
            .collect();
        let ok = (1u32..1 << a.len()).all(|s| {
            let mut union = alloc::vec![0u64; p.d_components.len().div_ceil(64)];
            for (i, t) in touch.iter().enumerate() {
                if s >> i & 1 == 1 {
                    for (u, w) in union.iter_mut().zip(t) {
                        *u |= w;
                    }
                }
            }
            let hit: u32 = union.iter().map(|w| w.count_ones()).sum();
            hit > s.count_ones()
        });
        Outcome::from_bool(ok)
    };

    let m = max_matching_general(g);
    let mut used = alloc::vec![false; p.d_components.len()];
    let a_matched_apart = Outcome::from_bool(a.iter().all(|&v| {
        match m.partner(v).and_then(|w| p.component_of(w)) {
            Some(i) if !used[i] => {
                used[i] = true;
                true
            }
            _ => false,
        }
    }));

    let d_factor_critical = Outcome::from_bool(p.d_components.iter().all(|c| c.factor_critical));
    let d_c_separated = Outcome::from_bool(
        p.d_set
            .iter()
            .all(|v| g.neighbors(v).iter().all(|&w| !p.c_set.contains(w))),
    );
    StructureReport {
        c_perfect,
        a_surplus,
        a_matched_apart,
        d_factor_critical,
        d_c_separated,
    }
}

/// For a disjoint union of factor-critical graphs, each of order at least
/// two: every nonempty independent set has negative difference. Exhaustive.
pub fn factor_critical_deficiency(g: &Graph) -> Result<bool> {
    check_limit("independent set enumeration", ENUMERATION_LIMIT, g.order())?;
    for c in g.connected_components() {
        if c.len() < 2 {
            return Err(Error::Precondition {
                reason: "component of order 1; order strictly greater than 1 required".into(),
                witness: Some(c.to_vec()),
            });
        }
        let piece = g.induced_subgraph(&c)?.graph;
        if !is_factor_critical(&piece) {
            return Err(Error::Precondition {
                reason: "component is not factor-critical".into(),
                witness: Some(c.to_vec()),
            });
        }
    }
    let masks = g.neighbor_masks().expect("n <= 20");
    let ok = (1u64..1 << g.order()).all(|s| {
        let mut nbhd = 0;
        for v in crate::set::bits(s) {
            if masks[v] & s != 0 {
                return true;
            }
            nbhd |= masks[v];
        }
        s.count_ones() < nbhd.count_ones()
    });
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KerLocalization {
    /// `ker(G)` lies inside the singleton components of `G[D]`.
    pub ker_in_singletons: bool,
    /// Every critical independent set lies inside `C` plus the singleton
    /// components; skipped above the enumeration limit.
    pub critical_sets_in_c_and_singletons: Outcome,
}

impl KerLocalization {
    pub fn holds(&self) -> bool {
        self.ker_in_singletons && !self.critical_sets_in_c_and_singletons.is_fail()
    }
}

pub fn ker_localization(g: &Graph, p: &GallaiEdmondsPartition, enumeration_limit: usize) -> KerLocalization {
    let singles = p.singleton_components();
    let ker_in_singletons = ker(g).is_subset(&singles);
    let limit = enumeration_limit.min(ENUMERATION_LIMIT);
    let critical_sets_in_c_and_singletons = if g.order() > limit {
        Outcome::Skipped(format!("n = {} exceeds {}", g.order(), limit))
    } else {
        let room = p.c_set.union(&singles);
        let sets = enumerate_critical_sets(g, true).expect("within limit");
        Outcome::from_bool(sets.iter().all(|s| s.is_subset(&room)))
    };
    KerLocalization {
        ker_in_singletons,
        critical_sets_in_c_and_singletons,
    }
}
