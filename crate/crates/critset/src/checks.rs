//! The per-graph verification checks run by `verify` and `analyze`.
//!
//! Each check compares a polynomial routine with an exhaustive one, or tests
//! a structural identity that must hold for every graph. A check either
//! passes, fails, or is skipped with a reason (size limit or not
//! applicable).

use std::cell::OnceCell;
use std::collections::HashSet;

use critset_core::critical::{
    check_strict_subsets, critical_difference, critical_difference_oracle, critical_pair_balance,
    decompose_minimal, diadem, diadem_within_maximal_bounds, enumerate_critical_sets,
    enumerate_minimal_positive_sets, is_critical_by_matching, ker, ker_diadem_inequality,
    union_is_minimal_union, verify_hx_ker,
};
use critset_core::gallai_edmonds::{
    check_structure, factor_critical_deficiency, gallai_edmonds, ker_localization,
    GallaiEdmondsPartition,
};
use critset_core::independence::{self, enumerate_maximum_independent_sets, is_independent};
use critset_core::matching::{
    is_factor_critical, matching_from_into, matching_number, max_matching_general, Matching,
};
use critset_core::oracle::{self, MATCHING_ORACLE_LIMIT};
use critset_core::unicyclic::{
    disconnected_invariants_with_limit, is_ke_with_limit, recognize_with_order, ColoredUnicyclic,
    Recognition, ReductionOrder,
};
use critset_core::{Error, Graph, Outcome, VertexSet, ENUMERATION_LIMIT};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Size limits for the exponential parts of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Subset enumeration (critical sets, minimal sets, oracles).
    pub enumeration: usize,
    /// Enumeration of all maximum independent sets.
    pub omega: usize,
    /// Exact independence number.
    pub alpha: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 16,
            omega: 20,
            alpha: 40,
        }
    }
}

impl Limits {
    /// Clamps every limit to what the core library supports.
    pub fn clamped(self) -> Self {
        Limits {
            enumeration: self.enumeration.min(ENUMERATION_LIMIT),
            omega: self.omega.min(ENUMERATION_LIMIT),
            alpha: self.alpha.min(independence::ALPHA_HARD_LIMIT),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSettings {
    pub limits: Limits,
    /// Random subset pairs per graph for the supermodularity check.
    pub supermodular_pairs: usize,
    pub seed: u64,
}

impl Default for CheckSettings {
    fn default() -> Self {
        CheckSettings {
            limits: Limits::default(),
            supermodular_pairs: 10_000,
            seed: 0,
        }
    }
}

/// One graph under test, with lazily computed shared facts.
pub struct Subject<'a> {
    pub graph: &'a Graph,
    /// The construction colouring, for generated unicyclic graphs.
    pub coloring: Option<&'a ColoredUnicyclic>,
    /// Number of leaf steps in the construction script.
    pub leaf_steps: Option<usize>,
    /// Position in the corpus; seeds per-graph randomness.
    pub stream: u64,
    dc: OnceCell<usize>,
    ker: OnceCell<VertexSet>,
    diadem: OnceCell<VertexSet>,
    critical: OnceCell<Vec<VertexSet>>,
    critical_independent: OnceCell<Vec<VertexSet>>,
    minimal: OnceCell<Vec<VertexSet>>,
    partition: OnceCell<GallaiEdmondsPartition>,
}

impl<'a> Subject<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        Subject {
            graph,
            coloring: None,
            leaf_steps: None,
            stream: 0,
            dc: OnceCell::new(),
            ker: OnceCell::new(),
            diadem: OnceCell::new(),
            critical: OnceCell::new(),
            critical_independent: OnceCell::new(),
            minimal: OnceCell::new(),
            partition: OnceCell::new(),
        }
    }

    pub fn with_coloring(mut self, coloring: &'a ColoredUnicyclic, leaf_steps: Option<usize>) -> Self {
        self.coloring = Some(coloring);
        self.leaf_steps = leaf_steps;
        self
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    fn n(&self) -> usize {
        self.graph.order()
    }

    fn dc(&self) -> usize {
        *self.dc.get_or_init(|| critical_difference(self.graph))
    }

    fn ker(&self) -> &VertexSet {
        self.ker.get_or_init(|| ker(self.graph))
    }

    fn diadem(&self) -> &VertexSet {
        self.diadem.get_or_init(|| diadem(self.graph))
    }

    fn critical(&self) -> &[VertexSet] {
        self.critical
            .get_or_init(|| enumerate_critical_sets(self.graph, false).expect("caller checked the limit"))
    }

    fn critical_independent(&self) -> &[VertexSet] {
        self.critical_independent
            .get_or_init(|| enumerate_critical_sets(self.graph, true).expect("caller checked the limit"))
    }

    fn minimal(&self) -> &[VertexSet] {
        self.minimal
            .get_or_init(|| enumerate_minimal_positive_sets(self.graph).expect("caller checked the limit"))
    }

    fn partition(&self) -> &GallaiEdmondsPartition {
        self.partition.get_or_init(|| gallai_edmonds(self.graph))
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(salt);
        rng.set_stream(self.stream);
        rng
    }
}

enum Stop {
    Skip(String),
    /// An unexpected error from the core; counted as a failure.
    Broken,
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded { .. } => Stop::Skip(e.to_string()),
            _ => Stop::Broken,
        }
    }
}

type Verdict = Result<bool, Stop>;

fn within(n: usize, limit: usize, what: &str) -> Result<(), Stop> {
    if n > limit {
        Err(Stop::Skip(format!("n = {n} exceeds the {what} limit {limit}")))
    } else {
        Ok(())
    }
}

fn not_applicable(why: &str) -> Verdict {
    Err(Stop::Skip(format!("not applicable: {why}")))
}

fn coloring<'s>(s: &'s Subject) -> Result<&'s ColoredUnicyclic, Stop> {
    s.coloring
        .ok_or_else(|| Stop::Skip("not applicable: no construction colouring".into()))
}

type CheckFn = fn(&Subject, &CheckSettings) -> Verdict;

pub struct Check {
    pub id: &'static str,
    pub summary: &'static str,
    run: CheckFn,
}

impl Check {
    pub fn run(&self, subject: &Subject, settings: &CheckSettings) -> Outcome {
        match (self.run)(subject, settings) {
            Ok(ok) => Outcome::from_bool(ok),
            Err(Stop::Skip(reason)) => Outcome::Skipped(reason),
            Err(Stop::Broken) => Outcome::Fail,
        }
    }
}

macro_rules! checks {
    ($($id:literal => $f:ident : $summary:literal,)*) => {
        static REGISTRY: &[Check] = &[$(Check { id: $id, summary: $summary, run: $f }),*];
    };
}

checks! {
    "dc_oracle" => dc_oracle: "double-cover d_c equals the maximum difference over all subsets",
    "ker_intersection" => ker_intersection: "deletion-test ker equals the intersection of all critical sets",
    "diadem_union" => diadem_union: "diadem formula equals the union of all critical independent sets",
    "ker_critical_independent" => ker_critical_independent: "ker is independent, critical, and inside every critical independent set",
    "ker_in_core" => ker_in_core: "ker is contained in core",
    "supermodularity" => supermodularity: "d(X∪Y) + d(X∩Y) >= d(X) + d(Y) on sampled pairs",
    "critical_closure" => critical_closure: "unions and intersections of critical sets are critical",
    "bipartite_ker_core" => bipartite_ker_core: "ker equals core on bipartite graphs",
    "ker_vertex_deletion" => ker_vertex_deletion: "d_c drops exactly on ker, and ker(G-v) ⊆ ker(G)-v for v in ker",
    "ker_minimal_union" => ker_minimal_union: "ker is the union of the inclusion-minimal positive sets",
    "minimal_difference_one" => minimal_difference_one: "inclusion-minimal positive sets are independent with difference 1",
    "minimal_count_bound" => minimal_count_bound: "there are at least d_c inclusion-minimal positive sets",
    "hx_ker" => hx_ker: "ker of the H_X gadget built on ker is ker itself",
    "minimal_decomposition" => minimal_decomposition: "ker splits into d_c distinct minimal positive sets",
    "minimal_union_converse" => minimal_union_converse: "unions of minimal positive sets are independent with strictly larger difference than any proper subset",
    "matching_criticality" => matching_criticality: "critical independent sets match their neighbourhood in, and the converse over supersets of ker",
    "critical_pair_balance" => critical_pair_balance_check: "|N(X)∩Y| = |N(Y)∩X| for critical independent X, Y",
    "diadem_bound" => diadem_bound: "diadem ⊆ X ∪ N(X) - N(ker) for every maximal critical independent X",
    "ker_diadem_inequality" => ker_diadem_inequality_check: "|ker| + |diadem| <= 2α",
    "diadem_avoids_ker_neighborhood" => diadem_avoids_ker_neighborhood: "diadem is disjoint from N(ker)",
    "matching_oracle" => matching_oracle: "blossom matching is valid and as large as the brute-force maximum",
    "ke_difference" => ke_difference: "d_c = α - μ on König-Egerváry graphs",
    "alpha_oracle" => alpha_oracle: "branch-and-bound α and the maximum independent sets agree with exhaustive search",
    "gallai_edmonds_partition" => gallai_edmonds_partition: "D equals the vertices missed by some maximum matching",
    "gallai_edmonds_structure" => gallai_edmonds_structure: "structure clauses of the Gallai-Edmonds partition",
    "ker_in_singleton_components" => ker_in_singleton_components: "ker lies in the singleton components of G[D]",
    "critical_sets_in_c_and_singletons" => critical_sets_in_c_and_singletons: "critical independent sets lie in C plus the singleton components of G[D]",
    "factor_critical_deficiency" => factor_critical_deficiency_check: "independent sets of factor-critical unions have negative difference",
    "unicyclic_recognition" => unicyclic_recognition: "recognition verdict matches α + μ, and recovered colourings predict α, μ, d_c",
    "disconnected_unicyclic" => disconnected_unicyclic: "d_c = α - μ and the invariants add over the split of a disconnected unicyclic non-KE graph",
    "unicyclic_counts" => unicyclic_counts: "α = |B|+m, μ = |R|+m, d_c = |B|-|R| = α-μ = leaf steps, α+μ = n-1",
    "unicyclic_round_trip" => unicyclic_round_trip: "recognition recovers the construction colouring under two reduction orders",
    "black_in_some_mis" => black_in_some_mis: "some maximum independent set contains every black vertex",
    "red_saturated" => red_saturated: "maximum matchings saturate the red vertices",
    "red_black_matching" => red_black_matching: "a maximum matching covers the red vertices with red-black edges",
    "black_critical" => black_critical: "the black vertices form a critical set",
    "core_in_black" => core_in_black: "core lies inside the black vertices",
}

pub fn registry() -> &'static [Check] {
    REGISTRY
}

pub fn find(id: &str) -> Option<&'static Check> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// Runs `checks` on one subject; `inverted` names a check whose verdict is
/// flipped, to exercise the failure path.
pub fn run_checks(
    subject: &Subject,
    settings: &CheckSettings,
    checks: &[&'static Check],
    inverted: Option<&str>,
) -> Vec<(&'static str, Outcome)> {
    checks
        .iter()
        .map(|c| {
            let mut outcome = c.run(subject, settings);
            if inverted == Some(c.id) {
                outcome = match outcome {
                    Outcome::Pass => Outcome::Fail,
                    Outcome::Fail => Outcome::Pass,
                    skipped => skipped,
                };
            }
            (c.id, outcome)
        })
        .collect()
}

fn dc_oracle(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    Ok(s.dc() == critical_difference_oracle(s.graph)?)
}

fn ker_intersection(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let mut meet = s.graph.vertices();
    for x in s.critical() {
        meet.intersect_with(x);
    }
    Ok(&meet == s.ker())
}

fn diadem_union(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let mut join = VertexSet::empty(s.n());
    for x in s.critical_independent() {
        join.union_with(x);
    }
    Ok(&join == s.diadem())
}

fn ker_critical_independent(s: &Subject, c: &CheckSettings) -> Verdict {
    let k = s.ker();
    let basic = is_independent(s.graph, k)? && s.graph.difference(k)? == s.dc() as i64;
    if !basic || s.n() > c.limits.enumeration {
        return Ok(basic);
    }
    Ok(s.critical_independent().iter().all(|x| k.is_subset(x)))
}

fn ker_in_core(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.omega, "maximum independent set enumeration")?;
    Ok(s.ker().is_subset(&independence::core(s.graph)?))
}

// Differences of every subset, indexed by bitmask.
fn difference_table(g: &Graph) -> Vec<i32> {
    let masks = g.neighbor_masks().expect("n <= 64");
    let n = g.order();
    let mut nbhd = vec![0u64; 1 << n];
    let mut out = vec![0i32; 1 << n];
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        nbhd[s] = nbhd[s & (s - 1)] | masks[v];
        out[s] = s.count_ones() as i32 - nbhd[s].count_ones() as i32;
    }
    out
}

fn supermodularity(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let d = difference_table(s.graph);
    let mut rng = s.rng(c.seed ^ 0x5eed_0001);
    let top = d.len();
    Ok((0..c.supermodular_pairs).all(|_| {
        let x = rng.random_range(0..top);
        let y = rng.random_range(0..top);
        d[x | y] + d[x & y] >= d[x] + d[y]
    }))
}

fn critical_closure(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let sets: HashSet<&VertexSet> = s.critical().iter().collect();
    let list = s.critical();
    let pairs = list.len() * list.len();
    let ok = |x: &VertexSet, y: &VertexSet| sets.contains(&x.union(y)) && sets.contains(&x.intersection(y));
    if pairs <= 4096 {
        return Ok(list.iter().all(|x| list.iter().all(|y| ok(x, y))));
    }
    let mut rng = s.rng(c.seed ^ 0x5eed_0002);
    Ok((0..4096).all(|_| {
        let x = &list[rng.random_range(0..list.len())];
        let y = &list[rng.random_range(0..list.len())];
        ok(x, y)
    }))
}

fn bipartite_ker_core(s: &Subject, c: &CheckSettings) -> Verdict {
    if !s.graph.is_bipartite() {
        return not_applicable("graph is not bipartite");
    }
    within(s.n(), c.limits.omega, "maximum independent set enumeration")?;
    Ok(s.ker() == &independence::core(s.graph)?)
}

fn ker_vertex_deletion(s: &Subject, c: &CheckSettings) -> Verdict {
    let k = s.ker();
    let dc = s.dc();
    // the deletion test must agree with the exhaustive ker
    if s.n() <= c.limits.enumeration {
        let mut meet = s.graph.vertices();
        for x in s.critical() {
            meet.intersect_with(x);
        }
        for v in 0..s.n() {
            let sub = s.graph.delete_vertex(v)?;
            let drops = critical_difference_oracle(&sub.graph)? + 1 == dc;
            if drops != meet.contains(v) {
                return Ok(false);
            }
        }
    }
    for v in k.iter() {
        let sub = s.graph.delete_vertex(v)?;
        let mut rest = k.clone();
        rest.remove(v);
        if !sub.lift(&ker(&sub.graph)).is_subset(&rest) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ker_minimal_union(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let mut join = VertexSet::empty(s.n());
    for x in s.minimal() {
        join.union_with(x);
    }
    Ok(&join == s.ker())
}

fn minimal_difference_one(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    for x in s.minimal() {
        if !is_independent(s.graph, x)? || s.graph.difference(x)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn minimal_count_bound(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    Ok(s.minimal().len() >= s.dc())
}

fn hx_ker(s: &Subject, _: &CheckSettings) -> Verdict {
    if s.dc() == 0 {
        return not_applicable("d_c = 0");
    }
    Ok(verify_hx_ker(s.graph, s.ker())?)
}

fn minimal_decomposition(s: &Subject, c: &CheckSettings) -> Verdict {
    let k = s.ker();
    if k.is_empty() {
        return not_applicable("ker is empty");
    }
    let dec = decompose_minimal(s.graph, k)?;
    if dec.parts.len() != s.dc() || dec.k != s.dc() {
        return Ok(false);
    }
    let mut join = VertexSet::empty(s.n());
    let mut removed = VertexSet::empty(s.n());
    for (i, part) in dec.parts.iter().enumerate() {
        if dec.parts[..i].contains(part)
            || s.graph.difference(part)? != 1
            || !part.is_subset(&k.minus(&removed))
            || !part.contains(dec.representatives[i])
        {
            return Ok(false);
        }
        // inclusion-minimal: no proper subset is positive
        if check_strict_subsets(s.graph, part).is_err() {
            return Ok(false);
        }
        removed.insert(dec.representatives[i]);
        join.union_with(part);
    }
    if s.n() <= c.limits.enumeration && !dec.parts.iter().all(|p| s.minimal().contains(p)) {
        return Ok(false);
    }
    Ok(&join == k)
}

fn minimal_union_converse(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let minimal = s.minimal();
    if minimal.is_empty() {
        return not_applicable("no minimal positive sets");
    }
    let max_family = if minimal.len() <= 10 { minimal.len() } else { 2 };
    let mut unions: HashSet<VertexSet> = HashSet::new();
    let mut stack: Vec<(usize, VertexSet, usize)> = vec![(0, VertexSet::empty(s.n()), 0)];
    while let Some((start, acc, size)) = stack.pop() {
        for (i, part) in minimal.iter().enumerate().skip(start) {
            let u = acc.union(part);
            if size + 1 < max_family {
                stack.push((i + 1, u.clone(), size + 1));
            }
            unions.insert(u);
        }
    }
    for x in &unions {
        if !union_is_minimal_union(s.graph, x)? {
            return Ok(false);
        }
        match check_strict_subsets(s.graph, x) {
            Ok(_) => {}
            Err(Error::LimitExceeded { .. }) => continue,
            Err(_) => return Ok(false),
        }
    }
    Ok(true)
}

fn matching_criticality(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let g = s.graph;
    // critical independent sets admit a matching from N(S) into S
    for x in s.critical_independent() {
        if matching_from_into(g, &g.neighborhood(x)?, x)?.is_none() {
            return Ok(false);
        }
    }
    // independent supersets of ker with such a matching are critical
    let k = s.ker();
    let free: Vec<usize> = k.union(&g.neighborhood(k)?).complement().to_vec();
    let dc = s.dc() as i64;
    for mask in 0u64..1 << free.len() {
        let mut x = k.clone();
        for (i, &v) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x.insert(v);
            }
        }
        if !is_independent(g, &x)? {
            continue;
        }
        if is_critical_by_matching(g, &x)? && g.difference(&x)? != dc {
            return Ok(false);
        }
    }
    // core is critical iff its neighbourhood matches into it
    if s.n() <= c.limits.omega {
        let core = independence::core(g)?;
        let critical = g.difference(&core)? == dc;
        let matches = matching_from_into(g, &g.neighborhood(&core)?, &core)?.is_some();
        if critical != matches {
            return Ok(false);
        }
    }
    Ok(true)
}

fn critical_pair_balance_check(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration.min(10), "pairwise")?;
    let sets = s.critical_independent();
    for (i, x) in sets.iter().enumerate() {
        for y in &sets[i..] {
            if !critical_pair_balance(s.graph, x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn diadem_bound(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    Ok(diadem_within_maximal_bounds(s.graph)?)
}

fn ker_diadem_inequality_check(s: &Subject, c: &CheckSettings) -> Verdict {
    Ok(ker_diadem_inequality(s.graph, c.limits.alpha)?)
}

fn diadem_avoids_ker_neighborhood(s: &Subject, _: &CheckSettings) -> Verdict {
    Ok(s.diadem().is_disjoint(&s.graph.neighborhood(s.ker())?))
}

fn matching_oracle(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), MATCHING_ORACLE_LIMIT.min(12), "brute-force matching")?;
    let g = s.graph;
    let m = max_matching_general(g);
    if !m.is_valid_for(g) || m.size() != oracle::max_matching_size(g) {
        return Ok(false);
    }
    let mu = m.size();
    for v in 0..s.n() {
        let sub = matching_number(&g.delete_vertex(v)?.graph);
        if sub != mu && sub + 1 != mu {
            return Ok(false);
        }
    }
    if g.is_bipartite() && s.n() <= c.limits.omega {
        return Ok(oracle::independence_number(g)? + mu == s.n());
    }
    Ok(true)
}

fn ke_difference(s: &Subject, c: &CheckSettings) -> Verdict {
    let a = independence::alpha_with_limit(s.graph, c.limits.alpha)?;
    let mu = matching_number(s.graph);
    if a + mu != s.n() {
        return not_applicable("not König-Egerváry");
    }
    Ok(s.dc() as i64 == a as i64 - mu as i64)
}

fn alpha_oracle(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.omega, "maximum independent set enumeration")?;
    let g = s.graph;
    let a = oracle::independence_number(g)?;
    if independence::alpha_with_limit(g, c.limits.alpha)? != a {
        return Ok(false);
    }
    let omega = enumerate_maximum_independent_sets(g)?;
    let mut meet = g.vertices();
    for x in &omega {
        if x.len() != a || !is_independent(g, x)? {
            return Ok(false);
        }
        meet.intersect_with(x);
    }
    Ok(!omega.is_empty() && meet == independence::core(g)?)
}

fn gallai_edmonds_partition(s: &Subject, _: &CheckSettings) -> Verdict {
    within(s.n(), 10, "maximum matching enumeration")?;
    Ok(s.partition().d_set == oracle::missed_by_some_maximum_matching(s.graph)?)
}

fn gallai_edmonds_structure(s: &Subject, _: &CheckSettings) -> Verdict {
    let p = s.partition();
    let cover = p.d_set.union(&p.a_set).union(&p.c_set);
    let disjoint = p.d_set.is_disjoint(&p.a_set) && p.d_set.is_disjoint(&p.c_set) && p.a_set.is_disjoint(&p.c_set);
    Ok(cover == s.graph.vertices() && disjoint && !check_structure(s.graph, p).any_failed())
}

fn ker_in_singleton_components(s: &Subject, _: &CheckSettings) -> Verdict {
    Ok(s.ker().is_subset(&s.partition().singleton_components()))
}

fn critical_sets_in_c_and_singletons(s: &Subject, c: &CheckSettings) -> Verdict {
    within(s.n(), c.limits.enumeration, "enumeration")?;
    let l = ker_localization(s.graph, s.partition(), c.limits.enumeration);
    Ok(l.holds() && l.critical_sets_in_c_and_singletons.is_pass())
}

fn factor_critical_deficiency_check(s: &Subject, c: &CheckSettings) -> Verdict {
    let g = s.graph;
    let applicable = s.n() > 0
        && g.connected_components().iter().all(|comp| {
            comp.len() >= 2 && is_factor_critical(&g.induced_subgraph(comp).expect("own component").graph)
        });
    if !applicable {
        return not_applicable("not a union of factor-critical graphs of order >= 2");
    }
    within(s.n(), c.limits.enumeration, "enumeration")?;
    Ok(factor_critical_deficiency(g)?)
}

fn unicyclic_recognition(s: &Subject, c: &CheckSettings) -> Verdict {
    let g = s.graph;
    if !g.is_connected() || g.cycle_rank() != 1 {
        return not_applicable("not connected unicyclic");
    }
    let ke = is_ke_with_limit(g, c.limits.alpha)?;
    match recognize_with_order(g, ReductionOrder::Lowest)? {
        Recognition::Ke(_) => Ok(ke),
        Recognition::NonKe(colored) => {
            let again = recognize_with_order(g, ReductionOrder::Seeded(c.seed ^ s.stream))?;
            Ok(!ke && again == Recognition::NonKe(colored.clone()) && predictions_hold(&colored, c)?)
        }
    }
}

fn predictions_hold(colored: &ColoredUnicyclic, c: &CheckSettings) -> Result<bool, Stop> {
    let g = &colored.graph;
    let a = independence::alpha_with_limit(g, c.limits.alpha)?;
    let mu = matching_number(g);
    let dc = critical_difference(g);
    Ok(a == colored.predicted_alpha()
        && mu == colored.predicted_mu()
        && dc == colored.predicted_critical_difference()
        && dc as i64 == a as i64 - mu as i64
        && a + mu + 1 == g.order())
}

fn disconnected_unicyclic(s: &Subject, c: &CheckSettings) -> Verdict {
    let g = s.graph;
    if g.is_connected() || g.cycle_rank() != 1 {
        return not_applicable("not a disconnected unicyclic graph");
    }
    if is_ke_with_limit(g, c.limits.alpha)? {
        return not_applicable("graph is König-Egerváry");
    }
    Ok(disconnected_invariants_with_limit(g, c.limits.alpha)?.all_hold())
}

fn unicyclic_counts(s: &Subject, c: &CheckSettings) -> Verdict {
    let colored = coloring(s)?;
    let leaves_ok = match s.leaf_steps {
        Some(l) => colored.predicted_critical_difference() == l,
        None => true,
    };
    Ok(leaves_ok && predictions_hold(colored, c)?)
}

fn unicyclic_round_trip(s: &Subject, c: &CheckSettings) -> Verdict {
    let colored = coloring(s)?;
    for order in [ReductionOrder::Lowest, ReductionOrder::Seeded(c.seed ^ s.stream)] {
        match recognize_with_order(s.graph, order)? {
            Recognition::NonKe(r) if &r == colored => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn black_in_some_mis(s: &Subject, c: &CheckSettings) -> Verdict {
    let colored = coloring(s)?;
    let g = s.graph;
    let black = &colored.black;
    if s.n() <= c.limits.omega {
        return Ok(enumerate_maximum_independent_sets(g)?.iter().any(|x| black.is_subset(x)));
    }
    // equivalently: B is independent and extends to a maximum independent set
    if !is_independent(g, black)? {
        return Ok(false);
    }
    let rest = g.delete_vertices(&black.union(&g.neighborhood(black)?))?;
    let a = independence::alpha_with_limit(g, c.limits.alpha)?;
    Ok(black.len() + independence::alpha_with_limit(&rest.graph, c.limits.alpha)? == a)
}

fn red_saturated(s: &Subject, c: &CheckSettings) -> Verdict {
    let colored = coloring(s)?;
    let g = s.graph;
    let covers = |m: &Matching| colored.red.iter().all(|r| m.is_matched(r));
    if !covers(&max_matching_general(g)) {
        return Ok(false);
    }
    // restart the matcher on shuffled labellings
    let mut rng = s.rng(c.seed ^ 0x5eed_0003);
    let mut perm: Vec<usize> = (0..s.n()).collect();
    for _ in 0..4 {
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        let m = max_matching_general(&h);
        let back = Matching::from_pairs(s.n(), m.edges().into_iter().map(|(u, v)| {
            let inv = |x| perm.iter().position(|&p| p == x).expect("permutation");
            (inv(u), inv(v))
        }));
        if !back.is_valid_for(g) || !covers(&back) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn red_black_matching(s: &Subject, _: &CheckSettings) -> Verdict {
    let colored = coloring(s)?;
    let m = colored.red_black_matching();
    let red_black = colored
        .red
        .iter()
        .all(|r| m.partner(r).is_some_and(|b| colored.black.contains(b)));
    Ok(m.is_valid_for(s.graph) && m.size() == matching_number(s.graph) && red_black)
}

fn black_critical(s: &Subject, _: &CheckSettings) -> Verdict {
    let colored = coloring(s)?;
    let b = &colored.black;
    Ok(is_critical_by_matching(s.graph, b)? && s.graph.difference(b)? == s.dc() as i64)
}

fn core_in_black(s: &Subject, c: &CheckSettings) -> Verdict {
    let colored = coloring(s)?;
    within(s.n(), c.limits.omega, "maximum independent set enumeration")?;
    Ok(independence::core(s.graph)?.is_subset(&colored.black))
}
