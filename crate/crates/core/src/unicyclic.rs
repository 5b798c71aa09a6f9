//! Connected unicyclic graphs that are not König–Egerváry.
//!
//! Such a graph is exactly what the following construction can produce:
//! start from an odd cycle (blue), then repeatedly either hang a path of
//! length two (a red vertex, then a black one) from any vertex, or hang a
//! black leaf from a red vertex. [`generate`] runs the construction;
//! [`recognize`] runs it backwards and recovers the colouring.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::critical::critical_difference;
use crate::error::{Error, Result, ScriptFault};
use crate::graph::Graph;
use crate::independence;
use crate::matching::{matching_number, Matching};
use crate::set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// Hang `target - red - black`.
    AttachPath2(usize),
    /// Hang a black leaf from the red vertex `target`.
    AttachLeaf(usize),
}

/// A replayable construction. Vertex ids are assigned in creation order,
/// cycle first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BuildScript {
    pub cycle_length: usize,
    pub steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Blue,
    Red,
    Black,
}

/// A connected unicyclic non-KE graph with its construction colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredUnicyclic {
    pub graph: Graph,
    /// Cycle vertices in cyclic order (smallest first).
    pub cycle: Vec<usize>,
    pub blue: VertexSet,
    pub red: VertexSet,
    pub black: VertexSet,
    /// Parent in the forest left after deleting the cycle edges; `None` on
    /// the cycle, whose vertices are the roots.
    pub parent: Vec<Option<usize>>,
}

impl ColoredUnicyclic {
    /// Half the cycle length, rounded down.
    pub fn m(&self) -> usize {
        self.cycle.len() / 2
    }

    pub fn color(&self, v: usize) -> Color {
        if self.red.contains(v) {
            Color::Red
        } else if self.black.contains(v) {
            Color::Black
        } else {
            Color::Blue
        }
    }

    /// `|B| + m`.
    pub fn predicted_alpha(&self) -> usize {
        self.black.len() + self.m()
    }

    /// `|R| + m`.
    pub fn predicted_mu(&self) -> usize {
        self.red.len() + self.m()
    }

    /// `|B| - |R|`.
    pub fn predicted_critical_difference(&self) -> usize {
        self.black.len() - self.red.len()
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&c| self.parent[c] == Some(v))
    }

    /// A maximum matching covering every red vertex with a red–black edge:
    /// each red vertex takes its smallest black child, and the cycle
    /// contributes `m` alternate edges.
    pub fn red_black_matching(&self) -> Matching {
        let mut pairs = Vec::new();
        for r in self.red.iter() {
            let child = self
                .children(r)
                .find(|&c| self.black.contains(c))
                .expect("every red vertex has a black child");
            pairs.push((r, child));
        }
        for i in 0..self.m() {
            pairs.push((self.cycle[2 * i], self.cycle[2 * i + 1]));
        }
        Matching::from_pairs(self.graph.order(), pairs)
    }
}

/// Replays a script.
pub fn generate(script: &BuildScript) -> Result<ColoredUnicyclic> {
    let k = script.cycle_length;
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Script {
            step: 0,
            fault: ScriptFault::BadCycleLength(k),
        });
    }
    let mut colors = vec![Color::Blue; k];
    let mut parent = vec![None; k];
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let mut red_count = 0;
    for (i, step) in script.steps.iter().enumerate() {
        let n = colors.len();
        let fail = |fault| Err(Error::Script { step: i, fault });
        match *step {
            Step::AttachPath2(u) => {
                if u >= n {
                    return fail(ScriptFault::UnknownVertex(u));
                }
                edges.push((u, n));
                edges.push((n, n + 1));
                colors.extend([Color::Red, Color::Black]);
                parent.extend([Some(u), Some(n)]);
                red_count += 1;
            }
            Step::AttachLeaf(u) => {
                if red_count == 0 {
                    return fail(ScriptFault::NoRedVertex);
                }
                if u >= n {
                    return fail(ScriptFault::UnknownVertex(u));
                }
                if colors[u] != Color::Red {
                    return fail(ScriptFault::NotRed(u));
                }
                edges.push((u, n));
                colors.push(Color::Black);
                parent.push(Some(u));
            }
        }
    }
    let n = colors.len();
    let graph = Graph::new(n, edges)?;
    let pick = |c: Color| VertexSet::from_members(n, (0..n).filter(|&v| colors[v] == c));
    Ok(ColoredUnicyclic {
        cycle: (0..k).collect(),
        blue: pick(Color::Blue),
        red: pick(Color::Red),
        black: pick(Color::Black),
        parent,
        graph,
    })
}

/// A reproducible random script with the given step counts.
///
/// Path steps hang from a uniformly chosen existing vertex, leaf steps from
/// a uniformly chosen red vertex; the kind of each step is drawn in
/// proportion to the remaining counts (a leaf step is never drawn before a
/// red vertex exists).
pub fn generate_random(
    cycle_length: usize,
    n_path2: usize,
    n_leaf: usize,
    seed: u64,
) -> Result<(BuildScript, ColoredUnicyclic)> {
    if cycle_length < 3 || cycle_length.is_multiple_of(2) {
        return Err(Error::Script {
            step: 0,
            fault: ScriptFault::BadCycleLength(cycle_length),
        });
    }
    if n_leaf > 0 && n_path2 == 0 {
        return Err(Error::Script {
            step: 0,
            fault: ScriptFault::LeavesWithoutPaths,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = Vec::with_capacity(n_path2 + n_leaf);
    let mut reds: Vec<usize> = Vec::new();
    let mut n = cycle_length;
    let (mut paths_left, mut leaves_left) = (n_path2, n_leaf);
    while paths_left + leaves_left > 0 {
        let leaf = if reds.is_empty() || leaves_left == 0 {
            false
        } else if paths_left == 0 {
            true
        } else {
            rng.random_range(0..paths_left + leaves_left) < leaves_left
        };
        if leaf {
            let target = reds[rng.random_range(0..reds.len())];
            steps.push(Step::AttachLeaf(target));
            n += 1;
            leaves_left -= 1;
        } else {
            let target = rng.random_range(0..n);
            steps.push(Step::AttachPath2(target));
            reds.push(n);
            n += 2;
            paths_left -= 1;
        }
    }
    let script = BuildScript {
        cycle_length,
        steps,
    };
    let colored = generate(&script)?;
    Ok((script, colored))
}

/// Why [`recognize`] concluded the graph is König–Egerváry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeReason {
    EvenCycle,
    /// A pendant vertex hangs directly off the cycle (after `reductions`
    /// reductions).
    LeafOnCycle { reductions: usize },
    /// Some tree is still nontrivial but no reduction applies.
    Stuck { reductions: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    NonKe(ColoredUnicyclic),
    Ke(KeReason),
}

/// Which reducible vertex to take in each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    Lowest,
    Seeded(u64),
}

/// Recognises connected unicyclic non-KE graphs, picking the lowest-numbered
/// reducible vertex each round.
pub fn recognize(g: &Graph) -> Result<Recognition> {
    recognize_with_order(g, ReductionOrder::Lowest)
}

pub fn recognize_with_order(g: &Graph, order: ReductionOrder) -> Result<Recognition> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let cycle = g
        .find_unique_cycle()?
        .ok_or(Error::NotUnicyclic { cycles: 0 })?;
    if cycle.len() % 2 == 0 {
        return Ok(Recognition::Ke(KeReason::EvenCycle));
    }
    let n = g.order();
    let parent = rooted_parents(g, &cycle);
    let mut rng = match order {
        ReductionOrder::Lowest => None,
        ReductionOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };

    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut colors: Vec<Color> = vec![Color::Blue; n];
    let mut remaining = n - cycle.len();
    let mut reductions = 0;
    let is_leaf = |v: usize, alive: &[bool], deg: &[usize]| -> bool {
        alive[v] && parent[v].is_some() && deg[v] == 1
    };

    while remaining > 0 {
        // leaf children per alive non-root vertex
        let mut leaf_children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            if is_leaf(v, &alive, &deg) {
                let p = parent[v].expect("leaves are not roots");
                if parent[p].is_none() {
                    return Ok(Recognition::Ke(KeReason::LeafOnCycle { reductions }));
                }
                leaf_children[p].push(v);
            }
        }
        let candidates: Vec<usize> = (0..n)
            .filter(|&x| {
                let k = leaf_children[x].len();
                alive[x] && parent[x].is_some() && (k >= 2 || (k == 1 && deg[x] == 2))
            })
            .collect();
        if candidates.is_empty() {
            return Ok(Recognition::Ke(KeReason::Stuck { reductions }));
        }
        let x = match rng.as_mut() {
            None => candidates[0],
            Some(r) => candidates[r.random_range(0..candidates.len())],
        };
        let leaves = &leaf_children[x];
        let remove = |v: usize, alive: &mut [bool], deg: &mut [usize]| {
            alive[v] = false;
            for &w in g.neighbors(v) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        };
        if leaves.len() >= 2 {
            let leaf = match rng.as_mut() {
                None => leaves[0],
                Some(r) => leaves[r.random_range(0..leaves.len())],
            };
            colors[leaf] = Color::Black;
            remove(leaf, &mut alive, &mut deg);
            remaining -= 1;
        } else {
            let leaf = leaves[0];
            colors[leaf] = Color::Black;
            colors[x] = Color::Red;
            remove(leaf, &mut alive, &mut deg);
            remove(x, &mut alive, &mut deg);
            remaining -= 2;
        }
        reductions += 1;
    }

    let pick = |c: Color| VertexSet::from_members(n, (0..n).filter(|&v| colors[v] == c));
    Ok(Recognition::NonKe(ColoredUnicyclic {
        graph: g.clone(),
        blue: pick(Color::Blue),
        red: pick(Color::Red),
        black: pick(Color::Black),
        cycle,
        parent,
    }))
}

// Parents in the forest obtained by deleting the cycle edges, rooted on the cycle.
fn rooted_parents(g: &Graph, cycle: &[usize]) -> Vec<Option<usize>> {
    let n = g.order();
    let mut on_cycle = vec![false; n];
    for &c in cycle {
        on_cycle[c] = true;
    }
    let mut parent = vec![None; n];
    let mut seen = on_cycle.clone();
    let mut stack: Vec<usize> = cycle.to_vec();
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                stack.push(v);
            }
        }
    }
    parent
}

/// `α(G) + μ(G) = n`, with `α` from the branch-and-bound search.
pub fn is_ke(g: &Graph) -> Result<bool> {
    is_ke_with_limit(g, independence::ALPHA_LIMIT)
}

pub fn is_ke_with_limit(g: &Graph, alpha_limit: usize) -> Result<bool> {
    let a = independence::alpha_with_limit(g, alpha_limit)?;
    Ok(a + matching_number(g) == g.order())
}

/// Invariants of one part of a split graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartInvariants {
    pub order: usize,
    pub critical_difference: usize,
    pub alpha: usize,
    pub mu: usize,
}

impl PartInvariants {
    fn of(g: &Graph, alpha_limit: usize) -> Result<Self> {
        Ok(PartInvariants {
            order: g.order(),
            critical_difference: critical_difference(g),
            alpha: independence::alpha_with_limit(g, alpha_limit)?,
            mu: matching_number(g),
        })
    }
}

/// A disconnected unicyclic non-KE graph split as `G' ⊕ F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisconnectedReport {
    /// Vertices of the component carrying the cycle.
    pub cycle_component: VertexSet,
    pub whole: PartInvariants,
    pub cycle_part: PartInvariants,
    pub forest_part: PartInvariants,
}

impl DisconnectedReport {
    pub fn critical_difference_adds(&self) -> bool {
        self.whole.critical_difference
            == self.cycle_part.critical_difference + self.forest_part.critical_difference
    }

    pub fn alpha_adds(&self) -> bool {
        self.whole.alpha == self.cycle_part.alpha + self.forest_part.alpha
    }

    pub fn mu_adds(&self) -> bool {
        self.whole.mu == self.cycle_part.mu + self.forest_part.mu
    }

    /// `d_c(G) = α(G) - μ(G)`.
    pub fn difference_identity(&self) -> bool {
        self.whole.critical_difference as i64 == self.whole.alpha as i64 - self.whole.mu as i64
    }

    pub fn all_hold(&self) -> bool {
        self.critical_difference_adds()
            && self.alpha_adds()
            && self.mu_adds()
            && self.difference_identity()
    }
}

pub fn disconnected_invariants(g: &Graph) -> Result<DisconnectedReport> {
    disconnected_invariants_with_limit(g, independence::ALPHA_LIMIT)
}

pub fn disconnected_invariants_with_limit(
    g: &Graph,
    alpha_limit: usize,
) -> Result<DisconnectedReport> {
    let cycle = g
        .find_unique_cycle()?
        .ok_or(Error::NotUnicyclic { cycles: 0 })?;
    let components = g.connected_components();
    if components.len() < 2 {
        return Err(Error::precondition("graph is connected; expected G' ⊕ F"));
    }
    let cycle_component = components
        .into_iter()
        .find(|c| c.contains(cycle[0]))
        .expect("cycle lies in some component");
    let cycle_graph = g.induced_subgraph(&cycle_component)?.graph;
    let forest = g.delete_vertices(&cycle_component)?.graph;
    let whole = PartInvariants::of(g, alpha_limit)?;
    if whole.alpha + whole.mu == g.order() {
        return Err(Error::precondition("graph is König–Egerváry"));
    }
    Ok(DisconnectedReport {
        cycle_component,
        whole,
        cycle_part: PartInvariants::of(&cycle_graph, alpha_limit)?,
        forest_part: PartInvariants::of(&forest, alpha_limit)?,
    })
}
