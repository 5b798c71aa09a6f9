//! Reproducible graph corpora. Item `i` of a random family depends only on
//! the seed and `i`, so corpora can be generated in parallel.

use critset_core::unicyclic::{generate_random, ColoredUnicyclic, Step};
use critset_core::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest order of the exhaustive family.
pub const EXHAUSTIVE_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Every labelled graph with `min_n..=max_n` vertices.
    ExhaustiveLabeled,
    RandomGnp,
    RandomBipartite,
    UnicyclicGenerated,
    /// A generated unicyclic graph plus a random forest, shuffled.
    UnicyclicDisconnected,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ExhaustiveLabeled => "exhaustive-labeled",
            Family::RandomGnp => "random-gnp",
            Family::RandomBipartite => "random-bipartite",
            Family::UnicyclicGenerated => "unicyclic-generated",
            Family::UnicyclicDisconnected => "unicyclic-disconnected",
        }
    }
}

/// Everything needed to rebuild a corpus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Corpus {
    pub family: Family,
    pub min_n: usize,
    pub max_n: usize,
    /// Ignored by the exhaustive family.
    pub samples: usize,
    pub seed: u64,
    /// Edge probability; drawn uniformly from `[0.05, 0.95]` per graph when
    /// absent.
    pub edge_probability: Option<f64>,
    /// Odd cycle lengths for the unicyclic families.
    pub min_cycle: usize,
    pub max_cycle: usize,
    /// Most vertices added to the cycle by the construction.
    pub max_added: usize,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus {
            family: Family::ExhaustiveLabeled,
            min_n: 0,
            max_n: EXHAUSTIVE_LIMIT,
            samples: 100,
            seed: 0,
            edge_probability: None,
            min_cycle: 3,
            max_cycle: 9,
            max_added: 30,
        }
    }
}

/// One corpus member.
pub struct Item {
    pub index: u64,
    pub graph: Graph,
    pub coloring: Option<ColoredUnicyclic>,
    pub leaf_steps: Option<usize>,
}

impl Corpus {
    pub fn validate(&self) -> Result<(), String> {
        if self.min_n > self.max_n {
            return Err(format!("min_n {} exceeds max_n {}", self.min_n, self.max_n));
        }
        if let Some(p) = self.edge_probability {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("edge probability {p} outside [0, 1]"));
            }
        }
        match self.family {
            Family::ExhaustiveLabeled if self.max_n > EXHAUSTIVE_LIMIT => Err(format!(
                "exhaustive family supports n <= {EXHAUSTIVE_LIMIT}, got {}",
                self.max_n
            )),
            Family::RandomGnp | Family::RandomBipartite if self.max_n > 64 => {
                Err(format!("random families support n <= 64, got {}", self.max_n))
            }
            Family::UnicyclicGenerated | Family::UnicyclicDisconnected => {
                let lo = self.min_cycle.max(3) | 1;
                if self.min_cycle > self.max_cycle || lo > self.max_cycle {
                    Err(format!(
                        "no odd cycle length in {}..={}",
                        self.min_cycle, self.max_cycle
                    ))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> u64 {
        match self.family {
            Family::ExhaustiveLabeled => (self.min_n..=self.max_n)
                .map(|n| 1u64 << (n * n.saturating_sub(1) / 2))
                .sum(),
            _ => self.samples as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// Builds item `index` (`index < len()`).
    pub fn item(&self, index: u64) -> Item {
        let plain = |graph| Item {
            index,
            graph,
            coloring: None,
            leaf_steps: None,
        };
        match self.family {
            Family::ExhaustiveLabeled => plain(self.exhaustive(index)),
            Family::RandomGnp => {
                let mut rng = self.rng(index);
                let n = rng.random_range(self.min_n..=self.max_n);
                let p = self.probability(&mut rng);
                plain(gnp(n, p, &mut rng))
            }
            Family::RandomBipartite => {
                let mut rng = self.rng(index);
                let n = rng.random_range(self.min_n..=self.max_n);
                let left = rng.random_range(0..=n);
                let p = self.probability(&mut rng);
                let mut edges = Vec::new();
                for u in 0..left {
                    for v in left..n {
                        if rng.random_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                plain(Graph::new(n, edges).expect("simple"))
            }
            Family::UnicyclicGenerated => {
                let mut rng = self.rng(index);
                let (colored, leaves) = self.unicyclic(&mut rng, self.max_added);
                Item {
                    index,
                    graph: colored.graph.clone(),
                    coloring: Some(colored),
                    leaf_steps: Some(leaves),
                }
            }
            Family::UnicyclicDisconnected => {
                let mut rng = self.rng(index);
                let (colored, _) = self.unicyclic(&mut rng, self.max_added / 2);
                let forest_order = rng.random_range(1..=8);
                let forest = random_forest(forest_order, &mut rng);
                let joined = colored.graph.disjoint_union(&forest);
                let mut perm: Vec<usize> = (0..joined.order()).collect();
                perm.shuffle(&mut rng);
                plain(joined.relabel(&perm))
            }
        }
    }

    fn probability(&self, rng: &mut ChaCha8Rng) -> f64 {
        self.edge_probability
            .unwrap_or_else(|| rng.random_range(0.05..=0.95))
    }

    fn exhaustive(&self, mut index: u64) -> Graph {
        for n in self.min_n..=self.max_n {
            let pairs = n * n.saturating_sub(1) / 2;
            let count = 1u64 << pairs;
            if index < count {
                let edges = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .enumerate()
                    .filter(|(i, _)| index >> i & 1 == 1)
                    .map(|(_, e)| e);
                return Graph::new(n, edges).expect("simple");
            }
            index -= count;
        }
        panic!("corpus index out of range")
    }

    fn unicyclic(&self, rng: &mut ChaCha8Rng, max_added: usize) -> (ColoredUnicyclic, usize) {
        let lengths: Vec<usize> = (self.min_cycle..=self.max_cycle)
            .filter(|k| k % 2 == 1 && *k >= 3)
            .collect();
        let k = lengths[rng.random_range(0..lengths.len())];
        let added = rng.random_range(0..=max_added);
        let paths = rng.random_range(0..=added / 2);
        let leaves = if paths == 0 { 0 } else { added - 2 * paths };
        let (script, colored) =
            generate_random(k, paths, leaves, rng.random()).expect("valid parameters");
        debug_assert_eq!(
            script.steps.iter().filter(|s| matches!(s, Step::AttachLeaf(_))).count(),
            leaves
        );
        (colored, leaves)
    }
}

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple")
}

/// Each vertex after the first joins a random earlier vertex with
/// probability 0.7, otherwise starts a new tree.
pub fn random_forest(n: usize, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.random_bool(0.7) {
            edges.push((rng.random_range(0..v), v));
        }
    }
    Graph::new(n, edges).expect("simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_sizes() {
        let corpus = Corpus {
            max_n: 4,
            ..Corpus::default()
        };
        assert_eq!(corpus.len(), 1 + 1 + 2 + 8 + 64);
        assert_eq!(corpus.item(0).graph.order(), 0);
        assert_eq!(corpus.item(3).graph, Graph::complete(2));
        assert_eq!(corpus.item(corpus.len() - 1).graph, Graph::complete(4));
        let six = Corpus {
            min_n: 6,
            ..Corpus::default()
        };
        assert_eq!(six.len(), 32_768);
    }

    #[test]
    fn items_are_reproducible() {
        for family in [
            Family::RandomGnp,
            Family::RandomBipartite,
            Family::UnicyclicGenerated,
            Family::UnicyclicDisconnected,
        ] {
            let corpus = Corpus {
                family,
                min_n: 2,
                max_n: 12,
                samples: 20,
                seed: 9,
                ..Corpus::default()
            };
            for i in 0..20 {
                assert_eq!(corpus.item(i).graph, corpus.item(i).graph);
            }
        }
    }

    #[test]
    fn family_shapes() {
        let corpus = |family| Corpus {
            family,
            min_n: 3,
            max_n: 10,
            samples: 30,
            seed: 1,
            ..Corpus::default()
        };
        for i in 0..30 {
            let b = corpus(Family::RandomBipartite).item(i).graph;
            assert!(b.is_bipartite());
            let u = corpus(Family::UnicyclicGenerated).item(i);
            assert!(u.graph.is_connected() && u.graph.cycle_rank() == 1);
            let c = u.coloring.unwrap();
            assert!(c.cycle.len() % 2 == 1 && (3..=9).contains(&c.cycle.len()));
            assert!(u.graph.order() <= 9 + 30);
            let d = corpus(Family::UnicyclicDisconnected).item(i).graph;
            assert!(!d.is_connected() && d.cycle_rank() == 1);
        }
    }

    #[test]
    fn validation() {
        let bad = Corpus {
            max_n: 7,
            ..Corpus::default()
        };
        assert!(bad.validate().is_err());
        let even = Corpus {
            family: Family::UnicyclicGenerated,
            min_cycle: 4,
            max_cycle: 4,
            ..Corpus::default()
        };
        assert!(even.validate().is_err());
        assert!(Corpus::default().validate().is_ok());
    }
}
