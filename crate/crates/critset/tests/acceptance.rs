//! Acceptance suite. Prints one line per criterion and exits nonzero when
//! any criterion fails.

use std::collections::HashMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use critset::corpus::Family;
use critset::format::parse_script;
use critset::sweep::{run_sweep, SweepReport, VerificationSweepConfig};
use critset_core::critical::{critical_difference, enumerate_minimal_positive_sets};
use critset_core::unicyclic::{generate, recognize, Recognition};
use critset_core::Graph;

/// Wall-clock budget for the d_c oracle comparison.
const DC_BUDGET: Duration = Duration::from_secs(120);
/// Wall-clock budget for the generated unicyclic sweep.
const UNICYCLIC_BUDGET: Duration = Duration::from_secs(60);
/// Subset pairs tested for supermodularity per graph.
const SUPERMODULAR_PAIRS: usize = 10_000;

const REFERENCE_SCRIPT: &str = "cycle 5\np2 2\np2 1\np2 7\np2 8\np2 2\np2 8\np2 3\nleaf 5\nleaf 7\n";

type Verdict = Result<String, String>;

fn config(family: Family, max_n: usize, samples: usize, seed: u64, checks: &[&str]) -> VerificationSweepConfig {
    VerificationSweepConfig {
        family,
        min_n: if matches!(family, Family::RandomGnp | Family::RandomBipartite) { 1 } else { 0 },
        max_n,
        samples,
        seed,
        checks: checks.iter().map(|s| s.to_string()).collect(),
        supermodular_pairs: SUPERMODULAR_PAIRS,
        ..VerificationSweepConfig::default()
    }
}

fn sweep(c: &VerificationSweepConfig) -> SweepReport {
    run_sweep(c, None).expect("valid sweep configuration")
}

/// Every listed check passed at least once and never failed, summed over
/// the reports.
fn require(reports: &[&SweepReport], ids: &[&str]) -> Verdict {
    let mut notes = Vec::new();
    for id in ids {
        let (mut pass, mut fail, mut skipped) = (0, 0, 0);
        for r in reports {
            let t = r.tally(id).ok_or_else(|| format!("{id} was not run"))?;
            pass += t.pass;
            fail += t.fail;
            skipped += t.skipped;
        }
        if fail > 0 {
            let first = reports
                .iter()
                .flat_map(|r| r.failures.iter())
                .find(|f| f.check == *id)
                .map(|f| f.graph6.clone())
                .unwrap_or_default();
            return Err(format!("{id}: {fail} failures, first on {first}"));
        }
        if pass == 0 {
            return Err(format!("{id}: never applicable ({skipped} skipped)"));
        }
        notes.push(format!("{id} {pass}/{}", pass + skipped));
    }
    Ok(notes.join(", "))
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

// Independent oracles over bitmasks, used where the library's own oracles
// are out of range.

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

fn alpha_memo(adj: &[u32], live: u32, memo: &mut HashMap<u32, u32>) -> u32 {
    if live == 0 {
        return 0;
    }
    if let Some(&a) = memo.get(&live) {
        return a;
    }
    let v = live.trailing_zeros() as usize;
    let without = alpha_memo(adj, live & !(1 << v), memo);
    let with = 1 + alpha_memo(adj, live & !(1 << v) & !adj[v], memo);
    let a = without.max(with);
    memo.insert(live, a);
    a
}

fn mu_memo(adj: &[u32], live: u32, memo: &mut HashMap<u32, u32>) -> u32 {
    if live == 0 {
        return 0;
    }
    if let Some(&m) = memo.get(&live) {
        return m;
    }
    let v = live.trailing_zeros() as usize;
    let rest = live & !(1 << v);
    let mut best = mu_memo(adj, rest, memo);
    let mut partners = adj[v] & rest;
    while partners != 0 {
        let u = partners.trailing_zeros();
        partners &= partners - 1;
        best = best.max(1 + mu_memo(adj, rest & !(1 << u), memo));
    }
    memo.insert(live, best);
    best
}

fn brute_alpha(g: &Graph) -> usize {
    let full = (1u32 << g.order()) - 1;
    alpha_memo(&masks(g), full, &mut HashMap::new()) as usize
}

fn brute_mu(g: &Graph) -> usize {
    let full = (1u32 << g.order()) - 1;
    mu_memo(&masks(g), full, &mut HashMap::new()) as usize
}

/// max |X| - |N(X)| over every subset.
fn brute_dc(g: &Graph) -> usize {
    let adj = masks(g);
    let mut best = 0i64;
    for x in 0u32..1 << g.order() {
        let mut nb = 0u32;
        let mut rest = x;
        while rest != 0 {
            nb |= adj[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        best = best.max(x.count_ones() as i64 - nb.count_ones() as i64);
    }
    best as usize
}

struct Corpora {
    exhaustive: SweepReport,
    random12: SweepReport,
    random14: SweepReport,
    random9: SweepReport,
    bipartite: SweepReport,
    unicyclic: SweepReport,
    unicyclic_time: Duration,
    disconnected: SweepReport,
}

impl Corpora {
    fn build() -> Corpora {
        let all: &[&str] = &[];
        let exhaustive = sweep(&config(Family::ExhaustiveLabeled, 6, 0, 0, all));
        let random12 = sweep(&config(Family::RandomGnp, 12, 500, 12, all));
        let random14 = sweep(&config(Family::RandomGnp, 14, 2000, 14, &["dc_oracle", "ker_in_singleton_components"]));
        let random9 = sweep(&config(Family::RandomGnp, 9, 1000, 9, all));
        let bipartite = sweep(&config(Family::RandomBipartite, 14, 500, 2, all));
        let mut u = config(Family::UnicyclicGenerated, 0, 500, 7, all);
        (u.min_cycle, u.max_cycle, u.max_added) = (3, 9, 30);
        let start = Instant::now();
        let unicyclic = sweep(&u);
        let unicyclic_time = start.elapsed();
        let mut d = config(Family::UnicyclicDisconnected, 0, 100, 8, all);
        (d.min_cycle, d.max_cycle, d.max_added) = (3, 9, 30);
        let disconnected = sweep(&d);
        Corpora {
            exhaustive,
            random12,
            random14,
            random9,
            bipartite,
            unicyclic,
            unicyclic_time,
            disconnected,
        }
    }
}

fn dc_agreement() -> Verdict {
    let start = Instant::now();
    let ex = sweep(&config(Family::ExhaustiveLabeled, 6, 0, 0, &["dc_oracle"]));
    let random = sweep(&config(Family::RandomGnp, 14, 2000, 14, &["dc_oracle"]));
    let elapsed = start.elapsed();
    check(ex.graphs == 33_868, format!("exhaustive corpus has {} graphs", ex.graphs))?;
    check(random.graphs == 2000, "random corpus size")?;
    let notes = require(&[&ex, &random], &["dc_oracle"])?;
    check(
        ex.tally("dc_oracle").unwrap().pass == ex.graphs && random.tally("dc_oracle").unwrap().pass == random.graphs,
        "dc_oracle skipped some graphs",
    )?;
    check(elapsed < DC_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{notes} in {:.1}s", elapsed.as_secs_f64()))
}

fn reference_drawing() -> Verdict {
    let parsed = parse_script(REFERENCE_SCRIPT).map_err(|e| e.to_string())?;
    let colored = generate(&parsed.script).map_err(|e| e.to_string())?;
    let g = &colored.graph;
    let n = g.order();
    check(n == 21, format!("n = {n}"))?;
    check(colored.black.len() == 9, format!("|B| = {}", colored.black.len()))?;
    check(colored.red.len() == 7, format!("|R| = {}", colored.red.len()))?;
    let (alpha, mu, dc) = (brute_alpha(g), brute_mu(g), brute_dc(g));
    check(alpha == 11, format!("alpha = {alpha}"))?;
    check(mu == 9, format!("mu = {mu}"))?;
    check(dc == 2, format!("brute d_c = {dc}"))?;
    check(critical_difference(g) == 2, "double-cover d_c differs")?;
    check(alpha + mu == n - 1, "alpha + mu != n - 1")?;
    check(
        colored.predicted_alpha() == alpha && colored.predicted_mu() == mu,
        "colouring predictions disagree with the oracles",
    )?;
    Ok(format!("n = {n}, |B| = 9, |R| = 7, alpha = {alpha}, mu = {mu}, d_c = {dc}"))
}

fn negative_controls() -> Verdict {
    // a = 0 isolated; b = 1, c = 2 each adjacent to x = 3 and y = 4
    let witness = Graph::new(5, [(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
    let minimal = enumerate_minimal_positive_sets(&witness).map_err(|e| e.to_string())?;
    let expected = vec![witness.vertex_set([0]).unwrap()];
    check(minimal == expected, format!("minimal positive sets {minimal:?}"))?;

    let pendant = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let ke_by_recognition = matches!(recognize(&pendant), Ok(Recognition::Ke(_)));
    check(ke_by_recognition, "C3 plus a pendant was not recognised as KE")?;
    let (alpha, mu) = (brute_alpha(&pendant), brute_mu(&pendant));
    check(alpha + mu == 4, format!("alpha + mu = {}", alpha + mu))?;
    Ok("witness gives [{a}]; C3 plus pendant is KE both ways".into())
}

fn determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_critset"))
            .args([
                "--json", "--no-timestamp", "--seed", "99", "verify", "--family", "random-gnp",
                "--max-n", "10", "--samples", "300", "--supermodular-pairs", "200",
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check(a.status.success() && b.status.success(), "verify exited nonzero")?;
    check(!a.stdout.is_empty(), "empty report")?;
    check(a.stdout == b.stdout, "reports differ between runs")?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Verdict)> = Vec::new();
    results.push(("1 d_c oracle agreement", dc_agreement()));
    let c = Corpora::build();
    let small = [&c.exhaustive, &c.random12];
    results.push(("2 ker equals intersection of critical sets", require(&small, &["ker_intersection"])));
    results.push(("3 diadem equals union of critical independent sets", require(&small, &["diadem_union"])));
    let suite = [
        "ker_critical_independent",
        "ker_in_core",
        "supermodularity",
        "ker_vertex_deletion",
        "ker_minimal_union",
        "minimal_difference_one",
        "minimal_count_bound",
        "hx_ker",
        "minimal_decomposition",
        "minimal_union_converse",
        "matching_criticality",
        "critical_pair_balance",
        "diadem_bound",
        "ker_diadem_inequality",
        "diadem_avoids_ker_neighborhood",
        "critical_closure",
        "ke_difference",
    ];
    let theory = require(&small, &suite).and_then(|a| {
        let b = require(&[&c.bipartite], &["bipartite_ker_core"])?;
        check(c.bipartite.tally("bipartite_ker_core").unwrap().pass == 500, "bipartite corpus not fully checked")?;
        Ok(format!("{a}, {b}"))
    });
    results.push(("4 structural suite", theory));
    results.push((
        "5 matching oracle agreement",
        require(&[&c.exhaustive, &c.random9], &["matching_oracle"]).and_then(|s| {
            check(c.random9.tally("matching_oracle").unwrap().pass == 1000, "random n <= 9 corpus not fully checked")?;
            Ok(s)
        }),
    ));
    results.push(("6 reference unicyclic drawing", reference_drawing()));
    let unicyclic_ids = [
        "unicyclic_counts",
        "unicyclic_round_trip",
        "unicyclic_recognition",
        "red_black_matching",
        "red_saturated",
        "black_in_some_mis",
        "black_critical",
    ];
    results.push((
        "7 generated unicyclic sweep",
        require(&[&c.unicyclic], &unicyclic_ids).and_then(|s| {
            for id in ["unicyclic_counts", "unicyclic_round_trip"] {
                check(c.unicyclic.tally(id).unwrap().pass == 500, format!("{id} skipped some graphs"))?;
            }
            check(c.unicyclic_time < UNICYCLIC_BUDGET, format!("took {:?}", c.unicyclic_time))?;
            Ok(format!("{s} in {:.1}s", c.unicyclic_time.as_secs_f64()))
        }),
    ));
    results.push((
        "8 disconnected unicyclic",
        require(&[&c.disconnected], &["disconnected_unicyclic"]).and_then(|s| {
            check(c.disconnected.tally("disconnected_unicyclic").unwrap().pass == 100, "some graphs skipped")?;
            Ok(s)
        }),
    ));
    let everything = [
        &c.exhaustive,
        &c.random12,
        &c.random14,
        &c.random9,
        &c.bipartite,
        &c.unicyclic,
        &c.disconnected,
    ];
    results.push((
        "9 Gallai-Edmonds structure",
        require(&[&c.exhaustive, &c.random9], &["gallai_edmonds_partition"]).and_then(|a| {
            let everything_but_14: Vec<&SweepReport> =
                everything.iter().copied().filter(|r| !std::ptr::eq(*r, &c.random14)).collect();
            let b = require(&everything_but_14, &["gallai_edmonds_structure", "critical_sets_in_c_and_singletons"])?;
            let d = require(&everything, &["ker_in_singleton_components"])?;
            Ok(format!("{a}, {b}, {d}"))
        }),
    ));
    results.push(("10 negative controls", negative_controls()));
    results.push(("11 deterministic verify output", determinism()));

    let mut failed = 0;
    for (name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
