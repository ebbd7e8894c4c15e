//! Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
//! non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bicluster::bench::{geometric_mean, run_bench, BenchMode};
use bicluster::bnc::{build_bgep, build_bgeps, solve, BncConfig, MilpStatus};
use bicluster::graph::grouping_efficacy;
use bicluster::io::{block_example, block_example_cells, generate, read_instance, GenSpec};
use bicluster::mcfp::{efficacy_bounds, solve_iterative, solve_linear, McfpResult};
use bicluster::oracle::{brute_force_bgep, brute_force_mcfp};
use bicluster::preprocess::preprocess;
use bicluster::separation::{separate_dp, separate_exhaustive, FractionalPoint};
use bicluster::{BipartiteInstance, Efficacy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn eff(num: u64, den: u64) -> Efficacy {
    Efficacy::new(num, den).unwrap()
}

/// 100 seeded instances with u, v in [3, 5] and p cycling through
/// {0.2, 0.4, 0.6, 0.8}.
fn random_suite() -> Vec<BipartiteInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_130_101);
    (0..100)
        .map(|k| {
            let u = rng.gen_range(3..=5);
            let v = rng.gen_range(3..=5);
            let p = [0.2, 0.4, 0.6, 0.8][k % 4];
            generate(&GenSpec::new(u, v, p, rng.gen()))
                .unwrap()
                .with_name(format!("rand{k:03}"))
        })
        .collect()
}

fn two_blocks() -> BipartiteInstance {
    BipartiteInstance::new(
        5,
        4,
        [
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 1),
            (2, 1),
            (3, 2),
            (3, 3),
            (4, 3),
        ],
    )
    .unwrap()
}

fn c1_efficacy_ground_truth() -> Check {
    let g = block_example();
    let cells = block_example_cells();
    let start = Instant::now();
    let e = grouping_efficacy(&g, &cells).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(g.edge_count() == 16, || {
        format!("matrix has {} ones", g.edge_count())
    })?;
    ensure(e == eff(14, 19) && (e.num, e.den) == (14, 19), || {
        format!("efficacy {e}")
    })?;
    ensure(e.percent() == 73.68, || format!("percent {}", e.percent()))?;
    ensure(t < Duration::from_millis(1), || format!("took {t:?}"))?;
    Ok(format!("{e} = {:.2}% in {t:?}", e.percent()))
}

fn c2_block_example_optimum() -> Check {
    let g = block_example();
    let start = Instant::now();
    let cfg = BncConfig::default();
    let bgeps = solve(
        &build_bgeps::<f64>(&g, 2, 2).map_err(|e| e.to_string())?,
        &cfg,
    )
    .map_err(|e| e.to_string())?;
    ensure(bgeps.objective == Some(5.0), || {
        format!("size-constrained editing optimum {:?}", bgeps.objective)
    })?;
    for r in [
        solve_iterative::<f64>(&g, 2, 2, &cfg),
        solve_linear::<f64>(&g, 2, 2, &cfg),
    ] {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r.proven, || format!("{:?} not proven", r.method))?;
        ensure(r.efficacy == eff(14, 19), || {
            format!("{:?} efficacy {}", r.method, r.efficacy)
        })?;
        ensure(r.a + r.d == 5, || {
            format!("{:?} edits {}", r.method, r.a + r.d)
        })?;
        ensure(r.bgeps_edits == 5, || {
            format!("{:?} seed edits {}", r.method, r.bgeps_edits)
        })?;
    }
    let t = within(start, Duration::from_secs(10), "both methods")?;
    Ok(format!(
        "14/19 with 5 edits, editing optimum 5, both methods in {t:?}"
    ))
}

fn c3_bgep_oracle(suite: &[BipartiteInstance]) -> Check {
    let start = Instant::now();
    let mut agree = 0;
    for g in suite {
        let (best, _) = brute_force_bgep(g).map_err(|e| e.to_string())?;
        let r = solve(&build_bgep::<f64>(g), &BncConfig::default()).map_err(|e| e.to_string())?;
        if r.status == MilpStatus::Optimal && r.objective == Some(best as f64) {
            agree += 1;
        }
    }
    let t = within(start, Duration::from_secs(120), "suite")?;
    ensure(agree == suite.len(), || {
        format!("{agree}/{} agree", suite.len())
    })?;
    Ok(format!("{agree}/{} in {t:?}", suite.len()))
}

fn c4_mcfp_oracle(suite: &[BipartiteInstance], history: &mut Vec<McfpResult>) -> Check {
    let start = Instant::now();
    let cfg = BncConfig::default();
    let (mut checked, mut agree, mut no_edges) = (0, 0, 0);
    for g in suite {
        if g.edge_count() == 0 {
            no_edges += 1;
            continue;
        }
        for (min_cols, min_rows) in [(0, 0), (2, 2)] {
            let Ok((best, _)) = brute_force_mcfp(g, min_cols, min_rows) else {
                continue;
            };
            checked += 1;
            let it =
                solve_iterative::<f64>(g, min_cols, min_rows, &cfg).map_err(|e| e.to_string())?;
            let li = solve_linear::<f64>(g, min_cols, min_rows, &cfg).map_err(|e| e.to_string())?;
            if it.efficacy == best && li.efficacy == best && it.proven && li.proven {
                agree += 1;
            } else {
                eprintln!(
                    "  {} ({min_cols},{min_rows}): oracle {best}, iterative {}, linear {}",
                    g.name().unwrap_or("?"),
                    it.efficacy,
                    li.efficacy
                );
            }
            history.push(it);
        }
    }
    let t = within(start, Duration::from_secs(600), "suite")?;
    ensure(agree == checked, || format!("{agree}/{checked} agree"))?;
    Ok(format!(
        "{agree}/{checked} runs agree ({no_edges} edgeless instances skipped) in {t:?}"
    ))
}

fn c5_separation() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5_000);
    let mut point = |nu: usize, nv: usize| {
        let vals = (0..nu * nv)
            .map(|_| match rng.gen_range(0..5) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.gen::<f64>(),
            })
            .collect();
        FractionalPoint::new(nu, nv, vals).unwrap()
    };
    let mut cuts = 0;
    for case in 0..1000 {
        let (nu, nv) = (1 + case % 12, 1 + (case / 12) % 12);
        let p = point(nu, nv);
        let mut a = vec![None; nu * nv];
        let mut b = vec![None; nu * nv];
        for c in separate_dp(&p) {
            a[c.i * nv + c.j] = Some(c.violation);
        }
        for c in separate_exhaustive(&p) {
            b[c.i * nv + c.j] = Some(c.violation);
        }
        for (x, y) in a.iter().zip(&b) {
            match (x, y) {
                (Some(x), Some(y)) => {
                    ensure((x - y).abs() <= 1e-9, || format!("case {case}: {x} vs {y}"))?
                }
                (None, None) => {}
                _ => return Err(format!("case {case}: dp {x:?}, exhaustive {y:?}")),
            }
        }
        cuts += a.iter().flatten().count();
    }
    let t = within(start, Duration::from_secs(30), "1000 points")?;
    let big = point(30, 30);
    let reps = 20;
    let s = Instant::now();
    let n_dp: usize = (0..reps).map(|_| separate_dp(&big).len()).sum();
    let dp = s.elapsed();
    let s = Instant::now();
    let n_ex: usize = (0..reps).map(|_| separate_exhaustive(&big).len()).sum();
    let ex = s.elapsed();
    ensure(n_dp == n_ex, || {
        format!("30x30 cut counts {n_dp} vs {n_ex}")
    })?;
    let ratio = ex.as_secs_f64() / dp.as_secs_f64().max(1e-12);
    ensure(ratio >= 10.0, || format!("30x30 speedup {ratio:.1}x"))?;
    Ok(format!(
        "1000 points, {cuts} cuts equal in {t:?}; 30x30 speedup {ratio:.1}x"
    ))
}

fn c6_preprocess_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6_000);
    let cfg = BncConfig::default();
    let mut agree = 0;
    for _ in 0..50 {
        let u = rng.gen_range(2..=5);
        let v = rng.gen_range(2..=5);
        let p = [0.1, 0.2, 0.3][rng.gen_range(0..3)];
        let g = generate(&GenSpec::new(u, v, p, rng.gen())).unwrap();
        let plain = solve(&build_bgep::<f64>(&g), &cfg).map_err(|e| e.to_string())?;
        let mut model = build_bgep::<f64>(&g);
        model
            .apply_preprocess(&preprocess(&g))
            .map_err(|e| e.to_string())?;
        let pre = solve(&model, &cfg).map_err(|e| e.to_string())?;
        if plain.objective.is_some() && plain.objective == pre.objective {
            agree += 1;
        }
    }
    ensure(agree == 50, || format!("{agree}/50 agree"))?;
    Ok(format!("{agree}/50"))
}

fn c7_density_trend() -> Check {
    let avg = |p: f64| {
        let (mut fixed, mut cuts) = (0.0, 0.0);
        for seed in 0..20 {
            let s = preprocess(&generate(&GenSpec::new(10, 11, p, seed)).unwrap()).stats;
            fixed += s.fixed_percentage;
            cuts += s.cut_percentage;
        }
        (fixed / 20.0, cuts / 20.0)
    };
    let (f2, c2) = avg(0.2);
    let (f6, c6) = avg(0.6);
    let detail = format!("fixed {f2:.2}% vs {f6:.2}%, cuts {c2:.2}% vs {c6:.2}%");
    ensure(f2 > f6 && c2 > c6, || detail.clone())?;
    Ok(detail)
}

fn c8_two_blocks() -> Check {
    let g = two_blocks();
    let cfg = BncConfig::default();
    let r = solve(&build_bgep::<f64>(&g), &cfg).map_err(|e| e.to_string())?;
    ensure(r.objective == Some(2.0), || {
        format!("editing optimum {:?}", r.objective)
    })?;
    let (oracle, sol) = brute_force_mcfp(&g, 0, 0).map_err(|e| e.to_string())?;
    ensure(oracle == eff(8, 10) && (sol.a(), sol.d()) == (2, 0), || {
        format!("oracle {oracle}")
    })?;
    for r in [
        solve_iterative::<f64>(&g, 0, 0, &cfg),
        solve_linear::<f64>(&g, 0, 0, &cfg),
    ] {
        let r = r.map_err(|e| e.to_string())?;
        ensure(
            r.efficacy == eff(8, 10) && (r.efficacy.num, r.efficacy.den) == (8, 10),
            || format!("{:?} efficacy {}", r.method, r.efficacy),
        )?;
        ensure((r.a, r.d) == (2, 0), || {
            format!("{:?} (a, d) = ({}, {})", r.method, r.a, r.d)
        })?;
    }
    Ok("editing optimum 2; efficacy 8/10 with (a, d) = (2, 0)".into())
}

fn c9_bound_discipline(history: &[McfpResult]) -> Check {
    for (k, r) in history.iter().enumerate() {
        for w in r.history.windows(2) {
            ensure(w[1].ub <= w[0].ub, || format!("run {k}: upper bound rose"))?;
            ensure(w[1].lb >= w[0].lb, || format!("run {k}: lower bound fell"))?;
        }
        let last = r
            .history
            .last()
            .ok_or_else(|| format!("run {k}: no history"))?;
        ensure(last.ub <= last.lb, || {
            format!("run {k}: final {} > {}", last.ub, last.lb)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9_000);
    for _ in 0..10_000 {
        let m = rng.gen_range(1..=1000u64);
        let a = rng.gen_range(0..=1000u64);
        let d = rng.gen_range(0..=m);
        let (lb, ub) = efficacy_bounds(m, a, d).map_err(|e| e.to_string())?;
        ensure(lb <= ub, || format!("m={m} a={a} d={d}: {lb} > {ub}"))?;
    }
    let steps: usize = history.iter().map(|r| r.history.len()).sum();
    Ok(format!(
        "{} runs, {steps} bound records; 10000 bound pairs ordered",
        history.len()
    ))
}

fn c10_bench(suite: &[BipartiteInstance]) -> Check {
    let g = geometric_mean(&[2.0, 4.0, 8.0]);
    ensure(g == Some(4.0), || format!("geometric mean {g:?}"))?;
    let report = run_bench(suite, &BenchMode::defaults(), None).map_err(|e| e.to_string())?;
    ensure(report.optima_agree(), || {
        format!("modes disagree on {:?}", report.disagreements)
    })?;
    let solved: usize = report.modes.iter().map(|m| m.solved).sum();
    ensure(solved == suite.len() * report.modes.len(), || {
        format!("{solved} runs solved")
    })?;
    Ok(format!(
        "geometric mean 4; {} instances x {} modes agree",
        suite.len(),
        report.modes.len()
    ))
}

fn c11_literature() -> Outcome {
    let Some(dir) = std::env::var_os("BICLUSTER_LITERATURE_DIR").map(PathBuf::from) else {
        return Outcome::Skip("BICLUSTER_LITERATURE_DIR not set".into());
    };
    let cases = [
        ("Waghodekar1984", 62.50, 69.57),
        ("Kusiak1992", 76.92, 79.17),
        ("Chan1982", 92.00, 92.00),
    ];
    let mut done = Vec::new();
    for (name, restricted, unrestricted) in cases {
        let path = dir.join(format!("{name}.txt"));
        let Ok(text) = std::fs::read_to_string(&path) else {
            return Outcome::Skip(format!("{} missing", path.display()));
        };
        let g = match read_instance(&text) {
            Ok(g) => g,
            Err(e) => return Outcome::Fail(format!("{name}: {e}")),
        };
        for (minima, expected) in [(2, restricted), (0, unrestricted)] {
            match solve_iterative::<f64>(&g, minima, minima, &BncConfig::default()) {
                Ok(r) if r.proven && r.efficacy.percent() == expected => {}
                Ok(r) => {
                    return Outcome::Fail(format!(
                        "{name} minima {minima}: {:.2}",
                        r.efficacy.percent()
                    ))
                }
                Err(e) => return Outcome::Fail(format!("{name}: {e}")),
            }
        }
        done.push(name);
    }
    Outcome::Pass(done.join(", "))
}

fn run(f: impl FnOnce() -> Check) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(d)) => Outcome::Pass(d),
        Ok(Err(d)) => Outcome::Fail(d),
        Err(_) => Outcome::Fail("panicked".into()),
    }
}

fn main() -> ExitCode {
    let suite = random_suite();
    let mut history = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 efficacy ground truth", run(c1_efficacy_ground_truth)),
        ("2 block example optimum", run(c2_block_example_optimum)),
        (
            "3 editing optimum equals brute force",
            run(|| c3_bgep_oracle(&suite)),
        ),
        (
            "4 efficacy optimum equals brute force",
            run(|| c4_mcfp_oracle(&suite, &mut history)),
        ),
        ("5 separation differential and speed", run(c5_separation)),
        ("6 preprocessing soundness", run(c6_preprocess_soundness)),
        ("7 preprocessing density trend", run(c7_density_trend)),
        ("8 two-block instance", run(c8_two_blocks)),
        (
            "9 iterative bound discipline",
            run(|| c9_bound_discipline(&history)),
        ),
        ("10 bench report", run(|| c10_bench(&suite))),
        ("11 literature regression", c11_literature()),
    ];
    let (mut failed, mut skipped) = (0, 0);
    for (name, outcome) in &results {
        match outcome {
            Outcome::Pass(d) => println!("PASS  criterion {name}: {d}"),
            Outcome::Skip(d) => {
                skipped += 1;
                println!("SKIP  criterion {name}: {d}");
            }
            Outcome::Fail(d) => {
                failed += 1;
                println!("FAIL  criterion {name}: {d}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, {skipped} skipped",
        results.len() - failed - skipped
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
