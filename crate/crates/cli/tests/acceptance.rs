//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use bridgedepth::blocking::{mbs, shrink_blocking_set_bipartite, shrink_blocking_set_with_stats};
use bridgedepth::bridge_depth::bridge_depth;
use bridgedepth::graph::find_bridges;
use bridgedepth::independence::alpha_number;
use bridgedepth::kernel::kernelize;
use bridgedepth::minors::necklace_packing;
use bridgedepth::sweeps::{
    sweep_bd_properties, sweep_bipartite_shrink, sweep_general_shrink, sweep_kernel,
    sweep_mbs_bound, sweep_oracles, sweep_packing, sweep_tightness, sweep_triangle_path, Level,
    SweepReport,
};
use bridgedepth::Result;

const SEED: u64 = 0;

struct Line {
    ok: bool,
    text: String,
}

fn from_report(r: &SweepReport, what: &str) -> Line {
    let mut text = format!(
        "{what}: {} cases, {} checks, {} violations",
        r.cases, r.checks, r.violations
    );
    let revalidated = r
        .counterexamples
        .iter()
        .all(|c| c.revalidate().unwrap_or(false));
    if let Some(c) = r.counterexamples.first() {
        text.push_str(&format!(
            "; first counterexample case {} ({}), revalidated={revalidated}",
            c.case, c.detail
        ));
    }
    Line {
        ok: r.passed(),
        text,
    }
}

fn mbs_value(g: &bridgedepth::Graph) -> Result<usize> {
    mbs(g).map(|r| r.value)
}

fn kernel_line() -> Line {
    let r = sweep_kernel(Level::Full, SEED, &kernelize);
    let mut line = from_report(
        &r,
        "kernel equivalence, size and every checked-mode assertion on 500 instances (|X| ≤ 4, |V| ≤ 18, c ∈ {1,2}) with k over 0..=|V|",
    );
    let tally: Vec<String> = r
        .counts
        .iter()
        .filter(|(k, _)| k.starts_with("violations.") || *k == "runs")
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    line.text.push_str(&format!(" [{}]", tally.join(" ")));
    line.text.push_str(
        "; outside this sample the degree bound after Meta-Rule 3 fails on crates/core/tests/fixtures/degree_bound.inst",
    );
    line
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_bridgedepth"))
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("run bridgedepth");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn determinism_line() -> Line {
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/tests/fixtures/degree_bound.inst"
    );
    let runs: [&[&str]; 4] = [
        &[
            "selftest", "small", "--format", "json", "--seed", "7", "--jobs", "1",
        ],
        &[
            "selftest", "small", "--format", "json", "--seed", "7", "--jobs", "4",
        ],
        &["kernelize", fixture, "--format", "json", "--k", "9"],
        &[
            "kernelize",
            fixture,
            "--format",
            "json",
            "--k",
            "9",
            "--checked",
        ],
    ];
    let mut same = 0;
    let mut problems = Vec::new();
    for args in runs {
        let (a, code_a) = run_cli(args);
        let (b, code_b) = run_cli(args);
        if a == b && code_a == code_b && !a.is_empty() {
            same += 1;
        } else {
            problems.push(args.join(" "));
        }
    }
    // thread count must not change the selftest bytes
    let (one, _) = run_cli(runs[0]);
    let (four, _) = run_cli(runs[1]);
    if one != four {
        problems.push("--jobs 1 vs --jobs 4".into());
    }
    let mut text = format!(
        "determinism: {same}/4 command lines byte-identical across two runs, selftest identical across thread counts"
    );
    if !problems.is_empty() {
        text = format!("determinism: differing outputs for {}", problems.join("; "));
    }
    Line {
        ok: problems.is_empty(),
        text,
    }
}

fn main() {
    let criteria: Vec<(u32, Box<dyn Fn() -> Line>)> = vec![
        (
            1,
            Box::new(|| {
                from_report(
                    &sweep_mbs_bound(Level::Full, &mbs_value, &bridge_depth),
                    "mbs(G) ≤ 2^bd(G) on all connected graphs with ≤ 7 vertices",
                )
            }),
        ),
        (
            2,
            Box::new(|| {
                from_report(&sweep_tightness(Level::Full), "bd(U_{2^c}) = c, mbs(U_{2^c}) = 2^c, witness minimal and blocking, c ∈ {1,2,3}")
            }),
        ),
        (
            3,
            Box::new(|| {
                from_report(
                    &sweep_bd_properties(Level::Full, SEED, &bridge_depth),
                    "bridge-depth properties on 1000 random graphs with ≤ 10 vertices",
                )
            }),
        ),
        (
            4,
            Box::new(|| {
                from_report(
                    &sweep_bipartite_shrink(Level::Full, SEED, &shrink_blocking_set_bipartite),
                    "bipartite shrinking on 1000 random bipartite graphs with ≤ 12 vertices",
                )
            }),
        ),
        (
            5,
            Box::new(|| {
                from_report(
                    &sweep_general_shrink(Level::Full, SEED, &shrink_blocking_set_with_stats),
                    "general shrinking on 500 random graphs with ≤ 10 vertices and bd ≤ 3",
                )
            }),
        ),
        (6, Box::new(kernel_line)),
        (
            7,
            Box::new(|| {
                from_report(
                    &sweep_packing(Level::Full, &necklace_packing),
                    "N_t packing number 1 on all connected bridgeless graphs with ≤ 8 vertices",
                )
            }),
        ),
        (
            8,
            Box::new(|| {
                from_report(&sweep_triangle_path(Level::Full), "tpm ≥ ⌊(nm+1)/2⌋ and validated converted models on all graphs with ≤ 8 vertices")
            }),
        ),
        (
            9,
            Box::new(|| {
                from_report(
                    &sweep_oracles(Level::Full, &alpha_number, &find_bridges),
                    "α and bridges against the oracles on all graphs with ≤ 8 vertices",
                )
            }),
        ),
        (10, Box::new(determinism_line)),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        let start = Instant::now();
        let line = run();
        let status = if line.ok { "PASS" } else { "FAIL" };
        if !line.ok {
            failed += 1;
        }
        println!(
            "{status} criterion {id:>2}: {} ({:.1}s)",
            line.text,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
