//! `bridgedepth` command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use bridgedepth::blocking::{is_blocking_set, mbs_with_cap, shrink_blocking_set_with_stats};
use bridgedepth::bridge_depth::{
    bridge_depth, fvs_number, lowering_tree, tree_depth, treewidth, COMPARISON_CAP,
};
use bridgedepth::generators;
use bridgedepth::graph::io::{dump_graph, dump_instance, load_graph, load_instance};
use bridgedepth::kernel::{kernelize, verify_equivalence, Instance, KernelOptions};
use bridgedepth::minors::{
    necklace_minor_length_with_cap, triangle_path_minor_length_with_cap, MinorResult, MINOR_CAP,
};
use bridgedepth::sweeps::{format_text, run_sweep, Level, SweepId};
use bridgedepth::{Error, Graph, VertexSet};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const REPORT_SCHEMA: &str = "bridgedepth.report/1";

#[derive(Parser, Debug)]
#[command(
    name = "bridgedepth",
    version,
    about = "Bridge-depth, blocking sets and independent-set kernels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest accepted vertex count (defaults depend on the command).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bridge-depth with a lowering tree, compared with td, tw and fvs.
    Bd { graph: PathBuf },
    /// Kernelize an instance file.
    Kernelize {
        instance: PathBuf,
        /// Overrides the c of the file.
        #[arg(long)]
        c: Option<u32>,
        /// Overrides the k of the file.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        /// Run every lemma assertion and report failures (exit code 4).
        #[arg(long)]
        checked: bool,
        /// Also write the reduction trace (JSON lines) to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Largest inclusion-minimal blocking set.
    Mbs { graph: PathBuf },
    /// Shrink a blocking set, given as comma-separated ids.
    Shrink { graph: PathBuf, set: String },
    /// Generate a graph family.
    Gen { family: Family, t: u32 },
    /// Longest necklace minor.
    Nm { graph: PathBuf },
    /// Longest triangle-path minor.
    Tpm { graph: PathBuf },
    /// Run the verification sweeps.
    Selftest {
        /// smoke, small, full (or 0, 1, 2).
        #[arg(default_value = "small")]
        level: String,
        /// Run only these sweeps.
        #[arg(long = "sweep", value_enum)]
        sweeps: Vec<SweepName>,
    },
    /// Print a graph or instance file in canonical form.
    Dump { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    TrianglePath,
    Truncated,
    Path,
    Cycle,
    Grid,
    Complete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SweepName {
    MbsBound,
    Tightness,
    BridgeDepthProperties,
    BipartiteShrink,
    GeneralShrink,
    Kernel,
    Packing,
    TrianglePath,
    Oracles,
    Conflicts,
}

impl SweepName {
    fn id(self) -> SweepId {
        match self {
            SweepName::MbsBound => SweepId::MbsBound,
            SweepName::Tightness => SweepId::Tightness,
            SweepName::BridgeDepthProperties => SweepId::BridgeDepthProperties,
            SweepName::BipartiteShrink => SweepId::BipartiteShrink,
            SweepName::GeneralShrink => SweepId::GeneralShrink,
            SweepName::Kernel => SweepId::Kernel,
            SweepName::Packing => SweepId::Packing,
            SweepName::TrianglePath => SweepId::TrianglePath,
            SweepName::Oracles => SweepId::Oracles,
            SweepName::Conflicts => SweepId::Conflicts,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_ASSERTION: u8 = 4;

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => EXIT_CAP,
        Some(Error::Internal(_) | Error::Assertion(_)) => EXIT_ASSERTION,
        _ => EXIT_INPUT,
    }
}

struct Output {
    main: String,
    /// Printed even when the main output goes to a file.
    report: Option<String>,
    failure: Option<String>,
}

impl Output {
    fn main(main: String) -> Self {
        Output {
            main,
            report: None,
            failure: None,
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path, cap: usize) -> anyhow::Result<Graph> {
    let g = load_graph(&read(path)?)?;
    check_cap(&g, cap, "input graph")?;
    Ok(g)
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> bridgedepth::Result<()> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what,
            size: g.n(),
            cap,
        });
    }
    Ok(())
}

fn ids(s: &VertexSet) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn report(command: &str, body: Value) -> String {
    let mut v = json!({ "schema": REPORT_SCHEMA, "command": command });
    v.as_object_mut()
        .unwrap()
        .extend(body.as_object().unwrap().clone());
    format!("{v}\n")
}

fn cmd_bd(cli: &Cli, path: &Path) -> anyhow::Result<Output> {
    let g = read_graph(path, cli.cap.map_or(64, |c| c as usize))?;
    let d = bridge_depth(&g)?;
    // one lowering tree per component
    let mut trees = Vec::new();
    for comp in g.connected_components() {
        let h = g.induced(&comp)?;
        let t = lowering_tree(&h)?;
        trees.push((t.tree.vertices.clone(), t.bd_before));
    }
    let comparisons = if g.n() <= COMPARISON_CAP {
        Some((tree_depth(&g)?, treewidth(&g)?, fvs_number(&g)?))
    } else {
        None
    };
    let text = match cli.format {
        Format::Json => report(
            "bd",
            json!({
                "n": g.n(),
                "m": g.m(),
                "bd": d,
                "lowering_trees": trees.iter().map(|(t, b)| json!({ "vertices": t, "component_bd": b })).collect::<Vec<_>>(),
                "td": comparisons.map(|c| c.0),
                "tw": comparisons.map(|c| c.1),
                "fvs": comparisons.map(|c| c.2),
            }),
        ),
        Format::Text => {
            let mut s = format!("bd={d}\n");
            for (t, b) in &trees {
                writeln!(s, "lowering_tree component_bd={b} vertices={}", ids(t))?;
            }
            match comparisons {
                Some((td, tw, fvs)) => writeln!(s, "td={td} tw={tw} fvs={fvs}")?,
                None => writeln!(
                    s,
                    "td=skipped tw=skipped fvs=skipped (over {COMPARISON_CAP} vertices)"
                )?,
            }
            s
        }
    };
    Ok(Output::main(text))
}

fn cmd_kernelize(
    cli: &Cli,
    path: &Path,
    c: Option<u32>,
    k: Option<i64>,
    checked: bool,
    trace_path: Option<&Path>,
) -> anyhow::Result<Output> {
    let file = load_instance(&read(path)?)?;
    check_cap(
        &file.graph,
        cli.cap.map_or(64, |c| c as usize),
        "input graph",
    )?;
    let k = k
        .or(file.k)
        .ok_or_else(|| Error::InvalidInput("no k in the file and no --k".into()))?;
    let c = c
        .or(file.c)
        .ok_or_else(|| Error::InvalidInput("no c in the file and no --c".into()))?;
    let inst = match Instance::new(file.graph.clone(), file.modulator.clone(), k, c) {
        Ok(i) => i,
        Err(Error::InvalidInstance(msg)) if file.graph.check_subset(&file.modulator).is_ok() => {
            let rest = file.graph.delete_vertices(&file.modulator)?;
            let d = bridge_depth(&rest)?;
            return Err(Error::InvalidInstance(format!("{msg}: bd(G \\ X) = {d}")).into());
        }
        Err(e) => return Err(e.into()),
    };
    let opts = if checked {
        KernelOptions::collecting()
    } else {
        KernelOptions::default()
    };
    let out = kernelize(&inst, &opts)?;
    let kernel = &out.instance;
    if !verify_equivalence(&inst, kernel)? {
        return Err(Error::Internal("kernel is not equivalent to the input".into()).into());
    }
    let file_text = dump_instance(&kernel.graph, &kernel.modulator, kernel.k, kernel.c);
    let trace = out.trace.to_json_lines();
    if let Some(p) = trace_path {
        fs::write(p, &trace).with_context(|| format!("cannot write {}", p.display()))?;
    }
    let violations: Vec<Value> = out
        .violations
        .iter()
        .map(|v| json!({ "check": v.check, "step": v.step, "detail": v.detail }))
        .collect();
    let summary = json!({
        "input": { "n": inst.graph.n(), "m": inst.graph.m(), "k": inst.k, "c": inst.c, "modulator": inst.modulator.len() },
        "output": { "n": kernel.graph.n(), "m": kernel.graph.m(), "k": kernel.k, "c": kernel.c },
        "events": out.trace.len(),
        "total_dk": out.trace.total_dk(),
        "levels": out.levels,
        "checked": checked,
        "violations": violations,
    });
    let failure = (!out.violations.is_empty())
        .then(|| format!("{} checked-mode assertion(s) failed", out.violations.len()));
    let (main, rep) = match (cli.format, cli.out.is_some()) {
        (Format::Json, _) => {
            let mut body = summary.clone();
            if cli.out.is_none() {
                body["instance"] = json!(file_text);
            }
            let mut s = report("kernelize", body);
            s.push_str(&trace);
            if cli.out.is_some() {
                (file_text, Some(s))
            } else {
                (s, None)
            }
        }
        (Format::Text, to_file) => {
            let mut s = String::new();
            writeln!(
                s,
                "# kernel: n {} -> {}, m {} -> {}, k {} -> {}, c {} -> {}, {} events",
                inst.graph.n(),
                kernel.graph.n(),
                inst.graph.m(),
                kernel.graph.m(),
                inst.k,
                kernel.k,
                inst.c,
                kernel.c,
                out.trace.len()
            )?;
            for e in &out.trace.events {
                let rule = serde_json::to_value(e.rule)?;
                writeln!(
                    s,
                    "# step {} {} dk={} {}",
                    e.step,
                    rule.as_str().unwrap_or(""),
                    e.dk,
                    serde_json::to_string(&e.op)?
                )?;
            }
            for v in &out.violations {
                let check = serde_json::to_value(v.check)?;
                writeln!(
                    s,
                    "# violation {} at step {}: {}",
                    check.as_str().unwrap_or(""),
                    v.step,
                    v.detail
                )?;
            }
            if to_file {
                (file_text, Some(s))
            } else {
                (s + &file_text, None)
            }
        }
    };
    Ok(Output {
        main,
        report: rep,
        failure,
    })
}

fn cmd_mbs(cli: &Cli, path: &Path) -> anyhow::Result<Output> {
    let g = load_graph(&read(path)?)?;
    let r = mbs_with_cap(
        &g,
        cli.cap
            .map_or(bridgedepth::blocking::MBS_CAP, |c| c as usize),
    )?;
    Ok(Output::main(match cli.format {
        Format::Json => report("mbs", json!({ "mbs": r.value, "witness": r.witness })),
        Format::Text => format!("mbs={}\nwitness={}\n", r.value, ids(&r.witness)),
    }))
}

fn parse_set(s: &str) -> anyhow::Result<VertexSet> {
    s.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| anyhow!(Error::InvalidInput(format!("bad vertex id `{t}`"))))
        })
        .collect()
}

fn cmd_shrink(cli: &Cli, path: &Path, set: &str) -> anyhow::Result<Output> {
    let g = read_graph(path, cli.cap.map_or(64, |c| c as usize))?;
    let y = parse_set(set)?;
    g.check_subset(&y)?;
    let (out, stats) = shrink_blocking_set_with_stats(&g, &y)?;
    let cert = is_blocking_set(&g, &out)?
        .ok_or_else(|| Error::Internal("shrunken set is not blocking".into()))?;
    let d = bridge_depth(&g)?;
    let bipartite = g.bipartition().is_some();
    Ok(Output::main(match cli.format {
        Format::Json => report(
            "shrink",
            json!({
                "input": y,
                "output": out,
                "bound": 1usize << d,
                "bd": d,
                "bipartite": bipartite,
                "alpha_before": cert.alpha_before,
                "alpha_after": cert.alpha_after,
                "stats": stats,
            }),
        ),
        Format::Text => format!(
            "shrunk={}\nsize={} bound={} bd={} bipartite={bipartite}\ncertificate alpha={} alpha_without={}\n",
            ids(&out),
            out.len(),
            1usize << d,
            d,
            cert.alpha_before,
            cert.alpha_after
        ),
    }))
}

fn cmd_gen(family: Family, t: u32) -> anyhow::Result<Output> {
    let g = match family {
        Family::TrianglePath => {
            if t == 0 {
                bail!(Error::InvalidInput("triangle-path needs t >= 1".into()));
            }
            generators::triangle_path(t as usize)
        }
        Family::Truncated => generators::truncated_triangle_path(t as usize)?,
        Family::Path | Family::Cycle | Family::Complete if t == 0 => {
            bail!(Error::InvalidInput("needs t >= 1".into()))
        }
        Family::Cycle if t < 3 => bail!(Error::InvalidInput("a cycle needs t >= 3".into())),
        Family::Path => generators::path(t),
        Family::Cycle => generators::cycle(t),
        Family::Grid => {
            if t == 0 {
                bail!(Error::InvalidInput("grid needs t >= 1".into()));
            }
            generators::grid(t)
        }
        Family::Complete => generators::complete(t),
    };
    Ok(Output::main(dump_graph(&g)))
}

fn minor_output(cli: &Cli, name: &str, r: &MinorResult) -> String {
    match cli.format {
        Format::Json => report(name, json!({ name: r.value, "model": r.model.branch_sets })),
        Format::Text => {
            let mut s = format!("{name}={}\n", r.value);
            for (i, b) in r.model.branch_sets.iter().enumerate() {
                writeln!(s, "branch {i} {}", ids(b)).unwrap();
            }
            s
        }
    }
}

fn cmd_minor(cli: &Cli, path: &Path, triangle: bool) -> anyhow::Result<Output> {
    let g = load_graph(&read(path)?)?;
    let cap = cli.cap.map_or(MINOR_CAP, |c| c as usize);
    Ok(Output::main(if triangle {
        minor_output(cli, "tpm", &triangle_path_minor_length_with_cap(&g, cap)?)
    } else {
        minor_output(cli, "nm", &necklace_minor_length_with_cap(&g, cap)?)
    }))
}

fn cmd_selftest(cli: &Cli, level: &str, only: &[SweepName]) -> anyhow::Result<Output> {
    let level: Level = level.parse()?;
    let sweeps: Vec<SweepId> = if only.is_empty() {
        SweepId::ALL.to_vec()
    } else {
        SweepId::ALL
            .iter()
            .copied()
            .filter(|s| only.iter().any(|o| o.id() == *s))
            .collect()
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j as usize);
    }
    let pool = pool.build()?;
    let reports: Vec<_> = pool.install(|| {
        sweeps
            .iter()
            .map(|&s| run_sweep(s, level, cli.seed))
            .collect()
    });
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.sweep.to_string())
        .collect();
    for r in &reports {
        for c in &r.counterexamples {
            if !c.revalidate()? {
                return Err(Error::Internal(format!(
                    "{} counterexample does not revalidate",
                    r.sweep
                ))
                .into());
            }
        }
    }
    let main = match cli.format {
        Format::Json => reports
            .iter()
            .map(|r| serde_json::to_string(r).map(|s| s + "\n"))
            .collect::<Result<String, _>>()?,
        Format::Text => format_text(&reports),
    };
    let failure = (!failed.is_empty()).then(|| format!("violations in: {}", failed.join(", ")));
    Ok(Output {
        main,
        report: None,
        failure,
    })
}

fn cmd_dump(path: &Path) -> anyhow::Result<Output> {
    let f = load_instance(&read(path)?)?;
    if f.k.is_none() && f.c.is_none() && f.modulator.is_empty() {
        return Ok(Output::main(dump_graph(&f.graph)));
    }
    let (Some(k), Some(c)) = (f.k, f.c) else {
        bail!(Error::InvalidInput(
            "an instance file needs both `k` and `c`".into()
        ));
    };
    Ok(Output::main(dump_instance(&f.graph, &f.modulator, k, c)))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Bd { graph } => cmd_bd(cli, graph),
        Command::Kernelize {
            instance,
            c,
            k,
            checked,
            trace,
        } => cmd_kernelize(cli, instance, *c, *k, *checked, trace.as_deref()),
        Command::Mbs { graph } => cmd_mbs(cli, graph),
        Command::Shrink { graph, set } => cmd_shrink(cli, graph, set),
        Command::Gen { family, t } => cmd_gen(*family, *t),
        Command::Nm { graph } => cmd_minor(cli, graph, false),
        Command::Tpm { graph } => cmd_minor(cli, graph, true),
        Command::Selftest { level, sweeps } => cmd_selftest(cli, level, sweeps),
        Command::Dump { file } => cmd_dump(file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Some(p) = &cli.out {
        if let Err(e) = fs::write(p, &out.main) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return ExitCode::from(EXIT_INPUT);
        }
        if let Some(r) = &out.report {
            print!("{r}");
        }
    } else {
        print!("{}", out.main);
    }
    match out.failure {
        Some(f) => {
            eprintln!("error: {f}");
            ExitCode::from(EXIT_ASSERTION)
        }
        None => ExitCode::SUCCESS,
    }
}
