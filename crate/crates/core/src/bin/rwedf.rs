use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use rwedf::analysis::difference_profile;
use rwedf::construct;
use rwedf::io::{parse_sizes, render_table, report_row, verify_file, FamilyFile};
use rwedf::search::{Dedup, Requirements, SearchSpec, DEFAULT_NODE_BUDGET};
use rwedf::sim::{play, play_all, play_best_response, play_random_delta};
use rwedf::{Error, GroupDescriptor, Rational};

#[derive(Parser)]
#[command(
    name = "rwedf",
    version,
    about = "Verify, construct and search difference families"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a family file and check its declared expectations.
    Verify {
        path: PathBuf,
        /// Also write the difference profile N_i(δ) as CSV.
        #[arg(long)]
        profile_csv: Option<PathBuf>,
    },
    /// Build a family from a named construction.
    Construct(ConstructArgs),
    /// Enumerate families with given set sizes; writes JSONL.
    Search(SearchArgs),
    /// Play the weak AMD game against a family.
    Simulate(SimulateArgs),
    /// Classify several family files into one table.
    Report { paths: Vec<PathBuf> },
}

#[derive(Args)]
struct ConstructArgs {
    /// trivial-whole, trivial-singletons, nonzero-singletons, cyclotomic,
    /// m2-sedf, m2-edf, m2-gsedf, two-prime-power, desarguesian, heisenberg,
    /// dihedral, difference-set-singletons, complement-pair, f21-pair.
    name: String,
    /// Integer parameters of the construction.
    params: Vec<u32>,
    /// Group descriptor JSON, for constructions over a given group.
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated difference set, for the difference-set constructions.
    #[arg(long)]
    set: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Group descriptor JSON, e.g. '{"kind":"cyclic","n":10}'.
    #[arg(long)]
    group: String,
    /// Comma-separated set sizes.
    #[arg(long)]
    sizes: String,
    /// Comma-separated filters: rwedf, bimodal, edf, sedf, gsedf, star_partition.
    #[arg(long, default_value = "")]
    require: String,
    /// WEDF weights as p/q, one per size.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    ell: Option<Rational>,
    #[arg(long, value_parser = parse_dedup, default_value = "none")]
    dedup: Dedup,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long, conflicts_with_all = ["best", "random_delta", "all"])]
    delta: Option<u32>,
    #[arg(long)]
    best: bool,
    #[arg(long)]
    random_delta: bool,
    /// Every δ in turn.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

fn parse_dedup(s: &str) -> Result<Dedup, String> {
    match s {
        "none" => Ok(Dedup::None),
        "translation" => Ok(Dedup::Translation),
        other => Err(format!("unknown dedup mode {other:?}")),
    }
}

fn parse_group(s: &str) -> anyhow::Result<Arc<rwedf::FiniteGroup>> {
    let d: GroupDescriptor = serde_json::from_str(s).context("parsing group descriptor")?;
    Ok(Arc::new(d.build()?))
}

fn output(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn print_json<T: serde::Serialize>(v: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn verify(cli: &Cli, path: &PathBuf, csv: Option<&PathBuf>) -> ExitCode {
    let parsed = FamilyFile::read(path).and_then(|file| {
        let (report, mismatches) = verify_file(&file)?;
        Ok((file, report, mismatches))
    });
    let (file, report, mismatches) = match parsed {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    if let Some(csv) = csv {
        let written = file
            .to_family()
            .and_then(|f| difference_profile(&f).write_csv(File::create(csv)?));
        if let Err(e) = written {
            eprintln!("{}: {e}", csv.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        let body = serde_json::json!({ "report": report, "mismatches": mismatches });
        println!(
            "{}",
            serde_json::to_string_pretty(&body).expect("report serializes")
        );
    } else {
        let label = file
            .name()
            .map_or_else(|| path.display().to_string(), str::to_owned);
        println!(
            "{label}: n={} m={} sizes={:?}",
            report.n, report.m, report.sizes
        );
        match &report.rwedf {
            Some(ell) => println!("  RWEDF ℓ = {ell}"),
            None => println!(
                "  not an RWEDF (first witness δ = {})",
                report.rwedf_witness.unwrap_or(0)
            ),
        }
        if let Some(w) = &report.wedf {
            let ws: Vec<String> = w.weights.iter().map(Rational::to_string).collect();
            match &w.ell {
                Some(ell) => println!("  WEDF with weights ({}) ℓ = {ell}", ws.join(",")),
                None => println!("  not a WEDF with weights ({})", ws.join(",")),
            }
        }
        if let Some(l) = report.edf {
            println!("  EDF λ = {l}");
        }
        if let Some(l) = report.sedf {
            println!("  SEDF λ = {l}");
        }
        if let Some(ls) = &report.gsedf {
            println!("  GSEDF λ = {ls:?}");
        }
        println!("  bimodal: {}", report.bimodal.holds);
        println!(
            "  ê = {}, R-bound = {}",
            report.amd.e_hat, report.amd.r_bound
        );
        for m in &mismatches {
            println!("  MISMATCH: {m}");
        }
    }
    if mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn param(params: &[u32], i: usize, name: &str) -> anyhow::Result<u32> {
    params
        .get(i)
        .copied()
        .with_context(|| format!("missing parameter {name}"))
}

fn construct_family(a: &ConstructArgs) -> anyhow::Result<FamilyFile> {
    let p = &a.params;
    let group = || -> anyhow::Result<_> {
        parse_group(
            a.group
                .as_deref()
                .context("this construction needs --group")?,
        )
    };
    let set = || -> anyhow::Result<rwedf::ElementSet> {
        let s = a.set.as_deref().context("this construction needs --set")?;
        Ok(s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .with_context(|| format!("bad element {t:?}"))
            })
            .collect::<anyhow::Result<Vec<_>>>()?
            .into())
    };
    let f = match a.name.as_str() {
        "trivial-whole" => construct::trivial_families(&group()?)?[0].clone(),
        "trivial-singletons" => construct::trivial_families(&group()?)?[1].clone(),
        "nonzero-singletons" => construct::nonzero_singletons(&group()?)?,
        "difference-set-singletons" => {
            construct::singletons_from_difference_set(&group()?, &set()?)?
        }
        "complement-pair" => construct::complement_pair(&group()?, &set()?)?,
        "cyclotomic" => construct::cyclotomic_squares(param(p, 0, "q")? as u64)?,
        "m2-sedf" => construct::m2_sedf(param(p, 0, "k")? as usize)?,
        "m2-edf" => construct::m2_edf(param(p, 0, "k")? as usize)?,
        "m2-gsedf" => {
            construct::m2_gsedf(param(p, 0, "k1")? as usize, param(p, 1, "k2")? as usize)?
        }
        "two-prime-power" => construct::two_prime_power_construction(
            param(p, 0, "p")?,
            param(p, 1, "alpha")?,
            param(p, 2, "q")?,
            param(p, 3, "beta")?,
        )?,
        "desarguesian" => construct::desarguesian_star_partition(
            param(p, 0, "p")?,
            param(p, 1, "a")?,
            param(p, 2, "b")?,
        )?,
        "heisenberg" => construct::heisenberg_partition(param(p, 0, "p")?)?,
        "dihedral" => construct::dihedral_star_partition(param(p, 0, "n")?)?,
        "f21-pair" => {
            let (g, d) = construct::f21_fixture()?;
            construct::complement_pair(&g, &d)?
        }
        other => bail!("unknown construction {other:?}"),
    };
    Ok(FamilyFile::from_family(&f))
}

fn search(cli: &Cli, a: &SearchArgs) -> anyhow::Result<ExitCode> {
    let g = parse_group(&a.group)?;
    let sizes = parse_sizes(&a.sizes)?;
    let mut require = Requirements::parse_flags(&a.require)?;
    if let Some(w) = &a.weights {
        let ws = w
            .split(',')
            .map(|t| t.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        require.wedf = Some(ws);
    }
    let mut spec = SearchSpec::new(g, sizes)
        .require(require)
        .dedup(a.dedup)
        .node_budget(a.budget)
        .threads(cli.threads.max(1));
    if let Some(ell) = &a.ell {
        spec = spec.target_ell(ell.clone());
    }
    if let Some(cap) = a.cap {
        spec = spec.result_cap(cap);
    }
    let result = rwedf::search::enumerate(&spec);
    let (outcome, complete) = match result {
        Ok(o) => (o, true),
        Err(Error::BudgetExceeded { partial }) => (*partial, false),
        Err(e) => return Err(e.into()),
    };
    let mut out = output(a.out.as_ref())?;
    for f in &outcome.families {
        let mut file = FamilyFile::from_family(f);
        file.weights = outcome.weights.clone();
        writeln!(out, "{}", file.to_json_line())?;
    }
    out.flush()?;
    let summary = serde_json::json!({
        "families": outcome.families.len(),
        "complete": complete,
        "stats": outcome.stats,
    });
    eprintln!("{summary}");
    Ok(if complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn simulate(cli: &Cli, a: &SimulateArgs) -> anyhow::Result<()> {
    let f = FamilyFile::read(&a.family)?.to_family()?;
    let results = if let Some(d) = a.delta {
        vec![play(&f, d, a.trials, cli.seed)?]
    } else if a.random_delta {
        vec![play_random_delta(&f, a.trials, cli.seed)?]
    } else if a.all {
        play_all(&f, a.trials, cli.seed)?
    } else {
        vec![play_best_response(&f, a.trials, cli.seed)?]
    };
    if cli.json {
        print_json(&results)?;
    } else {
        for r in &results {
            let delta = r
                .delta
                .map_or_else(|| "random".to_owned(), |d| d.to_string());
            println!(
                "δ={delta:<7} trials={} successes={} empirical={:.6} analytic={} z={:.3}",
                r.trials, r.successes, r.empirical_rate, r.analytic_rate, r.z_score
            );
        }
    }
    Ok(())
}

fn report(cli: &Cli, paths: &[PathBuf]) -> anyhow::Result<()> {
    let rows: Vec<_> = paths
        .iter()
        .map(|p| report_row(&p.display().to_string()))
        .collect();
    if cli.json {
        print_json(&rows)?;
    } else {
        print!("{}", render_table(&rows));
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Verify { path, profile_csv } => Ok(verify(cli, path, profile_csv.as_ref())),
        Command::Construct(a) => {
            let file = construct_family(a)?;
            let mut out = output(a.out.as_ref())?;
            out.write_all(file.to_json().as_bytes())?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search(a) => search(cli, a),
        Command::Simulate(a) => simulate(cli, a).map(|_| ExitCode::SUCCESS),
        Command::Report { paths } => report(cli, paths).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
