//! Command-line frontend for the singleton-lab toolkit.
//!
//! Exit codes: 0 = success / admissible, 1 = violation or failure found,
//! 2 = usage error. Every run is reproducible from its flags and seed; the
//! SINGLETON_LAB_SEED environment variable overrides the built-in default
//! seed where no --seed flag is given.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use singleton_lab::bounds::{classify, rate_region, BoundVerdict, CodeParams, Rat};
use singleton_lab::gf;
use singleton_lab::propagate::{
    self, certify_pure_shorten, closure, parse_records, PropagateError, RuleSet,
};
use singleton_lab::stabilizer::corpus;
use singleton_lab::verify::{
    check_decoupling, check_entropic_singleton, fuzz, simulate_densecoding_mds, simulate_mds_point,
};

const DEFAULT_SEED: u64 = 0xA11CE;

#[derive(Parser)]
#[command(
    name = "singleton-lab",
    version,
    about = "Singleton-family bounds, rate regions, and propagation rules for quantum codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format where applicable.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    JsonLines,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a parameter tuple against every bound.
    Check(CheckArgs),
    /// Emit the exact rate region for a normalized distance.
    Region(RegionArgs),
    /// Run the propagation-rule closure over a record database file.
    Propagate(PropagateArgs),
    /// Verify a named corpus code by brute force and decoupling.
    VerifyCode(VerifyCodeArgs),
    /// Fuzz one of the subset-average entropy lemmas on random states.
    Fuzz(FuzzArgs),
    /// Construct classical building blocks.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Run a protocol simulator.
    #[command(subcommand)]
    Simulate(SimulateCmd),
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated n,k,d,c,q; k and c accept p/q rationals.
    #[arg(long)]
    params: String,
    /// Declare the tuple pure (enables the pure-code bound).
    #[arg(long)]
    pure: bool,
}

#[derive(Args)]
struct RegionArgs {
    /// Normalized distance delta as an exact rational, e.g. 3/4.
    #[arg(long)]
    delta: String,
    /// Also write an SVG plot to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct PropagateArgs {
    /// Record database file: `n k d c q pure existence source` lines.
    #[arg(long)]
    db: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
    /// Enable the deliberately wrong shorten variant (soundness-check demo).
    #[arg(long)]
    corrupted_variant: bool,
}

#[derive(Args)]
struct VerifyCodeArgs {
    /// Corpus id (see `verify-code --name list`).
    #[arg(long)]
    name: String,
    /// Distance to verify.
    #[arg(long)]
    d: u32,
    /// Also execute the pure-shorten construction with this entanglement
    /// budget and certify the resulting witness.
    #[arg(long)]
    shorten: Option<u32>,
}

#[derive(Args)]
struct FuzzArgs {
    /// Lemma id: 1 (plain) or 2 (conditional).
    #[arg(long)]
    lemma: u8,
    #[arg(long)]
    trials: usize,
    /// Master seed; defaults to SINGLETON_LAB_SEED or a fixed constant.
    #[arg(long)]
    seed: Option<u64>,
    /// Cap on the random density dimension per trial.
    #[arg(long, default_value_t = 512)]
    dim_budget: usize,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Reed-Solomon code over GF(q) on the first n field elements.
    Rs {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum SimulateCmd {
    /// Dense-coding + classical-MDS + teleportation scheme, every erasure
    /// pattern, seeded random message per pattern.
    Densecoding {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Classical-MDS teleportation scheme for the high-distance corner.
    Mdspoint {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check(args) => cmd_check(args, cli.format),
        Command::Region(args) => cmd_region(args),
        Command::Propagate(args) => cmd_propagate(args),
        Command::VerifyCode(args) => cmd_verify_code(args),
        Command::Fuzz(args) => cmd_fuzz(args, cli.format),
        Command::Construct(ConstructCmd::Rs { q, n, k }) => cmd_construct_rs(q, n, k),
        Command::Simulate(sim) => cmd_simulate(sim),
    }
}

fn seed_or_default(flag: Option<u64>) -> u64 {
    flag.unwrap_or_else(|| {
        std::env::var("SINGLETON_LAB_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_SEED)
    })
}

fn parse_rat_arg(s: &str, name: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| anyhow!("bad rational for {name}: `{s}` ({e})"))
}

fn parse_params(spec: &str, pure: bool) -> Result<CodeParams> {
    let parts: Vec<&str> = spec.split(',').map(|p| p.trim()).collect();
    if parts.len() != 5 {
        bail!("--params needs n,k,d,c,q (got {} fields)", parts.len());
    }
    let n: u32 = parts[0].parse().context("bad n")?;
    let k = parse_rat_arg(parts[1], "k")?;
    let d: u32 = parts[2].parse().context("bad d")?;
    let c = parse_rat_arg(parts[3], "c")?;
    let q: u32 = parts[4].parse().context("bad q")?;
    let params = CodeParams::new(n, k, d, c, q).map_err(|e| anyhow!("{e}"))?;
    Ok(if pure { params.with_pure(true) } else { params })
}

fn render_verdict_human(v: &BoundVerdict) -> String {
    let mut out = String::new();
    out.push_str(&format!("params {}\n", v.params));
    for c in &v.checks {
        if !c.applicable {
            out.push_str(&format!("  {:<24} not applicable\n", c.id.to_string()));
            continue;
        }
        let rhs = c.rhs.unwrap();
        let status = if !c.satisfied {
            "VIOLATED"
        } else if c.tight {
            "tight"
        } else {
            "ok"
        };
        out.push_str(&format!(
            "  {:<24} k = {} vs {} -> {}\n",
            c.id.to_string(),
            c.lhs,
            rhs,
            status
        ));
    }
    out.push_str(&format!(
        "verdict {}{}\n",
        if v.admissible {
            "admissible"
        } else {
            "violating"
        },
        if v.ea_mds_tight {
            " (EAQMDS-tight)"
        } else {
            ""
        }
    ));
    out
}

fn render_verdict_csv(v: &BoundVerdict) -> String {
    let mut out = String::from("bound,applicable,lhs,rhs,satisfied,tight\n");
    for c in &v.checks {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.id,
            c.applicable,
            c.lhs,
            c.rhs.map(|r| r.to_string()).unwrap_or_default(),
            c.satisfied,
            c.tight
        ));
    }
    out
}

fn cmd_check(args: CheckArgs, format: Format) -> Result<ExitCode> {
    let params = parse_params(&args.params, args.pure)?;
    let verdict = classify(&params);
    match format {
        Format::Human => print!("{}", render_verdict_human(&verdict)),
        Format::JsonLines => println!("{}", serde_json::to_string(&verdict)?),
        Format::Csv => print!("{}", render_verdict_csv(&verdict)),
    }
    Ok(if verdict.admissible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_region(args: RegionArgs) -> Result<ExitCode> {
    let delta = parse_rat_arg(&args.delta, "delta")?;
    let region = rate_region(delta).map_err(|e| anyhow!("{e}"))?;
    print!("{}", region.to_csv());
    if let Some(path) = args.svg {
        std::fs::write(&path, region.to_svg())
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_propagate(args: PropagateArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.db)
        .with_context(|| format!("reading {}", args.db.display()))?;
    let seeds = parse_records(&text).map_err(|e| anyhow!("{e}"))?;
    let rules = if args.corrupted_variant {
        RuleSet::with_corrupted_shorten()
    } else {
        RuleSet::standard()
    };
    match closure(&seeds, &rules, args.max_steps) {
        Ok(result) => {
            print!("{}", propagate::format_records(&result.records));
            if !result.reached_fixed_point {
                eprintln!(
                    "warning: stopped after {} steps before the fixed point",
                    result.steps
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ PropagateError::SoundnessViolation { .. }) => {
            eprintln!("{e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

fn cmd_verify_code(args: VerifyCodeArgs) -> Result<ExitCode> {
    if args.name == "list" {
        for entry in corpus::all() {
            println!(
                "{} (n={}, k={}, q={}, expected d={}, pure={})",
                entry.id,
                entry.code.n(),
                entry.code.k(),
                entry.code.q(),
                entry.expected_distance,
                entry.expected_pure
            );
        }
        return Ok(ExitCode::SUCCESS);
    }
    let entry = corpus::by_id(&args.name)
        .ok_or_else(|| anyhow!("unknown corpus code `{}` (try --name list)", args.name))?;
    let code = &entry.code;
    println!(
        "code {} : n={} k={} q={}",
        entry.id,
        code.n(),
        code.k(),
        code.q()
    );

    let mut failed = false;
    let kl = code.knill_laflamme(args.d).map_err(|e| anyhow!("{e}"))?;
    println!(
        "knill-laflamme d={} : distance_ok={} pure={} words={}{}",
        args.d,
        kl.distance_at_least,
        kl.pure,
        kl.words_checked,
        kl.witness
            .as_ref()
            .map(|w| format!(" witness={}", w.letters()))
            .unwrap_or_default()
    );
    failed |= !kl.distance_at_least;

    let state = code.purified_state().map_err(|e| anyhow!("{e}"))?;
    let dec = check_decoupling(&state, args.d).map_err(|e| anyhow!("{e}"))?;
    println!(
        "decoupling d={} : correctable={} worst_mi={:.3e} patterns={} sigma_bar={:.9} S(R)={:.9}",
        args.d,
        dec.correctable,
        dec.worst_mutual_information,
        dec.partitions.len(),
        dec.sigma_bar,
        dec.reference_entropy
    );
    failed |= !dec.correctable;
    if kl.distance_at_least != dec.correctable {
        println!("oracle-disagreement: knill-laflamme vs decoupling");
        failed = true;
    }

    if dec.correctable && args.d >= 2 {
        let singleton = check_entropic_singleton(&state, args.d).map_err(|e| anyhow!("{e}"))?;
        println!(
            "entropic-singleton : S(R)={:.9} rhs={:.9} slack={:.3e} tight={} extremal={}",
            singleton.reference_entropy,
            singleton.rhs,
            singleton.slack,
            singleton.tight,
            singleton.extremal
        );
        failed |= singleton.slack < -1e-9;
    }

    if let Some(c) = args.shorten {
        match certify_pure_shorten(code, args.d, c) {
            Ok(w) => {
                println!(
                    "shorten c={c} : certified {} bin_dist={:.3e} worst_mi={:.3e} partitions={}{}",
                    w.params,
                    w.bin_trace_distance,
                    w.worst_mutual_information,
                    w.partitions_checked,
                    if w.vacuous { " (vacuous)" } else { "" }
                );
                let verdict = classify(&w.params);
                println!(
                    "shorten verdict : admissible={} eaqmds_tight={}",
                    verdict.admissible, verdict.ea_mds_tight
                );
                failed |= !verdict.admissible;
            }
            Err(e) => {
                println!("shorten c={c} : FAILED {e}");
                failed = true;
            }
        }
    }

    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_fuzz(args: FuzzArgs, format: Format) -> Result<ExitCode> {
    let seed = seed_or_default(args.seed);
    let report =
        fuzz(args.lemma, args.trials, args.dim_budget, seed).map_err(|e| anyhow!("{e}"))?;
    match format {
        Format::JsonLines => {
            println!(
                "{}",
                serde_json::json!({
                    "lemma": report.lemma,
                    "trials": report.trials,
                    "seed": seed,
                    "worst_margin": report.worst_margin,
                    "violations": report.violations,
                    "elapsed_ms": report.elapsed.as_millis() as u64,
                })
            );
        }
        _ => {
            println!("{} seed={}", report.summary(), seed);
            for v in &report.violations {
                println!(
                    "violation trial={} seed={} dims={:?} margin={:.3e}",
                    v.trial, v.seed, v.dims, v.margin
                );
            }
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_construct_rs(q: u32, n: usize, k: usize) -> Result<ExitCode> {
    let field = gf::Field::of_order(q).map_err(|e| anyhow!("{e}"))?;
    let code = gf::reed_solomon(&field, n, k).map_err(|e| anyhow!("{e}"))?;
    println!(
        "rs [{n},{k}] over GF({}) = GF({}^{}), modulus coefficients {:?}",
        q,
        field.characteristic(),
        field.degree(),
        field.modulus()
    );
    for (i, row) in code.generator().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|e| e.index().to_string()).collect();
        println!("g{} : {}", i, cells.join(" "));
    }
    match gf::min_distance(&code) {
        Ok(dist) => {
            println!("min_distance {} (mds={})", dist, dist == n - k + 1);
        }
        Err(gf::GfError::EnumerationBudgetExceeded { candidates, budget }) => {
            println!("min_distance skipped ({candidates} candidates exceed budget {budget})");
        }
        Err(e) => return Err(anyhow!("{e}")),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(sim: SimulateCmd) -> Result<ExitCode> {
    match sim {
        SimulateCmd::Densecoding { q, n, d, seed } => {
            let seed = seed_or_default(seed);
            if d == 0 || d as usize > n {
                bail!("densecoding needs 1 ≤ d ≤ n");
            }
            let k = n - (d as usize - 1);
            let field_order = (q as u64) * (q as u64);
            // one seeded message per erasure pattern, all patterns
            let patterns = all_subsets(n, d as usize - 1);
            let mut last = None;
            for (i, pattern) in patterns.iter().enumerate() {
                let mut s = seed.wrapping_add(i as u64);
                let msg: Vec<u32> = (0..k)
                    .map(|_| {
                        s = s
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        ((s >> 33) % field_order) as u32
                    })
                    .collect();
                let t =
                    simulate_densecoding_mds(q, n, d, &msg, pattern).map_err(|e| anyhow!("{e}"))?;
                last = Some(t);
            }
            let t = last.ok_or_else(|| anyhow!("no erasure patterns at d = {d}"))?;
            print!("{}", t.render());
            println!("patterns_swept={} seed={}", patterns.len(), seed);
            Ok(ExitCode::SUCCESS)
        }
        SimulateCmd::Mdspoint { q, n, d } => {
            let t = simulate_mds_point(q, n, d).map_err(|e| anyhow!("{e}"))?;
            print!("{}", t.render());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            acc.push(i);
            rec(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
