use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pillai_core::arith::rigor::DEFAULT_CEILING_BITS;
use pillai_core::arith::PrecisionPolicy;
use pillai_core::bounds::y_bounds;
use pillai_core::campaign::{corollary_sweep, theorem_sweep, SweepConfig, SweepReport};
use pillai_core::equation::{brute_force, classify, make_instance};
use pillai_core::reduction::{check_case_with, CaseCeilings, Status};
use pillai_core::Error;

const EXIT_OK: u8 = 0;
const EXIT_SOLUTION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

#[derive(Parser)]
#[command(name = "pillai", version, about = "Certified checks for (5pn²−1)^x + (p(p−5)n²+1)^y = (pn)^z")]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,

    /// Starting working precision in bits
    #[arg(long, global = true, env = "PILLAI_PRECISION", default_value_t = 192)]
    precision: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Settle one case (p, n)
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Print the exponent bounds and ceilings for (p, n)
    Bounds {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Brute-force every solution with x, y, z ≤ max
    Oracle {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(2..=2000))]
        max: u64,
    },
    /// Sweep every admissible (p, n)
    SweepTheorem {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Exclusive bound on p
        #[arg(long)]
        p_max: Option<u64>,
    },
    /// Search the companion equation for every n with 5 | n
    SweepCorollary {
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive bound on n
    #[arg(long)]
    n_max: Option<u64>,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Line-delimited report file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file; resumes when it exists
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Small CI-sized range
    #[arg(long)]
    smoke: bool,
    #[arg(long, hide = true)]
    stop_after: Option<u64>,
    #[arg(long, hide = true)]
    no_timings: bool,
}

impl SweepArgs {
    fn config(self, p_max: Option<u64>, policy: PrecisionPolicy) -> SweepConfig {
        SweepConfig {
            p_max,
            n_max: self.n_max,
            policy,
            threads: self.threads,
            checkpoint: self.checkpoint,
            out: self.out,
            smoke: self.smoke,
            stop_after: self.stop_after,
            timings: !self.no_timings,
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted { .. }
        | Error::QuotientAmbiguous { .. }
        | Error::FixedPointUncertified(_)
        | Error::BudgetExceeded { .. } => EXIT_PRECISION,
        _ => EXIT_USAGE,
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::UnexpectedSolution => EXIT_SOLUTION,
        Status::PrecisionFailure => EXIT_PRECISION,
        _ => EXIT_OK,
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn check(p: u64, n: u64, policy: &PrecisionPolicy, as_json: bool) -> Result<u8, Error> {
    let inst = make_instance(p, n)?;
    let v = check_case_with(&inst, policy, &CaseCeilings::derive(policy)?)?;
    if as_json {
        print_json(&serde_json::to_value(&v).expect("verdict serializes"));
    } else {
        println!("p = {p}, n = {n}: {}", v.tag);
        println!("status: {}", v.status);
        println!("method: {}", v.method);
        if v.q_max > 0 {
            println!("q_max: {}", v.q_max);
            println!("convergents checked: {}", v.convergents_checked());
            println!("precision: {} bits", v.precision_bits);
        }
        if !v.survivors.is_empty() {
            println!("searched exactly: {:?}", v.survivors);
        }
        if let Some(w) = v.witness {
            println!("witness: {w}");
        }
    }
    Ok(status_code(v.status))
}

fn bounds(p: u64, n: u64, policy: &PrecisionPolicy, as_json: bool) -> Result<u8, Error> {
    let inst = make_instance(p, n)?;
    let tag = classify(&inst).tag;
    let b = y_bounds(&inst, policy)?;
    let ceilings = CaseCeilings::derive(policy)?;
    let ceiling = ceilings.for_tag(tag);
    let excluded = ceilings.excludes(&inst, tag);
    if as_json {
        print_json(&json!({
            "p": p,
            "n": n,
            "case_tag": tag,
            "bounds": b,
            "y_floor": b.y_floor(),
            "ceiling": ceiling.map(|(pb, nb)| json!({ "p_below": pb, "n_at_most": nb })),
            "excluded_by_ceilings": excluded,
        }));
    } else {
        println!("p = {p}, n = {n}: {tag}");
        println!("y_lower: {}", b.y_lower);
        println!("y_floor: {}", b.y_floor());
        println!("y_upper: {}", b.y_upper);
        println!("y_upper (per instance): {}", b.y_upper_tight);
        println!("q_max: {}", b.q_max);
        if let Some((pb, nb)) = ceiling {
            println!("case ceilings: p < {pb}, n ≤ {nb}");
            println!("excluded by ceilings: {excluded}");
        }
    }
    Ok(EXIT_OK)
}

fn oracle(p: u64, n: u64, max: u64, as_json: bool) -> Result<u8, Error> {
    let inst = make_instance(p, n)?;
    let sols = brute_force(&inst, max, max, max)?;
    if as_json {
        print_json(&json!({ "p": p, "n": n, "max": max, "solutions": sols }));
    } else {
        println!("solutions with x, y, z ≤ {max}:");
        for s in &sols {
            println!("  {s}");
        }
    }
    Ok(if sols.iter().all(|s| s.is_trivial()) {
        EXIT_OK
    } else {
        EXIT_SOLUTION
    })
}

fn sweep(report: SweepReport, as_json: bool) -> u8 {
    if as_json {
        println!("{}", report.summary_json());
    } else {
        println!("{}", report.summary_text());
    }
    report.exit_code() as u8
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let policy = match PrecisionPolicy::new(cli.precision, cli.precision.max(DEFAULT_CEILING_BITS)) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match cli.command {
        Command::Check { p, n } => check(p, n, &policy, cli.json),
        Command::Bounds { p, n } => bounds(p, n, &policy, cli.json),
        Command::Oracle { p, n, max } => oracle(p, n, max, cli.json),
        Command::SweepTheorem { sweep: s, p_max } => {
            theorem_sweep(&s.config(p_max, policy)).map(|r| sweep(r, cli.json))
        }
        Command::SweepCorollary { sweep: s } => {
            corollary_sweep(&s.config(None, policy)).map(|r| sweep(r, cli.json))
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
