//! Command-line front end: solve requests into certificate files, verify
//! certificates, audit the shipped seed data, and export factors as DOT.
//!
//! Exit codes: 0 success/pass, 1 verification or audit failure, 2 malformed
//! input (file, certificate, or selection), 3 request out of scope.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use obk_core::cert::Certificate;
use obk_core::solver::{SolveError, Solver};
use obk_core::tuple_engine::{assemble_w_factorization, validate_base_tuple};
use obk_core::tuple_store::{load_case, load_special, DataSource, CASE_KEYS, SPECIAL_KEYS};
use obk_core::util::DEFAULT_SEED;
use obk_core::verify::verify_factorization;

#[derive(Parser)]
#[command(
    name = "obk",
    about = "Two-table directed Oberwolfach factorizations with machine-checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a verified factorization certificate for a cycle-length pair.
    Solve {
        #[arg(long)]
        t1: u32,
        #[arg(long)]
        t2: u32,
        /// Certificate output path (JSON).
        #[arg(long)]
        out: PathBuf,
        /// Seed for the decomposition searches.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Re-verify a certificate file.
    Verify { path: PathBuf },
    /// Audit the shipped seed data: per-tuple conditions, assembly
    /// hypotheses, and the special-case factorizations.
    CheckTuples {
        /// Restrict to one case, written as `t1,q` (e.g. `4,10`).
        #[arg(long)]
        case: Option<String>,
        /// Where to write the per-condition report.
        #[arg(long, default_value = "tuple_report.txt")]
        report: PathBuf,
    },
    /// Export a certificate's factors as a DOT digraph.
    ExportDot {
        path: PathBuf,
        /// Export a single factor instead of the colored union.
        #[arg(long)]
        factor: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let source = DataSource::from_env();
    match cli.command {
        Command::Solve { t1, t2, out, seed } => cmd_solve(source, t1, t2, &out, seed),
        Command::Verify { path } => cmd_verify(&path),
        Command::CheckTuples { case, report } => cmd_check_tuples(source, case.as_deref(), &report),
        Command::ExportDot { path, factor, out } => cmd_export_dot(&path, factor, out.as_deref()),
    }
}

fn cmd_solve(source: DataSource, t1: u32, t2: u32, out: &Path, seed: Option<u64>) -> ExitCode {
    let solver = Solver::new(source, seed.unwrap_or(DEFAULT_SEED));
    match solver.solve(t1, t2) {
        Ok(cert) => {
            if let Err(e) = cert.write_to(out) {
                eprintln!("cannot write {}: {e}", out.display());
                return ExitCode::from(2);
            }
            let arcs: usize = cert.factors.iter().flatten().map(|c| c.len()).sum();
            println!(
                "wrote {}: {} factors, {arcs} arcs, host order {}",
                out.display(),
                cert.factors.len(),
                cert.lengths.iter().sum::<u32>()
            );
            ExitCode::SUCCESS
        }
        Err(SolveError::OutOfScope(e)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("solve failed: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_verify(path: &Path) -> ExitCode {
    let cert = match Certificate::read_from(path) {
        Ok(cert) => cert,
        Err(e) => {
            eprintln!("malformed certificate {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let (host, factors) = match (cert.host.to_host(), cert.factor_cycles()) {
        (Ok(host), Ok(factors)) => (host, factors),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("malformed certificate {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let outcome = verify_factorization(&factors, &host, &cert.lengths);
    if outcome.pass() {
        println!(
            "pass: {} factors partition {} arcs with cycle lengths {:?}",
            factors.len(),
            host.arc_count(),
            cert.lengths
        );
        ExitCode::SUCCESS
    } else {
        for violation in &outcome.violations {
            println!("violation: {violation}");
        }
        println!("fail: {} violations", outcome.violations.len());
        ExitCode::from(1)
    }
}

fn parse_case_flag(case: &str) -> Option<(u32, u32)> {
    let (a, b) = case.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn cmd_check_tuples(source: DataSource, case: Option<&str>, report_path: &Path) -> ExitCode {
    let selected: Vec<(u32, u32)> = match case {
        Some(text) => match parse_case_flag(text) {
            Some(key) if CASE_KEYS.contains(&key) => vec![key],
            _ => {
                eprintln!("bad --case `{text}`; known cases: {CASE_KEYS:?}");
                return ExitCode::from(2);
            }
        },
        None => CASE_KEYS.to_vec(),
    };
    let audit_specials = case.is_none();

    let mut report = String::new();
    let mut failures = 0usize;
    let mut tuples_checked = 0usize;

    for (t1, q) in selected {
        let tuples = match load_case(&source, t1, q) {
            Ok(tuples) => tuples,
            Err(e) => {
                report.push_str(&format!("case ({t1},{q}): LOAD FAIL {e}\n"));
                failures += 1;
                continue;
            }
        };
        for tuple in &tuples {
            let result = validate_base_tuple(tuple);
            report.push_str(&result.render());
            report.push('\n');
            if !result.pass() {
                failures += 1;
            }
            tuples_checked += 1;
        }
        // Assembly hypotheses, including the base-order cross check.
        match assemble_w_factorization(&tuples, 0) {
            Ok(factors) => report.push_str(&format!(
                "case ({t1},{q}): assembly ok, {} factors at the base order\n",
                factors.len()
            )),
            Err(e) => {
                report.push_str(&format!("case ({t1},{q}): assembly FAIL {e}\n"));
                failures += 1;
            }
        }
    }

    let mut specials_checked = 0usize;
    if audit_specials {
        for &(t1, t2) in &SPECIAL_KEYS {
            match load_special(&source, t1, t2) {
                Ok(special) => {
                    let host = obk_core::HostSpec::w_star(t1 + t2).expect("valid order");
                    let outcome = verify_factorization(&special.factors, &host, &[t1, t2]);
                    if outcome.pass() {
                        report.push_str(&format!(
                            "special ({t1},{t2}): {} factors verify\n",
                            special.factors.len()
                        ));
                    } else {
                        for v in &outcome.violations {
                            report.push_str(&format!("special ({t1},{t2}): FAIL {v}\n"));
                        }
                        failures += 1;
                    }
                    specials_checked += 1;
                }
                Err(e) => {
                    report.push_str(&format!("special ({t1},{t2}): LOAD FAIL {e}\n"));
                    failures += 1;
                }
            }
        }
    }

    if let Err(e) = std::fs::write(report_path, &report) {
        eprintln!("cannot write report {}: {e}", report_path.display());
        return ExitCode::from(2);
    }
    if failures == 0 {
        println!(
            "pass: {tuples_checked} tuples and {specials_checked} special factorizations verify; report at {}",
            report_path.display()
        );
        ExitCode::SUCCESS
    } else {
        // Surface the failing lines directly too.
        for line in report.lines().filter(|l| l.contains("FAIL")) {
            println!("{line}");
        }
        println!(
            "fail: {failures} problems; report at {}",
            report_path.display()
        );
        ExitCode::from(1)
    }
}

const DOT_COLORS: [&str; 10] = [
    "red",
    "blue",
    "forestgreen",
    "orange",
    "purple",
    "brown",
    "cadetblue",
    "magenta",
    "darkslategray",
    "goldenrod",
];

fn cmd_export_dot(path: &Path, factor: Option<usize>, out: Option<&Path>) -> ExitCode {
    let cert = match Certificate::read_from(path) {
        Ok(cert) => cert,
        Err(e) => {
            eprintln!("malformed certificate {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let factors = match cert.factor_cycles() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("malformed certificate {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    if let Some(index) = factor {
        if index >= factors.len() {
            eprintln!("factor index {index} out of range 0..{}", factors.len());
            return ExitCode::from(2);
        }
    }

    let mut dot = String::from("digraph factorization {\n");
    for (i, cycles) in factors.iter().enumerate() {
        if factor.is_some_and(|want| want != i) {
            continue;
        }
        let color = DOT_COLORS[i % DOT_COLORS.len()];
        for cycle in cycles {
            for arc in cycle.arcs() {
                dot.push_str(&format!(
                    "  \"{}\" -> \"{}\" [color={color}, factor={i}];\n",
                    arc.tail, arc.head
                ));
            }
        }
    }
    dot.push_str("}\n");

    match out {
        Some(out_path) => {
            if let Err(e) = std::fs::write(out_path, &dot) {
                eprintln!("cannot write {}: {e}", out_path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{dot}"),
    }
    ExitCode::SUCCESS
}
