//! `flagcert`: command-line access to certificate verification, the
//! construction profile and the brute-force oracles.
//!
//! Exit status is 0 when a check passes, 1 when it runs and fails, and 2 on
//! bad input.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flagcert_core::certificates::{
    compare_coefficient_golden, compare_polynomial_golden, load_certificate,
    parse_coefficient_golden, parse_polynomial_golden, verify, GoldenComparison,
};
use flagcert_core::constructions::{
    blowup_density, conjecture_value, piece_for, profile_csv, profile_table, BlowupModel,
};
use flagcert_core::exactmath::{format_decimal, format_rational, parse_rational};
use flagcert_core::oracle::{
    counting_identity_check, max_density_search, max_density_table, search_csv,
    want_inequality_scan_grid,
};
use flagcert_core::smallgraph::{count_induced, enumerate_graphs_extended, induced_density};
use flagcert_core::{Rational, SmallGraph};

#[derive(Parser)]
#[command(
    name = "flagcert",
    version,
    about = "Exact flag-algebra certificate checking for induced K(2,2,1) densities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List one graph per isomorphism class.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Print graph6 instead of pair codes.
        #[arg(long)]
        graph6: bool,
    },
    /// Induced count and density of H in G.
    Density {
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
    },
    /// Verify a certificate file (`-` reads stdin).
    Verify(VerifyArgs),
    /// Sample the construction curve as CSV.
    Profile {
        #[arg(long, default_value = "0")]
        from: String,
        #[arg(long, default_value = "1")]
        to: String,
        #[arg(long, default_value = "0.005")]
        step: String,
        #[arg(long, default_value_t = 6)]
        digits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact curve value at one edge density.
    Curve {
        #[arg(long)]
        e: String,
        #[arg(long, default_value_t = 12)]
        digits: usize,
    },
    /// Induced density of H in a weighted blowup.
    Blowup {
        #[arg(long)]
        base: String,
        /// Comma-separated part weights summing to 1.
        #[arg(long)]
        weights: String,
        #[arg(long)]
        h: String,
    },
    /// Exhaustive maximum induced count of H over graphs of order n.
    Search {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: Option<usize>,
        /// One row per edge count.
        #[arg(long, conflicts_with = "edges")]
        table: bool,
        /// Allow n = 9.
        #[arg(long)]
        extended: bool,
    },
    /// Check the edge-local counting identity on all small graphs.
    Identity {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Exact scan of the degree inequality.
    Scan {
        /// Comma-separated values of k, each at least 3.
        #[arg(long, default_value = "3,4,5,6")]
        k: String,
        #[arg(long, default_value_t = 40)]
        nmax: u64,
        #[arg(long, default_value_t = 1)]
        subdivisions: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    cert: String,
    /// Value of k for parametric certificates; defaults to the file's k0.
    #[arg(long)]
    k0: Option<String>,
    /// Reference coefficients or slack polynomials to compare against.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Comparison tolerance (default 0.001 for coefficients, 1e-6 for roots).
    #[arg(long)]
    tolerance: Option<String>,
}

type Outcome = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn graph(s: &str) -> Result<SmallGraph, String> {
    SmallGraph::parse(s).map_err(|e| format!("{s}: {e}"))
}

fn number(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("{s}: {e}"))
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Enumerate { order, graph6 } => {
            for g in enumerate_graphs_extended(order).map_err(err)? {
                println!(
                    "{}",
                    if graph6 {
                        g.to_graph6()
                    } else {
                        g.to_pair_code()
                    }
                );
            }
            Ok(true)
        }
        Command::Density { h, g } => {
            let (h, g) = (graph(&h)?, graph(&g)?);
            let d = induced_density(&h, &g);
            println!("count={}", count_induced(&h, &g));
            println!(
                "density={} ({})",
                format_rational(&d),
                format_decimal(&d, 6)
            );
            Ok(true)
        }
        Command::Verify(args) => run_verify(args),
        Command::Profile {
            from,
            to,
            step,
            digits,
            out,
        } => {
            let points =
                profile_table(&number(&from)?, &number(&to)?, &number(&step)?).map_err(err)?;
            let csv = profile_csv(&points, digits);
            match out {
                Some(p) => std::fs::write(&p, csv).map_err(|e| format!("{}: {e}", p.display()))?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Command::Curve { e, digits } => {
            let e = number(&e)?;
            let v = conjecture_value(&e).map_err(err)?;
            println!("piece={:?}", piece_for(&e).map_err(err)?);
            println!("exact={v}");
            println!("value={}", v.to_decimal(digits));
            Ok(true)
        }
        Command::Blowup { base, weights, h } => {
            let weights = weights
                .split(',')
                .map(|w| number(w.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let model = BlowupModel::new(graph(&base)?, weights).map_err(err)?;
            let d = blowup_density(&model, &graph(&h)?).map_err(err)?;
            println!("edge_density={}", format_rational(&model.edge_density()));
            println!(
                "density={} ({})",
                format_rational(&d),
                format_decimal(&d, 6)
            );
            Ok(true)
        }
        Command::Search {
            h,
            n,
            edges,
            table,
            extended,
        } => {
            let h = graph(&h)?;
            let rows = if table {
                max_density_table(&h, n, extended).map_err(err)?
            } else {
                vec![max_density_search(&h, n, edges, extended).map_err(err)?]
            };
            print!("{}", search_csv(&rows));
            Ok(true)
        }
        Command::Identity { max_n } => {
            let r = counting_identity_check(max_n).map_err(err)?;
            for (n, c) in &r.checked {
                println!("n={n} graphs={c}");
            }
            for (g, l, rhs) in &r.exceptions {
                println!("exception {} lhs={l} rhs={rhs}", g.to_pair_code());
            }
            println!(
                "verdict={}",
                if r.exceptions.is_empty() {
                    "PASS"
                } else {
                    "FAIL"
                }
            );
            Ok(r.exceptions.is_empty())
        }
        Command::Scan {
            k,
            nmax,
            subdivisions,
        } => {
            let ks = k
                .split(',')
                .map(|s| number(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let r = want_inequality_scan_grid(&ks, nmax, subdivisions).map_err(err)?;
            print!("{}", r.render());
            Ok(r.is_clean())
        }
    }
}

fn run_verify(args: VerifyArgs) -> Outcome {
    let cert = load_certificate(&read_source(&args.cert)?).map_err(err)?;
    let k0 = args.k0.as_deref().map(number).transpose()?;
    let report = verify(&cert, k0.as_ref()).map_err(err)?;
    print!("{}", report.render());
    let mut ok = report.passed();
    if let Some(path) = &args.golden {
        let cmp = compare_golden(&report, path, args.tolerance.as_deref())?;
        println!("golden_compared={}", cmp.compared);
        if let Some(d) = &cmp.max_deviation {
            println!("golden_max_deviation={}", format_decimal(d, 9));
        }
        for m in &cmp.mismatches {
            println!("golden_mismatch {m}");
        }
        println!("golden_unlisted={}", cmp.unlisted.len());
        println!(
            "golden={}",
            if cmp.is_match() { "MATCH" } else { "MISMATCH" }
        );
        ok &= cmp.is_match();
    }
    Ok(ok)
}

fn compare_golden(
    report: &flagcert_core::certificates::VerificationReport,
    path: &Path,
    tolerance: Option<&str>,
) -> Result<GoldenComparison, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if text.contains('|') {
        let tol = number(tolerance.unwrap_or("0.000001"))?;
        let golden = parse_polynomial_golden(&text).map_err(err)?;
        compare_polynomial_golden(report, &golden, &tol).map_err(err)
    } else {
        let tol = number(tolerance.unwrap_or("0.001"))?;
        let golden = parse_coefficient_golden(&text).map_err(err)?;
        compare_coefficient_golden(report, &golden, &tol).map_err(err)
    }
}
