use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rootca::exactnum::Dyadic;
use rootca::harness::{
    benchmark_region, gen_family, polynomial_lines, run_experiment, scaling_study, ExperimentConfig, Family, FamilyName,
};
use rootca::polynomial::IntPolynomial;
use rootca::predicates::{Algorithm, Predicate};
use rootca::roots::approximate_roots;
use rootca::subdivide::{default_max_depth, run_bisection};

#[derive(Parser)]
#[command(name = "rootca", version, about = "Subdivision root isolation with amortized size bounds")]
struct Cli {
    /// Bits of accuracy for printed root approximations.
    #[arg(long, global = true, env = "ROOTCA_PRECISION", default_value_t = 53)]
    precision: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Isolate the roots of one or more polynomials.
    Isolate {
        /// File with one polynomial per line, or an inline polynomial such as "-2 0 1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        alg: Algorithm,
        /// Depth cap for the bisection tree.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Compare measured partition sizes against their bounds and write a JSONL report.
    Verify {
        /// mignotte, wilkinson, chebyshev, random or file.
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long = "L")]
        l: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mignotte parameter; derived from L when absent.
        #[arg(long)]
        a: Option<u64>,
        /// Polynomial file for the file family.
        #[arg(long)]
        path: Option<PathBuf>,
        /// Comma-separated predicate ids.
        #[arg(long, value_delimiter = ',', required = true)]
        alg: Vec<Algorithm>,
        #[arg(long)]
        out: PathBuf,
        /// Relative quadrature tolerance.
        #[arg(long, default_value_t = rootca::harness::BOUND_TOL)]
        tol: f64,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Measured leaf counts against d(L ln 2 + ln d) over a degree range.
    Scaling {
        #[arg(long)]
        family: FamilyName,
        /// Degrees as start:end:step (inclusive).
        #[arg(long)]
        d_range: String,
        #[arg(long = "L")]
        l: u64,
        #[arg(long)]
        alg: Algorithm,
        /// Emit JSON instead of a text table.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Isolate { poly, alg, depth } => isolate(&poly, alg, depth, cli.precision),
        Cmd::Verify { family, d, l, seed, a, path, alg, out, tol, depth } => {
            families(&family, d, l, seed, a, path.as_deref()).and_then(|fams| verify(fams, alg, out, tol, depth))
        }
        Cmd::Scaling { family, d_range, l, alg, json } => scaling(family, &d_range, l, alg, json),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_polys(arg: &str) -> Result<Vec<IntPolynomial>> {
    let path = Path::new(arg);
    let text = if path.is_file() { std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))? } else { arg.to_string() };
    let polys = polynomial_lines(&text).into_iter().map(IntPolynomial::parse).collect::<rootca::Result<Vec<_>>>()?;
    if polys.is_empty() {
        bail!("no polynomial in {arg:?}");
    }
    Ok(polys)
}

fn isolate(arg: &str, alg: Algorithm, depth: Option<u32>, precision: u32) -> Result<ExitCode> {
    let eps = Dyadic::pow2(-i64::from(precision.max(1)));
    let mut code = ExitCode::SUCCESS;
    for p in read_polys(arg)? {
        println!("poly {}", p.to_text());
        let pred = match Predicate::new(alg, &p) {
            Ok(pred) => pred,
            Err(e) => {
                println!("  error: {e}");
                code = ExitCode::FAILURE;
                continue;
            }
        };
        let region = benchmark_region(&p, alg.dim());
        let depth = depth.unwrap_or_else(|| default_max_depth(p.deg(), p.bit_height().max(1)));
        let tree = run_bisection(&pred, region.clone(), depth)?;
        println!("  region {}", region.dump());
        println!(
            "  leaves {} nodes {} depth {}{}",
            tree.stats.leaf_count,
            tree.stats.node_count,
            tree.stats.max_depth,
            if tree.truncated { " (truncated)" } else { "" }
        );
        for n in tree.include_leaves() {
            println!("  include {}", n.region.dump());
        }
        for r in &tree.midpoint_roots {
            println!("  exact root {}", r.to_decimal_string());
        }
        if tree.truncated {
            code = ExitCode::FAILURE;
        }
        if p.deg() > 0 {
            let rs = approximate_roots(&p, &eps)?;
            for r in &rs.roots {
                let (re, im) = r.center.to_f64();
                if r.is_real {
                    println!("  root {re:.17e} +- {:.3e}", r.radius.to_f64());
                } else if alg.dim() == 2 {
                    println!("  root {re:.17e} {im:+.17e}i +- {:.3e}", r.radius.to_f64());
                }
            }
        }
    }
    Ok(code)
}

fn families(name: &str, d: Option<usize>, l: Option<u64>, seed: u64, a: Option<u64>, path: Option<&Path>) -> Result<Vec<Family>> {
    if name == "file" {
        let path = path.context("--path is required for the file family")?;
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let n = polynomial_lines(&text).len();
        if n == 0 {
            bail!("no polynomial in {}", path.display());
        }
        return Ok((0..n).map(|line| Family::File { path: path.to_path_buf(), line }).collect());
    }
    let fam: FamilyName = name.parse()?;
    let d = d.context("--d is required")?;
    let l = l.unwrap_or(8);
    let mut f = Family::from_params(fam, d, l, seed);
    if let (Family::Mignotte { a: slot, .. }, Some(a)) = (&mut f, a) {
        *slot = a;
    }
    gen_family(&f).with_context(|| format!("generating {}", f.label()))?;
    Ok(vec![f])
}

fn verify(families: Vec<Family>, algs: Vec<Algorithm>, out: PathBuf, tol: f64, depth: Option<u32>) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig::new(families, algs);
    cfg.tol = tol;
    cfg.max_depth = depth;
    cfg.output = Some(out.clone());
    let report = run_experiment(&cfg)?;
    for r in &report.records {
        let status = if r.ok() { "ok" } else { "FAIL" };
        match (&r.metrics, &r.error) {
            (Some(m), _) => println!(
                "{status} {} {} d={} L={} leaves={} ca_upper={:.6e} closed_form_upper={}",
                r.case.family.label(),
                r.case.algorithm,
                r.d,
                r.l,
                m.measured_leaves,
                m.ca.integral_bound.hi.to_f64(),
                m.ca.closed_form_bound.as_ref().map_or("-".into(), |c| format!("{:.6e}", c.hi.to_f64())),
            ),
            (None, e) => println!("{status} {} {} error: {}", r.case.family.label(), r.case.algorithm, e.as_deref().unwrap_or("?")),
        }
    }
    let failures = report.failures().len();
    println!("{} records, {} failures, report at {}", report.records.len(), failures, out.display());
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<usize> =
        s.split(':').map(|x| x.trim().parse::<usize>().with_context(|| format!("bad degree range {s:?}"))).collect::<Result<_>>()?;
    let (a, b, step) = match parts[..] {
        [a, b] => (a, b, 1),
        [a, b, step] => (a, b, step),
        _ => bail!("degree range must be start:end[:step]"),
    };
    if step == 0 || a > b || a == 0 {
        bail!("degree range must satisfy 1 <= start <= end and step >= 1");
    }
    Ok((a..=b).step_by(step).collect())
}

fn scaling(family: FamilyName, range: &str, l: u64, alg: Algorithm, json: bool) -> Result<ExitCode> {
    let table = scaling_study(family, &parse_range(range)?, l, alg)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else {
        print!("{}", table.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4:10:2").unwrap(), vec![4, 6, 8, 10]);
        assert_eq!(parse_range("3:5").unwrap(), vec![3, 4, 5]);
        assert!(parse_range("5:3").is_err());
        assert!(parse_range("1:2:0").is_err());
    }

    #[test]
    fn inline_and_multi_line() {
        assert_eq!(read_polys("-2 0 1").unwrap().len(), 1);
        assert_eq!(read_polys("-2 0 1\n\n# comment\n-6 11 -6 1\n").unwrap().len(), 2);
    }
}
