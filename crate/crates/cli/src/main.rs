use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qhopf::classical::chern_numbers;
use qhopf::coaction::{verify_bundle, SUq2};
use qhopf::parse::parse_expr;
use qhopf::report::{CheckResult, Report};
use qhopf::representation::{build_sigma, index_pairing, parse_q, trace_report, PAIRING_TOL};
use qhopf::rmatrix::{canonical, derive_relations, s7_system, Family};
use qhopf::spheres::{s4_system, verify_spheres};
use qhopf::verify::{verify_all, VerifyOptions};

#[derive(Parser)]
#[command(name = "qhopf", version, about = "Verification engine for the quantum Hopf bundle S7_q -> S4_q")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive the quadratic relations of the quantum sphere from the R-matrix.
    DeriveRelations {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// xx, vv, xv or all.
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long)]
        json: bool,
    },
    /// Certify the projection and the 4-sphere relations.
    VerifySpheres {
        #[arg(long)]
        json: bool,
    },
    /// Check the coaction, Hopf-Galois and strong connection conditions.
    VerifyBundle {
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Index pairing of the projection with the Fredholm module.
    Pairing {
        #[arg(long, default_value = "0.5")]
        q: String,
        #[arg(long, default_value_t = 30)]
        m: usize,
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Print exact rational values.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo Chern numbers of the classical projection.
    ChernClassical {
        #[arg(long, default_value_t = 2_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-4)]
        fd_step: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of an expression.
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value_t = Algebra::S7)]
        algebra: Algebra,
    },
    /// Run every check.
    VerifyAll {
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value_t = 2_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Compare against a deliberately corrupted golden table.
        #[arg(long, hide = true)]
        corrupt_fixture: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    S7,
    Su2,
    S4,
}

enum Outcome {
    Pass,
    Fail,
    Usage(String),
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn emit_checks(checks: Vec<CheckResult>, json: bool) -> Outcome {
    let report = Report::new(checks);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", report.render_text());
    }
    report.all_pass().into()
}

fn run(cmd: Cmd) -> qhopf::Result<Outcome> {
    Ok(match cmd {
        Cmd::DeriveRelations { n, family, json } => {
            let fams = match family.as_str() {
                "all" => vec![Family::XX, Family::VV, Family::XV],
                f => vec![f.parse()?],
            };
            let mut out = Vec::new();
            for fam in fams {
                let set = canonical(&derive_relations(n, fam)?, n)?;
                out.push((fam.tag(), set.rendered()));
            }
            if json {
                let v: Vec<_> = out
                    .iter()
                    .map(|(f, rules)| {
                        serde_json::json!({
                            "family": f,
                            "rules": rules.iter().map(|(l, r)| serde_json::json!({"lhs": l, "rhs": r})).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            } else {
                for (f, rules) in out {
                    println!("# {f}");
                    for (l, r) in rules {
                        println!("{l} -> {r}");
                    }
                }
            }
            Outcome::Pass
        }
        Cmd::VerifySpheres { json } => emit_checks(verify_spheres(), json),
        Cmd::VerifyBundle { max_degree, json } => emit_checks(verify_bundle(max_degree), json),
        Cmd::Pairing { q, m, n, exact, json } => {
            let q0 = parse_q(&q)?;
            let r = index_pairing(&q0, m, n)?;
            let t = trace_report(&build_sigma(&q0, m, n)?);
            let ok = (r.pairing_value + 1.0).abs() <= PAIRING_TOL && r.tau0_value == "2" && r.trivial_pairing == "0";
            if json {
                let v = serde_json::json!({ "pairing": r, "traces": t });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            } else {
                println!("q0 = {}, M = {}, N = {}", r.q0, r.m, r.n);
                println!("ch0(p) = {}", r.ch0);
                println!("Tr t = {:.17e} (closed form {:.17e})", r.trace_t, r.closed_form);
                println!("Tr|a| = {:.12} <= {:.12}", t.trace_abs_a, t.bound_a);
                println!("Tr|b| = {:.12} <= {:.12}", t.trace_abs_b, t.bound_b);
                println!("<tau1, ch0(p)> = {:.15} (truncation bound {:.3e})", r.pairing_value, r.truncation_error_bound);
                if exact {
                    println!("<tau1, ch0(p)> exact = {}", r.pairing_exact);
                    println!("Tr t exact = {}", t.trace_t);
                }
                println!("<tau0, ch0(p)> = {}", r.tau0_value);
                println!("<tau1, ch0(1)> = {}", r.trivial_pairing);
            }
            ok.into()
        }
        Cmd::ChernClassical { samples, fd_step, seed, json } => {
            let r = match chern_numbers(samples, fd_step, seed) {
                Ok(r) => r,
                Err(e) => return Ok(Outcome::Usage(e.to_string())),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
            } else {
                println!("c2 = {:.9}", r.c2_value);
                println!("max |C1| = {:.3e}", r.c1_max_residual);
                println!("samples = {}, fd-step = {:e}, seed = {}", r.samples, r.fd_step, r.seed);
            }
            ((r.c2_value + 1.0).abs() <= 0.05 && r.c1_max_residual < 1e-6).into()
        }
        Cmd::Normalize { expr, algebra } => {
            let e = match parse_expr(&expr) {
                Ok(e) => e,
                Err(err) => return Ok(Outcome::Usage(err.to_string())),
            };
            let sys = match algebra {
                Algebra::S7 => s7_system()?,
                Algebra::Su2 => &SUq2::get()?.system,
                Algebra::S4 => s4_system()?,
            };
            match sys.normalize(&e) {
                Ok(nf) => {
                    println!("{nf}");
                    Outcome::Pass
                }
                Err(err) => Outcome::Usage(err.to_string()),
            }
        }
        Cmd::VerifyAll { max_degree, samples, seed, json, corrupt_fixture } => {
            let opts = VerifyOptions { max_degree, samples, seed, corrupt_fixture, ..VerifyOptions::default() };
            let report = verify_all(&opts);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            report.all_pass().into()
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
