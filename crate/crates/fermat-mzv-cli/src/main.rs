use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fermat_mzv::checks::{self, Suite};
use fermat_mzv::depth_one;
use fermat_mzv::hopf::{self, DimSeries, UElement};
use fermat_mzv::index::{compile, compile_classical, IndexExpr};
use fermat_mzv::motivic::{self, IISymbol, Reduction};
use fermat_mzv::numeric::{self, TruncationCaps};
use fermat_mzv::{F2Index, Form, WordCombo};

#[derive(Parser)]
#[command(name = "fermat-mzv", version, about = "Multiple zeta values on the degree-2 Fermat curve")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate zf2(k; phi) or z(k) numerically
    Eval {
        index: String,
        /// Truncation order N
        #[arg(long)]
        terms: Option<usize>,
        /// Target error estimate; N doubles until reached or capped
        #[arg(long)]
        tol: Option<f64>,
        /// Also run the quadrature oracle (depth <= 2, weight <= 4)
        #[arg(long)]
        oracle: bool,
    },
    /// Compile an index to a level-4 word
    Compile { index: String },
    /// Shuffle product of two word combinations (or U4 elements with --u)
    Shuffle {
        a: String,
        b: String,
        #[arg(long)]
        u: bool,
    },
    /// Coaction of an iterated-integral symbol or a U4 element
    Coaction {
        #[arg(long, conflicts_with = "u")]
        symbol: Option<String>,
        #[arg(long)]
        u: Option<String>,
        /// Reduced coaction (drop the two boundary terms)
        #[arg(long)]
        tilde: bool,
        /// Drop only 1 (x) id (U4 elements)
        #[arg(long, conflicts_with = "tilde")]
        prime: bool,
        /// Apply the rewrite rules to the left factors
        #[arg(long)]
        simplify: bool,
    },
    /// Graded basis of U4 at level 1, 2 or 4
    Basis {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 4)]
        level: u32,
        #[arg(long)]
        sigma_invariant: bool,
    },
    /// Dimension series
    Dims {
        #[arg(long, default_value_t = 10)]
        max: u32,
    },
    /// Explicit depth-one value of zf2(k; w)
    ClosedForm { k: u32 },
    /// Run a named invariant suite
    Check {
        suite: String,
        #[arg(long, default_value_t = 5)]
        max: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(json: bool, value: Value, human: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{}", human());
    }
}

fn to_f2(expr: IndexExpr) -> Result<F2Index> {
    match expr {
        IndexExpr::F2(i) => Ok(i),
        IndexExpr::Classical { level: 1, k, .. } => {
            let phi = vec![Form::Omega1; k.len()];
            Ok(F2Index::new(k, phi)?)
        }
        IndexExpr::Classical { level, .. } => bail!("numeric evaluation covers zf2(...) and z(...), not level {level}"),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Eval { index, terms, tol, oracle } => {
            let idx = to_f2(index.parse()?)?;
            let caps = TruncationCaps::from_env()?;
            let r = match (terms, tol) {
                (Some(n), _) => numeric::evaluate(&idx, *n)?,
                (None, Some(t)) => numeric::evaluate_to_tolerance(&idx, *t, caps)?,
                (None, None) => numeric::evaluate_to_tolerance(&idx, 1e-8, caps)?,
            };
            let quad = if *oracle { Some(numeric::quad_oracle_with_error(&idx)?) } else { None };
            let mut v = json!({
                "index": idx.to_string(),
                "value": r.value,
                "error_estimate": r.error_estimate,
                "terms_used": r.terms_used,
            });
            if let Some((q, e)) = quad {
                v["oracle"] = json!({ "value": q, "error_estimate": e });
            }
            emit(json, v, || {
                let mut s = format!("{idx} = {:.15} (error estimate {:.1e}, N = {})", r.value, r.error_estimate, r.terms_used);
                if let Some((q, e)) = quad {
                    s += &format!("\nquadrature: {q:.15} (estimate {e:.1e})");
                }
                s
            });
        }
        Cmd::Compile { index } => match index.parse::<IndexExpr>()? {
            IndexExpr::F2(idx) => {
                let c = compile(&idx)?;
                let v = json!({ "index": idx.to_string(), "template": c.template, "word": c.word, "prefactor": c.prefactor });
                emit(json, v, || format!("{idx} = ({}) * I(0; {}; 1)\ntemplate: {}", c.prefactor, c.word, c.template.join(" ")));
            }
            IndexExpr::Classical { level, k, eps } => {
                let w = compile_classical(&k, &eps, level)?;
                emit(json, json!({ "level": level, "word": w }), || format!("I(0; {w}; 1)"));
            }
        },
        Cmd::Shuffle { a, b, u } => {
            if *u {
                let (x, y): (UElement, UElement) = (a.parse()?, b.parse()?);
                let p = x.shuffle(&y);
                emit(json, json!(p), || p.to_string());
            } else {
                let (x, y): (WordCombo, WordCombo) = (a.parse()?, b.parse()?);
                let p = x.shuffle(&y);
                emit(json, json!(p), || p.to_string());
            }
        }
        Cmd::Coaction { symbol, u, tilde, prime, simplify } => match (symbol, u) {
            (Some(s), None) => {
                let sym: IISymbol = s.parse()?;
                let red = if *tilde { Reduction::Tilde } else { Reduction::Full };
                let chains = motivic::coaction_on_word_combo(sym.start, &sym.word, sym.end, sym.variant, red);
                let mut t = motivic::chains_to_tensor(&chains);
                if *simplify {
                    t = motivic::simplify(&motivic::collapse_chains(&chains));
                }
                emit(json, json!(t), || t.to_string());
            }
            (None, Some(s)) => {
                let e: UElement = s.parse()?;
                let t = if *tilde {
                    e.delta_tilde()
                } else if *prime {
                    e.delta_prime()
                } else {
                    e.coaction()
                };
                emit(json, json!(t), || t.to_string());
            }
            _ => bail!("coaction needs exactly one of --symbol or --u"),
        },
        Cmd::Basis { degree, level, sigma_invariant } => {
            if *sigma_invariant {
                if *level != 4 {
                    bail!("the sigma-invariant basis is defined at level 4");
                }
                let b = hopf::sigma_invariant_basis(*degree);
                let v: Vec<Value> = b.iter().map(|(m, e)| json!({ "monomial": m.to_string(), "eps": e })).collect();
                emit(json, json!(v), || b.iter().map(|(m, e)| format!("{m} (x) {e}")).collect::<Vec<_>>().join("\n"));
            } else {
                let b = hopf::basis_enum(*degree, *level)?;
                let v: Vec<String> = b.iter().map(|m| m.to_string()).collect();
                emit(json, json!(v), || v.join("\n"));
            }
        }
        Cmd::Dims { max } => {
            let series = hopf::dim_series(*max, DimSeries::SigmaInvariant4);
            let counts: Vec<usize> = (0..=*max).map(|k| hopf::sigma_invariant_basis(k).len()).collect();
            let classical = hopf::dim_series(*max, DimSeries::ClassicalConj);
            let v = json!({
                "sigma_invariant_4": series,
                "enumerated": counts,
                "classical_conjectural": classical,
            });
            emit(json, v, || {
                format!(
                    "k  2^k-series  enumerated  1/(1-t^2-t^3) [conjectural, display only]\n{}",
                    (0..=*max as usize)
                        .map(|k| format!("{k:<2} {:<11} {:<11} {}", series[k], counts[k], classical[k]))
                        .collect::<Vec<_>>()
                        .join("\n")
                )
            });
        }
        Cmd::ClosedForm { k } => {
            let cf = depth_one::closed_form(*k)?;
            let value = cf.value()?;
            emit(json, json!({ "k": k, "expression": cf.to_string(), "value": value }), || {
                format!("zf2({k}; w) = {cf}\n          = {value:.15}")
            });
        }
        Cmd::Check { suite, max } => {
            let suite: Suite = suite.parse()?;
            let out = checks::run_suite(suite, *max);
            let (passed, total) = checks::summary(&out);
            emit(json, json!({ "passed": passed, "total": total, "checks": out }), || {
                let mut lines: Vec<String> = out
                    .iter()
                    .map(|o| format!("{} [{}] {}  {}", if o.passed { "PASS" } else { "FAIL" }, o.suite, o.name, o.detail))
                    .collect();
                lines.push(format!("{passed}/{total} checks passed"));
                lines.join("\n")
            });
            if passed != total {
                for o in out.iter().filter(|o| !o.passed) {
                    eprintln!("failed: [{}] {}", o.suite, o.name);
                }
                return Ok(false);
            }
        }
    }
    Ok(true)
}
