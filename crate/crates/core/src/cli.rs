//! Command-line surface. `run` is the whole program minus process exit, so
//! tests can drive it in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::exec::Exec;
use crate::lattice::RootVector;
use crate::parabolic::{
    decompose_over_pi, dot_parabolic_from_p, extend_zeta, phi_pi, synthesize_functional,
    verify_equal, Functional,
};
use crate::rootsys::checks::{Counterexample, Verdict};
use crate::rootsys::render::{tables_csv, tables_json, tables_tex};
use crate::rootsys::{classify, enumerate_window, is_root, AffineFamily, AlgebraParams};
use crate::shadow::{check_p, derive_p, hypothesis_main2, validate, ShadowConfig};
use crate::suite::{verify_all, RunReport, DEFAULT_SEED};

/// Exit status for a run with no failures.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check fails or the input is not in the expected set.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for usage errors and unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "superroots",
    version,
    about = "Exact root combinatorics for twisted affine Lie superalgebras",
    after_help = "CSV columns:\n  roots:  eps,del,dc,class,parity,placement (eps/del are ';'-separated)\n  tables: table,pattern,dot,mod,res (res is ';'-separated)\n\nExit status: 0 no failures, 1 failures, 2 usage or input error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Tex,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// One of a-even-2, a-odd-2, a-4, d-2
    #[arg(long, value_parser = parse_family)]
    pub family: AffineFamily,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write the primary output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate roots with |dc| <= mmax
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2)]
        mmax: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify one root given as JSON {"eps":[..],"del":[..],"dc":n}
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        root: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit the root tables
    Tables {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the full check battery
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 8)]
        mmax: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the validity rules of a shadow configuration
    ShadowValidate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 8)]
        mmax: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Derive the dot set of P from a configuration and check it
    ShadowDeriveP {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 8)]
        mmax: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Synthesize functionals for the dot-parabolic sets of a configuration
    ParabolicSynth {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 8)]
        mmax: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compute the generating sets for a functional
    PhiPi {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        functional: PathBuf,
        #[arg(long, default_value_t = 8)]
        mmax: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write a positive generator as a sum of indecomposable ones
    Decompose {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        functional: PathBuf,
        #[arg(long)]
        root: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print family tokens, TeX names and parameter constraints
    ListFamilies {
        #[command(flatten)]
        out: OutArgs,
    },
}

fn parse_family(s: &str) -> Result<AffineFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Distinguishes bad input from a completed run with failures.
enum Outcome {
    Done { text: String, passed: bool },
    Usage(String),
}

fn usage(e: impl std::fmt::Display) -> Outcome {
    Outcome::Usage(e.to_string())
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn params_of(a: &ParamArgs) -> Result<AlgebraParams, Outcome> {
    AlgebraParams::new(a.family, a.k, a.l).map_err(usage)
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_root(p: &AlgebraParams, text: &str) -> Result<RootVector, Outcome> {
    let v: RootVector =
        serde_json::from_str(text).map_err(|e| usage(format!("parse error in --root: {e}")))?;
    p.check_dims(&v).map_err(usage)?;
    Ok(v)
}

fn load_config(p: &AlgebraParams, path: &Path) -> Result<ShadowConfig, Outcome> {
    let text = read(path)?;
    ShadowConfig::from_json(*p, &text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_functional(p: &AlgebraParams, path: &Path) -> Result<Functional, Outcome> {
    let text = read(path)?;
    let z: Functional = serde_json::from_str(&text)
        .map_err(|e| usage(format!("parse error in {}: {e}", path.display())))?;
    if z.eps.len() != p.k || z.del.len() != p.l {
        return Err(usage(Error::AmbientMismatch {
            expected_k: p.k,
            expected_l: p.l,
            found_k: z.eps.len(),
            found_l: z.del.len(),
        }));
    }
    Ok(z)
}

fn report_of(suite: String, verdicts: Vec<Verdict>) -> RunReport {
    let mut r = RunReport::new(suite);
    for v in verdicts {
        r.record(v);
    }
    r
}

fn roots_csv(p: &AlgebraParams, roots: &[RootVector]) -> String {
    let mut out = String::from("eps,del,dc,class,parity,placement\n");
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(";");
    for v in roots {
        let (class, parity, place) = match classify(p, v) {
            Ok(info) => (
                json_token(&info.class),
                info.parity.map(|x| json_token(&x)).unwrap_or_default(),
                json_token(&info.component),
            ),
            Err(_) => ("zero".into(), String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{class},{parity},{place}\n",
            join(&v.eps),
            join(&v.del),
            v.dc
        ));
    }
    out
}

fn json_token(v: &impl Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn roots_tex(p: &AlgebraParams, mmax: i64, roots: &[RootVector]) -> String {
    let mut out = String::from(
        "\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\begin{document}\n",
    );
    out.push_str(&format!(
        "Roots of ${}$, $k={}$, $\\ell={}$, $|m|\\le {mmax}$ ({} roots).\n\\begin{{itemize}}\n",
        p.family.tex_name(),
        p.k,
        p.l,
        roots.len()
    ));
    for v in roots {
        out.push_str(&format!("\\item ${}$\n", v.to_tex()));
    }
    out.push_str("\\end{itemize}\n\\end{document}\n");
    out
}

fn execute(cmd: &Command) -> Outcome {
    match dispatch(cmd) {
        Ok(o) | Err(o) => o,
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, Outcome> {
    Ok(match cmd {
        Command::Roots {
            params,
            mmax,
            format,
            ..
        } => {
            let p = params_of(params)?;
            if *mmax < 0 {
                return Err(usage("--mmax must be >= 0"));
            }
            let roots = enumerate_window(&p, *mmax);
            let text = match format {
                Format::Json => pretty(&json!({
                    "family": p.family,
                    "k": p.k,
                    "l": p.l,
                    "mmax": mmax,
                    "count": roots.len(),
                    "roots": roots,
                })),
                Format::Csv => roots_csv(&p, &roots),
                Format::Tex => roots_tex(&p, *mmax, &roots),
            };
            Outcome::Done { text, passed: true }
        }
        Command::Classify { params, root, .. } => {
            let p = params_of(params)?;
            let v = parse_root(&p, root)?;
            let member = is_root(&p, &v).map_err(usage)?;
            let (info, error) = match classify(&p, &v) {
                Ok(info) => (Some(info), None),
                Err(e) => (None, Some(e.to_string())),
            };
            Outcome::Done {
                text: pretty(&json!({"root": v, "is_root": member, "info": info, "error": error})),
                passed: error.is_none(),
            }
        }
        Command::Tables { params, format, .. } => {
            let p = params_of(params)?;
            let text = match format {
                Format::Json => pretty(&tables_json(&p)),
                Format::Csv => tables_csv(&p),
                Format::Tex => tables_tex(&p),
            };
            Outcome::Done { text, passed: true }
        }
        Command::Verify {
            params, mmax, seed, ..
        } => {
            let p = params_of(params)?;
            let start = Instant::now();
            let mut r = verify_all(&p, *mmax, *seed, Exec::default());
            r.wall_time = start.elapsed();
            eprintln!(
                "{}: {} checks, {} failures, {:.2?}",
                r.suite,
                r.checks_run,
                r.failures.len(),
                r.wall_time
            );
            Outcome::Done {
                text: pretty(&r),
                passed: r.passed(),
            }
        }
        Command::ShadowValidate {
            params,
            config,
            mmax,
            ..
        } => {
            let p = params_of(params)?;
            let cfg = load_config(&p, config)?;
            let name = format!("shadow validity {p}");
            let rule = match validate(&cfg) {
                Ok(()) => Verdict::pass(name, cfg.states().len()),
                Err(v) => Verdict::fail(
                    name,
                    cfg.states().len(),
                    Counterexample::new(
                        format!("{:?}: {}", v.rule, v.detail.message),
                        v.detail.witnesses,
                    ),
                ),
            };
            let r = report_of(
                format!("shadow-validate {p}"),
                vec![rule, hypothesis_main2(&cfg, *mmax)],
            );
            Outcome::Done {
                text: pretty(&r),
                passed: r.passed(),
            }
        }
        Command::ShadowDeriveP {
            params,
            config,
            mmax,
            ..
        } => {
            let p = params_of(params)?;
            let cfg = load_config(&p, config)?;
            let r = report_of(format!("shadow-derive-p {p}"), vec![check_p(&cfg, *mmax)]);
            Outcome::Done {
                text: pretty(&json!({"p_dot": derive_p(&cfg), "report": r})),
                passed: r.passed(),
            }
        }
        Command::ParabolicSynth {
            params,
            config,
            mmax,
            ..
        } => {
            let p = params_of(params)?;
            let cfg = load_config(&p, config)?;
            let mut r = RunReport::new(format!("parabolic-synth {p}"));
            let mut comps = Vec::new();
            let mut parts = Vec::new();
            for comp in p.components() {
                let name = format!("synthesis {p} component {comp}");
                let outcome = dot_parabolic_from_p(&cfg, comp, *mmax)
                    .and_then(|dp| synthesize_functional(&p, &dp).map(|z| (dp, z)));
                match outcome {
                    Ok((dp, z)) => {
                        r.record(Verdict::pass(name, dp.elements.len()));
                        comps.push(json!({"component": comp, "p_dot": dp.elements, "zeta": z}));
                        parts.push((comp, z));
                    }
                    Err(e) => r.fail(name, Counterexample::new(e.to_string(), vec![])),
                }
            }
            let extended = match parts.as_slice() {
                [(c, z1), rest @ ..] if c.index() == 1 => {
                    let e = extend_zeta(&p, z1, rest.first().map(|(_, z)| z));
                    Some(json!({"zeta": e.zeta, "trivial": e.trivial}))
                }
                _ => None,
            };
            Outcome::Done {
                text: pretty(&json!({"components": comps, "extended": extended, "report": r})),
                passed: r.passed(),
            }
        }
        Command::PhiPi {
            params,
            functional,
            mmax,
            ..
        } => {
            let p = params_of(params)?;
            let z = load_functional(&p, functional)?;
            let pi = phi_pi(&p, &z).map_err(usage)?;
            let r = report_of(format!("phi-pi {p}"), vec![verify_equal(&p, &pi, *mmax)]);
            Outcome::Done {
                text: pretty(&json!({"functional": z, "sets": pi, "report": r})),
                passed: r.passed(),
            }
        }
        Command::Decompose {
            params,
            functional,
            root,
            ..
        } => {
            let p = params_of(params)?;
            let z = load_functional(&p, functional)?;
            let beta = parse_root(&p, root)?;
            let pi = phi_pi(&p, &z).map_err(usage)?;
            match decompose_over_pi(&beta, &pi, &z) {
                Ok(coeffs) => {
                    let terms: Vec<Value> = pi
                        .pi
                        .iter()
                        .zip(&coeffs)
                        .filter(|(_, &c)| c > 0)
                        .map(|(a, c)| json!({"generator": a, "coeff": c}))
                        .collect();
                    Outcome::Done {
                        text: pretty(
                            &json!({"root": beta, "pi": pi.pi, "coeffs": coeffs, "terms": terms}),
                        ),
                        passed: true,
                    }
                }
                Err(e) => Outcome::Done {
                    text: pretty(&json!({"root": beta, "pi": pi.pi, "error": e.to_string()})),
                    passed: false,
                },
            }
        }
        Command::ListFamilies { .. } => {
            let rows: Vec<Value> = AffineFamily::ALL
                .iter()
                .map(|f| json!({"token": f.token(), "tex": f.tex_name(), "constraints": f.constraints()}))
                .collect();
            Outcome::Done {
                text: pretty(&rows),
                passed: true,
            }
        }
    })
}

fn out_path(cmd: &Command) -> Option<&Path> {
    let o = match cmd {
        Command::Roots { out, .. }
        | Command::Classify { out, .. }
        | Command::Tables { out, .. }
        | Command::Verify { out, .. }
        | Command::ShadowValidate { out, .. }
        | Command::ShadowDeriveP { out, .. }
        | Command::ParabolicSynth { out, .. }
        | Command::PhiPi { out, .. }
        | Command::Decompose { out, .. }
        | Command::ListFamilies { out } => out,
    };
    o.out.as_deref()
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Outcome::Usage(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Outcome::Done { text, passed } => {
            let written = match out_path(&cli.command) {
                Some(path) => fs::write(path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
    }
}
