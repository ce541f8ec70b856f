use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qtheta::dsl::{self, Env, EvalOptions};
use qtheta::error::{Error, Result};
use qtheta::harness::{self, ReportFormat, RunConfig, SampleStrategy, VerificationReport};
use qtheta::numeric;
use qtheta::params::{Precision, from_real_nome, make_param};
use qtheta::qtrig::{EvalForm, QFunc};

#[derive(Parser)]
#[command(
    name = "qtheta",
    version,
    about = "Theta functions, Gosper q-trigonometry and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    /// Gosper functions in product form, ccsq/ssnq as theta quotients.
    Default,
    Product,
    Theta,
}

impl From<Form> for EvalOptions {
    fn from(f: Form) -> Self {
        match f {
            Form::Default => EvalOptions::default(),
            Form::Product => EvalOptions::uniform(EvalForm::ProductForm),
            Form::Theta => EvalOptions::uniform(EvalForm::ThetaForm),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Func {
    Sin,
    Cos,
    Ccs,
    Ssn,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one expression.
    Eval {
        #[arg(long)]
        expr: String,
        /// Half-period ratio, e.g. 0.3+1.1i.
        #[arg(long, conflicts_with = "q", required_unless_present = "q")]
        tau: Option<String>,
        /// Real nome in (0, 1).
        #[arg(long)]
        q: Option<String>,
        /// Comma-separated bindings, e.g. x=0.3,y=1+0.2i.
        #[arg(long, default_value = "")]
        env: String,
        #[arg(long, default_value_t = 128)]
        bits: u32,
        #[arg(long, value_enum, default_value_t = Form::Default)]
        form: Form,
    },
    /// Check identity corpora at random points.
    Verify {
        /// Extra .qid files, checked after the built-in corpus.
        #[arg(long)]
        corpus: Vec<PathBuf>,
        /// Check only the given files.
        #[arg(long)]
        no_builtin: bool,
        #[arg(long, default_value_t = 128)]
        bits: u32,
        /// Maximum relative residual; defaults to 2^(16 - bits).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Repeatable; defaults to 1.2i and 0.3+1.1i.
        #[arg(long)]
        tau: Vec<String>,
        #[arg(long, value_enum, default_value_t = Form::Default)]
        form: Form,
        /// Leave out the exact series checks.
        #[arg(long)]
        skip_exact: bool,
        /// Record wall-clock times (output is then not reproducible).
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact coefficient checks on truncated series.
    Exact {
        /// Override an order, e.g. riemann_L=60.
        #[arg(long = "order", value_parser = parse_order)]
        orders: Vec<(String, i64)>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance of the q-functions from sin and cos as q grows toward 1.
    Limits {
        #[arg(long = "q", default_values = ["0.5", "0.8", "0.9"])]
        qs: Vec<String>,
        #[arg(long, default_value = "0.37")]
        angle: String,
        #[arg(long = "func", value_enum, default_values = ["sin", "cos"])]
        funcs: Vec<Func>,
        #[arg(long, default_value_t = 128)]
        bits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Inspect the identity corpus.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Names, variables and tags.
    List {
        #[arg(long)]
        corpus: Vec<PathBuf>,
    },
    /// Print declarations in canonical form.
    Show {
        names: Vec<String>,
        #[arg(long)]
        corpus: Vec<PathBuf>,
    },
}

fn parse_order(s: &str) -> std::result::Result<(String, i64), String> {
    let (name, n) = s.split_once('=').ok_or("expected name=N")?;
    let n = n.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((name.trim().to_string(), n))
}

fn load(paths: &[PathBuf], builtin: bool) -> Result<Vec<dsl::IdentityDecl>> {
    let mut texts = Vec::new();
    for p in paths {
        texts.push(fs::read_to_string(p).map_err(|e| Error::Domain(format!("{}: {e}", p.display())))?);
    }
    let mut decls = if builtin { dsl::load_corpus(&texts)? } else { Vec::new() };
    if !builtin {
        for t in &texts {
            decls.extend(dsl::parse(t)?);
        }
    }
    Ok(decls)
}

fn write_out(out: &Option<PathBuf>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let mut file = io::BufWriter::new(fs::File::create(path)?);
            f(&mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)?;
        }
    }
    Ok(())
}

fn emit(r: &VerificationReport, format: Format, out: &Option<PathBuf>) -> Result<()> {
    write_out(out, |w| {
        let mut buf = Vec::new();
        harness::emit_report(r, format.into(), &mut buf)?;
        w.write_all(&buf)?;
        Ok(())
    })
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn print_text(s: &str) -> Result<()> {
    match io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn verdict(pass: bool) -> ExitCode {
    if pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Eval {
            expr,
            tau,
            q,
            env,
            bits,
            form,
        } => {
            let prec = Precision::new(bits)?;
            let wb = prec.work_bits();
            let p = match (tau, q) {
                (Some(t), _) => make_param(&numeric::complex(wb, &t)?, &prec)?,
                (None, Some(q)) => from_real_nome(&numeric::real(wb, &q)?, &prec)?,
                (None, None) => unreachable!("clap requires one"),
            };
            let mut vars = Env::new();
            for item in env.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| Error::Domain(format!("bad binding `{item}`, expected name=value")))?;
                vars.insert(k.trim().to_string(), numeric::complex(wb, v.trim())?);
            }
            let e = dsl::parse_expr(&expr)?;
            let v = dsl::eval_expr(&e, &vars, &p, &prec, &form.into())?;
            let v = rug::Complex::with_val(bits, v);
            println!("{}", numeric::format_complex(&v));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            corpus,
            no_builtin,
            bits,
            tol,
            samples,
            seed,
            tau,
            form,
            skip_exact,
            timing,
            format,
            out,
        } => {
            let decls = load(&corpus, !no_builtin)?;
            let mut cfg = RunConfig::new(bits)?;
            if let Some(t) = tol {
                cfg.tol = t;
            }
            cfg.strategy = SampleStrategy {
                count: samples,
                seed,
                tau_set: if tau.is_empty() {
                    SampleStrategy::default().tau_set
                } else {
                    tau
                },
                ..SampleStrategy::default()
            };
            cfg.eval = form.into();
            cfg.timing = timing;
            let mut report = harness::run_corpus(&decls, &cfg)?;
            if !skip_exact {
                report.exact = harness::run_exact(&BTreeMap::new())?;
            }
            emit(&report, format, &out)?;
            Ok(verdict(report.all_passed()))
        }
        Cmd::Exact { orders, format, out } => {
            let orders: BTreeMap<String, i64> = orders.into_iter().collect();
            let exact = harness::run_exact(&orders)?;
            let cfg = RunConfig::new(128)?;
            let report = VerificationReport {
                meta: cfg.meta(),
                numeric: Vec::new(),
                exact,
            };
            emit(&report, format, &out)?;
            Ok(verdict(report.all_passed()))
        }
        Cmd::Limits {
            qs,
            angle,
            funcs,
            bits,
            format,
        } => {
            let prec = Precision::new(bits)?;
            let mut tables = Vec::new();
            for f in funcs {
                let f = match f {
                    Func::Sin => QFunc::Sin,
                    Func::Cos => QFunc::Cos,
                    Func::Ccs => QFunc::Ccs,
                    Func::Ssn => QFunc::Ssn,
                };
                tables.push(harness::limit_sweep(f, &qs, &angle, &prec, EvalForm::ProductForm)?);
            }
            let mut text = String::new();
            match format {
                Format::Json => text = serde_json::to_string_pretty(&tables)? + "\n",
                Format::Text => {
                    for t in &tables {
                        text += &format!("{}\n", t.label);
                        for r in &t.rows {
                            text += &format!("  q = {:<8} |diff| = {:.6e}\n", r.q, r.deviation.approx);
                        }
                        text += &format!("  strictly decreasing: {}\n", t.strictly_decreasing);
                    }
                }
            }
            print_text(&text)?;
            Ok(verdict(tables.iter().all(|t| t.non_increasing)))
        }
        Cmd::Corpus { cmd } => {
            match cmd {
                CorpusCmd::List { corpus } => {
                    let decls = load(&corpus, true)?;
                    let w = decls.iter().map(|d| d.name.len()).max().unwrap_or(0);
                    let mut text = String::new();
                    for d in &decls {
                        let tags: Vec<&str> = d.tags.iter().map(String::as_str).collect();
                        text += &format!("{:<w$}  [{}]  {}\n", d.name, d.vars.join(", "), tags.join(", "));
                    }
                    print_text(&text)?;
                }
                CorpusCmd::Show { names, corpus } => {
                    let decls = load(&corpus, true)?;
                    let chosen: Vec<_> = decls
                        .into_iter()
                        .filter(|d| names.is_empty() || names.contains(&d.name))
                        .collect();
                    print_text(&dsl::pretty_file(&chosen))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resample() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
