//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 some training trials collapsed.

mod format;
mod train;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cpe::{derive_generator, make_loss, LossFamily};
use crate::divergence::{builtin_generator, f_divergence, jensen_f, renyi_divergence, DivergenceSpec};
use crate::equilibrium::{run_suite, Suite, SuiteConfig};
use crate::error::{Error, Result};
use crate::nn::gradcheck::toy_gradient_survey;
use crate::prob::pmf::read_pmf;

pub use format::sig12;
pub use train::{RunManifest, MANIFEST_FORMAT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COLLAPSE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lagan", version, about = "Divergence identities, CPE loss derivation and toy GAN training")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the equilibrium identities on random distribution pairs.
    Verify(VerifyArgs),
    /// Evaluate a divergence between two PMF files.
    Divergence(DivergenceArgs),
    /// Derive the generating function induced by a symmetric loss.
    Derive(DeriveArgs),
    /// Train on the planar ring, one trial per seed.
    Train(train::TrainArgs),
    /// Compare analytic network gradients with central differences.
    GradCheck(GradCheckArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// all, theorem1, lemmas, props or divergence-zoo.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Random pairs per family and support size.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    base_seed: u64,
    /// Overrides every check's relative tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// JSON-lines report; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DivergenceArgs {
    /// kl, jsd, chi2, ulogu, vajda:k, arimoto:a, hellinger:a or renyi:a.
    family: String,
    a: PathBuf,
    b: PathBuf,
    /// Also print the Jensen-f value.
    #[arg(long)]
    jensen: bool,
}

#[derive(Debug, Args)]
struct DeriveArgs {
    /// vanilla, alpha:a or slk:k.
    loss: String,
    /// Magnitude of the scale constant a.
    #[arg(long)]
    a: Option<f64>,
}

#[derive(Debug, Args)]
struct GradCheckArgs {
    #[arg(long, default_value_t = 10)]
    nets: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest accepted relative error.
    #[arg(long, default_value_t = 1e-5)]
    threshold: f64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Divergence(a) => divergence(a),
        Command::Derive(a) => derive(a),
        Command::Train(a) => train::run(a, &argv),
        Command::GradCheck(a) => grad_check(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let suite: Suite = args.suite.parse()?;
    if let Some(t) = args.tol {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter(format!("--tol must be > 0, got {t}")));
        }
    }
    let config = SuiteConfig {
        seeds: args.seeds,
        base_seed: args.base_seed,
        tolerance: args.tol,
    };
    let records = run_suite(suite, config)?;
    let mut lines = String::new();
    for r in &records {
        lines.push_str(&serde_json::to_string(r)?);
        lines.push('\n');
    }
    match &args.out {
        Some(path) => std::fs::write(path, &lines)?,
        None => std::io::stdout().write_all(lines.as_bytes())?,
    }
    let failed: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        eprintln!(
            "FAIL {} family={} parameter={} support={} seed={} lhs={} rhs={} residual={}",
            r.check,
            r.family,
            r.parameter.map_or("-".into(), sig12),
            r.support,
            r.seed,
            r.lhs.map_or("-".into(), sig12),
            r.rhs.map_or("-".into(), sig12),
            r.residual.map_or("-".into(), sig12),
        );
    }
    eprintln!("{suite}: {} checks, {} failed", records.len(), failed.len());
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_FAILED })
}

fn divergence(args: DivergenceArgs) -> Result<i32> {
    let spec: DivergenceSpec = args.family.parse()?;
    let a = read_pmf(&args.a)?;
    let b = read_pmf(&args.b)?;
    for (path, read) in [(&args.a, &a), (&args.b, &b)] {
        if read.sum_deviates() {
            eprintln!("warning: {} sums to {}, renormalized", path.display(), sig12(read.raw_sum));
        }
    }
    let (p, q) = (&a.distribution, &b.distribution);
    p.check_same_support(q)?;
    match spec {
        DivergenceSpec::F(family) => {
            let f = builtin_generator(family)?;
            println!("{}", sig12(f_divergence(&f, p, q)?));
            if args.jensen {
                println!("jensen {}", sig12(jensen_f(&f, p, q)?));
            }
        }
        DivergenceSpec::Renyi { alpha } => {
            if args.jensen {
                return Err(Error::InvalidParameter("--jensen needs an f-divergence family, not renyi".into()));
            }
            println!("{}", sig12(renyi_divergence(alpha, p, q)?));
        }
    }
    Ok(EXIT_OK)
}

fn derive(args: DeriveArgs) -> Result<i32> {
    let family: LossFamily = args.loss.parse()?;
    let loss = make_loss(family)?;
    let derived = match derive_generator(&loss, args.a) {
        Ok(d) => d,
        Err(e @ (Error::NotConvex(_) | Error::AsymmetricLoss { .. })) => {
            eprintln!("error: {e}");
            return Ok(EXIT_FAILED);
        }
        Err(e) => return Err(e),
    };
    println!("loss       {family}");
    println!("a          {}", sig12(derived.a));
    println!("b          {}", sig12(derived.b));
    println!("curvature  {}", derived.curvature);
    for u in [0.0, 0.5, 1.0, 1.5, 2.0] {
        println!("{:<11}{}", format!("f({u})"), sig12(derived.generator.eval(u)));
    }
    Ok(EXIT_OK)
}

fn grad_check(args: GradCheckArgs) -> Result<i32> {
    if args.nets == 0 {
        return Err(Error::InvalidParameter("--nets must be >= 1".into()));
    }
    let survey = toy_gradient_survey(args.nets, args.seed)?;
    let mut worst: f64 = 0.0;
    for (i, (g, logit)) in survey.iter().enumerate() {
        println!(
            "net {i:>3}  params {:>4}  skipped {}  param_err {}  input_err {}  logit_input_err {}",
            g.params_checked,
            g.skipped,
            sig12(g.max_param_error),
            sig12(g.max_input_error),
            sig12(*logit)
        );
        worst = worst.max(g.max_error()).max(*logit);
    }
    let pass = worst <= args.threshold;
    println!("max relative error {} ({})", sig12(worst), if pass { "pass" } else { "FAIL" });
    Ok(if pass { EXIT_OK } else { EXIT_FAILED })
}
