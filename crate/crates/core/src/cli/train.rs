use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Args;
use serde::{Deserialize, Serialize};

use super::format::sig12;
use super::{EXIT_COLLAPSE, EXIT_OK};
use crate::error::{Error, Result};
use crate::gan::{sample_generator, train, write_points_csv, TrainConfig, TrainRecord};

pub const MANIFEST_FORMAT: &str = "lagan-run";

#[derive(Debug, Args)]
pub(super) struct TrainArgs {
    /// JSON training configuration.
    config: PathBuf,
    /// Comma-separated seeds; the config's own seed when omitted.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long, default_value = "runs")]
    out: PathBuf,
    /// Generator samples written per trial.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputPaths {
    pub metrics: PathBuf,
    pub generator: PathBuf,
    pub discriminator: PathBuf,
    pub samples: PathBuf,
}

/// Everything needed to rerun one trial. Written before training starts and
/// rewritten with the end time and outcome afterwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub format: String,
    pub command: Vec<String>,
    pub tool_version: String,
    pub seed: u64,
    pub seeds: Vec<u64>,
    pub config: TrainConfig,
    pub started_unix_ms: u64,
    pub finished_unix_ms: Option<u64>,
    pub outputs: OutputPaths,
    pub collapsed: Option<bool>,
    pub steps_completed: Option<usize>,
}

impl RunManifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

fn unix_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

struct Trial {
    manifest: RunManifest,
    manifest_path: PathBuf,
}

fn prepare(args: &TrainArgs, argv: &[OsString], base: &TrainConfig, seeds: &[u64], seed: u64) -> Result<Trial> {
    let file = |stem: &str, ext: &str| args.out.join(format!("{stem}_seed{seed}.{ext}"));
    let manifest = RunManifest {
        format: MANIFEST_FORMAT.into(),
        command: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        seed,
        seeds: seeds.to_vec(),
        config: TrainConfig { seed, ..base.clone() },
        started_unix_ms: unix_ms(),
        finished_unix_ms: None,
        outputs: OutputPaths {
            metrics: file("train", "csv"),
            generator: file("generator", "json"),
            discriminator: file("discriminator", "json"),
            samples: file("samples", "csv"),
        },
        collapsed: None,
        steps_completed: None,
    };
    let manifest_path = file("manifest", "json");
    manifest.save(&manifest_path)?;
    Ok(Trial { manifest, manifest_path })
}

fn finish(trial: &mut Trial, record: &TrainRecord, samples: usize) -> Result<()> {
    let out = &trial.manifest.outputs;
    record.save_csv(&out.metrics)?;
    record.generator.save(&out.generator)?;
    record.discriminator.save(&out.discriminator)?;
    let points = sample_generator(&record.generator, samples, trial.manifest.seed).unwrap_or_default();
    write_points_csv(&points, std::fs::File::create(&out.samples)?)?;
    trial.manifest.finished_unix_ms = Some(unix_ms());
    trial.manifest.collapsed = Some(record.collapsed);
    trial.manifest.steps_completed = Some(record.steps_completed);
    trial.manifest.save(&trial.manifest_path)
}

pub(super) fn run(args: TrainArgs, argv: &[OsString]) -> Result<i32> {
    let base = TrainConfig::load(&args.config)?;
    let seeds = if args.seeds.is_empty() { vec![base.seed] } else { args.seeds.clone() };
    let mut unique = seeds.clone();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != seeds.len() {
        return Err(Error::InvalidParameter("--seeds contains duplicates".into()));
    }
    std::fs::create_dir_all(&args.out)?;
    let mut trials = seeds
        .iter()
        .map(|&s| prepare(&args, argv, &base, &seeds, s))
        .collect::<Result<Vec<_>>>()?;

    let records: Vec<Result<TrainRecord>> = std::thread::scope(|scope| {
        let handles: Vec<_> = trials
            .iter()
            .map(|t| {
                let cfg = t.manifest.config.clone();
                scope.spawn(move || train(cfg))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::InvalidParameter("training thread panicked".into()))))
            .collect()
    });

    let mut collapsed = 0;
    for (trial, record) in trials.iter_mut().zip(records) {
        let record = record?;
        finish(trial, &record, args.samples)?;
        let last = record.final_entry();
        println!(
            "seed {}  steps {}  collapsed {}  hist_jsd {}  mode_coverage {}  -> {}",
            trial.manifest.seed,
            record.steps_completed,
            record.collapsed,
            last.map_or("-".into(), |e| sig12(e.hist_jsd)),
            last.map_or("-".into(), |e| e.mode_coverage.to_string()),
            trial.manifest.outputs.metrics.display()
        );
        collapsed += usize::from(record.collapsed);
    }
    if collapsed > 0 {
        eprintln!("{collapsed} of {} trials collapsed", trials.len());
        Ok(EXIT_COLLAPSE)
    } else {
        Ok(EXIT_OK)
    }
}
