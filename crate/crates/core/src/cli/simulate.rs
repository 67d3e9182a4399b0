use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cli::{
    ensure_dir, report, require_file, volume_stem, EXIT_OK, EXIT_RUNTIME, EXIT_VALIDATION,
};
use crate::error::{Error, Result};
use crate::geometry::VolumeMode;
use crate::io;
use crate::simulation::{
    sample_params, ParamDistributions, ResectionContext, ResectionMetadata, VolumeDistribution,
};
use crate::volume::{Hemisphere, LabelCategoryMap, ResectableOptions};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "CAVITY_SIM_WORKERS";

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Input image; repeat for several subjects.
    #[arg(long = "image")]
    pub images: Vec<PathBuf>,
    /// Parcellation for each image, in the same order.
    #[arg(long = "parcellation")]
    pub parcellations: Vec<PathBuf>,
    /// JSON label map.
    #[arg(long)]
    pub labelmap: Option<PathBuf>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Master seed (required here or in the config file).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Draws per image.
    #[arg(long)]
    pub draws: Option<usize>,
    #[arg(long, value_parser = ["paper", "exact-volume"])]
    pub volume_mode: Option<String>,
    /// Cavity volumes in mm³ to sample from, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "volume_range")]
    pub volumes: Option<Vec<f64>>,
    /// Log-uniform volume range in mm³.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    pub volume_range: Option<Vec<f64>>,
    #[arg(long, value_parser = ["left", "right"])]
    pub hemisphere: Option<String>,
    /// Seed voxels to try before giving up on a draw.
    #[arg(long)]
    pub max_attempts: Option<usize>,
    /// Closing/opening radius for the resectable mask, in voxels.
    #[arg(long)]
    pub smoothing_radius: Option<f64>,
    /// Parallel draws (default: $CAVITY_SIM_WORKERS, else all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Also write each cavity surface as ASCII PLY.
    #[arg(long)]
    pub export_mesh: bool,
    /// JSON file with any of the options above; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// On-disk form of the `simulate` options.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub images: Vec<PathBuf>,
    pub parcellations: Vec<PathBuf>,
    pub labelmap: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub draws: Option<usize>,
    pub workers: Option<usize>,
    pub export_mesh: bool,
    pub smoothing_radius: Option<f64>,
    pub distributions: ParamDistributions,
}

impl SimulateConfig {
    fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.into(),
            line: e.line().max(1),
            message: e.to_string(),
        })
    }

    fn apply(mut self, a: SimulateArgs) -> Result<Self> {
        if !a.images.is_empty() {
            self.images = a.images;
        }
        if !a.parcellations.is_empty() {
            self.parcellations = a.parcellations;
        }
        self.labelmap = a.labelmap.or(self.labelmap);
        self.output_dir = a.output_dir.or(self.output_dir);
        self.seed = a.seed.or(self.seed);
        self.draws = a.draws.or(self.draws);
        self.workers = a.workers.or(self.workers);
        self.export_mesh |= a.export_mesh;
        self.smoothing_radius = a.smoothing_radius.or(self.smoothing_radius);
        let d = &mut self.distributions;
        if let Some(m) = a.volume_mode {
            d.volume_mode = m.parse::<VolumeMode>()?;
        }
        if let Some(volumes) = a.volumes {
            d.volume = VolumeDistribution::Samples { volumes };
        }
        if let Some(r) = a.volume_range {
            d.volume = VolumeDistribution::LogUniform {
                min: r[0],
                max: r[1],
            };
        }
        if let Some(h) = a.hemisphere {
            d.hemisphere = Some(if h == "left" {
                Hemisphere::Left
            } else {
                Hemisphere::Right
            });
        }
        if let Some(n) = a.max_attempts {
            d.max_attempts = n;
        }
        Ok(self)
    }
}

/// Independent generator for one draw, keyed by the master seed, the image
/// stem and the draw index.
pub fn draw_rng(seed: u64, stem: &str, draw: usize) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((stem.len() as u64).to_le_bytes());
    h.update(stem.as_bytes());
    h.update((draw as u64).to_le_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

#[derive(Debug, Serialize)]
struct InputRecord {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Outputs {
    image: String,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    mesh: Option<String>,
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    master_seed: u64,
    draw: usize,
    image: &'a InputRecord,
    parcellation: &'a InputRecord,
    labelmap: &'a InputRecord,
    smoothing_radius: f64,
    outputs: Outputs,
    #[serde(flatten)]
    metadata: &'a ResectionMetadata,
}

struct Job {
    image: PathBuf,
    parcellation: PathBuf,
    stem: String,
}

struct Plan {
    jobs: Vec<Job>,
    labelmap: PathBuf,
    output_dir: PathBuf,
    seed: u64,
    draws: usize,
    workers: usize,
    export_mesh: bool,
    options: ResectableOptions,
    dists: ParamDistributions,
}

fn plan(args: SimulateArgs) -> Result<Plan> {
    let base = match &args.config {
        Some(p) => SimulateConfig::read(p)?,
        None => SimulateConfig::default(),
    };
    let c = base.apply(args)?;
    let seed = c.seed.ok_or_else(|| {
        Error::Config("--seed is required; simulation never picks a seed on its own".into())
    })?;
    if c.images.is_empty() {
        return Err(Error::Config("at least one --image is required".into()));
    }
    if c.images.len() != c.parcellations.len() {
        return Err(Error::Config(format!(
            "{} images but {} parcellations; give one --parcellation per --image",
            c.images.len(),
            c.parcellations.len()
        )));
    }
    let labelmap = c
        .labelmap
        .ok_or_else(|| Error::Config("--labelmap is required".into()))?;
    let output_dir = c
        .output_dir
        .ok_or_else(|| Error::Config("--output-dir is required".into()))?;
    let draws = c.draws.unwrap_or(1);
    if draws == 0 {
        return Err(Error::Config("--draws must be >= 1".into()));
    }
    let workers = match c.workers {
        Some(w) => w,
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{WORKERS_ENV}={v:?} is not a worker count")))?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if workers == 0 {
        return Err(Error::Config("--workers must be >= 1".into()));
    }
    let mut options = ResectableOptions::default();
    if let Some(r) = c.smoothing_radius {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::Config(format!("smoothing radius {r} must be >= 0")));
        }
        options.smoothing_radius = r;
    }
    c.distributions.validate()?;

    require_file(&labelmap, "label map")?;
    let mut stems = BTreeSet::new();
    let mut jobs = Vec::new();
    for (image, parcellation) in c.images.into_iter().zip(c.parcellations) {
        require_file(&image, "image")?;
        require_file(&parcellation, "parcellation")?;
        let stem = volume_stem(&image);
        if !stems.insert(stem.clone()) {
            return Err(Error::Config(format!(
                "two images share the name {stem:?}; output files would collide"
            )));
        }
        jobs.push(Job {
            image,
            parcellation,
            stem,
        });
    }
    Ok(Plan {
        jobs,
        labelmap,
        output_dir,
        seed,
        draws,
        workers,
        export_mesh: c.export_mesh,
        options,
        dists: c.distributions,
    })
}

fn record(path: &Path) -> Result<InputRecord> {
    Ok(InputRecord {
        path: path.display().to_string(),
        sha256: io::sha256_file(path)?,
    })
}

pub(super) fn run(args: SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let plan = plan(args)?;
    let map: LabelCategoryMap = io::read_labelmap(&plan.labelmap)?;
    let labelmap_record = record(&plan.labelmap)?;
    ensure_dir(&plan.output_dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))?;

    let mut failures: Vec<(String, Error)> = Vec::new();
    let mut written = 0usize;
    for job in &plan.jobs {
        let (image, header) = io::read_scalar(&job.image)?;
        let (parcellation, _) = io::read_labels(&job.parcellation)?;
        let ctx = ResectionContext::new(&image, &parcellation, &map, plan.options)
            .map_err(|e| with_files(e, job))?;
        // Fail once per image for problems shared by every draw.
        ctx.csf_stats()?;
        let image_record = record(&job.image)?;
        let parc_record = record(&job.parcellation)?;

        let results: Vec<(String, Result<()>)> = pool.install(|| {
            (0..plan.draws)
                .into_par_iter()
                .map(|draw| {
                    let stem = format!("{}_draw{draw:03}", job.stem);
                    let result = (|| {
                        let mut rng = draw_rng(plan.seed, &job.stem, draw);
                        let params = sample_params(&plan.dists, &mut rng)?;
                        let sim = ctx.simulate(&params, &mut rng)?;
                        let outputs = Outputs {
                            image: format!("{stem}_resected.nii.gz"),
                            label: format!("{stem}_label.nii.gz"),
                            mesh: plan.export_mesh.then(|| format!("{stem}_mesh.ply")),
                        };
                        let dir = &plan.output_dir;
                        io::write_scalar(dir.join(&outputs.image), &sim.image, Some(&header))?;
                        io::write_mask(dir.join(&outputs.label), &sim.label, Some(&header))?;
                        if let Some(mesh) = &outputs.mesh {
                            io::write_ply(dir.join(mesh), &sim.surface)?;
                        }
                        let sidecar = Sidecar {
                            master_seed: plan.seed,
                            draw,
                            image: &image_record,
                            parcellation: &parc_record,
                            labelmap: &labelmap_record,
                            smoothing_radius: plan.options.smoothing_radius,
                            outputs,
                            metadata: &sim.metadata,
                        };
                        io::write_json(dir.join(format!("{stem}_meta.json")), &sidecar)
                    })();
                    (stem, result)
                })
                .collect()
        });
        for (stem, r) in results {
            match r {
                Ok(()) => written += 1,
                Err(e) => failures.push((stem, e)),
            }
        }
    }

    report(
        out,
        format_args!(
            "{written} of {} draws written to {}",
            plan.jobs.len() * plan.draws,
            plan.output_dir.display()
        ),
    )?;
    if failures.is_empty() {
        return Ok(EXIT_OK);
    }
    for (stem, e) in &failures {
        eprintln!("draw {stem} failed: {e}");
    }
    Ok(if failures.iter().all(|(_, e)| e.is_validation()) {
        EXIT_VALIDATION
    } else {
        EXIT_RUNTIME
    })
}

fn with_files(e: Error, job: &Job) -> Error {
    match e {
        Error::GridMismatch(m) => Error::GridMismatch(format!(
            "{} vs {}: {m}",
            job.image.display(),
            job.parcellation.display()
        )),
        other => other,
    }
}
