use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{NoiseParams, Point3, VolumeMode};
use crate::volume::Hemisphere;

/// Every stochastic knob of one simulated resection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResectionParams {
    /// Geodesic sphere frequency.
    pub frequency: u32,
    pub noise: NoiseParams,
    /// Semi-axis ratio, `>= 1`.
    pub lambda: f64,
    /// Volume parameter in mm³.
    pub volume: f64,
    pub volume_mode: VolumeMode,
    /// Rotation angles about x, y and z, in radians.
    pub angles: Point3,
    pub hemisphere: Hemisphere,
    /// Alpha blur standard deviations in mm.
    pub alpha_sigmas: Point3,
    /// Number of seed voxels to try before giving up on an empty label.
    pub max_attempts: usize,
}

impl ResectionParams {
    pub fn validate(&self) -> Result<()> {
        if self.frequency == 0 {
            return Err(Error::InvalidParameter("frequency must be >= 1".into()));
        }
        self.noise.validate()?;
        if !(self.lambda >= 1.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda {} < 1",
                self.lambda
            )));
        }
        if !(self.volume > 0.0 && self.volume.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "volume {} must be positive",
                self.volume
            )));
        }
        if self
            .alpha_sigmas
            .iter()
            .any(|s| !(*s > 0.0 && s.is_finite()))
        {
            return Err(Error::InvalidParameter(format!(
                "alpha sigmas {:?} must be positive",
                self.alpha_sigmas
            )));
        }
        if self.angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("angles must be finite".into()));
        }
        if self.max_attempts == 0 {
            return Err(Error::InvalidParameter("max_attempts must be >= 1".into()));
        }
        Ok(())
    }
}

/// Where the volume parameter comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum VolumeDistribution {
    /// Uniform choice among observed cavity volumes (mm³).
    Samples { volumes: Vec<f64> },
    /// `exp(U(ln min, ln max))`, in mm³.
    LogUniform { min: f64, max: f64 },
}

impl Default for VolumeDistribution {
    fn default() -> Self {
        VolumeDistribution::LogUniform {
            min: 1_000.0,
            max: 100_000.0,
        }
    }
}

/// Closed interval `[low, high]` sampled uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub low: f64,
    pub high: f64,
}

impl Range {
    pub const fn new(low: f64, high: f64) -> Self {
        Self { low, high }
    }

    fn validate(&self, what: &str) -> Result<()> {
        if self.low.is_finite() && self.high.is_finite() && self.low <= self.high {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "{what} range [{}, {}] is empty or not finite",
                self.low, self.high
            )))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.low == self.high {
            self.low
        } else {
            rng.random_range(self.low..self.high)
        }
    }
}

/// Distributions from which [`ResectionParams`] are drawn. Defaults follow
/// the published configuration: f = 16, four octaves, persistence 0.5,
/// scale 3, shift ~ U(0, 1000), λ ~ U(1, 2), σ ~ U(0.5, 1) mm, angles
/// ~ U(0, 2π) and an even choice of hemisphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamDistributions {
    pub frequency: u32,
    pub octaves: u32,
    pub persistence: f64,
    pub scale: f64,
    pub shift: Range,
    pub lambda: Range,
    pub alpha_sigma: Range,
    pub angle: Range,
    /// Restricts the hemisphere; `None` picks either with equal probability.
    pub hemisphere: Option<Hemisphere>,
    pub volume: VolumeDistribution,
    pub volume_mode: VolumeMode,
    pub max_attempts: usize,
}

impl Default for ParamDistributions {
    fn default() -> Self {
        Self {
            frequency: 16,
            octaves: 4,
            persistence: 0.5,
            scale: 3.0,
            shift: Range::new(0.0, 1000.0),
            lambda: Range::new(1.0, 2.0),
            alpha_sigma: Range::new(0.5, 1.0),
            angle: Range::new(0.0, TAU),
            hemisphere: None,
            volume: VolumeDistribution::default(),
            volume_mode: VolumeMode::Paper,
            max_attempts: 10,
        }
    }
}

impl ParamDistributions {
    pub fn validate(&self) -> Result<()> {
        self.shift.validate("shift")?;
        self.lambda.validate("lambda")?;
        self.alpha_sigma.validate("alpha sigma")?;
        self.angle.validate("angle")?;
        if self.lambda.low < 1.0 {
            return Err(Error::Config("lambda range must start at >= 1".into()));
        }
        if self.alpha_sigma.low <= 0.0 {
            return Err(Error::Config("alpha sigma range must be positive".into()));
        }
        match &self.volume {
            VolumeDistribution::Samples { volumes } => {
                if volumes.is_empty() {
                    return Err(Error::Config("explicit volume list is empty".into()));
                }
                if let Some(v) = volumes.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
                    return Err(Error::Config(format!("volume sample {v} is not positive")));
                }
            }
            VolumeDistribution::LogUniform { min, max } => {
                if !(*min > 0.0 && min <= max && max.is_finite()) {
                    return Err(Error::Config(format!(
                        "log-uniform volume range [{min}, {max}] is invalid"
                    )));
                }
            }
        }
        if self.max_attempts == 0 {
            return Err(Error::Config("max_attempts must be >= 1".into()));
        }
        Ok(())
    }
}

/// Draws one parameter set. The draw order is fixed, so a given RNG state
/// always yields the same parameters.
pub fn sample_params<R: Rng + ?Sized>(
    dists: &ParamDistributions,
    rng: &mut R,
) -> Result<ResectionParams> {
    dists.validate()?;
    let hemisphere = match dists.hemisphere {
        Some(h) => h,
        None if rng.random_bool(0.5) => Hemisphere::Left,
        None => Hemisphere::Right,
    };
    let volume = match &dists.volume {
        VolumeDistribution::Samples { volumes } => volumes[rng.random_range(0..volumes.len())],
        VolumeDistribution::LogUniform { min, max } => {
            Range::new(min.ln(), max.ln()).sample(rng).exp()
        }
    };
    let lambda = dists.lambda.sample(rng);
    let angles = [(); 3].map(|_| dists.angle.sample(rng));
    let shift = [(); 3].map(|_| dists.shift.sample(rng));
    let alpha_sigmas = [(); 3].map(|_| dists.alpha_sigma.sample(rng));
    let params = ResectionParams {
        frequency: dists.frequency,
        noise: NoiseParams {
            octaves: dists.octaves,
            persistence: dists.persistence,
            scale: dists.scale,
            shift,
        },
        lambda,
        volume,
        volume_mode: dists.volume_mode,
        angles,
        hemisphere,
        alpha_sigmas,
        max_attempts: dists.max_attempts,
    };
    params.validate()?;
    Ok(params)
}
