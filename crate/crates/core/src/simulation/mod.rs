//! End-to-end resection synthesis: parameter sampling, cavity placement and
//! CSF blending.

mod csf;
mod params;
mod pipeline;

pub use csf::{blend, estimate_csf_stats, synth_csf_texture, CsfStats};
pub use params::{sample_params, ParamDistributions, Range, ResectionParams, VolumeDistribution};
pub use pipeline::{
    cavity_surface, simulate_resection, ResectionContext, ResectionMetadata, SimulationResult,
};
