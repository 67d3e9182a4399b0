//! Agreement statistics for cavity segmentations.

mod dice;
mod mann_whitney;
mod sba;
mod summary;

pub use dice::{dice, dice_with_empty};
pub use mann_whitney::{
    bonferroni, mann_whitney_one_tailed, mann_whitney_with, PValueMethod, RankTest, TestResult,
    EXACT_LIMIT,
};
pub use sba::{leave_one_out_consensus, sba_consensus, RaterSet};
pub use summary::{median_iqr, Summary};
