use crate::error::Result;
use crate::volume::BinaryMask;

/// Dice similarity coefficient `2|A ∩ B| / (|A| + |B|)`; two empty masks
/// score 1 (both raters agree nothing is there).
pub fn dice(a: &BinaryMask, b: &BinaryMask) -> Result<f64> {
    dice_with_empty(a, b, 1.0)
}

/// Like [`dice`], with an explicit score for the empty/empty case.
pub fn dice_with_empty(a: &BinaryMask, b: &BinaryMask, both_empty: f64) -> Result<f64> {
    a.ensure_same_grid(b, "dice")?;
    let (mut na, mut nb, mut both) = (0usize, 0usize, 0usize);
    for (&x, &y) in a.data().iter().zip(b.data()) {
        na += x as usize;
        nb += y as usize;
        both += (x && y) as usize;
    }
    if na + nb == 0 {
        return Ok(both_empty);
    }
    Ok(2.0 * both as f64 / (na + nb) as f64)
}
