//! The backward-fraction bound at a displacement-minimizing basepoint.

use super::BuildError;
use crate::action::CubeAction;
use crate::complex::{Wall, V};

/// For every visible wall, counts the letters carried across it. At a
/// displacement-minimizing basepoint of an inversion-free action no wall may
/// be crossed by more than half the letters; returns the violations (empty
/// means the bound holds, vacuously so when nothing is visible).
pub fn check_backward_bound(action: &CubeAction, x: V) -> Result<Vec<(Wall, usize)>, BuildError> {
    let vis = action.visible(x)?;
    let size = action.alphabet.size();
    let mut images = Vec::new();
    for l in action.alphabet.letters() {
        images.push(
            action
                .apply_letter(l, x)
                .ok_or(crate::action::ActionError::OutOfWindow { position: 1 })?,
        );
    }
    let mut violations = Vec::new();
    for &h in &vis.all {
        let backward = images
            .iter()
            .filter(|&&sx| action.complex.separates(h, x, sx))
            .count();
        if 2 * backward > size {
            violations.push((h, backward));
        }
    }
    Ok(violations)
}
