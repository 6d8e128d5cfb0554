//! The five-way split of the alphabet relative to a word and a wall.
//!
//! Given a basepoint `x`, a word `w` and a visible wall `H` with `x` and
//! `wx` on the carrier of `H` in the same halfspace, each letter `s` is
//! classified by where `wsx` lands:
//!
//! * backward — `H` separates `wx` and `wsx`;
//! * forward — same side and strictly off the carrier;
//! * parallel — same side, on the carrier; refined by the translate `wsH`:
//!   visibly parallel when the pullback `(ws)^-1 H` is itself visible,
//!   crossing parallel when `wsH` crosses `H`, disjoint parallel otherwise.

use crate::action::{ActionError, CubeAction, VisibleWalls};
use crate::complex::{Wall, V};
use crate::letters::{Letter, Word};
use crate::median::Crossing;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Result of classifying every letter relative to `(w, H)`.
#[derive(Clone, Debug)]
pub struct PartitionResult {
    pub forward: Vec<Letter>,
    pub backward: Vec<Letter>,
    pub par_visible: Vec<Letter>,
    pub par_crossing: Vec<Letter>,
    pub par_disjoint: Vec<Letter>,
    /// Letters whose translate fixes the wall without being visibly
    /// parallel; they are classified as disjoint parallel and flagged here.
    pub fixed_wall_flags: Vec<Letter>,
}

impl PartitionResult {
    pub fn parallel(&self) -> Vec<Letter> {
        let mut p = self.par_visible.clone();
        p.extend_from_slice(&self.par_crossing);
        p.extend_from_slice(&self.par_disjoint);
        p.sort_unstable();
        p
    }

    pub fn total(&self) -> usize {
        self.forward.len()
            + self.backward.len()
            + self.par_visible.len()
            + self.par_crossing.len()
            + self.par_disjoint.len()
    }
}

/// Classifies the letters of `letters` (usually the whole alphabet) relative
/// to the pair `(w, H)` at basepoint `x`.
pub fn partition(
    action: &CubeAction,
    x: V,
    w: &Word,
    wall: Wall,
    letters: &[Letter],
    visible: &VisibleWalls,
) -> Result<PartitionResult, PartitionError> {
    let cx = &action.complex;
    let wx = action.apply(w, x)?;
    if !cx.on_carrier(wall, x) || !cx.on_carrier(wall, wx) {
        return Err(PartitionError::PreconditionViolated(
            "x and wx must lie on the carrier of the wall".into(),
        ));
    }
    if cx.side(wall, x) != cx.side(wall, wx) {
        return Err(PartitionError::PreconditionViolated(
            "x and wx must lie in the same halfspace".into(),
        ));
    }
    let side = cx.side(wall, wx);
    let mut out = PartitionResult {
        forward: Vec::new(),
        backward: Vec::new(),
        par_visible: Vec::new(),
        par_crossing: Vec::new(),
        par_disjoint: Vec::new(),
        fixed_wall_flags: Vec::new(),
    };
    for &s in letters {
        let ws = w.concat(&Word::one(s));
        let wsx = action.apply(&ws, x)?;
        if cx.side(wall, wsx) != side {
            out.backward.push(s);
            continue;
        }
        if cx.dist_to_carrier(wall, wsx) > 0 {
            out.forward.push(s);
            continue;
        }
        // parallel: refine by the translate
        let pullback = action.translate_wall(&ws.inverse(&action.alphabet), wall)?;
        if visible.contains(&pullback) {
            out.par_visible.push(s);
            continue;
        }
        let img = action.translate_wall(&ws, wall)?;
        match cx.crossing(img, wall) {
            Crossing::Cross => out.par_crossing.push(s),
            Crossing::Parallel => out.par_disjoint.push(s),
            Crossing::Equal => {
                out.par_disjoint.push(s);
                out.fixed_wall_flags.push(s);
            }
        }
    }
    Ok(out)
}

/// Partition over the full alphabet.
pub fn partition_full(
    action: &CubeAction,
    x: V,
    w: &Word,
    wall: Wall,
) -> Result<PartitionResult, PartitionError> {
    let letters: Vec<Letter> = action.alphabet.letters().collect();
    let visible = action.visible(x)?;
    partition(action, x, w, wall, &letters, &visible)
}

/// Cross-validates the visibly-parallel classification of `s`: a parallel
/// letter is visibly parallel exactly when the backward set one step later
/// (at `ws`) is non-empty. Returns `None` when `s` is not parallel.
pub fn crosscheck_visible_parallel(
    action: &CubeAction,
    x: V,
    w: &Word,
    wall: Wall,
    s: Letter,
    letters: &[Letter],
    visible: &VisibleWalls,
) -> Result<Option<bool>, PartitionError> {
    let part = partition(action, x, w, wall, letters, visible)?;
    let is_vis = part.par_visible.contains(&s);
    let is_par = is_vis || part.par_crossing.contains(&s) || part.par_disjoint.contains(&s);
    if !is_par {
        return Ok(None);
    }
    let ws = w.concat(&Word::one(s));
    let deeper = partition(action, x, &ws, wall, letters, visible)?;
    Ok(Some(is_vis == !deeper.backward.is_empty()))
}
