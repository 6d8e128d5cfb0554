//! Exhaustive verification of the progression conditions of a
//! checkpoint-labeled automaton against a bound action.
//!
//! Two path shapes are checked up to a length bound: paths from the start
//! whose interior avoids checkpoints, and paths between checkpoints with
//! checkpoint-free interior. The default bound `|V| + 1` is exact for
//! automata realized from checkpoint trees (their checkpoint-free interiors
//! are tree paths); for general automata longer cycles through interior
//! vertices repeat states, and the bound is a documented cutoff.

use super::Automaton;
use crate::action::{ActionError, CubeAction};
use crate::complex::V;
use crate::letters::Word;
use crate::median::Crossing;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProgressViolation {
    #[error("path {path:?} from start returns the basepoint")]
    Returns { path: Word },
    #[error("path {path:?} to checkpoint {checkpoint}: translated wall fails to separate")]
    NoSeparation { path: Word, checkpoint: u32 },
    #[error("path {path:?} from checkpoint {checkpoint} crosses its wall")]
    CrossesOwnWall { path: Word, checkpoint: u32 },
    #[error("path {path:?} between checkpoints {from} and {to}: wall relation fails")]
    BadWallRelation { path: Word, from: u32, to: u32 },
    #[error("accepted word {path:?}: last-checkpoint witness fails to separate")]
    StaleWitness { path: Word },
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Checks both progression clauses over all qualifying paths of length at
/// most `l_max` (default `|V| + 1` when `None`).
pub fn verify_progressing(
    auto: &Automaton,
    action: &CubeAction,
    x: V,
    l_max: Option<usize>,
) -> Result<(), ProgressViolation> {
    let l_max = l_max.unwrap_or(auto.vertex_count() + 1);
    let cx = &action.complex;

    // shape 1: from the start, interior avoiding checkpoints
    let mut stack: Vec<(u32, Word)> = vec![(auto.start, Word::empty())];
    while let Some((v, w)) = stack.pop() {
        for &(l, t) in &auto.out[v as usize] {
            let mut w2 = w.clone();
            w2.push(l);
            let w2x = action.apply(&w2, x)?;
            if w2x == x {
                return Err(ProgressViolation::Returns { path: w2 });
            }
            if let Some(&h) = auto.checkpoints.get(&t) {
                let th = action.translate_wall(&w2, h)?;
                if !cx.separates(th, x, w2x) {
                    return Err(ProgressViolation::NoSeparation {
                        path: w2,
                        checkpoint: t,
                    });
                }
                continue; // checkpoint ends the shape-1 path
            }
            if w2.len() < l_max {
                stack.push((t, w2));
            }
        }
    }

    // shape 2: from each checkpoint, interior avoiding checkpoints
    for (&c1, &h1) in &auto.checkpoints {
        let side_x = cx.side(h1, x);
        let mut stack: Vec<(u32, Word)> = vec![(c1, Word::empty())];
        while let Some((v, w)) = stack.pop() {
            for &(l, t) in &auto.out[v as usize] {
                let mut w2 = w.clone();
                w2.push(l);
                let w2x = action.apply(&w2, x)?;
                if cx.side(h1, w2x) != side_x {
                    return Err(ProgressViolation::CrossesOwnWall {
                        path: w2,
                        checkpoint: c1,
                    });
                }
                if let Some(&h2) = auto.checkpoints.get(&t) {
                    let th = action.translate_wall(&w2, h2)?;
                    let ok = th == h1
                        || (cx.crossing(th, h1) == Crossing::Parallel && cx.separates(th, x, w2x));
                    if !ok {
                        return Err(ProgressViolation::BadWallRelation {
                            path: w2,
                            from: c1,
                            to: t,
                        });
                    }
                    continue;
                }
                if w2.len() < l_max {
                    stack.push((t, w2));
                }
            }
        }
    }
    Ok(())
}

/// Checks that every accepted word up to the length bound moves the
/// basepoint, and that the translate of the last-met checkpoint wall keeps
/// separating the basepoint from the image.
pub fn verify_accepted_words_move(
    auto: &Automaton,
    action: &CubeAction,
    x: V,
    l_max: usize,
) -> Result<(), ProgressViolation> {
    let cx = &action.complex;
    struct Frame {
        vertex: u32,
        word: Word,
        last_cp: Option<Word>,
        last_wall: Option<crate::complex::Wall>,
    }
    let mut stack = vec![Frame {
        vertex: auto.start,
        word: Word::empty(),
        last_cp: None,
        last_wall: None,
    }];
    while let Some(f) = stack.pop() {
        for &(l, t) in &auto.out[f.vertex as usize] {
            let mut w2 = f.word.clone();
            w2.push(l);
            let w2x = action.apply(&w2, x)?;
            if w2x == x {
                return Err(ProgressViolation::Returns { path: w2 });
            }
            let (cp, wall) = if let Some(&h) = auto.checkpoints.get(&t) {
                (Some(w2.clone()), Some(h))
            } else {
                (f.last_cp.clone(), f.last_wall)
            };
            if let (Some(cw), Some(h)) = (&cp, wall) {
                let th = action.translate_wall(cw, h)?;
                if !cx.separates(th, x, w2x) {
                    return Err(ProgressViolation::StaleWitness { path: w2 });
                }
            }
            if w2.len() < l_max {
                stack.push(Frame {
                    vertex: t,
                    word: w2,
                    last_cp: cp,
                    last_wall: wall,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::letters::Letter;
    use crate::median::MedianGraph;

    /// An automaton with an edge from the start labeled by a letter fixing
    /// the basepoint violates the first clause immediately.
    #[test]
    fn fixing_letter_from_start_violates() {
        let g = MedianGraph::validate(&corpus::path(3)).unwrap();
        // a reflects, b acts trivially
        let act = CubeAction::explicit(g, vec![vec![2, 1, 0], vec![0, 1, 2]], 0).unwrap();
        let x = crate::complex::V(0);
        let mut auto = Automaton::new(act.alphabet.clone(), 2, 0);
        auto.add_edge(0, Letter::gen(1), 1); // b fixes x
        match verify_progressing(&auto, &act, x, None) {
            Err(ProgressViolation::Returns { .. }) => {}
            other => panic!("expected Returns, got {other:?}"),
        }
    }

    #[test]
    fn empty_language_vacuously_fine() {
        let act = CubeAction::tree_ball(2, 4);
        let auto = Automaton::new(act.alphabet.clone(), 1, 0);
        verify_progressing(&auto, &act, act.basepoint, None).unwrap();
        verify_accepted_words_move(&auto, &act, act.basepoint, 6).unwrap();
    }
}
