//! Easy tree extensions: attaching one or two generations of edges at each
//! leaf, with witnesses found from the local wall arrangement.

use super::BuildError;
use crate::action::{CubeAction, VisibleWalls};
use crate::automaton::{CheckpointTree, RootLabel};
use crate::complex::{Wall, V};
use crate::letters::{Letter, Word};
use crate::partition::partition;
use crate::rat::Q;
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EasyCase {
    Forward,
    VisiblyParallel,
    DisjointParallelBackward,
}

fn at_least(count: usize, frac: &Q, size: usize) -> bool {
    BigInt::from(count) * frac.denom() >= frac.numer() * BigInt::from(size)
}

/// Witness for a forward step (or the backward closing step): the wall
/// nearest to `p` separating `p` from the carrier of `wall`, pulled back by
/// the inverse of the word that produced `p`.
fn pullback_witness(
    action: &CubeAction,
    x: V,
    wall: Wall,
    word: &Word,
    visible: &VisibleWalls,
) -> Result<Wall, BuildError> {
    let p = action.apply(word, x)?;
    let gate = action.complex.gate_on_carrier(wall, p);
    let candidates: Vec<Wall> = action
        .complex
        .walls_separating(p, gate)
        .into_iter()
        .filter(|&w| action.complex.on_carrier(w, p))
        .collect();
    let nearest = candidates.first().copied().ok_or_else(|| {
        BuildError::PreconditionViolated("no wall separates the point from the carrier".into())
    })?;
    let witness = action.translate_wall(&word.inverse(&action.alphabet), nearest)?;
    if !visible.contains(&witness) {
        return Err(BuildError::PreconditionViolated(
            "pulled-back witness is not visible".into(),
        ));
    }
    Ok(witness)
}

/// Extends every leaf of the tree by the three schemes: forward letters,
/// visibly parallel letters, and (when the backward set at the root is at
/// least `lambda * |letters|`) disjoint parallel letters followed by the
/// root's backward letters. Each new leaf receives a verified witness. At
/// least one scheme must clear the `lambda` threshold at every leaf.
pub fn extend_tree_easy(
    mut tree: CheckpointTree,
    wall: Wall,
    action: &CubeAction,
    x: V,
    lambda: &Q,
    letters: &[Letter],
    visible: &VisibleWalls,
) -> Result<(CheckpointTree, Vec<(u32, Vec<EasyCase>)>), BuildError> {
    let size = letters.len();
    let root_part = partition(action, x, &Word::empty(), wall, letters, visible)?;
    let b0 = root_part.backward.clone();
    let b_large = at_least(b0.len(), lambda, size);
    let mut log = Vec::new();
    for leaf in tree.leaves() {
        let word = tree.word_of(leaf);
        let part = partition(action, x, &word, wall, letters, visible)?;
        let mut cases = Vec::new();
        if at_least(part.forward.len(), lambda, size) {
            cases.push(EasyCase::Forward);
        }
        if at_least(part.par_visible.len(), lambda, size) {
            cases.push(EasyCase::VisiblyParallel);
        }
        if at_least(part.par_disjoint.len(), lambda, size) && b_large {
            cases.push(EasyCase::DisjointParallelBackward);
        }
        if cases.is_empty() {
            return Err(BuildError::NoCaseApplies(word.display(&action.alphabet)));
        }
        // forward letters: nearest separator past the carrier, pulled back
        for &s in &part.forward {
            let child = tree.add_child(leaf, s);
            let ws = word.concat(&Word::one(s));
            let witness = pullback_witness(action, x, wall, &ws, visible)?;
            tree.nodes[child as usize].leaf_label = Some(witness);
        }
        // visibly parallel letters: the root wall pulled back is visible
        for &s in &part.par_visible {
            let child = tree.add_child(leaf, s);
            let ws = word.concat(&Word::one(s));
            let witness = action.translate_wall(&ws.inverse(&action.alphabet), wall)?;
            if !visible.contains(&witness) {
                return Err(BuildError::PreconditionViolated(
                    "visibly parallel pullback is not visible".into(),
                ));
            }
            tree.nodes[child as usize].leaf_label = Some(witness);
        }
        // disjoint parallel then backward: two generations
        if b_large {
            for &s in &part.par_disjoint {
                let mid = tree.add_child(leaf, s);
                for &t in &b0 {
                    let child = tree.add_child(mid, t);
                    let wst = word.concat(&Word::one(s)).concat(&Word::one(t));
                    let witness = pullback_witness(action, x, wall, &wst, visible)?;
                    tree.nodes[child as usize].leaf_label = Some(witness);
                }
            }
        }
        log.push((leaf, cases));
    }
    Ok((tree, log))
}

/// The depth-one start tree: one edge per moving letter, the new leaf
/// witnessed by a wall the letter pulls across the basepoint.
pub fn start_tree(
    action: &CubeAction,
    x: V,
    letters: &[Letter],
    visible: &VisibleWalls,
) -> Result<CheckpointTree, BuildError> {
    let mut tree = CheckpointTree::new(RootLabel::Start);
    for &s in letters {
        if action.apply_letter(s, x) == Some(x) {
            return Err(BuildError::PreconditionViolated(format!(
                "letter {} fixes the basepoint",
                action.alphabet.name(s)
            )));
        }
        let inv = action.alphabet.inverse(s);
        let witness = visible.per_letter[inv.index()]
            .first()
            .copied()
            .ok_or_else(|| {
                BuildError::PreconditionViolated(format!(
                    "no visible wall for letter {}",
                    action.alphabet.name(inv)
                ))
            })?;
        let child = tree.add_child(0, s);
        tree.nodes[child as usize].leaf_label = Some(witness);
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{verify_checkpoint_tree, RootLabel};
    use crate::rat::q;

    #[test]
    fn forward_extension_on_tree_ball() {
        let act = CubeAction::tree_ball(2, 6);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let letters: Vec<Letter> = act.alphabet.letters().collect();
        let h = vis.per_letter[Letter::gen(0).index()][0];
        let t = CheckpointTree::new(RootLabel::Wall(h));
        let (mut t, log) = extend_tree_easy(t, h, &act, x, &q(3, 4), &letters, &vis).unwrap();
        assert_eq!(log[0].1, vec![EasyCase::Forward]);
        assert_eq!(t.nodes[0].children.len(), 3); // a', b, b'
        t.claimed_growth = Some(q(3, 4));
        verify_checkpoint_tree(&t, &act, x, &vis).unwrap();
    }

    #[test]
    fn visibly_parallel_extension_on_grid() {
        let act = CubeAction::grid(vec![9, 9]);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let letters: Vec<Letter> = act.alphabet.letters().collect();
        let h = vis.per_letter[Letter::gen(0).index()][0];
        let t = CheckpointTree::new(RootLabel::Wall(h));
        let (mut t, log) = extend_tree_easy(t, h, &act, x, &q(1, 2), &letters, &vis).unwrap();
        assert!(log[0].1.contains(&EasyCase::VisiblyParallel));
        // witnesses for the parallel letters are the wall itself pulled back
        for &c in &t.nodes[0].children {
            let s = t.nodes[c as usize].letter.unwrap();
            if s == Letter::gen(1) || s == Letter::gen_inv(1) {
                let w = Word::one(s);
                let pulled = act.translate_wall(&w.inverse(&act.alphabet), h).unwrap();
                assert_eq!(t.nodes[c as usize].leaf_label, Some(pulled));
            }
        }
        t.claimed_growth = Some(q(1, 2));
        verify_checkpoint_tree(&t, &act, x, &vis).unwrap();
    }

    #[test]
    fn threshold_too_high_fails() {
        let act = CubeAction::tree_ball(2, 6);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let letters: Vec<Letter> = act.alphabet.letters().collect();
        let h = vis.per_letter[Letter::gen(0).index()][0];
        let t = CheckpointTree::new(RootLabel::Wall(h));
        match extend_tree_easy(t, h, &act, x, &q(9, 10), &letters, &vis) {
            Err(BuildError::NoCaseApplies(_)) => {}
            other => panic!("expected NoCaseApplies, got {other:?}"),
        }
    }

    #[test]
    fn start_tree_is_verified() {
        let act = CubeAction::tree_ball(2, 6);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let letters: Vec<Letter> = act.alphabet.letters().collect();
        let t = start_tree(&act, x, &letters, &vis).unwrap();
        assert_eq!(t.nodes[0].children.len(), 4);
        verify_checkpoint_tree(&t, &act, x, &vis).unwrap();
    }
}
