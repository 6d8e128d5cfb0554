//! The two-vertex automaton for basepoints with a large fix-set, and the
//! clone-and-rewire construction that restricts an accepted language to the
//! words that stay reduced over the base alphabet.

use super::{Automaton, AutomatonError};
use crate::action::CubeAction;
use crate::complex::V;
use crate::letters::BlockAlphabet;
use thiserror::Error;

/// Two-vertex automaton: one moving letter (and its inverse) from the start,
/// then loops over the fix-set. Every accepted word moves the basepoint.
pub fn fixset_automaton(action: &CubeAction, x: V) -> Result<Automaton, AutomatonError> {
    let fix = action.fix_set(x);
    let moving = action
        .alphabet
        .letters()
        .find(|&l| action.apply_letter(l, x) != Some(x))
        .ok_or(AutomatonError::NoMovingGenerator)?;
    let mut auto = Automaton::new(action.alphabet.clone(), 2, 0);
    auto.add_edge(0, moving, 1);
    auto.add_edge(0, action.alphabet.inverse(moving), 1);
    for &f in &fix {
        auto.add_edge(1, f, 1);
    }
    auto.names = vec!["s".into(), "v".into()];
    Ok(auto)
}

#[derive(Debug, Error)]
pub enum RewireError {
    #[error("edge label {0} spells a non-reduced base word")]
    LabelNotReduced(String),
}

/// Splits every vertex into clones indexed by the last base letter read and
/// keeps only the transitions whose label does not cancel against it. The
/// accepted language becomes exactly the sublanguage whose expansion over
/// the base alphabet is freely reduced.
pub fn rewire_reduced(a: &Automaton, blocks: &BlockAlphabet) -> Result<Automaton, RewireError> {
    let base = &blocks.base;
    let base_k2 = base.size();
    // reject non-reduced labels up front
    for list in &a.out {
        for &(l, _) in list {
            if !blocks.word_of(l).is_reduced(base) {
                return Err(RewireError::LabelNotReduced(a.alphabet.name(l).to_string()));
            }
        }
    }
    let n = a.vertex_count();
    // vertex 0 = fresh start; clone (v, s) = 1 + v * base_k2 + s
    let clone = |v: u32, s: usize| 1 + v as usize * base_k2 + s;
    let mut out = Automaton::new(a.alphabet.clone(), 1 + n * base_k2, 0);
    out.names = vec!["s".to_string()];
    for v in 0..n as u32 {
        for s in 0..base_k2 {
            out.names.push(format!(
                "{}/{}",
                a.names[v as usize],
                base.name(crate::letters::Letter(s as u16))
            ));
        }
    }
    for (v, list) in a.out.iter().enumerate() {
        for &(l, t) in list {
            let w = blocks.word_of(l);
            let first = w.letters()[0];
            let lastl = *w.letters().last().unwrap();
            let target = clone(t, lastl.index()) as u32;
            if v as u32 == a.start {
                out.add_edge(0, l, target);
            }
            for s in 0..base_k2 {
                // copy unless the label starts with the inverse of s
                if base.inverse(crate::letters::Letter(s as u16)) != first {
                    out.add_edge(clone(v as u32, s) as u32, l, target);
                }
            }
        }
    }
    // clones inherit checkpoint walls
    for (&v, &h) in &a.checkpoints {
        for s in 0..base_k2 {
            out.checkpoints.insert(clone(v, s) as u32, h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::letters::{Alphabet, Letter, Word};
    use crate::median::MedianGraph;
    use num_bigint::BigUint;

    #[test]
    fn fixset_examples() {
        // path reflection plus a trivially acting generator: at the center
        // everything fixes x, so no moving generator exists
        let g = MedianGraph::validate(&corpus::path(3)).unwrap();
        let act = CubeAction::explicit(g, vec![vec![2, 1, 0], vec![0, 1, 2]], 0).unwrap();
        assert!(matches!(
            fixset_automaton(&act, V(1)),
            Err(AutomatonError::NoMovingGenerator)
        ));
        // at an endpoint the fix-set is {b, b'} and a moves
        let auto = fixset_automaton(&act, V(0)).unwrap();
        assert_eq!(auto.vertex_count(), 2);
        // counts 2 * |Fix|^(L-1)
        for len in 1..=5usize {
            let expect = BigUint::from(2u32) * BigUint::from(2u32).pow(len as u32 - 1);
            assert_eq!(auto.count_accepted(len), expect);
        }
        // every accepted word moves x
        for len in 1..=4 {
            for w in auto.accepted_words(len) {
                assert_ne!(act.apply(&w, V(0)).unwrap(), V(0));
            }
        }
    }

    /// Reduced-word oracle: free reduction of the expansion is a no-op.
    fn base_reduced(blocks: &BlockAlphabet, w: &Word) -> bool {
        blocks.expand(w).is_reduced(&blocks.base)
    }

    #[test]
    fn rewire_single_letter_blocks_gives_reduced_words() {
        // complete one-vertex loop automaton over the base alphabet (m = 1)
        let blocks = BlockAlphabet::new(2, 1);
        let mut a = Automaton::new(blocks.alpha.clone(), 2, 0);
        for l in blocks.alpha.letters() {
            a.add_edge(0, l, 1);
            a.add_edge(1, l, 1);
        }
        let r = rewire_reduced(&a, &blocks).unwrap();
        // oracle: the no-backtrack language
        for len in 0..=8usize {
            let words = r.accepted_words(len);
            let expect: Vec<Word> = a
                .accepted_words(len)
                .into_iter()
                .filter(|w| base_reduced(&blocks, w))
                .collect();
            assert_eq!(words, expect);
            // counts 2k(2k-1)^(L-1)
            if len >= 1 {
                let expect_count = BigUint::from(4u32) * BigUint::from(3u32).pow(len as u32 - 1);
                assert_eq!(r.count_accepted(len), expect_count);
            }
        }
    }

    #[test]
    fn rewire_block_letters() {
        let blocks = BlockAlphabet::new(2, 2);
        // one-vertex loop over all HAT letters with reduced words
        let mut a = Automaton::new(blocks.alpha.clone(), 1, 0);
        let reduced: Vec<Letter> = blocks
            .alpha
            .letters()
            .filter(|&l| blocks.word_of(l).is_reduced(&blocks.base))
            .collect();
        assert_eq!(reduced.len(), 12); // 4*3 reduced length-2 words
        for &l in &reduced {
            a.add_edge(0, l, 0);
        }
        let r = rewire_reduced(&a, &blocks).unwrap();
        for len in 0..=4usize {
            let got = r.accepted_words(len);
            let expect: Vec<Word> = a
                .accepted_words(len)
                .into_iter()
                .filter(|w| base_reduced(&blocks, w))
                .collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn rewire_handles_edges_into_the_start() {
        // a loop through the start: words passing through it mid-path must
        // still respect the junction constraint
        let blocks = BlockAlphabet::new(1, 1); // letters a, a'
        let a = Letter::gen(0);
        let ai = Letter::gen_inv(0);
        let mut m = Automaton::new(blocks.alpha.clone(), 2, 0);
        m.add_edge(0, a, 1);
        m.add_edge(1, a, 0); // back into the start
        m.add_edge(0, ai, 1);
        let r = rewire_reduced(&m, &blocks).unwrap();
        for len in 0..=6usize {
            let got = r.accepted_words(len);
            let expect: Vec<Word> = m
                .accepted_words(len)
                .into_iter()
                .filter(|w| w.is_reduced(&blocks.base))
                .collect();
            assert_eq!(got, expect, "length {len}");
        }
        // aa is accepted (a, then a back to the start clone), and the
        // continuation a' is blocked there while a is allowed
        assert!(r.accepts(&Word(vec![a, a, a])));
        assert!(!r.accepts(&Word(vec![a, a, ai])));
    }

    #[test]
    fn rewire_rejects_unreduced_labels() {
        let blocks = BlockAlphabet::new(2, 2);
        let mut a = Automaton::new(blocks.alpha.clone(), 1, 0);
        let bad = blocks
            .alpha
            .letters()
            .find(|&l| !blocks.word_of(l).is_reduced(&blocks.base))
            .unwrap();
        a.add_edge(0, bad, 0);
        assert!(matches!(
            rewire_reduced(&a, &blocks),
            Err(RewireError::LabelNotReduced(_))
        ));
    }

    #[test]
    fn rewire_growth_drop() {
        // every clone of a vertex with d distinct out-labels keeps at least
        // d - |hat|/|base| of them
        let blocks = BlockAlphabet::new(2, 2);
        let alpha = Alphabet::base(2);
        let _ = alpha;
        let mut a = Automaton::new(blocks.alpha.clone(), 1, 0);
        let reduced: Vec<Letter> = blocks
            .alpha
            .letters()
            .filter(|&l| blocks.word_of(l).is_reduced(&blocks.base))
            .collect();
        for &l in &reduced {
            a.add_edge(0, l, 0);
        }
        let r = rewire_reduced(&a, &blocks).unwrap();
        let hat = blocks.alpha.size(); // 16
        let per_first = hat / blocks.base.size(); // 4
        for v in 1..r.vertex_count() as u32 {
            assert!(r.out_label_count(v) + per_first >= reduced.len());
        }
    }
}
