//! Relator systems over block alphabets: overlapping pairs of relators are
//! concatenated and re-bracketed into length-m blocks.

use super::{Model, RandError, RelatorSet};
use crate::letters::{BlockAlphabet, Word};

/// A block-letter relator system derived from a sampled set.
pub struct HatSystem {
    pub m: usize,
    pub residue: usize,
    pub blocks: BlockAlphabet,
    /// Words over the block alphabet, each of length `2 * (L / m)`.
    pub relators: Vec<Word>,
    pub pair_count: usize,
}

/// For every ordered pair `(A, B)` of relators such that `A` ends with the
/// inverse of `B`'s length-`L mod m` prefix `w`, emits `A w` (sans the
/// matched parts) concatenated with `w^-1 B`'s tail, re-bracketed into
/// blocks. With `m` dividing `L`, `w` is empty and every ordered pair
/// contributes.
pub fn hat_relators(set: &RelatorSet, m: usize) -> Result<HatSystem, RandError> {
    if m == 0 || m > set.length {
        return Err(RandError::OutOfRange("need 1 <= m <= L".into()));
    }
    let blocks = BlockAlphabet::new(set.k, m);
    let residue = set.length % m;
    let lhat = set.length / m;
    let base = &blocks.base;
    let mut relators = Vec::new();
    let mut pair_count = 0usize;
    for a in &set.relators {
        for b in &set.relators {
            let w_prefix = Word(b.0[..residue].to_vec());
            let w_inv = w_prefix.inverse(base);
            if a.0[set.length - residue..] != w_inv.0[..] {
                continue;
            }
            pair_count += 1;
            let mut joined: Vec<crate::letters::Letter> = a.0[..set.length - residue].to_vec();
            joined.extend_from_slice(&b.0[residue..]);
            debug_assert_eq!(joined.len(), 2 * m * lhat);
            let mut hat_word = Word::empty();
            for chunk in joined.chunks(m) {
                let l = blocks
                    .letter_of(chunk)
                    .expect("chunk length matches the block size");
                if set.model == Model::Reduced {
                    // blocks of reduced inputs are reduced; keep the check
                    debug_assert!(blocks.word_of(l).is_reduced(base));
                }
                hat_word.push(l);
            }
            relators.push(hat_word);
        }
    }
    Ok(HatSystem {
        m,
        residue,
        blocks,
        relators,
        pair_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letters::{parse_word, Alphabet};
    use crate::randgrp::sample_plain;
    use crate::rat::q;

    #[test]
    fn block_alphabet_sizes() {
        for k in 1..=3usize {
            for m in 1..=3usize {
                let b = BlockAlphabet::new(k, m);
                assert_eq!(b.alpha.size(), (2 * k).pow(m as u32));
                // inversion is an involution matching word inversion
                for l in b.alpha.letters() {
                    let w = b.word_of(l);
                    let li = b.alpha.inverse(l);
                    assert_eq!(b.word_of(li), w.inverse(&b.base));
                    assert_eq!(b.alpha.inverse(li), l);
                }
            }
        }
    }

    #[test]
    fn positive_half_partitions_odd_blocks() {
        // for odd m inversion is fixed-point free and the half is exact
        let b = BlockAlphabet::new(2, 3);
        let pos = b.positive_half();
        assert_eq!(pos.len() * 2, b.alpha.size());
        // for even m over a plain base, self-inverse words exist (e.g. aa')
        let b2 = BlockAlphabet::new(2, 2);
        let self_inv = b2
            .alpha
            .letters()
            .filter(|&l| b2.alpha.inverse(l) == l)
            .count();
        assert_eq!(self_inv, 4);
    }

    #[test]
    fn m_one_pairs_everything() {
        let set = sample_plain(2, &q(1, 2), 4, 5).unwrap();
        let n = set.relators.len();
        let hs = hat_relators(&set, 1).unwrap();
        assert_eq!(hs.pair_count, n * n);
        assert!(hs.relators.iter().all(|w| w.len() == 8));
    }

    #[test]
    fn crafted_overlap() {
        // L = 3, m = 3: residue 0, every ordered pair concatenates into a
        // single block pair
        let alpha = Alphabet::base(3);
        let r1 = parse_word("abc'", &alpha).unwrap();
        let r2 = parse_word("cba", &alpha).unwrap();
        let set = RelatorSet {
            k: 3,
            density: q(1, 2),
            length: 3,
            model: Model::Plain,
            seed: 0,
            relators: vec![r1.clone(), r2.clone()],
        };
        let hs = hat_relators(&set, 3).unwrap();
        assert_eq!(hs.pair_count, 4);
        assert!(hs.relators.iter().all(|w| w.len() == 2));
        // the blocks expand back to the concatenations
        let expanded: Vec<Word> = hs.relators.iter().map(|w| hs.blocks.expand(w)).collect();
        assert!(expanded.contains(&r1.concat(&r2)));
        assert!(expanded.contains(&r2.concat(&r1)));
    }

    #[test]
    fn residue_matching() {
        // L = 3, m = 2: residue 1; A must end with the inverse of B's first
        // letter
        let alpha = Alphabet::base(2);
        let a = parse_word("aba'", &alpha).unwrap();
        let b = parse_word("abb", &alpha).unwrap();
        let set = RelatorSet {
            k: 2,
            density: q(1, 2),
            length: 3,
            model: Model::Plain,
            seed: 0,
            relators: vec![a, b],
        };
        let hs = hat_relators(&set, 2).unwrap();
        // pairs: (aba', abb) matches (a' vs a), (aba', aba') matches;
        // (abb, *) never matches (b is not the inverse of a or a')
        assert_eq!(hs.pair_count, 2);
        assert!(hs.relators.iter().all(|w| w.len() == 2));
    }
}
