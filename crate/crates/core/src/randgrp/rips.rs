//! Presentation assembly: a base presentation is absorbed into a fresh
//! generating set drawn from a relator pool, with conjugation relators
//! making the pool generators normally generate.

use super::{Presentation, RandError, RelatorSet};
use crate::letters::{Letter, Word};

/// Assembles `< a's, b's | leftover pool, r_i B_i, a_i b_j a_i^-1 B_ij^-1 >`
/// from a base presentation on the `a`s and a pool over the `b`s. The pool
/// relators must be long relative to the base (`L > 4 p C` with `C` the
/// larger of 3 and the base relator lengths), and large enough to supply
/// one word per base relator plus one per (base generator, pool generator)
/// pair without replacement.
pub fn rips_assemble(
    base: &Presentation,
    p: u32,
    pool: &RelatorSet,
) -> Result<Presentation, RandError> {
    let m = base.generator_count;
    let kp = pool.k;
    let c = base
        .relators
        .iter()
        .map(Word::len)
        .max()
        .unwrap_or(0)
        .max(3);
    if pool.length <= 4 * p as usize * c {
        return Err(RandError::LengthTooShort(4 * p as usize * c));
    }
    let draws = base.relators.len() + m * kp;
    if pool.relators.len() < draws {
        return Err(RandError::PoolTooSmall);
    }
    // shift a pool letter past the base generators
    let shift = |l: Letter| {
        if l.is_inverse_letter() {
            Letter::gen_inv(m + l.generator())
        } else {
            Letter::gen(m + l.generator())
        }
    };
    let shift_word = |w: &Word| Word(w.0.iter().map(|&l| shift(l)).collect());
    let combined = crate::letters::Alphabet::base(m + kp);

    let b_words: Vec<Word> = pool.relators[..base.relators.len()]
        .iter()
        .map(&shift_word)
        .collect();
    let bij: Vec<Word> = pool.relators[base.relators.len()..draws]
        .iter()
        .map(&shift_word)
        .collect();
    let leftover: Vec<Word> = pool.relators[draws..].iter().map(&shift_word).collect();

    let mut relators = leftover;
    for (r, b) in base.relators.iter().zip(&b_words) {
        relators.push(r.concat(b));
    }
    for i in 0..m {
        for j in 0..kp {
            // a_i b_j a_i^-1 B_ij^-1
            let mut w = Word::empty();
            w.push(Letter::gen(i));
            w.push(Letter::gen(m + j));
            w.push(Letter::gen_inv(i));
            let widx = i * kp + j;
            relators.push(w.concat(&bij[widx].inverse(&combined)));
        }
    }
    Ok(Presentation {
        generator_count: m + kp,
        relators,
        origin: super::Origin::Rips,
    })
}
