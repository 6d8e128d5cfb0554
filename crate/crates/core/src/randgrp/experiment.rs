//! Monte Carlo estimation of the probability that a random relator set
//! meets an accepted language.
//!
//! Relators are drawn letter by letter from a per-(length, trial) stream
//! and run through the automaton as they are drawn: a word that falls off
//! the automaton is abandoned immediately (its undrawn letters are
//! independent of the event), and a trial stops at its first hit. This
//! keeps the simulation exact for the hit/no-hit event while allowing
//! relator counts in the millions.

use super::{relator_count, RandError};
use crate::automaton::Automaton;
use crate::rat::Q;
use crate::rng::stream;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct LengthResult {
    pub length: usize,
    pub relators: String,
    pub trials: usize,
    pub hits: usize,
    pub p_hat: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub density: String,
    pub seed: u64,
    pub per_length: Vec<LengthResult>,
}

fn wilson(hits: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959964f64;
    let n = n as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let spread = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((center - spread) / denom).max(0.0),
        ((center + spread) / denom).min(1.0),
    )
}

/// Per-letter transition masks over at most 128 states.
struct MaskAutomaton {
    letters: usize,
    masks: Vec<Vec<u128>>, // masks[letter][vertex] = targets
    start: u128,
}

impl MaskAutomaton {
    fn new(a: &Automaton) -> Result<MaskAutomaton, RandError> {
        let n = a.vertex_count();
        if n > 128 {
            return Err(RandError::OutOfRange(
                "experiment automata are limited to 128 states".into(),
            ));
        }
        let letters = a.alphabet.size();
        let mut masks = vec![vec![0u128; n]; letters];
        for v in 0..n {
            for &(l, t) in &a.out[v] {
                masks[l.index()][v] |= 1u128 << t;
            }
        }
        Ok(MaskAutomaton {
            letters,
            masks,
            start: 1u128 << a.start,
        })
    }

    #[inline]
    fn step(&self, set: u128, letter: usize) -> u128 {
        let mut next = 0u128;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= self.masks[letter][v];
        }
        next
    }
}

/// Empirical hit probabilities of `relator set meets the language` across
/// the given lengths.
pub fn intersection_experiment(
    a: &Automaton,
    d: &Q,
    lengths: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, RandError> {
    let ma = MaskAutomaton::new(a)?;
    let k2 = ma.letters as u16;
    let mut per_length = Vec::new();
    for &length in lengths {
        let count = relator_count(a.alphabet.rank(), d, length)?;
        let n = count.to_u64().ok_or_else(|| {
            RandError::OutOfRange("relator count exceeds the simulation limit".into())
        })?;
        let mut hits = 0usize;
        for trial in 0..trials {
            let mut rng = stream(seed, &[length as u64, trial as u64]);
            let mut hit = false;
            'relators: for _ in 0..n {
                let mut set = ma.start;
                for _ in 0..length {
                    let l = rng.gen_range(0..k2) as usize;
                    set = ma.step(set, l);
                    if set == 0 {
                        continue 'relators; // word rejected; rest undrawn
                    }
                }
                hit = true;
                break;
            }
            if hit {
                hits += 1;
            }
        }
        let (lo, hi) = wilson(hits, trials);
        per_length.push(LengthResult {
            length,
            relators: count.to_string(),
            trials,
            hits,
            p_hat: hits as f64 / trials.max(1) as f64,
            wilson_low: lo,
            wilson_high: hi,
        });
    }
    Ok(ExperimentReport {
        density: crate::rat::show_q(d),
        seed,
        per_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letters::{Alphabet, Letter};
    use crate::rat::q;

    fn full_language() -> Automaton {
        let alpha = Alphabet::base(2);
        let mut a = Automaton::new(alpha.clone(), 1, 0);
        for l in alpha.letters() {
            a.add_edge(0, l, 0);
        }
        a
    }

    fn single_word(len: usize) -> Automaton {
        let alpha = Alphabet::base(2);
        let mut a = Automaton::new(alpha, len + 1, 0);
        for i in 0..len {
            a.add_edge(i as u32, Letter::gen(0), i as u32 + 1);
        }
        a
    }

    #[test]
    fn full_language_always_hits() {
        let a = full_language();
        let r = intersection_experiment(&a, &q(3, 10), &[6, 10], 20, 1).unwrap();
        assert!(r.per_length.iter().all(|lr| lr.hits == lr.trials));
    }

    #[test]
    fn single_word_language_never_hits_at_scale() {
        let a = single_word(12);
        let r = intersection_experiment(&a, &q(3, 10), &[12], 30, 1).unwrap();
        // 4^3.6 ~ 147 relators, each hitting w.p. 4^-12
        assert_eq!(r.per_length[0].hits, 0);
    }

    #[test]
    fn deterministic_across_runs() {
        let a = full_language();
        let r1 = intersection_experiment(&a, &q(3, 10), &[8], 10, 9).unwrap();
        let r2 = intersection_experiment(&a, &q(3, 10), &[8], 10, 9).unwrap();
        assert_eq!(r1.per_length[0].hits, r2.per_length[0].hits);
    }

    #[test]
    fn wilson_bounds_are_sane() {
        let (lo, hi) = wilson(200, 200);
        assert!(lo > 0.97 && hi > 0.999);
        let (lo, hi) = wilson(0, 200);
        assert!(lo == 0.0 && hi < 0.03);
    }
}
