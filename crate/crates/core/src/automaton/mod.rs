//! Automata over symmetric alphabets: accepted languages, growth
//! certificates, checkpoint trees, progression verification and the
//! reduced-word rewiring.

mod growth;
mod rewire;
mod shape;
mod tree;
mod verify;

pub use growth::{check_lambda_large, GrowthCertificate, GrowthFailure};
pub use rewire::{fixset_automaton, rewire_reduced, RewireError};
pub use shape::{shape_check, ShapeClass, ShapeReport};
pub use tree::{
    check_star, check_star_inductive, realize, verify_checkpoint_tree, verify_progressing_pair,
    CheckpointTree, PairCheck, RealizeError, RootLabel, TreeNode, TreeViolation,
};
pub use verify::{verify_accepted_words_move, verify_progressing, ProgressViolation};

use crate::complex::Wall;
use crate::letters::{Alphabet, Letter, Word};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("no such vertex: {0}")]
    UnknownVertex(String),
    #[error("no generator moves the basepoint")]
    NoMovingGenerator,
}

/// A finite automaton over a symmetric alphabet. Every directed path from
/// the start vertex spells an accepted word; checkpoint vertices carry wall
/// labels when the automaton is bound to an action.
#[derive(Clone, Debug)]
pub struct Automaton {
    pub alphabet: Alphabet,
    pub start: u32,
    /// Out-edges per vertex, sorted by (letter, target).
    pub out: Vec<Vec<(Letter, u32)>>,
    pub checkpoints: BTreeMap<u32, Wall>,
    pub names: Vec<String>,
    /// When the automaton was built over a sub-alphabet, the letters it is
    /// measured against; growth and shape fractions use this size.
    pub active_letters: Option<Vec<Letter>>,
}

impl Automaton {
    pub fn new(alphabet: Alphabet, vertex_count: usize, start: u32) -> Automaton {
        Automaton {
            alphabet,
            start,
            out: vec![Vec::new(); vertex_count],
            checkpoints: BTreeMap::new(),
            names: (0..vertex_count).map(|i| format!("q{i}")).collect(),
            active_letters: None,
        }
    }

    /// Size of the alphabet the automaton is measured against.
    pub fn effective_alphabet_size(&self) -> usize {
        self.active_letters
            .as_ref()
            .map(Vec::len)
            .unwrap_or_else(|| self.alphabet.size())
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn add_edge(&mut self, from: u32, letter: Letter, to: u32) {
        let list = &mut self.out[from as usize];
        let entry = (letter, to);
        if let Err(pos) = list.binary_search(&entry) {
            list.insert(pos, entry);
        }
    }

    /// Distinct letters on out-edges at `v`.
    pub fn out_label_count(&self, v: u32) -> usize {
        let mut last = None;
        let mut count = 0;
        for &(l, _) in &self.out[v as usize] {
            if last != Some(l) {
                count += 1;
                last = Some(l);
            }
        }
        count
    }

    pub fn is_deterministic(&self) -> bool {
        self.out
            .iter()
            .all(|list| list.windows(2).all(|w| w[0].0 != w[1].0))
    }

    fn step_set(&self, set: &[u32], l: Letter) -> Vec<u32> {
        let mut next = Vec::new();
        for &v in set {
            for &(el, t) in &self.out[v as usize] {
                if el == l {
                    next.push(t);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        next
    }

    /// All distinct accepted words of exactly the given length, in
    /// lexicographic letter order.
    pub fn accepted_words(&self, len: usize) -> Vec<Word> {
        self.words_from(self.start, len).unwrap()
    }

    /// Distinct words of the given length spelled by paths starting at `v`.
    pub fn words_from(&self, v: u32, len: usize) -> Result<Vec<Word>, AutomatonError> {
        if v as usize >= self.vertex_count() {
            return Err(AutomatonError::UnknownVertex(v.to_string()));
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enumerate(&[v], len, &mut prefix, &mut out);
        Ok(out)
    }

    fn enumerate(&self, set: &[u32], len: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if len == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        for l in self.alphabet.letters() {
            let next = self.step_set(set, l);
            if next.is_empty() {
                continue;
            }
            prefix.push(l);
            self.enumerate(&next, len - 1, prefix, out);
            prefix.pop();
        }
    }

    /// Exact count of distinct accepted words of the given length.
    pub fn count_accepted(&self, len: usize) -> BigUint {
        self.count_from(self.start, len).unwrap()
    }

    pub fn count_from(&self, v: u32, len: usize) -> Result<BigUint, AutomatonError> {
        if v as usize >= self.vertex_count() {
            return Err(AutomatonError::UnknownVertex(v.to_string()));
        }
        let mut memo: HashMap<(Vec<u32>, usize), BigUint> = HashMap::new();
        Ok(self.count_set(&[v], len, &mut memo))
    }

    fn count_set(
        &self,
        set: &[u32],
        len: usize,
        memo: &mut HashMap<(Vec<u32>, usize), BigUint>,
    ) -> BigUint {
        if len == 0 {
            return BigUint::one();
        }
        if let Some(c) = memo.get(&(set.to_vec(), len)) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        for l in self.alphabet.letters() {
            let next = self.step_set(set, l);
            if !next.is_empty() {
                total += self.count_set(&next, len - 1, memo);
            }
        }
        memo.insert((set.to_vec(), len), total.clone());
        total
    }

    /// Runs the automaton on a word (any path realizes acceptance).
    pub fn accepts(&self, w: &Word) -> bool {
        let mut set = vec![self.start];
        for &l in w.letters() {
            set = self.step_set(&set, l);
            if set.is_empty() {
                return false;
            }
        }
        true
    }

    /// Vertices reachable from the start.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(v) = stack.pop() {
            for &(_, t) in &self.out[v as usize] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letters::parse_word;

    /// The 5-state automaton accepting freely reduced words over rank 2.
    pub fn no_backtrack(rank: usize) -> Automaton {
        let alpha = Alphabet::base(rank);
        let k2 = alpha.size();
        let mut a = Automaton::new(alpha.clone(), k2 + 1, 0);
        // state 1 + l = "last letter was l"
        for l in alpha.letters() {
            a.add_edge(0, l, 1 + l.index() as u32);
            for l2 in alpha.letters() {
                if l2 != alpha.inverse(l) {
                    a.add_edge(1 + l.index() as u32, l2, 1 + l2.index() as u32);
                }
            }
        }
        a
    }

    #[test]
    fn empty_word_always_accepted() {
        let a = no_backtrack(2);
        assert_eq!(a.accepted_words(0), vec![Word::empty()]);
        assert_eq!(a.count_accepted(0), BigUint::from(1u32));
    }

    #[test]
    fn no_backtrack_counts() {
        let a = no_backtrack(2);
        // 2k(2k-1)^(L-1)
        assert_eq!(a.count_accepted(3), BigUint::from(36u32));
        assert_eq!(a.count_accepted(1), BigUint::from(4u32));
        for len in 0..=6 {
            let words = a.accepted_words(len);
            assert_eq!(BigUint::from(words.len()), a.count_accepted(len));
            for w in &words {
                assert!(w.is_reduced(&a.alphabet), "unreduced {w:?}");
            }
        }
    }

    #[test]
    fn nondeterministic_counts_distinct_words() {
        // two parallel a-edges to different states still spell one word
        let alpha = Alphabet::base(1);
        let mut a = Automaton::new(alpha, 3, 0);
        a.add_edge(0, Letter::gen(0), 1);
        a.add_edge(0, Letter::gen(0), 2);
        a.add_edge(1, Letter::gen(0), 1);
        a.add_edge(2, Letter::gen_inv(0), 2);
        assert_eq!(a.count_accepted(1), BigUint::from(1u32));
        assert_eq!(a.count_accepted(2), BigUint::from(2u32));
        let words = a.accepted_words(2);
        assert_eq!(words.len(), 2);
        assert_eq!(BigUint::from(words.len()), a.count_accepted(2));
    }

    #[test]
    fn prefix_language_examples() {
        let a = no_backtrack(2);
        // from the start the language is everything accepted
        assert_eq!(a.words_from(a.start, 4).unwrap(), a.accepted_words(4));
        // from the "last letter a" state, words never start with a'
        let alpha = a.alphabet.clone();
        let v = 1 + Letter::gen(0).index() as u32;
        for w in a.words_from(v, 3).unwrap() {
            assert_ne!(w.0[0], Letter::gen_inv(0));
        }
        // a sink vertex only spells the empty word
        let mut b = Automaton::new(alpha, 2, 0);
        b.add_edge(0, Letter::gen(0), 1);
        assert_eq!(b.words_from(1, 0).unwrap(), vec![Word::empty()]);
        assert!(b.words_from(1, 2).unwrap().is_empty());
        assert!(b.words_from(5, 1).is_err());
    }

    #[test]
    fn accepts_examples() {
        let a = no_backtrack(2);
        assert!(a.accepts(&parse_word("ab'a", &a.alphabet).unwrap()));
        assert!(!a.accepts(&parse_word("aa'", &a.alphabet).unwrap()));
    }
}
