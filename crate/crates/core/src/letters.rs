//! Letters, words and symmetric alphabets.
//!
//! A base alphabet of rank `k` has `2k` letters: generator `g` is letter
//! `2g`, its inverse is letter `2g+1`. Derived alphabets (e.g. the letters
//! of a block alphabet whose letters are words over a base alphabet) carry
//! an explicit inverse table.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(pub u16);

impl Letter {
    pub fn gen(g: usize) -> Letter {
        Letter((2 * g) as u16)
    }
    pub fn gen_inv(g: usize) -> Letter {
        Letter((2 * g + 1) as u16)
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
    /// Inverse under the base-alphabet convention.
    pub fn base_inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
    pub fn is_inverse_letter(self) -> bool {
        self.0 & 1 == 1
    }
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

/// Renders a base letter as `a`, `a'`, `b`, ... (or `g12`, `g12'` past `z`).
pub fn base_letter_name(l: Letter) -> String {
    let g = l.generator();
    let mark = if l.is_inverse_letter() { "'" } else { "" };
    if g < 26 {
        format!("{}{}", (b'a' + g as u8) as char, mark)
    } else {
        format!("g{}{}", g, mark)
    }
}

/// Parses `a`, `a'`, `g12'` into a base letter; rank bounds are not checked.
pub fn parse_base_letter(s: &str) -> Option<Letter> {
    let (body, inv) = match s.strip_suffix('\'') {
        Some(b) => (b, true),
        None => (s, false),
    };
    let g = if let Some(rest) = body.strip_prefix('g') {
        rest.parse::<usize>().ok()?
    } else if body.len() == 1 {
        let c = body.as_bytes()[0];
        if !c.is_ascii_lowercase() {
            return None;
        }
        (c - b'a') as usize
    } else {
        return None;
    };
    Some(if inv {
        Letter::gen_inv(g)
    } else {
        Letter::gen(g)
    })
}

/// A symmetric alphabet: a set of letters closed under inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
    inverse: Vec<u16>,
    names: Vec<String>,
}

impl Alphabet {
    /// The base alphabet with `rank` generators (`2*rank` letters).
    pub fn base(rank: usize) -> Alphabet {
        let size = 2 * rank;
        let inverse = (0..size as u16).map(|i| i ^ 1).collect();
        let names = (0..size)
            .map(|i| base_letter_name(Letter(i as u16)))
            .collect();
        Alphabet {
            size,
            inverse,
            names,
        }
    }

    /// An alphabet with an explicit inverse involution and letter names.
    pub fn with_inverse(inverse: Vec<u16>, names: Vec<String>) -> Alphabet {
        assert_eq!(inverse.len(), names.len());
        for (i, &j) in inverse.iter().enumerate() {
            assert_eq!(inverse[j as usize] as usize, i, "inverse not involutive");
        }
        Alphabet {
            size: inverse.len(),
            inverse,
            names,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn rank(&self) -> usize {
        self.size / 2
    }
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.size as u16).map(Letter)
    }
    pub fn inverse(&self, l: Letter) -> Letter {
        Letter(self.inverse[l.index()])
    }
    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.index()]
    }
    pub fn parse_letter(&self, s: &str) -> Option<Letter> {
        self.names
            .iter()
            .position(|n| n == s)
            .map(|i| Letter(i as u16))
    }
}

/// A finite sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }
    pub fn one(l: Letter) -> Word {
        Word(vec![l])
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Reverse-and-invert; inverse of the group element the word spells.
    pub fn inverse(&self, alpha: &Alphabet) -> Word {
        Word(self.0.iter().rev().map(|&l| alpha.inverse(l)).collect())
    }

    /// All prefixes, from the empty word up to the full word.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |i| Word(self.0[..i].to_vec()))
    }

    /// All suffixes, from the empty word up to the full word.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |i| Word(self.0[self.len() - i..].to_vec()))
    }

    pub fn is_reduced(&self, alpha: &Alphabet) -> bool {
        self.0.windows(2).all(|w| w[1] != alpha.inverse(w[0]))
    }

    pub fn is_cyclically_reduced(&self, alpha: &Alphabet) -> bool {
        self.is_reduced(alpha)
            && (self.len() < 2 || *self.0.last().unwrap() != alpha.inverse(self.0[0]))
    }

    /// Free reduction (cancels adjacent inverse pairs).
    pub fn reduced(&self, alpha: &Alphabet) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&alpha.inverse(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        self.0
            .iter()
            .map(|&l| alpha.name(l).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Compact rendering without separators, e.g. `ab'c`.
    pub fn display_compact(&self, alpha: &Alphabet) -> String {
        self.0.iter().map(|&l| alpha.name(l).to_string()).collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.0)?;
        }
        write!(f, "]")
    }
}

/// Block alphabet: one letter per length-`m` word over a base alphabet,
/// with inversion induced by word inversion. Letter `i` corresponds to the
/// word whose base-letter indices are the base-`2k` digits of `i`.
#[derive(Clone, Debug)]
pub struct BlockAlphabet {
    pub base: Alphabet,
    pub m: usize,
    pub alpha: Alphabet,
}

impl BlockAlphabet {
    pub fn new(base_rank: usize, m: usize) -> BlockAlphabet {
        let base = Alphabet::base(base_rank);
        let k2 = base.size();
        let count = k2.pow(m as u32);
        assert!(count <= u16::MAX as usize, "block alphabet too large");
        let word_of = |i: usize| -> Vec<Letter> {
            let mut digits = vec![Letter(0); m];
            let mut x = i;
            for d in (0..m).rev() {
                digits[d] = Letter((x % k2) as u16);
                x /= k2;
            }
            digits
        };
        let index_of =
            |w: &[Letter]| -> usize { w.iter().fold(0usize, |acc, &l| acc * k2 + l.index()) };
        let mut inverse = Vec::with_capacity(count);
        let mut names = Vec::with_capacity(count);
        for i in 0..count {
            let w = word_of(i);
            let inv: Vec<Letter> = w.iter().rev().map(|&l| base.inverse(l)).collect();
            inverse.push(index_of(&inv) as u16);
            names.push(
                w.iter()
                    .map(|&l| base.name(l).to_string())
                    .collect::<String>(),
            );
        }
        BlockAlphabet {
            base,
            m,
            alpha: Alphabet::with_inverse(inverse, names),
        }
    }

    /// The base-alphabet word a block letter stands for.
    pub fn word_of(&self, l: Letter) -> Word {
        let k2 = self.base.size();
        let mut digits = vec![Letter(0); self.m];
        let mut x = l.index();
        for d in (0..self.m).rev() {
            digits[d] = Letter((x % k2) as u16);
            x /= k2;
        }
        Word(digits)
    }

    pub fn letter_of(&self, w: &[Letter]) -> Option<Letter> {
        if w.len() != self.m {
            return None;
        }
        let k2 = self.base.size();
        let i = w.iter().fold(0usize, |acc, &l| acc * k2 + l.index());
        Some(Letter(i as u16))
    }

    /// Expands a block word into the base word it spells.
    pub fn expand(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for &l in w.letters() {
            for &b in self.word_of(l).letters() {
                out.push(b);
            }
        }
        out
    }

    /// The positively-oriented half: letters at most their inverse in index
    /// order. (For even block lengths over a plain base a letter can equal
    /// its own inverse; such letters land on the positive side.)
    pub fn positive_half(&self) -> Vec<Letter> {
        self.alpha
            .letters()
            .filter(|&l| l.index() <= self.alpha.inverse(l).index())
            .collect()
    }
}

/// Parses a compact word like `ab'c` or a spaced one like `a b' c`.
pub fn parse_word(s: &str, alpha: &Alphabet) -> Option<Word> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Some(Word::empty());
    }
    if s.contains(' ') {
        let mut w = Word::empty();
        for tok in s.split_whitespace() {
            let l = alpha.parse_letter(tok)?;
            w.push(l);
        }
        return Some(w);
    }
    let mut w = Word::empty();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if !c.is_ascii_lowercase() {
            return None;
        }
        let mut j = i + 1;
        if j < bytes.len() && bytes[j] == b'\'' {
            j += 1;
        }
        let l = alpha.parse_letter(&s[i..j])?;
        w.push(l);
        i = j;
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_names() {
        let a = Alphabet::base(2);
        assert_eq!(a.name(Letter::gen(0)), "a");
        assert_eq!(a.name(Letter::gen_inv(0)), "a'");
        assert_eq!(a.name(Letter::gen(1)), "b");
        assert_eq!(a.inverse(Letter::gen(1)), Letter::gen_inv(1));
    }

    #[test]
    fn word_parse_display() {
        let a = Alphabet::base(2);
        let w = parse_word("ab'a", &a).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.display_compact(&a), "ab'a");
        assert_eq!(parse_word("a b' a", &a).unwrap(), w);
        assert!(parse_word("xz?", &a).is_none());
    }

    #[test]
    fn prefixes_and_suffixes_count() {
        let a = Alphabet::base(2);
        let w = parse_word("ab'ab", &a).unwrap();
        assert_eq!(w.prefixes().count(), w.len() + 1);
        assert_eq!(w.suffixes().count(), w.len() + 1);
    }

    #[test]
    fn reduction() {
        let a = Alphabet::base(2);
        let w = parse_word("aa'b", &a).unwrap();
        assert!(!w.is_reduced(&a));
        assert_eq!(w.reduced(&a), parse_word("b", &a).unwrap());
        let v = parse_word("ab", &a).unwrap();
        assert_eq!(v.inverse(&a), parse_word("b'a'", &a).unwrap());
        assert!(parse_word("ba'", &a).unwrap().is_cyclically_reduced(&a));
        assert!(parse_word("aba'", &a).unwrap().is_reduced(&a));
        assert!(!parse_word("aba'", &a).unwrap().is_cyclically_reduced(&a));
    }
}
