//! Shape certification of constructed automata against the two canonical
//! forms: the two-vertex fix-set shape, and the branching shape whose start
//! fans out over most of the alphabet with well-connected interior.

use super::Automaton;
use crate::rat::Q;
use num_bigint::{BigInt, BigUint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeClass {
    Form1,
    Form2,
    Neither,
}

#[derive(Clone, Debug)]
pub struct ShapeReport {
    pub class: ShapeClass,
    pub vertex_bound: BigUint,
    pub vertex_bound_ok: bool,
}

fn at_least(count: usize, frac: &Q, size: usize) -> bool {
    BigInt::from(count) * frac.denom() >= frac.numer() * BigInt::from(size)
}

/// Classifies an automaton as form 1 (two vertices, one moving generator
/// pair, at least `c1 * |alphabet|` loops), form 2 (start fans out over at
/// least `(1-c1) * |alphabet|` non-loop edges and every other vertex keeps
/// at least `c2 * |alphabet|` out-edges away from the start), or neither.
/// Also reports the `(|alphabet| n + 1)^n` vertex bound.
pub fn shape_check(a: &Automaton, n: usize, c1: &Q, c2: &Q) -> ShapeReport {
    let size = a.effective_alphabet_size();
    let class = classify(a, c1, c2, size);
    let vertex_bound = BigUint::from(size * n + 1).pow(n as u32);
    let vertex_bound_ok = BigUint::from(a.vertex_count()) <= vertex_bound;
    ShapeReport {
        class,
        vertex_bound,
        vertex_bound_ok,
    }
}

fn classify(a: &Automaton, c1: &Q, c2: &Q, size: usize) -> ShapeClass {
    // form 1
    if a.vertex_count() == 2 {
        let other = 1 - a.start;
        let start_edges = &a.out[a.start as usize];
        let loops = &a.out[other as usize];
        let two_to_v = start_edges.len() == 2
            && start_edges.iter().all(|&(_, t)| t == other)
            && start_edges.len() == 2
            && start_edges[0].0 == a.alphabet.inverse(start_edges[1].0);
        if two_to_v {
            let s = start_edges[0].0;
            let si = start_edges[1].0;
            let loops_ok = loops.iter().all(|&(l, t)| t == other && l != s && l != si);
            if loops_ok && at_least(loops.len(), c1, size) {
                return ShapeClass::Form1;
            }
        }
    }
    // form 2
    let start_list = &a.out[a.start as usize];
    let no_loops = start_list.iter().all(|&(_, t)| t != a.start);
    let one_minus_c1 = Q::from_integer(1.into()) - c1;
    if no_loops && at_least(start_list.len(), &one_minus_c1, size) {
        let interior_ok = (0..a.vertex_count() as u32)
            .filter(|&v| v != a.start)
            .all(|v| {
                let away = a.out[v as usize]
                    .iter()
                    .filter(|&&(_, t)| t != a.start)
                    .count();
                at_least(away, c2, size)
            });
        if interior_ok {
            return ShapeClass::Form2;
        }
    }
    ShapeClass::Neither
}

#[cfg(test)]
mod tests {
    use super::super::tests::no_backtrack;
    use super::*;
    use crate::letters::{Alphabet, Letter};
    use crate::rat::q;

    #[test]
    fn no_backtrack_is_form2() {
        let a = no_backtrack(2);
        let r = shape_check(&a, 1, &q(1, 3), &q(3, 4));
        assert_eq!(r.class, ShapeClass::Form2);
        assert!(r.vertex_bound_ok); // 5 <= (4*1+1)^1
        assert_eq!(r.vertex_bound, 5u32.into());
    }

    #[test]
    fn fixset_shape_is_form1() {
        let alpha = Alphabet::base(2);
        let mut a = Automaton::new(alpha, 2, 0);
        a.add_edge(0, Letter::gen(0), 1);
        a.add_edge(0, Letter::gen_inv(0), 1);
        a.add_edge(1, Letter::gen(1), 1);
        a.add_edge(1, Letter::gen_inv(1), 1);
        let r = shape_check(&a, 1, &q(1, 3), &q(1, 2));
        assert_eq!(r.class, ShapeClass::Form1);
    }

    #[test]
    fn loop_at_start_is_neither() {
        let alpha = Alphabet::base(2);
        let mut a = Automaton::new(alpha.clone(), 2, 0);
        for l in alpha.letters() {
            a.add_edge(0, l, 0);
        }
        let r = shape_check(&a, 1, &q(1, 3), &q(1, 2));
        assert_eq!(r.class, ShapeClass::Neither);
    }
}
