//! Property tests for the word algebra, the action laws, and the counting
//! routes.

use cubefix::action::CubeAction;
use cubefix::automaton::Automaton;
use cubefix::letters::{Alphabet, Letter, Word};
use num_bigint::BigUint;
use proptest::prelude::*;

fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..(2 * rank) as u16, 0..=max_len)
        .prop_map(|v| Word(v.into_iter().map(Letter).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn concatenation_is_associative(
        a in word_strategy(2, 6),
        b in word_strategy(2, 6),
        c in word_strategy(2, 6),
    ) {
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
    }

    #[test]
    fn prefix_and_suffix_counts(w in word_strategy(3, 10)) {
        prop_assert_eq!(w.prefixes().count(), w.len() + 1);
        prop_assert_eq!(w.suffixes().count(), w.len() + 1);
    }

    #[test]
    fn reduction_is_idempotent_and_inverse_cancels(w in word_strategy(2, 10)) {
        let alpha = Alphabet::base(2);
        let r = w.reduced(&alpha);
        prop_assert!(r.is_reduced(&alpha));
        prop_assert_eq!(r.reduced(&alpha), r.clone());
        let cancel = w.concat(&w.inverse(&alpha)).reduced(&alpha);
        prop_assert_eq!(cancel, Word::empty());
    }

    #[test]
    fn action_composes(
        w in word_strategy(2, 3),
        u in word_strategy(2, 3),
    ) {
        let act = CubeAction::tree_ball(2, 8);
        let x = act.basepoint;
        let both = act.apply(&w.concat(&u), x).unwrap();
        let stepped = act.apply(&w, act.apply(&u, x).unwrap()).unwrap();
        prop_assert_eq!(both, stepped);
        // the same law on the grid window
        let grid = CubeAction::grid(vec![9, 9]);
        let gx = grid.basepoint;
        prop_assert_eq!(
            grid.apply(&w.concat(&u), gx).unwrap(),
            grid.apply(&w, grid.apply(&u, gx).unwrap()).unwrap()
        );
    }

    #[test]
    fn counting_matches_enumeration(edges in prop::collection::vec(
        (0u32..4, 0u16..4, 0u32..4), 1..14,
    )) {
        // arbitrary (possibly nondeterministic) 4-state automata over two
        // generators: the transfer count equals the enumeration size
        let alpha = Alphabet::base(2);
        let mut a = Automaton::new(alpha, 4, 0);
        for (from, l, to) in edges {
            a.add_edge(from, Letter(l), to);
        }
        for len in 0..=5usize {
            let words = a.accepted_words(len);
            prop_assert_eq!(BigUint::from(words.len()), a.count_accepted(len));
            // enumeration is sorted and duplicate-free
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted, words);
        }
    }

    #[test]
    fn automorphisms_preserve_grid_distance(
        w in word_strategy(2, 4),
        ax in -2i64..3,
        ay in -2i64..3,
        bx in -2i64..3,
        by in -2i64..3,
    ) {
        let act = CubeAction::grid(vec![9, 9]);
        let g = match &act.complex {
            cubefix::complex::Complex::Grid(g) => g,
            _ => unreachable!(),
        };
        let u = g.pack(&[4 + ax, 4 + ay]);
        let v = g.pack(&[4 + bx, 4 + by]);
        let fu = act.apply(&w, u).unwrap();
        let fv = act.apply(&w, v).unwrap();
        prop_assert_eq!(act.complex.distance(u, v), act.complex.distance(fu, fv));
    }
}
