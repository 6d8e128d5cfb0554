//! Passing to a symmetric subset of the generators whose visible walls all
//! cross a fixed wall, dropping the pairwise-crossing bound by one.

use super::BuildError;
use crate::action::{CubeAction, VisibleWalls};
use crate::complex::{Complex, Wall, V};
use crate::letters::{Letter, Word};
use crate::median::Crossing;
use crate::partition::partition;
use crate::rat::{qi, Q};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

/// Largest set of pairwise-crossing walls, by exact search with pruning.
pub fn max_pairwise_crossing(cx: &Complex, walls: &[Wall]) -> usize {
    let k = walls.len();
    if k == 0 {
        return 0;
    }
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            if cx.crossing(walls[i], walls[j]) == Crossing::Cross {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    fn grow(adj: &Vec<Vec<bool>>, cand: Vec<usize>, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        if size + cand.len() <= *best {
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&w| adj[v][w])
                .collect();
            grow(adj, next, size + 1, best);
        }
    }
    let mut best = 0;
    grow(&adj, (0..k).collect(), 0, &mut best);
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentCert {
    /// |subset| >= (2 lambda - 1) |letters| held exactly.
    pub size_bound_ok: bool,
    pub subset_size: usize,
    pub parent_size: usize,
    pub lambda: String,
    /// Every visible wall of a parallel letter crosses the descent wall.
    pub all_cross_wall: bool,
    /// Pairwise-crossing bound of the subset's visible walls.
    pub sub_crossing: usize,
    pub sub_wall_count: usize,
}

/// Intersects the parallel set of `(empty, wall)` with its own inverses to
/// produce a symmetric sub-alphabet whose visible walls all cross `wall`.
/// Requires a parallel fraction of at least `lambda` and a free basepoint.
pub fn subset_descent(
    action: &CubeAction,
    x: V,
    wall: Wall,
    lambda: &Q,
    letters: &[Letter],
    visible: &VisibleWalls,
) -> Result<(Vec<Letter>, DescentCert), BuildError> {
    let size = letters.len();
    for &l in letters {
        if action.apply_letter(l, x) == Some(x) {
            return Err(BuildError::PreconditionViolated(format!(
                "letter {} fixes the basepoint",
                action.alphabet.name(l)
            )));
        }
    }
    let part = partition(action, x, &Word::empty(), wall, letters, visible)?;
    let parallel = part.parallel();
    if BigInt::from(parallel.len()) * lambda.denom() < lambda.numer() * BigInt::from(size) {
        return Err(BuildError::PreconditionViolated(format!(
            "parallel fraction {}/{} below lambda",
            parallel.len(),
            size
        )));
    }
    let subset: Vec<Letter> = parallel
        .iter()
        .copied()
        .filter(|&s| parallel.contains(&action.alphabet.inverse(s)))
        .collect();
    // |subset| >= (2 lambda - 1) |letters|
    let two_lambda_minus_one = qi(2) * lambda - Q::one();
    let size_bound_ok = BigInt::from(subset.len()) * two_lambda_minus_one.denom()
        >= two_lambda_minus_one.numer() * BigInt::from(size);
    // walls visible through parallel letters all cross the descent wall
    let mut all_cross = true;
    let mut par_walls: Vec<Wall> = Vec::new();
    for &s in &parallel {
        for &w in &visible.per_letter[s.index()] {
            par_walls.push(w);
        }
    }
    par_walls.sort_unstable();
    par_walls.dedup();
    for &w in &par_walls {
        if action.complex.crossing(w, wall) != Crossing::Cross {
            all_cross = false;
        }
    }
    let sub_walls = action.visible_for(x, &subset)?;
    let cert = DescentCert {
        size_bound_ok,
        subset_size: subset.len(),
        parent_size: size,
        lambda: crate::rat::show_q(lambda),
        all_cross_wall: all_cross,
        sub_crossing: max_pairwise_crossing(&action.complex, &sub_walls),
        sub_wall_count: sub_walls.len(),
    };
    Ok((subset, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn grid_descends_to_the_parallel_pair() {
        let act = CubeAction::grid(vec![9, 9]);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let letters: Vec<Letter> = act.alphabet.letters().collect();
        let h = vis.per_letter[Letter::gen(0).index()][0];
        let (subset, cert) = subset_descent(&act, x, h, &q(1, 2), &letters, &vis).unwrap();
        assert_eq!(subset, vec![Letter::gen(1), Letter::gen_inv(1)]);
        assert!(cert.size_bound_ok); // 2 >= 0
        assert!(cert.all_cross_wall);
        assert_eq!(cert.sub_crossing, 1); // the two horizontal walls are parallel
        assert_eq!(cert.sub_wall_count, 2);
    }

    #[test]
    fn tree_ball_has_nothing_parallel() {
        let act = CubeAction::tree_ball(2, 6);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let letters: Vec<Letter> = act.alphabet.letters().collect();
        let h = vis.per_letter[0][0];
        let r = subset_descent(&act, x, h, &q(1, 2), &letters, &vis);
        assert!(matches!(r, Err(BuildError::PreconditionViolated(_))));
    }

    #[test]
    fn crossing_counts() {
        let act = CubeAction::grid(vec![5, 5, 5]);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        assert_eq!(max_pairwise_crossing(&act.complex, &vis.all), 3);
    }
}
