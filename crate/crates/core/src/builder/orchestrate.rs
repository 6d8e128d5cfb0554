//! End-to-end automaton construction: per level, either every visible wall
//! receives a verified checkpoint tree and the family is realized, or the
//! build descends to a symmetric sub-alphabet with one fewer pairwise
//! crossing and recurses. Descent is mandatory when some wall has neither a
//! forward nor a backward fraction above the epsilon floor, and preferred
//! whenever a wall offers a non-empty symmetric parallel set.

use super::crossing::{build_wall_tree, WallTreeTrace};
use super::descent::{max_pairwise_crossing, subset_descent, DescentCert};
use super::dtable::{growth_schedule, GrowthSchedule};
use super::easy::{extend_tree_easy, start_tree};
use super::BuildError;
use crate::action::{CubeAction, VisibleWalls};
use crate::automaton::{
    check_lambda_large, realize, verify_checkpoint_tree, verify_progressing, Automaton,
    CheckpointTree, RootLabel,
};
use crate::complex::{Wall, V};
use crate::letters::Letter;
use crate::partition::{partition, PartitionResult};
use crate::rat::{show_q, Q};
use crate::Word;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct TreeTrace {
    pub wall: String,
    pub detail: WallTreeTrace,
}

/// What happened at one level of the recursion.
#[derive(Clone, Debug, Serialize)]
pub struct LevelTrace {
    pub level: usize,
    pub alphabet: Vec<String>,
    pub wall_count: usize,
    pub max_crossing: usize,
    pub descent: Option<DescentCert>,
    pub trees: Vec<TreeTrace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildTrace {
    pub eps0: String,
    pub lambda: String,
    pub gamma: Vec<String>,
    pub levels: Vec<LevelTrace>,
    pub vertex_bound: String,
    pub vertex_bound_ok: bool,
    pub growth_floor: String,
    pub growth_horizon: usize,
}

fn lt(count: usize, frac: &Q, of: usize) -> bool {
    BigInt::from(count) * frac.denom() < frac.numer() * BigInt::from(of)
}

fn ge(count: usize, frac: &Q, of: usize) -> bool {
    BigInt::from(count) * frac.denom() >= frac.numer() * BigInt::from(of)
}

fn wall_name(action: &CubeAction, w: Wall) -> String {
    let (a, b) = action.complex.rep_edge(w);
    format!(
        "{}~{}",
        action.complex.display_vertex(a),
        action.complex.display_vertex(b)
    )
}

/// Builds a verified progressing automaton for an action whose basepoint is
/// moved by every letter, assuming every visible wall keeps its backward
/// fraction at most `eps1` and at most `n` visible walls pairwise cross.
pub fn build_automaton(
    action: &CubeAction,
    x: V,
    n: usize,
    eps1: &Q,
) -> Result<(Automaton, BuildTrace), BuildError> {
    let letters: Vec<Letter> = action.alphabet.letters().collect();
    build_automaton_over(action, x, letters, n, eps1)
}

/// As [`build_automaton`], over an explicit symmetric sub-alphabet (used
/// when the fix-set of the basepoint has been stripped).
pub fn build_automaton_over(
    action: &CubeAction,
    x: V,
    letters: Vec<Letter>,
    n: usize,
    eps1: &Q,
) -> Result<(Automaton, BuildTrace), BuildError> {
    for &l in &letters {
        if action.apply_letter(l, x) == Some(x) {
            return Err(BuildError::PreconditionViolated(format!(
                "letter {} fixes the basepoint; use the fix-set automaton instead",
                action.alphabet.name(l)
            )));
        }
        if !letters.contains(&action.alphabet.inverse(l)) {
            return Err(BuildError::PreconditionViolated(
                "build alphabet must be symmetric".into(),
            ));
        }
    }
    let sched = growth_schedule(n, eps1)?;
    let full_vis = action.visible(x)?;
    let ambient = letters.len();
    let mut levels = Vec::new();
    let auto = build_level(action, x, letters, n, &sched, &full_vis, &mut levels)?;

    let size = ambient;
    let vertex_bound = BigUint::from(size * n + 1).pow(n as u32);
    let vertex_bound_ok = BigUint::from(auto.vertex_count()) <= vertex_bound;
    if !vertex_bound_ok {
        return Err(BuildError::Stalled {
            stage: n,
            detail: "vertex bound exceeded".into(),
        });
    }
    let cert = check_lambda_large(&auto, sched.gamma_at(n))
        .map_err(|f| BuildError::GrowthFloor(f.witness))?;
    let trace = BuildTrace {
        eps0: show_q(&sched.eps0),
        lambda: show_q(&sched.lambda),
        gamma: sched.gamma.iter().map(show_q).collect(),
        levels,
        vertex_bound: vertex_bound.to_string(),
        vertex_bound_ok,
        growth_floor: show_q(sched.gamma_at(n)),
        growth_horizon: cert.horizon,
    };
    Ok((auto, trace))
}

fn build_level(
    action: &CubeAction,
    x: V,
    letters: Vec<Letter>,
    level: usize,
    sched: &GrowthSchedule,
    full_vis: &VisibleWalls,
    levels: &mut Vec<LevelTrace>,
) -> Result<Automaton, BuildError> {
    let visible = full_vis.restrict(&letters);
    if visible.all.is_empty() {
        return Err(BuildError::PreconditionViolated(
            "no visible walls for the chosen letters".into(),
        ));
    }
    let crossing = max_pairwise_crossing(&action.complex, &visible.all);
    if crossing > level {
        return Err(BuildError::PreconditionViolated(format!(
            "{crossing} walls pairwise cross, above the level bound {level}"
        )));
    }
    let size = letters.len();
    let eps1_l = sched.eps1_at(level);
    let mut parts: BTreeMap<Wall, PartitionResult> = BTreeMap::new();
    for &h in &visible.all {
        let p = partition(action, x, &Word::empty(), h, &letters, &visible)?;
        if !ge_bound(p.backward.len(), &eps1_l, size) {
            return Err(BuildError::PreconditionViolated(format!(
                "backward fraction {}/{} above the level bound",
                p.backward.len(),
                size
            )));
        }
        parts.insert(h, p);
    }

    // descent decision
    let mut chosen: Option<(Wall, bool)> = None;
    if level >= 2 {
        for (&h, p) in &parts {
            if lt(p.forward.len(), &sched.eps0, size) && lt(p.backward.len(), &sched.eps0, size) {
                chosen = Some((h, true));
                break;
            }
        }
        if chosen.is_none() {
            let mut best: Option<(usize, Wall)> = None;
            for (&h, p) in &parts {
                let par = p.parallel();
                let sym = par
                    .iter()
                    .filter(|&&s| par.contains(&action.alphabet.inverse(s)))
                    .count();
                if sym > 0 && best.map(|(b, _)| sym > b).unwrap_or(true) {
                    best = Some((sym, h));
                }
            }
            chosen = best.map(|(_, h)| (h, false));
        }
    }
    if let Some((h, mandatory)) = chosen {
        let p = &parts[&h];
        let lambda_desc = Q::new(BigInt::from(p.parallel().len()), BigInt::from(size));
        let (subset, cert) = subset_descent(action, x, h, &lambda_desc, &letters, &visible)?;
        let feasible = !subset.is_empty()
            && cert.sub_crossing <= level - 1
            && sub_backward_ok(action, x, &subset, full_vis, &sched.eps1_at(level - 1))?;
        if feasible {
            levels.push(LevelTrace {
                level,
                alphabet: letters
                    .iter()
                    .map(|&l| action.alphabet.name(l).into())
                    .collect(),
                wall_count: visible.all.len(),
                max_crossing: crossing,
                descent: Some(cert),
                trees: Vec::new(),
            });
            return build_level(action, x, subset, level - 1, sched, full_vis, levels);
        }
        if mandatory {
            return Err(BuildError::Stalled {
                stage: level,
                detail: "mandatory descent is infeasible".into(),
            });
        }
    }

    // build one tree per wall and realize
    let mut trees = vec![start_tree(action, x, &letters, &visible)?];
    let mut tree_traces = Vec::new();
    for &h in &visible.all {
        let p = &parts[&h];
        if ge(p.backward.len(), &sched.eps0, size) {
            let (t, tr) = build_wall_tree(
                action,
                x,
                h,
                &sched.eps0,
                &eps1_l,
                level,
                &letters,
                &visible,
            )?;
            tree_traces.push(TreeTrace {
                wall: wall_name(action, h),
                detail: tr,
            });
            trees.push(t);
        } else {
            // forward letters dominate at this wall
            let lambda = if level == 1 {
                Q::one() - &eps1_l
            } else {
                sched.eps0.clone()
            };
            let t = CheckpointTree::new(RootLabel::Wall(h));
            let (mut t, _) = extend_tree_easy(t, h, action, x, &lambda, &letters, &visible)?;
            t.claimed_growth = Some(lambda.clone());
            verify_checkpoint_tree(&t, action, x, &visible)?;
            let depth = t.depth();
            tree_traces.push(TreeTrace {
                wall: wall_name(action, h),
                detail: WallTreeTrace {
                    route: "easy".into(),
                    stages: Vec::new(),
                    depth,
                    growth: show_q(&lambda),
                },
            });
            trees.push(t);
        }
    }
    let mut auto = realize(&trees, &action.alphabet)?;
    if letters.len() < action.alphabet.size() {
        auto.active_letters = Some(letters.clone());
    }
    verify_progressing(&auto, action, x, None).map_err(|e| BuildError::Stalled {
        stage: level,
        detail: format!("progression verification failed: {e}"),
    })?;
    check_lambda_large(&auto, sched.gamma_at(level))
        .map_err(|f| BuildError::GrowthFloor(f.witness))?;
    levels.push(LevelTrace {
        level,
        alphabet: letters
            .iter()
            .map(|&l| action.alphabet.name(l).into())
            .collect(),
        wall_count: visible.all.len(),
        max_crossing: crossing,
        descent: None,
        trees: tree_traces,
    });
    Ok(auto)
}

fn ge_bound(count: usize, frac: &Q, of: usize) -> bool {
    // count <= frac * of
    BigInt::from(count) * frac.denom() <= frac.numer() * BigInt::from(of)
}

fn sub_backward_ok(
    action: &CubeAction,
    x: V,
    subset: &[Letter],
    full_vis: &VisibleWalls,
    eps1_sub: &Q,
) -> Result<bool, BuildError> {
    let sub_vis = full_vis.restrict(subset);
    for &h in &sub_vis.all {
        let p = partition(action, x, &Word::empty(), h, subset, &sub_vis)?;
        if !ge_bound(p.backward.len(), eps1_sub, subset.len()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::verify_accepted_words_move;
    use crate::rat::q;

    #[test]
    fn tree_ball_builds_the_no_backtrack_automaton() {
        let act = CubeAction::tree_ball(2, 12);
        let x = act.basepoint;
        let (auto, trace) = build_automaton(&act, x, 1, &q(1, 4)).unwrap();
        assert_eq!(auto.vertex_count(), 5);
        assert!(trace.vertex_bound_ok);
        assert_eq!(trace.gamma, vec!["3/4"]);
        assert_eq!(trace.levels.len(), 1);
        assert!(trace.levels[0].descent.is_none());
        // language equals freely reduced words
        for len in 0..=8usize {
            let words = auto.accepted_words(len);
            let expect = num_bigint::BigUint::from(4u32)
                * num_bigint::BigUint::from(3u32).pow(len.max(1) as u32 - 1);
            if len == 0 {
                assert_eq!(words.len(), 1);
            } else {
                assert_eq!(num_bigint::BigUint::from(words.len()), expect);
            }
            assert!(words.iter().all(|w| w.is_reduced(&act.alphabet)));
        }
        let cert = check_lambda_large(&auto, &q(3, 4)).unwrap();
        assert_eq!(cert.horizon, 1);
    }

    #[test]
    fn grid_builds_through_descent() {
        let act = CubeAction::grid(vec![9, 9]);
        let x = act.basepoint;
        let (auto, trace) = build_automaton(&act, x, 2, &q(1, 2)).unwrap();
        assert_eq!(trace.levels.len(), 2);
        let first = &trace.levels[0];
        assert_eq!(first.level, 2);
        let cert = first.descent.as_ref().expect("descends at the top level");
        assert!(cert.size_bound_ok);
        assert!(cert.all_cross_wall);
        assert_eq!(cert.sub_crossing, 1);
        assert_eq!(auto.vertex_count(), 3);
        assert_eq!(auto.effective_alphabet_size(), 2);
        verify_progressing(&auto, &act, x, None).unwrap();
        verify_accepted_words_move(&auto, &act, x, 8).unwrap();
    }

    #[test]
    fn fixed_basepoint_rejected() {
        let g = crate::median::MedianGraph::validate(&crate::corpus::path(3)).unwrap();
        let act = CubeAction::explicit(g, vec![vec![2, 1, 0]], 0).unwrap();
        match build_automaton(&act, V(1), 1, &q(1, 2)) {
            Err(BuildError::PreconditionViolated(_)) => {}
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn cyclic_z3_end_to_end() {
        use crate::complex::Affine;
        let g = Affine {
            perm: vec![2, 0, 1],
            signs: vec![1, 1, 1],
            offset: vec![1, 0, 0],
        };
        let act = CubeAction::grid_affine(vec![9, 9, 9], vec![g]);
        let x = act.basepoint;
        let (auto, trace) = build_automaton(&act, x, 3, &q(1, 2)).unwrap();
        // no symmetric parallel set exists, so no descent: crossing trees
        assert_eq!(trace.levels.len(), 1);
        assert!(trace.levels[0].descent.is_none());
        let routes: Vec<&str> = trace.levels[0]
            .trees
            .iter()
            .map(|t| t.detail.route.as_str())
            .collect();
        assert!(routes.iter().all(|&r| r == "crossing"));
        verify_accepted_words_move(&auto, &act, x, 8).unwrap();
    }
}
