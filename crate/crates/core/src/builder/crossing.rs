//! Checkpoint trees at walls with a non-trivial backward set.
//!
//! When one of the forward or parallel sets dominates, a single easy
//! extension finishes the tree. Otherwise almost every letter is crossing
//! parallel, and the tree is grown stage by stage from those letters:
//! leaves are classified by their own partitions, the classification is
//! propagated to the root, and depending on the root's class the tree is
//! either pruned and closed with an easy extension, or filtered down to its
//! maximal star subtree and regrown one generation deeper. Every stage is
//! checked against the branching table and the pairwise-crossing
//! certificate of its prefix translates; the stage count is bounded by the
//! crossing bound of the visible walls.

use super::dtable::{alpha_raw, eps_threshold, BranchingTable};
use super::easy::extend_tree_easy;
use super::{descent::max_pairwise_crossing, BuildError};
use crate::action::{CubeAction, VisibleWalls};
use crate::automaton::{check_star, verify_checkpoint_tree, CheckpointTree, RootLabel};
use crate::complex::{Wall, V};
use crate::letters::{Letter, Word};
use crate::median::Crossing;
use crate::partition::partition;
use crate::rat::{qi, Q};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct StageTrace {
    pub stage: usize,
    pub class_one_leaves: usize,
    pub class_two_leaves: usize,
    pub root_class_one: bool,
    pub pruned: usize,
    pub star_ok: bool,
    pub branching_ok: bool,
    pub crossing_cert_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallTreeTrace {
    pub route: String,
    pub stages: Vec<StageTrace>,
    pub depth: usize,
    pub growth: String,
}

fn ge(count: usize, frac: &Q, of: usize) -> bool {
    BigInt::from(count) * frac.denom() >= frac.numer() * BigInt::from(of)
}

fn gt(count: usize, frac: &Q, of: usize) -> bool {
    BigInt::from(count) * frac.denom() > frac.numer() * BigInt::from(of)
}

/// Rebuilds the subtree on the kept vertices connected to the root.
fn subtree_keeping(tree: &CheckpointTree, keep: &[bool]) -> CheckpointTree {
    let mut out = CheckpointTree::new(tree.root_label);
    let mut map = vec![u32::MAX; tree.nodes.len()];
    map[0] = 0;
    let mut stack = vec![0u32];
    while let Some(v) = stack.pop() {
        for &c in &tree.nodes[v as usize].children {
            if keep[c as usize] {
                let nc = out.add_child(map[v as usize], tree.nodes[c as usize].letter.unwrap());
                out.nodes[nc as usize].leaf_label = tree.nodes[c as usize].leaf_label;
                map[c as usize] = nc;
                stack.push(c);
            }
        }
    }
    out
}

/// Maximal rooted subtree with the star property, grown depth by depth: at
/// each deepest vertex only the child labels shared by every rooted suffix
/// re-anchor survive.
pub(crate) fn max_star_subtree(
    tree: &CheckpointTree,
    depth: usize,
) -> Result<CheckpointTree, BuildError> {
    let mut out = CheckpointTree::new(tree.root_label);
    // depth-1 layer transfers whole
    let mut frontier: Vec<(u32, u32)> = Vec::new(); // (node in `tree`, node in `out`)
    for &c in &tree.nodes[0].children {
        let nc = out.add_child(0, tree.nodes[c as usize].letter.unwrap());
        frontier.push((c, nc));
    }
    for _layer in 1..depth {
        let mut next = Vec::new();
        for &(tv, ov) in &frontier {
            let word = out.word_of(ov);
            let mut allowed: Option<Vec<Letter>> = None;
            for suf in word.suffixes() {
                if suf.len() == word.len() {
                    continue;
                }
                let anchor = out.node_at(&suf).ok_or_else(|| BuildError::Stalled {
                    stage: word.len(),
                    detail: "star filtration lost a suffix anchor".into(),
                })?;
                let labels = out.child_labels(anchor);
                allowed = Some(match allowed {
                    None => labels,
                    Some(prev) => prev.into_iter().filter(|l| labels.contains(l)).collect(),
                });
            }
            for &c in &tree.nodes[tv as usize].children {
                let l = tree.nodes[c as usize].letter.unwrap();
                let ok = allowed.as_ref().map(|a| a.contains(&l)).unwrap_or(true);
                if ok {
                    let nc = out.add_child(ov, l);
                    next.push((c, nc));
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

fn crossing_certificate(
    action: &CubeAction,
    x: V,
    wall: Wall,
    tree: &CheckpointTree,
) -> Result<bool, BuildError> {
    let _ = x;
    for v in 0..tree.nodes.len() as u32 {
        let word = tree.word_of(v);
        let mut translates = Vec::new();
        for p in word.prefixes() {
            translates.push(action.translate_wall(&p, wall)?);
        }
        for i in 0..translates.len() {
            for j in i + 1..translates.len() {
                if action.complex.crossing(translates[i], translates[j]) != Crossing::Cross {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Builds a verified checkpoint tree at a wall whose backward fraction lies
/// in `[eps0, eps1]`, assuming at most `n` visible walls pairwise cross.
pub fn build_wall_tree(
    action: &CubeAction,
    x: V,
    wall: Wall,
    eps0: &Q,
    eps1: &Q,
    n: usize,
    letters: &[Letter],
    visible: &VisibleWalls,
) -> Result<(CheckpointTree, WallTreeTrace), BuildError> {
    let size = letters.len();
    if eps0 > &eps_threshold(n)? {
        return Err(BuildError::OutOfRange(
            "eps0 exceeds the grid threshold for this crossing bound".into(),
        ));
    }
    if max_pairwise_crossing(&action.complex, &visible.all) > n {
        return Err(BuildError::PreconditionViolated(
            "more walls pairwise cross than the stated bound".into(),
        ));
    }
    let p0 = partition(action, x, &Word::empty(), wall, letters, visible)?;
    let b_len = p0.backward.len();
    if !ge(b_len, eps0, size) || gt(b_len, eps1, size) {
        return Err(BuildError::PreconditionViolated(format!(
            "backward fraction {b_len}/{size} outside [eps0, eps1]"
        )));
    }
    let f: Vec<Letter> = letters
        .iter()
        .copied()
        .filter(|l| !p0.backward.contains(l))
        .collect();
    let f_len = f.len();

    // easy route when a non-crossing set already dominates
    let easy = ge(p0.forward.len(), eps0, f_len)
        || ge(p0.par_visible.len(), eps0, f_len)
        || ge(p0.par_disjoint.len(), eps0, f_len);
    if easy {
        let lambda = eps0 * (Q::one() - eps1);
        let t = CheckpointTree::new(RootLabel::Wall(wall));
        let (mut t, _) = extend_tree_easy(t, wall, action, x, &lambda, letters, visible)?;
        t.claimed_growth = Some(lambda.clone());
        verify_checkpoint_tree(&t, action, x, visible)?;
        let depth = t.depth();
        return Ok((
            t,
            WallTreeTrace {
                route: "easy".into(),
                stages: Vec::new(),
                depth,
                growth: crate::rat::show_q(&lambda),
            },
        ));
    }

    // crossing route
    let one_minus_3e = Q::one() - qi(3) * eps0;
    if !ge(p0.par_crossing.len(), &one_minus_3e, f_len) {
        return Err(BuildError::Stalled {
            stage: 0,
            detail: "crossing-parallel set unexpectedly small".into(),
        });
    }
    let table = BranchingTable::new(eps0, n.max(1))?;
    let mut tree = CheckpointTree::new(RootLabel::Wall(wall));
    for &s in &p0.par_crossing {
        tree.add_child(0, s);
    }
    let mut stages = Vec::new();
    let mut stage = 1usize;
    loop {
        if stage > n.saturating_sub(1).max(1) {
            return Err(BuildError::Stalled {
                stage,
                detail: "stage bound exceeded".into(),
            });
        }
        // classify leaves
        let leaves = tree.leaves();
        let mut class_one = vec![false; tree.nodes.len()];
        let (mut c1, mut c2) = (0usize, 0usize);
        for &v in &leaves {
            if tree.depth_of(v) != stage {
                return Err(BuildError::Stalled {
                    stage,
                    detail: "leaf at unexpected depth".into(),
                });
            }
            let w = tree.word_of(v);
            let part = partition(action, x, &w, wall, letters, visible)?;
            if !part.backward.is_empty() {
                return Err(BuildError::Stalled {
                    stage,
                    detail: "backward set reappeared along a crossing word".into(),
                });
            }
            let in_f = |set: &[Letter]| set.iter().filter(|s| f.contains(s)).count();
            let one = gt(in_f(&part.forward), eps0, f_len)
                || gt(in_f(&part.par_visible), eps0, f_len)
                || gt(in_f(&part.par_disjoint), eps0, f_len);
            if one {
                class_one[v as usize] = true;
                c1 += 1;
            } else {
                if !ge(in_f(&part.par_crossing), &one_minus_3e, f_len) {
                    return Err(BuildError::Stalled {
                        stage,
                        detail: "class-two leaf below the crossing floor".into(),
                    });
                }
                c2 += 1;
            }
        }
        // propagate rootward by decreasing depth
        let mut order: Vec<u32> = (0..tree.nodes.len() as u32).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(tree.depth_of(v)));
        for &v in &order {
            if tree.is_leaf(v) {
                continue;
            }
            let kids = &tree.nodes[v as usize].children;
            let ones = kids.iter().filter(|&&c| class_one[c as usize]).count();
            class_one[v as usize] = ge(ones, eps0, kids.len());
        }
        let root_one = class_one[0];
        // component of the root within the chosen class
        let mut keep = vec![false; tree.nodes.len()];
        keep[0] = true;
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            for &c in &tree.nodes[v as usize].children {
                if class_one[c as usize] == root_one {
                    keep[c as usize] = true;
                    stack.push(c);
                }
            }
        }
        let pruned = keep.iter().filter(|&&k| !k).count();
        let kept = subtree_keeping(&tree, &keep);

        if root_one {
            // branching floor on the pruned tree: eps0 * entry(stage, depth)
            let mut branching_ok = true;
            for v in 0..kept.nodes.len() as u32 {
                if kept.is_leaf(v) {
                    continue;
                }
                let j = kept.depth_of(v);
                let floor = eps0 * table.entry(stage.min(n), j.min(stage.min(n) - 1));
                if !ge(kept.nodes[v as usize].children.len(), &floor, f_len) {
                    branching_ok = false;
                }
            }
            let cert = crossing_certificate(action, x, wall, &kept)?;
            let lambda = alpha_raw(eps0, eps1, n)?;
            let (mut done, _) = extend_tree_easy(kept, wall, action, x, &lambda, letters, visible)?;
            done.claimed_growth = Some(lambda.clone());
            verify_checkpoint_tree(&done, action, x, visible)?;
            stages.push(StageTrace {
                stage,
                class_one_leaves: c1,
                class_two_leaves: c2,
                root_class_one: true,
                pruned,
                star_ok: true,
                branching_ok,
                crossing_cert_ok: cert,
            });
            if !branching_ok || !cert {
                return Err(BuildError::Stalled {
                    stage,
                    detail: "stage invariants failed on the pruned tree".into(),
                });
            }
            let depth = done.depth();
            return Ok((
                done,
                WallTreeTrace {
                    route: "crossing".into(),
                    stages,
                    depth,
                    growth: crate::rat::show_q(&lambda),
                },
            ));
        }

        // root in class two: star filtration then one more generation
        let star = max_star_subtree(&kept, stage)?;
        let mut grown = star.clone();
        let mut extended = 0usize;
        for v in star.leaves() {
            if star.depth_of(v) != stage {
                continue;
            }
            let w = star.word_of(v);
            let part = partition(action, x, &w, wall, letters, visible)?;
            let mut allowed: Vec<Letter> = part
                .par_crossing
                .iter()
                .copied()
                .filter(|l| f.contains(l))
                .collect();
            for suf in w.suffixes() {
                if suf.len() == w.len() {
                    continue;
                }
                let anchor = star.node_at(&suf).ok_or_else(|| BuildError::Stalled {
                    stage,
                    detail: "suffix anchor missing during extension".into(),
                })?;
                let labels = star.child_labels(anchor);
                allowed.retain(|l| labels.contains(l));
            }
            for s in allowed {
                grown.add_child(v, s);
                extended += 1;
            }
        }
        if extended == 0 {
            return Err(BuildError::Stalled {
                stage,
                detail: "class-two extension added no edges".into(),
            });
        }
        let star_ok = check_star(&grown);
        let mut branching_ok = true;
        for v in 0..grown.nodes.len() as u32 {
            if grown.is_leaf(v) {
                continue;
            }
            let j = grown.depth_of(v);
            let next_stage = (stage + 1).min(n);
            let floor = table.entry(next_stage, j.min(next_stage - 1));
            if !ge(grown.nodes[v as usize].children.len(), floor, f_len) {
                branching_ok = false;
            }
        }
        let cert = crossing_certificate(action, x, wall, &grown)?;
        stages.push(StageTrace {
            stage,
            class_one_leaves: c1,
            class_two_leaves: c2,
            root_class_one: false,
            pruned,
            star_ok,
            branching_ok,
            crossing_cert_ok: cert,
        });
        if !star_ok || !branching_ok || !cert {
            return Err(BuildError::Stalled {
                stage,
                detail: "stage invariants failed after the class-two step".into(),
            });
        }
        tree = grown;
        stage += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ProdGen;
    use crate::complex::Affine;
    use crate::letters::{parse_word, Alphabet};
    use crate::rat::q;

    fn full_letters(a: &CubeAction) -> Vec<Letter> {
        a.alphabet.letters().collect()
    }

    #[test]
    fn tree_ball_goes_easy_route() {
        // one-dimensional visible set: forward letters dominate immediately
        let act = CubeAction::tree_ball(2, 8);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let h = vis.per_letter[0][0];
        let (t, trace) =
            build_wall_tree(&act, x, h, &q(1, 8), &q(1, 4), 1, &full_letters(&act), &vis).unwrap();
        assert_eq!(trace.route, "easy");
        assert!(t.depth() <= 2);
        assert_eq!(t.nodes[0].children.len(), 3);
    }

    #[test]
    fn grid_goes_easy_route_via_parallel() {
        let act = CubeAction::grid(vec![9, 9]);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let h = vis.per_letter[0][0];
        let (t, trace) = build_wall_tree(
            &act,
            x,
            h,
            &q(1, 10),
            &q(1, 2),
            2,
            &full_letters(&act),
            &vis,
        )
        .unwrap();
        assert_eq!(trace.route, "easy");
        // forward a' plus visibly parallel b, b'
        assert_eq!(t.nodes[0].children.len(), 3);
    }

    #[test]
    fn swap_product_takes_crossing_route() {
        // multiply-and-swap on a product of trees: every non-backward letter
        // is crossing parallel at the root, and the first stage closes with
        // a forward extension two levels down
        let factor = Alphabet::base(2);
        let act = CubeAction::tree_prod(
            2,
            8,
            vec![ProdGen {
                swap: true,
                left1: parse_word("a", &factor).unwrap(),
                left2: Word::empty(),
            }],
        );
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let h = vis.per_letter[Letter::gen(0).index()][0];
        let (t, trace) =
            build_wall_tree(&act, x, h, &q(1, 8), &q(1, 2), 2, &full_letters(&act), &vis).unwrap();
        assert_eq!(trace.route, "crossing");
        assert_eq!(trace.stages.len(), 1);
        assert!(trace.stages[0].root_class_one);
        assert!(trace.stages[0].crossing_cert_ok);
        assert!(t.depth() <= 2);
        let vis2 = vis.clone();
        verify_checkpoint_tree(&t, &act, x, &vis2).unwrap();
    }

    #[test]
    fn cyclic_grid_runs_a_class_two_stage() {
        // rotate-and-translate on Z^3: the crossing chain spirals through
        // all three axes before a forward letter appears, so the root lands
        // in class two at the first stage
        let g = Affine {
            perm: vec![2, 0, 1],
            signs: vec![1, 1, 1],
            offset: vec![1, 0, 0],
        };
        let act = CubeAction::grid_affine(vec![9, 9, 9], vec![g]);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        assert_eq!(vis.all.len(), 2);
        let h = vis.per_letter[Letter::gen(0).index()][0];
        let (t, trace) = build_wall_tree(
            &act,
            x,
            h,
            &q(1, 32),
            &q(1, 2),
            3,
            &full_letters(&act),
            &vis,
        )
        .unwrap();
        assert_eq!(trace.route, "crossing");
        assert_eq!(trace.stages.len(), 2);
        assert!(!trace.stages[0].root_class_one);
        assert!(trace.stages[0].star_ok);
        assert!(trace.stages[1].root_class_one);
        assert_eq!(t.depth(), 3);
        verify_checkpoint_tree(&t, &act, x, &vis).unwrap();
    }

    #[test]
    fn star_filtration_on_synthetic_tree() {
        let a = Letter::gen(0);
        let b = Letter::gen(1);
        // every child set is allowed by every suffix anchor: nothing is cut
        let mut t = CheckpointTree::new(RootLabel::Start);
        let va = t.add_child(0, a);
        let vb = t.add_child(0, b);
        t.add_child(va, a);
        t.add_child(va, b);
        t.add_child(vb, b);
        assert!(check_star(&t));
        let star = max_star_subtree(&t, 2).unwrap();
        assert_eq!(star.nodes.len(), t.nodes.len());
        assert!(check_star(&star));

        // a label missing at the root cuts the deeper edge: the path "b"
        // into the a-subtree has no rooted lift
        let mut t2 = CheckpointTree::new(RootLabel::Start);
        let va = t2.add_child(0, a);
        t2.add_child(va, a);
        t2.add_child(va, b);
        assert!(!check_star(&t2));
        let star2 = max_star_subtree(&t2, 2).unwrap();
        assert!(check_star(&star2));
        assert_eq!(star2.nodes.len(), 3); // root, a, aa
        assert_eq!(star2.depth(), 2);

        // three layers: a child label must recur along every suffix
        // re-anchor, so "ab" keeps no b-child when "b" only offers a
        let mut t3 = CheckpointTree::new(RootLabel::Start);
        let va = t3.add_child(0, a);
        let vb = t3.add_child(0, b);
        let vaa = t3.add_child(va, a);
        let vab = t3.add_child(va, b);
        t3.add_child(vb, a);
        t3.add_child(vaa, b);
        t3.add_child(vab, b);
        // the path b, b starting at va has no rooted lift
        assert!(!check_star(&t3));
        let star3 = max_star_subtree(&t3, 3).unwrap();
        assert!(check_star(&star3));
        assert!(star3.node_at(&Word(vec![a, b])).is_some());
        assert!(star3.node_at(&Word(vec![a, b, b])).is_none());
        assert!(star3.node_at(&Word(vec![a, a, b])).is_some());
    }

    #[test]
    fn stage_bound_respected() {
        // the class-two machinery never exceeds depth n-1 before closing
        let g = Affine {
            perm: vec![2, 0, 1],
            signs: vec![1, 1, 1],
            offset: vec![1, 0, 0],
        };
        let act = CubeAction::grid_affine(vec![9, 9, 9], vec![g]);
        let x = act.basepoint;
        let vis = act.visible(x).unwrap();
        let h = vis.per_letter[Letter::gen(0).index()][0];
        // with n = 2 the same action must stall instead of overrunning
        let r = build_wall_tree(&act, x, h, &q(1, 8), &q(1, 2), 2, &full_letters(&act), &vis);
        assert!(matches!(r, Err(BuildError::Stalled { .. })));
    }
}
