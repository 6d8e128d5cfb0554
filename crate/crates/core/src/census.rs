//! Exhaustive enumeration of small median graphs and their automorphisms.
//!
//! Median graphs are bipartite, so the census generates connected bipartite
//! graphs up to isomorphism by vertex augmentation with canonical-form
//! deduplication, then filters through full median validation. Intended
//! range: at most 8 vertices.

use crate::median::{MedianGraph, RawGraph};
use std::collections::HashSet;

/// A labeled graph as an adjacency bitmask per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Small {
    n: usize,
    adj: Vec<u16>,
}

impl Small {
    fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.n];
        for s in 0..self.n {
            if color[s] >= 0 {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..self.n {
                    if self.edge(v, w) {
                        if color[w] < 0 {
                            color[w] = 1 - color[v];
                            stack.push(w);
                        } else if color[w] == color[v] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if self.edge(v, w) && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Minimal adjacency encoding over degree-respecting relabelings.
    fn canonical(&self) -> Vec<u16> {
        let n = self.n;
        let degs: Vec<usize> = (0..n)
            .map(|v| (0..n).filter(|&w| self.edge(v, w)).count())
            .collect();
        let mut slot_degs = degs.clone();
        slot_degs.sort_unstable();
        let mut best: Option<Vec<u16>> = None;
        each_assignment(&slot_degs, &degs, &mut |p: &[usize]| {
            // p[slot] = original vertex placed in that slot
            let mut pos = vec![0usize; n];
            for (slot, &v) in p.iter().enumerate() {
                pos[v] = slot;
            }
            let mut enc = vec![0u16; n];
            for u in 0..n {
                for v in 0..n {
                    if self.edge(u, v) {
                        enc[pos[u]] |= 1 << pos[v];
                    }
                }
            }
            match &best {
                Some(b) if *b <= enc => {}
                _ => best = Some(enc),
            }
        });
        best.unwrap()
    }
}

/// Calls `f` with every injective assignment of vertices to slots such that
/// the vertex in slot `i` has degree `target[i]`.
fn each_assignment(target: &[usize], degs: &[usize], f: &mut impl FnMut(&[usize])) {
    let n = degs.len();
    let mut used = vec![false; n];
    let mut assign = vec![0usize; n];
    fn rec(
        at: usize,
        n: usize,
        target: &[usize],
        degs: &[usize],
        used: &mut Vec<bool>,
        assign: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if at == n {
            f(assign);
            return;
        }
        for v in 0..n {
            if !used[v] && degs[v] == target[at] {
                used[v] = true;
                assign[at] = v;
                rec(at + 1, n, target, degs, used, assign, f);
                used[v] = false;
            }
        }
    }
    rec(0, n, target, degs, &mut used, &mut assign, f);
}

fn to_raw(g: &Small) -> RawGraph {
    let vertices: Vec<String> = (0..g.n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for u in 0..g.n {
        for v in u + 1..g.n {
            if g.edge(u, v) {
                edges.push((u.to_string(), v.to_string()));
            }
        }
    }
    RawGraph { vertices, edges }
}

/// All connected median graphs with 1..=n vertices, up to isomorphism.
pub fn median_graphs_up_to(n: usize) -> Vec<MedianGraph> {
    assert!(n <= 8, "census is sized for at most 8 vertices");
    // level sets of bipartite graphs (connected or not) up to isomorphism
    let mut level: Vec<Small> = vec![Small { n: 1, adj: vec![0] }];
    let mut out: Vec<MedianGraph> = vec![MedianGraph::validate(&to_raw(&level[0])).unwrap()];
    for size in 2..=n {
        let mut next: Vec<Small> = Vec::new();
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        for g in &level {
            for mask in 0..(1u16 << (size - 1)) {
                let mut adj = g.adj.clone();
                adj.push(mask);
                for v in 0..size - 1 {
                    if mask >> v & 1 == 1 {
                        adj[v] |= 1 << (size - 1);
                    }
                }
                let h = Small { n: size, adj };
                if !h.is_bipartite() {
                    continue;
                }
                if seen.insert(h.canonical()) {
                    next.push(h);
                }
            }
        }
        for h in &next {
            if h.is_connected() {
                if let Ok(m) = MedianGraph::validate(&to_raw(h)) {
                    out.push(m);
                }
            }
        }
        level = next;
    }
    out
}

/// All automorphisms of a small graph, as vertex maps.
pub fn automorphisms(g: &MedianGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let degs: Vec<usize> = (0..n).map(|v| g.adj[v].len()).collect();
    let mut out = Vec::new();
    each_assignment(&degs, &degs, &mut |p: &[usize]| {
        let ok = g
            .edges
            .iter()
            .all(|&(u, v)| g.distance(p[u as usize] as u32, p[v as usize] as u32) == 1);
        if ok {
            out.push(p.iter().map(|&x| x as u32).collect());
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_match_the_classical_sequence() {
        // trees = 1-dimensional median graphs; counts 1,1,1,2,3,6,11,23
        let all = median_graphs_up_to(8);
        let mut per_size = vec![0usize; 9];
        for g in &all {
            if g.vertex_count() == 1 || g.dimension() == 1 {
                per_size[g.vertex_count()] += 1;
            }
        }
        assert_eq!(&per_size[1..=8], &[1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn notable_members_present() {
        let all = median_graphs_up_to(8);
        // the square shows up at 4 vertices, the 3-cube at 8
        assert!(all
            .iter()
            .any(|g| g.vertex_count() == 4 && g.class_count() == 2));
        assert!(all
            .iter()
            .any(|g| g.vertex_count() == 8 && g.dimension() == 3));
        // 2x3 grid at 6 vertices
        assert!(all
            .iter()
            .any(|g| g.vertex_count() == 6 && g.dimension() == 2));
    }

    #[test]
    fn automorphism_counts() {
        use crate::corpus;
        let sq = MedianGraph::validate(&corpus::grid(2, 2)).unwrap();
        assert_eq!(automorphisms(&sq).len(), 8);
        let p3 = MedianGraph::validate(&corpus::path(3)).unwrap();
        assert_eq!(automorphisms(&p3).len(), 2);
        let cube = MedianGraph::validate(&corpus::cube3()).unwrap();
        assert_eq!(automorphisms(&cube).len(), 48);
    }
}
