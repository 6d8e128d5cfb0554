//! Large-growth certificates: beyond a finite horizon every reachable state
//! must branch over at least a fixed fraction of the alphabet.

use super::Automaton;
use crate::rat::Q;
use num_bigint::BigInt;

/// Witness that every path of length >= `horizon` from the start ends on a
/// vertex with at least `lambda * |alphabet|` distinct out-labels.
#[derive(Clone, Debug)]
pub struct GrowthCertificate {
    pub lambda: Q,
    pub horizon: usize,
    /// Per-vertex classification (true = large), indexed by vertex id.
    pub large: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct GrowthFailure {
    /// A non-large vertex reachable at unbounded path lengths.
    pub witness: u32,
}

fn is_large(a: &Automaton, v: u32, lambda: &Q) -> bool {
    // count >= lambda * size  <=>  count * den >= num * size
    let count = BigInt::from(a.out_label_count(v));
    let size = BigInt::from(a.effective_alphabet_size());
    count * lambda.denom() >= lambda.numer() * size
}

/// Decides lambda-large growth. A non-large vertex violates the property
/// exactly when paths from the start can reach it at unbounded lengths,
/// i.e. through a cycle; otherwise the horizon is one more than the longest
/// path to any non-large vertex.
pub fn check_lambda_large(a: &Automaton, lambda: &Q) -> Result<GrowthCertificate, GrowthFailure> {
    let n = a.vertex_count();
    let reach = a.reachable();
    let large: Vec<bool> = (0..n as u32).map(|v| is_large(a, v, lambda)).collect();

    // vertices lying on a directed cycle within the reachable subgraph
    let mut on_cycle = vec![false; n];
    for v in 0..n as u32 {
        if !reach[v as usize] {
            continue;
        }
        // can v reach itself by a non-trivial path?
        let mut seen = vec![false; n];
        let mut stack: Vec<u32> = a.out[v as usize]
            .iter()
            .filter(|&&(_, t)| reach[t as usize])
            .map(|&(_, t)| t)
            .collect();
        while let Some(u) = stack.pop() {
            if u == v {
                on_cycle[v as usize] = true;
                break;
            }
            if !seen[u as usize] {
                seen[u as usize] = true;
                for &(_, t) in &a.out[u as usize] {
                    if reach[t as usize] {
                        stack.push(t);
                    }
                }
            }
        }
    }
    // vertices downstream of a cycle are reachable at unbounded lengths
    let mut unbounded = vec![false; n];
    let mut stack: Vec<u32> = (0..n as u32)
        .filter(|&v| on_cycle[v as usize] && reach[v as usize])
        .collect();
    for &v in &stack {
        unbounded[v as usize] = true;
    }
    while let Some(v) = stack.pop() {
        for &(_, t) in &a.out[v as usize] {
            if !unbounded[t as usize] {
                unbounded[t as usize] = true;
                stack.push(t);
            }
        }
    }
    for v in 0..n as u32 {
        if reach[v as usize] && unbounded[v as usize] && !large[v as usize] {
            return Err(GrowthFailure { witness: v });
        }
    }
    // horizon: longest start-path ending at a non-large vertex, plus one.
    // The bounded part of the reachable graph is acyclic, so a longest-path
    // DP over a topological order is exact.
    let mut horizon = 1i64;
    if reach[a.start as usize] && !unbounded[a.start as usize] {
        let mut dist: Vec<i64> = vec![-1; n];
        dist[a.start as usize] = 0;
        fn topo(
            a: &Automaton,
            v: u32,
            unbounded: &[bool],
            order: &mut Vec<u32>,
            seen: &mut Vec<bool>,
        ) {
            if seen[v as usize] {
                return;
            }
            seen[v as usize] = true;
            for &(_, t) in &a.out[v as usize] {
                if !unbounded[t as usize] {
                    topo(a, t, unbounded, order, seen);
                }
            }
            order.push(v);
        }
        let mut order = Vec::new();
        let mut seen = vec![false; n];
        topo(a, a.start, &unbounded, &mut order, &mut seen);
        for &v in order.iter().rev() {
            let dv = dist[v as usize];
            if dv < 0 {
                continue;
            }
            for &(_, t) in &a.out[v as usize] {
                if !unbounded[t as usize] && dist[t as usize] < dv + 1 {
                    dist[t as usize] = dv + 1;
                }
            }
        }
        for v in 0..n {
            if dist[v] >= 0 && !large[v] {
                horizon = horizon.max(dist[v] + 1);
            }
        }
    }
    Ok(GrowthCertificate {
        lambda: lambda.clone(),
        horizon: horizon as usize,
        large,
    })
}
