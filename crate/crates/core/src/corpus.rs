//! Bundled test graphs: paths, grids, cubes, tree balls, a staircase.

use crate::median::RawGraph;

/// Path on `n` vertices labeled "0".."n-1".
pub fn path(n: usize) -> RawGraph {
    RawGraph {
        vertices: (0..n).map(|i| i.to_string()).collect(),
        edges: (1..n)
            .map(|i| ((i - 1).to_string(), i.to_string()))
            .collect(),
    }
}

/// Grid with `nx * ny` vertices labeled "x,y".
pub fn grid(nx: usize, ny: usize) -> RawGraph {
    let name = |x: usize, y: usize| format!("{x},{y}");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            vertices.push(name(x, y));
            if x + 1 < nx {
                edges.push((name(x, y), name(x + 1, y)));
            }
            if y + 1 < ny {
                edges.push((name(x, y), name(x, y + 1)));
            }
        }
    }
    RawGraph { vertices, edges }
}

/// 1-skeleton of a single 3-cube.
pub fn cube3() -> RawGraph {
    let name = |m: usize| format!("{}{}{}", m & 1, (m >> 1) & 1, (m >> 2) & 1);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for m in 0..8usize {
        vertices.push(name(m));
        for b in 0..3 {
            let w = m ^ (1 << b);
            if w > m {
                edges.push((name(m), name(w)));
            }
        }
    }
    RawGraph { vertices, edges }
}

/// Staircase square complex: the diagonal band `-1 <= y - x <= 2` clipped to
/// a box with `steps` columns. Two squares per column, corner-to-corner.
pub fn staircase(steps: usize) -> RawGraph {
    let inside =
        |x: i64, y: i64| x >= 0 && y >= 0 && (x as usize) <= steps && y <= x + 2 && y >= x - 1;
    let name = |x: i64, y: i64| format!("{x},{y}");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for x in 0..=(steps as i64) {
        for y in 0..=(steps as i64 + 2) {
            if !inside(x, y) {
                continue;
            }
            vertices.push(name(x, y));
            if inside(x + 1, y) {
                edges.push((name(x, y), name(x + 1, y)));
            }
            if inside(x, y + 1) {
                edges.push((name(x, y), name(x, y + 1)));
            }
        }
    }
    RawGraph { vertices, edges }
}

/// Ball of the given radius in the Cayley tree of the free group of the
/// given rank, as an explicit graph. Vertices are reduced words rendered
/// compactly ("e" for the root).
pub fn tree_ball(rank: usize, radius: usize) -> RawGraph {
    use crate::letters::{base_letter_name, Alphabet, Letter, Word};
    let alpha = Alphabet::base(rank);
    let render = |w: &Word| {
        if w.is_empty() {
            "e".to_string()
        } else {
            w.0.iter().map(|&l| base_letter_name(l)).collect()
        }
    };
    let mut vertices = vec!["e".to_string()];
    let mut edges = Vec::new();
    let mut frontier = vec![Word::empty()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for l in alpha.letters() {
                if w.0.last() == Some(&alpha.inverse(l)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                edges.push((render(w), render(&v)));
                vertices.push(render(&v));
                next.push(v);
            }
        }
        frontier = next;
    }
    let _ = Letter::gen(0);
    RawGraph { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::median::MedianGraph;

    #[test]
    fn staircase_is_median() {
        let g = MedianGraph::validate(&staircase(3)).unwrap();
        assert_eq!(g.dimension(), 2);
    }

    #[test]
    fn tree_ball_counts() {
        let g = tree_ball(2, 2);
        // 1 + 4 + 4*3 = 17 vertices
        assert_eq!(g.vertices.len(), 17);
        assert_eq!(g.edges.len(), 16);
        assert!(MedianGraph::validate(&g).is_ok());
    }
}
