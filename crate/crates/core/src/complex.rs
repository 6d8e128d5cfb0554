//! Windows onto cube complexes, with structural hyperplane queries.
//!
//! Four backends share one query surface:
//!
//! * `Explicit` — any finite validated median graph.
//! * `TreeBall` — a radius-R ball in the Cayley tree of a free group.
//! * `Grid` — the standard cubing of Z^k (unbounded; the configured dims
//!   only fix a view box and the default basepoint).
//! * `TreeProd` — a box in a product of two free-group Cayley trees.
//!
//! The structural backends answer distance/side/carrier queries from
//! coordinates rather than tables, which keeps million-vertex tree balls
//! cheap. Walls are addressed by small descriptors ([`Wall`]).

use crate::letters::{base_letter_name, parse_base_letter, Alphabet, Letter, Word};
use crate::median::{Crossing, MedianGraph};
use std::collections::VecDeque;

/// A vertex handle; interpretation depends on the backend.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct V(pub u64);

/// A hyperplane handle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Wall {
    /// Theta class of an explicit graph.
    Exp(u32),
    /// Tree edge wall, addressed by its endpoint farther from the root.
    Tree(u32),
    /// Grid wall between `axis`-coordinates `off` and `off+1`.
    Grid { axis: u8, off: i32 },
    /// Factor wall of a tree product.
    Prod { factor: u8, deeper: u32 },
}

pub const NO_VERTEX: u32 = u32::MAX;

/// Ball in the Cayley tree of a free group, with left-multiplication tables.
pub struct TreeBall {
    pub rank: usize,
    pub radius: usize,
    pub alpha: Alphabet,
    parent: Vec<u32>,
    last: Vec<Letter>,
    depth: Vec<u16>,
    /// right[v * 2k + l] = vertex of word(v) * l, reduced.
    right: Vec<u32>,
    /// left[l][v] = vertex of l * word(v), reduced.
    left: Vec<Vec<u32>>,
}

impl TreeBall {
    pub fn new(rank: usize, radius: usize) -> TreeBall {
        let alpha = Alphabet::base(rank);
        let k2 = 2 * rank;
        let mut parent: Vec<u32> = vec![NO_VERTEX];
        let mut last: Vec<Letter> = vec![Letter(0)];
        let mut depth: Vec<u16> = vec![0];
        // BFS enumeration of reduced words by length
        let mut frontier: Vec<u32> = vec![0];
        for d in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for l in alpha.letters() {
                    if depth[v as usize] > 0 && last[v as usize] == alpha.inverse(l) {
                        continue;
                    }
                    let id = parent.len() as u32;
                    parent.push(v);
                    last.push(l);
                    depth.push(d as u16);
                    next.push(id);
                }
            }
            frontier = next;
        }
        let n = parent.len();
        let mut right = vec![NO_VERTEX; n * k2];
        // children first
        for v in 1..n as u32 {
            let p = parent[v as usize];
            right[p as usize * k2 + last[v as usize].index()] = v;
        }
        // parent steps
        for v in 1..n as u32 {
            let back = alpha.inverse(last[v as usize]);
            right[v as usize * k2 + back.index()] = parent[v as usize];
        }
        // left tables by depth recursion: l * (w't) = (l * w') t
        let mut left = vec![vec![NO_VERTEX; n]; k2];
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| depth[v as usize]);
        for l in alpha.letters() {
            let tab = &mut left[l.index()];
            for &v in &order {
                if v == 0 {
                    tab[0] = right[0 * k2 + l.index()];
                    continue;
                }
                let pl = tab[parent[v as usize] as usize];
                tab[v as usize] = if pl == NO_VERTEX {
                    NO_VERTEX
                } else {
                    right[pl as usize * k2 + last[v as usize].index()]
                };
            }
        }
        TreeBall {
            rank,
            radius,
            alpha,
            parent,
            last,
            depth,
            right,
            left,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> u32 {
        0
    }

    pub fn left_mul(&self, l: Letter, v: u32) -> u32 {
        self.left[l.index()][v as usize]
    }

    pub fn depth_of(&self, v: u32) -> u32 {
        self.depth[v as usize] as u32
    }

    pub fn parent_of(&self, v: u32) -> u32 {
        self.parent[v as usize]
    }

    pub fn distance(&self, mut u: u32, mut v: u32) -> u32 {
        let mut d = 0;
        while self.depth[u as usize] > self.depth[v as usize] {
            u = self.parent[u as usize];
            d += 1;
        }
        while self.depth[v as usize] > self.depth[u as usize] {
            v = self.parent[v as usize];
            d += 1;
        }
        while u != v {
            u = self.parent[u as usize];
            v = self.parent[v as usize];
            d += 2;
        }
        d
    }

    /// True iff `anc` is an ancestor of `v` (or `v` itself).
    fn under(&self, anc: u32, mut v: u32) -> bool {
        while self.depth[v as usize] > self.depth[anc as usize] {
            v = self.parent[v as usize];
        }
        v == anc
    }

    fn path_walls(&self, mut u: u32, mut v: u32) -> Vec<u32> {
        let mut walls = Vec::new();
        while self.depth[u as usize] > self.depth[v as usize] {
            walls.push(u);
            u = self.parent[u as usize];
        }
        while self.depth[v as usize] > self.depth[u as usize] {
            walls.push(v);
            v = self.parent[v as usize];
        }
        while u != v {
            walls.push(u);
            walls.push(v);
            u = self.parent[u as usize];
            v = self.parent[v as usize];
        }
        walls
    }

    pub fn word_of(&self, mut v: u32) -> Word {
        let mut letters = Vec::new();
        while v != 0 {
            letters.push(self.last[v as usize]);
            v = self.parent[v as usize];
        }
        letters.reverse();
        Word(letters)
    }

    pub fn vertex_of_word(&self, w: &Word) -> Option<u32> {
        let k2 = 2 * self.rank;
        let mut v = 0u32;
        for &l in w.letters() {
            v = self.right[v as usize * k2 + l.index()];
            if v == NO_VERTEX {
                return None;
            }
        }
        Some(v)
    }
}

/// The standard cubing of Z^k. Vertices are packed integer coordinates.
pub struct GridComplex {
    pub dims: Vec<i64>,
    pub rank: usize,
}

const GRID_BIAS: i64 = 1 << 15;

impl GridComplex {
    pub fn new(dims: Vec<i64>) -> GridComplex {
        assert!(
            !dims.is_empty() && dims.len() <= 4,
            "grid rank must be 1..=4"
        );
        let rank = dims.len();
        GridComplex { dims, rank }
    }

    pub fn pack(&self, coords: &[i64]) -> V {
        let mut x = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            let b = (c + GRID_BIAS) as u64;
            debug_assert!(b < (1 << 16));
            x |= b << (16 * i);
        }
        V(x)
    }

    pub fn unpack(&self, v: V) -> Vec<i64> {
        (0..self.rank)
            .map(|i| ((v.0 >> (16 * i)) & 0xffff) as i64 - GRID_BIAS)
            .collect()
    }

    pub fn center(&self) -> V {
        let coords: Vec<i64> = self.dims.iter().map(|&d| d / 2).collect();
        self.pack(&coords)
    }

    pub fn view_vertices(&self) -> Vec<V> {
        let mut out = Vec::new();
        let mut idx = vec![0i64; self.rank];
        loop {
            out.push(self.pack(&idx));
            let mut i = 0;
            loop {
                idx[i] += 1;
                if idx[i] < self.dims[i] {
                    break;
                }
                idx[i] = 0;
                i += 1;
                if i == self.rank {
                    return out;
                }
            }
        }
    }
}

/// A signed coordinate permutation plus translation: an automorphism of Z^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    /// out[j] = signs[j] * in[perm[j]] + offset[j]
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
    pub offset: Vec<i64>,
}

impl Affine {
    pub fn translation(rank: usize, axis: usize, step: i64) -> Affine {
        let mut offset = vec![0; rank];
        offset[axis] = step;
        Affine {
            perm: (0..rank).collect(),
            signs: vec![1; rank],
            offset,
        }
    }

    pub fn apply(&self, coords: &[i64]) -> Vec<i64> {
        (0..coords.len())
            .map(|j| self.signs[j] * coords[self.perm[j]] + self.offset[j])
            .collect()
    }

    pub fn inverse(&self) -> Affine {
        let k = self.perm.len();
        let mut perm = vec![0; k];
        let mut signs = vec![1; k];
        let mut offset = vec![0; k];
        for j in 0..k {
            let i = self.perm[j];
            perm[i] = j;
            signs[i] = self.signs[j];
            offset[i] = -self.signs[j] * self.offset[j];
        }
        Affine {
            perm,
            signs,
            offset,
        }
    }
}

/// Box in a product of two Cayley-tree balls.
pub struct TreeProd {
    pub f1: TreeBall,
    pub f2: TreeBall,
}

impl TreeProd {
    pub fn new(rank: usize, radius: usize) -> TreeProd {
        TreeProd {
            f1: TreeBall::new(rank, radius),
            f2: TreeBall::new(rank, radius),
        }
    }

    pub fn pack(&self, p: u32, q: u32) -> V {
        V(((p as u64) << 32) | q as u64)
    }

    pub fn unpack(&self, v: V) -> (u32, u32) {
        ((v.0 >> 32) as u32, v.0 as u32)
    }
}

pub enum Complex {
    Explicit(MedianGraph),
    TreeBall(TreeBall),
    Grid(GridComplex),
    TreeProd(TreeProd),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Minus,
    Plus,
}

impl Complex {
    pub fn distance(&self, u: V, v: V) -> u32 {
        match self {
            Complex::Explicit(g) => g.distance(u.0 as u32, v.0 as u32),
            Complex::TreeBall(t) => t.distance(u.0 as u32, v.0 as u32),
            Complex::Grid(g) => {
                let a = g.unpack(u);
                let b = g.unpack(v);
                a.iter()
                    .zip(&b)
                    .map(|(x, y)| (x - y).unsigned_abs() as u32)
                    .sum()
            }
            Complex::TreeProd(p) => {
                let (a1, a2) = p.unpack(u);
                let (b1, b2) = p.unpack(v);
                p.f1.distance(a1, b1) + p.f2.distance(a2, b2)
            }
        }
    }

    /// All walls separating `u` and `v`, in canonical order.
    pub fn walls_separating(&self, u: V, v: V) -> Vec<Wall> {
        let mut out = match self {
            Complex::Explicit(g) => g
                .classes_separating(u.0 as u32, v.0 as u32)
                .into_iter()
                .map(Wall::Exp)
                .collect::<Vec<_>>(),
            Complex::TreeBall(t) => t
                .path_walls(u.0 as u32, v.0 as u32)
                .into_iter()
                .map(Wall::Tree)
                .collect(),
            Complex::Grid(g) => {
                let a = g.unpack(u);
                let b = g.unpack(v);
                let mut walls = Vec::new();
                for axis in 0..g.rank {
                    let (lo, hi) = (a[axis].min(b[axis]), a[axis].max(b[axis]));
                    for off in lo..hi {
                        walls.push(Wall::Grid {
                            axis: axis as u8,
                            off: off as i32,
                        });
                    }
                }
                walls
            }
            Complex::TreeProd(p) => {
                let (a1, a2) = p.unpack(u);
                let (b1, b2) = p.unpack(v);
                let mut walls: Vec<Wall> =
                    p.f1.path_walls(a1, b1)
                        .into_iter()
                        .map(|d| Wall::Prod {
                            factor: 0,
                            deeper: d,
                        })
                        .collect();
                walls.extend(p.f2.path_walls(a2, b2).into_iter().map(|d| Wall::Prod {
                    factor: 1,
                    deeper: d,
                }));
                walls
            }
        };
        out.sort_unstable();
        out
    }

    pub fn side(&self, w: Wall, v: V) -> Side {
        let plus = match (self, w) {
            (Complex::Explicit(g), Wall::Exp(c)) => g.classes[c as usize].plus_side(v.0 as u32),
            (Complex::TreeBall(t), Wall::Tree(d)) => t.under(d, v.0 as u32),
            (Complex::Grid(g), Wall::Grid { axis, off }) => g.unpack(v)[axis as usize] > off as i64,
            (Complex::TreeProd(p), Wall::Prod { factor, deeper }) => {
                let (a, b) = p.unpack(v);
                if factor == 0 {
                    p.f1.under(deeper, a)
                } else {
                    p.f2.under(deeper, b)
                }
            }
            _ => panic!("wall does not belong to this complex"),
        };
        if plus {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    pub fn separates(&self, w: Wall, u: V, v: V) -> bool {
        self.side(w, u) != self.side(w, v)
    }

    pub fn on_carrier(&self, w: Wall, v: V) -> bool {
        self.dist_to_carrier(w, v) == 0
    }

    pub fn dist_to_carrier(&self, w: Wall, v: V) -> u32 {
        match (self, w) {
            (Complex::Explicit(g), Wall::Exp(c)) => g.dist_to_carrier(c, v.0 as u32),
            (Complex::TreeBall(t), Wall::Tree(d)) => {
                let p = t.parent_of(d);
                t.distance(v.0 as u32, d).min(t.distance(v.0 as u32, p))
            }
            (Complex::Grid(g), Wall::Grid { axis, off }) => {
                let c = g.unpack(v)[axis as usize];
                let (lo, hi) = (off as i64, off as i64 + 1);
                if c < lo {
                    (lo - c) as u32
                } else if c > hi {
                    (c - hi) as u32
                } else {
                    0
                }
            }
            (Complex::TreeProd(p), Wall::Prod { factor, deeper }) => {
                let (a, b) = p.unpack(v);
                let (t, c) = if factor == 0 { (&p.f1, a) } else { (&p.f2, b) };
                let pa = t.parent_of(deeper);
                t.distance(c, deeper).min(t.distance(c, pa))
            }
            _ => panic!("wall does not belong to this complex"),
        }
    }

    pub fn crossing(&self, w1: Wall, w2: Wall) -> Crossing {
        if w1 == w2 {
            return Crossing::Equal;
        }
        match (self, w1, w2) {
            (Complex::Explicit(g), Wall::Exp(a), Wall::Exp(b)) => g.crossing(a, b),
            (Complex::TreeBall(_), Wall::Tree(_), Wall::Tree(_)) => Crossing::Parallel,
            (Complex::Grid(_), Wall::Grid { axis: a, .. }, Wall::Grid { axis: b, .. }) => {
                if a == b {
                    Crossing::Parallel
                } else {
                    Crossing::Cross
                }
            }
            (
                Complex::TreeProd(_),
                Wall::Prod { factor: f1, .. },
                Wall::Prod { factor: f2, .. },
            ) => {
                if f1 == f2 {
                    Crossing::Parallel
                } else {
                    Crossing::Cross
                }
            }
            _ => panic!("walls do not belong to this complex"),
        }
    }

    pub fn wall_of_edge(&self, u: V, v: V) -> Option<Wall> {
        if self.distance(u, v) != 1 {
            return None;
        }
        Some(match self {
            Complex::Explicit(g) => Wall::Exp(g.class_of_edge(u.0 as u32, v.0 as u32).ok()?),
            Complex::TreeBall(t) => {
                let (a, b) = (u.0 as u32, v.0 as u32);
                if t.parent_of(a) == b {
                    Wall::Tree(a)
                } else {
                    Wall::Tree(b)
                }
            }
            Complex::Grid(g) => {
                let a = g.unpack(u);
                let b = g.unpack(v);
                let axis = (0..g.rank).find(|&i| a[i] != b[i]).unwrap();
                Wall::Grid {
                    axis: axis as u8,
                    off: a[axis].min(b[axis]) as i32,
                }
            }
            Complex::TreeProd(p) => {
                let (a1, a2) = p.unpack(u);
                let (b1, b2) = p.unpack(v);
                if a1 != b1 {
                    let d = if p.f1.parent_of(a1) == b1 { a1 } else { b1 };
                    Wall::Prod {
                        factor: 0,
                        deeper: d,
                    }
                } else {
                    let d = if p.f2.parent_of(a2) == b2 { a2 } else { b2 };
                    Wall::Prod {
                        factor: 1,
                        deeper: d,
                    }
                }
            }
        })
    }

    /// A canonical representative edge (minus endpoint first).
    pub fn rep_edge(&self, w: Wall) -> (V, V) {
        match (self, w) {
            (Complex::Explicit(g), Wall::Exp(c)) => {
                let (a, b) = g.classes[c as usize].edges[0];
                let (a, b) = if g.classes[c as usize].plus_side(a) {
                    (b, a)
                } else {
                    (a, b)
                };
                (V(a as u64), V(b as u64))
            }
            (Complex::TreeBall(t), Wall::Tree(d)) => (V(t.parent_of(d) as u64), V(d as u64)),
            (Complex::Grid(g), Wall::Grid { axis, off }) => {
                let mut a = vec![0i64; g.rank];
                a[axis as usize] = off as i64;
                let mut b = a.clone();
                b[axis as usize] = off as i64 + 1;
                (g.pack(&a), g.pack(&b))
            }
            (Complex::TreeProd(p), Wall::Prod { factor, deeper }) => {
                if factor == 0 {
                    (p.pack(p.f1.parent_of(deeper), 0), p.pack(deeper, 0))
                } else {
                    (p.pack(0, p.f2.parent_of(deeper)), p.pack(0, deeper))
                }
            }
            _ => panic!("wall does not belong to this complex"),
        }
    }

    /// The gate (nearest point) of `v` on the carrier of a wall. In a median
    /// graph the walls separating `v` from the carrier are exactly those
    /// separating `v` from its gate.
    pub fn gate_on_carrier(&self, w: Wall, v: V) -> V {
        match (self, w) {
            (Complex::Explicit(g), Wall::Exp(c)) => {
                let u = v.0 as u32;
                let best = g.classes[c as usize]
                    .carrier
                    .iter()
                    .copied()
                    .min_by_key(|&cv| (g.distance(u, cv), cv))
                    .expect("carrier non-empty");
                V(best as u64)
            }
            (Complex::TreeBall(t), Wall::Tree(d)) => {
                let u = v.0 as u32;
                let p = t.parent_of(d);
                if t.distance(u, d) < t.distance(u, p) {
                    V(d as u64)
                } else {
                    V(p as u64)
                }
            }
            (Complex::Grid(g), Wall::Grid { axis, off }) => {
                let mut coords = g.unpack(v);
                let c = coords[axis as usize];
                coords[axis as usize] = c.clamp(off as i64, off as i64 + 1);
                g.pack(&coords)
            }
            (Complex::TreeProd(p), Wall::Prod { factor, deeper }) => {
                let (a, b) = p.unpack(v);
                let clamp = |t: &TreeBall, c: u32| -> u32 {
                    let pa = t.parent_of(deeper);
                    if t.distance(c, deeper) < t.distance(c, pa) {
                        deeper
                    } else {
                        pa
                    }
                };
                if factor == 0 {
                    p.pack(clamp(&p.f1, a), b)
                } else {
                    p.pack(a, clamp(&p.f2, b))
                }
            }
            _ => panic!("wall does not belong to this complex"),
        }
    }

    pub fn display_vertex(&self, v: V) -> String {
        match self {
            Complex::Explicit(g) => g.names[v.0 as usize].clone(),
            Complex::TreeBall(t) => {
                let w = t.word_of(v.0 as u32);
                if w.is_empty() {
                    "e".to_string()
                } else {
                    w.0.iter().map(|&l| base_letter_name(l)).collect()
                }
            }
            Complex::Grid(g) => g
                .unpack(v)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            Complex::TreeProd(p) => {
                let (a, b) = p.unpack(v);
                let s1 = Complex::display_tree_word(&p.f1, a);
                let s2 = Complex::display_tree_word(&p.f2, b);
                format!("({s1}|{s2})")
            }
        }
    }

    fn display_tree_word(t: &TreeBall, v: u32) -> String {
        let w = t.word_of(v);
        if w.is_empty() {
            "e".to_string()
        } else {
            w.0.iter().map(|&l| base_letter_name(l)).collect()
        }
    }

    pub fn parse_vertex(&self, s: &str) -> Option<V> {
        match self {
            Complex::Explicit(g) => g.vertex(s).ok().map(|i| V(i as u64)),
            Complex::TreeBall(t) => {
                let w = parse_tree_word(s)?;
                t.vertex_of_word(&w).map(|i| V(i as u64))
            }
            Complex::Grid(g) => {
                let coords: Option<Vec<i64>> =
                    s.split(',').map(|p| p.trim().parse().ok()).collect();
                Some(g.pack(&coords?))
            }
            Complex::TreeProd(p) => {
                let body = s.strip_prefix('(')?.strip_suffix(')')?;
                let (a, b) = body.split_once('|')?;
                let wa = parse_tree_word(a)?;
                let wb = parse_tree_word(b)?;
                Some(p.pack(p.f1.vertex_of_word(&wa)?, p.f2.vertex_of_word(&wb)?))
            }
        }
    }

    /// Vertices of the finite window (view box for grids).
    pub fn vertices(&self) -> Vec<V> {
        match self {
            Complex::Explicit(g) => (0..g.vertex_count() as u64).map(V).collect(),
            Complex::TreeBall(t) => (0..t.vertex_count() as u64).map(V).collect(),
            Complex::Grid(g) => g.view_vertices(),
            Complex::TreeProd(p) => {
                let mut out = Vec::new();
                for a in 0..p.f1.vertex_count() as u32 {
                    for b in 0..p.f2.vertex_count() as u32 {
                        out.push(p.pack(a, b));
                    }
                }
                out
            }
        }
    }

    pub fn explicit(&self) -> Option<&MedianGraph> {
        match self {
            Complex::Explicit(g) => Some(g),
            _ => None,
        }
    }
}

fn parse_tree_word(s: &str) -> Option<Word> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Some(Word::empty());
    }
    let mut w = Word::empty();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut j = i + 1;
        if j < bytes.len() && bytes[j] == b'\'' {
            j += 1;
        }
        w.push(parse_base_letter(&s[i..j])?);
        i = j;
    }
    Some(w)
}

/// BFS sanity oracle used in tests: distances on any backend by walking the
/// unit-neighbor structure of a small explicit rebuild.
pub fn bfs_distance_oracle(adj: &[Vec<u32>], s: u32, t: u32) -> u32 {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut q = VecDeque::new();
    dist[s as usize] = 0;
    q.push_back(s);
    while let Some(v) = q.pop_front() {
        if v == t {
            return dist[v as usize];
        }
        for &w in &adj[v as usize] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                q.push_back(w);
            }
        }
    }
    u32::MAX
}
