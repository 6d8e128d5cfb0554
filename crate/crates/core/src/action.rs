//! Free-group actions on cube-complex windows.
//!
//! A [`CubeAction`] couples a window with one vertex map per letter of a
//! symmetric alphabet. Explicit finite actions carry total automorphisms;
//! window actions (tree balls, grids, tree products) carry partial maps that
//! restrict automorphisms of the ambient complex. Words act on the left:
//! `apply(w, v)` applies the last letter of `w` first.

use crate::complex::{Affine, Complex, GridComplex, Side, TreeBall, TreeProd, Wall, V};
use crate::letters::{Alphabet, Letter, Word};
use crate::median::MedianGraph;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("word leaves the window at letter position {position}")]
    OutOfWindow { position: usize },
    #[error("generator {0} is not an automorphism: {1}")]
    NotAutomorphism(String, String),
    #[error("operation requires a total action on a finite graph")]
    NotTotal,
    #[error("no such vertex: {0}")]
    UnknownVertex(String),
    #[error("generator map missing vertex {0}")]
    IncompleteMap(String),
}

/// Per-letter vertex maps.
pub enum Gens {
    /// Total or partial maps on an explicit graph, indexed by vertex id.
    Explicit(Vec<Vec<Option<u32>>>),
    /// Left multiplication by a fixed word, per letter, on a tree ball.
    TreeLeft(Vec<Word>),
    /// Affine automorphisms of the grid, per letter.
    GridAffine(Vec<Affine>),
    /// Product-of-trees moves, per letter.
    Prod(Vec<ProdGen>),
}

/// A generator of a product-of-trees action: optionally swap the factors,
/// then multiply each factor on the left by a fixed word.
#[derive(Clone, Debug)]
pub struct ProdGen {
    pub swap: bool,
    pub left1: Word,
    pub left2: Word,
}

impl ProdGen {
    pub fn inverse(&self, alpha: &Alphabet) -> ProdGen {
        if self.swap {
            // (p,q) -> (l1 q, l2 p); inverse sends (p,q) -> (l2^-1 q, l1^-1 p)
            ProdGen {
                swap: true,
                left1: self.left2.inverse(alpha),
                left2: self.left1.inverse(alpha),
            }
        } else {
            ProdGen {
                swap: false,
                left1: self.left1.inverse(alpha),
                left2: self.left2.inverse(alpha),
            }
        }
    }
}

pub struct CubeAction {
    pub complex: Complex,
    pub alphabet: Alphabet,
    gens: Gens,
    pub basepoint: V,
}

/// The visible walls at a basepoint: for each letter, the walls separating
/// `x` from `sx` whose carrier contains `x`.
#[derive(Clone, Debug)]
pub struct VisibleWalls {
    pub per_letter: Vec<Vec<Wall>>,
    pub all: Vec<Wall>,
}

impl VisibleWalls {
    pub fn contains(&self, w: &Wall) -> bool {
        self.all.binary_search(w).is_ok()
    }

    /// The visible set of a sub-alphabet: per-letter walls are kept for the
    /// chosen letters only, and the union is recomputed.
    pub fn restrict(&self, letters: &[Letter]) -> VisibleWalls {
        let mut per_letter = vec![Vec::new(); self.per_letter.len()];
        let mut all = Vec::new();
        for &l in letters {
            per_letter[l.index()] = self.per_letter[l.index()].clone();
            all.extend_from_slice(&self.per_letter[l.index()]);
        }
        all.sort_unstable();
        all.dedup();
        VisibleWalls { per_letter, all }
    }
}

impl CubeAction {
    /// Standard action on the Cayley-tree ball: letters act by left
    /// multiplication, basepoint at the root.
    pub fn tree_ball(rank: usize, radius: usize) -> CubeAction {
        let alpha = Alphabet::base(rank);
        let gens = alpha.letters().map(Word::one).collect();
        CubeAction {
            complex: Complex::TreeBall(TreeBall::new(rank, radius)),
            alphabet: alpha,
            gens: Gens::TreeLeft(gens),
            basepoint: V(0),
        }
    }

    /// Coordinate translations of Z^k, basepoint at the view-box center.
    pub fn grid(dims: Vec<i64>) -> CubeAction {
        let rank = dims.len();
        let alpha = Alphabet::base(rank);
        let mut gens = Vec::new();
        for axis in 0..rank {
            gens.push(Affine::translation(rank, axis, 1));
            gens.push(Affine::translation(rank, axis, -1));
        }
        let grid = GridComplex::new(dims);
        let basepoint = grid.center();
        CubeAction {
            complex: Complex::Grid(grid),
            alphabet: alpha,
            gens: Gens::GridAffine(gens),
            basepoint,
        }
    }

    /// Z^k with explicit affine generators (one per generator; inverses are
    /// derived). Basepoint at the view-box center.
    pub fn grid_affine(dims: Vec<i64>, generators: Vec<Affine>) -> CubeAction {
        let alpha = Alphabet::base(generators.len());
        let mut gens = Vec::new();
        for g in &generators {
            gens.push(g.clone());
            gens.push(g.inverse());
        }
        let grid = GridComplex::new(dims);
        let basepoint = grid.center();
        CubeAction {
            complex: Complex::Grid(grid),
            alphabet: alpha,
            gens: Gens::GridAffine(gens),
            basepoint,
        }
    }

    /// Product of two rank-`tree_rank` Cayley-tree balls with the given
    /// generators (inverses derived). Basepoint at (root, root).
    pub fn tree_prod(tree_rank: usize, radius: usize, generators: Vec<ProdGen>) -> CubeAction {
        let factor_alpha = Alphabet::base(tree_rank);
        let alpha = Alphabet::base(generators.len());
        let mut gens = Vec::new();
        for g in &generators {
            gens.push(g.clone());
            gens.push(g.inverse(&factor_alpha));
        }
        let prod = TreeProd::new(tree_rank, radius);
        let basepoint = prod.pack(prod.f1.root(), prod.f2.root());
        CubeAction {
            complex: Complex::TreeProd(prod),
            alphabet: alpha,
            gens: Gens::Prod(gens),
            basepoint,
        }
    }

    /// Total action on an explicit graph from one bijection per generator.
    /// Checks that each map is an automorphism; inverse letters act by the
    /// inverse bijections.
    pub fn explicit(
        graph: MedianGraph,
        generators: Vec<Vec<u32>>,
        basepoint: u32,
    ) -> Result<CubeAction, ActionError> {
        let n = graph.vertex_count();
        let alpha = Alphabet::base(generators.len());
        let mut gens: Vec<Vec<Option<u32>>> = Vec::new();
        for (gi, f) in generators.iter().enumerate() {
            let name = alpha.name(Letter::gen(gi)).to_string();
            if f.len() != n {
                return Err(ActionError::NotAutomorphism(
                    name,
                    format!("map has {} entries for {} vertices", f.len(), n),
                ));
            }
            let mut inv = vec![u32::MAX; n];
            for (v, &fv) in f.iter().enumerate() {
                if fv as usize >= n || inv[fv as usize] != u32::MAX {
                    return Err(ActionError::NotAutomorphism(
                        name,
                        "not a bijection".to_string(),
                    ));
                }
                inv[fv as usize] = v as u32;
            }
            for &(u, v) in &graph.edges {
                let (fu, fv) = (f[u as usize], f[v as usize]);
                if graph.distance(fu, fv) != 1 {
                    return Err(ActionError::NotAutomorphism(
                        name,
                        format!("edge ({u},{v}) not preserved"),
                    ));
                }
            }
            gens.push(f.iter().map(|&x| Some(x)).collect());
            gens.push(inv.into_iter().map(Some).collect());
        }
        Ok(CubeAction {
            complex: Complex::Explicit(graph),
            alphabet: alpha,
            gens: Gens::Explicit(gens),
            basepoint: V(basepoint as u64),
        })
    }

    /// Partial action on an explicit graph window. `gens` has one map per
    /// letter (inverses included).
    pub fn explicit_partial(
        graph: MedianGraph,
        gens: Vec<Vec<Option<u32>>>,
        basepoint: u32,
    ) -> CubeAction {
        let alpha = Alphabet::base(gens.len() / 2);
        CubeAction {
            complex: Complex::Explicit(graph),
            alphabet: alpha,
            gens: Gens::Explicit(gens),
            basepoint: V(basepoint as u64),
        }
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.size()
    }

    pub fn is_total(&self) -> bool {
        match &self.gens {
            Gens::Explicit(maps) => maps.iter().all(|m| m.iter().all(Option::is_some)),
            Gens::GridAffine(_) => true,
            _ => false,
        }
    }

    pub fn apply_letter(&self, l: Letter, v: V) -> Option<V> {
        match &self.gens {
            Gens::Explicit(maps) => maps[l.index()][v.0 as usize].map(|x| V(x as u64)),
            Gens::TreeLeft(words) => {
                let t = match &self.complex {
                    Complex::TreeBall(t) => t,
                    _ => unreachable!(),
                };
                let mut cur = v.0 as u32;
                for &m in words[l.index()].letters().iter().rev() {
                    cur = t.left_mul(m, cur);
                    if cur == crate::complex::NO_VERTEX {
                        return None;
                    }
                }
                Some(V(cur as u64))
            }
            Gens::GridAffine(maps) => {
                let g = match &self.complex {
                    Complex::Grid(g) => g,
                    _ => unreachable!(),
                };
                Some(g.pack(&maps[l.index()].apply(&g.unpack(v))))
            }
            Gens::Prod(maps) => {
                let p = match &self.complex {
                    Complex::TreeProd(p) => p,
                    _ => unreachable!(),
                };
                let (a, b) = p.unpack(v);
                let g = &maps[l.index()];
                let (src1, src2) = if g.swap { (b, a) } else { (a, b) };
                let mut r1 = src1;
                for &m in g.left1.letters().iter().rev() {
                    r1 = p.f1.left_mul(m, r1);
                    if r1 == crate::complex::NO_VERTEX {
                        return None;
                    }
                }
                let mut r2 = src2;
                for &m in g.left2.letters().iter().rev() {
                    r2 = p.f2.left_mul(m, r2);
                    if r2 == crate::complex::NO_VERTEX {
                        return None;
                    }
                }
                Some(p.pack(r1, r2))
            }
        }
    }

    /// Left action of a word: the last letter is applied first.
    pub fn apply(&self, w: &Word, v: V) -> Result<V, ActionError> {
        let mut cur = v;
        for (i, &l) in w.letters().iter().enumerate().rev() {
            cur = self
                .apply_letter(l, cur)
                .ok_or(ActionError::OutOfWindow { position: i + 1 })?;
        }
        Ok(cur)
    }

    /// Letters fixing the given vertex.
    pub fn fix_set(&self, x: V) -> Vec<Letter> {
        self.alphabet
            .letters()
            .filter(|&l| self.apply_letter(l, x) == Some(x))
            .collect()
    }

    /// A vertex minimizing the total displacement over all letters; ties go
    /// to the smallest vertex id. Requires a total action.
    pub fn minimize_displacement(&self) -> Result<V, ActionError> {
        if !self.is_total() {
            return Err(ActionError::NotTotal);
        }
        let verts = self.complex.vertices();
        let mut best: Option<(u64, V)> = None;
        for v in verts {
            let sum = self.displacement_sum(v).ok_or(ActionError::NotTotal)?;
            match best {
                Some((s, _)) if s <= sum => {}
                _ => best = Some((sum, v)),
            }
        }
        Ok(best.ok_or(ActionError::NotTotal)?.1)
    }

    pub fn displacement_sum(&self, v: V) -> Option<u64> {
        let mut sum = 0u64;
        for l in self.alphabet.letters() {
            let img = self.apply_letter(l, v)?;
            sum += self.complex.distance(v, img) as u64;
        }
        Some(sum)
    }

    /// Visible walls at `x`: per letter, walls separating `x` and `sx` whose
    /// carrier contains `x`.
    pub fn visible(&self, x: V) -> Result<VisibleWalls, ActionError> {
        let mut per_letter = Vec::new();
        let mut all = Vec::new();
        for l in self.alphabet.letters() {
            let sx = self
                .apply_letter(l, x)
                .ok_or(ActionError::OutOfWindow { position: 1 })?;
            let walls: Vec<Wall> = self
                .complex
                .walls_separating(x, sx)
                .into_iter()
                .filter(|&w| self.complex.on_carrier(w, x))
                .collect();
            all.extend_from_slice(&walls);
            per_letter.push(walls);
        }
        all.sort_unstable();
        all.dedup();
        Ok(VisibleWalls { per_letter, all })
    }

    /// Visible walls of a sub-alphabet.
    pub fn visible_for(&self, x: V, letters: &[Letter]) -> Result<Vec<Wall>, ActionError> {
        let vis = self.visible(x)?;
        let mut out = Vec::new();
        for &l in letters {
            out.extend_from_slice(&vis.per_letter[l.index()]);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Image of a wall under the group element a word spells.
    pub fn translate_wall(&self, w: &Word, wall: Wall) -> Result<Wall, ActionError> {
        let (a, b) = self.complex.rep_edge(wall);
        let fa = self.apply(w, a)?;
        let fb = self.apply(w, b)?;
        self.complex
            .wall_of_edge(fa, fb)
            .ok_or(ActionError::OutOfWindow { position: 0 })
    }

    /// Searches for a letter that stabilizes some wall while swapping its
    /// halfspaces. Requires a total action (or a grid action, where walls
    /// meeting the view box are tested).
    pub fn detect_inversions(&self) -> Result<Option<(Letter, Wall)>, ActionError> {
        match &self.complex {
            Complex::Explicit(g) if self.is_total() => {
                for l in self.alphabet.letters() {
                    for c in 0..g.class_count() as u32 {
                        let wall = Wall::Exp(c);
                        if let Some(w) = self.inversion_witness(l, wall)? {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }
            Complex::Grid(g) => {
                for l in self.alphabet.letters() {
                    for axis in 0..g.rank {
                        for off in -1..=g.dims[axis] {
                            let wall = Wall::Grid {
                                axis: axis as u8,
                                off: off as i32,
                            };
                            if let Some(w) = self.inversion_witness(l, wall)? {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
                Ok(None)
            }
            _ => Err(ActionError::NotTotal),
        }
    }

    fn inversion_witness(
        &self,
        l: Letter,
        wall: Wall,
    ) -> Result<Option<(Letter, Wall)>, ActionError> {
        let img = self.translate_wall(&Word::one(l), wall)?;
        if img == wall {
            let (a, _) = self.complex.rep_edge(wall);
            let fa = self
                .apply_letter(l, a)
                .ok_or(ActionError::OutOfWindow { position: 1 })?;
            if self.complex.side(wall, a) != self.complex.side(wall, fa) {
                return Ok(Some((l, wall)));
            }
        }
        Ok(None)
    }

    /// Subdivides an explicit total action: the graph is replaced by its
    /// cubical subdivision and every generator by its induced automorphism.
    pub fn subdivide(&self) -> Result<CubeAction, ActionError> {
        let g = self.complex.explicit().ok_or(ActionError::NotTotal)?;
        if !self.is_total() {
            return Err(ActionError::NotTotal);
        }
        let (sub, map) = g.subdivide();
        let maps = match &self.gens {
            Gens::Explicit(maps) => maps,
            _ => unreachable!(),
        };
        let mut new_gens = Vec::new();
        for m in maps {
            let f: Vec<u32> = m.iter().map(|x| x.unwrap()).collect();
            let induced = map.induce_map(g, &f);
            new_gens.push(induced.into_iter().map(Some).collect());
        }
        let base = map.vertex(self.basepoint.0 as u32);
        Ok(CubeAction {
            complex: Complex::Explicit(sub),
            alphabet: self.alphabet.clone(),
            gens: Gens::Explicit(new_gens),
            basepoint: V(base as u64),
        })
    }

    pub fn side_of(&self, w: Wall, v: V) -> Side {
        self.complex.side(w, v)
    }
}

/// Builds a total explicit action from named generator maps (file format).
pub fn action_from_maps(
    graph: MedianGraph,
    named_maps: &HashMap<String, HashMap<String, String>>,
    basepoint: Option<&str>,
) -> Result<CubeAction, ActionError> {
    let mut gen_names: Vec<&String> = named_maps.keys().collect();
    gen_names.sort();
    let mut generators = Vec::new();
    for name in &gen_names {
        let m = &named_maps[*name];
        let mut f = vec![u32::MAX; graph.vertex_count()];
        for (from, to) in m {
            let u = graph
                .vertex(from)
                .map_err(|_| ActionError::UnknownVertex(from.clone()))?;
            let v = graph
                .vertex(to)
                .map_err(|_| ActionError::UnknownVertex(to.clone()))?;
            f[u as usize] = v;
        }
        if let Some(missing) = f.iter().position(|&x| x == u32::MAX) {
            return Err(ActionError::IncompleteMap(graph.names[missing].clone()));
        }
        generators.push(f);
    }
    let bp = match basepoint {
        Some(name) => graph
            .vertex(name)
            .map_err(|_| ActionError::UnknownVertex(name.to_string()))?,
        None => 0,
    };
    CubeAction::explicit(graph, generators, bp)
}
