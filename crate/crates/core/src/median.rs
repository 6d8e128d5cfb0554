//! Finite median graphs: validation, hyperplanes, halfspaces, medians,
//! convexity, dimension and cubical subdivision.
//!
//! A median graph is a connected graph in which every vertex triple has a
//! unique median (a vertex on shortest paths between each pair). These are
//! exactly the vertex skeletons of cube complexes with non-positively curved
//! links, so hyperplane machinery (edge classes under the square relation,
//! halfspaces, carriers) is available once validation passes.
//!
//! Validation is brute force over vertex triples with an all-pairs distance
//! table; it is intended for desk-scale graphs (a few hundred vertices).
//! Larger windows are produced by trusted constructors and checked through
//! their metric invariants instead.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MedianError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("no such vertex: {0}")]
    UnknownVertex(String),
    #[error("no such edge: ({0}, {1})")]
    UnknownEdge(String, String),
    #[error("not a median graph: triple ({x}, {y}, {z}) has {count} medians")]
    NotMedian {
        x: String,
        y: String,
        z: String,
        count: usize,
    },
}

/// Raw graph data as read from a file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct ThetaClass {
    pub edges: Vec<(u32, u32)>,
    /// Per-vertex side bits; bit set = plus side.
    pub side: Vec<u64>,
    pub carrier: Vec<u32>,
}

impl ThetaClass {
    #[inline]
    pub fn plus_side(&self, v: u32) -> bool {
        self.side[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }
}

/// A validated finite median graph with computed hyperplane structure.
#[derive(Clone, Debug)]
pub struct MedianGraph {
    pub names: Vec<String>,
    name_index: HashMap<String, u32>,
    pub adj: Vec<Vec<u32>>,
    pub edges: Vec<(u32, u32)>,
    edge_class: Vec<u32>,
    pub classes: Vec<ThetaClass>,
    dist: Vec<u16>,
    n: usize,
}

/// A materialized hyperplane: one theta class with its halfspaces.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    pub id: u32,
    pub edges: Vec<(u32, u32)>,
    pub halfspace_minus: Vec<u32>,
    pub halfspace_plus: Vec<u32>,
    pub carrier: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Crossing {
    Equal,
    Cross,
    Parallel,
}

fn bitset_words(n: usize) -> usize {
    (n + 63) / 64
}

impl MedianGraph {
    /// Validates raw data as a median graph; computes hyperplane structure.
    pub fn validate(raw: &RawGraph) -> Result<MedianGraph, MedianError> {
        let mut g = Self::prepare(raw)?;
        g.check_median()?;
        g.compute_classes();
        Ok(g)
    }

    /// Builds the structure without the median check. For constructors that
    /// produce median graphs by construction (grids, balls, products).
    pub fn from_trusted(raw: &RawGraph) -> Result<MedianGraph, MedianError> {
        let mut g = Self::prepare(raw)?;
        g.compute_classes();
        Ok(g)
    }

    fn prepare(raw: &RawGraph) -> Result<MedianGraph, MedianError> {
        let n = raw.vertices.len();
        let mut name_index = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if name_index.insert(v.clone(), i as u32).is_some() {
                return Err(MedianError::NotSimple(format!("duplicate vertex {v}")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (a, b) in &raw.edges {
            let &u = name_index
                .get(a)
                .ok_or_else(|| MedianError::UnknownVertex(a.clone()))?;
            let &v = name_index
                .get(b)
                .ok_or_else(|| MedianError::UnknownVertex(b.clone()))?;
            if u == v {
                return Err(MedianError::NotSimple(format!("loop at {a}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(MedianError::NotSimple(format!("multi-edge {a}-{b}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            edges.push(key);
        }
        edges.sort_unstable();
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        let mut g = MedianGraph {
            names: raw.vertices.clone(),
            name_index,
            adj,
            edges,
            edge_class: Vec::new(),
            classes: Vec::new(),
            dist: Vec::new(),
            n,
        };
        g.compute_distances()?;
        Ok(g)
    }

    fn compute_distances(&mut self) -> Result<(), MedianError> {
        let n = self.n;
        self.dist = vec![u16::MAX; n * n];
        for s in 0..n {
            let mut q = VecDeque::new();
            self.dist[s * n + s] = 0;
            q.push_back(s as u32);
            while let Some(v) = q.pop_front() {
                let dv = self.dist[s * n + v as usize];
                for &w in &self.adj[v as usize] {
                    if self.dist[s * n + w as usize] == u16::MAX {
                        self.dist[s * n + w as usize] = dv + 1;
                        q.push_back(w);
                    }
                }
            }
        }
        if n > 0 && (0..n).any(|v| self.dist[v] == u16::MAX) {
            return Err(MedianError::NotConnected);
        }
        Ok(())
    }

    fn check_median(&self) -> Result<(), MedianError> {
        let n = self.n;
        // interval bitsets I(x,y) as rows of an n*n bit matrix
        let words = bitset_words(n);
        let mut interval = vec![0u64; n * n * words];
        for x in 0..n {
            for y in x..n {
                let dxy = self.dist[x * n + y];
                let row = (x * n + y) * words;
                for v in 0..n {
                    if self.dist[x * n + v] + self.dist[v * n + y] == dxy {
                        interval[row + (v >> 6)] |= 1 << (v & 63);
                    }
                }
            }
        }
        let row = |x: usize, y: usize| {
            let (x, y) = (x.min(y), x.max(y));
            (x * n + y) * words
        };
        let mut scratch = vec![0u64; words];
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    let (rxy, ryz, rxz) = (row(x, y), row(y, z), row(x, z));
                    let mut count = 0usize;
                    for w in 0..words {
                        scratch[w] = interval[rxy + w] & interval[ryz + w] & interval[rxz + w];
                        count += scratch[w].count_ones() as usize;
                    }
                    if count != 1 {
                        return Err(MedianError::NotMedian {
                            x: self.names[x].clone(),
                            y: self.names[y].clone(),
                            z: self.names[z].clone(),
                            count,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Theta classes: transitive closure of "opposite edges of a square".
    fn compute_classes(&mut self) {
        let m = self.edges.len();
        let mut parent: Vec<u32> = (0..m as u32).collect();
        fn find(parent: &mut Vec<u32>, mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let edge_id: HashMap<(u32, u32), u32> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();
        let key = |a: u32, b: u32| (a.min(b), a.max(b));
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            // squares u-v, w-z with u~w, v~z, w~z
            for &w in &self.adj[u as usize] {
                if w == v {
                    continue;
                }
                for &z in &self.adj[v as usize] {
                    if z == u || z == w {
                        continue;
                    }
                    if let Some(&j) = edge_id.get(&key(w, z)) {
                        // require the square: u~v, v~z, z~w, w~u
                        let a = find(&mut parent, i as u32);
                        let b = find(&mut parent, j);
                        if a != b {
                            parent[a as usize] = b;
                        }
                    }
                }
            }
        }
        let mut class_of_root: HashMap<u32, u32> = HashMap::new();
        let mut edge_class = vec![0u32; m];
        let mut class_edges: Vec<Vec<(u32, u32)>> = Vec::new();
        for i in 0..m {
            let r = find(&mut parent, i as u32);
            let c = *class_of_root.entry(r).or_insert_with(|| {
                class_edges.push(Vec::new());
                (class_edges.len() - 1) as u32
            });
            edge_class[i] = c;
            class_edges[c as usize].push(self.edges[i]);
        }
        let n = self.n;
        let words = bitset_words(n);
        let mut classes = Vec::with_capacity(class_edges.len());
        for edges in class_edges {
            // two-color by BFS avoiding class edges
            let cut: HashSet<(u32, u32)> = edges.iter().copied().collect();
            let mut side = vec![0u64; words];
            let mut seen = vec![false; n];
            // orientation: minus side is the component of the smallest
            // endpoint among class edges
            let root = edges.iter().map(|&(a, b)| a.min(b)).min().unwrap();
            let mut q = VecDeque::new();
            seen[root as usize] = true;
            q.push_back(root);
            while let Some(v) = q.pop_front() {
                for &w in &self.adj[v as usize] {
                    let k = (v.min(w), v.max(w));
                    if cut.contains(&k) || seen[w as usize] {
                        continue;
                    }
                    seen[w as usize] = true;
                    q.push_back(w);
                }
            }
            for v in 0..n {
                if !seen[v] {
                    side[v >> 6] |= 1 << (v & 63);
                }
            }
            let mut carrier: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            carrier.sort_unstable();
            carrier.dedup();
            classes.push(ThetaClass {
                edges,
                side,
                carrier,
            });
        }
        self.edge_class = edge_class;
        self.classes = classes;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn vertex(&self, name: &str) -> Result<u32, MedianError> {
        self.name_index
            .get(name)
            .copied()
            .ok_or_else(|| MedianError::UnknownVertex(name.to_string()))
    }

    pub fn distance(&self, x: u32, y: u32) -> u32 {
        self.dist[x as usize * self.n + y as usize] as u32
    }

    pub fn class_of_edge(&self, u: u32, v: u32) -> Result<u32, MedianError> {
        let key = (u.min(v), u.max(v));
        match self.edges.binary_search(&key) {
            Ok(i) => Ok(self.edge_class[i]),
            Err(_) => Err(MedianError::UnknownEdge(
                self.names[u as usize].clone(),
                self.names[v as usize].clone(),
            )),
        }
    }

    /// Materializes the hyperplane of an edge.
    pub fn hyperplane_of_edge(&self, u: u32, v: u32) -> Result<Hyperplane, MedianError> {
        let c = self.class_of_edge(u, v)?;
        Ok(self.hyperplane(c))
    }

    pub fn hyperplane(&self, class: u32) -> Hyperplane {
        let tc = &self.classes[class as usize];
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for v in 0..self.n as u32 {
            if tc.plus_side(v) {
                plus.push(v);
            } else {
                minus.push(v);
            }
        }
        Hyperplane {
            id: class,
            edges: tc.edges.clone(),
            halfspace_minus: minus,
            halfspace_plus: plus,
            carrier: tc.carrier.clone(),
        }
    }

    pub fn separates(&self, class: u32, x: u32, y: u32) -> bool {
        let tc = &self.classes[class as usize];
        tc.plus_side(x) != tc.plus_side(y)
    }

    pub fn classes_separating(&self, x: u32, y: u32) -> Vec<u32> {
        (0..self.classes.len() as u32)
            .filter(|&c| self.separates(c, x, y))
            .collect()
    }

    pub fn on_carrier(&self, class: u32, v: u32) -> bool {
        self.classes[class as usize]
            .carrier
            .binary_search(&v)
            .is_ok()
    }

    pub fn dist_to_carrier(&self, class: u32, v: u32) -> u32 {
        self.classes[class as usize]
            .carrier
            .iter()
            .map(|&c| self.distance(v, c))
            .min()
            .unwrap()
    }

    /// The unique median of a vertex triple.
    pub fn median(&self, x: u32, y: u32, z: u32) -> u32 {
        let n = self.n;
        let d = |a: u32, b: u32| self.dist[a as usize * n + b as usize];
        let (dxy, dyz, dxz) = (d(x, y), d(y, z), d(x, z));
        for m in 0..n as u32 {
            if d(x, m) + d(m, y) == dxy && d(y, m) + d(m, z) == dyz && d(x, m) + d(m, z) == dxz {
                return m;
            }
        }
        unreachable!("validated median graph has a median for every triple")
    }

    pub fn crossing(&self, c1: u32, c2: u32) -> Crossing {
        if c1 == c2 {
            return Crossing::Equal;
        }
        let a = &self.classes[c1 as usize];
        let b = &self.classes[c2 as usize];
        let mut combos = [false; 4];
        for (i, (&wa, &wb)) in a.side.iter().zip(b.side.iter()).enumerate() {
            let live = if (i + 1) * 64 <= self.n {
                u64::MAX
            } else {
                let rem = self.n - i * 64;
                if rem == 0 {
                    0
                } else {
                    u64::MAX >> (64 - rem)
                }
            };
            if wa & wb & live != 0 {
                combos[0] = true;
            }
            if wa & !wb & live != 0 {
                combos[1] = true;
            }
            if !wa & wb & live != 0 {
                combos[2] = true;
            }
            if !wa & !wb & live != 0 {
                combos[3] = true;
            }
        }
        if combos.iter().all(|&c| c) {
            Crossing::Cross
        } else {
            Crossing::Parallel
        }
    }

    /// Maximum size of a pairwise-crossing set of hyperplanes.
    pub fn dimension(&self) -> usize {
        let k = self.classes.len();
        if k == 0 {
            return if self.n > 0 { 1 } else { 0 };
        }
        let mut adj = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                if self.crossing(i as u32, j as u32) == Crossing::Cross {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        let mut best = 1usize;
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(adj[i].iter().filter(|&&b| b).count()));
        fn grow(adj: &Vec<Vec<bool>>, cand: Vec<usize>, size: usize, best: &mut usize) {
            if cand.is_empty() {
                *best = (*best).max(size);
                return;
            }
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
        grow(&adj, order, 0, &mut best);
        best
    }

    /// True iff the subset is convex (every geodesic between members stays
    /// inside). Checked as connectivity plus closure of length-2 intervals,
    /// which is equivalent on median graphs; `is_convex_by_intervals` is the
    /// brute-force route used to cross-check on small graphs.
    pub fn is_convex(&self, subset: &[u32]) -> bool {
        if subset.is_empty() {
            return true;
        }
        let inset: HashSet<u32> = subset.iter().copied().collect();
        // connectivity inside the subset
        let mut seen = HashSet::new();
        let mut q = VecDeque::new();
        seen.insert(subset[0]);
        q.push_back(subset[0]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v as usize] {
                if inset.contains(&w) && seen.insert(w) {
                    q.push_back(w);
                }
            }
        }
        if seen.len() != inset.len() {
            return false;
        }
        // length-2 interval closure
        for &u in subset {
            for &m in &self.adj[u as usize] {
                if inset.contains(&m) {
                    continue;
                }
                for &v in &self.adj[m as usize] {
                    if v != u && inset.contains(&v) && self.distance(u, v) == 2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Brute-force convexity by full interval enumeration.
    pub fn is_convex_by_intervals(&self, subset: &[u32]) -> bool {
        let inset: HashSet<u32> = subset.iter().copied().collect();
        for &u in subset {
            for &v in subset {
                for m in 0..self.n as u32 {
                    if self.distance(u, m) + self.distance(m, v) == self.distance(u, v)
                        && !inset.contains(&m)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks that for every vertex pair the BFS geodesic crosses pairwise
    /// distinct theta classes; this is equivalent to "distance equals the
    /// number of separating hyperplanes" for every pair.
    pub fn distances_match_separators(&self) -> bool {
        let n = self.n;
        for s in 0..n as u32 {
            // BFS tree from s
            let mut parent = vec![u32::MAX; n];
            let mut q = VecDeque::new();
            parent[s as usize] = s;
            q.push_back(s);
            while let Some(v) = q.pop_front() {
                for &w in &self.adj[v as usize] {
                    if parent[w as usize] == u32::MAX {
                        parent[w as usize] = v;
                        q.push_back(w);
                    }
                }
            }
            let mut crossed = HashSet::new();
            for t in 0..n as u32 {
                if t == s {
                    continue;
                }
                crossed.clear();
                let mut v = t;
                while v != s {
                    let p = parent[v as usize];
                    let c = self.class_of_edge(p, v).expect("tree edge");
                    if !crossed.insert(c) {
                        return false;
                    }
                    v = p;
                }
            }
        }
        true
    }

    /// Enumerates all cubes as (anchor vertex, class set); each cube is
    /// listed once, keyed by its minimal vertex. Dimension-0 cubes are the
    /// vertices themselves.
    fn cubes(&self) -> Vec<(u32, Vec<u32>)> {
        let mut out: Vec<(u32, Vec<u32>)> = Vec::new();
        let mut seen: HashSet<(u32, Vec<u32>)> = HashSet::new();
        for v in 0..self.n as u32 {
            out.push((v, Vec::new()));
        }
        // grow cube class-sets from each vertex; dedup by (min vertex, classes)
        for v in 0..self.n as u32 {
            let incident: Vec<(u32, u32)> = self.adj[v as usize]
                .iter()
                .map(|&w| (self.class_of_edge(v, w).unwrap(), w))
                .collect();
            let deg = incident.len();
            for mask in 1u32..(1 << deg) {
                let classes: Vec<u32> = (0..deg)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| incident[i].0)
                    .collect();
                if classes.len() > 24 {
                    continue;
                }
                if let Some(cube) = self.close_cube(v, &classes) {
                    let anchor = *cube.iter().min().unwrap();
                    let mut cl = classes.clone();
                    cl.sort_unstable();
                    cl.dedup();
                    if cl.len() != classes.len() {
                        continue;
                    }
                    if seen.insert((anchor, cl.clone())) {
                        out.push((anchor, cl));
                    }
                }
            }
        }
        out
    }

    /// Tries to close the cube spanned at `v` by the given classes; returns
    /// its vertex set when it has full size `2^k`.
    fn close_cube(&self, v: u32, classes: &[u32]) -> Option<Vec<u32>> {
        let k = classes.len();
        let target = 1usize << k;
        let inset: HashSet<u32> = classes.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut q = VecDeque::new();
        seen.insert(v);
        q.push_back(v);
        while let Some(u) = q.pop_front() {
            if seen.len() > target {
                return None;
            }
            for &w in &self.adj[u as usize] {
                let c = self.class_of_edge(u, w).unwrap();
                if inset.contains(&c) && seen.insert(w) {
                    q.push_back(w);
                }
            }
        }
        if seen.len() == target {
            let mut vs: Vec<u32> = seen.into_iter().collect();
            vs.sort_unstable();
            Some(vs)
        } else {
            None
        }
    }

    /// First cubical subdivision: one vertex per cube, edges by
    /// codimension-1 face incidence. Returns the subdivided graph together
    /// with the map from cube descriptors to new vertex ids.
    pub fn subdivide(&self) -> (MedianGraph, SubdivisionMap) {
        let cubes = self.cubes();
        let mut index: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
        let mut names = Vec::with_capacity(cubes.len());
        let mut sorted = cubes.clone();
        sorted.sort();
        for (i, c) in sorted.iter().enumerate() {
            index.insert(c.clone(), i as u32);
            let cls: Vec<String> = c.1.iter().map(|x| x.to_string()).collect();
            names.push(format!("c{}[{}]", self.names[c.0 as usize], cls.join(",")));
        }
        let mut edge_set: HashSet<(u32, u32)> = HashSet::new();
        for cube in &sorted {
            let (anchor, classes) = cube;
            if classes.is_empty() {
                continue;
            }
            let id = index[cube];
            // facets: drop one class, split the cube along it
            let full = self.close_cube(*anchor, classes).expect("cube closes");
            for (ci, &c) in classes.iter().enumerate() {
                let rest: Vec<u32> = classes
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != ci)
                    .map(|(_, &x)| x)
                    .collect();
                for side in [false, true] {
                    let half: Vec<u32> = full
                        .iter()
                        .copied()
                        .filter(|&v| self.classes[c as usize].plus_side(v) == side)
                        .collect();
                    let anchor2 = *half.iter().min().unwrap();
                    let mut key_rest = rest.clone();
                    key_rest.sort_unstable();
                    let fid = index[&(anchor2, key_rest)];
                    let k = (id.min(fid), id.max(fid));
                    edge_set.insert(k);
                }
            }
        }
        let mut edges: Vec<(u32, u32)> = edge_set.into_iter().collect();
        edges.sort_unstable();
        let raw = RawGraph {
            vertices: names.clone(),
            edges: edges
                .iter()
                .map(|&(a, b)| (names[a as usize].clone(), names[b as usize].clone()))
                .collect(),
        };
        let g = MedianGraph::from_trusted(&raw).expect("subdivision is a graph");
        (g, SubdivisionMap { cube_index: index })
    }
}

/// Maps cubes of the original complex to subdivision vertices.
#[derive(Clone, Debug)]
pub struct SubdivisionMap {
    cube_index: HashMap<(u32, Vec<u32>), u32>,
}

impl SubdivisionMap {
    /// Subdivision vertex of an original vertex.
    pub fn vertex(&self, v: u32) -> u32 {
        self.cube_index[&(v, Vec::new())]
    }

    /// Pushes a vertex bijection of the original graph to the subdivision.
    pub fn induce_map(&self, g: &MedianGraph, f: &[u32]) -> Vec<u32> {
        let sub_n = self.cube_index.len();
        let mut out = vec![u32::MAX; sub_n];
        for ((anchor, classes), &id) in &self.cube_index {
            // image cube: image of the vertex set
            let full = g.close_cube(*anchor, classes).expect("cube closes");
            let img: Vec<u32> = full.iter().map(|&v| f[v as usize]).collect();
            let anchor2 = *img.iter().min().unwrap();
            let mut img_classes: Vec<u32> = classes
                .iter()
                .map(|&c| {
                    let (a, b) = g.classes[c as usize].edges[0];
                    g.class_of_edge(f[a as usize], f[b as usize])
                        .expect("automorphism preserves edges")
                })
                .collect();
            img_classes.sort_unstable();
            out[id as usize] = self.cube_index[&(anchor2, img_classes)];
        }
        out
    }
}

/// Convenience: validate from vertex/edge lists with string names.
pub fn validate_median(raw: &RawGraph) -> Result<MedianGraph, MedianError> {
    MedianGraph::validate(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn path_is_median_with_two_classes() {
        let g = corpus::path(3);
        let g = MedianGraph::validate(&g).unwrap();
        assert_eq!(g.class_count(), 2);
    }

    #[test]
    fn grid_3x3_valid_four_classes() {
        // oracle: brute-force median check over all triples runs inside
        // validate(); class count derived from square-relation closure
        let g = MedianGraph::validate(&corpus::grid(3, 3)).unwrap();
        assert_eq!(g.class_count(), 4);
    }

    #[test]
    fn triangle_rejected_with_witness() {
        let raw = RawGraph {
            vertices: vec!["0".into(), "1".into(), "2".into()],
            edges: vec![
                ("0".into(), "1".into()),
                ("1".into(), "2".into()),
                ("0".into(), "2".into()),
            ],
        };
        match MedianGraph::validate(&raw) {
            Err(MedianError::NotMedian { count, .. }) => assert_eq!(count, 0),
            other => panic!("expected NotMedian, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_rejected() {
        let raw = RawGraph {
            vertices: vec!["0".into(), "1".into()],
            edges: vec![],
        };
        assert!(matches!(
            MedianGraph::validate(&raw),
            Err(MedianError::NotConnected)
        ));
    }

    #[test]
    fn hyperplane_of_path_edge() {
        let g = MedianGraph::validate(&corpus::path(3)).unwrap();
        let h = g
            .hyperplane_of_edge(g.vertex("0").unwrap(), g.vertex("1").unwrap())
            .unwrap();
        assert_eq!(h.halfspace_minus, vec![g.vertex("0").unwrap()]);
        assert_eq!(h.halfspace_plus.len(), 2);
    }

    #[test]
    fn grid_column_class_has_three_edges() {
        let g = MedianGraph::validate(&corpus::grid(3, 3)).unwrap();
        let u = g.vertex("0,0").unwrap();
        let v = g.vertex("1,0").unwrap();
        let h = g.hyperplane_of_edge(u, v).unwrap();
        assert_eq!(h.edges.len(), 3);
        assert_eq!(h.halfspace_minus.len(), 3); // column 0
    }

    #[test]
    fn square_class_pairs_opposite_edges() {
        let g = MedianGraph::validate(&corpus::grid(2, 2)).unwrap();
        assert_eq!(g.class_count(), 2);
        let h = g.hyperplane_of_edge(0, 1).unwrap();
        assert_eq!(h.edges.len(), 2);
    }

    #[test]
    fn separation_examples() {
        let g = MedianGraph::validate(&corpus::path(3)).unwrap();
        let c = g.class_of_edge(0, 1).unwrap();
        assert!(g.separates(c, 0, 2));
        assert!(!g.separates(c, 1, 1));
        let grid = MedianGraph::validate(&corpus::grid(3, 3)).unwrap();
        let vc = grid
            .class_of_edge(grid.vertex("0,0").unwrap(), grid.vertex("1,0").unwrap())
            .unwrap();
        // vertical class between columns 0 and 1 separates (0,2) and (2,0):
        // halfspace listing oracle
        let a = grid.vertex("2,0").unwrap();
        let b = grid.vertex("0,2").unwrap();
        assert!(grid.separates(vc, a, b));
    }

    #[test]
    fn distance_equals_separator_count() {
        let g = MedianGraph::validate(&corpus::grid(3, 3)).unwrap();
        let a = g.vertex("0,0").unwrap();
        let b = g.vertex("2,1").unwrap();
        assert_eq!(g.distance(a, b), 3);
        assert_eq!(g.classes_separating(a, b).len(), 3);
        assert!(g.distances_match_separators());
    }

    #[test]
    fn median_examples() {
        let g = MedianGraph::validate(&corpus::grid(3, 3)).unwrap();
        let o = g.vertex("0,0").unwrap();
        let a = g.vertex("2,0").unwrap();
        let b = g.vertex("0,2").unwrap();
        // brute-force oracle: scan all vertices for the triple-interval point
        let mut found = Vec::new();
        for m in 0..g.vertex_count() as u32 {
            if g.distance(o, m) + g.distance(m, a) == g.distance(o, a)
                && g.distance(a, m) + g.distance(m, b) == g.distance(a, b)
                && g.distance(o, m) + g.distance(m, b) == g.distance(o, b)
            {
                found.push(m);
            }
        }
        assert_eq!(found, vec![o]);
        assert_eq!(g.median(o, a, b), o);
        assert_eq!(g.median(o, o, a), o);
        let p = MedianGraph::validate(&corpus::path(3)).unwrap();
        assert_eq!(p.median(0, 1, 2), 1);
    }

    #[test]
    fn crossing_examples() {
        let g = MedianGraph::validate(&corpus::grid(3, 3)).unwrap();
        let vc = g
            .class_of_edge(g.vertex("0,0").unwrap(), g.vertex("1,0").unwrap())
            .unwrap();
        let hc = g
            .class_of_edge(g.vertex("0,0").unwrap(), g.vertex("0,1").unwrap())
            .unwrap();
        assert_eq!(g.crossing(vc, vc), Crossing::Equal);
        assert_eq!(g.crossing(vc, hc), Crossing::Cross);
        let p = MedianGraph::validate(&corpus::path(3)).unwrap();
        assert_eq!(p.crossing(0, 1), Crossing::Parallel);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(
            MedianGraph::validate(&corpus::path(5)).unwrap().dimension(),
            1
        );
        assert_eq!(
            MedianGraph::validate(&corpus::grid(3, 3))
                .unwrap()
                .dimension(),
            2
        );
        assert_eq!(
            MedianGraph::validate(&corpus::cube3()).unwrap().dimension(),
            3
        );
    }

    #[test]
    fn subdivision_examples() {
        let e = MedianGraph::validate(&corpus::path(2)).unwrap();
        let (se, _) = e.subdivide();
        assert_eq!(se.vertex_count(), 3);
        assert_eq!(se.edges.len(), 2);

        let sq = MedianGraph::validate(&corpus::grid(2, 2)).unwrap();
        let (ssq, _) = sq.subdivide();
        assert_eq!(ssq.vertex_count(), 9);
        assert_eq!(ssq.edges.len(), 12);

        let p = MedianGraph::validate(&corpus::path(3)).unwrap();
        let (sp, _) = p.subdivide();
        assert_eq!(sp.vertex_count(), 5);
        assert_eq!(sp.edges.len(), 4);
    }

    #[test]
    fn subdivision_doubles_distances() {
        let g = MedianGraph::validate(&corpus::grid(3, 2)).unwrap();
        let (s, map) = g.subdivide();
        for u in 0..g.vertex_count() as u32 {
            for v in 0..g.vertex_count() as u32 {
                assert_eq!(
                    s.distance(map.vertex(u), map.vertex(v)),
                    2 * g.distance(u, v)
                );
            }
        }
    }

    #[test]
    fn convexity_examples() {
        let g = MedianGraph::validate(&corpus::grid(3, 3)).unwrap();
        assert!(g.is_convex(&[g.vertex("1,1").unwrap()]));
        for c in 0..g.class_count() as u32 {
            let h = g.hyperplane(c);
            assert!(g.is_convex(&h.halfspace_minus));
            assert!(g.is_convex(&h.halfspace_plus));
            assert!(g.is_convex(&h.carrier));
            // cross-check with brute-force interval enumeration
            assert!(g.is_convex_by_intervals(&h.halfspace_minus));
            assert!(g.is_convex_by_intervals(&h.carrier));
        }
        let corners = [g.vertex("0,0").unwrap(), g.vertex("2,2").unwrap()];
        assert!(!g.is_convex(&corners));
        assert!(!g.is_convex_by_intervals(&corners));
    }

    #[test]
    fn pairwise_crossing_classes_share_carrier_vertices() {
        // on the 3-cube every pair and the full triple of classes has
        // pairwise-crossing carriers meeting in a common cube corner
        let g = MedianGraph::validate(&corpus::cube3()).unwrap();
        let ids: Vec<u32> = (0..g.class_count() as u32).collect();
        for &a in &ids {
            for &b in &ids {
                if a < b && g.crossing(a, b) == Crossing::Cross {
                    let ca: HashSet<u32> = g.classes[a as usize].carrier.iter().copied().collect();
                    assert!(g.classes[b as usize].carrier.iter().any(|v| ca.contains(v)));
                }
            }
        }
        // k = 3: the three classes of the cube share the whole cube
        let common: Vec<u32> = (0..g.vertex_count() as u32)
            .filter(|&v| ids.iter().all(|&c| g.on_carrier(c, v)))
            .collect();
        assert!(!common.is_empty());
    }
}
