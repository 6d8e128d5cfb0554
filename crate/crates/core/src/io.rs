//! File formats and DOT export.
//!
//! * Graph files: `{"vertices": ["a", ...], "edges": [["a","b"], ...]}`
//! * Action files: `{"graph": {...}, "generators": {"a": {"v": "w", ...}},
//!   "basepoint": "v"}` — generator maps are total vertex bijections.
//! * Automaton files: `{"vertices": [...], "start": "s", "edges":
//!   [{"from","to","label"}], "checkpoints": {"v": ["u","w"]}}` where a
//!   checkpoint's wall is addressed by a representative edge of the bound
//!   action's window.
//! * Relator files: one word per line, letters `a..z` with `'` for
//!   inverses; blank lines and `#` comments are skipped.

use crate::action::{action_from_maps, ActionError, CubeAction};
use crate::automaton::Automaton;
use crate::complex::Wall;
use crate::letters::{parse_word, Alphabet, Word};
use crate::median::{MedianGraph, RawGraph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("format: {0}")]
    Format(String),
    #[error(transparent)]
    Median(#[from] crate::median::MedianError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

pub fn load_graph(path: &Path) -> Result<RawGraph, IoError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| IoError::Format(e.to_string()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionFile {
    pub graph: RawGraph,
    pub generators: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub basepoint: Option<String>,
}

pub fn load_action(path: &Path) -> Result<CubeAction, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file: ActionFile =
        serde_json::from_str(&text).map_err(|e| IoError::Format(e.to_string()))?;
    let graph = MedianGraph::validate(&file.graph)?;
    let total = file
        .generators
        .values()
        .all(|m| m.len() == graph.vertex_count());
    if total {
        let named: std::collections::HashMap<String, std::collections::HashMap<String, String>> =
            file.generators
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().collect()))
                .collect();
        return Ok(action_from_maps(graph, &named, file.basepoint.as_deref())?);
    }
    // partial maps: a window onto a larger complex; inverse letters act by
    // the inverted pairs
    let n = graph.vertex_count();
    let mut gens: Vec<Vec<Option<u32>>> = Vec::new();
    for (_, m) in &file.generators {
        let mut fwd = vec![None; n];
        let mut bwd = vec![None; n];
        for (from, to) in m {
            let u = graph.vertex(from)?;
            let v = graph.vertex(to)?;
            if fwd[u as usize].is_some() || bwd[v as usize].is_some() {
                return Err(IoError::Format(format!(
                    "generator map is not injective at {from}"
                )));
            }
            fwd[u as usize] = Some(v);
            bwd[v as usize] = Some(u);
        }
        gens.push(fwd);
        gens.push(bwd);
    }
    let bp = match &file.basepoint {
        Some(name) => graph.vertex(name)?,
        None => 0,
    };
    Ok(CubeAction::explicit_partial(graph, gens, bp))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub rank: usize,
    pub vertices: Vec<String>,
    pub start: String,
    pub edges: Vec<AutomatonEdge>,
    #[serde(default)]
    pub checkpoints: BTreeMap<String, (String, String)>,
    /// Letters the automaton is measured against, when built over a
    /// sub-alphabet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub active: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutomatonEdge {
    pub from: String,
    pub to: String,
    pub label: String,
}

/// Serializes an automaton; checkpoint walls become representative edges of
/// the supplied action's window.
pub fn automaton_to_file(a: &Automaton, action: Option<&CubeAction>) -> AutomatonFile {
    let mut checkpoints = BTreeMap::new();
    if let Some(act) = action {
        for (&v, &w) in &a.checkpoints {
            let (p, q) = act.complex.rep_edge(w);
            checkpoints.insert(
                a.names[v as usize].clone(),
                (act.complex.display_vertex(p), act.complex.display_vertex(q)),
            );
        }
    }
    let mut edges = Vec::new();
    for (v, list) in a.out.iter().enumerate() {
        for &(l, t) in list {
            edges.push(AutomatonEdge {
                from: a.names[v].clone(),
                to: a.names[t as usize].clone(),
                label: a.alphabet.name(l).to_string(),
            });
        }
    }
    AutomatonFile {
        rank: a.alphabet.rank(),
        vertices: a.names.clone(),
        start: a.names[a.start as usize].clone(),
        edges,
        checkpoints,
        active: a
            .active_letters
            .as_ref()
            .map(|ls| ls.iter().map(|&l| a.alphabet.name(l).to_string()).collect()),
    }
}

/// Loads an automaton; checkpoint references are resolved through the
/// action's window when one is supplied.
pub fn automaton_from_file(
    file: &AutomatonFile,
    action: Option<&CubeAction>,
) -> Result<Automaton, IoError> {
    let alpha = Alphabet::base(file.rank);
    let index: BTreeMap<&str, u32> = file
        .vertices
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i as u32))
        .collect();
    let &start = index
        .get(file.start.as_str())
        .ok_or_else(|| IoError::Format(format!("unknown start vertex {}", file.start)))?;
    let mut a = Automaton::new(alpha.clone(), file.vertices.len(), start);
    a.names = file.vertices.clone();
    for e in &file.edges {
        let &from = index
            .get(e.from.as_str())
            .ok_or_else(|| IoError::Format(format!("unknown vertex {}", e.from)))?;
        let &to = index
            .get(e.to.as_str())
            .ok_or_else(|| IoError::Format(format!("unknown vertex {}", e.to)))?;
        let l = alpha
            .parse_letter(&e.label)
            .ok_or_else(|| IoError::Format(format!("unknown letter {}", e.label)))?;
        a.add_edge(from, l, to);
    }
    if let Some(names) = &file.active {
        let mut letters = Vec::new();
        for n in names {
            letters.push(
                alpha
                    .parse_letter(n)
                    .ok_or_else(|| IoError::Format(format!("unknown letter {n}")))?,
            );
        }
        a.active_letters = Some(letters);
    }
    if let Some(act) = action {
        for (vname, (p, q)) in &file.checkpoints {
            let &v = index
                .get(vname.as_str())
                .ok_or_else(|| IoError::Format(format!("unknown checkpoint {vname}")))?;
            let pv = act
                .complex
                .parse_vertex(p)
                .ok_or_else(|| IoError::Format(format!("unknown vertex {p}")))?;
            let qv = act
                .complex
                .parse_vertex(q)
                .ok_or_else(|| IoError::Format(format!("unknown vertex {q}")))?;
            let wall = act
                .complex
                .wall_of_edge(pv, qv)
                .ok_or_else(|| IoError::Format(format!("({p}, {q}) is not an edge")))?;
            a.checkpoints.insert(v, wall);
        }
    }
    // without an action the wall references stay unresolved and only the
    // language structure is loaded
    Ok(a)
}

/// DOT rendering straight from an automaton file; checkpoint vertices are
/// double-circled without resolving their wall references.
pub fn automaton_file_to_dot(file: &AutomatonFile) -> String {
    let mut s = String::from("digraph {\n  rankdir=LR;\n  node [shape=circle];\n");
    for name in &file.vertices {
        let shape = if file.checkpoints.contains_key(name) {
            "doublecircle"
        } else if *name == file.start {
            "square"
        } else {
            "circle"
        };
        s.push_str(&format!("  \"{name}\" [shape={shape}];\n"));
    }
    for e in &file.edges {
        s.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            e.from, e.to, e.label
        ));
    }
    s.push_str("}\n");
    s
}

pub fn load_relators(path: &Path, alpha: &Alphabet) -> Result<Vec<Word>, IoError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let w = parse_word(line, alpha)
            .ok_or_else(|| IoError::Format(format!("bad word on line {}", ln + 1)))?;
        out.push(w);
    }
    Ok(out)
}

const PALETTE: [&str; 10] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6", "#bcf60c",
    "#008080", "#9a6324",
];

/// Deterministic DOT rendering of a median graph with colored wall classes.
pub fn graph_to_dot(g: &MedianGraph) -> String {
    let mut s = String::from("graph {\n  node [shape=circle];\n");
    for name in &g.names {
        s.push_str(&format!("  \"{name}\";\n"));
    }
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        let class = g.class_of_edge(u, v).unwrap();
        let color = PALETTE[class as usize % PALETTE.len()];
        let _ = i;
        s.push_str(&format!(
            "  \"{}\" -- \"{}\" [color=\"{}\"];\n",
            g.names[u as usize], g.names[v as usize], color
        ));
    }
    s.push_str("}\n");
    s
}

/// Deterministic DOT rendering of an automaton; checkpoints are drawn with
/// double circles.
pub fn automaton_to_dot(a: &Automaton) -> String {
    let mut s = String::from("digraph {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (i, name) in a.names.iter().enumerate() {
        let shape = if a.checkpoints.contains_key(&(i as u32)) {
            "doublecircle"
        } else if i as u32 == a.start {
            "square"
        } else {
            "circle"
        };
        s.push_str(&format!("  \"{name}\" [shape={shape}];\n"));
    }
    for (v, list) in a.out.iter().enumerate() {
        for &(l, t) in list {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                a.names[v],
                a.names[t as usize],
                a.alphabet.name(l)
            ));
        }
    }
    s.push_str("}\n");
    s
}

/// Serializes a wall as a representative edge in the window.
pub fn wall_display(action: &CubeAction, w: Wall) -> (String, String) {
    let (p, q) = action.complex.rep_edge(w);
    (
        action.complex.display_vertex(p),
        action.complex.display_vertex(q),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn graph_roundtrip() {
        let raw = corpus::grid(3, 3);
        let text = serde_json::to_string(&raw).unwrap();
        let back: RawGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(raw.vertices, back.vertices);
        assert_eq!(raw.edges, back.edges);
    }

    #[test]
    fn automaton_roundtrip_with_checkpoints() {
        use crate::builder::build_automaton;
        use crate::rat::q;
        let act = CubeAction::tree_ball(2, 8);
        let (auto, _) = build_automaton(&act, act.basepoint, 1, &q(1, 4)).unwrap();
        let file = automaton_to_file(&auto, Some(&act));
        let back = automaton_from_file(&file, Some(&act)).unwrap();
        assert_eq!(back.vertex_count(), auto.vertex_count());
        assert_eq!(back.edge_count(), auto.edge_count());
        assert_eq!(back.checkpoints, auto.checkpoints);
    }

    #[test]
    fn dot_is_deterministic() {
        let g = MedianGraph::validate(&corpus::grid(2, 3)).unwrap();
        assert_eq!(graph_to_dot(&g), graph_to_dot(&g));
        assert!(graph_to_dot(&g).contains("--"));
    }

    #[test]
    fn partial_window_action_loads() {
        // a 5-vertex path window of the line with a one-step translation:
        // the map is undefined at the window edge
        let text = r#"{
            "graph": {"vertices": ["0","1","2","3","4"],
                      "edges": [["0","1"],["1","2"],["2","3"],["3","4"]]},
            "generators": {"a": {"0":"1","1":"2","2":"3","3":"4"}},
            "basepoint": "2"
        }"#;
        let dir = std::env::temp_dir().join("cubefix-io-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("partial.json");
        std::fs::write(&path, text).unwrap();
        let act = load_action(&path).unwrap();
        assert!(!act.is_total());
        let x = act.basepoint;
        assert_eq!(act.complex.display_vertex(x), "2");
        let vis = act.visible(x).unwrap();
        assert_eq!(vis.all.len(), 2);
        // walking off the window reports the position
        let w = crate::letters::parse_word("aa", &act.alphabet).unwrap();
        assert!(act.apply(&w, x).is_ok());
        let w3 = crate::letters::parse_word("aaa", &act.alphabet).unwrap();
        assert!(act.apply(&w3, x).is_err());
    }
}
