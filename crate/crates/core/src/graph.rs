//! The graph of a class: minimal words modulo `J` joined by level principal
//! automorphisms.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automorphism::{
    canonical_mod_j, canonical_with_witness, Automorphism, JCanonicalForm, OneLetterAut, Permutation,
};
use crate::error::{Error, Result};
use crate::minimality::{is_level, is_minimal, is_root};
use crate::word::{is_alternating, CyclicWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphType {
    P1,
    P2,
    P3,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

impl GraphType {
    pub const ALL: [GraphType; 10] = [
        GraphType::P1,
        GraphType::P2,
        GraphType::P3,
        GraphType::R1,
        GraphType::R2,
        GraphType::R3,
        GraphType::R4,
        GraphType::R5,
        GraphType::R6,
        GraphType::R7,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_path(self) -> bool {
        matches!(self, GraphType::P1 | GraphType::P2 | GraphType::P3)
    }

    pub fn as_str(self) -> &'static str {
        ["P1", "P2", "P3", "R1", "R2", "R3", "R4", "R5", "R6", "R7"][self.index()]
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphType {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphType> {
        GraphType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::GraphDocument(format!("unknown graph type {s:?}")))
    }
}

impl Serialize for GraphType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for GraphType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<GraphType, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A directed edge labelled by the principal index `1..=4` of the level
/// automorphism that produces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub principal: u8,
}

/// For each principal automorphism level on `w`, the canonical form of the
/// image together with the move reaching it from the raw image.
pub fn level_images(w: &CyclicWord) -> [Option<(JCanonicalForm, Permutation, usize)>; 4] {
    let mut out = [None, None, None, None];
    for (slot, phi) in out.iter_mut().zip(OneLetterAut::PRINCIPAL) {
        if is_level(phi, w) {
            *slot = Some(canonical_with_witness(&phi.apply_cyclic(w)));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGraph {
    length: usize,
    vertices: Vec<CyclicWord>,
    edges: Vec<Edge>,
    graph_type: GraphType,
    root: bool,
    alternating: bool,
}

/// Builds the graph of the class of a minimal word.
pub fn build_graph(w: &CyclicWord) -> Result<ClassGraph> {
    if !is_minimal(w) {
        return Err(Error::NotMinimal(w.to_string()));
    }
    let start = canonical_mod_j(w).into_word();
    let mut seen: BTreeMap<CyclicWord, [Option<CyclicWord>; 4]> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(rep) = queue.pop_front() {
        if seen.contains_key(&rep) {
            continue;
        }
        let targets = level_images(&rep).map(|image| image.map(|(c, _, _)| c.into_word()));
        for t in targets.iter().flatten() {
            if !seen.contains_key(t) {
                queue.push_back(t.clone());
            }
        }
        seen.insert(rep, targets);
    }
    let vertices: Vec<CyclicWord> = seen.keys().cloned().collect();
    let position = |v: &CyclicWord| vertices.binary_search(v).expect("closed under level images");
    let mut edges = Vec::new();
    for (from, targets) in seen.values().enumerate() {
        for (i, t) in targets.iter().enumerate() {
            if let Some(t) = t {
                edges.push(Edge {
                    from,
                    to: position(t),
                    principal: i as u8 + 1,
                });
            }
        }
    }
    ClassGraph::from_parts(vertices, edges)
}

impl ClassGraph {
    /// Assembles and classifies a graph from canonical vertices and edges.
    /// Vertices are sorted and edge endpoints remapped accordingly.
    pub fn from_parts(vertices: Vec<CyclicWord>, edges: Vec<Edge>) -> Result<ClassGraph> {
        let Some(first) = vertices.first() else {
            return Err(Error::GraphDocument("graph has no vertices".into()));
        };
        let length = first.len();
        if vertices.iter().any(|v| v.len() != length) {
            return Err(Error::Violation("vertices of different lengths in one class".into()));
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&i, &j| vertices[i].cmp(&vertices[j]));
        let mut new_index = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let vertices: Vec<CyclicWord> = order.iter().map(|&i| vertices[i].clone()).collect();
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| Edge {
                from: new_index[e.from],
                to: new_index[e.to],
                principal: e.principal,
            })
            .collect();
        edges.sort_by_key(|e| (e.from, e.principal, e.to));

        let root = is_root(first);
        if vertices.iter().any(|v| is_root(v) != root) {
            return Err(Error::Violation(format!(
                "class of {first} mixes root and non-root minimal words"
            )));
        }
        let alternating_count = vertices.iter().filter(|v| is_alternating(v)).count();
        if root && alternating_count > 1 {
            return Err(Error::Violation(format!(
                "class of {first} has {alternating_count} alternating words modulo J"
            )));
        }
        let alternating = alternating_count > 0;
        let graph_type = classify(&vertices, &edges, root)?;
        Ok(ClassGraph {
            length,
            vertices,
            edges,
            graph_type,
            root,
            alternating,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn vertices(&self) -> &[CyclicWord] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn graph_type(&self) -> GraphType {
        self.graph_type
    }

    pub fn is_root(&self) -> bool {
        self.root
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    /// The unique alternating vertex of a root class, if any.
    pub fn alternating_vertex(&self) -> Option<&CyclicWord> {
        self.vertices.iter().find(|v| is_alternating(v))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n    label=\"{name} ({})\";\n", self.graph_type);
        for (i, v) in self.vertices.iter().enumerate() {
            let label = if v.is_empty() { "ε".to_string() } else { v.to_string() };
            out.push_str(&format!("    v{i} [label=\"{label}\"];\n"));
        }
        for e in &self.edges {
            out.push_str(&format!("    v{} -> v{} [label=\"{}\"];\n", e.from, e.to, e.principal));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDocument::from(self)).expect("graph documents serialize")
    }

    /// Parses a graph document, rebuilding and reclassifying it. The stored
    /// type and flags must agree with the recomputed ones.
    pub fn from_json(text: &str) -> Result<ClassGraph> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::GraphDocument(e.to_string()))?;
        let vertices = doc
            .vertices
            .iter()
            .map(|s| s.parse::<CyclicWord>())
            .collect::<Result<Vec<_>>>()?;
        if let Some(e) = doc
            .edges
            .iter()
            .find(|e| e.from >= vertices.len() || e.to >= vertices.len() || !(1..=4).contains(&e.principal))
        {
            return Err(Error::GraphDocument(format!("edge out of range: {e:?}")));
        }
        let graph = ClassGraph::from_parts(vertices, doc.edges.clone())?;
        let mismatch = |field: &str| Err(Error::GraphDocument(format!("{field} does not match the graph")));
        if graph.length != doc.length {
            return mismatch("length");
        }
        if graph.graph_type != doc.graph_type {
            return mismatch("type");
        }
        if graph.size() != doc.size {
            return mismatch("size");
        }
        if graph.root != doc.root {
            return mismatch("root");
        }
        if graph.alternating != doc.alternating {
            return mismatch("alternating");
        }
        Ok(graph)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDocument {
    length: usize,
    #[serde(rename = "type")]
    graph_type: GraphType,
    size: usize,
    root: bool,
    alternating: bool,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl From<&ClassGraph> for GraphDocument {
    fn from(g: &ClassGraph) -> GraphDocument {
        GraphDocument {
            length: g.length,
            graph_type: g.graph_type,
            size: g.size(),
            root: g.root,
            alternating: g.alternating,
            vertices: g.vertices.iter().map(|v| v.to_string()).collect(),
            edges: g.edges.clone(),
        }
    }
}

type Matrix = Vec<Vec<u8>>;

fn multiplicities(k: usize, edges: &[Edge]) -> Matrix {
    let mut m = vec![vec![0u8; k]; k];
    for e in edges {
        m[e.from][e.to] += 1;
    }
    m
}

fn classify(vertices: &[CyclicWord], edges: &[Edge], root: bool) -> Result<GraphType> {
    let m = multiplicities(vertices.len(), edges);
    let found = if root {
        let alternating = vertices.iter().position(is_alternating);
        classify_root(&m, alternating)
    } else {
        classify_path(&m)
    };
    found.ok_or_else(|| Error::Unrecognized {
        vertices: vertices.iter().map(|v| v.to_string()).collect(),
        edges: edges.iter().map(|e| (e.from, e.to, e.principal)).collect(),
    })
}

/// Orders the vertices along a path, starting from the endpoint that carries
/// the loop or double edge if there is one.
fn classify_path(m: &Matrix) -> Option<GraphType> {
    let k = m.len();
    if k == 1 {
        return match m[0][0] {
            0 => Some(GraphType::P1),
            1 => Some(GraphType::P2),
            2 => Some(GraphType::P3),
            _ => None,
        };
    }
    let neighbours = |i: usize| (0..k).filter(move |&j| j != i && (m[i][j] > 0 || m[j][i] > 0));
    let ends: Vec<usize> = (0..k).filter(|&i| neighbours(i).count() == 1).collect();
    if ends.len() != 2 || (0..k).any(|i| neighbours(i).count() > 2) {
        return None;
    }
    let mut order = vec![ends[0]];
    while order.len() < k {
        let last = *order.last()?;
        let next = neighbours(last).find(|j| order.len() < 2 || *j != order[order.len() - 2])?;
        if order.contains(&next) {
            return None;
        }
        order.push(next);
    }
    if *order.last()? != ends[1] {
        return None;
    }

    let (first, last) = (order[0], order[k - 1]);
    let mut loops = 0;
    let mut doubles = 0;
    for (pos, &v) in order.iter().enumerate() {
        let is_end = v == first || v == last;
        match m[v][v] {
            0 => {}
            1 if is_end => loops += 1,
            _ => return None,
        }
        if pos + 1 < k {
            let w = order[pos + 1];
            let (fwd, back) = (m[v][w], m[w][v]);
            match (fwd, back) {
                (1, 1) => {}
                (1, 2) if w == last => doubles += 1,
                (2, 1) if v == first => doubles += 1,
                _ => return None,
            }
        }
    }
    match (loops, doubles) {
        (0, 0) => Some(GraphType::P1),
        (1, 0) => Some(GraphType::P2),
        (0, 1) => Some(GraphType::P3),
        _ => None,
    }
}

fn root_templates() -> Vec<(GraphType, bool, Matrix)> {
    vec![
        (GraphType::R1, false, vec![vec![2]]),
        (GraphType::R2, false, vec![vec![0, 2], vec![1, 1]]),
        (GraphType::R3, false, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]),
        (GraphType::R4, true, vec![vec![4]]),
        (GraphType::R5, true, vec![vec![2, 2], vec![2, 0]]),
        (GraphType::R6, true, vec![vec![0, 2, 2], vec![1, 0, 1], vec![1, 1, 0]]),
        (
            GraphType::R7,
            true,
            vec![
                vec![0, 1, 1, 1, 1],
                vec![1, 0, 1, 0, 0],
                vec![1, 1, 0, 0, 0],
                vec![1, 0, 0, 0, 1],
                vec![1, 0, 0, 1, 0],
            ],
        ),
    ]
}

/// Matches against the root templates up to relabelling. When an alternating
/// vertex exists it must play the role of template vertex 0.
fn classify_root(m: &Matrix, alternating: Option<usize>) -> Option<GraphType> {
    let k = m.len();
    root_templates()
        .into_iter()
        .filter(|(_, needs_alt, t)| *needs_alt == alternating.is_some() && t.len() == k)
        .find(|(_, _, t)| {
            permutations(k).iter().any(|p| {
                alternating.map_or(true, |a| p[0] == a) && (0..k).all(|i| (0..k).all(|j| t[i][j] == m[p[i]][p[j]]))
            })
        })
        .map(|(ty, _, _)| ty)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                extend(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(k), k, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(s: &str) -> ClassGraph {
        build_graph(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_classes() {
        assert_eq!(graph("").graph_type(), GraphType::R4);
        assert_eq!(graph("a").graph_type(), GraphType::P3);
        assert_eq!(graph("aa").graph_type(), GraphType::P3);
        assert_eq!(graph("abAB").graph_type(), GraphType::R4);

        let g = graph("abaB");
        assert_eq!(g.graph_type(), GraphType::R5);
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.alternating_vertex().unwrap().to_string(), "abaB");
    }

    #[test]
    fn vertices_and_edges_are_sorted() {
        let g = graph("aabaBabb");
        assert_eq!(g.graph_type(), GraphType::R7);
        assert!(g.vertices().windows(2).all(|w| w[0] < w[1]));
        assert!(g
            .edges()
            .windows(2)
            .all(|w| (w[0].from, w[0].principal) < (w[1].from, w[1].principal)));
        assert_eq!(g.edges().len(), 12);
    }

    #[test]
    fn rejects_non_minimal() {
        assert!(matches!(
            build_graph(&"abab".parse().unwrap()),
            Err(Error::NotMinimal(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        for s in ["aabaBabb", "aaaabb", "", "aaabbabb"] {
            let g = graph(s);
            let back = ClassGraph::from_json(&g.to_json()).unwrap();
            assert_eq!(back, g);
        }
        let doc = graph("aabb").to_json().replace("\"R5\"", "\"R1\"");
        assert!(matches!(ClassGraph::from_json(&doc), Err(Error::GraphDocument(_))));
    }

    #[test]
    fn dot_output() {
        let dot = graph("").to_dot("0.1");
        assert!(dot.contains("label=\"ε\""));
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn path_shapes() {
        let m = |rows: &[&[u8]]| rows.iter().map(|r| r.to_vec()).collect::<Matrix>();
        assert_eq!(classify_path(&m(&[&[0, 1], &[1, 0]])), Some(GraphType::P1));
        assert_eq!(
            classify_path(&m(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 1]])),
            Some(GraphType::P2)
        );
        assert_eq!(
            classify_path(&m(&[&[0, 2, 0], &[1, 0, 1], &[0, 1, 0]])),
            Some(GraphType::P3)
        );
        assert_eq!(classify_path(&m(&[&[1, 1], &[1, 1]])), None);
        assert_eq!(classify_path(&m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])), None);
    }
}
