//! Plane directed multigraphs encoded as rotation systems.
//!
//! Every edge `e` has two half-edges: `2e` at its tail and `2e + 1` at its head.
//! The same integers double as darts: dart `2e` traverses `e` forwards and dart
//! `2e + 1` backwards, so dart `d` leaves from half-edge `d` and arrives at
//! half-edge `d ^ 1`. Faces are traced so that each dart has its face on the
//! right; hence the face on the right of `e` (its east side) is the face of
//! dart `2e` and the face on its left (west side) is the face of dart `2e + 1`.

mod io;

pub use io::{RawEdge, RawGraph, RawVertex};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

pub const fn half_edge(edge: usize, end: End) -> usize {
    2 * edge + matches!(end, End::Head) as usize
}

pub const fn edge_of(h: usize) -> usize {
    h / 2
}

pub const fn end_of(h: usize) -> End {
    if h.is_multiple_of(2) {
        End::Tail
    } else {
        End::Head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: i64,
    pub tail: usize,
    pub head: usize,
    pub color: u32,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: i64,
    /// Half-edges in counter-clockwise order.
    pub rotation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Darts in traversal order; the face lies to the right of each.
    pub darts: Vec<usize>,
}

impl Face {
    /// Boundary as `(edge, side)` pairs.
    pub fn boundary(&self) -> Vec<(usize, Side)> {
        self.darts
            .iter()
            .map(|&d| (edge_of(d), if d % 2 == 0 { Side::Right } else { Side::Left }))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertex_count: usize,
    /// Per primal edge: `(right face, left face)`.
    pub edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        bfs_reach(&adj, self.root).iter().all(|&r| r)
    }
}

fn bfs_reach(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    base_edge: usize,
    outer_dart: usize,
    // derived
    position: Vec<usize>,
    dart_face: Vec<usize>,
    faces: Vec<Face>,
}

impl PlaneGraph {
    /// Builds a graph from dense parts, checking only that references resolve and
    /// that the rotation system lists every half-edge exactly once at the right vertex.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, base_edge: usize, outer_dart: usize) -> Result<Self> {
        let nv = vertices.len();
        let ne = edges.len();
        if nv == 0 {
            return Err(Error::Structural("graph has no vertices".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= nv || e.head >= nv {
                return Err(Error::Structural(format!("edge {} has an unknown endpoint", e.label)));
            }
            let _ = i;
        }
        if base_edge >= ne {
            return Err(Error::Structural("base edge does not exist".into()));
        }
        if outer_dart >= 2 * ne {
            return Err(Error::Structural("outer face corner names an unknown edge".into()));
        }
        let mut position = vec![usize::MAX; 2 * ne];
        for (v, vert) in vertices.iter().enumerate() {
            for (pos, &h) in vert.rotation.iter().enumerate() {
                if h >= 2 * ne {
                    return Err(Error::Structural(format!(
                        "vertex {} lists a half-edge of an unknown edge",
                        vert.label
                    )));
                }
                if position[h] != usize::MAX {
                    return Err(Error::Structural(format!(
                        "half-edge {} of edge {} appears twice",
                        end_name(end_of(h)),
                        edges[edge_of(h)].label
                    )));
                }
                let e = &edges[edge_of(h)];
                let expected = match end_of(h) {
                    End::Tail => e.tail,
                    End::Head => e.head,
                };
                if expected != v {
                    return Err(Error::Structural(format!(
                        "{} of edge {} is listed at vertex {} but the edge says vertex {}",
                        end_name(end_of(h)),
                        e.label,
                        vert.label,
                        vertices[expected].label
                    )));
                }
                position[h] = pos;
            }
        }
        if let Some(h) = position.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Structural(format!(
                "{} of edge {} is missing from every rotation",
                end_name(end_of(h)),
                edges[edge_of(h)].label
            )));
        }
        let mut g = PlaneGraph {
            vertices,
            edges,
            base_edge,
            outer_dart,
            position,
            dart_face: Vec::new(),
            faces: Vec::new(),
        };
        g.trace_faces();
        Ok(g)
    }

    fn trace_faces(&mut self) {
        let nd = 2 * self.edges.len();
        let mut dart_face = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut d = start;
            while dart_face[d] == usize::MAX {
                dart_face[d] = id;
                darts.push(d);
                d = self.next_dart(d);
            }
            faces.push(Face { id, darts });
        }
        self.dart_face = dart_face;
        self.faces = faces;
    }

    /// The dart following `d` along its face.
    pub fn next_dart(&self, d: usize) -> usize {
        self.ccw_next(d ^ 1)
    }

    /// Counter-clockwise successor of half-edge `h` around its vertex.
    pub fn ccw_next(&self, h: usize) -> usize {
        let rot = &self.vertices[self.vertex_of(h)].rotation;
        rot[(self.position[h] + 1) % rot.len()]
    }

    pub fn cw_next(&self, h: usize) -> usize {
        let rot = &self.vertices[self.vertex_of(h)].rotation;
        rot[(self.position[h] + rot.len() - 1) % rot.len()]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        let e = &self.edges[edge_of(h)];
        match end_of(h) {
            End::Tail => e.tail,
            End::Head => e.head,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn base_edge(&self) -> usize {
        self.base_edge
    }

    pub fn outer_dart(&self) -> usize {
        self.outer_dart
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.dart_face[self.outer_dart]
    }

    pub fn face_of_dart(&self, d: usize) -> usize {
        self.dart_face[d]
    }

    pub fn right_face(&self, e: usize) -> usize {
        self.dart_face[2 * e]
    }

    pub fn left_face(&self, e: usize) -> usize {
        self.dart_face[2 * e + 1]
    }

    /// Position of half-edge `h` in its vertex's rotation.
    pub fn position(&self, h: usize) -> usize {
        self.position[h]
    }

    /// Root of the spanning-tree model: the head of the base edge.
    pub fn root(&self) -> usize {
        self.edges[self.base_edge].head
    }

    pub fn is_trivially_colored(&self) -> bool {
        self.edges.iter().all(|e| e.color == 1)
    }

    pub fn base_on_outer_face(&self) -> bool {
        let o = self.outer_face();
        self.right_face(self.base_edge) == o || self.left_face(self.base_edge) == o
    }

    pub fn vertex_by_label(&self, label: i64) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn edge_by_label(&self, label: i64) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    /// Same graph with a different base edge.
    pub fn with_base_edge(&self, e: usize) -> Result<Self> {
        if e >= self.edges.len() {
            return Err(Error::Structural(format!("edge index {e} out of range")));
        }
        let mut g = self.clone();
        g.base_edge = e;
        Ok(g)
    }

    /// Edges flanking the outer face, in ascending index order.
    pub fn outer_edges(&self) -> Vec<usize> {
        let o = self.outer_face();
        (0..self.edges.len())
            .filter(|&e| self.right_face(e) == o || self.left_face(e) == o)
            .collect()
    }

    /// Incoming edges at `v` in counter-clockwise order, starting with the first
    /// incoming half-edge after the outgoing arc.
    pub fn incoming_order(&self, v: usize) -> Vec<usize> {
        let rot = &self.vertices[v].rotation;
        let n = rot.len();
        let start = (0..n)
            .find(|&i| end_of(rot[i]) == End::Head && end_of(rot[(i + n - 1) % n]) == End::Tail)
            .or_else(|| (0..n).find(|&i| end_of(rot[i]) == End::Head));
        let Some(start) = start else {
            return Vec::new();
        };
        (0..n)
            .map(|k| rot[(start + k) % n])
            .filter(|&h| end_of(h) == End::Head)
            .map(edge_of)
            .collect()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.vertices[v].rotation.iter().filter(|&&h| end_of(h) == End::Head).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.vertices[v].rotation.iter().filter(|&&h| end_of(h) == End::Tail).count()
    }

    pub fn dual(&self) -> DualGraph {
        DualGraph {
            vertex_count: self.faces.len(),
            edges: (0..self.edges.len()).map(|e| (self.right_face(e), self.left_face(e))).collect(),
            root: self.outer_face(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = vec![Check::pass("rotation-system")];
        checks.push(self.check_positive_colors());
        checks.push(self.check_connected());
        checks.push(self.check_euler());
        checks.push(self.check_balanced());
        checks.push(self.check_in_out());
        checks.push(self.check_transverse());
        checks.push(self.check_loops());
        checks.push(self.check_base_faces());
        let mut info = if self.base_on_outer_face() {
            Check::pass("base-on-outer-face")
        } else {
            Check::fail("base-on-outer-face", format!("edge {}", self.edges[self.base_edge].label))
        };
        info.informational = true;
        checks.push(info);
        ValidationReport { checks }
    }

    /// Errors with the first failing mandatory check.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::InvalidGraph(format!(
                "{} ({})",
                c.name,
                c.witness.as_deref().unwrap_or("")
            ))),
        }
    }

    /// Precondition for the spanning-tree and clock machinery.
    pub fn ensure_spanning_ready(&self) -> Result<()> {
        self.ensure_valid()?;
        if !self.base_on_outer_face() {
            return Err(Error::Precondition("base edge must border the outer face".into()));
        }
        if !self.is_trivially_colored() {
            return Err(Error::Precondition(
                "spanning-tree model needs a trivially colored graph; run reduce first".into(),
            ));
        }
        Ok(())
    }

    fn check_positive_colors(&self) -> Check {
        match self.edges.iter().find(|e| e.color == 0) {
            None => Check::pass("positive-colors"),
            Some(e) => Check::fail("positive-colors", format!("edge {}", e.label)),
        }
    }

    fn check_connected(&self) -> Check {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        match bfs_reach(&adj, 0).iter().position(|&r| !r) {
            None => Check::pass("connected"),
            Some(v) => Check::fail("connected", format!("vertex {} unreachable", self.vertices[v].label)),
        }
    }

    fn check_euler(&self) -> Check {
        let chi = self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        if chi == 2 {
            Check::pass("genus-zero")
        } else {
            Check::fail("genus-zero", format!("V - E + F = {chi}"))
        }
    }

    fn check_balanced(&self) -> Check {
        for (v, vert) in self.vertices.iter().enumerate() {
            let (mut inc, mut out) = (0u64, 0u64);
            for &h in &vert.rotation {
                let c = self.edges[edge_of(h)].color as u64;
                match end_of(h) {
                    End::Head => inc += c,
                    End::Tail => out += c,
                }
            }
            if inc != out {
                return Check::fail(
                    "balanced-coloring",
                    format!("vertex {}: in {inc}, out {out}", self.vertices[v].label),
                );
            }
        }
        Check::pass("balanced-coloring")
    }

    fn check_in_out(&self) -> Check {
        for (v, vert) in self.vertices.iter().enumerate() {
            if self.in_degree(v) == 0 || self.out_degree(v) == 0 {
                return Check::fail("in-and-out-edges", format!("vertex {}", vert.label));
            }
        }
        Check::pass("in-and-out-edges")
    }

    fn check_transverse(&self) -> Check {
        for vert in &self.vertices {
            let rot = &vert.rotation;
            let n = rot.len();
            let changes = (0..n).filter(|&i| end_of(rot[i]) != end_of(rot[(i + 1) % n])).count();
            if changes > 2 {
                return Check::fail("transverse", format!("vertex {}", vert.label));
            }
        }
        Check::pass("transverse")
    }

    fn check_loops(&self) -> Check {
        for (e, edge) in self.edges.iter().enumerate() {
            if !edge.is_loop() {
                continue;
            }
            let (t, h) = (2 * e, 2 * e + 1);
            if self.ccw_next(t) != h && self.ccw_next(h) != t {
                return Check::fail("loops-bound-faces", format!("edge {}", edge.label));
            }
        }
        Check::pass("loops-bound-faces")
    }

    fn check_base_faces(&self) -> Check {
        let e = self.base_edge;
        if self.right_face(e) == self.left_face(e) {
            Check::fail("base-edge-separates", format!("edge {}", self.edges[e].label))
        } else {
            Check::pass("base-edge-separates")
        }
    }

    /// Replaces edge `e` of color `n` by `n` parallel color-1 edges bounding `n - 1` digons.
    ///
    /// The first copy keeps the index of `e`; the others are appended with fresh labels.
    /// If `e` is the base edge, the base moves to the copy that still borders the outer face.
    pub fn parallel_replace(&self, e: usize) -> Result<Self> {
        if e >= self.edges.len() {
            return Err(Error::Structural(format!("edge index {e} out of range")));
        }
        let n = self.edges[e].color as usize;
        if n == 0 {
            return Err(Error::Precondition("cannot replace a color-0 edge".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut edges = self.edges.clone();
        let first_label = edges.iter().map(|e| e.label).max().unwrap_or(0) + 1;
        edges[e].color = 1;
        let mut copies = vec![e];
        for k in 1..n {
            copies.push(edges.len());
            edges.push(Edge { label: first_label + k as i64 - 1, color: 1, ..self.edges[e].clone() });
        }
        let mut vertices = self.vertices.clone();
        for vert in vertices.iter_mut() {
            let mut rot = Vec::with_capacity(vert.rotation.len() + n);
            for &h in &vert.rotation {
                if edge_of(h) != e {
                    rot.push(h);
                    continue;
                }
                match end_of(h) {
                    End::Head => rot.extend(copies.iter().map(|&c| half_edge(c, End::Head))),
                    End::Tail => rot.extend(copies.iter().rev().map(|&c| half_edge(c, End::Tail))),
                }
            }
            vert.rotation = rot;
        }
        let last = *copies.last().expect("n >= 2");
        let outer_dart = if self.outer_dart == 2 * e {
            2 * last
        } else {
            self.outer_dart
        };
        let base_edge = if self.base_edge == e && self.right_face(e) == self.outer_face() {
            last
        } else {
            self.base_edge
        };
        PlaneGraph::new(vertices, edges, base_edge, outer_dart)
    }

    /// Replaces every edge by parallel color-1 edges.
    pub fn reduce_to_trivial(&self) -> Result<Self> {
        let mut g = self.clone();
        for e in 0..self.edges.len() {
            g = g.parallel_replace(e)?;
        }
        Ok(g)
    }

    pub fn to_raw(&self) -> RawGraph {
        io::to_raw(self)
    }

    pub fn from_raw(raw: &RawGraph) -> Result<Self> {
        io::from_raw(raw)
    }

    /// Parses a graph file. Leading lines starting with `#` are a header and are skipped.
    pub fn from_json(s: &str) -> Result<Self> {
        let body: String = s.lines().skip_while(|l| l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n");
        let raw: RawGraph = serde_json::from_str(&body)?;
        Self::from_raw(&raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("graph serializes") + "\n"
    }
}

fn end_name(end: End) -> &'static str {
    match end {
        End::Tail => "tail",
        End::Head => "head",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    /// Informational checks do not affect overall validity.
    pub informational: bool,
}

impl Check {
    fn pass(name: &str) -> Self {
        Check { name: name.into(), passed: true, witness: None, informational: false }
    }

    fn fail(name: &str, witness: String) -> Self {
        Check { name: name.into(), passed: false, witness: Some(witness), informational: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed && !c.informational)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match (c.passed, c.informational) {
                (true, _) => "pass",
                (false, true) => "note",
                (false, false) => "FAIL",
            };
            write!(f, "{status:4} {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
