//! Rooted spanning trees as lattice points.
//!
//! The root is the head of the base edge. Each other vertex, taken in ascending
//! index order, contributes one coordinate: the 1-based position of its tree
//! edge among its incoming edges in counter-clockwise order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kauffman::{Corner, DecoratedDiagram, KauffmanState};
use crate::laurent::HalfPoly;
use crate::matrix::{det_bareiss, det_cofactor, PolyMatrix};
use crate::plane_graph::PlaneGraph;

pub const DEFAULT_SCAN_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<u32>);

impl LatticePoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn distance(&self, other: &LatticePoint) -> Result<usize> {
        self.same_dim(other)?;
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    /// Distance one and norms differing by one.
    pub fn is_neighbor(&self, other: &LatticePoint) -> Result<bool> {
        Ok(self.distance(other)? == 1 && (self.norm() - other.norm()).abs() == 1)
    }

    /// Coordinatewise `self <= other`.
    pub fn precedes(&self, other: &LatticePoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn with(&self, i: usize, x: u32) -> LatticePoint {
        let mut q = self.clone();
        q.0[i] = x;
        q
    }

    fn same_dim(&self, other: &LatticePoint) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "lattice points of dimension {} and {}",
                self.dim(),
                other.dim()
            )))
        }
    }

    /// `x1,x2,...,xk`
    pub fn csv(&self) -> String {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.csv())
    }
}

/// Scan budget from `MOY_SCAN_BUDGET`, falling back to the default.
pub fn scan_budget() -> u128 {
    std::env::var("MOY_SCAN_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SCAN_BUDGET)
}

/// The enumerated set `X` of lattice points that are spanning trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSet {
    pub points: Vec<LatticePoint>,
    /// Whether the full lattice scan ran (the move search always does).
    pub scanned: bool,
}

impl TreeSet {
    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SpanningModel<'g> {
    graph: &'g PlaneGraph,
    root: usize,
    /// Non-root vertices in axis order.
    axes: Vec<usize>,
    axis_of: Vec<Option<usize>>,
    /// Incoming edges per axis in counter-clockwise order.
    incoming: Vec<Vec<usize>>,
    /// `(axis, 1-based slot)` for each edge whose head is not the root.
    slot_of: Vec<Option<(usize, u32)>>,
}

impl<'g> SpanningModel<'g> {
    pub fn new(graph: &'g PlaneGraph) -> Result<Self> {
        graph.ensure_spanning_ready()?;
        Ok(Self::new_unchecked(graph))
    }

    /// Skips the validity and coloring preconditions; for internal callers that
    /// already checked them.
    pub fn new_unchecked(graph: &'g PlaneGraph) -> Self {
        let root = graph.root();
        let axes: Vec<usize> = (0..graph.vertex_count()).filter(|&v| v != root).collect();
        let mut axis_of = vec![None; graph.vertex_count()];
        for (i, &v) in axes.iter().enumerate() {
            axis_of[v] = Some(i);
        }
        let incoming: Vec<Vec<usize>> = axes.iter().map(|&v| graph.incoming_order(v)).collect();
        let mut slot_of = vec![None; graph.edge_count()];
        for (i, ins) in incoming.iter().enumerate() {
            for (x, &e) in ins.iter().enumerate() {
                slot_of[e] = Some((i, x as u32 + 1));
            }
        }
        SpanningModel { graph, root, axes, axis_of, incoming, slot_of }
    }

    pub fn graph(&self) -> &'g PlaneGraph {
        self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Vertex index of coordinate `i`.
    pub fn axis_vertex(&self, i: usize) -> usize {
        self.axes[i]
    }

    pub fn axis_of(&self, v: usize) -> Option<usize> {
        self.axis_of[v]
    }

    pub fn dims(&self) -> Vec<u32> {
        self.incoming.iter().map(|ins| ins.len() as u32).collect()
    }

    /// `e_{i,x}` with 1-based `x`.
    pub fn slot_edge(&self, i: usize, x: u32) -> usize {
        self.incoming[i][x as usize - 1]
    }

    pub fn slot_of(&self, e: usize) -> Option<(usize, u32)> {
        self.slot_of[e]
    }

    pub fn check_bounds(&self, p: &LatticePoint) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::Precondition(format!(
                "lattice point {p} has dimension {}, expected {}",
                p.dim(),
                self.dim()
            )));
        }
        for (i, &x) in p.0.iter().enumerate() {
            if x < 1 || x as usize > self.incoming[i].len() {
                return Err(Error::Precondition(format!(
                    "coordinate {} of {p} is outside 1..={}",
                    i + 1,
                    self.incoming[i].len()
                )));
            }
        }
        Ok(())
    }

    /// Selected edges, one per coordinate.
    pub fn subgraph_of(&self, p: &LatticePoint) -> Result<Vec<usize>> {
        self.check_bounds(p)?;
        Ok(p.0.iter().enumerate().map(|(i, &x)| self.slot_edge(i, x)).collect())
    }

    /// Connectivity and acyclicity are computed separately and must agree.
    pub fn is_spanning_tree(&self, p: &LatticePoint) -> Result<bool> {
        let edges = self.subgraph_of(p)?;
        let n = self.graph.vertex_count();
        let mut uf = UnionFind::new(n);
        for &e in &edges {
            let ed = self.graph.edge(e);
            uf.union(ed.tail, ed.head);
        }
        let connected = uf.components == 1;
        let acyclic = self.parent_walk_reaches_root(&edges);
        if connected != acyclic {
            return Err(Error::violation(
                "tree-equivalence",
                format!("connected = {connected} but acyclic = {acyclic}"),
                vec![p.clone()],
            ));
        }
        Ok(connected)
    }

    fn parent_walk_reaches_root(&self, edges: &[usize]) -> bool {
        let n = self.graph.vertex_count();
        let mut parent = vec![usize::MAX; n];
        for (i, &e) in edges.iter().enumerate() {
            parent[self.axes[i]] = self.graph.edge(e).tail;
        }
        // 0 unknown, 1 on current walk, 2 reaches root
        let mut state = vec![0u8; n];
        state[self.root] = 2;
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = parent[v];
            }
            if state[v] == 1 {
                return false;
            }
            for u in path {
                state[u] = 2;
            }
        }
        true
    }

    /// Points obtained by changing one coordinate by one that are still trees.
    pub fn lattice_neighbors(&self, p: &LatticePoint) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            let x = p.0[i];
            if x > 1 {
                let q = p.with(i, x - 1);
                if self.is_spanning_tree(&q)? {
                    out.push(q);
                }
            }
            if (x as usize) < self.incoming[i].len() {
                let q = p.with(i, x + 1);
                if self.is_spanning_tree(&q)? {
                    out.push(q);
                }
            }
        }
        Ok(out)
    }

    /// Breadth-first arborescence from the root along edge directions.
    pub fn seed_tree(&self) -> Result<LatticePoint> {
        let n = self.graph.vertex_count();
        let mut chosen: Vec<Option<u32>> = vec![None; self.dim()];
        let mut seen = vec![false; n];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        let mut out_edges = vec![Vec::new(); n];
        for (e, ed) in self.graph.edges().iter().enumerate() {
            out_edges[ed.tail].push(e);
        }
        while let Some(v) = queue.pop_front() {
            for &e in &out_edges[v] {
                let h = self.graph.edge(e).head;
                if !seen[h] {
                    seen[h] = true;
                    let (i, x) = self.slot_of[e].expect("non-root head has a slot");
                    chosen[i] = Some(x);
                    queue.push_back(h);
                }
            }
        }
        let coords: Option<Vec<u32>> = chosen.into_iter().collect();
        coords
            .map(LatticePoint)
            .ok_or_else(|| Error::InvalidGraph("graph has no rooted spanning tree".into()))
    }

    fn lattice_size(&self) -> u128 {
        self.incoming.iter().fold(1u128, |acc, ins| acc.saturating_mul(ins.len() as u128))
    }

    /// Full scan of the product lattice.
    pub fn scan(&self) -> Result<Vec<LatticePoint>> {
        let dims = self.dims();
        let mut out = Vec::new();
        if dims.contains(&0) {
            return Ok(out);
        }
        let mut p = LatticePoint(vec![1; dims.len()]);
        loop {
            if self.is_spanning_tree(&p)? {
                out.push(p.clone());
            }
            // odometer, last coordinate fastest
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if p.0[i] < dims[i] {
                    p.0[i] += 1;
                    break;
                }
                p.0[i] = 1;
            }
        }
    }

    /// Closure of `seed` under clock moves.
    pub fn bfs_from(&self, seed: &LatticePoint) -> Result<Vec<LatticePoint>> {
        let mut seen = BTreeSet::from([seed.clone()]);
        let mut queue = VecDeque::from([seed.clone()]);
        while let Some(p) = queue.pop_front() {
            for q in self.lattice_neighbors(&p)? {
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Enumerates `X` by scan (when within `budget`) and by clock-move search,
    /// and checks that the two agree.
    pub fn enumerate_trees_with_budget(&self, budget: u128) -> Result<TreeSet> {
        let work = self.lattice_size().saturating_mul(self.dim().max(1) as u128);
        let scanned = if work <= budget { Some(self.scan()?) } else { None };
        let seed = match &scanned {
            Some(s) if !s.is_empty() => s[0].clone(),
            Some(_) => return Err(Error::InvalidGraph("graph has no rooted spanning tree".into())),
            None => self.seed_tree()?,
        };
        let reached = self.bfs_from(&seed)?;
        if let Some(all) = &scanned {
            if *all != reached {
                let missing: Vec<LatticePoint> =
                    all.iter().filter(|p| reached.binary_search(p).is_err()).take(3).cloned().collect();
                return Err(Error::violation(
                    "clock-connectivity",
                    format!("{} trees found by scan, {} reachable by clock moves", all.len(), reached.len()),
                    missing,
                ));
            }
        }
        Ok(TreeSet { points: reached, scanned: scanned.is_some() })
    }

    pub fn enumerate_trees(&self) -> Result<TreeSet> {
        self.enumerate_trees_with_budget(scan_budget())
    }

    /// Kauffman state assigned to the tree `p`.
    pub fn tree_to_state(&self, p: &LatticePoint) -> Result<KauffmanState> {
        if !self.is_spanning_tree(p)? {
            return Err(Error::Precondition(format!("{p} is not a spanning tree")));
        }
        let g = self.graph;
        let tree = self.subgraph_of(p)?;
        let mut in_tree = vec![false; g.edge_count()];
        for &e in &tree {
            in_tree[e] = true;
        }
        let mut corners = vec![None; g.edge_count()];
        for &e in &tree {
            corners[e] = Some(Corner::N);
        }
        let base = g.base_edge();
        corners[base] = Some(Corner::N);
        // dual tree on the complement, explored from the outer face
        let f = g.face_count();
        let mut adj = vec![Vec::new(); f];
        for e in (0..g.edge_count()).filter(|&e| !in_tree[e]) {
            let (r, l) = (g.right_face(e), g.left_face(e));
            adj[r].push((e, l));
            adj[l].push((e, r));
        }
        let mut seen = vec![false; f];
        let outer = g.outer_face();
        seen[outer] = true;
        let mut queue = VecDeque::from([outer]);
        let mut reached = 1;
        while let Some(a) = queue.pop_front() {
            for &(e, b) in &adj[a] {
                if seen[b] {
                    continue;
                }
                seen[b] = true;
                reached += 1;
                queue.push_back(b);
                if e != base {
                    corners[e] = Some(if b == g.right_face(e) { Corner::E } else { Corner::W });
                }
            }
        }
        if reached != f || corners.iter().any(|c| c.is_none()) {
            return Err(Error::violation(
                "dual-tree",
                "complement of the tree is not a spanning tree of the dual",
                vec![p.clone()],
            ));
        }
        let state = KauffmanState(corners.into_iter().map(|c| c.expect("checked")).collect());
        let d = DecoratedDiagram::new(g)?;
        if !d.is_valid_state(&state) {
            return Err(Error::violation("tree-to-state", "image is not a Kauffman state", vec![p.clone()]));
        }
        Ok(state)
    }

    /// Sum of `t^|p|` over a tree set, before normalization.
    pub fn raw_polynomial(trees: &TreeSet) -> HalfPoly {
        let mut p = HalfPoly::zero();
        for x in &trees.points {
            p.add_term(2 * x.norm(), 1.into());
        }
        p
    }

    pub fn alexander(&self) -> Result<HalfPoly> {
        let trees = self.enumerate_trees()?;
        Ok(Self::raw_polynomial(&trees).canonical_or_zero())
    }

    /// Slot-weighted Laplacian restricted to the non-root vertices.
    pub fn laplacian(&self) -> PolyMatrix {
        let k = self.dim();
        let mut m = vec![vec![HalfPoly::zero(); k]; k];
        for (v, ins) in self.incoming.iter().enumerate() {
            for (x, &e) in ins.iter().enumerate() {
                let ed = self.graph.edge(e);
                if ed.is_loop() {
                    continue;
                }
                let w = HalfPoly::t_pow(x as i64 + 1);
                m[v][v] = &m[v][v] + &w;
                if let Some(u) = self.axis_of[ed.tail] {
                    m[u][v] = &m[u][v] - &w;
                }
            }
        }
        m
    }

    /// Determinant of the weighted Laplacian, cross-checked by cofactor
    /// expansion on small matrices.
    pub fn matrix_tree_raw(&self) -> Result<HalfPoly> {
        let m = self.laplacian();
        let det = det_bareiss(&m)?;
        if m.len() <= 8 {
            let alt = det_cofactor(&m);
            if alt != det {
                return Err(Error::violation(
                    "determinant",
                    format!("elimination gives {det}, expansion gives {alt}"),
                    vec![],
                ));
            }
        }
        Ok(det)
    }

    pub fn alexander_matrix_tree(&self) -> Result<HalfPoly> {
        Ok(self.matrix_tree_raw()?.canonical_or_zero())
    }
}

pub fn alexander_spanning(g: &PlaneGraph) -> Result<HalfPoly> {
    SpanningModel::new(g)?.alexander()
}

pub fn alexander_matrix_tree(g: &PlaneGraph) -> Result<HalfPoly> {
    SpanningModel::new(g)?.alexander_matrix_tree()
}

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    pub components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }
}
