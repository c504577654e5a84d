//! Knot diagrams: Crowell's weighted tree model and the singular projection.

mod pd;

pub use pd::{OrientedPd, PdCode};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::HalfPoly;
use crate::matrix::{det_bareiss, PolyMatrix};
use crate::plane_graph::{half_edge, Edge, End, PlaneGraph, Vertex};
use crate::spanning::SpanningModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub label: i64,
    pub tail: usize,
    pub head: usize,
    /// The weight is `t^weight`, with `weight` 1 or 2.
    pub weight: u8,
}

/// Crossings as vertices, projection segments oriented from over to under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrowellGraph {
    pub vertex_count: usize,
    pub edges: Vec<WeightedEdge>,
    /// Edge indices at positions `a, b, c, d` of each crossing.
    pub rotation: Vec<[usize; 4]>,
}

impl CrowellGraph {
    pub fn from_pd(pd: &PdCode) -> Result<Self> {
        let o = pd.orient()?;
        let index = |x: i64| o.arcs.binary_search(&x).expect("known arc");
        let n = o.crossings.len();
        let mut positions: Vec<Vec<(usize, usize)>> = vec![Vec::new(); o.arcs.len()];
        for (c, cr) in o.crossings.iter().enumerate() {
            for (pos, &x) in cr.iter().enumerate() {
                positions[index(x)].push((c, pos));
            }
        }
        let mut edges = Vec::with_capacity(o.arcs.len());
        for (k, &x) in o.arcs.iter().enumerate() {
            let under: Vec<_> = positions[k].iter().filter(|(_, p)| p % 2 == 0).collect();
            let over: Vec<_> = positions[k].iter().filter(|(_, p)| p % 2 == 1).collect();
            if under.len() != 1 || over.len() != 1 {
                let (c1, c2) = (positions[k][0].0 + 1, positions[k][1].0 + 1);
                let role = if under.len() == 2 { "under" } else { "over" };
                return Err(Error::Pd(format!(
                    "not alternating: arc {x} is {role} at both crossing {c1} and crossing {c2}"
                )));
            }
            let (uc, upos) = *under[0];
            // the under-strand sits to the right of the over-strand at one of a, c
            let right = if o.over_b_to_d[uc] { 2 } else { 0 };
            edges.push(WeightedEdge { label: x, tail: over[0].0, head: uc, weight: if upos == right { 2 } else { 1 } });
        }
        let rotation = o.crossings.iter().map(|cr| cr.map(index)).collect();
        let g = CrowellGraph { vertex_count: n, edges, rotation };
        for v in 0..n {
            let mut ws: Vec<u8> = g.edges.iter().filter(|e| e.head == v).map(|e| e.weight).collect();
            ws.sort_unstable();
            let outs = g.edges.iter().filter(|e| e.tail == v).count();
            if ws != [1, 2] || outs != 2 {
                return Err(Error::Pd(format!("crossing {} does not carry one t and one t^2 weight", v + 1)));
            }
        }
        Ok(g)
    }

    fn weight_poly(&self, e: &WeightedEdge) -> HalfPoly {
        HalfPoly::t_pow(e.weight as i64)
    }

    /// Enumerates in-arborescences rooted at `root`, returning `(count, raw weight sum)`.
    pub fn tree_sum(&self, root: usize) -> Result<(u64, HalfPoly)> {
        if root >= self.vertex_count {
            return Err(Error::Precondition(format!("root {} out of range", root + 1)));
        }
        let n = self.vertex_count;
        let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
        let choices: Vec<Vec<usize>> = others
            .iter()
            .map(|&v| (0..self.edges.len()).filter(|&e| self.edges[e].head == v && self.edges[e].tail != v).collect())
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            return Ok((0, HalfPoly::zero()));
        }
        let mut idx = vec![0usize; others.len()];
        let mut count = 0u64;
        let mut sum = HalfPoly::zero();
        loop {
            let mut parent = vec![usize::MAX; n];
            for (k, &v) in others.iter().enumerate() {
                parent[v] = self.edges[choices[k][idx[k]]].tail;
            }
            if reaches_root(&parent, root) {
                count += 1;
                let w: i64 = others.iter().enumerate().map(|(k, _)| self.edges[choices[k][idx[k]]].weight as i64).sum();
                sum.add_term(2 * w, 1.into());
            }
            let mut k = others.len();
            loop {
                if k == 0 {
                    return Ok((count, sum));
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Weighted Laplacian determinant; equals the tree sum.
    pub fn matrix_tree(&self, root: usize) -> Result<HalfPoly> {
        let others: Vec<usize> = (0..self.vertex_count).filter(|&v| v != root).collect();
        let pos = |v: usize| others.iter().position(|&x| x == v);
        let k = others.len();
        let mut m: PolyMatrix = vec![vec![HalfPoly::zero(); k]; k];
        for e in &self.edges {
            if e.tail == e.head {
                continue;
            }
            if let Some(h) = pos(e.head) {
                let w = self.weight_poly(e);
                m[h][h] = &m[h][h] + &w;
                if let Some(t) = pos(e.tail) {
                    m[t][h] = &m[t][h] - &w;
                }
            }
        }
        det_bareiss(&m)
    }

    /// Canonical weighted tree sum at `root`, cross-checked against the determinant.
    pub fn alexander(&self, root: usize) -> Result<(u64, HalfPoly)> {
        let (count, raw) = self.tree_sum(root)?;
        let det = self.matrix_tree(root)?;
        if det != raw {
            return Err(Error::violation(
                "crowell-matrix-tree",
                format!("tree sum {raw} but determinant {det}"),
                vec![],
            ));
        }
        Ok((count, raw.canonical_or_zero()))
    }
}

fn reaches_root(parent: &[usize], root: usize) -> bool {
    let n = parent.len();
    let mut ok = vec![false; n];
    ok[root] = true;
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = start;
        while !ok[v] {
            if path.len() > n {
                return false;
            }
            path.push(v);
            v = parent[v];
        }
        for u in path {
            ok[u] = true;
        }
    }
    true
}

/// The plane graph obtained by flattening every crossing into a 4-valent vertex.
pub fn singular_from_pd(pd: &PdCode) -> Result<PlaneGraph> {
    let o = pd.orient()?;
    let ends = o.arc_ends();
    let index = |x: i64| o.arcs.binary_search(&x).expect("known arc");
    let edges: Vec<Edge> = o
        .arcs
        .iter()
        .map(|&x| {
            let ((tc, _), (hc, _)) = ends[&x];
            Edge { label: x, tail: tc, head: hc, color: 1 }
        })
        .collect();
    let vertices: Vec<Vertex> = o
        .crossings
        .iter()
        .enumerate()
        .map(|(c, cr)| Vertex {
            label: c as i64 + 1,
            rotation: cr
                .iter()
                .enumerate()
                .map(|(pos, &x)| half_edge(index(x), if o.enters(c, pos) { End::Head } else { End::Tail }))
                .collect(),
        })
        .collect();
    let draft = PlaneGraph::new(vertices.clone(), edges.clone(), 0, 0)?;
    // largest face is drawn outside
    let outer = draft
        .faces()
        .iter()
        .max_by(|a, b| a.darts.len().cmp(&b.darts.len()).then(b.id.cmp(&a.id)))
        .expect("at least one face");
    let outer_dart = outer.darts[0];
    let base = outer.darts.iter().map(|d| d / 2).min().expect("nonempty face");
    let g = PlaneGraph::new(vertices, edges, base, outer_dart)?;
    g.ensure_valid()?;
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    /// Crowell's tree sum, which gives the Alexander polynomial at `-t`.
    pub crowell: HalfPoly,
    pub singular: HalfPoly,
    pub equal: bool,
    pub crowell_trees: u64,
    pub singular_trees: u64,
}

pub fn compare(pd: &PdCode) -> Result<Comparison> {
    let cg = CrowellGraph::from_pd(pd)?;
    let (crowell_trees, crowell) = cg.alexander(0)?;
    let g = singular_from_pd(pd)?;
    let m = SpanningModel::new(&g)?;
    let trees = m.enumerate_trees()?;
    let singular = SpanningModel::raw_polynomial(&trees).canonical_or_zero();
    Ok(Comparison {
        equal: crowell == singular,
        crowell,
        singular,
        crowell_trees,
        singular_trees: trees.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n";

    #[test]
    fn trefoil_crowell_shape() {
        let cg = CrowellGraph::from_pd(&PdCode::parse(TREFOIL).unwrap()).unwrap();
        assert_eq!(cg.vertex_count, 3);
        assert_eq!(cg.edges.len(), 6);
    }

    #[test]
    fn trefoil_singular_shape() {
        let g = singular_from_pd(&PdCode::parse(TREFOIL).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (3, 6, 5));
    }
}
