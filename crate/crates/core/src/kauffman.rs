//! Decorated diagrams and Kauffman state sums.
//!
//! Each vertex is enclosed by a small circle; every edge crosses the circle of
//! its head once, giving one crossing per edge. The regions are the faces of
//! the graph plus one disk per vertex. A crossing has three corners: north
//! (inside the circle), east (the face right of the edge) and west (the face
//! left of it).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::HalfPoly;
use crate::plane_graph::PlaneGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Corner {
    N,
    E,
    W,
}

impl Corner {
    pub const ALL: [Corner; 3] = [Corner::N, Corner::E, Corner::W];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Corner::N => "N",
            Corner::E => "E",
            Corner::W => "W",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct DecoratedDiagram<'g> {
    graph: &'g PlaneGraph,
    /// Region ids `[north, east, west]` per crossing (indexed like edges).
    corners: Vec<[usize; 3]>,
    region_count: usize,
    marked: (usize, usize),
}

/// One corner per crossing, indexed by edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KauffmanState(pub Vec<Corner>);

impl KauffmanState {
    /// Crossings where the two states pick different corners.
    pub fn difference(&self, other: &KauffmanState) -> Vec<usize> {
        self.0.iter().zip(&other.0).enumerate().filter(|(_, (a, b))| a != b).map(|(i, _)| i).collect()
    }
}

impl<'g> DecoratedDiagram<'g> {
    pub fn new(graph: &'g PlaneGraph) -> Result<Self> {
        let f = graph.face_count();
        let corners: Vec<[usize; 3]> = (0..graph.edge_count())
            .map(|e| [f + graph.edge(e).head, graph.right_face(e), graph.left_face(e)])
            .collect();
        let region_count = f + graph.vertex_count();
        if region_count != corners.len() + 2 {
            return Err(Error::Structural(format!(
                "decorated diagram has {} regions for {} crossings",
                region_count,
                corners.len()
            )));
        }
        let b = graph.base_edge();
        let marked = (graph.right_face(b), graph.left_face(b));
        if marked.0 == marked.1 {
            return Err(Error::InvalidGraph("both sides of the base edge lie in the same face".into()));
        }
        Ok(DecoratedDiagram { graph, corners, region_count, marked })
    }

    pub fn graph(&self) -> &'g PlaneGraph {
        self.graph
    }

    pub fn crossing_count(&self) -> usize {
        self.corners.len()
    }

    pub fn region_count(&self) -> usize {
        self.region_count
    }

    pub fn marked(&self) -> (usize, usize) {
        self.marked
    }

    pub fn marked_crossing(&self) -> usize {
        self.graph.base_edge()
    }

    pub fn region(&self, crossing: usize, corner: Corner) -> usize {
        self.corners[crossing][corner.index()]
    }

    fn is_marked(&self, r: usize) -> bool {
        r == self.marked.0 || r == self.marked.1
    }

    /// Checks that `s` assigns distinct unmarked regions and forces the marked crossing north.
    pub fn is_valid_state(&self, s: &KauffmanState) -> bool {
        if s.0.len() != self.crossing_count() || s.0[self.marked_crossing()] != Corner::N {
            return false;
        }
        let mut used = vec![false; self.region_count];
        for (c, &corner) in s.0.iter().enumerate() {
            let r = self.region(c, corner);
            if self.is_marked(r) || used[r] {
                return false;
            }
            used[r] = true;
        }
        true
    }

    /// All Kauffman states in lexicographic order.
    pub fn enumerate_states(&self) -> Vec<KauffmanState> {
        let n = self.crossing_count();
        let mut search = Search {
            d: self,
            assign: vec![None; n],
            used: vec![false; self.region_count],
            out: Vec::new(),
        };
        let mc = self.marked_crossing();
        let north = self.region(mc, Corner::N);
        if self.is_marked(north) {
            return Vec::new();
        }
        search.assign[mc] = Some(Corner::N);
        search.used[north] = true;
        search.run(n - 1);
        search.out.sort();
        search.out
    }

    pub fn state_monomial(&self, s: &KauffmanState) -> Result<HalfPoly> {
        let mut p = HalfPoly::one();
        for (c, &corner) in s.0.iter().enumerate() {
            let i = self.graph.edge(c).color;
            let factor = if c == self.marked_crossing() {
                HalfPoly::monomial(i as i64, 1)
            } else {
                match corner {
                    Corner::N => HalfPoly::quantum_integer(i)?,
                    Corner::E => HalfPoly::monomial(i as i64, 1),
                    Corner::W => HalfPoly::monomial(-(i as i64), 1),
                }
            };
            p = &p * &factor;
        }
        Ok(p)
    }

    /// Sum of state monomials without normalization.
    pub fn raw_state_sum(&self) -> Result<HalfPoly> {
        let mut sum = HalfPoly::zero();
        for s in self.enumerate_states() {
            sum = &sum + &self.state_monomial(&s)?;
        }
        Ok(sum)
    }

    /// Canonical state sum; zero when there are no states.
    pub fn state_sum(&self) -> Result<HalfPoly> {
        Ok(self.raw_state_sum()?.canonical_or_zero())
    }

    /// `crossing_id:corner` lines, crossing ids being edge labels.
    pub fn export_state(&self, s: &KauffmanState) -> String {
        let mut out = String::new();
        for (c, corner) in s.0.iter().enumerate() {
            out.push_str(&format!("{}:{}\n", self.graph.edge(c).label, corner));
        }
        out
    }
}

struct Search<'a, 'g> {
    d: &'a DecoratedDiagram<'g>,
    assign: Vec<Option<Corner>>,
    used: Vec<bool>,
    out: Vec<KauffmanState>,
}

impl Search<'_, '_> {
    fn options(&self, c: usize) -> impl Iterator<Item = Corner> + '_ {
        Corner::ALL.into_iter().filter(move |&k| {
            let r = self.d.region(c, k);
            !self.d.is_marked(r) && !self.used[r]
        })
    }

    /// Every free region must still be reachable from some free crossing.
    fn regions_coverable(&self) -> bool {
        let mut reachable = self.used.clone();
        reachable[self.d.marked.0] = true;
        reachable[self.d.marked.1] = true;
        for (c, a) in self.assign.iter().enumerate() {
            if a.is_none() {
                for k in Corner::ALL {
                    reachable[self.d.region(c, k)] = true;
                }
            }
        }
        reachable.iter().all(|&r| r)
    }

    fn run(&mut self, remaining: usize) {
        if remaining == 0 {
            let s = self.assign.iter().map(|a| a.expect("complete")).collect();
            self.out.push(KauffmanState(s));
            return;
        }
        if !self.regions_coverable() {
            return;
        }
        let mut best: Option<(usize, usize)> = None;
        for c in 0..self.assign.len() {
            if self.assign[c].is_some() {
                continue;
            }
            let k = self.options(c).count();
            if best.is_none_or(|(_, bk)| k < bk) {
                best = Some((c, k));
                if k == 0 {
                    return;
                }
            }
        }
        let (c, _) = best.expect("remaining > 0");
        let opts: Vec<Corner> = self.options(c).collect();
        for k in opts {
            let r = self.d.region(c, k);
            self.assign[c] = Some(k);
            self.used[r] = true;
            self.run(remaining - 1);
            self.used[r] = false;
            self.assign[c] = None;
        }
    }
}

/// Canonical Kauffman state sum of `g` at its base edge.
pub fn state_sum(g: &PlaneGraph) -> Result<HalfPoly> {
    DecoratedDiagram::new(g)?.state_sum()
}
