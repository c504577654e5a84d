//! Deterministic random plane graphs grown from a colored digon.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::plane_graph::{edge_of, half_edge, Edge, End, PlaneGraph, Vertex};

struct Builder {
    rotations: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Builder {
    fn digon(color: u32) -> Self {
        Builder {
            rotations: vec![
                vec![half_edge(0, End::Tail), half_edge(1, End::Head)],
                vec![half_edge(1, End::Tail), half_edge(0, End::Head)],
            ],
            edges: vec![
                Edge { label: 0, tail: 0, head: 1, color },
                Edge { label: 1, tail: 1, head: 0, color },
            ],
        }
    }

    fn new_edge(&mut self, tail: usize, head: usize, color: u32) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { label: id as i64, tail, head, color });
        id
    }

    fn replace_half_edge(&mut self, v: usize, old: usize, new: &[usize]) {
        let rot = &mut self.rotations[v];
        let pos = rot.iter().position(|&h| h == old).expect("half-edge present");
        rot.splice(pos..pos + 1, new.iter().copied());
    }

    /// `u -> w` becomes `u -> x -> w`.
    fn subdivide(&mut self, e: usize) {
        let Edge { head: w, color, .. } = self.edges[e];
        let x = self.rotations.len();
        self.rotations.push(Vec::new());
        let f = self.new_edge(x, w, color);
        self.edges[e].head = x;
        self.replace_half_edge(w, half_edge(e, End::Head), &[half_edge(f, End::Head)]);
        self.rotations[x] = vec![half_edge(e, End::Head), half_edge(f, End::Tail)];
    }

    /// Splits off a parallel edge of color `c - a`, leaving `a` on `e`; the two bound a digon.
    fn split(&mut self, e: usize, a: u32) {
        let Edge { tail, head, color, .. } = self.edges[e];
        self.edges[e].color = a;
        let f = self.new_edge(tail, head, color - a);
        self.replace_half_edge(head, half_edge(e, End::Head), &[half_edge(e, End::Head), half_edge(f, End::Head)]);
        self.replace_half_edge(tail, half_edge(e, End::Tail), &[half_edge(f, End::Tail), half_edge(e, End::Tail)]);
    }

    fn ccw_next(&self, h: usize) -> usize {
        let e = &self.edges[edge_of(h)];
        let v = if h.is_multiple_of(2) { e.tail } else { e.head };
        let rot = &self.rotations[v];
        let pos = rot.iter().position(|&x| x == h).expect("present");
        rot[(pos + 1) % rot.len()]
    }

    /// Pairs `(e1, e2)` of same-direction edges bounding a digon, `e2` following `e1` at the head.
    fn digon_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e1 in 0..self.edges.len() {
            let h2 = self.ccw_next(half_edge(e1, End::Head));
            if h2.is_multiple_of(2) {
                continue;
            }
            let e2 = edge_of(h2);
            if e2 == e1 || self.edges[e2].tail != self.edges[e1].tail || self.edges[e1].is_loop() {
                continue;
            }
            if self.ccw_next(half_edge(e2, End::Tail)) == half_edge(e1, End::Tail) {
                out.push((e1, e2));
            }
        }
        out
    }

    /// Routes both edges of a digon through a new 4-valent vertex near their heads.
    fn splice(&mut self, e1: usize, e2: usize) {
        let w = self.edges[e1].head;
        let x = self.rotations.len();
        self.rotations.push(Vec::new());
        let f1 = self.new_edge(x, w, self.edges[e1].color);
        let f2 = self.new_edge(x, w, self.edges[e2].color);
        self.edges[e1].head = x;
        self.edges[e2].head = x;
        self.replace_half_edge(w, half_edge(e1, End::Head), &[half_edge(f1, End::Head)]);
        self.replace_half_edge(w, half_edge(e2, End::Head), &[half_edge(f2, End::Head)]);
        self.rotations[x] = vec![
            half_edge(f1, End::Tail),
            half_edge(e1, End::Head),
            half_edge(e2, End::Head),
            half_edge(f2, End::Tail),
        ];
    }

    fn finish(self) -> Result<PlaneGraph> {
        let vertices: Vec<Vertex> = self
            .rotations
            .into_iter()
            .enumerate()
            .map(|(i, rotation)| Vertex { label: i as i64, rotation })
            .collect();
        let draft = PlaneGraph::new(vertices.clone(), self.edges.clone(), 0, 0)?;
        let outer = draft
            .faces()
            .iter()
            .max_by(|a, b| a.darts.len().cmp(&b.darts.len()).then(b.id.cmp(&a.id)))
            .expect("faces exist");
        let base = outer
            .darts
            .iter()
            .map(|&d| edge_of(d))
            .filter(|&e| !self.edges[e].is_loop())
            .min()
            .ok_or_else(|| Error::Structural("outer face has only loops".into()))?;
        let g = PlaneGraph::new(vertices, self.edges, base, outer.darts[0])?;
        g.ensure_valid()?;
        Ok(g)
    }
}

/// A valid plane graph with `size` vertices, determined by `seed`.
pub fn generate(seed: u64, size: usize) -> Result<PlaneGraph> {
    if size == 0 {
        return Err(Error::Precondition("size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let color = if size == 1 { 1 } else { 2 };
    let mut b = Builder::digon(color);
    let target = size.max(2);
    if size == 1 {
        // the single-vertex request still yields the smallest valid graph
        return b.finish();
    }
    let mut splits = 0;
    while b.rotations.len() < target {
        let roll: f64 = rng.gen();
        let splittable: Vec<usize> = (0..b.edges.len()).filter(|&e| b.edges[e].color >= 2).collect();
        let pairs = b.digon_pairs();
        if roll < 0.25 && !splittable.is_empty() && splits < target {
            let e = splittable[rng.gen_range(0..splittable.len())];
            let a = rng.gen_range(1..b.edges[e].color);
            b.split(e, a);
            splits += 1;
        } else if roll < 0.6 && !pairs.is_empty() {
            let (e1, e2) = pairs[rng.gen_range(0..pairs.len())];
            b.splice(e1, e2);
        } else {
            let e = rng.gen_range(0..b.edges.len());
            b.subdivide(e);
        }
    }
    b.finish()
}
