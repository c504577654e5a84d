//! Clock moves between rooted spanning trees.
//!
//! A clock move replaces the tree edge entering one vertex by an adjacent
//! incoming edge. Adding the new edge to the old tree closes a cycle `C`
//! through the moving vertex; the move is *local* when the empty sector between
//! the two edges lies inside `C`, and *global* otherwise.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kauffman::{DecoratedDiagram, KauffmanState};
use crate::laurent::{CoeffSeq, HalfPoly};
use crate::plane_graph::PlaneGraph;
use crate::spanning::{LatticePoint, SpanningModel, TreeSet, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    Local,
    Global,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Clockwise,
    CounterClockwise,
}

/// A dual edge traversed from one face to another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualStep {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockMove {
    pub from: LatticePoint,
    pub to: LatticePoint,
    pub coordinate: usize,
    pub vertex: usize,
    pub from_index: u32,
    pub to_index: u32,
    pub direction: Direction,
    pub kind: MoveKind,
    /// Edges of the cycle in `T ∪ {e'}`.
    pub cycle: Vec<usize>,
    /// Primal edges whose duals form `C*`.
    pub dual_cycle: Vec<usize>,
    /// `C*` without `e*`, oriented by the dual tree of `from`.
    pub dual_x: Vec<DualStep>,
    /// `C*` without `e'*`, oriented by the dual tree of `to`.
    pub dual_y: Vec<DualStep>,
    /// Edges meeting `C*`, grouped by head vertex.
    pub crossing_set: BTreeMap<usize, Vec<usize>>,
    /// Vertices on the moving vertex's side of `C*`.
    pub inside: Vec<usize>,
    /// `norm(to) - norm(from)`.
    pub degree_shift: i64,
    /// Set when the moving vertex has no incoming edges besides the two involved.
    pub flagged: bool,
}

impl ClockMove {
    pub fn edges_meeting_dual_cycle(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.crossing_set.values().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxRectangle {
    pub lower: Vec<u32>,
    pub upper: Vec<u32>,
    pub members: Vec<LatticePoint>,
    /// Twice the average norm.
    pub average_twice: i64,
    /// Per member, `(L_i, R_i)` for each coordinate.
    pub reach: Vec<Vec<(u32, u32)>>,
}

impl MaxRectangle {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn shape(&self) -> Vec<u32> {
        self.lower.iter().zip(&self.upper).map(|(m, mm)| mm - m + 1).collect()
    }

    /// Product of `sum_{j=m_i}^{M_i} t^j`.
    pub fn contribution(&self) -> HalfPoly {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&m, &mm)| HalfPoly::box_poly(m as i64, mm as i64))
            .product()
    }

    pub fn bounds_string(&self) -> String {
        if self.lower.is_empty() {
            return "[]".into();
        }
        self.lower.iter().zip(&self.upper).map(|(m, mm)| format!("[{m}..{mm}]")).collect::<Vec<_>>().join("x")
    }
}

/// Renders a half-integer stored doubled, e.g. `9` as `4.5`.
fn monomial_twice_exp(diagram: &DecoratedDiagram<'_>, s: &KauffmanState) -> Result<i64> {
    let m = diagram.state_monomial(s)?;
    match (m.len(), m.min_twice_exp()) {
        (1, Some(e)) => Ok(e),
        _ => Err(Error::Precondition("state monomial is not a monomial".into())),
    }
}

pub fn half_to_string(twice: i64) -> String {
    let sign = if twice < 0 { "-" } else { "" };
    let a = twice.unsigned_abs();
    if a.is_multiple_of(2) {
        format!("{sign}{}", a / 2)
    } else {
        format!("{sign}{}.5", a / 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleSummary {
    pub bounds: String,
    pub size: usize,
    pub average: String,
    pub contribution: HalfPoly,
    pub trapezoidal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodalityReport {
    pub coefficients: CoeffSeq,
    pub unimodal: bool,
    pub strict_positive: bool,
    /// Informational only.
    pub trapezoidal: bool,
    pub rectangles: Vec<RectangleSummary>,
    pub axis: String,
}

pub struct ClockAnalysis<'g> {
    model: SpanningModel<'g>,
    trees: TreeSet,
    /// Kauffman state of each tree with the exponent (doubled) of its monomial.
    states: HashMap<LatticePoint, (KauffmanState, i64)>,
}

type DualTree = Vec<(Option<DualStep>, usize)>;

struct TreeView {
    parent_edge: Vec<Option<usize>>,
}

impl<'g> ClockAnalysis<'g> {
    pub fn new(graph: &'g PlaneGraph) -> Result<Self> {
        let model = SpanningModel::new(graph)?;
        let trees = model.enumerate_trees()?;
        Self::from_parts(model, trees)
    }

    pub fn from_parts(model: SpanningModel<'g>, trees: TreeSet) -> Result<Self> {
        let diagram = DecoratedDiagram::new(model.graph())?;
        let mut states = HashMap::with_capacity(trees.len());
        for p in &trees.points {
            let s = model.tree_to_state(p)?;
            let exp = monomial_twice_exp(&diagram, &s)?;
            states.insert(p.clone(), (s, exp));
        }
        Ok(ClockAnalysis { model, trees, states })
    }

    pub fn model(&self) -> &SpanningModel<'g> {
        &self.model
    }

    pub fn trees(&self) -> &TreeSet {
        &self.trees
    }

    pub fn state(&self, p: &LatticePoint) -> Option<&KauffmanState> {
        self.states.get(p).map(|(s, _)| s)
    }

    fn graph(&self) -> &'g PlaneGraph {
        self.model.graph()
    }

    fn require_tree(&self, p: &LatticePoint) -> Result<()> {
        if self.trees.contains(p) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{p} is not a spanning tree")))
        }
    }

    fn tree_view(&self, p: &LatticePoint) -> Result<TreeView> {
        let g = self.graph();
        let mut parent_edge = vec![None; g.vertex_count()];
        for (i, e) in self.model.subgraph_of(p)?.into_iter().enumerate() {
            parent_edge[self.model.axis_vertex(i)] = Some(e);
        }
        Ok(TreeView { parent_edge })
    }

    /// Vertices from `v` up to the root.
    fn ancestors(&self, t: &TreeView, v: usize) -> Vec<usize> {
        let g = self.graph();
        let mut out = vec![v];
        let mut x = v;
        while let Some(e) = t.parent_edge[x] {
            x = g.edge(e).tail;
            out.push(x);
        }
        out
    }

    /// Dual tree on the complement of `T`, oriented away from the outer face:
    /// `(parent step, depth)` per face.
    fn dual_tree(&self, p: &LatticePoint) -> Result<DualTree> {
        let g = self.graph();
        let mut in_tree = vec![false; g.edge_count()];
        for e in self.model.subgraph_of(p)? {
            in_tree[e] = true;
        }
        let f = g.face_count();
        let mut adj = vec![Vec::new(); f];
        for e in (0..g.edge_count()).filter(|&e| !in_tree[e]) {
            let (r, l) = (g.right_face(e), g.left_face(e));
            adj[r].push((e, l));
            adj[l].push((e, r));
        }
        let outer = g.outer_face();
        let mut info = vec![None; f];
        info[outer] = Some((None, 0));
        let mut queue = VecDeque::from([outer]);
        while let Some(a) = queue.pop_front() {
            let depth = info[a].expect("visited").1;
            for &(e, b) in &adj[a] {
                if info[b].is_none() {
                    info[b] = Some((Some(DualStep { edge: e, from: a, to: b }), depth + 1));
                    queue.push_back(b);
                }
            }
        }
        info.into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::violation("dual-tree", "dual of the complement is disconnected", vec![p.clone()]))
    }

    /// Path between two faces in a dual tree, each step in tree orientation.
    fn dual_path(tree: &[(Option<DualStep>, usize)], mut a: usize, mut b: usize) -> Vec<DualStep> {
        let mut up_a = Vec::new();
        let mut up_b = Vec::new();
        while a != b {
            if tree[a].1 >= tree[b].1 {
                let s = tree[a].0.expect("non-root has a parent");
                up_a.push(s);
                a = s.from;
            } else {
                let s = tree[b].0.expect("non-root has a parent");
                up_b.push(s);
                b = s.from;
            }
        }
        up_a.extend(up_b.into_iter().rev());
        up_a
    }

    /// Builds and classifies the move from `p` to the neighboring tree `q`.
    pub fn classify(&self, p: &LatticePoint, q: &LatticePoint) -> Result<ClockMove> {
        self.classify_with(p, q, None)
    }

    fn classify_with(&self, p: &LatticePoint, q: &LatticePoint, dual_p: Option<&DualTree>) -> Result<ClockMove> {
        self.require_tree(p)?;
        self.require_tree(q)?;
        if !p.is_neighbor(q)? {
            return Err(Error::Precondition(format!("{p} and {q} are not neighboring")));
        }
        let g = self.graph();
        let i = (0..p.dim()).find(|&i| p.0[i] != q.0[i]).expect("distance one");
        let v = self.model.axis_vertex(i);
        let e = self.model.slot_edge(i, p.0[i]);
        let e2 = self.model.slot_edge(i, q.0[i]);
        let t = self.tree_view(p)?;

        // the cycle C in T + e'
        let up_u = self.ancestors(&t, g.edge(e2).tail);
        let up_v = self.ancestors(&t, v);
        let on_u: BTreeSet<usize> = up_u.iter().copied().collect();
        let lca = *up_v.iter().find(|x| on_u.contains(x)).expect("common root");
        let mut cycle = vec![e2];
        for path in [&up_u, &up_v] {
            for &x in path.iter().take_while(|&&x| x != lca) {
                cycle.push(t.parent_edge[x].expect("below the lca"));
            }
        }
        if !cycle.contains(&e) {
            return Err(Error::violation("cycle", "cycle misses the replaced edge", vec![p.clone(), q.clone()]));
        }

        // faces enclosed by C
        let in_cycle: BTreeSet<usize> = cycle.iter().copied().collect();
        let f = g.face_count();
        let mut adj = vec![Vec::new(); f];
        for x in (0..g.edge_count()).filter(|x| !in_cycle.contains(x)) {
            let (r, l) = (g.right_face(x), g.left_face(x));
            adj[r].push(l);
            adj[l].push(r);
        }
        let mut outside = vec![false; f];
        outside[g.outer_face()] = true;
        let mut queue = VecDeque::from([g.outer_face()]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if !outside[b] {
                    outside[b] = true;
                    queue.push_back(b);
                }
            }
        }

        // the empty sector between the two edges, and the rest of the star
        let lo = p.0[i].min(q.0[i]);
        let (e_lo, e_hi) = (self.model.slot_edge(i, lo), self.model.slot_edge(i, lo + 1));
        let s1 = g.right_face(e_lo);
        if g.left_face(e_hi) != s1 {
            return Err(Error::violation(
                "sector",
                "consecutive incoming edges do not share a corner",
                vec![p.clone(), q.clone()],
            ));
        }
        let (s2a, s2b) = (g.right_face(e_hi), g.left_face(e_lo));
        if outside[s2a] == outside[s1] || outside[s2b] == outside[s1] {
            return Err(Error::violation(
                "local-global-dichotomy",
                "both sides of the cycle at the moving vertex lie in the same region",
                vec![p.clone(), q.clone()],
            ));
        }
        let kind = if outside[s1] { MoveKind::Global } else { MoveKind::Local };

        // cross-check against the Kauffman states
        let (sp, dp) = &self.states[p];
        let (sq, dq_exp) = &self.states[q];
        let diff = sp.difference(sq);
        let mut pair = vec![e, e2];
        pair.sort_unstable();
        if (kind == MoveKind::Local) != (diff == pair) {
            return Err(Error::violation(
                "local-global-dichotomy",
                format!("sector test says {kind:?} but the states differ at {} crossings", diff.len()),
                vec![p.clone(), q.clone()],
            ));
        }

        // the dual cycle and the cut it induces
        let own;
        let dt = match dual_p {
            Some(d) => d,
            None => {
                own = self.dual_tree(p)?;
                &own
            }
        };
        let dual_x = Self::dual_path(dt, g.right_face(e), g.left_face(e));
        let dq = self.dual_tree(q)?;
        let dual_y = Self::dual_path(&dq, g.right_face(e2), g.left_face(e2));
        let mut dual_cycle: Vec<usize> = dual_x.iter().map(|s| s.edge).chain([e]).collect();
        dual_cycle.sort_unstable();
        let mut dual_cycle_y: Vec<usize> = dual_y.iter().map(|s| s.edge).chain([e2]).collect();
        dual_cycle_y.sort_unstable();
        if dual_cycle != dual_cycle_y {
            return Err(Error::violation(
                "dual-cycle",
                "the two dual trees close different cycles",
                vec![p.clone(), q.clone()],
            ));
        }
        let inside_mask: Vec<bool> = (0..g.vertex_count()).map(|x| self.ancestors(&t, x).contains(&v)).collect();
        let cut: Vec<usize> = (0..g.edge_count())
            .filter(|&x| {
                let ed = g.edge(x);
                inside_mask[ed.tail] != inside_mask[ed.head]
            })
            .collect();
        if cut != dual_cycle {
            return Err(Error::violation(
                "dual-cycle",
                "edges meeting the dual cycle differ from the fundamental cut",
                vec![p.clone(), q.clone()],
            ));
        }
        let entering = cut.iter().filter(|&&x| inside_mask[g.edge(x).head]).count();
        if 2 * entering != cut.len() {
            return Err(Error::violation(
                "divergence-balance",
                format!("{entering} of {} crossing edges enter the cut side", cut.len()),
                vec![p.clone(), q.clone()],
            ));
        }
        if kind == MoveKind::Global && !cut.iter().all(|x| diff.contains(x)) {
            return Err(Error::violation(
                "global-state-change",
                "a crossing on the dual cycle keeps its corner",
                vec![p.clone(), q.clone()],
            ));
        }
        let mut crossing_set: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &x in &cut {
            crossing_set.entry(g.edge(x).head).or_default().push(x);
        }

        // degree shift, computed twice
        let degree_shift = q.norm() - p.norm();
        if dq_exp - dp != 2 * degree_shift || degree_shift.abs() != 1 {
            return Err(Error::violation(
                "degree-shift",
                format!("norm changes by {degree_shift}, state monomial by {}/2", dq_exp - dp),
                vec![p.clone(), q.clone()],
            ));
        }

        Ok(ClockMove {
            from: p.clone(),
            to: q.clone(),
            coordinate: i,
            vertex: v,
            from_index: p.0[i],
            to_index: q.0[i],
            direction: if q.0[i] > p.0[i] { Direction::CounterClockwise } else { Direction::Clockwise },
            kind,
            cycle,
            dual_cycle,
            dual_x,
            dual_y,
            crossing_set,
            inside: (0..g.vertex_count()).filter(|&x| inside_mask[x]).collect(),
            degree_shift,
            flagged: g.in_degree(v) == 2,
        })
    }

    /// All clock moves starting at `p`.
    pub fn neighbors(&self, p: &LatticePoint) -> Result<Vec<ClockMove>> {
        self.require_tree(p)?;
        let mut out = Vec::new();
        for q in self.model.lattice_neighbors(p)? {
            out.push(self.classify(p, &q)?);
        }
        Ok(out)
    }

    /// Every move once, oriented in the counter-clockwise direction.
    pub fn all_moves(&self) -> Result<Vec<ClockMove>> {
        let mut out = Vec::new();
        for p in &self.trees.points {
            let mut dual = None;
            for i in 0..p.dim() {
                let q = p.with(i, p.0[i] + 1);
                if self.trees.contains(&q) {
                    if dual.is_none() {
                        dual = Some(self.dual_tree(p)?);
                    }
                    out.push(self.classify_with(p, &q, dual.as_ref())?);
                }
            }
        }
        Ok(out)
    }

    pub fn is_move_graph_connected(&self, moves: &[ClockMove]) -> bool {
        let index: HashMap<&LatticePoint, usize> =
            self.trees.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut uf = UnionFind::new(self.trees.len());
        for m in moves {
            uf.union(index[&m.from], index[&m.to]);
        }
        uf.components <= 1
    }

    /// Consecutive local moves available from `p` decreasing and increasing coordinate `i`.
    pub fn local_reach(&self, p: &LatticePoint, i: usize) -> Result<(u32, u32)> {
        self.require_tree(p)?;
        self.reach_with(p, i, |a, b| Ok(self.trees.contains(b) && self.classify(a, b)?.kind == MoveKind::Local))
    }

    fn reach_with(
        &self,
        p: &LatticePoint,
        i: usize,
        mut is_local: impl FnMut(&LatticePoint, &LatticePoint) -> Result<bool>,
    ) -> Result<(u32, u32)> {
        let d = self.model.dims()[i];
        let mut left = 0;
        let mut cur = p.clone();
        while cur.0[i] > 1 {
            let next = cur.with(i, cur.0[i] - 1);
            if !is_local(&cur, &next)? {
                break;
            }
            left += 1;
            cur = next;
        }
        let mut right = 0;
        let mut cur = p.clone();
        while cur.0[i] < d {
            let next = cur.with(i, cur.0[i] + 1);
            if !is_local(&cur, &next)? {
                break;
            }
            right += 1;
            cur = next;
        }
        Ok((left, right))
    }

    /// Classes of trees under local moves, each checked to be a full box.
    pub fn maximal_rectangles_from(&self, moves: &[ClockMove]) -> Result<Vec<MaxRectangle>> {
        let pts = &self.trees.points;
        let index: HashMap<&LatticePoint, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut uf = UnionFind::new(pts.len());
        for m in moves.iter().filter(|m| m.kind == MoveKind::Local) {
            uf.union(index[&m.from], index[&m.to]);
        }
        let mut classes: BTreeMap<usize, Vec<LatticePoint>> = BTreeMap::new();
        for (i, p) in pts.iter().enumerate() {
            classes.entry(uf.find(i)).or_default().push(p.clone());
        }
        let local: HashSet<(&LatticePoint, &LatticePoint)> = moves
            .iter()
            .filter(|m| m.kind == MoveKind::Local)
            .flat_map(|m| [(&m.from, &m.to), (&m.to, &m.from)])
            .collect();
        let k = self.model.dim();
        let mut rects = Vec::new();
        for members in classes.into_values() {
            let lower: Vec<u32> = (0..k).map(|i| members.iter().map(|p| p.0[i]).min().expect("nonempty")).collect();
            let upper: Vec<u32> = (0..k).map(|i| members.iter().map(|p| p.0[i]).max().expect("nonempty")).collect();
            let volume: u64 = lower.iter().zip(&upper).map(|(m, mm)| (mm - m + 1) as u64).product();
            if volume != members.len() as u64 {
                return Err(Error::violation(
                    "rectangle-box",
                    format!("local class of {} trees spans a box of {volume}", members.len()),
                    members.iter().take(4).cloned().collect(),
                ));
            }
            let average_twice: i64 = lower.iter().zip(&upper).map(|(&m, &mm)| m as i64 + mm as i64).sum();
            let mut reach = Vec::with_capacity(members.len());
            for x in &members {
                let mut per = Vec::with_capacity(k);
                let mut eq3 = 0i64;
                for i in 0..k {
                    let (l, r) = self.reach_with(x, i, |a, b| Ok(local.contains(&(a, b))))?;
                    if x.0[i] - l != lower[i] || x.0[i] + r != upper[i] {
                        return Err(Error::violation(
                            "rectangle-reach",
                            format!("coordinate {} reach ({l}, {r}) misses the walls", i + 1),
                            vec![x.clone()],
                        ));
                    }
                    eq3 += 2 * x.0[i] as i64 + r as i64 - l as i64;
                    per.push((l, r));
                }
                if eq3 != average_twice {
                    return Err(Error::violation(
                        "rectangle-average",
                        format!("reach formula gives {} but bounds give {}", half_to_string(eq3), half_to_string(average_twice)),
                        vec![x.clone()],
                    ));
                }
                reach.push(per);
            }
            rects.push(MaxRectangle { lower, upper, members, average_twice, reach });
        }
        rects.sort_by(|a, b| a.lower.cmp(&b.lower).then(a.upper.cmp(&b.upper)));
        if let Some(first) = rects.first() {
            if let Some(other) = rects.iter().find(|r| r.average_twice != first.average_twice) {
                return Err(Error::violation(
                    "equal-averages",
                    format!(
                        "rectangle averages {} and {} differ",
                        half_to_string(first.average_twice),
                        half_to_string(other.average_twice)
                    ),
                    vec![first.members[0].clone(), other.members[0].clone()],
                ));
            }
        }
        let total: HalfPoly = rects.iter().map(|r| r.contribution()).sum();
        if total != SpanningModel::raw_polynomial(&self.trees) {
            return Err(Error::violation(
                "rectangle-decomposition",
                "rectangle contributions do not add up to the tree polynomial",
                vec![],
            ));
        }
        Ok(rects)
    }

    pub fn maximal_rectangles(&self) -> Result<Vec<MaxRectangle>> {
        let moves = self.all_moves()?;
        self.maximal_rectangles_from(&moves)
    }

    /// A sequence of clock moves from `p` to `q`, built by repeatedly finding
    /// an intermediate tree closer to both ends.
    pub fn clock_path(&self, p: &LatticePoint, q: &LatticePoint) -> Result<Vec<ClockMove>> {
        self.require_tree(p)?;
        self.require_tree(q)?;
        let mut points = vec![p.clone()];
        let mut cur = p.clone();
        while cur != *q {
            let h = self.intermediate(&cur, q)?;
            let i = (0..h.dim()).find(|&i| h.0[i] != cur.0[i]).expect("h differs from cur");
            // unit steps along one coordinate stay in X
            while cur.0[i] != h.0[i] {
                let x = if h.0[i] > cur.0[i] { cur.0[i] + 1 } else { cur.0[i] - 1 };
                cur = cur.with(i, x);
                if !self.trees.contains(&cur) {
                    return Err(Error::violation(
                        "monotone-interpolation",
                        "a point between two trees is not a tree",
                        vec![cur.clone()],
                    ));
                }
                points.push(cur.clone());
            }
        }
        points.windows(2).map(|w| self.classify(&w[0], &w[1])).collect()
    }

    /// A tree differing from `p` in one coordinate and agreeing with `q` there.
    fn intermediate(&self, p: &LatticePoint, q: &LatticePoint) -> Result<LatticePoint> {
        let diff: Vec<usize> = (0..p.dim()).filter(|&i| p.0[i] != q.0[i]).collect();
        let i = diff[0];
        let k = p.with(i, q.0[i]);
        if self.trees.contains(&k) {
            return Ok(k);
        }
        // k holds a cycle through v_i; swap in q's edge at a vertex on that cycle
        let g = self.graph();
        let edges = self.model.subgraph_of(&k)?;
        let mut parent = vec![None; g.vertex_count()];
        for (j, &e) in edges.iter().enumerate() {
            parent[self.model.axis_vertex(j)] = Some(e);
        }
        let mut cycle_vertices = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut x = self.model.axis_vertex(i);
        while seen.insert(x) {
            match parent[x] {
                Some(e) => x = g.edge(e).tail,
                None => break,
            }
        }
        if parent[x].is_some() {
            let start = x;
            loop {
                cycle_vertices.insert(x);
                x = g.edge(parent[x].expect("on cycle")).tail;
                if x == start {
                    break;
                }
            }
        }
        let mut uf = UnionFind::new(g.vertex_count());
        for &e in &edges {
            uf.union(g.edge(e).tail, g.edge(e).head);
        }
        for &j in diff.iter().skip(1) {
            let vj = self.model.axis_vertex(j);
            if !cycle_vertices.contains(&vj) {
                continue;
            }
            let ej2 = g.edge(self.model.slot_edge(j, q.0[j]));
            if uf.find(ej2.tail) != uf.find(ej2.head) {
                let h = p.with(j, q.0[j]);
                if self.trees.contains(&h) {
                    return Ok(h);
                }
                return Err(Error::violation(
                    "clock-path",
                    "exchange at a cycle vertex did not give a tree",
                    vec![p.clone(), q.clone(), h],
                ));
            }
        }
        Err(Error::violation("clock-path", "no exchange vertex on the cycle", vec![p.clone(), q.clone()]))
    }

    pub fn unimodality_report_from(&self, rects: &[MaxRectangle]) -> Result<UnimodalityReport> {
        let delta = SpanningModel::raw_polynomial(&self.trees);
        let coefficients = delta.coeff_seq()?;
        let rectangles: Vec<RectangleSummary> = rects
            .iter()
            .map(|r| {
                let c = r.contribution();
                let trapezoidal = c.coeff_seq().map(|s| s.is_trapezoidal()).unwrap_or(false);
                RectangleSummary {
                    bounds: r.bounds_string(),
                    size: r.size(),
                    average: half_to_string(r.average_twice),
                    contribution: c,
                    trapezoidal,
                }
            })
            .collect();
        let report = UnimodalityReport {
            unimodal: coefficients.is_unimodal(),
            strict_positive: coefficients.strict_positive(),
            trapezoidal: coefficients.is_trapezoidal(),
            axis: rects.first().map(|r| half_to_string(r.average_twice)).unwrap_or_default(),
            coefficients,
            rectangles,
        };
        if !report.strict_positive {
            return Err(Error::violation("strict-positivity", format!("coefficients {:?}", report.coefficients.0), vec![]));
        }
        if !report.unimodal {
            return Err(Error::violation("unimodality", format!("coefficients {:?}", report.coefficients.0), vec![]));
        }
        if let Some((i, _)) = report.rectangles.iter().enumerate().find(|(_, r)| !r.trapezoidal) {
            return Err(Error::violation(
                "rectangle-trapezoidal",
                format!("rectangle {}", report.rectangles[i].bounds),
                rects[i].members.iter().take(1).cloned().collect(),
            ));
        }
        Ok(report)
    }

    pub fn unimodality_report(&self) -> Result<UnimodalityReport> {
        let rects = self.maximal_rectangles()?;
        self.unimodality_report_from(&rects)
    }

    /// Graphviz rendering of the move graph.
    pub fn to_dot(&self, moves: &[ClockMove]) -> String {
        let mut s = String::from("graph clock {\n  node [shape=box];\n");
        for (i, p) in self.trees.points.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{p}\"];");
        }
        let index: HashMap<&LatticePoint, usize> =
            self.trees.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for m in moves {
            let style = match m.kind {
                MoveKind::Local => "style=solid, color=red",
                MoveKind::Global => "style=dashed, color=blue",
            };
            let _ = writeln!(s, "  n{} -- n{} [{style}];", index[&m.from], index[&m.to]);
        }
        s.push_str("}\n");
        s
    }
}
