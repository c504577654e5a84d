//! Runs every available consistency check on one graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::clock::{ClockAnalysis, MoveKind};
use crate::error::{Error, Result};
use crate::kauffman::DecoratedDiagram;
use crate::laurent::HalfPoly;
use crate::plane_graph::PlaneGraph;
use crate::spanning::{LatticePoint, SpanningModel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub delta: HalfPoly,
    pub tree_count: usize,
    pub local_moves: usize,
    pub global_moves: usize,
    pub rectangles: usize,
    pub axis: String,
    pub checks: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest tree count for which every comparable pair is interpolated.
    pub interpolation_limit: usize,
    /// Number of clock paths built from the first tree.
    pub path_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { interpolation_limit: 200, path_samples: 24 }
    }
}

fn mismatch(check: &'static str, detail: String) -> Error {
    Error::violation(check, detail, vec![])
}

pub fn verify(g: &PlaneGraph) -> Result<VerifyReport> {
    verify_with(g, VerifyOptions::default())
}

pub fn verify_with(g: &PlaneGraph, opts: VerifyOptions) -> Result<VerifyReport> {
    g.ensure_valid()?;
    let mut checks = Vec::new();
    let colored = DecoratedDiagram::new(g)?.state_sum()?;

    // base-point independence on the colored graph
    for b in g.outer_edges() {
        if g.edge(b).is_loop() || b == g.base_edge() {
            continue;
        }
        let other = DecoratedDiagram::new(&g.with_base_edge(b)?)?.state_sum()?;
        if other != colored {
            return Err(mismatch("base-point-invariance", format!("base {}: {other} vs {colored}", g.edge(b).label)));
        }
    }
    checks.push("base-point-invariance".to_string());

    let mut trivial = g.reduce_to_trivial()?;
    if !trivial.base_on_outer_face() {
        let b = trivial.outer_edges()[0];
        trivial = trivial.with_base_edge(b)?;
    }
    let state_sum = DecoratedDiagram::new(&trivial)?.state_sum()?;
    if state_sum != colored {
        return Err(mismatch("parallel-replacement", format!("{colored} before, {state_sum} after")));
    }
    checks.push("parallel-replacement".to_string());

    let model = SpanningModel::new(&trivial)?;
    let trees = model.enumerate_trees()?;
    checks.push(if trees.scanned { "clock-connectivity(scan)" } else { "clock-connectivity(search)" }.to_string());
    let raw = SpanningModel::raw_polynomial(&trees);
    let spanning = raw.canonical_or_zero();
    let matrix = model.alexander_matrix_tree()?;
    if spanning != state_sum || matrix != state_sum {
        return Err(mismatch(
            "oracle-triangle",
            format!("state sum {state_sum}, spanning {spanning}, matrix-tree {matrix}"),
        ));
    }
    if state_sum.eval_at_one() != trees.len().into() {
        return Err(mismatch("tree-count", format!("value at 1 is {}, {} trees", state_sum.eval_at_one(), trees.len())));
    }
    checks.push("oracle-triangle".to_string());

    for b in trivial.outer_edges() {
        if trivial.edge(b).is_loop() || b == trivial.base_edge() {
            continue;
        }
        let other = SpanningModel::new(&trivial.with_base_edge(b)?)?.alexander_matrix_tree()?;
        if other != spanning {
            return Err(mismatch("root-invariance", format!("base {}: {other} vs {spanning}", trivial.edge(b).label)));
        }
    }
    checks.push("root-invariance".to_string());

    if trees.len() >= 2 && spanning.len() == 1 {
        return Err(mismatch("nonconstant", format!("{} trees but constant polynomial", trees.len())));
    }
    checks.push("nonconstant".to_string());

    let analysis = ClockAnalysis::from_parts(model, trees)?;
    let trees = analysis.trees();

    // the tree-to-state map is a bijection onto the Kauffman states
    let diagram = DecoratedDiagram::new(&trivial)?;
    let states = diagram.enumerate_states();
    let mut images: Vec<_> = trees.points.iter().map(|p| analysis.state(p).expect("cached").clone()).collect();
    images.sort();
    if images != states {
        return Err(mismatch(
            "state-bijection",
            format!("{} trees map onto {} distinct states of {}", trees.len(), images.len(), states.len()),
        ));
    }
    checks.push("state-bijection".to_string());

    let moves = analysis.all_moves()?;
    if !analysis.is_move_graph_connected(&moves) {
        return Err(mismatch("clock-connectivity", "move graph is disconnected".into()));
    }
    checks.push("move-classification".to_string());

    let rects = analysis.maximal_rectangles_from(&moves)?;
    checks.push("rectangles".to_string());

    // local moves at different coordinates commute inside a rectangle
    let local: BTreeSet<(LatticePoint, LatticePoint)> = moves
        .iter()
        .filter(|m| m.kind == MoveKind::Local)
        .flat_map(|m| [(m.from.clone(), m.to.clone()), (m.to.clone(), m.from.clone())])
        .collect();
    let class_of = |p: &LatticePoint| rects.iter().position(|r| r.members.binary_search(p).is_ok());
    for p in &trees.points {
        let outs: Vec<&LatticePoint> = local.range((p.clone(), LatticePoint(vec![]))..).take_while(|(a, _)| a == p).map(|(_, b)| b).collect();
        for (a, qa) in outs.iter().enumerate() {
            for qb in outs.iter().skip(a + 1) {
                let i = (0..p.dim()).find(|&i| qa.0[i] != p.0[i]).expect("moved");
                let j = (0..p.dim()).find(|&j| qb.0[j] != p.0[j]).expect("moved");
                if i == j {
                    continue;
                }
                let corner = qa.with(j, qb.0[j]);
                if !trees.contains(&corner) || class_of(&corner) != class_of(p) {
                    return Err(Error::violation(
                        "local-commutation",
                        "two local moves do not close a square",
                        vec![p.clone(), (*qa).clone(), (*qb).clone()],
                    ));
                }
            }
        }
    }
    checks.push("local-commutation".to_string());

    let report = analysis.unimodality_report_from(&rects)?;
    checks.push("strict-positivity".to_string());
    checks.push("unimodality".to_string());

    if trees.len() <= opts.interpolation_limit {
        for p in &trees.points {
            for q in &trees.points {
                if p != q && p.precedes(q) {
                    check_box(&analysis, p, q)?;
                }
            }
        }
        checks.push("monotone-interpolation".to_string());
    }

    if let Some(first) = trees.points.first() {
        let step = (trees.len() / opts.path_samples.max(1)).max(1);
        for q in trees.points.iter().step_by(step) {
            let path = analysis.clock_path(first, q)?;
            let end = path.last().map(|m| &m.to).unwrap_or(first);
            if end != q {
                return Err(Error::violation("clock-path", "path ends elsewhere", vec![first.clone(), q.clone()]));
            }
        }
        checks.push("clock-paths".to_string());
    }

    let local_moves = moves.iter().filter(|m| m.kind == MoveKind::Local).count();
    Ok(VerifyReport {
        delta: spanning,
        tree_count: trees.len(),
        local_moves,
        global_moves: moves.len() - local_moves,
        rectangles: rects.len(),
        axis: report.axis,
        checks,
    })
}

fn check_box(analysis: &ClockAnalysis<'_>, p: &LatticePoint, q: &LatticePoint) -> Result<()> {
    let mut y = p.clone();
    loop {
        if !analysis.trees().contains(&y) {
            return Err(Error::violation(
                "monotone-interpolation",
                "a point between two trees is not a tree",
                vec![p.clone(), q.clone(), y],
            ));
        }
        let mut i = y.dim();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if y.0[i] < q.0[i] {
                y.0[i] += 1;
                break;
            }
            y.0[i] = p.0[i];
        }
    }
}
