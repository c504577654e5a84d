//! Expected values computed by hand or read off the worked examples, frozen here.

mod common;

use common::graph;
use moy::clock::{ClockAnalysis, MoveKind};
use moy::crowell::{compare, singular_from_pd, CrowellGraph, PdCode};
use moy::kauffman::{Corner, DecoratedDiagram};
use moy::matrix::{det_bareiss, det_cofactor};
use moy::spanning::SpanningModel;
use moy::{alexander, generate, CoeffSeq, HalfPoly, LatticePoint, Method};

fn poly(s: &str) -> HalfPoly {
    s.parse().unwrap()
}

fn pt(v: &[u32]) -> LatticePoint {
    LatticePoint(v.to_vec())
}

const TREFOIL: &str = "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n";
const FIG8: &str = "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\n";

#[test]
fn laurent_arithmetic() {
    let p = poly("1 + 2*t + t^2");
    assert_eq!(&p + &HalfPoly::zero(), p);
    assert_eq!(&poly("1 + t") + &poly("t + t^2"), p);
    assert_eq!(&p * &HalfPoly::one(), p);
    assert_eq!(&poly("1 + t + t^2") * &poly("1 + t"), poly("1 + 2*t + 2*t^2 + t^3"));
    let q = &HalfPoly::quantum_integer(3).unwrap() * &HalfPoly::quantum_integer(2).unwrap();
    assert_eq!(q, poly("t^(-3/2) + 2*t^(-1/2) + 2*t^(1/2) + t^(3/2)"));
}

#[test]
fn laurent_canonical_forms() {
    assert_eq!(poly("t^(-1/2) + t^(1/2)").canonicalize().unwrap(), poly("1 + t"));
    assert_eq!(poly("1 + t").canonicalize().unwrap(), poly("1 + t"));
    assert_eq!(poly("t^2 + 2*t^3 + t^4").canonicalize().unwrap(), poly("1 + 2*t + t^2"));
    assert!(HalfPoly::zero().canonicalize().is_err());
}

#[test]
fn quantum_integers() {
    assert_eq!(HalfPoly::quantum_integer(1).unwrap(), HalfPoly::one());
    assert_eq!(HalfPoly::quantum_integer(2).unwrap(), poly("t^(-1/2) + t^(1/2)"));
    assert_eq!(HalfPoly::quantum_integer(4).unwrap(), poly("t^(-3/2) + t^(-1/2) + t^(1/2) + t^(3/2)"));
    assert!(HalfPoly::quantum_integer(0).is_err());
}

#[test]
fn coefficient_predicates() {
    assert!(CoeffSeq::from_i64(&[1, 2, 3, 2, 1]).is_unimodal());
    assert!(!CoeffSeq::from_i64(&[1, 2, 1, 2, 1]).is_unimodal());
    let delta = poly("t^2 + 2*t^3 + 3*t^4 + 3*t^5 + 2*t^6 + t^7").coeff_seq().unwrap();
    assert_eq!(delta, CoeffSeq::from_i64(&[1, 2, 3, 3, 2, 1]));
    assert!(delta.is_unimodal() && delta.is_trapezoidal());
    assert!(CoeffSeq::from_i64(&[1, 3, 3, 1]).is_trapezoidal());
    assert!(!CoeffSeq::from_i64(&[1, 2, 2, 3, 2, 2, 1]).is_trapezoidal());
    assert!(!CoeffSeq::from_i64(&[1, 0, 1]).strict_positive());
    assert!(CoeffSeq::from_i64(&[1, 2, 1]).strict_positive());
    assert!(poly("t^(1/2) + t").coeff_seq().is_err());
}

#[test]
fn digon_diagram() {
    let g = graph("digon.graph");
    let d = DecoratedDiagram::new(&g).unwrap();
    assert_eq!((d.crossing_count(), d.region_count()), (2, 4));
    let states = d.enumerate_states();
    assert_eq!(states.len(), 1);
    assert!(states[0].0.iter().all(|&c| c == Corner::N));
    assert_eq!(d.raw_state_sum().unwrap(), poly("t^(1/2)"));
    assert_eq!(d.state_sum().unwrap(), HalfPoly::one());
}

#[test]
fn trivial_color_monomials_count_corners() {
    // a marked N gives 1/2, each E adds 1/2 and each W subtracts 1/2
    let g = graph("fig13-Gprime.graph");
    let d = DecoratedDiagram::new(&g).unwrap();
    for s in d.enumerate_states() {
        let e = s.0.iter().filter(|&&c| c == Corner::E).count() as i64;
        let w = s.0.iter().filter(|&&c| c == Corner::W).count() as i64;
        assert_eq!(d.state_monomial(&s).unwrap(), HalfPoly::monomial(1 + e - w, 1));
    }
}

#[test]
fn example_graph_sizes() {
    let g = graph("fig13-Gprime.graph");
    assert_eq!(g.face_count(), g.edge_count() - g.vertex_count() + 2);
    assert_eq!(g.dual().vertex_count, g.face_count());
    let d = DecoratedDiagram::new(&g).unwrap();
    assert_eq!(d.crossing_count(), g.edge_count());
    assert_eq!(d.region_count(), g.edge_count() + 2);

    let colored = graph("fig13.graph");
    let a = colored.edge_by_label(0).unwrap();
    let once = colored.parallel_replace(a).unwrap();
    assert_eq!(once.vertex_count(), colored.vertex_count());
    assert_eq!(once.edge_count(), colored.edge_count() + 2);
    assert_eq!(once.face_count(), colored.face_count() + 2);
    assert_eq!(colored.reduce_to_trivial().unwrap().reduce_to_trivial().unwrap().to_json(), colored.reduce_to_trivial().unwrap().to_json());
}

#[test]
fn incoming_order_at_v2() {
    let g = graph("fig13-Gprime.graph");
    let v2 = g.vertex_by_label(2).unwrap();
    let order = g.incoming_order(v2);
    assert_eq!(order.len(), 4);
    let rot = &g.vertices()[v2].rotation;
    let positions: Vec<usize> =
        order.iter().map(|&e| rot.iter().position(|&h| h == 2 * e + 1).unwrap()).collect();
    // consecutive in the rotation, read cyclically
    for w in positions.windows(2) {
        assert_eq!(w[1], (w[0] + 1) % rot.len());
    }
}

#[test]
fn lattice_at_root_v3() {
    let g = graph("fig13-Gprime.graph");
    let m = SpanningModel::new(&g).unwrap();
    assert_eq!(g.vertices()[m.root()].label, 3);
    assert_eq!(m.dims(), vec![5, 4]);
    // second copy of A into v1 and third copy of B into v2
    let p = pt(&[4, 3]);
    let sub = m.subgraph_of(&p).unwrap();
    assert_eq!(sub.len(), 2);
    let v1 = g.vertex_by_label(1).unwrap();
    let v2 = g.vertex_by_label(2).unwrap();
    let a_copies: Vec<usize> = g.incoming_order(v1).into_iter().filter(|&e| g.vertices()[g.edge(e).tail].label == 3).collect();
    assert_eq!(sub[0], a_copies[1]);
    assert_eq!(sub[1], g.incoming_order(v2)[2]);

    let trees = m.enumerate_trees().unwrap();
    assert_eq!(trees.len(), 12);
    for x in 3..=5 {
        for y in 1..=4 {
            assert!(m.is_spanning_tree(&pt(&[x, y])).unwrap());
        }
    }
    // x1 = 1 picks P, which closes a 2-cycle with B
    assert!(!m.is_spanning_tree(&pt(&[1, 1])).unwrap());
}

#[test]
fn tree_to_state_at_root_v3() {
    let colored = graph("fig13.graph");
    let d = DecoratedDiagram::new(&colored).unwrap();
    assert_eq!(d.enumerate_states().len(), 1);
    let g = graph("fig13-Gprime.graph");
    let m = SpanningModel::new(&g).unwrap();
    let d = DecoratedDiagram::new(&g).unwrap();
    let s = m.tree_to_state(&pt(&[3, 1])).unwrap();
    assert!(d.enumerate_states().contains(&s));
}

#[test]
fn digon_lattice() {
    let g = graph("digon.graph");
    let m = SpanningModel::new(&g).unwrap();
    let p = pt(&[1]);
    let sub = m.subgraph_of(&p).unwrap();
    assert_eq!(sub.len(), 1);
    assert_eq!(g.edge(sub[0]).head, m.axis_vertex(0));
    assert_ne!(g.edge(sub[0]).head, m.root());
    assert!(m.is_spanning_tree(&p).unwrap());
    assert_eq!(m.enumerate_trees().unwrap().points, vec![p.clone()]);
    assert!(m.tree_to_state(&p).unwrap().0.iter().all(|&c| c == Corner::N));
    assert_eq!(m.alexander().unwrap(), HalfPoly::one());
    assert_eq!(m.matrix_tree_raw().unwrap(), HalfPoly::t_pow(1));
    let a = ClockAnalysis::new(&g).unwrap();
    assert!(a.neighbors(&p).unwrap().is_empty());
    assert_eq!(a.local_reach(&p, 0).unwrap(), (0, 0));
    let r = a.unimodality_report().unwrap();
    assert!(r.unimodal && r.coefficients.len() == 1);
}

#[test]
fn lattice_points() {
    assert_eq!(pt(&[1]).norm(), 1);
    assert_eq!(pt(&[2, 5]).distance(&pt(&[2, 5])).unwrap(), 0);
    let (a, b) = (pt(&[1, 2]), pt(&[1, 3]));
    assert_eq!(a.distance(&b).unwrap(), 1);
    assert_eq!(b.norm() - a.norm(), 1);
    assert!(a.is_neighbor(&b).unwrap());
    assert!(a.distance(&pt(&[1])).is_err());
}

#[test]
fn example_polynomials() {
    let want = poly("1 + 2*t + 3*t^2 + 3*t^3 + 2*t^4 + t^5");
    for name in ["fig13.graph", "fig13-v2.graph", "fig13-Gprime.graph", "fig13-Gprime-v2.graph"] {
        let g = graph(name);
        for m in [Method::StateSum, Method::Spanning, Method::MatrixTree] {
            assert_eq!(alexander(&g, m).unwrap(), want, "{name} {m:?}");
        }
        let trivial = g.reduce_to_trivial().unwrap();
        let m = SpanningModel::new(&trivial).unwrap();
        assert_eq!(m.matrix_tree_raw().unwrap().eval_at_one(), 12.into());
    }
    let raw = SpanningModel::raw_polynomial(&SpanningModel::new(&graph("fig13-Gprime-v2.graph")).unwrap().enumerate_trees().unwrap());
    assert_eq!(raw, poly("t^2 + 2*t^3 + 3*t^4 + 3*t^5 + 2*t^6 + t^7"));
}

#[test]
fn box_at_root_v3_is_all_local() {
    let g = graph("fig13-Gprime.graph");
    let a = ClockAnalysis::new(&g).unwrap();
    let inner = a.neighbors(&pt(&[4, 2])).unwrap();
    assert_eq!(inner.len(), 4);
    assert!(inner.iter().all(|m| m.kind == MoveKind::Local));
    // the v2 coordinate from a corner can slide three times
    assert_eq!(a.local_reach(&pt(&[3, 1]), 1).unwrap(), (0, 3));
    let rects = a.maximal_rectangles().unwrap();
    assert_eq!(rects.len(), 1);
    assert_eq!(rects[0].shape(), vec![3, 4]);
}

#[test]
fn moves_at_root_v2() {
    let g = graph("fig13-Gprime-v2.graph");
    let a = ClockAnalysis::new(&g).unwrap();
    // the upper rectangle (tree 1) meets the 2x2 block (tree 2) by a global move
    let m12 = a.classify(&pt(&[1, 2]), &pt(&[1, 3])).unwrap();
    assert_eq!(m12.kind, MoveKind::Global);
    assert_eq!(m12.degree_shift, 1);
    assert_eq!(a.classify(&pt(&[1, 3]), &pt(&[1, 2])).unwrap().degree_shift, -1);
    // the 2x2 block meets the 3x2 block (tree 3) by a local move
    let m23 = a.classify(&pt(&[2, 1]), &pt(&[3, 1])).unwrap();
    assert_eq!(m23.kind, MoveKind::Local);
    // adjacent parallel copies are always local
    assert_eq!(a.classify(&pt(&[1, 1]), &pt(&[2, 1])).unwrap().kind, MoveKind::Local);

    let moves = a.all_moves().unwrap();
    assert_eq!(moves.iter().filter(|m| m.kind == MoveKind::Global).count(), 2);
    let rects = a.maximal_rectangles().unwrap();
    let contributions: Vec<HalfPoly> = rects.iter().map(|r| r.contribution()).collect();
    assert_eq!(contributions, vec![poly("t^2 + 2*t^3 + 2*t^4 + 2*t^5 + 2*t^6 + t^7"), poly("t^4 + t^5")]);
    assert!(rects.iter().all(|r| r.average_twice == 9));

    let r = a.unimodality_report().unwrap();
    assert_eq!(r.coefficients, CoeffSeq::from_i64(&[1, 2, 3, 3, 2, 1]));
    assert!(r.unimodal);
    assert_eq!(r.axis, "4.5");
}

#[test]
fn clock_paths_at_root_v2() {
    let g = graph("fig13-Gprime-v2.graph");
    let a = ClockAnalysis::new(&g).unwrap();
    let p = pt(&[2, 3]);
    assert!(a.clock_path(&p, &p).unwrap().is_empty());
    assert_eq!(a.clock_path(&p, &pt(&[2, 2])).unwrap().len(), 1);
    // from tree 1 to tree 3: global, then local
    let path = a.clock_path(&p, &pt(&[3, 2])).unwrap();
    let kinds: Vec<MoveKind> = path.iter().map(|m| m.kind).collect();
    assert_eq!(kinds, vec![MoveKind::Global, MoveKind::Local]);
    assert_eq!(path[0].to, pt(&[2, 2]));
}

#[test]
fn figure_eight_report() {
    let g = singular_from_pd(&PdCode::parse(FIG8).unwrap()).unwrap();
    let a = ClockAnalysis::new(&g).unwrap();
    let r = a.unimodality_report().unwrap();
    assert_eq!(r.coefficients, CoeffSeq::from_i64(&[1, 3, 1]));
    assert!(r.unimodal);
}

#[test]
fn crowell_graphs() {
    let t = CrowellGraph::from_pd(&PdCode::parse(TREFOIL).unwrap()).unwrap();
    assert_eq!((t.vertex_count, t.edges.len()), (3, 6));
    let f = CrowellGraph::from_pd(&PdCode::parse(FIG8).unwrap()).unwrap();
    assert_eq!((f.vertex_count, f.edges.len()), (4, 8));
    for cg in [&t, &f] {
        for v in 0..cg.vertex_count {
            assert_eq!(cg.edges.iter().filter(|e| e.head == v).count(), 2);
            assert_eq!(cg.edges.iter().filter(|e| e.tail == v).count(), 2);
        }
    }
    let (count, raw) = t.tree_sum(0).unwrap();
    assert_eq!(count, 3);
    assert_eq!(raw, poly("t^2 + t^3 + t^4"));
    assert_eq!(f.alexander(0).unwrap().1, poly("1 + 3*t + t^2"));
}

#[test]
fn singular_projections() {
    let g = singular_from_pd(&PdCode::parse(TREFOIL).unwrap()).unwrap();
    let d = DecoratedDiagram::new(&g).unwrap();
    assert_eq!((d.crossing_count(), d.region_count()), (6, 8));
    assert_eq!(d.enumerate_states().len(), 4);
    let m = SpanningModel::new(&g).unwrap();
    assert_eq!(m.enumerate_trees().unwrap().len(), 4);
    assert_eq!(m.alexander().unwrap(), poly("1 + 2*t + t^2"));
    let raw = SpanningModel::raw_polynomial(&m.enumerate_trees().unwrap());
    assert_eq!(raw, poly("t^2 + 2*t^3 + t^4"));

    let g8 = singular_from_pd(&PdCode::parse(FIG8).unwrap()).unwrap();
    assert_eq!(alexander(&g8, Method::StateSum).unwrap(), poly("1 + 3*t + t^2"));

    let kink = singular_from_pd(&PdCode::parse("X 1 2 2 1").unwrap()).unwrap();
    assert_eq!(kink.vertex_count(), 1);
    assert_eq!(alexander(&kink, Method::Spanning).unwrap(), HalfPoly::one());
}

#[test]
fn comparisons() {
    let t = compare(&PdCode::parse(TREFOIL).unwrap()).unwrap();
    assert!(!t.equal);
    assert_eq!((t.crowell.clone(), t.singular.clone()), (poly("1 + t + t^2"), poly("1 + 2*t + t^2")));
    assert_eq!((t.crowell_trees, t.singular_trees), (3, 4));
    let f = compare(&PdCode::parse(FIG8).unwrap()).unwrap();
    assert!(f.equal);
    assert_eq!(f.crowell, poly("1 + 3*t + t^2"));
}

#[test]
fn non_alternating_is_rejected() {
    // the first crossing is switched, so arc 1 runs over at both of its crossings
    let err = CrowellGraph::from_pd(&PdCode::parse("X 4 1 5 2\nX 3 1 4 6\nX 5 3 6 2\n").unwrap());
    let msg = err.unwrap_err().to_string();
    assert!(msg.contains("not alternating"), "{msg}");
}

#[test]
fn determinants_agree() {
    let m = vec![
        vec![poly("1 + t"), poly("-t"), HalfPoly::zero()],
        vec![poly("-1"), poly("2 + t"), poly("-t^2")],
        vec![HalfPoly::zero(), poly("-1"), poly("1 + t^2")],
    ];
    let d = det_bareiss(&m).unwrap();
    assert_eq!(d, det_cofactor(&m));
    assert_eq!(det_bareiss(&[vec![poly("t")]].to_vec()).unwrap(), poly("t"));
}

#[test]
fn generator_contract() {
    let g = generate(9, 1).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
    assert!(g.is_trivially_colored());
    assert_eq!(generate(42, 10).unwrap().to_json(), generate(42, 10).unwrap().to_json());
    assert!(generate(1, 0).is_err());
}
