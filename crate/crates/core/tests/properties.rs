use moy::kauffman::DecoratedDiagram;
use moy::matrix::{det_bareiss, det_cofactor};
use moy::spanning::SpanningModel;
use moy::{alexander, generate, HalfPoly, Method};
use proptest::prelude::*;

fn half_poly() -> impl Strategy<Value = HalfPoly> {
    prop::collection::vec((-8i64..8, -4i64..5), 0..6).prop_map(|terms| {
        let mut p = HalfPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    })
}

fn nonzero() -> impl Strategy<Value = HalfPoly> {
    half_poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_laws(a in half_poly(), b in half_poly(), c in half_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_round_trips(a in half_poly()) {
        let back: HalfPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn canonical_form_ignores_shifts(a in nonzero(), k in -10i64..10) {
        let c = a.canonicalize().unwrap();
        prop_assert_eq!(a.shift(k).canonicalize().unwrap(), c.clone());
        prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
        prop_assert_eq!(c.min_twice_exp(), Some(0));
        prop_assert!(a.doteq(&a.shift(k)));
    }

    #[test]
    fn exact_division_inverts_products(a in nonzero(), b in nonzero()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn quantum_integers_are_symmetric(i in 1u32..12) {
        let q = HalfPoly::quantum_integer(i).unwrap();
        prop_assert_eq!(q.eval_at_one(), i.into());
        prop_assert_eq!(q.min_twice_exp(), Some(1 - i as i64));
        prop_assert_eq!(q.max_twice_exp(), Some(i as i64 - 1));
    }

    #[test]
    fn box_products_are_trapezoidal(bounds in prop::collection::vec((0i64..5, 0i64..6), 1..4)) {
        let p: HalfPoly = bounds.iter().map(|&(lo, len)| HalfPoly::box_poly(lo, lo + len)).product();
        let seq = p.coeff_seq().unwrap();
        prop_assert!(seq.is_trapezoidal(), "{}", p);
        prop_assert!(seq.is_unimodal() && seq.strict_positive());
    }

    #[test]
    fn determinants_agree(entries in prop::collection::vec(half_poly(), 9..=9)) {
        let m: Vec<Vec<HalfPoly>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        prop_assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_graphs_are_valid(seed in 0u64..100_000, size in 1usize..9) {
        let g = generate(seed, size).unwrap();
        prop_assert!(g.validate().is_valid());
        prop_assert_eq!(g.face_count() + g.vertex_count(), g.edge_count() + 2);
        prop_assert_eq!(g.dual().vertex_count, g.face_count());
        let d = DecoratedDiagram::new(&g).unwrap();
        prop_assert_eq!(d.region_count(), d.crossing_count() + 2);
        let back = moy::PlaneGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), g.to_json());
    }

    #[test]
    fn parallel_replacement_bookkeeping(seed in 0u64..100_000, size in 2usize..8) {
        let g = generate(seed, size).unwrap();
        let before = alexander(&g, Method::StateSum).unwrap();
        for e in 0..g.edge_count() {
            let n = g.edge(e).color as usize;
            let r = g.parallel_replace(e).unwrap();
            prop_assert!(r.validate().is_valid());
            prop_assert_eq!(r.vertex_count(), g.vertex_count());
            prop_assert_eq!(r.edge_count(), g.edge_count() + n - 1);
            prop_assert_eq!(r.face_count(), g.face_count() + n - 1);
            prop_assert_eq!(alexander(&r, Method::StateSum).unwrap(), before.clone());
        }
    }

    #[test]
    fn neighboring_trees_differ_in_norm_by_one(seed in 0u64..100_000, size in 2usize..8) {
        let g = generate(seed, size).unwrap().reduce_to_trivial().unwrap();
        let m = SpanningModel::new(&g).unwrap();
        let trees = m.enumerate_trees().unwrap();
        for p in &trees.points {
            prop_assert_eq!(m.subgraph_of(p).unwrap().len(), m.dim());
            for q in m.lattice_neighbors(p).unwrap() {
                prop_assert!(trees.contains(&q));
                prop_assert_eq!((q.norm() - p.norm()).abs(), 1);
            }
        }
    }

    #[test]
    fn scan_and_search_agree(seed in 0u64..100_000, size in 2usize..9) {
        let g = generate(seed, size).unwrap().reduce_to_trivial().unwrap();
        let m = SpanningModel::new(&g).unwrap();
        let scanned = m.enumerate_trees_with_budget(u128::MAX).unwrap();
        let searched = m.enumerate_trees_with_budget(0).unwrap();
        prop_assert!(scanned.scanned && !searched.scanned);
        prop_assert_eq!(scanned.points, searched.points);
    }
}
