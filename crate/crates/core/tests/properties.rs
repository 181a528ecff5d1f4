mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::oracle;
use divide_kh::complex::{assemble_split, graded_edges, split_cone};
use divide_kh::gf2::{rank, reduce_complex, reference_rank, BitMatrix};
use divide_kh::homology::{chain_euler, homology_from_ranks};
use divide_kh::moves::{applicable_moves, MoveSpec};
use divide_kh::poly::{check_euler_relation, w_enhanced, w_statesum};
use divide_kh::states::{enumerate_enhanced, StateCube};
use divide_kh::text::{emit, parse, Format};
use divide_kh::*;

const LIMIT: usize = DEFAULT_MAX_POINTS;

fn divide(max_points: usize) -> impl Strategy<Value = Divide> {
    (any::<u64>(), 0..=max_points, 1usize..=5).prop_map(|(seed, p, n)| random_divide(seed, p, n))
}

fn as_poly(w: &HalfLaurent) -> oracle::Poly {
    w.terms().map(|(e, &c)| (e, c)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_and_json_round_trip(d in divide(10)) {
        for fmt in [Format::Text, Format::Json] {
            let back = parse(&emit(&d, fmt)).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(back.validate().unwrap().points, d.validate().unwrap().points);
        }
        let anonymous = d.clone().without_name();
        prop_assert_eq!(parse(&emit(&anonymous, Format::Text)).unwrap(), anonymous);
    }

    #[test]
    fn states_match_the_path_tracing_oracle(d in divide(8)) {
        let cube = StateCube::new(&d, LIMIT).unwrap();
        for full in cube.vertices() {
            let c = cube.components(full);
            let g = cube.gradings(full);
            let o = oracle::state(&d, full);
            prop_assert_eq!((c.op, c.cl, g.i, g.k), (o.op, o.cl, o.i, o.k), "word {:b}", full);
            // components partition the arcs; open ones carry the end points
            let mut seen = vec![false; cube.arc_count()];
            for comp in &c.components {
                for &a in &comp.arcs {
                    prop_assert!(!seen[a as usize]);
                    seen[a as usize] = true;
                }
            }
            prop_assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn differential_squares_to_zero_and_respects_gradings(d in divide(10)) {
        let c = build_complex(&d, LIMIT).unwrap();
        prop_assert!(check_d_squared(&c));
        c.check_shape().unwrap();
        for e in graded_edges(&d, LIMIT).unwrap() {
            prop_assert_eq!(e.source.0 .1, e.target.0 .1);
            prop_assert_eq!(e.source.0 .0 + 1, e.target.0 .0);
        }
    }

    #[test]
    fn grading_bounds_and_parity(d in divide(10)) {
        let p = d.validate().unwrap();
        let (np, nm, n0) = (p.n_plus as i64, p.n_minus as i64, p.n_zero as i64);
        let states = enumerate_enhanced(&d, LIMIT).unwrap();
        let cube = StateCube::new(&d, LIMIT).unwrap();
        let expected: usize = cube.vertices().map(|v| 1usize << cube.components(v).len()).sum();
        prop_assert_eq!(states.values().map(|v| v.len()).sum::<usize>(), expected);
        for s in states.values().flatten() {
            prop_assert!(-nm <= s.i && s.i <= np + n0);
            prop_assert!(2 * np - 4 * nm + n0 <= s.k && s.k <= 4 * np - 2 * nm + 2 * n0);
            prop_assert_eq!(s.j, s.k + 2 * s.delta_cl + s.delta_op);
            prop_assert_eq!(s.j.rem_euclid(2), (p.endpoints as i64 / 2).rem_euclid(2));
        }
    }

    #[test]
    fn polynomial_two_ways_and_euler_relation(d in divide(10)) {
        let w = w_statesum(&d, LIMIT).unwrap();
        prop_assert_eq!(&w, &w_enhanced(&d, LIMIT).unwrap());
        prop_assert_eq!(as_poly(&w), oracle::w(&d));
        let e = check_euler_relation(&d, LIMIT).unwrap();
        prop_assert!(e.holds, "W = {}, chi = {}", e.w.to_t_string(), e.chi.to_t_string());
    }

    #[test]
    fn writhe_drops_by_the_pinned_point(d in divide(10)) {
        let p = d.validate().unwrap();
        let w = p.writhe();
        for (q, kind) in p.points.iter().enumerate() {
            let expect = match kind {
                PointKind::Crossing { sign: Sign::Plus, .. } => 2,
                PointKind::Crossing { sign: Sign::Minus, .. } => -2,
                PointKind::TurnBack { .. } => 1,
            };
            for bit in [false, true] {
                let pinned = PartialDivide::new(d.clone()).pin(q, bit);
                prop_assert_eq!(w - pinned.writhe().unwrap(), expect);
            }
        }
    }

    #[test]
    fn bit_rank_matches_reference(rows in 0usize..=64, cols in 0usize..=64, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let density = rng.gen_range(0.0..1.0);
        let dense: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_bool(density)).collect()).collect();
        let mut m = BitMatrix::zeros(rows, cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b);
            }
        }
        prop_assert!(m.padding_is_zero());
        let r = rank(&m);
        prop_assert_eq!(r, reference_rank(&dense));
        prop_assert!(r <= rows.min(cols));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduction_preserves_homology(d in divide(8)) {
        let c = build_complex(&d, LIMIT).unwrap();
        let r = reduce_complex(&c);
        prop_assert!(check_d_squared(&r));
        prop_assert_eq!(r.nonzero_entries(), 0);
        prop_assert_eq!(homology_from_ranks(&r), homology_from_ranks(&c));
        prop_assert_eq!(graded_euler(&homology_table(&c)), chain_euler(&c));
    }

    #[test]
    fn cone_of_split_pieces_rebuilds_the_complex(d in divide(8)) {
        let full = build_complex(&d, LIMIT).unwrap();
        let n = d.validate().unwrap().n();
        for q in 0..n {
            let split = split_cone(&d, q).unwrap();
            let rebuilt = assemble_split(&split, LIMIT).unwrap();
            prop_assert!(rebuilt.canonical_form() == full.canonical_form(), "point {}", q);
        }
    }

    #[test]
    fn moves_preserve_homology_and_w(d in divide(6), pick in any::<prop::sample::Index>()) {
        let moves = applicable_moves(&d);
        prop_assume!(!moves.is_empty());
        let mv = moves[pick.index(moves.len())];
        let e = apply_move(&d, mv).unwrap();
        let (cd, ce) = (build_complex(&d, LIMIT).unwrap(), build_complex(&e, LIMIT).unwrap());
        prop_assert_eq!(homology_table(&cd), homology_table(&ce), "{}", mv);
        prop_assert_eq!(w_statesum(&d, LIMIT).unwrap(), w_statesum(&e, LIMIT).unwrap());
        prop_assert_eq!(apply_move(&e, mv.inverse(&d)).unwrap(), d.clone());
        if let MoveSpec::FarCommute { at } = mv {
            let map = common::far_commute_relabel(&d, &e, at);
            prop_assert!(common::relabel(&cd.canonical_form(), &map) == ce.canonical_form());
        }
    }
}

#[test]
fn braid_slide_suite_preserves_homology_and_w() {
    for (d, at) in common::braid_suite() {
        let e = apply_move(&d, MoveSpec::BraidSlide { at }).unwrap();
        let hd = homology_table(&build_complex(&d, LIMIT).unwrap());
        let he = homology_table(&build_complex(&e, LIMIT).unwrap());
        assert_eq!(hd, he, "{:?} -> {:?}", d.word, e.word);
        assert_eq!(w_statesum(&d, LIMIT).unwrap(), w_statesum(&e, LIMIT).unwrap());
    }
}

#[test]
fn far_commute_on_four_strands_gives_identical_complexes() {
    let d = Divide::new(vec![WallItem::Endpoint; 4], vec![Crossing::plus(1), Crossing::plus(3)], vec![WallItem::Endpoint; 4]);
    let e = apply_move(&d, MoveSpec::FarCommute { at: 0 }).unwrap();
    assert_eq!(e.word, vec![Crossing::plus(3), Crossing::plus(1)]);
    let (cd, ce) = (build_complex(&d, LIMIT).unwrap(), build_complex(&e, LIMIT).unwrap());
    let map = common::far_commute_relabel(&d, &e, 0);
    assert_eq!(common::relabel(&cd.canonical_form(), &map), ce.canonical_form());
    assert_eq!(cd.dims(), ce.dims());
}

#[test]
fn pair_insert_on_trefoil_keeps_the_table() {
    let t = fixtures::trefoil();
    let u = apply_move(&t, "II-insert@1:+1".parse().unwrap()).unwrap();
    let h = |d: &Divide| homology_table(&build_complex(d, LIMIT).unwrap());
    assert_eq!(h(&t), h(&u));
}

#[test]
fn fixture_polynomials_match_the_table_oracle() {
    let trefoil = [((0, 1), 1), ((0, 3), 1), ((1, 5), 1), ((1, 7), 1), ((2, 7), 1), ((2, 9), 1)];
    let figure8 =
        [((-1, -5), 1), ((-1, -3), 1), ((0, -3), 1), ((0, -1), 2), ((0, 1), 1), ((1, 1), 1), ((1, 3), 1), ((2, 3), 1), ((2, 5), 1)];
    for (d, table) in [(fixtures::trefoil(), &trefoil[..]), (fixtures::figure_eight(), &figure8[..])] {
        let from_table = oracle::w_from_table(table);
        assert_eq!(as_poly(&w_statesum(&d, LIMIT).unwrap()), from_table);
        assert_eq!(oracle::w(&d), from_table);
        let h = homology_table(&build_complex(&d, LIMIT).unwrap());
        let chi: BTreeMap<i64, i64> = graded_euler(&h).compress(2).unwrap().terms().map(|(e, &c)| (e, c)).collect();
        assert_eq!(chi, oracle::euler_of_table(table));
    }
}
