//! Property suites for the combinatorial invariants.

mod common;

use origami_stairs::cut::{Cut, StaircaseSpec};
use origami_stairs::cylinders::is_single_cylinder;
use origami_stairs::format::{parse_surface, print_surface, SurfaceDocument};
use origami_stairs::group::Group;
use origami_stairs::perm::Permutation;
use origami_stairs::profile::zero_integral_check;
use origami_stairs::sturmian::sturmian_lyndon;
use origami_stairs::surface::Origami;
use origami_stairs::trace::{trace, StopRule, TracePoint};
use origami_stairs::{q, Slope};
use proptest::prelude::*;

fn perm_strategy(k: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn origami_strategy(k_max: usize) -> impl Strategy<Value = Origami> {
    (1..=k_max).prop_flat_map(|k| {
        (perm_strategy(k), perm_strategy(k)).prop_map(|(h, v)| Origami::build(h, v).unwrap())
    })
}

proptest! {
    // the number of vertices has the parity of the number of squares
    #[test]
    fn commutator_cycle_count_matches_square_parity(o in origami_strategy(12)) {
        let cycles = o.commutator().cycle_type().cycle_count();
        prop_assert_eq!(cycles % 2, o.square_count() % 2);
    }

    // relabeling the squares changes nothing geometric
    #[test]
    fn stratum_is_relabeling_invariant(o in origami_strategy(8), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_perm(&mut rng, o.square_count());
        let r = o.relabel(&g).unwrap();
        // square labels move; the per-component geometry must not
        let shape = |o: &Origami| {
            use origami_stairs::surface::StratumReport;
            let mut v = match o.stratum_report() {
                StratumReport::Connected(s) => vec![(o.square_count(), s.h_notation(), s.genus)],
                StratumReport::Disconnected(parts) => parts
                    .into_iter()
                    .map(|(sq, s)| (sq.len(), s.h_notation(), s.genus))
                    .collect(),
            };
            v.sort();
            v
        };
        prop_assert_eq!(shape(&o), shape(&r));
        prop_assert_eq!(o.is_connected(), r.is_connected());
    }

    // transposing the surface transposes every direction verdict
    #[test]
    fn transpose_swaps_direction_verdicts(o in origami_strategy(7), rise in 1u64..5, run in 1u64..5) {
        prop_assume!(o.is_connected());
        prop_assume!(num_integer::gcd(rise, run) == 1);
        let s = Slope::new(rise, run).unwrap();
        prop_assert_eq!(
            is_single_cylinder(&o, s).unwrap(),
            is_single_cylinder(&o.transpose(), s.transpose()).unwrap()
        );
    }

    #[test]
    fn lyndon_words_are_balanced_and_minimal(p in 1u64..=30, qd in 1u64..=30) {
        prop_assume!(num_integer::gcd(p, qd) == 1 && p <= qd);
        let w = sturmian_lyndon(p, qd).unwrap();
        prop_assert_eq!(w.len() as u64, qd);
        prop_assert_eq!(w.ones(), p);
        prop_assert!(w.is_strictly_minimal_rotation());
    }

    // print . parse is the identity on surface documents
    #[test]
    fn surf_documents_round_trip(o in origami_strategy(9)) {
        let doc = SurfaceDocument {
            name: Some("roundtrip".into()),
            origami: o,
            spec: None,
            declared_stratum: None,
        };
        let text = print_surface(&doc);
        let back = parse_surface(&text).unwrap();
        prop_assert_eq!(back.origami.sigma_h(), doc.origami.sigma_h());
        prop_assert_eq!(back.origami.sigma_v(), doc.origami.sigma_v());
        let text2 = print_surface(&back);
        prop_assert_eq!(text, text2);
    }

    // negating every cut value negates the integral residual
    #[test]
    fn residual_is_odd_under_value_negation(
        square_a in 1usize..=2, square_b in 1usize..=2,
        rise in 1u64..6, run in 1u64..6,
    ) {
        prop_assume!(num_integer::gcd(rise, run) == 1);
        let g = Group::z(1).unwrap();
        let make = |sign: i64| {
            let o = origami_stairs::fixtures::torus_row(2);
            let cuts = vec![
                Cut::left_edge(square_a, g.generator(0).scale(sign)),
                Cut::bottom_edge(square_b, g.generator(0).scale(2 * sign)),
            ];
            StaircaseSpec::new(o, g, cuts).unwrap()
        };
        let s = Slope::new(rise, run).unwrap();
        let plus = zero_integral_check(&make(1), s);
        let minus = zero_integral_check(&make(-1), s);
        let negated: Vec<_> = plus.residual.iter().map(|r| -r).collect();
        prop_assert_eq!(negated, minus.residual);
        prop_assert_eq!(plus.pass, minus.pass);
    }

    // running the same segment backwards negates the crossing sum
    #[test]
    fn reversed_trace_negates_the_sum(
        a in 1i128..1008, b in 1i128..1012,
        dx in 1i64..5, dy in 1i64..5,
        lam in 1i128..8,
    ) {
        let spec = origami_stairs::fixtures::two_row_staircase(1);
        let start = TracePoint::new(1, q(a, 1009), q(b, 1013));
        // prime cutoff denominator: no crossing lands exactly on it
        let stop = q(lam, 1) + q(1, 2027);
        let fwd = trace(&spec, start, (dx, dy), StopRule::Lambda(stop)).unwrap();
        let back = trace(&spec, fwd.end.clone(), (-dx, -dy), StopRule::Lambda(stop)).unwrap();
        prop_assert_eq!(fwd.total.neg(), back.total);
        prop_assert_eq!(fwd.crossings.len(), back.crossings.len());
    }
}
