use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vknot::arithmetic::{f_table, g_table};
use vknot::construct::{
    add_anklets_to_index_detailed, adjust_writhe, realize_single_covering_detailed, realize_zero_covering_detailed,
    Construction,
};
use vknot::diagram::enumerate;
use vknot::invariants::{covering, index, indices, survives, writhe_polynomial};
use vknot::moves::{all_moves, apply_move, r2_sites, simplify, simplify_with_trace, MoveKind};
use vknot::{ChordId, GaussDiagram, Kind, LaurentPolynomial, Move};

fn random_diagram(kind: Kind, max_chords: usize) -> impl Strategy<Value = GaussDiagram> {
    (0..=max_chords, any::<u64>())
        .prop_map(move |(c, seed)| GaussDiagram::random(kind, c, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn any_kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Linear), Just(Kind::Circular)]
}

fn any_diagram(max_chords: usize) -> impl Strategy<Value = GaussDiagram> {
    any_kind().prop_flat_map(move |k| random_diagram(k, max_chords))
}

#[test]
fn serialize_round_trips_on_enumeration() {
    for kind in [Kind::Linear, Kind::Circular] {
        for g in enumerate(kind, 3) {
            let back: GaussDiagram = g.serialize().parse().unwrap();
            assert!(back.is_isomorphic(&g).unwrap());
            assert_eq!(back.serialize(), g.serialize());
        }
    }
}

#[test]
fn enumeration_classes_are_distinct() {
    for kind in [Kind::Linear, Kind::Circular] {
        let all = enumerate(kind, 3);
        let keys: BTreeSet<_> = all.iter().map(|g| g.canonical_key()).collect();
        assert_eq!(keys.len(), all.len());
    }
}

#[test]
fn r2_pairs_have_equal_index() {
    for kind in [Kind::Linear, Kind::Circular] {
        for g in enumerate(kind, 3) {
            for mv in r2_sites(&g) {
                let Move::R2Remove { first, second } = mv else {
                    unreachable!()
                };
                assert_eq!(index(&g, first).unwrap(), index(&g, second).unwrap(), "{g}");
            }
        }
    }
}

/// Gauss-Jordan elimination over the rationals on the full system
/// `Σ_{r | i} t(i) = rhs(r)`, ignoring its triangular structure.
fn eliminate(n: usize, rhs: impl Fn(usize) -> i128) -> Vec<i128> {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let size = n - 1;
    // Each row: coefficients then right-hand side, as (numerator, denominator).
    let mut m: Vec<Vec<(i128, i128)>> = (2..=n)
        .map(|r| {
            let mut row: Vec<(i128, i128)> = (2..=n).map(|i| (i128::from(i % r == 0), 1)).collect();
            row.push((rhs(r), 1));
            row
        })
        .collect();
    let norm = |(a, b): (i128, i128)| {
        let g = gcd(a, b).max(1) * b.signum();
        (a / g, b / g)
    };
    let sub = |(a, b): (i128, i128), (c, e): (i128, i128)| norm((a * e - c * b, b * e));
    let mul = |(a, b): (i128, i128), (c, e): (i128, i128)| norm((a * c, b * e));
    let div = |(a, b): (i128, i128), (c, e): (i128, i128)| norm((a * e, b * c));
    for col in 0..size {
        let pivot = (col..size).find(|&r| m[r][col].0 != 0).expect("nonsingular");
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x = div(*x, p);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col].0 != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub(*x, mul(factor, y));
                }
            }
        }
    }
    m.iter()
        .map(|row| {
            let (a, b) = row[size];
            assert_eq!(b, 1, "solution is integral");
            a
        })
        .collect()
}

#[test]
fn tables_match_elimination() {
    for n in 2..=50usize {
        let f: Vec<i128> = f_table(n as i64).unwrap().iter().map(|(_, v)| v.into()).collect();
        assert_eq!(f, eliminate(n, |_| -1), "f_{n}");
        let g: Vec<i128> = g_table(n as i64).unwrap().iter().map(|(_, v)| v.into()).collect();
        assert_eq!(g, eliminate(n, |r| i128::from(r == n)), "g_{n}");
    }
}

fn band_sign_sums_vanish(c: &Construction, r: i64) -> bool {
    let ind = indices(&c.diagram);
    c.bands.iter().all(|band| {
        band.members
            .iter()
            .filter(|m| survives(ind[&m.chord], r as u64))
            .map(|m| m.sign.value())
            .sum::<i64>()
            == 0
    })
}

fn anklets_have_unit_index(c: &Construction) -> bool {
    let ind = indices(&c.diagram);
    c.anklets.iter().all(|a| ind[a].abs() == 1)
}

#[test]
fn band_sizes_follow_tables() {
    let h: GaussDiagram = "kind linear\nseq T1 T2 H1 H2\nsign 1 +\nsign 2 -\n".parse().unwrap();
    for n in 2..=12 {
        let z = realize_zero_covering_detailed(&h, n).unwrap();
        let s = realize_single_covering_detailed(&h, n).unwrap();
        for band in &z.bands {
            assert_eq!(band.members.len() as u64, 1 + f_table(n).unwrap().abs_sum());
        }
        for band in &s.bands {
            assert_eq!(band.members.len() as u64, g_table(n).unwrap().abs_sum());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn endpoint_signs_sum_to_zero(g in any_diagram(6)) {
        prop_assert_eq!((0..g.len()).map(|p| g.endpoint_sign(p)).sum::<i64>(), 0);
    }

    #[test]
    fn rotation_and_relabeling_give_isomorphic_diagrams(g in random_diagram(Kind::Circular, 5), k in 0usize..12) {
        let h = g.rotated(k).unwrap().relabeled();
        prop_assert!(g.is_isomorphic(&h).unwrap());
        prop_assert!(h.is_isomorphic(&g).unwrap());
    }

    #[test]
    fn juxtapose_is_associative_with_unit(
        a in random_diagram(Kind::Linear, 3),
        b in random_diagram(Kind::Linear, 3),
        c in random_diagram(Kind::Linear, 3),
    ) {
        let left = a.juxtapose(&b).unwrap().juxtapose(&c).unwrap();
        let right = a.juxtapose(&b.juxtapose(&c).unwrap()).unwrap();
        prop_assert!(left.is_isomorphic(&right).unwrap());
        let e = GaussDiagram::empty(Kind::Linear);
        prop_assert!(e.juxtapose(&a).unwrap().is_isomorphic(&a).unwrap());
        prop_assert!(a.juxtapose(&e).unwrap().is_isomorphic(&a).unwrap());
    }

    #[test]
    fn coverings_never_add_chords(g in any_diagram(6), r in 0i64..9) {
        prop_assert!(covering(&g, r).unwrap().chord_count() <= g.chord_count());
        prop_assert_eq!(covering(&g, 1).unwrap(), g.clone());
        let max = indices(&g).values().map(|i| i.abs()).max().unwrap_or(0);
        prop_assert_eq!(covering(&g, max + 1 + r).unwrap(), covering(&g, 0).unwrap());
    }

    #[test]
    fn writhe_polynomial_is_realizable(g in any_diagram(8)) {
        let w = writhe_polynomial(&g);
        prop_assert_eq!(w.eval_at_one(), 0);
        prop_assert_eq!(w.derivative_at_one(), 0);
    }

    #[test]
    fn simplify_is_idempotent_and_shrinks(g in any_diagram(6)) {
        let (s, trace) = simplify_with_trace(&g);
        prop_assert_eq!(simplify(&s), s.clone());
        prop_assert!(s.chord_count() <= g.chord_count());
        prop_assert!(trace.len() <= g.chord_count());
    }

    /// R3 is left out: greedy R1/R2 simplification cannot undo it.
    #[test]
    fn single_moves_keep_simplified_coverings(g in any_diagram(4), pick in any::<prop::sample::Index>()) {
        let moves: Vec<Move> = all_moves(&g)
            .into_iter()
            .filter(|m| m.kind() != MoveKind::R3)
            .collect();
        prop_assume!(!moves.is_empty()); let mv = &moves[pick.index(moves.len())];
        let h = apply_move(&g, mv).unwrap();
        for r in 0..=6 {
            let a = simplify(&covering(&g, r).unwrap());
            let b = simplify(&covering(&h, r).unwrap());
            prop_assert!(a.is_isomorphic(&b).unwrap(), "{} after {}: r = {}", g, mv, r);
        }
    }

    #[test]
    fn anklets_touch_only_their_targets(
        g in random_diagram(Kind::Linear, 4),
        wanted in prop::collection::vec(-4i64..=4, 4),
    ) {
        let ids: Vec<ChordId> = g.chords().map(|c| c.id).collect();
        let targets: BTreeMap<ChordId, i64> = ids.iter().zip(&wanted).skip(1).map(|(&id, &w)| (id, w)).collect();
        let (h, anklets) = add_anklets_to_index_detailed(&g, &targets).unwrap();
        let before = indices(&g);
        let after = indices(&h);
        for id in &ids {
            let want = targets.get(id).copied().unwrap_or(before[id]);
            prop_assert_eq!(after[id], want);
        }
        for a in anklets {
            prop_assert_eq!(after[&a].abs(), 1);
        }
    }

    #[test]
    fn zero_covering_construction(h in random_diagram(Kind::Linear, 3), n in 1i64..=9) {
        let c = realize_zero_covering_detailed(&h, n).unwrap();
        prop_assert!(anklets_have_unit_index(&c));
        prop_assert!(covering(&c.diagram, 0).unwrap().is_isomorphic(&h).unwrap());
        for r in n + 1..=n + 5 {
            prop_assert!(covering(&c.diagram, r).unwrap().is_isomorphic(&h).unwrap());
        }
        for r in 2..=n {
            prop_assert!(band_sign_sums_vanish(&c, r));
            prop_assert!(simplify(&covering(&c.diagram, r).unwrap()).is_empty());
        }
    }

    #[test]
    fn single_covering_construction(h in random_diagram(Kind::Linear, 3), n in 2i64..=9) {
        let c = realize_single_covering_detailed(&h, n).unwrap();
        prop_assert!(anklets_have_unit_index(&c));
        prop_assert!(covering(&c.diagram, n).unwrap().is_isomorphic(&h).unwrap());
        prop_assert!(covering(&c.diagram, 0).unwrap().is_empty());
        for r in 2..n {
            prop_assert!(band_sign_sums_vanish(&c, r));
            prop_assert!(simplify(&covering(&c.diagram, r).unwrap()).is_empty());
        }
    }

    #[test]
    fn adjust_writhe_is_exact(
        h in random_diagram(Kind::Linear, 3),
        coeffs in prop::collection::vec((-6i64..=6, -3i64..=3), 0..5),
    ) {
        let mut f = LaurentPolynomial::zero();
        for (n, a) in coeffs.into_iter().filter(|&(n, _)| n != 0 && n != 1) {
            f = &f + &LaurentPolynomial::from_terms([(n, a), (1, -n * a), (0, (n - 1) * a)]);
        }
        let g = adjust_writhe(&h, &f).unwrap();
        prop_assert_eq!(writhe_polynomial(&g), f);
    }
}
