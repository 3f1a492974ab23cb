use std::collections::BTreeSet;

use cgx_core::constructions::{h_star, Family, FamilySpec};
use cgx_core::geometry::{ConvexRealization, DEFAULT_RADIUS};
use cgx_core::search::{enumerate_extremal, ex_number, SearchOptions};
use cgx_core::{
    canonical_form, classify_pair, count_copies, first_violation, is_free, Cgh, ConfigSet,
    ConfigType, Symmetry, Triple,
};
use proptest::prelude::*;

fn triple_on(n: usize) -> impl Strategy<Value = Triple> {
    proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 3)
        .prop_map(|v| Triple::new(v[0], v[1], v[2]).unwrap())
}

fn pair_on() -> impl Strategy<Value = (usize, Triple, Triple)> {
    (4usize..=16).prop_flat_map(|n| (Just(n), triple_on(n), triple_on(n)))
}

fn family_on() -> impl Strategy<Value = Cgh> {
    (4usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(triple_on(n), 0..30)
            .prop_map(move |ts| Cgh::collect(n, ts).unwrap())
    })
}

fn config_set() -> impl Strategy<Value = ConfigSet> {
    (1u8..=255).prop_map(|m| {
        ConfigType::ALL
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect()
    })
}

proptest! {
    #[test]
    fn classification_is_symmetric_and_dihedral((n, s, t) in pair_on(), r in 0usize..16, reflect: bool) {
        prop_assume!(s != t);
        let c = classify_pair(n, &s, &t).unwrap();
        prop_assert_eq!(classify_pair(n, &t, &s).unwrap(), c);
        let g = Symmetry { rotation: r % n, reflect };
        prop_assert_eq!(classify_pair(n, &g.apply(n, &s), &g.apply(n, &t)).unwrap(), c);
        prop_assert_eq!(c.shared_vertices(), s.intersection_size(&t));
    }

    #[test]
    fn classification_matches_geometry_up_to_sixteen((n, s, t) in pair_on()) {
        prop_assume!(s != t);
        let rz = ConvexRealization::realize(n, DEFAULT_RADIUS).unwrap();
        prop_assert_eq!(classify_pair(n, &s, &t).unwrap(), rz.classify(&s, &t).unwrap());
    }

    #[test]
    fn canonical_form_is_orbit_invariant(h in family_on(), r in 0usize..10, reflect: bool) {
        let g = Symmetry { rotation: r % h.n(), reflect };
        let image = g.apply_cgh(&h);
        prop_assert_eq!(canonical_form(&image), canonical_form(&h));
        prop_assert!(canonical_form(&h).triples() <= h.triples());
    }

    #[test]
    fn json_round_trip(h in family_on()) {
        prop_assert_eq!(Cgh::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn census_accounts_for_every_pair(h in family_on()) {
        let census = count_copies(&h);
        let m = h.len();
        prop_assert_eq!(census.total(), m * m.saturating_sub(1) / 2);
    }

    #[test]
    fn violation_scan_agrees_with_census(h in family_on(), f in config_set()) {
        let census = count_copies(&h);
        let present = f.iter().any(|c| census.get(c) > 0);
        prop_assert_eq!(!is_free(&h, f), present);
        if let Some(v) = first_violation(&h, f) {
            prop_assert!(f.contains(v.kind));
            prop_assert_eq!(classify_pair(h.n(), &v.first, &v.second).unwrap(), v.kind);
        }
    }
}

#[test]
fn centroid_test_matches_geometry() {
    for n in 3..=12 {
        let rz = ConvexRealization::realize(n, DEFAULT_RADIUS).unwrap();
        for t in Triple::all(n) {
            assert_eq!(
                t.centroid_position(n).unwrap(),
                rz.centroid_inside(&t).unwrap(),
                "n = {n}, {t}"
            );
        }
    }
}

#[test]
fn forbidding_more_never_helps() {
    let opts = SearchOptions::sequential();
    for n in 5..=7 {
        let mut values = std::collections::BTreeMap::new();
        for c in ConfigType::ALL {
            values.insert(
                c,
                ex_number(n, ConfigSet::single(c), &opts).unwrap().best_size,
            );
        }
        for a in ConfigType::ALL {
            for b in ConfigType::ALL {
                let both = ex_number(n, ConfigSet::of(&[a, b]), &opts)
                    .unwrap()
                    .best_size;
                assert!(both <= values[&a].min(values[&b]), "n = {n}, {a},{b}");
            }
        }
    }
}

#[test]
fn extremal_numbers_grow_with_n() {
    let opts = SearchOptions::sequential();
    for c in ConfigType::ALL {
        let f = ConfigSet::single(c);
        let values: Vec<usize> = (4..=8)
            .map(|n| ex_number(n, f, &opts).unwrap().best_size)
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{c}: {values:?}");
    }
}

#[test]
fn forbidden_order_does_not_matter() {
    let opts = SearchOptions::sequential();
    let a = ex_number(8, "M1,S1".parse().unwrap(), &opts).unwrap();
    let b = ex_number(8, "s1, m1".parse().unwrap(), &opts).unwrap();
    assert_eq!(a.best_size, b.best_size);
    assert_eq!(a.witness, b.witness);
}

#[test]
fn witness_is_independent_of_thread_count() {
    for f in ["D1", "S2", "M2", "M1,S1,D1"] {
        let f: ConfigSet = f.parse().unwrap();
        let base = ex_number(8, f, &SearchOptions::sequential()).unwrap();
        for threads in [2, 3, 8] {
            let r = ex_number(8, f, &SearchOptions::sequential().with_threads(threads)).unwrap();
            assert_eq!(r.best_size, base.best_size, "{f}, {threads} threads");
            assert_eq!(r.witness, base.witness, "{f}, {threads} threads");
        }
    }
}

#[test]
fn even_extremal_families_are_the_side_bit_choices() {
    let forbidden = Family::HStar.forbidden();
    for n in [4, 6] {
        let e =
            enumerate_extremal(n, forbidden, 10_000, false, &SearchOptions::sequential()).unwrap();
        let found: BTreeSet<Cgh> = e.families.into_iter().collect();
        let built: BTreeSet<Cgh> = (0u32..1 << (n / 2))
            .map(|m| {
                let bits: Vec<bool> = (0..n / 2).map(|i| m >> i & 1 == 1).collect();
                h_star(n, Some(&bits)).unwrap()
            })
            .collect();
        assert_eq!(found, built, "n = {n}");
    }
}

#[test]
fn every_construction_survives_a_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("cgx-core-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for n in 5..=12 {
        for family in [Family::HPrime, Family::M3x, Family::S2Split, Family::D2Fan] {
            let h = FamilySpec::new(family, n).generate().unwrap();
            let path = dir.join(format!("{family}-{n}.json"));
            h.write(&path).unwrap();
            let back = Cgh::read(&path).unwrap();
            assert_eq!(back, h);
            assert!(is_free(&back, family.forbidden()));
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn odd_extremal_family_is_unique_at_nine() {
    let e = enumerate_extremal(
        9,
        Family::HStar.forbidden(),
        10,
        false,
        &SearchOptions::default(),
    )
    .unwrap();
    assert!(!e.truncated);
    assert_eq!(e.families, vec![h_star(9, None).unwrap()]);
}
