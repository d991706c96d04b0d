use gaugekit::tables::{FGAbelianGroup, Space, StructureGroup, TableSet};
use gaugekit::Error;
use proptest::prelude::*;

use StructureGroup::{Sp, Spin, E6, E7, E8};

fn z() -> FGAbelianGroup {
    FGAbelianGroup::integers()
}

fn zmod(orders: &[u64]) -> FGAbelianGroup {
    FGAbelianGroup::new(0, orders)
}

fn pi(space: impl Into<Space>, i: i64) -> FGAbelianGroup {
    TableSet::builtin().pi(space, i).unwrap().group
}

#[test]
fn quoted_exceptional_groups() {
    assert_eq!(pi(E6, 9), z());
    assert_eq!(pi(E7, 11), z());
    assert_eq!(pi(E8, 15), z());
    let t = TableSet::builtin();
    assert!(t.vanishing_range(E6, 4, 8).unwrap());
    assert!(t.vanishing_range(E7, 4, 10).unwrap());
    assert!(t.vanishing_range(E8, 4, 14).unwrap());
    assert!(!t.vanishing_range(E7, 4, 11).unwrap());
}

#[test]
fn quoted_sphere_groups() {
    assert_eq!(pi(Space::Sphere(5), 9), zmod(&[2]));
    assert_eq!(pi(Space::Sphere(6), 11), z());
    assert_eq!(pi(Space::Sphere(8), 15), FGAbelianGroup::new(1, &[120]));
    assert_eq!(pi(Space::SphereSpectrum, 4), FGAbelianGroup::trivial());
    assert_eq!(pi(Space::SphereSpectrum, 5), FGAbelianGroup::trivial());
    assert_eq!(pi(Space::SphereSpectrum, 7), zmod(&[240]));
    assert_eq!(pi(Space::Sphere(8), 12), FGAbelianGroup::trivial());
    assert_eq!(pi(Space::Sphere(6), 12), zmod(&[2]));
    assert_eq!(pi(Space::Sphere(10), 16), zmod(&[2]));
    assert_eq!(pi(Space::Sphere(7), 15), zmod(&[2, 2, 2]));
    assert_eq!(pi(Space::Sphere(9), 15), zmod(&[2]));
    assert_eq!(pi(Space::Sphere(8), 16), zmod(&[2, 2, 2, 2]));
    for k in 9..=40 {
        assert_eq!(pi(Space::Sphere(k), k as i64 + 7), zmod(&[240]), "k = {k}");
    }
    assert!(matches!(
        TableSet::builtin().pi(Space::Sphere(7), 14),
        Err(Error::NotTabulated { .. })
    ));
}

#[test]
fn quoted_suspended_cp2_groups() {
    assert_eq!(pi(Space::SuspCP2(4), 12), zmod(&[2]));
    assert_eq!(pi(Space::SuspCP2(9), 12), FGAbelianGroup::trivial());
    assert_eq!(pi(Space::SuspCP2(6), 15), FGAbelianGroup::new(1, &[120]));
    assert_eq!(pi(Space::SuspCP2(13), 16), FGAbelianGroup::trivial());
}

#[test]
fn undetermined_group_yields_candidates() {
    let t = TableSet::builtin();
    let err = t.pi(Space::SuspCP2(6), 16).unwrap_err();
    assert!(matches!(err, Error::Undetermined { ref candidates, .. } if candidates.len() == 4));
    let c = t.pi_candidates(Space::SuspCP2(6), 16).unwrap();
    assert_eq!(
        c,
        vec![
            zmod(&[2, 4]),
            zmod(&[2, 2, 2]),
            zmod(&[2, 2, 4]),
            zmod(&[2, 2, 2, 2])
        ]
    );
    assert_eq!(t.pi_candidates(E7, 11).unwrap(), vec![z()]);
}

#[test]
fn symplectic_bott_table() {
    let row = [
        FGAbelianGroup::trivial(),
        FGAbelianGroup::trivial(),
        FGAbelianGroup::trivial(),
        z(),
        zmod(&[2]),
        zmod(&[2]),
        FGAbelianGroup::trivial(),
        z(),
    ];
    for r in 1..=8u32 {
        for q in 0..=4 * r as i64 + 1 {
            assert_eq!(pi(Sp(r), q), row[(q % 8) as usize], "pi_{q}(Sp({r}))");
        }
        assert!(matches!(
            TableSet::builtin().pi(Sp(r), 4 * r as i64 + 2),
            Err(Error::NotTabulated { .. })
        ));
    }
}

#[test]
fn spin_bott_table() {
    let row = [
        zmod(&[2]),
        zmod(&[2]),
        FGAbelianGroup::trivial(),
        z(),
        FGAbelianGroup::trivial(),
        FGAbelianGroup::trivial(),
        FGAbelianGroup::trivial(),
        z(),
    ];
    for r in 4..=30u32 {
        for q in 2..=r as i64 - 2 {
            assert_eq!(pi(Spin(r), q), row[(q % 8) as usize], "pi_{q}(Spin({r}))");
        }
        assert!(TableSet::builtin().pi(Spin(r), r as i64 - 1).is_err());
    }
    assert!(TableSet::builtin().pi(Spin(10), 1).is_err());
}

#[test]
fn bundle_classification_examples() {
    let t = TableSet::builtin();
    for (m, g) in [(10, E6), (12, E7), (16, E8)] {
        assert_eq!(
            t.classify_bundles(m, 4, g, &[]).unwrap().group,
            z(),
            "({m}, {g})"
        );
    }
    // the range 4..7 vanishes but pi_11(E6) is not tabulated
    assert_eq!(
        t.classify_bundles(12, 4, E6, &[]).unwrap_err(),
        Error::NotTabulated {
            space: "E6".into(),
            degree: 11
        }
    );
    // pi_9(E6) = Z sits inside the range 4..11
    let err = t.classify_bundles(16, 4, E6, &[]).unwrap_err();
    assert!(
        matches!(
            err,
            Error::HypothesisNotMet {
                degree: Some(9),
                ..
            }
        ),
        "{err}"
    );
}

#[test]
fn classification_localized_away_from_two() {
    let t = TableSet::builtin();
    let err = t.classify_bundles(20, 9, Spin(21), &[]).unwrap_err();
    assert!(matches!(
        err,
        Error::HypothesisNotMet {
            degree: Some(9),
            ..
        }
    ));
    assert_eq!(
        t.classify_bundles(20, 9, Spin(21), &[2]).unwrap().group,
        z()
    );
    assert_eq!(t.classify_bundles(20, 9, Sp(5), &[]).unwrap().group, z());
}

#[test]
fn every_answer_has_a_source() {
    let t = TableSet::builtin();
    for g in [E6, E7, E8] {
        for i in 4..=15 {
            if let Ok(r) = t.pi(g, i) {
                assert!(r.source.contains(".tbl:"), "{}", r.source);
            }
        }
    }
}

#[test]
fn directory_tables_replace_builtin() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("extra.tbl"),
        "# extension\nE6, -, 10..11, 0, -, always, test fixture\n",
    )
    .unwrap();
    std::fs::write(dir.path().join("ignored.txt"), "not a table").unwrap();
    let t = TableSet::load_dir(dir.path()).unwrap();
    assert_eq!(t.entries().len(), 1);
    assert!(t.pi(E6, 11).unwrap().source.contains("test fixture"));
    assert!(matches!(t.pi(E6, 9), Err(Error::NotTabulated { .. })));

    let mut merged = TableSet::builtin().clone();
    merged.extend(t);
    assert_eq!(
        merged.classify_bundles(12, 4, E6, &[]).unwrap().group,
        FGAbelianGroup::trivial()
    );
}

#[test]
fn malformed_directory_table_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.tbl"), "E6, -, 9, one, -, always, x\n").unwrap();
    assert!(matches!(
        TableSet::load_dir(dir.path()),
        Err(Error::TableSyntax { line: 1, .. })
    ));
}

proptest! {
    #[test]
    fn canonical_form_is_order_independent(free in 0u32..3, mut orders in proptest::collection::vec(1u64..64, 0..6)) {
        let a = FGAbelianGroup::new(free, &orders);
        orders.reverse();
        let b = FGAbelianGroup::new(free, &orders);
        prop_assert_eq!(&a, &b);
        // idempotent
        prop_assert_eq!(FGAbelianGroup::new(a.free_rank(), a.torsion()), a.clone());
        // divisibility chain, every factor >= 2
        prop_assert!(a.torsion().iter().all(|&t| t >= 2));
        prop_assert!(a.torsion().windows(2).all(|w| w[1] % w[0] == 0));
        // group order is preserved
        let before: u64 = orders.iter().product();
        let after: u64 = a.torsion().iter().product();
        prop_assert_eq!(before, after);
    }
}
