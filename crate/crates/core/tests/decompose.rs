use gaugekit::arith::{imj_modulus, CyclicElem};
use gaugekit::expr::{localize, Attach, SpaceExpr};
use gaugekit::modmatrix::{AttachingMatrix, F2Matrix};
use gaugekit::tables::{StructureGroup, TableSet};
use gaugekit::{
    decompose, gauge_decompose_complex, gauge_decompose_n2, gauge_decompose_sphere_bundle,
    gauge_decompose_wall, skeleton_split_n2, suspension_split_wall, Decomposition, Error,
    GeneralComplex, ManifoldSpec, N2Type, Rule, SigmaFCase, SphereBundle, WallType,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use StructureGroup::{E6, E7, E8};

/// A group with no homotopy at all, so every classification hypothesis holds
/// and the bookkeeping can be exercised in every dimension.
fn contractible_tables() -> TableSet {
    TableSet::parse("E8, -, 1..200, 0, -, always, fixture\n", "fixture").unwrap()
}

fn wall(n: u32, chi: &[i64]) -> WallType {
    let d = imj_modulus(n).unwrap();
    WallType {
        n,
        rank: chi.len(),
        chi: chi.iter().map(|&v| CyclicElem::new(v, d)).collect(),
        almost_parallelizable: false,
    }
}

fn gauge_base(d: &Decomposition) -> &SpaceExpr {
    match &d.gauge_factors()[0] {
        SpaceExpr::Gauge { base, .. } => base,
        other => panic!("leading factor {other} is not a gauge atom"),
    }
}

fn check_bookkeeping(n: u32, chi: &[i64], away: &[u64], tables: &TableSet) {
    let m = wall(n, chi);
    let d = gauge_decompose_wall(&m, E8, away, tables).unwrap();
    let two_cell = matches!(gauge_base(&d), SpaceExpr::TwoCell { .. });
    assert_eq!(
        d.loop_count(n) + usize::from(two_cell),
        chi.len(),
        "n = {n}, chi = {chi:?}, away = {away:?}: {}",
        d.gauge
    );
    // every factor is accounted for
    assert_eq!(d.gauge_factors().len(), 1 + d.loop_count(n), "{}", d.gauge);
    let s = suspension_split_wall(&m).unwrap();
    assert_eq!(s.cell_count(), Some(chi.len() + 1), "{s}");
}

fn tuples(d: u64, m: usize) -> Vec<Vec<i64>> {
    (0..m).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| (0..d as i64).map(move |v| [t.clone(), vec![v]].concat()))
            .collect()
    })
}

#[test]
fn wall_factor_bookkeeping() {
    let tables = contractible_tables();
    let mut rng = StdRng::seed_from_u64(53);
    let mut checked = 0usize;
    for n in 3..=24u32 {
        let d = imj_modulus(n).unwrap();
        for m in 1..=4usize {
            let inputs = if d <= 24 {
                tuples(d, m)
            } else {
                let mut v: Vec<Vec<i64>> = (0..400)
                    .map(|_| (0..m).map(|_| rng.gen_range(0..d) as i64).collect())
                    .collect();
                v.push(vec![0; m]);
                v.push(vec![(d / 2) as i64; m]);
                v
            };
            for chi in inputs {
                let away: &[u64] = match checked % 4 {
                    0 => &[],
                    1 => &[2],
                    2 => &[3],
                    _ => &[2, 3, 5],
                };
                check_bookkeeping(n, &chi, away, &tables);
                checked += 1;
            }
        }
    }
    assert!(checked > 300_000, "{checked}");
}

#[test]
fn wall_two_is_unsupported() {
    let m = WallType {
        n: 2,
        rank: 1,
        chi: vec![CyclicElem::zero(1)],
        almost_parallelizable: false,
    };
    assert!(matches!(
        gauge_decompose_wall(&m, E8, &[], &contractible_tables()),
        Err(Error::Unsupported { .. })
    ));
}

#[test]
fn away_from_two_only_splits_the_two_cell() {
    let tables = contractible_tables();
    for n in [9u32, 10, 17, 18] {
        assert_eq!(imj_modulus(n).unwrap(), 2);
        for chi in [vec![1], vec![1, 0], vec![1, 1, 0], vec![0, 1, 1, 1]] {
            let m = wall(n, &chi);
            let integral = gauge_decompose_wall(&m, E8, &[], &tables).unwrap();
            let local = gauge_decompose_wall(&m, E8, &[2], &tables).unwrap();
            assert_eq!(integral.rule, Rule::WallGauge);
            assert_eq!(local.rule, Rule::WallLocalized);

            let base = gauge_base(&integral);
            assert_eq!(
                base,
                &SpaceExpr::two_cell(n, 2 * n, CyclicElem::new(1, 2)),
                "{}",
                integral.gauge
            );
            // the one rewrite: X_1 becomes S^n v S^2n, which moves S^n out as a loop factor
            let mut expected: Vec<SpaceExpr> = integral.gauge_factors()[1..].to_vec();
            expected.push(SpaceExpr::gauge(SpaceExpr::sphere(2 * n), E8, "alpha"));
            expected.push(SpaceExpr::loops(n, SpaceExpr::group(E8)));
            assert_eq!(local.gauge, SpaceExpr::product(expected));
            assert_eq!(local.loop_count(n), integral.loop_count(n) + 1);
            assert_eq!(localize(&integral.suspension, &[2]), local.suspension);
        }
    }
}

#[test]
fn wall_e8_dimension_sixteen() {
    let m = wall(8, &[120, 80]);
    let d = gauge_decompose_wall(&m, E8, &[], TableSet::builtin()).unwrap();
    assert_eq!(d.gauge.to_string(), "G_k(TC(8,16;40 mod 240)) x Omega^8 E8");
    let r = d.reduction.unwrap();
    assert_eq!(r.residues(), vec![vec![40], vec![0]]);
    assert!(r.log_certifies());

    let away = gauge_decompose_wall(&m, E8, &[2, 3], TableSet::builtin()).unwrap();
    assert_eq!(
        away.gauge.to_string(),
        "G_k(S^16) x Omega^8 E8 x Omega^8 E8"
    );
    let only_two = gauge_decompose_wall(&m, E8, &[2], TableSet::builtin()).unwrap();
    assert_eq!(only_two.gauge, d.gauge);
}

#[test]
fn almost_parallelizable_splits_away_from_fifteen() {
    let mut m = wall(8, &[7, 0, 0]);
    m.almost_parallelizable = true;
    let d = gauge_decompose_wall(&m, E8, &[3, 5], TableSet::builtin()).unwrap();
    assert_eq!(d.rule, Rule::AlmostParallelizable);
    assert_eq!(d.loop_count(8), 3);
    assert!(!d.theorem_used.is_empty());
    let plain = gauge_decompose_wall(&m, E8, &[3], TableSet::builtin()).unwrap();
    assert_eq!(plain.rule, Rule::WallGauge);
    assert_eq!(plain.loop_count(8), 2);
}

#[test]
fn skeleton_cell_count_and_rank_dependence() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in [6u32, 8] {
        for m in 1..=6usize {
            let mut by_rank = std::collections::HashMap::new();
            for _ in 0..200 {
                let bits = (0..m)
                    .map(|_| (0..m).map(|_| rng.gen_bool(0.4)).collect())
                    .collect();
                let c = F2Matrix::new(bits).unwrap();
                let spec = N2Type {
                    n,
                    rank: m,
                    c: c.clone(),
                    sigma_f_case: SigmaFCase::Null,
                };
                let s = skeleton_split_n2(&spec).unwrap();
                assert_eq!(s.cell_count(), Some(2 * m), "{s}");
                let prev = by_rank.entry(c.rank()).or_insert_with(|| s.clone());
                assert_eq!(*prev, s);
            }
        }
    }
}

fn n2(n: u32, m: usize, c_rank: usize, case: SigmaFCase) -> N2Type {
    let rows = (0..m)
        .map(|i| (0..m).map(|j| i == j && i < c_rank).collect())
        .collect();
    N2Type {
        n,
        rank: m,
        c: F2Matrix::new(rows).unwrap(),
        sigma_f_case: case,
    }
}

#[test]
fn n2_counts() {
    let t = TableSet::builtin();
    let d = gauge_decompose_n2(&n2(6, 3, 2, SigmaFCase::General), E7, &[], t).unwrap();
    assert_eq!(
        d.gauge.to_string(),
        "G_k(Z(6)) x Omega^3 Map*(CP^2, E7) x Omega^7 E7"
    );
    let d = gauge_decompose_n2(&n2(8, 4, 0, SigmaFCase::LowSphere), E8, &[], t).unwrap();
    assert_eq!(
        d.gauge.to_string(),
        "G_k(Z''(8)) x Omega^7 E8 x Omega^9 E8 x Omega^9 E8 x Omega^9 E8 x Omega^9 E8"
    );
    let d = gauge_decompose_n2(&n2(8, 2, 1, SigmaFCase::Null), E8, &[2], t).unwrap();
    assert_eq!(d.rule, Rule::N2AwayFromTwo);
    assert_eq!((d.loop_count(7), d.loop_count(9)), (2, 2));

    assert!(matches!(
        gauge_decompose_n2(&n2(6, 2, 0, SigmaFCase::HighSphere), E7, &[], t),
        Err(Error::CaseInapplicable { .. })
    ));
    assert!(matches!(
        gauge_decompose_n2(&n2(8, 3, 3, SigmaFCase::General), E8, &[], t),
        Err(Error::CaseInapplicable { .. })
    ));
    assert!(matches!(
        gauge_decompose_n2(&n2(8, 3, 1, SigmaFCase::Null), E7, &[], t),
        Err(Error::Unsupported { .. })
    ));
}

#[test]
fn sphere_bundle_cases() {
    let t = TableSet::builtin();
    let reducible = SphereBundle {
        q: 9,
        n: 6,
        has_section: false,
        j_xi_trivial: true,
        clutching_note: String::new(),
    };
    // pi_5(E8) = 0 and pi_8(E8) = 0
    let d = gauge_decompose_sphere_bundle(&reducible, E8, &[], t).unwrap();
    assert_eq!(d.rule, Rule::SphereBundleReducible);
    assert_eq!(
        d.gauge.to_string(),
        "G_alpha(S^15) x Omega^6 E8 x Omega^9 E8"
    );
    assert_eq!(d.equivalences[0].1.to_string(), "S^6 x S^9");

    let sectioned = SphereBundle {
        q: 3,
        n: 5,
        has_section: true,
        j_xi_trivial: false,
        clutching_note: "xi".into(),
    };
    let d = gauge_decompose_sphere_bundle(&sectioned, E7, &[], t).unwrap();
    assert_eq!(d.rule, Rule::SphereBundleSection);
    assert!(matches!(
        gauge_base(&d),
        SpaceExpr::TwoCell {
            bottom: 3,
            top: 8,
            attach: Attach::Named(_)
        }
    ));
    assert_eq!(d.loop_count(5), 1);

    let bare = SphereBundle {
        q: 3,
        n: 7,
        has_section: false,
        j_xi_trivial: true,
        clutching_note: String::new(),
    };
    assert!(matches!(
        gauge_decompose_sphere_bundle(&bare, E8, &[], t),
        Err(Error::Unsupported { .. })
    ));
    let big_n = SphereBundle {
        q: 3,
        n: 10,
        has_section: true,
        j_xi_trivial: false,
        clutching_note: String::new(),
    };
    assert!(matches!(
        gauge_decompose_sphere_bundle(&big_n, E6, &[], t),
        Err(Error::HypothesisNotMet {
            degree: Some(9),
            ..
        })
    ));
}

#[test]
fn complex_cases() {
    let t = TableSet::builtin();
    let b = AttachingMatrix::new(vec![2, 4], vec![vec![1, 2], vec![1, 0], vec![0, 2]]).unwrap();
    let z = GeneralComplex { n: 8, rank: 3, b };
    let d = gauge_decompose_complex(&z, E8, &[], t).unwrap();
    let t_cols = d.reduction.as_ref().unwrap().nonzero_column_count();
    assert_eq!(t_cols, 2);
    assert_eq!(d.gauge.to_string(), "G_k(X(8;2)) x Omega^8 E8");

    let zero = GeneralComplex {
        n: 8,
        rank: 2,
        b: AttachingMatrix::zeros(2, vec![2]).unwrap(),
    };
    let d = gauge_decompose_complex(&zero, E8, &[], t).unwrap();
    assert_eq!(d.gauge.to_string(), "G_k(S^16) x Omega^8 E8 x Omega^8 E8");

    let full = GeneralComplex {
        n: 8,
        rank: 1,
        b: AttachingMatrix::new(vec![24], vec![vec![3]]).unwrap(),
    };
    assert!(matches!(
        gauge_decompose_complex(&full, E8, &[], t),
        Err(Error::NoSplitting {
            nonzero: 1,
            rank: 1,
            ..
        })
    ));
}

fn arb_spec() -> impl Strategy<Value = ManifoldSpec> {
    prop_oneof![
        (
            0u32..30,
            0usize..4,
            proptest::collection::vec((-50i64..50, 0u64..300), 0..5),
            any::<bool>()
        )
            .prop_map(|(n, rank, chi, ap)| ManifoldSpec::Wall(WallType {
                n,
                rank,
                chi: chi
                    .into_iter()
                    .map(|(v, d)| CyclicElem::new(v, d))
                    .collect(),
                almost_parallelizable: ap,
            })),
        (0u32..20, 0u32..20, any::<bool>(), any::<bool>()).prop_map(|(q, n, s, j)| {
            ManifoldSpec::SphereBundle(SphereBundle {
                q,
                n,
                has_section: s,
                j_xi_trivial: j,
                clutching_note: String::new(),
            })
        }),
        (4u32..10, 0usize..5, 0usize..5, 0usize..5).prop_map(|(n, rank, size, case)| {
            let c = F2Matrix::identity(size);
            ManifoldSpec::N2(N2Type {
                n,
                rank,
                c,
                sigma_f_case: SigmaFCase::ALL[case],
            })
        }),
        (
            0u32..12,
            0usize..4,
            proptest::collection::vec(0i64..24, 1..9)
        )
            .prop_map(|(n, rank, vals)| {
                let moduli = vec![2, 24];
                let rows = vals
                    .chunks(2)
                    .map(|c| vec![c[0] % 2, *c.get(1).unwrap_or(&0)])
                    .collect();
                let b = AttachingMatrix::new(moduli, rows).unwrap();
                ManifoldSpec::Complex(GeneralComplex { n, rank, b })
            }),
    ]
}

fn arb_group() -> impl Strategy<Value = StructureGroup> {
    prop_oneof![
        Just(E6),
        Just(E7),
        Just(E8),
        (0u32..8).prop_map(StructureGroup::Sp),
        (0u32..24).prop_map(StructureGroup::Spin),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn dispatch_is_total(
        spec in arb_spec(),
        group in arb_group(),
        away in proptest::sample::subsequence(vec![1u64, 2, 3, 4, 5, 7], 0..=3),
    ) {
        if let Ok(d) = decompose(&spec, group, &away, TableSet::builtin()) {
            prop_assert!(!d.theorem_used.is_empty());
            let leading_gauge = matches!(d.gauge_factors()[0], SpaceExpr::Gauge { .. });
            prop_assert!(leading_gauge);
            prop_assert!(d.gauge.is_normalized());
            prop_assert!(d.suspension.is_normalized());
        }
    }
}
