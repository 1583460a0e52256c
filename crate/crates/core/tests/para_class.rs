use num_traits::{One, Signed, ToPrimitive};
use paraclass_core::cyclotomic::{cyclo23_witness, cyclo_res_nilpotent};
use paraclass_core::metabelian::{make_group, quad_unit_poly};
use paraclass_core::para_class::{
    bounded_family, classify_para, realize_para_group, s_class_group, Comparison, Provenance,
    FAMILY_BOUND,
};
use paraclass_core::quad_order::fundamental_unit;
use paraclass_core::{Element, Error, Ideal, Int, Ring};

fn to_i128(x: &Int) -> i128 {
    x.to_i128().unwrap()
}

/// Principal iff the box holds an element of norm `±N(J)`; plain `i128`.
fn principal_by_search(j: &Ideal, tr: i128, nm: i128, bound: i128) -> bool {
    let target = to_i128(&j.norm());
    let b: Vec<(i128, i128)> = j
        .basis()
        .iter()
        .map(|e| (to_i128(&e.x), to_i128(&e.y)))
        .collect();
    for u in -bound..=bound {
        for v in -bound..=bound {
            let (x, y) = (u * b[0].0 + v * b[1].0, u * b[0].1 + v * b[1].1);
            if (x, y) != (0, 0) && (x * x + x * y * tr + y * y * nm).abs() == target {
                return true;
            }
        }
    }
    false
}

/// S-fractional ideals of norm at most `bound`, up to equivalence.
fn brute_force_classes(d: i64, bound: i64) -> usize {
    let ring = Ring::maximal_order(&Int::from(d)).unwrap();
    let theta = Element::theta();
    let tr = to_i128(&ring.trace(&theta));
    let nm = to_i128(&ring.norm_form(&theta));
    let eps = fundamental_unit(&Int::from(d)).unwrap();
    let aug = Ideal::principal(&ring, &eps.sub(&Element::one())).unwrap();
    let mut ideals: Vec<Ideal> = Vec::new();
    for a in 1..=bound {
        for b in 0..a {
            for c in 1..=bound {
                let Ok(j) = Ideal::from_generators(
                    &ring,
                    &[Element::from_i64(a * c, 0), Element::from_i64(b * c, c)],
                ) else {
                    continue;
                };
                if j.norm() <= Int::from(bound)
                    && j.add(&aug).unwrap().norm().is_one()
                    && !ideals.contains(&j)
                {
                    ideals.push(j);
                }
            }
        }
    }
    let mut reps: Vec<Ideal> = Vec::new();
    for j in ideals {
        let known = reps
            .iter()
            .any(|k| principal_by_search(&j.mul(&k.conj()).unwrap(), tr, nm, 120));
        if !known {
            reps.push(j);
        }
    }
    reps.len()
}

#[test]
fn classification_matches_enumeration() {
    for (d, expected) in [(2i64, 1u64), (10, 2), (82, 4)] {
        let c = classify_para(&make_group(&format!("quad:{d}")).unwrap()).unwrap();
        assert_eq!(c.count, expected, "d = {d}");
        assert_eq!(brute_force_classes(d, 30), expected as usize, "d = {d}");
        assert_eq!(c.provenance, Provenance::Computed);
        assert_eq!(c.representatives.len() as u64, c.count);
    }
}

#[test]
fn s_class_readings_coincide() {
    for d in [2i64, 3, 10, 15, 26, 35, 82, 85] {
        let ring = Ring::maximal_order(&Int::from(d)).unwrap();
        let r = s_class_group(&ring).unwrap();
        assert_eq!(r.s_classes, r.all_principal_reading, "d = {d}");
        let full = r.full_classes.torsion_order();
        match r.comparison {
            Comparison::Isomorphic => assert_eq!(r.count(), full),
            Comparison::ProperSubgroup => assert!(r.count() < full),
        }
        assert_eq!(r.representatives.len(), r.count().to_usize().unwrap());
    }
}

#[test]
fn realizations_commute_and_have_the_right_index() {
    for d in [10i64, 82] {
        let c = classify_para(&make_group(&format!("quad:{d}")).unwrap()).unwrap();
        for (j, real) in &c.representatives {
            assert!(real.commutes(), "d = {d}, J = {j:?}");
            assert_eq!(real.inclusion.det().abs(), j.norm());
        }
    }
    // Z[t]/(t^2 - 6t - 1), theta = 3 + √10
    let ring = Ring::make_ring(&quad_unit_poly(&Int::from(10)).unwrap()).unwrap();
    let j = Ideal::from_generators(&ring, &[Element::from_i64(3, 0), Element::from_i64(-2, 1)])
        .unwrap();
    let basis = [Element::from_i64(3, 0), Element::from_i64(-2, 1)];
    let r = realize_para_group(&j, Some(&basis)).unwrap();
    let rows = |m: &paraclass_core::Matrix| {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    assert_eq!(rows(&r.action_j), vec![vec![2, 3], vec![3, 4]]);
    assert_eq!(rows(&r.action_a), vec![vec![0, 1], vec![1, 6]]);
    assert_eq!(rows(&r.inclusion), vec![vec![3, -2], vec![0, 1]]);
}

#[test]
fn scope_and_provenance() {
    assert_eq!(
        classify_para(&make_group("z_inv_n:3").unwrap())
            .unwrap()
            .count,
        1
    );
    assert_eq!(
        classify_para(&make_group("lamplighter").unwrap())
            .unwrap()
            .count,
        1
    );
    assert_eq!(
        classify_para(&make_group("unipotent2").unwrap())
            .unwrap()
            .count,
        1
    );
    let zc2 = classify_para(&make_group("zc2").unwrap()).unwrap();
    assert_eq!(zc2.count, 1);
    let fam = zc2.family.unwrap();
    assert_eq!(fam.bound, FAMILY_BOUND);
    assert_eq!(fam.s_fractional, fam.s_fractional_principal);
    assert!(fam.non_fractional_non_principal.is_some());
    let c9 = classify_para(&make_group("cyclo:9").unwrap()).unwrap();
    assert_eq!((c9.count, c9.provenance), (1, Provenance::PaperSourced));
    assert!(matches!(
        classify_para(&make_group("wreath_zz").unwrap()),
        Err(Error::OutOfScope(_))
    ));
    assert!(matches!(
        classify_para(&make_group("bs12").unwrap()),
        Err(Error::OutOfScope(_))
    ));
    assert!(matches!(
        classify_para(&make_group("cyclo:6").unwrap()),
        Err(Error::OutOfScope(_))
    ));
    let ring = Ring::maximal_order(&Int::from(2)).unwrap();
    assert_eq!(bounded_family(&ring, 3).unwrap().bound, 3);
}

#[test]
fn cyclotomic_reports() {
    let r = cyclo_res_nilpotent(23).unwrap();
    assert!(r.residually_nilpotent && r.prime_power);
    assert_eq!(r.pid_known, Some(false));
    let w = cyclo23_witness().unwrap();
    assert_eq!(w.form_class_number, 3);
    assert!(!w.principal && w.s_fractional && w.unit_ideal_principal);
    assert!(w.ideal.pow(3).unwrap().is_principal().unwrap().is_some());
    let r = cyclo_res_nilpotent(12).unwrap();
    assert!(!r.residually_nilpotent && r.phi_at_one.abs().is_one());
}
