use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use paraclass_core::lattice;
use paraclass_core::laurent_poly::{cyclotomic_poly, finite_quotient};
use paraclass_core::scalar::{factorize, is_prime_power};
use paraclass_core::{Element, Ideal, Int, Poly, Ring};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    (-3i64..3, prop::collection::vec(-6i64..6, 0..5)).prop_map(|(lo, c)| Poly::from_i64(lo, &c))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ring() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec![2i64, 3, 5, 10, 13, 15, 82, -1, -5, -23])
        .prop_map(|d| Ring::maximal_order(&Int::from(d)).unwrap())
}

fn element() -> impl Strategy<Value = Element> {
    (-20i64..20, -20i64..20).prop_map(|(x, y)| Element::from_i64(x, y))
}

fn ideal_gens() -> impl Strategy<Value = (i64, i64, i64)> {
    (1i64..15, 0i64..15, 1i64..4)
}

fn make_ideal(ring: &Ring, (a, b, c): (i64, i64, i64)) -> Ideal {
    Ideal::from_generators(ring, &[Element::from_i64(a, 0), Element::from_i64(b, c)]).unwrap()
}

proptest! {
    #[test]
    fn poly_ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn eval_is_a_homomorphism(f in poly(), g in poly(), p in 1i64..6, q in 1i64..6, neg in any::<bool>()) {
        let x = Ratio::new(Int::from(if neg { -p } else { p }), Int::from(q));
        let fx = f.eval(&x).unwrap();
        let gx = g.eval(&x).unwrap();
        prop_assert_eq!((&f * &g).eval(&x).unwrap(), &fx * &gx);
        prop_assert_eq!((&f + &g).eval(&x).unwrap(), fx + gx);
    }

    #[test]
    fn div_exact_inverts_mul(f in nonzero_poly(), g in nonzero_poly()) {
        prop_assert_eq!((&f * &g).div_exact(&g), Some(f.clone()));
    }

    #[test]
    fn finite_quotient_depends_on_the_ideal(f in nonzero_poly(), g in nonzero_poly(), k in -3i64..3, j in -2i64..2) {
        let base = finite_quotient(&f, &g);
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        prop_assert_eq!(finite_quotient(&g, &f).unwrap(), base.clone());
        let g2 = &g + &f.shift(j).scale(&Int::from(k));
        if !g2.is_zero() {
            if let Ok(q) = finite_quotient(&f, &g2) {
                prop_assert_eq!(q, base.clone());
            }
        }
        prop_assert_eq!(finite_quotient(&f.shift(j), &g.scale(&Int::from(-1))).unwrap(), base);
    }

    #[test]
    fn norm_is_multiplicative(r in ring(), u in element(), v in element()) {
        let uv = r.mul(&u, &v);
        prop_assert_eq!(r.norm_form(&uv), r.norm_form(&u) * r.norm_form(&v));
        prop_assert_eq!(r.mul(&u, &r.conj(&u)), Element::integer(r.norm_form(&u)));
    }

    #[test]
    fn ideal_norms_multiply(r in ring(), a in ideal_gens(), b in ideal_gens()) {
        let (j, k) = (make_ideal(&r, a), make_ideal(&r, b));
        prop_assert_eq!(j.mul(&k).unwrap().norm(), j.norm() * k.norm());
        let jj = j.mul(&j.conj()).unwrap();
        prop_assert_eq!(jj, Ideal::principal(&r, &Element::integer(j.norm())).unwrap());
    }

    #[test]
    fn ideal_equivalence_is_an_equivalence(r in ring(), a in ideal_gens(), b in ideal_gens(), g in element()) {
        prop_assume!(!g.is_zero());
        let (j, k) = (make_ideal(&r, a), make_ideal(&r, b));
        prop_assert!(j.equivalent(&j).unwrap());
        prop_assert_eq!(j.equivalent(&k).unwrap(), k.equivalent(&j).unwrap());
        let jg = j.mul(&Ideal::principal(&r, &g).unwrap()).unwrap();
        prop_assert!(jg.equivalent(&j).unwrap());
        prop_assert_eq!(jg.equivalent(&k).unwrap(), j.equivalent(&k).unwrap());
    }

    #[test]
    fn hnf_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-9i64..9, 3), 1..5)) {
        let rows: Vec<Vec<Int>> = rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect();
        let h = lattice::hnf(&rows, 3);
        prop_assert_eq!(lattice::hnf(&h, 3), h.clone());
        prop_assert!(lattice::same_lattice(&rows, &h, 3));
        for r in &rows {
            prop_assert!(lattice::contains(&h, r));
        }
    }
}

#[test]
fn cyclotomic_product_identity() {
    for n in 1..=40u64 {
        let prod = (1..=n)
            .filter(|d| n % d == 0)
            .fold(Poly::one(), |acc, d| &acc * &cyclotomic_poly(d).unwrap());
        let mut expected = vec![Int::zero(); n as usize + 1];
        expected[0] = Int::from(-1);
        expected[n as usize] = Int::one();
        assert_eq!(prod, Poly::new(0, expected), "n = {n}");
    }
}

#[test]
fn cyclotomic_value_at_one() {
    for n in 2..=100u64 {
        let v = cyclotomic_poly::<Int>(n).unwrap().eval_at_one().abs();
        let fs = factorize(&(n as i64));
        let expected = if fs.len() == 1 {
            Int::from(fs[0].0)
        } else {
            Int::one()
        };
        assert_eq!(v, expected, "n = {n}");
        assert_eq!(v.is_one(), !is_prime_power(&(n as i64)), "n = {n}");
    }
}
