//! S-fractional ideals, the S-class group and the count of isomorphism
//! classes of groups para-equivalent to `Z ⋉ A`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::class_group::compute_class_group;
use crate::error::{Error, Result};
use crate::ideal_lattice::primes_above;
use crate::lattice;
use crate::metabelian::{is_residually_nilpotent, ModuleSpec, QSpec, SplitMetabelianGroup};
use crate::quad_order::{fundamental_unit, is_laurent_domain, Basis, RingKind};
use crate::scalar::{is_prime, is_prime_power};
use crate::{Element, GroupStructure, Ideal, Int, Matrix, Ring};

/// The element playing the role of `t̄` and, for rings that are not a
/// Laurent quotient `Z[t,t^-1]/(f)`, a note that the computation is outside
/// the classification's scope.
fn coordinate_unit(ring: &Ring) -> Result<(Element, Option<String>)> {
    match ring.basis() {
        Basis::Generator => Ok((Element::theta(), None)),
        Basis::Sqrt(d) | Basis::Omega(d) => {
            if ring.kind() != RingKind::RealDomain {
                return Err(Error::OutOfScope(format!(
                    "Q(√{d}) has no unit of infinite order"
                )));
            }
            let v = is_laurent_domain(d)?;
            let note = (!v.laurent).then(|| {
                format!(
                    "outside paper scope: Z[ε] has index {} in the maximal order",
                    v.index
                )
            });
            Ok((fundamental_unit(d)?, note))
        }
    }
}

/// The ideal generated by `t̄ - 1`.
pub fn aug_image(ring: &Ring) -> Result<Ideal> {
    let (tbar, _) = coordinate_unit(ring)?;
    let g = tbar.sub(&Element::one());
    if g.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ideal::principal(ring, &g)
}

/// `J + (t̄ - 1) = R`, i.e. `J` meets `1 + (t̄ - 1)R`.
pub fn is_s_fractional(j: &Ideal) -> Result<bool> {
    let aug = aug_image(j.ring())?;
    Ok(j.add(&aug)? == Ideal::unit(j.ring()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Isomorphic,
    ProperSubgroup,
}

#[derive(Clone, Debug)]
pub struct SClassReport {
    pub ring: Ring,
    pub aug_gen: Element,
    /// `|R / (t̄ - 1)|`.
    pub aug_index: Int,
    /// S-fractional ideals modulo principal ideals with S-fractional generator.
    pub s_classes: GroupStructure,
    /// The same quotient taken by all principal ideals, read inside `Cl(D)`.
    pub all_principal_reading: GroupStructure,
    pub full_classes: GroupStructure,
    pub comparison: Comparison,
    /// One S-fractional ideal per S-class, the trivial class first.
    pub representatives: Vec<Ideal>,
    pub scope_note: Option<String>,
}

impl SClassReport {
    pub fn count(&self) -> Int {
        self.s_classes.torsion_order()
    }
}

/// Largest rational prime searched for S-fractional class representatives.
pub const REPRESENTATIVE_PRIME_BOUND: u32 = 2000;

pub fn s_class_group(ring: &Ring) -> Result<SClassReport> {
    let (tbar, scope_note) = coordinate_unit(ring)?;
    let aug_gen = tbar.sub(&Element::one());
    let aug_index = ring.norm(&aug_gen)?.abs();
    let cl = compute_class_group(ring)?;
    let factors = cl.structure.invariant_factors.clone();

    // one S-fractional ideal per class, from primes coprime to |R/(t̄-1)|
    let mut reps: BTreeMap<Vec<Int>, Ideal> = BTreeMap::new();
    let unit = Ideal::unit(ring);
    reps.insert(cl.discrete_log(&unit)?, unit);
    let mut p = Int::from(2);
    while reps.len() < cl.class_index.len() {
        if p > Int::from(REPRESENTATIVE_PRIME_BOUND) {
            return Err(Error::ExponentBoundExceeded(
                REPRESENTATIVE_PRIME_BOUND as usize,
            ));
        }
        if is_prime(&p) && !(&aug_index % &p).is_zero() {
            for (q, _) in primes_above(ring, &p)? {
                let key = cl.discrete_log(&q)?;
                reps.entry(key).or_insert(q);
            }
        }
        p += 1;
    }
    for r in reps.values() {
        assert!(is_s_fractional(r)?, "representative must be S-fractional");
    }

    // S-classes: representatives up to principal ideals with S-fractional generator
    let reps: Vec<(Vec<Int>, Ideal)> = reps.into_iter().collect();
    let mut distinct: Vec<&Ideal> = Vec::new();
    for (_, r) in &reps {
        let mut seen = false;
        for d in &distinct {
            let q = r.mul(&d.conj())?;
            if let Some(x) = q.is_principal()? {
                if is_s_fractional(&Ideal::principal(ring, &x)?)? {
                    seen = true;
                    break;
                }
            }
        }
        if !seen {
            distinct.push(r);
        }
    }
    // the subgroup of Cl(D) generated by the representatives' classes
    let k = factors.len();
    let relations: Vec<Vec<Int>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        factors[i].clone()
                    } else {
                        Int::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut big = relations.clone();
    big.extend(reps.iter().map(|(key, _)| key.clone()));
    let all_principal_reading = if k == 0 {
        GroupStructure::trivial()
    } else {
        lattice::quotient(&big, &relations, k)?
    };

    let s_order = Int::from(distinct.len());
    // the S-class group maps injectively onto the subgroup it hits
    assert_eq!(
        s_order,
        all_principal_reading.torsion_order(),
        "both readings count the same classes"
    );
    let s_classes = all_principal_reading.clone();
    let comparison = if s_classes == cl.structure {
        Comparison::Isomorphic
    } else {
        Comparison::ProperSubgroup
    };
    let mut representatives: Vec<Ideal> = reps.into_iter().map(|(_, r)| r).collect();
    representatives.sort_by_key(|r| (r.norm(), r.hnf().1.clone()));
    Ok(SClassReport {
        ring: ring.clone(),
        aug_gen,
        aug_index,
        s_classes,
        all_principal_reading,
        full_classes: cl.structure,
        comparison,
        representatives,
        scope_note,
    })
}

/// `T ⋉ J` as integer matrices, columns holding coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParaRealization {
    pub basis: Vec<Element>,
    /// `t` on the basis of `J`.
    pub action_j: Matrix,
    /// `t` on `{1, θ}`.
    pub action_a: Matrix,
    /// Columns: the basis of `J` in `{1, θ}`.
    pub inclusion: Matrix,
}

impl ParaRealization {
    /// `inclusion · action_j = action_a · inclusion`.
    pub fn commutes(&self) -> bool {
        self.inclusion.mul(&self.action_j) == self.action_a.mul(&self.inclusion)
    }
}

/// Matrices for `T ⋉ J`, using `basis` when it is a Z-basis of `J` and the
/// Hermite basis otherwise.
pub fn realize_para_group(j: &Ideal, basis: Option<&[Element]>) -> Result<ParaRealization> {
    if !is_s_fractional(j)? {
        return Err(Error::NotSFractional);
    }
    if !j.is_full_rank() {
        return Err(Error::Unsupported(
            "realization needs a full-rank ideal".into(),
        ));
    }
    let ring = j.ring();
    let hnf_basis = j.basis();
    let basis: Vec<Element> = match basis {
        Some(b) if b.len() == 2 && b.iter().all(|e| j.contains(e)) => {
            let det = &b[0].x * &b[1].y - &b[0].y * &b[1].x;
            if det.abs() == j.norm() {
                b.to_vec()
            } else {
                hnf_basis
            }
        }
        _ => hnf_basis,
    };
    let rows: Vec<Vec<Int>> = basis.iter().map(|e| e.to_vec()).collect();
    // Cramer's rule on the 2x2 basis
    let det = &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0];
    let coords = |e: &Element| -> Vec<Int> {
        let u = &e.x * &rows[1][1] - &e.y * &rows[1][0];
        let v = &rows[0][0] * &e.y - &rows[0][1] * &e.x;
        assert!(
            (&u % &det).is_zero() && (&v % &det).is_zero(),
            "J is t-stable"
        );
        vec![u / &det, v / &det]
    };
    let theta = Element::theta();
    let cols_j: Vec<Vec<Int>> = basis.iter().map(|e| coords(&ring.mul(&theta, e))).collect();
    let action_j = Matrix::from_rows(cols_j, 2).transpose();
    let cols_a = vec![theta.to_vec(), ring.mul(&theta, &theta).to_vec()];
    let action_a = Matrix::from_rows(cols_a, 2).transpose();
    let inclusion = Matrix::from_rows(rows, 2).transpose();
    let r = ParaRealization {
        basis,
        action_j,
        action_a,
        inclusion,
    };
    assert!(r.commutes());
    Ok(r)
}

/// Every element of `1 + (t - 1)R` acts invertibly on `A`.
pub fn is_s_rigid(g: &SplitMetabelianGroup) -> bool {
    match &g.module {
        ModuleSpec::Lattice(_) => {
            let n = g.z_model().expect("lattice").aug();
            n.pow(n.nrows() as u32).is_zero()
        }
        ModuleSpec::Cyclic(f) => {
            // f = ±t^j (t - 1)^m makes t - 1 nilpotent in the coordinate ring
            let h = f.normalized_shift();
            let m = h.span() as u32;
            let aug = crate::Poly::t_minus(Int::one()).pow(m);
            h == aug || h == -&aug
        }
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    PaperSourced,
}

/// `Z[C2]` ideals with Hermite entries bounded by [`FAMILY_BOUND`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedFamily {
    pub bound: i64,
    pub ideals: usize,
    pub s_fractional: usize,
    pub s_fractional_principal: usize,
    /// An ideal outside `1 + (t-1)R` that is not principal, if one occurs.
    pub non_fractional_non_principal: Option<Ideal>,
}

pub const FAMILY_BOUND: i64 = 10;

pub fn bounded_family(ring: &Ring, bound: i64) -> Result<BoundedFamily> {
    let mut seen = Vec::new();
    let theta = Element::theta();
    for a in 1..=bound {
        for c in 1..=bound {
            for b in 0..a {
                let gens = [
                    Element::from_i64(a, 0),
                    Element::new(Int::from(b), Int::from(c)),
                ];
                let j = Ideal::from_generators(ring, &gens)?;
                if j.hnf() == (&Int::from(a), &Int::from(b), &Int::from(c)) && !seen.contains(&j) {
                    seen.push(j);
                }
            }
        }
        // rank-one ideals k(θ ± 1)
        for e in [theta.sub(&Element::one()), theta.add(&Element::one())] {
            let j = Ideal::principal(ring, &e.scale(&Int::from(a)))?;
            if !seen.contains(&j) {
                seen.push(j);
            }
        }
    }
    let mut s_fractional = 0;
    let mut s_fractional_principal = 0;
    let mut non_fractional_non_principal = None;
    for j in &seen {
        let principal = j.is_principal()?.is_some();
        if is_s_fractional(j)? {
            s_fractional += 1;
            s_fractional_principal += usize::from(principal);
        } else if !principal && non_fractional_non_principal.is_none() {
            non_fractional_non_principal = Some(j.clone());
        }
    }
    Ok(BoundedFamily {
        bound,
        ideals: seen.len(),
        s_fractional,
        s_fractional_principal,
        non_fractional_non_principal,
    })
}

#[derive(Clone, Debug)]
pub struct ParaClassification {
    pub count: u64,
    pub reason: String,
    pub provenance: Provenance,
    pub s_class: Option<SClassReport>,
    pub representatives: Vec<(Ideal, ParaRealization)>,
    pub family: Option<BoundedFamily>,
}

impl ParaClassification {
    fn simple(count: u64, reason: impl Into<String>, provenance: Provenance) -> Self {
        ParaClassification {
            count,
            reason: reason.into(),
            provenance,
            s_class: None,
            representatives: Vec::new(),
            family: None,
        }
    }
}

/// `n` with `Z[ζ_n]` quoted as a principal ideal domain beyond the quadratic cases.
pub fn cyclo_pid_quoted(n: u64) -> bool {
    (n < 23 || matches!(n, 25 | 27 | 32)) && is_prime_power(&(n as i64))
}

fn cyclotomic_index(f: &crate::Poly) -> Option<u64> {
    let g = f.normalized_shift().primitive_part();
    (2..=200u64).find(|&n| crate::laurent_poly::cyclotomic_poly(n).is_ok_and(|c| c == g))
}

/// Number of isomorphism classes of groups para-equivalent to `g`.
pub fn classify_para(g: &SplitMetabelianGroup) -> Result<ParaClassification> {
    let rn = is_residually_nilpotent(g)?;
    if !rn.value {
        return Err(Error::OutOfScope(format!(
            "{} is not residually nilpotent: {}",
            g.label(),
            rn.reason
        )));
    }
    if is_s_rigid(g) {
        return Ok(ParaClassification::simple(
            1,
            "S acts invertibly",
            Provenance::Computed,
        ));
    }
    match (&g.q_spec, &g.module) {
        (QSpec::InfiniteCyclic, ModuleSpec::CyclicModP(p)) => Ok(ParaClassification::simple(
            1,
            format!("principal ideal domain: (Z/{p})[t,t^-1]"),
            Provenance::Computed,
        )),
        (QSpec::InfiniteCyclic, ModuleSpec::Cyclic(f)) if f.span() == 1 => {
            Ok(ParaClassification::simple(
                1,
                format!("principal ideal domain: Z[t,t^-1]/({f}) is a localization of Z"),
                Provenance::Computed,
            ))
        }
        (QSpec::InfiniteCyclic, ModuleSpec::Cyclic(f)) if f.span() == 2 && f.is_bimonic() => {
            let ring = Ring::make_ring(f)?;
            if !ring.is_domain() {
                return Err(Error::OutOfScope(format!(
                    "Z[t,t^-1]/({f}) is not a domain"
                )));
            }
            if !ring.is_maximal() {
                return Err(Error::OutOfScope(format!(
                    "Z[t,t^-1]/({f}) is not Dedekind (disc {})",
                    ring.disc()
                )));
            }
            let report = s_class_group(&ring)?;
            let count = report.count().to_u64().expect("small class group");
            let representatives = report
                .representatives
                .iter()
                .map(|j| Ok((j.clone(), realize_para_group(j, None)?)))
                .collect::<Result<_>>()?;
            let reason = if count == 1 {
                "principal ideal domain: trivial S-class group".to_string()
            } else {
                format!("Dedekind: S-class group {}", report.s_classes)
            };
            Ok(ParaClassification {
                count,
                reason,
                provenance: Provenance::Computed,
                s_class: Some(report),
                representatives,
                family: None,
            })
        }
        (QSpec::InfiniteCyclic, ModuleSpec::Cyclic(f)) => match cyclotomic_index(f) {
            Some(n) if cyclo_pid_quoted(n) => Ok(ParaClassification::simple(
                1,
                format!("principal ideal domain: Z[ζ_{n}] (quoted)"),
                Provenance::PaperSourced,
            )),
            Some(n) => Err(Error::OutOfScope(format!(
                "Z[ζ_{n}] class group not computed; see the quadratic subfield witness for n = 23"
            ))),
            None => Err(Error::OutOfScope(format!(
                "coordinate ring Z[t,t^-1]/({f}) of degree > 2"
            ))),
        },
        (QSpec::FiniteCyclic(2), ModuleSpec::Cyclic(f))
            if *f == crate::Poly::from_i64(0, &[-1, 0, 1]) =>
        {
            let ring = Ring::make_ring(f)?;
            let family = bounded_family(&ring, FAMILY_BOUND)?;
            if family.s_fractional != family.s_fractional_principal {
                return Err(Error::OutOfScope(
                    "a bounded S-fractional ideal of Z[C2] is not principal".into(),
                ));
            }
            let mut c = ParaClassification::simple(
                1,
                format!(
                    "every S-fractional ideal with Hermite entries <= {} is principal ({} of {} ideals)",
                    family.bound, family.s_fractional, family.ideals
                ),
                Provenance::Computed,
            );
            c.family = Some(family);
            Ok(c)
        }
        (_, ModuleSpec::FreeRankOne | ModuleSpec::Ideal(_)) => Err(Error::OutOfScope(
            "Z[t,t^-1] is not Dedekind: (3, t - 2) is S-fractional and not principal".into(),
        )),
        _ => Err(Error::OutOfScope(format!(
            "coordinate ring {}",
            g.coordinate_ring()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metabelian::make_group;
    use crate::Poly;

    fn d10() -> Ring {
        Ring::make_ring(&Poly::from_i64(0, &[-1, -6, 1])).unwrap()
    }

    #[test]
    fn augmentation() {
        let r = d10();
        let aug = aug_image(&r).unwrap();
        assert_eq!(aug.norm(), Int::from(6));
        let e = Ring::make_ring(&Poly::from_i64(0, &[1, 1, 1])).unwrap();
        assert_eq!(aug_image(&e).unwrap().norm(), Int::from(3));
        let c2 = Ring::make_ring(&Poly::from_i64(0, &[-1, 0, 1])).unwrap();
        assert!(!aug_image(&c2).unwrap().is_full_rank());
    }

    #[test]
    fn fractional() {
        let r = d10();
        let j = Ideal::from_generators(&r, &[Element::from_i64(3, 0), Element::from_i64(1, 1)])
            .unwrap();
        assert!(is_s_fractional(&j).unwrap());
        assert!(!is_s_fractional(&aug_image(&r).unwrap()).unwrap());
        assert!(is_s_fractional(&Ideal::unit(&r)).unwrap());
    }

    #[test]
    fn d10_realization() {
        let r = d10();
        let gens = [Element::from_i64(3, 0), Element::from_i64(-2, 1)];
        let j = Ideal::from_generators(&r, &gens).unwrap();
        let m = realize_para_group(&j, Some(&gens)).unwrap();
        assert_eq!(m.action_j, Matrix::from_i64(&[&[2, 3], &[3, 4]]));
        assert_eq!(m.action_a, Matrix::from_i64(&[&[0, 1], &[1, 6]]));
        assert_eq!(m.inclusion, Matrix::from_i64(&[&[3, -2], &[0, 1]]));
        let u = realize_para_group(&Ideal::unit(&r), None).unwrap();
        assert_eq!(u.action_j, u.action_a);
        assert_eq!(u.inclusion, Matrix::identity(2));
    }

    #[test]
    fn s_classes() {
        let r = s_class_group(&d10()).unwrap();
        assert_eq!(r.s_classes, GroupStructure::cyclic(Int::from(2)));
        assert_eq!(r.comparison, Comparison::Isomorphic);
        assert!(r.scope_note.is_none());
        let q82 = Ring::make_ring(&Poly::from_i64(0, &[-1, -18, 1])).unwrap();
        assert_eq!(
            s_class_group(&q82).unwrap().s_classes,
            GroupStructure::cyclic(Int::from(4))
        );
        let m2 = s_class_group(&Ring::maximal_order(&Int::from(2)).unwrap()).unwrap();
        assert!(m2.s_classes.is_trivial());
        let m23 = s_class_group(&Ring::maximal_order(&Int::from(23)).unwrap()).unwrap();
        assert!(m23.scope_note.is_some());
    }

    #[test]
    fn classification() {
        let count = |p: &str| classify_para(&make_group(p).unwrap()).unwrap().count;
        assert_eq!(count("quad:10"), 2);
        assert_eq!(count("quad:82"), 4);
        assert_eq!(count("z_inv_n:3"), 1);
        assert_eq!(count("lamplighter"), 1);
        assert_eq!(count("unipotent2"), 1);
        assert_eq!(count("zc2"), 1);
        assert_eq!(count("quad:2"), 1);
        assert_eq!(count("cyclo:9"), 1);
        assert!(matches!(
            classify_para(&make_group("wreath_zz").unwrap()),
            Err(Error::OutOfScope(_))
        ));
        assert!(matches!(
            classify_para(&make_group("bs12").unwrap()),
            Err(Error::OutOfScope(_))
        ));
    }

    #[test]
    fn rigidity() {
        assert!(is_s_rigid(&make_group("unipotent2").unwrap()));
        assert!(!is_s_rigid(&make_group("quad:10").unwrap()));
        assert!(is_s_rigid(
            &SplitMetabelianGroup::cyclic(Poly::t_minus(Int::one()), None).unwrap()
        ));
    }
}
