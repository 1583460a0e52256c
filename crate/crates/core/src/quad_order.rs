//! Rank-two monogenic rings `Z[θ] = Z[t]/(t^2 + b t + c)`: element arithmetic,
//! norms, fundamental units and the Laurent-domain test.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent_poly::LaurentPoly;
use crate::scalar::{is_square, is_squarefree, sc, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    RealDomain,
    ImaginaryDomain,
    NonDomain,
}

/// How the generator `θ` is printed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis<T> {
    /// `θ` is the image of `t`.
    Generator,
    /// `θ = √d`.
    Sqrt(T),
    /// `θ = (1 + √d) / 2`.
    Omega(T),
}

/// The element `x + y θ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> RingElement<T> {
    pub fn new(x: T, y: T) -> Self {
        RingElement { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        RingElement { x: sc(x), y: sc(y) }
    }

    pub fn integer(x: T) -> Self {
        RingElement { x, y: T::zero() }
    }

    pub fn one() -> Self {
        Self::integer(T::one())
    }

    pub fn zero() -> Self {
        Self::integer(T::zero())
    }

    pub fn theta() -> Self {
        RingElement {
            x: T::zero(),
            y: T::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        RingElement {
            x: self.x.clone() + o.x.clone(),
            y: self.y.clone() + o.y.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RingElement {
            x: self.x.clone() - o.x.clone(),
            y: self.y.clone() - o.y.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        RingElement {
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        RingElement {
            x: self.x.clone() * k.clone(),
            y: self.y.clone() * k.clone(),
        }
    }

    pub fn to_vec(&self) -> Vec<T> {
        vec![self.x.clone(), self.y.clone()]
    }
}

/// `Z[t]/(t^2 + b t + c)` with `θ` the image of `t`.
///
/// For domains `θ = (-b + √disc)/2`, which fixes the sign conventions of the
/// real embedding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonogenicRing<T> {
    f: LaurentPoly<T>,
    b: T,
    c: T,
    disc: T,
    kind: RingKind,
    is_maximal: bool,
    basis: Basis<T>,
}

fn is_fundamental_disc<T: Scalar>(disc: &T) -> bool {
    let four: T = sc(4);
    let r = disc.mod_floor(&four);
    if r.is_one() {
        return is_squarefree(disc);
    }
    if r.is_zero() {
        let m = disc.clone() / four.clone();
        let rm = m.mod_floor(&four);
        return (rm == sc(2) || rm == sc(3)) && is_squarefree(&m);
    }
    false
}

impl<T: Scalar> MonogenicRing<T> {
    fn build(b: T, c: T, basis: Basis<T>) -> Self {
        let disc = b.clone() * b.clone() - sc::<T>(4) * c.clone();
        let kind = if is_square(&disc) {
            RingKind::NonDomain
        } else if disc.is_positive() {
            RingKind::RealDomain
        } else {
            RingKind::ImaginaryDomain
        };
        let is_maximal = kind != RingKind::NonDomain && is_fundamental_disc(&disc);
        let f = LaurentPoly::new(0, vec![c.clone(), b.clone(), T::one()]);
        MonogenicRing {
            f,
            b,
            c,
            disc,
            kind,
            is_maximal,
            basis,
        }
    }

    /// `Z[t, t^-1]/(f)` for a quadratic `f` with unit extreme coefficients.
    pub fn make_ring(f: &LaurentPoly<T>) -> Result<Self> {
        if f.is_zero() || f.span() != 2 {
            return Err(Error::NotQuadratic(f.to_string()));
        }
        let g = f.normalized_shift();
        let lead = g.coeff(2);
        if !lead.abs().is_one() {
            return Err(Error::NotQuadratic(format!(
                "{f} has leading coefficient {lead}"
            )));
        }
        let (c, b) = (g.coeff(0) * lead.clone(), g.coeff(1) * lead);
        if !c.abs().is_one() {
            return Err(Error::ConstantNotUnit(c.to_string()));
        }
        Ok(Self::build(b, c, Basis::Generator))
    }

    /// The maximal order of `Q(√d)` in its standard basis `{1, ω}`. Here `θ = ω`
    /// need not be a unit; this constructor serves the number-theoretic path.
    pub fn maximal_order(d: &T) -> Result<Self> {
        if d.is_one() || d.is_zero() || !is_squarefree(d) {
            return Err(Error::InvalidInput(format!(
                "{d} is not a squarefree integer other than 0, 1"
            )));
        }
        if d.mod_floor(&sc(4)).is_one() {
            let c = (T::one() - d.clone()) / sc(4);
            Ok(Self::build(-T::one(), c, Basis::Omega(d.clone())))
        } else {
            Ok(Self::build(T::zero(), -d.clone(), Basis::Sqrt(d.clone())))
        }
    }

    pub fn f(&self) -> &LaurentPoly<T> {
        &self.f
    }

    /// Coefficients `(b, c)` of `t^2 + b t + c`.
    pub fn coefficients(&self) -> (&T, &T) {
        (&self.b, &self.c)
    }

    pub fn disc(&self) -> &T {
        &self.disc
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn is_domain(&self) -> bool {
        self.kind != RingKind::NonDomain
    }

    pub fn is_maximal(&self) -> bool {
        self.is_maximal
    }

    pub fn basis(&self) -> &Basis<T> {
        &self.basis
    }

    /// `θ` is invertible, i.e. the ring is a quotient of `Z[t, t^-1]`.
    pub fn theta_invertible(&self) -> bool {
        self.c.abs().is_one()
    }

    pub fn mul(&self, u: &RingElement<T>, v: &RingElement<T>) -> RingElement<T> {
        // θ^2 = -bθ - c
        let yy = u.y.clone() * v.y.clone();
        RingElement {
            x: u.x.clone() * v.x.clone() - self.c.clone() * yy.clone(),
            y: u.x.clone() * v.y.clone() + v.x.clone() * u.y.clone() - self.b.clone() * yy,
        }
    }

    pub fn pow(&self, u: &RingElement<T>, mut e: u32) -> RingElement<T> {
        let mut base = u.clone();
        let mut acc = RingElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Image under `θ -> trace(θ) - θ`.
    pub fn conj(&self, u: &RingElement<T>) -> RingElement<T> {
        RingElement {
            x: u.x.clone() - self.b.clone() * u.y.clone(),
            y: -u.y.clone(),
        }
    }

    pub fn trace(&self, u: &RingElement<T>) -> T {
        sc::<T>(2) * u.x.clone() - self.b.clone() * u.y.clone()
    }

    /// The form `x^2 - b x y + c y^2`, defined on every ring; on domains it is the norm.
    pub fn norm_form(&self, u: &RingElement<T>) -> T {
        u.x.clone() * u.x.clone() - self.b.clone() * u.x.clone() * u.y.clone()
            + self.c.clone() * u.y.clone() * u.y.clone()
    }

    pub fn norm(&self, u: &RingElement<T>) -> Result<T> {
        if !self.is_domain() {
            return Err(Error::NonDomain);
        }
        Ok(self.norm_form(u))
    }

    pub fn is_unit(&self, u: &RingElement<T>) -> Result<bool> {
        Ok(self.norm(u)?.abs().is_one())
    }

    /// Inverse of a unit (also works for non-domains whenever the norm form is ±1).
    pub fn unit_inverse(&self, u: &RingElement<T>) -> Option<RingElement<T>> {
        let n = self.norm_form(u);
        if !n.abs().is_one() {
            return None;
        }
        Some(self.conj(u).scale(&n))
    }

    /// `t^2 - trace(u) t + norm(u)`.
    pub fn min_poly(&self, u: &RingElement<T>) -> LaurentPoly<T> {
        LaurentPoly::new(0, vec![self.norm_form(u), -self.trace(u), T::one()])
    }

    /// Coordinates of `u` as `(p + q √disc) / 2`.
    pub fn sqrt_coords(&self, u: &RingElement<T>) -> (T, T) {
        (
            sc::<T>(2) * u.x.clone() - self.b.clone() * u.y.clone(),
            u.y.clone(),
        )
    }

    /// Inverse of `sqrt_coords`, if the point lies in the ring.
    pub fn from_sqrt_coords(&self, p: &T, q: &T) -> Option<RingElement<T>> {
        let num = p.clone() + self.b.clone() * q.clone();
        let two: T = sc(2);
        if !num.is_multiple_of(&two) {
            return None;
        }
        Some(RingElement {
            x: num / two,
            y: q.clone(),
        })
    }

    pub fn render(&self, u: &RingElement<T>) -> String {
        let sym = match &self.basis {
            Basis::Generator => "t".to_string(),
            Basis::Sqrt(d) => format!("√{d}"),
            Basis::Omega(_) => "ω".to_string(),
        };
        let y = match (u.y.is_zero(), u.y.abs().is_one()) {
            (true, _) => return u.x.to_string(),
            (false, true) => sym,
            (false, false) => format!("{}{sym}", u.y.abs()),
        };
        if u.x.is_zero() {
            if u.y.is_negative() {
                format!("-{y}")
            } else {
                y
            }
        } else {
            format!("{} {} {y}", u.x, if u.y.is_negative() { '-' } else { '+' })
        }
    }
}

impl<T: Scalar> fmt::Display for MonogenicRing<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.basis {
            Basis::Generator => write!(f, "Z[t,t^-1]/({})", self.f),
            Basis::Sqrt(d) => write!(f, "Z[√{d}]"),
            Basis::Omega(d) => write!(f, "Z[(1+√{d})/2]"),
        }
    }
}

fn floor_quad<T: Scalar>(p: &T, q: &T, s: &T) -> T {
    // floor((p + √d) / q) with s = isqrt(d), √d irrational
    if q.is_positive() {
        (p.clone() + s.clone()).div_floor(q)
    } else {
        (-p.clone() - s.clone() - T::one()).div_floor(&q.abs())
    }
}

/// The fundamental unit `ε > 1` of the maximal order of `Q(√d)`, in the basis
/// `{1, ω}` of [`MonogenicRing::maximal_order`], found among the continued
/// fraction convergents of `ω`.
pub fn fundamental_unit<T: Scalar>(d: &T) -> Result<RingElement<T>> {
    let ring = MonogenicRing::maximal_order(d)?;
    if !d.is_positive() {
        return Err(Error::InvalidInput(format!(
            "{d} is not a positive discriminant"
        )));
    }
    let omega_form = matches!(ring.basis, Basis::Omega(_));
    let s = d.sqrt();
    // ω = (P + √d) / Q
    let (mut p, mut q): (T, T) = if omega_form {
        (T::one(), sc(2))
    } else {
        (T::zero(), T::one())
    };
    let (mut h_prev, mut h) = (T::zero(), T::one());
    let (mut k_prev, mut k) = (T::one(), T::zero());
    let mut seen = HashSet::new();
    let mut repeats = 0;
    loop {
        let a = floor_quad(&p, &q, &s);
        let h_new = a.clone() * h.clone() + h_prev.clone();
        let k_new = a.clone() * k.clone() + k_prev.clone();
        (h_prev, h) = (h, h_new);
        (k_prev, k) = (k, k_new);
        // h - kω̄ = (h - k) + kω for the ω-expansion
        let cand = if omega_form {
            RingElement::new(h.clone() - k.clone(), k.clone())
        } else {
            RingElement::new(h.clone(), k.clone())
        };
        if ring.norm_form(&cand).abs().is_one() {
            return Ok(cand);
        }
        let p_next = a * q.clone() - p.clone();
        let q_next = (d.clone() - p_next.clone() * p_next.clone()) / q.clone();
        p = p_next;
        q = q_next;
        if !seen.insert((p.clone(), q.clone())) {
            repeats += 1;
            assert!(
                repeats < 4 * seen.len() + 4,
                "continued fraction period passed without a unit"
            );
        }
    }
}

/// Outcome of the Laurent-domain test for `Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentVerdict<T> {
    pub d: T,
    pub laurent: bool,
    pub unit: RingElement<T>,
    /// `[D : Z[ε]]`, the absolute ω-coefficient of `ε`.
    pub index: T,
}

/// `D = Z[ε, ε^-1]` exactly when the fundamental unit has ω-coefficient ±1;
/// `±ε^{±1}` generate the same subring and proper powers have larger index.
pub fn is_laurent_domain<T: Scalar>(d: &T) -> Result<LaurentVerdict<T>> {
    let eps = fundamental_unit(d)?;
    let index = eps.y.abs();
    Ok(LaurentVerdict {
        d: d.clone(),
        laurent: index.is_one(),
        unit: eps,
        index,
    })
}

/// For a Laurent verdict, `ω = k (ε - m)` as the pair `(k, m)`.
pub fn omega_from_unit<T: Scalar>(v: &LaurentVerdict<T>) -> Option<(T, T)> {
    v.laurent.then(|| (v.unit.y.clone(), v.unit.x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d10() -> MonogenicRing<i64> {
        MonogenicRing::make_ring(&LaurentPoly::from_i64(0, &[-1, -6, 1])).unwrap()
    }

    #[test]
    fn make_ring_classification() {
        let r = d10();
        assert_eq!(r.kind(), RingKind::RealDomain);
        assert_eq!(*r.disc(), 40);
        assert!(r.is_maximal());
        let c2 = MonogenicRing::<i64>::make_ring(&LaurentPoly::from_i64(0, &[-1, 0, 1])).unwrap();
        assert_eq!(c2.kind(), RingKind::NonDomain);
        let e = MonogenicRing::<i64>::make_ring(&LaurentPoly::from_i64(0, &[1, 1, 1])).unwrap();
        assert_eq!(e.kind(), RingKind::ImaginaryDomain);
        assert_eq!(*e.disc(), -3);
        assert!(matches!(
            MonogenicRing::<i64>::make_ring(&LaurentPoly::from_i64(0, &[-2, 1])),
            Err(Error::NotQuadratic(_))
        ));
        assert!(matches!(
            MonogenicRing::<i64>::make_ring(&LaurentPoly::from_i64(0, &[2, 0, 1])),
            Err(Error::ConstantNotUnit(_))
        ));
        // shifts by t^k are harmless
        assert_eq!(
            MonogenicRing::make_ring(&LaurentPoly::from_i64(-1, &[-1, -6, 1])).unwrap(),
            r
        );
    }

    #[test]
    fn arithmetic_in_d10_model() {
        let r = d10();
        let t = RingElement::theta();
        assert_eq!(r.mul(&t, &t), RingElement::from_i64(1, 6));
        let a = RingElement::from_i64(1, 1);
        let b = RingElement::from_i64(1, -1);
        assert_eq!(r.mul(&a, &b), RingElement::from_i64(0, -6));
        assert_eq!(r.mul(&a, &RingElement::one()), a);
        assert_eq!(r.norm(&t).unwrap(), -1);
        assert_eq!(r.norm(&RingElement::one()).unwrap(), 1);
        assert_eq!(r.norm(&a).unwrap(), 6);
        assert!(r.is_unit(&t).unwrap());
        assert!(!r.is_unit(&a).unwrap());
        assert!(r.is_unit(&RingElement::from_i64(-1, 0)).unwrap());
        assert_eq!(r.min_poly(&t), *r.f());
        let inv = r.unit_inverse(&t).unwrap();
        assert_eq!(r.mul(&t, &inv), RingElement::one());
    }

    #[test]
    fn norm_rejected_on_non_domain() {
        let c2 = MonogenicRing::<i64>::make_ring(&LaurentPoly::from_i64(0, &[-1, 0, 1])).unwrap();
        assert_eq!(c2.norm(&RingElement::one()), Err(Error::NonDomain));
    }

    #[test]
    fn fundamental_units() {
        assert_eq!(
            fundamental_unit(&2i64).unwrap(),
            RingElement::from_i64(1, 1)
        );
        assert_eq!(
            fundamental_unit(&10i64).unwrap(),
            RingElement::from_i64(3, 1)
        );
        assert_eq!(
            fundamental_unit(&13i64).unwrap(),
            RingElement::from_i64(1, 1)
        );
        assert_eq!(
            fundamental_unit(&6i64).unwrap(),
            RingElement::from_i64(5, 2)
        );
        assert_eq!(
            fundamental_unit(&5i64).unwrap(),
            RingElement::from_i64(0, 1)
        );
        assert_eq!(
            fundamental_unit(&21i64).unwrap(),
            RingElement::from_i64(2, 1)
        );
        assert_eq!(
            fundamental_unit(&94i64).unwrap(),
            RingElement::from_i64(2143295, 221064)
        );
        assert!(fundamental_unit(&4i64).is_err());
    }

    #[test]
    fn laurent_test() {
        let v = is_laurent_domain(&10i64).unwrap();
        assert!(v.laurent);
        assert_eq!(v.unit, RingElement::from_i64(3, 1));
        let v = is_laurent_domain(&6i64).unwrap();
        assert!(!v.laurent);
        assert_eq!(v.index, 2);
        let v = is_laurent_domain(&82i64).unwrap();
        assert_eq!(v.unit, RingElement::from_i64(9, 1));
        assert!(v.laurent);
        let v = is_laurent_domain(&23i64).unwrap();
        assert_eq!((v.unit.clone(), v.index), (RingElement::from_i64(24, 5), 5));
    }

    #[test]
    fn rendering() {
        let r = MonogenicRing::<i64>::maximal_order(&10).unwrap();
        assert_eq!(r.render(&RingElement::from_i64(3, 1)), "3 + √10");
        assert_eq!(r.render(&RingElement::from_i64(0, -2)), "-2√10");
        let r = MonogenicRing::<i64>::maximal_order(&13).unwrap();
        assert_eq!(r.render(&RingElement::from_i64(1, 1)), "1 + ω");
    }
}
