//! Ideals of a [`MonogenicRing`] as integer lattices in Hermite normal form,
//! with products, norms, principality and equivalence.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::quad_order::{MonogenicRing, RingElement, RingKind};
use crate::scalar::{sc, Scalar};

/// The lattice with basis `{a, b + c θ}`; `c` is the gcd of all `θ`-coordinates
/// and `a` generates the intersection with `Z`, with `0 <= b < a`.
///
/// Rank-one lattices (`a = 0`) occur in non-domains such as `Z[C2]`; then `b`
/// is not reduced and the index is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealLattice<T> {
    ring: MonogenicRing<T>,
    a: T,
    b: T,
    c: T,
}

impl<T: Scalar> IdealLattice<T> {
    /// Smallest ideal containing `gens`.
    pub fn from_generators(ring: &MonogenicRing<T>, gens: &[RingElement<T>]) -> Result<Self> {
        // columns ordered (y, x) so that the echelon form exposes c first
        let theta = RingElement::theta();
        let mut rows = Vec::new();
        for g in gens {
            for h in [g.clone(), ring.mul(g, &theta)] {
                rows.push(vec![h.y.clone(), h.x.clone()]);
            }
        }
        let h = lattice::hnf(&rows, 2);
        match h.len() {
            0 => Err(Error::ZeroIdeal),
            1 => {
                let (c, b) = (h[0][0].clone(), h[0][1].clone());
                debug_assert!(!c.is_zero());
                Ok(IdealLattice {
                    ring: ring.clone(),
                    a: T::zero(),
                    b,
                    c,
                })
            }
            _ => Ok(IdealLattice {
                ring: ring.clone(),
                a: h[1][1].clone(),
                b: h[0][1].clone(),
                c: h[0][0].clone(),
            }),
        }
    }

    pub fn unit(ring: &MonogenicRing<T>) -> Self {
        IdealLattice {
            ring: ring.clone(),
            a: T::one(),
            b: T::zero(),
            c: T::one(),
        }
    }

    pub fn principal(ring: &MonogenicRing<T>, g: &RingElement<T>) -> Result<Self> {
        Self::from_generators(ring, std::slice::from_ref(g))
    }

    pub fn ring(&self) -> &MonogenicRing<T> {
        &self.ring
    }

    /// `(a, b, c)`.
    pub fn hnf(&self) -> (&T, &T, &T) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_full_rank(&self) -> bool {
        !self.a.is_zero()
    }

    /// The ℤ-basis `a, b + cθ` (only the second vector for rank one).
    pub fn basis(&self) -> Vec<RingElement<T>> {
        let second = RingElement::new(self.b.clone(), self.c.clone());
        if self.is_full_rank() {
            vec![RingElement::integer(self.a.clone()), second]
        } else {
            vec![second]
        }
    }

    /// Lattice index `a c`; zero stands for the infinite index of a rank-one lattice.
    pub fn norm(&self) -> T {
        self.a.clone() * self.c.clone()
    }

    pub fn contains(&self, e: &RingElement<T>) -> bool {
        if self.c.is_zero() || !e.y.is_multiple_of(&self.c) {
            return false;
        }
        let k = e.y.clone() / self.c.clone();
        let rest = e.x.clone() - k * self.b.clone();
        if self.a.is_zero() {
            rest.is_zero()
        } else {
            rest.is_multiple_of(&self.a)
        }
    }

    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.basis().iter().all(|g| self.contains(g))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::new();
        for u in self.basis() {
            for v in other.basis() {
                gens.push(self.ring.mul(&u, &v));
            }
        }
        Self::from_generators(&self.ring, &gens)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Image under the conjugation `θ -> trace(θ) - θ`.
    pub fn conj(&self) -> Self {
        let gens: Vec<_> = self.basis().iter().map(|g| self.ring.conj(g)).collect();
        Self::from_generators(&self.ring, &gens).expect("conjugate of a nonzero ideal")
    }

    /// Sum of ideals.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.basis();
        gens.extend(other.basis());
        Self::from_generators(&self.ring, &gens)
    }

    /// A generator when the ideal is principal.
    ///
    /// Maximal domains are decided by reduction of the associated primitive
    /// ideal (imaginary case) or by a walk around its cycle of reduced ideals
    /// (real case). Non-domains use a bounded generator search, see
    /// [`IdealLattice::search_bound`].
    pub fn is_principal(&self) -> Result<Option<RingElement<T>>> {
        match self.ring.kind() {
            RingKind::NonDomain => Ok(self.bounded_generator_search()),
            _ => {
                if !self.ring.is_maximal() {
                    return Err(Error::NonMaximal(self.ring.disc().to_string()));
                }
                let walk = ReductionWalk::new(self);
                Ok(walk.principal_generator().map(|g| {
                    let e = self.field_to_ring(&g);
                    assert!(
                        Self::principal(&self.ring, &e).as_ref() == Ok(self),
                        "reduction produced a non-generator"
                    );
                    e
                }))
            }
        }
    }

    /// `J ~ K` iff `J conj(K)` is principal.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(&other.conj())?.is_principal()?.is_some())
    }

    /// A canonical label of the ideal class: the reduced primitive ideal
    /// (imaginary) or the least reduced ideal of the cycle (real).
    pub fn class_key(&self) -> Result<(T, T)> {
        if !self.ring.is_domain() {
            return Err(Error::NonDomain);
        }
        if !self.ring.is_maximal() {
            return Err(Error::NonMaximal(self.ring.disc().to_string()));
        }
        Ok(ReductionWalk::new(self).class_key())
    }

    /// Coordinate bound of the generator search in non-domains: four times
    /// the largest HNF entry.
    pub fn search_bound(&self) -> T {
        let m = [self.a.abs(), self.b.abs(), self.c.abs()]
            .into_iter()
            .max()
            .unwrap();
        m * sc(4)
    }

    fn bounded_generator_search(&self) -> Option<RingElement<T>> {
        let bound = self
            .search_bound()
            .to_i64()
            .expect("search bound fits in i64");
        // grow outward so that small generators are found first
        for r in 0..=bound {
            for x in -r..=r {
                for y in -r..=r {
                    if x.abs().max(y.abs()) != r {
                        continue;
                    }
                    let g = RingElement::new(sc(x), sc(y));
                    if self.contains(&g) && Self::principal(&self.ring, &g).as_ref() == Ok(self) {
                        return Some(g);
                    }
                }
            }
        }
        None
    }

    fn field_to_ring(&self, g: &FieldElt<T>) -> RingElement<T> {
        let two = Ratio::from_integer(sc::<T>(2));
        let p = g.u.clone() * two.clone();
        let q = g.v.clone() * two;
        assert!(
            p.is_integer() && q.is_integer(),
            "generator is not integral"
        );
        self.ring
            .from_sqrt_coords(&p.to_integer(), &q.to_integer())
            .expect("generator lies in the ring")
    }
}

impl<T: Scalar> fmt::Display for IdealLattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis().iter().map(|g| self.ring.render(g)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Prime ideals over the rational prime `p`, each with its residue degree,
/// read off from the factorization of the defining polynomial mod `p`.
pub fn primes_above<T: Scalar>(
    ring: &MonogenicRing<T>,
    p: &T,
) -> Result<Vec<(IdealLattice<T>, u32)>> {
    if !ring.is_domain() {
        return Err(Error::NonDomain);
    }
    if !ring.is_maximal() {
        return Err(Error::NonMaximal(ring.disc().to_string()));
    }
    let f = ring.f();
    let mut roots = Vec::new();
    let mut r = T::zero();
    while &r < p {
        let v = f.coeff(0) + f.coeff(1) * r.clone() + r.clone() * r.clone();
        if v.is_multiple_of(p) {
            roots.push(r.clone());
        }
        r = r + T::one();
    }
    if roots.is_empty() {
        return Ok(vec![(
            IdealLattice::principal(ring, &RingElement::integer(p.clone()))?,
            2,
        )]);
    }
    roots
        .into_iter()
        .map(|r| {
            let gens = [
                RingElement::integer(p.clone()),
                RingElement::new(-r, T::one()),
            ];
            Ok((IdealLattice::from_generators(ring, &gens)?, 1))
        })
        .collect()
}

/// `u + v √disc` with rational coordinates.
#[derive(Clone, Debug, PartialEq)]
struct FieldElt<T: Scalar> {
    u: Ratio<T>,
    v: Ratio<T>,
}

impl<T: Scalar> FieldElt<T> {
    fn rational(u: Ratio<T>) -> Self {
        FieldElt {
            u,
            v: Ratio::zero(),
        }
    }

    fn mul(&self, o: &Self, disc: &T) -> Self {
        let d = Ratio::from_integer(disc.clone());
        FieldElt {
            u: self.u.clone() * o.u.clone() + self.v.clone() * o.v.clone() * d,
            v: self.u.clone() * o.v.clone() + self.v.clone() * o.u.clone(),
        }
    }

    fn inv(&self, disc: &T) -> Self {
        let d = Ratio::from_integer(disc.clone());
        let n = self.u.clone() * self.u.clone() - self.v.clone() * self.v.clone() * d;
        FieldElt {
            u: self.u.clone() / n.clone(),
            v: -self.v.clone() / n,
        }
    }
}

/// Primitive ideals `[A, (B + √Δ)/2]` under the reduction operator, with the
/// accumulated multiplier `μ` such that the current ideal is `μ J`.
struct ReductionWalk<T: Scalar> {
    disc: T,
    sqrt_floor: T,
    real: bool,
    a: T,
    b: T,
    mu: FieldElt<T>,
}

impl<T: Scalar> ReductionWalk<T> {
    fn new(j: &IdealLattice<T>) -> Self {
        let (bf, _) = j.ring.coefficients();
        let disc = j.ring.disc().clone();
        let real = j.ring.kind() == RingKind::RealDomain;
        // J = c [a/c, b/c + θ] and b/c + θ = (2b/c - bf + √Δ)/2
        let a = j.a.clone() / j.c.clone();
        let b = sc::<T>(2) * (j.b.clone() / j.c.clone()) - bf.clone();
        let mu = FieldElt::rational(Ratio::new(T::one(), j.c.clone()));
        let sqrt_floor = if real { disc.sqrt() } else { T::zero() };
        let mut w = ReductionWalk {
            disc,
            sqrt_floor,
            real,
            a,
            b,
            mu,
        };
        w.b = w.normalized(w.b.clone(), &w.a.clone());
        w.reduce();
        w
    }

    /// Representative of `b mod 2a` in the standard window.
    fn normalized(&self, b: T, a: &T) -> T {
        let two_a = sc::<T>(2) * a.clone();
        if self.real && a <= &self.sqrt_floor {
            // √Δ - 2a < b < √Δ
            let lo = self.sqrt_floor.clone() - two_a.clone();
            b.clone() - ((b - lo - T::one()).div_floor(&two_a)) * two_a
        } else {
            // -a < b <= a
            b.clone() - ((b + a.clone() - T::one()).div_floor(&two_a)) * two_a
        }
    }

    fn is_reduced(&self) -> bool {
        if self.real {
            let s = &self.sqrt_floor;
            let two_a = sc::<T>(2) * self.a.clone();
            self.b.is_positive()
                && &self.b <= s
                && two_a.clone() + self.b.clone() > *s
                && two_a - self.b.clone() <= *s
        } else {
            let c = self.c_coeff();
            self.a < c || (self.a == c && !self.b.is_negative())
        }
    }

    fn c_coeff(&self) -> T {
        (self.b.clone() * self.b.clone() - self.disc.clone()) / (sc::<T>(4) * self.a.clone())
    }

    /// `[A, γ] -> (γ̄/A) [A, γ] = [|C|, -γ̄]`.
    fn rho(&mut self) {
        let two = Ratio::from_integer(sc::<T>(2));
        let gamma_bar = FieldElt {
            u: Ratio::from_integer(self.b.clone()) / two.clone(),
            v: -Ratio::one() / two,
        };
        let m = FieldElt {
            u: gamma_bar.u.clone() / Ratio::from_integer(self.a.clone()),
            v: gamma_bar.v.clone() / Ratio::from_integer(self.a.clone()),
        };
        self.mu = m.mul(&self.mu, &self.disc);
        let c = self.c_coeff().abs();
        self.b = self.normalized(-self.b.clone(), &c);
        self.a = c;
    }

    fn reduce(&mut self) {
        while !self.is_reduced() {
            self.rho();
        }
    }

    /// For a principal ideal, `J = (μ^-1)`.
    fn principal_generator(mut self) -> Option<FieldElt<T>> {
        if !self.real {
            return self.a.is_one().then(|| self.mu.inv(&self.disc));
        }
        let start = (self.a.clone(), self.b.clone());
        loop {
            if self.a.is_one() {
                return Some(self.mu.inv(&self.disc));
            }
            self.rho();
            if (self.a.clone(), self.b.clone()) == start {
                return None;
            }
        }
    }

    fn class_key(mut self) -> (T, T) {
        if !self.real {
            return (self.a, self.b);
        }
        let start = (self.a.clone(), self.b.clone());
        let mut best = start.clone();
        loop {
            self.rho();
            let cur = (self.a.clone(), self.b.clone());
            if cur == start {
                return best;
            }
            best = best.min(cur);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent_poly::LaurentPoly;

    fn d10() -> MonogenicRing<i64> {
        MonogenicRing::make_ring(&LaurentPoly::from_i64(0, &[-1, -6, 1])).unwrap()
    }

    fn e(x: i64, y: i64) -> RingElement<i64> {
        RingElement::from_i64(x, y)
    }

    #[test]
    fn hnf_of_generators() {
        let r = d10();
        let j = IdealLattice::from_generators(&r, &[e(3, 0), e(-2, 1)]).unwrap();
        assert_eq!(j.hnf(), (&3, &1, &1));
        assert_eq!(j.norm(), 3);
        let u = IdealLattice::from_generators(&r, &[e(1, 0)]).unwrap();
        assert_eq!(u, IdealLattice::unit(&r));
        let c2 = MonogenicRing::make_ring(&LaurentPoly::from_i64(0, &[-1, 0, 1])).unwrap();
        let k = IdealLattice::from_generators(&c2, &[e(2, 0), e(1, 1)]).unwrap();
        assert_eq!(k.norm(), 2);
        assert!(k.contains(&e(1, 1)));
        assert!(matches!(
            IdealLattice::from_generators(&r, &[e(0, 0)]),
            Err(Error::ZeroIdeal)
        ));
        // rank one in Z[C2]
        let aug = IdealLattice::from_generators(&c2, &[e(-1, 1)]).unwrap();
        assert!(!aug.is_full_rank());
        assert_eq!(aug.norm(), 0);
    }

    #[test]
    fn norms_and_products() {
        let r = d10();
        let j = IdealLattice::from_generators(&r, &[e(3, 0), e(-2, 1)]).unwrap();
        assert_eq!(IdealLattice::principal(&r, &e(-1, 1)).unwrap().norm(), 6);
        assert_eq!(j.mul(&IdealLattice::unit(&r)).unwrap(), j);
        let j2 = j.mul(&j).unwrap();
        assert_eq!(j2.norm(), 9);
        let jj = j.mul(&j.conj()).unwrap();
        assert_eq!(jj, IdealLattice::principal(&r, &e(3, 0)).unwrap());
    }

    #[test]
    fn principality_in_d10() {
        let r = d10();
        let j = IdealLattice::from_generators(&r, &[e(3, 0), e(-2, 1)]).unwrap();
        assert_eq!(j.is_principal().unwrap(), None);
        assert!(IdealLattice::unit(&r).is_principal().unwrap().is_some());
        let g = j.mul(&j).unwrap().is_principal().unwrap().unwrap();
        assert_eq!(r.norm(&g).unwrap().abs(), 9);
        let two = IdealLattice::from_generators(&r, &[e(2, 0), e(-3, 1)]).unwrap();
        assert_eq!(two.norm(), 2);
        assert!(j.equivalent(&two).unwrap());
        assert!(!j.equivalent(&IdealLattice::unit(&r)).unwrap());
        assert!(j.equivalent(&j).unwrap());
    }

    #[test]
    fn primes_in_q_sqrt10() {
        let r = MonogenicRing::<i64>::maximal_order(&10).unwrap();
        let p3 = primes_above(&r, &3).unwrap();
        assert_eq!(p3.len(), 2);
        assert!(p3.iter().all(|(p, f)| p.norm() == 3 && *f == 1));
        let p7 = primes_above(&r, &7).unwrap();
        assert_eq!(p7.len(), 1);
        assert_eq!((p7[0].0.norm(), p7[0].1), (49, 2));
        let p2 = primes_above(&r, &2).unwrap();
        assert_eq!(p2.len(), 1);
        assert_eq!(
            p2[0].0.mul(&p2[0].0).unwrap(),
            IdealLattice::principal(&r, &e(2, 0)).unwrap()
        );
    }

    #[test]
    fn imaginary_principality() {
        let r = MonogenicRing::<i64>::maximal_order(&-23).unwrap();
        let p2 = primes_above(&r, &2).unwrap();
        assert_eq!(p2.len(), 2);
        assert_eq!(p2[0].0.is_principal().unwrap(), None);
        assert!(p2[0].0.pow(3).unwrap().is_principal().unwrap().is_some());
        let r = MonogenicRing::<i64>::maximal_order(&-1).unwrap();
        let p5 = primes_above(&r, &5).unwrap();
        assert!(p5[0].0.is_principal().unwrap().is_some());
    }

    #[test]
    fn z_c2_principal_search() {
        let c2 = MonogenicRing::make_ring(&LaurentPoly::from_i64(0, &[-1, 0, 1])).unwrap();
        let k = IdealLattice::from_generators(&c2, &[e(3, 0), e(1, 1)]).unwrap();
        let g = k.is_principal().unwrap().unwrap();
        assert_eq!(IdealLattice::principal(&c2, &g).unwrap(), k);
    }
}
