//! Ideal class groups of maximal quadratic orders.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::ideal_lattice::{primes_above, IdealLattice};
use crate::lattice;
use crate::laurent_poly::AbelianGroupStructure;
use crate::quad_order::{MonogenicRing, RingElement, RingKind};
use crate::scalar::{is_prime, is_squarefree, sc, Scalar};

/// Largest order of a single generator the search accepts.
pub const EXPONENT_BOUND: usize = 12;

/// `generator^order = (element)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCertificate<T> {
    pub order: T,
    pub element: RingElement<T>,
}

#[derive(Clone, Debug)]
pub struct ClassGroup<T> {
    pub ring: MonogenicRing<T>,
    pub structure: AbelianGroupStructure<T>,
    /// One ideal per invariant factor, in the same order.
    pub generators: Vec<IdealLattice<T>>,
    pub certificates: Vec<PowerCertificate<T>>,
    /// Exponents over `generators` (reduced into `[0, d_i)`) to a small
    /// representative of that class.
    pub class_index: BTreeMap<Vec<T>, IdealLattice<T>>,
}

impl<T: Scalar> ClassGroup<T> {
    pub fn order(&self) -> T {
        self.structure.torsion_order()
    }

    /// Exponent vector of the class of `j` over the generators.
    pub fn discrete_log(&self, j: &IdealLattice<T>) -> Result<Vec<T>> {
        let key = j.class_key()?;
        for (exps, rep) in &self.class_index {
            if rep.class_key()? == key {
                return Ok(exps.clone());
            }
        }
        unreachable!("class index covers the whole group")
    }
}

/// Minkowski bound: `floor(√disc / 2)` for real and `floor(2 √|disc| / π)`
/// for imaginary discriminants.
pub fn minkowski_bound<T: Scalar>(ring: &MonogenicRing<T>) -> Result<T> {
    if !ring.is_domain() {
        return Err(Error::NonDomain);
    }
    if !ring.is_maximal() {
        return Err(Error::NonMaximal(ring.disc().to_string()));
    }
    let disc = ring.disc().clone();
    if ring.kind() == RingKind::RealDomain {
        return Ok((disc / sc(4)).sqrt());
    }
    // largest k with k^2 π^2 <= 4|disc|, using a rational enclosure of π^2
    let lo = Ratio::new(sc::<T>(9_869_604_401), sc::<T>(1_000_000_000));
    let hi = Ratio::new(sc::<T>(9_869_604_402), sc::<T>(1_000_000_000));
    let four_d = Ratio::from_integer(sc::<T>(4) * disc.abs());
    let mut k = T::zero();
    loop {
        let next = k.clone() + T::one();
        let sq = Ratio::from_integer(next.clone() * next.clone());
        if sq.clone() * hi.clone() <= four_d {
            k = next;
        } else {
            assert!(sq * lo.clone() > four_d, "π enclosure too coarse");
            return Ok(k);
        }
    }
}

/// Class group by a breadth-first search of classes generated by the prime
/// ideals below the Minkowski bound, relations from the Cayley graph and the
/// Smith form of the relation matrix.
pub fn compute_class_group<T: Scalar>(ring: &MonogenicRing<T>) -> Result<ClassGroup<T>> {
    let bound = minkowski_bound(ring)?;
    let mut primes: Vec<IdealLattice<T>> = Vec::new();
    let mut p: T = sc(2);
    while p <= bound {
        if is_prime(&p) {
            for (q, deg) in primes_above(ring, &p)? {
                if deg == 1 && !primes.contains(&q) {
                    primes.push(q);
                }
            }
        }
        p = p + T::one();
    }
    for q in &primes {
        let mut pw = q.clone();
        let mut k = 1;
        while pw.is_principal()?.is_none() {
            k += 1;
            if k > EXPONENT_BOUND {
                return Err(Error::ExponentBoundExceeded(EXPONENT_BOUND));
            }
            pw = pw.mul(q)?;
        }
    }

    let k = primes.len();
    let unit = IdealLattice::unit(ring);
    // node: (class key) -> (exponent vector over primes, representative)
    let mut nodes: Vec<(Vec<i64>, IdealLattice<T>)> = vec![(vec![0; k], unit.clone())];
    let mut keys: HashMap<(T, T), usize> = HashMap::from([(unit.class_key()?, 0)]);
    let mut relations: Vec<Vec<T>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (pi, q) in primes.iter().enumerate() {
            let (exps, rep) = nodes[i].clone();
            let next = rep.mul(q)?;
            let key = next.class_key()?;
            let mut step = exps.clone();
            step[pi] += 1;
            match keys.get(&key) {
                Some(&j) => {
                    relations.push(
                        step.iter()
                            .zip(&nodes[j].0)
                            .map(|(a, b)| sc(a - b))
                            .collect(),
                    );
                }
                None => {
                    if nodes.len() >= EXPONENT_BOUND.pow(2) {
                        return Err(Error::ExponentBoundExceeded(EXPONENT_BOUND));
                    }
                    keys.insert(key, nodes.len());
                    nodes.push((step, next));
                    queue.push_back(nodes.len() - 1);
                }
            }
        }
    }

    if k == 0 {
        return Ok(ClassGroup {
            ring: ring.clone(),
            structure: AbelianGroupStructure::trivial(),
            generators: Vec::new(),
            certificates: Vec::new(),
            class_index: BTreeMap::from([(Vec::new(), unit)]),
        });
    }
    let snf = lattice::smith(&relations, k);
    assert_eq!(snf.diag.len(), k, "class group is finite");
    let live: Vec<usize> = (0..k).filter(|&i| !snf.diag[i].is_one()).collect();

    let mut generators = Vec::new();
    let mut certificates = Vec::new();
    for &i in &live {
        let exps = snf.v_inv.row(i).to_vec();
        let g = ideal_from_exponents(ring, &primes, &exps)?;
        // replace by the small BFS representative of the same class
        let key = g.class_key()?;
        let rep = nodes[keys[&key]].1.clone();
        let order = snf.diag[i].clone();
        let pw = rep.pow(order.to_u32().expect("small class group"))?;
        let element = pw
            .is_principal()?
            .expect("generator order certified by the relation lattice");
        generators.push(rep);
        certificates.push(PowerCertificate { order, element });
    }

    let v = &snf.v;
    let mut class_index = BTreeMap::new();
    for (exps, rep) in &nodes {
        let x: Vec<T> = exps.iter().map(|&e| sc(e)).collect();
        let y = v.apply_row(&x);
        let key: Vec<T> = live.iter().map(|&i| y[i].mod_floor(&snf.diag[i])).collect();
        class_index.entry(key).or_insert_with(|| rep.clone());
    }
    let structure =
        AbelianGroupStructure::new(0, live.iter().map(|&i| snf.diag[i].clone()).collect());
    assert_eq!(sc::<T>(class_index.len() as i64), structure.torsion_order());
    Ok(ClassGroup {
        ring: ring.clone(),
        structure,
        generators,
        certificates,
        class_index,
    })
}

fn ideal_from_exponents<T: Scalar>(
    ring: &MonogenicRing<T>,
    primes: &[IdealLattice<T>],
    exps: &[T],
) -> Result<IdealLattice<T>> {
    let mut acc = IdealLattice::unit(ring);
    for (q, e) in primes.iter().zip(exps) {
        let base = if e.is_negative() { q.conj() } else { q.clone() };
        let n = e.abs().to_u32().expect("small exponent");
        acc = acc.mul(&base.pow(n)?)?;
    }
    Ok(acc)
}

/// Count of reduced primitive forms of a negative discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClassNumber {
    pub count: u64,
    /// For a non-fundamental discriminant the count is the class number of
    /// the order of that discriminant.
    pub fundamental: bool,
}

/// Reduced forms `(a, b, c)`: `b^2 - 4ac = disc`, `|b| <= a <= c`, and
/// `b >= 0` whenever `|b| = a` or `a = c`.
pub fn imag_form_class_number<T: Scalar>(disc: &T) -> Result<FormClassNumber> {
    let four: T = sc(4);
    let r = disc.mod_floor(&four);
    if !disc.is_negative() || !(r.is_zero() || r.is_one()) {
        return Err(Error::InvalidInput(format!(
            "{disc} is not a negative discriminant"
        )));
    }
    let n = disc.abs();
    let mut count = 0u64;
    let mut a: T = T::one();
    // a <= sqrt(|disc| / 3)
    while sc::<T>(3) * a.clone() * a.clone() <= n {
        let mut b = -a.clone() + T::one();
        while b <= a {
            let num = b.clone() * b.clone() - disc.clone();
            if num.is_multiple_of(&(four.clone() * a.clone())) {
                let c = num / (four.clone() * a.clone());
                let ok = c >= a && !(b.is_negative() && a == c);
                if ok && a.gcd(&b).gcd(&c).is_one() {
                    count += 1;
                }
            }
            b = b + T::one();
        }
        a = a + T::one();
    }
    let fundamental = if r.is_one() {
        is_squarefree(disc)
    } else {
        let m = disc.clone() / four.clone();
        let rm = m.mod_floor(&four);
        (rm == sc(2) || rm == sc(3)) && is_squarefree(&m)
    };
    Ok(FormClassNumber { count, fundamental })
}
