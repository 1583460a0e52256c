//! The integer scalar abstraction shared by every arithmetic module.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalars: machine integers (`i64`, `i128`) or `BigInt`.
///
/// Machine widths are handy for fast property tests; the crate-level aliases
/// use `BigInt` so that nothing overflows.
pub trait Scalar:
    Integer
    + Signed
    + Roots
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Lift a small constant into the scalar type.
#[inline]
pub fn sc<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("constant fits every scalar type")
}

/// Non-negative gcd.
#[inline]
pub fn gcd<T: Scalar>(a: &T, b: &T) -> T {
    a.gcd(b)
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd<T: Scalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, nr);
        let ns = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, ns);
        let nt = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m > 1`, if it exists, in `[0, m)`.
pub fn inv_mod<T: Scalar>(a: &T, m: &T) -> Option<T> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    if g.is_one() {
        Some(x.mod_floor(m))
    } else {
        None
    }
}

/// Whether `n` is a perfect square (negative numbers never are).
pub fn is_square<T: Scalar>(n: &T) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    r.clone() * r == *n
}

/// Trial-division factorization of `|n|`, primes in increasing order.
pub fn factorize<T: Scalar>(n: &T) -> Vec<(T, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p: T = sc(2);
    while p.clone() * p.clone() <= n {
        let mut e = 0u32;
        while (n.clone() % p.clone()).is_zero() {
            n = n / p.clone();
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p = p + T::one();
    }
    if n > T::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_prime<T: Scalar>(n: &T) -> bool {
    let f = factorize(n);
    *n > T::one() && f.len() == 1 && f[0].1 == 1
}

pub fn is_squarefree<T: Scalar>(n: &T) -> bool {
    !n.is_zero() && factorize(n).iter().all(|(_, e)| *e == 1)
}

/// `p` is a prime power `p^k` with `k >= 1`.
pub fn is_prime_power<T: Scalar>(n: &T) -> bool {
    *n > T::one() && factorize(n).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(240i64, 46i64), (-7, 3), (0, 5), (12, -18)] {
            let (g, x, y) = ext_gcd(&a, &b);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn factorization_and_predicates() {
        assert_eq!(factorize(&360i64), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_prime_power(&BigInt::from(32)));
        assert!(!is_prime_power(&6i64));
        assert!(is_squarefree(&82i64));
        assert!(!is_squarefree(&12i64));
        assert!(is_square(&49i128));
        assert!(!is_square(&-4i64));
        assert_eq!(inv_mod(&3i64, &7), Some(5));
        assert_eq!(inv_mod(&2i64, &4), None);
    }
}
