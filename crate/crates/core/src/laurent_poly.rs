//! Integer Laurent polynomials, the group ring `Z[t, t^-1]` of an infinite
//! cyclic group, together with the abelian-group structure of its finite
//! quotients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::scalar::{sc, Scalar};

/// `sum coeffs[i] * t^(min_deg + i)`, kept canonical: no zero coefficient at
/// either end, and the zero polynomial is `min_deg = 0` with no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<T> {
    min_deg: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn new(min_deg: i64, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            min_deg: min_deg + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn from_i64(min_deg: i64, coeffs: &[i64]) -> Self {
        Self::new(min_deg, coeffs.iter().map(|&c| sc(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_deg: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(c: T, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `t - a`.
    pub fn t_minus(a: T) -> Self {
        Self::new(0, vec![-a, T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.coeffs.len() as i64 - 1
    }

    /// Width of the degree window, `max_deg - min_deg` (0 for monomials).
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> T {
        let i = k - self.min_deg;
        if i < 0 || i >= self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.min_deg,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the ring automorphism `t -> t^-1`.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(-self.max_deg(), c)
    }

    /// Coefficients of the minimal- and maximal-degree terms.
    pub fn end_coeffs(&self) -> Result<(T, T)> {
        match (self.coeffs.first(), self.coeffs.last()) {
            (Some(lo), Some(hi)) => Ok((lo.clone(), hi.clone())),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    /// Both extreme coefficients are `±1`, so `Z[t,t^-1]/(self)` is free of
    /// rank `span()` with `t` acting invertibly.
    pub fn is_bimonic(&self) -> bool {
        self.end_coeffs()
            .is_ok_and(|(lo, hi)| lo.abs().is_one() && hi.abs().is_one())
    }

    /// Exact value at a nonzero rational.
    pub fn eval(&self, x: &Ratio<T>) -> Result<Ratio<T>> {
        if x.is_zero() {
            return Err(Error::EvaluationAtZero);
        }
        // Horner on the ordinary part, then the monomial factor
        let mut acc = Ratio::<T>::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + Ratio::from_integer(c.clone());
        }
        let k = self.min_deg;
        let xk = if k >= 0 {
            num_traits::pow(x.clone(), k as usize)
        } else {
            num_traits::pow(x.recip(), (-k) as usize)
        };
        Ok(acc * xk)
    }

    /// Value at `t = 1`, the coefficient sum.
    pub fn eval_at_one(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |a, c| a + c.clone())
    }

    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content; the sign is chosen so the top coefficient is positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        Self::new(
            self.min_deg,
            self.coeffs.iter().map(|c| c.clone() / g.clone()).collect(),
        )
    }

    /// Shift to an ordinary polynomial with nonzero constant term.
    pub fn normalized_shift(&self) -> Self {
        self.shift(-self.min_deg)
    }

    /// Exact quotient in `Z[t, t^-1]`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let shift = self.min_deg - d.min_deg;
        let mut rem: Vec<T> = self.coeffs.clone();
        let dc = &d.coeffs;
        let dl = dc.len();
        if rem.len() < dl {
            return None;
        }
        let lead = dc.last().unwrap();
        let mut q = vec![T::zero(); rem.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = rem[i + dl - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qq, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in dc.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - qq.clone() * c.clone();
            }
            q[i] = qq;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(shift, q))
        } else {
            None
        }
    }

    /// `self(M)` where `M` acts on row vectors; negative powers need `M^-1`.
    pub fn eval_matrix(
        &self,
        m: &IntMatrix<T>,
        m_inv: Option<&IntMatrix<T>>,
    ) -> Result<IntMatrix<T>> {
        let n = m.nrows();
        if self.is_zero() {
            return Ok(IntMatrix::zero(n, n));
        }
        let base = if self.min_deg < 0 {
            let inv = m_inv.ok_or_else(|| {
                Error::InvalidInput("negative powers need an invertible action".into())
            })?;
            inv.pow((-self.min_deg) as u32)
        } else {
            m.pow(self.min_deg as u32)
        };
        // Horner in M on the ordinary part
        let mut acc = IntMatrix::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&IntMatrix::identity(n).scale(c));
        }
        Ok(base.mul(&acc))
    }
}

impl<T: Scalar> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_deg.min(rhs.min_deg);
        let hi = self.max_deg().max(rhs.max_deg());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl<T: Scalar> Neg for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.min_deg + rhs.min_deg, out)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for LaurentPoly<T> {
            type Output = LaurentPoly<T>;
            fn $m(self, rhs: LaurentPoly<T>) -> LaurentPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<T: Scalar> Neg for LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn neg(self) -> LaurentPoly<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let k = self.min_deg + i as i64;
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// A finitely generated abelian group `Z^free_rank x Z/d1 x ... x Z/dk`
/// with `d1 | d2 | ... | dk`, all `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure<T> {
    pub free_rank: usize,
    pub invariant_factors: Vec<T>,
}

impl<T: Scalar> AbelianGroupStructure<T> {
    /// Normalizes arbitrary cyclic orders into the divisibility chain.
    pub fn new(free_rank: usize, factors: Vec<T>) -> Self {
        let mut f: Vec<T> = factors
            .into_iter()
            .map(|x| x.abs())
            .filter(|x| !x.is_one())
            .collect();
        // zero orders are free summands
        let zeros = f.iter().filter(|x| x.is_zero()).count();
        f.retain(|x| !x.is_zero());
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let g = f[i].gcd(&f[j]);
                let l = f[i].lcm(&f[j]);
                f[i] = g;
                f[j] = l;
            }
        }
        f.retain(|x| !x.is_one());
        AbelianGroupStructure {
            free_rank: free_rank + zeros,
            invariant_factors: f,
        }
    }

    pub fn trivial() -> Self {
        AbelianGroupStructure {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: T) -> Self {
        Self::new(0, vec![n])
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> T {
        self.invariant_factors
            .iter()
            .fold(T::one(), |a, b| a * b.clone())
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<T> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Direct product.
    pub fn product(&self, other: &Self) -> Self {
        let mut f = self.invariant_factors.clone();
        f.extend(other.invariant_factors.iter().cloned());
        Self::new(self.free_rank + other.free_rank, f)
    }
}

impl<T: Scalar> fmt::Display for AbelianGroupStructure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

/// The `n`-th cyclotomic polynomial, by exact division of `t^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic_poly<T: Scalar>(n: u64) -> Result<LaurentPoly<T>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "cyclotomic index must be positive".into(),
        ));
    }
    let mut cache: Vec<(u64, LaurentPoly<T>)> = Vec::new();
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    for &m in &divisors {
        let mut p = &LaurentPoly::monomial(T::one(), m as i64) - &LaurentPoly::one();
        for (d, phi) in &cache {
            if m % d == 0 && *d != m {
                p = p.div_exact(phi).expect("cyclotomic factor divides t^m - 1");
            }
        }
        cache.push((m, p));
    }
    Ok(cache.pop().unwrap().1)
}

/// Companion matrix of multiplication by `t` on `Z[t]/(f)` in the basis
/// `1, t, ..., t^(d-1)`, row convention. `f` must be an ordinary polynomial
/// with leading coefficient `±1` and degree at least one.
pub fn companion<T: Scalar>(f: &LaurentPoly<T>) -> IntMatrix<T> {
    assert!(
        f.min_deg() >= 0 && f.max_deg() >= 1,
        "companion of a non-ordinary polynomial"
    );
    let d = f.max_deg() as usize;
    let lead = f.coeff(d as i64);
    assert!(
        lead.abs().is_one(),
        "companion needs a unit leading coefficient"
    );
    let mut m = IntMatrix::zero(d, d);
    for i in 0..d - 1 {
        m[(i, i + 1)] = T::one();
    }
    for j in 0..d {
        // t^d = -(a_0 + ... + a_{d-1} t^{d-1}) / lead
        m[(d - 1, j)] = -(f.coeff(j as i64) * lead.clone());
    }
    m
}

/// Resultant of two ordinary polynomials (Sylvester determinant).
pub fn resultant<T: Scalar>(f: &LaurentPoly<T>, g: &LaurentPoly<T>) -> T {
    if f.is_zero() || g.is_zero() {
        return T::zero();
    }
    let f = f.normalized_shift();
    let g = g.normalized_shift();
    let m = f.max_deg() as usize;
    let n = g.max_deg() as usize;
    if m + n == 0 {
        return T::one();
    }
    let size = m + n;
    let mut s = IntMatrix::zero(size, size);
    for i in 0..n {
        for k in 0..=m {
            s[(i, i + k)] = f.coeff((m - k) as i64);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s[(n + i, i + k)] = g.coeff((n - k) as i64);
        }
    }
    s.det()
}

/// Pseudo-remainder of ordinary polynomials.
fn pseudo_rem<T: Scalar>(a: &LaurentPoly<T>, b: &LaurentPoly<T>) -> LaurentPoly<T> {
    let mut r = a.clone();
    let db = b.max_deg();
    let lb = b.coeff(db);
    while !r.is_zero() && r.max_deg() >= db {
        let dr = r.max_deg();
        let lr = r.coeff(dr);
        r = &r.scale(&lb) - &b.shift(dr - db).scale(&lr);
    }
    r
}

/// Greatest common divisor in `Z[t, t^-1]`, normalized to an ordinary
/// polynomial with nonzero constant term and positive leading coefficient.
pub fn poly_gcd<T: Scalar>(f: &LaurentPoly<T>, g: &LaurentPoly<T>) -> LaurentPoly<T> {
    if f.is_zero() {
        return g.normalized_shift().primitive_part().scale(&g.content());
    }
    if g.is_zero() {
        return f.normalized_shift().primitive_part().scale(&f.content());
    }
    let c = f.content().gcd(&g.content());
    let mut a = f.normalized_shift().primitive_part();
    let mut b = g.normalized_shift().primitive_part();
    if a.max_deg() < b.max_deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            r.normalized_shift().primitive_part()
        };
    }
    a.normalized_shift().primitive_part().scale(&c)
}

/// Reduce coefficients into `[0, p)`.
pub fn reduce_mod<T: Scalar>(f: &LaurentPoly<T>, p: &T) -> LaurentPoly<T> {
    LaurentPoly::new(
        f.min_deg(),
        f.coeffs().iter().map(|c| c.mod_floor(p)).collect(),
    )
}

/// Monic gcd over `F_p[t, t^-1]` (normalized ordinary polynomial). Returns
/// zero when both inputs vanish mod `p`.
pub fn gcd_mod_p<T: Scalar>(f: &LaurentPoly<T>, g: &LaurentPoly<T>, p: &T) -> LaurentPoly<T> {
    let make_monic = |h: &LaurentPoly<T>| -> LaurentPoly<T> {
        if h.is_zero() {
            return LaurentPoly::zero();
        }
        let h = h.normalized_shift();
        let inv = crate::scalar::inv_mod(&h.coeff(h.max_deg()), p).expect("p is prime");
        reduce_mod(&h.scale(&inv), p)
    };
    let mut a = make_monic(&reduce_mod(f, p));
    let mut b = make_monic(&reduce_mod(g, p));
    while !b.is_zero() {
        // a mod b with b monic
        let mut r = a.clone();
        while !r.is_zero() && r.max_deg() >= b.max_deg() {
            let lr = r.coeff(r.max_deg());
            r = reduce_mod(&(&r - &b.shift(r.max_deg() - b.max_deg()).scale(&lr)), p);
        }
        a = b;
        b = make_monic(&r);
    }
    a
}

fn ordinary_rows<T: Scalar>(
    gens: &[LaurentPoly<T>],
    c: &IntMatrix<T>,
    extra_scalar: Option<&T>,
) -> Vec<Vec<T>> {
    let d = c.nrows();
    let mut rows = Vec::new();
    for g in gens {
        let gm = g.eval_matrix(c, None).expect("ordinary polynomial");
        rows.extend(gm.to_rows());
    }
    if let Some(r) = extra_scalar {
        rows.extend(IntMatrix::<T>::identity(d).scale(r).to_rows());
    }
    rows
}

/// Structure of the stable image `t^N L` of `t` acting on the finite group
/// `L = Z^d / rel`; isomorphic to the localization `L[1/t]`.
fn stable_image<T: Scalar>(c: &IntMatrix<T>, rel: &[Vec<T>]) -> Result<AbelianGroupStructure<T>> {
    let d = c.nrows();
    let whole = lattice::cokernel(rel, d);
    if !whole.is_finite() {
        return Err(Error::NotFinitelyGenerated("quotient is infinite".into()));
    }
    // entries of t^k only matter modulo the exponent of L
    let exponent = whole
        .invariant_factors
        .last()
        .cloned()
        .unwrap_or_else(T::one);
    let mut power = IntMatrix::identity(d);
    let mut prev: Option<T> = None;
    loop {
        let rows = power
            .mul(c)
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|x| x.mod_floor(&exponent)).collect())
            .collect();
        power = IntMatrix::from_rows(rows, d);
        let mut gens = power.to_rows();
        gens.extend(rel.iter().cloned());
        let img = lattice::quotient(&gens, rel, d)?;
        let ord = img
            .order()
            .ok_or_else(|| Error::NotFinitelyGenerated("image is infinite".into()))?;
        if prev.as_ref() == Some(&ord) {
            return Ok(img);
        }
        prev = Some(ord);
    }
}

/// Abelian-group structure of `Z[t, t^-1] / (g1, g2)`.
///
/// A generator whose extreme coefficients are `±1` presents the quotient as a
/// cokernel on `Z^deg`. Otherwise the resultant `r` of the pair lies in the
/// ideal, a generator with leading coefficient prime to `r` is made monic
/// modulo `r`, and the localization at `t` is read off as the stable image of
/// `t` on the resulting finite group.
pub fn finite_quotient<T: Scalar>(
    g1: &LaurentPoly<T>,
    g2: &LaurentPoly<T>,
) -> Result<AbelianGroupStructure<T>> {
    if g1.is_zero() && g2.is_zero() {
        return Err(Error::InvalidInput("both generators are zero".into()));
    }
    let gens: Vec<LaurentPoly<T>> = [g1, g2]
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.normalized_shift())
        .collect();

    if gens
        .iter()
        .any(|g| g.span() == 0 && g.coeff(g.min_deg()).abs().is_one())
    {
        return Ok(AbelianGroupStructure::trivial());
    }

    for reversed in [false, true] {
        let gens: Vec<LaurentPoly<T>> = if reversed {
            gens.iter()
                .map(|g| g.reversed().normalized_shift())
                .collect()
        } else {
            gens.clone()
        };
        // bimonic generator: the quotient is a cokernel on Z^deg
        if let Some(h) = gens.iter().find(|g| g.span() >= 1 && g.is_bimonic()) {
            let c = companion(h);
            let rows = ordinary_rows(&gens, &c, None);
            return Ok(lattice::cokernel(&rows, c.nrows()));
        }
        // monic generator with non-unit constant term
        if let Some(h) = gens
            .iter()
            .find(|g| g.span() >= 1 && g.coeff(g.max_deg()).abs().is_one())
        {
            let c = companion(h);
            let rows = ordinary_rows(&gens, &c, None);
            let l = lattice::cokernel(&rows, c.nrows());
            if !l.is_finite() {
                return Err(Error::NotFinitelyGenerated(format!(
                    "Z[t]/({h}) has infinite rank and t is not invertible on it"
                )));
            }
            return stable_image(&c, &rows);
        }
    }

    if gens.len() == 2 {
        let r = resultant(&gens[0], &gens[1]).abs();
        if !r.is_zero() {
            for reversed in [false, true] {
                let gens: Vec<LaurentPoly<T>> = if reversed {
                    gens.iter()
                        .map(|g| g.reversed().normalized_shift())
                        .collect()
                } else {
                    gens.clone()
                };
                for g in &gens {
                    if g.span() == 0 {
                        continue;
                    }
                    let Some(u) = crate::scalar::inv_mod(&g.coeff(g.max_deg()), &r) else {
                        continue;
                    };
                    // h = u*g reduced mod r, leading coefficient exactly 1
                    let mut h = reduce_mod(&g.scale(&u), &r);
                    let top = h.max_deg();
                    h = &h + &LaurentPoly::monomial(T::one() - h.coeff(top), top);
                    let c = companion(&h);
                    let rows = ordinary_rows(&gens, &c, Some(&r));
                    return stable_image(&c, &rows);
                }
            }
        }
    }
    Err(Error::NotFinitelyGenerated(format!(
        "Z[t,t^-1]/({g1}, {g2}) is not finitely generated as an abelian group"
    )))
}

impl<T: Scalar> PartialOrd for LaurentPoly<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for LaurentPoly<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.min_deg, &self.coeffs).cmp(&(other.min_deg, &other.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<i64>;

    fn p(min: i64, c: &[i64]) -> P {
        P::from_i64(min, c)
    }

    #[test]
    fn canonical_form() {
        let a = p(-2, &[0, 0, 3, 0]);
        assert_eq!(a, p(0, &[3]));
        assert_eq!(p(5, &[0, 0]), P::zero());
        assert_eq!(P::zero().min_deg(), 0);
        assert!(P::zero().coeffs().is_empty());
    }

    #[test]
    fn multiplication_examples() {
        let tm2 = P::t_minus(2);
        let tp2 = p(0, &[2, 1]);
        assert_eq!(&tm2 * &tp2, p(0, &[-4, 0, 1]));
        assert_eq!(&tm2 * &P::one(), tm2);
        // (2t - 1)(2 - t), schoolbook: -2t^2 + 5t - 2
        assert_eq!(&p(0, &[-1, 2]) * &p(0, &[2, -1]), p(0, &[-2, 5, -2]));
    }

    #[test]
    fn evaluation() {
        let one = Ratio::from_integer(1i64);
        assert_eq!(
            p(0, &[-1, -6, 1]).eval(&one).unwrap(),
            Ratio::from_integer(-6)
        );
        assert_eq!(
            p(0, &[1, -1, 1]).eval(&one).unwrap(),
            Ratio::from_integer(1)
        );
        assert_eq!(P::t_minus(1).eval(&one).unwrap(), Ratio::from_integer(0));
        assert_eq!(
            P::t().eval(&Ratio::from_integer(0)),
            Err(Error::EvaluationAtZero)
        );
        // 3t^-1 + 5t^2 at 1/2 = 6 + 5/4
        assert_eq!(
            p(-1, &[3, 0, 0, 5]).eval(&Ratio::new(1, 2)).unwrap(),
            Ratio::new(29, 4)
        );
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic_poly::<i64>(1).unwrap(), P::t_minus(1));
        assert_eq!(cyclotomic_poly::<i64>(4).unwrap(), p(0, &[1, 0, 1]));
        assert_eq!(cyclotomic_poly::<i64>(6).unwrap(), p(0, &[1, -1, 1]));
        assert_eq!(
            cyclotomic_poly::<BigInt>(23).unwrap(),
            LaurentPoly::from_i64(0, &[1; 23])
        );
        assert!(cyclotomic_poly::<i64>(0).is_err());
    }

    #[test]
    fn end_coefficients() {
        assert_eq!(P::t_minus(2).end_coeffs().unwrap(), (-2, 1));
        assert_eq!(p(0, &[-1, -6, 1]).end_coeffs().unwrap(), (-1, 1));
        assert_eq!(p(-1, &[3, 0, 0, 5]).end_coeffs().unwrap(), (3, 5));
        assert_eq!(P::zero().end_coeffs(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn finite_quotient_examples() {
        let f = p(0, &[-1, -6, 1]);
        assert_eq!(
            finite_quotient(&f, &P::t_minus(1)).unwrap(),
            AbelianGroupStructure::cyclic(6)
        );
        assert!(finite_quotient(&P::t_minus(2), &P::t_minus(1))
            .unwrap()
            .is_trivial());
        assert_eq!(
            finite_quotient(&P::zero(), &P::t_minus(1)).unwrap(),
            AbelianGroupStructure::free(1)
        );
        // both generators non-monic: (2t - 1, 2 - t) gives Z/3
        assert_eq!(
            finite_quotient(&p(0, &[-1, 2]), &p(0, &[2, -1])).unwrap(),
            AbelianGroupStructure::cyclic(3)
        );
        // (2, (t-1)^3): (Z/2)^3
        let q = finite_quotient(&P::constant(2), &P::t_minus(1).pow(3)).unwrap();
        assert_eq!(q, AbelianGroupStructure::new(0, vec![2, 2, 2]));
        assert!(matches!(
            finite_quotient(&P::t_minus(2), &P::zero()),
            Err(Error::NotFinitelyGenerated(_))
        ));
        assert!(finite_quotient(&P::zero(), &P::zero()).is_err());
    }

    #[test]
    fn gcds_and_resultants() {
        let a = &P::t_minus(1) * &P::t_minus(2);
        let b = &P::t_minus(2) * &P::t_minus(3);
        assert_eq!(poly_gcd(&a, &b), P::t_minus(2));
        assert_eq!(resultant(&p(0, &[-1, 2]), &p(0, &[2, -1])).abs(), 3);
        assert_eq!(resultant(&a, &b), 0);
        // mod 3 both are multiples of t + 1
        assert_eq!(
            gcd_mod_p(&p(0, &[-1, 2]), &p(0, &[2, -1]), &3),
            p(0, &[1, 1])
        );
    }

    #[test]
    fn structure_normalization() {
        let g = AbelianGroupStructure::new(0, vec![4i64, 6, 1]);
        assert_eq!(g.invariant_factors, vec![2, 12]);
        assert_eq!(g.order(), Some(24));
        assert_eq!(g.to_string(), "Z/2 x Z/12");
        assert_eq!(AbelianGroupStructure::<i64>::trivial().to_string(), "0");
        assert_eq!(AbelianGroupStructure::new(2, vec![0i64]).free_rank, 3);
    }

    #[test]
    fn display() {
        assert_eq!(p(0, &[-1, -6, 1]).to_string(), "t^2 - 6*t - 1");
        assert_eq!(p(-1, &[3, 0, 0, 5]).to_string(), "5*t^2 + 3*t^-1");
    }
}
