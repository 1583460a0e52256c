//! Residual nilpotence and finite presentability.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::{ModuleSpec, QSpec, SplitMetabelianGroup};
use crate::error::{Error, Result};
use crate::laurent_poly::cyclotomic_poly;
use crate::scalar::factorize;
use crate::{Int, Matrix, Poly};

/// A yes/no answer with the certificate that decided it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: bool,
    pub reason: String,
}

impl Verdict {
    fn new(value: bool, reason: impl Into<String>) -> Self {
        Verdict {
            value,
            reason: reason.into(),
        }
    }
}

fn divisors(n: &Int) -> Vec<Int> {
    let mut out = vec![Int::one()];
    for (p, e) in factorize(&n.abs()) {
        let mut next = Vec::new();
        for d in &out {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        out = next;
    }
    out
}

/// Integer roots of an ordinary polynomial with nonzero constant term.
fn integer_roots(p: &Poly) -> Vec<Int> {
    let c0 = p.coeff(p.min_deg());
    divisors(&c0)
        .into_iter()
        .flat_map(|d| [d.clone(), -d])
        .filter(|x| {
            p.eval(&Ratio::from_integer(x.clone()))
                .is_ok_and(|v| v.is_zero())
        })
        .collect()
}

fn has_rational_root(f: &Poly) -> bool {
    let f = f.normalized_shift();
    let (lo, hi) = (f.coeff(0), f.coeff(f.max_deg()));
    for p in divisors(&lo) {
        for q in divisors(&hi) {
            for x in [
                Ratio::new(p.clone(), q.clone()),
                Ratio::new(-p.clone(), q.clone()),
            ] {
                if f.eval(&x).is_ok_and(|v| v.is_zero()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Sufficient test for irreducibility over `Z`: primitive and linear, of
/// degree two or three with no rational root, or cyclotomic.
pub(crate) fn known_irreducible(f: &Poly) -> bool {
    let f = f.normalized_shift();
    if !f.content().is_one() {
        return false;
    }
    let deg = f.span();
    match deg {
        0 => false,
        1 => true,
        2 | 3 => !has_rational_root(&f),
        _ => {
            let g = f.primitive_part();
            (2..=(2 * deg * deg + 2) as u64).any(|n| cyclotomic_poly(n).is_ok_and(|c| c == g))
        }
    }
}

/// Characteristic polynomial `det(x - m)`, by interpolation at `0..=n`.
pub(crate) fn charpoly(m: &Matrix) -> Poly {
    let n = m.nrows();
    let xs: Vec<Int> = (0..=n as i64).map(Int::from).collect();
    let ys: Vec<Int> = xs
        .iter()
        .map(|x| Matrix::identity(n).scale(x).sub(m).det())
        .collect();
    // Lagrange over Q
    let mut acc = vec![Ratio::<Int>::zero(); n + 1];
    for i in 0..=n {
        let mut basis = vec![Ratio::<Int>::one()];
        let mut denom = Int::one();
        for j in 0..=n {
            if i == j {
                continue;
            }
            let mut next = vec![Ratio::<Int>::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * Ratio::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let w = Ratio::new(ys[i].clone(), denom);
        for (a, b) in acc.iter_mut().zip(&basis) {
            *a += &w * b;
        }
    }
    Poly::new(0, acc.into_iter().map(|c| c.to_integer()).collect())
}

/// `∩ A I^n = 0` for a lattice: the part of `Z^d` where `N = M - 1` is
/// invertible over `Q` must carry no factor of the characteristic
/// polynomial of `N` with constant term `±1`.
fn lattice_verdict(n: &Matrix) -> Result<Verdict> {
    let d = n.nrows();
    if n.pow(d as u32).is_zero() {
        return Ok(Verdict::new(
            true,
            format!("t - 1 acts nilpotently (N^{d} = 0)"),
        ));
    }
    let cp = charpoly(n);
    // strip powers of x
    let lo = (0..).find(|&k| !cp.coeff(k).is_zero()).unwrap();
    let mut h = cp.shift(-lo);
    let mut factors = Vec::new();
    for r in integer_roots(&h) {
        while let Some(q) = h.div_exact(&Poly::t_minus(r.clone())) {
            factors.push(r.clone());
            h = q;
        }
    }
    if let Some(r) = factors.iter().find(|r| r.abs().is_one()) {
        return Ok(Verdict::new(
            false,
            format!(
                "N = M - 1 has eigenvalue {r}, a unit; t - 1 is invertible on a nonzero summand"
            ),
        ));
    }
    let rest_deg = h.span();
    let c0 = h.coeff(0).abs();
    if rest_deg == 0 || (rest_deg <= 3 && !c0.is_one()) {
        return Ok(Verdict::new(
            true,
            format!("det(x - N) = {cp}: no factor with constant ±1"),
        ));
    }
    if c0.is_one() {
        return Ok(Verdict::new(
            false,
            format!("det(x - N) = {cp} has a factor {h} with constant ±1"),
        ));
    }
    Err(Error::Unsupported(format!("factoring det(x - N) = {cp}")))
}

/// `∩_n A I^n = 0`.
pub fn is_residually_nilpotent(g: &SplitMetabelianGroup) -> Result<Verdict> {
    match &g.module {
        ModuleSpec::FreeRankOne => Ok(Verdict::new(
            true,
            "Z[t,t^-1] is a Noetherian domain and t - 1 is not a unit",
        )),
        ModuleSpec::Ideal(_) => Ok(Verdict::new(
            true,
            "submodule of Z[t,t^-1], where the I-adic filtration separates",
        )),
        ModuleSpec::CyclicModP(p) => Ok(Verdict::new(
            true,
            format!("(Z/{p})[t,t^-1] is a Noetherian domain and t - 1 is not a unit"),
        )),
        ModuleSpec::Lattice(_) => lattice_verdict(&g.z_model().expect("lattice").aug()),
        ModuleSpec::Cyclic(f) => {
            let v = f.eval_at_one();
            if v.abs().is_one() {
                return Ok(Verdict::new(
                    false,
                    format!("f(1) = {v}, so t - 1 is a unit"),
                ));
            }
            if known_irreducible(f) {
                return Ok(Verdict::new(
                    true,
                    format!(
                        "domain with |f(1)| = {} != 1, so t - 1 is not a unit",
                        v.abs()
                    ),
                ));
            }
            match g.z_model() {
                Some(z) => lattice_verdict(&z.aug()),
                None => Err(Error::Unsupported(format!(
                    "residual nilpotence for reducible non-bimonic {f}"
                ))),
            }
        }
    }
}

/// Finite presentability for `Q` of torsion-free rank at most one, through
/// tameness of `A`.
pub fn is_finitely_presentable(g: &SplitMetabelianGroup) -> Result<Verdict> {
    if let QSpec::FiniteCyclic(_) = g.q_spec {
        return match g.z_model() {
            Some(_) => Ok(Verdict::new(
                true,
                "Q finite and A finitely generated abelian: polycyclic",
            )),
            None => Err(Error::Unsupported(
                "finite Q with A not finitely generated".into(),
            )),
        };
    }
    match &g.module {
        ModuleSpec::Cyclic(f) => {
            let (lo, hi) = f.end_coeffs()?;
            let plus = lo.abs().is_one();
            let minus = hi.abs().is_one();
            let mut vals = Vec::new();
            if plus {
                vals.push("v(t) = +1 (f.g. over Z[t])");
            }
            if minus {
                vals.push("v(t) = -1 (f.g. over Z[t^-1])");
            }
            if vals.is_empty() {
                Ok(Verdict::new(
                    false,
                    format!("end coefficients {lo}, {hi} of {f} are not units: not tame"),
                ))
            } else {
                Ok(Verdict::new(
                    true,
                    format!("tame at {}", vals.join(" and ")),
                ))
            }
        }
        ModuleSpec::Lattice(_) => Ok(Verdict::new(
            true,
            "A finitely generated abelian: tame at both valuations",
        )),
        ModuleSpec::FreeRankOne | ModuleSpec::Ideal(_) => Ok(Verdict::new(
            false,
            "not finitely generated over Z[t] or Z[t^-1]: not tame",
        )),
        ModuleSpec::CyclicModP(p) => Ok(Verdict::new(
            false,
            format!("(Z/{p})[t,t^-1] is not finitely generated over Z[t] or Z[t^-1]: not tame"),
        )),
    }
}
