//! Principality of ideals of `Z[t, t^-1]` and `(Z/p)[t, t^-1]`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent_poly::{finite_quotient, gcd_mod_p, poly_gcd, reduce_mod, resultant};
use crate::scalar::factorize;
use crate::{Int, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentIdealVerdict {
    pub principal: bool,
    pub generator: Option<Poly>,
    /// `gcd` of the generators; `J = common_factor · J'`.
    pub common_factor: Poly,
    /// Primes `p` with `J' + (p) != (1)`, with the generator of `J'` mod `p`.
    pub obstructions: Vec<(Int, Poly)>,
    /// `J' = (m, h)` when a single obstruction accounts for all of `R/J'`.
    pub normal_form: Option<(Int, Poly)>,
}

/// Lift of a polynomial mod `p`; a monic linear `t + c` becomes `t - a`
/// with `a` in `[0, p)`.
fn lift(h: &Poly, p: &Int) -> Poly {
    let h = h.normalized_shift();
    if h.span() == 1 && h.coeff(1).is_one() {
        return Poly::t_minus((-h.coeff(0)).mod_floor(p));
    }
    Poly::new(0, h.coeffs().iter().map(|c| c.mod_floor(p)).collect())
}

fn is_monomial(p: &Poly) -> bool {
    !p.is_zero() && p.span() == 0
}

/// Over `Z/p` when `modulus` is given, otherwise over `Z`.
pub fn laurent_ideal_principal(
    gens: &[Poly],
    modulus: Option<&Int>,
) -> Result<LaurentIdealVerdict> {
    if let Some(p) = modulus {
        let h = gens
            .iter()
            .fold(Poly::zero(), |acc, g| gcd_mod_p(&acc, g, p));
        if h.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let generator = if is_monomial(&h) {
            Poly::one()
        } else {
            h.normalized_shift()
        };
        return Ok(LaurentIdealVerdict {
            principal: true,
            generator: Some(generator.clone()),
            common_factor: generator,
            obstructions: Vec::new(),
            normal_form: None,
        });
    }
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let g = gens[1..]
        .iter()
        .fold(gens[0].normalized_shift(), |acc, x| poly_gcd(&acc, x));
    let reduced: Vec<Poly> = gens
        .iter()
        .map(|x| x.normalized_shift().div_exact(&g).expect("gcd divides"))
        .collect();
    let principal_verdict = |g: Poly| LaurentIdealVerdict {
        principal: true,
        generator: Some(g.clone()),
        common_factor: g,
        obstructions: Vec::new(),
        normal_form: None,
    };
    if reduced.len() == 1 {
        return Ok(principal_verdict(g));
    }
    // a nonzero integer in J' = (reduced)
    let mut m = Int::zero();
    for k in 0..32i64 {
        let mut combo = Poly::zero();
        let mut w = Int::one();
        for x in &reduced[1..] {
            combo = &combo + &x.scale(&w);
            w *= Int::from(k);
        }
        m = resultant(&reduced[0], &combo);
        if !m.is_zero() {
            break;
        }
    }
    if m.is_zero() {
        return Err(Error::Unsupported("no integer found in the ideal".into()));
    }
    let mut obstructions = Vec::new();
    for (p, _) in factorize(&m.abs()) {
        let h = reduced
            .iter()
            .fold(Poly::zero(), |acc, x| gcd_mod_p(&acc, x, &p));
        if !is_monomial(&h) {
            let h = reduce_mod(&h, &p);
            obstructions.push((p.clone(), lift(&h, &p)));
        }
    }
    if obstructions.is_empty() {
        return Ok(principal_verdict(g));
    }
    let normal_form = match (obstructions.as_slice(), reduced.as_slice()) {
        ([(p, h)], [a, b]) => {
            let ours = finite_quotient(a, b)?;
            let theirs = finite_quotient(&Poly::constant(p.clone()), h)?;
            (ours.order().is_some() && ours.order() == theirs.order())
                .then(|| (p.clone(), h.clone()))
        }
        _ => None,
    };
    Ok(LaurentIdealVerdict {
        principal: false,
        generator: None,
        common_factor: g,
        obstructions,
        normal_form,
    })
}
