//! `Z ⋉ Z[ζ_n]`: the residual nilpotence criterion and a non-principal
//! S-fractional ideal for `n = 23`, certified in the quadratic subfield.

use num_traits::{One, Signed};

use crate::class_group::imag_form_class_number;
use crate::error::Result;
use crate::laurent_poly::cyclotomic_poly;
use crate::para_class::cyclo_pid_quoted;
use crate::scalar::is_prime_power;
use crate::{Element, Ideal, Int, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloReport {
    pub n: u64,
    pub phi_at_one: Int,
    /// `ζ_n - 1` is not a unit.
    pub residually_nilpotent: bool,
    pub prime_power: bool,
    /// Quoted: `Z[ζ_n]` is a principal ideal domain (`Some(false)` for 23).
    pub pid_known: Option<bool>,
    pub witness: Option<Cyclo23Witness>,
}

pub fn cyclo_res_nilpotent(n: u64) -> Result<CycloReport> {
    let phi_at_one = cyclotomic_poly::<Int>(n)?.eval_at_one();
    let residually_nilpotent = !phi_at_one.abs().is_one();
    let prime_power = is_prime_power(&(n as i64));
    let pid_known = if n == 23 {
        Some(false)
    } else if cyclo_pid_quoted(n) || n < 23 {
        Some(true)
    } else {
        None
    };
    let witness = if n == 23 {
        Some(cyclo23_witness()?)
    } else {
        None
    };
    Ok(CycloReport {
        n,
        phi_at_one,
        residually_nilpotent,
        prime_power,
        pid_known,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclo23Witness {
    pub disc: Int,
    pub form_class_number: u64,
    /// `(2, ω)` with `ω = (1 + √-23)/2`.
    pub ideal: Ideal,
    pub principal: bool,
    /// Coprime to the prime `(√-23)` below `(ζ_23 - 1)`.
    pub s_fractional: bool,
    pub unit_ideal_principal: bool,
    pub lift_note: String,
}

/// In `Q(√-23) ⊂ Q(ζ_23)` the ideal `(2, ω)` has order 3 in the class group
/// and avoids the prime below `ζ_23 - 1`.
pub fn cyclo23_witness() -> Result<Cyclo23Witness> {
    let d = Int::from(-23);
    let ring = Ring::maximal_order(&d)?;
    let form_class_number = imag_form_class_number(&d)?.count;
    let omega = Element::theta();
    let ideal = Ideal::from_generators(&ring, &[Element::from_i64(2, 0), omega.clone()])?;
    let principal = ideal.is_principal()?.is_some();
    // √-23 = 2ω - 1 generates the ramified prime above 23
    let ramified = Ideal::principal(&ring, &Element::from_i64(-1, 2))?;
    let s_fractional = ideal.add(&ramified)? == Ideal::unit(&ring);
    let unit_ideal_principal = Ideal::unit(&ring).is_principal()?.is_some();
    Ok(Cyclo23Witness {
        disc: d,
        form_class_number,
        ideal,
        principal,
        s_fractional,
        unit_ideal_principal,
        lift_note:
            "non-principality is certified in Q(√-23); the lift to Z[ζ_23] is quoted, not computed"
                .into(),
    })
}
