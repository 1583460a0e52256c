//! Named end-to-end scenarios, each a list of checks.

use num_traits::ToPrimitive;
use paraclass_core::cyclotomic::{cyclo23_witness, cyclo_res_nilpotent};
use paraclass_core::metabelian::{
    embedding_demo, laurent_ideal_principal, make_group, para_inclusion_check, para_witness,
    quad_unit_poly, telescope_chain, Submodule, DEFAULT_DEPTH,
};
use paraclass_core::para_class::{bounded_family, classify_para, realize_para_group, FAMILY_BOUND};
use paraclass_core::{Element, Ideal, Int, Matrix, Poly, Ring};
use serde_json::{json, Value};

use crate::{Error, Result};

pub const EXAMPLES: [&str; 6] = [
    "d10",
    "wreath_ideal",
    "zc2",
    "cyclo23",
    "telescope",
    "embedding",
];

/// Depth of the inclusion check in the `d10` scenario.
pub const D10_DEPTH: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub example: String,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn transcript(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}: {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(&format!(
            "{} {}\n",
            if self.pass() { "PASS" } else { "FAIL" },
            self.example
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "example": self.example,
            "pass": self.pass(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    /// Records a failed check instead of propagating a computation error.
    fn run(&mut self, name: &str, f: impl FnOnce() -> paraclass_core::Result<(bool, String)>) {
        match f() {
            Ok((pass, detail)) => self.push(name, pass, detail),
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }
}

fn p(c: &[i64]) -> Poly {
    Poly::from_i64(0, c)
}

fn rows(m: &Matrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().expect("small entries"))
                .collect()
        })
        .collect()
}

fn d10(c: &mut Checks) {
    c.run("matrices", || {
        let ring = Ring::make_ring(&quad_unit_poly(&Int::from(10))?)?;
        let basis = [Element::from_i64(3, 0), Element::from_i64(-2, 1)];
        let j = Ideal::from_generators(&ring, &basis)?;
        let r = realize_para_group(&j, Some(&basis))?;
        let got = [rows(&r.action_j), rows(&r.action_a), rows(&r.inclusion)];
        let want = [
            vec![vec![2, 3], vec![3, 4]],
            vec![vec![0, 1], vec![1, 6]],
            vec![vec![3, -2], vec![0, 1]],
        ];
        Ok((
            got == want && r.commutes(),
            format!("J: {:?}, A: {:?}, inclusion: {:?}", got[0], got[1], got[2]),
        ))
    });
    c.run("principality", || {
        let ring = Ring::make_ring(&quad_unit_poly(&Int::from(10))?)?;
        let j =
            Ideal::from_generators(&ring, &[Element::from_i64(3, 0), Element::from_i64(-2, 1)])?;
        let jj = j.pow(2)?;
        let g = jj.is_principal()?;
        let detail = match &g {
            Some(g) => format!("J = {j} is not principal; J^2 = ({})", ring.render(g)),
            None => format!("J^2 = {jj} is not principal"),
        };
        Ok((j.is_principal()?.is_none() && g.is_some(), detail))
    });
    c.run("inclusion", || {
        let g = make_group("quad:10")?;
        let r = para_inclusion_check(&Submodule::new(vec![p(&[3]), p(&[-2, 1])]), &g, D10_DEPTH)?;
        Ok((
            r.pass,
            format!("J -> A bijective on the quotients by gamma_n, n <= {D10_DEPTH}"),
        ))
    });
}

fn wreath_ideal(c: &mut Checks) {
    let gens = vec![p(&[-1, 2]), p(&[2, -1])];
    c.run("non-principal", || {
        let v = laurent_ideal_principal(&gens, None)?;
        let nf = v
            .normal_form
            .as_ref()
            .map(|(m, h)| format!("({m}, {h})"))
            .unwrap_or_default();
        Ok((
            !v.principal && nf == "(3, t - 2)",
            format!("(2t - 1, 2 - t) = {nf}, not principal"),
        ))
    });
    c.run("para-equivalence", || {
        let w = para_witness(&Submodule::new(gens.clone()), &make_group("wreath_zz")?)?;
        Ok((
            w.forward.pass && w.backward.pass,
            format!(
                "s = {} in J, both inclusions bijective to depth {DEFAULT_DEPTH}",
                w.s
            ),
        ))
    });
}

fn zc2(c: &mut Checks) {
    c.run("bounded family", || {
        let ring = Ring::make_ring(&p(&[-1, 0, 1]))?;
        let f = bounded_family(&ring, FAMILY_BOUND)?;
        let witness = f.non_fractional_non_principal.as_ref().map(|j| j.to_string()).unwrap_or_default();
        Ok((
            f.s_fractional > 0 && f.s_fractional == f.s_fractional_principal && f.non_fractional_non_principal.is_some(),
            format!(
                "{} ideals with entries <= {}: {} S-fractional, all principal; {witness} avoids S and is not principal",
                f.ideals, f.bound, f.s_fractional
            ),
        ))
    });
    c.run("classification", || {
        let r = classify_para(&make_group("zc2")?)?;
        Ok((r.count == 1, format!("{} class: {}", r.count, r.reason)))
    });
}

fn cyclo23(c: &mut Checks) {
    c.run("criterion", || {
        let r = cyclo_res_nilpotent(23)?;
        Ok((
            r.residually_nilpotent && r.phi_at_one == Int::from(23),
            format!("Phi_23(1) = {}", r.phi_at_one),
        ))
    });
    c.run("witness", || {
        let w = cyclo23_witness()?;
        Ok((
            w.form_class_number == 3 && !w.principal && w.s_fractional && w.unit_ideal_principal,
            format!(
                "h({}) = {}; {} is S-fractional and not principal; {}",
                w.disc, w.form_class_number, w.ideal, w.lift_note
            ),
        ))
    });
}

fn telescope(c: &mut Checks) {
    c.run("chain", || {
        let r = telescope_chain(&make_group("quad:10")?, &[p(&[5, 2])], 4)?;
        let indices: Vec<String> = r.stages.iter().map(|s| s.index.to_string()).collect();
        let ok = r.strictly_ascending
            && r.stages
                .iter()
                .all(|s| s.iso_equivariant && s.square_commutes != Some(false))
            && r.stages
                .iter()
                .all(|s| s.index == Int::from(81).pow(s.k as u32));
        Ok((ok, format!("s = 2t + 5, indices {}", indices.join(", "))))
    });
    c.run("unit denominator", || {
        let r = telescope_chain(&make_group("quad:10")?, &[Poly::one()], 3)?;
        Ok((r.constant, "s = 1 gives a constant chain".into()))
    });
}

fn embedding(c: &mut Checks) {
    let r = embedding_demo();
    c.push("inverse", r.inverse_ok, "(1 + t)(1 + t)^-1 = 1");
    c.push(
        "cyclic",
        r.cyclic_ok,
        format!(
            "{} targets t^m (1+t)^-j with |m| <= {} lie in the orbit span of b",
            r.cyclic_targets, r.cyclic_window
        ),
    );
    c.push(
        "embedding",
        r.embed_ok,
        format!("t^k b independent for |k| <= {}", r.embed_range),
    );
    for s in &r.derivation {
        c.push(
            &format!("step {}", s.expression),
            s.verified && s.trivial_in_model,
            format!("{} ({:?})", s.word, s.justification),
        );
    }
    c.push("conclusion", r.derivation_ok, r.conclusion.clone());
}

pub fn verify_example(name: &str) -> Result<Verification> {
    let mut c = Checks(Vec::new());
    match name {
        "d10" => d10(&mut c),
        "wreath_ideal" => wreath_ideal(&mut c),
        "zc2" => zc2(&mut c),
        "cyclo23" => cyclo23(&mut c),
        "telescope" => telescope(&mut c),
        "embedding" => embedding(&mut c),
        _ => return Err(Error::UnknownExample(name.into())),
    }
    Ok(Verification {
        example: name.into(),
        checks: c.0,
    })
}
