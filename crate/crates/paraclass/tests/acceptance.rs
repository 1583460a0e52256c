//! One PASS/FAIL line per acceptance criterion, with timings against fixed limits.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use paraclass::{run_scan, verify_example, PAPER_LAURENT};
use paraclass_core::class_group::compute_class_group;
use paraclass_core::cyclotomic::cyclo_res_nilpotent;
use paraclass_core::lattice;
use paraclass_core::laurent_poly::cyclotomic_poly;
use paraclass_core::metabelian::{
    hilbert_coeffs, is_finitely_presentable, lcs_routes, make_group, para_inclusion_check,
    para_witness, submodule_group, telescope_chain, Submodule,
};
use paraclass_core::para_class::classify_para;
use paraclass_core::scalar::is_prime_power;
use paraclass_core::{Element, GroupStructure, Int, Poly, Ring};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const PRESETS: &[&str] = &[
    "lamplighter",
    "wreath_zz",
    "bs12",
    "z_inv_n:2",
    "z_inv_n:3",
    "quad:2",
    "quad:10",
    "quad:82",
    "cyclo:5",
    "cyclo:6",
    "cyclo:8",
    "cyclo:9",
    "unipotent2",
    "zc2",
];

fn p(c: &[i64]) -> Poly {
    Poly::from_i64(0, c)
}

type Outcome = Result<String, String>;

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn class_numbers() -> Outcome {
    let cyc = |n: i64| GroupStructure::cyclic(Int::from(n));
    let mut cases: Vec<(i64, GroupStructure)> = Vec::new();
    cases.extend([2, 3, 13, 23, 29, 53, 77].map(|d| (d, GroupStructure::trivial())));
    cases.extend([10, 15, 26, 35, 85].map(|d| (d, cyc(2))));
    cases.push((82, cyc(4)));
    for (d, want) in &cases {
        let ring = Ring::maximal_order(&Int::from(*d)).map_err(err)?;
        let got = compute_class_group(&ring).map_err(err)?.structure;
        ensure(&got == want, format!("d = {d}: got {got}, want {want}"))?;
    }
    Ok(format!("{} fields match", cases.len()))
}

fn laurent_scan() -> Outcome {
    let r = run_scan(100, 4).map_err(err)?;
    ensure(
        r.failures().is_empty(),
        format!("{} rows failed", r.failures().len()),
    )?;
    ensure(
        r.laurent.paper.len() == PAPER_LAURENT.len(),
        "paper list truncated",
    )?;
    let agree = r.laurent.agree.len();
    ensure(agree >= 12, format!("only {agree} of 13 agree"))?;
    let disputed: Vec<i64> = r
        .laurent
        .paper_only
        .iter()
        .chain(&r.laurent.computed_only)
        .copied()
        .collect();
    for d in &disputed {
        let c = r
            .certificates
            .iter()
            .find(|c| c.d == *d)
            .ok_or(format!("no certificate for {d}"))?;
        ensure(c.checked, format!("certificate for {d} does not check"))?;
    }
    Ok(format!(
        "{agree}/13 agree; certified disagreements {disputed:?}"
    ))
}

fn d10() -> Outcome {
    let v = verify_example("d10").map_err(err)?;
    ensure(v.pass(), v.transcript())?;
    Ok(format!("{} checks", v.checks.len()))
}

fn cyclotomic() -> Outcome {
    for n in 2..100u64 {
        let r = cyclo_res_nilpotent(n).map_err(err)?;
        ensure(
            r.residually_nilpotent == is_prime_power(&(n as i64)),
            format!("n = {n}"),
        )?;
    }
    Ok("n in 2..100".into())
}

fn finite_presentability() -> Outcome {
    let fp = |name: &str| -> Result<bool, String> {
        Ok(is_finitely_presentable(&make_group(name).map_err(err)?)
            .map_err(err)?
            .value)
    };
    ensure(fp("bs12")?, "bs12 not finitely presentable")?;
    ensure(!fp("wreath_zz")?, "wreath_zz finitely presentable")?;
    let pairs = [
        ("quad:10", vec![p(&[3]), p(&[-2, 1])]),
        ("wreath_zz", vec![p(&[-1, 2]), p(&[2, -1])]),
    ];
    for (name, gens) in pairs {
        let g = make_group(name).map_err(err)?;
        let j = Submodule::new(gens);
        let h = submodule_group(&g, &j).map_err(err)?;
        ensure(
            para_inclusion_check(&j, &g, 6).map_err(err)?.pass,
            format!("{name}: pair is not para"),
        )?;
        let (a, b) = (
            is_finitely_presentable(&g).map_err(err)?.value,
            is_finitely_presentable(&h).map_err(err)?.value,
        );
        ensure(a == b, format!("{name}: T⋉A gives {a}, T⋉J gives {b}"))?;
    }
    Ok("bs12 true, wreath_zz false, pairs agree".into())
}

fn rigidity() -> Outcome {
    let cases = [
        ("z_inv_n:3", 1),
        ("lamplighter", 1),
        ("zc2", 1),
        ("unipotent2", 1),
        ("quad:10", 2),
        ("quad:82", 4),
    ];
    for (name, want) in cases {
        let r = classify_para(&make_group(name).map_err(err)?).map_err(err)?;
        ensure(
            r.count == want,
            format!("{name}: {} classes, want {want}", r.count),
        )?;
    }
    Ok("counts 1, 1, 1, 1, 2, 4".into())
}

fn properties() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 128,
        failure_persistence: None,
        ..Config::default()
    });
    let rings = prop::sample::select(vec![2i64, 3, 5, 10, 13, 82, -1, -23]);
    let elt = || (-30i64..30, -30i64..30).prop_map(|(x, y)| Element::from_i64(x, y));
    runner
        .run(&(rings, elt(), elt()), |(d, u, v)| {
            let r = Ring::maximal_order(&Int::from(d)).unwrap();
            prop_assert_eq!(
                r.norm_form(&r.mul(&u, &v)),
                r.norm_form(&u) * r.norm_form(&v)
            );
            Ok(())
        })
        .map_err(|e| format!("norm multiplicativity: {e}"))?;
    let rows = prop::collection::vec(prop::collection::vec(-9i64..9, 4), 1..6);
    runner
        .run(&rows, |rows| {
            let rows: Vec<Vec<Int>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(Int::from).collect())
                .collect();
            let h = lattice::hnf(&rows, 4);
            prop_assert_eq!(lattice::hnf(&h, 4), h.clone());
            prop_assert!(lattice::same_lattice(&rows, &h, 4));
            Ok(())
        })
        .map_err(|e| format!("HNF idempotence: {e}"))?;

    for name in PRESETS {
        let g = make_group(name).map_err(err)?;
        for n in 1..=8 {
            ensure(
                lcs_routes(&g, n).map_err(err)?.agree(),
                format!("lcs routes differ for {name} at n = {n}"),
            )?;
        }
    }

    let t = telescope_chain(&make_group("quad:10").map_err(err)?, &[p(&[5, 2])], 4).map_err(err)?;
    ensure(
        t.strictly_ascending && !t.constant,
        "telescope chain not proper",
    )?;
    ensure(
        t.stages.iter().all(|s| s.iso_equivariant),
        "telescope stage not isomorphic",
    )?;

    let witnesses: &[(&str, Vec<Poly>)] = &[
        ("wreath_zz", vec![p(&[-1, 2]), p(&[2, -1])]),
        ("quad:10", vec![p(&[3]), p(&[-2, 1])]),
        ("quad:10", vec![p(&[5]), p(&[-2, 1])]),
        ("lamplighter", vec![p(&[1, 1, 1])]),
    ];
    for (name, gens) in witnesses {
        let w = para_witness(
            &Submodule::new(gens.clone()),
            &make_group(name).map_err(err)?,
        )
        .map_err(err)?;
        ensure(
            w.forward.pass && w.backward.pass,
            format!("witness round trip fails for {name} {gens:?}"),
        )?;
    }

    for n in 1..=40u64 {
        let prod = (1..=n)
            .filter(|d| n % d == 0)
            .try_fold(Poly::one(), |acc, d| cyclotomic_poly(d).map(|c| &acc * &c));
        let mut want = vec![Int::zero(); n as usize + 1];
        want[0] = Int::from(-1);
        want[n as usize] = Int::one();
        ensure(
            prod.map_err(err)? == Poly::new(0, want),
            format!("Φ product fails at n = {n}"),
        )?;
    }
    Ok("norm, HNF, lcs routes, telescope, witnesses, Φ product".into())
}

/// Rank of `Z[t]/(t - 1)^n`, read off a Smith form over a window of monomials.
fn truncation_rank(n: usize) -> usize {
    let w = n + 4;
    let base = p(&[-1, 1]).pow(n as u32);
    let rows: Vec<Vec<Int>> = (0..=(w - n) as i64)
        .map(|j| (0..=w as i64).map(|k| base.shift(j).coeff(k)).collect())
        .collect();
    lattice::cokernel(&rows, w + 1).free_rank
}

fn hilbert() -> Outcome {
    let h = hilbert_coeffs(&make_group("wreath_zz").map_err(err)?, 8).map_err(err)?;
    let mut oracle = vec![1 + truncation_rank(1)];
    oracle.extend((2..=8).map(|n| truncation_rank(n) - truncation_rank(n - 1)));
    ensure(
        h.ranks == oracle,
        format!("ranks {:?}, oracle {oracle:?}", h.ranks),
    )?;
    ensure(
        h.ranks == [2, 1, 1, 1, 1, 1, 1, 1],
        format!("ranks {:?}", h.ranks),
    )?;
    ensure(
        h.render() == "2t + t^2/(1 - t)",
        format!("series {}", h.render()),
    )?;
    Ok(format!("ranks {:?}, series {}", h.ranks, h.render()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("class numbers", class_numbers, Some(Duration::from_secs(5))),
        (
            "Laurent scan to 100",
            laurent_scan,
            Some(Duration::from_secs(10)),
        ),
        ("d = 10 example", d10, Some(Duration::from_secs(2))),
        ("cyclotomic residual nilpotence", cyclotomic, None),
        ("finite presentability", finite_presentability, None),
        ("rigidity counts", rigidity, None),
        ("property suites", properties, Some(Duration::from_secs(60))),
        ("Hilbert series", hilbert, None),
    ];
    let mut all = true;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let pass = outcome.is_ok() && in_time;
        all &= pass;
        let budget = limit.map_or("no limit".to_string(), |l| format!("limit {:.0?}", l));
        let detail = match &outcome {
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        let late = if in_time { "" } else { "; over time" };
        println!(
            "{} criterion {}: {name}: {detail} ({:.2?}, {budget}{late})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            took
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
