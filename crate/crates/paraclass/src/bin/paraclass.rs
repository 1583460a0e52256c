use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use paraclass::{json, scan, verify_example, Cache};
use paraclass_core::cyclotomic::cyclo_res_nilpotent;
use paraclass_core::metabelian::{
    hilbert_coeffs, is_finitely_presentable, is_residually_nilpotent, lcs_routes, make_group,
};
use paraclass_core::Int;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "paraclass",
    version,
    about = "Para-equivalence classes of split metabelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Survey Q(√d) for squarefree d <= max-d and diff against the published lists.
    Scan {
        #[arg(long)]
        max_d: i64,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classification report for Z ⋉ Z[ε], ε the fundamental unit of Q(√d).
    Quad {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        json: bool,
    },
    /// Residual nilpotence of Z ⋉ Z[ζ_n].
    Cyclo {
        #[arg(long)]
        n: u64,
    },
    /// Run one operation on a named group.
    Group {
        #[arg(long)]
        preset: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Replay a named example.
    Verify {
        #[arg(long)]
        example: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Lcs,
    Hilbert,
    Fp,
    Rn,
    Classify,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Printed output and whether everything passed.
type Outcome = (String, bool);

fn verdict_json(v: paraclass_core::metabelian::Verdict) -> Value {
    json!({"value": v.value, "certificate": v.reason})
}

fn group(preset: &str, op: Op, depth: usize) -> paraclass::Result<Outcome> {
    let g = make_group(preset)?;
    let v = match op {
        Op::Lcs => {
            let mut levels = Vec::new();
            let mut agree = true;
            for n in 1..=depth {
                let r = lcs_routes(&g, n)?;
                agree &= r.agree();
                levels.push(
                    json!({"n": n, "quotient": json::group(&r.direct), "routes_agree": r.agree()}),
                );
            }
            return Ok((
                json::to_string(&json!({"subject": g.label(), "lcs": levels})),
                agree,
            ));
        }
        Op::Hilbert => {
            let h = hilbert_coeffs(&g, depth)?;
            json!({"subject": g.label(), "ranks": h.ranks, "series": h.render()})
        }
        Op::Fp => {
            json!({"subject": g.label(), "finitely_presentable": verdict_json(is_finitely_presentable(&g)?)})
        }
        Op::Rn => {
            json!({"subject": g.label(), "residually_nilpotent": verdict_json(is_residually_nilpotent(&g)?)})
        }
        Op::Classify => paraclass::group_report(preset)?.to_json(),
    };
    Ok((json::to_string(&v), true))
}

fn run(cli: Cli) -> paraclass::Result<Outcome> {
    match cli.command {
        Command::Scan { max_d, jobs, out } => {
            let mut cache = Cache::open(Cache::default_path())?;
            let report = scan::run_scan_cached(max_d, jobs, &mut cache)?;
            let text = json::to_string(&report.to_json());
            let pass = report.failures().is_empty();
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    Ok((
                        format!("wrote {} rows to {}\n", report.rows.len(), path.display()),
                        pass,
                    ))
                }
                None => Ok((text, pass)),
            }
        }
        Command::Quad { d, json: as_json } => {
            let mut cache = Cache::open(Cache::default_path())?;
            let key = d.to_string();
            let kind = scan::CACHE_KIND;
            let v = match cache.get(kind, &key) {
                Some(v) => v.clone(),
                None => {
                    let v = paraclass::quad_report(&Int::from(d))?.to_json();
                    cache.put(kind, &key, v.clone())?;
                    v
                }
            };
            Ok((
                if as_json {
                    json::to_string(&v)
                } else {
                    json::render_text(&v)
                },
                true,
            ))
        }
        Command::Cyclo { n } => {
            let r = cyclo_res_nilpotent(n)?;
            let witness = r.witness.as_ref().map(|w| {
                json!({
                    "disc": json::int(&w.disc),
                    "form_class_number": w.form_class_number,
                    "ideal": w.ideal.to_string(),
                    "principal": w.principal,
                    "s_fractional": w.s_fractional,
                    "note": w.lift_note,
                })
            });
            let v = json!({
                "n": r.n,
                "phi_at_one": json::int(&r.phi_at_one),
                "residually_nilpotent": r.residually_nilpotent,
                "prime_power": r.prime_power,
                "pid_known": r.pid_known,
                "witness": witness,
                "provenance": {"pid_known": "paper_sourced", "residually_nilpotent": "computed"},
            });
            Ok((json::to_string(&v), true))
        }
        Command::Group { preset, op, depth } => group(&preset, op, depth),
        Command::Verify { example } => {
            let v = verify_example(&example)?;
            Ok((v.transcript(), v.pass()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, pass)) => {
            print!("{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("paraclass: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
