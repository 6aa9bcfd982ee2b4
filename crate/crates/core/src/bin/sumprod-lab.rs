use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sumprod_lab::energy::{energy, EnergyKind};
use sumprod_lab::ff::{make_field, Field};
use sumprod_lab::gauss::{bounds_report, gauss_direct, GAUSS_CSV_HEADER};
use sumprod_lab::lab::{cmd_sweep, fit_path, SweepConfig};
use sumprod_lab::setops::{product_set, ESet};
use sumprod_lab::subgrp::{
    condition_csv, count_solutions, field_intersection_condition, group_energy_report, n_condition,
    nth_powers, subgroup_of_order, DELTA, DELTA1,
};
use sumprod_lab::verify::{run_suite, Suite, DEFAULT_SEED};
use sumprod_lab::Result;

/// Exact sum-product computations over finite fields.
#[derive(Parser)]
#[command(name = "sumprod-lab", version)]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    m: u32,
}

impl FieldArgs {
    fn field(self) -> Result<Field> {
        make_field(self.p, self.m)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Field inspection.
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Product set AB.
    Prodset {
        #[command(flatten)]
        f: FieldArgs,
        /// Comma-separated element codes.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Additive or multiplicative energy E(A, B); B defaults to A.
    Energy {
        #[command(flatten)]
        f: FieldArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        /// add or mult
        #[arg(long, default_value = "add")]
        kind: EnergyKind,
    },
    /// A multiplicative subgroup, by order or as the n-th powers.
    Subgroup {
        #[command(flatten)]
        f: FieldArgs,
        #[arg(long, conflicts_with = "nth", required_unless_present = "nth")]
        order: Option<u64>,
        #[arg(long)]
        nth: Option<u64>,
        /// Evaluate the subfield conditions for every proper subfield.
        #[arg(long)]
        check_conditions: bool,
    },
    /// Gauss sum S_n(a) and the bounds compared against it.
    Gauss {
        #[command(flatten)]
        f: FieldArgs,
        #[arg(long)]
        n: u64,
        /// Element code of the character parameter.
        #[arg(long)]
        a: u64,
    },
    /// Number of solutions of g - h = d with g, h in subgroups.
    Count {
        #[command(flatten)]
        f: FieldArgs,
        #[arg(long)]
        g_order: u64,
        #[arg(long)]
        h_order: u64,
        #[arg(long)]
        d: u64,
    },
    /// Run a sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores). Output does not depend on it.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a self-check suite: all, identities, bounds, oracle, gauss, subfields.
    Verify {
        suite: Suite,
        #[arg(long)]
        max_q: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Modulus, generator and subfields.
    Info {
        #[command(flatten)]
        f: FieldArgs,
    },
}

fn codes(s: &ESet) -> String {
    s.codes()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let x = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => x,
            _ => format!("{c}{x}"),
        });
    }
    terms.join(" + ")
}

/// Text and JSON renderings of one command's result.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: 0,
        }
    }
}

fn run(cmd: Cmd) -> Result<Output> {
    match cmd {
        Cmd::Field {
            cmd: FieldCmd::Info { f },
        } => {
            let ctx = f.field()?;
            let g = ctx.generator();
            let subs = ctx.proper_subfield_degrees();
            let text = format!(
                "p = {}, m = {}, q = {}\nmodulus: {} (coefficients {:?})\ngenerator: {}\nproper subfields: {}",
                ctx.p(),
                ctx.m(),
                ctx.q(),
                poly(ctx.modulus()),
                ctx.modulus(),
                g,
                if subs.is_empty() {
                    "none".to_string()
                } else {
                    subs.iter()
                        .map(|nu| format!("F_{}", ctx.p().pow(*nu)))
                        .collect::<Vec<_>>()
                        .join(", ")
                }
            );
            let json = json!({
                "p": ctx.p(), "m": ctx.m(), "q": ctx.q(),
                "modulus": ctx.modulus(), "generator": g, "proper_subfield_degrees": subs,
            });
            Ok(Output::ok(text, json))
        }
        Cmd::Prodset { f, a, b } => {
            let ctx = f.field()?;
            let a = ESet::parse(ctx.clone(), &a)?;
            let b = ESet::parse(ctx, &b)?;
            let ab = product_set(&a, &b)?;
            let text = format!(
                "|A| = {}, |B| = {}, |AB| = {}\nAB = {}",
                a.len(),
                b.len(),
                ab.len(),
                codes(&ab)
            );
            let json = json!({"a_size": a.len(), "b_size": b.len(), "size": ab.len(), "elements": ab.codes()});
            Ok(Output::ok(text, json))
        }
        Cmd::Energy { f, a, b, kind } => {
            let ctx = f.field()?;
            let a = ESet::parse(ctx.clone(), &a)?;
            let b = match b {
                Some(b) => ESet::parse(ctx, &b)?,
                None => a.clone(),
            };
            let r = energy(&a, &b, kind)?;
            let hist = r
                .histogram
                .iter()
                .map(|(z, n)| format!("{z}:{n}"))
                .collect::<Vec<_>>()
                .join(",");
            let text = format!(
                "{kind} energy = {}\nsupport = {}\nhistogram = {hist}",
                r.value, r.support_size
            );
            Ok(Output::ok(text, serde_json::to_value(&r)?))
        }
        Cmd::Subgroup {
            f,
            order,
            nth,
            check_conditions,
        } => {
            let ctx = f.field()?;
            let g = match (order, nth) {
                (_, Some(n)) => nth_powers(&ctx, n)?,
                (Some(t), None) => subgroup_of_order(&ctx, t)?,
                (None, None) => unreachable!("clap requires one of --order, --nth"),
            };
            let mut text = format!(
                "|G| = {}, generator {}\nG = {}",
                g.order,
                g.generator_power,
                codes(&g.elements)
            );
            let mut json = json!({
                "order": g.order, "n": g.n, "generator": g.generator_power,
                "elements": g.elements.codes(),
            });
            if g.order >= 2 {
                let e = group_energy_report(&g)?;
                text.push_str(&format!(
                    "\nadditive energy = {} (exponent {:.6})",
                    e.energy, e.exponent
                ));
                json["additive_energy"] = serde_json::to_value(e)?;
            }
            if check_conditions {
                let fic = field_intersection_condition(&g, DELTA1)?;
                text.push_str(&format!(
                    "\nsubfield intersections against |G|^(486/605):\n{}",
                    condition_csv(&ctx, g.n, &fic).trim_end()
                ));
                json["field_intersection_condition"] = serde_json::to_value(&fic)?;
                if let Some(n) = g.n.filter(|n| (ctx.q() - 1) % n == 0) {
                    let nc = n_condition(&ctx, n, DELTA)?;
                    text.push_str(&format!(
                        "\ngcd condition against n^(119/605) q^(486/605) / p^nu:\n{}",
                        condition_csv(&ctx, Some(n), &nc).trim_end()
                    ));
                    json["n_condition"] = serde_json::to_value(&nc)?;
                }
                if ctx.is_prime_field() {
                    text.push_str("\nno proper subfields");
                }
            }
            Ok(Output::ok(text, json))
        }
        Cmd::Gauss { f, n, a } => {
            let ctx = f.field()?;
            let a = ctx.elem(a)?;
            if n >= 2 && (ctx.q() - 1) % n == 0 {
                let r = bounds_report(&ctx, n, a)?;
                let text = format!(
                    "S_{n}({a}) = {:.12} {:+.12}i\n|S| = {:.12}\nWeil bound = {:.6} (ratio {:.6})\n\
                     |S(a, G)| = {:.12}, Konyagin bound = {:.6}\nbound with delta2 = {:.6} (ratio {:.6})\n\
                     n below q^(29/57) = {:.3}: {}\n{GAUSS_CSV_HEADER}\n{}",
                    r.value.re,
                    r.value.im,
                    r.abs,
                    r.weil,
                    r.ratio_weil,
                    r.subgroup_sum.norm(),
                    r.konyagin,
                    r.bound_delta2,
                    r.ratio_delta2,
                    r.nontrivial_threshold,
                    r.below_threshold,
                    r.csv_row()
                );
                Ok(Output::ok(text, serde_json::to_value(&r)?))
            } else {
                let s = gauss_direct(&ctx, n, a)?;
                let text = format!(
                    "S_{n}({a}) = {:.12} {:+.12}i\n|S| = {:.12}\n(bounds need n >= 2 dividing q - 1)",
                    s.re,
                    s.im,
                    s.norm()
                );
                Ok(Output::ok(
                    text,
                    json!({"q": ctx.q(), "n": n, "a": a, "value": s, "abs": s.norm()}),
                ))
            }
        }
        Cmd::Count {
            f,
            g_order,
            h_order,
            d,
        } => {
            let ctx = f.field()?;
            let g = subgroup_of_order(&ctx, g_order)?;
            let h = subgroup_of_order(&ctx, h_order)?;
            let r = count_solutions(&g.elements, &h.elements, ctx.elem(d)?)?;
            let text = format!(
                "#{{g - h = {d}}} = {}\ncount / max(|G|, |H|)^{:.6} = {:.6}",
                r.count, r.exponent, r.corollary_ratio
            );
            Ok(Output::ok(text, serde_json::to_value(r)?))
        }
        Cmd::Sweep {
            config,
            out,
            threads,
        } => {
            let mut cfg = SweepConfig::load(&config)?;
            if let Some(out) = out {
                cfg.outputs = out;
            }
            let outcome = cmd_sweep(&cfg, threads)?;
            let mut text = format!(
                "{} rows written to {} ({} audited)\nfits in {}",
                outcome.rows.len(),
                cfg.outputs.display(),
                outcome.audited,
                fit_path(&cfg.outputs).display()
            );
            for f in &outcome.fits {
                text.push_str(&format!(
                    "\n{} p = {} m = {}: slope {:.4} over {} rows (target {:.4})",
                    f.family, f.p, f.m, f.fit.slope, f.rows, f.target
                ));
            }
            let json = json!({
                "rows": outcome.rows.len(), "audited": outcome.audited,
                "outputs": cfg.outputs, "fit_outputs": fit_path(&cfg.outputs), "fits": outcome.fits,
            });
            Ok(Output::ok(text, json))
        }
        Cmd::Verify { suite, max_q, seed } => {
            let results = run_suite(suite, max_q, seed);
            let all_ok = results.iter().all(|r| r.passed());
            let text = results
                .iter()
                .map(|r| r.line())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                text,
                json: json!({"suite": suite.name(), "passed": all_ok, "checks": results}),
                code: if all_ok { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            // a failed assertion is a verification failure; anything else is bad input
            ExitCode::from(if e.is_violation() { 1 } else { 2 })
        }
    }
}
