//! Acceptance criteria, run in order with their time limits. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::fs;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sumprod_lab::lab::{cmd_sweep, fit_path, run_sweep, SweepConfig};
use sumprod_lab::verify::{self, CheckOutcome};

const SEED: u64 = 20_240_601;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn(&mut ChaCha8Rng) -> (bool, String),
}

fn outcome(o: CheckOutcome) -> (bool, String) {
    (o.passed(), o.line())
}

fn all(os: &[CheckOutcome]) -> (bool, String) {
    (
        os.iter().all(|o| o.passed()),
        os.iter().map(|o| o.line()).collect::<Vec<_>>().join("; "),
    )
}

fn c1(rng: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::energy_vs_oracle(rng, 200, 40, 512))
}

fn c2(rng: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::identity_tuples(rng, 10_000, 20, 4096))
}

fn c3(rng: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::c4_identity(rng, 100, 12, 512))
}

fn c4(rng: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::cs_chain_random(rng, 100, 8, 256))
}

fn c5(rng: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::plunnecke_random(rng, 200, 8, 256))
}

fn c6(_: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::subgroup_energy(1024))
}

fn c7(_: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::subfield_formula(4096))
}

/// Bound outcomes of the criterion 8 sweep, read back by criterion 10.
static GAUSS_BOUNDS: Mutex<Vec<CheckOutcome>> = Mutex::new(Vec::new());

fn c8(rng: &mut ChaCha8Rng) -> (bool, String) {
    let [agree, weil, kony] = verify::gauss_checks(rng, 2000, 5);
    *GAUSS_BOUNDS.lock().unwrap() = vec![weil, kony];
    outcome(agree)
}

fn c10(_: &mut ChaCha8Rng) -> (bool, String) {
    let bounds = GAUSS_BOUNDS.lock().unwrap();
    if bounds.is_empty() {
        return (false, "criterion 8 sweep did not run".into());
    }
    all(&bounds)
}

fn c9(_: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::quadratic_gauss(97))
}

fn c11(rng: &mut ChaCha8Rng) -> (bool, String) {
    outcome(verify::count_vs_oracle(rng, 500, 997))
}

fn c12(_: &mut ChaCha8Rng) -> (bool, String) {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = dir.path().join("sweep.csv");
    let text = format!(
        r#"{{"fields": [[101, 1], [257, 1], [3, 4]], "family": ["random", "geometric"],
            "sizes": [8, 9, 12], "trials": 3, "seed": 42, "d_policy": "random_nonzero",
            "outputs": {:?}}}"#,
        out.display().to_string()
    );
    let cfg = SweepConfig::from_json(&text).expect("config");
    let mut bytes = Vec::new();
    for threads in [1, 1, 4] {
        if let Err(e) = cmd_sweep(&cfg, Some(threads)) {
            return (false, format!("sweep failed: {e}"));
        }
        bytes.push((fs::read(&out).unwrap(), fs::read(fit_path(&out)).unwrap()));
    }
    let same = bytes.windows(2).all(|w| w[0] == w[1]);
    let rows = String::from_utf8_lossy(&bytes[0].0).lines().count() - 2;
    (
        same && rows == 3 * 2 * 3 * 3,
        format!("{rows} rows, identical across runs and thread counts 1, 1, 4: {same}"),
    )
}

fn c13(_: &mut ChaCha8Rng) -> (bool, String) {
    let cfg = SweepConfig::from_json(
        r#"{"fields": [[257, 1], [641, 1], [7681, 1], [12289, 1], [40009, 1]],
            "family": ["geometric", "shifted_subgroup"], "sizes": [16, 32, 64, 128],
            "trials": 1, "seed": 7, "outputs": "unused.csv"}"#,
    )
    .expect("config");
    let out = match run_sweep(&cfg, None) {
        Ok(o) => o,
        Err(e) => return (false, format!("sweep failed: {e}")),
    };
    let flags_ok = out
        .rows
        .iter()
        .all(|r| r.hypothesis_ok == ((r.size as u64).pow(2) <= r.p));
    let exps_ok = out
        .rows
        .iter()
        .all(|r| r.measured_exponent.is_finite() && r.measured_exponent >= 0.0);
    let flagged = out.rows.iter().filter(|r| !r.hypothesis_ok).count();
    println!("    family            p      size  maxKL     exponent  hypothesis_ok");
    for r in &out.rows {
        println!(
            "    {:<16} {:>6} {:>5}  {:>8.4}  {:>8.4}  {}",
            r.family, r.p, r.size, r.max_kl, r.measured_exponent, r.hypothesis_ok
        );
    }
    println!("    fits (target 1 + 1/26 = {:.4}):", 1.0 + 1.0 / 26.0);
    for f in &out.fits {
        println!(
            "    {:<16} {:>6}  slope {:.4} over {} rows",
            f.family, f.p, f.fit.slope, f.rows
        );
    }
    (
        flags_ok && exps_ok && out.fits.len() == 10,
        format!(
            "{} rows ({flagged} with |A| > sqrt p), {} fits, flags correct: {flags_ok}",
            out.rows.len(),
            out.fits.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "energy vs quadruple-loop oracle",
            limit: Duration::from_secs(60),
            run: c1,
        },
        Criterion {
            id: 2,
            title: "shifted-product identity",
            limit: Duration::from_secs(5),
            run: c2,
        },
        Criterion {
            id: 3,
            title: "C4 total and diagonal",
            limit: Duration::from_secs(120),
            run: c3,
        },
        Criterion {
            id: 4,
            title: "Cauchy-Schwarz chain",
            limit: Duration::from_secs(60),
            run: c4,
        },
        Criterion {
            id: 5,
            title: "Plunnecke-Ruzsa",
            limit: Duration::from_secs(30),
            run: c5,
        },
        Criterion {
            id: 6,
            title: "subgroup multiplicative energy",
            limit: Duration::from_secs(60),
            run: c6,
        },
        Criterion {
            id: 7,
            title: "subfield gcd formula",
            limit: Duration::from_secs(120),
            run: c7,
        },
        Criterion {
            id: 8,
            title: "Gauss sum agreement",
            limit: Duration::from_secs(300),
            run: c8,
        },
        Criterion {
            id: 9,
            title: "quadratic Gauss sum modulus",
            limit: Duration::from_secs(1),
            run: c9,
        },
        Criterion {
            id: 10,
            title: "Weil and Konyagin bounds over the same sweep",
            limit: Duration::from_secs(1),
            run: c10,
        },
        Criterion {
            id: 11,
            title: "solution counts vs oracle",
            limit: Duration::from_secs(30),
            run: c11,
        },
        Criterion {
            id: 12,
            title: "sweep reproducibility",
            limit: Duration::from_secs(120),
            run: c12,
        },
        Criterion {
            id: 13,
            title: "exponent tables",
            limit: Duration::from_secs(300),
            run: c13,
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut results: Vec<(u32, String, bool, String, Duration)> = Vec::new();

    for c in &criteria {
        let start = Instant::now();
        let (ok, detail) = (c.run)(&mut rng);
        let dt = start.elapsed();
        let in_time = dt < c.limit;
        let detail = if in_time {
            detail
        } else {
            format!("{detail}; took {dt:.1?}, limit {:?}", c.limit)
        };
        results.push((c.id, c.title.into(), ok && in_time, detail, dt));
        print_line(results.last().unwrap());
    }

    let failed: Vec<u32> = results.iter().filter(|r| !r.2).map(|r| r.0).collect();
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failed.len(),
        results.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {failed:?}");
        ExitCode::FAILURE
    }
}

fn print_line((id, title, ok, detail, dt): &(u32, String, bool, String, Duration)) {
    println!(
        "criterion {id:>2} {}: {title} [{dt:.2?}] {detail}",
        if *ok { "PASS" } else { "FAIL" }
    );
}
