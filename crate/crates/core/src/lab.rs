//! Reproducible sweeps measuring the growth ratios `K = |AB|/|A|` and
//! `L = |(A + d)C|/|A|` over families of test sets.
//!
//! Randomness comes from ChaCha8 seeded with the sweep seed; each trial reads
//! its own stream, so a row depends only on `(seed, trial)` and the task
//! parameters, never on scheduling.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::energy_lb_report;
use crate::error::{Error, Result};
use crate::ff::{divisors, make_field, Elem, Field};
use crate::oracle;
use crate::setops::{coset_scan, product_set, shift, ESet, ThresholdBase};
use crate::subgrp::subgroup_of_order;

pub const CSV_VERSION_LINE: &str = "# sumprod-lab v1";

pub const RESULT_HEADER: &str = "p,m,q,family,size,trial,seed,d,K,L,maxKL,measured_exponent,ratio_K14L12,hypothesis_ok,runtime_ms";

/// Set families for sweeps.
///
/// Subgroups and geometric progressions sit at the structured extreme (small
/// product sets), random sets at the generic one; shifted subgroups are the
/// additive shifts of multiplicative groups the bounds are about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Uniform sample without replacement from `F_q^*`.
    Random,
    /// The subgroup whose order is the largest divisor of `q - 1` not above the size.
    Subgroup,
    /// That subgroup shifted by 1, with 0 removed if it appears.
    ShiftedSubgroup,
    /// `{1, ..., size}`, prime fields only.
    Interval,
    /// `{g^0, ..., g^{size-1}}` for the field generator `g`.
    Geometric,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Subgroup => "subgroup",
            Family::ShiftedSubgroup => "shifted_subgroup",
            Family::Interval => "interval",
            Family::Geometric => "geometric",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Family::Random,
            Family::Subgroup,
            Family::ShiftedSubgroup,
            Family::Interval,
            Family::Geometric,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}")))
    }
}

/// Stream roles within one `(seed, trial)`.
#[derive(Clone, Copy)]
enum Role {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

fn stream_rng(seed: u64, trial: u64, role: Role) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial << 2 | role as u64);
    rng
}

/// Deterministic test set for `(seed, trial)`.
pub fn generate_family(
    ctx: &Field,
    family: Family,
    size: usize,
    seed: u64,
    trial: u64,
) -> Result<ESet> {
    generate_for_role(ctx, family, size, seed, trial, Role::A)
}

fn generate_for_role(
    ctx: &Field,
    family: Family,
    size: usize,
    seed: u64,
    trial: u64,
    role: Role,
) -> Result<ESet> {
    let units = (ctx.q() - 1) as usize;
    if size == 0 || size > units {
        return Err(Error::Invalid(format!(
            "family size {size} outside 1..={units}"
        )));
    }
    match family {
        Family::Random => {
            let mut rng = stream_rng(seed, trial, role);
            let picks = index::sample(&mut rng, units, size);
            ESet::from_codes(ctx.clone(), picks.into_iter().map(|i| i as u64 + 1))
        }
        Family::Subgroup | Family::ShiftedSubgroup => {
            let t = divisors(units as u64)
                .into_iter()
                .filter(|&t| t <= size as u64)
                .max()
                .unwrap_or(1);
            let g = subgroup_of_order(ctx, t)?.elements;
            if family == Family::Subgroup {
                return Ok(g);
            }
            let shifted = shift(&g, Elem::ONE);
            Ok(without(&shifted, Elem::ZERO))
        }
        Family::Interval => {
            if !ctx.is_prime_field() {
                return Err(Error::PrimeFieldOnly(ctx.m()));
            }
            ESet::from_codes(ctx.clone(), 1..=size as u64)
        }
        Family::Geometric => {
            let g = ctx.generator();
            let mut x = Elem::ONE;
            let mut out = Vec::with_capacity(size);
            for _ in 0..size {
                out.push(x);
                x = ctx.mul(x, g);
            }
            Ok(ESet::from_elems(ctx.clone(), out))
        }
    }
}

fn without(s: &ESet, x: Elem) -> ESet {
    ESet::from_elems(s.ctx().clone(), s.iter().filter(|&y| y != x).collect())
}

/// How the shift `d` is chosen per row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDPolicy", into = "RawDPolicy")]
pub enum DPolicy {
    Fixed(u64),
    RandomNonzero,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawDPolicy {
    Code(u64),
    Name(String),
}

impl TryFrom<RawDPolicy> for DPolicy {
    type Error = String;

    fn try_from(raw: RawDPolicy) -> std::result::Result<Self, String> {
        match raw {
            RawDPolicy::Code(0) => Err("d_policy: d must be nonzero".into()),
            RawDPolicy::Code(c) => Ok(DPolicy::Fixed(c)),
            RawDPolicy::Name(s) if s == "random_nonzero" => Ok(DPolicy::RandomNonzero),
            RawDPolicy::Name(s) => Err(format!("d_policy: unknown policy {s:?}")),
        }
    }
}

impl From<DPolicy> for RawDPolicy {
    fn from(d: DPolicy) -> Self {
        match d {
            DPolicy::Fixed(c) => RawDPolicy::Code(c),
            DPolicy::RandomNonzero => RawDPolicy::Name("random_nonzero".into()),
        }
    }
}

/// Shortcuts for the `(B, C, d)` roles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    /// `B = C = A`.
    #[serde(rename = "a-a-a")]
    Same,
    /// `B = A + 1`, `C = A`, `d = 1`.
    #[serde(rename = "a-a1")]
    ShiftedB,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a-a-a" => Ok(Preset::Same),
            "a-a1" => Ok(Preset::ShiftedB),
            _ => Err(Error::Invalid(format!("unknown preset {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// `(p, m)` pairs.
    pub fields: Vec<(u64, u32)>,
    pub family: OneOrMany<Family>,
    pub sizes: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    pub seed: u64,
    #[serde(default = "default_d")]
    pub d_policy: DPolicy,
    pub outputs: PathBuf,
    #[serde(default)]
    pub b_family: Option<Family>,
    #[serde(default)]
    pub c_family: Option<Family>,
    #[serde(default)]
    pub preset: Option<Preset>,
    /// Fill `runtime_ms`; output is then no longer byte-reproducible.
    #[serde(default)]
    pub timings: bool,
}

fn default_trials() -> u64 {
    1
}

fn default_d() -> DPolicy {
    DPolicy::Fixed(1)
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Invalid("trials must be at least 1".into()));
        }
        if self.fields.is_empty() || self.sizes.is_empty() || self.family.to_vec().is_empty() {
            return Err(Error::Invalid(
                "fields, family and sizes must be nonempty".into(),
            ));
        }
        if self.preset == Some(Preset::ShiftedB)
            && (self.b_family.is_some() || self.c_family.is_some())
        {
            return Err(Error::Invalid("preset a-a1 fixes B and C".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub family: Family,
    pub size: usize,
    pub trial: u64,
    pub seed: u64,
    pub d: u32,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "maxKL")]
    pub max_kl: f64,
    /// `ln(max(K, L) |A|) / ln |A|`
    pub measured_exponent: f64,
    #[serde(rename = "ratio_K14L12")]
    pub ratio_k14l12: f64,
    /// `|A| <= sqrt(p)` over prime fields; the subfield-coset condition on
    /// `AB` otherwise.
    pub hypothesis_ok: bool,
    pub runtime_ms: Option<f64>,
}

impl ResultRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.p,
            self.m,
            self.q,
            self.family,
            self.size,
            self.trial,
            self.seed,
            self.d,
            self.k,
            self.l,
            self.max_kl,
            self.measured_exponent,
            self.ratio_k14l12,
            self.hypothesis_ok,
            self.runtime_ms.map(|t| t.to_string()).unwrap_or_default()
        )
    }

    /// Exponent of `|A|` that `max(|AB|, |(A+d)C|)` is compared with.
    pub fn target_exponent(&self) -> f64 {
        target_exponent(self.m)
    }
}

pub fn target_exponent(m: u32) -> f64 {
    if m == 1 {
        1.0 + 1.0 / 26.0
    } else {
        1.0 + 1.0 / 559.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Least-squares fit of `ln(max(K, L) |A|)` against `ln |A|`.
pub fn exponent_fit(rows: &[ResultRow]) -> Result<ExponentFit> {
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(Error::Invalid(format!(
            "exponent fit needs at least 2 distinct sizes, got {}",
            sizes.len()
        )));
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            let s = r.size as f64;
            (s.ln(), (r.max_kl * s).ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    Ok(ExponentFit {
        slope,
        intercept: my - slope * mx,
    })
}

/// One fit per `(family, p, m)` group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupFit {
    pub family: Family,
    pub p: u64,
    pub m: u32,
    pub rows: usize,
    pub fit: ExponentFit,
    pub target: f64,
}

pub const FIT_HEADER: &str = "family,p,m,rows,slope,intercept,target";

impl GroupFit {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.family, self.p, self.m, self.rows, self.fit.slope, self.fit.intercept, self.target
        )
    }
}

/// Fits every `(family, p, m)` group that has at least two distinct sizes.
pub fn group_fits(rows: &[ResultRow]) -> Vec<GroupFit> {
    let mut keys: Vec<(Family, u64, u32)> = rows.iter().map(|r| (r.family, r.p, r.m)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .filter_map(|(family, p, m)| {
            let group: Vec<ResultRow> = rows
                .iter()
                .filter(|r| r.family == family && r.p == p && r.m == m)
                .cloned()
                .collect();
            exponent_fit(&group).ok().map(|fit| GroupFit {
                family,
                p,
                m,
                rows: group.len(),
                fit,
                target: target_exponent(m),
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Task {
    family: Family,
    size: usize,
    trial: u64,
}

struct TaskSets {
    a: ESet,
    b: ESet,
    c: ESet,
    d: Elem,
}

fn build_sets(cfg: &SweepConfig, ctx: &Field, task: &Task) -> Result<TaskSets> {
    let seed = cfg.seed;
    let mut a = generate_for_role(ctx, task.family, task.size, seed, task.trial, Role::A)?;
    let d = match (cfg.preset, &cfg.d_policy) {
        (Some(Preset::ShiftedB), _) => Elem::ONE,
        (_, DPolicy::Fixed(code)) => {
            let d = ctx.elem(*code % ctx.q())?;
            if d.is_zero() {
                return Err(Error::ZeroNotAllowed("d"));
            }
            d
        }
        (_, DPolicy::RandomNonzero) => {
            let mut rng = stream_rng(seed, task.trial, Role::D);
            loop {
                let d = Elem::from_code(rng.gen_range(1..ctx.q()) as u32);
                if !a.contains(ctx.neg(d)) {
                    break d;
                }
            }
        }
    };
    // A + d must avoid zero
    a = without(&a, ctx.neg(d));
    let (b, c) = match cfg.preset {
        Some(Preset::ShiftedB) => (shift(&a, Elem::ONE), a.clone()),
        _ => {
            let b = match cfg.b_family {
                Some(f) => generate_for_role(ctx, f, a.len(), seed, task.trial, Role::B)?,
                None => a.clone(),
            };
            let c = match cfg.c_family {
                Some(f) => generate_for_role(ctx, f, a.len(), seed, task.trial, Role::C)?,
                None => a.clone(),
            };
            (b, c)
        }
    };
    Ok(TaskSets { a, b, c, d })
}

fn run_task(cfg: &SweepConfig, ctx: &Field, task: &Task) -> Result<ResultRow> {
    let start = Instant::now();
    let sets = build_sets(cfg, ctx, task)?;
    let report = energy_lb_report(&sets.a, &sets.b, &sets.c, sets.d)?;
    let size = sets.a.len();
    let hypothesis_ok = if ctx.is_prime_field() {
        (size as u64).pow(2) <= ctx.p()
    } else {
        let ab = product_set(&sets.a, &sets.b)?;
        coset_scan(&ab, 0.5, ThresholdBase::SubfieldSize)?.pass
    };
    let max_kl = report.max_kl();
    let s = size as f64;
    Ok(ResultRow {
        p: ctx.p(),
        m: ctx.m(),
        q: ctx.q(),
        family: task.family,
        size,
        trial: task.trial,
        seed: cfg.seed,
        d: sets.d.code(),
        k: report.k,
        l: report.l,
        max_kl,
        measured_exponent: (max_kl * s).ln() / s.ln(),
        ratio_k14l12: report.ratios.k14l12,
        hypothesis_ok,
        runtime_ms: cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Recomputes `K` and `L` through the oracle product set for one row.
fn audit_row(cfg: &SweepConfig, ctx: &Field, task: &Task, row: &ResultRow) -> Result<()> {
    let sets = build_sets(cfg, ctx, task)?;
    let ab = oracle::product_set_brute(&sets.a, &sets.b)?;
    let apc = oracle::product_set_brute(&shift(&sets.a, sets.d), &sets.c)?;
    let n = sets.a.len() as f64;
    let (k, l) = (ab.len() as f64 / n, apc.len() as f64 / n);
    if k != row.k || l != row.l {
        return Err(Error::IdentityFailed {
            label: format!("audit of K, L for p = {}, size = {}", row.p, row.size),
            lhs: format!("({}, {})", row.k, row.l),
            rhs: format!("({k}, {l})"),
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<ResultRow>,
    pub fits: Vec<GroupFit>,
    pub audited: usize,
    pub csv: String,
    pub fit_csv: String,
}

/// Runs every `(field, family, size, trial)` task and renders the CSVs.
///
/// Rows are sorted by `(p, m, size, trial)` (stable over configuration order),
/// so neither scheduling nor thread count changes the bytes.
pub fn run_sweep(cfg: &SweepConfig, threads: Option<usize>) -> Result<SweepOutcome> {
    cfg.validate()?;
    let mut ctxs = Vec::new();
    for &(p, m) in &cfg.fields {
        ctxs.push(make_field(p, m)?);
    }
    let mut tasks = Vec::new();
    for (fi, _) in cfg.fields.iter().enumerate() {
        for family in cfg.family.to_vec() {
            for &size in &cfg.sizes {
                for trial in 0..cfg.trials {
                    tasks.push((
                        fi,
                        Task {
                            family,
                            size,
                            trial,
                        },
                    ));
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let results: Vec<Result<ResultRow>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(fi, t)| run_task(cfg, &ctxs[*fi], t))
            .collect()
    });
    let mut indexed = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        indexed.push((i, r?));
    }

    // audit roughly 1% of rows, at least one
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(u64::MAX);
    let audit_count = indexed.len().div_ceil(100);
    let picks = index::sample(&mut rng, indexed.len(), audit_count);
    for i in picks {
        let (fi, task) = &tasks[i];
        audit_row(cfg, &ctxs[*fi], task, &indexed[i].1)?;
    }

    indexed.sort_by_key(|(i, r)| (r.p, r.m, r.size, r.trial, *i));
    let rows: Vec<ResultRow> = indexed.into_iter().map(|(_, r)| r).collect();
    let fits = group_fits(&rows);

    let mut csv = format!("{CSV_VERSION_LINE}\n{RESULT_HEADER}\n");
    for r in &rows {
        csv.push_str(&r.csv_line());
        csv.push('\n');
    }
    let mut fit_csv = format!("{CSV_VERSION_LINE}\n{FIT_HEADER}\n");
    for f in &fits {
        fit_csv.push_str(&f.csv_line());
        fit_csv.push('\n');
    }
    Ok(SweepOutcome {
        rows,
        fits,
        audited: audit_count,
        csv,
        fit_csv,
    })
}

/// Path of the fit summary written next to a sweep CSV.
pub fn fit_path(outputs: &Path) -> PathBuf {
    let stem = outputs
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".into());
    outputs.with_file_name(format!("{stem}.fit.csv"))
}

/// Runs the sweep and writes `outputs` plus its `.fit.csv` summary.
pub fn cmd_sweep(cfg: &SweepConfig, threads: Option<usize>) -> Result<SweepOutcome> {
    let outcome = run_sweep(cfg, threads)?;
    if let Some(dir) = cfg.outputs.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(&cfg.outputs, &outcome.csv)?;
    fs::write(fit_path(&cfg.outputs), &outcome.fit_csv)?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(size: usize, max_kl: f64) -> ResultRow {
        ResultRow {
            p: 101,
            m: 1,
            q: 101,
            family: Family::Random,
            size,
            trial: 0,
            seed: 0,
            d: 1,
            k: max_kl,
            l: 1.0,
            max_kl,
            measured_exponent: 0.0,
            ratio_k14l12: 0.0,
            hypothesis_ok: true,
            runtime_ms: None,
        }
    }

    #[test]
    fn family_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(
            generate_family(&f7, Family::Interval, 3, 0, 0)
                .unwrap()
                .codes(),
            vec![1, 2, 3]
        );
        assert_eq!(
            generate_family(&f7, Family::Subgroup, 3, 0, 0)
                .unwrap()
                .codes(),
            vec![1, 2, 4]
        );
        assert_eq!(
            generate_family(&f7, Family::Geometric, 1, 0, 0)
                .unwrap()
                .codes(),
            vec![1]
        );
        // {1, 6} + 1 = {2, 0}; zero is dropped
        assert_eq!(
            generate_family(&f7, Family::ShiftedSubgroup, 2, 0, 0)
                .unwrap()
                .codes(),
            vec![2]
        );
        let f9 = make_field(3, 2).unwrap();
        assert!(matches!(
            generate_family(&f9, Family::Interval, 3, 0, 0),
            Err(Error::PrimeFieldOnly(2))
        ));
        assert!(generate_family(&f7, Family::Random, 7, 0, 0).is_err());
    }

    #[test]
    fn random_family_is_seeded() {
        let f = make_field(1009, 1).unwrap();
        let a = generate_family(&f, Family::Random, 20, 42, 3).unwrap();
        let b = generate_family(&f, Family::Random, 20, 42, 3).unwrap();
        let c = generate_family(&f, Family::Random, 20, 42, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 20);
        assert!(!a.contains_zero());
    }

    #[test]
    fn fit_recovers_planted_slope() {
        let rows: Vec<_> = [8usize, 16, 32, 64, 128]
            .iter()
            .map(|&s| row(s, (s as f64).powf(1.05) / s as f64))
            .collect();
        let fit = exponent_fit(&rows).unwrap();
        assert!((fit.slope - 1.05).abs() < 1e-9);
        assert!(fit.intercept.abs() < 1e-9);
        let flat: Vec<_> = [8usize, 16, 32]
            .iter()
            .map(|&s| row(s, 10.0 / s as f64))
            .collect();
        assert!(exponent_fit(&flat).unwrap().slope.abs() < 1e-9);
        assert!(exponent_fit(&[row(8, 1.0), row(8, 2.0)]).is_err());
    }

    #[test]
    fn config_parsing() {
        let cfg = SweepConfig::from_json(
            r#"{"fields": [[101, 1]], "family": "random", "sizes": [8], "trials": 1,
                "seed": 42, "d_policy": "random_nonzero", "outputs": "x.csv"}"#,
        )
        .unwrap();
        assert_eq!(cfg.d_policy, DPolicy::RandomNonzero);
        let cfg = SweepConfig::from_json(
            r#"{"fields": [[101, 1]], "family": ["geometric", "subgroup"], "sizes": [8],
                "seed": 1, "d_policy": 3, "outputs": "x.csv", "preset": "a-a1"}"#,
        )
        .unwrap();
        assert_eq!(cfg.family.to_vec().len(), 2);
        assert_eq!(cfg.d_policy, DPolicy::Fixed(3));
        assert!(SweepConfig::from_json(
            r#"{"fields": [[101, 1]], "family": "random", "sizes": [8], "seed": 1,
                "outputs": "x.csv", "bogus": 1}"#
        )
        .is_err());
        assert!(SweepConfig::from_json(
            r#"{"fields": [[101, 1]], "family": "random", "sizes": [8], "seed": 1,
                "outputs": "x.csv", "trials": 0}"#
        )
        .is_err());
        assert!(SweepConfig::from_json(
            r#"{"fields": [[101, 1]], "family": "random", "sizes": [8], "seed": 1,
                "outputs": "x.csv", "d_policy": 0}"#
        )
        .is_err());
    }

    #[test]
    fn preset_a_a1_rows() {
        let cfg = SweepConfig::from_json(
            r#"{"fields": [[1009, 1]], "family": "random", "sizes": [10, 20], "seed": 5,
                "outputs": "x.csv", "preset": "a-a1"}"#,
        )
        .unwrap();
        let out = run_sweep(&cfg, Some(1)).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert!(out.rows.iter().all(|r| r.d == 1));
    }

    #[test]
    fn extension_field_rows_use_coset_condition() {
        let cfg = SweepConfig::from_json(
            r#"{"fields": [[2, 8]], "family": "geometric", "sizes": [4, 8], "seed": 5,
                "outputs": "x.csv"}"#,
        )
        .unwrap();
        let out = run_sweep(&cfg, Some(2)).unwrap();
        assert_eq!(out.rows.len(), 2);
        // {1, g, g^2, g^3}^2 has 7 elements and meets F_16 in at most 4 of them
        assert_eq!(out.fits.len(), 1);
        assert_eq!(out.fits[0].target, 1.0 + 1.0 / 559.0);
    }
}
