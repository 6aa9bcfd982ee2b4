//! Self-check suites: randomized and exhaustive comparisons of the fast paths
//! against the oracles and against the identities and inequalities they must
//! satisfy.
//!
//! Every check takes explicit parameters; [`run_suite`] fills them with
//! defaults capped at `max_q`.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::energy::{c4, c4_totals, cs_chain, energy, identity_check, plunnecke_check};
use crate::energy::{EnergyKind, TripleWitness};
use crate::error::{Error, Result};
use crate::ff::{divisors, is_prime, make_field, subfield, Elem, Field, MAX_ORDER};
use crate::gauss::{bounds_report_for, gauss_direct, gauss_via_subgroup};
use crate::oracle::{self, OracleBudget};
use crate::setops::{coset_scan, product_set, shift, ESet, ThresholdBase};
use crate::subgrp::{count_solutions, nth_powers, subfield_intersection, subgroup_of_order};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub evaluations: u64,
    pub failures: u64,
    /// First failure, or a summary statistic.
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.into(),
            evaluations: 0,
            failures: 0,
            detail: String::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.evaluations += 1;
        if !ok {
            if self.failures == 0 {
                self.detail = what();
            }
            self.failures += 1;
        }
    }

    fn record_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => {
                self.evaluations += 1;
                Some(v)
            }
            Err(e) => {
                self.record(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn merge(&mut self, other: CheckOutcome) {
        self.evaluations += other.evaluations;
        if self.failures == 0 && other.failures > 0 {
            self.detail = other.detail;
        }
        self.failures += other.failures;
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.evaluations > 0
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {}: {} evaluations, {} failures",
            self.name, self.evaluations, self.failures
        );
        if !self.detail.is_empty() {
            s.push_str(" (");
            s.push_str(&self.detail);
            s.push(')');
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Identities,
    Bounds,
    Oracle,
    Gauss,
    Subfields,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::All,
        Suite::Identities,
        Suite::Bounds,
        Suite::Oracle,
        Suite::Gauss,
        Suite::Subfields,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Identities => "identities",
            Suite::Bounds => "bounds",
            Suite::Oracle => "oracle",
            Suite::Gauss => "gauss",
            Suite::Subfields => "subfields",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// `(p, m)` for every prime power `q` in `[min_q, max_q]`, by increasing `q`.
pub fn prime_powers(min_q: u64, max_q: u64) -> Vec<(u64, u32)> {
    let max_q = max_q.min(MAX_ORDER);
    let mut out = Vec::new();
    for p in 2..=max_q {
        if !is_prime(p) {
            continue;
        }
        let (mut q, mut m) = (p, 1u32);
        while q <= max_q {
            if q >= min_q {
                out.push((p, m));
            }
            q *= p;
            m += 1;
        }
    }
    out.sort_by_key(|&(p, m)| p.pow(m));
    out
}

fn fields(min_q: u64, max_q: u64) -> Vec<Field> {
    prime_powers(min_q, max_q)
        .into_iter()
        .map(|(p, m)| make_field(p, m).expect("prime power"))
        .collect()
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

fn random_elem(rng: &mut ChaCha8Rng, ctx: &Field) -> Elem {
    Elem::from_code(rng.gen_range(0..ctx.q()) as u32)
}

fn random_nonzero(rng: &mut ChaCha8Rng, ctx: &Field) -> Elem {
    Elem::from_code(rng.gen_range(1..ctx.q()) as u32)
}

/// Uniform subset of `F_q` (or `F_q^*`) of the given size.
fn random_set(rng: &mut ChaCha8Rng, ctx: &Field, size: usize, nonzero: bool) -> ESet {
    let offset = nonzero as u64;
    let pool = (ctx.q() - offset) as usize;
    let picks = index::sample(rng, pool, size.min(pool));
    ESet::from_codes(ctx.clone(), picks.into_iter().map(|i| i as u64 + offset))
        .expect("codes below q")
}

fn random_set_in(rng: &mut ChaCha8Rng, ctx: &Field, lo: usize, hi: usize, nonzero: bool) -> ESet {
    let size = random_size(rng, lo, hi, ctx);
    random_set(rng, ctx, size, nonzero)
}

fn random_size(rng: &mut ChaCha8Rng, lo: usize, hi: usize, ctx: &Field) -> usize {
    let cap = (ctx.q() - 1) as usize;
    rng.gen_range(lo..=hi.max(lo)).min(cap)
}

fn random_subgroup(rng: &mut ChaCha8Rng, ctx: &Field) -> ESet {
    let ds = divisors(ctx.q() - 1);
    subgroup_of_order(ctx, *pick(rng, &ds))
        .expect("divisor")
        .elements
}

fn describe(s: &ESet) -> String {
    format!("{:?} in F_{}", s.codes(), s.ctx().q())
}

/// Distributivity, inverses and additivity of the trace on random triples.
pub fn field_axioms(rng: &mut ChaCha8Rng, samples: usize, max_q: u64) -> CheckOutcome {
    let fs = fields(2, max_q);
    let mut out = CheckOutcome::new("field axioms and trace");
    for _ in 0..samples {
        let f = pick(rng, &fs);
        let (x, y, z) = (
            random_elem(rng, f),
            random_elem(rng, f),
            random_elem(rng, f),
        );
        let dist = f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z));
        let inv = x.is_zero() || f.mul(x, f.inv(x).unwrap()) == Elem::ONE;
        let tr = f.trace(f.add(x, y)) == f.add(f.trace(x), f.trace(y))
            && f.trace(z) == f.trace_by_frobenius(z)
            && f.trace(z).code() < f.p() as u32;
        out.record(dist && inv && tr, || {
            format!("F_{} at ({}, {}, {})", f.q(), x, y, z)
        });
    }
    out
}

/// The shifted-product identity on random tuples spread over at least
/// `min_fields` fields with `5 <= q <= max_q`.
pub fn identity_tuples(
    rng: &mut ChaCha8Rng,
    tuples: usize,
    min_fields: usize,
    max_q: u64,
) -> CheckOutcome {
    let all = fields(5, max_q);
    let chosen: Vec<Field> = index::sample(rng, all.len(), min_fields.min(all.len()))
        .into_iter()
        .map(|i| all[i].clone())
        .collect();
    let mut out = CheckOutcome::new("shifted-product identity");
    let mut used = vec![false; chosen.len()];
    for i in 0..tuples {
        // round-robin first so every chosen field is exercised
        let fi = if i < chosen.len() {
            i
        } else {
            rng.gen_range(0..chosen.len())
        };
        used[fi] = true;
        let f = &chosen[fi];
        let idx = index::sample(rng, f.q() as usize, 3);
        let a = [0, 1, 2].map(|k| Elem::from_code(idx.index(k) as u32));
        let (c, b, d) = (
            random_nonzero(rng, f),
            random_elem(rng, f),
            random_nonzero(rng, f),
        );
        let r = identity_check(f, a, c, b, d);
        out.record(matches!(r, Ok(true)), || {
            format!("F_{}, a = {a:?}, c = {c}, b = {b}, d = {d}: {r:?}", f.q())
        });
    }
    let n_used = used.iter().filter(|&&u| u).count();
    if out.failures == 0 {
        out.detail = format!("{n_used} fields");
    }
    if n_used < min_fields {
        out.record(false, || {
            format!("only {n_used} fields available, wanted {min_fields}")
        });
    }
    out
}

/// `sum C4 = |C||A'|^3` and the diagonal bound on random `(A', C)`.
pub fn c4_identity(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs = fields(3, max_q);
    let mut out = CheckOutcome::new("C4 total and diagonal");
    for _ in 0..instances {
        let f = pick(rng, &fs);
        let na = random_size(rng, 1, max_size, f);
        let nc = random_size(rng, 1, max_size, f);
        let a = random_set(rng, f, na, false);
        let c = random_set(rng, f, nc, true);
        out.record_result(c4_totals(&a, &c), || {
            format!("A' = {}, C = {:?}", describe(&a), c.codes())
        });
    }
    out
}

/// `C4` of random triples of `A'C` against the scanning oracle.
pub fn c4_vs_oracle(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs = fields(3, max_q);
    let mut out = CheckOutcome::new("C4 vs oracle");
    for _ in 0..instances {
        let f = pick(rng, &fs);
        let a = random_set_in(rng, f, 1, max_size, false);
        let c = random_set_in(rng, f, 1, max_size, true);
        let ys = product_set(&a, &c).expect("same field");
        let [y1, y2, y3] = [0; 3].map(|_| *pick(rng, ys.elems()));
        let fast = c4(&a, &c, y1, y2, y3).ok();
        let slow = oracle::c4_brute(&a, &c, y1, y2, y3).ok();
        out.record(fast.is_some() && fast == slow, || {
            format!(
                "A' = {}, y = ({y1}, {y2}, {y3}): {fast:?} vs {slow:?}",
                describe(&a)
            )
        });
    }
    out
}

/// The three Cauchy–Schwarz inequalities on random witnesses.
pub fn cs_chain_random(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs = fields(7, max_q);
    let mut out = CheckOutcome::new("Cauchy-Schwarz chain");
    let mut done = 0;
    while done < instances {
        let f = pick(rng, &fs);
        let d = random_nonzero(rng, f);
        let raw = random_set_in(rng, f, 3, max_size, true);
        let a = ESet::from_elems(f.clone(), raw.iter().filter(|&x| x != f.neg(d)).collect());
        if a.len() < 3 {
            continue;
        }
        // |B| = |A|, so the bound |B| C4 <= T reads |A| C4 <= T
        let b = random_set(rng, f, a.len(), true);
        let c = random_set_in(rng, f, 1, max_size, true);
        let a_prime = shift(&a, d);
        // a triple with C4 >= 1: three points of (A + d) x for one x in C
        let x = *pick(rng, c.elems());
        let idx = index::sample(rng, a_prime.len(), 3);
        let [y1, y2, y3] = [0, 1, 2].map(|k| f.mul(a_prime.elems()[idx.index(k)], x));
        let w = match TripleWitness::new(&a_prime, &c, y1, y2, y3) {
            Ok(w) => w,
            Err(e) => {
                out.record(false, || format!("witness: {e}"));
                done += 1;
                continue;
            }
        };
        out.record_result(cs_chain(&a, &b, &c, d, &w), || {
            format!(
                "A = {}, B = {:?}, C = {:?}, d = {d}",
                describe(&a),
                b.codes(),
                c.codes()
            )
        });
        done += 1;
    }
    out
}

/// Plünnecke–Ruzsa in both forms with `k` in 1..=3.
pub fn plunnecke_random(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs = fields(3, max_q);
    let mut out = CheckOutcome::new("Plunnecke-Ruzsa");
    for i in 0..instances {
        let f = pick(rng, &fs);
        let kind = if i % 2 == 0 {
            EnergyKind::Additive
        } else {
            EnergyKind::Multiplicative
        };
        let nonzero = kind == EnergyKind::Multiplicative;
        let k = rng.gen_range(1..=3);
        let y = random_set_in(rng, f, 1, max_size, nonzero);
        let xs: Vec<ESet> = (0..k)
            .map(|_| {
                let n = random_size(rng, 1, max_size, f);
                random_set(rng, f, n, nonzero)
            })
            .collect();
        out.record_result(plunnecke_check(&y, &xs, kind), || {
            format!("{kind}, Y = {}, k = {k}", describe(&y))
        });
    }
    out
}

/// `(|A||B|)^2 <= |A o B| E(A, B)`.
pub fn energy_cauchy_schwarz(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs = fields(2, max_q);
    let mut out = CheckOutcome::new("energy Cauchy-Schwarz");
    for i in 0..instances {
        let f = pick(rng, &fs);
        let kind = if i % 2 == 0 {
            EnergyKind::Additive
        } else {
            EnergyKind::Multiplicative
        };
        let a = random_set_in(rng, f, 1, max_size, false);
        let b = random_set_in(rng, f, 1, max_size, false);
        let r = energy(&a, &b, kind).expect("same field");
        let lhs = (a.len() as u128 * b.len() as u128).pow(2);
        let rhs = r.support_size as u128 * r.value as u128;
        out.record(lhs <= rhs, || {
            format!("{kind}, A = {}: {lhs} > {rhs}", describe(&a))
        });
    }
    out
}

/// With exponent 1 relative to `|S|` the coset condition holds trivially.
pub fn coset_scan_trivial(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs: Vec<Field> = fields(4, max_q).into_iter().filter(|f| f.m() > 1).collect();
    let mut out = CheckOutcome::new("coset scan at exponent 1");
    if fs.is_empty() {
        out.detail = "no extension fields below max_q".into();
        return out;
    }
    for _ in 0..instances {
        let f = pick(rng, &fs);
        let s = random_set_in(rng, f, 1, max_size, false);
        let r = coset_scan(&s, 1.0, ThresholdBase::SetSize).map(|r| r.pass);
        out.record(matches!(r, Ok(true)), || describe(&s));
    }
    out
}

/// Fast energies against the four-loop oracle.
pub fn energy_vs_oracle(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs = fields(2, max_q);
    let budget = OracleBudget::unlimited();
    let mut out = CheckOutcome::new("energy vs oracle");
    for i in 0..instances {
        let f = pick(rng, &fs);
        let kind = if i % 2 == 0 {
            EnergyKind::Additive
        } else {
            EnergyKind::Multiplicative
        };
        let cap = (f.q() as usize).min(max_size);
        let a = random_set_in(rng, f, 1, cap, false);
        let b = random_set_in(rng, f, 1, cap, false);
        let fast = energy(&a, &b, kind).map(|r| r.value).ok();
        let slow = oracle::energy_brute(&a, &b, kind, &budget).ok();
        out.record(fast.is_some() && fast == slow, || {
            format!(
                "{kind}, A = {}, B = {:?}: {fast:?} vs {slow:?}",
                describe(&a),
                b.codes()
            )
        });
    }
    out
}

/// Product sets against the list-append oracle.
pub fn product_set_vs_oracle(
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_size: usize,
    max_q: u64,
) -> CheckOutcome {
    let fs = fields(2, max_q);
    let mut out = CheckOutcome::new("product set vs oracle");
    for _ in 0..instances {
        let f = pick(rng, &fs);
        let cap = (f.q() as usize).min(max_size);
        let a = random_set_in(rng, f, 1, cap, false);
        let b = random_set_in(rng, f, 1, cap, false);
        let fast = product_set(&a, &b).map(|s| s.elems().to_vec()).ok();
        let slow = oracle::product_set_brute(&a, &b).ok();
        out.record(fast.is_some() && fast == slow, || {
            format!("A = {}, B = {:?}", describe(&a), b.codes())
        });
    }
    out
}

/// `#{g - h = d}` against the double loop, over prime fields `p <= max_p`.
/// The detail reports the largest `count / max(|G|, |H|)^{26/27}` seen.
pub fn count_vs_oracle(rng: &mut ChaCha8Rng, instances: usize, max_p: u64) -> CheckOutcome {
    let fs: Vec<Field> = fields(3, max_p)
        .into_iter()
        .filter(|f| f.m() == 1)
        .collect();
    let budget = OracleBudget::unlimited();
    let mut out = CheckOutcome::new("solution count vs oracle");
    let mut worst = 0f64;
    for _ in 0..instances {
        let f = pick(rng, &fs);
        let g = random_subgroup(rng, f);
        let h = random_subgroup(rng, f);
        let d = random_nonzero(rng, f);
        let fast = count_solutions(&g, &h, d);
        let slow = oracle::count_solutions_brute(&g, &h, d, &budget).ok();
        let ok = match &fast {
            Ok(r) => {
                if r.corollary_ratio.is_finite() {
                    worst = worst.max(r.corollary_ratio);
                }
                Some(r.count) == slow && r.corollary_ratio.is_finite()
            }
            Err(_) => false,
        };
        out.record(ok, || {
            format!(
                "F_{}, |G| = {}, |H| = {}, d = {d}: {fast:?} vs {slow:?}",
                f.q(),
                g.len(),
                h.len()
            )
        });
    }
    if out.failures == 0 {
        out.detail = format!("max corollary ratio {worst:.4}");
    }
    out
}

/// `E^x(G) = |G|^3` for every subgroup of every `F_q^*`, `q <= max_q`.
pub fn subgroup_energy(max_q: u64) -> CheckOutcome {
    let outcomes: Vec<CheckOutcome> = fields(2, max_q)
        .par_iter()
        .map(|f| {
            let mut out = CheckOutcome::new("");
            for t in divisors(f.q() - 1) {
                let g = subgroup_of_order(f, t).expect("divisor").elements;
                let e = energy(&g, &g, EnergyKind::Multiplicative).map(|r| r.value);
                out.record(e.as_ref().ok() == Some(&t.pow(3)), || {
                    format!("F_{}, |G| = {t}: {e:?}", f.q())
                });
            }
            out
        })
        .collect();
    let mut out = CheckOutcome::new("multiplicative energy of subgroups");
    for o in outcomes {
        out.merge(o);
    }
    out
}

/// The gcd formula for `|G ∩ F_{p^nu}|` against Frobenius fixed points,
/// for every `n | q - 1` and every `nu | m`, over extension fields.
pub fn subfield_formula(max_q: u64) -> CheckOutcome {
    let fs: Vec<Field> = fields(4, max_q).into_iter().filter(|f| f.m() > 1).collect();
    let outcomes: Vec<CheckOutcome> = fs
        .par_iter()
        .map(|f| {
            let mut out = CheckOutcome::new("");
            for n in divisors(f.q() - 1) {
                let g = nth_powers(f, n).expect("n >= 1");
                for nu in (1..=f.m()).filter(|nu| f.m() % nu == 0) {
                    let exact = subfield_intersection(&g, nu);
                    let brute = oracle::subfield_intersection_brute(&g, nu);
                    let ok = match (&exact, &brute) {
                        (Ok((e, formula)), Ok(b)) => e == formula && e == b,
                        _ => false,
                    };
                    out.record(ok, || {
                        format!("F_{}, n = {n}, nu = {nu}: {exact:?} vs {brute:?}", f.q())
                    });
                }
            }
            out
        })
        .collect();
    let mut out = CheckOutcome::new("subfield intersection formula");
    for o in outcomes {
        out.merge(o);
    }
    out
}

/// `G ⊆ F_{p^nu}` iff `|G|` divides `p^nu - 1`.
pub fn subgroup_in_subfield(max_q: u64) -> CheckOutcome {
    let fs: Vec<Field> = fields(4, max_q).into_iter().filter(|f| f.m() > 1).collect();
    let mut out = CheckOutcome::new("subgroups inside subfields");
    for f in &fs {
        for nu in f.proper_subfield_degrees() {
            let sub = subfield(f, nu).expect("nu | m");
            let size = f.p().pow(nu) - 1;
            for t in divisors(f.q() - 1) {
                let g = subgroup_of_order(f, t).expect("divisor").elements;
                out.record(g.is_subset(&sub) == (size % t == 0), || {
                    format!("F_{}, |G| = {t}, nu = {nu}", f.q())
                });
            }
        }
    }
    out
}

/// Gauss sums for every `q <= max_q` and every `n | q - 1` with `n >= 2`, at
/// `a_per_n` random nonzero `a`: agreement of the two evaluations, the Weil
/// bound and the Konyagin bound, reported separately. `n = 1` is checked for
/// agreement only.
pub fn gauss_checks(rng: &mut ChaCha8Rng, max_q: u64, a_per_n: usize) -> [CheckOutcome; 3] {
    let fs = fields(3, max_q);
    let seeds: Vec<u64> = fs.iter().map(|_| rng.gen()).collect();
    let per_field: Vec<[CheckOutcome; 3]> = fs
        .par_iter()
        .zip(seeds)
        .map(|(f, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut agree = CheckOutcome::new("");
            let mut weil = CheckOutcome::new("");
            let mut kony = CheckOutcome::new("");
            for n in divisors(f.q() - 1) {
                let g = nth_powers(f, n).expect("n >= 1");
                let e = energy(&g.elements, &g.elements, EnergyKind::Additive)
                    .expect("same field")
                    .value;
                let count = a_per_n.min(f.q() as usize - 1);
                for i in index::sample(&mut rng, f.q() as usize - 1, count) {
                    let a = Elem::from_code(i as u32 + 1);
                    let what = || format!("F_{}, n = {n}, a = {a}", f.q());
                    if n == 1 {
                        agree.record_result(gauss_via_subgroup(f, n, a), what);
                        continue;
                    }
                    match bounds_report_for(&g, e, a) {
                        Ok(_) => {
                            agree.record(true, String::new);
                            weil.record(true, String::new);
                            kony.record(true, String::new);
                        }
                        Err(err) => {
                            let label = match &err {
                                Error::Violation { label, .. } => label.clone(),
                                _ => String::new(),
                            };
                            let target = if label.starts_with("Weil") {
                                &mut weil
                            } else if label.starts_with("Konyagin") {
                                &mut kony
                            } else {
                                &mut agree
                            };
                            target.record(false, || format!("{}: {err}", what()));
                        }
                    }
                }
            }
            [agree, weil, kony]
        })
        .collect();
    let mut out = [
        CheckOutcome::new("Gauss sum via subgroup"),
        CheckOutcome::new("Weil bound"),
        CheckOutcome::new("Konyagin bound"),
    ];
    for [a, w, k] in per_field {
        out[0].merge(a);
        out[1].merge(w);
        out[2].merge(k);
    }
    out
}

/// `|S_2(a)| = sqrt(p)` for odd primes `p <= max_p` and every `a != 0`.
pub fn quadratic_gauss(max_p: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new("quadratic Gauss sum modulus");
    for f in fields(3, max_p).into_iter().filter(|f| f.m() == 1) {
        let root = (f.p() as f64).sqrt();
        for a in f.elements().skip(1) {
            let s = gauss_direct(&f, 2, a);
            let ok = matches!(&s, Ok(v) if (v.norm() - root).abs() <= 1e-9 * f.p() as f64);
            out.record(ok, || format!("p = {}, a = {a}: {s:?}", f.p()));
        }
    }
    out
}

fn cap(max_q: Option<u64>, default: u64) -> u64 {
    max_q.map_or(default, |q| q.min(default).max(2))
}

/// Runs one suite (or all of them) with default sizes capped at `max_q`.
pub fn run_suite(suite: Suite, max_q: Option<u64>, seed: u64) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Identities) {
        out.push(field_axioms(&mut rng, 20_000, cap(max_q, 4096)));
        out.push(identity_tuples(&mut rng, 10_000, 20, cap(max_q, 2048)));
        out.push(c4_identity(&mut rng, 100, 12, cap(max_q, 256)));
        out.push(subgroup_energy(cap(max_q, 1024)));
    }
    if wants(Suite::Bounds) {
        out.push(cs_chain_random(&mut rng, 100, 8, cap(max_q, 128)));
        out.push(plunnecke_random(&mut rng, 200, 8, cap(max_q, 256)));
        out.push(energy_cauchy_schwarz(&mut rng, 200, 40, cap(max_q, 512)));
        out.push(coset_scan_trivial(&mut rng, 100, 40, cap(max_q, 4096)));
    }
    if wants(Suite::Oracle) {
        out.push(energy_vs_oracle(&mut rng, 200, 40, cap(max_q, 512)));
        out.push(product_set_vs_oracle(&mut rng, 200, 40, cap(max_q, 512)));
        out.push(c4_vs_oracle(&mut rng, 200, 12, cap(max_q, 256)));
        out.push(count_vs_oracle(&mut rng, 500, cap(max_q, 997)));
    }
    if wants(Suite::Gauss) {
        out.extend(gauss_checks(&mut rng, cap(max_q, 2000), 5));
        out.push(quadratic_gauss(cap(max_q, 97)));
    }
    if wants(Suite::Subfields) {
        out.push(subfield_formula(cap(max_q, 4096)));
        out.push(subgroup_in_subfield(cap(max_q, 4096)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_listing() {
        let got: Vec<u64> = prime_powers(2, 32).iter().map(|&(p, m)| p.pow(m)).collect();
        assert_eq!(
            got,
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]
        );
        assert_eq!(prime_powers(10, 12), vec![(11, 1)]);
    }

    #[test]
    fn suites_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for o in run_suite(Suite::All, Some(64), 1) {
            assert!(o.passed(), "{}", o.line());
        }
    }

    #[test]
    fn outcome_lines() {
        let mut o = CheckOutcome::new("x");
        assert!(!o.passed());
        o.record(true, String::new);
        assert!(o.passed());
        assert!(o.line().starts_with("PASS x: 1 evaluations"));
        o.record(false, || "boom".into());
        o.record(false, || "later".into());
        assert_eq!(o.line(), "FAIL x: 3 evaluations, 2 failures (boom)");
    }
}
