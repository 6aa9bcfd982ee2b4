//! Representation functions, additive and multiplicative energy, the `C4`
//! triple-count and the exact inequalities of the shifted-product argument.
//!
//! Every exact inequality of that argument (the Cauchy–Schwarz steps, the
//! union bound on degenerate triples, Plünnecke–Ruzsa) is checked in integer
//! arithmetic and turned into an [`Error::Violation`] if it ever fails; every
//! asymptotic bound is only reported as a ratio with implicit constant 1.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::setops::{dilate, product_set, shift, sum_set, ESet};
use crate::subgrp::is_subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyKind {
    Additive,
    Multiplicative,
}

impl EnergyKind {
    fn apply(self, ctx: &Field, x: Elem, y: Elem) -> Elem {
        match self {
            EnergyKind::Additive => ctx.add(x, y),
            EnergyKind::Multiplicative => ctx.mul(x, y),
        }
    }
}

impl FromStr for EnergyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" | "additive" => Ok(EnergyKind::Additive),
            "mult" | "mul" | "multiplicative" => Ok(EnergyKind::Multiplicative),
            _ => Err(Error::Invalid(format!("unknown energy kind {s:?}"))),
        }
    }
}

impl fmt::Display for EnergyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            EnergyKind::Additive => "additive",
            EnergyKind::Multiplicative => "multiplicative",
        })
    }
}

/// Energy value together with the representation function it was summed from.
#[derive(Clone, Debug, Serialize)]
pub struct EnergyReport {
    pub kind: EnergyKind,
    pub value: u64,
    /// `(z, r(z))` for every `z` with `r(z) > 0`, ascending in `z`.
    pub histogram: Vec<(Elem, u64)>,
    #[serde(rename = "support")]
    pub support_size: usize,
}

/// `r(z) = #{(a, b) in A x B : a∘b = z}`, sparse and ascending in `z`.
///
/// Products equal to zero are kept in `r(0)`.
pub fn representation(a: &ESet, b: &ESet, kind: EnergyKind) -> Result<Vec<(Elem, u64)>> {
    a.same_field(b)?;
    let ctx = a.ctx();
    let pairs = a.len() * b.len();
    let q = ctx.q() as usize;
    if q <= (1 << 20) || q <= 4 * pairs {
        let mut counts = vec![0u32; q];
        for x in a.iter() {
            for y in b.iter() {
                counts[kind.apply(ctx, x, y).code() as usize] += 1;
            }
        }
        Ok(counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(z, &c)| (Elem::from_code(z as u32), c as u64))
            .collect())
    } else {
        let mut vals = Vec::with_capacity(pairs);
        for x in a.iter() {
            for y in b.iter() {
                vals.push(kind.apply(ctx, x, y));
            }
        }
        vals.sort_unstable();
        let mut out: Vec<(Elem, u64)> = Vec::new();
        for v in vals {
            match out.last_mut() {
                Some((z, c)) if *z == v => *c += 1,
                _ => out.push((v, 1)),
            }
        }
        Ok(out)
    }
}

/// `E(A, B) = #{(a, a', b, b') : a∘b = a'∘b'} = sum_z r(z)^2`.
pub fn energy(a: &ESet, b: &ESet, kind: EnergyKind) -> Result<EnergyReport> {
    let histogram = representation(a, b, kind)?;
    let value = histogram.iter().map(|(_, c)| c * c).sum();
    Ok(EnergyReport {
        kind,
        value,
        support_size: histogram.len(),
        histogram,
    })
}

/// `E^x(Γ + x) / (|Γ|^2 ln |Γ|)` for a multiplicative subgroup `Γ`.
pub fn shkredov_ratio(gamma: &ESet, x: Elem) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::ZeroNotAllowed("shift x"));
    }
    if gamma.len() < 2 {
        return Err(Error::SetTooSmall("|Γ| >= 2 needed for the log"));
    }
    if !is_subgroup(gamma) {
        return Err(Error::NotSubgroup);
    }
    let shifted = shift(gamma, x);
    let e = energy(&shifted, &shifted, EnergyKind::Multiplicative)?.value as f64;
    let n = gamma.len() as f64;
    Ok(e / (n * n * n.ln()))
}

fn require_no_zero(set: &ESet, name: &'static str) -> Result<()> {
    if set.contains_zero() {
        Err(Error::ContainsZero(name))
    } else {
        Ok(())
    }
}

/// `C4(y1, y2, y3) = #{c in C : y_i c^{-1} in A' for i = 1, 2, 3}`.
pub fn c4(a_prime: &ESet, c: &ESet, y1: Elem, y2: Elem, y3: Elem) -> Result<u64> {
    a_prime.same_field(c)?;
    require_no_zero(c, "C")?;
    let ctx = c.ctx();
    let mut count = 0;
    for x in c.iter() {
        let inv = ctx.inv(x)?;
        if [y1, y2, y3]
            .iter()
            .all(|&y| a_prime.contains(ctx.mul(y, inv)))
        {
            count += 1;
        }
    }
    Ok(count)
}

/// Sums of `C4` over `(A'C)^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct C4Totals {
    pub total: u64,
    /// Contribution of triples with some `y_i = y_j`.
    pub diagonal: u64,
}

impl C4Totals {
    pub fn distinct(&self) -> u64 {
        self.total - self.diagonal
    }
}

/// Sums `C4` over every triple in `(A'C)^3`, asserting
/// `total = |C||A'|^3` and `diagonal <= 3|C||A'|^2`.
///
/// Each `y in A'C` gets a bitmask of the `c in C` with `y in cA'`; `C4` of a
/// triple is the popcount of the three masks' intersection.
pub fn c4_totals(a_prime: &ESet, c: &ESet) -> Result<C4Totals> {
    a_prime.same_field(c)?;
    require_no_zero(c, "C")?;
    let ctx = c.ctx();
    let ys = product_set(a_prime, c)?;
    let words = c.len().div_ceil(64);
    let mut masks = vec![0u64; ys.len() * words];
    for (j, x) in c.iter().enumerate() {
        for a in a_prime.iter() {
            let y = ctx.mul(a, x);
            let i = ys.elems().binary_search(&y).expect("y lies in A'C");
            masks[i * words + j / 64] |= 1 << (j % 64);
        }
    }
    let n = ys.len();
    let mask = |i: usize| &masks[i * words..(i + 1) * words];
    let (total, diagonal) = (0..n)
        .into_par_iter()
        .map(|i1| {
            let m1 = mask(i1);
            let mut buf = vec![0u64; words];
            let (mut total, mut diag) = (0u64, 0u64);
            for i2 in 0..n {
                let m2 = mask(i2);
                for (w, slot) in buf.iter_mut().enumerate() {
                    *slot = m1[w] & m2[w];
                }
                if buf.iter().all(|&w| w == 0) {
                    continue;
                }
                for i3 in 0..n {
                    let m3 = mask(i3);
                    let v: u64 = buf
                        .iter()
                        .zip(m3)
                        .map(|(a, b)| (a & b).count_ones() as u64)
                        .sum();
                    total += v;
                    if i1 == i2 || i1 == i3 || i2 == i3 {
                        diag += v;
                    }
                }
            }
            (total, diag)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));

    let (na, nc) = (a_prime.len() as u64, c.len() as u64);
    let expected = nc * na.pow(3);
    if total != expected {
        return Err(Error::IdentityFailed {
            label: "sum of C4 over (A'C)^3 = |C||A'|^3".into(),
            lhs: total.to_string(),
            rhs: expected.to_string(),
        });
    }
    Inequality::new(
        "diagonal C4 mass <= 3|C||A'|^2",
        diagonal as u128,
        (3 * nc * na * na) as u128,
    )
    .ensure()?;
    Ok(C4Totals { total, diagonal })
}

/// Evaluates both sides of
/// `a1 b - ((y3 - y1)/(y3 - y2)) a2 b = a3 b (y1 - y2)/(y3 - y2)`
/// with `y_i = (a_i + d) c`.
pub fn identity_sides(
    ctx: &Field,
    [a1, a2, a3]: [Elem; 3],
    c: Elem,
    b: Elem,
    d: Elem,
) -> Result<(Elem, Elem)> {
    if d.is_zero() {
        return Err(Error::ZeroNotAllowed("d"));
    }
    if c.is_zero() {
        return Err(Error::ZeroNotAllowed("c"));
    }
    let y = |a| ctx.mul(ctx.add(a, d), c);
    let (y1, y2, y3) = (y(a1), y(a2), y(a3));
    if y3 == y2 {
        return Err(Error::DegenerateTriple("y3 = y2"));
    }
    let denom = ctx.inv(ctx.sub(y3, y2))?;
    let alpha = ctx.mul(ctx.sub(y3, y1), denom);
    let beta = ctx.mul(ctx.sub(y1, y2), denom);
    let lhs = ctx.sub(ctx.mul(a1, b), ctx.mul(alpha, ctx.mul(a2, b)));
    let rhs = ctx.mul(ctx.mul(a3, b), beta);
    Ok((lhs, rhs))
}

/// True iff the shifted-product identity holds; `false` means an arithmetic bug.
pub fn identity_check(ctx: &Field, a: [Elem; 3], c: Elem, b: Elem, d: Elem) -> Result<bool> {
    identity_sides(ctx, a, c, b, d).map(|(l, r)| l == r)
}

/// Three pairwise distinct points of `A'C` with the ratios the argument uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    pub y1: Elem,
    pub y2: Elem,
    pub y3: Elem,
    /// `(y3 - y1) / (y3 - y2)`
    pub alpha: Elem,
    /// `(y1 - y2) / (y3 - y2)`
    pub beta: Elem,
    pub c4: u64,
}

impl TripleWitness {
    pub fn new(a_prime: &ESet, c: &ESet, y1: Elem, y2: Elem, y3: Elem) -> Result<Self> {
        if y1 == y2 || y1 == y3 || y2 == y3 {
            return Err(Error::DegenerateTriple(
                "y1, y2, y3 must be pairwise distinct",
            ));
        }
        let ctx = c.ctx();
        let denom = ctx.inv(ctx.sub(y3, y2))?;
        Ok(TripleWitness {
            y1,
            y2,
            y3,
            alpha: ctx.mul(ctx.sub(y3, y1), denom),
            beta: ctx.mul(ctx.sub(y1, y2), denom),
            c4: c4(a_prime, c, y1, y2, y3)?,
        })
    }
}

/// An exact inequality `lhs <= rhs` in cross-multiplied integer form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub lhs: u128,
    pub rhs: u128,
}

impl Inequality {
    pub fn new(label: impl Into<String>, lhs: u128, rhs: u128) -> Self {
        Inequality {
            label: label.into(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn ensure(self) -> Result<Self> {
        if self.holds() {
            Ok(self)
        } else {
            Err(Error::Violation {
                label: self.label,
                lhs: self.lhs as f64,
                rhs: self.rhs as f64,
            })
        }
    }
}

/// Outcome of the Cauchy–Schwarz step for one witness.
#[derive(Clone, Debug, Serialize)]
pub struct CsChainRecord {
    pub witness: TripleWitness,
    /// `#{(p1, p2) in AB x AB : p1 - alpha p2 in beta AB}`
    pub t: u64,
    pub ab_size: usize,
    pub e_ab_alpha_ab: u64,
    pub e_ab: u64,
    pub inequalities: Vec<Inequality>,
}

/// Verifies, for one witness built from `A' = A + d` and `C`:
/// (i) `T >= |B| C4`, (ii) `E(AB, αAB) >= T^2 / |AB|`, (iii) `E(AB, αAB) <= E(AB)`.
pub fn cs_chain(a: &ESet, b: &ESet, c: &ESet, d: Elem, w: &TripleWitness) -> Result<CsChainRecord> {
    a.same_field(b)?;
    a.same_field(c)?;
    if d.is_zero() {
        return Err(Error::ZeroNotAllowed("d"));
    }
    require_no_zero(a, "A")?;
    require_no_zero(b, "B")?;
    require_no_zero(c, "C")?;
    let a_prime = shift(a, d);
    require_no_zero(&a_prime, "A + d")?;
    let fresh = TripleWitness::new(&a_prime, c, w.y1, w.y2, w.y3)?;
    if fresh != *w {
        return Err(Error::DegenerateTriple(
            "witness does not match A + d and C",
        ));
    }

    let ctx = a.ctx();
    let ab = product_set(a, b)?;
    let alpha_ab = dilate(&ab, w.alpha)?;
    let beta_ab = dilate(&ab, w.beta)?;
    let mut t = 0u64;
    for p2 in ab.iter() {
        let ap2 = ctx.mul(w.alpha, p2);
        t += ab
            .iter()
            .filter(|&p1| beta_ab.contains(ctx.sub(p1, ap2)))
            .count() as u64;
    }
    let e_mixed = energy(&ab, &alpha_ab, EnergyKind::Additive)?.value;
    let e_ab = energy(&ab, &ab, EnergyKind::Additive)?.value;
    let inequalities = vec![
        Inequality::new("|B| C4 <= T", b.len() as u128 * w.c4 as u128, t as u128).ensure()?,
        Inequality::new(
            "T^2 <= |AB| E(AB, alpha AB)",
            t as u128 * t as u128,
            ab.len() as u128 * e_mixed as u128,
        )
        .ensure()?,
        Inequality::new(
            "E(AB, alpha AB) <= E(AB, AB)",
            e_mixed as u128,
            e_ab as u128,
        )
        .ensure()?,
    ];
    Ok(CsChainRecord {
        witness: *w,
        t,
        ab_size: ab.len(),
        e_ab_alpha_ab: e_mixed,
        e_ab,
        inequalities,
    })
}

/// Energy bound of the incidence theorem, evaluated with constant 1.
#[derive(Clone, Debug, Serialize)]
pub struct RnrsReport {
    pub energy: u64,
    pub x_size: usize,
    pub y_size: usize,
    pub yz_size: usize,
    pub rhs: f64,
    pub ratio: f64,
    /// `|X||Y||YZ| <= p^2`
    pub hypothesis_ok: bool,
}

/// `E(X, Z) / ((|X||YZ|)^{3/2} |Y|^{-1/2} + M|X||YZ|/|Y|)`, `M = max(|X|, |YZ|)`.
pub fn rnrs_ratio(x: &ESet, y: &ESet, z: &ESet) -> Result<RnrsReport> {
    x.same_field(y)?;
    x.same_field(z)?;
    let ctx = x.ctx();
    if !ctx.is_prime_field() {
        return Err(Error::PrimeFieldOnly(ctx.m()));
    }
    if x.is_empty() || y.is_empty() || z.is_empty() {
        return Err(Error::SetTooSmall("X, Y, Z must be nonempty"));
    }
    let yz = product_set(y, z)?;
    let energy = energy(x, z, EnergyKind::Additive)?.value;
    rnrs_from_sizes(ctx.p(), energy, x.len(), y.len(), yz.len())
}

fn rnrs_from_sizes(p: u64, energy: u64, nx: usize, ny: usize, nyz: usize) -> Result<RnrsReport> {
    let (fx, fy, fyz) = (nx as f64, ny as f64, nyz as f64);
    let big_m = fx.max(fyz);
    let rhs = (fx * fyz).powf(1.5) / fy.sqrt() + big_m * fx * fyz / fy;
    Ok(RnrsReport {
        energy,
        x_size: nx,
        y_size: ny,
        yz_size: nyz,
        rhs,
        ratio: energy as f64 / rhs,
        hypothesis_ok: (nx as u128) * (ny as u128) * (nyz as u128) <= (p as u128) * (p as u128),
    })
}

/// Growth ratios and the energy lower bound for one `(A, B, C, d)`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub a_size: usize,
    pub ab_size: usize,
    pub apc_size: usize,
    /// `|AB| / |A|`
    #[serde(rename = "K")]
    pub k: f64,
    /// `|(A + d)C| / |A|`
    #[serde(rename = "L")]
    pub l: f64,
    pub e_ab: u64,
    pub ratios: ChainRatios,
    pub inequalities: Vec<Inequality>,
    pub rnrs: Option<RnrsReport>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChainRatios {
    /// `E(AB) L^6 K / |A|^3`
    pub energy_lb: f64,
    /// `K^14 L^12 / |A|`
    pub k14l12: f64,
}

impl ChainReport {
    pub fn max_kl(&self) -> f64 {
        self.k.max(self.l)
    }
}

/// Computes `K`, `L`, `E(AB)` and the chain ratios; also checks
/// `|AA| <= |AB|^2 / |B|` whenever `A, B` avoid zero, and reports the
/// incidence-energy ratio with `X = Z = AB`, `Y = A` over prime fields.
pub fn energy_lb_report(a: &ESet, b: &ESet, c: &ESet, d: Elem) -> Result<ChainReport> {
    a.same_field(b)?;
    a.same_field(c)?;
    if a.len() != b.len() || a.len() != c.len() {
        return Err(Error::SizeMismatch(format!(
            "|A| = {}, |B| = {}, |C| = {}",
            a.len(),
            b.len(),
            c.len()
        )));
    }
    if a.len() < 2 {
        return Err(Error::SetTooSmall("|A| >= 2"));
    }
    if d.is_zero() {
        return Err(Error::ZeroNotAllowed("d"));
    }
    let a_prime = shift(a, d);
    require_no_zero(&a_prime, "A + d")?;
    require_no_zero(c, "C")?;

    let ab = product_set(a, b)?;
    let apc = product_set(&a_prime, c)?;
    let e_ab = energy(&ab, &ab, EnergyKind::Additive)?.value;
    let n = a.len() as f64;
    let k = ab.len() as f64 / n;
    let l = apc.len() as f64 / n;

    let mut inequalities = Vec::new();
    if !a.contains_zero() && !b.contains_zero() {
        let aa = product_set(a, a)?;
        inequalities.push(
            Inequality::new(
                "|AA| |B| <= |AB|^2",
                aa.len() as u128 * b.len() as u128,
                (ab.len() as u128).pow(2),
            )
            .ensure()?,
        );
    }
    let rnrs = if a.ctx().is_prime_field() {
        let yz = product_set(a, &ab)?;
        Some(rnrs_from_sizes(
            a.ctx().p(),
            e_ab,
            ab.len(),
            a.len(),
            yz.len(),
        )?)
    } else {
        None
    };
    Ok(ChainReport {
        a_size: a.len(),
        ab_size: ab.len(),
        apc_size: apc.len(),
        k,
        l,
        e_ab,
        ratios: ChainRatios {
            energy_lb: e_ab as f64 * l.powi(6) * k / n.powi(3),
            k14l12: k.powi(14) * l.powi(12) / n,
        },
        inequalities,
        rnrs,
    })
}

/// Result of one Plünnecke–Ruzsa evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct PlunneckeCheck {
    pub k: usize,
    /// `|X1 ∘ ... ∘ Xk|`
    pub lhs: u64,
    /// `prod |Y ∘ Xi| / |Y|^{k-1}`
    pub rhs: f64,
    pub inequality: Inequality,
}

impl PlunneckeCheck {
    pub fn holds(&self) -> bool {
        self.inequality.holds()
    }
}

/// `|X1 + ... + Xk| <= prod |Y + Xi| / |Y|^{k-1}` for `1 <= k <= 3`, or the
/// same statement with products. The multiplicative form is a statement
/// about the group `F_q^*`, so no set may contain zero there.
pub fn plunnecke_check(y: &ESet, xs: &[ESet], kind: EnergyKind) -> Result<PlunneckeCheck> {
    if y.is_empty() {
        return Err(Error::SetTooSmall("Y must be nonempty"));
    }
    if xs.is_empty() || xs.len() > 3 {
        return Err(Error::SetCount {
            min: 1,
            max: 3,
            got: xs.len(),
        });
    }
    for x in xs {
        y.same_field(x)?;
    }
    let op = |s: &ESet, t: &ESet| match kind {
        EnergyKind::Additive => sum_set(s, t),
        EnergyKind::Multiplicative => product_set(s, t),
    };
    if kind == EnergyKind::Multiplicative {
        require_no_zero(y, "Y")?;
        for x in xs {
            require_no_zero(x, "X_i")?;
        }
    }
    let mut acc = xs[0].clone();
    for x in &xs[1..] {
        acc = op(&acc, x)?;
    }
    let mut prod = 1u128;
    for x in xs {
        prod *= op(y, x)?.len() as u128;
    }
    let k = xs.len();
    let ny = y.len() as u128;
    let lhs = acc.len() as u64;
    let inequality = Inequality::new(
        format!("|X1..X{k}| |Y|^{} <= prod |Y Xi|", k - 1),
        lhs as u128 * ny.pow(k as u32 - 1),
        prod,
    )
    .ensure()?;
    Ok(PlunneckeCheck {
        k,
        lhs,
        rhs: prod as f64 / (ny as f64).powi(k as i32 - 1),
        inequality,
    })
}
