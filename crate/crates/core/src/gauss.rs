//! Gauss sums `S_n(a) = sum_x psi_a(x^n)` and the bounds compared against them.
//!
//! Sums accumulate in increasing element-code order, so output is
//! bit-reproducible on a given platform.

use num_complex::Complex64;
use serde::Serialize;

use crate::energy::{energy, EnergyKind};
use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::subgrp::{nth_powers, SubgroupInfo, DELTA2};

/// Largest field order for which `gauss_direct` will enumerate the field.
pub const DIRECT_LIMIT: u64 = 1_000_000;

/// Absolute slack allowed on the Weil and Konyagin comparisons.
pub const BOUND_SLACK: f64 = 1e-6;

fn require_nonzero(a: Elem) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroNotAllowed("character parameter a"))
    } else {
        Ok(())
    }
}

/// `S_n(a)` by summing over every element of the field.
pub fn gauss_direct(ctx: &Field, n: u64, a: Elem) -> Result<Complex64> {
    require_nonzero(a)?;
    if n == 0 {
        return Err(Error::ZeroNotAllowed("n"));
    }
    if ctx.q() > DIRECT_LIMIT {
        return Err(Error::FieldLimit {
            what: "direct Gauss sum",
            q: ctx.q(),
            limit: DIRECT_LIMIT,
        });
    }
    let roots = ctx.roots_of_unity();
    Ok(ctx
        .elements()
        .map(|x| roots[ctx.trace(ctx.mul(a, ctx.pow(x, n))).code() as usize])
        .sum())
}

/// `S(a, G) = sum_{g in G} psi_a(g)`.
pub fn subgroup_sum(g: &SubgroupInfo, a: Elem) -> Result<Complex64> {
    require_nonzero(a)?;
    let ctx = g.ctx();
    let roots = ctx.roots_of_unity();
    Ok(g.elements
        .iter()
        .map(|x| roots[ctx.trace(ctx.mul(a, x)).code() as usize])
        .sum())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GaussAgreement {
    pub direct: Complex64,
    /// `1 + n S(a, G_n)`
    pub via_subgroup: Complex64,
    pub subgroup_sum: Complex64,
    pub deviation: f64,
}

/// `1 + n S(a, G_n)` with `G_n` the `n`-th powers, checked against the direct
/// sum to within `1e-6 q`. Requires `n | q - 1`, since then `x -> x^n` hits
/// each element of `G_n` exactly `n` times.
pub fn gauss_via_subgroup(ctx: &Field, n: u64, a: Elem) -> Result<GaussAgreement> {
    let qm1 = ctx.q() - 1;
    if n == 0 || !qm1.is_multiple_of(n) {
        return Err(Error::NotDivisor {
            what: "n",
            divisor: n,
            value: qm1,
        });
    }
    agreement(&nth_powers(ctx, n)?, n, a)
}

fn agreement(g: &SubgroupInfo, n: u64, a: Elem) -> Result<GaussAgreement> {
    let ctx = g.ctx();
    let s = subgroup_sum(g, a)?;
    let via = Complex64::new(1.0, 0.0) + s * n as f64;
    let direct = gauss_direct(ctx, n, a)?;
    let deviation = (direct - via).norm();
    let tol = 1e-6 * ctx.q() as f64;
    if deviation > tol {
        return Err(Error::Violation {
            label: format!("|S_{n}(a) - (1 + n S(a, G))|"),
            lhs: deviation,
            rhs: tol,
        });
    }
    Ok(GaussAgreement {
        direct,
        via_subgroup: via,
        subgroup_sum: s,
        deviation,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussReport {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    pub n: u64,
    pub a: Elem,
    pub value: Complex64,
    pub abs: f64,
    /// `(n - 1) q^{1/2}`
    pub weil: f64,
    /// `q^{1/8} E(G)^{1/4}`, bounding `|S(a, G)|`
    pub konyagin: f64,
    /// `q^{(7 - 2δ2)/8} n^{(2 + 2δ2)/8}`, implicit constant 1
    pub bound_delta2: f64,
    pub subgroup_sum: Complex64,
    pub group_energy: u64,
    pub ratio_weil: f64,
    pub ratio_delta2: f64,
    /// `q^{(1 + 2δ2)/(2 + 2δ2)} = q^{29/57}`
    pub nontrivial_threshold: f64,
    pub below_threshold: bool,
}

/// Fills a [`GaussReport`], asserting the Weil bound on `|S_n(a)|`, the
/// Konyagin bound on `|S(a, G)|` and agreement of the two evaluations.
pub fn bounds_report(ctx: &Field, n: u64, a: Elem) -> Result<GaussReport> {
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    let g = nth_powers(ctx, n)?;
    let e = energy(&g.elements, &g.elements, EnergyKind::Additive)?.value;
    bounds_report_for(&g, e, a)
}

/// [`bounds_report`] for a precomputed `G = nth_powers(ctx, n)` and its
/// additive energy, for sweeps over many `a`.
pub fn bounds_report_for(g: &SubgroupInfo, group_energy: u64, a: Elem) -> Result<GaussReport> {
    let ctx = g.ctx();
    let n = g.n.ok_or(Error::MissingPowerIndex)?;
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    let qm1 = ctx.q() - 1;
    if !qm1.is_multiple_of(n) {
        return Err(Error::NotDivisor {
            what: "n",
            divisor: n,
            value: qm1,
        });
    }
    let agreement = agreement(g, n, a)?;
    let q = ctx.q() as f64;
    let value = agreement.direct;
    let abs = value.norm();
    let weil = (n - 1) as f64 * q.sqrt();
    if abs > weil + BOUND_SLACK {
        return Err(Error::Violation {
            label: format!("Weil bound, n = {n}"),
            lhs: abs,
            rhs: weil,
        });
    }
    let triangle = 1.0 + n as f64 * agreement.subgroup_sum.norm();
    if abs > triangle + 1e-6 * q {
        return Err(Error::Violation {
            label: "|S_n(a)| <= 1 + n |S(a, G)|".into(),
            lhs: abs,
            rhs: triangle,
        });
    }
    let konyagin = q.powf(0.125) * (group_energy as f64).powf(0.25);
    let s_abs = agreement.subgroup_sum.norm();
    if s_abs > konyagin + BOUND_SLACK {
        return Err(Error::Violation {
            label: format!("Konyagin bound on |S(a, G)|, |G| = {}", g.order),
            lhs: s_abs,
            rhs: konyagin,
        });
    }
    let bound_delta2 =
        q.powf((7.0 - 2.0 * DELTA2) / 8.0) * (n as f64).powf((2.0 + 2.0 * DELTA2) / 8.0);
    let nontrivial_threshold = q.powf((1.0 + 2.0 * DELTA2) / (2.0 + 2.0 * DELTA2));
    Ok(GaussReport {
        q: ctx.q(),
        p: ctx.p(),
        m: ctx.m(),
        n,
        a,
        value,
        abs,
        weil,
        konyagin,
        bound_delta2,
        subgroup_sum: agreement.subgroup_sum,
        group_energy,
        ratio_weil: abs / weil,
        ratio_delta2: abs / bound_delta2,
        nontrivial_threshold,
        below_threshold: (n as f64) < nontrivial_threshold,
    })
}

pub const GAUSS_CSV_HEADER: &str =
    "q,p,m,n,a,re,im,abs,weil,konyagin,bound_delta2,ratio_weil,ratio_delta2";

impl GaussReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.p,
            self.m,
            self.n,
            self.a,
            self.value.re,
            self.value.im,
            self.abs,
            self.weil,
            self.konyagin,
            self.bound_delta2,
            self.ratio_weil,
            self.ratio_delta2
        )
    }
}
