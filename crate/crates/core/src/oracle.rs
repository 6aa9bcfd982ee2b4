//! Brute-force reference counts.
//!
//! These loops only use field arithmetic; none of them goes through the
//! histograms, membership tables, bitmasks or closed forms of the fast paths
//! they are compared against.

use crate::energy::EnergyKind;
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::setops::ESet;
use crate::subgrp::SubgroupInfo;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_quadruples: u64,
    pub max_q: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_quadruples: 100_000_000,
            max_q: 4096,
        }
    }
}

impl OracleBudget {
    pub fn unlimited() -> Self {
        OracleBudget {
            max_quadruples: u64::MAX,
            max_q: u64::MAX,
        }
    }

    fn check(&self, q: u64, work: u128) -> Result<()> {
        if q > self.max_q {
            return Err(Error::BudgetExceeded(format!("q = {q} > {}", self.max_q)));
        }
        if work > self.max_quadruples as u128 {
            return Err(Error::BudgetExceeded(format!(
                "{work} tuples > {}",
                self.max_quadruples
            )));
        }
        Ok(())
    }
}

/// Counts `a∘b = a'∘b'` over all quadruples with four nested loops.
pub fn energy_brute(a: &ESet, b: &ESet, kind: EnergyKind, budget: &OracleBudget) -> Result<u64> {
    if a.ctx() != b.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = a.ctx();
    let (na, nb) = (a.len() as u128, b.len() as u128);
    budget.check(ctx.q(), na * na * nb * nb)?;
    let op = |x: Elem, y: Elem| match kind {
        EnergyKind::Additive => ctx.add(x, y),
        EnergyKind::Multiplicative => ctx.mul(x, y),
    };
    let (a, b) = (a.elems(), b.elems());
    let mut count = 0u64;
    for &x in a {
        for &x2 in a {
            for &y in b {
                let lhs = op(x, y);
                for &y2 in b {
                    if lhs == op(x2, y2) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// `C4` by scanning, for each `c`, all of `A'` for each `y_i = a c`.
pub fn c4_brute(a_prime: &ESet, c: &ESet, y1: Elem, y2: Elem, y3: Elem) -> Result<u64> {
    let ctx = c.ctx();
    if c.elems().contains(&Elem::ZERO) {
        return Err(Error::ContainsZero("C"));
    }
    let hit = |y: Elem, x: Elem| a_prime.elems().iter().any(|&a| ctx.mul(a, x) == y);
    Ok(c.elems()
        .iter()
        .filter(|&&x| hit(y1, x) && hit(y2, x) && hit(y3, x))
        .count() as u64)
}

/// `#{(g, h) : g - h = d}` by a double loop.
pub fn count_solutions_brute(g: &ESet, h: &ESet, d: Elem, budget: &OracleBudget) -> Result<u64> {
    let ctx = g.ctx();
    budget.check(ctx.q(), g.len() as u128 * h.len() as u128)?;
    let mut count = 0;
    for &x in g.elems() {
        for &y in h.elems() {
            if ctx.sub(x, y) == d {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `|G ∩ F_{p^nu}|` by testing `x^{p^nu} = x` for each `x in G`.
pub fn subfield_intersection_brute(g: &SubgroupInfo, nu: u32) -> Result<u64> {
    let ctx = g.ctx();
    if nu == 0 || !ctx.m().is_multiple_of(nu) {
        return Err(Error::NotDivisor {
            what: "subfield degree",
            divisor: nu as u64,
            value: ctx.m() as u64,
        });
    }
    let e = ctx.p().pow(nu);
    Ok(g.elements
        .elems()
        .iter()
        .filter(|&&x| ctx.pow(x, e) == x)
        .count() as u64)
}

/// `AB` by appending each new product to an unsorted list.
pub fn product_set_brute(a: &ESet, b: &ESet) -> Result<Vec<Elem>> {
    if a.ctx() != b.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = a.ctx();
    let mut out: Vec<Elem> = Vec::new();
    for &x in a.elems() {
        for &y in b.elems() {
            let z = ctx.mul(x, y);
            if !out.contains(&z) {
                out.push(z);
            }
        }
    }
    out.sort();
    Ok(out)
}
