//! Multiplicative subgroups, their intersections with subfields, the
//! arithmetic side conditions on `n` and `G`, and counting `g - h = d`.

use serde::Serialize;

use crate::energy::{energy, EnergyKind};
use crate::error::{Error, Result};
use crate::ff::{gcd, Elem, Field};
use crate::setops::ESet;

/// Default exponent in the gcd condition on `n`.
pub const DELTA: f64 = 119.0 / 605.0;
/// Default exponent in the subfield-intersection condition on `G`.
pub const DELTA1: f64 = 486.0 / 605.0;
/// Energy saving exponent for subgroups, with the `o(1)` dropped.
pub const DELTA2: f64 = 1.0 / 56.0;

#[derive(Clone, Debug)]
pub struct SubgroupInfo {
    pub order: u64,
    pub elements: ESet,
    /// Set when the group was built as the `n`-th powers.
    pub n: Option<u64>,
    /// `g^{(q-1)/order}` for the field's generator `g`.
    pub generator_power: Elem,
}

impl SubgroupInfo {
    pub fn ctx(&self) -> &Field {
        self.elements.ctx()
    }
}

/// Whether a set is a subgroup of `F_q^*` (nonempty, zero-free, closed).
pub fn is_subgroup(s: &ESet) -> bool {
    let ctx = s.ctx();
    !s.is_empty()
        && !s.contains_zero()
        && s.contains(Elem::ONE)
        && s.iter()
            .all(|x| s.iter().all(|y| s.contains(ctx.mul(x, y))))
}

/// The unique subgroup of order `t`, generated by `g^{(q-1)/t}`.
pub fn subgroup_of_order(ctx: &Field, t: u64) -> Result<SubgroupInfo> {
    let n = ctx.q() - 1;
    if t == 0 || !n.is_multiple_of(t) {
        return Err(Error::NotDivisor {
            what: "subgroup order",
            divisor: t,
            value: n,
        });
    }
    let h = ctx.pow(ctx.generator(), n / t);
    let mut elems = Vec::with_capacity(t as usize);
    let mut x = Elem::ONE;
    for _ in 0..t {
        elems.push(x);
        x = ctx.mul(x, h);
    }
    Ok(SubgroupInfo {
        order: t,
        elements: ESet::from_elems(ctx.clone(), elems),
        n: None,
        generator_power: h,
    })
}

/// `{x^n : x in F_q^*}`, of order `(q-1)/gcd(n, q-1)`.
pub fn nth_powers(ctx: &Field, n: u64) -> Result<SubgroupInfo> {
    if n == 0 {
        return Err(Error::ZeroNotAllowed("n"));
    }
    let qm1 = ctx.q() - 1;
    let mut g = subgroup_of_order(ctx, qm1 / gcd(n, qm1))?;
    g.n = Some(n);
    Ok(g)
}

/// `|G ∩ F| = gcd(n, (q-1)/(p^nu - 1)) (p^nu - 1) / n` for `G` the `n`-th powers, `n | q-1`.
pub fn intersection_formula(p: u64, m: u32, nu: u32, n: u64) -> u64 {
    let q = p.pow(m);
    let f = p.pow(nu) - 1;
    gcd(n, (q - 1) / f) * f / n
}

/// Exact `|G ∩ F_{p^nu}|` next to the closed form; they must agree.
pub fn subfield_intersection(g: &SubgroupInfo, nu: u32) -> Result<(u64, u64)> {
    let ctx = g.ctx();
    let n = g.n.ok_or(Error::MissingPowerIndex)?;
    if !(ctx.q() - 1).is_multiple_of(n) {
        return Err(Error::NotDivisor {
            what: "n",
            divisor: n,
            value: ctx.q() - 1,
        });
    }
    let sub = crate::ff::subfield(ctx, nu)?;
    let exact = g.elements.intersection_size(&sub) as u64;
    let formula = intersection_formula(ctx.p(), ctx.m(), nu, n);
    if exact != formula {
        return Err(Error::IdentityFailed {
            label: format!("|G ∩ F_(p^{nu})| for n = {n}"),
            lhs: exact.to_string(),
            rhs: formula.to_string(),
        });
    }
    Ok((exact, formula))
}

/// One proper subfield's side of a condition, evaluated with constant 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub nu: u32,
    pub lhs: u64,
    pub rhs: f64,
    pub ratio: f64,
    pub pass_at_constant_one: bool,
}

impl ConditionReport {
    fn new(nu: u32, lhs: u64, rhs: f64) -> Self {
        let ratio = lhs as f64 / rhs;
        ConditionReport {
            nu,
            lhs,
            rhs,
            ratio,
            pass_at_constant_one: ratio <= 1.0,
        }
    }
}

/// `gcd(n, (q-1)/(p^nu - 1))` against `n^δ q^{1-δ} / p^nu` for each proper `nu | m`.
/// Prime fields have no proper subfields and give an empty list.
pub fn n_condition(ctx: &Field, n: u64, delta: f64) -> Result<Vec<ConditionReport>> {
    let qm1 = ctx.q() - 1;
    if n == 0 || !qm1.is_multiple_of(n) {
        return Err(Error::NotDivisor {
            what: "n",
            divisor: n,
            value: qm1,
        });
    }
    let q = ctx.q() as f64;
    Ok(ctx
        .proper_subfield_degrees()
        .into_iter()
        .map(|nu| {
            let pn = ctx.p().pow(nu);
            let lhs = gcd(n, qm1 / (pn - 1));
            let rhs = (n as f64).powf(delta) * q.powf(1.0 - delta) / pn as f64;
            ConditionReport::new(nu, lhs, rhs)
        })
        .collect())
}

/// `|G ∩ F|` against `|G|^{δ1}` for each proper subfield.
pub fn field_intersection_condition(g: &SubgroupInfo, delta1: f64) -> Result<Vec<ConditionReport>> {
    let ctx = g.ctx();
    ctx.proper_subfield_degrees()
        .into_iter()
        .map(|nu| {
            let sub = crate::ff::subfield(ctx, nu)?;
            let lhs = g.elements.intersection_size(&sub) as u64;
            Ok(ConditionReport::new(nu, lhs, (g.order as f64).powf(delta1)))
        })
        .collect()
}

/// CSV rows `q,p,m,n,nu,lhs,rhs,ratio,pass` (with header) for condition reports.
pub fn condition_csv(ctx: &Field, n: Option<u64>, rows: &[ConditionReport]) -> String {
    let mut out = String::from("q,p,m,n,nu,lhs,rhs,ratio,pass\n");
    let n = n.map(|n| n.to_string()).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            ctx.q(),
            ctx.p(),
            ctx.m(),
            n,
            r.nu,
            r.lhs,
            r.rhs,
            r.ratio,
            r.pass_at_constant_one
        ));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolutionCount {
    pub count: u64,
    /// `count / max(|G|, |H|)^exponent`
    pub corollary_ratio: f64,
    /// `26/27` over prime fields, `559/560` otherwise.
    pub exponent: f64,
}

/// `#{(g, h) in G x H : g - h = d}` via membership of `g - d` in `H`.
pub fn count_solutions(g: &ESet, h: &ESet, d: Elem) -> Result<SolutionCount> {
    g.same_field(h)?;
    if d.is_zero() {
        return Err(Error::ZeroNotAllowed("d"));
    }
    let ctx = g.ctx();
    let count = g.iter().filter(|&x| h.contains(ctx.sub(x, d))).count() as u64;
    let exponent = if ctx.is_prime_field() {
        26.0 / 27.0
    } else {
        559.0 / 560.0
    };
    let big = g.len().max(h.len()) as f64;
    let corollary_ratio = if big == 0.0 {
        0.0
    } else {
        count as f64 / big.powf(exponent)
    };
    Ok(SolutionCount {
        count,
        corollary_ratio,
        exponent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroupEnergy {
    pub energy: u64,
    /// `ln E / ln |G|`, in `[2, 3]`.
    pub exponent: f64,
}

/// Additive energy of a subgroup and its exponent relative to `|G|`.
pub fn group_energy_report(g: &SubgroupInfo) -> Result<GroupEnergy> {
    if g.order < 2 {
        return Err(Error::SetTooSmall("|G| >= 2"));
    }
    let e = energy(&g.elements, &g.elements, EnergyKind::Additive)?.value;
    Ok(GroupEnergy {
        energy: e,
        exponent: (e as f64).ln() / (g.order as f64).ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{divisors, make_field};

    #[test]
    fn subgroup_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(
            subgroup_of_order(&f7, 3).unwrap().elements.codes(),
            vec![1, 2, 4]
        );
        assert_eq!(subgroup_of_order(&f7, 1).unwrap().elements.codes(), vec![1]);
        assert!(matches!(
            subgroup_of_order(&f7, 5),
            Err(Error::NotDivisor { .. })
        ));
    }

    #[test]
    fn nth_power_examples() {
        let f16 = make_field(2, 4).unwrap();
        assert_eq!(nth_powers(&f16, 1).unwrap().order, 15);
        let g = nth_powers(&f16, 5).unwrap();
        assert_eq!(g.order, 3);
        assert_eq!(g.elements, subgroup_of_order(&f16, 3).unwrap().elements);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(nth_powers(&f5, 2).unwrap().elements.codes(), vec![1, 4]);
        // n not dividing q - 1 still yields the image of x -> x^n
        let f7 = make_field(7, 1).unwrap();
        let g = nth_powers(&f7, 4).unwrap();
        let image = ESet::from_elems(
            f7.clone(),
            (1..7).map(|x| f7.pow(f7.elem(x).unwrap(), 4)).collect(),
        );
        assert_eq!(g.elements, image);
    }

    #[test]
    fn subgroups_are_subgroups() {
        for (p, m) in [(7, 1), (13, 1), (2, 4), (3, 3)] {
            let f = make_field(p, m).unwrap();
            for t in divisors(f.q() - 1) {
                let g = subgroup_of_order(&f, t).unwrap();
                assert!(is_subgroup(&g.elements));
                assert_eq!(g.elements.len() as u64, t);
                assert_eq!(f.order(g.generator_power).unwrap(), t);
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let f16 = make_field(2, 4).unwrap();
        let g = nth_powers(&f16, 5).unwrap();
        assert_eq!(subfield_intersection(&g, 2).unwrap(), (3, 3));
        let trivial = nth_powers(&f16, 15).unwrap();
        assert_eq!(subfield_intersection(&trivial, 1).unwrap(), (1, 1));
        assert_eq!(subfield_intersection(&trivial, 2).unwrap(), (1, 1));
        let f9 = make_field(3, 2).unwrap();
        // order-4 subgroup {1, 2, t, 2t} meets F_3 in {1, 2}
        assert_eq!(
            subfield_intersection(&nth_powers(&f9, 2).unwrap(), 1).unwrap(),
            (2, 2)
        );
        assert!(matches!(
            subfield_intersection(&g, 3),
            Err(Error::NotDivisor { .. })
        ));
        let bare = subgroup_of_order(&f16, 3).unwrap();
        assert!(matches!(
            subfield_intersection(&bare, 2),
            Err(Error::MissingPowerIndex)
        ));
    }

    #[test]
    fn n_condition_examples() {
        let f16 = make_field(2, 4).unwrap();
        let rows = n_condition(&f16, 5, DELTA).unwrap();
        let r2 = rows.iter().find(|r| r.nu == 2).unwrap();
        assert_eq!(r2.lhs, 5);
        let rhs = 5f64.powf(DELTA) * 16f64.powf(1.0 - DELTA) / 4.0;
        assert!((r2.rhs - rhs).abs() < 1e-12);
        assert!((r2.rhs - 3.18).abs() < 0.01);
        assert!((r2.ratio - 1.57).abs() < 0.01);
        assert!(!r2.pass_at_constant_one);
        for r in n_condition(&f16, 1, DELTA).unwrap() {
            assert_eq!(r.lhs, 1);
        }
        let f8 = make_field(2, 3).unwrap();
        assert_eq!(n_condition(&f8, 7, DELTA).unwrap().len(), 1);
        assert!(n_condition(&make_field(7, 1).unwrap(), 3, DELTA)
            .unwrap()
            .is_empty());
        assert!(n_condition(&f16, 4, DELTA).is_err());
    }

    #[test]
    fn field_intersection_examples() {
        let f16 = make_field(2, 4).unwrap();
        for r in field_intersection_condition(&subgroup_of_order(&f16, 1).unwrap(), DELTA1).unwrap()
        {
            assert_eq!((r.lhs, r.rhs), (1, 1.0));
            assert!(r.pass_at_constant_one);
        }
        let rows =
            field_intersection_condition(&subgroup_of_order(&f16, 3).unwrap(), DELTA1).unwrap();
        let r2 = rows.iter().find(|r| r.nu == 2).unwrap();
        assert_eq!(r2.lhs, 3);
        assert!((r2.rhs - 2.42).abs() < 0.01);
        assert!(!r2.pass_at_constant_one);
        let f9 = make_field(3, 2).unwrap();
        let rows =
            field_intersection_condition(&subgroup_of_order(&f9, 8).unwrap(), DELTA1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].lhs, 2);
        assert!((rows[0].rhs - 8f64.powf(DELTA1)).abs() < 1e-12);
    }

    #[test]
    fn condition_csv_layout() {
        let f16 = make_field(2, 4).unwrap();
        let rows = n_condition(&f16, 5, DELTA).unwrap();
        let csv = condition_csv(&f16, Some(5), &rows);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "q,p,m,n,nu,lhs,rhs,ratio,pass");
        assert!(lines[1].starts_with("16,2,4,5,1,5,"));
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn count_examples() {
        let f7 = make_field(7, 1).unwrap();
        let g = subgroup_of_order(&f7, 3).unwrap().elements;
        let r = count_solutions(&g, &g, Elem::ONE).unwrap();
        assert_eq!(r.count, 1);
        assert!((r.corollary_ratio - 1.0 / 3f64.powf(26.0 / 27.0)).abs() < 1e-12);
        let one = subgroup_of_order(&f7, 1).unwrap().elements;
        assert_eq!(count_solutions(&one, &one, Elem::ONE).unwrap().count, 0);
        assert!(count_solutions(&g, &g, Elem::ZERO).is_err());
        let f16 = make_field(2, 4).unwrap();
        let h = subgroup_of_order(&f16, 5).unwrap().elements;
        assert_eq!(
            count_solutions(&h, &h, Elem::ONE).unwrap().exponent,
            559.0 / 560.0
        );
    }

    #[test]
    fn group_energy_examples() {
        let f5 = make_field(5, 1).unwrap();
        let r = group_energy_report(&nth_powers(&f5, 2).unwrap()).unwrap();
        assert_eq!(r.energy, 6);
        assert!((r.exponent - 6f64.ln() / 2f64.ln()).abs() < 1e-12);
        assert!(group_energy_report(&subgroup_of_order(&f5, 1).unwrap()).is_err());
    }
}
