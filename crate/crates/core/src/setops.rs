//! Finite subsets of a field and the set algebra built on them.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};

/// Above this order membership falls back to binary search instead of a bitset.
const BITSET_LIMIT: u64 = 1 << 27;

/// A deduplicated subset of a field, stored in increasing code order.
#[derive(Clone)]
pub struct ESet {
    ctx: Field,
    codes: Vec<Elem>,
    membership: OnceLock<Option<Vec<u64>>>,
}

impl fmt::Debug for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ESet(F_{}; ", self.ctx.q())?;
        f.debug_list()
            .entries(self.codes.iter().map(|e| e.code()))
            .finish()?;
        write!(f, ")")
    }
}

impl PartialEq for ESet {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.codes == other.codes
    }
}

impl Eq for ESet {}

impl ESet {
    pub fn empty(ctx: Field) -> ESet {
        ESet::from_sorted_unchecked(ctx, Vec::new())
    }

    /// Builds a set from arbitrary element codes; duplicates are dropped.
    pub fn from_codes<I: IntoIterator<Item = u64>>(ctx: Field, codes: I) -> Result<ESet> {
        let elems = codes
            .into_iter()
            .map(|c| ctx.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(ESet::from_elems(ctx, elems))
    }

    /// Builds a set from elements known to belong to `ctx`.
    pub fn from_elems(ctx: Field, mut elems: Vec<Elem>) -> ESet {
        elems.sort_unstable();
        elems.dedup();
        ESet::from_sorted_unchecked(ctx, elems)
    }

    pub(crate) fn from_sorted_unchecked(ctx: Field, codes: Vec<Elem>) -> ESet {
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        ESet {
            ctx,
            codes,
            membership: OnceLock::new(),
        }
    }

    /// Parses the comma-separated literal format, e.g. `"1,2,4"`.
    pub fn parse(ctx: Field, text: &str) -> Result<ESet> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(ESet::empty(ctx));
        }
        let codes = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("bad element code {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ESet::from_codes(ctx, codes)
    }

    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.codes
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.codes.iter().copied()
    }

    pub fn codes(&self) -> Vec<u32> {
        self.codes.iter().map(|e| e.code()).collect()
    }

    pub fn contains(&self, x: Elem) -> bool {
        let table = self.membership.get_or_init(|| {
            (self.ctx.q() <= BITSET_LIMIT).then(|| {
                let mut bits = vec![0u64; (self.ctx.q() as usize).div_ceil(64)];
                for e in &self.codes {
                    let c = e.code() as usize;
                    bits[c / 64] |= 1 << (c % 64);
                }
                bits
            })
        });
        match table {
            Some(bits) => {
                let c = x.code() as usize;
                c < self.ctx.q() as usize && bits[c / 64] >> (c % 64) & 1 == 1
            }
            None => self.codes.binary_search(&x).is_ok(),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.codes.first() == Some(&Elem::ZERO)
    }

    pub fn intersection_size(&self, other: &ESet) -> usize {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().filter(|&x| large.contains(x)).count()
    }

    pub fn is_subset(&self, other: &ESet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub(crate) fn same_field(&self, other: &ESet) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn combine(&self, other: &ESet, op: impl Fn(Elem, Elem) -> Elem) -> Result<ESet> {
        self.same_field(other)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in self.iter() {
            for b in other.iter() {
                out.push(op(a, b));
            }
        }
        Ok(ESet::from_elems(self.ctx.clone(), out))
    }

    fn map(&self, op: impl Fn(Elem) -> Elem) -> ESet {
        ESet::from_elems(self.ctx.clone(), self.iter().map(op).collect())
    }
}

/// `AB = {ab}`.
pub fn product_set(a: &ESet, b: &ESet) -> Result<ESet> {
    let f = a.ctx.clone();
    a.combine(b, |x, y| f.mul(x, y))
}

/// `A + B = {a + b}`.
pub fn sum_set(a: &ESet, b: &ESet) -> Result<ESet> {
    let f = a.ctx.clone();
    a.combine(b, |x, y| f.add(x, y))
}

/// `A - B = {a - b}`.
pub fn difference_set(a: &ESet, b: &ESet) -> Result<ESet> {
    let f = a.ctx.clone();
    a.combine(b, |x, y| f.sub(x, y))
}

/// `A + d`.
pub fn shift(a: &ESet, d: Elem) -> ESet {
    let f = a.ctx.clone();
    a.map(|x| f.add(x, d))
}

/// `alpha A`, with `alpha` nonzero.
pub fn dilate(a: &ESet, alpha: Elem) -> Result<ESet> {
    if alpha.is_zero() {
        return Err(Error::ZeroNotAllowed("dilation factor"));
    }
    let f = a.ctx.clone();
    Ok(a.map(|x| f.mul(x, alpha)))
}

/// What the coset-scan threshold exponent is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdBase {
    /// `|F|^e`, the form of the subfield-coset hypothesis on `AB`.
    SubfieldSize,
    /// `|S|^e`, the form of the large-intersection exclusion on `A`.
    SetSize,
}

/// Intersection of a set with one subfield coset `cF`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CosetStat {
    pub nu: u32,
    pub c: Elem,
    pub intersection: u64,
    pub threshold: f64,
}

impl CosetStat {
    pub fn passes(&self) -> bool {
        self.intersection as f64 <= self.threshold
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetScan {
    pub stats: Vec<CosetStat>,
    pub pass: bool,
}

impl CosetScan {
    pub fn max_intersection(&self) -> u64 {
        self.stats.iter().map(|s| s.intersection).max().unwrap_or(0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CosetStat> {
        self.stats.iter().filter(|s| !s.passes())
    }
}

/// Measures `|S ∩ cF|` for every proper subfield `F` and every multiplicative
/// coset `cF = {cf : f in F}` (so `0` lies in every coset).
///
/// Coset representatives are `g^j`, `0 <= j < (q-1)/(|F|-1)`. Prime fields have
/// no proper subfields and pass vacuously.
pub fn coset_scan(s: &ESet, threshold_exponent: f64, base: ThresholdBase) -> Result<CosetScan> {
    if s.is_empty() {
        return Err(Error::SetTooSmall("coset scan needs a nonempty set"));
    }
    let ctx = s.ctx();
    let mut stats = Vec::new();
    for nu in ctx.proper_subfield_degrees() {
        let sub = ctx.subfield_elements(nu)?;
        let f_size = sub.len() as u64;
        let threshold = match base {
            ThresholdBase::SubfieldSize => (f_size as f64).powf(threshold_exponent),
            ThresholdBase::SetSize => (s.len() as f64).powf(threshold_exponent),
        };
        let cosets = (ctx.q() - 1) / (f_size - 1);
        let g = ctx.generator();
        let zero_hit = u64::from(s.contains_zero());
        let mut c = Elem::ONE;
        for _ in 0..cosets {
            let hits = sub
                .iter()
                .filter(|f| !f.is_zero() && s.contains(ctx.mul(c, **f)))
                .count() as u64;
            stats.push(CosetStat {
                nu,
                c,
                intersection: hits + zero_hit,
                threshold,
            });
            c = ctx.mul(c, g);
        }
    }
    let pass = stats.iter().all(CosetStat::passes);
    Ok(CosetScan { stats, pass })
}
