//! Exact arithmetic in prime fields and their extensions.
//!
//! An element of `F_{p^m}` is stored as a single integer code: the coefficient
//! vector `(a_0, ..., a_{m-1})` of its polynomial representative, read as the
//! base-`p` number `sum a_i p^i`. Codes give every field a total order, which
//! is what makes [`ESet`](crate::setops::ESet) canonical.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setops::ESet;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;

/// Extension fields up to this order get discrete-log tables at construction.
const LOG_TABLE_LIMIT: u64 = 1 << 16;

/// A field element, identified by its base-`p` code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Callers guarantee `code < q` for the field the element is used with.
    pub(crate) const fn from_code(code: u32) -> Elem {
        Elem(code)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

struct LogTables {
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[k] = g^k` for `k < 2(q-1)`, doubled so sums of two logs need no reduction.
    exp: Vec<u32>,
}

/// The finite field `F_q`, `q = p^m`.
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    trace_basis: Vec<u64>,
    generator: OnceLock<Elem>,
    tables: Option<LogTables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Builds `F_{p^m}` with the smallest monic irreducible modulus of degree `m`.
///
/// Candidate moduli `x^m + a_{m-1}x^{m-1} + ... + a_0` are tried in order of the
/// base-`p` integer `sum a_i p^i`; for `m = 1` this yields the modulus `x`.
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    FieldCtx::new(p, m).map(Arc::new)
}

impl FieldCtx {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::DegreeTooSmall(m));
        }
        let q = match p.checked_pow(m) {
            Some(q) if q <= MAX_ORDER => q,
            _ => return Err(Error::FieldTooLarge { p, m }),
        };
        let modulus = smallest_irreducible(p, m as usize);
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            trace_basis: Vec::new(),
            generator: OnceLock::new(),
            tables: None,
        };
        ctx.trace_basis = (0..m)
            .map(|i| ctx.trace_by_frobenius(Elem(p.pow(i) as u32)).0 as u64)
            .collect();
        if m > 1 && q <= LOG_TABLE_LIMIT {
            let g = ctx.generator();
            ctx.tables = Some(ctx.build_tables(g));
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients `(a_0, ..., a_m)` of the monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// Validates a code and wraps it as an element.
    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code < self.q {
            Ok(Elem(code as u32))
        } else {
            Err(Error::InvalidElement { code, q: self.q })
        }
    }

    /// Element of the prime subfield congruent to `k`.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q as u32).map(Elem)
    }

    /// Base-`p` digits of `x`, constant coefficient first.
    pub fn coefficients(&self, x: Elem) -> Vec<u64> {
        let mut c = x.0 as u64;
        (0..self.m)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Invalid(format!(
                "coefficient vector {coeffs:?} is not an element of F_{}",
                self.q
            )));
        }
        Ok(Elem(
            coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u32,
        ))
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let p = self.p;
        if self.m == 1 {
            return Elem(((x.0 as u64 + y.0 as u64) % p) as u32);
        }
        if p == 2 {
            return Elem(x.0 ^ y.0);
        }
        let (mut a, mut b) = (x.0 as u64, y.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        Elem(out as u32)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        let p = self.p;
        if self.m == 1 {
            return Elem(((p - x.0 as u64) % p) as u32);
        }
        if p == 2 {
            return x;
        }
        let mut a = x.0 as u64;
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        Elem(out as u32)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if self.m == 1 {
            return Elem(((x.0 as u64 * y.0 as u64) % self.p) as u32);
        }
        match &self.tables {
            Some(t) => {
                if x.0 == 0 || y.0 == 0 {
                    Elem::ZERO
                } else {
                    Elem(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize])
                }
            }
            None => self.mul_poly(x, y),
        }
    }

    /// Schoolbook product reduced modulo the defining polynomial.
    fn mul_poly(&self, x: Elem, y: Elem) -> Elem {
        let (p, m) = (self.p, self.m as usize);
        let a = self.coefficients(x);
        let b = self.coefficients(y);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let sub = c * self.modulus[i] % p;
                prod[k - m + i] = (prod[k - m + i] + p - sub) % p;
            }
            prod[k] = 0;
        }
        Elem(prod[..m].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32)
    }

    /// `x^e` by square-and-multiply; `x^0 = 1` for every `x`, including zero.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let k = (t.log[x.0 as usize] as u128 * e as u128) % (self.q - 1) as u128;
            return Elem(t.exp[k as usize]);
        }
        let (mut base, mut e, mut acc) = (x, e, Elem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(x, self.q - 2))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Absolute trace `x + x^p + ... + x^{p^{m-1}}`, an element of `F_p`.
    ///
    /// Evaluated through the precomputed traces of the power basis, which is
    /// valid because the trace is `F_p`-linear.
    pub fn trace(&self, x: Elem) -> Elem {
        if self.m == 1 {
            return x;
        }
        let mut c = x.0 as u64;
        let mut acc = 0u64;
        for &t in &self.trace_basis {
            acc = (acc + (c % self.p) * t) % self.p;
            c /= self.p;
        }
        Elem(acc as u32)
    }

    /// Trace evaluated literally as a sum of Frobenius images.
    pub fn trace_by_frobenius(&self, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.p);
        }
        acc
    }

    /// `psi_a(x) = exp(2 pi i Tr(ax) / p)`.
    pub fn additive_character(&self, a: Elem, x: Elem) -> Complex64 {
        let t = self.trace(self.mul(a, x)).0 as f64;
        Complex64::from_polar(1.0, TAU * t / self.p as f64)
    }

    /// `exp(2 pi i k / p)` for `k in 0..p`.
    pub fn roots_of_unity(&self) -> Vec<Complex64> {
        (0..self.p)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / self.p as f64))
            .collect()
    }

    /// Smallest-code generator of the multiplicative group, cached after the first call.
    pub fn generator(&self) -> Elem {
        *self.generator.get_or_init(|| self.search_generator())
    }

    fn search_generator(&self) -> Elem {
        let n = self.q - 1;
        let primes = prime_factors(n);
        (1..self.q as u32)
            .map(Elem)
            .find(|&x| primes.iter().all(|&l| self.pow(x, n / l) != Elem::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elem) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::ZeroNotAllowed("element whose order is taken"));
        }
        let mut ord = self.q - 1;
        for l in prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(x, ord / l) == Elem::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    fn build_tables(&self, g: Elem) -> LogTables {
        let n = (self.q - 1) as usize;
        let mut log = vec![0u32; self.q as usize];
        let mut exp = Vec::with_capacity(2 * n);
        let mut x = Elem::ONE;
        for k in 0..n {
            log[x.0 as usize] = k as u32;
            exp.push(x.0);
            x = self.mul_poly(x, g);
        }
        exp.extend_from_within(..n);
        LogTables { log, exp }
    }

    /// Degrees `nu` of the proper subfields `F_{p^nu}`, ascending.
    pub fn proper_subfield_degrees(&self) -> Vec<u32> {
        (1..self.m)
            .filter(|nu| self.m.is_multiple_of(*nu))
            .collect()
    }

    /// Elements of the subfield of order `p^nu`, ascending.
    pub fn subfield_elements(&self, nu: u32) -> Result<Vec<Elem>> {
        if nu == 0 || !self.m.is_multiple_of(nu) {
            return Err(Error::NotDivisor {
                what: "subfield degree",
                divisor: nu as u64,
                value: self.m as u64,
            });
        }
        let size = self.p.pow(nu) - 1;
        let h = self.pow(self.generator(), (self.q - 1) / size);
        let mut out = Vec::with_capacity(size as usize + 1);
        out.push(Elem::ZERO);
        let mut x = Elem::ONE;
        for _ in 0..size {
            out.push(x);
            x = self.mul(x, h);
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// The subfield of order `p^nu` as a set.
pub fn subfield(ctx: &Field, nu: u32) -> Result<ESet> {
    let elems = ctx.subfield_elements(nu)?;
    Ok(ESet::from_sorted_unchecked(ctx.clone(), elems))
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    for code in 0..count {
        let mut f = Vec::with_capacity(m + 1);
        let mut c = code;
        for _ in 0..m {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Dense polynomials over `F_p`, constant term first, used only to pick moduli.
pub(crate) mod poly {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    /// Remainder of `a` modulo `f`; `f` nonzero.
    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let k = r.len() - 1;
            let c = r[k] * lead_inv % p;
            for i in 0..=df {
                let s = c * f[i] % p;
                r[k - df + i] = (r[k - df + i] + p - s) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, f, p)
    }

    pub fn pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, f, p);
        let mut acc = rem(&[1], f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or test: monic `f` of degree `m` is irreducible iff
    /// `gcd(f, x^{p^i} - x) = 1` for every `i <= m / 2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let x = [0u64, 1];
        let mut h = rem(&x, f, p);
        for _ in 0..m / 2 {
            h = pow_mod(&h, p, f, p);
            let mut d = h.clone();
            d.resize(d.len().max(2), 0);
            d[1] = (d[1] + p - 1) % p;
            if gcd(f, &d, p).len() > 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(f: &[u64], p: u64) -> usize {
        (0..p)
            .filter(|&x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
            .count()
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn f9_modulus_by_exhaustive_root_scan() {
        // a monic quadratic is irreducible iff it has no root; the first
        // rootless one in base-3 coefficient order is the expected modulus
        let expected = (0..9u64)
            .map(|c| vec![c % 3, c / 3, 1])
            .find(|f| roots(f, 3) == 0)
            .unwrap();
        assert_eq!(expected, vec![1, 0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &expected[..]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(make_field(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(5, 0), Err(Error::DegreeTooSmall(0))));
        assert!(matches!(
            make_field(2, 32),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(make_field(2, 31).is_ok());
        assert!(matches!(make_field(1, 1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn small_arithmetic() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.mul(Elem(3), Elem(5)), Elem(1));
        assert!(matches!(f7.inv(Elem(0)), Err(Error::InverseOfZero)));
        let f9 = make_field(3, 2).unwrap();
        let t = Elem(3);
        assert_eq!(f9.mul(t, t), Elem(2));
        assert_eq!(f9.mul_poly(t, t), Elem(2));
        assert_eq!(f9.pow(t, 1 << 62), Elem::ONE);
    }

    #[test]
    fn trace_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.trace(Elem(3)), Elem(3));
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.trace(Elem(3)), Elem(0));
        assert_eq!(f9.trace(Elem(1)), Elem(2));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(make_field(2, 1).unwrap().generator(), Elem(1));
        assert_eq!(make_field(5, 1).unwrap().generator(), Elem(2));
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.generator(), Elem(4));
        assert_eq!(f9.order(Elem(2)).unwrap(), 2);
        assert_eq!(f9.order(Elem(3)).unwrap(), 4);
    }

    #[test]
    fn characters() {
        let f5 = make_field(5, 1).unwrap();
        for x in f5.elements() {
            assert!((f5.additive_character(Elem(0), x) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let z = f5.additive_character(Elem(1), Elem(1));
        assert!((z - Complex64::from_polar(1.0, TAU / 5.0)).norm() < 1e-12);
        let s: Complex64 = f5
            .elements()
            .map(|x| f5.additive_character(Elem(1), x))
            .sum();
        assert!(s.norm() < 1e-9);
    }

    #[test]
    fn subfield_examples() {
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(
            f9.subfield_elements(1).unwrap(),
            vec![Elem(0), Elem(1), Elem(2)]
        );
        assert_eq!(f9.subfield_elements(2).unwrap().len(), 9);
        let f16 = make_field(2, 4).unwrap();
        let f4 = f16.subfield_elements(2).unwrap();
        assert_eq!(f4.len(), 4);
        let cubes: Vec<_> = f4
            .iter()
            .filter(|x| !x.is_zero() && **x != Elem::ONE)
            .collect();
        for x in cubes {
            assert_eq!(f16.order(*x).unwrap(), 3);
        }
        assert!(matches!(
            f16.subfield_elements(3),
            Err(Error::NotDivisor { .. })
        ));
    }

    #[test]
    fn table_and_poly_products_agree() {
        for (p, m) in [(2, 5), (3, 3), (5, 2), (7, 2), (2, 8)] {
            let f = make_field(p, m).unwrap();
            assert!(f.tables.is_some());
            for x in f.elements() {
                for y in f.elements().step_by(3) {
                    assert_eq!(f.mul(x, y), f.mul_poly(x, y));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m) in [
            (2, 1),
            (3, 1),
            (5, 1),
            (2, 2),
            (2, 3),
            (3, 2),
            (2, 4),
            (5, 2),
        ] {
            let f = make_field(p, m).unwrap();
            let all: Vec<_> = f.elements().collect();
            for &x in &all {
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
                }
                assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
                for &y in &all {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for &z in &all {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        assert_eq!(f.mul(x, f.mul(y, z)), f.mul(f.mul(x, y), z));
                        assert_eq!(f.add(x, f.add(y, z)), f.add(f.add(x, y), z));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_linear_form_matches_frobenius() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (2, 7), (7, 3)] {
            let f = make_field(p, m).unwrap();
            for x in f.elements() {
                let t = f.trace(x);
                assert!((t.code() as u64) < p);
                assert_eq!(t, f.trace_by_frobenius(x));
            }
        }
    }

    #[test]
    fn large_binary_field_without_tables() {
        let f = make_field(2, 20).unwrap();
        assert!(f.tables.is_none());
        let g = f.generator();
        assert_eq!(f.order(g).unwrap(), f.q() - 1);
        let x = Elem(123_456);
        assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(gcd(12, 18), 6);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }
}
