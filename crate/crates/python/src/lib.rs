//! Python bindings. Sets cross the boundary as lists of element codes.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};

use sumprod_lab::energy::{self as en, EnergyKind};
use sumprod_lab::ff::{self, Elem};
use sumprod_lab::setops::{self, ESet, ThresholdBase};
use sumprod_lab::{gauss, subgrp, Error};

fn err(e: Error) -> PyErr {
    if e.is_violation() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for sumprod_lab::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn kind(s: &str) -> PyResult<EnergyKind> {
    s.parse().py()
}

/// The finite field F_{p^m}; elements are integer codes in [0, q).
#[pyclass(frozen, name = "Field", module = "sumprod")]
struct PyField {
    inner: ff::Field,
}

impl PyField {
    fn set(&self, codes: Vec<u64>) -> PyResult<ESet> {
        ESet::from_codes(self.inner.clone(), codes).py()
    }

    fn elem(&self, code: u64) -> PyResult<Elem> {
        self.inner.elem(code).py()
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m = 1))]
    fn new(p: u64, m: u32) -> PyResult<Self> {
        Ok(PyField {
            inner: ff::make_field(p, m).py()?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    /// Coefficients of the defining polynomial, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().to_vec()
    }

    fn generator(&self) -> u32 {
        self.inner.generator().code()
    }

    fn add(&self, x: u64, y: u64) -> PyResult<u32> {
        Ok(self.inner.add(self.elem(x)?, self.elem(y)?).code())
    }

    fn mul(&self, x: u64, y: u64) -> PyResult<u32> {
        Ok(self.inner.mul(self.elem(x)?, self.elem(y)?).code())
    }

    fn pow(&self, x: u64, e: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.elem(x)?, e).code())
    }

    fn inv(&self, x: u64) -> PyResult<u32> {
        Ok(self.inner.inv(self.elem(x)?).py()?.code())
    }

    fn trace(&self, x: u64) -> PyResult<u32> {
        Ok(self.inner.trace(self.elem(x)?).code())
    }

    fn order(&self, x: u64) -> PyResult<u64> {
        self.inner.order(self.elem(x)?).py()
    }

    /// Elements of the subfield of degree `nu`.
    fn subfield(&self, nu: u32) -> PyResult<Vec<u32>> {
        Ok(ff::subfield(&self.inner, nu).py()?.codes())
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, m={})", self.inner.p(), self.inner.m())
    }
}

#[pyfunction]
fn product_set(f: &PyField, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u32>> {
    Ok(setops::product_set(&f.set(a)?, &f.set(b)?).py()?.codes())
}

#[pyfunction]
fn sum_set(f: &PyField, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u32>> {
    Ok(setops::sum_set(&f.set(a)?, &f.set(b)?).py()?.codes())
}

/// `{"value", "support", "histogram"}`; `kind` is "add" or "mult".
#[pyfunction]
#[pyo3(signature = (f, a, b = None, kind = "add"))]
fn energy<'py>(
    py: Python<'py>,
    f: &PyField,
    a: Vec<u64>,
    b: Option<Vec<u64>>,
    kind: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let a = f.set(a)?;
    let b = match b {
        Some(b) => f.set(b)?,
        None => a.clone(),
    };
    let r = en::energy(&a, &b, self::kind(kind)?).py()?;
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("support", r.support_size)?;
    let hist: Vec<(u32, u64)> = r.histogram.iter().map(|(z, n)| (z.code(), *n)).collect();
    d.set_item("histogram", hist)?;
    Ok(d)
}

#[pyfunction]
fn c4(f: &PyField, a_prime: Vec<u64>, c: Vec<u64>, y1: u64, y2: u64, y3: u64) -> PyResult<u64> {
    en::c4(
        &f.set(a_prime)?,
        &f.set(c)?,
        f.elem(y1)?,
        f.elem(y2)?,
        f.elem(y3)?,
    )
    .py()
}

/// `(total, diagonal)` of `C4` over `(A'C)^3`.
#[pyfunction]
fn c4_totals(f: &PyField, a_prime: Vec<u64>, c: Vec<u64>) -> PyResult<(u64, u64)> {
    let t = en::c4_totals(&f.set(a_prime)?, &f.set(c)?).py()?;
    Ok((t.total, t.diagonal))
}

#[pyfunction]
fn identity_check(f: &PyField, a: [u64; 3], c: u64, b: u64, d: u64) -> PyResult<bool> {
    let a = [f.elem(a[0])?, f.elem(a[1])?, f.elem(a[2])?];
    en::identity_check(&f.inner, a, f.elem(c)?, f.elem(b)?, f.elem(d)?).py()
}

/// `(lhs, rhs)` of the Plünnecke–Ruzsa inequality; raises if it fails.
#[pyfunction]
#[pyo3(signature = (f, y, xs, kind = "add"))]
fn plunnecke(f: &PyField, y: Vec<u64>, xs: Vec<Vec<u64>>, kind: &str) -> PyResult<(u64, f64)> {
    let xs = xs
        .into_iter()
        .map(|x| f.set(x))
        .collect::<PyResult<Vec<_>>>()?;
    let r = en::plunnecke_check(&f.set(y)?, &xs, self::kind(kind)?).py()?;
    Ok((r.lhs, r.rhs))
}

/// `{"K", "L", "ratio_K14L12", "energy_lb", "ab_size", "apc_size"}`.
#[pyfunction]
fn energy_lb_report<'py>(
    py: Python<'py>,
    f: &PyField,
    a: Vec<u64>,
    b: Vec<u64>,
    c: Vec<u64>,
    d: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = en::energy_lb_report(&f.set(a)?, &f.set(b)?, &f.set(c)?, f.elem(d)?).py()?;
    let out = PyDict::new(py);
    out.set_item("K", r.k)?;
    out.set_item("L", r.l)?;
    out.set_item("ratio_K14L12", r.ratios.k14l12)?;
    out.set_item("energy_lb", r.ratios.energy_lb)?;
    out.set_item("ab_size", r.ab_size)?;
    out.set_item("apc_size", r.apc_size)?;
    Ok(out)
}

/// `(passes, max_intersection)` over all subfield cosets; `base` is
/// "subfield" or "set".
#[pyfunction]
#[pyo3(signature = (f, s, exponent, base = "subfield"))]
fn coset_scan(f: &PyField, s: Vec<u64>, exponent: f64, base: &str) -> PyResult<(bool, u64)> {
    let base = match base {
        "subfield" => ThresholdBase::SubfieldSize,
        "set" => ThresholdBase::SetSize,
        _ => return Err(PyValueError::new_err(format!("unknown base {base:?}"))),
    };
    let r = setops::coset_scan(&f.set(s)?, exponent, base).py()?;
    Ok((r.pass, r.max_intersection()))
}

/// Elements of the subgroup of the given order, or of the `nth` powers.
#[pyfunction]
#[pyo3(signature = (f, order = None, nth = None))]
fn subgroup(f: &PyField, order: Option<u64>, nth: Option<u64>) -> PyResult<Vec<u32>> {
    let g = match (order, nth) {
        (Some(t), None) => subgrp::subgroup_of_order(&f.inner, t).py()?,
        (None, Some(n)) => subgrp::nth_powers(&f.inner, n).py()?,
        _ => return Err(PyValueError::new_err("give exactly one of order, nth")),
    };
    Ok(g.elements.codes())
}

/// `(count, count / max(|G|, |H|)^exponent)` for `g - h = d`.
#[pyfunction]
fn count_solutions(f: &PyField, g_order: u64, h_order: u64, d: u64) -> PyResult<(u64, f64)> {
    let g = subgrp::subgroup_of_order(&f.inner, g_order).py()?;
    let h = subgrp::subgroup_of_order(&f.inner, h_order).py()?;
    let r = subgrp::count_solutions(&g.elements, &h.elements, f.elem(d)?).py()?;
    Ok((r.count, r.corollary_ratio))
}

#[pyfunction]
fn gauss_direct<'py>(
    py: Python<'py>,
    f: &PyField,
    n: u64,
    a: u64,
) -> PyResult<Bound<'py, PyComplex>> {
    let s = gauss::gauss_direct(&f.inner, n, f.elem(a)?).py()?;
    Ok(PyComplex::from_doubles(py, s.re, s.im))
}

/// Gauss sum with the Weil and Konyagin bounds; raises ArithmeticError if
/// either fails.
#[pyfunction]
fn gauss_bounds<'py>(py: Python<'py>, f: &PyField, n: u64, a: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = gauss::bounds_report(&f.inner, n, f.elem(a)?).py()?;
    let d = PyDict::new(py);
    d.set_item("value", PyComplex::from_doubles(py, r.value.re, r.value.im))?;
    d.set_item("abs", r.abs)?;
    d.set_item("weil", r.weil)?;
    d.set_item("konyagin", r.konyagin)?;
    d.set_item("subgroup_sum_abs", r.subgroup_sum.norm())?;
    d.set_item("group_energy", r.group_energy)?;
    d.set_item("bound_delta2", r.bound_delta2)?;
    d.set_item("ratio_weil", r.ratio_weil)?;
    d.set_item("below_threshold", r.below_threshold)?;
    Ok(d)
}

#[pymodule]
fn sumprod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(product_set, m)?)?;
    m.add_function(wrap_pyfunction!(sum_set, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(c4, m)?)?;
    m.add_function(wrap_pyfunction!(c4_totals, m)?)?;
    m.add_function(wrap_pyfunction!(identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(plunnecke, m)?)?;
    m.add_function(wrap_pyfunction!(energy_lb_report, m)?)?;
    m.add_function(wrap_pyfunction!(coset_scan, m)?)?;
    m.add_function(wrap_pyfunction!(subgroup, m)?)?;
    m.add_function(wrap_pyfunction!(count_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_direct, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_bounds, m)?)?;
    Ok(())
}
