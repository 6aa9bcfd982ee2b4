//! Exact arithmetic and counting over finite fields `F_{p^m}` for
//! experiments on sum-product phenomena: product sets, additive and
//! multiplicative energies, shifted-product counts, multiplicative subgroups
//! and Gauss sums.

pub mod energy;
pub mod error;
pub mod ff;
pub mod gauss;
pub mod lab;
pub mod oracle;
pub mod setops;
pub mod subgrp;
pub mod verify;

pub use energy::{
    c4, c4_totals, cs_chain, energy, energy_lb_report, identity_check, plunnecke_check, rnrs_ratio,
    shkredov_ratio, EnergyKind, EnergyReport,
};
pub use error::{Error, Result};
pub use ff::{make_field, subfield, Elem, Field, FieldCtx};
pub use gauss::{bounds_report, gauss_direct, gauss_via_subgroup, subgroup_sum, GaussReport};
pub use lab::{exponent_fit, generate_family, run_sweep, Family, ResultRow, SweepConfig};
pub use setops::{coset_scan, difference_set, dilate, product_set, shift, sum_set, ESet};
pub use subgrp::{
    count_solutions, field_intersection_condition, n_condition, nth_powers, subfield_intersection,
    subgroup_of_order, SubgroupInfo,
};
