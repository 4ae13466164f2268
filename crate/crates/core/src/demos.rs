//! Built-in example modules.

use std::sync::Arc;

use crate::field::DEFAULT_PRIME;
use crate::groebner::{FreeModule, GradedHom};
use crate::ring::{make_ring, Multidegree, Polynomial, RingSpec};
use crate::truncation::PresentedModule;

fn md(v: &[i64]) -> Multidegree {
    Multidegree::new(v.to_vec())
}

/// `S / B` for the irrelevant ideal `B` of `P^1 x P^2`.
pub fn irrelevant_quotient() -> PresentedModule {
    let s = make_ring(&[1, 2], DEFAULT_PRIME).unwrap();
    let gens = s.irrelevant_ideal();
    let rows = vec![gens.clone()];
    let f = GradedHom::from_matrix(
        &s,
        FreeModule::new(vec![md(&[1, 1]); gens.len()]),
        FreeModule::new(vec![md(&[0, 0])]),
        &rows,
    )
    .unwrap();
    PresentedModule::new(f).unwrap()
}

/// Over `P^1 x P^1`: generators in degrees (1,0), (0,1), (0,1) and the two
/// relations `x(1,0) e_0 - x(0,0) e_1`, `x(1,1) e_0 - x(0,1) e_2`.
pub fn bigraded_three_generator() -> PresentedModule {
    let s = make_ring(&[1, 1], DEFAULT_PRIME).unwrap();
    let p = |t: &str| s.parse(t).unwrap();
    let z = Polynomial::zero(&s);
    let rows = vec![
        vec![p("x(1,0)"), p("x(1,1)")],
        vec![p("-x(0,0)"), z.clone()],
        vec![z, p("-x(0,1)")],
    ];
    let f = GradedHom::from_matrix(
        &s,
        FreeModule::new(vec![md(&[1, 1]); 2]),
        FreeModule::new(vec![md(&[1, 0]), md(&[0, 1]), md(&[0, 1])]),
        &rows,
    )
    .unwrap();
    PresentedModule::new(f).unwrap()
}

/// The 6 x 6 matrix of `d`-th powers of variables on `P^2 x P^3`, mapping
/// `S(-d,-d)^6` to `S(0,-d)^2 + S(-d,0)^4`.
pub fn power_matrix_module(d: u32) -> PresentedModule {
    let s = make_ring(&[2, 3], DEFAULT_PRIME).unwrap();
    let rows = power_matrix_rows(&s, d);
    let di = d as i64;
    let mut target = vec![md(&[0, di]); 2];
    target.extend(vec![md(&[di, 0]); 4]);
    let f = GradedHom::from_matrix(
        &s,
        FreeModule::new(vec![md(&[di, di]); 6]),
        FreeModule::new(target),
        &rows,
    )
    .unwrap();
    PresentedModule::new(f).unwrap()
}

fn power_matrix_rows(s: &Arc<RingSpec>, d: u32) -> Vec<Vec<Polynomial>> {
    let x = |i: usize, j: usize| s.variable(i, j).unwrap().pow(d);
    let z = || Polynomial::zero(s);
    vec![
        vec![x(0, 0), x(0, 1), x(0, 2), z(), z(), z()],
        vec![z(), z(), z(), x(0, 1), x(0, 0), x(0, 2)],
        vec![x(1, 0), z(), z(), x(1, 0), z(), z()],
        vec![z(), x(1, 1), z(), z(), x(1, 1), z()],
        vec![z(), z(), x(1, 2), z(), z(), x(1, 2)],
        vec![z(), z(), z(), x(1, 3), z(), z()],
    ]
}

/// Looks up a built-in module by its command-line name.
pub fn by_name(name: &str) -> Option<PresentedModule> {
    match name {
        "irrelevant-ideal" => Some(irrelevant_quotient()),
        "section3-module" => Some(bigraded_three_generator()),
        "example21-d2" => Some(power_matrix_module(2)),
        "example21-d3" => Some(power_matrix_module(3)),
        _ => None,
    }
}

pub const NAMES: [&str; 4] = [
    "irrelevant-ideal",
    "section3-module",
    "example21-d2",
    "example21-d3",
];
