//! Cancellation of unit entries in complexes of free modules.
//!
//! A scalar entry `c` at row `a`, column `b` of `d_i` splits off the trivial
//! complex `S e_b -> S e_a`. What remains has
//! `d_i'[r,s] = d_i[r,s] - d_i[r,b] c^{-1} d_i[a,s]`, loses column `a` of
//! `d_{i-1}` and row `b` of `d_{i+1}`, and is otherwise unchanged.

use crate::field::Field;
use crate::groebner::{FreeModule, FreeVector, GradedHom, Term};

use super::ChainComplexData;

pub(crate) fn cancel_units(c: &ChainComplexData) -> ChainComplexData {
    let ring = c.ring().clone();
    let field = ring.field();
    let modules = c.modules();
    let mut cols: Vec<Vec<FreeVector>> = c.maps().iter().map(|m| m.columns().to_vec()).collect();
    let mut alive: Vec<Vec<bool>> = modules.iter().map(|m| vec![true; m.rank()]).collect();

    for i in 0..cols.len() {
        // map i goes from modules[i + 1] to modules[i]
        while let Some((a, b, unit)) = find_unit(&cols[i], &alive[i], &alive[i + 1]) {
            eliminate(field, &mut cols[i], &alive[i + 1], a, b, unit);
            alive[i][a] = false;
            alive[i + 1][b] = false;
        }
    }

    let new_modules: Vec<FreeModule> = modules
        .iter()
        .zip(&alive)
        .map(|(m, live)| {
            FreeModule::new(
                m.twists()
                    .iter()
                    .zip(live)
                    .filter(|(_, &l)| l)
                    .map(|(t, _)| t.clone())
                    .collect(),
            )
        })
        .collect();
    let renumber: Vec<Vec<Option<u32>>> = alive
        .iter()
        .map(|live| {
            let mut next = 0u32;
            live.iter()
                .map(|&l| {
                    l.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let maps: Vec<GradedHom> = cols
        .into_iter()
        .enumerate()
        .map(|(i, columns)| {
            let columns = columns
                .into_iter()
                .zip(&alive[i + 1])
                .filter(|(_, &l)| l)
                .map(|(v, _)| {
                    let terms = v
                        .terms()
                        .iter()
                        .filter_map(|t| renumber[i][t.idx as usize].map(|idx| Term { idx, ..*t }))
                        .collect();
                    FreeVector::from_sorted(terms)
                })
                .collect();
            GradedHom::new_unchecked(
                &ring,
                new_modules[i + 1].clone(),
                new_modules[i].clone(),
                columns,
            )
        })
        .collect();
    ChainComplexData::from_parts(&ring, new_modules, maps).trimmed()
}

fn find_unit(
    cols: &[FreeVector],
    rows_alive: &[bool],
    cols_alive: &[bool],
) -> Option<(usize, usize, u32)> {
    for (b, v) in cols.iter().enumerate() {
        if !cols_alive[b] {
            continue;
        }
        // scalar terms sit at the end of a column in term-over-position order
        for t in v.terms().iter().rev() {
            if !t.mono.is_one() {
                break;
            }
            if rows_alive[t.idx as usize] {
                return Some((t.idx as usize, b, t.coeff));
            }
        }
    }
    None
}

fn eliminate(
    field: Field,
    cols: &mut [FreeVector],
    cols_alive: &[bool],
    a: usize,
    b: usize,
    unit: u32,
) {
    let pivot = cols[b].clone();
    let inv = field.inv(unit);
    for s in 0..cols.len() {
        if s == b || !cols_alive[s] {
            continue;
        }
        let entry: Vec<Term> = cols[s]
            .terms()
            .iter()
            .filter(|t| t.idx as usize == a)
            .copied()
            .collect();
        if entry.is_empty() {
            continue;
        }
        let mut v = cols[s].clone();
        for t in entry {
            v = v.add_scaled(field, &pivot, field.neg(field.mul(t.coeff, inv)), &t.mono);
        }
        cols[s] = v;
    }
}
