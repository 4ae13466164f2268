//! Brute-force oracles: graded pieces as GF(p) vector spaces over explicit
//! monomial bases, and random test modules.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use multitrunc::groebner::{FreeModule, FreeVector, GradedHom};
use multitrunc::resolution::ChainComplexData;
use multitrunc::ring::{make_ring, Monomial, Multidegree, Polynomial, RingSpec};
use multitrunc::truncation::PresentedModule;
use rand::rngs::StdRng;
use rand::Rng;

pub fn md(v: &[i64]) -> Multidegree {
    Multidegree::new(v.to_vec())
}

pub fn mds(vs: &[&[i64]]) -> Vec<Multidegree> {
    vs.iter().map(|v| md(v)).collect()
}

/// Exponent vectors (flat, block by block) of multidegree `d`.
pub fn monomial_basis(dims: &[usize], d: &[i64]) -> Vec<Vec<u16>> {
    if d.iter().any(|&x| x < 0) {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for (&n, &di) in dims.iter().zip(d) {
        let parts = compositions(n + 1, di as u16);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
    }
    out
}

fn compositions(k: usize, s: u16) -> Vec<Vec<u16>> {
    if k == 1 {
        return vec![vec![s]];
    }
    (0..=s)
        .flat_map(|first| {
            compositions(k - 1, s - first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Basis of `F_d` for `F = ⊕ S(-a_k)`: pairs `(k, u)` with `deg u = d - a_k`.
pub fn piece(dims: &[usize], f: &FreeModule, d: &Multidegree) -> Vec<(usize, Vec<u16>)> {
    let mut out = Vec::new();
    for (k, a) in f.twists().iter().enumerate() {
        let need: Vec<i64> = d
            .coords()
            .iter()
            .zip(a.coords())
            .map(|(x, y)| x - y)
            .collect();
        for u in monomial_basis(dims, &need) {
            out.push((k, u));
        }
    }
    out
}

/// `h` restricted to degree `d`, one row per source basis element.
pub fn matrix_at(h: &GradedHom, d: &Multidegree) -> Vec<Vec<u64>> {
    let ring = h.ring();
    let dims = ring.dims().to_vec();
    let nv = ring.nvars();
    let p = ring.characteristic() as u64;
    let target = piece(&dims, h.target(), d);
    let index: HashMap<(usize, Vec<u16>), usize> = target
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, key)| (key, i))
        .collect();
    let source = piece(&dims, h.source(), d);
    let rows = h.to_rows();
    source
        .iter()
        .map(|(l, u)| {
            let mut row = vec![0u64; target.len()];
            for (k, r) in rows.iter().enumerate() {
                for (m, c) in r[*l].terms() {
                    let e: Vec<u16> = (0..nv).map(|v| u[v] + m.exponent(v)).collect();
                    let at = index[&(k, e)];
                    row[at] = (row[at] + *c as u64) % p;
                }
            }
            row
        })
        .collect()
}

/// Rank over GF(p) by incremental sparse row echelon form.
pub fn rank_mod(rows: Vec<Vec<u64>>, p: u64) -> usize {
    let sparse = rows
        .into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, c)| *c != 0).collect())
        .collect();
    sparse_rank(sparse, p)
}

pub fn sparse_rank(rows: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for mut row in rows {
        while let Some(&(col, c)) = row.first() {
            match pivots.get(&col) {
                Some(piv) => row = axpy(&row, piv, p - c, p),
                None => {
                    let inv = pow_mod(c, p - 2, p);
                    let norm = row.iter().map(|&(j, x)| (j, x * inv % p)).collect();
                    pivots.insert(col, norm);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a + s*b` on sorted sparse rows.
fn axpy(a: &[(usize, u64)], b: &[(usize, u64)], s: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, s * b[j].1 % p));
            j += 1;
        } else {
            let v = (a[i].1 + s * b[j].1) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn rank_at(h: &GradedHom, d: &Multidegree) -> usize {
    rank_mod(matrix_at(h, d), h.ring().characteristic() as u64)
}

pub fn free_dim(h: &GradedHom, f: &FreeModule, d: &Multidegree) -> usize {
    piece(h.ring().dims(), f, d).len()
}

/// `dim_k coker(h)_d`.
pub fn coker_dim(h: &GradedHom, d: &Multidegree) -> usize {
    free_dim(h, h.target(), d) - rank_at(h, d)
}

/// `dim_k ker(h)_d`.
pub fn kernel_dim(h: &GradedHom, d: &Multidegree) -> usize {
    free_dim(h, h.source(), d) - rank_at(h, d)
}

/// All `d` in `N^r` with `d̄ <= max_total`.
pub fn degrees_up_to(r: usize, max_total: i64) -> Vec<Multidegree> {
    let mut out = Vec::new();
    for s in 0..=max_total {
        for c in compositions(r, s as u16) {
            out.push(Multidegree::new(c.iter().map(|&x| x as i64).collect()));
        }
    }
    out
}

/// Checks that `c` resolves `coker(presentation)` in every degree listed.
pub fn check_resolution(c: &ChainComplexData, presentation: &GradedHom, degrees: &[Multidegree]) {
    assert!(c.is_complex(), "d∘d != 0");
    for d in degrees {
        let want = coker_dim(presentation, d);
        let got = match c.maps().first() {
            Some(f1) => coker_dim(f1, d),
            None => piece(
                c.ring().dims(),
                c.modules().first().unwrap_or(&FreeModule::zero()),
                d,
            )
            .len(),
        };
        assert_eq!(got, want, "H_0 differs in degree {d}");
        for i in 1..c.maps().len() {
            let ker = kernel_dim(&c.maps()[i - 1], d);
            let im = rank_at(&c.maps()[i], d);
            assert_eq!(ker, im, "not exact at step {i} in degree {d}");
        }
        if let Some(last) = c.maps().last() {
            assert_eq!(
                kernel_dim(last, d),
                0,
                "last map not injective in degree {d}"
            );
        }
    }
}

/// `Σ_i (-1)^i β_{i,b}` from the Hilbert function alone:
/// `Σ_T (-1)^{|T|} dim M_{b - deg T}` over sets `T` of variables.
pub fn koszul_alternating_sum(presentation: &GradedHom, b: &Multidegree) -> i64 {
    let dims = presentation.ring().dims().to_vec();
    let mut total = 0i64;
    let mut t = vec![0usize; dims.len()];
    loop {
        let mult: i64 = dims
            .iter()
            .zip(&t)
            .map(|(&n, &ti)| binomial(n as u64 + 1, ti as u64) as i64)
            .product();
        let sign = if t.iter().sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        };
        let d = Multidegree::new(
            b.coords()
                .iter()
                .zip(&t)
                .map(|(x, &ti)| x - ti as i64)
                .collect(),
        );
        total += sign * mult * coker_dim(presentation, &d) as i64;
        // next tuple
        let mut j = 0;
        loop {
            if j == dims.len() {
                return total;
            }
            t[j] += 1;
            if t[j] <= dims[j] + 1 {
                break;
            }
            t[j] = 0;
            j += 1;
        }
    }
}

/// A random homogeneous polynomial with one or two terms of degree `d`.
pub fn random_poly(
    rng: &mut StdRng,
    ring: &Arc<RingSpec>,
    d: &[i64],
    binomial: bool,
) -> Polynomial {
    let basis = monomial_basis(ring.dims(), d);
    let pick = |rng: &mut StdRng| Monomial::from_exponents(&basis[rng.gen_range(0..basis.len())]);
    let c1 = rng.gen_range(1..ring.characteristic());
    let mut p = Polynomial::monomial(ring, pick(rng), c1);
    if binomial {
        let c2 = rng.gen_range(1..ring.characteristic());
        p = p.add(&Polynomial::monomial(ring, pick(rng), c2)).unwrap();
    }
    p
}

pub const SMALL_RINGS: [&[i64]; 7] = [&[2], &[3], &[4], &[1, 1], &[1, 2], &[2, 2], &[1, 1, 1]];

/// A random presentation with monomial or binomial entries: one or two
/// generators, two to five relations of small degree.
pub fn random_presentation(rng: &mut StdRng, ring: &Arc<RingSpec>, binomial: bool) -> GradedHom {
    let r = ring.r();
    let ngens = rng.gen_range(1..=2);
    let mut target = vec![Multidegree::zero(r)];
    if ngens == 2 {
        target.push(Multidegree::new(
            (0..r).map(|_| rng.gen_range(0..=1)).collect(),
        ));
    }
    let nrel = rng.gen_range(2..=5);
    let mut source = Vec::new();
    let mut columns = Vec::new();
    while columns.len() < nrel {
        let top = target.iter().fold(Multidegree::zero(r), |a, t| a.join(t));
        let extra: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=2)).collect();
        let c = Multidegree::new(
            top.coords()
                .iter()
                .zip(&extra)
                .map(|(a, b)| a + b)
                .collect(),
        );
        if c.total() == 0 {
            continue;
        }
        let comps: Vec<Polynomial> = target
            .iter()
            .map(|t| {
                let need: Vec<i64> = c
                    .coords()
                    .iter()
                    .zip(t.coords())
                    .map(|(a, b)| a - b)
                    .collect();
                if need.iter().sum::<i64>() > 0 && rng.gen_bool(0.75) {
                    random_poly(rng, ring, &need, binomial)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect();
        if comps.iter().all(|p| p.is_zero()) {
            continue;
        }
        source.push(c);
        columns.push(FreeVector::from_components(&comps));
    }
    GradedHom::new(
        ring,
        FreeModule::new(source),
        FreeModule::new(target),
        columns,
    )
    .unwrap()
}

pub fn random_ring(rng: &mut StdRng) -> Arc<RingSpec> {
    make_ring(SMALL_RINGS[rng.gen_range(0..SMALL_RINGS.len())], 32003).unwrap()
}

pub fn quotient(ring: &Arc<RingSpec>, gens: &[&str]) -> PresentedModule {
    let polys: Vec<Polynomial> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
    let cols: Vec<FreeVector> = polys
        .iter()
        .map(|p| FreeVector::from_components(std::slice::from_ref(p)))
        .collect();
    let target = FreeModule::new(vec![Multidegree::zero(ring.r())]);
    let twists = cols
        .iter()
        .map(|c| c.degree(ring, &target).unwrap())
        .collect();
    PresentedModule::new(GradedHom::new(ring, FreeModule::new(twists), target, cols).unwrap())
        .unwrap()
}
