//! Gröbner bases of homogeneous submodules of graded free modules, normal
//! forms, syzygies and minimal generating sets.
//!
//! The module order is term-over-position on top of grevlex: compare
//! monomials first, and on ties the lower position index is larger.

pub(crate) mod engine;
mod module;

use std::sync::Arc;

pub(crate) use module::top_cmp;
pub use module::{FreeModule, FreeVector, GradedHom, Term};

use crate::error::AlgebraError;
use crate::field::Field;
use crate::ring::RingSpec;
use engine::{Engine, Work};

/// A reduced Gröbner basis of a submodule of `ambient`.
#[derive(Clone)]
pub struct ModuleGB {
    ring: Arc<RingSpec>,
    ambient: FreeModule,
    elements: Vec<FreeVector>,
}

impl ModuleGB {
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    /// Monic basis elements with pairwise distinct, mutually non-divisible
    /// lead terms.
    pub fn elements(&self) -> &[FreeVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Remainder of `v` on division by the basis: no term of the result is
    /// divisible by a lead term, and `v - result` lies in the submodule.
    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector, AlgebraError> {
        check_ambient(&self.ambient, v)?;
        Ok(reduce_by(self.ring.field(), &self.elements, v))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(v)?.is_zero())
    }
}

fn check_ambient(ambient: &FreeModule, v: &FreeVector) -> Result<(), AlgebraError> {
    if v.min_rank() > ambient.rank() {
        Err(AlgebraError::AmbientMismatch {
            expected: ambient.rank(),
            got: v.min_rank(),
        })
    } else {
        Ok(())
    }
}

fn check_homogeneous(
    ring: &RingSpec,
    ambient: &FreeModule,
    gens: &[FreeVector],
) -> Result<(), AlgebraError> {
    for (k, g) in gens.iter().enumerate() {
        check_ambient(ambient, g)?;
        if !g.is_zero() && g.degree(ring, ambient).is_none() {
            return Err(AlgebraError::Inhomogeneous(format!(
                "generator {k} is not homogeneous"
            )));
        }
    }
    Ok(())
}

pub(crate) fn twist_totals(module: &FreeModule) -> Vec<i64> {
    module.twists().iter().map(|t| t.total()).collect()
}

/// Full reduction of `v` by monic vectors whose leads are pairwise
/// non-divisible.
pub(crate) fn reduce_by(field: Field, basis: &[FreeVector], v: &FreeVector) -> FreeVector {
    let rank = basis
        .iter()
        .chain(std::iter::once(v))
        .map(|b| b.min_rank())
        .max()
        .unwrap_or(0);
    let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for (i, b) in basis.iter().enumerate() {
        if let Some(t) = b.lead() {
            by_pos[t.idx as usize].push(i);
        }
    }
    let mut work = Work::from_terms(v.terms());
    let mut rem = Vec::new();
    while let Some(t) = work.pop_max() {
        let reducer = by_pos[t.idx as usize]
            .iter()
            .map(|&i| &basis[i])
            .find(|b| b.lead().unwrap().mono.divides(&t.mono));
        match reducer {
            Some(b) => {
                let lead = b.lead().unwrap();
                let q = lead.mono.quotient_of(&t.mono);
                let c = field.neg(field.div(t.coeff, lead.coeff));
                work.add_scaled(field, &b.terms()[1..], c, &q);
            }
            None => rem.push(t),
        }
    }
    FreeVector::from_sorted(rem)
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner_basis(
    ring: &Arc<RingSpec>,
    ambient: &FreeModule,
    gens: &[FreeVector],
) -> Result<ModuleGB, AlgebraError> {
    check_homogeneous(ring, ambient, gens)?;
    let tot = twist_totals(ambient);
    let mut engine = Engine::new(ring.field(), &tot, false);
    engine.run(gens);
    Ok(ModuleGB {
        ring: ring.clone(),
        ambient: ambient.clone(),
        elements: engine.reduced_basis(),
    })
}

/// The S-vector of two vectors whose lead terms share a position, scaled so
/// the lead terms cancel; `None` if the positions differ or either is zero.
pub fn s_vector(field: Field, a: &FreeVector, b: &FreeVector) -> Option<FreeVector> {
    let (la, lb) = (a.lead()?, b.lead()?);
    if la.idx != lb.idx {
        return None;
    }
    let lcm = la.mono.lcm(&lb.mono);
    let qa = la.mono.quotient_of(&lcm);
    let qb = lb.mono.quotient_of(&lcm);
    let left = a.scale(field, field.inv(la.coeff), &qa);
    Some(left.add_scaled(field, b, field.neg(field.inv(lb.coeff)), &qb))
}

/// Reduced Gröbner basis of the relations among `images` modulo the span of
/// `relations`: all `a` in the free module `image_module` (one generator per
/// image) with `Σ a_k images_k` in the span of `relations`. Computed with an
/// elimination order in which the positions of `ambient` dominate.
pub fn relation_basis(
    ring: &Arc<RingSpec>,
    ambient: &FreeModule,
    relations: &[FreeVector],
    image_module: &FreeModule,
    images: &[FreeVector],
) -> Result<Vec<FreeVector>, AlgebraError> {
    check_homogeneous(ring, ambient, relations)?;
    check_homogeneous(ring, ambient, images)?;
    let n0 = ambient.rank();
    let mut tot = twist_totals(ambient);
    tot.extend(twist_totals(image_module));
    let mut gens: Vec<FreeVector> = relations.to_vec();
    for (k, v) in images.iter().enumerate() {
        let mut terms = v.terms().to_vec();
        terms.push(Term {
            mono: crate::ring::Monomial::ONE,
            idx: (n0 + k) as u32,
            coeff: 1,
        });
        gens.push(FreeVector::from_terms(ring.field(), terms));
    }
    let mut engine = Engine::new(ring.field(), &tot, false).with_elimination(n0);
    engine.run(&gens);
    Ok(engine.reduced_tail_block(n0))
}

/// Indices of a minimal generating subset of `gens` (in the Nakayama sense).
///
/// Generators are visited in order of increasing degree (ties keep input
/// order) and kept when their normal form against everything already
/// generated in lower degrees and the kept generators is nonzero.
pub fn minimal_generators(
    ring: &Arc<RingSpec>,
    ambient: &FreeModule,
    gens: &[FreeVector],
) -> Result<Vec<usize>, AlgebraError> {
    check_homogeneous(ring, ambient, gens)?;
    let tot = twist_totals(ambient);
    let mut engine = Engine::new(ring.field(), &tot, false);
    engine.run(gens);
    Ok((0..gens.len()).filter(|&k| engine.kept[k]).collect())
}

/// Generators of the kernel of `f`, as a map into `f.source()`.
///
/// Syzygies are read off from reductions to zero in a Buchberger run that
/// tracks every basis element as a combination of the columns of `f`; the
/// result is then pruned to a minimal generating set.
pub fn syzygies(f: &GradedHom) -> Result<GradedHom, AlgebraError> {
    let ring = f.ring();
    let raw = raw_syzygies(f)?;
    Ok(minimal_kernel_map(ring, f.source(), raw))
}

/// Unpruned syzygies from the tracked Buchberger run.
pub(crate) fn raw_syzygies(f: &GradedHom) -> Result<Vec<FreeVector>, AlgebraError> {
    let ring = f.ring();
    check_homogeneous(ring, f.target(), f.columns())?;
    let tot = twist_totals(f.target());
    let mut engine = Engine::new(ring.field(), &tot, true);
    engine.run(f.columns());
    Ok(engine
        .syzygies
        .into_iter()
        .filter(|s| !s.is_zero())
        .collect())
}

/// Prunes homogeneous elements of `source` to a minimal generating set and
/// packages them as a map into `source`.
pub(crate) fn minimal_kernel_map(
    ring: &Arc<RingSpec>,
    source: &FreeModule,
    gens: Vec<FreeVector>,
) -> GradedHom {
    let keep = minimal_generators(ring, source, &gens).expect("syzygies are homogeneous");
    let columns: Vec<FreeVector> = keep.iter().map(|&k| gens[k].clone()).collect();
    let twists = columns
        .iter()
        .map(|c| c.degree(ring, source).expect("homogeneous syzygy"))
        .collect();
    GradedHom::new_unchecked(ring, FreeModule::new(twists), source.clone(), columns)
}
