//! Truncations `M_{≥d}` of presented modules and the linear truncation test.

use std::sync::{Arc, OnceLock};

use crate::error::AlgebraError;
use crate::groebner::{minimal_generators, relation_basis, FreeModule, FreeVector, GradedHom};
use crate::resolution::frame::Frame;
use crate::resolution::{self, cancel_units, BettiTable, ChainComplexData};
use crate::ring::{Multidegree, RingSpec};

/// `M = coker(presentation)`, with its Betti table computed on demand.
pub struct PresentedModule {
    presentation: GradedHom,
    betti: OnceLock<BettiTable>,
}

impl Clone for PresentedModule {
    fn clone(&self) -> Self {
        PresentedModule {
            presentation: self.presentation.clone(),
            betti: self.betti.clone(),
        }
    }
}

impl std::fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PresentedModule {:?}", self.presentation)
    }
}

impl PresentedModule {
    /// Checks that every column is homogeneous of its source twist.
    pub fn new(presentation: GradedHom) -> Result<Self, AlgebraError> {
        GradedHom::new(
            presentation.ring(),
            presentation.source().clone(),
            presentation.target().clone(),
            presentation.columns().to_vec(),
        )?;
        Ok(PresentedModule {
            presentation,
            betti: OnceLock::new(),
        })
    }

    /// The free module with the given generator degrees.
    pub fn free(ring: &Arc<RingSpec>, twists: Vec<Multidegree>) -> Self {
        PresentedModule {
            presentation: GradedHom::zero(ring, FreeModule::zero(), FreeModule::new(twists)),
            betti: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.presentation.ring()
    }

    pub fn presentation(&self) -> &GradedHom {
        &self.presentation
    }

    /// Degrees of the presentation's generators (not necessarily minimal).
    pub fn generator_twists(&self) -> &[Multidegree] {
        self.presentation.target().twists()
    }

    /// Multigraded Betti numbers, cached after the first call.
    pub fn betti(&self) -> &BettiTable {
        self.betti.get_or_init(|| {
            resolution::betti_numbers(&self.presentation)
                .expect("presentation validated on construction")
        })
    }

    /// Minimal free resolution.
    pub fn resolution(&self) -> ChainComplexData {
        resolution::free_resolution(&self.presentation)
            .expect("presentation validated on construction")
    }

    pub fn is_zero(&self) -> bool {
        self.betti().is_empty()
    }

    /// Singly graded regularity; `None` for the zero module.
    pub fn regularity(&self) -> Option<i64> {
        self.betti().total_regularity()
    }
}

/// Generators `u e_k` of `M_{≥d}` with `deg u = max(d - g_k, 0)`, and a
/// Gröbner basis of the relations among them.
struct Truncation {
    module: FreeModule,
    relations: Vec<FreeVector>,
}

fn truncation_data(d: &Multidegree, m: &PresentedModule) -> Result<Truncation, AlgebraError> {
    let ring = m.ring();
    ring.check_degree(d)?;
    let mut images = Vec::new();
    let mut twists = Vec::new();
    for (k, g) in m.generator_twists().iter().enumerate() {
        let need = (d - g).positive_part();
        for u in ring.monomials_of_multidegree(&need) {
            images.push(FreeVector::basis_term(k, u, 1));
            twists.push(g + &need);
        }
    }
    let module = FreeModule::new(twists);
    let pres = m.presentation();
    let relations = relation_basis(ring, pres.target(), pres.columns(), &module, &images)?;
    Ok(Truncation { module, relations })
}

/// A minimal presentation of `M_{≥d}`.
pub fn truncate(d: &Multidegree, m: &PresentedModule) -> Result<PresentedModule, AlgebraError> {
    let ring = m.ring();
    let t = truncation_data(d, m)?;
    let keep = minimal_generators(ring, &t.module, &t.relations)?;
    let columns: Vec<FreeVector> = keep.iter().map(|&k| t.relations[k].clone()).collect();
    let source = FreeModule::new(
        columns
            .iter()
            .map(|c| c.degree(ring, &t.module).expect("homogeneous relation"))
            .collect(),
    );
    let d1 = GradedHom::new_unchecked(ring, source, t.module.clone(), columns);
    let c = cancel_units(&ChainComplexData::new(ring, vec![d1])?);
    let presentation = match (c.modules().first(), c.maps().first()) {
        (_, Some(map)) => map.clone(),
        (Some(g0), None) => GradedHom::zero(ring, FreeModule::zero(), g0.clone()),
        (None, None) => GradedHom::zero(ring, FreeModule::zero(), FreeModule::zero()),
    };
    Ok(PresentedModule {
        presentation,
        betti: OnceLock::new(),
    })
}

/// Whether `M_{≥d}` is zero or has a linear resolution with all generators
/// in degree `d`.
///
/// Works on the resolution frame of the (non-minimal) presentation by all
/// products `u e_k`, and stops at the first Betti number off the linear
/// strand.
pub fn has_linear_truncation(m: &PresentedModule, d: &Multidegree) -> Result<bool, AlgebraError> {
    let ring = m.ring();
    let t = truncation_data(d, m)?;
    let mut frame = Frame::new(ring, t.module.twists(), &t.relations);
    let b0 = frame.betti_at(0).expect("level 1 exists");
    if b0.is_empty() {
        return Ok(true);
    }
    if b0.keys().any(|b| b != d) {
        return Ok(false);
    }
    let dbar = d.total();
    let mut i = 1;
    loop {
        while frame.depth() <= i + 1 && frame.extend() {}
        let Some(bi) = frame.betti_at(i) else { break };
        if bi.keys().any(|b| b.total() != dbar + i as i64) {
            return Ok(false);
        }
        i += 1;
    }
    Ok(true)
}

/// The literal test: minimal resolution of [`truncate`], then
/// [`resolution::is_linear_complex`] and generator degrees. Slow; used to
/// cross-check [`has_linear_truncation`].
pub fn has_linear_truncation_by_resolution(
    m: &PresentedModule,
    d: &Multidegree,
) -> Result<bool, AlgebraError> {
    let t = truncate(d, m)?;
    let res = t.resolution();
    if res.is_zero() {
        return Ok(true);
    }
    Ok(res.modules()[0].twists().iter().all(|g| g == d) && resolution::is_linear_complex(&res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::groebner_basis;
    use crate::resolution::is_linear_complex;
    use crate::ring::make_ring;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    /// The bigraded module with generators in degrees (1,0), (0,1), (0,1)
    /// and two relations of degree (1,1).
    fn three_generator_module() -> PresentedModule {
        let s = make_ring(&[1, 1], 32003).unwrap();
        let p = |t: &str| s.parse(t).unwrap();
        let z = crate::ring::Polynomial::zero(&s);
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

    #[test]
    fn truncating_the_ring_at_zero_is_the_ring() {
        let s = make_ring(&[1, 2], 32003).unwrap();
        let m = PresentedModule::free(&s, vec![md(&[0, 0])]);
        let t = truncate(&md(&[0, 0]), &m).unwrap();
        assert_eq!(t.generator_twists(), &[md(&[0, 0])]);
        assert_eq!(t.presentation().source().rank(), 0);
        assert!(has_linear_truncation(&m, &md(&[0, 0])).unwrap());
    }

    #[test]
    fn truncating_the_ring_at_one_one_is_the_irrelevant_ideal() {
        let s = make_ring(&[1, 2], 32003).unwrap();
        let m = PresentedModule::free(&s, vec![md(&[0, 0])]);
        let t = truncate(&md(&[1, 1]), &m).unwrap();
        assert_eq!(t.generator_twists().len(), 6);
        // the images u e_0 generate the irrelevant ideal
        let f0 = FreeModule::new(vec![md(&[0, 0])]);
        let ideal: Vec<FreeVector> = s
            .irrelevant_ideal()
            .iter()
            .map(|p| FreeVector::from_components(std::slice::from_ref(p)))
            .collect();
        let gb = groebner_basis(&s, &f0, &ideal).unwrap();
        for u in s.monomials_of_multidegree(&md(&[1, 1])) {
            assert!(gb.contains(&FreeVector::basis_term(0, u, 1)).unwrap());
        }
        // B resolves linearly: S/B has ranks 1, 6, 9, 5, 1
        let res = t.resolution();
        assert_eq!(res.ranks(), vec![6, 9, 5, 1]);
        assert!(is_linear_complex(&res));
        assert!(has_linear_truncation(&m, &md(&[1, 1])).unwrap());
    }

    #[test]
    fn three_generator_module_truncations() {
        let m = three_generator_module();
        let b = m.betti();
        assert_eq!(b.get(0, &md(&[1, 0])), 1);
        assert_eq!(b.get(0, &md(&[0, 1])), 2);
        assert_eq!(b.get(1, &md(&[1, 1])), 2);
        assert_eq!(b.ranks(), vec![3, 2]);
        for (d, expected) in [
            ([1, 1], true),
            ([0, 2], true),
            ([0, 0], false),
            ([2, 0], false),
            ([0, 1], false),
            ([1, 0], false),
        ] {
            let d = md(&d);
            assert_eq!(has_linear_truncation(&m, &d).unwrap(), expected, "at {d}");
            assert_eq!(
                has_linear_truncation_by_resolution(&m, &d).unwrap(),
                expected,
                "at {d}"
            );
        }
        let t = truncate(&md(&[1, 1]), &m).unwrap();
        let res = t.resolution();
        assert!(is_linear_complex(&res));
        assert!(res.modules()[0].twists().iter().all(|g| g == &md(&[1, 1])));
    }

    #[test]
    fn zero_module_truncation_is_linear() {
        let s = make_ring(&[1], 32003).unwrap();
        let f = GradedHom::identity(&s, FreeModule::new(vec![md(&[0])]));
        let m = PresentedModule::new(f).unwrap();
        assert!(m.is_zero());
        assert!(has_linear_truncation(&m, &md(&[3])).unwrap());
        assert_eq!(truncate(&md(&[3]), &m).unwrap().generator_twists().len(), 0);
    }
}
