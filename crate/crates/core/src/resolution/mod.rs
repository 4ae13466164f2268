//! Free resolutions, Betti tables and linearity of complexes.
//!
//! Resolutions are built as Schreyer frames and made minimal by cancelling
//! unit entries once at the end. Betti numbers alone are read off the frame
//! without minimalizing.

mod betti;
pub(crate) mod frame;
mod minimalize;

use std::sync::Arc;

pub use betti::BettiTable;
pub(crate) use minimalize::cancel_units;

use crate::error::AlgebraError;
use crate::groebner::{groebner_basis, syzygies, FreeModule, GradedHom};
use crate::ring::{Multidegree, RingSpec};
use frame::Frame;

/// `0 <- G_0 <- G_1 <- ... <- G_k <- 0`, with `maps[i]: G_{i+1} -> G_i`.
///
/// The zero complex has no modules at all.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplexData {
    ring: Arc<RingSpec>,
    modules: Vec<FreeModule>,
    maps: Vec<GradedHom>,
}

impl ChainComplexData {
    /// Validates composability and `d ∘ d = 0`.
    pub fn new(ring: &Arc<RingSpec>, maps: Vec<GradedHom>) -> Result<Self, AlgebraError> {
        if maps.is_empty() {
            return Ok(Self::empty(ring));
        }
        for (i, w) in maps.windows(2).enumerate() {
            if w[0].source() != w[1].target() {
                return Err(AlgebraError::NotComposable(i, i + 1));
            }
            if !w[0].compose(&w[1])?.is_zero() {
                return Err(AlgebraError::NotAComplex(i, i + 1));
            }
        }
        let mut modules = vec![maps[0].target().clone()];
        modules.extend(maps.iter().map(|m| m.source().clone()));
        Ok(Self::from_parts(ring, modules, maps))
    }

    pub fn empty(ring: &Arc<RingSpec>) -> Self {
        Self::from_parts(ring, Vec::new(), Vec::new())
    }

    /// The complex with the single free module `g0` in degree 0.
    pub fn free(ring: &Arc<RingSpec>, g0: FreeModule) -> Self {
        Self::from_parts(ring, vec![g0], Vec::new()).trimmed()
    }

    pub(crate) fn from_parts(
        ring: &Arc<RingSpec>,
        modules: Vec<FreeModule>,
        maps: Vec<GradedHom>,
    ) -> Self {
        debug_assert!(modules.len() == maps.len() + 1 || (modules.is_empty() && maps.is_empty()));
        ChainComplexData {
            ring: ring.clone(),
            modules,
            maps,
        }
    }

    /// Drops trailing zero modules.
    pub(crate) fn trimmed(mut self) -> Self {
        while self.modules.last().is_some_and(|m| m.rank() == 0) {
            self.modules.pop();
            self.maps.pop();
        }
        self
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[GradedHom] {
        &self.maps
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(|m| m.rank() == 0)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Every differential is free of unit entries.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.is_minimal())
    }

    /// `d_i ∘ d_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// Shifts every twist by `c`.
    pub fn shifted(&self, c: &Multidegree) -> ChainComplexData {
        let modules: Vec<FreeModule> = self.modules.iter().map(|m| m.shifted(c)).collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                GradedHom::new_unchecked(
                    &self.ring,
                    modules[i + 1].clone(),
                    modules[i].clone(),
                    m.columns().to_vec(),
                )
            })
            .collect();
        Self::from_parts(&self.ring, modules, maps)
    }
}

impl std::fmt::Debug for ChainComplexData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainComplexData {:?}", self.ranks())
    }
}

fn check_presentation(presentation: &GradedHom) -> Result<(), AlgebraError> {
    let ring = presentation.ring();
    for (l, col) in presentation.columns().iter().enumerate() {
        if !col.is_zero()
            && col.degree(ring, presentation.target()).as_ref()
                != Some(presentation.source().twist(l))
        {
            return Err(AlgebraError::Inhomogeneous(format!(
                "column {l} of the presentation"
            )));
        }
    }
    Ok(())
}

/// The Schreyer frame of `coker(presentation)`, run to the end.
pub(crate) fn frame_of(presentation: &GradedHom) -> Result<Frame, AlgebraError> {
    check_presentation(presentation)?;
    let ring = presentation.ring();
    let gb = groebner_basis(ring, presentation.target(), presentation.columns())?;
    let mut frame = Frame::new(ring, presentation.target().twists(), gb.elements());
    frame.run_to_end();
    Ok(frame)
}

/// Minimal free resolution of `coker(presentation)`.
pub fn free_resolution(presentation: &GradedHom) -> Result<ChainComplexData, AlgebraError> {
    let frame = frame_of(presentation)?;
    let res = minimalize::cancel_units(&frame.to_complex());
    assert!(
        res.length() <= presentation.ring().nvars(),
        "resolution longer than the number of variables"
    );
    Ok(res)
}

/// The resolution before unit cancellation: the Schreyer frame of the
/// presentation's Gröbner basis. Exact, usually not minimal.
pub fn nonminimal_resolution(presentation: &GradedHom) -> Result<ChainComplexData, AlgebraError> {
    Ok(frame_of(presentation)?.to_complex())
}

/// Minimal free resolution by iterated minimal syzygies followed by unit
/// cancellation. Much slower than [`free_resolution`] once ranks grow;
/// kept as an independent cross-check for small modules.
pub fn free_resolution_iterated(
    presentation: &GradedHom,
) -> Result<ChainComplexData, AlgebraError> {
    check_presentation(presentation)?;
    let ring = presentation.ring();
    let mut maps = vec![presentation.clone()];
    loop {
        let next = syzygies(maps.last().unwrap())?;
        if next.source().rank() == 0 {
            break;
        }
        assert!(
            maps.len() < ring.nvars() + 1,
            "resolution longer than the number of variables"
        );
        maps.push(next);
    }
    let c = ChainComplexData::new(ring, maps)?;
    Ok(minimalize::cancel_units(&c))
}

/// Homotopy-equivalent complex without unit entries.
pub fn minimalize(c: &ChainComplexData) -> Result<ChainComplexData, AlgebraError> {
    for (i, w) in c.maps.windows(2).enumerate() {
        if !w[0].compose(&w[1])?.is_zero() {
            return Err(AlgebraError::NotAComplex(i, i + 1));
        }
    }
    Ok(minimalize::cancel_units(c))
}

/// Twist multiplicities of each step. Flagged non-minimal (upper bounds)
/// when `c` has unit entries.
pub fn betti(c: &ChainComplexData) -> BettiTable {
    let mut t = BettiTable::new(c.ring.r(), c.is_minimal());
    for (i, m) in c.modules.iter().enumerate() {
        for d in m.twists() {
            t.add(i, d.clone(), 1);
        }
    }
    t
}

/// Betti numbers of `coker(presentation)` straight from the frame.
pub fn betti_numbers(presentation: &GradedHom) -> Result<BettiTable, AlgebraError> {
    let frame = frame_of(presentation)?;
    Ok(frame_betti(presentation.ring().r(), &frame))
}

pub(crate) fn frame_betti(r: usize, frame: &Frame) -> BettiTable {
    let mut t = BettiTable::new(r, true);
    for i in 0..frame.depth() {
        for (d, n) in frame.betti_at(i).expect("complete frame") {
            t.add(i, d, n);
        }
    }
    t
}

/// For each step, its distinct twists in lexicographically decreasing order.
pub fn support_of_tor(c: &ChainComplexData) -> Vec<Vec<Multidegree>> {
    c.modules
        .iter()
        .map(|m| {
            let mut ds = m.twists().to_vec();
            ds.sort();
            ds.dedup();
            ds.reverse();
            ds
        })
        .collect()
}

/// What "generated in a single degree" means for [`is_linear_complex_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Linearity {
    /// `G_0` is a sum of copies of one `S(-d)`.
    #[default]
    Strict,
    /// The twists of `G_0` only share their total degree.
    TotalDegree,
}

/// Linear in the strict sense: `G_0 = ⊕ S(-d)` and every twist of `G_i`
/// has total degree `d̄ + i`. The zero complex is linear.
pub fn is_linear_complex(c: &ChainComplexData) -> bool {
    is_linear_complex_with(c, Linearity::Strict)
}

pub fn is_linear_complex_with(c: &ChainComplexData, mode: Linearity) -> bool {
    let g0 = match c.modules.first() {
        Some(m) => m.twists(),
        None => return true,
    };
    if mode == Linearity::Strict && g0.windows(2).any(|w| w[0] != w[1]) {
        return false;
    }
    let mut base: Option<i64> = None;
    for (i, m) in c.modules.iter().enumerate() {
        for d in m.twists() {
            let b = d.total() - i as i64;
            match base {
                None => base = Some(b),
                Some(x) if x != b => return false,
                _ => {}
            }
        }
    }
    true
}

/// Singly graded regularity `max (b̄ - i)`; `None` for the zero module.
pub fn total_regularity(b: &BettiTable) -> Option<i64> {
    b.total_regularity()
}

/// Coordinatewise `max (b_j - i)`; `None` for the zero module.
pub fn partial_regularities(b: &BettiTable) -> Option<Multidegree> {
    b.partial_regularities()
}

/// `coker` of a presentation given as a vector list, for tests.
#[cfg(test)]
pub(crate) fn presentation_of(
    ring: &Arc<RingSpec>,
    target: FreeModule,
    columns: Vec<crate::groebner::FreeVector>,
) -> GradedHom {
    let twists = columns
        .iter()
        .map(|c| c.degree(ring, &target).unwrap())
        .collect();
    GradedHom::new(ring, FreeModule::new(twists), target, columns).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::FreeVector;
    use crate::ring::{make_ring, Polynomial};

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn ideal_quotient(ring: &Arc<RingSpec>, gens: &[Polynomial]) -> GradedHom {
        let cols = gens
            .iter()
            .map(|g| FreeVector::from_components(std::slice::from_ref(g)))
            .collect();
        presentation_of(
            ring,
            FreeModule::new(vec![Multidegree::zero(ring.r())]),
            cols,
        )
    }

    fn assert_resolution(c: &ChainComplexData) {
        assert!(c.is_complex());
        assert!(c.is_minimal());
    }

    #[test]
    fn free_module_resolves_to_itself() {
        let s = make_ring(&[1, 2], 32003).unwrap();
        let f = GradedHom::zero(&s, FreeModule::zero(), FreeModule::new(vec![md(&[0, 0])]));
        let c = free_resolution(&f).unwrap();
        assert_eq!(c.ranks(), vec![1]);
        assert!(is_linear_complex(&c));
        assert_eq!(total_regularity(&betti(&c)), Some(0));
    }

    #[test]
    fn irrelevant_ideal_ranks() {
        let s = make_ring(&[1, 2], 32003).unwrap();
        let pres = ideal_quotient(&s, &s.irrelevant_ideal());
        let c = free_resolution(&pres).unwrap();
        assert_resolution(&c);
        assert_eq!(c.ranks(), vec![1, 6, 9, 5, 1]);
        assert!(!is_linear_complex(&c));
        assert_eq!(
            support_of_tor(&c),
            vec![
                vec![md(&[0, 0])],
                vec![md(&[1, 1])],
                vec![md(&[2, 1]), md(&[1, 2])],
                vec![md(&[2, 2]), md(&[1, 3])],
                vec![md(&[2, 3])],
            ]
        );
        assert_eq!(betti(&c), betti_numbers(&pres).unwrap());
        let it = free_resolution_iterated(&pres).unwrap();
        assert_resolution(&it);
        assert_eq!(betti(&it), betti(&c));
    }

    #[test]
    fn koszul_complex_is_linear() {
        let s = make_ring(&[1], 32003).unwrap();
        let pres = ideal_quotient(
            &s,
            &[s.parse("x(0,0)").unwrap(), s.parse("x(0,1)").unwrap()],
        );
        let c = free_resolution(&pres).unwrap();
        assert_eq!(c.ranks(), vec![1, 2, 1]);
        assert!(is_linear_complex(&c));
        assert!(is_linear_complex(&c.shifted(&md(&[3]))));
    }

    #[test]
    fn identity_cancels_to_zero() {
        let s = make_ring(&[1], 32003).unwrap();
        let f = GradedHom::identity(&s, FreeModule::new(vec![md(&[2])]));
        let c = ChainComplexData::new(&s, vec![f.clone()]).unwrap();
        let m = minimalize(&c).unwrap();
        assert!(m.is_zero());
        assert!(m.modules().is_empty());
        assert!(is_linear_complex(&m));
        assert!(free_resolution(&f).unwrap().modules().is_empty());
    }

    #[test]
    fn minimal_complex_is_unchanged() {
        let s = make_ring(&[1, 2], 32003).unwrap();
        let pres = ideal_quotient(&s, &s.irrelevant_ideal());
        let c = free_resolution(&pres).unwrap();
        assert_eq!(minimalize(&c).unwrap(), c);
    }

    #[test]
    fn not_a_complex_is_rejected() {
        let s = make_ring(&[1], 32003).unwrap();
        let x = s.parse("x(0,0)").unwrap();
        let f = GradedHom::from_matrix(
            &s,
            FreeModule::new(vec![md(&[1])]),
            FreeModule::new(vec![md(&[0])]),
            &[vec![x.clone()]],
        )
        .unwrap();
        let g = GradedHom::from_matrix(
            &s,
            FreeModule::new(vec![md(&[2])]),
            FreeModule::new(vec![md(&[1])]),
            &[vec![x]],
        )
        .unwrap();
        assert!(matches!(
            ChainComplexData::new(&s, vec![f, g]),
            Err(AlgebraError::NotAComplex(0, 1))
        ));
    }
}
