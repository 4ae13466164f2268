//! Graded free modules, their elements, and homogeneous maps between them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::{Coeff, Field};
use crate::ring::{Monomial, Multidegree, Polynomial, RingSpec};

/// The free module `F = ⊕ S(-a_k)`; generator `e_k` has degree `a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeModule {
    twists: Vec<Multidegree>,
}

impl FreeModule {
    pub fn new(twists: Vec<Multidegree>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[Multidegree] {
        &self.twists
    }

    pub fn twist(&self, k: usize) -> &Multidegree {
        &self.twists[k]
    }

    /// Shifts every generator degree by `c`.
    pub fn shifted(&self, c: &Multidegree) -> FreeModule {
        FreeModule::new(self.twists.iter().map(|t| t + c).collect())
    }
}

/// `coeff * mono * e_idx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub mono: Monomial,
    pub idx: u32,
    pub coeff: Coeff,
}

/// Position-over-nothing: the term-over-position order on a free module.
/// Monomials compare by grevlex first; on ties the lower position is larger.
#[inline]
pub(crate) fn top_cmp(a: &Monomial, ai: u32, b: &Monomial, bi: u32) -> Ordering {
    a.grevlex_cmp(b).then_with(|| bi.cmp(&ai))
}

/// An element of a free module, as terms sorted decreasingly in the
/// term-over-position order. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeVector {
    terms: Vec<Term>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { terms: Vec::new() }
    }

    /// Builds a vector from its components.
    pub fn from_components(components: &[Polynomial]) -> Self {
        let mut terms: Vec<Term> = components
            .iter()
            .enumerate()
            .flat_map(|(k, p)| {
                p.terms().iter().map(move |&(mono, coeff)| Term {
                    mono,
                    idx: k as u32,
                    coeff,
                })
            })
            .collect();
        terms.sort_by(|a, b| top_cmp(&b.mono, b.idx, &a.mono, a.idx));
        FreeVector { terms }
    }

    /// `c * m * e_k`.
    pub fn basis_term(k: usize, m: Monomial, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        FreeVector {
            terms: vec![Term {
                mono: m,
                idx: k as u32,
                coeff: c,
            }],
        }
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(field: Field, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| top_cmp(&b.mono, b.idx, &a.mono, a.idx));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.idx == t.idx => {
                    last.coeff = field.add(last.coeff, t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        FreeVector { terms: out }
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| top_cmp(&w[0].mono, w[0].idx, &w[1].mono, w[1].idx).is_gt()));
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        FreeVector { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Largest position index used, plus one.
    pub fn min_rank(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.idx as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn component(&self, ring: &Arc<RingSpec>, k: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.idx as usize == k)
            .map(|t| (t.mono, t.coeff))
            .collect();
        Polynomial::from_sorted_terms(ring, terms)
    }

    /// Multidegree of a homogeneous vector in `module`; `None` for zero or
    /// inhomogeneous vectors.
    pub fn degree(&self, ring: &RingSpec, module: &FreeModule) -> Option<Multidegree> {
        let (first, rest) = self.terms.split_first()?;
        let d = term_degree(ring, module, first);
        rest.iter()
            .all(|t| term_degree(ring, module, t) == d)
            .then_some(d)
    }

    /// `self + c * m * other`.
    pub fn add_scaled(
        &self,
        field: Field,
        other: &FreeVector,
        c: Coeff,
        m: &Monomial,
    ) -> FreeVector {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let bj = b.get(j).map(|t| Term {
                mono: t.mono.mul(m),
                idx: t.idx,
                coeff: field.mul(t.coeff, c),
            });
            let ord = match (a.get(i), &bj) {
                (Some(x), Some(y)) => top_cmp(&x.mono, x.idx, &y.mono, y.idx),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let y = bj.unwrap();
                    if y.coeff != 0 {
                        out.push(y);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(a[i].coeff, bj.unwrap().coeff);
                    if s != 0 {
                        out.push(Term { coeff: s, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        FreeVector { terms: out }
    }

    pub fn add(&self, field: Field, other: &FreeVector) -> FreeVector {
        self.add_scaled(field, other, 1, &Monomial::ONE)
    }

    pub fn sub(&self, field: Field, other: &FreeVector) -> FreeVector {
        self.add_scaled(field, other, field.neg(1), &Monomial::ONE)
    }

    pub fn scale(&self, field: Field, c: Coeff, m: &Monomial) -> FreeVector {
        FreeVector::zero().add_scaled(field, self, c, m)
    }

    /// Multiplies by a polynomial.
    pub fn mul_poly(&self, field: Field, p: &Polynomial) -> FreeVector {
        let mut acc = FreeVector::zero();
        for (m, c) in p.terms() {
            acc = acc.add_scaled(field, self, *c, m);
        }
        acc
    }

    /// Applies `f` to the basis indices; the caller guarantees the result is
    /// still strictly decreasing (e.g. an order-preserving reindexing).
    /// Multidegree-free check that every term has positive degree.
    pub fn has_unit_entry(&self) -> bool {
        self.terms.iter().any(|t| t.mono.is_one())
    }
}

pub(crate) fn term_degree(ring: &RingSpec, module: &FreeModule, t: &Term) -> Multidegree {
    &ring.multidegree(&t.mono) + module.twist(t.idx as usize)
}

impl fmt::Debug for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}*{:?}*e{}", t.coeff, t.mono, t.idx))
            .collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

/// A homogeneous map between graded free modules, stored by columns: column
/// `l` is the image of the `l`-th generator of the source.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedHom {
    ring: Arc<RingSpec>,
    source: FreeModule,
    target: FreeModule,
    columns: Vec<FreeVector>,
}

impl GradedHom {
    /// Validates shapes and homogeneity: every nonzero entry `(k, l)` must
    /// have degree `source_l - target_k`.
    pub fn new(
        ring: &Arc<RingSpec>,
        source: FreeModule,
        target: FreeModule,
        columns: Vec<FreeVector>,
    ) -> Result<Self, AlgebraError> {
        if columns.len() != source.rank() {
            return Err(AlgebraError::AmbientMismatch {
                expected: source.rank(),
                got: columns.len(),
            });
        }
        for t in source.twists().iter().chain(target.twists()) {
            ring.check_degree(t)?;
        }
        for (l, col) in columns.iter().enumerate() {
            if col.min_rank() > target.rank() {
                return Err(AlgebraError::AmbientMismatch {
                    expected: target.rank(),
                    got: col.min_rank(),
                });
            }
            for t in col.terms() {
                let d = term_degree(ring, &target, t);
                if &d != source.twist(l) {
                    let k = t.idx as usize;
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "entry ({k},{l}) has a term of degree {}, expected {}",
                        &d - target.twist(k),
                        source.twist(l) - target.twist(k)
                    )));
                }
            }
        }
        Ok(GradedHom {
            ring: ring.clone(),
            source,
            target,
            columns,
        })
    }

    /// Builds a map from a dense matrix with `target.rank()` rows.
    pub fn from_matrix(
        ring: &Arc<RingSpec>,
        source: FreeModule,
        target: FreeModule,
        rows: &[Vec<Polynomial>],
    ) -> Result<Self, AlgebraError> {
        if rows.len() != target.rank() {
            return Err(AlgebraError::AmbientMismatch {
                expected: target.rank(),
                got: rows.len(),
            });
        }
        let mut columns = Vec::with_capacity(source.rank());
        for l in 0..source.rank() {
            let mut comps = Vec::with_capacity(rows.len());
            for (k, row) in rows.iter().enumerate() {
                if row.len() != source.rank() {
                    return Err(AlgebraError::AmbientMismatch {
                        expected: source.rank(),
                        got: row.len(),
                    });
                }
                if !row[l].is_homogeneous() {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "entry ({k},{l}) is not homogeneous"
                    )));
                }
                comps.push(row[l].clone());
            }
            columns.push(FreeVector::from_components(&comps));
        }
        Self::new(ring, source, target, columns)
    }

    pub(crate) fn new_unchecked(
        ring: &Arc<RingSpec>,
        source: FreeModule,
        target: FreeModule,
        columns: Vec<FreeVector>,
    ) -> Self {
        debug_assert!(Self::new(ring, source.clone(), target.clone(), columns.clone()).is_ok());
        GradedHom {
            ring: ring.clone(),
            source,
            target,
            columns,
        }
    }

    pub fn zero(ring: &Arc<RingSpec>, source: FreeModule, target: FreeModule) -> Self {
        let columns = vec![FreeVector::zero(); source.rank()];
        GradedHom {
            ring: ring.clone(),
            source,
            target,
            columns,
        }
    }

    pub fn identity(ring: &Arc<RingSpec>, module: FreeModule) -> Self {
        let columns = (0..module.rank())
            .map(|k| FreeVector::basis_term(k, Monomial::ONE, 1))
            .collect();
        GradedHom {
            ring: ring.clone(),
            source: module.clone(),
            target: module,
            columns,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[FreeVector] {
        &self.columns
    }

    pub fn column(&self, l: usize) -> &FreeVector {
        &self.columns[l]
    }

    pub fn entry(&self, k: usize, l: usize) -> Polynomial {
        self.columns[l].component(&self.ring, k)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Image of a vector of the source module.
    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        let field = self.ring.field();
        let mut acc = FreeVector::zero();
        for t in v.terms() {
            acc = acc.add_scaled(field, &self.columns[t.idx as usize], t.coeff, &t.mono);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedHom) -> Result<GradedHom, AlgebraError> {
        if other.target != self.source {
            return Err(AlgebraError::NotComposable(0, 1));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(GradedHom {
            ring: self.ring.clone(),
            source: other.source.clone(),
            target: self.target.clone(),
            columns,
        })
    }

    /// True when no nonzero entry is a constant.
    pub fn is_minimal(&self) -> bool {
        self.columns.iter().all(|c| !c.has_unit_entry())
    }

    /// The dense matrix of entries, rows indexed by the target.
    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.target.rank())
            .map(|k| (0..self.source.rank()).map(|l| self.entry(k, l)).collect())
            .collect()
    }
}

impl fmt::Debug for GradedHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GradedHom {:?} <- {:?}",
            self.target.twists(),
            self.source.twists()
        )?;
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn rejects_inhomogeneous_entries() {
        let s = make_ring(&[1, 1], 32003).unwrap();
        let x = |i, j| s.variable(i, j).unwrap();
        let target = FreeModule::new(vec![Multidegree::zero(2)]);
        let source = FreeModule::new(vec![
            Multidegree::new(vec![1, 0]),
            Multidegree::new(vec![1, 0]),
        ]);
        assert!(GradedHom::from_matrix(
            &s,
            source.clone(),
            target.clone(),
            &[vec![x(0, 0), x(0, 1)]]
        )
        .is_ok());
        let err =
            GradedHom::from_matrix(&s, source, target, &[vec![x(0, 0), x(1, 1)]]).unwrap_err();
        assert!(matches!(err, AlgebraError::Inhomogeneous(msg) if msg.contains("(0,1)")));
    }

    #[test]
    fn composition_and_entries() {
        let s = make_ring(&[1], 32003).unwrap();
        let x0 = s.variable(0, 0).unwrap();
        let x1 = s.variable(0, 1).unwrap();
        let f = GradedHom::from_matrix(
            &s,
            FreeModule::new(vec![Multidegree::new(vec![1]); 2]),
            FreeModule::new(vec![Multidegree::zero(1)]),
            &[vec![x0.clone(), x1.clone()]],
        )
        .unwrap();
        let g = GradedHom::from_matrix(
            &s,
            FreeModule::new(vec![Multidegree::new(vec![2])]),
            FreeModule::new(vec![Multidegree::new(vec![1]); 2]),
            &[vec![x1.neg()], vec![x0.clone()]],
        )
        .unwrap();
        assert!(f.compose(&g).unwrap().is_zero());
        assert_eq!(g.entry(0, 0), x1.neg());
        assert!(f.is_minimal());
        assert!(!GradedHom::identity(&s, FreeModule::new(vec![Multidegree::zero(1)])).is_minimal());
    }
}
