use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::{Monomial, Multidegree, RingSpec};
use crate::error::RingError;
use crate::field::Coeff;

/// A polynomial in `S`, stored as terms sorted by decreasing grevlex order
/// with no zero coefficients and no repeated monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<RingSpec>,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: i64) -> Self {
        Self::monomial(ring, Monomial::ONE, ring.field().from_i64(c))
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Monomial, c: Coeff) -> Self {
        let c = c % ring.characteristic();
        Polynomial {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Builds a polynomial from arbitrary terms, combining repeats and
    /// dropping zeros.
    pub fn from_terms(ring: &Arc<RingSpec>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms that are already sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<RingSpec>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| w[0].0.grevlex_cmp(&w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
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

    pub fn leading_term(&self) -> Option<(Monomial, Coeff)> {
        self.terms.first().copied()
    }

    /// The common multidegree of all terms, or `None` for zero and
    /// inhomogeneous polynomials.
    pub fn multidegree(&self) -> Option<Multidegree> {
        let (first, rest) = self.terms.split_first()?;
        let d = self.ring.multidegree(&first.0);
        rest.iter()
            .all(|(m, _)| self.ring.multidegree(m) == d)
            .then_some(d)
    }

    /// Zero counts as homogeneous (of every degree).
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_some()
    }

    /// Coefficient of the monomial 1.
    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    fn same_ring(&self, other: &Polynomial) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.same_ring(other)?;
        Ok(self.add_scaled(other, 1, &Monomial::ONE))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.same_ring(other)?;
        let f = self.ring.field();
        Ok(self.add_scaled(other, f.neg(1 % f.characteristic()), &Monomial::ONE))
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: Coeff) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// `self + c * m * other` by a sorted merge.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: Coeff, m: &Monomial) -> Polynomial {
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let bj = b.get(j).map(|t| (t.0.mul(m), f.mul(t.1, c)));
            let ord = match (a.get(i), &bj) {
                (Some(x), Some(y)) => x.0.grevlex_cmp(&y.0),
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
                    if y.1 != 0 {
                        out.push(y);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, bj.unwrap().1);
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: Coeff) -> Polynomial {
        Polynomial::zero(&self.ring).add_scaled(self, c, m)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.same_ring(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(big, *c, m);
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other).is_ok() && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes the polynomial in the same grammar the parser accepts, e.g.
/// `x(0,0)^3*x(1,2) - 2*x(0,1)^4`. Coefficients use the symmetric lift.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let c = field.to_i64(*c);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(&self.ring, m);
            match (abs, mono.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                (a, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn format_monomial(ring: &RingSpec, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in 0..ring.nvars() {
        let e = m.exponent(v);
        if e == 0 {
            continue;
        }
        let (i, j) = ring.var_pair(v);
        if e == 1 {
            parts.push(format!("x({i},{j})"));
        } else {
            parts.push(format!("x({i},{j})^{e}"));
        }
    }
    parts.join("*")
}
