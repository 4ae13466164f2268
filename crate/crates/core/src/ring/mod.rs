//! The Cox ring `S = k[x(i,j)]` of a product of projective spaces
//! `P^{n_0} x ... x P^{n_{r-1}}` over GF(p), graded by Z^r with
//! `deg x(i,j) = e_i`.
//!
//! Blocks and variables are 0-based externally: block `i` holds the
//! variables `x(i,0), ..., x(i,n_i)`. Flat variable indices concatenate the
//! blocks in order, so `x(i,j)` has flat index `offset_i + j`.

mod monomial;
mod multidegree;
mod parse;
mod polynomial;

use std::sync::Arc;

pub use monomial::{Monomial, MAX_EXPONENT};
pub use multidegree::Multidegree;
pub use polynomial::Polynomial;

use crate::error::RingError;
use crate::field::Field;

/// Maximum number of variables in a ring (exponent vectors are inline arrays).
pub const MAX_VARS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    dims: Vec<usize>,
    field: Field,
    offsets: Vec<usize>,
    block_of: Vec<usize>,
}

/// Builds the Cox ring of `P^{n[0]} x ... x P^{n[r-1]}` over GF(p).
pub fn make_ring(n: &[i64], p: u32) -> Result<Arc<RingSpec>, RingError> {
    RingSpec::new(n, p).map(Arc::new)
}

impl RingSpec {
    pub fn new(n: &[i64], p: u32) -> Result<RingSpec, RingError> {
        if n.is_empty() {
            return Err(RingError::NoBlocks);
        }
        if let Some(&bad) = n.iter().find(|&&d| d < 0) {
            return Err(RingError::NegativeDimension(bad));
        }
        let field = Field::new(p)?;
        let dims: Vec<usize> = n.iter().map(|&d| d as usize).collect();
        let nvars: usize = dims.iter().map(|d| d + 1).sum();
        if nvars > MAX_VARS {
            return Err(RingError::TooManyVariables(nvars));
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut block_of = Vec::with_capacity(nvars);
        for (i, d) in dims.iter().enumerate() {
            offsets.push(block_of.len());
            block_of.extend(std::iter::repeat_n(i, d + 1));
        }
        Ok(RingSpec {
            dims,
            field,
            offsets,
            block_of,
        })
    }

    /// Number of grading components.
    pub fn r(&self) -> usize {
        self.dims.len()
    }

    /// The factor dimensions `n_i`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn nvars(&self) -> usize {
        self.block_of.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    /// Flat index of `x(block, index)`.
    pub fn var_index(&self, block: usize, index: usize) -> Result<usize, RingError> {
        if block < self.r() && index <= self.dims[block] {
            Ok(self.offsets[block] + index)
        } else {
            Err(RingError::NoSuchVariable { block, index })
        }
    }

    /// Inverse of [`var_index`](Self::var_index).
    pub fn var_pair(&self, flat: usize) -> (usize, usize) {
        let b = self.block_of[flat];
        (b, flat - self.offsets[b])
    }

    pub fn block_of(&self, flat: usize) -> usize {
        self.block_of[flat]
    }

    /// Degrees of the variables in flat order.
    pub fn variable_degrees(&self) -> Vec<Multidegree> {
        self.block_of
            .iter()
            .map(|&b| Multidegree::unit(self.r(), b))
            .collect()
    }

    /// Per-block exponent sums.
    pub fn multidegree(&self, m: &Monomial) -> Multidegree {
        let mut d = vec![0i64; self.r()];
        for (v, &b) in self.block_of.iter().enumerate() {
            d[b] += m.exponent(v) as i64;
        }
        Multidegree::new(d)
    }

    pub fn check_degree(&self, d: &Multidegree) -> Result<(), RingError> {
        if d.len() == self.r() {
            Ok(())
        } else {
            Err(RingError::DegreeLength {
                expected: self.r(),
                got: d.len(),
            })
        }
    }

    /// All monomials of multidegree exactly `d`, in decreasing grevlex order.
    ///
    /// A negative coordinate gives the empty list. The count is
    /// `prod_i C(n_i + d_i, d_i)`.
    pub fn monomials_of_multidegree(&self, d: &Multidegree) -> Vec<Monomial> {
        assert_eq!(d.len(), self.r(), "multidegree length");
        if !d.is_nonnegative() {
            return Vec::new();
        }
        let mut acc = vec![Monomial::ONE];
        for (block, &deg) in d.coords().iter().enumerate() {
            let vars: Vec<usize> = (0..=self.dims[block])
                .map(|j| self.offsets[block] + j)
                .collect();
            let parts = monomials_in_vars(&vars, deg as u16);
            acc = acc
                .iter()
                .flat_map(|a| parts.iter().map(move |b| a.mul(b)))
                .collect();
        }
        acc.sort_by(|a, b| b.grevlex_cmp(a));
        acc
    }

    /// Generators of the irrelevant ideal: all products of one variable from
    /// each block, i.e. the monomials of multidegree `(1, ..., 1)`, in
    /// decreasing grevlex order.
    pub fn irrelevant_ideal(self: &Arc<Self>) -> Vec<Polynomial> {
        self.monomials_of_multidegree(&Multidegree::constant(self.r(), 1))
            .into_iter()
            .map(|m| Polynomial::monomial(self, m, 1))
            .collect()
    }

    /// The variable `x(block, index)` as a polynomial.
    pub fn variable(self: &Arc<Self>, block: usize, index: usize) -> Result<Polynomial, RingError> {
        let v = self.var_index(block, index)?;
        Ok(Polynomial::monomial(self, Monomial::var_power(v, 1), 1))
    }

    /// Parses a polynomial in the `x(i,j)` grammar.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial, crate::error::ParseError> {
        parse::parse_polynomial(self, text)
    }
}

/// All monomials of total degree `deg` in the given variables.
fn monomials_in_vars(vars: &[usize], deg: u16) -> Vec<Monomial> {
    fn rec(vars: &[usize], deg: u16, cur: Monomial, out: &mut Vec<Monomial>) {
        match vars {
            [] => {
                if deg == 0 {
                    out.push(cur)
                }
            }
            [last] => out.push(cur.mul(&Monomial::var_power(*last, deg))),
            [first, rest @ ..] => {
                for e in (0..=deg).rev() {
                    rec(rest, deg - e, cur.mul(&Monomial::var_power(*first, e)), out);
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, deg, Monomial::ONE, &mut out);
    out
}
