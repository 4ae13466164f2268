use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// An element of the grading group Z^r.
///
/// The derived `Ord` is lexicographic and only used for deterministic
/// sorting; the mathematical partial order is [`Multidegree::leq`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(coords: Vec<i64>) -> Self {
        Multidegree(coords)
    }

    pub fn zero(r: usize) -> Self {
        Multidegree(vec![0; r])
    }

    /// The standard basis vector e_i (0-based `i`).
    pub fn unit(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i] = 1;
        Multidegree(v)
    }

    /// The vector with every coordinate equal to `value`.
    pub fn constant(r: usize, value: i64) -> Self {
        Multidegree(vec![value; r])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree: the sum of the coordinates.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Multidegree) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The componentwise partial order as an `Option<Ordering>`.
    pub fn partial_cmp_componentwise(&self, other: &Multidegree) -> Option<Ordering> {
        match (self.leq(other), other.leq(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    pub fn join(&self, other: &Multidegree) -> Multidegree {
        Multidegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn meet(&self, other: &Multidegree) -> Multidegree {
        Multidegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Componentwise `max(self, 0)`.
    pub fn positive_part(&self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| (*a).max(0)).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| *a >= 0)
    }

    pub fn plus_unit(&self, i: usize) -> Multidegree {
        let mut v = self.0.clone();
        v[i] += 1;
        Multidegree(v)
    }

    pub fn minus_unit(&self, i: usize) -> Multidegree {
        let mut v = self.0.clone();
        v[i] -= 1;
        Multidegree(v)
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.len(), rhs.len());
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.len(), rhs.len());
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Multidegree(v)
    }
}

impl From<&[i64]> for Multidegree {
    fn from(v: &[i64]) -> Self {
        Multidegree(v.to_vec())
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Formats as `(1,0)`.
impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
