//! Arithmetic in the prime field GF(p).
//!
//! Elements are stored as canonical representatives in `0..p` inside a `u32`.
//! Products go through `u64`, so any prime below 2^31 is supported.

use crate::error::RingError;

/// Default characteristic used throughout the crate.
pub const DEFAULT_PRIME: u32 = 32003;

/// A coefficient in GF(p), always reduced into `0..p`.
pub type Coeff = u32;

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self, RingError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Maps an arbitrary integer to its residue class.
    #[inline]
    pub fn from_i64(&self, a: i64) -> Coeff {
        a.rem_euclid(self.p as i64) as Coeff
    }

    /// Symmetric lift into `(-p/2, p/2]`, used when printing.
    pub fn to_i64(&self, a: Coeff) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    #[inline]
    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.p as u64) as Coeff
    }

    pub fn pow(&self, mut a: Coeff, mut e: u64) -> Coeff {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    ///
    /// Panics on zero.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        self.from_i64(t0)
    }

    #[inline]
    pub fn div(&self, a: Coeff, b: Coeff) -> Coeff {
        self.mul(a, self.inv(b))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut q = 3u64;
    while q * q <= p as u64 {
        if (p as u64).is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}
