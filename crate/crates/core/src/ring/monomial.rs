use std::cmp::Ordering;
use std::fmt;

use super::MAX_VARS;

/// A monomial in at most [`MAX_VARS`] variables, stored as a dense exponent
/// vector over the flat variable index together with its total degree.
///
/// Unused trailing slots are zero, so monomials from rings with fewer
/// variables compare and multiply correctly without knowing the ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u16 = 1 << 15;

impl Monomial {
    /// The monomial 1.
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            assert!(e <= MAX_EXPONENT, "exponent {e} above cap");
            *slot = e;
            m.deg += e as u32;
        }
        m
    }

    /// `x_var ^ e`.
    pub fn var_power(var: usize, e: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[var] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    /// Total degree over all variables.
    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
            debug_assert!(*a <= MAX_EXPONENT, "exponent overflow");
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut out = *other;
        for (a, b) in out.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        out.deg -= self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    /// `self : other`, the part of `self` not covered by `other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].saturating_sub(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// One bit per variable that occurs; a cheap necessary test for divisibility.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Graded reverse lexicographic order: higher total degree is larger;
    /// on ties, the monomial with the smaller exponent in the last variable
    /// where they differ is larger.
    #[inline]
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Pure lexicographic order with `x_0 > x_1 > ...`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn one_is_smallest() {
        assert_eq!(Monomial::ONE.grevlex_cmp(&mono(&[1])), Ordering::Less);
    }

    #[test]
    fn grevlex_earlier_variable_is_larger() {
        // x0 vs x1: same degree, x1 has the larger last exponent
        assert_eq!(mono(&[1, 0]).grevlex_cmp(&mono(&[0, 1])), Ordering::Greater);
        // x0^2 vs x0*x1 vs x1^2 in grevlex: x0^2 > x0 x1 > x1^2
        assert_eq!(mono(&[2, 0]).grevlex_cmp(&mono(&[1, 1])), Ordering::Greater);
        assert_eq!(mono(&[1, 1]).grevlex_cmp(&mono(&[0, 2])), Ordering::Greater);
        // grevlex differs from lex: x0 x2 vs x1^2 -> x1^2 larger in grevlex
        assert_eq!(
            mono(&[1, 0, 1]).grevlex_cmp(&mono(&[0, 2, 0])),
            Ordering::Less
        );
        assert_eq!(
            mono(&[1, 0, 1]).lex_cmp(&mono(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn division_helpers() {
        let a = mono(&[2, 1, 0]);
        let b = mono(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), mono(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), mono(&[1, 1, 0]));
        assert_eq!(a.colon(&b), mono(&[1, 0, 0]));
        assert!(a.gcd(&b).divides(&a));
        assert_eq!(a.quotient_of(&a.mul(&b)), b);
        assert!(mono(&[1, 0]).is_coprime(&mono(&[0, 4])));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, 5).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn grevlex_is_a_monomial_order(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let ab = a.grevlex_cmp(&b);
            prop_assert_eq!(ab, b.grevlex_cmp(&a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && b.grevlex_cmp(&c) == Ordering::Less {
                prop_assert_eq!(a.grevlex_cmp(&c), Ordering::Less);
            }
            prop_assert_eq!(a.mul(&c).grevlex_cmp(&b.mul(&c)), ab);
            prop_assert_ne!(Monomial::ONE.grevlex_cmp(&a), Ordering::Greater);
        }
    }
}
