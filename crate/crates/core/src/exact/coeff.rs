use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integers.
pub type Integer = BigInt;

/// A coefficient domain: `Z`, `Z/2` or `Z/4`.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + Eq
    + Ord
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Image of an integer under the canonical map `Z -> Self`.
    fn from_integer(n: &Integer) -> Self;
    /// Representative in `Z` (the least non-negative one for the finite rings).
    fn lift(&self) -> Integer;
}

impl Coefficient for Integer {
    fn from_integer(n: &Integer) -> Self {
        n.clone()
    }
    fn lift(&self) -> Integer {
        self.clone()
    }
}

fn residue(n: &Integer, m: u8) -> u8 {
    n.mod_floor(&BigInt::from(m)).to_u8().expect("residue fits")
}

macro_rules! residue_ring {
    ($name:ident, $m:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(u8);

        impl $name {
            pub const MODULUS: u8 = $m;

            pub fn new(v: i64) -> Self {
                Self(v.rem_euclid($m as i64) as u8)
            }

            pub fn reduce(n: &Integer) -> Self {
                Self(residue(n, $m))
            }

            pub fn value(self) -> u8 {
                self.0
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} (mod {})", self.0, $m)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                Self((self.0 + o.0) % $m)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                Self((self.0 + $m - o.0) % $m)
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, o: Self) -> Self {
                Self((self.0 * o.0) % $m)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self(($m - self.0) % $m)
            }
        }

        impl Zero for $name {
            fn zero() -> Self {
                Self(0)
            }
            fn is_zero(&self) -> bool {
                self.0 == 0
            }
        }

        impl One for $name {
            fn one() -> Self {
                Self(1)
            }
        }

        impl Coefficient for $name {
            fn from_integer(n: &Integer) -> Self {
                Self::reduce(n)
            }
            fn lift(&self) -> Integer {
                BigInt::from(self.0)
            }
        }
    };
}

residue_ring!(Mod2, 2, "The field `F_2 = Z/2`.");
residue_ring!(Mod4, 4, "The ring `Z/4`.");

impl Mod4 {
    /// The reduction `Z/4 -> Z/2`.
    pub fn to_mod2(self) -> Mod2 {
        Mod2(self.0 % 2)
    }

    /// Multiplication by two, `Z/2 -> Z/4`.
    pub fn twice(x: Mod2) -> Mod4 {
        Mod4(2 * x.0)
    }

    /// `x / 2` for an even residue `x`, as an element of `Z/2`.
    pub fn halve(self) -> Option<Mod2> {
        (self.0 % 2 == 0).then_some(Mod2(self.0 / 2))
    }
}

impl Mod2 {
    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

/// `true` iff `n` is even.
pub(crate) fn is_even(n: &Integer) -> bool {
    n.is_even()
}

/// Absolute value helper used by pivot selection.
pub(crate) fn abs(n: &Integer) -> Integer {
    n.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> Integer {
        BigInt::from(v)
    }

    #[test]
    fn lift_and_reduce_conventions() {
        assert_eq!(Mod2::new(1).lift(), big(1));
        assert_eq!(Mod2::new(-1), Mod2::new(1));
        assert_eq!(Mod4::new(-1).value(), 3);
        assert_eq!(Mod4::new(6).halve(), Some(Mod2::new(1)));
        assert_eq!(Mod4::new(3).halve(), None);
        assert_eq!(Mod4::twice(Mod2::new(1)), Mod4::new(2));
    }

    proptest! {
        #[test]
        fn reduce_after_lift_is_identity(v in 0u8..2) {
            let x = Mod2::new(v as i64);
            prop_assert_eq!(Mod2::reduce(&x.lift()), x);
        }

        #[test]
        fn reductions_commute(n in -10_000i64..10_000) {
            prop_assert_eq!(Mod4::reduce(&big(n)).to_mod2(), Mod2::reduce(&big(n)));
        }

        #[test]
        fn z4_ring_axioms(a in 0i64..4, b in 0i64..4, c in 0i64..4) {
            let (a, b, c) = (Mod4::new(a), Mod4::new(b), Mod4::new(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * Mod4::one(), a);
            prop_assert_eq!(a + (-a), Mod4::zero());
            prop_assert_eq!(a - b, a + (-b));
        }

        #[test]
        fn z2_ring_axioms(a in 0i64..2, b in 0i64..2, c in 0i64..2) {
            let (a, b, c) = (Mod2::new(a), Mod2::new(b), Mod2::new(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * Mod2::one(), a);
            prop_assert_eq!(a + a, Mod2::zero());
        }

        #[test]
        fn integer_ring_axioms(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (a, b, c) = (big(a), big(b), big(c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(Mod4::reduce(&(&a * &b)), Mod4::reduce(&a) * Mod4::reduce(&b));
        }
    }
}
