//! Exact scalar fields: prime fields `F_p` and the rationals.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::OracleError;

pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Zero for the rationals.
    const CHARACTERISTIC: u64;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    /// A random element for randomized isomorphism tests.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1 % P)
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }

    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P - other.0) % P)
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % P)
    }

    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat
        let mut base = self.0;
        let mut exp = P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        Fp(acc)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// Exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Q(pub BigRational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Q {
    const CHARACTERISTIC: u64 = 0;

    fn zero() -> Self {
        Q(BigRational::zero())
    }

    fn one() -> Self {
        Q(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(v.into()))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Q(-&self.0)
    }

    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let v: i64 = rng.gen_range(-1000..=1000);
        Q::from_i64(v)
    }
}

impl Q {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

pub type F10007 = Fp<10007>;

/// Characteristics for which an oracle field type is compiled in.
pub const SUPPORTED_CHARACTERISTICS: [u64; 8] = [0, 2, 3, 5, 7, 11, 10007, 65521];

pub const DEFAULT_CHARACTERISTIC: u64 = 10007;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Workflow {
    Analysis,
    Jacobian,
}

/// A validated choice of field characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub characteristic: u64,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FieldSpec {
    /// Accepts 0 and the compiled-in primes. Characteristic 3 is refused for
    /// Jacobian workflows, where `3 delta^2` vanishes.
    pub fn new(characteristic: u64, workflow: Workflow) -> Result<Self, OracleError> {
        if characteristic == 3 && workflow == Workflow::Jacobian {
            return Err(OracleError::UnsupportedField(
                3,
                "the cyclic derivative of delta^3 is 3 delta^2, which vanishes in characteristic 3".into(),
            ));
        }
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(OracleError::UnsupportedField(characteristic, "not a prime".into()));
        }
        if !SUPPORTED_CHARACTERISTICS.contains(&characteristic) {
            return Err(OracleError::UnsupportedField(
                characteristic,
                format!("supported characteristics are {SUPPORTED_CHARACTERISTICS:?}"),
            ));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn describe(&self) -> String {
        if self.characteristic == 0 {
            "Q".into()
        } else {
            format!("F_{}", self.characteristic)
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { characteristic: DEFAULT_CHARACTERISTIC }
    }
}

/// Runs `$body` with the type alias `$F` bound to the scalar type of `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $F:ident => $body:expr) => {{
        match $spec.characteristic {
            0 => {
                type $F = $crate::field::Q;
                $body
            }
            2 => {
                type $F = $crate::field::Fp<2>;
                $body
            }
            3 => {
                type $F = $crate::field::Fp<3>;
                $body
            }
            5 => {
                type $F = $crate::field::Fp<5>;
                $body
            }
            7 => {
                type $F = $crate::field::Fp<7>;
                $body
            }
            11 => {
                type $F = $crate::field::Fp<11>;
                $body
            }
            65521 => {
                type $F = $crate::field::Fp<65521>;
                $body
            }
            _ => {
                type $F = $crate::field::Fp<10007>;
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let a = F10007::from_i64(-1);
        assert_eq!(a.value(), 10006);
        assert_eq!(a.mul(&a), F10007::one());
        let x = F10007::from_i64(1234);
        assert_eq!(x.mul(&x.inv()), F10007::one());
        assert_eq!(x.sub(&x), F10007::zero());
        assert_eq!(Fp::<3>::from_i64(3), Fp::<3>::zero());
    }

    #[test]
    fn rational_arithmetic() {
        let h = Q::from_i64(2).inv();
        assert_eq!(h.add(&h), Q::one());
        assert_eq!(format!("{h}"), "1/2");
        assert!(Q::from_i64(-3).is_negative());
    }

    #[test]
    fn field_specs() {
        assert!(FieldSpec::new(3, Workflow::Jacobian).is_err());
        assert!(FieldSpec::new(3, Workflow::Analysis).is_ok());
        assert!(FieldSpec::new(4, Workflow::Analysis).is_err());
        assert!(FieldSpec::new(13, Workflow::Analysis).is_err());
        assert_eq!(FieldSpec::default().describe(), "F_10007");
        let c = with_field!(FieldSpec::new(0, Workflow::Analysis).unwrap(), F => F::CHARACTERISTIC);
        assert_eq!(c, 0);
    }
}
