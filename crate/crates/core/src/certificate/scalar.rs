//! Scalars for the renormalization recursion: plain `f64`, or unreduced
//! big-integer fractions whose every operation is exact.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Terms of the partial exponential sum used to bound `e^{-x}` from above.
pub const EXP_SERIES_TERMS: u32 = 64;

pub trait CertScalar: Clone + std::fmt::Debug {
    /// `None` when the value is not representable (overflow).
    fn from_rational(x: &BigRational) -> Option<Self>;
    fn from_uint(x: &BigUint) -> Option<Self>;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// An upper bound of `e^{-x}` for `x >= 0`.
    fn exp_neg_upper(x: &Self) -> Self;
    /// `self <= 1 / l` for `l > 0`.
    fn le_recip(&self, l: &BigUint) -> bool;
    fn log2(&self) -> f64;
    fn is_exact() -> bool;

    fn to_f64(&self) -> f64 {
        let l = self.log2();
        if l == f64::NEG_INFINITY {
            0.0
        } else {
            l.exp2()
        }
    }
}

impl CertScalar for f64 {
    fn from_rational(x: &BigRational) -> Option<Self> {
        x.to_f64().filter(|v| v.is_finite())
    }

    fn from_uint(x: &BigUint) -> Option<Self> {
        if x.bits() > 1023 {
            return None;
        }
        x.to_f64().filter(|v| v.is_finite())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn exp_neg_upper(x: &Self) -> Self {
        (-x).exp()
    }

    fn le_recip(&self, l: &BigUint) -> bool {
        match <f64 as CertScalar>::from_uint(l) {
            Some(lf) => self * lf <= 1.0,
            None => *self <= 0.0,
        }
    }

    fn log2(&self) -> f64 {
        if *self <= 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::log2(*self)
        }
    }

    fn is_exact() -> bool {
        false
    }
}

/// `num / den` with no gcd reduction (reductions dominate the cost at the
/// sizes the recursion reaches).
#[derive(Clone, Debug, PartialEq)]
pub struct ExactFraction {
    pub num: BigInt,
    pub den: BigUint,
}

impl ExactFraction {
    pub fn integer(n: u64) -> Self {
        ExactFraction {
            num: BigInt::from(n),
            den: BigUint::one(),
        }
    }

    pub fn recip(&self) -> Self {
        let sign = if self.num.is_negative() { Sign::Minus } else { Sign::Plus };
        ExactFraction {
            num: BigInt::from_biguint(sign, self.den.clone()),
            den: self.num.magnitude().clone(),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::from(self.den.clone()))
    }
}

fn log2_uint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

impl CertScalar for ExactFraction {
    fn from_rational(x: &BigRational) -> Option<Self> {
        let (n, d) = (x.numer(), x.denom());
        let flip = d.is_negative();
        Some(ExactFraction {
            num: if flip { -n } else { n.clone() },
            den: d.magnitude().clone(),
        })
    }

    fn from_uint(x: &BigUint) -> Option<Self> {
        Some(ExactFraction {
            num: BigInt::from(x.clone()),
            den: BigUint::one(),
        })
    }

    fn add(&self, other: &Self) -> Self {
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return other.clone();
        }
        ExactFraction {
            num: &self.num * BigInt::from(other.den.clone()) + &other.num * BigInt::from(self.den.clone()),
            den: &self.den * &other.den,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        ExactFraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    /// `1 / S_k(x)` with `S_k(x) = sum_{j <= k} x^j / j!`, valid since `e^x >= S_k(x)`.
    fn exp_neg_upper(x: &Self) -> Self {
        let mut s = ExactFraction::integer(1);
        for j in (1..=EXP_SERIES_TERMS).rev() {
            let step = x.mul(&ExactFraction {
                num: BigInt::one(),
                den: BigUint::from(j),
            });
            s = ExactFraction::integer(1).add(&s.mul(&step));
        }
        s.recip()
    }

    fn le_recip(&self, l: &BigUint) -> bool {
        match self.num.sign() {
            Sign::Minus | Sign::NoSign => true,
            Sign::Plus => self.num.magnitude() * l <= self.den,
        }
    }

    fn log2(&self) -> f64 {
        if !self.num.is_positive() {
            return f64::NEG_INFINITY;
        }
        log2_uint(self.num.magnitude()) - log2_uint(&self.den)
    }

    fn is_exact() -> bool {
        true
    }
}
