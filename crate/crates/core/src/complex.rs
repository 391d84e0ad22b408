//! Arbitrary-precision complex arithmetic built on MPFR reals.
//!
//! The crate needs only a modest set of complex operations (field arithmetic,
//! exp/log/powers, trig, and a few norms), all at explicitly controlled
//! precision, so they are implemented directly on pairs of [`rug::Float`]s.
//! Every operation produces its result at the larger of the operand
//! precisions; nothing here rounds to a context's target precision — callers
//! do that once at their boundary.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::Float;

/// A complex number as an explicit (re, im) pair of MPFR reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    /// Real part.
    pub re: Float,
    /// Imaginary part.
    pub im: Float,
}

fn prec2(a: &Complex, b: &Complex) -> u32 {
    a.prec().max(b.prec())
}

impl Complex {
    /// Builds a complex number from parts, keeping their precisions.
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    /// Zero at the given precision.
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 0),
        }
    }

    /// One at the given precision.
    pub fn one(prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, 1),
            im: Float::with_val(prec, 0),
        }
    }

    /// The imaginary unit at the given precision.
    pub fn i(prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 1),
        }
    }

    /// A purely real value at the given precision.
    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    /// A complex value from a real, at the real's precision.
    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Float::with_val(prec, 0),
        }
    }

    /// Largest precision of the two parts.
    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// The same value re-rounded to `prec` bits.
    pub fn to_prec(&self, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    /// True when both parts are finite (no NaN, no infinity).
    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// True when both parts are exactly zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: (-&self.im).complete(self.im.prec()),
        }
    }

    /// Modulus `|z|`, computed as a hypotenuse to avoid overflow.
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let rr = Float::with_val(p, &self.re * &self.re);
        rr + Float::with_val(p, &self.im * &self.im)
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, f: &Float) -> Self {
        let p = self.prec().max(f.prec());
        Self {
            re: Float::with_val(p, &self.re * f),
            im: Float::with_val(p, &self.im * f),
        }
    }

    /// Divides by a real scalar.
    pub fn unscale(&self, f: &Float) -> Self {
        let p = self.prec().max(f.prec());
        Self {
            re: Float::with_val(p, &self.re / f),
            im: Float::with_val(p, &self.im / f),
        }
    }

    /// Multiplicative inverse `1/z`.
    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(p, &self.re / &n),
            im: -Float::with_val(p, &self.im / &n),
        }
    }

    /// Complex exponential `e^z`.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (sin, cos) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &r * &cos),
            im: Float::with_val(p, &r * &sin),
        }
    }

    /// Principal branch of the complex logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let modulus = self.abs();
        Self {
            re: Float::with_val(p, modulus.ln_ref()),
            im: self.arg(),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let half = Float::with_val(p, 0.5f64);
        let r = self.abs();
        let modulus = Float::with_val(p, r.sqrt_ref());
        let theta = Float::with_val(p, self.arg() * &half);
        let (sin, cos) = theta.sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &modulus * &cos),
            im: Float::with_val(p, &modulus * &sin),
        }
    }

    /// Complex power `z^w = exp(w ln z)` (principal branch).
    pub fn pow(&self, w: &Complex) -> Self {
        (&self.ln() * w).exp()
    }

    /// Complex cosine.
    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (sin_x, cos_x) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sinh_y, cosh_y) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Self {
            re: cos_x * cosh_y,
            im: -(sin_x * sinh_y),
        }
    }

    /// Complex sine.
    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (sin_x, cos_x) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sinh_y, cosh_y) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Self {
            re: sin_x * cosh_y,
            im: cos_x * sinh_y,
        }
    }

    /// Distance `|self - other|`.
    pub fn dist(&self, other: &Complex) -> Float {
        (self - other).abs()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{} - {}i", self.re, self.im.clone().abs())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        let p = prec2(self, rhs);
        Complex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        let p = prec2(self, rhs);
        Complex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let p = prec2(self, rhs);
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        Complex {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let p = prec2(self, rhs);
        let n = Float::with_val(p, rhs.norm_sqr());
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        Complex {
            re: Float::with_val(p, ac + bd) / &n,
            im: Float::with_val(p, bc - ad) / &n,
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        let p = self.prec();
        Complex {
            re: (-&self.re).complete(p),
            im: (-&self.im).complete(p),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl $trait<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}

/// `base^expo` for a positive real base and complex exponent, via
/// `exp(expo * ln base)`. This is the hot path for Dirichlet-type sums
/// (`n^{-s}`), so it avoids the general complex logarithm.
pub fn real_pow_complex(base: &Float, expo: &Complex) -> Complex {
    let p = base.prec().max(expo.prec());
    let ln_b = Float::with_val(p, base.ln_ref());
    let a = Float::with_val(p, &expo.re * &ln_b);
    let b = Float::with_val(p, &expo.im * &ln_b);
    let r = a.exp();
    let (sin, cos) = b.sin_cos(Float::new(p));
    Complex {
        re: Float::with_val(p, &r * &cos),
        im: Float::with_val(p, &r * &sin),
    }
}

/// `n^{-s}` for an integer `n >= 1` at the exponent's precision.
pub fn int_pow_neg_s(n: u64, s: &Complex) -> Complex {
    let p = s.prec();
    let base = Float::with_val(p, n);
    let minus_s = -s;
    real_pow_complex(&base, &minus_s)
}

/// Pi at the given precision.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Natural log of 2 at the given precision.
pub fn ln2(prec: u32) -> Float {
    Float::with_val(prec, Constant::Log2)
}

/// `2^expo` for complex `expo` at its own precision.
pub fn two_pow(expo: &Complex) -> Complex {
    let p = expo.prec();
    real_pow_complex(&Float::with_val(p, 2), expo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(128, re, im)
    }

    fn close(a: &Complex, re: f64, im: f64, tol: f64) {
        assert!(
            (a.re.to_f64() - re).abs() < tol && (a.im.to_f64() - im).abs() < tol,
            "got {} + {}i, want {re} + {im}i",
            a.re.to_f64(),
            a.im.to_f64()
        );
    }

    #[test]
    fn field_arithmetic() {
        let a = c(1.0, 2.0);
        let b = c(3.0, -1.0);
        close(&(&a + &b), 4.0, 1.0, 1e-15);
        close(&(&a - &b), -2.0, 3.0, 1e-15);
        close(&(&a * &b), 5.0, 5.0, 1e-15);
        // (1+2i)/(3-i) = (1+7i)/10
        close(&(&a / &b), 0.1, 0.7, 1e-15);
        close(&(-&a), -1.0, -2.0, 1e-15);
    }

    #[test]
    fn division_round_trip_random() {
        let a = c(0.7315, -2.4489);
        let b = c(-1.25, 0.3333);
        let q = &a / &b;
        let back = &q * &b;
        assert!(back.dist(&a).to_f64() < 1e-36);
    }

    #[test]
    fn exp_ln_round_trip() {
        let z = c(0.5, 1.25);
        let w = z.exp().ln();
        assert!(w.dist(&z).to_f64() < 1e-36);
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let p = 192;
        let z = Complex::new(Float::with_val(p, 0), pi(p));
        let e = z.exp();
        assert!((e.re.clone() + 1u32).abs().to_f64() < 1e-50);
        assert!(e.im.clone().abs().to_f64() < 1e-50);
    }

    #[test]
    fn sqrt_squares_back() {
        for (re, im) in [(2.0, 3.0), (-1.0, 0.5), (-4.0, -0.001), (0.0, 9.0)] {
            let z = c(re, im);
            let r = z.sqrt();
            assert!((&r * &r).dist(&z).to_f64() < 1e-34, "sqrt failed at {z}");
            // principal branch: Re sqrt >= 0
            assert!(r.re.to_f64() >= 0.0);
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let z = c(1.1, -0.4);
        let w = c(3.0, 0.0);
        let direct = &(&z * &z) * &z;
        assert!(z.pow(&w).dist(&direct).to_f64() < 1e-34);
    }

    #[test]
    fn real_pow_complex_matches_general_pow() {
        let base = Float::with_val(128, 7);
        let s = c(0.5, 14.134725);
        let fast = real_pow_complex(&base, &s);
        let general = Complex::from_real(base).pow(&s);
        assert!(fast.dist(&general).to_f64() < 1e-33);
    }

    #[test]
    fn trig_addition_identity() {
        // cos^2 + sin^2 = 1 off the real axis.
        let z = c(0.3, 0.9);
        let c2 = &z.cos() * &z.cos();
        let s2 = &z.sin() * &z.sin();
        let sum = &c2 + &s2;
        close(&sum, 1.0, 0.0, 1e-30);
    }

    #[test]
    fn abs_and_norms_agree() {
        let z = c(3.0, 4.0);
        assert!((z.abs().to_f64() - 5.0).abs() < 1e-14);
        assert!((z.norm_sqr().to_f64() - 25.0).abs() < 1e-12);
    }

    #[test]
    fn precision_of_results_tracks_operands() {
        let a = Complex::zero(100);
        let b = Complex::one(300);
        assert_eq!((&a + &b).prec(), 300);
        assert_eq!((&a * &b).prec(), 300);
        assert_eq!(a.to_prec(150).prec(), 150);
    }

    #[test]
    fn int_pow_neg_s_is_reciprocal_power() {
        let s = c(2.0, 0.0);
        let v = int_pow_neg_s(4, &s);
        close(&v, 0.0625, 0.0, 1e-15);
    }

    #[test]
    fn conjugation_and_arg() {
        let z = c(1.0, 1.0);
        let zc = z.conj();
        close(&zc, 1.0, -1.0, 1e-15);
        assert!((z.arg().to_f64() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }
}
