//! Complex scalar abstraction shared by every computation in the crate.
//!
//! Two backends implement [`Scalar`]: hardware double ([`Complex64`]) for the
//! fast path and [`MpComplex`], a configurable-precision complex type built on
//! MPFR floats, for the oracle path.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rug::float::Constant;
use rug::Float;

/// Default decimal digits for oracle computations.
pub const DEFAULT_DIGITS: u32 = 50;

/// Extra binary digits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 24;

/// Working precision of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    /// IEEE-754 double.
    Double,
    /// Multiprecision with the given number of decimal digits.
    Digits(u32),
}

impl Precision {
    /// Decimal digits used by the scale-aware zero threshold.
    pub fn digits(self) -> u32 {
        match self {
            Precision::Double => 15,
            Precision::Digits(d) => d,
        }
    }

    /// `10^(shift - digits)`, the building block for every tolerance.
    pub fn epsilon_shifted(self, shift: i32) -> f64 {
        10f64.powi(shift - self.digits() as i32)
    }

    /// Largest magnitude treated as zero in a series whose largest
    /// coefficient has magnitude `scale`: `10^(6-digits) * max(1, scale)`.
    pub fn zero_threshold(self, scale: f64) -> f64 {
        self.epsilon_shifted(6) * scale.max(1.0)
    }

    fn bits(self) -> u32 {
        match self {
            Precision::Double => 53,
            Precision::Digits(d) => (f64::from(d) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS,
        }
    }
}

/// Complex field element with the transcendental functions the series engine needs.
///
/// Constants are created at the precision of an existing value through
/// [`Scalar::real`], so generic code never has to thread a precision argument
/// once it holds one scalar.
pub trait Scalar:
    Sized
    + Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn precision(&self) -> Precision;
    fn from_parts(re: f64, im: f64, precision: Precision) -> Self;
    fn re_f64(&self) -> f64;
    fn im_f64(&self) -> f64;
    /// Modulus, rounded to double.
    fn abs_f64(&self) -> f64;
    fn is_finite(&self) -> bool;
    fn exp(&self) -> Self;
    /// Principal logarithm.
    fn ln(&self) -> Self;
    /// Principal square root.
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn conj(&self) -> Self;
    /// Real part as a scalar at full precision.
    fn re(&self) -> Self;
    /// Imaginary part as a (real) scalar at full precision.
    fn im(&self) -> Self;
    /// Principal argument in (-π, π], as a real scalar.
    fn arg(&self) -> Self;
    fn pi(precision: Precision) -> Self;
    /// Decimal renderings of the real and imaginary parts with `digits`
    /// significant digits.
    fn to_decimal_parts(&self, digits: usize) -> (String, String);

    fn from_f64(v: f64, precision: Precision) -> Self {
        Self::from_parts(v, 0.0, precision)
    }

    fn zero(precision: Precision) -> Self {
        Self::from_f64(0.0, precision)
    }

    fn one(precision: Precision) -> Self {
        Self::from_f64(1.0, precision)
    }

    /// Real constant at the precision of `self`.
    fn real(&self, v: f64) -> Self {
        Self::from_f64(v, self.precision())
    }

    fn imag_unit(precision: Precision) -> Self {
        Self::from_parts(0.0, 1.0, precision)
    }

    fn recip(&self) -> Self {
        self.real(1.0) / self
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    /// Principal power `self^s = exp(s ln self)`; `0^s` is 1 for `s = 0`, else 0.
    fn powc(&self, s: &Self) -> Self {
        if self.abs_f64() == 0.0 {
            return if s.abs_f64() == 0.0 { self.real(1.0) } else { self.real(0.0) };
        }
        (self.ln() * s).exp()
    }

    /// Integer power by repeated squaring.
    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.real(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Modulus of `self - other`, rounded to double.
    fn distance(&self, other: &Self) -> f64 {
        (self.clone() - other).abs_f64()
    }
}

impl Scalar for Complex64 {
    fn precision(&self) -> Precision {
        Precision::Double
    }

    fn from_parts(re: f64, im: f64, _precision: Precision) -> Self {
        Complex64::new(re, im)
    }

    fn re_f64(&self) -> f64 {
        self.re
    }

    fn im_f64(&self) -> f64 {
        self.im
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }

    fn ln(&self) -> Self {
        Complex64::ln(*self)
    }

    fn sqrt(&self) -> Self {
        Complex64::sqrt(*self)
    }

    fn sin(&self) -> Self {
        Complex64::sin(*self)
    }

    fn cos(&self) -> Self {
        Complex64::cos(*self)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn re(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }

    fn im(&self) -> Self {
        Complex64::new(self.im, 0.0)
    }

    fn arg(&self) -> Self {
        Complex64::new(Complex64::arg(*self), 0.0)
    }

    fn pi(_precision: Precision) -> Self {
        Complex64::new(std::f64::consts::PI, 0.0)
    }

    fn to_decimal_parts(&self, digits: usize) -> (String, String) {
        let digits = digits.clamp(1, 17);
        (format_f64(self.re, digits), format_f64(self.im, digits))
    }
}

/// Complex number with MPFR real and imaginary parts.
#[derive(Clone, PartialEq)]
pub struct MpComplex {
    re: Float,
    im: Float,
    digits: u32,
}

impl MpComplex {
    pub fn new(re: Float, im: Float, digits: u32) -> Self {
        MpComplex { re, im, digits }
    }

    pub fn re_float(&self) -> &Float {
        &self.re
    }

    pub fn im_float(&self) -> &Float {
        &self.im
    }

    fn bits(&self) -> u32 {
        Precision::Digits(self.digits).bits()
    }

    fn float(&self, v: f64) -> Float {
        Float::with_val(self.bits(), v)
    }

    fn from_re(&self, re: Float) -> Self {
        let im = self.float(0.0);
        MpComplex::new(re, im, self.digits)
    }

    fn norm_float(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }
}

impl Debug for MpComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (re, im) = self.to_decimal_parts(20);
        write!(f, "MpComplex({re}, {im}; {} digits)", self.digits)
    }
}

impl Scalar for MpComplex {
    fn precision(&self) -> Precision {
        Precision::Digits(self.digits)
    }

    fn from_parts(re: f64, im: f64, precision: Precision) -> Self {
        let digits = match precision {
            Precision::Double => 16,
            Precision::Digits(d) => d,
        };
        let bits = Precision::Digits(digits).bits();
        MpComplex::new(Float::with_val(bits, re), Float::with_val(bits, im), digits)
    }

    fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }

    fn abs_f64(&self) -> f64 {
        self.norm_float().to_f64()
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn exp(&self) -> Self {
        let modulus = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(self.float(0.0));
        MpComplex::new(modulus.clone() * c, modulus * s, self.digits)
    }

    fn ln(&self) -> Self {
        let modulus = self.norm_float().ln();
        let angle = self.im.clone().atan2(&self.re);
        MpComplex::new(modulus, angle, self.digits)
    }

    fn sqrt(&self) -> Self {
        let r = self.norm_float();
        if r.is_zero() {
            return self.real(0.0);
        }
        if !self.re.is_sign_negative() {
            let t = ((r + &self.re) / 2u32).sqrt();
            let im = self.im.clone() / (t.clone() * 2u32);
            MpComplex::new(t, im, self.digits)
        } else {
            let t = ((r - &self.re) / 2u32).sqrt();
            let re = self.im.clone().abs() / (t.clone() * 2u32);
            let im = if self.im < 0 { -t } else { t };
            MpComplex::new(re, im, self.digits)
        }
    }

    fn sin(&self) -> Self {
        let (s, c) = self.re.clone().sin_cos(self.float(0.0));
        let (sh, ch) = self.im.clone().sinh_cosh(self.float(0.0));
        MpComplex::new(s * ch, c * sh, self.digits)
    }

    fn cos(&self) -> Self {
        let (s, c) = self.re.clone().sin_cos(self.float(0.0));
        let (sh, ch) = self.im.clone().sinh_cosh(self.float(0.0));
        MpComplex::new(c * ch, -(s * sh), self.digits)
    }

    fn conj(&self) -> Self {
        MpComplex::new(self.re.clone(), -self.im.clone(), self.digits)
    }

    fn re(&self) -> Self {
        self.from_re(self.re.clone())
    }

    fn im(&self) -> Self {
        self.from_re(self.im.clone())
    }

    fn arg(&self) -> Self {
        self.from_re(self.im.clone().atan2(&self.re))
    }

    fn pi(precision: Precision) -> Self {
        let z = Self::zero(precision);
        let pi = Float::with_val(z.bits(), Constant::Pi);
        z.from_re(pi)
    }

    fn to_decimal_parts(&self, digits: usize) -> (String, String) {
        let digits = digits.max(1);
        (format_float(&self.re, digits), format_float(&self.im, digits))
    }
}

impl Neg for MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex::new(-self.re, -self.im, self.digits)
    }
}

impl<'a> AddAssign<&'a MpComplex> for MpComplex {
    fn add_assign(&mut self, rhs: &'a MpComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> SubAssign<&'a MpComplex> for MpComplex {
    fn sub_assign(&mut self, rhs: &'a MpComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> MulAssign<&'a MpComplex> for MpComplex {
    fn mul_assign(&mut self, rhs: &'a MpComplex) {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re.clone() * &rhs.im + self.im.clone() * &rhs.re;
        self.re = re;
        self.im = im;
    }
}

impl<'a> DivAssign<&'a MpComplex> for MpComplex {
    fn div_assign(&mut self, rhs: &'a MpComplex) {
        let denom = rhs.re.clone().square() + rhs.im.clone().square();
        let re = (self.re.clone() * &rhs.re + self.im.clone() * &rhs.im) / &denom;
        let im = (self.im.clone() * &rhs.re - self.re.clone() * &rhs.im) / &denom;
        self.re = re;
        self.im = im;
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl<'a> $tr<&'a MpComplex> for MpComplex {
            type Output = MpComplex;
            fn $method(mut self, rhs: &'a MpComplex) -> MpComplex {
                self.$assign(rhs);
                self
            }
        }

        impl $tr<MpComplex> for MpComplex {
            type Output = MpComplex;
            fn $method(mut self, rhs: MpComplex) -> MpComplex {
                self.$assign(&rhs);
                self
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);
forward_binop!(Mul, mul, mul_assign);
forward_binop!(Div, div, div_assign);

/// Render a decimal digit string `0.d1d2d3... × 10^exp` with trailing zeros
/// removed, in plain notation for moderate exponents and `e` notation otherwise.
pub fn format_significant(negative: bool, digits: &str, exp: i32) -> String {
    let trimmed = digits.trim_end_matches('0');
    if trimmed.is_empty() {
        return "0".to_string();
    }
    let sign = if negative { "-" } else { "" };
    // value = 0.trimmed × 10^exp, so the leading digit sits at 10^(exp-1).
    let lead = exp - 1;
    let body = if (-5..=20).contains(&lead) {
        if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), trimmed)
        } else if (exp as usize) >= trimmed.len() {
            format!("{}{}", trimmed, "0".repeat(exp as usize - trimmed.len()))
        } else {
            let (int, frac) = trimmed.split_at(exp as usize);
            format!("{int}.{frac}")
        }
    } else {
        let (first, rest) = trimmed.split_at(1);
        if rest.is_empty() {
            format!("{first}e{lead}")
        } else {
            format!("{first}.{rest}e{lead}")
        }
    };
    format!("{sign}{body}")
}

/// Format a double with `digits` significant digits.
pub fn format_f64(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "NaN".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let digits = digits.clamp(1, 17);
    let s = format!("{:.*e}", digits - 1, v.abs());
    let (mantissa, exp) = s.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let mantissa_digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    format_significant(v < 0.0, &mantissa_digits, exp + 1)
}

fn format_float(v: &Float, digits: usize) -> String {
    let (negative, s, exp) = v.to_sign_string_exp(10, Some(digits));
    match exp {
        Some(exp) => format_significant(negative, &s, exp),
        None if v.is_zero() => "0".to_string(),
        None => s,
    }
}
