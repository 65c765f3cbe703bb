//! Exact scalars: rationals, Gaussian rationals and quaternions in the
//! `z1 + j z2` normal form.
//!
//! Quaternions follow the Hamilton rules with `j z = conj(z) j` for complex
//! `z`, which yields the product
//!
//! ```text
//! (z1 + j z2)(w1 + j w2) = (z1 w1 - conj(z2) w2) + j (conj(z1) w2 + z2 w1)
//! ```
//!
//! Complex scalars act on the right.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form: `"p/q"`, or `"p"` when `q == 1`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses the canonical string form. Non-canonical input such as `"2/4"` is
/// accepted and normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
}

/// Complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rat(re), rat(im))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "({} + {}i)", self.re, self.im),
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // Skip the four big-int products when either side vanishes; most
        // matrix entries in this crate are zero.
        if self.is_zero() || rhs.is_zero() {
            return GaussianRational::zero();
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// A quaternion `z1 + j z2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub z1: GaussianRational,
    pub z2: GaussianRational,
}

impl Quaternion {
    pub fn new(z1: GaussianRational, z2: GaussianRational) -> Self {
        Self { z1, z2 }
    }

    pub fn from_complex(z: GaussianRational) -> Self {
        Self::new(z, GaussianRational::zero())
    }

    pub fn from_real(r: Rational) -> Self {
        Self::from_complex(GaussianRational::real(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_real(rat(n))
    }

    /// Element with the coordinates `[re z1, im z1, re z2, im z2]`.
    pub fn from_coords(c: [Rational; 4]) -> Self {
        let [a, b, c, d] = c;
        Self::new(GaussianRational::new(a, b), GaussianRational::new(c, d))
    }

    pub fn coords(&self) -> [Rational; 4] {
        [
            self.z1.re.clone(),
            self.z1.im.clone(),
            self.z2.re.clone(),
            self.z2.im.clone(),
        ]
    }

    /// `a + b i + c j + d k` in the Hamilton basis.
    ///
    /// Since `k = j (-i)`, the J-part is `z2 = c - d i`.
    pub fn from_hamilton(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self::new(GaussianRational::new(a, b), GaussianRational::new(c, -d))
    }

    pub fn to_hamilton(&self) -> [Rational; 4] {
        [
            self.z1.re.clone(),
            self.z1.im.clone(),
            self.z2.re.clone(),
            -&self.z2.im,
        ]
    }

    pub fn i() -> Self {
        Self::from_complex(GaussianRational::i())
    }

    pub fn j() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::one())
    }

    pub fn k() -> Self {
        Self::new(GaussianRational::zero(), -GaussianRational::i())
    }

    /// The four coordinate units `1, i, j, j i` (in that order), one per
    /// real coordinate of the `z1 + j z2` form.
    pub fn coordinate_units() -> [Quaternion; 4] {
        [
            Self::one(),
            Self::i(),
            Self::j(),
            Self::new(GaussianRational::zero(), GaussianRational::i()),
        ]
    }

    /// Quaternion conjugation `z1 + j z2 -> z1 - j z2` (the involution that
    /// fixes the complex part).
    pub fn sigma(&self) -> Self {
        Self::new(self.z1.clone(), -&self.z2)
    }

    /// Complex conjugation `z1 + j z2 -> conj(z1) + j conj(z2)`.
    pub fn tau(&self) -> Self {
        Self::new(self.z1.conj(), self.z2.conj())
    }

    /// Left multiplication by `j`: `j (z1 + j z2) = -z2 + j z1`.
    pub fn apply_j(&self) -> Self {
        Self::new(-&self.z2, self.z1.clone())
    }

    /// Hamilton conjugate `conj(z1) - j z2`.
    pub fn conj(&self) -> Self {
        Self::new(self.z1.conj(), -&self.z2)
    }

    /// Right multiplication by a complex scalar.
    pub fn mul_complex(&self, a: &GaussianRational) -> Self {
        Self::new(&self.z1 * a, &self.z2 * a)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.z1.scale(r), self.z2.scale(r))
    }

    pub fn real_part(&self) -> &Rational {
        &self.z1.re
    }

    pub fn is_complex(&self) -> bool {
        self.z2.is_zero()
    }
}

/// `x y` for `x = z1 + j z2`, `y = w1 + j w2`.
pub fn quat_mul(x: &Quaternion, y: &Quaternion) -> Quaternion {
    x * y
}

pub fn quat_conj_sigma(x: &Quaternion) -> Quaternion {
    x.sigma()
}

pub fn quat_conj_tau(x: &Quaternion) -> Quaternion {
    x.tau()
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.z1.is_zero() && self.z2.is_zero()
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.z2.is_zero() {
            write!(f, "{}", self.z1)
        } else if self.z1.is_zero() {
            write!(f, "j{}", self.z2)
        } else {
            write!(f, "{} + j{}", self.z1, self.z2)
        }
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let (z1, z2) = (&self.z1, &self.z2);
        let (w1, w2) = (&rhs.z1, &rhs.z2);
        Quaternion::new(
            &(z1 * w1) - &(&z2.conj() * w2),
            &(&z1.conj() * w2) + &(z2 * w1),
        )
    }
}

impl<'a> Add<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.z1 + &rhs.z1, &self.z2 + &rhs.z2)
    }
}

impl<'a> Sub<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.z1 - &rhs.z1, &self.z2 - &rhs.z2)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.z1, -&self.z2)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl AddAssign<&Quaternion> for Quaternion {
    fn add_assign(&mut self, rhs: &Quaternion) {
        self.z1 += &rhs.z1;
        self.z2 += &rhs.z2;
    }
}

impl SubAssign<&Quaternion> for Quaternion {
    fn sub_assign(&mut self, rhs: &Quaternion) {
        self.z1 -= &rhs.z1;
        self.z2 -= &rhs.z2;
    }
}

/// Serializes as `[re z1, im z1, re z2, im z2]` rational strings.
pub fn quaternion_to_strings(q: &Quaternion) -> [String; 4] {
    q.coords().map(|c| format_rational(&c))
}

pub fn quaternion_from_strings(s: &[String]) -> Result<Quaternion> {
    if s.len() != 4 {
        return Err(Error::Parse(format!(
            "quaternion needs 4 coordinates, got {}",
            s.len()
        )));
    }
    Ok(Quaternion::from_coords([
        parse_rational(&s[0])?,
        parse_rational(&s[1])?,
        parse_rational(&s[2])?,
        parse_rational(&s[3])?,
    ]))
}
