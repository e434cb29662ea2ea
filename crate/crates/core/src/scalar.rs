//! Exact arithmetic in `Q(i, sqrt 2)`, the eighth cyclotomic field.
//!
//! A [`Scalar`] is stored as four rationals `(a, b, c, d)` meaning
//! `a + b*sqrt2 + c*i + d*i*sqrt2`. Since `1, sqrt2, i, i*sqrt2` are linearly
//! independent over `Q`, equality is componentwise.
//!
//! Textual form (used by the JSON formats): a signed sum of terms
//! `q`, `q r2`, `q i`, `q i r2` with `q` an integer or fraction `n/d`.
//! Whitespace is ignored on input. `r2` stands for `sqrt 2`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a rational if it is itself rational.
pub fn sqrt_rational(q: &Rational) -> Option<Rational> {
    let n = exact_isqrt(q.numer())?;
    let d = exact_isqrt(q.denom())?;
    Some(Rational::new(n, d))
}

/// Sign of `x + y*sqrt2` for rationals `x`, `y`.
fn surd_sign(x: &Rational, y: &Rational) -> Ordering {
    let sx = x.cmp(&Rational::zero());
    let sy = y.cmp(&Rational::zero());
    if sx == sy || sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal {
        return sy;
    }
    // opposite signs: compare x^2 with 2 y^2
    let lhs = x * x;
    let rhs = y * y * rat(2);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

#[inline]
fn mul_rat(x: &Rational, y: &Rational) -> Rational {
    if x.is_zero() || y.is_zero() {
        Rational::zero()
    } else {
        x * y
    }
}

impl Scalar {
    /// `a + b*sqrt2 + c*i + d*i*sqrt2`.
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { a, b, c, d }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar::new(q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(ratio(n, d))
    }

    /// `re + im*i` with rational parts.
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Scalar::new(re, Rational::zero(), im, Rational::zero())
    }

    pub fn i() -> Self {
        Scalar::gaussian(Rational::zero(), Rational::one())
    }

    pub fn sqrt2() -> Self {
        Scalar::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    /// `1/sqrt2`, stored as `sqrt2/2`.
    pub fn inv_sqrt2() -> Self {
        Scalar::new(Rational::zero(), ratio(1, 2), Rational::zero(), Rational::zero())
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_real(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_gaussian(&self) -> bool {
        self.b.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// The rational value, if the scalar is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Real part `a + b*sqrt2`.
    pub fn re(&self) -> Scalar {
        Scalar::new(self.a.clone(), self.b.clone(), Rational::zero(), Rational::zero())
    }

    /// Imaginary part `c + d*sqrt2`, returned as a real scalar.
    pub fn im(&self) -> Scalar {
        Scalar::new(self.c.clone(), self.d.clone(), Rational::zero(), Rational::zero())
    }

    /// Complex conjugate: negates the `i` and `i*sqrt2` components.
    pub fn conj(&self) -> Scalar {
        Scalar::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d)
    }

    /// Sign of a real scalar; `None` if the scalar is not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        self.is_real().then(|| surd_sign(&self.a, &self.b))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Scalar::from_rational(self.a.recip()));
        }
        // x * conj(x) = n0 + n1*sqrt2 lies in Q(sqrt2)
        let two = rat(2);
        let n0 = &self.a * &self.a + &two * &self.b * &self.b + &self.c * &self.c
            + &two * &self.d * &self.d;
        let n1 = &two * (&self.a * &self.b + &self.c * &self.d);
        // (n0 + n1 sqrt2)^-1 = (n0 - n1 sqrt2) / (n0^2 - 2 n1^2)
        let norm = &n0 * &n0 - &two * &n1 * &n1;
        let inv_norm = Scalar::new(&n0 / &norm, -&n1 / &norm, Rational::zero(), Rational::zero());
        Ok(self.conj() * inv_norm)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        Scalar::new(
            mul_rat(&self.a, q),
            mul_rat(&self.b, q),
            mul_rat(&self.c, q),
            mul_rat(&self.d, q),
        )
    }

    /// Lossy conversion for display: `(real, imaginary)` as floats.
    pub fn to_float(&self) -> (f64, f64) {
        let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
        let s = core::f64::consts::SQRT_2;
        (f(&self.a) + s * f(&self.b), f(&self.c) + s * f(&self.d))
    }

    /// A square root inside `Q(i, sqrt 2)` of a Gaussian rational.
    ///
    /// A Gaussian rational `t` has a square root in the field exactly when `t`
    /// or `-i*t` is a square in `Q(i)`; in the second case the root picks up
    /// the factor `sqrt(i) = (1 + i)/sqrt2`. Returns `None` otherwise, and for
    /// inputs outside `Q(i)`.
    pub fn sqrt_gaussian(&self) -> Option<Scalar> {
        if !self.is_gaussian() {
            return None;
        }
        if let Some(root) = gaussian_sqrt(&self.a, &self.c) {
            return Some(root);
        }
        // -i * (u + v i) = v - u i
        let root = gaussian_sqrt(&self.c, &-&self.a)?;
        let sqrt_i = Scalar::new(Rational::zero(), ratio(1, 2), Rational::zero(), ratio(1, 2));
        Some(root * sqrt_i)
    }
}

/// Square root of `u + v i` in `Q(i)`.
fn gaussian_sqrt(u: &Rational, v: &Rational) -> Option<Scalar> {
    if v.is_zero() {
        return if u.is_negative() {
            sqrt_rational(&-u).map(|q| Scalar::gaussian(Rational::zero(), q))
        } else {
            sqrt_rational(u).map(Scalar::from_rational)
        };
    }
    let modulus = sqrt_rational(&(u * u + v * v))?;
    let half = ratio(1, 2);
    let p = sqrt_rational(&((u + &modulus) * &half))?;
    if p.is_zero() {
        return None;
    }
    let q = v / (&p * rat(2));
    let root = Scalar::gaussian(p, q);
    (&root * &root == Scalar::gaussian(u.clone(), v.clone())).then_some(root)
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c, &self.d + &rhs.d)
    }
}

impl<'a> Sub<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c, &self.d - &rhs.d)
    }
}

impl<'a> Mul<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_rational() {
            return rhs.scale(&self.a);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.a);
        }
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let two = rat(2);
        // (alpha + i beta)(alpha' + i beta') with alpha, beta in Q(sqrt2)
        let ra = mul_rat(a, e) - mul_rat(c, g) + &two * (mul_rat(b, f) - mul_rat(d, h));
        let rb = mul_rat(a, f) + mul_rat(b, e) - mul_rat(c, h) - mul_rat(d, g);
        let rc = mul_rat(a, g) + mul_rat(c, e) + &two * (mul_rat(b, h) + mul_rat(d, f));
        let rd = mul_rat(a, h) + mul_rat(b, g) + mul_rat(c, f) + mul_rat(d, e);
        Scalar::new(ra, rb, rc, rd)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
        impl $assign_tr<Scalar> for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                *self = (&*self).$method(&rhs);
            }
        }
        impl<'a> $assign_tr<&'a Scalar> for Scalar {
            fn $assign(&mut self, rhs: &'a Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

const UNITS: [&str; 4] = ["", " r2", " i", " i r2"];

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (coef, unit) in self.components().into_iter().zip(UNITS) {
            if coef.is_zero() {
                continue;
            }
            if first {
                write!(f, "{coef}{unit}")?;
                first = false;
            } else if coef.is_negative() {
                write!(f, " - {}{unit}", -coef)?;
            } else {
                write!(f, " + {coef}{unit}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match s.split_once('/') {
        Some((n, d)) if digits(n) && digits(d) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n.parse().ok()?, d))
        }
        None if digits(s) => Some(Rational::from_integer(s.parse().ok()?)),
        _ => None,
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(input: &str) -> Result<Scalar> {
        let fail = |reason| Error::ParseScalar { input: String::from(input), reason };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }

        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (pos, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if pos > 0 {
                    if current.is_empty() {
                        return Err(fail("dangling sign"));
                    }
                    terms.push((negative, core::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(fail("dangling sign"));
        }
        terms.push((negative, current));

        let mut parts = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        for (negative, body) in terms {
            let split = body.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(body.len());
            let (number, unit) = body.split_at(split);
            let unit = unit.strip_prefix('*').unwrap_or(unit);
            let slot = match unit {
                "" => 0,
                "r2" => 1,
                "i" => 2,
                "ir2" | "i*r2" | "r2i" | "r2*i" => 3,
                _ => return Err(fail("unknown unit (expected r2, i or i r2)")),
            };
            let coef = if number.is_empty() {
                if slot == 0 {
                    return Err(fail("missing coefficient"));
                }
                Rational::one()
            } else {
                parse_rational(number).ok_or_else(|| fail("malformed rational"))?
            };
            if negative {
                parts[slot] -= coef;
            } else {
                parts[slot] += coef;
            }
        }
        let [a, b, c, d] = parts;
        Ok(Scalar::new(a, b, c, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn definitional_products() {
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert_eq!(s("1 i r2") * s("1 i r2"), Scalar::from_int(-2));
        assert_eq!(Scalar::inv_sqrt2() * Scalar::sqrt2(), Scalar::one());
    }

    #[test]
    fn inverses() {
        assert_eq!(Scalar::one().inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::i().inv().unwrap(), -Scalar::i());
        assert_eq!(s("1 + 1 r2").inv().unwrap(), s("-1 + 1 r2"));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        assert_eq!(s("3/4").conj(), s("3/4"));
        assert_eq!(Scalar::i().conj(), -Scalar::i());
        assert_eq!(s("1 + 1 i r2").conj(), s("1 - 1 i r2"));
    }

    #[test]
    fn grammar() {
        assert_eq!(s("1/2 + 3/4 r2 + 5/6 i + 7/8 i r2").components().map(Clone::clone), [
            ratio(1, 2),
            ratio(3, 4),
            ratio(5, 6),
            ratio(7, 8)
        ]);
        assert_eq!(s(" - 3 i "), Scalar::gaussian(rat(0), rat(-3)));
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("2/4"), Scalar::from_ratio(1, 2));
        assert_eq!(Scalar::gaussian(rat(0), rat(-3)).to_string(), "-3 i");
        assert_eq!(s("1 - 1/2 r2").to_string(), "1 - 1/2 r2");
        assert_eq!(Scalar::zero().to_string(), "0");
        for bad in ["", "1/0", "+", "1 +", "2 x", "1//2", "r"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(s("4/9").sqrt_gaussian(), Some(s("2/3")));
        let r = s("2").sqrt_gaussian().unwrap();
        assert_eq!(&r * &r, s("2"));
        assert!(r.is_real());
        let r = s("2 i").sqrt_gaussian().unwrap();
        assert_eq!(&r * &r, s("2 i"));
        let r = s("1 i").sqrt_gaussian().unwrap();
        assert_eq!(&r * &r, Scalar::i());
        let r = s("-9").sqrt_gaussian().unwrap();
        assert_eq!(&r * &r, s("-9"));
        let r = s("3 + 4 i").sqrt_gaussian().unwrap();
        assert_eq!(&r * &r, s("3 + 4 i"));
        assert_eq!(s("3").sqrt_gaussian(), None);
        assert_eq!(s("1 + 1 i").sqrt_gaussian(), None);
        assert_eq!(s("1 r2").sqrt_gaussian(), None);
    }

    #[test]
    fn real_sign() {
        assert_eq!(s("1 - 1 r2").real_sign(), Some(Ordering::Less));
        assert_eq!(s("-1 + 1 r2").real_sign(), Some(Ordering::Greater));
        assert_eq!(s("3/2 - 1 r2").real_sign(), Some(Ordering::Greater));
        assert_eq!(Scalar::zero().real_sign(), Some(Ordering::Equal));
        assert_eq!(Scalar::i().real_sign(), None);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
    }

    pub(crate) fn any_scalar() -> impl Strategy<Value = Scalar> {
        (small_rational(), small_rational(), small_rational(), small_rational())
            .prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
    }

    fn gaussian() -> impl Strategy<Value = Scalar> {
        (small_rational(), small_rational()).prop_map(|(a, c)| Scalar::gaussian(a, c))
    }

    proptest! {
        #[test]
        fn field_axioms(x in any_scalar(), y in any_scalar(), z in any_scalar()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) * &y.inv().unwrap(), x.clone());
                prop_assert_eq!(&y * &y.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn conjugation_is_a_field_automorphism(x in any_scalar(), y in any_scalar()) {
            prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
            prop_assert_eq!((&x + &y).conj(), x.conj() + y.conj());
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn subfields_are_closed(x in gaussian(), y in gaussian(), p in small_rational(), q in small_rational()) {
            prop_assert!((&x * &y).is_gaussian());
            prop_assert!((&x + &y).is_gaussian());
            let (p, q) = (Scalar::from_rational(p), Scalar::from_rational(q));
            prop_assert!((&p * &q).is_real() && (&p + &q).is_real());
        }

        #[test]
        fn zero_iff_all_components_zero(x in any_scalar()) {
            prop_assert_eq!(x.is_zero(), x.components().iter().all(|c| c.is_zero()));
        }

        #[test]
        fn display_parse_roundtrip(x in any_scalar()) {
            prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }

        #[test]
        fn squares_have_roots(x in gaussian(), unit in 0usize..2) {
            let t = if unit == 0 { &x * &x } else { &(&x * &x) * &Scalar::i() };
            if let Some(r) = t.sqrt_gaussian() {
                prop_assert_eq!(&r * &r, t);
            } else {
                prop_assert!(false, "no root for {}", t);
            }
        }
    }
}
