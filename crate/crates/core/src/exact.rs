//! Exact scalars: rationals and the quadratic field `Q(√3)`.
//!
//! Squared distances and orientation determinants of gasket points are
//! rational; areas, inradii and perpendicular distances pick up a single
//! `√3` factor, which [`Surd3`] carries symbolically.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = num_rational::Ratio<i128>;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

#[inline]
pub fn rat(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

#[inline]
pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// `p / 2^k`.
#[inline]
pub fn dyadic(numer: i128, exp: u32) -> Rational {
    Rational::new(numer, 1i128 << exp)
}

pub fn is_dyadic(q: &Rational) -> bool {
    let d = *q.denom();
    d > 0 && (d & (d - 1)) == 0
}

pub fn to_f64(q: &Rational) -> f64 {
    // both parts stay far below 2^53 for every value this crate builds
    let n = *q.numer();
    let d = *q.denom();
    let whole = n.div_euclid(d);
    let frac = n.rem_euclid(d);
    whole as f64 + frac as f64 / d as f64
}

/// Exact square root if `q` is the square of a rational.
pub fn sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (*q.numer(), *q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (sn * sn == n && sd * sd == d).then(|| Rational::new(sn, sd))
}

/// Reduced `p/q` text form. Integers still carry `/1` so the format is uniform.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `p/q`, `p/2^k`, an integer, or a finite decimal such as `0.8`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num).ok_or_else(bad)?;
        let den = den.trim();
        let den = if let Some(exp) = den.strip_prefix("2^") {
            let exp: u32 = exp.trim().parse().map_err(|_| bad())?;
            if exp > 120 {
                return Err(bad());
            }
            1i128 << exp
        } else {
            parse_int(den).ok_or_else(bad)?
        };
        if den == 0 {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_abs = whole.trim().trim_start_matches(['-', '+']);
        let whole_v = if whole_abs.is_empty() { 0 } else { parse_int(whole_abs).ok_or_else(bad)? };
        if frac.is_empty() || frac.len() > 30 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = 10i128.pow(frac.len() as u32);
        let frac_v: i128 = frac.parse().map_err(|_| bad())?;
        let mag = Rational::new(whole_v * scale + frac_v, scale);
        return Ok(if negative { -mag } else { mag });
    }
    parse_int(s).map(int).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<i128> {
    s.trim().parse::<i128>().ok()
}

/// `rational + sqrt3_coeff · √3`, exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd3 {
    pub rational: Rational,
    pub sqrt3_coeff: Rational,
}

impl Surd3 {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn from_rational(q: Rational) -> Self {
        Surd3 { rational: q, sqrt3_coeff: Rational::zero() }
    }

    /// `q · √3`.
    pub fn sqrt3_times(q: Rational) -> Self {
        Surd3 { rational: Rational::zero(), sqrt3_coeff: q }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational) + to_f64(&self.sqrt3_coeff) * SQRT3
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt3_coeff.is_zero()
    }

    pub fn scale(&self, k: Rational) -> Self {
        Surd3 { rational: self.rational * k, sqrt3_coeff: self.sqrt3_coeff * k }
    }

    /// Exact sign of `a + b√3`.
    pub fn signum(&self) -> Ordering {
        let a = self.rational;
        let b = self.sqrt3_coeff;
        let sa = a.cmp(&Rational::zero());
        let sb = b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a^2 against 3 b^2
            (sa, _) => {
                let lhs = a * a;
                let rhs = b * b * int(3);
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

impl PartialOrd for Surd3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

impl Add for Surd3 {
    type Output = Surd3;
    fn add(self, rhs: Surd3) -> Surd3 {
        Surd3 {
            rational: self.rational + rhs.rational,
            sqrt3_coeff: self.sqrt3_coeff + rhs.sqrt3_coeff,
        }
    }
}

impl Sub for Surd3 {
    type Output = Surd3;
    fn sub(self, rhs: Surd3) -> Surd3 {
        self + (-rhs)
    }
}

impl Neg for Surd3 {
    type Output = Surd3;
    fn neg(self) -> Surd3 {
        Surd3 { rational: -self.rational, sqrt3_coeff: -self.sqrt3_coeff }
    }
}

impl Mul for Surd3 {
    type Output = Surd3;
    fn mul(self, rhs: Surd3) -> Surd3 {
        let (a, b, c, d) = (self.rational, self.sqrt3_coeff, rhs.rational, rhs.sqrt3_coeff);
        Surd3 { rational: a * c + b * d * int(3), sqrt3_coeff: a * d + b * c }
    }
}

impl fmt::Display for Surd3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.sqrt3_coeff.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.rational)),
            (true, false) => write!(f, "{}*sqrt3", format_rational(&self.sqrt3_coeff)),
            (false, false) => write!(
                f,
                "{} + {}*sqrt3",
                format_rational(&self.rational),
                format_rational(&self.sqrt3_coeff)
            ),
        }
    }
}

/// Parse a rational or a `√3` multiple: `p/q`, `0.25`, `sqrt3`, `sqrt3/6`,
/// `2*sqrt3/3`, `1/2*sqrt3`.
pub fn parse_surd3(text: &str) -> Result<Surd3> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = s.to_ascii_lowercase();
    let Some(pos) = lower.find("sqrt3") else {
        return parse_rational(&s).map(Surd3::from_rational);
    };
    let prefix = &lower[..pos];
    let suffix = &lower[pos + "sqrt3".len()..];
    let mut coeff = if prefix.is_empty() {
        Rational::one()
    } else {
        let p = prefix.strip_suffix('*').ok_or_else(|| Error::Parse(format!("bad surd {text:?}")))?;
        parse_rational(p)?
    };
    if !suffix.is_empty() {
        let d = suffix.strip_prefix('/').ok_or_else(|| Error::Parse(format!("bad surd {text:?}")))?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        coeff /= d;
    }
    Ok(Surd3::sqrt3_times(coeff))
}
