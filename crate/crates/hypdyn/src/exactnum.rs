//! Exact arithmetic over Q and the quadratic field Q(sqrt5).
//!
//! Every quantity the library derives from the cat map's eigen-structure
//! (golden ratio, eigenvalues, leaf slopes) lives in Q(sqrt5), so all
//! comparisons and reductions stay decidable. Floats appear only at the
//! final projection step, with an explicit error bound.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Arbitrary-precision rational in canonical form (positive denominator,
/// reduced). `BigRational` maintains both invariants on every operation.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Element `a + b*sqrt5` of Q(sqrt5) with rational `a`, `b`.
///
/// The representation is unique because 1 and sqrt5 are linearly
/// independent over Q; equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl QuadNum {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadNum { a, b }
    }

    /// `an/ad + (bn/bd)*sqrt5` from machine integers.
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QuadNum::new(rat(an, ad), rat(bn, bd))
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadNum::new(a, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        QuadNum::from_rational(rat(n, 1))
    }

    pub fn zero() -> Self {
        QuadNum::from_int(0)
    }

    pub fn one() -> Self {
        QuadNum::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True iff the value lies in Q (no sqrt5 component).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadNum::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - 5 b^2`; zero iff the element is zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat(5, 1) * &self.b * &self.b
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadNum::new(&self.a / &n, -&self.b / &n))
    }

    /// Exact sign in {-1, 0, +1}, using only integer arithmetic.
    ///
    /// When `a` and `b` disagree in sign the comparison `a^2` vs `5 b^2`
    /// decides which term dominates; no floating point is involved.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sa == 0 && sb == 0 {
            return 0;
        }
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b of opposite nonzero sign: |a| vs sqrt5*|b|.
        let a2 = &self.a * &self.a;
        let b2_5 = rat(5, 1) * &self.b * &self.b;
        match a2.cmp(&b2_5) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            // a^2 = 5 b^2 with rational a, b forces a = b = 0, handled above.
            std::cmp::Ordering::Equal => unreachable!("sqrt5 is irrational"),
        }
    }

    fn sign_minus_int(&self, n: &BigInt) -> i32 {
        let shifted = QuadNum::new(&self.a - Rational::from(n.clone()), self.b.clone());
        shifted.signum()
    }

    /// Greatest integer `n <= self`, decided by sign tests alone.
    ///
    /// Brackets the value by doubling, then bisects on integers.
    pub fn floor_int(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let (mut lo, mut hi); // invariant: x - lo >= 0 > x - hi
        if self.signum() >= 0 {
            lo = BigInt::zero();
            let mut step = BigInt::one();
            loop {
                let cand = &lo + &step;
                if self.sign_minus_int(&cand) >= 0 {
                    lo = cand;
                    step *= 2;
                } else {
                    hi = cand;
                    break;
                }
            }
        } else {
            hi = BigInt::zero();
            let mut step = BigInt::one();
            loop {
                let cand = &hi - &step;
                if self.sign_minus_int(&cand) >= 0 {
                    lo = cand;
                    break;
                } else {
                    hi = cand;
                    step *= 2;
                }
            }
        }
        while &hi - &lo > BigInt::one() {
            let mid = (&lo + &hi) / 2;
            if self.sign_minus_int(&mid) >= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Fractional part `self - floor(self)`, in [0, 1).
    pub fn fract(&self) -> QuadNum {
        let f = self.floor_int();
        QuadNum::new(&self.a - Rational::from(f), self.b.clone())
    }

    pub fn abs(&self) -> QuadNum {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Projects to a binary float together with an error bound
    /// `2^(1-p) * (|a| + 3|b|)` that the result provably satisfies.
    ///
    /// `precision` is clamped to the 53 mantissa bits of the output type;
    /// requesting more cannot tighten the bound of an f64 result.
    pub fn to_f64_with_bound(&self, precision: u32) -> (f64, f64) {
        let p = precision.clamp(24, 53);
        if self.is_zero() {
            return (0.0, 0.0);
        }
        // Values like lc^n have coefficients of size l^n with almost
        // total cancellation, so the sqrt5 precision must scale with the
        // coefficients, not just the output precision: keep doubling
        // until the approximation error |b| 2^-bits is far below the
        // approximate value itself.
        let mut bits = p + 8;
        let value = loop {
            let scaled = BigInt::from(5) << (2 * bits as usize);
            let root = scaled.sqrt();
            let approx = Rational::new(root, BigInt::one() << (bits as usize));
            let v = &self.a + &self.b * approx;
            if self.b.is_zero() {
                break v;
            }
            let err = self.b.abs() * Rational::new(BigInt::one(), BigInt::one() << (bits as usize));
            let tol = v.abs() * Rational::new(BigInt::one(), BigInt::one() << ((p + 3) as usize));
            if !v.is_zero() && err <= tol {
                break v;
            }
            bits *= 2;
        };
        let f = rational_to_f64(&value);
        let bound_rat = Rational::new(BigInt::one(), BigInt::one() << ((p - 1) as usize))
            * (self.a.abs() + rat(3, 1) * self.b.abs());
        (f, rational_to_f64(&bound_rat))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_with_bound(53).0
    }
}

pub fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Nearest f64 to a rational, built by extracting a 53-bit mantissa with
/// round-half-to-even. Avoids the overflow traps of converting numerator
/// and denominator separately.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let num = r.numer().abs().clone();
    let den = r.denom().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Scale so q = floor(num * 2^shift / den) has 54 or 55 bits.
    let mut shift = 54 - (nb - db);
    let mut q;
    let mut rem;
    loop {
        let scaled = if shift >= 0 {
            &num << (shift as usize)
        } else {
            &num >> ((-shift) as usize)
        };
        q = &scaled / &den;
        rem = &scaled % &den;
        let qb = q.bits() as i64;
        if qb < 54 {
            shift += 54 - qb;
        } else if qb > 55 {
            shift -= qb - 54;
        } else {
            break;
        }
    }
    // Note: for shift < 0 the right shift above truncates; fold the lost
    // bits into the sticky flag by re-checking exactness.
    let mut sticky = !rem.is_zero();
    if shift < 0 {
        let back = (&q * &den) << ((-shift) as usize);
        sticky = back != &num << 0 || sticky;
    }
    let extra = q.bits() as i64 - 53;
    let low_mask = (BigInt::one() << (extra as usize)) - BigInt::one();
    let dropped = &q & &low_mask;
    let half = BigInt::one() << ((extra - 1) as usize);
    let mut m = &q >> (extra as usize);
    let round_up = match dropped.cmp(&half) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => sticky || (&m & BigInt::one()) == BigInt::one(),
    };
    if round_up {
        m += 1;
    }
    let mut exp = extra - shift;
    if m.bits() > 53 {
        m >>= 1;
        exp += 1;
    }
    let mant = m.to_f64().expect("53-bit mantissa fits in f64");
    let factor = if exp >= 0 {
        2f64.powi(exp.min(2000) as i32)
    } else {
        2f64.powi(exp.max(-2000) as i32)
    };
    let val = mant * factor;
    if neg {
        -val
    } else {
        val
    }
}

// --- constants -------------------------------------------------------------

/// Golden ratio (1 + sqrt5)/2, the positive root of x^2 = x + 1.
pub fn golden_ratio() -> QuadNum {
    QuadNum::from_parts(1, 2, 1, 2)
}

/// Algebraic conjugate (1 - sqrt5)/2 of the golden ratio.
pub fn golden_ratio_conj() -> QuadNum {
    QuadNum::from_parts(1, 2, -1, 2)
}

/// Expanding eigenvalue (3 + sqrt5)/2 of the cat-map matrix.
pub fn eigenvalue_expanding() -> QuadNum {
    QuadNum::from_parts(3, 2, 1, 2)
}

/// Contracting eigenvalue (3 - sqrt5)/2.
pub fn eigenvalue_contracting() -> QuadNum {
    QuadNum::from_parts(3, 2, -1, 2)
}

pub fn sqrt5() -> QuadNum {
    QuadNum::from_parts(0, 1, 1, 1)
}

// --- arithmetic ------------------------------------------------------------

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: QuadNum) -> QuadNum {
        QuadNum::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<'a> Add<&'a QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &'a QuadNum) -> QuadNum {
        QuadNum::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: QuadNum) -> QuadNum {
        QuadNum::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<'a> Sub<&'a QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &'a QuadNum) -> QuadNum {
        QuadNum::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: QuadNum) -> QuadNum {
        &self * &rhs
    }
}

impl<'a> Mul<&'a QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &'a QuadNum) -> QuadNum {
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + 5 b1 b2 + (a1 b2 + a2 b1) s
        QuadNum::new(
            &self.a * &rhs.a + rat(5, 1) * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for QuadNum {
    type Output = Result<QuadNum, ExactError>;
    fn div(self, rhs: QuadNum) -> Result<QuadNum, ExactError> {
        Ok(&self * &rhs.recip()?)
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-self.a, -self.b)
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-self.a.clone(), -self.b.clone())
    }
}

// --- text form -------------------------------------------------------------

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let num = BigInt::from_str(n).map_err(|_| ExactError::Parse(format!("bad rational `{s}`")))?;
    let den = BigInt::from_str(d).map_err(|_| ExactError::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(ExactError::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

impl fmt::Display for QuadNum {
    /// Canonical text form `a + b*sqrt5`, collapsing to the plain rational
    /// when the sqrt5 part vanishes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        if self.b.is_negative() {
            write!(
                f,
                "{} - {}*sqrt5",
                format_rational(&self.a),
                format_rational(&self.b.abs())
            )
        } else {
            write!(
                f,
                "{} + {}*sqrt5",
                format_rational(&self.a),
                format_rational(&self.b)
            )
        }
    }
}

impl FromStr for QuadNum {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(ExactError::Parse("empty number".into()));
        }
        // Split into at most two signed terms; signs inside a term only
        // appear as the leading character.
        let bytes = t.as_bytes();
        let mut split = None;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit() {
                split = Some(i);
                break;
            }
        }
        let (first, second) = match split {
            Some(i) => (&t[..i], Some(&t[i..])),
            None => (t.as_str(), None),
        };
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for term in [Some(first), second].into_iter().flatten() {
            let (sign, body) = match term.strip_prefix('+') {
                Some(rest) => (1, rest),
                None => match term.strip_prefix('-') {
                    Some(rest) => (-1, rest),
                    None => (1, term),
                },
            };
            let (coeff, is_sqrt5) = if let Some(head) = body.strip_suffix("*sqrt5") {
                (parse_rational(head)?, true)
            } else if body == "sqrt5" {
                (Rational::one(), true)
            } else {
                (parse_rational(body)?, false)
            };
            let signed = if sign < 0 { -coeff } else { coeff };
            if is_sqrt5 {
                b += signed;
            } else {
                a += signed;
            }
        }
        Ok(QuadNum::new(a, b))
    }
}
