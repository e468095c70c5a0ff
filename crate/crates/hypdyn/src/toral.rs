//! The cat-map cascade on the 2-torus: integer matrices, exact iteration
//! mod 1, orbits, periods of rational points, and fixed-point counts.

use crate::exactnum::{format_rational, parse_rational, rat, ExactError, QuadNum, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToralError {
    #[error("matrix with determinant {0} has no integer inverse")]
    NotInvertible(BigInt),
    #[error("matrix determinant {0} is not +1 or -1")]
    NotUnimodular(BigInt),
    #[error("point has an irrational coordinate; period is only defined for rational points")]
    IrrationalPoint,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// 2x2 integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat2 {
    pub m11: BigInt,
    pub m12: BigInt,
    pub m21: BigInt,
    pub m22: BigInt,
}

impl IntMat2 {
    pub fn new(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        IntMat2 {
            m11: m11.into(),
            m12: m12.into(),
            m21: m21.into(),
            m22: m22.into(),
        }
    }

    pub fn from_bigints(m11: BigInt, m12: BigInt, m21: BigInt, m22: BigInt) -> Self {
        IntMat2 { m11, m12, m21, m22 }
    }

    /// Constructor for group elements: requires det = +1 or -1.
    pub fn automorphism(m11: i64, m12: i64, m21: i64, m22: i64) -> Result<Self, ToralError> {
        let m = IntMat2::new(m11, m12, m21, m22);
        let d = m.det();
        if d.abs().is_one() {
            Ok(m)
        } else {
            Err(ToralError::NotUnimodular(d))
        }
    }

    pub fn identity() -> Self {
        IntMat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn trace(&self) -> BigInt {
        &self.m11 + &self.m22
    }

    pub fn mul(&self, rhs: &IntMat2) -> IntMat2 {
        IntMat2 {
            m11: &self.m11 * &rhs.m11 + &self.m12 * &rhs.m21,
            m12: &self.m11 * &rhs.m12 + &self.m12 * &rhs.m22,
            m21: &self.m21 * &rhs.m11 + &self.m22 * &rhs.m21,
            m22: &self.m21 * &rhs.m12 + &self.m22 * &rhs.m22,
        }
    }

    /// Exact inverse, defined when det = +1 or -1 (adjugate over det).
    pub fn inverse(&self) -> Result<IntMat2, ToralError> {
        let d = self.det();
        if d.is_one() {
            Ok(IntMat2::from_bigints(
                self.m22.clone(),
                -self.m12.clone(),
                -self.m21.clone(),
                self.m11.clone(),
            ))
        } else if (-&d).is_one() {
            Ok(IntMat2::from_bigints(
                -self.m22.clone(),
                self.m12.clone(),
                self.m21.clone(),
                -self.m11.clone(),
            ))
        } else {
            Err(ToralError::NotInvertible(d))
        }
    }

    /// n-th power by binary exponentiation; negative exponents require an
    /// invertible matrix.
    pub fn pow(&self, n: i64) -> Result<IntMat2, ToralError> {
        let base = if n < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = IntMat2::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    fn reduce_mod(&self, q: &BigInt) -> IntMat2 {
        IntMat2 {
            m11: self.m11.mod_floor(q),
            m12: self.m12.mod_floor(q),
            m21: self.m21.mod_floor(q),
            m22: self.m22.mod_floor(q),
        }
    }

    /// Multiplicative order of the matrix in GL(2, Z/q), by iteration.
    pub fn order_mod(&self, q: &BigInt) -> u64 {
        assert!(*q >= BigInt::one());
        if q.is_one() {
            return 1;
        }
        let id = IntMat2::identity();
        let base = self.reduce_mod(q);
        let mut acc = base.clone();
        let mut n = 1u64;
        while acc != id {
            acc = acc.mul(&base).reduce_mod(q);
            n += 1;
        }
        n
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

/// The cat-map matrix [[2,1],[1,1]].
pub fn cat_matrix() -> IntMat2 {
    IntMat2::new(2, 1, 1, 1)
}

/// Point of the torus [0,1) x [0,1) with coordinates in Q(sqrt5),
/// kept reduced mod 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    x: QuadNum,
    y: QuadNum,
}

impl TorusPoint {
    /// Reduces both coordinates mod 1 via the exact floor.
    pub fn new(x: QuadNum, y: QuadNum) -> Self {
        TorusPoint {
            x: x.fract(),
            y: y.fract(),
        }
    }

    pub fn from_rationals(x: Rational, y: Rational) -> Self {
        TorusPoint::new(QuadNum::from_rational(x), QuadNum::from_rational(y))
    }

    pub fn origin() -> Self {
        TorusPoint::new(QuadNum::zero(), QuadNum::zero())
    }

    pub fn x(&self) -> &QuadNum {
        &self.x
    }

    pub fn y(&self) -> &QuadNum {
        &self.y
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl FromStr for TorusPoint {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ExactError::Parse(format!("expected `(x, y)`, got `{s}`")))?;
        let (xs, ys) = inner
            .split_once(',')
            .ok_or_else(|| ExactError::Parse(format!("expected two coordinates in `{s}`")))?;
        Ok(TorusPoint::new(xs.parse()?, ys.parse()?))
    }
}

/// One application of the toral automorphism: M p reduced mod 1.
pub fn cat_apply(m: &IntMat2, p: &TorusPoint) -> TorusPoint {
    let c = |n: &BigInt| QuadNum::from_rational(Rational::from(n.clone()));
    let x = &(&c(&m.m11) * p.x()) + &(&c(&m.m12) * p.y());
    let y = &(&c(&m.m21) * p.x()) + &(&c(&m.m22) * p.y());
    TorusPoint::new(x, y)
}

/// Segment [M^k p : k in n_from..=n_to] of the orbit, computed
/// incrementally. Integer matrices commute with the mod-1 reduction, so
/// stepping the reduced point is exact.
pub fn orbit(
    m: &IntMat2,
    p: &TorusPoint,
    n_from: i64,
    n_to: i64,
) -> Result<Vec<TorusPoint>, ToralError> {
    assert!(n_from <= n_to, "orbit range is empty");
    let start = cat_apply(&m.pow(n_from)?, p);
    let mut out = Vec::with_capacity((n_to - n_from + 1) as usize);
    out.push(start);
    for _ in n_from..n_to {
        let next = cat_apply(m, out.last().unwrap());
        out.push(next);
    }
    Ok(out)
}

fn denominator_lcm(p: &TorusPoint) -> Result<BigInt, ToralError> {
    if !p.is_rational() {
        return Err(ToralError::IrrationalPoint);
    }
    Ok(p.x()
        .rational_part()
        .denom()
        .lcm(p.y().rational_part().denom()))
}

/// Least n >= 1 with M^n p = p (mod 1), for rational p.
///
/// The search is bounded by the order of M in GL(2, Z/q) with q the lcm
/// of the coordinate denominators, so termination is certified rather
/// than assumed.
pub fn period(m: &IntMat2, p: &TorusPoint) -> Result<u64, ToralError> {
    let q = denominator_lcm(p)?;
    let bound = m.order_mod(&q);
    let mut cur = cat_apply(m, p);
    let mut n = 1u64;
    while cur != *p {
        debug_assert!(n <= bound);
        cur = cat_apply(m, &cur);
        n += 1;
    }
    Ok(n)
}

/// Number of fixed points of the n-th iterate: |det(M^n - I)|.
pub fn fixed_point_count(m: &IntMat2, n: u64) -> Result<BigInt, ToralError> {
    assert!(n >= 1);
    let p = m.pow(n as i64)?;
    let shifted = IntMat2::from_bigints(
        &p.m11 - BigInt::one(),
        p.m12.clone(),
        p.m21.clone(),
        &p.m22 - BigInt::one(),
    );
    Ok(shifted.det().abs())
}

/// Table of Fibonacci numbers F_0..F_n (F_0 = 0, F_1 = 1).
#[derive(Debug, Clone)]
pub struct FibTable {
    values: Vec<BigInt>,
}

impl FibTable {
    pub fn up_to(n: usize) -> Self {
        let mut values = vec![BigInt::zero(), BigInt::one()];
        while values.len() <= n.max(1) {
            let next = &values[values.len() - 1] + &values[values.len() - 2];
            values.push(next);
        }
        FibTable { values }
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n]
    }
}

pub fn fibonacci(n: usize) -> BigInt {
    FibTable::up_to(n).get(n).clone()
}

/// Exact L-infinity distance on the torus (shortest wraparound per
/// coordinate), as an element of Q(sqrt5).
pub fn torus_distance(p: &TorusPoint, q: &TorusPoint) -> QuadNum {
    let dx = coordinate_distance(p.x(), q.x());
    let dy = coordinate_distance(p.y(), q.y());
    if (&dx - &dy).signum() >= 0 {
        dx
    } else {
        dy
    }
}

fn coordinate_distance(a: &QuadNum, b: &QuadNum) -> QuadNum {
    let d = (a - b).fract(); // in [0, 1)
    let wrap = &QuadNum::one() - &d;
    if (&d - &wrap).signum() <= 0 {
        d
    } else {
        wrap
    }
}

pub fn torus_distance_f64(p: &TorusPoint, q: &TorusPoint) -> f64 {
    torus_distance(p, q).to_f64()
}

/// CSV rows `n,x,y,x_float,y_float` for an orbit segment.
pub fn orbit_csv(points: &[(i64, TorusPoint)]) -> String {
    let mut out = String::from("n,x,y,x_float,y_float\n");
    for (n, p) in points {
        let (fx, fy) = p.to_f64();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            n,
            format_quad_csv(p.x()),
            format_quad_csv(p.y()),
            fx,
            fy
        ));
    }
    out
}

fn format_quad_csv(q: &QuadNum) -> String {
    if q.is_rational() {
        format_rational(q.rational_part())
    } else {
        q.to_string().replace(' ', "")
    }
}

pub fn parse_torus_rational(s: &str) -> Result<Rational, ExactError> {
    parse_rational(s)
}
