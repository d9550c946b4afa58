//! Exact rational scalars and vectors, lattice vectors and value groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always stored reduced with a positive denominator.
pub type Q = BigRational;

/// A point of `N_Q` or `M_Q`.
pub type QVector = Vec<Q>;

/// An element of the lattices `M` or `N`.
pub type LatticeVector = Vec<BigInt>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVector {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn lvec(xs: &[i64]) -> LatticeVector {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn zeros(n: usize) -> QVector {
    vec![Q::zero(); n]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> QVector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_integral(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_integer())
}

pub fn to_lattice(a: &[Q]) -> Option<LatticeVector> {
    a.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn from_lattice(a: &[BigInt]) -> QVector {
    a.iter().map(|x| Q::from_integer(x.clone())).collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Scales `a` by a positive rational so that it becomes a primitive integer
/// vector. The zero vector is returned unchanged.
pub fn primitive_direction(a: &[Q]) -> QVector {
    if is_zero_vec(a) {
        return a.to_vec();
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// Divides a nonzero lattice vector by the gcd of its entries.
pub fn primitive_vector(v: &[BigInt]) -> Result<LatticeVector> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::invalid("zero has no primitive representative"));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Rounds a float to the nearest rational with the given denominator.
pub fn snap(x: f64, denominator: i64) -> Result<Q> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("non-finite value {x}")));
    }
    let scaled = (x * denominator as f64).round();
    let n = BigInt::from(scaled as i128);
    Ok(Q::new(n, BigInt::from(denominator)))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // both parts overflow f64; fall back to a scaled division
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q`, `p`, or a finite decimal such as `-0.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Q::new(int_part.abs() * &den + frac_part, den);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(s).map(Q::from_integer).map_err(|_| bad())
}

/// Renders a rational as a decimal with a fixed number of fractional digits.
pub fn fmt_decimal(x: &Q, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (x * Q::from_integer(scale.clone())).round().to_integer();
    let negative = scaled.is_negative();
    let mag = scaled.abs();
    let (int, frac) = mag.div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

/// The value group `Gamma = val(K^x)` as a subgroup of `Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ValueGroup {
    #[default]
    Divisible,
    /// `base * Z` with `base > 0`.
    Discrete(Q),
}


impl ValueGroup {
    pub fn discrete(base: Q) -> Result<Self> {
        if !base.is_positive() {
            return Err(Error::invalid("discrete value group needs a positive base"));
        }
        Ok(ValueGroup::Discrete(base))
    }

    pub fn contains(&self, x: &Q) -> bool {
        match self {
            ValueGroup::Divisible => true,
            ValueGroup::Discrete(base) => (x / base).is_integer(),
        }
    }

    /// Smallest `e >= 1` with `e * x` in the group.
    pub fn denominator_of(&self, x: &Q) -> BigInt {
        match self {
            ValueGroup::Divisible => BigInt::one(),
            ValueGroup::Discrete(base) => (x / base).denom().clone(),
        }
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueGroup::Divisible => write!(f, "divisible"),
            ValueGroup::Discrete(b) => write!(f, "discrete:{}", fmt_q(b)),
        }
    }
}

impl FromStr for ValueGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "divisible" => Ok(ValueGroup::Divisible),
            other => match other.strip_prefix("discrete:") {
                Some(b) => ValueGroup::discrete(parse_q(b)?),
                None => Err(Error::parse(format!("unknown value group {other:?}"))),
            },
        }
    }
}
