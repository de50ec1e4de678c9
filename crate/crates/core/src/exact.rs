//! Exact scalars: rationals and Gaussian rationals, plus their text form.
//!
//! Rationals are written as `"p/q"` strings; complex values as
//! `{"re": "p/q", "im": "p/q"}`. Parsing also accepts a bare integer `"p"`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number.
pub type Q = BigRational;
/// Exact complex number with rational real and imaginary parts.
pub type Cq = Complex<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn cq(re: Q) -> Cq {
    Complex::new(re, Q::zero())
}

pub fn ci(n: i64) -> Cq {
    cq(q(n))
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// `x ∈ ℕ`.
pub fn is_natural(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

/// `x ∈ 2ℕ`.
pub fn is_even_natural(x: &Q) -> bool {
    is_natural(x) && (x.to_integer() % BigInt::from(2)).is_zero()
}

/// Integer power, negative exponents allowed. Panics on `0^(-k)`.
pub fn powi<T>(x: &T, e: i64) -> T
where
    T: Clone + One + std::ops::Mul<Output = T> + std::ops::Div<Output = T>,
{
    let mut acc = T::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * x.clone();
    }
    if e < 0 {
        T::one() / acc
    } else {
        acc
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Modulus of an exact complex number, in binary64.
pub fn abs_f64(z: &Cq) -> f64 {
    let re = q_to_f64(&z.re);
    let im = q_to_f64(&z.im);
    re.hypot(im)
}

/// `|z|²`, exact.
pub fn norm_sqr(z: &Cq) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Parses a comma separated list of rationals, e.g. `"1,-1/2,0"`.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

pub fn format_cq(z: &Cq) -> String {
    if z.im.is_zero() {
        format!("{}", DisplayQ(&z.re))
    } else {
        format!("{}{:+}i", DisplayQ(&z.re), DisplayQ(&z.im))
    }
}

/// Short display: integers without the `/1`.
pub struct DisplayQ<'a>(pub &'a Q);

impl fmt::Display for DisplayQ<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.0.is_integer() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        };
        if f.sign_plus() && !self.0.is_negative() {
            write!(f, "+{s}")
        } else {
            f.write_str(&s)
        }
    }
}

pub fn display_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|x| DisplayQ(x).to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Serde adapter writing a rational as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatStr(pub Q);

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(s) => parse_q(&s).map(RatStr).map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(RatStr(q(n))),
        }
    }
}

/// Serde adapter writing a complex value as `{"re": "p/q", "im": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CplxStr {
    pub re: RatStr,
    #[serde(default = "zero_rat")]
    pub im: RatStr,
}

fn zero_rat() -> RatStr {
    RatStr(Q::zero())
}

impl From<&Cq> for CplxStr {
    fn from(z: &Cq) -> Self {
        CplxStr {
            re: RatStr(z.re.clone()),
            im: RatStr(z.im.clone()),
        }
    }
}

impl From<CplxStr> for Cq {
    fn from(c: CplxStr) -> Self {
        Complex::new(c.re.0, c.im.0)
    }
}

pub fn rat_strs(v: &[Q]) -> Vec<RatStr> {
    v.iter().cloned().map(RatStr).collect()
}

pub fn cplx_strs(v: &[Cq]) -> Vec<CplxStr> {
    v.iter().map(CplxStr::from).collect()
}
