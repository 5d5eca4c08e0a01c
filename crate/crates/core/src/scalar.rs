//! Exact scalars in a cyclotomic field `Q(ζ_m)`.
//!
//! A [`Scalar`] is a polynomial in `ζ_m` with rational coefficients, reduced
//! modulo the `m`-th cyclotomic polynomial. Values whose only nonzero
//! coefficient is the constant term are stored with conductor 1, so plain
//! rationals never pay for the cyclotomic machinery. Scalars with different
//! conductors are combined in `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Polynomial helpers over `Q`, coefficient `i` is the coefficient of `x^i`.
mod poly {
    use super::*;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                x - y
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Division with remainder; `b` must be nonzero.
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem: Vec<Rational> = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![Rational::zero(); rem.len() - db];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = rem.last().unwrap() / &lead;
            for (i, bi) in b.iter().enumerate() {
                rem[shift + i] -= &c * bi;
            }
            quot[shift] = c;
            trim(&mut rem);
        }
        trim(&mut quot);
        (quot, rem)
    }

    pub fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.len() < b.len() {
            let mut out = a.to_vec();
            trim(&mut out);
            return out;
        }
        divrem(a, b).1
    }
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<Rational>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial, computed as `(x^m - 1) / ∏_{d | m, d < m} Φ_d`.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<Rational>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&m) {
        return Arc::clone(p);
    }
    let mut p = vec![Rational::zero(); m as usize + 1];
    p[0] = -Rational::one();
    p[m as usize] = Rational::one();
    for d in 1..m {
        if m % d == 0 {
            let q = cyclotomic_polynomial(d);
            p = poly::divrem(&p, &q).0;
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache()
        .write()
        .unwrap()
        .insert(m, Arc::clone(&p));
    p
}

/// Euler's totient, i.e. the degree of `Φ_m`.
pub fn totient(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct Scalar {
    conductor: u32,
    // Trimmed; length < φ(conductor).
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { conductor: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Scalar { conductor: 1, coeffs: vec![q] }
        }
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let k = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self::from_poly(m, coeffs)
    }

    /// Builds `Σ coeffs[i] ζ_m^i`, reducing modulo `Φ_m`.
    pub fn from_poly(m: u32, coeffs: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let coeffs = poly::rem(&coeffs, &phi);
        Self::canonical(m, coeffs)
    }

    fn canonical(m: u32, mut coeffs: Vec<Rational>) -> Self {
        poly::trim(&mut coeffs);
        if coeffs.len() <= 1 {
            Scalar { conductor: 1, coeffs }
        } else {
            Scalar { conductor: m, coeffs }
        }
    }

    /// Conductor of the smallest stored field; 1 for rationals.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients in the power basis `1, ζ, ζ², …` of `Q(ζ_conductor)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor == 1 {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Re-expresses `self` as a polynomial in `ζ_target`; `conductor` must divide `target`.
    fn lifted(&self, target: u32) -> Vec<Rational> {
        if self.conductor == target || self.conductor == 1 {
            return self.coeffs.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut out = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * step] = c.clone();
        }
        poly::rem(&out, &cyclotomic_polynomial(target))
    }

    fn common(&self, other: &Scalar) -> u32 {
        self.conductor.lcm(&other.conductor)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // Extended Euclid: find s with s·a ≡ 1 (mod Φ_m).
        let m = self.conductor;
        let phi = cyclotomic_polynomial(m);
        let (mut r0, mut r1) = (phi.to_vec(), self.coeffs.clone());
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly::divrem(&r0, &r1);
            let s = poly::sub(&s0, &poly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since Φ_m is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<Rational> = s0.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(m, s))
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn is_minus_one(&self) -> bool {
        self.conductor == 1 && self.coeffs.len() == 1 && (-&self.coeffs[0]).is_one()
    }

    fn add_impl(&self, other: &Scalar, negate: bool) -> Scalar {
        if self.conductor == 1 && other.conductor == 1 {
            let a = self.coeffs.first().cloned().unwrap_or_else(Rational::zero);
            let b = other.coeffs.first().cloned().unwrap_or_else(Rational::zero);
            return Self::from_rational(if negate { a - b } else { a + b });
        }
        let m = self.common(other);
        let a = self.lifted(m);
        let b = other.lifted(m);
        let n = a.len().max(b.len());
        let coeffs = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Self::canonical(m, coeffs)
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.conductor == 1 && other.conductor == 1 {
            return Self::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        if self.conductor == 1 || other.conductor == 1 {
            let (q, p) = if self.conductor == 1 { (&self.coeffs[0], other) } else { (&other.coeffs[0], self) };
            return Scalar {
                conductor: p.conductor,
                coeffs: p.coeffs.iter().map(|c| c * q).collect(),
            };
        }
        let m = self.common(other);
        let prod = poly::mul(&self.lifted(m), &other.lifted(m));
        Self::from_poly(m, prod)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        // Rational vs. genuinely cyclotomic are never equal in canonical form
        // when one side has conductor 1; otherwise compare in the common field.
        if self.conductor == 1 || other.conductor == 1 {
            return false;
        }
        let m = self.common(other);
        self.lifted(m) == other.lifted(m)
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical literal syntax: `p/q` for rationals, `a + b*z^1 - z^2` for
    /// cyclotomic values (powers of `ζ_m`, where `m` is the conductor).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.conductor == 1 {
            return write!(f, "{}", fmt_rational(&self.coeffs[0]));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "z{}^{}", self.conductor, k)?;
            } else {
                write!(f, "{}*z{}^{}", fmt_rational(&abs), self.conductor, k)?;
            }
        }
        Ok(())
    }
}

/// Parses scalar literals.
///
/// Grammar: a sum of terms separated by `+`/`-`, each term being a rational
/// (`3`, `-1/2`), a root-of-unity power (`z^k`, `z6^k`, `z`), or a product
/// `q*z^k`. A bare `z` refers to the primitive root of the default conductor
/// supplied by the caller (see [`parse_scalar`]).
impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s, 1)
    }
}

/// Parses a scalar literal; `z^k` without an explicit conductor means `ζ_{conductor}^k`.
pub fn parse_scalar(s: &str, conductor: u32) -> Result<Scalar> {
    let err = |msg: &str| Error::Parse {
        context: format!("scalar `{s}`"),
        message: msg.to_string(),
    };
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(err("empty literal"));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') && prev != Some('*') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((neg, cur));
    let mut total = Scalar::zero();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(err("dangling sign"));
        }
        let mut value = Scalar::one();
        for factor in term.split('*') {
            let f = parse_factor(factor, conductor).ok_or_else(|| err(&format!("bad factor `{factor}`")))?;
            value = &value * &f;
        }
        if neg {
            value = -value;
        }
        total = &total + &value;
    }
    Ok(total)
}

fn parse_factor(factor: &str, conductor: u32) -> Option<Scalar> {
    if let Some(rest) = factor.strip_prefix('z') {
        let (m_str, k_str) = match rest.split_once('^') {
            Some((m, k)) => (m, Some(k)),
            None => (rest, None),
        };
        let m = if m_str.is_empty() { conductor } else { m_str.parse().ok()? };
        if m == 0 {
            return None;
        }
        let k: i64 = match k_str {
            Some(k) => k.parse().ok()?,
            None => 1,
        };
        return Some(Scalar::root_of_unity(m, k));
    }
    let (num, den) = match factor.split_once('/') {
        Some((n, d)) => (n, d),
        None => (factor, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::from_rational(Rational::new(num, den)))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
// Panics on division by zero, like the integer operators; use `inv` for a fallible path.
forward_binop!(Div, div, |a, b| a.mul_impl(&b.inv().expect("division by zero scalar")));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_impl(rhs);
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}
