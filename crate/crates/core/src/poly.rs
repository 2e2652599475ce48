//! Univariate integer polynomials and Laurent polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense polynomial in ℤ[x]; `coeffs[i]` is the coefficient of `x^i`.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial
/// is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Poly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^deg · f(1/x)`: the coefficient vector reversed.
    pub fn reciprocal(&self) -> Poly {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Exact division in ℤ[x]; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem_integral(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Long division that stays in ℤ[x]: fails (`None`) as soon as a
    /// quotient coefficient is not an integer.
    fn div_rem_integral(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("division by zero polynomial");
        let lc = b.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            let top = r.leading();
            r = &r.scale(&lc) - &Poly::monomial(top, shift).mul_ref(b);
        }
        r
    }

    /// Greatest common divisor in ℤ[x], primitive with positive leading
    /// coefficient times the gcd of the contents.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.primitive_part().scale(&c)
    }

    fn mul_ref(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Deterministic total order used to sort factor lists.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_ref(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&LaurentPoly::from_poly(self.clone()), f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&LaurentPoly::from_poly(self.clone()), f)
    }
}

/// Laurent polynomial in ℤ[t, t⁻¹].
///
/// Stored as `t^low · body` with `body(0) != 0` (or `body == 0` and
/// `low == 0`), so two Laurent polynomials are equal iff their
/// representations are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    body: Poly,
}

impl LaurentPoly {
    pub fn new(low: i64, body: Poly) -> Self {
        if body.is_zero() {
            return LaurentPoly::zero();
        }
        let skip = body.coeffs.iter().take_while(|c| c.is_zero()).count();
        LaurentPoly {
            low: low + skip as i64,
            body: Poly::new(body.coeffs[skip..].to_vec()),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        LaurentPoly::new(0, p)
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        terms.iter().fold(LaurentPoly::zero(), |acc, &(e, c)| {
            &acc + &LaurentPoly::new(e, Poly::from_i64(&[c]))
        })
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            body: Poly::zero(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::from_poly(Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.low
    }

    pub fn max_exp(&self) -> i64 {
        self.low + self.body.degree().map_or(0, |d| d as i64)
    }

    /// `max_exp - min_exp`, the breadth of the polynomial.
    pub fn span(&self) -> u64 {
        (self.max_exp() - self.min_exp()) as u64
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        if e < self.low {
            return BigInt::zero();
        }
        self.body.coeff((e - self.low) as usize)
    }

    /// The polynomial `t^(-min_exp) · self`, with nonzero constant term.
    pub fn body(&self) -> &Poly {
        &self.body
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> Vec<(i64, BigInt)> {
        self.body
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.low + i as i64, c.clone()))
            .collect()
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.body.coeffs.iter().sum()
    }

    /// Value at `t = -1`.
    pub fn eval_neg_one(&self) -> BigInt {
        self.terms()
            .into_iter()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    /// Substitutes `t ↦ t^n`. For `n < 0` this also inverts `t`.
    pub fn substitute_power(&self, n: i64) -> LaurentPoly {
        if n == 0 {
            return LaurentPoly::new(0, Poly::constant(self.eval_one()));
        }
        self.terms()
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, (e, c)| {
                &acc + &LaurentPoly::new(e * n, Poly::constant(c))
            })
    }

    /// `f(t⁻¹)`
    pub fn conjugate(&self) -> LaurentPoly {
        LaurentPoly::new(-self.max_exp(), self.body.reciprocal())
    }

    /// Multiplies by the unit `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            body: self.body.clone(),
        }
    }

    /// Unit normalization: exponents centred on zero (lower half rounded
    /// down for odd span), sign chosen so the value at `t = 1` is positive,
    /// or so the top coefficient is positive when that value is zero.
    pub fn normalized(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let target_low = -((self.span() / 2) as i64);
        let mut out = self.shift(target_low - self.low);
        let at_one = out.eval_one();
        let flip = if at_one.is_zero() {
            out.body.leading().is_negative()
        } else {
            at_one.is_negative()
        };
        if flip {
            out = -&out;
        }
        out
    }

    /// Equality up to multiplication by a unit `±t^k` of ℤ[t, t⁻¹].
    pub fn is_associate(&self, other: &LaurentPoly) -> bool {
        self.body == other.body || self.body == -&other.body
    }

    pub fn is_unit(&self) -> bool {
        self.body.degree() == Some(0) && self.body.coeffs[0].abs().is_one()
    }

    /// True when `f(t⁻¹) = f(t)`.
    pub fn is_symmetric(&self) -> bool {
        self.conjugate() == *self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let a = Poly::monomial(BigInt::one(), (self.low - low) as usize).mul_ref(&self.body);
        let b = Poly::monomial(BigInt::one(), (rhs.low - low) as usize).mul_ref(&rhs.body);
        LaurentPoly::new(low, &a + &b)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(self.low + rhs.low, &self.body * &rhs.body)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            body: -&self.body,
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "t"),
        _ => write!(f, "t^{e}"),
    }
}

/// Highest exponent first, ASCII: `t - 1 + t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_power(f, *e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// JSON mirror: `{"terms": [[exponent, coefficient], ...]}` in increasing
/// exponent order, coefficients as decimal strings when they exceed `i64`.
#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    terms: Vec<(i64, BigIntRepr)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BigIntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for BigIntRepr {
    fn from(b: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        match b.to_i64() {
            Some(v) => BigIntRepr::Small(v),
            None => BigIntRepr::Big(b.to_string()),
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            terms: self
                .terms()
                .iter()
                .map(|(e, c)| (*e, BigIntRepr::from(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let mut out = LaurentPoly::zero();
        for (e, c) in repr.terms {
            let c = match c {
                BigIntRepr::Small(v) => BigInt::from(v),
                BigIntRepr::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
            };
            out = &out + &LaurentPoly::new(e, Poly::constant(c));
        }
        Ok(out)
    }
}
