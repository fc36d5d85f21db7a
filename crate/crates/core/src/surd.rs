//! Quadratic surds and the single-step anthyphairetic map.
//!
//! A [`QuadraticSurd`] is the complete-quotient state `(P + √D)/Q` of a
//! continued fraction expansion. The invariant `Q | D − P²` makes the step
//! map [`anth_step`] closed over integer states, and `D` is never a perfect
//! square, so a surd is always irrational.
//!
//! [`QFieldElement`] is the general element `(u + v·√D)/w` of `Q(√D)`; the
//! engine uses it for exact remainders and for ratios of magnitudes.

use std::fmt;

use num_bigint::Sign;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::{Error, Integer, Natural, Rational, Result};

/// Floor square root by Newton iteration: the `r` with `r² ≤ n < (r+1)²`.
pub fn isqrt(n: &Natural) -> Natural {
    if n.is_zero() {
        return Natural::zero();
    }
    // Start above the root: 2^ceil(bits/2) > √n.
    let mut x = Natural::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `Some(r)` with `r² = n` when `n` is a perfect square.
pub fn exact_sqrt(n: &Natural) -> Option<Natural> {
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

pub fn is_perfect_square(n: &Natural) -> bool {
    exact_sqrt(n).is_some()
}

fn floor_div(a: &Integer, b: &Integer) -> Integer {
    a.div_floor(b)
}

/// Reduced complete-quotient state `(P + √D)/Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: Integer,
    q: Integer,
    d: Natural,
}

impl QuadraticSurd {
    /// Builds `(p + √d)/q`, enforcing `q ≠ 0`, `d` non-square and `q | d − p²`.
    pub fn new(p: Integer, q: Integer, d: Natural) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::domain("surd denominator Q must be nonzero"));
        }
        if is_perfect_square(&d) {
            return Err(Error::domain(format!(
                "D = {d} is a perfect square; represent the value as a rational"
            )));
        }
        let norm = Integer::from(d.clone()) - &p * &p;
        if !norm.is_multiple_of(&q) {
            return Err(Error::domain(format!(
                "Q = {q} does not divide D - P^2 = {norm}"
            )));
        }
        Ok(QuadraticSurd { p, q, d })
    }

    /// `√c` as the state `(0 + √c)/1`; `c` must be non-square.
    pub fn sqrt(c: &Natural) -> Result<Self> {
        QuadraticSurd::new(Integer::zero(), Integer::one(), c.clone())
    }

    pub fn p(&self) -> &Integer {
        &self.p
    }

    pub fn q(&self) -> &Integer {
        &self.q
    }

    pub fn d(&self) -> &Natural {
        &self.d
    }

    /// Exact floor of the represented value.
    ///
    /// With `s = ⌊√D⌋` and `√D` irrational, `⌊(P+√D)/Q⌋` equals
    /// `⌊(P+s)/Q⌋` for `Q > 0` and `⌊(P+s+1)/Q⌋` for `Q < 0`.
    pub fn floor(&self) -> Integer {
        let s = Integer::from(isqrt(&self.d));
        if self.q.is_positive() {
            floor_div(&(&self.p + s), &self.q)
        } else {
            floor_div(&(&self.p + s + 1), &self.q)
        }
    }

    /// Sign of the represented value (never zero: the value is irrational).
    pub fn signum(&self) -> Sign {
        let numerator = QFieldElement::raw(self.p.clone(), Integer::one(), self.d.clone());
        if numerator.sign() == self.q.sign() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_field_element(&self) -> QFieldElement {
        // (P + √D)/Q with Q < 0 is (−P − √D)/|Q|.
        let (u, v) = if self.q.is_negative() {
            (-self.p.clone(), -Integer::one())
        } else {
            (self.p.clone(), Integer::one())
        };
        QFieldElement::new(u, v, self.q.abs(), self.d.clone())
            .expect("surd invariants give a valid field element")
    }

    /// Rewrites an irrational `(u + v√D)/w` as a complete-quotient state.
    pub fn from_field_element(e: &QFieldElement) -> Result<Self> {
        if e.v.is_zero() {
            return Err(Error::domain("a rational value is not a quadratic surd"));
        }
        // (u + v√D)/w = (±u + √(v²D))/(±w), sign taken from v.
        let d = &e.d * e.v.magnitude() * e.v.magnitude();
        let (p, q) = if e.v.is_negative() {
            (-e.u.clone(), -e.w.clone())
        } else {
            (e.u.clone(), e.w.clone())
        };
        let norm = Integer::from(d.clone()) - &p * &p;
        if norm.is_multiple_of(&q) {
            return QuadraticSurd::new(p, q, d);
        }
        // Scale numerator and denominator by |Q| so that Q | D − P².
        let abs_q = q.abs();
        let scaled_d = d * abs_q.magnitude() * abs_q.magnitude();
        QuadraticSurd::new(p * &abs_q, q * abs_q, scaled_d)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+√{})/{}", self.p, self.d, self.q)
    }
}

/// One anthyphairetic division of a surd state: returns `I = ⌊x⌋` and the
/// state of `1/(x − I)`, via `P' = I·Q − P` and `Q' = (D − P'²)/Q`.
pub fn anth_step(x: &QuadraticSurd) -> Result<(Natural, QuadraticSurd)> {
    let i = x.floor();
    let Some(quotient) = i.to_biguint() else {
        return Err(Error::domain(format!("anth_step requires x > 0, got {x}")));
    };
    if x.signum() != Sign::Plus {
        return Err(Error::domain(format!("anth_step requires x > 0, got {x}")));
    }
    let p = &i * &x.q - &x.p;
    let norm = Integer::from(x.d.clone()) - &p * &p;
    let (q, rem) = norm.div_rem(&x.q);
    if !rem.is_zero() || q.is_zero() {
        return Err(Error::Internal(format!(
            "divisibility invariant broken stepping {x}: Q does not divide D - P'^2"
        )));
    }
    Ok((
        quotient,
        QuadraticSurd {
            p,
            q,
            d: x.d.clone(),
        },
    ))
}

/// Element `(u + v·√D)/w` of the quadratic field `Q(√D)`.
///
/// Kept in lowest terms (`gcd(u, v, w) = 1`, `w > 0`). When `v = 0` the value
/// is rational and `D` is stored as 0, so rational elements combine with
/// elements of any field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QFieldElement {
    u: Integer,
    v: Integer,
    w: Integer,
    d: Natural,
}

impl QFieldElement {
    /// Unreduced constructor for internal sign computations.
    fn raw(u: Integer, v: Integer, d: Natural) -> Self {
        QFieldElement {
            u,
            v,
            w: Integer::one(),
            d,
        }
    }

    pub fn new(u: Integer, v: Integer, w: Integer, d: Natural) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::domain("field element denominator must be nonzero"));
        }
        if !v.is_zero() && is_perfect_square(&d) {
            return Err(Error::domain(format!(
                "D = {d} is a perfect square; fold √D into the rational part"
            )));
        }
        Ok(Self::normalized(u, v, w, d))
    }

    fn normalized(mut u: Integer, mut v: Integer, mut w: Integer, mut d: Natural) -> Self {
        if w.is_negative() {
            u = -u;
            v = -v;
            w = -w;
        }
        if v.is_zero() {
            d = Natural::zero();
        }
        let g = u.gcd(&v).gcd(&w);
        if !g.is_one() {
            u /= &g;
            v /= &g;
            w /= &g;
        }
        QFieldElement { u, v, w, d }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::normalized(
            r.numer().clone(),
            Integer::zero(),
            r.denom().clone(),
            Natural::zero(),
        )
    }

    pub fn from_integer(n: Integer) -> Self {
        Self::normalized(n, Integer::zero(), Integer::one(), Natural::zero())
    }

    pub fn zero() -> Self {
        Self::from_integer(Integer::zero())
    }

    pub fn u(&self) -> &Integer {
        &self.u
    }

    pub fn v(&self) -> &Integer {
        &self.v
    }

    pub fn w(&self) -> &Integer {
        &self.w
    }

    pub fn d(&self) -> &Natural {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.u.clone(), self.w.clone()))
    }

    /// Exact sign, from comparing `u²` with `v²·D`; no floating point.
    pub fn sign(&self) -> Sign {
        sign_of(self)
    }

    /// Re-expresses `self` over `√d` when `self.d · d` is a perfect square.
    pub fn rebase(&self, d: &Natural) -> Result<Self> {
        if self.is_rational() || &self.d == d {
            return Ok(self.clone());
        }
        // √D_self = √(D_self·d)/√d = (s/d)·√d with s = √(D_self·d).
        let s = exact_sqrt(&(&self.d * d)).ok_or_else(|| {
            Error::domain(format!(
                "√{} and √{} lie in different quadratic fields",
                self.d, d
            ))
        })?;
        let d_int = Integer::from(d.clone());
        Ok(Self::normalized(
            &self.u * &d_int,
            &self.v * Integer::from(s),
            &self.w * d_int,
            d.clone(),
        ))
    }

    /// Brings two elements over a common `√D`.
    fn align(&self, other: &Self) -> Result<(Self, Self, Natural)> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok((self.clone(), other.clone(), Natural::zero())),
            (false, _) => Ok((self.clone(), other.rebase(&self.d)?, self.d.clone())),
            (true, false) => Ok((self.clone(), other.clone(), other.d.clone())),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b, d) = self.align(other)?;
        Ok(Self::normalized(
            &a.u * &b.w + &b.u * &a.w,
            &a.v * &b.w + &b.v * &a.w,
            &a.w * &b.w,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b, d) = self.align(other)?;
        let d_int = Integer::from(d.clone());
        Ok(Self::normalized(
            &a.u * &b.u + &a.v * &b.v * d_int,
            &a.u * &b.v + &a.v * &b.u,
            &a.w * &b.w,
            d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("division by zero field element"));
        }
        let (a, b, d) = self.align(other)?;
        // a / b = a · conj(b) · w_b / (u_b² − v_b²·D)
        let d_int = Integer::from(d.clone());
        let norm = &b.u * &b.u - &b.v * &b.v * &d_int;
        let conj = QFieldElement {
            u: b.u.clone(),
            v: -b.v.clone(),
            w: Integer::one(),
            d: d.clone(),
        };
        let top = a.checked_mul(&conj)?;
        Ok(Self::normalized(
            top.u * &b.w,
            top.v * &b.w,
            top.w * norm,
            d,
        ))
    }

    /// Multiplies by a natural number.
    pub fn scale(&self, k: &Natural) -> Self {
        let k = Integer::from(k.clone());
        Self::normalized(&self.u * &k, &self.v * k, self.w.clone(), self.d.clone())
    }
}

impl std::ops::Neg for &QFieldElement {
    type Output = QFieldElement;

    fn neg(self) -> QFieldElement {
        QFieldElement {
            u: -self.u.clone(),
            v: -self.v.clone(),
            w: self.w.clone(),
            d: self.d.clone(),
        }
    }
}

impl std::ops::Neg for QFieldElement {
    type Output = QFieldElement;

    fn neg(self) -> QFieldElement {
        -&self
    }
}

impl fmt::Display for QFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numerator = if self.v.is_zero() {
            self.u.to_string()
        } else {
            let root = if self.v.is_one() {
                format!("√{}", self.d)
            } else if self.v == -Integer::one() {
                format!("-√{}", self.d)
            } else {
                format!("{}√{}", self.v, self.d)
            };
            match (self.u.is_zero(), self.v.is_negative()) {
                (true, _) => root,
                (false, true) => format!("{}{}", self.u, root),
                (false, false) => format!("{}+{}", self.u, root),
            }
        };
        if self.w.is_one() {
            f.write_str(&numerator)
        } else if self.v.is_zero() {
            write!(f, "{numerator}/{}", self.w)
        } else {
            write!(f, "({numerator})/{}", self.w)
        }
    }
}

/// Exact sign of `(u + v√D)/w`, decided by integer arithmetic alone.
pub fn sign_of(e: &QFieldElement) -> Sign {
    // w > 0 by normalization, so only the numerator matters.
    let (su, sv) = (e.u.sign(), e.v.sign());
    match (su, sv) {
        (Sign::NoSign, s) | (s, Sign::NoSign) => s,
        (a, b) if a == b => a,
        _ => {
            let u2 = &e.u * &e.u;
            let v2d = &e.v * &e.v * Integer::from(e.d.clone());
            match u2.cmp(&v2d) {
                std::cmp::Ordering::Greater => su,
                std::cmp::Ordering::Less => sv,
                // unreachable for non-square D with v ≠ 0
                std::cmp::Ordering::Equal => Sign::NoSign,
            }
        }
    }
}

/// A positive magnitude: a rational or a quadratic surd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Magnitude {
    Rational(Rational),
    Surd(QuadraticSurd),
}

impl Magnitude {
    pub fn rational(r: Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::domain(format!(
                "magnitude must be positive, got {r}"
            )));
        }
        Ok(Magnitude::Rational(r))
    }

    pub fn integer(n: u64) -> Result<Self> {
        Magnitude::rational(Rational::from_integer(n.into()))
    }

    pub fn surd(s: QuadraticSurd) -> Result<Self> {
        if s.signum() != Sign::Plus {
            return Err(Error::domain(format!(
                "magnitude must be positive, got {s}"
            )));
        }
        Ok(Magnitude::Surd(s))
    }

    pub fn to_field_element(&self) -> QFieldElement {
        match self {
            Magnitude::Rational(r) => QFieldElement::from_rational(r),
            Magnitude::Surd(s) => s.to_field_element(),
        }
    }

    /// Builds a magnitude from a field element, demoting rationals.
    pub fn from_field_element(e: &QFieldElement) -> Result<Self> {
        match e.to_rational() {
            Some(r) => Magnitude::rational(r),
            None => Magnitude::surd(QuadraticSurd::from_field_element(e)?),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Magnitude::Rational(_))
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Rational(r) => write!(f, "{r}"),
            Magnitude::Surd(s) => write!(f, "{s}"),
        }
    }
}

/// `√c` as a magnitude: rational `k` when `c = k²`, otherwise the surd
/// `(0 + √c)/1`.
pub fn make_sqrt(c: &Natural) -> Result<Magnitude> {
    if c.is_zero() {
        return Err(Error::domain("make_sqrt requires C >= 1"));
    }
    match exact_sqrt(c) {
        Some(k) => Ok(Magnitude::Rational(Rational::from_integer(k.into()))),
        None => Ok(Magnitude::Surd(QuadraticSurd::sqrt(c)?)),
    }
}

/// Exact `⌊x⌋` of a positive magnitude.
pub fn floor_of(x: &Magnitude) -> Natural {
    let f = match x {
        Magnitude::Rational(r) => r.floor().to_integer(),
        Magnitude::Surd(s) => s.floor(),
    };
    f.to_biguint().expect("magnitudes are positive")
}
