//! Exact arithmetic in a real quadratic field `K = Q(sqrt m)` and its ring of
//! integers.
//!
//! Elements are pairs of arbitrary-precision rationals `x + y*sqrt(m)`. The
//! field is fixed by a [`FieldCtx`]; an element only remembers the integer `m`
//! so that operators can be overloaded, and mixing two fields is caught by a
//! debug assertion.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, fmt_rat};
use crate::error::{Error, Result};

/// An element `x + y*sqrt(m)` of `Q(sqrt m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadElem {
    pub x: BigRational,
    pub y: BigRational,
    m: u64,
}

impl QuadElem {
    pub fn new(x: BigRational, y: BigRational, m: u64) -> Self {
        QuadElem { x, y, m }
    }

    pub fn from_rational(x: BigRational, m: u64) -> Self {
        QuadElem {
            x,
            y: BigRational::zero(),
            m,
        }
    }

    pub fn from_int(n: i64, m: u64) -> Self {
        Self::from_rational(arith::rat(n), m)
    }

    pub fn zero(m: u64) -> Self {
        Self::from_int(0, m)
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(1, m)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.x)
    }

    /// The Galois conjugate `x - y*sqrt(m)`.
    pub fn conj(&self) -> Self {
        QuadElem {
            x: self.x.clone(),
            y: -&self.y,
            m: self.m,
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.y * &self.y * BigRational::from_integer(BigInt::from(self.m))
    }

    pub fn trace(&self) -> BigRational {
        &self.x + &self.x
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadElem {
            x: &self.x * q,
            y: &self.y * q,
            m: self.m,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadElem::one(self.m);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of the real number `x + y*sqrt(m)` with `sqrt(m) > 0`.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let sx = self.x.cmp(&zero);
        let sy = self.y.cmp(&zero);
        match (sx, sy) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            // opposite signs: compare x^2 with m*y^2
            (sx, _) => {
                let x2 = &self.x * &self.x;
                let my2 = &self.y * &self.y * BigRational::from_integer(BigInt::from(self.m));
                match x2.cmp(&my2) {
                    Ordering::Greater => sx,
                    Ordering::Less => sx.reverse(),
                    Ordering::Equal => unreachable!("sqrt(m) is irrational"),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// `a >> 0`: positive under both real embeddings.
    pub fn is_totally_positive(&self) -> bool {
        // a > 0 and a' > 0  <=>  a + a' > 0 and a*a' > 0
        self.x.is_positive() && self.norm().is_positive()
    }

    /// Floating-point value under the embedding `sqrt(m) > 0`. Test oracles only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.x.to_f64().unwrap_or(f64::NAN)
            + self.y.to_f64().unwrap_or(f64::NAN) * (self.m as f64).sqrt()
    }

    /// Least common denominator of both coordinates.
    pub fn denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    #[inline]
    fn check(&self, other: &Self) {
        debug_assert_eq!(self.m, other.m, "elements of different quadratic fields");
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sqrt = format!("sqrt({})", self.m);
        if self.y.is_zero() {
            return write!(f, "{}", fmt_rat(&self.x));
        }
        let ypart = if self.y.is_one() {
            sqrt.clone()
        } else if (-&self.y).is_one() {
            format!("-{sqrt}")
        } else {
            format!("{}*{sqrt}", fmt_rat(&self.y))
        };
        if self.x.is_zero() {
            write!(f, "{ypart}")
        } else if self.y.is_negative() {
            write!(f, "{}{ypart}", fmt_rat(&self.x))
        } else {
            write!(f, "{}+{ypart}", fmt_rat(&self.x))
        }
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        self.check(rhs);
        QuadElem {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            m: self.m,
        }
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        self.check(rhs);
        QuadElem {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            m: self.m,
        }
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        self.check(rhs);
        let m = BigRational::from_integer(BigInt::from(self.m));
        QuadElem {
            x: &self.x * &rhs.x + &self.y * &rhs.y * m,
            y: &self.x * &rhs.y + &self.y * &rhs.x,
            m: self.m,
        }
    }
}

impl<'a> Div<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadElem) -> QuadElem {
        self * &rhs.inv().expect("division by zero in Q(sqrt m)")
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            x: -&self.x,
            y: -&self.y,
            m: self.m,
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            x: -self.x,
            y: -self.y,
            m: self.m,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $f(self, rhs: QuadElem) -> QuadElem {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $f(self, rhs: &QuadElem) -> QuadElem {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<QuadElem> for &'a QuadElem {
            type Output = QuadElem;
            fn $f(self, rhs: QuadElem) -> QuadElem {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QuadElem> for QuadElem {
    fn add_assign(&mut self, rhs: &QuadElem) {
        self.check(rhs);
        self.x += &rhs.x;
        self.y += &rhs.y;
    }
}

impl SubAssign<&QuadElem> for QuadElem {
    fn sub_assign(&mut self, rhs: &QuadElem) {
        self.check(rhs);
        self.x -= &rhs.x;
        self.y -= &rhs.y;
    }
}

/// The field `Q(sqrt m)` together with its ring of integers `Z + Z*omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    pub m: u64,
    pub omega: QuadElem,
    pub disc: u64,
    pub omega_trace: i64,
    pub omega_norm: i64,
}

impl FieldCtx {
    pub fn new(m: u64) -> Result<Self> {
        if m <= 1 {
            return Err(Error::TrivialField);
        }
        if !arith::is_squarefree(m) {
            return Err(Error::NotSquarefree(m.to_string()));
        }
        let mi = m as i64;
        let (omega, disc) = if m % 4 == 1 {
            (QuadElem::new(arith::ratio(mi, 2), arith::ratio(1, 2), m), m)
        } else {
            (QuadElem::new(arith::rat(mi), arith::rat(1), m), 4 * m)
        };
        let omega_trace = omega
            .trace()
            .to_integer()
            .try_into()
            .expect("trace fits i64");
        let omega_norm = omega.norm().to_integer().try_into().expect("norm fits i64");
        Ok(FieldCtx {
            m,
            omega,
            disc,
            omega_trace,
            omega_norm,
        })
    }

    pub fn zero(&self) -> QuadElem {
        QuadElem::zero(self.m)
    }

    pub fn one(&self) -> QuadElem {
        QuadElem::one(self.m)
    }

    pub fn int(&self, n: i64) -> QuadElem {
        QuadElem::from_int(n, self.m)
    }

    pub fn big(&self, n: BigInt) -> QuadElem {
        QuadElem::from_rational(BigRational::from_integer(n), self.m)
    }

    pub fn rat(&self, q: BigRational) -> QuadElem {
        QuadElem::from_rational(q, self.m)
    }

    pub fn elem(&self, x: BigRational, y: BigRational) -> QuadElem {
        QuadElem::new(x, y, self.m)
    }

    pub fn sqrt_m(&self) -> QuadElem {
        QuadElem::new(BigRational::zero(), BigRational::one(), self.m)
    }

    /// `sqrt(d_K)` as an element of `K`.
    pub fn sqrt_disc(&self) -> QuadElem {
        if self.disc == self.m {
            self.sqrt_m()
        } else {
            self.sqrt_m().scale(&arith::rat(2))
        }
    }

    /// `p + q*omega`.
    pub fn from_coords(&self, p: &BigInt, q: &BigInt) -> QuadElem {
        self.big(p.clone()) + self.omega.scale(&BigRational::from_integer(q.clone()))
    }

    /// Rational coordinates of `a` in the basis `(1, omega)`.
    pub fn omega_coords(&self, a: &QuadElem) -> (BigRational, BigRational) {
        let q = &a.y / &self.omega.y;
        let p = &a.x - &q * &self.omega.x;
        (p, q)
    }

    /// Integer coordinates of `a` in `(1, omega)`, or `None` if `a` is not integral.
    pub fn int_coords(&self, a: &QuadElem) -> Option<(BigInt, BigInt)> {
        let (p, q) = self.omega_coords(a);
        (p.is_integer() && q.is_integer()).then(|| (p.to_integer(), q.to_integer()))
    }

    pub fn is_integral(&self, a: &QuadElem) -> bool {
        self.int_coords(a).is_some()
    }

    /// Coordinates `(alpha, beta)` with `a = alpha*u + beta*v`.
    pub fn coords_wrt(
        &self,
        a: &QuadElem,
        basis: (&QuadElem, &QuadElem),
    ) -> Result<(BigRational, BigRational)> {
        let (u, v) = basis;
        let det = &u.x * &v.y - &v.x * &u.y;
        if det.is_zero() {
            return Err(Error::DegenerateBasis);
        }
        let alpha = (&a.x * &v.y - &v.x * &a.y) / &det;
        let beta = (&u.x * &a.y - &a.x * &u.y) / &det;
        Ok((alpha, beta))
    }

    /// The fundamental unit `eps_0 > 1` of the ring of integers.
    ///
    /// Expands the reduced surd `xi = (b + sqrt(d_K))/2` with `sqrt(d_K) - 2 < b < sqrt(d_K)`,
    /// `b = d_K mod 2`, as a purely periodic continued fraction. Over one period the convergent
    /// matrix fixes `xi`, and its eigenvalue `q_{r-1} xi + q_{r-2}` is the fundamental unit.
    pub fn fundamental_unit(&self) -> QuadElem {
        let d = self.disc as i128;
        let s = (self.disc as u128).sqrt() as i128;
        let b = if (s - d).rem_euclid(2) == 0 { s } else { s - 1 };
        let (p0, q0) = (b, 2i128);
        let (mut p, mut q) = (p0, q0);
        // q_{k-1}, q_{k-2}
        let (mut qk1, mut qk2) = (BigInt::zero(), BigInt::one());
        loop {
            let a = (p + s).div_euclid(q);
            let qk = BigInt::from(a) * &qk1 + &qk2;
            qk2 = std::mem::replace(&mut qk1, qk);
            let pn = a * q - p;
            let qn = (d - pn * pn) / q;
            debug_assert_eq!((d - pn * pn) % q, 0);
            p = pn;
            q = qn;
            if (p, q) == (p0, q0) {
                break;
            }
        }
        let half_sqrt_d = if self.disc == self.m {
            arith::ratio(1, 2)
        } else {
            arith::rat(1)
        };
        let xi = self.elem(arith::ratio(b as i64, 2), half_sqrt_d);
        let eps = xi.scale(&BigRational::from_integer(qk1)) + self.big(qk2);
        debug_assert!(eps.norm().abs().is_one());
        eps
    }

    /// Lexicographically smallest `(alpha, beta)` with `alpha` odd, `beta >= 1`
    /// and `alpha^2 + beta^2 = m`.
    pub fn two_squares(&self) -> Result<(u64, u64)> {
        let mut alpha = 1u64;
        while alpha * alpha < self.m {
            let rest = self.m - alpha * alpha;
            let beta = rest.sqrt();
            if beta * beta == rest {
                return Ok((alpha, beta));
            }
            alpha += 2;
        }
        Err(Error::NoRepresentation(self.m.to_string()))
    }

    pub fn parse_elem(&self, s: &str) -> Result<QuadElem> {
        parse_elem(self, s)
    }
}

/// Parses `"x+y*sqrt(m)"`-style text. Terms may be omitted or reordered, and
/// the atom `w` stands for `omega`.
fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<QuadElem> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, c) in compact.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > start => {
                terms.push(&compact[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&compact[start..]);
    let mut acc = ctx.zero();
    for t in terms {
        acc += &parse_term(ctx, t)?;
    }
    Ok(acc)
}

fn parse_term(ctx: &FieldCtx, t: &str) -> Result<QuadElem> {
    let bad = || Error::Parse(format!("cannot parse term '{t}'"));
    let (sign, body) = match t.as_bytes().first() {
        Some(b'-') => (-1, &t[1..]),
        Some(b'+') => (1, &t[1..]),
        _ => (1, t),
    };
    let (coef, atom) = match body.split_once('*') {
        Some((c, a)) => (Some(c), Some(a)),
        None if body == "w" || body.starts_with("sqrt(") => (None, Some(body)),
        None => (Some(body), None),
    };
    let q = match coef {
        Some(c) => parse_rational(c).ok_or_else(bad)?,
        None => arith::rat(1),
    } * arith::rat(sign);
    let base = match atom {
        None => ctx.one(),
        Some("w") => ctx.omega.clone(),
        Some(a) => {
            let inner = a
                .strip_prefix("sqrt(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let k: u64 = inner.parse().map_err(|_| bad())?;
            if k != ctx.m {
                return Err(Error::Parse(format!(
                    "sqrt({k}) is not sqrt(m) for m = {}",
                    ctx.m
                )));
            }
            ctx.sqrt_m()
        }
    };
    Ok(base.scale(&q))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
