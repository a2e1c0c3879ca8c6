//! Exact scalars: rationals, quadratic extensions Q(√r), and univariate
//! polynomials with Sturm-sequence real root counting.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// "num/den", or just "num" for integers.
pub fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts "p/q", integers and finite decimals such as "-0.15".
pub fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Serde adapter for a rational written as its canonical string.
pub mod serde_rat {
    use super::*;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rat(&v).map_err(serde::de::Error::custom)
    }
}

/// Reads a rational from a JSON string ("3/4") or number (integers only).
pub fn value_to_rat(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rat(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(int(i))
            } else {
                parse_rat(&n.to_string())
            }
        }
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

pub fn rats_to_json(v: &[Rational]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|r| serde_json::Value::String(fmt_rat(r))).collect())
}

/// Sign of a + b·√r for a positive integer r.
pub fn sign_a_plus_b_sqrt(a: &Rational, b: &Rational, r: &BigInt) -> i32 {
    let sa = sign_of(a);
    let sb = sign_of(b);
    if sb == 0 || r.is_zero() {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = b * b * Rational::from_integer(r.clone());
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

/// Scalars usable as polynomial coefficients with exact sign decisions.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn sign(&self) -> i32;
    fn from_rational(r: Rational) -> Self;
}

impl Field for Rational {
    fn sign(&self) -> i32 {
        sign_of(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

/// a + b·√R for a square-free radicand R.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt<const R: u32> {
    pub a: Rational,
    pub b: Rational,
}

pub type QSqrt2 = QuadExt<2>;
pub type QSqrt3 = QuadExt<3>;

impl<const R: u32> QuadExt<R> {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadExt { a: int(a), b: int(b) }
    }

    /// The element √R itself.
    pub fn root() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::one() }
    }

    pub fn radicand() -> u32 {
        R
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(R as i64)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (R as f64).sqrt()
    }
}

pub fn sign_qsqrt2(x: &QSqrt2) -> i32 {
    x.sign()
}

impl<const R: u32> fmt::Display for QuadExt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({R})", self.b)
        } else {
            write!(f, "{} + {}*sqrt({R})", self.a, self.b)
        }
    }
}

impl<const R: u32> Serialize for QuadExt<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadExt", 2)?;
        st.serialize_field("a", &fmt_rat(&self.a))?;
        st.serialize_field("b", &fmt_rat(&self.b))?;
        st.end()
    }
}

impl<const R: u32> Add for QuadExt<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QuadExt { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<const R: u32> Sub for QuadExt<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QuadExt { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<const R: u32> Mul for QuadExt<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let r = int(R as i64);
        QuadExt {
            a: &self.a * &o.a + &self.b * &o.b * r,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<const R: u32> Div for QuadExt<R> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt({R}))");
        let c = o.conj();
        let num = self * c;
        QuadExt { a: num.a / &n, b: num.b / n }
    }
}

impl<const R: u32> Neg for QuadExt<R> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl<const R: u32> Zero for QuadExt<R> {
    fn zero() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const R: u32> One for QuadExt<R> {
    fn one() -> Self {
        QuadExt { a: Rational::one(), b: Rational::zero() }
    }
}

impl<const R: u32> Field for QuadExt<R> {
    fn sign(&self) -> i32 {
        sign_a_plus_b_sqrt(&self.a, &self.b, &BigInt::from(R))
    }
    fn from_rational(r: Rational) -> Self {
        QuadExt { a: r, b: Rational::zero() }
    }
}

/// Dense univariate polynomial, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            let b = o.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            out.push(a + b);
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(F::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_rational(int(k as i64)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = F::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone() / lc.clone();
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - c.clone() * dc.clone();
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's algorithm: returns (a_i, i) with self = c·∏ a_i^i, each a_i
    /// squarefree and pairwise coprime. Trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            d = nc.sub(&nb.derivative());
            b = nb;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Sturm sequence of the monic squarefree part.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let s0 = self.squarefree_part();
        let s1 = s0.derivative();
        let mut chain = vec![s0, s1];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        match (self.leading(), self.degree()) {
            (Some(lc), Some(deg)) => {
                let s = lc.sign();
                if positive || deg % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn sturm_real_roots<F: Field>(p: &UniPoly<F>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let chain = p.sturm_chain();
    let at_neg = variations(chain.iter().map(|q| q.sign_at_infinity(false)));
    let at_pos = variations(chain.iter().map(|q| q.sign_at_infinity(true)));
    Ok(at_neg - at_pos)
}

/// Decides p(x) ≥ 0 for all real x. A polynomial is nonnegative iff its
/// leading coefficient is positive and no real root has odd multiplicity;
/// the odd-multiplicity roots are those of the odd-index squarefree factors.
pub fn globally_nonnegative<F: Field>(p: &UniPoly<F>) -> bool {
    let Some(deg) = p.degree() else {
        return true;
    };
    if deg % 2 == 1 || p.leading().unwrap().sign() < 0 {
        return false;
    }
    if deg == 0 {
        return true;
    }
    let mut odd = UniPoly::constant(F::one());
    for (factor, mult) in p.squarefree_decomposition() {
        if mult % 2 == 1 {
            odd = odd.mul(&factor);
        }
    }
    sturm_real_roots(&odd).map(|c| c == 0).unwrap_or(true)
}

/// Evaluates a rational polynomial at a point of Q(√R).
pub fn eval_rational_poly_at<const R: u32>(p: &UniPoly<Rational>, x: &QuadExt<R>) -> QuadExt<R> {
    let lifted = UniPoly::new(p.coeffs().iter().cloned().map(QuadExt::<R>::from_rational).collect());
    lifted.eval(x)
}

/// Least common multiple of the denominators, used to clear fractions.
pub fn denominators_lcm<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
