//! Exact scalars over the rationals, a real or imaginary quadratic extension
//! of the rationals, and prime fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    /// Q(sqrt d), d not a perfect square.
    #[serde(rename = "QSqrt")]
    QuadExt { d: i64 },
    /// F_p with p prime, p not 2 or 3, p below 2^32.
    #[serde(rename = "Fp")]
    PrimeField { p: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn is_square_i64(d: i64) -> bool {
    if d < 0 {
        return false;
    }
    let r = (d as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|s| s >= 0 && s * s == d)
}

impl FieldSpec {
    pub fn fp(p: u64) -> Result<FieldSpec> {
        let f = FieldSpec::PrimeField { p };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::QuadExt { d } => {
                if is_square_i64(d) {
                    Err(Error::InvalidField(format!("d = {d} is a perfect square")))
                } else {
                    Ok(())
                }
            }
            FieldSpec::PrimeField { p } => {
                if p == 2 || p == 3 {
                    Err(Error::InvalidField(format!("characteristic {p} is excluded")))
                } else if p >= 1 << 32 {
                    Err(Error::InvalidField(format!("p = {p} is too large")))
                } else if !is_prime(p) {
                    Err(Error::InvalidField(format!("{p} is not prime")))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Parses `Q`, `QSqrt:-2`, `Fp:13`.
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        let bad = |m: &str| Error::Parse { offset: 0, msg: format!("{m}: {s:?}") };
        let f = if s == "Q" {
            FieldSpec::Rationals
        } else if let Some(rest) = s.strip_prefix("QSqrt:") {
            FieldSpec::QuadExt { d: rest.trim().parse().map_err(|_| bad("bad d"))? }
        } else if let Some(rest) = s.strip_prefix("Fp:") {
            FieldSpec::PrimeField { p: rest.trim().parse().map_err(|_| bad("bad p"))? }
        } else {
            return Err(bad("unknown field"));
        };
        f.validate()?;
        Ok(f)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField { .. })
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::PrimeField { p } => p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(n.into())),
            FieldSpec::QuadExt { d } => {
                Scalar::Qd(BigRational::from_integer(n.into()), BigRational::zero(), d)
            }
            FieldSpec::PrimeField { p } => Scalar::Fp(n.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn from_ratio(&self, n: i64, m: i64) -> Result<Scalar> {
        if m == 0 {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        self.from_rational(&BigRational::new(n.into(), m.into()))
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        Ok(match *self {
            FieldSpec::Rationals => Scalar::Q(q.clone()),
            FieldSpec::QuadExt { d } => Scalar::Qd(q.clone(), BigRational::zero(), d),
            FieldSpec::PrimeField { p } => {
                let pb = BigInt::from(p);
                let n = q.numer().mod_floor(&pb).to_u64().unwrap();
                let m = q.denom().mod_floor(&pb).to_u64().unwrap();
                if m == 0 {
                    return Err(Error::InvalidParams(format!("denominator vanishes mod {p}")));
                }
                Scalar::Fp(mulmod(n, inv_mod(m, p), p), p)
            }
        })
    }

    /// sqrt(d) as an element of Q(sqrt d).
    pub fn sqrt_generator(&self) -> Option<Scalar> {
        match *self {
            FieldSpec::QuadExt { d } => Some(Scalar::Qd(BigRational::zero(), BigRational::one(), d)),
            _ => None,
        }
    }

    /// All elements of a prime field in residue order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            FieldSpec::PrimeField { p } => Ok((0..p).map(|v| Scalar::Fp(v, p)).collect()),
            _ => Err(Error::InfiniteField),
        }
    }

    /// Uniform over F_p; small rationals (or small u + v sqrt d) otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            FieldSpec::PrimeField { p } => Scalar::Fp(rng.gen_range(0..p), p),
            FieldSpec::Rationals => {
                Scalar::Q(BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()))
            }
            FieldSpec::QuadExt { d } => Scalar::Qd(
                BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()),
                BigRational::from_integer(rng.gen_range(-3i64..=3).into()),
                d,
            ),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Parses a scalar written as an integer, `n/m`, or (over Q(sqrt d)) `u+v*sqrt(d)`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Parse { offset: 0, msg: format!("bad scalar {s:?}") };
        if let FieldSpec::QuadExt { d } = *self {
            if let Some(body) = t.strip_suffix(&format!("*sqrt({d})")) {
                // split at the last sign that is not the leading one
                let idx = body
                    .char_indices()
                    .skip(1)
                    .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with('/'))
                    .map(|(i, _)| i)
                    .last();
                let (u, v) = match idx {
                    Some(i) => (&body[..i], &body[i..]),
                    None => ("0", body),
                };
                let v = v.strip_prefix('+').unwrap_or(v);
                let v = if v == "-" { "-1" } else if v.is_empty() { "1" } else { v };
                return Ok(Scalar::Qd(parse_rational(u).ok_or_else(bad)?, parse_rational(v).ok_or_else(bad)?, d));
            }
        }
        let q = parse_rational(t).ok_or_else(bad)?;
        self.from_rational(&q)
    }

    /// F_p points of P^2 with first nonzero coordinate 1, in lexicographic order.
    pub fn projective_points(&self) -> Result<Vec<ProjPoint>> {
        let p = match *self {
            FieldSpec::PrimeField { p } => p,
            _ => return Err(Error::InfiniteField),
        };
        let mut out = Vec::with_capacity((p * p + p + 1) as usize);
        out.push(ProjPoint::raw([0, 0, 1], p));
        for b in 0..p {
            out.push(ProjPoint::raw([0, 1, b], p));
        }
        for a in 0..p {
            for b in 0..p {
                out.push(ProjPoint::raw([1, a, b], p));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::QuadExt { d } => write!(f, "QSqrt:{d}"),
            FieldSpec::PrimeField { p } => write!(f, "Fp:{p}"),
        }
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, m) = match s.split_once('/') {
        Some((n, m)) => (n.trim(), m.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.strip_prefix('+').unwrap_or(n).parse().ok()?;
    let m: BigInt = m.parse().ok()?;
    if m.is_zero() {
        return None;
    }
    Some(BigRational::new(n, m))
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    powmod(a, p - 2, p)
}

/// Tonelli-Shanks; returns the smaller root.
pub(crate) fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r.min(p - r))
}

fn sqrt_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let m = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&m * &m) == q.denom() {
        Some(BigRational::new(n, m))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    /// u + v sqrt(d)
    Qd(BigRational, BigRational, i64),
    /// residue, modulus
    Fp(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match *self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Qd(_, _, d) => FieldSpec::QuadExt { d },
            Scalar::Fp(_, p) => FieldSpec::PrimeField { p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Qd(u, v, _) => u.is_zero() && v.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Qd(u, v, _) => u.is_one() && v.is_zero(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Qd(u, v, d) => {
                let n = u * u - v * v * BigRational::from_integer((*d).into());
                Scalar::Qd(u / &n, -(v / &n), *d)
            }
            Scalar::Fp(v, p) => Scalar::Fp(inv_mod(*v, *p), *p),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut r = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// A square root inside the same field, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Fp(v, p) => sqrt_mod(*v, *p).map(|r| Scalar::Fp(r, *p)),
            Scalar::Q(q) => sqrt_rational(q).map(Scalar::Q),
            Scalar::Qd(u, v, d) => {
                let dq = BigRational::from_integer((*d).into());
                let two = BigRational::from_integer(2.into());
                if v.is_zero() {
                    if let Some(a) = sqrt_rational(u) {
                        return Some(Scalar::Qd(a, BigRational::zero(), *d));
                    }
                    return sqrt_rational(&(u / &dq)).map(|b| Scalar::Qd(BigRational::zero(), b, *d));
                }
                // (a + b sqrt d)^2 = u + v sqrt d: a^2 + d b^2 = u, 2ab = v
                let n = sqrt_rational(&(u * u - v * v * &dq))?;
                for cand in [(u + &n) / &two, (u - &n) / &two] {
                    if let Some(a) = sqrt_rational(&cand) {
                        if !a.is_zero() {
                            let b = v / (&two * &a);
                            return Some(Scalar::Qd(a, b, *d));
                        }
                    }
                }
                None
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Residue of an F_p scalar.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp(v, _) => Some(*v),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            _ => None,
        }
    }

    fn check(&self, other: &Scalar) {
        let ok = match (self, other) {
            (Scalar::Q(_), Scalar::Q(_)) => true,
            (Scalar::Qd(_, _, a), Scalar::Qd(_, _, b)) => a == b,
            (Scalar::Fp(_, a), Scalar::Fp(_, b)) => a == b,
            _ => false,
        };
        assert!(ok, "scalar field mismatch: {} vs {}", self.field(), other.field());
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Scalar::Q(q) => Value::String(rat_str(q)),
            Scalar::Qd(u, v, _) => Value::Array(vec![Value::String(rat_str(u)), Value::String(rat_str(v))]),
            Scalar::Fp(v, _) => Value::from(*v),
        }
    }

    pub fn from_json(v: &serde_json::Value, field: &FieldSpec) -> Result<Scalar> {
        use serde_json::Value;
        let bad = || Error::Parse { offset: 0, msg: format!("bad scalar {v}") };
        match (v, field) {
            (Value::Array(parts), FieldSpec::QuadExt { d }) if parts.len() == 2 => {
                let u = parts[0].as_str().and_then(parse_rational).ok_or_else(bad)?;
                let w = parts[1].as_str().and_then(parse_rational).ok_or_else(bad)?;
                Ok(Scalar::Qd(u, w, *d))
            }
            (Value::String(s), _) => field.parse_scalar(s),
            (Value::Number(n), _) => field.from_i64_checked(n.as_i64().ok_or_else(bad)?),
            _ => Err(bad()),
        }
    }
}

impl FieldSpec {
    fn from_i64_checked(&self, n: i64) -> Result<Scalar> {
        Ok(self.from_i64(n))
    }
}

fn rat_str(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{}", rat_str(q)),
            Scalar::Fp(v, _) => write!(f, "{v}"),
            Scalar::Qd(u, v, d) => {
                if v.is_zero() {
                    write!(f, "{}", rat_str(u))
                } else if u.is_zero() {
                    write!(f, "{}*sqrt({d})", rat_str(v))
                } else if v.is_negative() {
                    write!(f, "{}{}*sqrt({d})", rat_str(u), rat_str(v))
                } else {
                    write!(f, "{}+{}*sqrt({d})", rat_str(u), rat_str(v))
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Total order used for canonical sorting; compares within one field only.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Qd(a, b, _), Scalar::Qd(c, e, _)) => (a, b).cmp(&(c, e)),
            (Scalar::Fp(a, _), Scalar::Fp(b, _)) => a.cmp(b),
            _ => {
                self.check(other);
                Ordering::Equal
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Qd(a, b, d), Scalar::Qd(c, e, _)) => Scalar::Qd(a + c, b + e, *d),
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => Scalar::Fp((a + b) % p, *p),
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Qd(a, b, d), Scalar::Qd(c, e, _)) => Scalar::Qd(a - c, b - e, *d),
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => Scalar::Fp((a + p - b) % p, *p),
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Qd(a, b, d), Scalar::Qd(c, e, _)) => {
                let dq = BigRational::from_integer((*d).into());
                Scalar::Qd(a * c + b * e * dq, a * e + b * c, *d)
            }
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => Scalar::Fp(a * b % p, *p),
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Qd(a, b, d) => Scalar::Qd(-a, -b, *d),
            Scalar::Fp(a, p) => Scalar::Fp((p - a) % p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

/// A point of P^2 normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjPoint(pub [Scalar; 3]);

impl ProjPoint {
    fn raw(c: [u64; 3], p: u64) -> ProjPoint {
        ProjPoint([Scalar::Fp(c[0], p), Scalar::Fp(c[1], p), Scalar::Fp(c[2], p)])
    }

    /// None for the zero vector.
    pub fn new(c: [Scalar; 3]) -> Option<ProjPoint> {
        let i = c.iter().position(|s| !s.is_zero())?;
        let inv = c[i].inv().unwrap();
        Some(ProjPoint([&c[0] * &inv, &c[1] * &inv, &c[2] * &inv]))
    }

    pub fn from_ints(field: &FieldSpec, c: [i64; 3]) -> Option<ProjPoint> {
        ProjPoint::new([field.from_i64(c[0]), field.from_i64(c[1]), field.from_i64(c[2])])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.0
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0].field()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_three_mod_thirteen() {
        let f = FieldSpec::fp(13).unwrap();
        let r = f.from_i64(3).sqrt().unwrap();
        assert!(r == f.from_i64(4) || r == f.from_i64(9));
        assert_eq!(&r * &r, f.from_i64(3));
    }

    #[test]
    fn minus_one_has_no_rational_root() {
        assert!(FieldSpec::Rationals.from_i64(-1).sqrt().is_none());
        assert_eq!(FieldSpec::Rationals.from_ratio(9, 4).unwrap().sqrt(), FieldSpec::Rationals.from_ratio(3, 2).ok());
    }

    #[test]
    fn quad_ext_roots() {
        let f = FieldSpec::QuadExt { d: -2 };
        let s = f.sqrt_generator().unwrap();
        // (1 + sqrt(-2))^2 = -1 + 2 sqrt(-2)
        let x = &(&f.one() + &s) * &(&f.one() + &s);
        let r = x.sqrt().unwrap();
        assert_eq!(&r * &r, x);
        assert_eq!(f.from_i64(-2).sqrt().map(|r| &r * &r), Some(f.from_i64(-2)));
        assert!(f.from_i64(3).sqrt().is_none());
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FieldSpec::fp(2).is_err());
        assert!(FieldSpec::fp(3).is_err());
        assert!(FieldSpec::fp(15).is_err());
        assert!(FieldSpec::QuadExt { d: 4 }.validate().is_err());
        assert!(FieldSpec::QuadExt { d: -1 }.validate().is_ok());
    }

    #[test]
    fn point_count() {
        for p in [5u64, 7, 13] {
            let pts = FieldSpec::fp(p).unwrap().projective_points().unwrap();
            assert_eq!(pts.len() as u64, p * p + p + 1);
            let mut sorted = pts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), pts.len());
        }
        assert!(FieldSpec::Rationals.projective_points().is_err());
    }

    #[test]
    fn json_round_trip() {
        for f in [FieldSpec::Rationals, FieldSpec::QuadExt { d: 5 }, FieldSpec::PrimeField { p: 13 }] {
            let mut rng = rand::rngs::mock::StepRng::new(7, 11);
            for _ in 0..5 {
                let s = f.random(&mut rng);
                assert_eq!(Scalar::from_json(&s.to_json(), &f).unwrap(), s);
                assert_eq!(f.parse_scalar(&s.to_string()).unwrap(), s);
            }
        }
        let j = serde_json::to_string(&FieldSpec::QuadExt { d: -2 }).unwrap();
        assert_eq!(j, r#"{"kind":"QSqrt","d":-2}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fp_scalar() -> impl Strategy<Value = (u64, u64, u64)> {
            (0u64..13, 0u64..13, 0u64..13)
        }

        fn qd(a: i64, b: i64) -> Scalar {
            Scalar::Qd(BigRational::from_integer(a.into()), BigRational::new(b.into(), 3.into()), -7)
        }

        proptest! {
            #[test]
            fn fp_field_axioms((a, b, c) in fp_scalar()) {
                let f = FieldSpec::PrimeField { p: 13 };
                let (a, b, c) = (f.from_i64(a as i64), f.from_i64(b as i64), f.from_i64(c as i64));
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&(&a - &b) + &b, a.clone());
                if !a.is_zero() { prop_assert!((&a * &a.inv().unwrap()).is_one()); }
            }

            #[test]
            fn quad_ext_inverse_and_sqrt(a in -20i64..20, b in -20i64..20) {
                let x = qd(a, b);
                if !x.is_zero() {
                    prop_assert!((&x * &x.inv().unwrap()).is_one());
                }
                let sq = &x * &x;
                let r = sq.sqrt().unwrap();
                prop_assert_eq!(&r * &r, sq);
            }

            #[test]
            fn fp_sqrt_of_squares(a in 0u64..10007) {
                let s = Scalar::Fp(a * a % 10007, 10007);
                let r = s.sqrt().unwrap();
                prop_assert_eq!(&r * &r, s);
            }
        }
    }
}
