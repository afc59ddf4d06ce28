//! Commutative polynomials in three variables with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Exponent triple ordered by total degree, then lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly3 {
    field: FieldSpec,
    vars: [char; 3],
    /// no zero coefficients are stored
    terms: BTreeMap<Mono, Scalar>,
}

pub const XYZ: [char; 3] = ['x', 'y', 'z'];

impl Poly3 {
    pub fn zero(field: &FieldSpec) -> Poly3 {
        Poly3 { field: field.clone(), vars: XYZ, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Poly3 {
        let mut p = Poly3::zero(&c.field());
        p.add_term(Mono([0, 0, 0]), c);
        p
    }

    pub fn var(field: &FieldSpec, i: usize) -> Poly3 {
        let mut e = [0; 3];
        e[i] = 1;
        Poly3::monomial(field.one(), e)
    }

    pub fn monomial(c: Scalar, e: [u32; 3]) -> Poly3 {
        let mut p = Poly3::zero(&c.field());
        p.add_term(Mono(e), c);
        p
    }

    /// a x + b y + c z
    pub fn linear(c: &[Scalar; 3]) -> Poly3 {
        let mut p = Poly3::zero(&c[0].field());
        for (i, s) in c.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(Mono(e), s.clone());
        }
        p
    }

    pub fn from_terms(field: &FieldSpec, terms: &[(i64, [u32; 3])]) -> Poly3 {
        let mut p = Poly3::zero(field);
        for &(c, e) in terms {
            p.add_term(Mono(e), field.from_i64(c));
        }
        p
    }

    pub fn with_vars(mut self, vars: [char; 3]) -> Poly3 {
        self.vars = vars;
        self
    }

    pub fn vars(&self) -> [char; 3] {
        self.vars
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(|| c.zero_like());
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: [u32; 3]) -> Scalar {
        self.terms.get(&Mono(e)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly3 {
        let mut p = Poly3 { terms: BTreeMap::new(), ..self.clone() };
        for (m, s) in &self.terms {
            p.add_term(*m, s * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly3 {
        let mut r = Poly3::constant(self.field.one()).with_vars(self.vars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, pt: &[Scalar; 3]) -> Scalar {
        let mut s = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                t = &t * &pt[i].pow(m.0[i] as u64);
            }
            s = &s + &t;
        }
        s
    }

    /// Evaluates at a projective point; the result is defined up to a
    /// nonzero scalar, so only its vanishing is meaningful.
    pub fn vanishes_at(&self, pt: &[Scalar; 3]) -> bool {
        self.eval(pt).is_zero()
    }

    pub fn partial(&self, i: usize) -> Poly3 {
        let mut p = Poly3 { terms: BTreeMap::new(), ..self.clone() };
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0;
                e[i] -= 1;
                p.add_term(Mono(e), c * &self.field.from_i64(m.0[i] as i64));
            }
        }
        p
    }

    pub fn gradient(&self) -> [Poly3; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// Exact quotient f / g, or None when g does not divide f.
    pub fn divide_if_divides(&self, g: &Poly3) -> Option<Poly3> {
        let (lm, lc) = g.leading()?;
        let lc_inv = lc.inv().unwrap();
        let mut r = self.clone();
        let mut q = Poly3 { terms: BTreeMap::new(), ..self.clone() };
        while let Some((m, c)) = r.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let e = [m.0[0] - lm.0[0], m.0[1] - lm.0[1], m.0[2] - lm.0[2]];
            let t = Poly3::monomial(&c * &lc_inv, e);
            q = &q + &t;
            r = &r - &(&t * g);
        }
        Some(q)
    }

    /// f(L0, L1, L2) for polynomials L_i.
    pub fn compose(&self, subs: &[Poly3; 3]) -> Poly3 {
        let mut out = Poly3::zero(&self.field).with_vars(self.vars);
        for (m, c) in &self.terms {
            let mut t = Poly3::constant(c.clone());
            for i in 0..3 {
                t = &t * &subs[i].pow(m.0[i]);
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes u_i -> sum_j a[i][j] u_j.
    pub fn substitute_matrix(&self, a: &[Vec<Scalar>]) -> Poly3 {
        let subs: [Poly3; 3] = std::array::from_fn(|i| Poly3::linear(&[a[i][0].clone(), a[i][1].clone(), a[i][2].clone()]));
        self.compose(&subs)
    }

    /// Whether self = c * other for some nonzero scalar c; returns c.
    pub fn proportional(&self, other: &Poly3) -> Option<Scalar> {
        let (m, c) = other.leading()?;
        let k = &self.coeff(m.0) / c;
        if k.is_zero() {
            return None;
        }
        if &other.scale(&k) == self {
            Some(k)
        } else {
            None
        }
    }

    pub fn parse(s: &str, field: &FieldSpec, vars: [char; 3]) -> Result<Poly3> {
        Parser { s, pos: 0, field, vars }.poly()
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = match c {
                Scalar::Q(q) if q.is_negative() => (true, -c),
                _ => (false, c.clone()),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                let s = mag.to_string();
                if s.contains("sqrt") {
                    factors.push(format!("({s})"));
                } else {
                    factors.push(s);
                }
            }
            for i in 0..3 {
                match m.0[i] {
                    0 => {}
                    1 => factors.push(self.vars[i].to_string()),
                    e => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
    field: &'a FieldSpec,
    vars: [char; 3],
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn poly(mut self) -> Result<Poly3> {
        let mut out = Poly3::zero(self.field).with_vars(self.vars);
        self.skip_ws();
        let mut first = true;
        while self.pos < self.s.len() {
            let mut sign = self.field.one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(self.err("expected + or -")),
            }
            first = false;
            self.skip_ws();
            let t = self.term()?;
            out = &out + &t.scale(&sign);
            self.skip_ws();
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Poly3> {
        let mut t = Poly3::constant(self.field.one()).with_vars(self.vars);
        loop {
            self.skip_ws();
            let f = self.factor()?;
            t = &t * &f;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(t);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly3> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                let mut depth = 0;
                let end = self.s[start..]
                    .char_indices()
                    .find(|&(_, c)| {
                        depth += match c {
                            '(' => 1,
                            ')' => -1,
                            _ => 0,
                        };
                        depth == 0
                    })
                    .ok_or_else(|| self.err("unclosed parenthesis"))?
                    .0
                    + start;
                let c = self.field.parse_scalar(&self.s[start + 1..end]).map_err(|_| self.err("bad scalar"))?;
                self.pos = end + 1;
                Ok(Poly3::constant(c))
            }
            Some(c) if c.is_ascii_digit() => {
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '/') {
                    self.pos += 1;
                }
                let c = self.field.parse_scalar(&self.s[start..self.pos]).map_err(|_| self.err("bad scalar"))?;
                Ok(Poly3::constant(c))
            }
            Some(c) => {
                let i = self.vars.iter().position(|&v| v == c).ok_or_else(|| self.err(format!("unknown variable {c:?}")))?;
                self.pos += c.len_utf8();
                let mut e = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let s = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    e = self.s[s..self.pos].parse().map_err(|_| self.err("bad exponent"))?;
                }
                Ok(Poly3::var(self.field, i).with_vars(self.vars).pow(e))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, o: &Poly3) -> Poly3 {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, o: &Poly3) -> Poly3 {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, -c);
        }
        p
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, o: &Poly3) -> Poly3 {
        let mut p = Poly3 { terms: BTreeMap::new(), ..self.clone() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let e = [m1.0[0] + m2.0[0], m1.0[1] + m2.0[1], m1.0[2] + m2.0[2]];
                p.add_term(Mono(e), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        self.scale(&-self.field.one())
    }
}

/// 3x3 matrix whose entries are polynomials (linear forms for M and N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormMatrix(pub [[Poly3; 3]; 3]);

impl LinearFormMatrix {
    pub fn det3(&self) -> Poly3 {
        self.det_along_row(0)
    }

    /// Cofactor expansion along row `r`.
    pub fn det_along_row(&self, r: usize) -> Poly3 {
        let m = &self.0;
        let mut out = Poly3::zero(m[0][0].field()).with_vars(m[0][0].vars());
        for c in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let minor = &(&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]) - &(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]]);
            let term = &m[r][c] * &minor;
            out = if (r + c).is_multiple_of(2) { &out + &term } else { &out - &term };
        }
        out
    }

    pub fn transpose(&self) -> LinearFormMatrix {
        LinearFormMatrix(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    /// Numeric matrix at a point.
    pub fn eval(&self, pt: &[Scalar; 3]) -> Vec<Vec<Scalar>> {
        self.0.iter().map(|row| row.iter().map(|e| e.eval(pt)).collect()).collect()
    }
}

impl fmt::Display for LinearFormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            writeln!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn display_and_parse() {
        let f = q();
        let p = Poly3::parse("3*y^3 + x^2*z - y*z^2 + 2*y^2*z", &f, XYZ).unwrap();
        assert_eq!(p.to_string(), "x^2*z + 3*y^3 + 2*y^2*z - y*z^2");
        assert_eq!(Poly3::parse(&p.to_string(), &f, XYZ).unwrap(), p);
        let e = Poly3::parse("x + q", &f, XYZ).unwrap_err();
        assert_eq!(e, Error::Parse { offset: 4, msg: "unknown variable 'q'".into() });
        let g = Poly3::parse("-1/2*x*y + 7", &f, XYZ).unwrap();
        assert_eq!(g.coeff([1, 1, 0]), f.from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn quad_ext_coefficients_round_trip() {
        let f = FieldSpec::QuadExt { d: -2 };
        let s = f.sqrt_generator().unwrap();
        let p = Poly3::linear(&[&f.one() + &s, f.zero(), f.from_i64(3)]);
        assert_eq!(Poly3::parse(&p.to_string(), &f, XYZ).unwrap(), p);
    }

    #[test]
    fn divides_and_rejects() {
        let f = q();
        let a = Poly3::parse("x + 2*y - z", &f, XYZ).unwrap();
        let b = Poly3::parse("x^2 - y*z + 5*z^2", &f, XYZ).unwrap();
        assert_eq!((&a * &b).divide_if_divides(&a), Some(b.clone()));
        assert_eq!((&a * &b).divide_if_divides(&Poly3::var(&f, 0)), None);
    }

    fn small_poly(deg: u32) -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
        prop::collection::vec((-5i64..5, 0..=deg, 0..=deg), 1..6).prop_map(move |v| {
            v.into_iter()
                .filter(|&(_, a, b)| a + b <= deg)
                .map(|(c, a, b)| (c, [a, b, deg - a - b]))
                .collect()
        })
    }

    fn lin() -> impl Strategy<Value = [i64; 3]> {
        [-4i64..4, -4i64..4, -4i64..4]
    }

    proptest! {
        #[test]
        fn euler_identity(t in small_poly(3)) {
            let f = FieldSpec::PrimeField { p: 13 };
            let p = Poly3::from_terms(&f, &t);
            let mut s = Poly3::zero(&f);
            for i in 0..3 {
                s = &s + &(&Poly3::var(&f, i) * &p.partial(i));
            }
            prop_assert_eq!(s, p.scale(&f.from_i64(3)));
        }

        #[test]
        fn division_inverts_product(a in small_poly(2), b in small_poly(1)) {
            let f = q();
            let (a, b) = (Poly3::from_terms(&f, &a), Poly3::from_terms(&f, &b));
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).divide_if_divides(&b), Some(a));
        }

        #[test]
        fn cofactor_rows_agree(e in prop::collection::vec(lin(), 9)) {
            let f = q();
            let m = LinearFormMatrix(std::array::from_fn(|i| std::array::from_fn(|j| {
                let c = e[3 * i + j];
                Poly3::linear(&[f.from_i64(c[0]), f.from_i64(c[1]), f.from_i64(c[2])])
            })));
            let d0 = m.det_along_row(0);
            prop_assert_eq!(&d0, &m.det_along_row(1));
            prop_assert_eq!(&d0, &m.det_along_row(2));
            prop_assert_eq!(&d0, &m.transpose().det3());
            prop_assert!(d0.is_zero() || (d0.is_homogeneous() && d0.degree() == Some(3)));
        }
    }
}
