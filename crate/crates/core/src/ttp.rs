//! Twisted tensor products k[x,y] (x) k[z]: normal-form coefficients, case
//! labels, truncated verification and graded Ore extensions.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::freealg::{idx, Presentation};
use crate::groebner::{MonomialOrder, TruncatedGb};
use crate::linalg;
use crate::poly::Poly3;

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

/// Coefficients of tau(zx) = ax^2+bxy+cy^2+dxz+eyz+fz^2 and
/// tau(zy) = Ax^2+Bxy+Cy^2+Dyz.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCoeffs {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
    pub f: Scalar,
    #[serde(rename = "A")]
    pub big_a: Scalar,
    #[serde(rename = "B")]
    pub big_b: Scalar,
    #[serde(rename = "C")]
    pub big_c: Scalar,
    #[serde(rename = "D")]
    pub big_d: Scalar,
}

pub const COEFF_NAMES: [&str; 10] = ["a", "b", "c", "d", "e", "f", "A", "B", "C", "D"];

impl TwistCoeffs {
    pub fn zero(field: &FieldSpec) -> TwistCoeffs {
        let z = field.zero();
        TwistCoeffs {
            a: z.clone(),
            b: z.clone(),
            c: z.clone(),
            d: z.clone(),
            e: z.clone(),
            f: z.clone(),
            big_a: z.clone(),
            big_b: z.clone(),
            big_c: z.clone(),
            big_d: z,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        Some(match name {
            "a" => &self.a,
            "b" => &self.b,
            "c" => &self.c,
            "d" => &self.d,
            "e" => &self.e,
            "f" => &self.f,
            "A" => &self.big_a,
            "B" => &self.big_b,
            "C" => &self.big_c,
            "D" => &self.big_d,
            _ => return None,
        })
    }

    fn slot(&mut self, name: &str) -> Option<&mut Scalar> {
        Some(match name {
            "a" => &mut self.a,
            "b" => &mut self.b,
            "c" => &mut self.c,
            "d" => &mut self.d,
            "e" => &mut self.e,
            "f" => &mut self.f,
            "A" => &mut self.big_a,
            "B" => &mut self.big_b,
            "C" => &mut self.big_c,
            "D" => &mut self.big_d,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, v: Scalar) -> Result<()> {
        let s = self.slot(name).ok_or_else(|| Error::InvalidParams(format!("unknown coefficient {name:?}")))?;
        *s = v;
        Ok(())
    }

    pub fn with(mut self, name: &str, v: &Scalar) -> TwistCoeffs {
        self.set(name, v.clone()).expect("coefficient name");
        self
    }

    /// Parses "a=1,d=-1/2,..."; omitted coefficients are zero. Names are case sensitive.
    pub fn parse(s: &str, field: &FieldSpec) -> Result<TwistCoeffs> {
        let mut t = TwistCoeffs::zero(field);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse { offset: 0, msg: format!("expected name=value, got {part:?}") })?;
            let v = field.parse_scalar(v.trim())?;
            t.set(k.trim(), v)?;
        }
        Ok(t)
    }

    pub fn from_json(v: &Value, field: &FieldSpec) -> Result<TwistCoeffs> {
        let obj = v.as_object().ok_or_else(|| Error::Parse { offset: 0, msg: "coefficients must be an object".into() })?;
        let mut t = TwistCoeffs::zero(field);
        for (k, val) in obj {
            t.set(k, Scalar::from_json(val, field)?)?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> =
            COEFF_NAMES.iter().map(|n| (n.to_string(), self.get(n).unwrap().to_json())).collect();
        Value::Object(m)
    }

    /// Ore data read off an f = 0 tuple.
    pub fn ore_data(&self) -> Option<OreData> {
        if !self.f.is_zero() {
            return None;
        }
        let z = self.field().zero();
        Some(OreData {
            nu_x: [self.d.clone(), self.e.clone()],
            nu_y: [z, self.big_d.clone()],
            delta_x: [self.a.clone(), self.b.clone(), self.c.clone()],
            delta_y: [self.big_a.clone(), self.big_b.clone(), self.big_c.clone()],
        })
    }

    /// Reads the coefficients back from a presentation containing xy-yx and
    /// relations zx - tau(zx), zy - tau(zy) in normal form.
    pub fn from_presentation(p: &Presentation) -> Option<TwistCoeffs> {
        if p.dim() != 3 {
            return None;
        }
        let field = &p.field;
        let pivots = [idx(Y, X), idx(Z, X), idx(Z, Y)];
        let rows = p.relation_space();
        let sub: Vec<Vec<Scalar>> = rows.iter().map(|r| pivots.iter().map(|&k| r[k].clone()).collect()).collect();
        // rows^T-combination giving unit vectors on the pivot columns
        let inv = linalg::inverse(&sub)?;
        let pick = |k: usize| -> Vec<Scalar> {
            let mut v = vec![field.zero(); 9];
            for (r, row) in rows.iter().enumerate() {
                let w = &inv[k][r];
                for (t, x) in row.iter().enumerate() {
                    v[t] = &v[t] + &(w * x);
                }
            }
            v
        };
        let (ryx, rzx, rzy) = (pick(0), pick(1), pick(2));
        let mut comm = vec![field.zero(); 9];
        comm[idx(Y, X)] = field.one();
        comm[idx(X, Y)] = -field.one();
        if ryx != comm {
            return None;
        }
        let neg = |v: &Scalar| -v;
        let t = TwistCoeffs {
            a: neg(&rzx[idx(X, X)]),
            b: neg(&rzx[idx(X, Y)]),
            c: neg(&rzx[idx(Y, Y)]),
            d: neg(&rzx[idx(X, Z)]),
            e: neg(&rzx[idx(Y, Z)]),
            f: neg(&rzx[idx(Z, Z)]),
            big_a: neg(&rzy[idx(X, X)]),
            big_b: neg(&rzy[idx(X, Y)]),
            big_c: neg(&rzy[idx(Y, Y)]),
            big_d: neg(&rzy[idx(Y, Z)]),
        };
        if !rzy[idx(X, Z)].is_zero() || !rzy[idx(Z, Z)].is_zero() {
            return None;
        }
        Some(t)
    }
}

impl fmt::Display for TwistCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = COEFF_NAMES.iter().map(|n| format!("{n}={}", self.get(n).unwrap())).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// k<x,y,z>/(xy-yx, zx-tau(zx), zy-tau(zy)).
pub fn build_ttp_algebra(t: &TwistCoeffs) -> Presentation {
    let field = t.field();
    let one = field.one();
    let m = |s: &Scalar| -s;
    let rels = vec![
        vec![(one.clone(), X, Y), (-one.clone(), Y, X)],
        vec![
            (one.clone(), Z, X),
            (m(&t.a), X, X),
            (m(&t.b), X, Y),
            (m(&t.c), Y, Y),
            (m(&t.d), X, Z),
            (m(&t.e), Y, Z),
            (m(&t.f), Z, Z),
        ],
        vec![(one, Z, Y), (m(&t.big_a), X, X), (m(&t.big_b), X, Y), (m(&t.big_c), Y, Y), (m(&t.big_d), Y, Z)],
    ];
    Presentation::from_terms(&field, ['x', 'y', 'z'], &rels).expect("coefficients share one field")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    Elliptic,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    O1i,
    O1ii,
    O1iii,
    O1iv,
    O2i,
    O2ii,
}

impl CaseLabel {
    pub const REDUCIBLE: [CaseLabel; 7] =
        [CaseLabel::R1, CaseLabel::R2, CaseLabel::R3, CaseLabel::R4, CaseLabel::R5, CaseLabel::R6, CaseLabel::R7];
    pub const ORE: [CaseLabel; 6] =
        [CaseLabel::O1i, CaseLabel::O1ii, CaseLabel::O1iii, CaseLabel::O1iv, CaseLabel::O2i, CaseLabel::O2ii];

    pub fn all_sampled() -> Vec<CaseLabel> {
        CaseLabel::REDUCIBLE.iter().chain(CaseLabel::ORE.iter()).copied().collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseLabel::Elliptic => "Elliptic",
            CaseLabel::R1 => "R(i)",
            CaseLabel::R2 => "R(ii)",
            CaseLabel::R3 => "R(iii)",
            CaseLabel::R4 => "R(iv)",
            CaseLabel::R5 => "R(v)",
            CaseLabel::R6 => "R(vi)",
            CaseLabel::R7 => "R(vii)",
            CaseLabel::O1i => "O(1)(i)",
            CaseLabel::O1ii => "O(1)(ii)",
            CaseLabel::O1iii => "O(1)(iii)",
            CaseLabel::O1iv => "O(1)(iv)",
            CaseLabel::O2i => "O(2)(i)",
            CaseLabel::O2ii => "O(2)(ii)",
        }
    }

    pub fn is_reducible(&self) -> bool {
        CaseLabel::REDUCIBLE.contains(self)
    }

    pub fn is_ore(&self) -> bool {
        CaseLabel::ORE.contains(self)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn is01(s: &Scalar) -> bool {
    s.is_zero() || s.is_one()
}

/// First matching case of the normal-form lists. Reducible cases also
/// require a != 1; the remaining admissibility conditions on (a,d) are left
/// to `verify_ttp`.
pub fn case_label(t: &TwistCoeffs) -> Option<CaseLabel> {
    let field = t.field();
    let one = field.one();
    let two = field.from_i64(2);
    let m1 = -one.clone();
    if !is01(&t.e) || !is01(&t.f) || !is01(&t.big_a) {
        return None;
    }
    let (a, b, c, d, e) = (&t.a, &t.b, &t.c, &t.d, &t.e);
    let (ca, cb, cc, cd) = (&t.big_a, &t.big_b, &t.big_c, &t.big_d);
    let z = |s: &Scalar| s.is_zero();
    if t.f.is_one() && ca.is_one() {
        return Some(CaseLabel::Elliptic);
    }
    if t.f.is_one() {
        if a.is_one() {
            return None;
        }
        let r1 = *a == cb * &(&(&one - d) - cb) && z(b) && z(c) && z(e) && z(cc) && z(cd);
        let r2 = z(e) && z(cb) && z(cc) && cd.is_one();
        let r3 = *d == m1 && *cb == two && z(e) && z(cc) && *cd == m1;
        let r4 = *a == cb * &(&(&one - d) - cb)
            && *b == &(&one - d) - &(&two * cb)
            && *c == m1
            && cc.is_one()
            && z(e)
            && z(cd);
        let r5 = z(e) && *d == m1 && *cd == m1 && *cb == two && cc.is_one();
        let r6 = e.is_one()
            && z(d)
            && z(cd)
            && *a == cb * &(&one - cb)
            && *b == &(cc - cb) - &(&two * &(cb * cc))
            && *c == -(cc * &(&one + cc));
        let r7 = z(cb) && z(cc) && e.is_one() && d.is_one() && cd.is_one();
        let found = [r1, r2, r3, r4, r5, r6, r7].iter().position(|&x| x)?;
        return Some(CaseLabel::REDUCIBLE[found]);
    }
    // f = 0: Ore type
    if z(e) {
        if z(ca) && !is01(cc) {
            return None;
        }
        if d.is_one() && cd.is_one() {
            return Some(CaseLabel::O1i);
        }
        if !d.is_one() && cd.is_one() && z(ca) && z(cb) && z(cc) {
            return Some(CaseLabel::O1ii);
        }
        if d.is_one() && !cd.is_one() && z(a) && z(b) && z(c) {
            return Some(CaseLabel::O1iii);
        }
        if !d.is_one() && !cd.is_one() && z(ca) && z(c) {
            let r = &(d - &one) / &(cd - &one);
            if *a == cb * &r && *b == cc * &r {
                return Some(CaseLabel::O1iv);
            }
        }
        return None;
    }
    if d != cd {
        return None;
    }
    if d.is_one() && z(ca) && z(cb) && z(cc) {
        return Some(CaseLabel::O2i);
    }
    if !d.is_one() && z(ca) {
        let dm = d - &one;
        if *cb == *a && *a == &(b - cc) * &dm && *c == cc / &dm {
            return Some(CaseLabel::O2ii);
        }
    }
    None
}

/// Reorders generators so that the TTP monomials x^i y^j z^k are checked
/// for the designated first pair and third generator.
fn monomial_words(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..=m {
        for j in 0..=(m - i) {
            let k = m - i - j;
            let mut w = vec![X; i];
            w.extend(std::iter::repeat_n(Y, j));
            w.extend(std::iter::repeat_n(Z, k));
            out.push(w);
        }
    }
    out
}

/// Truncated check of the twisted tensor product property for generators
/// (g0,g1 | g2): Hilbert function (m+1)(m+2)/2 up to degree n and
/// independence of the ordered monomials g0^i g1^j g2^k in normal form.
pub fn verify_ttp(p: &Presentation, n: usize) -> Result<bool> {
    if p.dim() != 3 {
        return Ok(false);
    }
    let gb = TruncatedGb::compute(p, &MonomialOrder::standard(), n.max(2))?;
    for m in 0..=n {
        if gb.hilbert(m) != (m + 1) * (m + 2) / 2 {
            return Ok(false);
        }
    }
    for m in 2..=n {
        let nfs: Vec<_> = monomial_words(m)
            .into_iter()
            .map(|w| gb.normal_form(&gb.element(&[(p.field.one(), w)])))
            .collect::<Result<_>>()?;
        let mut cols = BTreeMap::new();
        for f in &nfs {
            for (w, _) in f.terms() {
                let k = cols.len();
                cols.entry(*w).or_insert(k);
            }
        }
        let mut mat = vec![vec![p.field.zero(); cols.len()]; nfs.len()];
        for (r, f) in nfs.iter().enumerate() {
            for (w, c) in f.terms() {
                mat[r][cols[w]] = c.clone();
            }
        }
        if linalg::rank(&mat) != nfs.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A graded Ore extension k[x,y][z; nu, delta] with nu(x)=nu_x[0]x+nu_x[1]y,
/// nu(y)=nu_y[0]x+nu_y[1]y and delta given on x,y by coefficients of
/// (x^2, xy, y^2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OreData {
    pub nu_x: [Scalar; 2],
    pub nu_y: [Scalar; 2],
    pub delta_x: [Scalar; 3],
    pub delta_y: [Scalar; 3],
}

impl OreData {
    pub fn field(&self) -> FieldSpec {
        self.nu_x[0].field()
    }

    fn lin(c: &[Scalar; 2]) -> Poly3 {
        Poly3::linear(&[c[0].clone(), c[1].clone(), c[0].zero_like()])
    }

    fn quad(c: &[Scalar; 3]) -> Poly3 {
        let mut p = Poly3::monomial(c[0].clone(), [2, 0, 0]);
        p = &p + &Poly3::monomial(c[1].clone(), [1, 1, 0]);
        &p + &Poly3::monomial(c[2].clone(), [0, 2, 0])
    }

    /// nu(x)delta(y) + delta(x)y - nu(y)delta(x) - delta(y)x in k[x,y]_3;
    /// zero exactly when z(xy) = z(yx) is consistent.
    pub fn compatibility_residual(&self) -> Poly3 {
        let f = self.field();
        let (x, y) = (Poly3::var(&f, X), Poly3::var(&f, Y));
        let (nx, ny) = (OreData::lin(&self.nu_x), OreData::lin(&self.nu_y));
        let (dx, dy) = (OreData::quad(&self.delta_x), OreData::quad(&self.delta_y));
        let lhs = &(&nx * &dy) + &(&dx * &y);
        let rhs = &(&ny * &dx) + &(&dy * &x);
        &lhs - &rhs
    }

    pub fn nu_invertible(&self) -> bool {
        !(&(&self.nu_x[0] * &self.nu_y[1]) - &(&self.nu_x[1] * &self.nu_y[0])).is_zero()
    }

    pub fn to_json(&self) -> Value {
        let j = |v: &[Scalar]| Value::Array(v.iter().map(|s| s.to_json()).collect());
        json!({"nu_x": j(&self.nu_x), "nu_y": j(&self.nu_y), "delta_x": j(&self.delta_x), "delta_y": j(&self.delta_y)})
    }
}

/// xy-yx, zx-nu(x)z-delta(x), zy-nu(y)z-delta(y), after checking that the
/// pair (nu, delta) is compatible with the commutator.
pub fn build_ore_extension(o: &OreData) -> Result<Presentation> {
    let res = o.compatibility_residual();
    if !res.is_zero() {
        return Err(Error::InvalidParams(format!("nu-derivation compatibility fails; residual cubic {res}")));
    }
    let field = o.field();
    let one = field.one();
    let m = |s: &Scalar| -s;
    let rels = vec![
        vec![(one.clone(), X, Y), (-one.clone(), Y, X)],
        vec![
            (one.clone(), Z, X),
            (m(&o.nu_x[0]), X, Z),
            (m(&o.nu_x[1]), Y, Z),
            (m(&o.delta_x[0]), X, X),
            (m(&o.delta_x[1]), X, Y),
            (m(&o.delta_x[2]), Y, Y),
        ],
        vec![
            (one, Z, Y),
            (m(&o.nu_y[0]), X, Z),
            (m(&o.nu_y[1]), Y, Z),
            (m(&o.delta_y[0]), X, X),
            (m(&o.delta_y[1]), X, Y),
            (m(&o.delta_y[2]), Y, Y),
        ],
    ];
    Presentation::from_terms(&field, ['x', 'y', 'z'], &rels)
}

fn rand_not<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R, avoid: &[Scalar]) -> Scalar {
    loop {
        let s = field.random(rng);
        if !avoid.contains(&s) {
            return s;
        }
    }
}

fn rand01<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R) -> Scalar {
    if rng.gen_bool(0.5) {
        field.one()
    } else {
        field.zero()
    }
}

/// Random coefficients satisfying the defining equations of a case (for
/// reducible cases a != 1 as well). Free coefficients are uniform in the
/// field's sampling range.
pub fn sample_case<R: Rng + ?Sized>(label: CaseLabel, field: &FieldSpec, rng: &mut R) -> TwistCoeffs {
    loop {
        let t = sample_once(label, field, rng);
        if case_label(&t) == Some(label) {
            return t;
        }
    }
}

fn sample_once<R: Rng + ?Sized>(label: CaseLabel, field: &FieldSpec, rng: &mut R) -> TwistCoeffs {
    use CaseLabel::*;
    let one = field.one();
    let two = field.from_i64(2);
    let m1 = -one.clone();
    let mut r = || field.random(rng);
    let mut t = TwistCoeffs::zero(field);
    match label {
        Elliptic => {
            t.f = one.clone();
            t.big_a = one.clone();
            for n in ["a", "b", "c", "d", "B", "C", "D"] {
                t.set(n, r()).unwrap();
            }
            t.e = if r().is_zero() { one.clone() } else { field.zero() };
        }
        R1 | R2 | R3 | R4 | R5 | R6 | R7 => {
            t.f = one.clone();
            for n in ["a", "b", "c", "d", "B", "C", "D"] {
                t.set(n, r()).unwrap();
            }
            let z = field.zero();
            match label {
                R1 => {
                    t.a = &t.big_b * &(&(&one - &t.d) - &t.big_b);
                    (t.b, t.c, t.big_c, t.big_d) = (z.clone(), z.clone(), z.clone(), z);
                }
                R2 => {
                    (t.big_b, t.big_c, t.big_d) = (z.clone(), z, one.clone());
                }
                R3 => {
                    (t.d, t.big_b, t.big_c, t.big_d) = (m1.clone(), two.clone(), z, m1.clone());
                }
                R4 => {
                    t.a = &t.big_b * &(&(&one - &t.d) - &t.big_b);
                    t.b = &(&one - &t.d) - &(&two * &t.big_b);
                    (t.c, t.big_c, t.big_d) = (m1.clone(), one.clone(), z);
                }
                R5 => {
                    (t.d, t.big_d, t.big_b, t.big_c) = (m1.clone(), m1.clone(), two.clone(), one.clone());
                }
                R6 => {
                    t.e = one.clone();
                    (t.d, t.big_d) = (z.clone(), z);
                    t.a = &t.big_b * &(&one - &t.big_b);
                    t.b = &(&t.big_c - &t.big_b) - &(&two * &(&t.big_b * &t.big_c));
                    t.c = -(&t.big_c * &(&one + &t.big_c));
                }
                R7 => {
                    t.e = one.clone();
                    (t.big_b, t.big_c, t.d, t.big_d) = (z.clone(), z, one.clone(), one.clone());
                }
                _ => unreachable!(),
            }
        }
        O1i | O1ii | O1iii | O1iv => {
            t.big_a = rand01(field, rng);
            let mut r = || field.random(rng);
            for n in ["a", "b", "c", "B", "C"] {
                t.set(n, r()).unwrap();
            }
            if t.big_a.is_zero() {
                t.big_c = rand01(field, rng);
            }
            let z = field.zero();
            match label {
                O1i => {
                    (t.d, t.big_d) = (one.clone(), one.clone());
                }
                O1ii => {
                    t.d = rand_not(field, rng, std::slice::from_ref(&one));
                    t.big_d = one.clone();
                    (t.big_a, t.big_b, t.big_c) = (z.clone(), z.clone(), z);
                }
                O1iii => {
                    t.d = one.clone();
                    t.big_d = rand_not(field, rng, std::slice::from_ref(&one));
                    (t.a, t.b, t.c) = (z.clone(), z.clone(), z);
                }
                O1iv => {
                    t.d = rand_not(field, rng, std::slice::from_ref(&one));
                    t.big_d = rand_not(field, rng, std::slice::from_ref(&one));
                    t.big_a = z.clone();
                    t.big_c = rand01(field, rng);
                    t.c = z;
                    let q = &(&t.d - &one) / &(&t.big_d - &one);
                    t.a = &t.big_b * &q;
                    t.b = &t.big_c * &q;
                }
                _ => unreachable!(),
            }
        }
        O2i => {
            t.e = one.clone();
            (t.d, t.big_d) = (one.clone(), one.clone());
            (t.a, t.b, t.c) = (r(), r(), r());
        }
        O2ii => {
            t.e = one.clone();
            let d = rand_not(field, rng, std::slice::from_ref(&one));
            let mut r = || field.random(rng);
            let dm = &d - &one;
            (t.d, t.big_d) = (d.clone(), d);
            t.b = r();
            t.big_c = r();
            t.a = &(&t.b - &t.big_c) * &dm;
            t.big_b = t.a.clone();
            t.c = &t.big_c / &dm;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn coeffs(s: &str) -> TwistCoeffs {
        TwistCoeffs::parse(s, &q()).unwrap()
    }

    #[test]
    fn labels_from_defining_equations() {
        assert_eq!(case_label(&coeffs("f=1,d=-1,B=2,D=-1,a=5,b=3,c=7")), Some(CaseLabel::R3));
        assert_eq!(case_label(&coeffs("e=1,d=1,D=1,a=2,b=3")), Some(CaseLabel::O2i));
        assert_eq!(case_label(&coeffs("d=1,D=1,A=1,a=1,B=1")), Some(CaseLabel::O1i));
        assert_eq!(case_label(&coeffs("e=1,d=1,D=1,B=1")), None);
        // f_1 = 1 - t rules out a = 1
        assert_eq!(case_label(&coeffs("f=1,d=-1,B=2,D=-1,a=1")), None);
        assert_eq!(case_label(&coeffs("e=2")), None);
    }

    #[test]
    fn ore_coefficients_build_the_same_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for label in CaseLabel::ORE {
            for _ in 0..5 {
                let t = sample_case(label, &q(), &mut rng);
                let o = t.ore_data().unwrap();
                assert!(o.compatibility_residual().is_zero(), "{label} {t}");
                assert_eq!(build_ore_extension(&o).unwrap(), build_ttp_algebra(&t));
                assert_eq!(TwistCoeffs::from_presentation(&build_ttp_algebra(&t)), Some(t));
            }
        }
    }

    #[test]
    fn incompatible_ore_data_is_rejected() {
        let f = q();
        let (z, o) = (f.zero(), f.one());
        // nu = diag(2,1), delta(y) = x^2: 2x^3 on one side, x^3 on the other
        let od = OreData {
            nu_x: [f.from_i64(2), z.clone()],
            nu_y: [z.clone(), o.clone()],
            delta_x: [z.clone(), z.clone(), z.clone()],
            delta_y: [o, z.clone(), z],
        };
        assert!(matches!(build_ore_extension(&od), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn small_ttp_checks() {
        let f = q();
        // all zero but d = D = 1: the polynomial ring
        let t = coeffs("d=1,D=1");
        assert!(verify_ttp(&build_ttp_algebra(&t), 4).unwrap());
        // S(d,D) with d D = 0 is still a twisted tensor product
        let s = build_ttp_algebra(&coeffs("d=0,D=3"));
        assert!(verify_ttp(&s, 4).unwrap());
        // zx = x^2 forces a = 1, rejected by the first obstruction
        let bad = build_ttp_algebra(&coeffs("a=1,f=1,D=1"));
        assert!(!verify_ttp(&bad, 4).unwrap());
        let _ = f;
    }

    #[test]
    fn verify_is_invariant_under_rescaling() {
        let f = q();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = sample_case(CaseLabel::R3, &f, &mut rng);
        let p = build_ttp_algebra(&t);
        let phi = crate::freealg::LinearMap::from_ints(&f, [[2, 0, 0], [0, -3, 0], [0, 0, 5]]);
        let img = crate::freealg::apply_change_of_variables(&phi, &p).unwrap();
        assert_eq!(verify_ttp(&p, 5).unwrap(), verify_ttp(&img, 5).unwrap());
    }
}
