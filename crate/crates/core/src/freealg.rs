//! Quadratic algebras on three generators: presentations, linear changes of
//! variables, quadratic duals and exhaustive isomorphism search over small
//! prime fields.

use std::fmt;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Matrix};

/// Index of the degree-2 word u_i u_j in the 9-dimensional tensor square.
pub fn idx(i: usize, j: usize) -> usize {
    3 * i + j
}

/// A quadratic algebra k<g0,g1,g2>/(R). The relation space is stored in
/// canonical RREF; `given` keeps the spanning list as supplied, which fixes
/// the basis used for the matrices M and N.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: FieldSpec,
    pub gens: [char; 3],
    relations: Matrix,
    given: Matrix,
}

impl PartialEq for Presentation {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.gens == o.gens && self.relations == o.relations
    }
}

impl Presentation {
    pub fn new(field: &FieldSpec, gens: [char; 3], given: Matrix) -> Result<Presentation> {
        field.validate()?;
        for r in &given {
            if r.len() != 9 {
                return Err(Error::InvalidParams("relation must have 9 coefficients".into()));
            }
            if r.iter().any(|s| s.field() != *field) {
                return Err(Error::FieldMismatch(format!("relation coefficients not in {field}")));
            }
        }
        let relations = linalg::row_space(&given);
        Ok(Presentation { field: field.clone(), gens, relations, given })
    }

    /// Builds from sparse relations: each relation is a list of (coefficient, i, j).
    pub fn from_terms(field: &FieldSpec, gens: [char; 3], rels: &[Vec<(Scalar, usize, usize)>]) -> Result<Presentation> {
        let given = rels
            .iter()
            .map(|r| {
                let mut v = vec![field.zero(); 9];
                for (c, i, j) in r {
                    v[idx(*i, *j)] = &v[idx(*i, *j)] + c;
                }
                v
            })
            .collect();
        Presentation::new(field, gens, given)
    }

    pub fn relation_space(&self) -> &Matrix {
        &self.relations
    }

    pub fn given(&self) -> &Matrix {
        &self.given
    }

    /// Independent spanning relations in their supplied order when they form a
    /// basis, otherwise the canonical basis.
    pub fn basis_relations(&self) -> &Matrix {
        if self.given.len() == self.relations.len() {
            &self.given
        } else {
            &self.relations
        }
    }

    pub fn dim(&self) -> usize {
        self.relations.len()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        linalg::in_span(&self.relations, v)
    }

    pub fn with_gens(mut self, gens: [char; 3]) -> Presentation {
        self.gens = gens;
        self
    }

    pub fn word_name(&self, i: usize, j: usize) -> String {
        format!("{}{}", self.gens[i], self.gens[j])
    }

    pub fn relation_string(&self, r: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let c = &r[idx(i, j)];
                if !c.is_zero() {
                    parts.push(if c.is_one() { self.word_name(i, j) } else { format!("({c})*{}", self.word_name(i, j)) });
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                let terms: Vec<Value> = (0..9)
                    .filter(|&k| !r[k].is_zero())
                    .map(|k| json!([r[k].to_json(), self.word_name(k / 3, k % 3)]))
                    .collect();
                Value::Array(terms)
            })
            .collect();
        json!({
            "field": self.field,
            "gens": self.gens.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "relations": rels,
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.basis_relations().iter().map(|r| self.relation_string(r)).collect();
        write!(f, "<{}, {}, {} | {}> over {}", self.gens[0], self.gens[1], self.gens[2], rels.join(", "), self.field)
    }
}

#[derive(Deserialize)]
struct RawPresentation {
    field: FieldSpec,
    gens: Vec<String>,
    relations: Vec<Vec<(Value, String)>>,
}

fn offset_of(text: &str, needle: &str) -> usize {
    text.find(needle).unwrap_or(0)
}

fn line_col_offset(text: &str, line: usize, col: usize) -> usize {
    let mut off = 0;
    for (k, l) in text.split_inclusive('\n').enumerate() {
        if k + 1 == line {
            return off + col.saturating_sub(1);
        }
        off += l.len();
    }
    off
}

/// Parses the JSON presentation format, reporting byte offsets on error.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let raw: RawPresentation = serde_json::from_str(text)
        .map_err(|e| Error::Parse { offset: line_col_offset(text, e.line(), e.column()), msg: e.to_string() })?;
    raw.field.validate().map_err(|e| Error::Parse { offset: offset_of(text, "\"field\""), msg: e.to_string() })?;
    let names: Vec<char> = raw.gens.iter().filter_map(|g| g.chars().next()).collect();
    if raw.gens.len() != 3 || raw.gens.iter().any(|g| g.chars().count() != 1) || names[0] == names[1] || names[1] == names[2] || names[0] == names[2] {
        return Err(Error::Parse { offset: offset_of(text, "\"gens\""), msg: "gens must be three distinct one-letter names".into() });
    }
    let gens = [names[0], names[1], names[2]];
    let mut given = Vec::new();
    for rel in &raw.relations {
        let mut v = vec![raw.field.zero(); 9];
        for (c, mono) in rel {
            let letters: Vec<char> = mono.chars().collect();
            if letters.len() != 2 {
                return Err(Error::Parse {
                    offset: offset_of(text, &format!("\"{mono}\"")),
                    msg: format!("term {mono:?} is not quadratic"),
                });
            }
            let pos = |ch: char| gens.iter().position(|&g| g == ch);
            let (Some(i), Some(j)) = (pos(letters[0]), pos(letters[1])) else {
                return Err(Error::Parse { offset: offset_of(text, &format!("\"{mono}\"")), msg: format!("unknown monomial {mono:?}") });
            };
            let s = Scalar::from_json(c, &raw.field)
                .map_err(|_| Error::Parse { offset: offset_of(text, &c.to_string()), msg: format!("bad scalar {c}") })?;
            v[idx(i, j)] = &v[idx(i, j)] + &s;
        }
        given.push(v);
    }
    Presentation::new(&raw.field, gens, given)
}

/// Linear map on the generators: column i holds the coordinates of the
/// image of generator i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap(pub Matrix);

impl LinearMap {
    pub fn from_ints(field: &FieldSpec, rows: [[i64; 3]; 3]) -> LinearMap {
        LinearMap(rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    /// Builds the map sending generator i to `images[i]` (coordinates).
    pub fn from_images(images: [[Scalar; 3]; 3]) -> LinearMap {
        LinearMap((0..3).map(|k| (0..3).map(|i| images[i][k].clone()).collect()).collect())
    }

    pub fn identity(field: &FieldSpec) -> LinearMap {
        LinearMap(linalg::identity(field, 3))
    }

    pub fn compose(&self, o: &LinearMap) -> LinearMap {
        LinearMap(linalg::mat_mul(&self.0, &o.0))
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        linalg::inverse(&self.0).map(LinearMap)
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap(linalg::transpose(&self.0))
    }

    pub fn det(&self) -> Scalar {
        linalg::det(&self.0)
    }

    pub fn field(&self) -> FieldSpec {
        self.0[0][0].field()
    }

    /// Image of generator i as coordinates.
    pub fn image(&self, i: usize) -> [Scalar; 3] {
        std::array::from_fn(|k| self.0[k][i].clone())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|r| Value::Array(r.iter().map(|s| s.to_json()).collect())).collect())
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.0.iter().map(|r| format!("[{}]", r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// phi (x) phi applied to one relation vector.
pub fn transform_relation(phi: &LinearMap, r: &[Scalar]) -> Vec<Scalar> {
    let f = phi.field();
    let c: Matrix = (0..3).map(|i| (0..3).map(|j| r[idx(i, j)].clone()).collect()).collect();
    let t = linalg::mat_mul(&linalg::mat_mul(&phi.0, &c), &linalg::transpose(&phi.0));
    let mut out = vec![f.zero(); 9];
    for k in 0..3 {
        for l in 0..3 {
            out[idx(k, l)] = t[k][l].clone();
        }
    }
    out
}

/// The presentation whose relations are phi (x) phi of the given ones.
pub fn apply_change_of_variables(phi: &LinearMap, p: &Presentation) -> Result<Presentation> {
    if phi.field() != p.field {
        return Err(Error::FieldMismatch("map and presentation".into()));
    }
    if phi.det().is_zero() {
        return Err(Error::Singular);
    }
    let given = p.given.iter().map(|r| transform_relation(phi, r)).collect();
    Presentation::new(&p.field, p.gens, given)
}

pub fn is_iso_witness(phi: &LinearMap, a: &Presentation, b: &Presentation) -> bool {
    if a.field != b.field || phi.field() != a.field || a.dim() != b.dim() {
        return false;
    }
    match apply_change_of_variables(phi, a) {
        Ok(img) => img.relations == b.relations,
        Err(_) => false,
    }
}

/// Orthogonal complement of R under the pairing of u_i u_j with u*_k u*_l.
pub fn quadratic_dual(p: &Presentation) -> Presentation {
    let k = linalg::kernel(&p.relations, 9, &p.field);
    Presentation::new(&p.field, p.gens, k).expect("dual of a valid presentation")
}

/// Largest prime accepted by the exhaustive search.
pub const MAX_SEARCH_PRIME: u64 = 7;

/// Searches PGL_3(F_p) for phi with phi (x) phi (R_a) = R_b. Matrices are
/// normalized so the first nonzero entry (row-major) is 1; the smallest
/// witness in row-major lexicographic order is returned.
pub fn brute_force_iso_search(a: &Presentation, b: &Presentation) -> Result<Option<LinearMap>> {
    let p = match a.field {
        FieldSpec::PrimeField { p } => p,
        _ => return Err(Error::InfiniteField),
    };
    if b.field != a.field {
        return Err(Error::FieldMismatch("search across different fields".into()));
    }
    if p > MAX_SEARCH_PRIME {
        return Err(Error::SearchTooLarge(format!("p = {p} exceeds {MAX_SEARCH_PRIME}")));
    }
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let p32 = p as u32;
    let res = |s: &Scalar| s.residue().unwrap() as u32;
    let rels: Vec<[u32; 9]> = a.relations.iter().map(|r| std::array::from_fn(|k| res(&r[k]))).collect();
    let ann: Vec<[u32; 9]> =
        linalg::kernel(&b.relations, 9, &b.field).iter().map(|w| std::array::from_fn(|k| res(&w[k]))).collect();
    let total = (p as usize).pow(9);
    let found = (0..total).into_par_iter().find_first(|&code| {
        let mut m = [0u32; 9];
        let mut c = code;
        for k in (0..9).rev() {
            m[k] = (c % p as usize) as u32;
            c /= p as usize;
        }
        match m.iter().find(|&&x| x != 0) {
            Some(&1) => {}
            _ => return false,
        }
        if det3_mod(&m, p32) == 0 {
            return false;
        }
        rels.iter().all(|r| {
            let t = congruence_mod(&m, r, p32);
            ann.iter().all(|w| (0..9).map(|k| w[k] * t[k]).sum::<u32>() % p32 == 0)
        })
    });
    let f = a.field.clone();
    Ok(found.map(|code| {
        let mut m = vec![vec![f.zero(); 3]; 3];
        let mut c = code;
        for k in (0..9).rev() {
            m[k / 3][k % 3] = f.from_i64((c % p as usize) as i64);
            c /= p as usize;
        }
        LinearMap(m)
    }))
}

fn det3_mod(m: &[u32; 9], p: u32) -> u32 {
    let t = |a: u32, b: u32, c: u32| a * b % p * c % p;
    let pos = t(m[0], m[4], m[8]) + t(m[1], m[5], m[6]) + t(m[2], m[3], m[7]);
    let neg = t(m[2], m[4], m[6]) + t(m[0], m[5], m[7]) + t(m[1], m[3], m[8]);
    (pos + 3 * p - neg) % p
}

/// m C m^T for a relation C, row-major 3x3 values mod p.
fn congruence_mod(m: &[u32; 9], c: &[u32; 9], p: u32) -> [u32; 9] {
    let mut mc = [0u32; 9];
    for i in 0..3 {
        for j in 0..3 {
            mc[3 * i + j] = (0..3).map(|k| m[3 * i + k] * c[3 * k + j]).sum::<u32>() % p;
        }
    }
    let mut out = [0u32; 9];
    for i in 0..3 {
        for j in 0..3 {
            out[3 * i + j] = (0..3).map(|k| mc[3 * i + k] * m[3 * j + k]).sum::<u32>() % p;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn commutative(f: &FieldSpec) -> Presentation {
        let one = f.one();
        let m = -f.one();
        Presentation::from_terms(
            f,
            ['x', 'y', 'z'],
            &[
                vec![(one.clone(), 0, 1), (m.clone(), 1, 0)],
                vec![(one.clone(), 1, 2), (m.clone(), 2, 1)],
                vec![(one, 2, 0), (m, 0, 2)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let f = FieldSpec::PrimeField { p: 13 };
        let p = commutative(&f);
        let text = p.to_json().to_string();
        assert_eq!(parse_presentation(&text).unwrap(), p);
        let text = r#"{"field":{"kind":"Q"},"gens":["x","y","z"],"relations":[[["1","xy"],["-1","yx"]]]}"#;
        assert_eq!(parse_presentation(text).unwrap().dim(), 1);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let text = r#"{"field":{"kind":"Q"},"gens":["x","y","z"],"relations":[[["1","xq"]]]}"#;
        match parse_presentation(text) {
            Err(Error::Parse { offset, msg }) => {
                assert_eq!(offset, text.find("\"xq\"").unwrap());
                assert!(msg.contains("unknown monomial"));
            }
            other => panic!("{other:?}"),
        }
        let text = r#"{"field":{"kind":"Q"},"gens":["x","y","z"],"relations":[[["1","xyz"]]]}"#;
        assert!(matches!(parse_presentation(text), Err(Error::Parse { msg, .. }) if msg.contains("not quadratic")));
        let text = r#"{"field":{"kind":"Q"},"gens":["x","y","z"],"relations":[[["1/0","xy"]]]}"#;
        assert!(matches!(parse_presentation(text), Err(Error::Parse { msg, .. }) if msg.contains("bad scalar")));
        let text = "{\"field\": {\"kind\":\"Q\"},\n \"gens\": [1";
        assert!(matches!(parse_presentation(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn dual_of_commutative_is_exterior() {
        let f = FieldSpec::Rationals;
        let d = quadratic_dual(&commutative(&f));
        assert_eq!(d.dim(), 6);
        let mut xy_plus_yx = vec![f.zero(); 9];
        xy_plus_yx[idx(0, 1)] = f.one();
        xy_plus_yx[idx(1, 0)] = f.one();
        assert!(d.contains(&xy_plus_yx));
        let mut xx = vec![f.zero(); 9];
        xx[0] = f.one();
        assert!(d.contains(&xx));
        assert_eq!(quadratic_dual(&d), commutative(&f));
    }

    #[test]
    fn singular_map_rejected() {
        let f = FieldSpec::Rationals;
        let phi = LinearMap::from_ints(&f, [[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        assert_eq!(apply_change_of_variables(&phi, &commutative(&f)), Err(Error::Singular));
    }

    #[test]
    fn search_returns_smallest_witness() {
        let f = FieldSpec::PrimeField { p: 5 };
        let p = commutative(&f);
        // every invertible map preserves the commutative relations
        let w = brute_force_iso_search(&p, &p).unwrap().unwrap();
        assert_eq!(w, LinearMap::from_ints(&f, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]));
        assert!(is_iso_witness(&w, &p, &p));
        let big = FieldSpec::PrimeField { p: 11 };
        assert!(matches!(brute_force_iso_search(&commutative(&big), &commutative(&big)), Err(Error::SearchTooLarge(_))));
    }

    fn rand_rel(f: &FieldSpec, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    fn rand_map(f: &FieldSpec, v: &[i64]) -> LinearMap {
        LinearMap((0..3).map(|i| (0..3).map(|j| f.from_i64(v[3 * i + j])).collect()).collect())
    }

    proptest! {
        #[test]
        fn change_of_variables_is_functorial(
            r in prop::collection::vec(prop::collection::vec(-3i64..4, 9), 1..4),
            a in prop::collection::vec(-3i64..4, 9),
            b in prop::collection::vec(-3i64..4, 9),
        ) {
            let f = FieldSpec::PrimeField { p: 13 };
            let p = Presentation::new(&f, ['x', 'y', 'z'], r.iter().map(|v| rand_rel(&f, v)).collect()).unwrap();
            let (phi, psi) = (rand_map(&f, &a), rand_map(&f, &b));
            prop_assume!(!phi.det().is_zero() && !psi.det().is_zero());
            let lhs = apply_change_of_variables(&phi.compose(&psi), &p).unwrap();
            let rhs = apply_change_of_variables(&phi, &apply_change_of_variables(&psi, &p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dual_is_involution(r in prop::collection::vec(prop::collection::vec(-3i64..4, 9), 0..7)) {
            let f = FieldSpec::Rationals;
            let p = Presentation::new(&f, ['x', 'y', 'z'], r.iter().map(|v| rand_rel(&f, v)).collect()).unwrap();
            let d = quadratic_dual(&p);
            prop_assert_eq!(d.dim() + p.dim(), 9);
            prop_assert_eq!(quadratic_dual(&d), p);
        }
    }
}
