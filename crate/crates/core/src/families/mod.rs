//! Named algebras, their regularity predicates, type classification,
//! isomorphism decisions and the summary tables.

mod classify;
pub mod iso;
mod table;
pub mod witness;

pub use classify::{classify_type, sigma_order_label, EcSubtag, TypeLabel};
pub use iso::{iso_decide, Certificate, IsoDecision};
pub use table::{table_report, CellResult, TableReport};

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::freealg::Presentation;
use crate::geometry::{build_mn, is_semistandard, nondegeneracy_check};

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

/// Every named algebra with its parameters. Parameters live in the field the
/// algebra is built over; epsilon-type flags are 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyId {
    Tgh { g: Scalar, h: Scalar },
    /// T(l) = T(l,l) for l != 0 and T(0) = T(0,1).
    Tell { l: Scalar },
    /// Target of the nodal normalization: xz-2yx+zy, zx-2xy+yz, y^2+x^2.
    Nodal,
    U,
    Uprime,
    Rq { q: Scalar },
    R0,
    R1,
    /// xy-yx, zy, (1-B)zx-(d+B)xz-z^2.
    Ti { d: Scalar, b: Scalar },
    /// xy-yx, zy, (1-B)zx-(d+B)xz-yz-z^2.
    Tiv { d: Scalar, b: Scalar },
    SdD { d: Scalar, big_d: Scalar },
    Sprime { d: Scalar, eps: Scalar },
    Tabc { alpha: Scalar, beta: Scalar, gamma: Scalar },
    Wge { gamma: Scalar, eps: Scalar },
    L { e1: Scalar, e2: Scalar },
    Peps { eps: Scalar },
    Wcal,
    Wd { d: Scalar },
    Sklyanin { a: Scalar, b: Scalar, c: Scalar, allow_degenerate: bool },
    S1deg,
    S2deg,
    Pa { a: Scalar },
    Rabc { a: Scalar, b: Scalar, c: Scalar, lambda: Scalar },
}

/// Family names accepted by `FamilyId::parse`, with their parameter names.
pub const FAMILY_NAMES: [(&str, &[&str]); 23] = [
    ("Tgh", &["g", "h"]),
    ("Tell", &["l"]),
    ("Nodal", &[]),
    ("U", &[]),
    ("Uprime", &[]),
    ("Rq", &["q"]),
    ("R0", &[]),
    ("R1", &[]),
    ("Ti", &["d", "B"]),
    ("Tiv", &["d", "B"]),
    ("SdD", &["d", "D"]),
    ("Sprime", &["d", "eps"]),
    ("Tabc", &["alpha", "beta", "gamma"]),
    ("Wge", &["gamma", "eps"]),
    ("L", &["e1", "e2"]),
    ("Peps", &["eps"]),
    ("Wcal", &[]),
    ("Wd", &["d"]),
    ("Sklyanin", &["a", "b", "c"]),
    ("S1deg", &[]),
    ("S2deg", &[]),
    ("Pa", &["a"]),
    ("Rabc", &["a", "b", "c", "lambda"]),
];

fn flag(s: &Scalar) -> bool {
    s.is_zero() || s.is_one()
}

impl FamilyId {
    pub fn name(&self) -> &'static str {
        use FamilyId::*;
        match self {
            Tgh { .. } => "Tgh",
            Tell { .. } => "Tell",
            Nodal => "Nodal",
            U => "U",
            Uprime => "Uprime",
            Rq { .. } => "Rq",
            R0 => "R0",
            R1 => "R1",
            Ti { .. } => "Ti",
            Tiv { .. } => "Tiv",
            SdD { .. } => "SdD",
            Sprime { .. } => "Sprime",
            Tabc { .. } => "Tabc",
            Wge { .. } => "Wge",
            L { .. } => "L",
            Peps { .. } => "Peps",
            Wcal => "Wcal",
            Wd { .. } => "Wd",
            Sklyanin { .. } => "Sklyanin",
            S1deg => "S1deg",
            S2deg => "S2deg",
            Pa { .. } => "Pa",
            Rabc { .. } => "Rabc",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, &Scalar)> {
        use FamilyId::*;
        match self {
            Tgh { g, h } => vec![("g", g), ("h", h)],
            Tell { l } => vec![("l", l)],
            Rq { q } => vec![("q", q)],
            Ti { d, b } | Tiv { d, b } => vec![("d", d), ("B", b)],
            SdD { d, big_d } => vec![("d", d), ("D", big_d)],
            Sprime { d, eps } => vec![("d", d), ("eps", eps)],
            Tabc { alpha, beta, gamma } => vec![("alpha", alpha), ("beta", beta), ("gamma", gamma)],
            Wge { gamma, eps } => vec![("gamma", gamma), ("eps", eps)],
            L { e1, e2 } => vec![("e1", e1), ("e2", e2)],
            Peps { eps } => vec![("eps", eps)],
            Wd { d } => vec![("d", d)],
            Sklyanin { a, b, c, .. } => vec![("a", a), ("b", b), ("c", c)],
            Pa { a } => vec![("a", a)],
            Rabc { a, b, c, lambda } => vec![("a", a), ("b", b), ("c", c), ("lambda", lambda)],
            Nodal | U | Uprime | R0 | R1 | Wcal | S1deg | S2deg => vec![],
        }
    }

    /// Parses a family name and "k=v,..." parameters. Missing parameters are
    /// an error; `degenerate=1` allows Sklyanin points in the degenerate set.
    pub fn parse(name: &str, params: &str, field: &FieldSpec) -> Result<FamilyId> {
        let mut vals = std::collections::BTreeMap::new();
        let mut allow_degenerate = false;
        for part in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse { offset: 0, msg: format!("expected name=value, got {part:?}") })?;
            if k.trim() == "degenerate" {
                allow_degenerate = matches!(v.trim(), "1" | "true");
                continue;
            }
            vals.insert(k.trim().to_string(), field.parse_scalar(v.trim())?);
        }
        let (_, names) = FAMILY_NAMES
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::InvalidParams(format!("unknown family {name:?}")))?;
        for k in vals.keys() {
            if !names.contains(&k.as_str()) {
                return Err(Error::InvalidParams(format!("family {name} has no parameter {k:?}")));
            }
        }
        let mut get = |k: &str| vals.remove(k).ok_or_else(|| Error::InvalidParams(format!("family {name} needs parameter {k}")));
        use FamilyId::*;
        let id = match name {
            "Tgh" => Tgh { g: get("g")?, h: get("h")? },
            "Tell" => Tell { l: get("l")? },
            "Nodal" => Nodal,
            "U" => U,
            "Uprime" => Uprime,
            "Rq" => Rq { q: get("q")? },
            "R0" => R0,
            "R1" => R1,
            "Ti" => Ti { d: get("d")?, b: get("B")? },
            "Tiv" => Tiv { d: get("d")?, b: get("B")? },
            "SdD" => SdD { d: get("d")?, big_d: get("D")? },
            "Sprime" => Sprime { d: get("d")?, eps: get("eps")? },
            "Tabc" => Tabc { alpha: get("alpha")?, beta: get("beta")?, gamma: get("gamma")? },
            "Wge" => Wge { gamma: get("gamma")?, eps: get("eps")? },
            "L" => L { e1: get("e1")?, e2: get("e2")? },
            "Peps" => Peps { eps: get("eps")? },
            "Wcal" => Wcal,
            "Wd" => Wd { d: get("d")? },
            "Sklyanin" => Sklyanin { a: get("a")?, b: get("b")?, c: get("c")?, allow_degenerate },
            "S1deg" => S1deg,
            "S2deg" => S2deg,
            "Pa" => Pa { a: get("a")? },
            "Rabc" => Rabc { a: get("a")?, b: get("b")?, c: get("c")?, lambda: get("lambda")? },
            _ => unreachable!(),
        };
        Ok(id)
    }

    pub fn to_json(&self) -> Value {
        let p: serde_json::Map<String, Value> = self.params().into_iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
        json!({"id": self.name(), "params": p})
    }

    /// Checks parameter domains without building anything.
    pub fn validate(&self, field: &FieldSpec) -> Result<()> {
        use FamilyId::*;
        field.validate()?;
        for (k, v) in self.params() {
            if v.field() != *field {
                return Err(Error::FieldMismatch(format!("parameter {k} is not in {field}")));
            }
        }
        let bad = |m: &str| Err(Error::InvalidParams(format!("{}: {m}", self.name())));
        match self {
            SdD { d, big_d } if d.is_one() || big_d.is_one() => bad("d and D must differ from 1"),
            Sprime { d, .. } | Wd { d } if d.is_one() => bad("d must differ from 1"),
            Sprime { eps, .. } | Wge { eps, .. } | Peps { eps } if !flag(eps) => bad("eps must be 0 or 1"),
            L { e1, e2 } if !flag(e1) || !flag(e2) => bad("e1 and e2 must be 0 or 1"),
            Tabc { alpha, beta, gamma } if (&(alpha + beta) + gamma).is_zero() => bad("alpha+beta+gamma must be nonzero"),
            Sklyanin { a, b, c, allow_degenerate } => {
                if a.is_zero() && b.is_zero() && c.is_zero() {
                    return bad("[a:b:c] must be a point of P^2");
                }
                if !allow_degenerate && sklyanin_degenerate(a, b, c) {
                    return bad("[a:b:c] lies in the degenerate set; pass degenerate=1 to build it anyway");
                }
                Ok(())
            }
            Rabc { a, b, c, lambda } => {
                if a.is_zero() || b.is_zero() || c.is_zero() {
                    return bad("abc must be nonzero");
                }
                if lambda.pow(3).is_one() {
                    return bad("lambda^3 must differ from 1");
                }
                let lhs = &(&a.pow(3) + &b.pow(3)) + &c.pow(3);
                let rhs = &(&field.from_i64(3) * lambda) * &(&(a * b) * c);
                if lhs != rhs {
                    return bad("[a:b:c] must lie on x^3+y^3+z^3-3 lambda xyz");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The defining presentation over `field`.
    pub fn make(&self, field: &FieldSpec) -> Result<Presentation> {
        self.validate(field)?;
        let f = field;
        let o = f.one();
        let n = |k: i64| f.from_i64(k);
        let neg = |s: &Scalar| -s;
        let xyz = ['x', 'y', 'z'];
        let comm = vec![(o.clone(), X, Y), (neg(&o), Y, X)];
        use FamilyId::*;
        let (gens, rels): ([char; 3], Vec<Vec<(Scalar, usize, usize)>>) = match self {
            Tgh { g, h } => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), Z, Y), (o.clone(), Y, Z), (n(-1), X, X), (neg(g), Y, Y)],
                    vec![(o.clone(), Z, Z), (h.clone(), Y, Y)],
                ],
            ),
            Tell { l } => {
                let (g, h) = tell_params(l);
                return FamilyId::Tgh { g, h }.make(f);
            }
            Nodal => (
                xyz,
                vec![
                    vec![(o.clone(), X, Z), (n(-2), Y, X), (o.clone(), Z, Y)],
                    vec![(o.clone(), Z, X), (n(-2), X, Y), (o.clone(), Y, Z)],
                    vec![(o.clone(), Y, Y), (o.clone(), X, X)],
                ],
            ),
            U | Uprime => {
                let mut third = vec![(o.clone(), Y, Y), (o.clone(), Z, Z)];
                if matches!(self, Uprime) {
                    third.push((o.clone(), X, X));
                }
                (xyz, vec![vec![(o.clone(), X, Y), (n(-1), Z, X)], vec![(o.clone(), Y, X), (n(-1), X, Z)], third])
            }
            Rq { q } => (xyz, vec![comm, vec![(o.clone(), Z, Y)], vec![(q.clone(), Z, X), (n(-1), X, Z), (n(-1), Z, Z)]]),
            R0 => (xyz, vec![comm, vec![(o.clone(), Z, Y)], vec![(o.clone(), Z, X), (n(-1), Z, Z)]]),
            R1 => (xyz, vec![comm, vec![(o.clone(), Z, Y)], vec![(o.clone(), Z, X), (n(-1), Y, Z), (n(-1), Z, Z)]]),
            Ti { d, b } | Tiv { d, b } => {
                let mut third = vec![(&o - b, Z, X), (neg(&(d + b)), X, Z), (n(-1), Z, Z)];
                if matches!(self, Tiv { .. }) {
                    third.push((n(-1), Y, Z));
                }
                (xyz, vec![comm, vec![(o.clone(), Z, Y)], third])
            }
            SdD { d, big_d } => (
                xyz,
                vec![comm, vec![(o.clone(), Z, X), (neg(d), X, Z)], vec![(o.clone(), Z, Y), (neg(big_d), Y, Z)]],
            ),
            Sprime { d, eps } => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), Z, Y), (n(-1), Y, Z)],
                    vec![(o.clone(), Z, X), (neg(d), X, Z), (eps.clone(), Y, Y)],
                ],
            ),
            Tabc { alpha, beta, gamma } => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), X, Z), (n(-1), Z, X), (neg(beta), X, X), (beta + gamma, X, Y)],
                    vec![(o.clone(), Y, Z), (n(-1), Z, Y), (neg(alpha), Y, Y), (alpha + gamma, X, Y)],
                ],
            ),
            Wge { gamma, eps } => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), Z, X), (n(-1), X, Z), (eps.clone(), X, X), (gamma.clone(), X, Y)],
                    vec![(o.clone(), Z, Y), (n(-1), Y, Z), (eps.clone(), X, Y), (&o + gamma, Y, Y)],
                ],
            ),
            L { e1, e2 } => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), Z, X), (n(-1), X, Z), (e1.clone(), X, Y), (e2.clone(), X, X)],
                    vec![(o.clone(), Z, Y), (n(-1), Y, Z), (o.clone(), X, X), (e1.clone(), Y, Y), (e2.clone(), X, Y)],
                ],
            ),
            Peps { eps } => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), Z, X), (neg(eps), X, X), (n(-1), X, Z)],
                    vec![(o.clone(), Z, Y), (neg(eps), X, Y), (n(-1), Y, Z)],
                ],
            ),
            Wcal => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), Z, X), (n(-1), X, Z), (o.clone(), X, X), (o.clone(), Y, Z)],
                    vec![(o.clone(), Z, Y), (n(-1), Y, Z)],
                ],
            ),
            Wd { d } => (
                xyz,
                vec![
                    comm,
                    vec![(o.clone(), Z, X), (neg(d), X, Z), (n(-1), Y, Z)],
                    vec![(o.clone(), Z, Y), (neg(d), Y, Z)],
                ],
            ),
            Sklyanin { a, b, c, .. } => (
                xyz,
                vec![
                    vec![(a.clone(), Y, Z), (b.clone(), Z, Y), (c.clone(), X, X)],
                    vec![(a.clone(), Z, X), (b.clone(), X, Z), (c.clone(), Y, Y)],
                    vec![(a.clone(), X, Y), (b.clone(), Y, X), (c.clone(), Z, Z)],
                ],
            ),
            S1deg => (['u', 'v', 'w'], vec![vec![(o.clone(), X, X)], vec![(o.clone(), Y, Y)], vec![(o.clone(), Z, Z)]]),
            S2deg => (['u', 'v', 'w'], vec![vec![(o.clone(), X, Y)], vec![(o.clone(), Y, Z)], vec![(o.clone(), Z, X)]]),
            Pa { a } => {
                // generators r, s, t in slots 0, 1, 2
                (
                    ['r', 's', 't'],
                    vec![
                        vec![(o.clone(), X, Y), (o.clone(), Y, X)],
                        vec![(o.clone(), Z, X), (o.clone(), X, Z), (n(-1), Z, Z), (neg(a), X, X)],
                        vec![
                            (o.clone(), Z, X),
                            (n(-1), Z, Y),
                            (o.clone(), X, Z),
                            (n(-1), Y, Z),
                            (n(2), Y, Y),
                        ],
                    ],
                )
            }
            Rabc { a, b, c, .. } => (
                xyz,
                vec![
                    vec![(a.clone(), X, Z), (b.clone(), Z, Y), (c.clone(), Y, X)],
                    vec![(a.clone(), Z, X), (b.clone(), Y, Z), (c.clone(), X, Y)],
                    vec![(a.clone(), Y, Y), (b.clone(), X, X), (c.clone(), Z, Z)],
                ],
            ),
        };
        Presentation::from_terms(f, gens, &rels)
    }

    /// AS-regularity as decided by the per-family criteria. Errors only for
    /// R(a,b,c), where no criterion is recorded.
    pub fn is_as_regular(&self) -> Result<bool> {
        use FamilyId::*;
        Ok(match self {
            Tgh { h, .. } => !h.is_zero(),
            Tell { .. } | Nodal | U | Uprime => true,
            Rq { .. } | R0 | R1 | Ti { .. } | Tiv { .. } | S1deg | S2deg => false,
            SdD { d, big_d } => !(d * big_d).is_zero(),
            Sprime { d, .. } | Wd { d } => !d.is_zero(),
            Tabc { .. } | Wge { .. } | L { .. } | Peps { .. } | Wcal => true,
            Sklyanin { a, b, c, .. } => !sklyanin_degenerate(a, b, c),
            Pa { a } => !a.is_one(),
            Rabc { .. } => return Err(Error::NoCriterion("AS-regularity of R(a,b,c)".into())),
        })
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        if ps.is_empty() {
            write!(f, "{}", self.name())
        } else {
            write!(f, "{}({})", self.name(), ps.join(","))
        }
    }
}

/// (g,h) with T(l) = T(g,h).
pub fn tell_params(l: &Scalar) -> (Scalar, Scalar) {
    if l.is_zero() {
        (l.clone(), l.one_like())
    } else {
        (l.clone(), l.clone())
    }
}

/// Membership in the degenerate set {[1:0:0],[0:1:0],[0:0:1]} union {a^3=b^3=c^3}.
pub fn sklyanin_degenerate(a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let zeros = [a, b, c].iter().filter(|s| s.is_zero()).count();
    if zeros == 2 {
        return true;
    }
    let (a3, b3, c3) = (a.pow(3), b.pow(3), c.pow(3));
    a3 == b3 && b3 == c3
}

/// Semi-standard and nondegenerate at every point of P^2(F_p); the
/// geometric side of the regularity cross-check.
pub fn geometric_nondegenerate(p: &Presentation) -> Result<bool> {
    let mn = build_mn(p)?;
    if is_semistandard(&mn).is_none() {
        return Ok(false);
    }
    Ok(nondegeneracy_check(&mn)?.nondegenerate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build() {
        let f = FieldSpec::fp(13).unwrap();
        let id = FamilyId::parse("Tgh", "g=1,h=2", &f).unwrap();
        let p = id.make(&f).unwrap();
        assert_eq!(p.dim(), 3);
        assert!(FamilyId::parse("Tgh", "g=1", &f).is_err());
        assert!(FamilyId::parse("Tgh", "g=1,h=2,k=3", &f).is_err());
        assert!(FamilyId::parse("Sklyanin", "a=1,b=0,c=0", &f).unwrap().make(&f).is_err());
        assert!(FamilyId::parse("Sklyanin", "a=1,b=0,c=0,degenerate=1", &f).unwrap().make(&f).is_ok());
        assert!(FamilyId::parse("Sprime", "d=1,eps=0", &f).unwrap().make(&f).is_err());
        assert!(FamilyId::parse("Tabc", "alpha=1,beta=1,gamma=-2", &f).unwrap().make(&f).is_err());
    }

    #[test]
    fn regularity_verdicts() {
        let q = FieldSpec::Rationals;
        let s = |k| q.from_i64(k);
        assert!(!FamilyId::Tgh { g: s(3), h: s(0) }.is_as_regular().unwrap());
        assert!(FamilyId::SdD { d: s(2), big_d: s(3) }.is_as_regular().unwrap());
        assert!(!FamilyId::SdD { d: s(0), big_d: s(3) }.is_as_regular().unwrap());
        assert!(!FamilyId::Rq { q: s(5) }.is_as_regular().unwrap());
        assert!(!FamilyId::R0.is_as_regular().unwrap());
        assert!(!FamilyId::R1.is_as_regular().unwrap());
    }
}
