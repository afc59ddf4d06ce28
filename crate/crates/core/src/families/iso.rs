use serde::Serialize;
use serde_json::{json, Value};

use crate::curves::classify_cubic;
use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::freealg::{brute_force_iso_search, is_iso_witness, LinearMap, Presentation};
use crate::geometry::build_mn;
use crate::groebner::{center_in_degree, hilbert_function};

use super::witness::{pa_invert_map, tabc_cycle_map};
use super::{classify_type, sigma_order_label, tell_params, FamilyId};

/// Largest prime at which an undecided pair falls back to exhaustive search.
pub const SEARCH_PRIME: u64 = 5;

const SIGMA_BOUND: usize = 400;

/// A quantity that takes different values on the two algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug)]
pub enum IsoDecision {
    /// witness maps the relations of the first algebra onto the second's
    Isomorphic(LinearMap),
    Distinct(Certificate),
    Undecided(String),
}

impl IsoDecision {
    pub fn verdict(&self) -> &'static str {
        match self {
            IsoDecision::Isomorphic(_) => "isomorphic",
            IsoDecision::Distinct(_) => "distinct",
            IsoDecision::Undecided(_) => "undecided",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            IsoDecision::Isomorphic(m) => json!({"verdict": "isomorphic", "witness": m.to_json()}),
            IsoDecision::Distinct(c) => json!({"verdict": "distinct", "certificate": c}),
            IsoDecision::Undecided(why) => json!({"verdict": "undecided", "reason": why}),
        }
    }
}

/// The invariants compared before any family criterion, in order.
fn invariant_list(p: &Presentation) -> Vec<(&'static str, Result<String>)> {
    let mut out: Vec<(&'static str, Result<String>)> = vec![
        ("Hilbert function to degree 4", hilbert_function(p, 4).map(|h| format!("{h:?}"))),
        ("center dimension in degree 1", center_in_degree(p, 1, 3).map(|c| c.dim().to_string())),
        ("center dimension in degree 2", center_in_degree(p, 2, 4).map(|c| c.dim().to_string())),
    ];
    if p.field.is_finite() {
        out.push(("point-scheme type", classify_type(p).map(|t| t.to_string())));
        out.push((
            "sigma order on E(F_p)",
            sigma_order_label(p, SIGMA_BOUND).map(|o| o.map_or(format!("> {SIGMA_BOUND}"), |o| o.to_string())),
        ));
        out.push((
            "j-invariant of the point scheme",
            build_mn(p).and_then(|mn| {
                let det = mn.det_m();
                if det.is_zero() {
                    return Ok("none".into());
                }
                classify_cubic(&det).map(|c| c.j.map_or("none".into(), |j| j.to_string()))
            }),
        ));
    }
    out
}

/// First invariant that is computable on both sides and differs.
pub fn separating_invariant(a: &Presentation, b: &Presentation) -> Option<Certificate> {
    let (la, lb) = (invariant_list(a), invariant_list(b));
    la.into_iter().zip(lb).find_map(|((name, x), (_, y))| match (x, y) {
        (Ok(x), Ok(y)) if x != y => Some(Certificate { invariant: name.into(), left: x, right: y }),
        _ => None,
    })
}

fn criterion(name: &str, left: impl ToString, right: impl ToString) -> Certificate {
    Certificate { invariant: format!("classifying criterion: {name}"), left: left.to_string(), right: right.to_string() }
}

fn diag(f: &FieldSpec, d: [Scalar; 3]) -> LinearMap {
    let [x, y, z] = d;
    LinearMap::from_images([[x, f.zero(), f.zero()], [f.zero(), y, f.zero()], [f.zero(), f.zero(), z]])
}

fn swap_xy(f: &FieldSpec) -> LinearMap {
    LinearMap::from_ints(f, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
}

enum Criterion {
    Iso(Option<LinearMap>, &'static str),
    Distinct(Certificate),
    None,
}

/// Decides whether two named algebras are isomorphic as graded algebras.
///
/// Family criteria are applied when both sides lie in a family with a known
/// classification; isomorphic verdicts always carry a verified witness, and
/// a distinct verdict prefers a computed invariant over the criterion itself.
pub fn iso_decide(a: &FamilyId, b: &FamilyId, field: &FieldSpec) -> Result<IsoDecision> {
    let (pa, pb) = (a.make(field)?, b.make(field)?);
    let crit = family_criterion(a, b, field)?;
    match crit {
        Criterion::Iso(Some(m), _) => {
            if is_iso_witness(&m, &pa, &pb) {
                return Ok(IsoDecision::Isomorphic(m));
            }
            Ok(IsoDecision::Undecided("criterion holds but the constructed map does not verify".into()))
        }
        Criterion::Iso(None, why) => Ok(search_or_undecided(&pa, &pb, why)?),
        Criterion::Distinct(cert) => Ok(IsoDecision::Distinct(separating_invariant(&pa, &pb).unwrap_or(cert))),
        Criterion::None => {
            if let Some(c) = separating_invariant(&pa, &pb) {
                return Ok(IsoDecision::Distinct(c));
            }
            search_or_undecided(&pa, &pb, "no family criterion and the invariants agree")
        }
    }
}

/// Exhaustive search is trusted only for finding witnesses: absence over
/// F_p says nothing about the algebraic closure.
fn search_or_undecided(pa: &Presentation, pb: &Presentation, why: &str) -> Result<IsoDecision> {
    if let FieldSpec::PrimeField { p } = pa.field {
        if p <= SEARCH_PRIME {
            if let Some(m) = brute_force_iso_search(pa, pb)? {
                return Ok(IsoDecision::Isomorphic(m));
            }
            return Ok(IsoDecision::Undecided(format!("{why}; no witness over F_{p}")));
        }
    }
    Ok(IsoDecision::Undecided(why.into()))
}

fn family_criterion(a: &FamilyId, b: &FamilyId, f: &FieldSpec) -> Result<Criterion> {
    use FamilyId::*;
    let id = || Criterion::Iso(Some(LinearMap::identity(f)), "");
    Ok(match (a, b) {
        (Tell { l }, _) => {
            let (g, h) = tell_params(l);
            return family_criterion(&Tgh { g, h }, b, f);
        }
        (_, Tell { l }) => {
            let (g, h) = tell_params(l);
            return family_criterion(a, &Tgh { g, h }, f);
        }
        (Tgh { g, h }, Tgh { g: g2, h: h2 }) => tgh_criterion(f, g, h, g2, h2),
        (SdD { d, big_d }, SdD { d: d2, big_d: e2 }) => {
            if !a.is_as_regular()? || !b.is_as_regular()? {
                Criterion::None
            } else if d == d2 && big_d == e2 {
                id()
            } else if d == e2 && big_d == d2 {
                Criterion::Iso(Some(swap_xy(f)), "")
            } else {
                Criterion::Distinct(criterion("unordered pair {d, D}", format!("{{{d}, {big_d}}}"), format!("{{{d2}, {e2}}}")))
            }
        }
        (Sprime { d, eps }, Sprime { d: d2, eps: e2 }) => {
            if eps != e2 {
                Criterion::Distinct(criterion("eps", eps, e2))
            } else if d == d2 {
                id()
            } else if !d.is_zero() && Some(d2) == d.inv().as_ref() {
                match (-d).sqrt() {
                    Some(k) => Criterion::Iso(
                        Some(LinearMap::from_images([
                            [f.zero(), f.zero(), f.one()],
                            [f.zero(), k, f.zero()],
                            [f.one(), f.zero(), f.zero()],
                        ])),
                        "",
                    ),
                    None => Criterion::Iso(None, "the witness needs sqrt(-d), which is not in the field"),
                }
            } else {
                Criterion::Distinct(criterion("d up to inversion", d, d2))
            }
        }
        (Tabc { alpha, beta, gamma }, Tabc { alpha: a2, beta: b2, gamma: c2 }) => {
            tabc_criterion(f, [alpha.clone(), beta.clone(), gamma.clone()], [a2.clone(), b2.clone(), c2.clone()])
        }
        (Wge { gamma, eps }, Wge { gamma: g2, eps: e2 }) => {
            if gamma == g2 && eps == e2 {
                id()
            } else {
                Criterion::Distinct(criterion("(gamma, eps)", format!("({gamma}, {eps})"), format!("({g2}, {e2})")))
            }
        }
        (L { e1, e2 }, L { e1: f1, e2: f2 }) => {
            if e1 == f1 && e2 == f2 {
                id()
            } else {
                Criterion::Distinct(criterion("(e1, e2)", format!("({e1}, {e2})"), format!("({f1}, {f2})")))
            }
        }
        (Peps { eps }, Peps { eps: e2 }) => {
            if eps == e2 {
                id()
            } else {
                Criterion::Distinct(criterion("eps", eps, e2))
            }
        }
        (Rq { q }, Rq { q: q2 }) => {
            if q == q2 {
                id()
            } else {
                Criterion::Distinct(criterion("q", q, q2))
            }
        }
        (Wd { d }, Wd { d: d2 }) => {
            if d == d2 {
                id()
            } else if !a.is_as_regular()? || !b.is_as_regular()? {
                Criterion::None
            } else {
                Criterion::Distinct(criterion("d", d, d2))
            }
        }
        (Pa { a: x }, Pa { a: y }) => pa_criterion(f, x, y),
        (U, Uprime) | (Uprime, U) => Criterion::Distinct(criterion("reducibility of the conic part", a, b)),
        _ if a == b => id(),
        _ => Criterion::None,
    })
}

fn tgh_criterion(f: &FieldSpec, g: &Scalar, h: &Scalar, g2: &Scalar, h2: &Scalar) -> Criterion {
    match (h.is_zero(), h2.is_zero()) {
        (false, false) => {
            if (&(g * g) * h2) != (&(g2 * g2) * h) {
                return Criterion::Distinct(criterion(
                    "g^2/h",
                    &(g * g) / h,
                    &(g2 * g2) / h2,
                ));
            }
            // x -> alpha x, y -> beta y with alpha^2 = beta
            let beta = if g.is_zero() { (h2 / h).sqrt() } else { Some(g2 / g) };
            match beta.and_then(|b| b.sqrt().map(|al| (al, b))) {
                Some((al, b)) => Criterion::Iso(Some(diag(f, [al, b, f.one()])), ""),
                None => Criterion::Iso(None, "the rescaling witness needs a root not in the field"),
            }
        }
        (true, true) => match (g.is_zero(), g2.is_zero()) {
            (true, true) => Criterion::Iso(Some(LinearMap::identity(f)), ""),
            (false, false) => {
                // both go to T(1,0) by x -> kx, z -> g z with k^2 = g
                let to_one = |g: &Scalar| g.sqrt().map(|k| diag(f, [k, f.one(), g.clone()]));
                match (to_one(g), to_one(g2)) {
                    (Some(m1), Some(m2)) => Criterion::Iso(Some(m2.inverse().unwrap().compose(&m1)), ""),
                    _ => Criterion::Iso(None, "the witness needs sqrt(g), which is not in the field"),
                }
            }
            _ => Criterion::Distinct(criterion("g = 0", g.is_zero(), g2.is_zero())),
        },
        _ => Criterion::Distinct(criterion("h = 0", h.is_zero(), h2.is_zero())),
    }
}

/// The six coordinate permutations of T(alpha,beta,gamma), each with the
/// algebra map realizing it.
fn tabc_orbit(f: &FieldSpec, p: [Scalar; 3]) -> Vec<([Scalar; 3], LinearMap)> {
    let cyc = tabc_cycle_map(f);
    let swap = swap_xy(f);
    let mut out = Vec::new();
    let mut cur = (p, LinearMap::identity(f));
    for _ in 0..3 {
        let [a, b, c] = cur.0.clone();
        out.push(cur.clone());
        out.push(([b, a, c], swap.compose(&cur.1)));
        let [a, b, c] = cur.0;
        cur = ([c, a, b], cyc.compose(&cur.1));
    }
    out
}

fn tabc_criterion(f: &FieldSpec, p: [Scalar; 3], q: [Scalar; 3]) -> Criterion {
    for (perm, map) in tabc_orbit(f, p.clone()) {
        // perm = k^{-1} q for a single nonzero k
        let pivot = (0..3).find(|&i| !perm[i].is_zero());
        let Some(i) = pivot else { continue };
        if q[i].is_zero() {
            continue;
        }
        let k = &q[i] / &perm[i];
        if (0..3).all(|j| (&perm[j] * &k) == q[j]) {
            // z -> z/k multiplies the parameters by k
            let scale = diag(f, [f.one(), f.one(), k.inv().unwrap()]);
            return Criterion::Iso(Some(scale.compose(&map)), "");
        }
    }
    let show = |v: &[Scalar; 3]| format!("[{}:{}:{}]", v[0], v[1], v[2]);
    Criterion::Distinct(criterion("[alpha:beta:gamma] up to permutation", show(&p), show(&q)))
}

/// j of the point scheme of P(a): 16(a^2+14a+1)^3 / (a(a-1)^4).
pub fn pa_j(a: &Scalar) -> Option<Scalar> {
    let f = a.field();
    let n = |k| f.from_i64(k);
    let q = &(&(a * a) + &(&n(14) * a)) + &n(1);
    let am1 = a - &n(1);
    let den = &(a * &am1.pow(2)) * &am1.pow(2);
    den.inv().map(|di| &(&n(16) * &q.pow(3)) * &di)
}

fn pa_criterion(f: &FieldSpec, a: &Scalar, b: &Scalar) -> Criterion {
    let bad = |x: &Scalar| x.is_zero() || x.is_one();
    if bad(a) || bad(b) {
        return Criterion::None;
    }
    if a == b {
        return Criterion::Iso(Some(LinearMap::identity(f)), "");
    }
    if Some(b) == a.inv().as_ref() {
        return match a.sqrt() {
            Some(k) => Criterion::Iso(Some(pa_invert_map(&k)), ""),
            None => Criterion::Iso(None, "the witness needs sqrt(a), which is not in the field"),
        };
    }
    let (ja, jb) = (pa_j(a), pa_j(b));
    if ja != jb {
        let show = |j: Option<Scalar>| j.map_or("undefined".into(), |j| j.to_string());
        return Criterion::Distinct(Certificate {
            invariant: "j-invariant of the point scheme".into(),
            left: show(ja),
            right: show(jb),
        });
    }
    Criterion::Iso(None, "j-invariants agree but a' is not in {a, 1/a}; non-isomorphism is not certified over the closure")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str, f: &FieldSpec) -> FamilyId {
        let (n, p) = s.split_once(':').unwrap();
        FamilyId::parse(n, p, f).unwrap()
    }

    fn decide(a: &str, b: &str, f: &FieldSpec) -> IsoDecision {
        iso_decide(&fam(a, f), &fam(b, f), f).unwrap()
    }

    #[test]
    fn tgh_criterion_builds_witnesses() {
        let f = FieldSpec::fp(13).unwrap();
        // g^2 h' = g'^2 h with beta = g'/g = 4 a square
        assert!(matches!(decide("Tgh:g=1,h=2", "Tgh:g=4,h=32", &f), IsoDecision::Isomorphic(_)));
        assert!(matches!(decide("Tgh:g=3,h=0", "Tgh:g=4,h=0", &f), IsoDecision::Isomorphic(_)));
        assert!(matches!(decide("Tgh:g=1,h=0", "Tgh:g=0,h=0", &f), IsoDecision::Distinct(_)));
        assert!(matches!(decide("Tell:l=2", "Tell:l=3", &f), IsoDecision::Distinct(_)));
    }

    #[test]
    fn sdd_and_sprime() {
        let f = FieldSpec::fp(13).unwrap();
        assert!(matches!(decide("SdD:d=2,D=3", "SdD:d=3,D=2", &f), IsoDecision::Isomorphic(_)));
        assert!(matches!(decide("SdD:d=2,D=3", "SdD:d=2,D=4", &f), IsoDecision::Distinct(_)));
        // -2 = 11 is not a square mod 13, -3 = 10 is: 6^2 = 36 = 10
        assert!(matches!(decide("Sprime:d=3,eps=1", "Sprime:d=9,eps=1", &f), IsoDecision::Isomorphic(_)));
        assert!(matches!(decide("Sprime:d=0,eps=0", "Sprime:d=0,eps=1", &f), IsoDecision::Distinct(_)));
    }

    #[test]
    fn tabc_permutations_and_scaling() {
        let f = FieldSpec::fp(13).unwrap();
        let base = "Tabc:alpha=1,beta=2,gamma=5";
        for other in ["Tabc:alpha=5,beta=1,gamma=2", "Tabc:alpha=2,beta=1,gamma=5", "Tabc:alpha=10,beta=4,gamma=2"] {
            assert!(matches!(decide(base, other, &f), IsoDecision::Isomorphic(_)), "{other}");
        }
        assert!(matches!(decide(base, "Tabc:alpha=1,beta=2,gamma=6", &f), IsoDecision::Distinct(_)));
    }

    #[test]
    fn pa_inversion_and_j() {
        let f = FieldSpec::fp(13).unwrap();
        // 4 = 2^2, 1/4 = 10
        assert!(matches!(decide("Pa:a=4", "Pa:a=10", &f), IsoDecision::Isomorphic(_)));
        let q = FieldSpec::Rationals;
        for (a, b) in [(2, 3), (2, 5), (3, 7)] {
            let ja = pa_j(&q.from_i64(a)).unwrap();
            let jb = pa_j(&q.from_i64(b)).unwrap();
            assert_ne!(ja, jb);
        }
        assert_eq!(pa_j(&q.from_i64(2)), pa_j(&q.from_ratio(1, 2).unwrap()));
    }

    #[test]
    fn u_and_uprime_are_separated_by_an_invariant() {
        let f = FieldSpec::fp(7).unwrap();
        match decide("U:", "Uprime:", &f) {
            IsoDecision::Distinct(c) => assert!(!c.invariant.starts_with("classifying")),
            d => panic!("{d:?}"),
        }
    }
}
