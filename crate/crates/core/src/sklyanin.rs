//! Sklyanin algebras S(a,b,c) and the twisted tensor products P(a):
//! degeneracy, elliptic point schemes, dual point schemes, skew pairs,
//! the standard-form certificate for P(a) and j-based class counts.

use serde::Serialize;

use crate::curves::{classify_cubic, group_add, Shape};
use crate::error::{Error, Result};
use crate::families::{iso::separating_invariant, sklyanin_degenerate, Certificate, FamilyId};
use crate::field::{is_prime, FieldSpec, ProjPoint, Scalar};
use crate::freealg::{brute_force_iso_search, idx, quadratic_dual, LinearMap, Presentation};
use crate::geometry::{build_mn, curve_points, gamma_points, sigma_at, GammaSet};
use crate::groebner::{center_in_degree, find_degree1_pairs, PairKind};
use crate::linalg::{self, Matrix};
use crate::poly::Poly3;

/// A point [a:b:c] of P^2, stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SklyaninParams {
    pub point: ProjPoint,
    pub degenerate_override: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegenerateClass {
    NonDegenerate,
    DegenerateS1,
    DegenerateS2,
}

impl SklyaninParams {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<SklyaninParams> {
        let point = ProjPoint::new([a, b, c]).ok_or_else(|| Error::InvalidParams("[0:0:0] is not a point".into()))?;
        Ok(SklyaninParams { point, degenerate_override: false })
    }

    pub fn from_ints(f: &FieldSpec, abc: [i64; 3]) -> Result<SklyaninParams> {
        SklyaninParams::new(f.from_i64(abc[0]), f.from_i64(abc[1]), f.from_i64(abc[2]))
    }

    pub fn allow_degenerate(mut self) -> SklyaninParams {
        self.degenerate_override = true;
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.point.field()
    }

    pub fn abc(&self) -> (&Scalar, &Scalar, &Scalar) {
        let c = self.point.coords();
        (&c[0], &c[1], &c[2])
    }

    pub fn family(&self) -> FamilyId {
        let (a, b, c) = self.abc();
        FamilyId::Sklyanin { a: a.clone(), b: b.clone(), c: c.clone(), allow_degenerate: self.degenerate_override }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        check_characteristic(&self.field())?;
        self.family().make(&self.field())
    }

    /// (a^3+b^3+c^3) xyz - abc (x^3+y^3+z^3).
    pub fn hesse_cubic(&self) -> Poly3 {
        let (a, b, c) = self.abc();
        let s = &(&a.pow(3) + &b.pow(3)) + &c.pow(3);
        let m = &(a * b) * c;
        let mut f = Poly3::monomial(s, [1, 1, 1]);
        for e in [[3, 0, 0], [0, 3, 0], [0, 0, 3]] {
            f = &f - &Poly3::monomial(m.clone(), e);
        }
        f
    }
}

/// Characteristics 2 and 3 are excluded throughout this module.
fn check_characteristic(f: &FieldSpec) -> Result<()> {
    match f.characteristic() {
        2 | 3 => Err(Error::InvalidField(format!("{f}: characteristic 2 and 3 are excluded for Sklyanin algebras"))),
        _ => Ok(()),
    }
}

pub fn degenerate_class(s: &SklyaninParams) -> DegenerateClass {
    let (a, b, c) = s.abc();
    if !sklyanin_degenerate(a, b, c) {
        DegenerateClass::NonDegenerate
    } else if a == b {
        DegenerateClass::DegenerateS1
    } else {
        DegenerateClass::DegenerateS2
    }
}

/// abc != 0 and (3abc)^3 != (a^3+b^3+c^3)^3.
pub fn is_type_ec(s: &SklyaninParams) -> Result<bool> {
    if degenerate_class(s) != DegenerateClass::NonDegenerate {
        return Err(Error::InvalidParams(format!("{} is degenerate", s.point)));
    }
    let (a, b, c) = s.abc();
    let f = s.field();
    let m = &(a * b) * c;
    let sum = &(&a.pow(3) + &b.pow(3)) + &c.pow(3);
    Ok(!m.is_zero() && (&f.from_i64(3) * &m).pow(3) != sum.pow(3))
}

/// The geometric side of `is_type_ec`: the Hesse cubic is smooth.
pub fn hesse_is_smooth(s: &SklyaninParams) -> Result<bool> {
    let f = s.hesse_cubic();
    if f.is_zero() {
        return Ok(false);
    }
    Ok(classify_cubic(&f)?.shape == Shape::Smooth)
}

/// Gamma of the quadratic dual of S(a,b,c), degenerate points allowed.
pub fn dual_gamma_report(s: &SklyaninParams) -> Result<GammaSet> {
    check_characteristic(&s.field())?;
    let p = s.clone().allow_degenerate().presentation()?;
    gamma_points(&quadratic_dual(&p))
}

/// The algebra whose Gamma parametrizes pairs (r, s) with rs = q sr in
/// S(1,b,c): its relations are the bilinear equations on the coefficient
/// vectors of r and s.
pub fn pair_equation_algebra(b: &Scalar, c: &Scalar, q: &Scalar) -> Result<Presentation> {
    let f = b.field();
    let o = f.one();
    let one_q = &o - q;
    let qc = q * c;
    let u = &o + &(b * q);
    let v = q + b;
    let (x, y, z) = (0, 1, 2);
    let rels = vec![
        vec![(one_q.clone(), x, x), (-c, y, z), (qc.clone(), z, y)],
        vec![(one_q.clone(), y, y), (-c, z, x), (qc.clone(), x, z)],
        vec![(one_q, z, z), (-c, x, y), (qc, y, x)],
        vec![(u.clone(), y, x), (-&v, x, y)],
        vec![(u.clone(), x, z), (-&v, z, x)],
        vec![(u, z, y), (-&v, y, z)],
    ];
    Presentation::from_terms(&f, ['x', 'y', 'z'], &rels)
}

#[derive(Clone, Debug, Serialize)]
pub struct SkewPairReport {
    pub c: Scalar,
    /// S(-c,-c,2), whose Gamma the pairs correspond to
    pub auxiliary: SklyaninParams,
    pub auxiliary_is_ec: bool,
    pub gamma_count: usize,
    pub pairs: Vec<(ProjPoint, ProjPoint)>,
    /// every pair satisfies rs + sr = 0 in S(1,1,c)
    pub all_anticommute: bool,
    pub all_independent: bool,
    /// the pair set and Gamma coincide as subsets of P^2 x P^2
    pub bijection: bool,
}

impl SkewPairReport {
    pub fn ok(&self) -> bool {
        self.auxiliary_is_ec && self.all_anticommute && self.all_independent && self.bijection && !self.pairs.is_empty()
    }
}

/// Independent r, s in S(1,1,c)_1 with rs = -sr, up to scaling each,
/// compared with the points of Gamma(S(-c,-c,2)).
pub fn skew_pair_analysis(c: &Scalar) -> Result<SkewPairReport> {
    let f = c.field();
    check_characteristic(&f)?;
    let params = SklyaninParams::new(f.one(), f.one(), c.clone())?;
    if degenerate_class(&params) != DegenerateClass::NonDegenerate || !is_type_ec(&params)? {
        return Err(Error::InvalidParams(format!("S(1,1,{c}) is not of type EC")));
    }
    let alg = params.presentation()?;
    let aux = SklyaninParams::new(-c, -c, f.from_i64(2))?;
    // (6c^2)^3 - (8-2c^3)^3 = 8(c^3-1)(c^3+8)^2, nonzero when S(1,1,c) is EC
    let auxiliary_is_ec = degenerate_class(&aux) == DegenerateClass::NonDegenerate && is_type_ec(&aux)?;
    let gamma = gamma_points(&aux.presentation()?)?;

    let mut pairs: Vec<(ProjPoint, ProjPoint)> = find_degree1_pairs(&alg, &PairKind::QSkew(-f.one()))?
        .into_iter()
        .map(|(r, s)| (ProjPoint::new(r).expect("nonzero"), s))
        .collect();
    pairs.sort();
    let all_anticommute = pairs.iter().all(|(r, s)| alg.contains(&product_vector(r.coords(), s.coords(), &f.one())));
    let all_independent = pairs.iter().all(|(r, s)| !linalg::cross(r.coords(), s.coords()).iter().all(Scalar::is_zero));
    let bijection = pairs == gamma.points;
    Ok(SkewPairReport {
        c: c.clone(),
        auxiliary: aux,
        auxiliary_is_ec,
        gamma_count: gamma.count,
        pairs,
        all_anticommute,
        all_independent,
        bijection,
    })
}

/// Coefficients of rs + k sr on the words idx(i,j).
fn product_vector(r: &[Scalar; 3], s: &[Scalar; 3], k: &Scalar) -> Vec<Scalar> {
    let mut v = vec![r[0].zero_like(); 9];
    for i in 0..3 {
        for j in 0..3 {
            v[idx(i, j)] = &(&r[i] * &s[j]) + &(k * &(&s[i] * &r[j]));
        }
    }
    v
}

/// Independent pairs with rs = q sr in S(a,b,c).
pub fn q_pair_search(s: &SklyaninParams, q: &Scalar) -> Result<Vec<([Scalar; 3], ProjPoint)>> {
    find_degree1_pairs(&s.presentation()?, &PairKind::QSkew(q.clone()))
}

/// Independent pairs with rs = sr - s^2 in S(a,b,c).
pub fn jordan_pair_search(s: &SklyaninParams) -> Result<Vec<([Scalar; 3], ProjPoint)>> {
    find_degree1_pairs(&s.presentation()?, &PairKind::Jordan)
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationReport {
    pub points: usize,
    /// points where sigma(P) differs from P + T
    pub failures: Vec<ProjPoint>,
    pub translation: ProjPoint,
    pub identity: ProjPoint,
}

impl TranslationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.points > 0
    }
}

fn translation_check(p: &Presentation, cubic: &Poly3, o: &ProjPoint, t: &ProjPoint) -> Result<TranslationReport> {
    let mn = build_mn(p)?;
    let pts = curve_points(&mn)?;
    let mut failures = Vec::new();
    for pt in &pts {
        if sigma_at(&mn, pt)? != group_add(cubic, o, pt, t)? {
            failures.push(pt.clone());
        }
    }
    Ok(TranslationReport { points: pts.len(), failures, translation: t.clone(), identity: o.clone() })
}

/// sigma on the Hesse cubic of an EC Sklyanin algebra is P -> P + [a:b:c]
/// in the group law with identity [1:-1:0].
pub fn sklyanin_translation_check(s: &SklyaninParams) -> Result<TranslationReport> {
    if !is_type_ec(s)? {
        return Err(Error::InvalidParams(format!("S{} is not of type EC", s.point)));
    }
    let f = s.field();
    let o = ProjPoint::from_ints(&f, [1, -1, 0]).expect("nonzero");
    translation_check(&s.presentation()?, &s.hesse_cubic(), &o, &s.point)
}

/// E_a: ar^3 - ar^2 s - 2rs^2 + 2rst + 2s^2 t - rt^2 - st^2.
pub fn pa_cubic(a: &Scalar) -> Poly3 {
    let f = a.field();
    let mut e = &Poly3::monomial(a.clone(), [3, 0, 0]) - &Poly3::monomial(a.clone(), [2, 1, 0]);
    e = &e + &Poly3::from_terms(&f, &[(-2, [1, 2, 0]), (2, [1, 1, 1]), (2, [0, 2, 1]), (-1, [1, 0, 2]), (-1, [0, 1, 2])]);
    e
}

#[derive(Clone, Debug, Serialize)]
pub struct PaSigmaReport {
    pub translation: TranslationReport,
    /// sigma_a^2 = id on E_a(F_p)
    pub involution: bool,
}

impl PaSigmaReport {
    pub fn ok(&self) -> bool {
        self.translation.ok() && self.involution
    }
}

/// sigma_a is translation by [1:1:1] with identity [0:0:1] and squares to
/// the identity.
pub fn pa_translation_check(a: &Scalar) -> Result<PaSigmaReport> {
    let f = a.field();
    check_characteristic(&f)?;
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidParams("P(a) is of type EC only for a not in {0, 1}".into()));
    }
    let p = FamilyId::Pa { a: a.clone() }.make(&f)?;
    let cubic = pa_cubic(a);
    let o = ProjPoint::from_ints(&f, [0, 0, 1]).expect("nonzero");
    let t = ProjPoint::from_ints(&f, [1, 1, 1]).expect("nonzero");
    let translation = translation_check(&p, &cubic, &o, &t)?;
    let mn = build_mn(&p)?;
    let mut involution = true;
    for pt in curve_points(&mn)? {
        involution &= sigma_at(&mn, &sigma_at(&mn, &pt)?)? == pt;
    }
    Ok(PaSigmaReport { translation, involution })
}

/// The standard-form matrix of P(a), with the scalar matrix expressing
/// [r s t]P in terms of the defining relations.
#[derive(Clone, Debug, Serialize)]
pub struct StandardFormCertificate {
    pub a: Scalar,
    /// entry (i,j) is a linear form in r, s, t
    pub p: [[[Scalar; 3]; 3]; 3],
    pub transition: Matrix,
    pub det: Scalar,
    pub symmetric: bool,
}

/// Linear form from integer coefficients and a multiple of a on one slot.
fn form(f: &FieldSpec, c: [i64; 3], a_part: Option<(usize, i64, &Scalar)>) -> [Scalar; 3] {
    let mut v = c.map(|k| f.from_i64(k));
    if let Some((i, k, a)) = a_part {
        v[i] = &v[i] + &(&f.from_i64(k) * a);
    }
    v
}

pub fn standard_form_certificate(a: &Scalar) -> Result<StandardFormCertificate> {
    let f = a.field();
    let r = 0;
    // a(s-r), t-2s+ar, s-t / ., -2t+4s-2r, t-2s+r / ., ., s-r
    let p01 = form(&f, [0, -2, 1], Some((r, 1, a)));
    let p02 = form(&f, [0, 1, -1], None);
    let p12 = form(&f, [1, -2, 1], None);
    let p = [
        [[-a, a.clone(), f.zero()], p01.clone(), p02.clone()],
        [p01, form(&f, [-2, 4, -2], None), p12.clone()],
        [p02, p12, form(&f, [-1, 1, 0], None)],
    ];
    let symmetric = (0..3).all(|i| (0..3).all(|j| p[i][j] == p[j][i]));
    let rels = FamilyId::Pa { a: a.clone() }.make(&f)?;
    let given = rels.given();
    // column j of [r s t]P: sum_i r_i P_ij, as a vector on the words
    let mut transition = vec![vec![f.zero(); 3]; 3];
    for j in 0..3 {
        let mut col = vec![f.zero(); 9];
        for i in 0..3 {
            for k in 0..3 {
                col[idx(i, k)] = &col[idx(i, k)] + &p[i][j][k];
            }
        }
        // solve sum_k c_k f_k = col
        let m: Matrix = (0..9).map(|w| (0..3).map(|k| given[k][w].clone()).chain([-&col[w]]).collect()).collect();
        let ker = linalg::kernel(&m, 4, &f);
        let v = ker
            .iter()
            .find(|v| !v[3].is_zero())
            .ok_or_else(|| Error::Undetermined(format!("column {j} of [r s t]P is not in the relation span")))?;
        let d = v[3].inv().expect("nonzero");
        for k in 0..3 {
            transition[k][j] = &v[k] * &d;
        }
    }
    let det = linalg::det(&transition);
    if det.is_zero() {
        return Err(Error::InvalidParams(format!("a = {a}: the transition matrix is singular, no standard form")));
    }
    Ok(StandardFormCertificate { a: a.clone(), p, transition, det, symmetric })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CountFamily {
    Pa,
    Tell,
}

/// Ascending coefficients of the polynomial whose roots are the parameters
/// with the given j.
fn j_polynomial(j: &Scalar, family: CountFamily) -> Vec<Scalar> {
    let f = j.field();
    let n = |k| f.from_i64(k);
    match family {
        // (x^2+14x+1)^3 - (j/16) x (x-1)^4
        CountFamily::Pa => {
            let q = [n(1), n(14), n(1)];
            let q3 = poly_mul(&poly_mul(&q, &q), &q);
            let xm1 = [n(-1), n(1)];
            let xm1_4 = poly_mul(&poly_mul(&xm1, &xm1), &poly_mul(&xm1, &xm1));
            let mut rhs = vec![f.zero()];
            rhs.extend(xm1_4);
            rhs.push(f.zero());
            let k = j / &n(16);
            q3.iter().zip(&rhs).map(|(a, b)| a - &(&k * b)).collect()
        }
        // t^3 - (j/256)(t+1), t = l + 3
        CountFamily::Tell => {
            let k = j / &n(256);
            vec![-&k, -&k, n(0), n(1)]
        }
    }
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let f = a[0].field();
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] = &out[i + k] + &(x * y);
        }
    }
    out
}

/// Roots in F_p with multiplicities, by repeated synthetic division.
fn roots_with_multiplicity(coeffs: &[Scalar]) -> Result<Vec<(Scalar, usize)>> {
    let f = coeffs[0].field();
    let mut out = Vec::new();
    for x in f.elements()? {
        let mut cur = coeffs.to_vec();
        let mut mult = 0;
        while cur.len() > 1 {
            // divide by (t - x)
            let mut q = vec![f.zero(); cur.len() - 1];
            let mut acc = f.zero();
            for i in (0..cur.len()).rev() {
                acc = &(&acc * &x) + &cur[i];
                if i > 0 {
                    q[i - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                break;
            }
            mult += 1;
            cur = q;
        }
        if mult > 0 {
            out.push((x, mult));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCount {
    pub family: CountFamily,
    pub j: Scalar,
    /// parameter values with this j, with multiplicities
    pub roots: Vec<(Scalar, usize)>,
    /// whether the polynomial splits over the field
    pub splits: bool,
    pub classes: usize,
}

/// Isomorphism classes of P(a) of type EC (a ~ 1/a) or of elliptic T(l)
/// (one class per l) with the given j, counted over the field of j.
pub fn count_iso_classes_at_j(j: &Scalar, family: CountFamily) -> Result<ClassCount> {
    let f = j.field();
    check_characteristic(&f)?;
    let poly = j_polynomial(j, family);
    let roots = roots_with_multiplicity(&poly)?;
    let degree = poly.len() - 1 - poly.iter().rev().take_while(|c| c.is_zero()).count();
    let splits = roots.iter().map(|(_, m)| m).sum::<usize>() == degree;
    let classes = match family {
        CountFamily::Pa => {
            // a and 1/a give the same algebra; count one representative per pair
            roots.iter().map(|(x, _)| x).filter(|x| !x.is_zero() && !x.is_one()).filter(|x| **x <= x.inv().expect("nonzero")).count()
        }
        CountFamily::Tell => roots.len(),
    };
    Ok(ClassCount { family, j: j.clone(), roots, splits, classes })
}

/// Scans primes p >= 5 for one where the counting polynomial of the integer
/// j splits and j stays away from 0 and 12^3 unless it equals them.
pub fn count_at_split_prime(j: i64, family: CountFamily, max_prime: u64) -> Result<(u64, ClassCount)> {
    for p in (5..=max_prime).filter(|&p| is_prime(p)) {
        let f = FieldSpec::fp(p)?;
        let js = f.from_i64(j);
        let special = [0, 1728];
        if !special.contains(&j) && special.iter().any(|&s| f.from_i64(s) == js) {
            continue;
        }
        // 0 and 12^3 must stay distinct from each other
        if f.from_i64(1728).is_zero() {
            continue;
        }
        let count = count_iso_classes_at_j(&js, family)?;
        if count.splits {
            return Ok((p, count));
        }
    }
    Err(Error::Undetermined(format!("no prime up to {max_prime} splits the counting polynomial at j = {j}")))
}

/// Witness search between P(a) and each EC algebra S(1,1,c) over a small
/// prime field. Only constructive outcomes are reported; every absence is
/// paired with the invariant that explains it, when one is found.
#[derive(Clone, Debug)]
pub struct LinkageReport {
    pub a: Scalar,
    pub searched: Vec<Scalar>,
    pub found: Vec<(Scalar, LinearMap)>,
    pub separated: Vec<(Scalar, Certificate)>,
    /// neither a witness nor a separating invariant
    pub unexplained: Vec<Scalar>,
    /// no computed invariant separates a pair with a witness
    pub invariants_consistent: bool,
}

impl LinkageReport {
    pub fn ok(&self) -> bool {
        self.invariants_consistent && self.unexplained.is_empty()
    }
}

pub fn pa_sklyanin_linkage(a: &Scalar) -> Result<LinkageReport> {
    let f = a.field();
    check_characteristic(&f)?;
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidParams("P(a) is of type EC only for a not in {0, 1}".into()));
    }
    let pa = FamilyId::Pa { a: a.clone() }.make(&f)?;
    let mut rep = LinkageReport {
        a: a.clone(),
        searched: Vec::new(),
        found: Vec::new(),
        separated: Vec::new(),
        unexplained: Vec::new(),
        invariants_consistent: true,
    };
    for c in f.elements()? {
        let s = SklyaninParams::new(f.one(), f.one(), c.clone())?;
        if degenerate_class(&s) != DegenerateClass::NonDegenerate || !is_type_ec(&s)? {
            continue;
        }
        rep.searched.push(c.clone());
        let sp = s.presentation()?;
        let sep = separating_invariant(&pa, &sp);
        match (brute_force_iso_search(&pa, &sp)?, sep) {
            (Some(phi), sep) => {
                rep.invariants_consistent &= sep.is_none();
                rep.found.push((c, phi));
            }
            (None, Some(cert)) => rep.separated.push((c, cert)),
            (None, None) => rep.unexplained.push(c),
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterCheck {
    pub dim: usize,
    /// the expected elements span the computed center
    pub matches_expected: bool,
    /// centrality verified against words up to the bound
    pub verified: bool,
    pub bound: usize,
}

impl CenterCheck {
    pub fn ok(&self, dim: usize) -> bool {
        self.dim == dim && self.matches_expected && self.verified
    }
}

fn center_check(p: &Presentation, d: usize, bound: usize, expected: &[Vec<(Scalar, Vec<usize>)>]) -> Result<CenterCheck> {
    let z = center_in_degree(p, d, bound)?;
    let exp: Vec<_> = expected.iter().map(|terms| z.gb.reduce(&z.gb.element(terms))).collect();
    Ok(CenterCheck { dim: z.dim(), matches_expected: z.gb.same_span(&exp, &z.basis), verified: z.verify(), bound })
}

/// Z(P(a))_2 against the span of r^2, s^2, t^2.
pub fn pa_center(a: &Scalar, bound: usize) -> Result<CenterCheck> {
    let f = a.field();
    let p = FamilyId::Pa { a: a.clone() }.make(&f)?;
    let o = f.one();
    center_check(&p, 2, bound, &[vec![(o.clone(), vec![0, 0])], vec![(o.clone(), vec![1, 1])], vec![(o, vec![2, 2])]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RabcCase {
    /// b^3 = a^3 != 1
    EqualCubes,
    /// b^3 = 1 != a^3
    UnitB,
}

/// R(a,b,1): the degree-3 dimension and Z_2 against the expected basis.
pub fn rabc_center(a: &Scalar, b: &Scalar, case: RabcCase, bound: usize) -> Result<(usize, CenterCheck)> {
    let f = a.field();
    check_characteristic(&f)?;
    let o = f.one();
    let (a3, b3) = (a.pow(3), b.pow(3));
    let holds = match case {
        RabcCase::EqualCubes => a3 == b3 && !b3.is_one(),
        RabcCase::UnitB => b3.is_one() && !a3.is_one(),
    };
    if !holds || (a * b).is_zero() {
        return Err(Error::InvalidParams(format!("({a}, {b}) is outside the {case:?} case")));
    }
    let lambda = &(&(&a3 + &b3) + &o) / &(&f.from_i64(3) * &(a * b));
    let p = FamilyId::Rabc { a: a.clone(), b: b.clone(), c: o.clone(), lambda }.make(&f)?;
    let dim3 = crate::groebner::hilbert_function(&p, 3)?[3];
    let expected = match case {
        // a^2 b^-2 x^2 + y^2, xy + yx
        RabcCase::EqualCubes => {
            let k = &(a * a) / &(b * b);
            vec![vec![(k, vec![0, 0]), (o.clone(), vec![1, 1])], vec![(o.clone(), vec![0, 1]), (o, vec![1, 0])]]
        }
        // xy - a xz + b yz, y^2
        RabcCase::UnitB => vec![vec![(o.clone(), vec![0, 1]), (-a, vec![0, 2]), (b.clone(), vec![1, 2])], vec![(o, vec![1, 1])]],
    };
    Ok((dim3, center_check(&p, 2, bound, &expected)?))
}

/// The dual of the pair-equation algebra, compared with S(1+bq, q+b, c(1+q)).
pub fn pair_equation_dual_matches(b: &Scalar, c: &Scalar, q: &Scalar) -> Result<bool> {
    let f = b.field();
    let o = f.one();
    let dual = quadratic_dual(&pair_equation_algebra(b, c, q)?);
    let s = FamilyId::Sklyanin { a: &o + &(b * q), b: q + b, c: c * &(&o + q), allow_degenerate: true }.make(&f)?;
    Ok(linalg::row_space(dual.relation_space()) == linalg::row_space(s.relation_space()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> FieldSpec {
        FieldSpec::fp(13).unwrap()
    }

    #[test]
    fn degenerate_classes() {
        let f = f13();
        let cls = |abc| degenerate_class(&SklyaninParams::from_ints(&f, abc).unwrap());
        assert_eq!(cls([1, 1, 1]), DegenerateClass::DegenerateS1);
        assert_eq!(cls([1, 3, 0]), DegenerateClass::NonDegenerate);
        // S(0,0,1) has relations x^2, y^2, z^2
        assert_eq!(cls([0, 0, 1]), DegenerateClass::DegenerateS1);
        assert_eq!(cls([1, 0, 0]), DegenerateClass::DegenerateS2);
        // 3^3 = 1 mod 13
        assert_eq!(cls([1, 3, 9]), DegenerateClass::DegenerateS2);
        assert!(SklyaninParams::from_ints(&f, [0, 0, 0]).is_err());
    }

    #[test]
    fn ec_predicate_matches_hesse_smoothness() {
        let f = f13();
        for a in 0..13 {
            for b in 0..13 {
                for c in [0, 1, 2, 5] {
                    let Ok(s) = SklyaninParams::from_ints(&f, [a, b, c]) else { continue };
                    if degenerate_class(&s) != DegenerateClass::NonDegenerate {
                        continue;
                    }
                    assert_eq!(is_type_ec(&s).unwrap(), hesse_is_smooth(&s).unwrap(), "{}", s.point);
                }
            }
        }
    }

    #[test]
    fn s11c_factorization() {
        let f = FieldSpec::Rationals;
        for c in -6..=6 {
            let c = f.from_i64(c);
            let lhs = &(&f.from_i64(2) + &c.pow(3)).pow(3) - &(&f.from_i64(3) * &c).pow(3);
            let c3 = c.pow(3);
            let rhs = &(&c3 - &f.one()).pow(2) * &(&c3 + &f.from_i64(8));
            assert_eq!(lhs, rhs);
            let lhs2 = &(&f.from_i64(6) * &(&c * &c)).pow(3) - &(&f.from_i64(8) - &(&f.from_i64(2) * &c3)).pow(3);
            let rhs2 = &(&f.from_i64(8) * &(&c3 - &f.one())) * &(&c3 + &f.from_i64(8)).pow(2);
            assert_eq!(lhs2, rhs2);
        }
    }

    #[test]
    fn dual_point_schemes() {
        let f7 = FieldSpec::fp(7).unwrap();
        assert_eq!(dual_gamma_report(&SklyaninParams::from_ints(&f7, [2, 3, 1]).unwrap()).unwrap().count, 0);
        assert_eq!(dual_gamma_report(&SklyaninParams::from_ints(&f7, [1, -1, 0]).unwrap()).unwrap().count, 0);
        let s1 = dual_gamma_report(&SklyaninParams::from_ints(&f7, [1, 1, 1]).unwrap()).unwrap();
        assert_eq!(s1.count, 3);
        assert!(s1.points.iter().all(|(p, q)| p == q));
    }

    #[test]
    fn skew_pairs_at_c2() {
        let f = f13();
        let rep = skew_pair_analysis(&f.from_i64(2)).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(skew_pair_analysis(&f.from_i64(1)).is_err());
    }

    #[test]
    fn no_q_pairs_off_the_diagonal_family() {
        let f = f13();
        let s = SklyaninParams::from_ints(&f, [1, 3, 2]).unwrap();
        assert!(is_type_ec(&s).unwrap());
        for q in [1, -1, 2, 3] {
            assert!(q_pair_search(&s, &f.from_i64(q)).unwrap().is_empty(), "q = {q}");
        }
        assert!(jordan_pair_search(&s).unwrap().is_empty());
    }

    #[test]
    fn sigma_is_translation() {
        let f = f13();
        let s = SklyaninParams::from_ints(&f, [1, 3, 2]).unwrap();
        let rep = sklyanin_translation_check(&s).unwrap();
        assert!(rep.ok(), "{rep:?}");
        let pa = pa_translation_check(&f.from_i64(2)).unwrap();
        assert!(pa.ok(), "{pa:?}");
    }

    #[test]
    fn pa_cubic_is_det_m_up_to_scalar() {
        let f = f13();
        let a = f.from_i64(5);
        let mn = build_mn(&FamilyId::Pa { a: a.clone() }.make(&f).unwrap()).unwrap();
        let e = pa_cubic(&a);
        let pts = f.projective_points().unwrap();
        assert!(pts.iter().all(|p| mn.det_m().vanishes_at(p.coords()) == e.vanishes_at(p.coords())));
    }

    #[test]
    fn standard_form() {
        let q = FieldSpec::Rationals;
        for a in [0, 2, 3, -1] {
            let c = standard_form_certificate(&q.from_i64(a)).unwrap();
            assert!(c.symmetric);
            assert_eq!(c.det, q.from_i64(a - 1));
            let want = linalg::from_ints(&q, &[&[a, -2, 1], &[1, -1, 0], &[-1, 2, -1]]);
            assert_eq!(c.transition, want);
        }
        assert!(standard_form_certificate(&q.one()).is_err());
    }

    #[test]
    fn class_counts() {
        for family in [CountFamily::Pa, CountFamily::Tell] {
            let counts: Vec<_> = [5, 0, 1728].iter().map(|&j| count_at_split_prime(j, family, 2000).unwrap()).collect();
            let got: Vec<usize> = counts.iter().map(|(_, c)| c.classes).collect();
            assert_eq!(got, vec![3, 1, 2], "{family:?} {counts:?}");
        }
    }

    #[test]
    fn centers() {
        let f = f13();
        assert!(pa_center(&f.from_i64(2), 4).unwrap().ok(3));
        let (d3, z) = rabc_center(&f.from_i64(4), &f.from_i64(10), RabcCase::EqualCubes, 4).unwrap();
        assert_eq!(d3, 10);
        assert!(z.ok(2), "{z:?}");
        let (d3, z) = rabc_center(&f.from_i64(2), &f.from_i64(3), RabcCase::UnitB, 4).unwrap();
        assert_eq!(d3, 10);
        assert!(z.ok(2), "{z:?}");
    }

    #[test]
    fn linkage_over_f5_is_explained() {
        // every EC S(1,1,c) over F_5 has j = 0, which no P(a) reaches there
        let f = FieldSpec::fp(5).unwrap();
        let rep = pa_sklyanin_linkage(&f.from_i64(2)).unwrap();
        assert!(rep.ok());
        assert!(rep.found.is_empty());
        assert_eq!(rep.separated.len(), rep.searched.len());
    }

    #[test]
    fn pair_equation_dual() {
        let f = f13();
        for (b, c, q) in [(2, 5, 3), (4, 1, -1), (7, 2, 2)] {
            assert!(pair_equation_dual_matches(&f.from_i64(b), &f.from_i64(c), &f.from_i64(q)).unwrap());
        }
    }
}
