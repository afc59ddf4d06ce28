//! Type labels from the point scheme (E, sigma) over a prime field.

use std::fmt;

use serde::Serialize;

use crate::curves::{self, classify_cubic, line_basis, Component, CubicClass, Shape};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, ProjPoint, Scalar};
use crate::freealg::Presentation;
use crate::geometry::{self, build_mn, is_semistandard, nondegeneracy_check, sigma_at, MnPair};
use crate::groebner::center_in_degree;
use crate::linalg::{self, Matrix};
use crate::poly::Poly3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EcSubtag {
    /// sigma(P) - P is constant
    Translation,
    /// sigma(P) + P is constant
    MinusOne,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    P1,
    P2,
    P3,
    S1,
    S2,
    S3,
    S1p,
    S2p,
    T1,
    T2,
    T3,
    Tp,
    CC,
    NC1,
    NC2,
    WL1,
    WL2,
    WL3,
    TL1,
    TL2,
    TL3,
    TL4,
    EC(EcSubtag),
    Exceptional,
    NotRegular,
}

impl TypeLabel {
    pub fn name(&self) -> &'static str {
        use TypeLabel::*;
        match self {
            P1 => "P1",
            P2 => "P2",
            P3 => "P3",
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            S1p => "S1'",
            S2p => "S2'",
            T1 => "T1",
            T2 => "T2",
            T3 => "T3",
            Tp => "T'",
            CC => "CC",
            NC1 => "NC1",
            NC2 => "NC2",
            WL1 => "WL1",
            WL2 => "WL2",
            WL3 => "WL3",
            TL1 => "TL1",
            TL2 => "TL2",
            TL3 => "TL3",
            TL4 => "TL4",
            EC(_) => "EC",
            Exceptional => "Exceptional",
            NotRegular => "NotRegular",
        }
    }

    pub fn subtag(&self) -> Option<EcSubtag> {
        match self {
            TypeLabel::EC(s) => Some(*s),
            _ => None,
        }
    }

    /// Whether the label belongs to an AS-regular algebra.
    pub fn is_regular_type(&self) -> bool {
        !matches!(self, TypeLabel::Exceptional | TypeLabel::NotRegular)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::EC(s) => write!(f, "EC ({})", serde_json::to_value(s).unwrap().as_str().unwrap()),
            t => f.write_str(t.name()),
        }
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("type", self.name())?;
        if let Some(t) = self.subtag() {
            m.serialize_entry("subtag", &t)?;
        }
        m.end()
    }
}

/// Coordinates (s,t) of w = s v1 + t v2 (up to scale) when w lies on the
/// line spanned by v1, v2.
fn line_coords(v: &[[Scalar; 3]; 2], w: &[Scalar; 3]) -> Option<[Scalar; 2]> {
    if !linalg::det(&vec![v[0].to_vec(), v[1].to_vec(), w.to_vec()]).is_zero() {
        return None;
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = &(&v[0][i] * &v[1][j]) - &(&v[0][j] * &v[1][i]);
        if let Some(di) = d.inv() {
            let s = &(&(&w[i] * &v[1][j]) - &(&w[j] * &v[1][i])) * &di;
            let t = &(&(&v[0][i] * &w[j]) - &(&v[0][j] * &w[i])) * &di;
            return Some([s, t]);
        }
    }
    None
}

/// sigma restricted to a stable line as a 2x2 matrix in the basis of
/// `line_basis`; None when sigma moves the line off itself.
fn restrict_to_line(mn: &MnPair, line: &Poly3) -> Result<Option<[[Scalar; 2]; 2]>> {
    let v = line_basis(line);
    let mid: [Scalar; 3] = std::array::from_fn(|k| &v[0][k] + &v[1][k]);
    let mut imgs = Vec::new();
    for w in [&v[0], &v[1], &mid] {
        let pt = ProjPoint::new(w.clone()).ok_or(Error::Singular)?;
        let s = sigma_at(mn, &pt)?;
        match line_coords(&v, s.coords()) {
            Some(c) => imgs.push(c),
            None => return Ok(None),
        }
    }
    let (a1, a2, a3) = (&imgs[0], &imgs[1], &imgs[2]);
    let d = &(&a1[0] * &a2[1]) - &(&a1[1] * &a2[0]);
    let di = d.inv().ok_or(Error::Undetermined("sigma collapses a line".into()))?;
    let l1 = &(&(&a3[0] * &a2[1]) - &(&a3[1] * &a2[0])) * &di;
    let l2 = &(&(&a1[0] * &a3[1]) - &(&a1[1] * &a3[0])) * &di;
    Ok(Some([[&l1 * &a1[0], &l2 * &a2[0]], [&l1 * &a1[1], &l2 * &a2[1]]]))
}

/// Binary form det[v, Av] whose roots are the fixed points of A on P^1.
fn fixed_form(a: &[[Scalar; 2]; 2]) -> [Scalar; 3] {
    [a[1][0].clone(), &a[1][1] - &a[0][0], -&a[0][1]]
}

fn binary_disc(f: &[Scalar; 3]) -> Scalar {
    &(&f[1] * &f[1]) - &(&f[0].field().from_i64(4) * &(&f[0] * &f[2]))
}

fn proportional3(a: &[Scalar; 3], b: &[Scalar; 3]) -> bool {
    linalg::rank(&vec![a.to_vec(), b.to_vec()]) <= 1
}

/// Number of distinct fixed points over the algebraic closure of a
/// projective map of P^1: None stands for "every point".
fn fixed_point_count(a: &[[Scalar; 2]; 2]) -> Option<usize> {
    let f = fixed_form(a);
    if f.iter().all(|s| s.is_zero()) {
        None
    } else if binary_disc(&f).is_zero() {
        Some(1)
    } else {
        Some(2)
    }
}

fn points_only_on(class: &CubicClass, i: usize, pts: &[ProjPoint], limit: usize) -> Vec<ProjPoint> {
    pts.iter()
        .filter(|p| {
            class.components[i].poly.vanishes_at(p.coords())
                && class.components.iter().enumerate().all(|(k, c)| k == i || !c.poly.vanishes_at(p.coords()))
        })
        .take(limit)
        .cloned()
        .collect()
}

/// Component index hit by sigma for points lying only on component i.
fn component_image(mn: &MnPair, class: &CubicClass, i: usize, pts: &[ProjPoint]) -> Result<usize> {
    let sample = points_only_on(class, i, pts, 2);
    let p = sample.first().ok_or_else(|| Error::Undetermined("component without private base-field points".into()))?;
    let q = sigma_at(mn, p)?;
    class
        .components
        .iter()
        .position(|c| c.poly.vanishes_at(q.coords()))
        .ok_or_else(|| Error::Undetermined("sigma leaves the point scheme".into()))
}

/// The matrix of sigma on P^2 when the point scheme is the whole plane.
fn plane_sigma_matrix(mn: &MnPair, field: &FieldSpec) -> Result<Matrix> {
    let o = field.one();
    let z = field.zero();
    let e = [[o.clone(), z.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), z.clone(), o.clone()]];
    let img = |c: &[Scalar; 3]| -> Result<[Scalar; 3]> { Ok(sigma_at(mn, &ProjPoint::new(c.clone()).unwrap())?.0) };
    let v: Vec<[Scalar; 3]> = e.iter().map(img).collect::<Result<_>>()?;
    let w = img(&[o.clone(), o.clone(), o])?;
    // w = sum lambda_i v_i
    let cols: Matrix = (0..3).map(|r| (0..3).map(|i| v[i][r].clone()).collect()).collect();
    let inv = linalg::inverse(&cols).ok_or(Error::Undetermined("sigma is not a projectivity".into()))?;
    let lam: Vec<Scalar> = (0..3).map(|i| linalg::dot(&inv[i], &w)).collect();
    Ok((0..3).map(|r| (0..3).map(|i| &lam[i] * &v[i][r]).collect()).collect())
}

fn is_scalar_matrix(m: &Matrix) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { m[i][i] == m[0][0] } else { m[i][j].is_zero() }))
}

fn flat(m: &Matrix) -> Vec<Scalar> {
    m.iter().flatten().cloned().collect()
}

/// P1 when diagonalizable over the closure, P2 for a Jordan block of size
/// two, P3 for a single block of size three.
fn plane_type(s: &Matrix, field: &FieldSpec) -> TypeLabel {
    if is_scalar_matrix(s) {
        return TypeLabel::P1;
    }
    let id = linalg::identity(field, 3);
    let s2 = linalg::mat_mul(s, s);
    let span = vec![flat(&id), flat(s)];
    if linalg::in_span(&linalg::row_space(&span), &flat(&s2)) {
        // minimal polynomial of degree two: t^2 - p t - q
        let n = |k| field.from_i64(k);
        let coeffs = solve_combination(&[flat(&id), flat(s)], &flat(&s2));
        let (q, p) = (&coeffs[0], &coeffs[1]);
        let disc = &(p * p) + &(&n(4) * q);
        return if disc.is_zero() { TypeLabel::P2 } else { TypeLabel::P1 };
    }
    // minimal polynomial equals the characteristic polynomial t^3 + a t^2 + b t + c
    let s3 = linalg::mat_mul(&s2, s);
    let coeffs = solve_combination(&[flat(&id), flat(s), flat(&s2)], &flat(&s3));
    let (c, b, a) = (-&coeffs[0], -&coeffs[1], -&coeffs[2]);
    let n = |k| field.from_i64(k);
    let disc = &(&(&(&(&(&a * &a) * &(&b * &b)) - &(&n(4) * &b.pow(3))) - &(&(&n(4) * &a.pow(3)) * &c)) - &(&n(27) * &(&c * &c)))
        + &(&(&(&n(18) * &a) * &b) * &c);
    if !disc.is_zero() {
        return TypeLabel::P1;
    }
    // repeated root: a single eigenvalue exactly when (S - lambda)^3 = 0 with lambda = -a/3
    let lam = &(-&a) / &n(3);
    let shifted: Matrix = (0..3).map(|i| (0..3).map(|j| if i == j { &s[i][j] - &lam } else { s[i][j].clone() }).collect()).collect();
    let cube = linalg::mat_mul(&linalg::mat_mul(&shifted, &shifted), &shifted);
    if cube.iter().flatten().all(Scalar::is_zero) {
        TypeLabel::P3
    } else {
        TypeLabel::P2
    }
}

/// Coefficients c with sum c_i basis_i = target (target in the span).
fn solve_combination(basis: &[Vec<Scalar>], target: &[Scalar]) -> Vec<Scalar> {
    let f = target[0].field();
    let n = basis.len();
    let mut aug: Matrix = (0..target.len())
        .map(|r| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    let mut out = vec![f.zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        if c < n {
            out[c] = aug[r][n].clone();
        }
    }
    out
}

/// Checks sigma(P) (+/-) P against a constant over the smooth base-field points.
fn group_law_subtag(mn: &MnPair, f: &Poly3) -> Result<EcSubtag> {
    let pts = curves::smooth_points(f)?;
    let o = pts.first().ok_or_else(|| Error::Undetermined("no smooth base-field point".into()))?;
    let mut sums = Vec::new();
    let mut diffs = Vec::new();
    for p in &pts {
        let s = sigma_at(mn, p)?;
        sums.push(curves::group_add(f, o, &s, p)?);
        diffs.push(curves::group_sub(f, o, &s, p)?);
    }
    let minus = sums.iter().all(|q| *q == sums[0]);
    let trans = diffs.iter().all(|q| *q == diffs[0]);
    match (minus, trans) {
        (true, false) => Ok(EcSubtag::MinusOne),
        (false, true) => Ok(EcSubtag::Translation),
        (false, false) => Ok(EcSubtag::Other),
        (true, true) => Err(Error::Undetermined("too few points to separate the group-law tests".into())),
    }
}

fn quad_on_line(q: &Poly3, line: &Poly3) -> [Scalar; 3] {
    let [v1, v2] = line_basis(line);
    let mid: [Scalar; 3] = std::array::from_fn(|k| &v1[k] + &v2[k]);
    let (a, c) = (q.eval(&v1), q.eval(&v2));
    let b = &(&q.eval(&mid) - &a) - &c;
    [a, b, c]
}

fn permutation_type(perm: &[usize]) -> usize {
    perm.iter().enumerate().filter(|(i, &j)| *i == j).count()
}

/// Type of a quadratic algebra on three generators from its point scheme
/// over a prime field. Algebras that are not semi-standard or have a
/// degenerate base-field point are reported NotRegular.
pub fn classify_type(p: &Presentation) -> Result<TypeLabel> {
    if !p.field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let mn = build_mn(p)?;
    if is_semistandard(&mn).is_none() {
        return Ok(TypeLabel::NotRegular);
    }
    if !nondegeneracy_check(&mn)?.nondegenerate {
        return Ok(TypeLabel::NotRegular);
    }
    let det = mn.det_m();
    if det.is_zero() {
        return Ok(plane_type(&plane_sigma_matrix(&mn, &p.field)?, &p.field));
    }
    let class = classify_cubic(&det)?;
    let pts = p.field.projective_points()?;
    let comps: &[Component] = &class.components;
    match class.shape {
        Shape::WholePlane => unreachable!("det M is nonzero"),
        Shape::Triangle | Shape::ConcurrentLines => {
            if !class.split || comps.len() != 3 {
                return Err(Error::Undetermined("lines of the point scheme are not all defined over the base field".into()));
            }
            let perm: Vec<usize> = (0..3).map(|i| component_image(&mn, &class, i, &pts)).collect::<Result<_>>()?;
            let fixed = permutation_type(&perm);
            let tri = class.shape == Shape::Triangle;
            Ok(match (fixed, tri) {
                (3, true) => TypeLabel::S1,
                (1, true) => TypeLabel::S2,
                (0, true) => TypeLabel::S3,
                (3, false) => TypeLabel::T1,
                (1, false) => TypeLabel::T2,
                (0, false) => TypeLabel::T3,
                _ => return Err(Error::Undetermined("sigma does not permute the lines".into())),
            })
        }
        Shape::LineConicSecant | Shape::LineConicTangent => {
            let li = comps.iter().position(|c| c.kind == curves::ComponentKind::Line).unwrap();
            let qi = 1 - li;
            let a = match restrict_to_line(&mn, &comps[li].poly)? {
                Some(a) => a,
                None => return Ok(TypeLabel::Exceptional),
            };
            if class.shape == Shape::LineConicTangent {
                return Ok(TypeLabel::Tp);
            }
            let fixed = fixed_form(&a);
            let q = quad_on_line(&comps[qi].poly, &comps[li].poly);
            if fixed.iter().all(Scalar::is_zero) || proportional3(&fixed, &q) {
                Ok(TypeLabel::S1p)
            } else {
                Ok(TypeLabel::S2p)
            }
        }
        Shape::DoubleLineLine => {
            let di = comps.iter().position(|c| c.multiplicity == 2).unwrap();
            let a = restrict_to_line(&mn, &comps[di].poly)?
                .ok_or_else(|| Error::Undetermined("sigma moves the double line".into()))?;
            Ok(match fixed_point_count(&a) {
                None => TypeLabel::WL2,
                Some(1) => TypeLabel::WL3,
                _ => TypeLabel::WL1,
            })
        }
        Shape::TripleLine => {
            let a = restrict_to_line(&mn, &comps[0].poly)?
                .ok_or_else(|| Error::Undetermined("sigma moves the triple line".into()))?;
            if fixed_point_count(&a).is_some() {
                return Ok(TypeLabel::TL2);
            }
            let z1 = center_in_degree(p, 1, 3)?.dim();
            Ok(if z1 > 0 { TypeLabel::TL1 } else { TypeLabel::TL4 })
        }
        Shape::Nodal => Ok(match group_law_subtag(&mn, &det)? {
            EcSubtag::MinusOne => TypeLabel::NC2,
            EcSubtag::Translation => TypeLabel::NC1,
            EcSubtag::Other => return Err(Error::Undetermined("sigma is not a group-law map on the nodal cubic".into())),
        }),
        Shape::Cuspidal => Ok(TypeLabel::CC),
        Shape::Smooth => Ok(TypeLabel::EC(group_law_subtag(&mn, &det)?)),
    }
}

/// Order of sigma on the base-field points of the point scheme, up to `bound`.
pub fn sigma_order_label(p: &Presentation, bound: usize) -> Result<Option<usize>> {
    let mn = build_mn(p)?;
    geometry::sigma_order(&mn, bound)
}
