//! Plane cubics: decomposition over F_p, singularities, Weierstrass
//! invariants and the chord-tangent group law.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ProjPoint, Scalar};
use crate::linalg;
use crate::poly::Poly3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shape {
    WholePlane,
    Triangle,
    ConcurrentLines,
    /// line and smooth conic meeting in two points
    LineConicSecant,
    /// line tangent to a smooth conic
    LineConicTangent,
    DoubleLineLine,
    TripleLine,
    Nodal,
    Cuspidal,
    Smooth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    Line,
    Conic,
    /// rank-2 conic with no F_p linear factor: two conjugate lines
    ConjugateLines,
    /// cubic with no F_p linear factor but split over an extension
    ConjugateLineTriple,
    Cubic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub form: String,
    #[serde(skip)]
    pub poly: Poly3,
    pub multiplicity: u32,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicClass {
    pub shape: Shape,
    pub components: Vec<Component>,
    /// every component is defined over the base field
    pub split: bool,
    pub singular_points: Vec<ProjPoint>,
    /// base-field points lying on at least two components
    pub intersections: Vec<ProjPoint>,
    pub j: Option<Scalar>,
}

impl CubicClass {
    pub fn lines(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.kind == ComponentKind::Line)
    }
}

fn symmetric_matrix(q: &Poly3) -> Vec<Vec<Scalar>> {
    let f = q.field();
    let half = f.from_i64(2).inv().unwrap();
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut e = [0u32; 3];
                    e[i] += 1;
                    e[j] += 1;
                    if i == j {
                        q.coeff(e)
                    } else {
                        &q.coeff(e) * &half
                    }
                })
                .collect()
        })
        .collect()
}

pub fn conic_rank(q: &Poly3) -> usize {
    linalg::rank(&symmetric_matrix(q))
}

fn line_coeffs(l: &Poly3) -> [Scalar; 3] {
    std::array::from_fn(|i| {
        let mut e = [0; 3];
        e[i] = 1;
        l.coeff(e)
    })
}

/// Two points spanning the line l = 0.
pub fn line_basis(l: &Poly3) -> [[Scalar; 3]; 2] {
    let c = line_coeffs(l);
    let f = l.field();
    let e: Vec<[Scalar; 3]> =
        (0..3).map(|i| std::array::from_fn(|k| if k == i { f.one() } else { f.zero() })).collect();
    let mut out = Vec::new();
    for ei in &e {
        let v = linalg::cross(&c, ei);
        if v.iter().any(|s| !s.is_zero()) && (out.is_empty() || linalg::cross(&out[0], &v).iter().any(|s| !s.is_zero())) {
            out.push(v);
        }
        if out.len() == 2 {
            break;
        }
    }
    [out[0].clone(), out[1].clone()]
}

/// Discriminant of the binary quadratic q restricted to the line l = 0.
pub fn restriction_discriminant(q: &Poly3, l: &Poly3) -> Scalar {
    let [v1, v2] = line_basis(l);
    let f = q.field();
    let a = q.eval(&v1);
    let c = q.eval(&v2);
    let mid: [Scalar; 3] = std::array::from_fn(|k| &v1[k] + &v2[k]);
    let b = &(&q.eval(&mid) - &a) - &c;
    &(&b * &b) - &(&f.from_i64(4) * &(&a * &c))
}

/// A form of degree <= 3 vanishing at four points of a line contains it.
fn vanishes_on_line(f: &Poly3, l: &Poly3) -> bool {
    let [v1, v2] = line_basis(l);
    let two = l.field().from_i64(2);
    let pts: [[Scalar; 3]; 2] = [std::array::from_fn(|k| &v1[k] + &v2[k]), std::array::from_fn(|k| &v1[k] + &(&two * &v2[k]))];
    f.vanishes_at(&v1) && f.vanishes_at(&v2) && pts.iter().all(|p| f.vanishes_at(p))
}

fn hessian_at(f: &Poly3, p: &[Scalar; 3]) -> Vec<Vec<Scalar>> {
    (0..3).map(|i| (0..3).map(|j| f.partial(i).partial(j).eval(p)).collect()).collect()
}

fn is_singular(f: &Poly3, grad: &[Poly3; 3], p: &[Scalar; 3]) -> bool {
    f.vanishes_at(p) && grad.iter().all(|g| g.vanishes_at(p))
}

/// Decomposes and classifies a cubic form over a prime field.
pub fn classify_cubic(f: &Poly3) -> Result<CubicClass> {
    if !f.field().is_finite() {
        return Err(Error::InfiniteField);
    }
    let lines: Vec<Poly3> = f
        .field()
        .projective_points()?
        .into_iter()
        .map(|p| Poly3::linear(p.coords()).with_vars(f.vars()))
        .collect();
    let pts = f.field().projective_points()?;
    classify_cubic_with(f, &lines, Some(&pts))
}

/// Classification using the supplied candidate linear factors; singular
/// points and point counts need the full list of base-field points.
pub fn classify_cubic_with(f: &Poly3, candidates: &[Poly3], points: Option<&[ProjPoint]>) -> Result<CubicClass> {
    let field = f.field().clone();
    if f.is_zero() {
        return Ok(CubicClass {
            shape: Shape::WholePlane,
            components: vec![],
            split: true,
            singular_points: vec![],
            intersections: vec![],
            j: None,
        });
    }
    if !(f.is_homogeneous() && f.degree() == Some(3)) {
        return Err(Error::InvalidParams(format!("not a cubic form: {f}")));
    }
    let mut rest = f.clone();
    let mut comps: Vec<Component> = Vec::new();
    for l in candidates {
        if !vanishes_on_line(&rest, l) {
            continue;
        }
        let mut mult = 0;
        while let Some(q) = rest.divide_if_divides(l) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            let l = monic_line(l);
            comps.push(Component { form: l.to_string(), poly: l, multiplicity: mult, kind: ComponentKind::Line });
        }
    }
    let line_deg: u32 = comps.iter().map(|c| c.multiplicity).sum();
    let grad = f.gradient();
    let singular_points: Vec<ProjPoint> =
        points.map(|ps| ps.iter().filter(|p| is_singular(f, &grad, p.coords())).cloned().collect()).unwrap_or_default();
    let mut split = true;
    let mut j = None;
    let shape = match line_deg {
        3 => match comps.len() {
            1 => Shape::TripleLine,
            2 => Shape::DoubleLineLine,
            _ => {
                let m: Vec<Vec<Scalar>> = comps.iter().map(|c| line_coeffs(&c.poly).to_vec()).collect();
                if linalg::det(&m).is_zero() {
                    Shape::ConcurrentLines
                } else {
                    Shape::Triangle
                }
            }
        },
        1 => {
            let q = rest.clone();
            let l = comps[0].poly.clone();
            match conic_rank(&q) {
                3 => {
                    comps.push(Component { form: q.to_string(), poly: q.clone(), multiplicity: 1, kind: ComponentKind::Conic });
                    if restriction_discriminant(&q, &l).is_zero() {
                        Shape::LineConicTangent
                    } else {
                        Shape::LineConicSecant
                    }
                }
                2 => {
                    split = false;
                    let vertex = linalg::kernel(&symmetric_matrix(&q), 3, &field);
                    let v: [Scalar; 3] = std::array::from_fn(|k| vertex[0][k].clone());
                    comps.push(Component { form: q.to_string(), poly: q, multiplicity: 1, kind: ComponentKind::ConjugateLines });
                    if l.vanishes_at(&v) {
                        Shape::ConcurrentLines
                    } else {
                        Shape::Triangle
                    }
                }
                _ => return Err(Error::Undetermined(format!("double line over an extension in {f}"))),
            }
        }
        0 => {
            let Some(ps) = points else {
                return Err(Error::Undetermined(format!("no candidate factor or point list for {f}")));
            };
            if let Some(s) = singular_points.first() {
                let r = linalg::rank(&hessian_at(f, s.coords()));
                match r {
                    2 => Shape::Nodal,
                    1 => Shape::Cuspidal,
                    _ => {
                        split = false;
                        comps.push(Component { form: f.to_string(), poly: f.clone(), multiplicity: 1, kind: ComponentKind::ConjugateLineTriple });
                        Shape::ConcurrentLines
                    }
                }
            } else if !ps.iter().any(|p| f.vanishes_at(p.coords())) {
                // a smooth cubic over F_p, p >= 5, always has a rational point
                split = false;
                comps.push(Component { form: f.to_string(), poly: f.clone(), multiplicity: 1, kind: ComponentKind::ConjugateLineTriple });
                Shape::Triangle
            } else {
                j = ps.iter().find(|p| is_flex(f, p)).and_then(|o| weierstrass_from_flex(f, o).ok()).and_then(|w| w.invariants().j);
                Shape::Smooth
            }
        }
        _ => {
            // one or two lines and no F_p factor of the residual: impossible
            // for a residual of degree one, so this is a line times a
            // rank-deficient conic handled above
            return Err(Error::Undetermined(format!("unexpected factorization of {f}")));
        }
    };
    if matches!(shape, Shape::Nodal | Shape::Cuspidal | Shape::Smooth) {
        comps.push(Component { form: f.to_string(), poly: f.clone(), multiplicity: 1, kind: ComponentKind::Cubic });
    }
    let intersections = match points {
        Some(ps) if comps.len() > 1 => {
            ps.iter().filter(|p| comps.iter().filter(|c| c.poly.vanishes_at(p.coords())).count() >= 2).cloned().collect()
        }
        _ => vec![],
    };
    Ok(CubicClass { shape, components: comps, split, singular_points, intersections, j })
}

fn monic_line(l: &Poly3) -> Poly3 {
    let c = line_coeffs(l);
    let k = c.iter().find(|s| !s.is_zero()).unwrap().inv().unwrap();
    l.scale(&k)
}

/// Long Weierstrass model y^2 z + a1 xyz + a3 yz^2 = x^3 + a2 x^2 z + a4 xz^2 + a6 z^3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weierstrass {
    pub a1: Scalar,
    pub a2: Scalar,
    pub a3: Scalar,
    pub a4: Scalar,
    pub a6: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub b2: Scalar,
    pub b4: Scalar,
    pub b6: Scalar,
    pub b8: Scalar,
    pub c4: Scalar,
    pub c6: Scalar,
    pub delta: Scalar,
    /// None when the discriminant vanishes
    pub j: Option<Scalar>,
}

impl Weierstrass {
    pub fn invariants(&self) -> Invariants {
        let f = self.a1.field();
        let n = |k: i64| f.from_i64(k);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = &(a1 * a1) + &(&n(4) * a2);
        let b4 = &(&n(2) * a4) + &(a1 * a3);
        let b6 = &(a3 * a3) + &(&n(4) * a6);
        let b8 = &(&(&(&(&(a1 * a1) * a6) + &(&(&n(4) * a2) * a6)) - &(&(a1 * a3) * a4)) + &(&(a2 * a3) * a3)) - &(a4 * a4);
        let c4 = &(&b2 * &b2) - &(&n(24) * &b4);
        let c6 = &(&-(&(&b2 * &b2) * &b2) + &(&(&n(36) * &b2) * &b4)) - &(&n(216) * &b6);
        let delta = &(&(&-(&(&b2 * &b2) * &b8) - &(&n(8) * &(&(&b4 * &b4) * &b4))) - &(&n(27) * &(&b6 * &b6)))
            + &(&(&(&n(9) * &b2) * &b4) * &b6);
        let j = delta.inv().map(|di| &(&(&c4 * &c4) * &c4) * &di);
        Invariants { b2, b4, b6, b8, c4, c6, delta, j }
    }

    pub fn cubic(&self) -> Poly3 {
        let f = self.a1.field();
        let m = |c: &Scalar, e: [u32; 3]| Poly3::monomial(c.clone(), e);
        let one = f.one();
        let lhs = &(&m(&one, [0, 2, 1]) + &m(&self.a1, [1, 1, 1])) + &m(&self.a3, [0, 1, 2]);
        let rhs = &(&(&m(&one, [3, 0, 0]) + &m(&self.a2, [2, 0, 1])) + &m(&self.a4, [1, 0, 2])) + &m(&self.a6, [0, 0, 3]);
        &lhs - &rhs
    }
}

/// Whether p is a smooth point of f = 0 whose tangent line meets the
/// curve there with multiplicity at least three.
pub fn is_flex(f: &Poly3, p: &ProjPoint) -> bool {
    let pc = p.coords();
    if !f.vanishes_at(pc) {
        return false;
    }
    let grad: [Scalar; 3] = std::array::from_fn(|i| f.partial(i).eval(pc));
    if grad.iter().all(|s| s.is_zero()) {
        return false;
    }
    let t = Poly3::linear(&grad);
    let [v1, v2] = line_basis(&t);
    let r = if ProjPoint::new(v1.clone()).as_ref() == Some(p) { v2 } else { v1 };
    let gr: [Scalar; 3] = std::array::from_fn(|i| f.partial(i).eval(&r));
    linalg::dot(&gr, pc).is_zero()
}

/// Moves a flex to [0:1:0] with tangent z = 0 and rescales to a long
/// Weierstrass model.
pub fn weierstrass_from_flex(f: &Poly3, o: &ProjPoint) -> Result<Weierstrass> {
    if !is_flex(f, o) {
        return Err(Error::InvalidParams(format!("{o} is not a flex")));
    }
    let field = f.field().clone();
    let oc = o.coords().clone();
    let grad: [Scalar; 3] = std::array::from_fn(|i| f.partial(i).eval(&oc));
    let t = Poly3::linear(&grad);
    let [v1, v2] = line_basis(&t);
    let on_t = if ProjPoint::new(v1.clone()).as_ref() == Some(o) { v2 } else { v1 };
    let off_t: [Scalar; 3] = (0..3)
        .map(|i| std::array::from_fn(|k| if k == i { field.one() } else { field.zero() }))
        .find(|e: &[Scalar; 3]| !t.vanishes_at(e))
        .unwrap();
    // old = A new, columns (x, y, z) = (on_t, o, off_t)
    let a: Vec<Vec<Scalar>> = (0..3).map(|i| vec![on_t[i].clone(), oc[i].clone(), off_t[i].clone()]).collect();
    let g = f.substitute_matrix(&a);
    for e in [[0, 3, 0], [2, 1, 0], [1, 2, 0]] {
        if !g.coeff(e).is_zero() {
            return Err(Error::Undetermined("flex normalization failed".into()));
        }
    }
    let big_a = g.coeff([0, 2, 1]);
    let c = -g.coeff([3, 0, 0]);
    if big_a.is_zero() || c.is_zero() {
        return Err(Error::InvalidParams("curve is singular at the flex or reducible".into()));
    }
    let (b, d) = (g.coeff([1, 1, 1]), g.coeff([0, 1, 2]));
    let (e, ff, gg) = (-g.coeff([2, 0, 1]), -g.coeff([1, 0, 2]), -g.coeff([0, 0, 3]));
    let u = &big_a * &c;
    let v = &u * &c;
    let k = &(&big_a * &v) * &v;
    let ki = k.inv().unwrap();
    Ok(Weierstrass {
        a1: &(&(&b * &u) * &v) * &ki,
        a3: &(&d * &v) * &ki,
        a2: &(&(&e * &u) * &u) * &ki,
        a4: &(&ff * &u) * &ki,
        a6: &gg * &ki,
    })
}

fn grad_at(f: &Poly3, p: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| f.partial(i).eval(p))
}

/// Third point of the line through p and q (the tangent when p = q).
pub fn third_intersection(f: &Poly3, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    let (pc, qc) = (p.coords(), q.coords());
    if !f.vanishes_at(pc) || !f.vanishes_at(qc) {
        return Err(Error::NotOnCurve);
    }
    if p != q {
        // f(l p + m q) = l m (c21 l + c12 m)
        let c21 = linalg::dot(&grad_at(f, pc), qc);
        let c12 = linalg::dot(&grad_at(f, qc), pc);
        if c21.is_zero() && c12.is_zero() {
            return Err(Error::LineOnCurve);
        }
        ProjPoint::new(std::array::from_fn(|k| &(&c12 * &pc[k]) - &(&c21 * &qc[k]))).ok_or(Error::LineOnCurve)
    } else {
        let g = grad_at(f, pc);
        if g.iter().all(|s| s.is_zero()) {
            return Err(Error::DegeneratePoint);
        }
        let [v1, v2] = line_basis(&Poly3::linear(&g));
        let r = if ProjPoint::new(v1.clone()).as_ref() == Some(p) { v2 } else { v1 };
        // f(l p + m r) = m^2 (c12 l + c03 m)
        let c12 = linalg::dot(&grad_at(f, &r), pc);
        let c03 = f.eval(&r);
        if c12.is_zero() && c03.is_zero() {
            return Err(Error::LineOnCurve);
        }
        ProjPoint::new(std::array::from_fn(|k| &(&c03 * &pc[k]) - &(&c12 * &r[k]))).ok_or(Error::LineOnCurve)
    }
}

pub fn group_add(f: &Poly3, o: &ProjPoint, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    third_intersection(f, o, &third_intersection(f, p, q)?)
}

pub fn group_neg(f: &Poly3, o: &ProjPoint, p: &ProjPoint) -> Result<ProjPoint> {
    third_intersection(f, p, &third_intersection(f, o, o)?)
}

pub fn group_sub(f: &Poly3, o: &ProjPoint, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    group_add(f, o, p, &group_neg(f, o, q)?)
}

/// Smooth base-field points of f = 0.
pub fn smooth_points(f: &Poly3) -> Result<Vec<ProjPoint>> {
    let grad = f.gradient();
    Ok(f.field().projective_points()?.into_iter().filter(|p| f.vanishes_at(p.coords()) && !is_singular(f, &grad, p.coords())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::XYZ;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::PrimeField { p }
    }

    fn cubic(s: &str, f: &FieldSpec) -> Poly3 {
        Poly3::parse(s, f, XYZ).unwrap()
    }

    #[test]
    fn shapes() {
        let f = fp(13);
        let cases = [
            ("x*y*z", Shape::Triangle),
            ("x^2*y - x*y^2", Shape::ConcurrentLines),
            ("2*x*y*z + x^3", Shape::LineConicSecant),
            ("x^2*y + y^2*z", Shape::LineConicTangent),
            ("x*y^2", Shape::DoubleLineLine),
            ("y^2*z", Shape::DoubleLineLine),
            ("x^3", Shape::TripleLine),
            ("y^2*z - x^3 - x^2*z", Shape::Nodal),
            ("y^2*z - x^3", Shape::Cuspidal),
            ("y^2*z - x^3 - x*z^2 - z^3", Shape::Smooth),
        ];
        for (s, want) in cases {
            assert_eq!(classify_cubic(&cubic(s, &f)).unwrap().shape, want, "{s}");
        }
        assert_eq!(classify_cubic(&Poly3::zero(&f)).unwrap().shape, Shape::WholePlane);
    }

    #[test]
    fn nodal_tgh_node() {
        // g = 2, h = -1: g^2 + 4h = 0, node at [0:2:g]
        let f = fp(13);
        let c = classify_cubic(&cubic("-y^3 + x^2*z - y*z^2 + 2*y^2*z", &f)).unwrap();
        assert_eq!(c.shape, Shape::Nodal);
        assert_eq!(c.singular_points, vec![ProjPoint::from_ints(&f, [0, 2, 2]).unwrap()]);
    }

    #[test]
    fn conjugate_components() {
        // 2 is not a square mod 13
        let f = fp(13);
        let c = classify_cubic(&cubic("x^2*z - 2*y^2*z", &f)).unwrap();
        assert_eq!((c.shape, c.split), (Shape::Triangle, false));
        let c = classify_cubic(&cubic("x^2*y - 2*y^3", &f)).unwrap();
        assert_eq!((c.shape, c.split), (Shape::ConcurrentLines, false));
    }

    #[test]
    fn tgh_discriminant_and_j() {
        let f = FieldSpec::Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let (g, h) = (f.random(&mut rng), f.random_nonzero(&mut rng));
            let w = Weierstrass { a1: f.zero(), a2: -&g, a3: f.zero(), a4: -&h, a6: f.zero() };
            let inv = w.invariants();
            let disc = &g * &g + &f.from_i64(4) * &h;
            assert_eq!(inv.delta, &f.from_i64(16) * &(&(&h * &h) * &disc));
        }
    }

    #[test]
    fn flex_route_preserves_j() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 10 {
            let w = Weierstrass {
                a1: f.random(&mut rng),
                a2: f.random(&mut rng),
                a3: f.random(&mut rng),
                a4: f.random(&mut rng),
                a6: f.random(&mut rng),
            };
            let Some(j) = w.invariants().j else { continue };
            let a: Vec<Vec<Scalar>> = (0..3).map(|_| (0..3).map(|_| f.from_i64(rng.gen_range(0..101))).collect()).collect();
            if linalg::det(&a).is_zero() {
                continue;
            }
            let moved = w.cubic().substitute_matrix(&a);
            let c = classify_cubic(&moved).unwrap();
            assert_eq!(c.shape, Shape::Smooth);
            // image of the flex [0:1:0] under the inverse change
            let inv = linalg::inverse(&a).unwrap();
            let o = ProjPoint::new(std::array::from_fn(|i| inv[i][1].clone())).unwrap();
            assert!(is_flex(&moved, &o));
            assert_eq!(weierstrass_from_flex(&moved, &o).unwrap().invariants().j, Some(j));
            checked += 1;
        }
    }

    #[test]
    fn group_law_associative_f5() {
        let f = fp(5);
        let c = cubic("y^2*z - x^3 - x*z^2 - z^3", &f);
        let pts = smooth_points(&c).unwrap();
        let o = ProjPoint::from_ints(&f, [0, 1, 0]).unwrap();
        for p in &pts {
            assert_eq!(group_add(&c, &o, p, &o).unwrap(), *p);
            assert_eq!(group_add(&c, &o, p, &group_neg(&c, &o, p).unwrap()).unwrap(), o);
            for q in &pts {
                assert_eq!(group_add(&c, &o, p, q).unwrap(), group_add(&c, &o, q, p).unwrap());
                for r in &pts {
                    let l = group_add(&c, &o, &group_add(&c, &o, p, q).unwrap(), r).unwrap();
                    let rr = group_add(&c, &o, p, &group_add(&c, &o, q, r).unwrap()).unwrap();
                    assert_eq!(l, rr);
                }
            }
        }
    }
}
