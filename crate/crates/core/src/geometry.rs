//! Point schemes of quadratic algebras with three relations: the matrices M
//! and N, the zero locus Gamma of the bilinearized relations, and the
//! automorphism sigma.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, ProjPoint, Scalar};
use crate::freealg::{idx, Presentation};
use crate::linalg;
use crate::poly::{LinearFormMatrix, Poly3, XYZ};

/// With relations r_k = sum c^k_ij u_i u_j:
/// M[k][j] = sum_i c^k_ij u_i and N[i][k] = sum_j c^k_ij u_j, so that
/// M(p) q = (r_k(p, q))_k = (p^T N(q))_k.
#[derive(Clone, Debug)]
pub struct MnPair {
    pub m: LinearFormMatrix,
    pub n: LinearFormMatrix,
    pub field: FieldSpec,
}

pub fn build_mn(p: &Presentation) -> Result<MnPair> {
    let rels = p.basis_relations();
    if rels.len() != 3 {
        return Err(Error::InvalidParams(format!("need three independent relations, found {}", p.dim())));
    }
    let f = &p.field;
    let vars = XYZ;
    let form = |coef: [Scalar; 3]| Poly3::linear(&coef).with_vars(vars);
    let m = LinearFormMatrix(std::array::from_fn(|k| std::array::from_fn(|j| form(std::array::from_fn(|i| rels[k][idx(i, j)].clone())))));
    let n = LinearFormMatrix(std::array::from_fn(|i| std::array::from_fn(|k| form(std::array::from_fn(|j| rels[k][idx(i, j)].clone())))));
    Ok(MnPair { m, n, field: f.clone() })
}

impl MnPair {
    pub fn det_m(&self) -> Poly3 {
        self.m.det3()
    }

    pub fn det_n(&self) -> Poly3 {
        self.n.det3()
    }

    /// Coefficient form of M q = r(p, q) = p^T N: the u_i-coefficient of
    /// M[k][j] and the u_j-coefficient of N[i][k] both equal c^k_ij.
    pub fn reconstructs(&self, p: &Presentation) -> bool {
        let rels = p.basis_relations();
        (0..3).all(|k| {
            (0..3).all(|i| {
                (0..3).all(|j| {
                    let mut e = [0; 3];
                    e[i] = 1;
                    let mut e2 = [0; 3];
                    e2[j] = 1;
                    self.m.0[k][j].coeff(e) == rels[k][idx(i, j)] && self.n.0[i][k].coeff(e2) == rels[k][idx(i, j)]
                })
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiStandard {
    /// det M = k det N with k nonzero and both nonzero
    Ratio(Scalar),
    BothZero,
}

pub fn is_semistandard(mn: &MnPair) -> Option<SemiStandard> {
    let (dm, dn) = (mn.det_m(), mn.det_n());
    match (dm.is_zero(), dn.is_zero()) {
        (true, true) => Some(SemiStandard::BothZero),
        (false, false) => dm.proportional(&dn).map(SemiStandard::Ratio),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSet {
    pub points: Vec<(ProjPoint, ProjPoint)>,
    pub count: usize,
}

/// Exhaustive scan of P^2(F_p) x P^2(F_p) for common zeros of the
/// bilinearized relations.
pub fn gamma_points(p: &Presentation) -> Result<GammaSet> {
    let pts = p.field.projective_points()?;
    let rels = p.relation_space();
    let mut points: Vec<(ProjPoint, ProjPoint)> = pts
        .par_iter()
        .flat_map_iter(|a| {
            let ac = a.coords();
            let rows: Vec<[Scalar; 3]> = rels
                .iter()
                .map(|r| std::array::from_fn(|j| (0..3).fold(p.field.zero(), |s, i| &s + &(&r[idx(i, j)] * &ac[i]))))
                .collect();
            pts.iter()
                .filter(move |b| rows.iter().all(|v| linalg::dot(v, b.coords()).is_zero()))
                .map(move |b| (a.clone(), b.clone()))
        })
        .collect();
    points.sort();
    let count = points.len();
    Ok(GammaSet { points, count })
}

fn rank_at(m: &LinearFormMatrix, pt: &[Scalar; 3]) -> usize {
    linalg::rank(&m.eval(pt))
}

/// sigma(p): the kernel of M(p), as the cross product of two independent rows.
pub fn sigma_at(mn: &MnPair, pt: &ProjPoint) -> Result<ProjPoint> {
    let a = mn.m.eval(pt.coords());
    match linalg::rank(&a) {
        3 => return Err(Error::NotOnCurve),
        0 | 1 => return Err(Error::DegeneratePoint),
        _ => {}
    }
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        let u: [Scalar; 3] = std::array::from_fn(|j| a[r1][j].clone());
        let v: [Scalar; 3] = std::array::from_fn(|j| a[r2][j].clone());
        if let Some(q) = ProjPoint::new(linalg::cross(&u, &v)) {
            return Ok(q);
        }
    }
    unreachable!("rank two matrix has two independent rows")
}

/// sigma^{-1}(q): the left kernel of N(q).
pub fn sigma_inverse_at(mn: &MnPair, q: &ProjPoint) -> Result<ProjPoint> {
    let t = LinearFormMatrix(mn.n.transpose().0);
    let pair = MnPair { m: t, n: mn.m.clone(), field: mn.field.clone() };
    sigma_at(&pair, q)
}

/// F_p points of the point scheme: Z(det M), or all of P^2 when det M = 0.
pub fn curve_points(mn: &MnPair) -> Result<Vec<ProjPoint>> {
    let d = mn.det_m();
    Ok(mn.field.projective_points()?.into_iter().filter(|p| d.is_zero() || d.vanishes_at(p.coords())).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegReport {
    pub nondegenerate: bool,
    /// points of Z(det M) where rank M < 2
    pub m_failures: Vec<ProjPoint>,
    /// points of Z(det N) where rank N < 2
    pub n_failures: Vec<ProjPoint>,
}

/// Rank of M (and N) equals 2 at every F_p point of the point scheme.
pub fn nondegeneracy_check(mn: &MnPair) -> Result<NondegReport> {
    let pts = mn.field.projective_points()?;
    let scan = |m: &LinearFormMatrix| -> Vec<ProjPoint> {
        let d = m.det3();
        pts.par_iter().filter(|p| (d.is_zero() || d.vanishes_at(p.coords())) && rank_at(m, p.coords()) < 2).cloned().collect()
    };
    let m_failures = scan(&mn.m);
    let n_failures = scan(&mn.n);
    Ok(NondegReport { nondegenerate: m_failures.is_empty() && n_failures.is_empty(), m_failures, n_failures })
}

/// Smallest m <= max with sigma^m = id on every F_p point of the point scheme.
pub fn sigma_order(mn: &MnPair, max: usize) -> Result<Option<usize>> {
    let pts = curve_points(mn)?;
    let images: Vec<ProjPoint> = pts.iter().map(|p| sigma_at(mn, p)).collect::<Result<_>>()?;
    let index: std::collections::HashMap<&ProjPoint, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let perm: Vec<usize> =
        images.iter().map(|q| index.get(q).copied().ok_or(Error::Undetermined("sigma leaves the point scheme".into()))).collect::<Result<_>>()?;
    let mut cur: Vec<usize> = (0..pts.len()).collect();
    for m in 1..=max {
        cur = cur.iter().map(|&i| perm[i]).collect();
        if cur.iter().enumerate().all(|(i, &j)| i == j) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tgh(f: &FieldSpec, g: i64, h: i64) -> Presentation {
        let s = |c: i64| f.from_i64(c);
        Presentation::from_terms(
            f,
            XYZ,
            &[
                vec![(s(1), 0, 1), (s(-1), 1, 0)],
                vec![(s(1), 2, 1), (s(1), 1, 2), (s(-1), 0, 0), (s(-g), 1, 1)],
                vec![(s(1), 2, 2), (s(h), 1, 1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn tgh_matrices() {
        let f = FieldSpec::Rationals;
        let mn = build_mn(&tgh(&f, 2, 5)).unwrap();
        let expect = Poly3::parse("5*y^3 + x^2*z - y*z^2 + 2*y^2*z", &f, XYZ).unwrap();
        assert_eq!(mn.det_m(), expect);
        assert_eq!(mn.det_n(), -&expect);
        assert_eq!(is_semistandard(&mn), Some(SemiStandard::Ratio(f.from_i64(-1))));
        assert_eq!(mn.m.0[1][1].to_string(), "-2*y + z");
        assert!(mn.reconstructs(&tgh(&f, 2, 5)));
    }

    #[test]
    fn tgh_sigma_formula() {
        let f = FieldSpec::PrimeField { p: 13 };
        let (g, h) = (3, 4);
        let mn = build_mn(&tgh(&f, g, h)).unwrap();
        for pt in curve_points(&mn).unwrap() {
            let [x, y, z] = pt.coords().clone();
            let want = ProjPoint::new([&x * &z, &y * &z, -(&(&f.from_i64(h) * &y) * &y)]);
            let got = sigma_at(&mn, &pt).unwrap();
            if let Some(w) = want {
                assert_eq!(got, w);
            }
            assert_eq!(sigma_inverse_at(&mn, &got).unwrap(), pt);
        }
        assert_eq!(sigma_at(&mn, &ProjPoint::from_ints(&f, [1, 1, 1]).unwrap()), Err(Error::NotOnCurve));
    }

    #[test]
    fn gamma_is_graph_of_sigma() {
        let f = FieldSpec::PrimeField { p: 7 };
        let p = tgh(&f, 1, 2);
        let mn = build_mn(&p).unwrap();
        let g = gamma_points(&p).unwrap();
        let graph: Vec<_> = curve_points(&mn).unwrap().into_iter().map(|q| (q.clone(), sigma_at(&mn, &q).unwrap())).collect();
        let mut graph = graph;
        graph.sort();
        assert_eq!(g.points, graph);
        assert!(nondegeneracy_check(&mn).unwrap().nondegenerate);
    }
}
