//! Explicit isomorphisms between normal forms, each checked by substituting
//! the map into the source relations.
//!
//! Maps are algebra maps: generator i goes to `map.image(i)`, and the map
//! is a witness when it carries the source relation space onto the target's.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::freealg::{apply_change_of_variables, is_iso_witness, LinearMap, Presentation};
use crate::ttp::{build_ttp_algebra, case_label, sample_case, CaseLabel, TwistCoeffs};

use super::FamilyId;

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

/// What the image of the source must be.
#[derive(Clone, Debug)]
pub enum Target {
    /// exactly this presentation
    Algebra(Presentation),
    /// some normal form whose coefficients satisfy the predicate
    Case(&'static str, fn(&TwistCoeffs) -> bool),
}

#[derive(Clone, Debug)]
pub struct WitnessCase {
    pub name: &'static str,
    /// the sampled parameters, for reports
    pub params: String,
    pub source: Presentation,
    pub target: Target,
    pub map: LinearMap,
}

impl WitnessCase {
    pub fn verify(&self) -> bool {
        match &self.target {
            Target::Algebra(b) => is_iso_witness(&self.map, &self.source, b),
            Target::Case(_, pred) => apply_change_of_variables(&self.map, &self.source)
                .ok()
                .and_then(|img| TwistCoeffs::from_presentation(&img))
                .is_some_and(|t| pred(&t)),
        }
    }

    pub fn target_description(&self) -> String {
        match &self.target {
            Target::Algebra(b) => b.to_string(),
            Target::Case(d, _) => d.to_string(),
        }
    }
}

/// Image coordinates from (coefficient, generator) pairs.
fn lin(f: &FieldSpec, terms: &[(Scalar, usize)]) -> [Scalar; 3] {
    let mut v = [f.zero(), f.zero(), f.zero()];
    for (c, g) in terms {
        v[*g] = &v[*g] + c;
    }
    v
}

fn gen(f: &FieldSpec, g: usize) -> [Scalar; 3] {
    lin(f, &[(f.one(), g)])
}

fn images(x: [Scalar; 3], y: [Scalar; 3], z: [Scalar; 3]) -> LinearMap {
    LinearMap::from_images([x, y, z])
}

/// Draws until `f` produces a value; square roots and side conditions make
/// some draws unusable.
fn draw<R: Rng + ?Sized, T>(rng: &mut R, mut f: impl FnMut(&mut R) -> Option<T>) -> Result<T> {
    for _ in 0..10_000 {
        if let Some(t) = f(rng) {
            return Ok(t);
        }
    }
    Err(Error::Undetermined("no admissible parameters found".into()))
}

fn nz<R: Rng + ?Sized>(f: &FieldSpec, rng: &mut R) -> Scalar {
    f.random_nonzero(rng)
}

fn build(id: FamilyId, f: &FieldSpec) -> Presentation {
    id.make(f).expect("sampled parameters lie in the family domain")
}

type Builder = fn(&FieldSpec, &mut dyn rand::RngCore) -> Result<WitnessCase>;

/// Every catalogued witness, as (name, builder).
pub fn catalog() -> Vec<(&'static str, Builder)> {
    vec![
        ("T(g,0) to T(1,0)", t_g0),
        ("T(g,h) rescaled, g nonzero", t_rescale),
        ("T(0,h) rescaled", t_rescale_g0),
        ("T(g,h) to T(g^2/h)", t_to_ell),
        ("nodal T(g,h) to the nodal normal form", t_nodal),
        ("R(iii) to U'", r3_to_uprime),
        ("R(iii) to U", r3_to_u),
        ("R(v) into R(iii)", r5_to_r3),
        ("R(vii) into R(ii)", r7_to_r2),
        ("R(ii) into Ore type, a=0 and d=1", r2_swap),
        ("R(ii) into Ore type", r2_to_ore),
        ("R(vi) into R(i) or R(iv)", r6_reduce),
        ("R(i) to T_(i)", r1_to_ti),
        ("R(iv) to T_(iv)", r4_to_tiv),
        ("T_(iv) to T_(i)", tiv_to_ti),
        ("T_(i) to R(q)", ti_to_rq),
        ("T_(i) to R0", ti_to_r0),
        ("T_(iv) to R1", tiv_to_r1),
        ("O(1)(iii) into O(1)(ii)", o1iii_swap),
        ("O(1)(iv) with C=1 to C=0", o1iv_c1),
        ("O(1)(iv) to S(d,D)", o1iv_to_sdd),
        ("O(1)(ii) to S'(d,eps)", o1ii_to_sprime),
        ("S'(d,eps) to S'(1/d,eps)", sprime_invert),
        ("O(1)(i) with A=1 into A=0", o1i_a1),
        ("O(1)(i) to T(alpha,beta,gamma)", o1i_to_tabc),
        ("O(1)(i) with B=a into a double line", o1i_reduction2),
        ("O(1)(i) double line to W(gamma,eps)", o1i_to_w),
        ("O(1)(i) triple line to L(1,0)", o1i_to_l10),
        ("O(1)(i) triple line to L(0,0)", o1i_to_l00),
        ("O(1)(i) triple line to L(0,1)", o1i_to_l01),
        ("O(1)(i) full plane to P(1)", o1i_to_p1),
        ("O(2)(i), a=0, to a double-line form", o2i_a0),
        ("O(2)(i), a nonzero, to W", o2i_to_w),
        ("O(2)(ii) to W(d)", o2ii_to_wd),
        ("S(d,D) to S(D,d)", sdd_swap),
        ("T(alpha,beta,gamma) to T(gamma,alpha,beta)", tabc_cycle),
        ("T(alpha,beta,gamma) to T(beta,alpha,gamma)", tabc_swap),
        ("P(a) to P(1/a)", pa_invert),
    ]
}

/// Builds and verifies every catalogued witness once.
pub fn run_catalog(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Vec<(&'static str, Result<WitnessCase>)> {
    catalog().into_iter().map(|(n, b)| (n, b(f, rng))).collect()
}

fn t_g0(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (g, k) = draw(rng, |r| {
        let g = nz(f, r);
        g.sqrt().map(|k| (g, k))
    })?;
    Ok(WitnessCase {
        name: "T(g,0) to T(1,0)",
        params: format!("g={g}"),
        source: build(FamilyId::Tgh { g: g.clone(), h: f.zero() }, f),
        target: Target::Algebra(build(FamilyId::Tgh { g: f.one(), h: f.zero() }, f)),
        map: images(lin(f, &[(k, X)]), gen(f, Y), lin(f, &[(g, Z)])),
    })
}

fn t_rescale(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (g, h, beta, alpha) = draw(rng, |r| {
        let (g, h, beta) = (nz(f, r), f.random(r), nz(f, r));
        beta.sqrt().map(|a| (g, h, beta, a))
    })?;
    let (g2, h2) = (&g * &beta, &(&h * &beta) * &beta);
    Ok(WitnessCase {
        name: "T(g,h) rescaled, g nonzero",
        params: format!("g={g},h={h},g'={g2},h'={h2}"),
        source: build(FamilyId::Tgh { g, h }, f),
        target: Target::Algebra(build(FamilyId::Tgh { g: g2, h: h2 }, f)),
        map: images(lin(f, &[(alpha, X)]), lin(f, &[(beta, Y)]), gen(f, Z)),
    })
}

fn t_rescale_g0(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (h, beta, alpha) = draw(rng, |r| {
        let (h, beta) = (nz(f, r), nz(f, r));
        beta.sqrt().map(|a| (h, beta, a))
    })?;
    let h2 = &(&h * &beta) * &beta;
    Ok(WitnessCase {
        name: "T(0,h) rescaled",
        params: format!("h={h},h'={h2}"),
        source: build(FamilyId::Tgh { g: f.zero(), h }, f),
        target: Target::Algebra(build(FamilyId::Tgh { g: f.zero(), h: h2 }, f)),
        map: images(lin(f, &[(alpha, X)]), lin(f, &[(beta, Y)]), gen(f, Z)),
    })
}

fn t_to_ell(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (g, h, alpha) = draw(rng, |r| {
        let (g, h) = (nz(f, r), nz(f, r));
        (&g / &h).sqrt().map(|a| (g, h, a))
    })?;
    let l = &(&g * &g) / &h;
    Ok(WitnessCase {
        name: "T(g,h) to T(g^2/h)",
        params: format!("g={g},h={h}"),
        source: build(FamilyId::Tgh { g: g.clone(), h: h.clone() }, f),
        target: Target::Algebra(build(FamilyId::Tell { l }, f)),
        map: images(lin(f, &[(alpha, X)]), lin(f, &[(&g / &h, Y)]), gen(f, Z)),
    })
}

fn t_nodal(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let n = |k| f.from_i64(k);
    let (g, h, a1) = draw(rng, |r| {
        let g = nz(f, r);
        let h = -&(&(&g * &g) / &n(4));
        (&(&n(-8) * &g) / &h).sqrt().map(|a| (g, h, a))
    })?;
    let a2 = -&(&g / &(&n(2) * &h));
    Ok(WitnessCase {
        name: "nodal T(g,h) to the nodal normal form",
        params: format!("g={g},h={h}"),
        source: build(FamilyId::Tgh { g, h }, f),
        target: Target::Algebra(build(FamilyId::Nodal, f)),
        map: images(
            lin(f, &[(a1.clone(), X), (-&a1, Y)]),
            lin(f, &[(a2.clone(), X), (a2.clone(), Y), (a2, Z)]),
            lin(f, &[(n(-3), X), (n(-3), Y), (n(1), Z)]),
        ),
    })
}

fn r3_sample<R: Rng + ?Sized>(f: &FieldSpec, r: &mut R) -> TwistCoeffs {
    sample_case(CaseLabel::R3, f, r)
}

fn r3_s(t: &TwistCoeffs) -> Scalar {
    let f = t.field();
    &(&(&t.b * &t.b) - &(&f.from_i64(4) * &(&t.a * &t.c))) + &(&f.from_i64(4) * &t.c)
}

fn r3_to_uprime(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let n = |k| f.from_i64(k);
    let (t, rt, sq) = draw(rng, |r| {
        let t = r3_sample(f, r);
        let s = r3_s(&t);
        if s.is_zero() {
            return None;
        }
        let rt = (&n(-2) / &s).sqrt()?;
        let sq = (&t.a - &n(1)).sqrt()?;
        Some((t, rt, sq))
    })?;
    let one_a = &n(1) - &t.a;
    let a2 = &(&n(2) * &one_a) * &rt;
    let a1 = &(&t.b * &a2) / &(&n(2) * &one_a);
    Ok(WitnessCase {
        name: "R(iii) to U'",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Uprime, f)),
        map: images(
            lin(f, &[(a1.clone(), X), (n(1), Y), (n(1), Z)]),
            lin(f, &[(a2, X)]),
            lin(f, &[(a1, X), (&n(1) + &sq, Y), (&n(1) - &sq, Z)]),
        ),
    })
}

fn r3_to_u(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let n = |k| f.from_i64(k);
    let (t, sq) = draw(rng, |r| {
        let mut t = r3_sample(f, r);
        // s = b^2 - 4c(a-1) = 0
        t.c = &(&t.b * &t.b) / &(&n(4) * &(&t.a - &n(1)));
        let sq = (&t.a - &n(1)).sqrt()?;
        (case_label(&t) == Some(CaseLabel::R3)).then_some((t, sq))
    })?;
    let d1 = &t.b / &(&n(2) * &(&n(1) - &t.a));
    Ok(WitnessCase {
        name: "R(iii) to U",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::U, f)),
        map: images(
            lin(f, &[(d1.clone(), X), (n(1), Y), (n(1), Z)]),
            gen(f, X),
            lin(f, &[(d1, X), (&n(1) + &sq, Y), (&n(1) - &sq, Z)]),
        ),
    })
}

fn case_is(label: CaseLabel) -> impl Fn(&TwistCoeffs) -> bool {
    move |t| case_label(t) == Some(label)
}

fn r5_to_r3(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = sample_case(CaseLabel::R5, f, rng);
    let half = f.from_ratio(-1, 2)?;
    Ok(WitnessCase {
        name: "R(v) into R(iii)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Case("case R(iii)", |t| case_is(CaseLabel::R3)(t)),
        map: images(lin(f, &[(f.one(), X), (half, Y)]), gen(f, Y), gen(f, Z)),
    })
}

fn r7_to_r2(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = sample_case(CaseLabel::R7, f, rng);
    let half = f.from_ratio(-1, 2)?;
    Ok(WitnessCase {
        name: "R(vii) into R(ii)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Case("case R(ii)", |t| case_is(CaseLabel::R2)(t)),
        map: images(gen(f, X), gen(f, Y), lin(f, &[(f.one(), Z), (half, Y)])),
    })
}

fn r2_swap(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| {
        let mut t = sample_case(CaseLabel::R2, f, r);
        t.a = f.zero();
        t.d = f.one();
        (case_label(&t) == Some(CaseLabel::R2)).then_some(t)
    })?;
    let o = f.one();
    // xy-yx, zy-yz, zx+x^2+cy^2-xz+byz
    let target = Presentation::from_terms(
        f,
        ['x', 'y', 'z'],
        &[
            vec![(o.clone(), X, Y), (-&o, Y, X)],
            vec![(o.clone(), Z, Y), (-&o, Y, Z)],
            vec![(o.clone(), Z, X), (o.clone(), X, X), (t.c.clone(), Y, Y), (-&o, X, Z), (t.b.clone(), Y, Z)],
        ],
    )?;
    Ok(WitnessCase {
        name: "R(ii) into Ore type, a=0 and d=1",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(target),
        map: images(gen(f, Z), gen(f, Y), gen(f, X)),
    })
}

fn r2_to_ore(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (t, al) = draw(rng, |r| {
        let t = sample_case(CaseLabel::R2, f, r);
        // a al^2 + (d-1) al + 1 = 0
        let roots = quadratic_roots(&t.a, &(&t.d - &f.one()), &f.one());
        roots.into_iter().next().map(|al| (t, al))
    })?;
    let o = f.one();
    let aal = &t.a * &al;
    let target = Presentation::from_terms(
        f,
        ['x', 'y', 'z'],
        &[
            vec![(o.clone(), X, Y), (-&o, Y, X)],
            vec![(o.clone(), Z, Y), (-&o, Y, Z)],
            vec![
                (&o - &aal, Z, X),
                (-&t.a, X, X),
                (-&t.b, X, Y),
                (-&t.c, Y, Y),
                (-&(&t.d + &aal), X, Z),
                (-&(&t.b * &al), Y, Z),
            ],
        ],
    )?;
    Ok(WitnessCase {
        name: "R(ii) into Ore type",
        params: format!("{t},alpha={al}"),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(target),
        map: images(lin(f, &[(o.clone(), X), (al, Z)]), gen(f, Y), gen(f, Z)),
    })
}

/// Roots in the field of a t^2 + b t + c (a linear equation when a = 0).
pub fn quadratic_roots(a: &Scalar, b: &Scalar, c: &Scalar) -> Vec<Scalar> {
    let f = b.field();
    if a.is_zero() {
        return if b.is_zero() { vec![] } else { vec![-&(c / b)] };
    }
    let disc = &(b * b) - &(&f.from_i64(4) * &(a * c));
    match disc.sqrt() {
        Some(r) => {
            let two_a = &f.from_i64(2) * a;
            let r1 = &(&(-b) + &r) / &two_a;
            let r2 = &(&(-b) - &r) / &two_a;
            if r1 == r2 {
                vec![r1]
            } else {
                vec![r1, r2]
            }
        }
        None => vec![],
    }
}

fn r6_reduce(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = sample_case(CaseLabel::R6, f, rng);
    let o = f.one();
    let first = images(gen(f, X), gen(f, Y), lin(f, &[(o.clone(), Z), (t.big_c.clone(), Y)]));
    let one_c = &o + &t.big_c;
    let map = if one_c.is_zero() {
        first
    } else {
        let second = images(gen(f, X), lin(f, &[(one_c.inv().unwrap(), Y)]), lin(f, &[(o.clone(), Z), (-&o, Y)]));
        second.compose(&first)
    };
    Ok(WitnessCase {
        name: "R(vi) into R(i) or R(iv)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Case("case R(i) or R(iv)", |t| matches!(case_label(t), Some(CaseLabel::R1 | CaseLabel::R4))),
        map,
    })
}

fn r1_to_ti(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = sample_case(CaseLabel::R1, f, rng);
    Ok(WitnessCase {
        name: "R(i) to T_(i)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Ti { d: t.d.clone(), b: t.big_b.clone() }, f)),
        map: images(gen(f, X), gen(f, Y), lin(f, &[(t.big_b.clone(), X), (f.one(), Z)])),
    })
}

fn r4_to_tiv(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = sample_case(CaseLabel::R4, f, rng);
    Ok(WitnessCase {
        name: "R(iv) to T_(iv)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Tiv { d: t.d.clone(), b: t.big_b.clone() }, f)),
        map: images(gen(f, X), gen(f, Y), lin(f, &[(t.big_b.clone(), X), (f.one(), Y), (f.one(), Z)])),
    })
}

fn tiv_to_ti(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (d, b) = draw(rng, |r| {
        let (d, b) = (f.random(r), f.random(r));
        (!(&d + &b).is_zero()).then_some((d, b))
    })?;
    Ok(WitnessCase {
        name: "T_(iv) to T_(i)",
        params: format!("d={d},B={b}"),
        source: build(FamilyId::Tiv { d: d.clone(), b: b.clone() }, f),
        target: Target::Algebra(build(FamilyId::Ti { d: d.clone(), b: b.clone() }, f)),
        map: images(lin(f, &[(f.one(), X), (f.one(), Y)]), lin(f, &[(-&(&d + &b), Y)]), gen(f, Z)),
    })
}

fn ti_to_rq(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (d, b) = draw(rng, |r| {
        let (d, b) = (f.random(r), f.random(r));
        (!(&d + &b).is_zero()).then_some((d, b))
    })?;
    let s = &d + &b;
    let q = &(&f.one() - &b) / &s;
    Ok(WitnessCase {
        name: "T_(i) to R(q)",
        params: format!("d={d},B={b}"),
        source: build(FamilyId::Ti { d, b }, f),
        target: Target::Algebra(build(FamilyId::Rq { q }, f)),
        map: images(lin(f, &[(s.inv().unwrap(), X)]), gen(f, Y), gen(f, Z)),
    })
}

fn ti_to_r0(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let b = draw(rng, |r| Some(f.random(r)).filter(|b| !b.is_one()))?;
    let k = (&f.one() - &b).inv().unwrap();
    Ok(WitnessCase {
        name: "T_(i) to R0",
        params: format!("d={},B={b}", -&b),
        source: build(FamilyId::Ti { d: -&b, b: b.clone() }, f),
        target: Target::Algebra(build(FamilyId::R0, f)),
        map: images(lin(f, &[(k, X)]), gen(f, Y), gen(f, Z)),
    })
}

fn tiv_to_r1(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let b = draw(rng, |r| Some(f.random(r)).filter(|b| !b.is_one()))?;
    let k = (&f.one() - &b).inv().unwrap();
    Ok(WitnessCase {
        name: "T_(iv) to R1",
        params: format!("d={},B={b}", -&b),
        source: build(FamilyId::Tiv { d: -&b, b: b.clone() }, f),
        target: Target::Algebra(build(FamilyId::R1, f)),
        map: images(lin(f, &[(k, X)]), gen(f, Y), gen(f, Z)),
    })
}

fn o1iii_swap(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = sample_case(CaseLabel::O1iii, f, rng);
    Ok(WitnessCase {
        name: "O(1)(iii) into O(1)(ii)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Case("case O(1)(ii)", |t| case_is(CaseLabel::O1ii)(t)),
        map: images(gen(f, Y), gen(f, X), gen(f, Z)),
    })
}

fn o1iv_c1(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| Some(sample_case(CaseLabel::O1iv, f, r)).filter(|t| t.big_c.is_one()))?;
    let k = (&f.one() - &t.big_d).inv().unwrap();
    Ok(WitnessCase {
        name: "O(1)(iv) with C=1 to C=0",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Case("case O(1)(iv) with C=0", |t| case_is(CaseLabel::O1iv)(t) && t.big_c.is_zero()),
        map: images(gen(f, X), gen(f, Y), lin(f, &[(f.one(), Z), (k, Y)])),
    })
}

fn o1iv_to_sdd(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| Some(sample_case(CaseLabel::O1iv, f, r)).filter(|t| t.big_c.is_zero()))?;
    let lam = &t.a / &(&f.one() - &t.d);
    Ok(WitnessCase {
        name: "O(1)(iv) to S(d,D)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::SdD { d: t.d.clone(), big_d: t.big_d.clone() }, f)),
        map: images(gen(f, X), gen(f, Y), lin(f, &[(lam, X), (f.one(), Z)])),
    })
}

fn o1ii_to_sprime(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let o = f.one();
    let (t, k) = draw(rng, |r| {
        let t = sample_case(CaseLabel::O1ii, f, r);
        if t.c.is_zero() {
            return Some((t, o.clone()));
        }
        let k = (-&t.c.inv().unwrap()).sqrt()?;
        Some((t, k))
    })?;
    let one_d = &o - &t.d;
    let shift = images(gen(f, X), gen(f, Y), lin(f, &[(&t.a / &one_d, X), (&t.b / &one_d, Y), (o.clone(), Z)]));
    let scale = images(gen(f, X), lin(f, &[(k, Y)]), gen(f, Z));
    let eps = if t.c.is_zero() { f.zero() } else { o.clone() };
    Ok(WitnessCase {
        name: "O(1)(ii) to S'(d,eps)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Sprime { d: t.d.clone(), eps }, f)),
        map: scale.compose(&shift),
    })
}

fn sprime_invert(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (d, eps, k) = draw(rng, |r| {
        let d = nz(f, r);
        if d.is_one() {
            return None;
        }
        let eps = if r.gen_bool(0.5) { f.one() } else { f.zero() };
        (-&d).sqrt().map(|k| (d, eps, k))
    })?;
    Ok(WitnessCase {
        name: "S'(d,eps) to S'(1/d,eps)",
        params: format!("d={d},eps={eps}"),
        source: build(FamilyId::Sprime { d: d.clone(), eps: eps.clone() }, f),
        target: Target::Algebra(build(FamilyId::Sprime { d: d.inv().unwrap(), eps }, f)),
        map: images(gen(f, Z), lin(f, &[(k, Y)]), gen(f, X)),
    })
}

/// Roots in the field of a polynomial given by ascending coefficients.
pub fn field_roots(coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    let f = coeffs[0].field();
    let mut out = Vec::new();
    for t in f.elements()? {
        let mut v = f.zero();
        for c in coeffs.iter().rev() {
            v = &(&v * &t) + c;
        }
        if v.is_zero() {
            out.push(t);
        }
    }
    Ok(out)
}

fn o1i_base(t: &TwistCoeffs) -> bool {
    t.f.is_zero() && t.e.is_zero() && t.d.is_one() && t.big_d.is_one()
}

fn o1i_a1(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (t, lam) = draw(rng, |r| {
        let mut t = sample_case(CaseLabel::O1i, f, r);
        t.big_a = f.one();
        let p = [-&f.one(), &t.a - &t.big_b, &t.b - &t.big_c, t.c.clone()];
        let roots = field_roots(&p).ok()?;
        roots.into_iter().next().map(|l| (t, l))
    })?;
    Ok(WitnessCase {
        name: "O(1)(i) with A=1 into A=0",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Case("case O(1)(i) with A=0", |t| o1i_base(t) && t.big_a.is_zero()),
        map: images(gen(f, X), lin(f, &[(lam, X), (f.one(), Y)]), gen(f, Z)),
    })
}

fn o1i_sample<R: Rng + ?Sized>(f: &FieldSpec, r: &mut R) -> TwistCoeffs {
    let mut t = sample_case(CaseLabel::O1i, f, r);
    t.big_a = f.zero();
    t
}

fn disc_o1i(t: &TwistCoeffs) -> Scalar {
    let cb = &t.big_c - &t.b;
    &(&cb * &cb) - &(&(&t.field().from_i64(4) * &t.c) * &(&t.a - &t.big_b))
}

fn o1i_to_tabc(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let n = |k| f.from_i64(k);
    let (t, rho) = draw(rng, |r| {
        let t = o1i_sample(f, r);
        let amb = &t.a - &t.big_b;
        if amb.is_zero() {
            return None;
        }
        let den = disc_o1i(&t);
        if den.is_zero() {
            return None;
        }
        // (a-B)^2 + (4(a-B)c - (b-C)^2) rho^2 = 0
        let rho = (&(&amb * &amb) / &den).sqrt()?;
        Some((t, rho))
    })?;
    let bma = &t.big_b - &t.a;
    let lam = &(&(-&bma) + &(&(&t.b - &t.big_c) * &rho)) / &(&n(2) * &bma);
    let alpha = -&(&(&t.big_c * &rho) + &(&t.big_b * &lam));
    let beta = -&t.a;
    let gamma = &(&t.big_b * &(&n(1) + &lam)) + &(&t.big_c * &rho);
    Ok(WitnessCase {
        name: "O(1)(i) to T(alpha,beta,gamma)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Tabc { alpha, beta, gamma }, f)),
        map: images(lin(f, &[(n(1), X), (lam, Y)]), lin(f, &[(rho, Y)]), gen(f, Z)),
    })
}

fn o1i_reduction2(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| {
        let mut t = o1i_sample(f, r);
        t.big_b = t.a.clone();
        (t.big_c != t.b).then_some(t)
    })?;
    let beta = &t.c / &(&t.big_c - &t.b);
    Ok(WitnessCase {
        name: "O(1)(i) with B=a into a double line",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Case("case O(1)(i), A=0, B-a nonzero, (C-b)^2 = 4c(a-B)", |t| {
            o1i_base(t) && t.big_a.is_zero() && t.big_b != t.a && disc_o1i(t).is_zero()
        }),
        map: images(lin(f, &[(beta, X), (f.one(), Y)]), gen(f, X), gen(f, Z)),
    })
}

fn o1i_to_w(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let n = |k| f.from_i64(k);
    let t = draw(rng, |r| {
        let mut t = o1i_sample(f, r);
        let bma = &t.big_b - &t.a;
        if bma.is_zero() {
            return None;
        }
        // force (C-b)^2 = 4c(a-B)
        if r.gen_bool(0.3) {
            t.big_c = t.b.clone();
            t.c = f.zero();
        } else {
            let cb = &t.big_c - &t.b;
            t.c = &(&cb * &cb) / &(&n(4) * &(&t.a - &t.big_b));
        }
        Some(t)
    })?;
    let bma = &t.big_b - &t.a;
    let beta = -&(&(&t.big_c - &t.b) / &(&n(2) * &bma));
    let lam = &t.big_c + &(&beta * &t.big_b);
    let first = images(lin(f, &[(n(1), X), (beta, Y)]), gen(f, Y), gen(f, Z));
    let amb = -&bma;
    let gamma = &t.big_b / &amb;
    let (ysc, eps) = if lam.is_zero() { (n(-1), f.zero()) } else { (-&lam.inv().unwrap(), n(1)) };
    let second = images(lin(f, &[(-&amb.inv().unwrap(), Y)]), lin(f, &[(ysc, X)]), gen(f, Z));
    Ok(WitnessCase {
        name: "O(1)(i) double line to W(gamma,eps)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Wge { gamma, eps }, f)),
        map: second.compose(&first),
    })
}

/// A = 0, B = a, C = b: the triple-line and full-plane subcases.
fn o1i_flat<R: Rng + ?Sized>(f: &FieldSpec, r: &mut R) -> TwistCoeffs {
    let mut t = o1i_sample(f, r);
    t.big_b = t.a.clone();
    t.big_c = t.b.clone();
    t
}

fn o1i_to_l10(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (t, r_ac) = draw(rng, |r| {
        let t = o1i_flat(f, r);
        if t.a.is_zero() || t.c.is_zero() {
            return None;
        }
        (&t.a * &t.c).sqrt().map(|s| (t, s))
    })?;
    let s_ac = &r_ac / &t.c;
    Ok(WitnessCase {
        name: "O(1)(i) triple line to L(1,0)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::L { e1: f.one(), e2: f.zero() }, f)),
        map: images(lin(f, &[(f.one(), Y), (-&(&t.b / &r_ac), X)]), lin(f, &[(s_ac, X)]), lin(f, &[(-&t.a, Z)])),
    })
}

fn o1i_to_l00(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| {
        let mut t = o1i_flat(f, r);
        (t.a, t.b, t.big_b, t.big_c) = (f.zero(), f.zero(), f.zero(), f.zero());
        (!t.c.is_zero()).then_some(t)
    })?;
    Ok(WitnessCase {
        name: "O(1)(i) triple line to L(0,0)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::L { e1: f.zero(), e2: f.zero() }, f)),
        map: images(lin(f, &[(-&t.c, Y)]), gen(f, X), gen(f, Z)),
    })
}

fn o1i_to_l01(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| {
        let mut t = o1i_flat(f, r);
        (t.a, t.big_b) = (f.zero(), f.zero());
        (!t.c.is_zero() && !t.b.is_zero()).then_some(t)
    })?;
    Ok(WitnessCase {
        name: "O(1)(i) triple line to L(0,1)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::L { e1: f.zero(), e2: f.one() }, f)),
        map: images(lin(f, &[(&t.c / &t.b, Y)]), gen(f, X), lin(f, &[(-&t.b, Z)])),
    })
}

fn o1i_to_p1(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| {
        let mut t = o1i_flat(f, r);
        t.c = f.zero();
        (!t.a.is_zero()).then_some(t)
    })?;
    Ok(WitnessCase {
        name: "O(1)(i) full plane to P(1)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Peps { eps: f.one() }, f)),
        map: images(lin(f, &[(f.one(), X), (-&(&t.b / &t.a), Y)]), gen(f, Y), lin(f, &[(t.a.clone(), Z)])),
    })
}

fn o2i_a0(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let mut t = sample_case(CaseLabel::O2i, f, rng);
    t.a = f.zero();
    let o = f.one();
    // xy-yx, zx-xy-xz, zy-yz
    let target = Presentation::from_terms(
        f,
        ['x', 'y', 'z'],
        &[
            vec![(o.clone(), X, Y), (-&o, Y, X)],
            vec![(o.clone(), Z, X), (-&o, X, Y), (-&o, X, Z)],
            vec![(o.clone(), Z, Y), (-&o, Y, Z)],
        ],
    )?;
    Ok(WitnessCase {
        name: "O(2)(i), a=0, to a double-line form",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(target),
        map: images(lin(f, &[(-&o, Z)]), gen(f, Y), lin(f, &[(o.clone(), X), (-&t.c, Y), (t.b.clone(), Z)])),
    })
}

fn o2i_to_w(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = draw(rng, |r| Some(sample_case(CaseLabel::O2i, f, r)).filter(|t| !t.a.is_zero()))?;
    Ok(WitnessCase {
        name: "O(2)(i), a nonzero, to W",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Wcal, f)),
        map: images(
            lin(f, &[(-&f.one(), X)]),
            gen(f, Y),
            lin(f, &[(t.a.clone(), Z), (-&t.c, Y), (t.b.clone(), X)]),
        ),
    })
}

fn o2ii_to_wd(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let t = sample_case(CaseLabel::O2ii, f, rng);
    let lam = &t.a / &(&f.one() - &t.d);
    Ok(WitnessCase {
        name: "O(2)(ii) to W(d)",
        params: t.to_string(),
        source: build_ttp_algebra(&t),
        target: Target::Algebra(build(FamilyId::Wd { d: t.d.clone() }, f)),
        map: images(gen(f, X), gen(f, Y), lin(f, &[(f.one(), Z), (lam, X), (-&t.c, Y)])),
    })
}

fn sdd_swap(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (d, dd) = draw(rng, |r| {
        let (d, dd) = (f.random(r), f.random(r));
        (!d.is_one() && !dd.is_one()).then_some((d, dd))
    })?;
    Ok(WitnessCase {
        name: "S(d,D) to S(D,d)",
        params: format!("d={d},D={dd}"),
        source: build(FamilyId::SdD { d: d.clone(), big_d: dd.clone() }, f),
        target: Target::Algebra(build(FamilyId::SdD { d: dd, big_d: d }, f)),
        map: images(gen(f, Y), gen(f, X), gen(f, Z)),
    })
}

/// Algebra map T(alpha,beta,gamma) -> T(gamma,alpha,beta): the inverse
/// transpose of the point-scheme map [[1,-1,0],[1,0,0],[0,0,-1]].
pub fn tabc_cycle_map(f: &FieldSpec) -> LinearMap {
    LinearMap::from_ints(f, [[1, -1, 0], [1, 0, 0], [0, 0, -1]]).inverse().unwrap().transpose()
}

fn tabc_params<R: Rng + ?Sized>(f: &FieldSpec, r: &mut R) -> Option<(Scalar, Scalar, Scalar)> {
    let (a, b, g) = (f.random(r), f.random(r), f.random(r));
    (!(&(&a + &b) + &g).is_zero()).then_some((a, b, g))
}

fn tabc_cycle(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (a, b, g) = draw(rng, |r| tabc_params(f, r))?;
    Ok(WitnessCase {
        name: "T(alpha,beta,gamma) to T(gamma,alpha,beta)",
        params: format!("alpha={a},beta={b},gamma={g}"),
        source: build(FamilyId::Tabc { alpha: a.clone(), beta: b.clone(), gamma: g.clone() }, f),
        target: Target::Algebra(build(FamilyId::Tabc { alpha: g, beta: a, gamma: b }, f)),
        map: tabc_cycle_map(f),
    })
}

fn tabc_swap(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (a, b, g) = draw(rng, |r| tabc_params(f, r))?;
    Ok(WitnessCase {
        name: "T(alpha,beta,gamma) to T(beta,alpha,gamma)",
        params: format!("alpha={a},beta={b},gamma={g}"),
        source: build(FamilyId::Tabc { alpha: a.clone(), beta: b.clone(), gamma: g.clone() }, f),
        target: Target::Algebra(build(FamilyId::Tabc { alpha: b, beta: a, gamma: g }, f)),
        map: images(gen(f, Y), gen(f, X), gen(f, Z)),
    })
}

/// Algebra map P(a) -> P(1/a) for k^2 = a: the inverse transpose of the
/// point-scheme map [r:s:t] -> [ks : kr : kr - s + t].
pub fn pa_invert_map(k: &Scalar) -> LinearMap {
    let f = k.field();
    let (z, o) = (f.zero(), f.one());
    let psi = LinearMap(vec![vec![z.clone(), k.clone(), z.clone()], vec![k.clone(), z.clone(), z], vec![k.clone(), -&o, o]]);
    psi.inverse().unwrap().transpose()
}

fn pa_invert(f: &FieldSpec, rng: &mut dyn rand::RngCore) -> Result<WitnessCase> {
    let (a, k) = draw(rng, |r| {
        let a = nz(f, r);
        if a.is_one() {
            return None;
        }
        a.sqrt().map(|k| (a, k))
    })?;
    Ok(WitnessCase {
        name: "P(a) to P(1/a)",
        params: format!("a={a}"),
        source: build(FamilyId::Pa { a: a.clone() }, f),
        target: Target::Algebra(build(FamilyId::Pa { a: a.inv().unwrap() }, f)),
        map: pa_invert_map(&k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_catalogued_witness_verifies() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in [13, 101] {
            let f = FieldSpec::fp(p).unwrap();
            for _ in 0..3 {
                for (name, w) in run_catalog(&f, &mut rng) {
                    let w = w.unwrap_or_else(|e| panic!("{name}: {e}"));
                    assert!(w.verify(), "{name} over F_{p} fails at {}", w.params);
                }
            }
        }
        assert!(catalog().len() >= 15);
    }
}
