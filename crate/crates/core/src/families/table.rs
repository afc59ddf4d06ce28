//! Reproduction of the three case tables: each cell is sampled, built,
//! classified and checked for regularity against the expected entry.

use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::freealg::Presentation;
use crate::ttp::{build_ttp_algebra, case_label, sample_case, CaseLabel, TwistCoeffs};

use super::classify::{EcSubtag, TypeLabel};
use super::{classify_type, geometric_nondegenerate, FamilyId};

/// One drawn instance of a cell.
struct Sample {
    desc: String,
    pres: Presentation,
    /// set for named algebras, whose regularity predicate is checked too
    family: Option<FamilyId>,
    expected: TypeLabel,
}

type Draw = fn(&FieldSpec, &mut dyn RngCore) -> Option<Sample>;

struct Cell {
    table: u8,
    row: &'static str,
    expected: &'static str,
    draw: Draw,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellResult {
    pub table: u8,
    pub row: String,
    pub expected: String,
    pub samples: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl CellResult {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.samples > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub field: String,
    pub samples_per_cell: usize,
    pub cells: Vec<CellResult>,
}

impl TableReport {
    pub fn mismatches(&self) -> usize {
        self.cells.iter().filter(|c| !c.ok()).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "samples_per_cell": self.samples_per_cell,
            "cells": self.cells,
            "mismatches": self.mismatches(),
        })
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            let status = if c.ok() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} table {} | {} | expected {} | {}/{}", c.table, c.row, c.expected, c.passed, c.samples)?;
            for fail in &c.failures {
                writeln!(f, "    {fail}")?;
            }
        }
        write!(f, "{} cells, {} mismatches", self.cells.len(), self.mismatches())
    }
}

/// Samples every cell of the requested tables (all three when `tables` is
/// empty) with a per-cell seed derived from `seed`, so the report does not
/// depend on the thread count.
pub fn table_report(field: &FieldSpec, samples: usize, seed: u64, tables: &[u8]) -> Result<TableReport> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let cells: Vec<(usize, Cell)> =
        cells().into_iter().enumerate().filter(|(_, c)| tables.is_empty() || tables.contains(&c.table)).collect();
    let results = cells.into_par_iter().map(|(i, c)| run_cell(field, &c, samples, seed.wrapping_add(i as u64 * 7919))).collect();
    Ok(TableReport { field: field.to_string(), samples_per_cell: samples, cells: results })
}

fn run_cell(field: &FieldSpec, cell: &Cell, samples: usize, seed: u64) -> CellResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut res = CellResult {
        table: cell.table,
        row: cell.row.into(),
        expected: cell.expected.into(),
        samples: 0,
        passed: 0,
        failures: vec![],
    };
    let mut attempts = 0;
    while res.samples < samples {
        attempts += 1;
        if attempts > 200 * samples {
            res.failures.push("could not draw enough admissible parameters".into());
            break;
        }
        let Some(s) = (cell.draw)(field, &mut rng) else { continue };
        res.samples += 1;
        match check(&s) {
            Ok(()) => res.passed += 1,
            Err(msg) => res.failures.push(format!("{}: {msg}", s.desc)),
        }
    }
    res
}

fn check(s: &Sample) -> std::result::Result<(), String> {
    let got = classify_type(&s.pres).map_err(|e| format!("classification failed: {e}"))?;
    if got != s.expected {
        return Err(format!("type {got}, expected {}", s.expected));
    }
    let regular = s.expected.is_regular_type();
    // exceptional algebras are nondegenerate yet not regular
    let nondeg = geometric_nondegenerate(&s.pres).map_err(|e| e.to_string())?;
    if nondeg != regular && s.expected != TypeLabel::Exceptional {
        return Err(format!("nondegeneracy {nondeg} disagrees with the expected regularity {regular}"));
    }
    if let Some(id) = &s.family {
        let pred = id.is_as_regular().map_err(|e| e.to_string())?;
        if pred != regular {
            return Err(format!("regularity predicate {pred}, expected {regular}"));
        }
    }
    Ok(())
}

fn named(id: FamilyId, f: &FieldSpec, expected: TypeLabel) -> Option<Sample> {
    let pres = id.make(f).ok()?;
    Some(Sample { desc: id.to_string(), pres, family: Some(id), expected })
}

fn raw(t: TwistCoeffs, expected: TypeLabel) -> Option<Sample> {
    case_label(&t)?;
    Some(Sample { desc: format!("TTP {t}"), pres: build_ttp_algebra(&t), family: None, expected })
}

fn rand_nz(f: &FieldSpec, r: &mut dyn RngCore) -> Scalar {
    f.random_nonzero(r)
}

fn not01(f: &FieldSpec, r: &mut dyn RngCore) -> Scalar {
    loop {
        let s = f.random(r);
        if !s.is_zero() && !s.is_one() {
            return s;
        }
    }
}

fn n(f: &FieldSpec, k: i64) -> Scalar {
    f.from_i64(k)
}

const EC_B: TypeLabel = TypeLabel::EC(EcSubtag::MinusOne);

fn cells() -> Vec<Cell> {
    use TypeLabel::*;
    vec![
        Cell { table: 1, row: "T(g,h), h(g^2+4h) != 0", expected: "EC (minus-one)", draw: |f, r| {
            let (g, h) = (f.random(r), rand_nz(f, r));
            if (&(&g * &g) + &(&n(f, 4) * &h)).is_zero() {
                return None;
            }
            named(FamilyId::Tgh { g, h }, f, EC_B)
        }},
        Cell { table: 1, row: "T(l), l not in {0,-4}", expected: "EC (minus-one)", draw: |f, r| {
            let l = rand_nz(f, r);
            if l == n(f, -4) {
                return None;
            }
            named(FamilyId::Tell { l }, f, EC_B)
        }},
        Cell { table: 1, row: "T(0,1)", expected: "EC (minus-one)", draw: |f, _| {
            named(FamilyId::Tgh { g: f.zero(), h: f.one() }, f, EC_B)
        }},
        Cell { table: 1, row: "T(g,h), h != 0 = g^2+4h", expected: "NC2", draw: |f, r| {
            let g = rand_nz(f, r);
            let h = -&(&(&g * &g) / &n(f, 4));
            named(FamilyId::Tgh { g, h }, f, NC2)
        }},
        Cell { table: 1, row: "T(-4)", expected: "NC2", draw: |f, _| named(FamilyId::Tell { l: n(f, -4) }, f, NC2) },
        Cell { table: 1, row: "T(g,0)", expected: "exceptional", draw: |f, r| {
            let g = if r.gen_bool(0.5) { f.zero() } else { f.random(r) };
            named(FamilyId::Tgh { g, h: f.zero() }, f, Exceptional)
        }},
        Cell { table: 2, row: "R(iii), b^2-4ac+4c = 0", expected: "S2", draw: |f, r| {
            let mut t = sample_case(CaseLabel::R3, f, r);
            t.c = &(&t.b * &t.b) / &(&n(f, 4) * &(&t.a - &f.one()));
            // the three lines are defined over the field exactly when a-1 is a square
            (&t.a - &f.one()).sqrt()?;
            raw(t, S2)
        }},
        Cell { table: 2, row: "U", expected: "S2", draw: |f, _| named(FamilyId::U, f, S2) },
        Cell { table: 2, row: "R(iii), b^2-4ac+4c != 0", expected: "S2'", draw: |f, r| {
            let t = sample_case(CaseLabel::R3, f, r);
            let s = &(&(&t.b * &t.b) - &(&n(f, 4) * &(&t.a * &t.c))) + &(&n(f, 4) * &t.c);
            if s.is_zero() {
                return None;
            }
            raw(t, S2p)
        }},
        Cell { table: 2, row: "U'", expected: "S2'", draw: |f, _| named(FamilyId::Uprime, f, S2p) },
        Cell { table: 2, row: "R(i), B+d = 0", expected: "not AS-regular", draw: |f, r| {
            let mut t = sample_case(CaseLabel::R1, f, r);
            t.d = -&t.big_b;
            (case_label(&t) == Some(CaseLabel::R1)).then_some(())?;
            raw(t, NotRegular)
        }},
        Cell { table: 2, row: "R(i), B+d != 0", expected: "not AS-regular", draw: |f, r| {
            let t = sample_case(CaseLabel::R1, f, r);
            (!(&t.big_b + &t.d).is_zero()).then_some(())?;
            raw(t, NotRegular)
        }},
        Cell { table: 2, row: "R(iv), B+d != 0", expected: "not AS-regular", draw: |f, r| {
            let t = sample_case(CaseLabel::R4, f, r);
            (!(&t.big_b + &t.d).is_zero()).then_some(())?;
            raw(t, NotRegular)
        }},
        Cell { table: 2, row: "R(iv), B+d = 0", expected: "not AS-regular", draw: |f, r| {
            let mut t = sample_case(CaseLabel::R4, f, r);
            t.d = -&t.big_b;
            (case_label(&t) == Some(CaseLabel::R4)).then_some(())?;
            raw(t, NotRegular)
        }},
        Cell { table: 2, row: "R0", expected: "not AS-regular", draw: |f, _| named(FamilyId::R0, f, NotRegular) },
        Cell { table: 2, row: "R1", expected: "not AS-regular", draw: |f, _| named(FamilyId::R1, f, NotRegular) },
        Cell { table: 2, row: "R(q)", expected: "not AS-regular", draw: |f, r| named(FamilyId::Rq { q: f.random(r) }, f, NotRegular) },
        Cell { table: 3, row: "O(1)(i), A=0 != B-a, (C-b)^2 != 4c(a-B)", expected: "T1", draw: |f, r| {
            let t = o1i(f, r);
            if t.big_b == t.a || !disc(&t).is_square() || disc(&t).is_zero() {
                return None;
            }
            raw(t, T1)
        }},
        Cell { table: 3, row: "T(alpha,beta,gamma)", expected: "T1", draw: |f, r| {
            let (alpha, beta, gamma) = (f.random(r), f.random(r), f.random(r));
            named(FamilyId::Tabc { alpha, beta, gamma }, f, T1)
        }},
        Cell { table: 3, row: "O(1)(i), A=0 != B-a, (C-b)^2 = 4c(a-B)", expected: "WL2 or WL3", draw: |f, r| {
            let mut t = o1i(f, r);
            let bma = &t.big_b - &t.a;
            if bma.is_zero() {
                return None;
            }
            let cb = &t.big_c - &t.b;
            t.c = -&(&(&cb * &cb) / &(&n(f, 4) * &bma));
            // the double-line reduction lands on W(gamma,1) exactly when C + beta B != 0
            let beta = -&(&cb / &(&n(f, 2) * &bma));
            let lam = &t.big_c + &(&beta * &t.big_b);
            raw(t, if lam.is_zero() { WL2 } else { WL3 })
        }},
        Cell { table: 3, row: "W(gamma,0)", expected: "WL2", draw: |f, r| {
            named(FamilyId::Wge { gamma: f.random(r), eps: f.zero() }, f, WL2)
        }},
        Cell { table: 3, row: "W(gamma,1)", expected: "WL3", draw: |f, r| {
            named(FamilyId::Wge { gamma: f.random(r), eps: f.one() }, f, WL3)
        }},
        Cell { table: 3, row: "O(1)(i), A=0, a=B, C-b=0 != c, a=b=0", expected: "TL1", draw: |f, r| {
            let mut t = flat(f, r);
            (t.a, t.b, t.big_b, t.big_c) = (f.zero(), f.zero(), f.zero(), f.zero());
            t.c = rand_nz(f, r);
            raw(t, TL1)
        }},
        Cell { table: 3, row: "O(1)(i), A=0, a=B, C-b=0 != c, a != 0", expected: "TL2", draw: |f, r| {
            let mut t = flat(f, r);
            t.a = rand_nz(f, r);
            t.big_b = t.a.clone();
            t.c = rand_nz(f, r);
            raw(t, TL2)
        }},
        Cell { table: 3, row: "O(1)(i), A=0, a=B, C-b=0 != c, a=0 != b", expected: "TL4", draw: |f, r| {
            let mut t = flat(f, r);
            (t.a, t.big_b) = (f.zero(), f.zero());
            t.b = rand_nz(f, r);
            t.big_c = t.b.clone();
            t.c = rand_nz(f, r);
            raw(t, TL4)
        }},
        Cell { table: 3, row: "L(0,0)", expected: "TL1", draw: |f, _| named(FamilyId::L { e1: f.zero(), e2: f.zero() }, f, TL1) },
        Cell { table: 3, row: "L(1,0)", expected: "TL2", draw: |f, _| named(FamilyId::L { e1: f.one(), e2: f.zero() }, f, TL2) },
        Cell { table: 3, row: "L(0,1)", expected: "TL4", draw: |f, _| named(FamilyId::L { e1: f.zero(), e2: f.one() }, f, TL4) },
        Cell { table: 3, row: "O(1)(i), A=0=B-a, C-b=0=c, a != 0", expected: "P2", draw: |f, r| {
            let mut t = flat(f, r);
            t.a = rand_nz(f, r);
            t.big_b = t.a.clone();
            t.c = f.zero();
            raw(t, P2)
        }},
        Cell { table: 3, row: "P(1)", expected: "P2", draw: |f, _| named(FamilyId::Peps { eps: f.one() }, f, P2) },
        Cell { table: 3, row: "P(0)", expected: "P1", draw: |f, _| named(FamilyId::Peps { eps: f.zero() }, f, P1) },
        Cell { table: 3, row: "O(1)(iv), C=0, d=D not in {0,1}", expected: "P1", draw: |f, r| {
            let mut t = o1iv(f, r)?;
            t.big_d = not01(f, r);
            t.d = t.big_d.clone();
            raw(t, P1)
        }},
        Cell { table: 3, row: "S(d,d), d not in {0,1}", expected: "P1", draw: |f, r| {
            let d = not01(f, r);
            named(FamilyId::SdD { d: d.clone(), big_d: d }, f, P1)
        }},
        Cell { table: 3, row: "S(d,D), dD = 0", expected: "not AS-regular", draw: |f, r| {
            let d = not01(f, r);
            let (d, big_d) = if r.gen_bool(0.5) { (d, f.zero()) } else { (f.zero(), d) };
            named(FamilyId::SdD { d, big_d }, f, NotRegular)
        }},
        Cell { table: 3, row: "O(1)(iv), C=0, d != D, d,D not in {0,1}", expected: "S1", draw: |f, r| {
            let mut t = o1iv(f, r)?;
            t.big_d = not01(f, r);
            t.d = not01(f, r);
            (t.d != t.big_d).then_some(())?;
            raw(t, S1)
        }},
        Cell { table: 3, row: "S(d,D), d != D, d,D not in {0,1}", expected: "S1", draw: |f, r| {
            let (d, big_d) = (not01(f, r), not01(f, r));
            (d != big_d).then_some(())?;
            named(FamilyId::SdD { d, big_d }, f, S1)
        }},
        Cell { table: 3, row: "O(1)(ii), d != 0, c = 0", expected: "S1", draw: |f, r| {
            let mut t = sample_case(CaseLabel::O1ii, f, r);
            t.c = f.zero();
            (!t.d.is_zero()).then_some(())?;
            raw(t, S1)
        }},
        Cell { table: 3, row: "S'(d,0), d != 0", expected: "S1", draw: |f, r| {
            named(FamilyId::Sprime { d: not01(f, r), eps: f.zero() }, f, S1)
        }},
        Cell { table: 3, row: "O(1)(ii), d != 0, c != 0", expected: "S1'", draw: |f, r| {
            let mut t = sample_case(CaseLabel::O1ii, f, r);
            t.c = rand_nz(f, r);
            (!t.d.is_zero()).then_some(())?;
            raw(t, S1p)
        }},
        Cell { table: 3, row: "S'(d,1), d != 0", expected: "S1'", draw: |f, r| {
            named(FamilyId::Sprime { d: not01(f, r), eps: f.one() }, f, S1p)
        }},
        Cell { table: 3, row: "S'(0,eps)", expected: "not AS-regular", draw: |f, r| {
            let eps = if r.gen_bool(0.5) { f.one() } else { f.zero() };
            named(FamilyId::Sprime { d: f.zero(), eps }, f, NotRegular)
        }},
        Cell { table: 3, row: "O(2)(i), a != 0", expected: "T'", draw: |f, r| {
            let t = sample_case(CaseLabel::O2i, f, r);
            (!t.a.is_zero()).then_some(())?;
            raw(t, Tp)
        }},
        Cell { table: 3, row: "W", expected: "T'", draw: |f, _| named(FamilyId::Wcal, f, Tp) },
        Cell { table: 3, row: "O(2)(ii), d not in {0,1}", expected: "WL1", draw: |f, r| {
            let t = sample_case(CaseLabel::O2ii, f, r);
            (!t.d.is_zero()).then_some(())?;
            raw(t, WL1)
        }},
        Cell { table: 3, row: "W(d), d not in {0,1}", expected: "WL1", draw: |f, r| named(FamilyId::Wd { d: not01(f, r) }, f, WL1) },
        Cell { table: 3, row: "W(0)", expected: "not AS-regular", draw: |f, _| named(FamilyId::Wd { d: f.zero() }, f, NotRegular) },
    ]
}

fn o1i(f: &FieldSpec, r: &mut dyn RngCore) -> TwistCoeffs {
    let mut t = sample_case(CaseLabel::O1i, f, r);
    t.big_a = f.zero();
    t
}

/// A = 0, B = a, C = b.
fn flat(f: &FieldSpec, r: &mut dyn RngCore) -> TwistCoeffs {
    let mut t = o1i(f, r);
    t.big_b = t.a.clone();
    t.big_c = t.b.clone();
    t
}

fn disc(t: &TwistCoeffs) -> Scalar {
    let cb = &t.big_c - &t.b;
    &(&cb * &cb) - &(&(&t.field().from_i64(4) * &t.c) * &(&t.a - &t.big_b))
}

fn o1iv(f: &FieldSpec, r: &mut dyn RngCore) -> Option<TwistCoeffs> {
    let mut t = sample_case(CaseLabel::O1iv, f, r);
    t.big_c = f.zero();
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_pass_over_f13() {
        let f = FieldSpec::fp(13).unwrap();
        let rep = table_report(&f, 5, 11, &[]).unwrap();
        assert_eq!(rep.mismatches(), 0, "\n{rep}");
    }
}
