//! Degree-truncated noncommutative Groebner bases for quadratic algebras.
//!
//! Overlaps between leading words are resolved degree by degree; because all
//! relations are homogeneous, a basis computed up to degree n gives exact
//! normal forms, Hilbert function values and centers in degrees <= n.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, ProjPoint, Scalar};
use crate::freealg::{idx, Presentation};
use crate::linalg;

/// Word over ranks 0 < 1 < 2; ordered by length, then left-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    code: u64,
}

const MAX_WORD: usize = 40;

fn pow3(k: u8) -> u64 {
    3u64.pow(k as u32)
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, code: 0 };

    pub fn from_ranks(r: &[u8]) -> Word {
        assert!(r.len() <= MAX_WORD);
        Word { len: r.len() as u8, code: r.iter().fold(0, |c, &d| c * 3 + d as u64) }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ranks(&self) -> Vec<u8> {
        (0..self.len).map(|i| ((self.code / pow3(self.len - 1 - i)) % 3) as u8).collect()
    }

    pub fn concat(&self, o: &Word) -> Word {
        Word { len: self.len + o.len, code: self.code * pow3(o.len) + o.code }
    }

    fn sub(&self, pos: u8, l: u8) -> Word {
        Word { len: l, code: (self.code / pow3(self.len - pos - l)) % pow3(l) }
    }

    fn prefix(&self, l: u8) -> Word {
        self.sub(0, l)
    }

    fn suffix(&self, l: u8) -> Word {
        self.sub(self.len - l, l)
    }

    /// All words of a given length in increasing order.
    pub fn all(len: u8) -> impl Iterator<Item = Word> {
        (0..pow3(len)).map(move |code| Word { len, code })
    }
}

/// Homogeneous or inhomogeneous element of the free algebra, in rank letters.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(s) => {
                *s = &*s + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(*w, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(*w, -c);
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> NcPoly {
        let mut r = NcPoly::default();
        for (w, c) in &self.terms {
            r.add_term(*w, c * s);
        }
        r
    }

    /// u * self * v
    pub fn sandwich(&self, u: &Word, v: &Word) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (u.concat(w).concat(v), c.clone())).collect() }
    }

    pub fn mul(&self, o: &NcPoly) -> NcPoly {
        let mut r = NcPoly::default();
        for (a, c) in &self.terms {
            for (b, e) in &o.terms {
                r.add_term(a.concat(b), c * e);
            }
        }
        r
    }

    fn monic(&self) -> NcPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }
}

/// Order on the generators, e.g. `r<s<t`; `ranks[g]` is the position of
/// generator g counted from the smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub ranks: [u8; 3],
}

impl MonomialOrder {
    pub fn standard() -> MonomialOrder {
        MonomialOrder { ranks: [0, 1, 2] }
    }

    pub fn parse(s: &str, gens: [char; 3]) -> Result<MonomialOrder> {
        let names: Vec<&str> = s.split('<').map(str::trim).collect();
        let bad = || Error::Parse { offset: 0, msg: format!("bad order {s:?}; expected e.g. x<y<z") };
        if names.len() != 3 {
            return Err(bad());
        }
        let mut ranks = [u8::MAX; 3];
        for (r, n) in names.iter().enumerate() {
            let mut ch = n.chars();
            let (Some(c), None) = (ch.next(), ch.next()) else { return Err(bad()) };
            let g = gens.iter().position(|&x| x == c).ok_or_else(bad)?;
            if ranks[g] != u8::MAX {
                return Err(bad());
            }
            ranks[g] = r as u8;
        }
        Ok(MonomialOrder { ranks })
    }

    fn gen_of_rank(&self, r: u8) -> usize {
        self.ranks.iter().position(|&x| x == r).unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedGb {
    pub field: FieldSpec,
    pub gens: [char; 3],
    pub order: MonomialOrder,
    pub bound: usize,
    /// monic, inter-reduced, sorted by leading word
    elems: Vec<NcPoly>,
    leads: HashMap<Word, usize>,
    lead_lens: BTreeSet<u8>,
}

impl TruncatedGb {
    pub fn compute(p: &Presentation, order: &MonomialOrder, bound: usize) -> Result<TruncatedGb> {
        if !(2..=MAX_WORD).contains(&bound) {
            return Err(Error::Bound(format!("degree bound {bound} must lie in 2..={MAX_WORD}")));
        }
        let mut gb = TruncatedGb {
            field: p.field.clone(),
            gens: p.gens,
            order: order.clone(),
            bound,
            elems: Vec::new(),
            leads: HashMap::new(),
            lead_lens: BTreeSet::new(),
        };
        let quad: Vec<NcPoly> = p
            .relation_space()
            .iter()
            .map(|r| {
                let mut f = NcPoly::default();
                for i in 0..3 {
                    for j in 0..3 {
                        f.add_term(gb.encode(&[i, j]), r[idx(i, j)].clone());
                    }
                }
                f
            })
            .collect();
        gb.absorb(quad);
        for d in 3..=bound {
            let mut cands = Vec::new();
            for (i, a) in gb.elems.iter().enumerate() {
                let la = a.leading().unwrap().0;
                for b in &gb.elems {
                    let lb = b.leading().unwrap().0;
                    for k in 1..la.len.min(lb.len) {
                        if la.len as usize + lb.len as usize - k as usize != d {
                            continue;
                        }
                        if la.suffix(k) == lb.prefix(k) {
                            let right = lb.suffix(lb.len - k);
                            let left = la.prefix(la.len - k);
                            let s = gb.elems[i].sandwich(&Word::EMPTY, &right).sub(&b.sandwich(&left, &Word::EMPTY));
                            cands.push(s);
                        }
                    }
                }
            }
            let reduced: Vec<NcPoly> = cands.par_iter().map(|c| gb.reduce(c)).filter(|c| !c.is_zero()).collect();
            gb.absorb(reduced);
        }
        Ok(gb)
    }

    /// Adds same-degree reduced elements after mutual row reduction.
    fn absorb(&mut self, fs: Vec<NcPoly>) {
        if fs.is_empty() {
            return;
        }
        let mut cols: Vec<Word> = fs.iter().flat_map(|f| f.terms.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        cols.reverse();
        let mut m: Vec<Vec<Scalar>> =
            fs.iter().map(|f| cols.iter().map(|w| f.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())).collect()).collect();
        linalg::rref(&mut m);
        for row in m {
            let mut f = NcPoly::default();
            for (w, c) in cols.iter().zip(row) {
                f.add_term(*w, c);
            }
            let f = f.monic();
            let lw = *f.leading().unwrap().0;
            self.leads.insert(lw, self.elems.len());
            self.lead_lens.insert(lw.len);
            self.elems.push(f);
        }
    }

    fn divisor(&self, w: &Word) -> Option<(usize, Word, Word)> {
        for &l in &self.lead_lens {
            if l > w.len {
                break;
            }
            for pos in 0..=(w.len - l) {
                if let Some(&i) = self.leads.get(&w.sub(pos, l)) {
                    return Some((i, w.prefix(pos), w.suffix(w.len - pos - l)));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.divisor(w).is_none()
    }

    /// Full reduction; exact for elements of degree at most the bound.
    pub fn reduce(&self, f: &NcPoly) -> NcPoly {
        let mut rest = f.clone();
        let mut out = NcPoly::default();
        while let Some((w, c)) = rest.terms.pop_last() {
            match self.divisor(&w) {
                Some((i, u, v)) => {
                    let g = &self.elems[i];
                    for (gw, gc) in g.terms.iter().rev().skip(1) {
                        rest.add_term(u.concat(gw).concat(&v), -(&c * gc));
                    }
                }
                None => {
                    out.terms.insert(w, c);
                }
            }
        }
        out
    }

    pub fn normal_form(&self, f: &NcPoly) -> Result<NcPoly> {
        if let Some((w, _)) = f.leading() {
            if w.len() > self.bound {
                return Err(Error::Bound(format!("element of degree {} exceeds bound {}", w.len(), self.bound)));
            }
        }
        Ok(self.reduce(f))
    }

    pub fn normal_words(&self, d: usize) -> Vec<Word> {
        Word::all(d as u8).filter(|w| self.is_normal(w)).collect()
    }

    pub fn hilbert(&self, d: usize) -> usize {
        Word::all(d as u8).filter(|w| self.is_normal(w)).count()
    }

    pub fn elements(&self) -> &[NcPoly] {
        &self.elems
    }

    pub fn elements_of_degree(&self, d: usize) -> Vec<&NcPoly> {
        self.elems.iter().filter(|f| f.leading().unwrap().0.len() == d).collect()
    }

    /// Word from generator indices.
    pub fn encode(&self, gens: &[usize]) -> Word {
        Word::from_ranks(&gens.iter().map(|&g| self.order.ranks[g]).collect::<Vec<_>>())
    }

    pub fn decode(&self, w: &Word) -> Vec<usize> {
        w.ranks().iter().map(|&r| self.order.gen_of_rank(r)).collect()
    }

    /// Element from (coefficient, generator-index word) pairs.
    pub fn element(&self, terms: &[(Scalar, Vec<usize>)]) -> NcPoly {
        let mut f = NcPoly::default();
        for (c, w) in terms {
            f.add_term(self.encode(w), c.clone());
        }
        f
    }

    pub fn generator(&self, g: usize) -> NcPoly {
        self.element(&[(self.field.one(), vec![g])])
    }

    pub fn word_string(&self, w: &Word) -> String {
        let gens = self.decode(w);
        let mut s = String::new();
        let mut i = 0;
        while i < gens.len() {
            let mut j = i;
            while j < gens.len() && gens[j] == gens[i] {
                j += 1;
            }
            s.push(self.gens[gens[i]]);
            if j - i > 1 {
                s.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        s
    }

    pub fn format(&self, f: &NcPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in f.terms.iter().rev().enumerate() {
            let neg = matches!(c, Scalar::Q(q) if num_traits::Signed::is_negative(q));
            let mag = if neg { -c } else { c.clone() };
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if !mag.is_one() || w.is_empty() {
                out.push_str(&format!("{mag}"));
                if !w.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&self.word_string(w));
        }
        out
    }

    /// Whether two families of elements span the same subspace modulo the ideal.
    pub fn same_span(&self, a: &[NcPoly], b: &[NcPoly]) -> bool {
        let to_rows = |fs: &[NcPoly], cols: &[Word]| -> Vec<Vec<Scalar>> {
            fs.iter()
                .map(|f| {
                    let nf = self.reduce(f);
                    cols.iter().map(|w| nf.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())).collect()
                })
                .collect()
        };
        let cols: Vec<Word> = a
            .iter()
            .chain(b)
            .flat_map(|f| self.reduce(f).terms.keys().copied().collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let ra = linalg::row_space(&to_rows(a, &cols));
        let rb = linalg::row_space(&to_rows(b, &cols));
        ra == rb
    }
}

impl fmt::Display for TruncatedGb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elems {
            writeln!(f, "{}", self.format(e))?;
        }
        Ok(())
    }
}

pub fn truncated_groebner(p: &Presentation, order: &MonomialOrder, n: usize) -> Result<TruncatedGb> {
    TruncatedGb::compute(p, order, n)
}

/// dim A_0, ..., dim A_n.
pub fn hilbert_function(p: &Presentation, n: usize) -> Result<Vec<usize>> {
    let gb = TruncatedGb::compute(p, &MonomialOrder::standard(), n.max(2))?;
    Ok((0..=n).map(|d| gb.hilbert(d)).collect())
}

/// Basis of the degree-d center, computed with a basis truncated at n > d.
#[derive(Clone, Debug)]
pub struct CenterBasis {
    pub degree: usize,
    pub gb: TruncatedGb,
    pub basis: Vec<NcPoly>,
}

impl CenterBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn strings(&self) -> Vec<String> {
        self.basis.iter().map(|f| self.gb.format(f)).collect()
    }

    /// Checks z w = w z for every word w with deg z + deg w <= bound.
    pub fn verify(&self) -> bool {
        let max = self.gb.bound.saturating_sub(self.degree);
        self.basis.iter().all(|z| {
            (1..=max).all(|l| {
                Word::all(l as u8).all(|w| {
                    let wp = NcPoly { terms: [(w, self.gb.field.one())].into_iter().collect() };
                    self.gb.reduce(&z.mul(&wp).sub(&wp.mul(z))).is_zero()
                })
            })
        })
    }
}

pub fn center_in_degree(p: &Presentation, d: usize, n: usize) -> Result<CenterBasis> {
    center_in_degree_with(p, &MonomialOrder::standard(), d, n)
}

pub fn center_in_degree_with(p: &Presentation, order: &MonomialOrder, d: usize, n: usize) -> Result<CenterBasis> {
    if n < d + 1 {
        return Err(Error::Bound(format!("bound {n} must exceed the degree {d}")));
    }
    let gb = TruncatedGb::compute(p, order, n)?;
    let f = &gb.field;
    let basis = gb.normal_words(d);
    let next = gb.normal_words(d + 1);
    let pos: HashMap<Word, usize> = next.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    // rows: (generator, normal word of degree d+1); columns: basis words
    let mut m = vec![vec![f.zero(); basis.len()]; 3 * next.len()];
    for (c, b) in basis.iter().enumerate() {
        let bp = NcPoly { terms: [(*b, f.one())].into_iter().collect() };
        for g in 0..3 {
            let gp = gb.generator(g);
            let comm = gb.reduce(&bp.mul(&gp).sub(&gp.mul(&bp)));
            for (w, s) in comm.terms() {
                m[g * next.len() + pos[w]][c] = s.clone();
            }
        }
    }
    let mut ker = linalg::kernel(&m, basis.len(), f);
    // echelon with respect to the largest words first
    for v in ker.iter_mut() {
        v.reverse();
    }
    linalg::rref(&mut ker);
    let elems = ker
        .into_iter()
        .map(|mut v| {
            v.reverse();
            let mut e = NcPoly::default();
            for (w, s) in basis.iter().zip(v) {
                e.add_term(*w, s);
            }
            e
        })
        .collect();
    Ok(CenterBasis { degree: d, gb, basis: elems })
}

#[derive(Clone, Debug, PartialEq)]
pub enum PairKind {
    /// rs - q sr = 0
    QSkew(Scalar),
    /// rs - sr + s^2 = 0
    Jordan,
}

/// Pairs of independent degree-1 elements (r, s) satisfying the given
/// degree-2 relation. In degree 2 the normal form vanishes exactly when the
/// element lies in the relation space, so for each projective s the
/// condition on r is linear: solve it and enumerate the solution set.
///
/// QSkew pairs are listed with both r and s up to scalars. Jordan pairs are
/// only invariant under the common rescaling (r, s) -> (lr, ls) and under
/// r -> r + m s, so s is normalized and r is reduced to vanish at the pivot
/// of s.
pub fn find_degree1_pairs(p: &Presentation, kind: &PairKind) -> Result<Vec<([Scalar; 3], ProjPoint)>> {
    let f = &p.field;
    let pts = f.projective_points()?;
    let elems = f.elements()?;
    let ann = linalg::kernel(p.relation_space(), 9, f);
    let q = match kind {
        PairKind::QSkew(q) => q.clone(),
        PairKind::Jordan => f.one(),
    };
    let mut out: Vec<([Scalar; 3], ProjPoint)> = pts
        .par_iter()
        .flat_map_iter(|s| {
            let sc = s.coords();
            // row w: coefficient of r_k in <w, rs - q sr>, plus the constant part
            let rows: Vec<Vec<Scalar>> = ann
                .iter()
                .map(|w| {
                    let mut row: Vec<Scalar> = (0..3)
                        .map(|k| {
                            let mut a = f.zero();
                            for j in 0..3 {
                                a = &a + &(&w[idx(k, j)] * &sc[j]);
                                a = &a - &(&q * &(&w[idx(j, k)] * &sc[j]));
                            }
                            a
                        })
                        .collect();
                    let mut c = f.zero();
                    if *kind == PairKind::Jordan {
                        for i in 0..3 {
                            for j in 0..3 {
                                c = &c + &(&w[idx(i, j)] * &(&sc[i] * &sc[j]));
                            }
                        }
                    }
                    row.push(c);
                    row
                })
                .collect();
            let ker = linalg::kernel(&rows, 4, f);
            let lin: Vec<Vec<Scalar>> = rows.iter().map(|r| r[..3].to_vec()).collect();
            let hom = linalg::kernel(&lin, 3, f);
            let particular = ker.iter().find(|v| !v[3].is_zero()).map(|v| {
                let d = v[3].inv().expect("nonzero");
                [&v[0] * &d, &v[1] * &d, &v[2] * &d]
            });
            let mut found: Vec<([Scalar; 3], ProjPoint)> = Vec::new();
            let base = match kind {
                PairKind::QSkew(_) => Some([f.zero(), f.zero(), f.zero()]),
                PairKind::Jordan => particular,
            };
            if let Some(base) = base {
                let pivot = sc.iter().position(|c| !c.is_zero()).expect("projective point");
                for coeffs in combos(&elems, hom.len()) {
                    let mut r = base.clone();
                    for (c, v) in coeffs.iter().zip(&hom) {
                        for k in 0..3 {
                            r[k] = &r[k] + &(c * &v[k]);
                        }
                    }
                    let r = match kind {
                        PairKind::QSkew(_) => match ProjPoint::new(r) {
                            Some(rp) if &rp != s => rp.0,
                            _ => continue,
                        },
                        PairKind::Jordan => {
                            let m = r[pivot].clone();
                            let r = [&r[0] - &(&m * &sc[0]), &r[1] - &(&m * &sc[1]), &r[2] - &(&m * &sc[2])];
                            if r.iter().all(|c| c.is_zero()) {
                                continue;
                            }
                            r
                        }
                    };
                    found.push((r, s.clone()));
                }
            }
            found.sort();
            found.dedup();
            found.into_iter()
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// All coefficient tuples of length n over the given elements.
fn combos(elems: &[Scalar], n: usize) -> Vec<Vec<Scalar>> {
    let mut acc = vec![Vec::new()];
    for _ in 0..n {
        acc = acc
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn pres(f: &FieldSpec, gens: [char; 3], rels: &[&[(i64, usize, usize)]]) -> Presentation {
        let rels: Vec<Vec<(Scalar, usize, usize)>> =
            rels.iter().map(|r| r.iter().map(|&(c, i, j)| (f.from_i64(c), i, j)).collect()).collect();
        Presentation::from_terms(f, gens, &rels).unwrap()
    }

    /// dim of the ideal in degree d, from the span of u r v; independent of the basis.
    fn ideal_dim(p: &Presentation, d: usize) -> usize {
        let gb = TruncatedGb::compute(p, &MonomialOrder::standard(), 2).unwrap();
        let rels: Vec<NcPoly> = p
            .relation_space()
            .iter()
            .map(|r| {
                let mut f = NcPoly::default();
                for k in 0..9 {
                    f.add_term(gb.encode(&[k / 3, k % 3]), r[k].clone());
                }
                f
            })
            .collect();
        let mut rows = Vec::new();
        for l in 0..=(d - 2) {
            for u in Word::all(l as u8) {
                for v in Word::all((d - 2 - l) as u8) {
                    for r in &rels {
                        let e = r.sandwich(&u, &v);
                        rows.push(Word::all(d as u8).map(|w| e.terms.get(&w).cloned().unwrap_or_else(|| p.field.zero())).collect());
                    }
                }
            }
        }
        linalg::rank(&rows)
    }

    #[test]
    fn free_algebra_hilbert() {
        let f = q();
        let p = Presentation::new(&f, ['x', 'y', 'z'], vec![]).unwrap();
        // no relations: bound of 2 still needed
        let gb = TruncatedGb::compute(&p, &MonomialOrder::standard(), 3).unwrap();
        assert_eq!((0..=3).map(|d| gb.hilbert(d)).collect::<Vec<_>>(), vec![1, 3, 9, 27]);
    }

    #[test]
    fn commutative_polynomial_ring() {
        let f = FieldSpec::PrimeField { p: 13 };
        let p = pres(&f, ['x', 'y', 'z'], &[&[(1, 0, 1), (-1, 1, 0)], &[(1, 1, 2), (-1, 2, 1)], &[(1, 2, 0), (-1, 0, 2)]]);
        assert_eq!(hilbert_function(&p, 6).unwrap(), vec![1, 3, 6, 10, 15, 21, 28]);
        let z = center_in_degree(&p, 1, 3).unwrap();
        assert_eq!(z.dim(), 3);
        assert!(z.verify());
    }

    #[test]
    fn hilbert_matches_ideal_rank() {
        let f = FieldSpec::PrimeField { p: 13 };
        let p = pres(&f, ['x', 'y', 'z'], &[&[(1, 0, 1), (-2, 1, 0)], &[(1, 2, 2), (3, 0, 0)], &[(1, 1, 2), (1, 0, 2), (5, 1, 1)]]);
        let h = hilbert_function(&p, 5).unwrap();
        for d in 2..=5 {
            assert_eq!(h[d], 3usize.pow(d as u32) - ideal_dim(&p, d), "degree {d}");
        }
    }

    #[test]
    fn degree_one_pairs() {
        let f = FieldSpec::fp(5).unwrap();
        let comm = pres(&f, ['x', 'y', 'z'], &[&[(1, 0, 1), (-1, 1, 0)], &[(1, 1, 2), (-1, 2, 1)], &[(1, 2, 0), (-1, 0, 2)]]);
        // every ordered pair of distinct points commutes; s^2 never vanishes
        assert_eq!(find_degree1_pairs(&comm, &PairKind::QSkew(f.one())).unwrap().len(), 31 * 30);
        assert!(find_degree1_pairs(&comm, &PairKind::Jordan).unwrap().is_empty());
        // yx = xy - x^2, z central: (r, s) = (y, x) up to r -> r + m s
        let jordan = pres(&f, ['x', 'y', 'z'], &[&[(1, 1, 0), (-1, 0, 1), (1, 0, 0)], &[(1, 1, 2), (-1, 2, 1)], &[(1, 2, 0), (-1, 0, 2)]]);
        let pairs = find_degree1_pairs(&jordan, &PairKind::Jordan).unwrap();
        let y = [f.zero(), f.one(), f.zero()];
        let x = ProjPoint::from_ints(&f, [1, 0, 0]).unwrap();
        assert!(pairs.contains(&(y, x)));
        for (r, s) in &pairs {
            let v: Vec<Scalar> = (0..9)
                .map(|k| {
                    let (i, j) = (k / 3, k % 3);
                    let sc = s.coords();
                    &(&(&r[i] * &sc[j]) - &(&sc[i] * &r[j])) + &(&sc[i] * &sc[j])
                })
                .collect();
            assert!(jordan.contains(&v));
        }
    }

    #[test]
    fn order_parsing() {
        let o = MonomialOrder::parse("t<r<s", ['r', 's', 't']).unwrap();
        assert_eq!(o.ranks, [1, 2, 0]);
        assert!(MonomialOrder::parse("r<r<s", ['r', 's', 't']).is_err());
        assert!(MonomialOrder::parse("r<s", ['r', 's', 't']).is_err());
    }

    #[test]
    fn bound_errors() {
        let f = q();
        let p = Presentation::new(&f, ['x', 'y', 'z'], vec![]).unwrap();
        assert!(TruncatedGb::compute(&p, &MonomialOrder::standard(), 1).is_err());
        assert!(center_in_degree(&p, 2, 2).is_err());
        let gb = TruncatedGb::compute(&p, &MonomialOrder::standard(), 2).unwrap();
        let w = gb.element(&[(f.one(), vec![0, 0, 0])]);
        assert!(gb.normal_form(&w).is_err());
    }
}
