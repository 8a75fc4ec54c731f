//! The loop `U = {1 + a}` of unital elements of `C`, and the Malbos pair model.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::grassmann::{GElement, Monomial};
use crate::report::{CheckEntry, Report};
use crate::twisted::{associator, cmul};
use crate::words::{combine, eval_left_normed, identity, LeftNormedWord};

/// Unital element `1 + a` with `a` nilpotent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopElement(GElement);

impl LoopElement {
    pub fn new(value: GElement) -> Result<LoopElement> {
        match value.constant_term() {
            Gf3::ONE => Ok(LoopElement(value)),
            c => Err(Error::NotUnital(c.value())),
        }
    }

    pub fn one() -> LoopElement {
        LoopElement(GElement::one())
    }

    /// `1 + a`.
    pub fn from_nilpotent(a: &GElement) -> Result<LoopElement> {
        LoopElement::new(&GElement::one() + a)
    }

    /// `1 + i(0)`.
    pub fn generator(i: u32) -> LoopElement {
        LoopElement(&GElement::one() + &GElement::generator(i))
    }

    pub fn value(&self) -> &GElement {
        &self.0
    }

    pub fn into_value(self) -> GElement {
        self.0
    }

    pub fn nilpotent_part(&self) -> GElement {
        &self.0 - &GElement::one()
    }

    pub fn is_one(&self) -> bool {
        self.0 == GElement::one()
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

pub fn lmul(u: &LoopElement, v: &LoopElement) -> LoopElement {
    LoopElement(cmul(&u.0, &v.0))
}

/// `u^2`, checked against `u * u^2 = 1`.
pub fn linv(u: &LoopElement) -> Result<LoopElement> {
    let sq = lmul(u, u);
    let check = lmul(u, &sq);
    if !check.is_one() {
        return Err(Error::NonInvertible(check.to_string()));
    }
    Ok(sq)
}

/// `((u v) w) (u (v w))^-1`.
pub fn lassoc(u: &LoopElement, v: &LoopElement, w: &LoopElement) -> Result<LoopElement> {
    let lhs = lmul(&lmul(u, v), w);
    let rhs = lmul(u, &lmul(v, w));
    Ok(lmul(&lhs, &linv(&rhs)?))
}

/// `(u u) u`.
pub fn lcube(u: &LoopElement) -> LoopElement {
    lmul(&lmul(u, u), u)
}

/// Loop words over generators `1 + i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LoopWord {
    Gen(u32),
    InvGen(u32),
    Mul(Box<LoopWord>, Box<LoopWord>),
    Assoc(Box<[LoopWord; 3]>),
}

impl LoopWord {
    /// Random word of depth at most `depth` over generators `0..n`.
    pub fn random<R: Rng>(rng: &mut R, n: u32, depth: u32) -> LoopWord {
        if depth == 0 || rng.gen_bool(0.3) {
            let g = rng.gen_range(0..n);
            return if rng.gen_bool(0.5) { LoopWord::Gen(g) } else { LoopWord::InvGen(g) };
        }
        if rng.gen_bool(0.6) {
            LoopWord::Mul(Box::new(Self::random(rng, n, depth - 1)), Box::new(Self::random(rng, n, depth - 1)))
        } else {
            LoopWord::Assoc(Box::new([
                Self::random(rng, n, depth - 1),
                Self::random(rng, n, depth - 1),
                Self::random(rng, n, depth - 1),
            ]))
        }
    }

    pub fn eval(&self) -> Result<LoopElement> {
        match self {
            LoopWord::Gen(i) => Ok(LoopElement::generator(*i)),
            LoopWord::InvGen(i) => linv(&LoopElement::generator(*i)),
            LoopWord::Mul(a, b) => Ok(lmul(&a.eval()?, &b.eval()?)),
            LoopWord::Assoc(ch) => lassoc(&ch[0].eval()?, &ch[1].eval()?, &ch[2].eval()?),
        }
    }
}

impl fmt::Display for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopWord::Gen(i) => write!(f, "g{i}"),
            LoopWord::InvGen(i) => write!(f, "g{i}^-1"),
            LoopWord::Mul(a, b) => write!(f, "({a}*{b})"),
            LoopWord::Assoc(ch) => write!(f, "[{},{},{}]", ch[0], ch[1], ch[2]),
        }
    }
}

pub const SAMPLER_DEPTH: u32 = 3;

/// `count` tuples of `arity` loop words, deterministic in `(n, count, seed)`.
pub fn sample_loop_words(n: u32, count: usize, arity: usize, seed: u64) -> Vec<Vec<LoopWord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..arity).map(|_| LoopWord::random(&mut rng, n.max(1), SAMPLER_DEPTH)).collect()).collect()
}

fn residual(lhs: &LoopElement, rhs: &LoopElement) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some((&lhs.0 - &rhs.0).to_string())
    }
}

fn not_one(u: &LoopElement) -> Option<String> {
    if u.is_one() {
        None
    } else {
        Some(u.nilpotent_part().to_string())
    }
}

fn error_entry(name: &str, inst: &str, e: Error) -> CheckEntry {
    CheckEntry::new(name, inst, Some(e.to_string()))
}

fn cml3_checks(inst: &str, u: &LoopElement, v: &LoopElement, w: &LoopElement) -> Vec<CheckEntry> {
    let uv = lmul(u, v);
    let mut out = vec![
        CheckEntry::new("commutativity", inst, residual(&uv, &lmul(v, u))),
        CheckEntry::new("moufang", inst, residual(&lmul(&uv, &lmul(w, u)), &lmul(&lmul(u, &lmul(v, w)), u))),
        CheckEntry::new("exponent3", inst, not_one(&lcube(u))),
        CheckEntry::new("exponent3_product", inst, not_one(&lcube(&lmul(&uv, w)))),
    ];
    match (lassoc(u, v, w), lassoc(v, u, w)) {
        (Ok(a), Ok(b)) => {
            out.push(CheckEntry::new("assoc_exponent3", inst, not_one(&lcube(&a))));
            out.push(CheckEntry::new("assoc_skew", inst, not_one(&lmul(&a, &b))));
        }
        (Err(e), _) | (_, Err(e)) => out.push(error_entry("lassoc", inst, e)),
    }
    out
}

/// Commutativity, Moufang, exponent 3 and associator checks on all generator
/// triples of `U_n` and on `samples` seeded triples of loop words.
pub fn verify_cml3(n: u32, samples: usize, seed: u64) -> Report {
    let triples: Vec<(u32, u32, u32)> =
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    let mut report: Report = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let inst = format!("({i},{j},{k})");
            cml3_checks(&inst, &LoopElement::generator(i), &LoopElement::generator(j), &LoopElement::generator(k))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    if n == 0 {
        return report;
    }
    let sampled: Vec<CheckEntry> = sample_loop_words(n, samples, 3, seed)
        .par_iter()
        .enumerate()
        .map(|(idx, ws)| {
            let inst = format!("sample {idx}");
            let vals: Result<Vec<LoopElement>> = ws.iter().map(LoopWord::eval).collect();
            match vals {
                Ok(v) => cml3_checks(&inst, &v[0], &v[1], &v[2]),
                Err(e) => vec![error_entry("sample", &inst, e)],
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    report.entries.extend(sampled);
    report
}

/// `((((x,y,a),a,z),t,v),a,w)` with `(x,y,z,t,v,w,a) = (0,1,2,3,4,5,6)`.
pub fn tah_word() -> LeftNormedWord {
    let (x, y, z, t, v, w, a) = (0, 1, 2, 3, 4, 5, 6);
    LeftNormedWord::new(x, vec![(y, a), (a, z), (t, v), (a, w)])
}

/// Value of the TAH word in `C_7`.
pub fn tah_witness() -> GElement {
    eval_left_normed(&tah_word(), identity).expect("all letters assigned")
}

/// The seven words `v_1..v_7` of type (5,2): head 0, letters 1..4, `b = 5`, `c = 6`.
pub fn v_words() -> Vec<LeftNormedWord> {
    let (b, c) = (5, 6);
    let w = |p: [(u32, u32); 4]| LeftNormedWord::new(0, p.to_vec());
    vec![
        w([(1, 2), (3, b), (4, c), (b, c)]),
        w([(1, 3), (2, b), (4, c), (b, c)]),
        w([(2, 3), (1, b), (4, c), (b, c)]),
        w([(1, 4), (2, b), (3, c), (b, c)]),
        w([(1, b), (2, 3), (4, c), (b, c)]),
        w([(1, c), (2, 3), (4, b), (b, c)]),
        w([(1, b), (2, c), (3, 4), (b, c)]),
    ]
}

/// Coefficients of the relation among `v_1..v_7`.
pub const V_RELATION: [i64; 7] = [1, 1, 0, -1, 1, 1, 1];

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MainIdMode {
    Algebra,
    Loop,
}

/// The six loop associators matching `v_1, v_2, v_4^-1, v_5, v_6, v_7`,
/// multiplied left to right.
pub fn main_identity_product(a: &LoopElement, x: &[LoopElement; 4], b: &LoopElement, c: &LoopElement) -> Result<LoopElement> {
    let left_normed = |tail: [(&LoopElement, &LoopElement); 4]| -> Result<LoopElement> {
        let mut acc = a.clone();
        for (p, q) in tail {
            acc = lassoc(&acc, p, q)?;
        }
        Ok(acc)
    };
    let [x1, x2, x3, x4] = x;
    let factors = [
        left_normed([(x1, x2), (x3, b), (x4, c), (b, c)])?,
        left_normed([(x1, x3), (x2, b), (x4, c), (b, c)])?,
        linv(&left_normed([(x1, x4), (x2, b), (x3, c), (b, c)])?)?,
        left_normed([(x1, b), (x2, x3), (x4, c), (b, c)])?,
        left_normed([(x1, c), (x2, x3), (x4, b), (b, c)])?,
        left_normed([(x1, b), (x2, c), (x3, x4), (b, c)])?,
    ];
    Ok(factors.iter().fold(LoopElement::one(), |acc, f| lmul(&acc, f)))
}

/// Checks the main identity in `C_7` (algebra mode) or in `U_7` (loop mode,
/// on generators, on the `b = c` specialization and on `samples` seeded
/// loop-word instantiations).
pub fn mainid_check(mode: MainIdMode, samples: usize, seed: u64) -> Report {
    let mut report = Report::default();
    match mode {
        MainIdMode::Algebra => {
            let terms: Vec<(Gf3, GElement)> = v_words()
                .iter()
                .zip(V_RELATION)
                .map(|(w, c)| (Gf3::new(c), eval_left_normed(w, identity).expect("assigned")))
                .collect();
            let sum = combine(&terms);
            let residual = if sum.is_zero() { None } else { Some(sum.to_string()) };
            report.push(CheckEntry::new("v1+v2-v4+v5+v6+v7", "generators 0..6", residual));
        }
        MainIdMode::Loop => {
            let g = LoopElement::generator;
            let mut cases: Vec<(String, Vec<LoopElement>)> = vec![
                ("generators 0..6".to_string(), (0..7).map(g).collect()),
                ("generators 0..5, c=b".to_string(), vec![g(0), g(1), g(2), g(3), g(4), g(5), g(5)]),
            ];
            let sampled: Vec<(String, Result<Vec<LoopElement>>)> = sample_loop_words(7, samples, 7, seed)
                .par_iter()
                .enumerate()
                .map(|(i, ws)| (format!("sample {i}"), ws.iter().map(LoopWord::eval).collect()))
                .collect();
            let mut errors = Vec::new();
            for (inst, vals) in sampled {
                match vals {
                    Ok(v) => cases.push((inst, v)),
                    Err(e) => errors.push(error_entry("main-id", &inst, e)),
                }
            }
            let entries: Vec<CheckEntry> = cases
                .par_iter()
                .map(|(inst, v)| {
                    let x = [v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()];
                    match main_identity_product(&v[0], &x, &v[5], &v[6]) {
                        Ok(p) => CheckEntry::new("main-id", inst.clone(), not_one(&p)),
                        Err(e) => error_entry("main-id", inst, e),
                    }
                })
                .collect();
            report.entries.extend(entries);
            report.entries.extend(errors);
        }
    }
    report
}

/// Element of `G_1 + G_1` with the product
/// `(x1 + y1 + x1 y1 (x2 - y2), x2 + y2 + x2 y2 (y1 - x1))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MalbosPair {
    pub x1: GElement,
    pub x2: GElement,
}

impl MalbosPair {
    pub fn new(x1: GElement, x2: GElement) -> Result<MalbosPair> {
        for x in [&x1, &x2] {
            if !x.is_zero() && x.parity() != crate::grassmann::Parity::Odd {
                return Err(Error::Invalid(format!("component {x} is not odd")));
            }
        }
        Ok(MalbosPair { x1, x2 })
    }

    pub fn identity() -> MalbosPair {
        MalbosPair::default()
    }

    pub fn is_identity(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero()
    }

    pub fn inverse(&self) -> MalbosPair {
        MalbosPair { x1: -&self.x1, x2: -&self.x2 }
    }
}

impl fmt::Display for MalbosPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

pub fn malbos_mul(p: &MalbosPair, q: &MalbosPair) -> MalbosPair {
    let x1y1 = p.x1.wedge(&q.x1);
    let x2y2 = p.x2.wedge(&q.x2);
    let x1 = &(&p.x1 + &q.x1) + &x1y1.wedge(&(&p.x2 - &q.x2));
    let x2 = &(&p.x2 + &q.x2) + &x2y2.wedge(&(&q.x1 - &p.x1));
    MalbosPair { x1, x2 }
}

pub const MALBOS_MAX_GENERATORS: u32 = 6;

/// Random odd element: a few monomials of degree 1 or 3 in the underived
/// generators `0..n`.
pub fn random_odd_element<R: Rng>(rng: &mut R, n: u32) -> GElement {
    let n = n.max(1);
    let count = rng.gen_range(1..=4);
    let mut terms = Vec::new();
    for _ in 0..count {
        let deg = if n >= 3 && rng.gen_bool(0.5) { 3 } else { 1 };
        let mut gens: Vec<u32> = (0..n).collect();
        let mut picked = Vec::new();
        for _ in 0..deg {
            let k = rng.gen_range(0..gens.len());
            picked.push(crate::grassmann::GenSym::new(gens.swap_remove(k), 0));
        }
        if let Some((m, s)) = Monomial::from_symbols(&picked) {
            terms.push((m, s * Gf3::new(rng.gen_range(1..=2))));
        }
    }
    GElement::from_terms(terms)
}

fn malbos_checks(inst: &str, p: &MalbosPair, q: &MalbosPair, r: &MalbosPair) -> Vec<CheckEntry> {
    let eq = |a: &MalbosPair, b: &MalbosPair| if a == b { None } else { Some(format!("{a} vs {b}")) };
    let id = |a: &MalbosPair| if a.is_identity() { None } else { Some(a.to_string()) };
    let pq = malbos_mul(p, q);
    vec![
        CheckEntry::new("malbos_commutativity", inst, eq(&pq, &malbos_mul(q, p))),
        CheckEntry::new("malbos_moufang", inst, eq(&malbos_mul(&pq, &malbos_mul(r, p)), &malbos_mul(&malbos_mul(p, &malbos_mul(q, r)), p))),
        CheckEntry::new("malbos_exponent3", inst, id(&malbos_mul(&malbos_mul(p, p), p))),
        CheckEntry::new("malbos_inverse", inst, id(&malbos_mul(p, &p.inverse()))),
        CheckEntry::new("malbos_unit", inst, eq(&malbos_mul(p, &MalbosPair::identity()), p)),
    ]
}

/// CML_3 axioms for the Malbos product on all triples of basis pairs
/// `(g_i, 0)`, `(0, g_i)` and on `samples` seeded odd triples; at most six
/// generators are used.
pub fn malbos_verify(n: u32, samples: usize, seed: u64) -> Report {
    let n = n.min(MALBOS_MAX_GENERATORS);
    let mut basis = Vec::new();
    for i in 0..n {
        basis.push((format!("(g{i},0)"), MalbosPair { x1: GElement::generator(i), x2: GElement::zero() }));
        basis.push((format!("(0,g{i})"), MalbosPair { x1: GElement::zero(), x2: GElement::generator(i) }));
    }
    let mut triples = Vec::new();
    for a in &basis {
        for b in &basis {
            for c in &basis {
                triples.push((format!("{};{};{}", a.0, b.0, c.0), a.1.clone(), b.1.clone(), c.1.clone()));
            }
        }
    }
    if n > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..samples {
            let mut pair = || MalbosPair { x1: random_odd_element(&mut rng, n), x2: random_odd_element(&mut rng, n) };
            let (p, q, r) = (pair(), pair(), pair());
            triples.push((format!("sample {i}"), p, q, r));
        }
    }
    triples
        .par_iter()
        .map(|(inst, p, q, r)| malbos_checks(inst, p, q, r))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Lowest-degree nonconstant part of an element.
pub fn lowest_part(x: &GElement) -> GElement {
    let min = x.terms().iter().filter(|(m, _)| !m.is_one()).map(|(m, _)| m.degree()).min();
    match min {
        Some(d) => GElement::from_terms(x.terms().iter().filter(|(m, _)| m.degree() == d).cloned()),
        None => GElement::zero(),
    }
}

/// `lassoc(1+a,1+b,1+c) - 1` has lowest part `(a,b,c)` for generators.
pub fn assoc_leading_part_matches(i: u32, j: u32, k: u32) -> bool {
    let (a, b, c) = (GElement::generator(i), GElement::generator(j), GElement::generator(k));
    let l = lassoc(&LoopElement::generator(i), &LoopElement::generator(j), &LoopElement::generator(k)).expect("exponent 3");
    lowest_part(&l.nilpotent_part()) == lowest_part(&associator(&a, &b, &c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GElement {
        s.parse().unwrap()
    }

    #[test]
    fn constructor_rejects_non_unital() {
        assert_eq!(LoopElement::new(g("2*[1]")), Err(Error::NotUnital(2)));
        assert_eq!(LoopElement::new(GElement::generator(0)), Err(Error::NotUnital(0)));
        assert!(LoopElement::new(g("[1] + [0(0)]")).is_ok());
    }

    #[test]
    fn product_expands_bilinearly() {
        let (a, b) = (GElement::generator(0), GElement::generator(1));
        let p = lmul(&LoopElement::generator(0), &LoopElement::generator(1));
        let expect = &(&(&GElement::one() + &a) + &b) + &cmul(&a, &b);
        assert_eq!(p.value(), &expect);
        let u = LoopElement::generator(3);
        assert_eq!(lmul(&u, &LoopElement::one()), u);
    }

    #[test]
    fn inverse_of_generator() {
        let inv = linv(&LoopElement::generator(0)).unwrap();
        assert_eq!(inv.value(), &g("[1] + 2*[0(0)] + 2*[0(0).0(1)]"));
        assert!(linv(&LoopElement::one()).unwrap().is_one());
    }

    #[test]
    fn associator_trivial_cases() {
        let u = lmul(&LoopElement::generator(0), &LoopElement::generator(1));
        let v = LoopElement::generator(2);
        assert!(lassoc(&u, &u, &v).unwrap().is_one());
        assert!(lassoc(&LoopElement::one(), &u, &v).unwrap().is_one());
        assert!(!lassoc(&LoopElement::generator(0), &LoopElement::generator(1), &v).unwrap().is_one());
    }

    #[test]
    fn associator_leading_part() {
        assert!(assoc_leading_part_matches(0, 1, 2));
        assert!(assoc_leading_part_matches(3, 1, 5));
    }

    #[test]
    fn cml3_small() {
        let r = verify_cml3(3, 0, 0);
        assert!(r.all_pass());
        assert_eq!(r.len(), 27 * 6);
        assert!(verify_cml3(1, 0, 0).all_pass());
        assert!(verify_cml3(4, 20, 1).all_pass());
    }

    #[test]
    fn right_bracketed_variant_is_not_an_identity() {
        // (xy.z)x differs from (x.yz)x, so xy.zx = (xy.z)x fails on generators
        let (x, y, z) = (LoopElement::generator(0), LoopElement::generator(1), LoopElement::generator(2));
        let xy = lmul(&x, &y);
        assert_ne!(lmul(&xy, &lmul(&z, &x)), lmul(&lmul(&xy, &z), &x));
        assert_eq!(lmul(&xy, &lmul(&z, &x)), lmul(&lmul(&x, &lmul(&y, &z)), &x));
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(sample_loop_words(5, 10, 3, 7), sample_loop_words(5, 10, 3, 7));
        assert_ne!(sample_loop_words(5, 10, 3, 7), sample_loop_words(5, 10, 3, 8));
    }

    #[test]
    fn tah_is_nonzero_and_skew() {
        let w = tah_witness();
        assert!(!w.is_zero());
        let mut swapped = tah_word();
        swapped.head = 1;
        swapped.tail[0].0 = 0;
        assert_eq!(eval_left_normed(&swapped, identity).unwrap(), -&w);
    }

    #[test]
    fn main_identity_holds() {
        assert!(mainid_check(MainIdMode::Algebra, 0, 0).all_pass());
        assert!(mainid_check(MainIdMode::Loop, 3, 0).all_pass());
    }

    #[test]
    fn malbos_axioms() {
        let p = MalbosPair::new(GElement::generator(0), GElement::generator(1)).unwrap();
        assert_eq!(malbos_mul(&p, &MalbosPair::identity()), p);
        assert!(MalbosPair::new(GElement::one(), GElement::zero()).is_err());
        assert!(malbos_verify(3, 50, 0).all_pass());
    }
}
