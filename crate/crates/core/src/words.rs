//! 3-words of the trilinear algebra `C`: multidegree types, left-normed
//! words, evaluation, and the dimension counts `h(a)`, `c_n(a)` and
//! `dim C_n`.
//!
//! Every 3-word containing a letter `x` is a combination of left-normed
//! words `((..((x,a1,a2),a3,a4)..),a_{2k-1},a_{2k})` headed by `x`, so `h(a)`
//! is the rank of the left-normed words of type `a` with a fixed head.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::grassmann::{accumulate, mono_mul, Accumulator, GElement, GenSym, Monomial};
use crate::linalg::{Echelon, SparseRow};
use crate::twisted::{associator, odd_associator};

pub type Letter = u32;

/// Multidegree type `(a1, a2, ..)`: `a_i` letters occur exactly `i` times.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeVector(Vec<u32>);

impl TypeVector {
    /// Drops trailing zeros.
    pub fn new(mut counts: Vec<u32>) -> TypeVector {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        TypeVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Number of leaves, `sum i * a_i`.
    pub fn leaves(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &a)| (i as u32 + 1) * a).sum()
    }

    /// Number of distinct letters, `sum a_i`.
    pub fn letters(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multiplicity of each letter under the canonical labelling: letters
    /// of multiplicity one get the lowest ids, then multiplicity two, etc.
    pub fn multiplicities(&self) -> Vec<u32> {
        self.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i as u32 + 1, a as usize)).collect()
    }

    /// Type of a multiset given as per-letter multiplicities.
    pub fn from_multiplicities<I: IntoIterator<Item = u32>>(mults: I) -> TypeVector {
        let mut counts = Vec::new();
        for r in mults.into_iter().filter(|&r| r > 0) {
            if counts.len() < r as usize {
                counts.resize(r as usize, 0);
            }
            counts[r as usize - 1] += 1;
        }
        TypeVector::new(counts)
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for TypeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<TypeVector> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(TypeVector::default());
        }
        let counts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad type vector `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TypeVector::new(counts))
    }
}

impl Serialize for TypeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(TypeVector::new(Vec::deserialize(d)?))
    }
}

/// A general 3-word: a full ternary tree with letters on the leaves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Word3 {
    Leaf(Letter),
    Node(Box<[Word3; 3]>),
}

impl Word3 {
    pub fn node(a: Word3, b: Word3, c: Word3) -> Word3 {
        Word3::Node(Box::new([a, b, c]))
    }

    pub fn leaves(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            Word3::Leaf(l) => out.push(*l),
            Word3::Node(ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn type_vector(&self) -> TypeVector {
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        let mut mults = Vec::new();
        for chunk in leaves.chunk_by(|a, b| a == b) {
            mults.push(chunk.len() as u32);
        }
        TypeVector::from_multiplicities(mults)
    }

    /// Random tree shape with the given leaves in random order.
    pub fn random<R: Rng>(rng: &mut R, leaves: &[Letter]) -> Word3 {
        assert!(leaves.len() % 2 == 1, "3-words have an odd number of leaves");
        let mut leaves = leaves.to_vec();
        leaves.shuffle(rng);
        Self::random_shape(rng, &leaves)
    }

    fn random_shape<R: Rng>(rng: &mut R, leaves: &[Letter]) -> Word3 {
        if leaves.len() == 1 {
            return Word3::Leaf(leaves[0]);
        }
        // split into three odd parts
        let k = (leaves.len() - 3) / 2;
        let a = rng.gen_range(0..=k);
        let b = rng.gen_range(0..=k - a);
        let (la, lb) = (2 * a + 1, 2 * b + 1);
        Word3::node(
            Self::random_shape(rng, &leaves[..la]),
            Self::random_shape(rng, &leaves[la..la + lb]),
            Self::random_shape(rng, &leaves[la + lb..]),
        )
    }
}

impl fmt::Display for Word3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word3::Leaf(l) => write!(f, "{l}"),
            Word3::Node(ch) => write!(f, "({},{},{})", ch[0], ch[1], ch[2]),
        }
    }
}

impl fmt::Debug for Word3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `((..((head,a1,a2),a3,a4)..),a_{2k-1},a_{2k})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftNormedWord {
    pub head: Letter,
    pub tail: Vec<(Letter, Letter)>,
}

impl LeftNormedWord {
    pub fn new(head: Letter, tail: Vec<(Letter, Letter)>) -> Self {
        LeftNormedWord { head, tail }
    }

    pub fn letter(head: Letter) -> Self {
        LeftNormedWord { head, tail: Vec::new() }
    }

    pub fn to_word3(&self) -> Word3 {
        self.tail
            .iter()
            .fold(Word3::Leaf(self.head), |acc, &(a, b)| Word3::node(acc, Word3::Leaf(a), Word3::Leaf(b)))
    }

    pub fn leaves(&self) -> Vec<Letter> {
        std::iter::once(self.head).chain(self.tail.iter().flat_map(|&(a, b)| [a, b])).collect()
    }
}

impl From<&LeftNormedWord> for Word3 {
    fn from(w: &LeftNormedWord) -> Word3 {
        w.to_word3()
    }
}

impl fmt::Display for LeftNormedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_word3(), f)
    }
}

impl fmt::Debug for LeftNormedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Evaluates a tree bottom-up with `(u,v,w) -> -d(u v w)`. Leaf values must be
/// homogeneous odd for the shortcut to agree with the algebra associator.
pub fn eval_tree<F>(w: &Word3, leaf: &F) -> Result<GElement>
where
    F: Fn(Letter) -> Result<GElement>,
{
    match w {
        Word3::Leaf(l) => leaf(*l),
        Word3::Node(ch) => {
            let a = eval_tree(&ch[0], leaf)?;
            let b = eval_tree(&ch[1], leaf)?;
            let c = eval_tree(&ch[2], leaf)?;
            Ok(odd_associator(&a, &b, &c))
        }
    }
}

/// Same tree evaluated with the associator of `C` computed from products.
pub fn eval_tree_twisted<F>(w: &Word3, leaf: &F) -> Result<GElement>
where
    F: Fn(Letter) -> Result<GElement>,
{
    match w {
        Word3::Leaf(l) => leaf(*l),
        Word3::Node(ch) => {
            let a = eval_tree_twisted(&ch[0], leaf)?;
            let b = eval_tree_twisted(&ch[1], leaf)?;
            let c = eval_tree_twisted(&ch[2], leaf)?;
            Ok(associator(&a, &b, &c))
        }
    }
}

/// Evaluates a word with letters sent to underived generators.
pub fn eval_word<A>(w: &Word3, assign: A) -> Result<GElement>
where
    A: Fn(Letter) -> Option<u32>,
{
    eval_tree(w, &|l| assign(l).map(GElement::generator).ok_or(Error::UnassignedLetter(l)))
}

pub fn eval_left_normed<A>(w: &LeftNormedWord, assign: A) -> Result<GElement>
where
    A: Fn(Letter) -> Option<u32>,
{
    eval_word(&w.to_word3(), assign)
}

/// Letter `i` goes to generator `i`.
pub fn identity(l: Letter) -> Option<u32> {
    Some(l)
}

/// Evaluation vectors keyed by monomial.
pub fn word_vectors<A>(words: &[LeftNormedWord], assign: A) -> Result<Vec<SparseRow<Monomial>>>
where
    A: Fn(Letter) -> Option<u32> + Sync,
{
    words.par_iter().map(|w| eval_left_normed(w, &assign).map(element_row)).collect()
}

pub fn element_row(x: GElement) -> SparseRow<Monomial> {
    SparseRow::from_sorted_unchecked(x.into_terms())
}

fn tri(r: u32) -> u32 {
    r * r.saturating_sub(1) / 2
}

/// Extends left-normed values one pair at a time, discarding monomials that
/// cannot survive to the end of the word.
///
/// A letter with `r` copies in a nonzero monomial carries `r` distinct
/// derivative orders, hence at least `r(r-1)/2` derivatives in total, and
/// each remaining pair contributes exactly one derivative to every term.
/// Terms whose outstanding requirement exceeds the remaining pairs vanish.
struct PrunedExtender {
    /// Copies of each generator still to be appended after the current step.
    future: Vec<u32>,
}

impl PrunedExtender {
    fn need(&self, m: &Monomial) -> u32 {
        let mut need: u32 = 0;
        let mut seen_future: u32 = 0;
        let syms = m.symbols();
        let mut i = 0;
        while i < syms.len() {
            let base = syms[i].base();
            let (mut copies, mut ders) = (0u32, 0u32);
            while i < syms.len() && syms[i].base() == base {
                copies += 1;
                ders += syms[i].der();
                i += 1;
            }
            let f = self.future.get(base as usize).copied().unwrap_or(0);
            seen_future += tri(f);
            need += tri(copies + f).saturating_sub(ders);
        }
        need + self.future.iter().map(|&f| tri(f)).sum::<u32>() - seen_future
    }

    /// `-d(value x y)` restricted to viable terms.
    fn step(&self, value: &GElement, x: u32, y: u32, steps_after: u32) -> GElement {
        let Some((pair, pair_sign)) = Monomial::from_symbols(&[GenSym::new(x, 0), GenSym::new(y, 0)]) else {
            return GElement::zero();
        };
        let mut acc = Accumulator::default();
        for (m, c) in value.terms() {
            let Some((prod, s)) = mono_mul(m, &pair) else { continue };
            let coeff = -(*c * s * pair_sign);
            let syms = prod.symbols();
            for p in 0..syms.len() {
                let raised = syms[p].derived();
                if syms.get(p + 1) == Some(&raised) {
                    continue;
                }
                let mut v: Vec<GenSym> = syms.to_vec();
                v[p] = raised;
                let (mono, _) = Monomial::from_symbols(&v).expect("raising keeps symbols distinct");
                if self.need(&mono) <= steps_after {
                    accumulate(&mut acc, mono, coeff);
                }
            }
        }
        GElement::from_accumulator(acc)
    }
}

/// Evaluates a left-normed word on generators through the pruned extender.
/// Agrees exactly with [`eval_left_normed`].
pub fn eval_left_normed_pruned<A>(w: &LeftNormedWord, assign: A) -> Result<GElement>
where
    A: Fn(Letter) -> Option<u32>,
{
    let gens: Vec<u32> = w.leaves().iter().map(|&l| assign(l).ok_or(Error::UnassignedLetter(l))).collect::<Result<_>>()?;
    let width = gens.iter().max().map_or(0, |m| *m as usize + 1);
    let mut future = vec![0u32; width];
    for &g in &gens[1..] {
        future[g as usize] += 1;
    }
    let mut ext = PrunedExtender { future };
    let mut value = GElement::generator(gens[0]);
    let k = w.tail.len() as u32;
    for (t, pair) in gens[1..].chunks(2).enumerate() {
        ext.future[pair[0] as usize] -= 1;
        ext.future[pair[1] as usize] -= 1;
        value = ext.step(&value, pair[0], pair[1], k - t as u32 - 1);
    }
    Ok(value)
}

/// Canonical head and remaining letter counts for a type.
pub fn canonical_letters(a: &TypeVector) -> Option<(Letter, Vec<u32>)> {
    let mults = a.multiplicities();
    if mults.is_empty() {
        return None;
    }
    let mut counts = mults;
    counts[0] -= 1;
    Some((0, counts))
}

/// All left-normed words of type `a` with the canonical head, one per
/// sequence of unordered pairs (a swap inside a pair only flips the sign);
/// pairs `(x,x)` are skipped since such words vanish.
pub fn left_normed_words(a: &TypeVector) -> Vec<LeftNormedWord> {
    let Some((head, mut counts)) = canonical_letters(a) else { return Vec::new() };
    let mut out = Vec::new();
    let mut tail = Vec::new();
    let remaining: u32 = counts.iter().sum();
    fn rec(counts: &mut [u32], remaining: u32, head: Letter, tail: &mut Vec<(Letter, Letter)>, out: &mut Vec<LeftNormedWord>) {
        if remaining == 0 {
            out.push(LeftNormedWord::new(head, tail.clone()));
            return;
        }
        for x in 0..counts.len() {
            if counts[x] == 0 {
                continue;
            }
            counts[x] -= 1;
            for y in x + 1..counts.len() {
                if counts[y] == 0 {
                    continue;
                }
                counts[y] -= 1;
                tail.push((x as Letter, y as Letter));
                rec(counts, remaining - 2, head, tail, out);
                tail.pop();
                counts[y] += 1;
            }
            counts[x] += 1;
        }
    }
    if remaining.is_multiple_of(2) {
        rec(&mut counts, remaining, head, &mut tail, &mut out);
    }
    out
}

/// Depth-first evaluation of every canonical left-normed word of a type,
/// sharing prefixes and skipping subtrees whose prefix value vanished.
struct TypeSearch<'a> {
    gens: &'a [u32],
    width: usize,
}

impl TypeSearch<'_> {
    fn future_of(&self, counts: &[u32]) -> Vec<u32> {
        let mut future = vec![0u32; self.width];
        for (l, &c) in counts.iter().enumerate() {
            future[self.gens[l] as usize] += c;
        }
        future
    }

    fn children(&self, value: &GElement, counts: &[u32], remaining: u32) -> Vec<(Vec<u32>, GElement)> {
        let mut out = Vec::new();
        let steps_after = remaining / 2 - 1;
        for x in 0..counts.len() {
            if counts[x] == 0 {
                continue;
            }
            for y in x + 1..counts.len() {
                if counts[y] == 0 {
                    continue;
                }
                let mut next = counts.to_vec();
                next[x] -= 1;
                next[y] -= 1;
                let ext = PrunedExtender { future: self.future_of(&next) };
                let v = ext.step(value, self.gens[x], self.gens[y], steps_after);
                if !v.is_zero() {
                    out.push((next, v));
                }
            }
        }
        out
    }

    fn run(&self, value: GElement, counts: Vec<u32>, remaining: u32, basis: &mut Echelon<Monomial>) {
        if remaining == 0 {
            basis.insert(element_row(value));
            return;
        }
        for (next, v) in self.children(&value, &counts, remaining) {
            self.run(v, next, remaining - 2, basis);
        }
    }
}

/// `h(a)`: rank over GF(3) of all words of type `a`, letters sent to
/// generators by `assign` (which must be injective on the letters in use).
pub fn h_with_assignment(a: &TypeVector, assign: &[u32]) -> usize {
    if a.leaves().is_multiple_of(2) {
        return 0;
    }
    let Some((head, counts)) = canonical_letters(a) else { return 0 };
    assert!(assign.len() >= counts.len(), "assignment must cover every letter");
    let search = TypeSearch { gens: assign, width: assign.iter().max().map_or(0, |m| *m as usize + 1) };
    let root = GElement::generator(assign[head as usize]);
    let remaining: u32 = counts.iter().sum();
    if remaining == 0 {
        return 1;
    }
    // one task per first pair; merged in a fixed order
    let firsts = search.children(&root, &counts, remaining);
    let parts: Vec<Echelon<Monomial>> = firsts
        .into_par_iter()
        .map(|(next, v)| {
            let mut basis = Echelon::new();
            search.run(v, next, remaining - 2, &mut basis);
            basis
        })
        .collect();
    let mut basis = Echelon::new();
    for p in parts {
        basis.merge(p);
    }
    basis.rank()
}

pub fn h_of_type(a: &TypeVector) -> usize {
    let assign: Vec<u32> = (0..a.letters()).collect();
    h_with_assignment(a, &assign)
}

/// Multinomial `n! / (a1! ... as! (n - sum a_i)!)`; zero when the type needs
/// more than `n` letters.
pub fn multinomial(n: u32, a: &TypeVector) -> u128 {
    if a.letters() > n {
        return 0;
    }
    let mut left = n;
    let mut out: u128 = 1;
    for &k in a.counts() {
        out = out.checked_mul(binomial(left, k)).expect("multinomial overflow");
        left -= k;
    }
    out
}

fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn c_n_of_type(n: u32, a: &TypeVector) -> u128 {
    multinomial(n, a) * h_of_type(a) as u128
}

/// Canonical types with an odd number of leaves, at most `n` letters and at
/// most `2n - 1` leaves (the nilpotency-class bound), in ascending
/// (leaves, counts) order.
pub fn candidate_types(n: u32) -> Vec<TypeVector> {
    let mut out = Vec::new();
    let max_leaves = 2 * n.max(1) - 1;
    for m in (1..=max_leaves).step_by(2) {
        let mut parts = Vec::new();
        partitions(m, m, n, &mut parts, &mut out);
    }
    out.sort_by(|a, b| a.leaves().cmp(&b.leaves()).then_with(|| a.cmp(b)));
    out
}

fn partitions(rest: u32, max_part: u32, max_len: u32, parts: &mut Vec<u32>, out: &mut Vec<TypeVector>) {
    if rest == 0 {
        out.push(TypeVector::from_multiplicities(parts.iter().copied()));
        return;
    }
    if parts.len() as u32 == max_len {
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        parts.push(p);
        partitions(rest - p, p, max_len, parts, out);
        parts.pop();
    }
}

/// One row of a dimension report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCount {
    #[serde(rename = "type")]
    pub type_vector: TypeVector,
    pub h: usize,
    pub c_n: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub n: u32,
    pub per_type: Vec<TypeCount>,
    /// Candidate types whose words all vanish.
    pub vanishing: Vec<TypeVector>,
    pub total: u128,
}

/// Candidate types with their `h`, computed in parallel.
pub fn type_table(n: u32) -> Vec<(TypeVector, usize)> {
    candidate_types(n).into_par_iter().map(|a| {
        let h = h_of_type(&a);
        (a, h)
    }).collect()
}

pub fn enumerate_types(n: u32) -> Vec<TypeVector> {
    type_table(n).into_iter().filter(|(_, h)| *h > 0).map(|(a, _)| a).collect()
}

pub fn dim_cn(n: u32) -> DimReport {
    let mut per_type = Vec::new();
    let mut vanishing = Vec::new();
    for (a, h) in type_table(n) {
        if h == 0 {
            vanishing.push(a);
        } else {
            let c_n = multinomial(n, &a) * h as u128;
            per_type.push(TypeCount { type_vector: a, h, c_n });
        }
    }
    let total = per_type.iter().map(|t| t.c_n).sum();
    DimReport { n, per_type, vanishing, total }
}

/// Signed coefficient helper for tests and callers combining word values.
pub fn combine(terms: &[(Gf3, GElement)]) -> GElement {
    terms.iter().fold(GElement::zero(), |acc, (c, x)| acc.add_scaled(*c, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_and_kernel;

    fn t(s: &str) -> TypeVector {
        s.parse().unwrap()
    }

    #[test]
    fn type_vector_basics() {
        let a = t("5,2,0");
        assert_eq!(a.counts(), &[5, 2]);
        assert_eq!(a.leaves(), 9);
        assert_eq!(a.letters(), 7);
        assert_eq!(a.multiplicities(), vec![1, 1, 1, 1, 1, 2, 2]);
        assert_eq!(a.to_string(), "5,2");
        assert_eq!(TypeVector::from_multiplicities([2, 1, 3, 1]), t("2,1,1"));
    }

    #[test]
    fn eval_simple_words() {
        let leaf = Word3::Leaf(3);
        assert_eq!(eval_word(&leaf, |_| Some(0)).unwrap(), GElement::generator(0));
        let w = LeftNormedWord::new(0, vec![(1, 2)]);
        let expected: GElement = "2*[0(1).1(0).2] + 2*[0.1(1).2] + 2*[0.1(0).2(1)]".parse().unwrap();
        assert_eq!(eval_left_normed(&w, identity).unwrap(), expected);
        assert_eq!(eval_word(&w.to_word3(), |l| if l < 2 { Some(l) } else { None }), Err(Error::UnassignedLetter(2)));
    }

    #[test]
    fn v_i_is_derivative_of_primed_product() {
        // ((i,j,k),i,p) = d( d(ijk) i p ): both signs cancel at depth two
        let w = LeftNormedWord::new(0, vec![(1, 2)]);
        let w = LeftNormedWord::new(w.head, vec![(1, 2), (0, 3)]);
        let val = eval_left_normed(&w, identity).unwrap();
        let (g0, g1, g2, g3) =
            (GElement::generator(0), GElement::generator(1), GElement::generator(2), GElement::generator(3));
        let inner = g0.wedge(&g1).wedge(&g2).derive();
        let expected = inner.wedge(&g0).wedge(&g3).derive();
        assert_eq!(val, expected);
        // only 0' can pair with the second copy of 0
        let direct = GElement::symbol(GenSym::new(0, 1)).wedge(&g1).wedge(&g2).wedge(&g0).wedge(&g3).derive();
        assert_eq!(val, direct);
    }

    #[test]
    fn pruned_evaluation_matches() {
        for a in ["3", "5", "3,1", "5,1", "1,2", "3,2", "4,0,1", "7", "1,3"] {
            for w in left_normed_words(&t(a)) {
                assert_eq!(
                    eval_left_normed_pruned(&w, identity).unwrap(),
                    eval_left_normed(&w, identity).unwrap(),
                    "{w}"
                );
            }
        }
    }

    #[test]
    fn word_counts() {
        assert_eq!(left_normed_words(&t("5")).len(), 6);
        assert_eq!(left_normed_words(&t("7")).len(), 90);
        assert_eq!(left_normed_words(&t("1")), vec![LeftNormedWord::letter(0)]);
    }

    #[test]
    fn h_small_types() {
        assert_eq!(h_of_type(&t("1")), 1);
        assert_eq!(h_of_type(&t("3")), 1);
        assert_eq!(h_of_type(&t("1,1")), 0);
        assert_eq!(h_of_type(&t("0,0,1")), 0);
        assert_eq!(h_of_type(&t("2,1")), 0);
        assert_eq!(h_of_type(&t("5")), 4);
        assert_eq!(h_of_type(&t("3,1")), 1);
    }

    #[test]
    fn h_matches_plain_rank() {
        for a in ["5", "3,1", "5,1", "1,2", "3,2", "4,0,1"] {
            let words = left_normed_words(&t(a));
            let rows = word_vectors(&words, identity).unwrap();
            assert_eq!(rank_and_kernel(&rows).rank, h_of_type(&t(a)), "{a}");
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(7, &t("3,1")), 140);
        assert_eq!(multinomial(7, &t("5,2")), 21);
        assert_eq!(multinomial(4, &t("3,1")), 4);
        assert_eq!(multinomial(3, &t("3,1")), 0);
        assert_eq!(c_n_of_type(5, &t("1")), 5);
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(enumerate_types(1), vec![t("1")]);
        assert_eq!(enumerate_types(3), vec![t("1"), t("3")]);
        assert_eq!(dim_cn(1).total, 1);
        assert_eq!(dim_cn(3).total, 4);
        assert_eq!(dim_cn(4).total, 12);
    }

    #[test]
    fn random_trees_have_requested_leaves() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let w = Word3::random(&mut rng, &[0, 1, 2, 2, 3, 4, 4]);
            let mut l = w.leaves();
            l.sort();
            assert_eq!(l, vec![0, 1, 2, 2, 3, 4, 4]);
            assert_eq!(w.type_vector(), t("3,2"));
        }
    }
}
