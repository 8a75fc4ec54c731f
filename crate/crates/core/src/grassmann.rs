//! The Grassmann algebra over GF(3) on odd generators `i(j)` (generator `i`
//! differentiated `j` times), together with its even derivation
//! `d(i(j)) = i(j+1)`.
//!
//! Text format: a symbol prints as `i(j)` (the `(0)` suffix may be dropped on
//! input), a monomial as its symbols in canonical order joined by `.` inside
//! brackets, the unit monomial as `[1]`, and an element as `c*[m]` terms
//! joined by ` + `. The zero element prints as `0`. Because `[1]` denotes the
//! unit, generator 1 must be written `[1(0)]` on input.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::Error;
use crate::gf3::Gf3;
use crate::packed;

const DER_BITS: u32 = 16;
const DER_MASK: u32 = (1 << DER_BITS) - 1;

/// A derived generator `base(der)`, packed into one word so that the integer
/// order is the (base, der) lexicographic order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSym(u32);

impl GenSym {
    pub fn new(base: u32, der: u32) -> GenSym {
        assert!(base < (1 << (32 - DER_BITS)) && der <= DER_MASK, "generator index out of range");
        GenSym(base << DER_BITS | der)
    }

    #[inline]
    pub fn base(self) -> u32 {
        self.0 >> DER_BITS
    }

    #[inline]
    pub fn der(self) -> u32 {
        self.0 & DER_MASK
    }

    /// The symbol one derivative higher.
    #[inline]
    pub fn derived(self) -> GenSym {
        debug_assert!(self.der() < DER_MASK);
        GenSym(self.0 + 1)
    }
}

impl fmt::Debug for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.base(), self.der())
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.base(), self.der())
    }
}

impl FromStr for GenSym {
    type Err = Error;

    fn from_str(s: &str) -> Result<GenSym, Error> {
        let bad = || Error::Parse(format!("bad generator symbol `{s}`"));
        let s = s.trim();
        let (base, der) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                (&s[..open], inner)
            }
            None => (s, "0"),
        };
        let base: u32 = base.parse().map_err(|_| bad())?;
        let der: u32 = der.parse().map_err(|_| bad())?;
        if base >= (1 << (32 - DER_BITS)) || der > DER_MASK {
            return Err(bad());
        }
        Ok(GenSym::new(base, der))
    }
}

/// Exterior monomial: a strictly increasing run of symbols. The empty run is
/// the unit. Monomials order by degree first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[GenSym; 12]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn symbol(s: GenSym) -> Monomial {
        let mut v = SmallVec::new();
        v.push(s);
        Monomial(v)
    }

    /// Product of `syms` taken in the given order, normalized; `None` when a
    /// symbol repeats.
    pub fn from_symbols(syms: &[GenSym]) -> Option<(Monomial, Gf3)> {
        let mut v: SmallVec<[GenSym; 12]> = syms.iter().copied().collect();
        // insertion sort, counting transpositions
        let mut swaps = 0usize;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Monomial(v), Gf3::sign(swaps % 2 == 1)))
    }

    pub(crate) fn from_sorted_unchecked(syms: SmallVec<[GenSym; 12]>) -> Monomial {
        Monomial(syms)
    }

    pub fn symbols(&self) -> &[GenSym] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.len() % 2 == 1
    }

    /// Sum of derivative orders over all symbols.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|s| s.der()).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("[1]");
        }
        f.write_str("[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Exterior product of monomials with its sign, or `None` when it vanishes.
pub fn mono_mul(x: &Monomial, y: &Monomial) -> Option<(Monomial, Gf3)> {
    let (a, b) = (&x.0, &y.0);
    let mut out: SmallVec<[GenSym; 12]> = SmallVec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((Monomial(out), Gf3::sign(inversions % 2 == 1)))
}

/// Parity class of an element.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    Zero,
    Even,
    Odd,
    Mixed,
}

/// A GF(3)-linear combination of monomials, kept sorted with no zero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GElement {
    terms: Vec<(Monomial, Gf3)>,
}

pub(crate) type Accumulator = FxHashMap<Monomial, Gf3>;

pub(crate) fn accumulate(acc: &mut Accumulator, m: Monomial, c: Gf3) {
    let e = acc.entry(m).or_insert(Gf3::ZERO);
    *e += c;
}

impl GElement {
    pub fn zero() -> GElement {
        GElement::default()
    }

    pub fn one() -> GElement {
        GElement::monomial(Monomial::one(), Gf3::ONE)
    }

    pub fn monomial(m: Monomial, c: Gf3) -> GElement {
        if c.is_zero() {
            return GElement::zero();
        }
        GElement { terms: vec![(m, c)] }
    }

    /// The underived generator `i(0)`.
    pub fn generator(i: u32) -> GElement {
        GElement::symbol(GenSym::new(i, 0))
    }

    pub fn symbol(s: GenSym) -> GElement {
        GElement::monomial(Monomial::symbol(s), Gf3::ONE)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Gf3)>>(terms: I) -> GElement {
        let mut acc = Accumulator::default();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        GElement::from_accumulator(acc)
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, Gf3)>) -> GElement {
        GElement { terms }
    }

    pub(crate) fn from_accumulator(acc: Accumulator) -> GElement {
        let mut terms: Vec<(Monomial, Gf3)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        GElement { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Gf3)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Gf3)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Gf3 {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(i) => self.terms[i].1,
            Err(_) => Gf3::ZERO,
        }
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Gf3 {
        self.coefficient(&Monomial::one())
    }

    pub fn parity(&self) -> Parity {
        let odd = self.terms.iter().any(|(m, _)| m.is_odd());
        let even = self.terms.iter().any(|(m, _)| !m.is_odd());
        match (even, odd) {
            (false, false) => Parity::Zero,
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn even_part(&self) -> GElement {
        GElement { terms: self.terms.iter().filter(|(m, _)| !m.is_odd()).cloned().collect() }
    }

    pub fn odd_part(&self) -> GElement {
        GElement { terms: self.terms.iter().filter(|(m, _)| m.is_odd()).cloned().collect() }
    }

    /// Largest monomial degree present (0 for the zero element).
    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: Gf3) -> GElement {
        if c.is_zero() {
            return GElement::zero();
        }
        GElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), *v * c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: Gf3, other: &GElement) -> GElement {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), b[j].1 * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].1 + b[j].1 * c;
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, v)| (m.clone(), *v * c)));
        GElement { terms: out }
    }

    /// Exterior (Grassmann) product, extended bilinearly.
    pub fn wedge(&self, other: &GElement) -> GElement {
        if self.is_zero() || other.is_zero() {
            return GElement::zero();
        }
        if let (Some(a), Some(b)) = (packed::pack(self), packed::pack(other)) {
            let mut acc = packed::with_capacity(a.len() * b.len());
            packed::wedge_into(&mut acc, &a, &b, 1);
            return packed::unpack(acc);
        }
        let mut acc = Accumulator::default();
        acc.reserve(self.len() * other.len());
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                if let Some((m, s)) = mono_mul(x, y) {
                    accumulate(&mut acc, m, *cx * *cy * s);
                }
            }
        }
        GElement::from_accumulator(acc)
    }

    /// The even derivation `d`: Leibniz rule with `d(i(j)) = i(j+1)`.
    ///
    /// Raising one symbol of a sorted monomial keeps it sorted unless the
    /// raised symbol collides with its successor, in which case the term
    /// vanishes; no sign arises.
    pub fn derive(&self) -> GElement {
        let mut acc = Accumulator::default();
        for (m, c) in &self.terms {
            derive_monomial_into(m, *c, &mut acc);
        }
        GElement::from_accumulator(acc)
    }
}

pub(crate) fn derive_monomial_into(m: &Monomial, c: Gf3, acc: &mut Accumulator) {
    let syms = m.symbols();
    for p in 0..syms.len() {
        let raised = syms[p].derived();
        if syms.get(p + 1) == Some(&raised) {
            continue;
        }
        let mut v = m.0.clone();
        v[p] = raised;
        accumulate(acc, Monomial(v), c);
    }
}

impl std::ops::Add for &GElement {
    type Output = GElement;
    fn add(self, rhs: &GElement) -> GElement {
        self.add_scaled(Gf3::ONE, rhs)
    }
}

impl std::ops::Sub for &GElement {
    type Output = GElement;
    fn sub(self, rhs: &GElement) -> GElement {
        self.add_scaled(Gf3::TWO, rhs)
    }
}

impl std::ops::Neg for &GElement {
    type Output = GElement;
    fn neg(self) -> GElement {
        self.scale(Gf3::TWO)
    }
}

impl fmt::Debug for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `[a.b...]`; symbols may come in any order and are normalized,
    /// so only a canonically ordered input is accepted here (use
    /// [`GElement::from_str`] for signed normalization).
    fn from_str(s: &str) -> Result<Monomial, Error> {
        let (m, sign) = parse_monomial(s)?;
        if sign != Gf3::ONE {
            return Err(Error::Parse(format!("monomial `{s}` is not in canonical order")));
        }
        Ok(m)
    }
}

fn parse_monomial(s: &str) -> Result<(Monomial, Gf3), Error> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("monomial `{s}` must be bracketed")))?;
    let inner = inner.trim();
    if inner == "1" {
        return Ok((Monomial::one(), Gf3::ONE));
    }
    let syms = inner.split('.').map(GenSym::from_str).collect::<Result<Vec<_>, _>>()?;
    Monomial::from_symbols(&syms).ok_or_else(|| Error::Parse(format!("monomial `{s}` repeats a symbol")))
}

impl FromStr for GElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<GElement, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(GElement::zero());
        }
        let mut acc = Accumulator::default();
        for term in s.split(" + ") {
            let term = term.trim();
            let (coef, mono) = match term.split_once('*') {
                Some((c, m)) => {
                    let c: i64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?;
                    (Gf3::new(c), m)
                }
                None => (Gf3::ONE, term),
            };
            let (m, sign) = parse_monomial(mono)?;
            accumulate(&mut acc, m, coef * sign);
        }
        Ok(GElement::from_accumulator(acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GElement {
        s.parse().unwrap()
    }

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn mono_mul_signs() {
        let (a, b) = (m("[0]"), m("[1(0)]"));
        assert_eq!(mono_mul(&a, &b), Some((m("[0.1]"), Gf3::ONE)));
        assert_eq!(mono_mul(&b, &a), Some((m("[0.1]"), Gf3::TWO)));
        assert_eq!(mono_mul(&a, &a), None);
        assert_eq!(mono_mul(&m("[0(1)]"), &m("[0(0)]")), Some((m("[0(0).0(1)]"), Gf3::TWO)));
    }

    #[test]
    fn elem_mul_unit_and_odd_square() {
        let x = g("[0] + 2*[1(0).2] + [0.1(2).3]");
        assert_eq!(GElement::one().wedge(&x), x);
        assert_eq!(x.wedge(&GElement::one()), x);
        let s = g("[0] + [1(0)]");
        assert!(s.wedge(&s).is_zero());
    }

    #[test]
    fn derive_examples() {
        assert_eq!(g("[0]").derive(), g("[0(1)]"));
        assert_eq!(g("[0.1]").derive(), g("[0(1).1] + [0.1(1)]"));
        assert!(GElement::one().derive().is_zero());
        // raising 0(0) collides with 0(1)
        assert_eq!(g("[0.0(1)]").derive(), g("[0.0(2)]"));
    }

    #[test]
    fn text_format() {
        let x = g("2*[0(1).1.2] + [0.1(1).2] + [1]");
        assert_eq!(x.to_string(), "1*[1] + 1*[0(0).1(1).2(0)] + 2*[0(1).1(0).2(0)]");
        assert_eq!(x.to_string().parse::<GElement>().unwrap(), x);
        assert_eq!(GElement::zero().to_string(), "0");
        // out-of-order input carries its sign
        assert_eq!(g("[1(0).0]"), g("2*[0.1(0)]"));
        assert!("[0.0]".parse::<GElement>().is_err());
        assert!("[x]".parse::<GElement>().is_err());
    }

    #[test]
    fn parity_classes() {
        assert_eq!(g("[0]").parity(), Parity::Odd);
        assert_eq!(g("[0.1]").parity(), Parity::Even);
        assert_eq!(g("[1] + [0]").parity(), Parity::Mixed);
        assert_eq!(GElement::zero().parity(), Parity::Zero);
    }
}
