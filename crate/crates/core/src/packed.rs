//! Bitmask monomials for the common case of at most 8 bases and derivative
//! order below 16: symbol `i(j)` is bit `16 i + j`, so bit order is symbol order.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::gf3::Gf3;
use crate::grassmann::{GElement, GenSym, Monomial};

const DER_BITS: u32 = 16;
const MAX_BASE: u32 = 8;

pub(crate) type Packed = Vec<(u128, u8)>;

fn bit_of(s: GenSym) -> Option<u32> {
    (s.base() < MAX_BASE && s.der() < DER_BITS).then(|| s.base() * DER_BITS + s.der())
}

pub(crate) fn pack(x: &GElement) -> Option<Packed> {
    let mut out = Vec::with_capacity(x.len());
    for (m, c) in x.terms() {
        let mut mask = 0u128;
        for &s in m.symbols() {
            mask |= 1u128 << bit_of(s)?;
        }
        out.push((mask, c.value()));
    }
    Some(out)
}

pub(crate) fn unpack(acc: FxHashMap<u128, u8>) -> GElement {
    let mut terms: Vec<(Monomial, Gf3)> = acc
        .into_iter()
        .filter(|&(_, c)| c % 3 != 0)
        .map(|(mut mask, c)| {
            let mut syms: SmallVec<[GenSym; 12]> = SmallVec::new();
            while mask != 0 {
                let b = mask.trailing_zeros();
                syms.push(GenSym::new(b / DER_BITS, b % DER_BITS));
                mask &= mask - 1;
            }
            (Monomial::from_sorted_unchecked(syms), Gf3::new(c as i64))
        })
        .collect();
    terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    GElement::from_sorted_unchecked(terms)
}

#[inline]
fn add(acc: &mut FxHashMap<u128, u8>, m: u128, c: u8) {
    let e = acc.entry(m).or_insert(0);
    *e = (*e + c) % 3;
}

/// Number of pairs `(s, t)` with `s` in `a`, `t` in `b`, `s > t`.
#[inline]
fn inversions(a: u128, mut b: u128) -> u32 {
    let mut n = 0;
    while b != 0 {
        let t = b.trailing_zeros();
        n += (a >> t >> 1).count_ones();
        b &= b - 1;
    }
    n
}

/// `acc += c * x y`.
pub(crate) fn wedge_into(acc: &mut FxHashMap<u128, u8>, x: &[(u128, u8)], y: &[(u128, u8)], c: u8) {
    for &(a, ca) in x {
        for &(b, cb) in y {
            if a & b != 0 {
                continue;
            }
            let mut v = ca * cb * c;
            if inversions(a, b) & 1 == 1 {
                v *= 2;
            }
            add(acc, a | b, v % 3);
        }
    }
}

/// Derivative, or `None` if some symbol would leave the packed range.
pub(crate) fn derive(x: &[(u128, u8)]) -> Option<Packed> {
    let mut acc: FxHashMap<u128, u8> = FxHashMap::default();
    for &(a, c) in x {
        let mut rest = a;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            if b % DER_BITS == DER_BITS - 1 {
                return None;
            }
            if a & (1u128 << (b + 1)) != 0 {
                continue;
            }
            add(&mut acc, a ^ (1u128 << b) ^ (1u128 << (b + 1)), c);
        }
    }
    Some(acc.into_iter().filter(|&(_, c)| c != 0).collect())
}

pub(crate) fn split_parity(x: Packed) -> (Packed, Packed) {
    x.into_iter().partition(|(m, _)| m.count_ones() % 2 == 0)
}

pub(crate) fn with_capacity(n: usize) -> FxHashMap<u128, u8> {
    let mut acc = FxHashMap::default();
    acc.reserve(n);
    acc
}
