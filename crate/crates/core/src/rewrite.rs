//! 2-words, their order, relation schemas and regular-word computation.
//!
//! A 2-word `x1x2.x3x4. ...` stands for the left-normed word
//! `((..((o,x1,x2),x3,x4)..)` with a fixed head `o`. Pairs are antisymmetric;
//! they are stored as `lo < hi` with the sign carried separately.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf3::Gf3;
use crate::grassmann::GElement;
use crate::linalg::{rank_and_kernel, Echelon, SparseRow};
use crate::words::{element_row, eval_left_normed, identity, Letter, LeftNormedWord, TypeVector};

/// Canonical pair `lo < hi`, ordered by `(hi, lo)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Pair {
    lo: Letter,
    hi: Letter,
}

impl Pair {
    /// Canonical pair for `(a, b)` with the sign of the reordering.
    pub fn new(a: Letter, b: Letter) -> Result<(Pair, Gf3)> {
        match a.cmp(&b) {
            Ordering::Less => Ok((Pair { lo: a, hi: b }, Gf3::ONE)),
            Ordering::Greater => Ok((Pair { lo: b, hi: a }, Gf3::TWO)),
            Ordering::Equal => Err(Error::DegeneratePair(a)),
        }
    }

    pub fn lo(self) -> Letter {
        self.lo
    }

    pub fn hi(self) -> Letter {
        self.hi
    }

    pub fn contains(self, l: Letter) -> bool {
        self.lo == l || self.hi == l
    }
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.hi, self.lo).cmp(&(other.hi, other.lo))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hi < 10 {
            write!(f, "{}{}", self.lo, self.hi)
        } else {
            write!(f, "({},{})", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sequence of canonical pairs. The derived order is position-by-position,
/// which is the lexicographic order for words of equal length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TwoWord(Vec<Pair>);

impl TwoWord {
    pub fn from_pairs(pairs: Vec<Pair>) -> TwoWord {
        TwoWord(pairs)
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.0.iter().flat_map(|p| [p.lo, p.hi]).collect()
    }

    /// The left-normed word with the given head.
    pub fn to_left_normed(&self, head: Letter) -> LeftNormedWord {
        LeftNormedWord::new(head, self.0.iter().map(|p| (p.lo, p.hi)).collect())
    }

    /// Contiguous sub-word `[start, start + len)`.
    pub fn window(&self, start: usize, len: usize) -> TwoWord {
        TwoWord(self.0[start..start + len].to_vec())
    }
}

impl fmt::Display for TwoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TwoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for TwoWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `12.34` or `(10,11).23`. Pairs need not be canonical; use
/// [`parse_signed`] to keep the sign.
pub fn parse_signed(s: &str) -> Result<(TwoWord, Gf3)> {
    let mut raw = Vec::new();
    for tok in s.trim().split('.') {
        let bad = || Error::Parse(format!("bad pair `{tok}` in `{s}`"));
        let pair = if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        } else {
            let digits: Vec<u32> = tok.chars().map(|c| c.to_digit(10)).collect::<Option<_>>().ok_or_else(bad)?;
            match digits[..] {
                [a, b] => (a, b),
                _ => return Err(bad()),
            }
        };
        raw.push(pair);
    }
    normalize(&raw)
}

impl FromStr for TwoWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<TwoWord> {
        parse_signed(s).map(|(w, _)| w)
    }
}

/// Puts every pair in canonical order; the sign flips once per swap.
pub fn normalize(raw: &[(Letter, Letter)]) -> Result<(TwoWord, Gf3)> {
    let mut sign = Gf3::ONE;
    let mut pairs = Vec::with_capacity(raw.len());
    for &(a, b) in raw {
        let (p, s) = Pair::new(a, b)?;
        sign *= s;
        pairs.push(p);
    }
    Ok((TwoWord(pairs), sign))
}

pub fn lex_compare(u: &TwoWord, v: &TwoWord) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.cmp(v))
}

/// Formal relation on pattern letters. Every term uses the same multiset of
/// pattern letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSchema {
    pub name: String,
    pub terms: Vec<(Gf3, Vec<(char, char)>)>,
}

impl RelationSchema {
    /// Builds a schema from `"ij.pq + ip.jq"`-style text: every pair is two
    /// pattern characters, terms are joined by `+`, a leading `-` negates.
    pub fn parse(name: &str, text: &str) -> RelationSchema {
        let terms = text
            .split('+')
            .map(|t| {
                let t = t.trim();
                let (c, body) = match t.strip_prefix('-') {
                    Some(rest) => (Gf3::TWO, rest.trim()),
                    None => (Gf3::ONE, t),
                };
                let pairs = body
                    .split('.')
                    .map(|p| {
                        let cs: Vec<char> = p.chars().collect();
                        assert_eq!(cs.len(), 2, "pattern pair `{p}`");
                        (cs[0], cs[1])
                    })
                    .collect();
                (c, pairs)
            })
            .collect();
        RelationSchema { name: name.to_string(), terms }
    }

    pub fn pair_len(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.len())
    }

    /// Pattern letters in order of first appearance.
    pub fn variables(&self) -> Vec<char> {
        let mut out = Vec::new();
        for (_, pairs) in &self.terms {
            for &(a, b) in pairs {
                for c in [a, b] {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Occurrence counts of each pattern letter in one term.
    pub fn term_multiset(&self, term: usize) -> BTreeMap<char, u32> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.terms[term].1 {
            *m.entry(a).or_insert(0) += 1;
            *m.entry(b).or_insert(0) += 1;
        }
        m
    }

    /// Canonical combination of 2-words under a substitution; `None` entries
    /// in the map are not allowed.
    pub fn instantiate(&self, map: &FxHashMap<char, Letter>) -> Vec<(TwoWord, Gf3)> {
        let mut acc: BTreeMap<TwoWord, Gf3> = BTreeMap::new();
        for (c, pairs) in &self.terms {
            let raw: Vec<(Letter, Letter)> = pairs.iter().map(|(a, b)| (map[a], map[b])).collect();
            if let Ok((w, s)) = normalize(&raw) {
                *acc.entry(w).or_insert(Gf3::ZERO) += *c * s;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Canonical form as a sorted list of `(pattern word, coefficient)` with
    /// pairs put in pattern order by character code; used to compare schemas.
    pub fn canonical_terms(&self) -> Vec<(Vec<(char, char)>, Gf3)> {
        let mut acc: BTreeMap<Vec<(char, char)>, Gf3> = BTreeMap::new();
        for (c, pairs) in &self.terms {
            let mut sign = *c;
            let mut key = Vec::new();
            let mut degenerate = false;
            for &(a, b) in pairs {
                match a.cmp(&b) {
                    Ordering::Less => key.push((a, b)),
                    Ordering::Greater => {
                        key.push((b, a));
                        sign = -sign;
                    }
                    Ordering::Equal => degenerate = true,
                }
            }
            if !degenerate {
                *acc.entry(key).or_insert(Gf3::ZERO) += sign;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Replaces the occurrences of `var` in each term by every distinct
/// arrangement of `targets` (one target per occurrence) and sums.
pub fn linearize(schema: &RelationSchema, var: char, targets: &[char], name: &str) -> RelationSchema {
    let mut terms = Vec::new();
    for (c, pairs) in &schema.terms {
        let occurrences = pairs.iter().flat_map(|&(a, b)| [a, b]).filter(|&x| x == var).count();
        assert_eq!(occurrences, targets.len(), "linearization needs one target per occurrence");
        for arrangement in distinct_permutations(targets) {
            let mut it = arrangement.into_iter();
            let mut sub = |x: char| if x == var { it.next().expect("counted") } else { x };
            let new_pairs = pairs.iter().map(|&(a, b)| { let a = sub(a); (a, sub(b)) }).collect();
            terms.push((*c, new_pairs));
        }
    }
    RelationSchema { name: name.to_string(), terms }
}

fn distinct_permutations(items: &[char]) -> Vec<Vec<char>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut used = vec![false; sorted.len()];
    let mut cur = Vec::new();
    fn rec(s: &[char], used: &mut [bool], cur: &mut Vec<char>, out: &mut Vec<Vec<char>>) {
        if cur.len() == s.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..s.len() {
            if used[i] || (i > 0 && s[i] == s[i - 1] && !used[i - 1]) {
                continue;
            }
            used[i] = true;
            cur.push(s[i]);
            rec(s, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&sorted, &mut used, &mut cur, &mut out);
    out
}

pub fn schema_x() -> RelationSchema {
    RelationSchema::parse("X", "ij.pq + ip.jq + jq.ip + pq.ij")
}

pub fn schema_f1() -> RelationSchema {
    RelationSchema::parse("f1", "iq.ja.pa + ia.jq.pa + ia.ja.pq")
}

pub fn schema_f2() -> RelationSchema {
    RelationSchema::parse("f2", "pi.ja.aq + pj.ia.aq + qi.ja.ap + qj.ia.ap")
}

pub fn schema_f3() -> RelationSchema {
    RelationSchema::parse("f3", "pa.ab.bq + qa.ab.bp")
}

pub fn schema_g1() -> RelationSchema {
    RelationSchema::parse("g1", "iq.ja.pb + iq.jb.pa + ia.jq.pb + ib.jq.pa + ia.jb.pq + ib.ja.pq")
}

pub fn schema_g2() -> RelationSchema {
    RelationSchema::parse("g2", "pi.ja.bq + pi.jb.aq + pj.ia.bq + pj.ib.aq + qi.ja.bp + qi.jb.ap + qj.ia.bp + qj.ib.ap")
}

pub fn schema_g3() -> RelationSchema {
    RelationSchema::parse("g3", "24.1b.3c.bc + 23.1b.4c.bc + 14.2b.3c.bc + 13.2b.4c.bc")
}

pub fn schema_s2() -> RelationSchema {
    RelationSchema::parse("s2", "xy.xb.yc.bc")
}

/// `ia.ja.pa`.
pub fn schema_triple() -> RelationSchema {
    RelationSchema::parse("ia.ja.pa", "ia.ja.pa")
}

/// Full linearization of `ia.ja.pa`.
pub fn schema_triple_linear() -> RelationSchema {
    RelationSchema::parse("ia.jb.pc (linearized)", "ia.jb.pc + ia.jc.pb + ib.ja.pc + ib.jc.pa + ic.ja.pb + ic.jb.pa")
}

pub fn all_schemas() -> Vec<RelationSchema> {
    vec![
        schema_x(),
        schema_f1(),
        schema_f2(),
        schema_f3(),
        schema_g1(),
        schema_g2(),
        schema_g3(),
        schema_s2(),
        schema_triple(),
        schema_triple_linear(),
    ]
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationSet {
    X,
    Y,
    Z1,
    Z2,
}

impl RelationSet {
    pub fn schemas(self) -> Vec<RelationSchema> {
        match self {
            RelationSet::X => vec![schema_x()],
            RelationSet::Y => vec![schema_x(), schema_f1(), schema_f2(), schema_f3()],
            RelationSet::Z1 => vec![schema_x(), schema_g1(), schema_g2()],
            RelationSet::Z2 => vec![schema_x(), schema_g1(), schema_g2(), schema_g3()],
        }
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for RelationSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<RelationSet> {
        match s.to_ascii_uppercase().as_str() {
            "X" => Ok(RelationSet::X),
            "Y" => Ok(RelationSet::Y),
            "Z1" => Ok(RelationSet::Z1),
            "Z2" => Ok(RelationSet::Z2),
            _ => Err(Error::Parse(format!("unknown relation set `{s}`"))),
        }
    }
}

/// Letter multiset of the tail for a type: the head is letter 0, the other
/// single letters are `1, 2, ..`, then letters of multiplicity 2, 3, ...
pub fn case_letters(case: &TypeVector) -> Vec<Letter> {
    let mut out = Vec::new();
    let mut next: Letter = 1;
    for (i, &count) in case.counts().iter().enumerate() {
        let mult = i as u32 + 1;
        let letters = if mult == 1 { count.saturating_sub(1) } else { count };
        for _ in 0..letters {
            for _ in 0..mult {
                out.push(next);
            }
            next += 1;
        }
    }
    out
}

/// The relation set used for each case.
pub fn default_relation_set(case: &TypeVector) -> RelationSet {
    match case.counts() {
        [5] => RelationSet::X,
        [5, 1] => RelationSet::Y,
        [7] => RelationSet::Z1,
        [5, 2] => RelationSet::Z2,
        _ => RelationSet::Z2,
    }
}

fn multiset(letters: &[Letter]) -> BTreeMap<Letter, u32> {
    let mut m = BTreeMap::new();
    for &l in letters {
        *m.entry(l).or_insert(0) += 1;
    }
    m
}

/// Every canonical 2-word using exactly the given letter multiset, ascending.
pub fn words_over(letters: &[Letter]) -> Vec<TwoWord> {
    fn rec(left: &mut BTreeMap<Letter, u32>, remaining: usize, cur: &mut Vec<Pair>, out: &mut Vec<TwoWord>) {
        if remaining == 0 {
            out.push(TwoWord(cur.clone()));
            return;
        }
        let avail: Vec<Letter> = left.iter().filter(|(_, &c)| c > 0).map(|(&l, _)| l).collect();
        for (i, &lo) in avail.iter().enumerate() {
            for &hi in &avail[i + 1..] {
                *left.get_mut(&lo).unwrap() -= 1;
                *left.get_mut(&hi).unwrap() -= 1;
                cur.push(Pair { lo, hi });
                rec(left, remaining - 1, cur, out);
                cur.pop();
                *left.get_mut(&lo).unwrap() += 1;
                *left.get_mut(&hi).unwrap() += 1;
            }
        }
    }
    if letters.len() % 2 == 1 {
        return Vec::new();
    }
    let mut left = multiset(letters);
    let mut out = Vec::new();
    rec(&mut left, letters.len() / 2, &mut Vec::new(), &mut out);
    out.sort();
    out
}

type Key = Reverse<TwoWord>;

fn to_row(terms: Vec<(TwoWord, Gf3)>) -> Option<SparseRow<Key>> {
    let row = SparseRow::from_entries(terms.into_iter().map(|(w, c)| (Reverse(w), c)));
    let (_, lead) = *row.leading()?;
    Some(row.scaled(lead.inverse().expect("nonzero")))
}

/// All substitutions of the schema's pattern letters by case letters whose
/// block fits inside `letters`.
fn fitting_substitutions(schema: &RelationSchema, letters: &[Letter]) -> Vec<FxHashMap<char, Letter>> {
    let vars = schema.variables();
    let counts = schema.term_multiset(0);
    let avail = multiset(letters);
    let distinct: Vec<Letter> = avail.keys().copied().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; vars.len()];
    if distinct.is_empty() {
        return out;
    }
    loop {
        let mut used: BTreeMap<Letter, u32> = BTreeMap::new();
        for (v, &k) in vars.iter().zip(&choice) {
            *used.entry(distinct[k]).or_insert(0) += counts[v];
        }
        if used.iter().all(|(l, c)| avail.get(l).is_some_and(|a| a >= c)) {
            out.push(vars.iter().zip(&choice).map(|(&v, &k)| (v, distinct[k])).collect());
        }
        // odometer
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < distinct.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Instances of one schema embedded in words over `letters`: the block sits
/// at every offset, the other letters fill the remaining slots in every way.
pub fn schema_rows(schema: &RelationSchema, letters: &[Letter]) -> Vec<Vec<(TwoWord, Gf3)>> {
    let k = schema.pair_len();
    let m = letters.len() / 2;
    if k == 0 || k > m || letters.len() % 2 == 1 {
        return Vec::new();
    }
    let counts = schema.term_multiset(0);
    let mut out = Vec::new();
    for map in fitting_substitutions(schema, letters) {
        let block = schema.instantiate(&map);
        if block.is_empty() {
            continue;
        }
        let mut rest = multiset(letters);
        for (v, c) in &counts {
            *rest.get_mut(&map[v]).expect("fits") -= c;
        }
        let rest: Vec<Letter> = rest.into_iter().flat_map(|(l, c)| std::iter::repeat_n(l, c as usize)).collect();
        let fillers = words_over(&rest);
        for offset in 0..=m - k {
            for fill in &fillers {
                let (pre, post) = fill.0.split_at(offset);
                let terms = block
                    .iter()
                    .map(|(w, c)| {
                        let mut p = pre.to_vec();
                        p.extend_from_slice(&w.0);
                        p.extend_from_slice(post);
                        (TwoWord(p), *c)
                    })
                    .collect();
                out.push(terms);
            }
        }
    }
    out
}

/// Relation rows for a case, deduplicated, normalized to leading
/// coefficient 1 and sorted.
pub fn relation_span(case: &TypeVector, set: RelationSet) -> Vec<SparseRow<Reverse<TwoWord>>> {
    relation_rows(&case_letters(case), &set.schemas())
}

pub fn relation_rows(letters: &[Letter], schemas: &[RelationSchema]) -> Vec<SparseRow<Reverse<TwoWord>>> {
    let rows: Vec<SparseRow<Key>> = schemas
        .par_iter()
        .flat_map_iter(|s| schema_rows(s, letters).into_iter().filter_map(to_row))
        .collect();
    let mut seen: BTreeSet<Vec<(TwoWord, u8)>> = BTreeSet::new();
    for r in rows {
        seen.insert(r.entries().iter().map(|(Reverse(w), c)| (w.clone(), c.value())).collect());
    }
    seen.into_iter()
        .map(|e| SparseRow::from_entries(e.into_iter().map(|(w, c)| (Reverse(w), Gf3::new(c as i64)))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularReport {
    #[serde(rename = "case")]
    pub case: TypeVector,
    pub relation_set: RelationSet,
    pub universe: usize,
    pub relation_rows: usize,
    pub irregular: Vec<TwoWord>,
    pub regular: Vec<TwoWord>,
    pub bound: usize,
}

/// Leading words of the reduced span are irregular; the rest are regular.
pub fn regular_from_rows(case: &TypeVector, set: RelationSet, rows: Vec<SparseRow<Key>>) -> RegularReport {
    let universe = words_over(&case_letters(case));
    let n_rows = rows.len();
    let mut ech: Echelon<Key> = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let mut irregular: Vec<TwoWord> = ech.pivot_keys().map(|Reverse(w)| w.clone()).collect();
    irregular.sort();
    let regular: Vec<TwoWord> = universe.iter().filter(|w| irregular.binary_search(w).is_err()).cloned().collect();
    RegularReport {
        case: case.clone(),
        relation_set: set,
        universe: universe.len(),
        relation_rows: n_rows,
        bound: regular.len(),
        irregular,
        regular,
    }
}

pub fn regular_words(case: &TypeVector, set: RelationSet) -> RegularReport {
    regular_from_rows(case, set, relation_span(case, set))
}

/// Values of 2-words in `C` with head generator 0 and letter `i` sent to
/// generator `i`.
pub fn word_values(words: &[TwoWord]) -> Vec<GElement> {
    words
        .par_iter()
        .map(|w| eval_left_normed(&w.to_left_normed(0), identity).expect("letters are generators"))
        .collect()
}

/// Rank in `C` of the given words.
pub fn rank_in_c(words: &[TwoWord]) -> usize {
    let rows: Vec<_> = word_values(words).into_iter().map(element_row).collect();
    rank_and_kernel(&rows).rank
}

/// Rows whose evaluation in `C` is nonzero; empty means the gate passes.
pub fn soundness_failures(rows: &[SparseRow<Key>]) -> Vec<usize> {
    let words: BTreeSet<&TwoWord> = rows.iter().flat_map(|r| r.keys().map(|Reverse(w)| w)).collect();
    let words: Vec<TwoWord> = words.into_iter().cloned().collect();
    let values: FxHashMap<&TwoWord, GElement> = words.iter().zip(word_values(&words)).collect();
    rows.par_iter()
        .enumerate()
        .filter(|(_, r)| {
            let sum = r.entries().iter().fold(GElement::zero(), |acc, (Reverse(w), c)| acc.add_scaled(*c, &values[w]));
            !sum.is_zero()
        })
        .map(|(i, _)| i)
        .collect()
}

/// Writes one word per line.
pub fn dump(words: &[TwoWord]) -> String {
    words.iter().map(|w| format!("{w}\n")).collect()
}

/// The 90 words of type (7), numbered from 1: blocks of six sharing the last
/// pair, blocks by decreasing last pair, increasing inside each block.
pub const CASE7_LIST: [&str; 90] = [
    "12.34.56", "13.24.56", "23.14.56", "14.23.56", "24.13.56", "34.12.56", "12.35.46", "13.25.46", "23.15.46",
    "15.23.46", "25.13.46", "35.12.46", "12.45.36", "14.25.36", "24.15.36", "15.24.36", "25.14.36", "45.12.36",
    "13.45.26", "14.35.26", "34.15.26", "15.34.26", "35.14.26", "45.13.26", "23.45.16", "24.35.16", "34.25.16",
    "25.34.16", "35.24.16", "45.23.16", "12.36.45", "13.26.45", "23.16.45", "16.23.45", "26.13.45", "36.12.45",
    "12.46.35", "14.26.35", "24.16.35", "16.24.35", "26.14.35", "46.12.35", "13.46.25", "14.36.25", "34.16.25",
    "16.34.25", "36.14.25", "46.13.25", "23.46.15", "24.36.15", "34.26.15", "26.34.15", "36.24.15", "46.23.15",
    "12.56.34", "15.26.34", "25.16.34", "16.25.34", "26.15.34", "56.12.34", "13.56.24", "15.36.24", "35.16.24",
    "16.35.24", "36.15.24", "56.13.24", "23.56.14", "25.36.14", "35.26.14", "26.35.14", "36.25.14", "56.23.14",
    "14.56.23", "15.46.23", "45.16.23", "16.45.23", "46.15.23", "56.14.23", "24.56.13", "25.46.13", "45.26.13",
    "26.45.13", "46.25.13", "56.24.13", "34.56.12", "35.46.12", "45.36.12", "36.45.12", "46.35.12", "56.34.12",
];

/// Numbers of the regular words of type (7) in [`CASE7_LIST`].
pub const CASE7_REGULAR: [usize; 20] = [1, 2, 3, 4, 7, 8, 9, 10, 13, 14, 15, 19, 21, 25, 31, 32, 33, 34, 38, 56];

pub fn case7_word(number: usize) -> TwoWord {
    CASE7_LIST[number - 1].parse().expect("static list")
}

/// Outcome of the pattern cross-check for a word of type (7).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PatternVerdict {
    Regular,
    /// Irregular by the numbered reduction step.
    Irregular(u8),
}

/// `ab.cd` on four distinct letters is irregular for `X` exactly when, after
/// relabelling the letters `1 < 2 < 3 < 4`, it reads `34.12` or `24.13`.
fn x_irregular(p: Pair, q: Pair) -> bool {
    let mut all = [p.lo, p.hi, q.lo, q.hi];
    all.sort_unstable();
    let rank = |l: Letter| all.iter().position(|&x| x == l).expect("member") + 1;
    matches!((rank(p.lo), rank(p.hi), rank(q.lo), rank(q.hi)), (3, 4, 1, 2) | (2, 4, 1, 3))
}

/// Cross-check for type (7) words via the three reduction patterns.
pub fn pattern_predicates_case7(w: &TwoWord) -> Result<PatternVerdict> {
    let p = w.pairs();
    let mut letters = w.letters();
    letters.sort_unstable();
    letters.dedup();
    if p.len() != 3 || letters.len() != 6 {
        return Err(Error::Invalid(format!("{w} is not a word of type (7)")));
    }
    if x_irregular(p[0], p[1]) || x_irregular(p[1], p[2]) {
        return Ok(PatternVerdict::Irregular(1));
    }
    let both = |q: Pair| [(q.lo, q.hi), (q.hi, q.lo)];
    let step2 = both(p[0]).iter().any(|&(s, _)| both(p[1]).iter().any(|&(l, _)| both(p[2]).iter().any(|&(m, _)| s >= l && l >= m)));
    if step2 {
        return Ok(PatternVerdict::Irregular(2));
    }
    let step3 = both(p[0])
        .iter()
        .any(|&(i, j)| both(p[1]).iter().any(|&(pp, q)| both(p[2]).iter().any(|&(r, t)| i >= t && j >= pp && q >= r)));
    if step3 {
        return Ok(PatternVerdict::Irregular(3));
    }
    Ok(PatternVerdict::Regular)
}

/// The words `v_1..v_7` of type (5,2) with `b = 5`, `c = 6`.
pub fn v_list() -> Vec<TwoWord> {
    ["12.35.46.56", "13.25.46.56", "23.15.46.56", "14.25.36.56", "15.23.46.56", "16.23.45.56", "15.26.34.56"]
        .iter()
        .map(|s| s.parse().expect("static"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TwoWord {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[(2, 1), (3, 4)]).unwrap(), (w("12.34"), Gf3::TWO));
        assert_eq!(normalize(&[(1, 2), (3, 4)]).unwrap(), (w("12.34"), Gf3::ONE));
        assert_eq!(normalize(&[(4, 3), (2, 1)]).unwrap(), (w("34.12"), Gf3::ONE));
        assert_eq!(normalize(&[(1, 1)]), Err(Error::DegeneratePair(1)));
    }

    #[test]
    fn pair_order() {
        assert_eq!(lex_compare(&w("12.34.56"), &w("13.24.56")), Ok(Ordering::Less));
        assert_eq!(lex_compare(&w("23.14.56"), &w("14.23.56")), Ok(Ordering::Less));
        assert_eq!(lex_compare(&w("12.34"), &w("12.34")), Ok(Ordering::Equal));
        assert_eq!(lex_compare(&w("12.34"), &w("12")), Err(Error::LengthMismatch(2, 1)));
    }

    #[test]
    fn display_and_parse() {
        let (word, s) = normalize(&[(11, 10), (1, 2)]).unwrap();
        assert_eq!(word.to_string(), "(10,11).12");
        assert_eq!(s, Gf3::TWO);
        assert_eq!(w("(10,11).12"), word);
        assert_eq!(parse_signed("21.34").unwrap().1, Gf3::TWO);
        assert!(parse_signed("1.34").is_err());
    }

    #[test]
    fn case7_list_is_the_sorted_universe() {
        let list: Vec<TwoWord> = CASE7_LIST.iter().map(|s| w(s)).collect();
        for block in list.chunks(6) {
            assert!(block.windows(2).all(|p| p[0] < p[1] && p[0].pairs()[2] == p[1].pairs()[2]));
        }
        let lasts: Vec<Pair> = list.chunks(6).map(|b| b[0].pairs()[2]).collect();
        assert!(lasts.windows(2).all(|p| p[0] > p[1]));
        let mut sorted = list.clone();
        sorted.sort();
        assert_eq!(sorted, words_over(&case_letters(&"7".parse().unwrap())));
    }

    #[test]
    fn case_letters_layout() {
        assert_eq!(case_letters(&"5".parse().unwrap()), vec![1, 2, 3, 4]);
        assert_eq!(case_letters(&"5,2".parse().unwrap()), vec![1, 2, 3, 4, 5, 5, 6, 6]);
        assert_eq!(case_letters(&"5,1".parse().unwrap()), vec![1, 2, 3, 4, 5, 5]);
    }

    #[test]
    fn linearizations_reproduce_printed_relations() {
        let skew = RelationSchema::parse("skew", "ix.xq + qx.xi");
        let x = linearize(&skew, 'x', &['j', 'p'], "X");
        assert_eq!(x.canonical_terms(), schema_x().canonical_terms());
        let g1 = linearize(&schema_f1(), 'a', &['a', 'b'], "g1");
        assert_eq!(g1.canonical_terms(), schema_g1().canonical_terms());
        let t = RelationSchema::parse("t", "pi.ia.ap");
        let t = linearize(&t, 'p', &['p', 'q'], "t");
        let t = linearize(&t, 'i', &['i', 'j'], "t");
        let g2 = linearize(&t, 'a', &['a', 'b'], "g2");
        assert_eq!(g2.canonical_terms(), schema_g2().canonical_terms());
        let f1 = linearize(&schema_triple(), 'a', &['a', 'a', 'q'], "f1");
        assert_eq!(f1.canonical_terms(), schema_f1().canonical_terms());
        let l71 = linearize(&schema_triple(), 'a', &['a', 'b', 'c'], "71");
        assert_eq!(l71.canonical_terms(), schema_triple_linear().canonical_terms());
        let s2 = linearize(&schema_s2(), 'x', &['1', '2'], "s");
        let g3 = linearize(&s2, 'y', &['3', '4'], "g3");
        assert_eq!(g3.canonical_terms(), schema_g3().canonical_terms());
    }

    #[test]
    fn schema_terms_share_letters() {
        for s in all_schemas() {
            for t in 0..s.terms.len() {
                assert_eq!(s.term_multiset(t), s.term_multiset(0), "{}", s.name);
            }
        }
    }

    #[test]
    fn case5_regular() {
        let r = regular_words(&"5".parse().unwrap(), RelationSet::X);
        assert_eq!(r.irregular, vec![w("24.13"), w("34.12")]);
        assert_eq!(r.regular, vec![w("12.34"), w("13.24"), w("23.14"), w("14.23")]);
        assert_eq!(r.bound, 4);
    }

    #[test]
    fn empty_case() {
        assert!(words_over(&[]).len() == 1);
        assert!(relation_rows(&[], &[schema_x()]).is_empty());
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(pattern_predicates_case7(&case7_word(16)), Ok(PatternVerdict::Irregular(2)));
        assert_eq!(pattern_predicates_case7(&case7_word(39)), Ok(PatternVerdict::Irregular(3)));
        assert_eq!(pattern_predicates_case7(&case7_word(1)), Ok(PatternVerdict::Regular));
        assert!(pattern_predicates_case7(&w("12.34")).is_err());
    }
}
