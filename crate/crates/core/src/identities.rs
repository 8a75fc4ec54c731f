//! Identity checks in `C` on generator instantiations and on random odd
//! elements of the subalgebra generated by the underived generators.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gf3::Gf3;
use crate::grassmann::GElement;
use crate::report::{CheckEntry, Report};
use crate::rewrite::{all_schemas, RelationSchema};
use crate::twisted::{associator, odd_associator};
use crate::words::{eval_tree, LeftNormedWord};

/// Generator instantiations are exhaustive up to this many, sampled above.
pub const INSTANTIATION_CAP: u64 = 10_000;

type Check = Box<dyn Fn(&[GElement]) -> Option<String> + Send + Sync>;

pub struct Identity {
    pub name: String,
    pub arity: usize,
    check: Check,
}

impl Identity {
    pub fn new(name: &str, arity: usize, check: impl Fn(&[GElement]) -> Option<String> + Send + Sync + 'static) -> Self {
        Identity { name: name.to_string(), arity, check: Box::new(check) }
    }

    pub fn check(&self, vals: &[GElement]) -> Option<String> {
        (self.check)(vals)
    }
}

fn zero_or(x: GElement) -> Option<String> {
    if x.is_zero() {
        None
    } else {
        Some(x.to_string())
    }
}

/// Value of a left-normed word whose letters index into `vals`.
pub fn eval_with(w: &LeftNormedWord, vals: &[GElement]) -> GElement {
    eval_tree(&w.to_word3(), &|l| Ok(vals[l as usize].clone())).expect("letters index the values")
}

/// `((..((x,y,a1),a1,a2),a2,..,ak),ak,z)`; letters index `x, y, z, a1..ak`.
pub fn bruck_word(k: usize) -> LeftNormedWord {
    let a = |i: usize| 3 + i as u32;
    let mut tail = vec![(1, a(0))];
    for i in 1..k {
        tail.push((a(i - 1), a(i)));
    }
    tail.push((a(k - 1), 2));
    LeftNormedWord::new(0, tail)
}

fn bruck_identity(k: usize) -> Identity {
    let w = bruck_word(k);
    Identity::new(&format!("bruck_f{k}"), 3 + k, move |v| {
        let f = eval_with(&w, v);
        let permuted = |perm: &[usize]| {
            let p: Vec<GElement> = perm.iter().map(|&i| v[i].clone()).collect();
            eval_with(&w, &p)
        };
        let mut base: Vec<usize> = (0..3 + k).collect();
        let mut problems = Vec::new();
        for (i, j, label) in [(0, 1, "x<->y"), (1, 2, "y<->z"), (0, 2, "x<->z")] {
            base.swap(i, j);
            if !(&f + &permuted(&base)).is_zero() {
                problems.push(format!("not skew under {label}"));
            }
            base.swap(i, j);
        }
        if k >= 2 {
            base.swap(3, 4);
            if f != permuted(&base) {
                problems.push("not symmetric under a1<->a2".to_string());
            }
        }
        if problems.is_empty() {
            None
        } else {
            Some(problems.join("; "))
        }
    })
}

fn shortcut_identity() -> Identity {
    Identity::new("associator_shortcut", 3, |v| zero_or(&associator(&v[0], &v[1], &v[2]) - &odd_associator(&v[0], &v[1], &v[2])))
}

/// `((x,y,z),a,b) = ((x,a,b),y,z) + (x,(y,a,b),z) + (x,y,(z,a,b))`.
fn expansion_identity() -> Identity {
    Identity::new("associator_expansion", 5, |v| {
        let (x, y, z, a, b) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
        let lhs = associator(&associator(x, y, z), a, b);
        let r1 = associator(&associator(x, a, b), y, z);
        let r2 = associator(x, &associator(y, a, b), z);
        let r3 = associator(x, y, &associator(z, a, b));
        zero_or(&(&(&lhs - &r1) - &r2) - &r3)
    })
}

/// The schema as an identity with the head as an extra first argument.
pub fn schema_identity(schema: &RelationSchema) -> Identity {
    let vars = schema.variables();
    let words: Vec<(Gf3, LeftNormedWord)> = schema
        .terms
        .iter()
        .map(|(c, pairs)| {
            let idx = |ch: char| 1 + vars.iter().position(|&v| v == ch).expect("variable") as u32;
            (*c, LeftNormedWord::new(0, pairs.iter().map(|&(a, b)| (idx(a), idx(b))).collect()))
        })
        .collect();
    Identity::new(&format!("relation {}", schema.name), vars.len() + 1, move |v| {
        zero_or(words.iter().fold(GElement::zero(), |acc, (c, w)| acc.add_scaled(*c, &eval_with(w, v))))
    })
}

pub fn identity_list() -> Vec<Identity> {
    let mut out = vec![bruck_identity(1), bruck_identity(2), shortcut_identity(), expansion_identity()];
    out.extend(all_schemas().iter().map(schema_identity));
    out
}

/// Index tuples for the generator instantiations: all of `n^arity` when at
/// most [`INSTANTIATION_CAP`], else a seeded subset, in increasing order.
pub fn instantiation_indices(n: u32, arity: usize, seed: u64) -> Vec<Vec<u32>> {
    let total = (n as u64).checked_pow(arity as u32).unwrap_or(u64::MAX);
    let decode = |mut idx: u64| {
        let mut t = vec![0u32; arity];
        for slot in t.iter_mut().rev() {
            *slot = (idx % n as u64) as u32;
            idx /= n as u64;
        }
        t
    };
    if n == 0 {
        return Vec::new();
    }
    if total <= INSTANTIATION_CAP {
        return (0..total).map(decode).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<u64> = if total <= usize::MAX as u64 {
        index::sample(&mut rng, total as usize, INSTANTIATION_CAP as usize).into_iter().map(|i| i as u64).collect()
    } else {
        let mut s = std::collections::BTreeSet::new();
        while s.len() < INSTANTIATION_CAP as usize {
            s.insert(rng.gen_range(0..total));
        }
        s.into_iter().collect()
    };
    picked.sort_unstable();
    picked.into_iter().map(decode).collect()
}

/// Random odd element of the subalgebra generated by `0..n`: a short
/// combination of generators and associators of generators.
pub fn random_odd_subalgebra_element<R: Rng>(rng: &mut R, n: u32) -> GElement {
    let n = n.max(1);
    let mut x = GElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = Gf3::new(rng.gen_range(1..=2));
        let term = if rng.gen_bool(0.6) {
            GElement::generator(rng.gen_range(0..n))
        } else {
            let g = |r: &mut R| GElement::generator(r.gen_range(0..n));
            let (a, b, d) = (g(rng), g(rng), g(rng));
            odd_associator(&a, &b, &d)
        };
        x = x.add_scaled(c, &term);
    }
    x
}

fn check_all(id: &Identity, cases: &[(String, Vec<GElement>)]) -> Vec<CheckEntry> {
    cases.par_iter().map(|(inst, vals)| CheckEntry::new(&id.name, inst.clone(), id.check(vals))).collect()
}

fn seed_for(seed: u64, k: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k as u64)
}

/// Runs every identity on generator instantiations of `C_n` and on
/// `samples` seeded tuples of random odd elements.
pub fn verify_identities(n: u32, samples: usize, seed: u64) -> Report {
    run_identities(&identity_list(), n, samples, seed)
}

pub fn run_identities(ids: &[Identity], n: u32, samples: usize, seed: u64) -> Report {
    let mut report = Report::default();
    for (k, id) in ids.iter().enumerate() {
        let gens: Vec<(String, Vec<GElement>)> = instantiation_indices(n, id.arity, seed_for(seed, k))
            .into_iter()
            .map(|t| (format!("{t:?}"), t.into_iter().map(GElement::generator).collect()))
            .collect();
        report.entries.extend(check_all(id, &gens));
        if n == 0 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(seed, 1000 + k));
        let random: Vec<(String, Vec<GElement>)> = (0..samples)
            .map(|i| (format!("sample {i}"), (0..id.arity).map(|_| random_odd_subalgebra_element(&mut rng, n)).collect()))
            .collect();
        report.entries.extend(check_all(id, &random));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(idx: &[u32]) -> Vec<GElement> {
        idx.iter().map(|&i| GElement::generator(i)).collect()
    }

    #[test]
    fn bruck_word_shape() {
        assert_eq!(bruck_word(1).to_string(), bruck_word(1).to_string());
        assert_eq!(bruck_word(2).tail, vec![(1, 3), (3, 4), (4, 2)]);
    }

    #[test]
    fn bruck_two_on_c5() {
        let id = bruck_identity(2);
        assert_eq!(id.check(&gens(&[0, 1, 2, 3, 4])), None);
        assert!(!eval_with(&bruck_word(2), &gens(&[0, 1, 2, 3, 4])).is_zero());
    }

    #[test]
    fn expansion_on_distinct_generators() {
        assert_eq!(expansion_identity().check(&gens(&[0, 1, 2, 3, 4])), None);
    }

    #[test]
    fn triple_relation_vanishes() {
        let schema = crate::rewrite::schema_triple();
        let id = schema_identity(&schema);
        // head x, then i, a, j, p
        assert_eq!(id.check(&gens(&[0, 1, 2, 3, 4])), None);
    }

    #[test]
    fn indices_exhaustive_and_capped() {
        assert_eq!(instantiation_indices(3, 2, 0).len(), 9);
        let big = instantiation_indices(7, 5, 0);
        assert_eq!(big.len(), INSTANTIATION_CAP as usize);
        assert!(big.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(big, instantiation_indices(7, 5, 0));
        assert!(instantiation_indices(0, 3, 0).is_empty());
    }

    #[test]
    fn small_suite_passes() {
        let r = verify_identities(4, 5, 0);
        let bad: Vec<_> = r.failures().take(3).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
