//! Products of conjugacy classes and normal sets in Alt(n).
//!
//! [`ClassAlgebra`] decides whether a class `g` meets the product `AB` by
//! evaluating the Frobenius character sum exactly. Character values are
//! stored doubled, `2ψ(c) = x + y√D` with integers `x, y`, and every term is
//! multiplied by the integer `|G|/ψ(1)`, so a whole sum is accumulated in
//! `i128` and divided by `8|G|` once at the end. Irrational parts are kept
//! per radicand and must cancel.
//!
//! The sweeps in [`reports`] run against any [`ClassProducts`]
//! implementation; the brute-force oracle provides the other one.

pub mod reports;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::alt_group::{class_size, group_order, AltClass, NormalSet};
use crate::characters::{alt_character_table, AltChar};
use crate::error::{Error, Result};

pub use reports::*;

/// Largest `n` the character engine accepts; `8|Alt(n)|²` must fit in `i128`.
pub const ENGINE_MAX_N: usize = 16;

/// Anything that knows, for each pair of classes, which classes meet their product.
pub trait ClassProducts: Sync {
    fn n(&self) -> usize;

    /// All classes of Alt(n) in the order of [`crate::alt_group::enumerate_alt_classes`].
    fn classes(&self) -> &[AltClass];

    /// Bitset over class indices of the classes meeting `AB`.
    fn pair_support(&self, a: usize, b: usize) -> Result<&FixedBitSet>;

    fn class_index(&self, c: &AltClass) -> Option<usize> {
        self.classes().binary_search(c).ok()
    }
}

/// The Frobenius count for a triple of classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusResult {
    pub class_triple: (AltClass, AltClass, AltClass),
    /// `Σ_ψ ψ(a)ψ(b)conj(ψ(g))/ψ(1)`.
    #[serde(serialize_with = "serialize_display")]
    pub sum_value: BigRational,
    /// `|{(x, y) ∈ A × B : xy = g}|` for a fixed `g`.
    #[serde(serialize_with = "serialize_display")]
    pub pair_count: BigUint,
}

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Character-table engine for one `n`.
pub struct ClassAlgebra {
    n: usize,
    classes: Vec<AltClass>,
    sizes: Vec<BigUint>,
    characters: Vec<AltChar>,
    order: BigUint,
    /// `|G| / ψ(1)` per character.
    cofactors: Vec<i128>,
    radicands: Vec<i64>,
    /// `doubled[ψ][c] = (x, y)` with `2ψ(c) = x + y√D_ψ`.
    doubled: Vec<Vec<(i128, i128)>>,
    support: OnceLock<Result<Vec<FixedBitSet>>>,
}

fn overflow() -> Error {
    Error::Inconsistency("i128 overflow in character sum".into())
}

impl ClassAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > ENGINE_MAX_N {
            return Err(Error::Capability { n, max: ENGINE_MAX_N, what: "character engine" });
        }
        let table = alt_character_table(n);
        let order = group_order(n);
        let mut radicands = Vec::with_capacity(table.characters.len());
        let mut doubled = Vec::with_capacity(table.characters.len());
        for row in &table.values {
            let d = row.iter().find(|v| !v.is_rational()).map_or(1, |v| v.radicand());
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                if !v.is_rational() && v.radicand() != d {
                    return Err(Error::Inconsistency(format!("character row mixes radicands {d} and {}", v.radicand())));
                }
                out.push((doubled_integer(v.rational_part())?, doubled_integer(v.radical_coeff())?));
            }
            radicands.push(d);
            doubled.push(out);
        }
        let cofactors = table
            .degrees
            .iter()
            .map(|deg| {
                let (q, r) = order.div_rem(deg);
                if !r.is_zero() {
                    return Err(Error::Inconsistency(format!("degree {deg} does not divide {order}")));
                }
                q.to_i128().ok_or_else(overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassAlgebra {
            n,
            sizes: table.classes.iter().map(class_size).collect(),
            classes: table.classes,
            characters: table.characters,
            order,
            cofactors,
            radicands,
            doubled,
            support: OnceLock::new(),
        })
    }

    pub fn characters(&self) -> &[AltChar] {
        &self.characters
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn group_order(&self) -> &BigUint {
        &self.order
    }

    fn index_of(&self, c: &AltClass) -> Result<usize> {
        if c.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: c.n() });
        }
        self.class_index(c).ok_or_else(|| Error::InvalidClass(c.to_string()))
    }

    /// `8|G| · Σ_ψ ψ(a)ψ(b)conj(ψ(g))/ψ(1)` as an exact integer.
    fn scaled_sum(&self, a: usize, b: usize, g: usize) -> Result<i128> {
        let mut rational: i128 = 0;
        let mut buckets: BTreeMap<i64, i128> = BTreeMap::new();
        for (k, row) in self.doubled.iter().enumerate() {
            let d = self.radicands[k] as i128;
            let (x1, y1) = row[a];
            let (x2, y2) = row[b];
            let (x3, mut y3) = row[g];
            if d < 0 {
                y3 = -y3;
            }
            let m = |x: i128, y: i128| x.checked_mul(y).ok_or_else(overflow);
            let s = |x: i128, y: i128| x.checked_add(y).ok_or_else(overflow);
            let p = s(m(x1, x2)?, m(m(y1, y2)?, d)?)?;
            let q = s(m(x1, y2)?, m(x2, y1)?)?;
            let u = s(m(p, x3)?, m(m(q, y3)?, d)?)?;
            let v = s(m(p, y3)?, m(q, x3)?)?;
            let w = self.cofactors[k];
            rational = s(rational, m(u, w)?)?;
            if v != 0 {
                let e = buckets.entry(self.radicands[k]).or_insert(0);
                *e = s(*e, m(v, w)?)?;
            }
        }
        if let Some((d, c)) = buckets.iter().find(|(_, c)| **c != 0) {
            return Err(Error::Inconsistency(format!(
                "Frobenius sum for ({}, {}, {}) left {c}/(8|G|)*sqrt({d})",
                self.classes[a], self.classes[b], self.classes[g]
            )));
        }
        Ok(rational)
    }

    fn pair_count_from(&self, a: usize, b: usize, g: usize, scaled: i128) -> Result<(BigRational, BigUint)> {
        let eight_order: BigInt = BigInt::from(self.order.clone()) * BigInt::from(8);
        let sum_value = BigRational::new(BigInt::from(scaled), eight_order.clone());
        // |A||B| · scaled / (8|G|²)
        let numer = BigInt::from(&self.sizes[a] * &self.sizes[b]) * BigInt::from(scaled);
        let denom = eight_order * BigInt::from(self.order.clone());
        let (count, rem) = numer.div_rem(&denom);
        if !rem.is_zero() || count.is_negative() {
            return Err(Error::Inconsistency(format!(
                "pair count {numer}/{denom} for ({}, {}, {}) is not a nonnegative integer",
                self.classes[a], self.classes[b], self.classes[g]
            )));
        }
        Ok((sum_value, count.to_biguint().expect("nonnegative")))
    }

    /// Exact Frobenius sum and pair count for the triple `(A, B, g)`.
    pub fn frobenius_sum(&self, a: &AltClass, b: &AltClass, g: &AltClass) -> Result<FrobeniusResult> {
        let (ia, ib, ig) = (self.index_of(a)?, self.index_of(b)?, self.index_of(g)?);
        let scaled = self.scaled_sum(ia, ib, ig)?;
        let (sum_value, pair_count) = self.pair_count_from(ia, ib, ig, scaled)?;
        Ok(FrobeniusResult { class_triple: (a.clone(), b.clone(), g.clone()), sum_value, pair_count })
    }

    /// Whether the class `g` lies in `AB`.
    pub fn contains(&self, a: &AltClass, b: &AltClass, g: &AltClass) -> Result<bool> {
        Ok(!self.frobenius_sum(a, b, g)?.sum_value.is_zero())
    }

    fn compute_support(&self) -> Result<Vec<FixedBitSet>> {
        let k = self.classes.len();
        let upper: Vec<(usize, usize, FixedBitSet)> = (0..k)
            .into_par_iter()
            .flat_map_iter(|a| (a..k).map(move |b| (a, b)))
            .map(|(a, b)| {
                let mut bits = FixedBitSet::with_capacity(k);
                for g in 0..k {
                    let scaled = self.scaled_sum(a, b, g)?;
                    self.pair_count_from(a, b, g, scaled)?;
                    bits.set(g, scaled != 0);
                }
                Ok((a, b, bits))
            })
            .collect::<Result<_>>()?;
        let mut table = vec![FixedBitSet::with_capacity(k); k * k];
        for (a, b, bits) in upper {
            table[b * k + a] = bits.clone();
            table[a * k + b] = bits;
        }
        Ok(table)
    }

    /// Computes all pair supports now (in parallel) instead of on first use.
    pub fn precompute(&self) -> Result<()> {
        self.support.get_or_init(|| self.compute_support()).as_ref().map(|_| ()).map_err(Clone::clone)
    }
}

fn doubled_integer(r: &BigRational) -> Result<i128> {
    let two_r = r * BigRational::from_integer(BigInt::from(2));
    if !two_r.is_integer() {
        return Err(Error::Inconsistency(format!("character value component {r} is not a half-integer")));
    }
    two_r.to_integer().to_i128().ok_or_else(overflow)
}

impl ClassProducts for ClassAlgebra {
    fn n(&self) -> usize {
        self.n
    }

    fn classes(&self) -> &[AltClass] {
        &self.classes
    }

    fn pair_support(&self, a: usize, b: usize) -> Result<&FixedBitSet> {
        let table = self.support.get_or_init(|| self.compute_support()).as_ref().map_err(Clone::clone)?;
        Ok(&table[a * self.classes.len() + b])
    }
}

/// Bitset over class indices for a normal set.
pub fn to_bits<P: ClassProducts + ?Sized>(p: &P, set: &NormalSet) -> Result<FixedBitSet> {
    if set.n() != p.n() {
        return Err(Error::SizeMismatch { expected: p.n(), found: set.n() });
    }
    let mut bits = FixedBitSet::with_capacity(p.classes().len());
    for c in set.iter() {
        bits.insert(p.class_index(c).ok_or_else(|| Error::InvalidClass(c.to_string()))?);
    }
    Ok(bits)
}

pub fn from_bits<P: ClassProducts + ?Sized>(p: &P, bits: &FixedBitSet) -> NormalSet {
    NormalSet::from_classes(p.n(), bits.ones().map(|i| p.classes()[i].clone())).expect("classes of the same n")
}

pub fn product_bits<P: ClassProducts + ?Sized>(p: &P, s: &FixedBitSet, t: &FixedBitSet) -> Result<FixedBitSet> {
    let mut out = FixedBitSet::with_capacity(p.classes().len());
    for a in s.ones() {
        for b in t.ones() {
            out.union_with(p.pair_support(a, b)?);
        }
    }
    Ok(out)
}

/// All classes meeting `ST`.
pub fn product_set<P: ClassProducts + ?Sized>(p: &P, s: &NormalSet, t: &NormalSet) -> Result<NormalSet> {
    let bits = product_bits(p, &to_bits(p, s)?, &to_bits(p, t)?)?;
    Ok(from_bits(p, &bits))
}

/// `g ∈ AB` read off the pair supports.
pub fn contains_via<P: ClassProducts + ?Sized>(p: &P, a: &AltClass, b: &AltClass, g: &AltClass) -> Result<bool> {
    let idx = |c: &AltClass| p.class_index(c).ok_or_else(|| Error::InvalidClass(c.to_string()));
    Ok(p.pair_support(idx(a)?, idx(b)?)?.contains(idx(g)?))
}

/// The `k`-fold product `S·S·…·S`.
pub fn power_set<P: ClassProducts + ?Sized>(p: &P, s: &NormalSet, k: usize) -> Result<NormalSet> {
    assert!(k >= 1, "power must be positive");
    let base = to_bits(p, s)?;
    let mut acc = base.clone();
    for _ in 1..k {
        acc = product_bits(p, &acc, &base)?;
    }
    Ok(from_bits(p, &acc))
}

/// Whether `C^k` is all of Alt(n).
pub fn power_covers<P: ClassProducts + ?Sized>(p: &P, c: &NormalSet, k: usize) -> Result<bool> {
    Ok(power_set(p, c, k)?.len() == p.classes().len())
}

/// Least `k ≤ k_max` with `C^k = G`.
pub fn covering_number<P: ClassProducts + ?Sized>(p: &P, c: &NormalSet, k_max: usize) -> Result<Option<usize>> {
    let all = p.classes().len();
    let base = to_bits(p, c)?;
    let mut acc = base.clone();
    for k in 1..=k_max {
        if k > 1 {
            acc = product_bits(p, &acc, &base)?;
        }
        if acc.count_ones(..) == all {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt_group::{enumerate_alt_classes, inverse_class};

    fn c(s: &str) -> AltClass {
        s.parse().unwrap()
    }

    #[test]
    fn identity_triple() {
        for n in 2..=9 {
            let alg = ClassAlgebra::new(n).unwrap();
            let id = AltClass::identity(n);
            let r = alg.frobenius_sum(&id, &id, &id).unwrap();
            assert_eq!(r.pair_count, BigUint::from(1u32));
        }
    }

    #[test]
    fn inverse_pairs_hit_identity() {
        for n in 3..=9 {
            let alg = ClassAlgebra::new(n).unwrap();
            let id = AltClass::identity(n);
            for a in enumerate_alt_classes(n) {
                let inv = inverse_class(&a);
                assert_eq!(alg.frobenius_sum(&a, &inv, &id).unwrap().pair_count, class_size(&a));
                for b in enumerate_alt_classes(n).into_iter().filter(|b| *b != inv) {
                    assert!(!alg.contains(&a, &b, &id).unwrap(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn three_cycles_make_five_cycles() {
        let alg = ClassAlgebra::new(5).unwrap();
        for g in ["5+", "5-"] {
            let r = alg.frobenius_sum(&c("3,1,1"), &c("3,1,1"), &c(g)).unwrap();
            assert!(r.pair_count > BigUint::zero());
        }
    }

    #[test]
    fn frobenius_is_symmetric_and_conserves_mass() {
        for n in 3..=9 {
            let alg = ClassAlgebra::new(n).unwrap();
            let classes = enumerate_alt_classes(n);
            for a in &classes {
                for b in &classes {
                    let mut mass = BigUint::zero();
                    for g in &classes {
                        let ab = alg.frobenius_sum(a, b, g).unwrap();
                        let ba = alg.frobenius_sum(b, a, g).unwrap();
                        assert_eq!(ab.pair_count, ba.pair_count);
                        assert_eq!(ab.sum_value.is_zero(), ab.pair_count.is_zero());
                        mass += ab.pair_count * class_size(g);
                    }
                    assert_eq!(mass, class_size(a) * class_size(b), "n={n} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn products_commute_and_associate() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in [5, 6, 7] {
            let alg = ClassAlgebra::new(n).unwrap();
            let classes = enumerate_alt_classes(n);
            let mut random_set = || {
                NormalSet::from_classes(n, classes.iter().filter(|_| rng.gen_bool(0.3)).cloned()).unwrap()
            };
            for _ in 0..20 {
                let (s, t, u) = (random_set(), random_set(), random_set());
                assert_eq!(product_set(&alg, &s, &t).unwrap(), product_set(&alg, &t, &s).unwrap());
                let left = product_set(&alg, &product_set(&alg, &s, &t).unwrap(), &u).unwrap();
                let right = product_set(&alg, &s, &product_set(&alg, &t, &u).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn identity_products() {
        let alg = ClassAlgebra::new(6).unwrap();
        let id = NormalSet::from_classes(6, [AltClass::identity(6)]).unwrap();
        assert_eq!(product_set(&alg, &id, &id).unwrap(), id);
    }

    #[test]
    fn single_class_is_not_the_group() {
        let alg = ClassAlgebra::new(7).unwrap();
        for cls in enumerate_alt_classes(7).into_iter().filter(|c| !c.is_identity()) {
            let set = NormalSet::from_classes(7, [cls]).unwrap();
            assert!(!power_covers(&alg, &set, 1).unwrap());
        }
    }

    #[test]
    fn capability_limits() {
        assert!(matches!(ClassAlgebra::new(ENGINE_MAX_N + 1), Err(Error::Capability { .. })));
        assert!(matches!(ClassAlgebra::new(0), Err(Error::Capability { .. })));
    }
}
