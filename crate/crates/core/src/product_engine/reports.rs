//! Exhaustive sweeps over classes of Alt(n): the δ criterion for long
//! cycles, the four-class covering sweep, and the long-cycle product facts.
//!
//! Most of the statements checked here are asymptotic; at small `n` the
//! reports describe what happens rather than assert it.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::{from_bits, product_bits, to_bits, ClassProducts};
use crate::alt_group::{
    at_least_power, class_size, classes_of_type, delta, group_order, is_even_type, long_cycle_length, AltClass,
    NormalSet,
};
use crate::error::Result;
use crate::partitions::{enumerate_partitions, Partition};

fn cycle_delta(rho: &Partition) -> usize {
    rho.n() - rho.len()
}

/// Whether `δ(A) + δ(B)` exceeds `n - 1` (odd `n`) or `n` (even `n`).
pub fn dvir_rodgers_applies(a: &AltClass, b: &AltClass) -> bool {
    delta_criterion(a.n(), delta(a) + delta(b))
}

fn delta_criterion(n: usize, delta_sum: usize) -> bool {
    if n % 2 == 1 {
        delta_sum + 1 > n
    } else {
        delta_sum > n
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DvirViolation {
    pub a: Partition,
    pub b: Partition,
    pub delta_sum: usize,
    pub missing: Vec<AltClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DvirReport {
    pub n: usize,
    pub l: usize,
    pub pairs_checked: usize,
    pub applicable: usize,
    pub violations: Vec<DvirViolation>,
}

/// For every unordered pair of even cycle types (Sym(n)-classes inside
/// Alt(n)) passing the δ criterion, checks that both `l`-cycle classes lie
/// in the product.
pub fn check_dvir_rodgers<P: ClassProducts + ?Sized>(p: &P) -> Result<DvirReport> {
    let n = p.n();
    let types: Vec<Partition> = enumerate_partitions(n).into_iter().filter(is_even_type).collect();
    let long = to_bits(p, &NormalSet::long_cycles(n))?;
    let mut pairs_checked = 0;
    let mut applicable = 0;
    let mut violations = Vec::new();
    for (i, a) in types.iter().enumerate() {
        for b in &types[i..] {
            pairs_checked += 1;
            let delta_sum = cycle_delta(a) + cycle_delta(b);
            if !delta_criterion(n, delta_sum) {
                continue;
            }
            applicable += 1;
            let sa = to_bits(p, &NormalSet::from_classes(n, classes_of_type(a)?)?)?;
            let sb = to_bits(p, &NormalSet::from_classes(n, classes_of_type(b)?)?)?;
            let prod = product_bits(p, &sa, &sb)?;
            if !prod.is_superset(&long) {
                let missing = long.difference(&prod).map(|i| p.classes()[i].clone()).collect();
                violations.push(DvirViolation { a: a.clone(), b: b.clone(), delta_sum, missing });
            }
        }
    }
    Ok(DvirReport { n, l: long_cycle_length(n), pairs_checked, applicable, violations })
}

#[derive(Debug, Clone, Serialize)]
pub struct On2anReport {
    pub n: usize,
    pub long_cycles: NormalSet,
    pub covers: bool,
    pub missing: Vec<AltClass>,
}

/// Whether the set of `l`-cycles squares to the whole group.
pub fn long_cycle_square<P: ClassProducts + ?Sized>(p: &P) -> Result<On2anReport> {
    let long = NormalSet::long_cycles(p.n());
    let bits = to_bits(p, &long)?;
    let prod = product_bits(p, &bits, &bits)?;
    let missing: Vec<AltClass> = (0..p.classes().len()).filter(|&i| !prod.contains(i)).map(|i| p.classes()[i].clone()).collect();
    Ok(On2anReport { n: p.n(), covers: missing.is_empty(), long_cycles: long, missing })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadrupleVerdict {
    pub classes: [AltClass; 4],
    pub deltas: [usize; 4],
    pub sizes: [String; 4],
    pub min_pair_product: String,
    pub long_cycle_classes: usize,
    pub covered: bool,
    pub missing: Vec<AltClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub epsilon: String,
    pub group_order: String,
    pub qualifying: usize,
    pub covered: usize,
    pub uncovered: usize,
    pub quadruples: Vec<QuadrupleVerdict>,
}

/// Every multiset `{A, B, C, D}` of classes whose six pairwise size
/// products reach `|G|^(1+ε)`, with the verdict `ABCD = G` computed as
/// `((AB)C)D`.
///
/// Sorted by smallest pairwise product (descending), then by class order.
pub fn verify_four_class_theorem<P: ClassProducts + ?Sized>(p: &P, epsilon: &BigRational) -> Result<TheoremReport> {
    let n = p.n();
    let classes = p.classes();
    let k = classes.len();
    let order = group_order(n);
    let exponent = BigRational::one() + epsilon;
    let sizes: Vec<BigUint> = classes.iter().map(class_size).collect();
    let mut good = vec![false; k * k];
    for i in 0..k {
        for j in i..k {
            let ok = at_least_power(&(&sizes[i] * &sizes[j]), &order, &exponent);
            good[i * k + j] = ok;
            good[j * k + i] = ok;
        }
    }
    let ok = |i: usize, j: usize| good[i * k + j];
    let mut quads = Vec::new();
    for a in 0..k {
        for b in a..k {
            if !ok(a, b) {
                continue;
            }
            for c in b..k {
                if !(ok(a, c) && ok(b, c)) {
                    continue;
                }
                for d in c..k {
                    if ok(a, d) && ok(b, d) && ok(c, d) {
                        quads.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let singles: Vec<_> = (0..k)
        .map(|i| {
            let mut s = fixedbitset::FixedBitSet::with_capacity(k);
            s.insert(i);
            s
        })
        .collect();
    let mut verdicts = quads
        .par_iter()
        .map(|q| {
            let ab = p.pair_support(q[0], q[1])?.clone();
            let abc = product_bits(p, &ab, &singles[q[2]])?;
            let abcd = product_bits(p, &abc, &singles[q[3]])?;
            let missing: Vec<AltClass> = (0..k).filter(|&i| !abcd.contains(i)).map(|i| classes[i].clone()).collect();
            let mut min_product: Option<BigUint> = None;
            for x in 0..4 {
                for y in x + 1..4 {
                    let prod = &sizes[q[x]] * &sizes[q[y]];
                    min_product = Some(min_product.map_or(prod.clone(), |m| m.min(prod)));
                }
            }
            Ok((min_product.expect("six pairs"), q, missing))
        })
        .collect::<Result<Vec<_>>>()?;
    verdicts.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(y.1)));
    let quadruples: Vec<QuadrupleVerdict> = verdicts
        .into_iter()
        .map(|(min_product, q, missing)| QuadrupleVerdict {
            classes: q.map(|i| classes[i].clone()),
            deltas: q.map(|i| delta(&classes[i])),
            sizes: q.map(|i| sizes[i].to_string()),
            min_pair_product: min_product.to_string(),
            long_cycle_classes: q.iter().filter(|&&i| classes[i].is_long_cycle()).count(),
            covered: missing.is_empty(),
            missing,
        })
        .collect();
    let covered = quadruples.iter().filter(|v| v.covered).count();
    Ok(TheoremReport {
        n,
        epsilon: epsilon.to_string(),
        group_order: order.to_string(),
        qualifying: quadruples.len(),
        covered,
        uncovered: quadruples.len() - covered,
        quadruples,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaPart {
    pub part: u8,
    pub statement: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExconReport {
    pub n: usize,
    pub l: usize,
    pub parts: Vec<LemmaPart>,
}

impl ExconReport {
    pub fn all_passed(&self) -> bool {
        self.parts.iter().all(|p| p.passed)
    }
}

fn part(part: u8, statement: &'static str, cases: usize, failures: Vec<String>) -> LemmaPart {
    LemmaPart { part, statement, cases, passed: failures.is_empty(), failures }
}

fn names(p: &(impl ClassProducts + ?Sized), bits: impl Iterator<Item = usize>) -> String {
    bits.map(|i| p.classes()[i].to_string()).collect::<Vec<_>>().join("; ")
}

/// The four long-cycle product statements, checked exhaustively at this `n`:
/// 1. two exceptional classes multiply onto every `l`-cycle class;
/// 2. two `l`-cycle classes multiply onto every exceptional class;
/// 3. all `l`-cycles times one `l`-cycle class is the whole group;
/// 4. any three `l`-cycle classes multiply to the whole group.
pub fn lemma_excon_checks<P: ClassProducts + ?Sized>(p: &P) -> Result<ExconReport> {
    let n = p.n();
    let classes = p.classes();
    let k = classes.len();
    let long_idx: Vec<usize> = (0..k).filter(|&i| classes[i].is_long_cycle()).collect();
    let exc_idx: Vec<usize> = (0..k).filter(|&i| classes[i].is_exceptional()).collect();
    let long = to_bits(p, &NormalSet::long_cycles(n))?;
    let mut exceptional = fixedbitset::FixedBitSet::with_capacity(k);
    exc_idx.iter().for_each(|&i| exceptional.insert(i));
    let single = |i: usize| {
        let mut s = fixedbitset::FixedBitSet::with_capacity(k);
        s.insert(i);
        s
    };
    let full = |bits: &fixedbitset::FixedBitSet| bits.count_ones(..) == k;

    let mut parts = Vec::new();

    let mut cases = 0;
    let mut fails = Vec::new();
    for (x, &a) in exc_idx.iter().enumerate() {
        for &b in &exc_idx[x..] {
            cases += 1;
            let prod = p.pair_support(a, b)?;
            if !prod.is_superset(&long) {
                fails.push(format!("{} * {} misses {}", classes[a], classes[b], names(p, long.difference(prod))));
            }
        }
    }
    parts.push(part(1, "exceptional A, B: AB contains every l-cycle", cases, fails));

    let mut cases = 0;
    let mut fails = Vec::new();
    for (x, &a) in long_idx.iter().enumerate() {
        for &b in &long_idx[x..] {
            cases += 1;
            let prod = p.pair_support(a, b)?;
            if !prod.is_superset(&exceptional) {
                fails.push(format!("{} * {} misses {}", classes[a], classes[b], names(p, exceptional.difference(prod))));
            }
        }
    }
    parts.push(part(2, "l-cycle classes A, B: AB contains every exceptional class", cases, fails));

    let mut cases = 0;
    let mut fails = Vec::new();
    for &a in &long_idx {
        cases += 1;
        let prod = product_bits(p, &long, &single(a))?;
        if !full(&prod) {
            fails.push(format!("O_l * {} misses {}", classes[a], names(p, (0..k).filter(|&i| !prod.contains(i)))));
        }
    }
    parts.push(part(3, "l-cycle class A: O_l A = G", cases, fails));

    let mut cases = 0;
    let mut fails = Vec::new();
    for (x, &a) in long_idx.iter().enumerate() {
        for (y, &b) in long_idx.iter().enumerate().skip(x) {
            for &c in &long_idx[y..] {
                cases += 1;
                let prod = product_bits(p, p.pair_support(a, b)?, &single(c))?;
                if !full(&prod) {
                    fails.push(format!(
                        "{} * {} * {} misses {}",
                        classes[a],
                        classes[b],
                        classes[c],
                        names(p, (0..k).filter(|&i| !prod.contains(i)))
                    ));
                }
            }
        }
    }
    parts.push(part(4, "three l-cycle classes: ABC = G", cases, fails));

    Ok(ExconReport { n, l: long_cycle_length(n), parts })
}

#[derive(Debug, Clone, Serialize)]
pub struct OnsaReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub pairs_meeting_long_cycles: usize,
    /// Pairs whose product contains one `l`-cycle class but not the other.
    pub violations: Vec<(AltClass, AltClass)>,
}

/// For classes `A, B` that are not `l`-cycle classes, `AB` meets either both
/// `l`-cycle classes or neither.
pub fn lemma_onsa_check<P: ClassProducts + ?Sized>(p: &P) -> Result<OnsaReport> {
    let classes = p.classes();
    let k = classes.len();
    let long: Vec<usize> = (0..k).filter(|&i| classes[i].is_long_cycle()).collect();
    let others: Vec<usize> = (0..k).filter(|&i| !classes[i].is_long_cycle()).collect();
    let mut report = OnsaReport { n: p.n(), pairs_checked: 0, pairs_meeting_long_cycles: 0, violations: Vec::new() };
    for (x, &a) in others.iter().enumerate() {
        for &b in &others[x..] {
            report.pairs_checked += 1;
            let prod = p.pair_support(a, b)?;
            let hits = long.iter().filter(|&&i| prod.contains(i)).count();
            if hits > 0 {
                report.pairs_meeting_long_cycles += 1;
            }
            if hits > 0 && hits < long.len() {
                report.violations.push((classes[a].clone(), classes[b].clone()));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct AbonReport {
    pub n: usize,
    pub epsilon: String,
    pub pairs_qualifying: usize,
    /// Qualifying pairs whose product misses an `l`-cycle class. The
    /// statement is asymptotic, so these are flagged rather than failed.
    pub flagged: Vec<(AltClass, AltClass)>,
}

/// Pairs of non-`l`-cycle classes with `|A||B| ≥ |G|^(1+ε)`, and whether
/// their product contains every `l`-cycle.
pub fn lemma_abon_report<P: ClassProducts + ?Sized>(p: &P, epsilon: &BigRational) -> Result<AbonReport> {
    let classes = p.classes();
    let k = classes.len();
    let order = group_order(p.n());
    let exponent = BigRational::one() + epsilon;
    let long = to_bits(p, &NormalSet::long_cycles(p.n()))?;
    let others: Vec<usize> = (0..k).filter(|&i| !classes[i].is_long_cycle()).collect();
    let mut report = AbonReport { n: p.n(), epsilon: epsilon.to_string(), pairs_qualifying: 0, flagged: Vec::new() };
    for (x, &a) in others.iter().enumerate() {
        for &b in &others[x..] {
            let size = class_size(&classes[a]) * class_size(&classes[b]);
            if !at_least_power(&size, &order, &exponent) {
                continue;
            }
            report.pairs_qualifying += 1;
            if !p.pair_support(a, b)?.is_superset(&long) {
                report.flagged.push((classes[a].clone(), classes[b].clone()));
            }
        }
    }
    Ok(report)
}

/// Classes missing from a normal set, in class order.
pub fn complement<P: ClassProducts + ?Sized>(p: &P, set: &NormalSet) -> Result<Vec<AltClass>> {
    let bits = to_bits(p, set)?;
    Ok(from_bits(p, &{
        let mut all = fixedbitset::FixedBitSet::with_capacity(p.classes().len());
        all.insert_range(..);
        all.difference_with(&bits);
        all
    })
    .iter()
    .cloned()
    .collect())
}
