//! Explicit permutation arithmetic in Alt(n) for `n ≤ 8`.
//!
//! Products compose right to left: `(p·q)(i) = p(q(i))`. Conjugacy classes
//! are computed as orbits under conjugation by 3-cycles, and the orbit
//! containing the canonical representative of an exceptional cycle type is
//! labelled `+`.
//!
//! The character table for `n ≤ 7` is recovered from the class multiplication
//! constants by the eigenvector method in floating point, rounded to exact
//! quadratic values, and then verified exactly.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::alt_group::{
    canonical_representative, class_size, enumerate_alt_classes, group_order, is_exceptional, AltClass, NormalSet,
    Split,
};
use crate::characters::{alt_character_table, AltChar, QuadSum, QuadValue};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::product_engine::{from_bits, product_bits, to_bits, ClassProducts};

/// Largest `n` for which the full group is enumerated.
pub const ORACLE_MAX_N: usize = 8;

/// Largest `n` for which the oracle character table is computed.
pub const ORACLE_TABLE_MAX_N: usize = 7;

/// A permutation of `{0, …, n-1}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u8).collect() }
    }

    /// From zero-based images; fails unless they form a bijection.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidClass(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm { images: images.iter().map(|&i| i as u8).collect() })
    }

    /// From one-based disjoint cycles, e.g. `&[&[1, 2, 3], &[4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || std::mem::replace(&mut used[x - 1], true) {
                    return Err(Error::InvalidClass(format!("bad cycles {cycles:?} for n={n}")));
                }
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Perm::from_images(&images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the zero-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "composing permutations of different degree");
        Perm { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Perm { images }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut images = vec![0u8; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[j as usize];
        }
        Perm { images }
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Position in the lexicographic order of Sym(n).
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        let mut used = 0u32;
        for (pos, &x) in self.images.iter().enumerate() {
            let smaller_unused = (0..x).filter(|&y| used & (1 << y) == 0).count();
            rank = rank * (n - pos) + smaller_unused;
            used |= 1 << x;
        }
        rank
    }
}

/// Cycle notation with one-based points, fixed points omitted.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Perm { images: current.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else { break };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// All of Alt(n) with the class of every element.
pub struct GroupTable {
    n: usize,
    elements: Vec<Perm>,
    /// Sym(n) rank to element index, `u32::MAX` for odd permutations.
    by_rank: Vec<u32>,
    classes: Vec<AltClass>,
    class_of: Vec<u16>,
    members: Vec<Vec<u32>>,
    support: OnceLock<Vec<FixedBitSet>>,
}

/// Enumerates Alt(n) and splits it into conjugacy classes.
pub fn alt_conjugacy_classes(n: usize) -> Result<GroupTable> {
    if n == 0 || n > ORACLE_MAX_N {
        return Err(Error::Capability { n, max: ORACLE_MAX_N, what: "brute-force oracle" });
    }
    let sym = all_permutations(n);
    let mut by_rank = vec![u32::MAX; sym.len()];
    let mut elements = Vec::with_capacity(sym.len() / 2);
    for p in sym.into_iter().filter(Perm::is_even) {
        by_rank[p.rank()] = elements.len() as u32;
        elements.push(p);
    }
    let generators: Vec<Perm> = (3..=n)
        .map(|k| Perm::from_cycles(n, &[&[1, 2, k]]).expect("valid 3-cycle"))
        .collect();

    let mut orbit_of = vec![u32::MAX; elements.len()];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for start in 0..elements.len() {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        let mut orbit = vec![start as u32];
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = by_rank[elements[x].conjugate_by(g).rank()] as usize;
                if orbit_of[y] == u32::MAX {
                    orbit_of[y] = id;
                    orbit.push(y as u32);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }

    let mut by_type: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
    for (id, orbit) in orbits.iter().enumerate() {
        by_type.entry(elements[orbit[0] as usize].cycle_type()).or_default().push(id);
    }
    let classes = enumerate_alt_classes(n);
    let mut members = vec![Vec::new(); classes.len()];
    for (rho, ids) in by_type {
        let split = n >= 2 && is_exceptional(&rho);
        let expected = if split { 2 } else { 1 };
        if ids.len() != expected {
            return Err(Error::Inconsistency(format!("cycle type {rho} has {} orbits, expected {expected}", ids.len())));
        }
        let labelled: Vec<(Option<Split>, usize)> = if split {
            let canon = Perm::from_images(&canonical_representative(&rho))?;
            let plus = orbit_of[by_rank[canon.rank()] as usize] as usize;
            let minus = if ids[0] == plus { ids[1] } else { ids[0] };
            vec![(Some(Split::Plus), plus), (Some(Split::Minus), minus)]
        } else {
            vec![(None, ids[0])]
        };
        for (tag, id) in labelled {
            let class = AltClass::new(rho.clone(), tag)?;
            let idx = classes.binary_search(&class).map_err(|_| Error::Inconsistency(format!("no class {class}")))?;
            members[idx] = std::mem::take(&mut orbits[id]);
        }
    }
    let mut class_of = vec![u16::MAX; elements.len()];
    for (idx, (class, m)) in classes.iter().zip(&members).enumerate() {
        if BigUint::from(m.len()) != class_size(class) {
            return Err(Error::Inconsistency(format!("orbit of {class} has {} elements, expected {}", m.len(), class_size(class))));
        }
        m.iter().for_each(|&e| class_of[e as usize] = idx as u16);
    }
    Ok(GroupTable { n, elements, by_rank, classes, class_of, members, support: OnceLock::new() })
}

impl GroupTable {
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// The Alt(n)-class of an even permutation.
    pub fn class_of(&self, p: &Perm) -> Result<&AltClass> {
        Ok(&self.classes[self.class_index_of(p)?])
    }

    fn class_index_of(&self, p: &Perm) -> Result<usize> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        match self.by_rank[p.rank()] {
            u32::MAX => Err(Error::InvalidClass(format!("{p} is odd"))),
            e => Ok(self.class_of[e as usize] as usize),
        }
    }

    /// The elements of a class.
    pub fn members(&self, c: &AltClass) -> Result<impl Iterator<Item = &Perm>> {
        let idx = self.index(c)?;
        Ok(self.members[idx].iter().map(|&e| &self.elements[e as usize]))
    }

    /// The first element of a class in lexicographic order.
    pub fn representative(&self, c: &AltClass) -> Result<&Perm> {
        Ok(&self.elements[self.members[self.index(c)?][0] as usize])
    }

    fn index(&self, c: &AltClass) -> Result<usize> {
        if c.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: c.n() });
        }
        self.class_index(c).ok_or_else(|| Error::InvalidClass(c.to_string()))
    }

    /// `|{(x, y) ∈ A × B : xy = g}|`, enumerating `x ∈ A`.
    pub fn oracle_pair_count(&self, a: &AltClass, b: &AltClass, g: &Perm) -> Result<usize> {
        let ib = self.index(b)?;
        self.class_index_of(g)?;
        let mut count = 0;
        for x in self.members(a)? {
            let y = x.inverse().compose(g);
            if self.class_index_of(&y)? == ib {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Class-level product `ST` by direct multiplication.
    pub fn oracle_product_set(&self, s: &NormalSet, t: &NormalSet) -> Result<NormalSet> {
        let bits = product_bits(self, &to_bits(self, s)?, &to_bits(self, t)?)?;
        Ok(from_bits(self, &bits))
    }

    fn compute_support(&self) -> Vec<FixedBitSet> {
        let k = self.classes.len();
        // Every g ∈ AB is conjugate to some x0·y with x0 fixed in A.
        (0..k * k)
            .into_par_iter()
            .map(|ab| {
                let (a, b) = (ab / k, ab % k);
                let x0 = &self.elements[self.members[a][0] as usize];
                let mut bits = FixedBitSet::with_capacity(k);
                for &y in &self.members[b] {
                    let g = x0.compose(&self.elements[y as usize]);
                    bits.insert(self.class_of[self.by_rank[g.rank()] as usize] as usize);
                }
                bits
            })
            .collect()
    }

    /// `c[i][j][k]`: pairs `(x, y) ∈ C_i × C_j` with `xy = g_k` for a fixed `g_k ∈ C_k`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u64>>> {
        let k = self.classes.len();
        let reps: Vec<&Perm> = (0..k).map(|c| &self.elements[self.members[c][0] as usize]).collect();
        (0..k)
            .into_par_iter()
            .map(|i| {
                let mut out = vec![vec![0u64; k]; k];
                for &x in &self.members[i] {
                    let x_inv = self.elements[x as usize].inverse();
                    for (kk, g) in reps.iter().enumerate() {
                        let y = x_inv.compose(g);
                        out[self.class_of[self.by_rank[y.rank()] as usize] as usize][kk] += 1;
                    }
                }
                out
            })
            .collect()
    }
}

impl ClassProducts for GroupTable {
    fn n(&self) -> usize {
        self.n
    }

    fn classes(&self) -> &[AltClass] {
        &self.classes
    }

    fn pair_support(&self, a: usize, b: usize) -> Result<&FixedBitSet> {
        let table = self.support.get_or_init(|| self.compute_support());
        Ok(&table[a * self.classes.len() + b])
    }
}

/// The Alt(n) character table as recovered from permutation arithmetic.
#[derive(Debug, Clone)]
pub struct OracleCharacterTable {
    pub n: usize,
    pub classes: Vec<AltClass>,
    /// Rows in the order of `matched`.
    pub values: Vec<Vec<QuadValue>>,
    pub degrees: Vec<BigUint>,
    /// The character of [`crate::characters::alt_irreducibles`] equal to each row.
    pub matched: Vec<AltChar>,
}

const TOL: f64 = 1e-6;

/// Character table of Alt(n) for `n ≤ 7` from class multiplication counts.
///
/// Fails with [`Error::Inconsistency`] if any value cannot be recognised as
/// a quadratic integer over 2, if orthogonality fails exactly, or if a row
/// differs from every character the engine produces.
pub fn oracle_character_table(n: usize) -> Result<OracleCharacterTable> {
    if n == 0 || n > ORACLE_TABLE_MAX_N {
        return Err(Error::Capability { n, max: ORACLE_TABLE_MAX_N, what: "oracle character table" });
    }
    let table = alt_conjugacy_classes(n)?;
    let k = table.classes.len();
    let order = group_order(n);
    let order_f = table.order() as f64;
    let sizes: Vec<f64> = table.members.iter().map(|m| m.len() as f64).collect();
    let constants = table.structure_constants();

    let id = table.index(&AltClass::identity(n))?;
    let vectors = common_eigenvectors(&constants, k, id)?;
    let mut rows = Vec::with_capacity(k);
    for w in vectors {
        // w_j = |C_j| χ(g_j) / χ(1), normalised so that w_identity = 1
        let norm: f64 = w.iter().zip(&sizes).map(|(z, h)| z.norm_sqr() / h).sum();
        let degree = (order_f / norm).sqrt();
        let row = w
            .iter()
            .zip(&sizes)
            .map(|(z, h)| recognise(z * degree / h, degree))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }

    for (i, r) in rows.iter().enumerate() {
        for (j, s) in rows.iter().enumerate().skip(i) {
            let mut sum = QuadSum::new();
            for c in 0..k {
                let term = r[c].try_mul(&s[c].conj())?.scale(&BigRational::from_integer(BigInt::from(table.members[c].len())));
                sum.add(&term);
            }
            let want = if i == j { BigRational::from_integer(order.clone().into()) } else { BigRational::zero() };
            if sum.into_rational()? != want {
                return Err(Error::Inconsistency(format!("oracle rows {i}, {j} are not orthogonal")));
            }
        }
    }

    let engine = alt_character_table(n);
    if engine.classes != table.classes {
        return Err(Error::Inconsistency("class orders differ".into()));
    }
    let mut matched = Vec::with_capacity(k);
    for row in &rows {
        let hits: Vec<usize> = (0..engine.values.len()).filter(|&e| engine.values[e] == *row).collect();
        match hits.as_slice() {
            [e] if !matched.contains(&engine.characters[*e]) => matched.push(engine.characters[*e].clone()),
            _ => {
                let shown: Vec<String> = row.iter().map(QuadValue::to_string).collect();
                return Err(Error::Inconsistency(format!("oracle row [{}] matches no engine character", shown.join(", "))));
            }
        }
    }
    let degrees = rows
        .iter()
        .map(|r| r[id].as_rational().and_then(|d| d.to_integer().to_biguint()).expect("degree is a positive integer"))
        .collect();
    Ok(OracleCharacterTable { n, classes: table.classes, values: rows, degrees, matched })
}

/// Simultaneous eigenvectors of the class matrices `(M_i)_{jk} = c[i][j][k]`,
/// each scaled so its entry at the identity class `id` is 1.
fn common_eigenvectors(constants: &[Vec<Vec<u64>>], k: usize, id: usize) -> Result<Vec<Vec<Complex64>>> {
    for attempt in 0..16u64 {
        // fixed, varied weights; a generic combination has simple spectrum
        let weights: Vec<f64> = (0..k).map(|i| ((i as u64 * 7919 + attempt * 104_729) % 97 + 1) as f64).collect();
        let m = DMatrix::<f64>::from_fn(k, k, |j, l| (0..k).map(|i| weights[i] * constants[i][j][l] as f64).sum());
        let eigen = m.clone().complex_eigenvalues();
        let simple = (0..k).all(|a| (a + 1..k).all(|b| (eigen[a] - eigen[b]).norm() > 1e-3));
        if !simple {
            continue;
        }
        let mc = m.map(|x| Complex64::new(x, 0.0));
        let mut out = Vec::with_capacity(k);
        for lambda in eigen.iter() {
            let shifted = &mc - DMatrix::<Complex64>::identity(k, k) * *lambda;
            let svd = shifted.svd(false, true);
            let v_t = svd.v_t.expect("requested");
            let (min_idx, _) = svd
                .singular_values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("nonempty");
            let v: Vec<Complex64> = v_t.row(min_idx).iter().map(|z| z.conj()).collect();
            if v[id].norm() < TOL {
                return Err(Error::Inconsistency("eigenvector vanishes at the identity".into()));
            }
            let scale = v[id];
            out.push(v.into_iter().map(|z| z / scale).collect());
        }
        return Ok(out);
    }
    Err(Error::Inconsistency("no class-matrix combination with simple spectrum".into()))
}

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() < TOL).then_some(r as i64)
}

fn half(a: i64) -> BigRational {
    BigRational::new(a.into(), 2.into())
}

/// Exact value of a character value `z` with `2z` an algebraic integer of
/// degree at most 2; `bound` bounds `|z|` and its conjugate.
fn recognise(z: Complex64, bound: f64) -> Result<QuadValue> {
    let fail = || Error::Inconsistency(format!("cannot recognise {z} as a quadratic value"));
    let (re2, im2) = (2.0 * z.re, 2.0 * z.im);
    if im2.abs() > TOL {
        let a = near_integer(re2).ok_or_else(fail)?;
        let m = near_integer(im2 * im2).ok_or_else(fail)?;
        let v = QuadValue::new(half(a), BigRational::new(BigInt::from(im2.signum() as i64), 2.into()), -m);
        return check(v, z).ok_or_else(fail);
    }
    if let Some(a) = near_integer(re2) {
        return check(QuadValue::rational(half(a)), z).ok_or_else(fail);
    }
    // real irrational: 2z = x with trace s and norm x(s - x)
    let x = re2;
    let limit = (4.0 * bound).ceil() as i64 + 2;
    for s in -limit..=limit {
        let Some(p) = near_integer(x * (s as f64 - x)) else { continue };
        let disc = s * s - 4 * p;
        if disc <= 0 {
            continue;
        }
        let sign = if x * 2.0 > s as f64 { 1 } else { -1 };
        // z = s/4 ± √disc/4
        let v = QuadValue::new(BigRational::new(s.into(), 4.into()), BigRational::new(sign.into(), 4.into()), disc);
        if let Some(v) = check(v, z) {
            return Ok(v);
        }
    }
    Err(fail())
}

fn check(v: QuadValue, z: Complex64) -> Option<QuadValue> {
    let (re, im) = v.to_complex_f64();
    ((re - z.re).abs() < 1e-6 && (im - z.im).abs() < 1e-6).then_some(v)
}
