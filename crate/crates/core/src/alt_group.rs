//! Conjugacy classes of Alt(n) and normal subsets.
//!
//! A cycle type whose parts are odd and pairwise distinct (and `n ≥ 2`) is
//! *exceptional*: its Sym(n)-class splits into two Alt(n)-classes of equal
//! size, tagged [`Split::Plus`] and [`Split::Minus`]. The plus class is the
//! one containing [`canonical_representative`]; every other module takes
//! its labels from here.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// Tag distinguishing the two halves of a split class or a split character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Plus,
    Minus,
}

impl Split {
    pub fn flip(self) -> Split {
        match self {
            Split::Plus => Split::Minus,
            Split::Minus => Split::Plus,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Split::Plus => "+",
            Split::Minus => "-",
        }
    }
}

/// Splits a trailing `+`, `-` or `−` off a class or character name.
pub(crate) fn split_suffix(s: &str) -> (&str, Option<Split>) {
    let s = s.trim();
    if let Some(rest) = s.strip_suffix('+') {
        (rest, Some(Split::Plus))
    } else if let Some(rest) = s.strip_suffix('-').or_else(|| s.strip_suffix('\u{2212}')) {
        (rest, Some(Split::Minus))
    } else {
        (s, None)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// |Alt(n)|; the trivial group for `n ≤ 1`.
pub fn group_order(n: usize) -> BigUint {
    if n <= 1 {
        BigUint::one()
    } else {
        factorial(n) / 2u32
    }
}

/// `l = n` for odd `n`, `n - 1` for even `n`.
pub fn long_cycle_length(n: usize) -> usize {
    if n % 2 == 1 {
        n
    } else {
        n.saturating_sub(1)
    }
}

pub fn is_even_type(rho: &Partition) -> bool {
    (rho.n() - rho.len()).is_multiple_of(2)
}

/// All parts odd and pairwise distinct, for `n ≥ 2`.
pub fn is_exceptional(rho: &Partition) -> bool {
    rho.n() >= 2
        && rho.parts().iter().all(|&p| p % 2 == 1)
        && rho.parts().windows(2).all(|w| w[0] != w[1])
}

/// Order of the centralizer in Sym(n) of a permutation of cycle type `rho`.
pub fn centralizer_order_sym(rho: &Partition) -> BigUint {
    rho.multiplicities()
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r > 0)
        .fold(BigUint::one(), |acc, (i, &r)| acc * BigUint::from(i).pow(r as u32) * factorial(r))
}

/// Size of the Sym(n)-class of cycle type `rho`.
pub fn sym_class_size(rho: &Partition) -> BigUint {
    factorial(rho.n()) / centralizer_order_sym(rho)
}

/// One-line images (zero-based) of the representative whose cycles fill
/// `0..n` in order with decreasing lengths, e.g. `(0 1 2 3 4)(5 6 7)(8)` for `5,3,1`.
pub fn canonical_representative(cycle_type: &Partition) -> Vec<usize> {
    let mut images = Vec::with_capacity(cycle_type.n());
    let mut start = 0;
    for &len in cycle_type.parts() {
        images.extend((start + 1..start + len).chain(std::iter::once(start)));
        start += len;
    }
    images
}

/// A conjugacy class of Alt(n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AltClass {
    cycle_type: Partition,
    split: Option<Split>,
}

impl AltClass {
    pub fn new(cycle_type: Partition, split: Option<Split>) -> Result<Self> {
        if !is_even_type(&cycle_type) {
            return Err(Error::InvalidClass(format!("{cycle_type} is an odd cycle type")));
        }
        if is_exceptional(&cycle_type) != split.is_some() {
            let msg = if split.is_some() {
                format!("{cycle_type} does not split in Alt(n)")
            } else {
                format!("{cycle_type} splits in Alt(n); a +/- tag is required")
            };
            return Err(Error::InvalidClass(msg));
        }
        Ok(AltClass { cycle_type, split })
    }

    pub fn identity(n: usize) -> Self {
        AltClass { cycle_type: Partition::column(n), split: None }
    }

    pub fn cycle_type(&self) -> &Partition {
        &self.cycle_type
    }

    pub fn split(&self) -> Option<Split> {
        self.split
    }

    pub fn n(&self) -> usize {
        self.cycle_type.n()
    }

    pub fn is_identity(&self) -> bool {
        self.cycle_type.parts().iter().all(|&p| p == 1)
    }

    pub fn is_exceptional(&self) -> bool {
        self.split.is_some()
    }

    /// Whether this is a class of `l`-cycles.
    pub fn is_long_cycle(&self) -> bool {
        let n = self.n();
        let l = long_cycle_length(n);
        n >= 3 && self.cycle_type.part(0) == l && (l == n || self.cycle_type.len() == 2)
    }
}

impl Ord for AltClass {
    /// Reverse lexicographic on cycle type, then plus before minus.
    fn cmp(&self, other: &Self) -> Ordering {
        other.cycle_type.cmp(&self.cycle_type).then(self.split.cmp(&other.split))
    }
}

impl PartialOrd for AltClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AltClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.cycle_type, self.split.map_or("", Split::suffix))
    }
}

impl fmt::Debug for AltClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AltClass({self})")
    }
}

impl FromStr for AltClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, split) = split_suffix(s);
        AltClass::new(body.parse()?, split)
    }
}

impl Serialize for AltClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AltClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn class_size(c: &AltClass) -> BigUint {
    let size = sym_class_size(&c.cycle_type);
    if c.is_exceptional() {
        size / 2u32
    } else {
        size
    }
}

/// `n` minus the number of cycles.
pub fn delta(c: &AltClass) -> usize {
    c.n() - c.cycle_type.len()
}

/// The class of inverses.
///
/// Reversing each cycle of an exceptional element is a product of
/// `(n - #cycles)/2` transpositions, and the Sym(n)-centralizer of such an
/// element lies in Alt(n), so the inverse changes class exactly when that
/// count is odd.
pub fn inverse_class(c: &AltClass) -> AltClass {
    match c.split {
        Some(s) if (delta(c) / 2) % 2 == 1 => AltClass { split: Some(s.flip()), ..c.clone() },
        _ => c.clone(),
    }
}

/// All classes of Alt(n) in reverse lexicographic order of cycle type, plus before minus.
pub fn enumerate_alt_classes(n: usize) -> Vec<AltClass> {
    let mut out = Vec::new();
    for rho in enumerate_partitions(n).into_iter().filter(is_even_type) {
        if is_exceptional(&rho) {
            out.push(AltClass { cycle_type: rho.clone(), split: Some(Split::Plus) });
            out.push(AltClass { cycle_type: rho, split: Some(Split::Minus) });
        } else {
            out.push(AltClass { cycle_type: rho, split: None });
        }
    }
    out
}

/// The Alt(n)-classes making up the Sym(n)-class of an even cycle type.
pub fn classes_of_type(rho: &Partition) -> Result<Vec<AltClass>> {
    if is_exceptional(rho) {
        Ok(vec![
            AltClass::new(rho.clone(), Some(Split::Plus))?,
            AltClass::new(rho.clone(), Some(Split::Minus))?,
        ])
    } else {
        Ok(vec![AltClass::new(rho.clone(), None)?])
    }
}

/// A normal subset of Alt(n), stored as its set of classes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalSet {
    n: usize,
    classes: BTreeSet<AltClass>,
}

impl NormalSet {
    pub fn empty(n: usize) -> Self {
        NormalSet { n, classes: BTreeSet::new() }
    }

    /// The whole group.
    pub fn all(n: usize) -> Self {
        NormalSet { n, classes: enumerate_alt_classes(n).into_iter().collect() }
    }

    pub fn from_classes(n: usize, classes: impl IntoIterator<Item = AltClass>) -> Result<Self> {
        let mut set = Self::empty(n);
        for c in classes {
            set.insert(c)?;
        }
        Ok(set)
    }

    /// The set of `l`-cycles of Alt(n) (both split classes).
    pub fn long_cycles(n: usize) -> Self {
        NormalSet { n, classes: enumerate_alt_classes(n).into_iter().filter(AltClass::is_long_cycle).collect() }
    }

    /// Parses a class name; a bare exceptional cycle type stands for both halves.
    pub fn parse_named(n: usize, name: &str) -> Result<Self> {
        let (body, split) = split_suffix(name);
        let rho: Partition = body.parse()?;
        if rho.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: rho.n() });
        }
        match split {
            Some(_) => Self::from_classes(n, [AltClass::new(rho, split)?]),
            None => Self::from_classes(n, classes_of_type(&rho)?),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, c: AltClass) -> Result<bool> {
        if c.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: c.n() });
        }
        Ok(self.classes.insert(c))
    }

    pub fn contains(&self, c: &AltClass) -> bool {
        self.classes.contains(c)
    }

    pub fn is_superset(&self, other: &NormalSet) -> bool {
        self.classes.is_superset(&other.classes)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AltClass> {
        self.classes.iter()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of elements.
    pub fn cardinality(&self) -> BigUint {
        self.classes.iter().map(class_size).sum()
    }
}

impl fmt::Display for NormalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for NormalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalSet{self}")
    }
}

impl Serialize for NormalSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.classes.iter())
    }
}

/// A class of maximal size in `set`.
///
/// Ties go to the first class in reverse lexicographic order of cycle
/// type, plus before minus.
pub fn largest_class_at_least(set: &NormalSet) -> Result<AltClass> {
    set.iter()
        .map(|c| (class_size(c), c))
        // iteration order is the tie-break order, so keep the first maximum
        .fold(None::<(BigUint, &AltClass)>, |best, (size, c)| match best {
            Some((b, bc)) if b >= size => Some((b, bc)),
            _ => Some((size, c)),
        })
        .map(|(_, c)| c.clone())
        .ok_or(Error::EmptySet)
}

/// Exact test of `value ≥ base^exponent` for a rational exponent `p/q ≥ 0`,
/// as `value^q ≥ base^p`.
pub fn at_least_power(value: &BigUint, base: &BigUint, exponent: &BigRational) -> bool {
    assert!(*exponent >= BigRational::zero(), "negative exponent");
    let p = exponent.numer().to_biguint().expect("nonnegative");
    let q = exponent.denom().to_biguint().expect("positive");
    let p: u32 = u32::try_from(&p).expect("exponent numerator too large");
    let q: u32 = u32::try_from(&q).expect("exponent denominator too large");
    Pow::pow(value, q) >= Pow::pow(base, p)
}

/// The fixed-point-free involutions of Alt(n), `n ≡ 0 mod 4`.
pub fn fpf_involutions(n: usize) -> Result<AltClass> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::InvalidClass(format!("no even fixed-point-free involutions in Alt({n})")));
    }
    AltClass::new(Partition::new(vec![2; n / 2])?, None)
}

pub fn double_factorial(n: usize) -> BigUint {
    (1..=n).rev().step_by(2).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionEstimate {
    pub n: usize,
    pub class: AltClass,
    pub class_size: String,
    /// `((n-1)!!)² · 9^n`
    pub lhs: String,
    /// `4^n · n!/2`
    pub rhs: String,
    pub holds: bool,
}

/// Exact check of `(n-1)!! ≥ (2/3)^n · |Alt(n)|^(1/2)`, squared and cleared
/// of denominators, where `(n-1)!!` is the size of the fixed-point-free
/// involution class.
pub fn involution_estimate(n: usize) -> Result<InvolutionEstimate> {
    let class = fpf_involutions(n)?;
    let size = class_size(&class);
    if size != double_factorial(n - 1) {
        return Err(Error::Inconsistency(format!("class {class} has size {size}, expected (n-1)!!")));
    }
    let lhs = Pow::pow(&size, 2u32) * Pow::pow(BigUint::from(9u32), n as u32);
    let rhs = Pow::pow(BigUint::from(4u32), n as u32) * group_order(n);
    Ok(InvolutionEstimate {
        n,
        class,
        class_size: size.to_string(),
        holds: lhs >= rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaRow {
    pub class: AltClass,
    pub size: String,
    pub delta: usize,
    /// `delta / n` as an exact fraction.
    pub ratio: String,
    pub is_minimum: bool,
}

/// Classes of size at least `|Alt(n)|^γ` with their `δ/n`.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaReport {
    pub n: usize,
    pub gamma: String,
    pub group_order: String,
    pub rows: Vec<DeltaRow>,
    pub min_ratio: Option<String>,
}

pub fn delta_bound_report(n: usize, gamma: &BigRational) -> Result<DeltaReport> {
    if n < 2 {
        return Err(Error::Capability { n, max: usize::MAX, what: "delta report (needs n >= 2)" });
    }
    if *gamma <= BigRational::zero() || *gamma >= BigRational::one() {
        return Err(Error::InvalidClass(format!("gamma {gamma} is not in (0, 1)")));
    }
    let order = group_order(n);
    let mut rows: Vec<DeltaRow> = Vec::new();
    let mut ratios = Vec::new();
    for c in enumerate_alt_classes(n) {
        let size = class_size(&c);
        if !at_least_power(&size, &order, gamma) {
            continue;
        }
        let ratio = BigRational::new(BigInt::from(delta(&c)), BigInt::from(n));
        rows.push(DeltaRow {
            delta: delta(&c),
            size: size.to_string(),
            ratio: ratio.to_string(),
            class: c,
            is_minimum: false,
        });
        ratios.push(ratio);
    }
    let min = ratios.iter().min().cloned();
    if let Some(m) = &min {
        for (row, r) in rows.iter_mut().zip(&ratios) {
            row.is_minimum = r == m;
        }
    }
    Ok(DeltaReport {
        n,
        gamma: gamma.to_string(),
        group_order: order.to_string(),
        rows,
        min_ratio: min.map(|m| m.to_string()),
    })
}
