//! Characters of Sym(n) and Alt(n) with exact values.
//!
//! Sym(n) values come from the Murnaghan–Nakayama rule, degrees from the
//! hook length formula. An Alt(n) irreducible is either the restriction of
//! `χ_λ` for `λ ≠ λ'` or one half `ψ_λ^±` of the restriction for
//! self-adjoint `λ`. The halves differ only on the two classes of cycle type
//! `h(λ)` (the diagonal hook lengths), where they take the values
//! `(χ ± √(χ·∏h_ii))/2`. `ψ^+` is the half taking `+√` on the plus class.

pub mod bounds;
mod quad;

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use quad::{square_free_decompose, QuadSum, QuadValue};

use crate::alt_group::{enumerate_alt_classes, factorial, long_cycle_length, split_suffix, AltClass, Split};
use crate::error::{Error, Result};
use crate::partitions::{
    diagonal_hook_lengths, enumerate_partitions, find_l_hook, hook_lengths, remove_border_strips, Partition,
};

/// Murnaghan–Nakayama memo, keyed by (shape, remaining cycle type).
static MN_CACHE: LazyLock<DashMap<(Partition, Partition), BigInt>> = LazyLock::new(DashMap::new);

/// Number of memoized Murnaghan–Nakayama subproblems.
pub fn mn_cache_len() -> usize {
    MN_CACHE.len()
}

/// `χ_λ` on cycle type `ρ`.
pub fn mn_value(lambda: &Partition, rho: &Partition) -> Result<BigInt> {
    if lambda.n() != rho.n() {
        return Err(Error::SizeMismatch { expected: lambda.n(), found: rho.n() });
    }
    Ok(mn_memo(lambda, rho))
}

fn mn_memo(lambda: &Partition, rho: &Partition) -> BigInt {
    if rho.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.clone(), rho.clone());
    if let Some(v) = MN_CACHE.get(&key) {
        return v.clone();
    }
    // strip off the longest cycle first; that keeps the branching small
    let rest = Partition::new(rho.parts()[1..].to_vec()).expect("suffix of a partition");
    let mut total = BigInt::zero();
    for strip in remove_border_strips(lambda, rho.part(0)) {
        let v = mn_memo(&strip.remainder, &rest);
        if strip.height % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    MN_CACHE.insert(key, total.clone());
    total
}

/// `χ_λ(1)` by the hook length formula.
pub fn degree(lambda: &Partition) -> BigUint {
    let hooks: BigUint = hook_lengths(lambda)
        .iter()
        .flatten()
        .fold(BigUint::one(), |acc, h| acc * BigUint::from(h.length));
    factorial(lambda.n()) / hooks
}

/// `χ_λ` on an `l`-cycle: `(-1)^leg` of the unique `l`-hook, or 0 without one.
pub fn l_cycle_value(lambda: &Partition) -> BigInt {
    let l = long_cycle_length(lambda.n());
    match find_l_hook(lambda, l) {
        Some(h) if h.leg % 2 == 0 => BigInt::one(),
        Some(_) => -BigInt::one(),
        None => BigInt::zero(),
    }
}

/// Self-adjoint shapes of size at least 2 restrict to Alt(n) as two irreducibles.
fn splits(lambda: &Partition) -> bool {
    lambda.n() >= 2 && lambda.is_self_adjoint()
}

/// An irreducible character of Alt(n).
///
/// The stored partition is the lexicographically smaller of `λ` and `λ'`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltChar {
    partition: Partition,
    split: Option<Split>,
}

impl AltChar {
    pub fn new(lambda: Partition, split: Option<Split>) -> Result<Self> {
        if splits(&lambda) != split.is_some() {
            let msg = if split.is_some() {
                format!("{lambda} is not self-adjoint; its restriction does not split")
            } else {
                format!("{lambda} is self-adjoint; a +/- tag is required")
            };
            return Err(Error::InvalidCharacter(msg));
        }
        let conj = lambda.conjugate();
        let partition = if conj < lambda { conj } else { lambda };
        Ok(AltChar { partition, split })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn split(&self) -> Option<Split> {
        self.split
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn is_trivial(&self) -> bool {
        self.partition.len() <= 1 || self.partition.part(0) == 1
    }
}

impl fmt::Display for AltChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.partition, self.split.map_or("", Split::suffix))
    }
}

impl fmt::Debug for AltChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AltChar({self})")
    }
}

impl FromStr for AltChar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, split) = split_suffix(s);
        AltChar::new(body.parse()?, split)
    }
}

impl Serialize for AltChar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AltChar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One character per `{λ, λ'}` pair, two per self-adjoint `λ`, in order of
/// first appearance among the reverse-lexicographic partitions.
pub fn alt_irreducibles(n: usize) -> Vec<AltChar> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(n) {
        let conj = lambda.conjugate();
        if splits(&lambda) {
            out.push(AltChar { partition: lambda.clone(), split: Some(Split::Plus) });
            out.push(AltChar { partition: lambda, split: Some(Split::Minus) });
        } else if conj <= lambda {
            out.push(AltChar { partition: conj, split: None });
        }
    }
    out
}

pub fn alt_degree(psi: &AltChar) -> BigUint {
    let d = degree(&psi.partition);
    if psi.split.is_some() {
        d / 2u32
    } else {
        d
    }
}

/// `ψ` evaluated on class `c`.
pub fn alt_value(psi: &AltChar, c: &AltClass) -> Result<QuadValue> {
    if psi.n() != c.n() {
        return Err(Error::SizeMismatch { expected: psi.n(), found: c.n() });
    }
    let lambda = &psi.partition;
    let chi = mn_memo(lambda, c.cycle_type());
    let Some(char_split) = psi.split else {
        return Ok(QuadValue::from_integer(chi));
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let diag = diagonal_hook_lengths(lambda);
    if c.cycle_type().parts() != diag.as_slice() {
        return Ok(QuadValue::from_integer(chi).scale(&half));
    }
    let class_split = c.split().expect("h(λ) is an exceptional type");
    let hook_product: i64 = diag.iter().map(|&h| h as i64).product();
    let chi_small = i64::try_from(&chi).expect("χ on h(λ) is ±1");
    let sign = if char_split == class_split { 1 } else { -1 };
    Ok(QuadValue::new(
        BigRational::from_integer(chi) * &half,
        half * BigRational::from_integer(BigInt::from(sign)),
        chi_small * hook_product,
    ))
}

/// The full character table of Alt(n): rows follow [`alt_irreducibles`],
/// columns follow [`enumerate_alt_classes`].
#[derive(Debug, Clone)]
pub struct AltCharacterTable {
    pub n: usize,
    pub characters: Vec<AltChar>,
    pub classes: Vec<AltClass>,
    pub degrees: Vec<BigUint>,
    pub values: Vec<Vec<QuadValue>>,
}

pub fn alt_character_table(n: usize) -> AltCharacterTable {
    let characters = alt_irreducibles(n);
    let classes = enumerate_alt_classes(n);
    let values = characters
        .par_iter()
        .map(|psi| classes.iter().map(|c| alt_value(psi, c).expect("same n")).collect())
        .collect();
    let degrees = characters.iter().map(alt_degree).collect();
    AltCharacterTable { n, characters, classes, degrees, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt_group::{centralizer_order_sym, class_size, group_order, inverse_class};
    use crate::partitions::is_self_adjoint;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn sign_of(rho: &Partition) -> BigInt {
        if (rho.n() - rho.len()).is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        }
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=8 {
            for rho in enumerate_partitions(n) {
                assert_eq!(mn_value(&Partition::row(n), &rho).unwrap(), int(1));
                assert_eq!(mn_value(&Partition::column(n), &rho).unwrap(), sign_of(&rho));
            }
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(mn_value(&p("2,2"), &p("3,1")).unwrap(), int(-1));
        assert_eq!(mn_value(&p("2,2"), &p("2,2")).unwrap(), int(2));
        assert_eq!(mn_value(&p("3,1"), &p("2,1,1")).unwrap(), int(1));
        assert!(matches!(mn_value(&p("3,1"), &p("2,1")), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn degree_examples() {
        for n in 3..15 {
            assert_eq!(degree(&Partition::new(vec![n - 1, 1]).unwrap()), BigUint::from(n - 1));
        }
        assert_eq!(alt_degree(&"5,1,1,1,1+".parse().unwrap()), BigUint::from(35u32));
        assert_eq!(degree(&p("8,2")), BigUint::from(35u32));
    }

    #[test]
    fn degree_is_value_at_identity() {
        for n in 1..=12 {
            for lambda in enumerate_partitions(n) {
                let d = BigInt::from(degree(&lambda));
                assert_eq!(mn_value(&lambda, &Partition::column(n)).unwrap(), d, "{lambda:?}");
            }
        }
    }

    #[test]
    fn sum_of_squared_degrees() {
        for n in 1..=14 {
            let total: BigUint = enumerate_partitions(n).iter().map(|l| degree(l).pow(2)).sum();
            assert_eq!(total, factorial(n), "n={n}");
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for n in 1..=10 {
            for lambda in enumerate_partitions(n) {
                let conj = lambda.conjugate();
                for rho in enumerate_partitions(n) {
                    assert_eq!(
                        mn_value(&lambda, &rho).unwrap(),
                        sign_of(&rho) * mn_value(&conj, &rho).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sym_column_orthogonality() {
        // Σ_λ χ_λ(ρ)² = |C_Sym(ρ)|
        for n in 1..=10 {
            for rho in enumerate_partitions(n) {
                let s: BigInt = enumerate_partitions(n)
                    .iter()
                    .map(|l| {
                        let v = mn_value(l, &rho).unwrap();
                        &v * &v
                    })
                    .sum();
                assert_eq!(s, BigInt::from(centralizer_order_sym(&rho)));
            }
        }
    }

    #[test]
    fn l_cycle_values_agree_with_mn() {
        for n in 2..=14 {
            let l = long_cycle_length(n);
            let mut parts = vec![l];
            parts.extend(std::iter::repeat_n(1, n - l));
            let rho = Partition::new(parts).unwrap();
            for lambda in enumerate_partitions(n) {
                assert_eq!(l_cycle_value(&lambda), mn_value(&lambda, &rho).unwrap(), "{lambda:?}");
            }
        }
        assert_eq!(l_cycle_value(&Partition::row(7)), int(1));
        assert_eq!(l_cycle_value(&p("2,2")), int(-1));
        assert_eq!(l_cycle_value(&p("3,3")), int(0));
    }

    #[test]
    fn alt4_split_values() {
        let plus: AltChar = "2,2+".parse().unwrap();
        let minus: AltChar = "2,2-".parse().unwrap();
        let c3p: AltClass = "3,1+".parse().unwrap();
        let c3m: AltClass = "3,1-".parse().unwrap();
        let half = BigRational::new(int(1), int(2));
        let omega = QuadValue::new(-half.clone(), half.clone(), -3);
        assert_eq!(alt_value(&plus, &c3p).unwrap(), omega);
        assert_eq!(alt_value(&plus, &c3m).unwrap(), omega.conj());
        assert_eq!(alt_value(&minus, &c3p).unwrap(), omega.conj());
        assert_eq!(alt_value(&minus, &"2,2".parse().unwrap()).unwrap(), QuadValue::from(1));
        let triv: AltChar = "1,1,1,1".parse().unwrap();
        assert_eq!(triv, "4".parse().unwrap());
        assert_eq!(alt_value(&triv, &AltClass::identity(4)).unwrap(), QuadValue::from(1));
    }

    #[test]
    fn nonsplit_identity_value_is_degree() {
        for psi in alt_irreducibles(8) {
            let v = alt_value(&psi, &AltClass::identity(8)).unwrap();
            assert_eq!(v, QuadValue::from_integer(BigInt::from(alt_degree(&psi))));
        }
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(alt_irreducibles(1).len(), 1);
        assert_eq!(alt_irreducibles(4).len(), 4);
        assert_eq!(alt_irreducibles(5).len(), 5);
        for n in 1..=14 {
            assert_eq!(alt_irreducibles(n).len(), enumerate_alt_classes(n).len(), "n={n}");
        }
    }

    #[test]
    fn character_names() {
        let psi: AltChar = "3,2,1+".parse().unwrap();
        assert_eq!(psi.to_string(), "3,2,1+");
        assert!("3,2,1".parse::<AltChar>().is_err());
        assert!("3,1+".parse::<AltChar>().is_err());
        for n in 1..=9 {
            for psi in alt_irreducibles(n) {
                assert_eq!(psi.to_string().parse::<AltChar>().unwrap(), psi);
            }
        }
    }

    #[test]
    fn split_halves_sum_to_restriction() {
        for n in 2..=12 {
            for lambda in enumerate_partitions(n).into_iter().filter(is_self_adjoint) {
                let plus = AltChar::new(lambda.clone(), Some(Split::Plus)).unwrap();
                let minus = AltChar::new(lambda.clone(), Some(Split::Minus)).unwrap();
                for c in enumerate_alt_classes(n) {
                    let sum = alt_value(&plus, &c).unwrap() + alt_value(&minus, &c).unwrap();
                    let chi = mn_value(&lambda, c.cycle_type()).unwrap();
                    assert_eq!(sum, QuadValue::from_integer(chi));
                }
            }
        }
    }

    #[test]
    fn long_cycle_bounds() {
        for n in 3..=14 {
            let bound = BigRational::from_integer(int(n as i64));
            for c in enumerate_alt_classes(n).iter().filter(|c| c.is_long_cycle()) {
                for psi in alt_irreducibles(n) {
                    let v = alt_value(&psi, c).unwrap();
                    if psi.split().is_some() {
                        assert!(v.modulus_squared_at_most(&bound), "{psi} on {c}: {v}");
                    } else if find_l_hook(psi.partition(), long_cycle_length(n)).is_some() {
                        assert_eq!(v.modulus_squared(), QuadValue::from(1));
                    }
                }
            }
        }
    }

    /// Row and column orthogonality of the full Alt(n) table.
    #[test]
    fn alt_table_orthogonality() {
        for n in 2..=8 {
            let t = alt_character_table(n);
            let sizes: Vec<BigRational> =
                t.classes.iter().map(|c| BigRational::from_integer(class_size(c).into())).collect();
            let order = BigRational::from_integer(group_order(n).into());
            for i in 0..t.characters.len() {
                for j in 0..t.characters.len() {
                    let mut s = QuadSum::new();
                    for (k, size) in sizes.iter().enumerate() {
                        s.add(&(t.values[i][k].clone() * t.values[j][k].conj()).scale(size));
                    }
                    let want = if i == j { order.clone() } else { BigRational::zero() };
                    assert_eq!(s.into_rational().unwrap(), want, "rows {i},{j} at n={n}");
                }
            }
            for a in 0..t.classes.len() {
                let inv_a = inverse_class(&t.classes[a]);
                for b in 0..t.classes.len() {
                    let mut s = QuadSum::new();
                    for row in &t.values {
                        s.add(&(row[a].clone() * row[b].conj()));
                    }
                    let want = if a == b { order.clone() / &sizes[a] } else { BigRational::zero() };
                    assert_eq!(s.into_rational().unwrap(), want, "cols {a},{b} at n={n}");
                    // ψ(x⁻¹) = conj ψ(x)
                    if t.classes[b] == inv_a {
                        for row in &t.values {
                            assert_eq!(row[b], row[a].conj());
                        }
                    }
                }
            }
        }
    }
}
