//! Degree bounds for Alt(n) characters whose shape has an `l`-hook, and an
//! empirical character-ratio exponent on exceptional classes.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{alt_degree, alt_irreducibles, mn_value, AltChar};
use crate::alt_group::{is_even_type, is_exceptional, long_cycle_length};
use crate::partitions::{enumerate_partitions, find_l_hook, Partition};

#[derive(Debug, Clone, Serialize)]
pub struct DegreeBoundRow {
    pub character: AltChar,
    pub degree: String,
    pub leg: usize,
    pub self_adjoint: bool,
    /// `ψ(1) ≥ n(n-3)/2`.
    pub quadratic_bound: bool,
    /// `n` odd, shape `(n-1,1)` up to conjugation, and `ψ(1) = n-1`.
    pub standard_exception: bool,
    /// `ψ(1) ≥ 2^(n-2)/n²`; only checked for self-adjoint shapes.
    pub exponential_bound: Option<bool>,
}

impl DegreeBoundRow {
    pub fn passes(&self) -> bool {
        (self.quadratic_bound || self.standard_exception) && self.exponential_bound != Some(false)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeBoundReport {
    pub n: usize,
    pub l: usize,
    pub rows: Vec<DegreeBoundRow>,
    pub all_pass: bool,
}

/// Checks every nontrivial Alt(n) character whose shape contains an `l`-hook:
/// either `ψ(1) ≥ n(n-3)/2`, or `n` is odd and `ψ` comes from `(n-1,1)` with
/// `ψ(1) = n-1`; self-adjoint shapes must also satisfy `ψ(1)·n² ≥ 2^(n-2)`.
pub fn degree_bound_check(n: usize) -> DegreeBoundReport {
    let l = long_cycle_length(n);
    let quad_bound = BigUint::from(n * n.saturating_sub(3) / 2);
    let standard = Partition::new(vec![n.saturating_sub(1), 1]).ok();
    let mut rows = Vec::new();
    for psi in alt_irreducibles(n) {
        if psi.is_trivial() {
            continue;
        }
        let Some(hook) = find_l_hook(psi.partition(), l) else { continue };
        let deg = alt_degree(&psi);
        let shape = psi.partition();
        let is_standard = standard
            .as_ref()
            .is_some_and(|s| s == shape || s.conjugate() == *shape);
        let self_adjoint = psi.split().is_some();
        let exponential_bound = self_adjoint.then(|| {
            &deg * BigUint::from(n * n) >= BigUint::from(2u32).pow(n as u32 - 2)
        });
        rows.push(DegreeBoundRow {
            quadratic_bound: deg >= quad_bound,
            standard_exception: n % 2 == 1 && is_standard && deg == BigUint::from(n - 1),
            degree: deg.to_string(),
            leg: hook.leg,
            self_adjoint,
            exponential_bound,
            character: psi,
        });
    }
    let all_pass = rows.iter().all(DegreeBoundRow::passes);
    DegreeBoundReport { n, l, rows, all_pass }
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioExponent {
    pub shape: Partition,
    pub cycle_type: Partition,
    pub value: String,
    pub degree: String,
    /// `log|χ(σ)| / log χ(1)`.
    pub exponent: f64,
}

/// Diagnostic only: for every exceptional cycle type `σ` and every
/// nontrivial shape with an `l`-hook, the exponent `e` with `|χ(σ)| = χ(1)^e`.
/// Entries with `|χ(σ)| ≤ 1` are skipped. Sorted by exponent, largest first.
pub fn character_ratio_exponents(n: usize) -> Vec<RatioExponent> {
    let l = long_cycle_length(n);
    let shapes: Vec<Partition> = enumerate_partitions(n)
        .into_iter()
        .filter(|s| s.len() > 1 && s.part(0) > 1 && find_l_hook(s, l).is_some())
        .collect();
    let mut out = Vec::new();
    for sigma in enumerate_partitions(n).into_iter().filter(|r| is_even_type(r) && is_exceptional(r)) {
        for shape in &shapes {
            let value = mn_value(shape, &sigma).expect("same n");
            if value.abs() <= BigInt::from(1) || value.is_zero() {
                continue;
            }
            let deg = super::degree(shape);
            let exponent = log_abs(&value) / deg.to_f64().unwrap_or(f64::INFINITY).ln();
            out.push(RatioExponent {
                shape: shape.clone(),
                cycle_type: sigma.clone(),
                value: value.to_string(),
                degree: deg.to_string(),
                exponent,
            });
        }
    }
    out.sort_by(|a, b| b.exponent.total_cmp(&a.exponent));
    out
}

fn log_abs(v: &BigInt) -> f64 {
    v.abs().to_f64().unwrap_or(f64::INFINITY).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dichotomy_holds_from_nine() {
        for n in 9..=14 {
            let report = degree_bound_check(n);
            assert!(report.all_pass, "n={n}: {:?}", report.rows.iter().filter(|r| !r.passes()).collect::<Vec<_>>());
            assert!(!report.rows.is_empty());
        }
    }

    #[test]
    fn standard_exception_only_for_odd_n() {
        let odd = degree_bound_check(9);
        assert!(odd.rows.iter().any(|r| r.standard_exception && r.degree == "8"));
        let even = degree_bound_check(10);
        assert!(even.rows.iter().all(|r| !r.standard_exception));
        // (8,2) has the 9-hook with leg 1 and degree n(n-3)/2 = 35
        assert!(even.rows.iter().any(|r| r.character.to_string() == "2,2,1,1,1,1,1,1" && r.degree == "35"));
    }

    #[test]
    fn exponents_are_finite() {
        let e = character_ratio_exponents(11);
        assert!(e.iter().all(|r| r.exponent.is_finite() && r.exponent > 0.0 && r.exponent < 1.0));
    }
}
