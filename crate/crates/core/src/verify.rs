//! Batch self-checks over the enumerated graph classes, as run by `milnor verify`.

use crate::aomoto::{beta_p, brute_force_beta_p, os2_matrix_beta, WeightVector, BRUTE_FORCE_CAP};
use crate::arrangement::{build_arrangement, Arrangement};
use crate::error::Result;
use crate::graph::{canonical_form, enumerate_graphs, SignedGraph};
use crate::milnor::{exceptional_patterns, h1_decomposition_of, sharpness_report_of};
use crate::resonance::certified_vanishing_divisors;
use serde::Serialize;

/// Failures kept per suite in the report.
const MAX_REPORTED_FAILURES: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, g: &SignedGraph, outcome: Result<std::result::Result<(), String>>) {
        let failure = match outcome {
            Ok(Ok(())) => None,
            Ok(Err(msg)) => Some(msg),
            Err(e) => Some(e.to_string()),
        };
        match failure {
            None => self.passed += 1,
            Some(msg) => {
                self.failed += 1;
                if self.failures.len() < MAX_REPORTED_FAILURES {
                    self.failures.push(format!("{g}: {msg}"));
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub vmax: usize,
    pub classes: usize,
    pub suites: Vec<SuiteResult>,
    pub all_passed: bool,
}

fn primes_dividing(n: usize) -> impl Iterator<Item = u64> {
    (2..=n as u64).filter(move |&p| n as u64 % p == 0 && crate::field::is_prime(p))
}

/// `beta_p`, the A^2 matrix route and the enumeration oracle agree.
pub fn check_oracles(a: &Arrangement, primes: &[u64]) -> Result<std::result::Result<(), String>> {
    for &p in primes {
        let flat_local = beta_p(a, p)?;
        let matrix = os2_matrix_beta(a, &WeightVector::ones_mod(p, a.n())?)?;
        if flat_local != matrix {
            return Ok(Err(format!(
                "p = {p}: flat-local {flat_local} != matrix {matrix}"
            )));
        }
        let within_cap = (p as u128)
            .checked_pow(a.n() as u32)
            .is_some_and(|s| s <= BRUTE_FORCE_CAP as u128);
        if within_cap {
            let brute = brute_force_beta_p(a, p)?;
            if brute != flat_local {
                return Ok(Err(format!(
                    "p = {p}: flat-local {flat_local} != brute force {brute}"
                )));
            }
        }
    }
    Ok(Ok(()))
}

pub fn run_verification(vmax: usize) -> Result<VerificationReport> {
    let patterns: Vec<SignedGraph> = exceptional_patterns()
        .iter()
        .map(|(_, g, _)| canonical_form(g))
        .collect();
    let mut oracle = SuiteResult::new("oracle_equivalence");
    let mut vanishing = SuiteResult::new("beta_vanishing_p_ne_3");
    let mut exceptional = SuiteResult::new("exceptional_exhaustiveness");
    let mut sharpness = SuiteResult::new("sharpness");
    let mut certificates = SuiteResult::new("certificate_consistency");
    let mut classes = 0;
    for g in enumerate_graphs(vmax, false)? {
        classes += 1;
        let a = build_arrangement(&g)?;
        oracle.record(&g, check_oracles(&a, &[2, 3, 5]));
        sharpness.record(
            &g,
            (|| {
                for p in primes_dividing(a.n()) {
                    sharpness_report_of(&a, p)?;
                }
                Ok(Ok(()))
            })(),
        );
        if a.rank() < 3 {
            continue;
        }
        vanishing.record(
            &g,
            (|| {
                for p in [2, 5, 7] {
                    let b = beta_p(&a, p)?;
                    if b != 0 {
                        return Ok(Err(format!("β_{p} = {b}")));
                    }
                }
                Ok(Ok(()))
            })(),
        );
        exceptional.record(
            &g,
            (|| {
                let b3 = beta_p(&a, 3)?;
                let listed = patterns.contains(&g);
                Ok(match (b3, listed) {
                    (0, false) | (1, true) => Ok(()),
                    _ => Err(format!("β_3 = {b3}, pattern listed: {listed}")),
                })
            })(),
        );
        certificates.record(
            &g,
            (|| {
                let decomposition = h1_decomposition_of(&a)?;
                let certified = certified_vanishing_divisors(&a)?;
                for d in (2..=a.n() as u64).filter(|d| a.n() as u64 % d == 0) {
                    if certified.contains(&d) && decomposition.exponent(d) != 0 {
                        return Ok(Err(format!(
                            "d = {d} certified but b_d = {}",
                            decomposition.exponent(d)
                        )));
                    }
                    if !(2..=4).contains(&d) && !certified.contains(&d) {
                        return Ok(Err(format!("d = {d} not certified")));
                    }
                }
                Ok(Ok(()))
            })(),
        );
    }
    let suites = vec![oracle, vanishing, exceptional, sharpness, certificates];
    let all_passed = suites.iter().all(|s| s.failed == 0);
    Ok(VerificationReport {
        vmax,
        classes,
        suites,
        all_passed,
    })
}
