//! Cyclotomic decomposition of `H_1(F, Q)` for graphic arrangements, and
//! the classification of graphs with nontrivial `Φ_3` part.
//!
//! In rank at least 3 only `β_3` can be nonzero, and it is 0 or 1; rank-2
//! arrangements use the closed form `b_d = n - 2` for every `1 != d | n`.

use crate::aomoto::beta_p;
use crate::arrangement::{build_arrangement, Arrangement};
use crate::error::{Error, Result};
use crate::graph::families::{complete_unsigned, coxeter_d};
use crate::graph::{canonical_form, Sign, SignedGraph};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicDecomposition {
    n: usize,
    rank: usize,
    /// `d -> b_d`; `1` is always present, other divisors only when nonzero.
    exponents: BTreeMap<u64, usize>,
}

pub fn euler_phi(d: u64) -> u64 {
    (1..=d).filter(|&k| num::integer::gcd(k, d) == 1).count() as u64
}

impl CyclotomicDecomposition {
    fn new(n: usize, rank: usize, entries: impl IntoIterator<Item = (u64, usize)>) -> Self {
        let mut exponents = BTreeMap::from([(1, n.saturating_sub(1))]);
        for (d, b) in entries {
            debug_assert!(d > 1 && n as u64 % d == 0);
            if b > 0 {
                exponents.insert(d, b);
            }
        }
        CyclotomicDecomposition { n, rank, exponents }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exponent(&self, d: u64) -> usize {
        self.exponents.get(&d).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<u64, usize> {
        &self.exponents
    }

    /// `dim_Q H_1(F, Q) = Σ_d b_d φ(d)`.
    pub fn total_dimension(&self) -> u64 {
        self.exponents
            .iter()
            .map(|(&d, &b)| b as u64 * euler_phi(d))
            .sum()
    }

    /// The module written as a direct sum of cyclotomic blocks. In rank at
    /// least 3 all four blocks `Φ_2, Φ_4, Φ_3, Φ_5` are printed, zeros included.
    pub fn formula(&self) -> String {
        let mut parts = vec![format!("(t-1)^{}", self.exponent(1))];
        if self.rank >= 3 {
            let b2 = self.exponent(2);
            parts.push(format!("Φ2^{b2}"));
            parts.push(format!("Φ4^{b2}"));
            parts.push(format!("Φ3^{}", self.exponent(3)));
            parts.push(format!("Φ5^{}", self.exponent(5)));
        } else {
            for (d, b) in self.exponents.iter().filter(|(&d, _)| d != 1) {
                parts.push(format!("Φ{d}^{b}"));
            }
        }
        parts.join(" ⊕ ")
    }
}

impl fmt::Display for CyclotomicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.formula())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExceptionalClass {
    NotExceptional,
    D3Class,
    D4Class,
}

impl ExceptionalClass {
    pub fn label(self) -> &'static str {
        match self {
            ExceptionalClass::NotExceptional => "NotExceptional",
            ExceptionalClass::D3Class => "D3",
            ExceptionalClass::D4Class => "D4",
        }
    }
}

fn violation(msg: String) -> Error {
    Error::TheoremViolation(msg)
}

/// `β_3` with the theorem checks that accompany it in rank at least 3.
fn checked_beta3(a: &Arrangement) -> Result<usize> {
    let b3 = beta_p(a, 3)?;
    if b3 > 1 {
        return Err(violation(format!("β_3 = {b3} > 1")));
    }
    if a.n() % 3 != 0 && b3 != 0 {
        return Err(violation(format!(
            "β_3 = {b3} but 3 does not divide n = {}",
            a.n()
        )));
    }
    Ok(b3)
}

pub fn classify_exceptional(g: &SignedGraph) -> Result<ExceptionalClass> {
    let a = build_arrangement(g)?;
    if a.rank() < 3 {
        return Err(Error::Precondition(format!("rank {} < 3", a.rank())));
    }
    match (checked_beta3(&a)?, a.n()) {
        (0, _) => Ok(ExceptionalClass::NotExceptional),
        (_, 6) => Ok(ExceptionalClass::D3Class),
        (_, 12) => Ok(ExceptionalClass::D4Class),
        (_, n) => Err(violation(format!("β_3 = 1 with n = {n} not in {{6, 12}}"))),
    }
}

/// The five exceptional patterns, one sign choice each.
pub fn exceptional_patterns() -> Vec<(&'static str, SignedGraph, ExceptionalClass)> {
    use ExceptionalClass::*;
    use Sign::*;
    // loops at every vertex of a negative triangle
    let looped_triangle =
        SignedGraph::new(3, [1, 2, 3], [(1, 3, Plus), (2, 3, Plus), (1, 2, Minus)]).unwrap();
    // loop at 3, double edges 13 and 23, simple edge 12
    let looped_apex = SignedGraph::new(
        3,
        [3],
        [
            (1, 3, Plus),
            (1, 3, Minus),
            (2, 3, Plus),
            (2, 3, Minus),
            (1, 2, Minus),
        ],
    )
    .unwrap();
    vec![
        ("D3", coxeter_d(3), D3Class),
        ("looped-negative-triangle", looped_triangle, D3Class),
        ("looped-apex", looped_apex, D3Class),
        ("all-negative-K4", complete_unsigned(4), D3Class),
        ("D4", coxeter_d(4), D4Class),
    ]
}

/// [`classify_exceptional`] plus a match against the stored pattern table;
/// disagreement is reported as a theorem violation.
pub fn classify_exceptional_checked(g: &SignedGraph) -> Result<ExceptionalClass> {
    let class = classify_exceptional(g)?;
    let canon = canonical_form(&g.without_isolated()?);
    let by_pattern = exceptional_patterns()
        .into_iter()
        .find(|(_, p, _)| canonical_form(p) == canon)
        .map_or(ExceptionalClass::NotExceptional, |(_, _, c)| c);
    if by_pattern != class {
        return Err(violation(format!(
            "β_3 classifies {g} as {class:?} but the pattern table says {by_pattern:?}"
        )));
    }
    Ok(class)
}

pub fn h1_decomposition_of(a: &Arrangement) -> Result<CyclotomicDecomposition> {
    let n = a.n();
    let divides = |d: u64| n as u64 % d == 0;
    match a.rank() {
        1 => Ok(CyclotomicDecomposition::new(n, 1, [])),
        2 => {
            let entries = (2..=n as u64).filter(|&d| divides(d)).map(|d| (d, n - 2));
            Ok(CyclotomicDecomposition::new(n, 2, entries))
        }
        r => {
            let b2 = beta_p(a, 2)?;
            let b5 = beta_p(a, 5)?;
            if b2 != 0 || b5 != 0 {
                return Err(violation(format!(
                    "rank {r}: β_2 = {b2}, β_5 = {b5}, expected 0"
                )));
            }
            let b3 = checked_beta3(a)?;
            let entries = [(2, b2), (4, b2), (3, b3), (5, b5)]
                .into_iter()
                .filter(|&(d, _)| divides(d));
            Ok(CyclotomicDecomposition::new(n, r, entries))
        }
    }
}

pub fn h1_decomposition(g: &SignedGraph) -> Result<CyclotomicDecomposition> {
    h1_decomposition_of(&build_arrangement(g)?)
}

fn check_divisor(n: usize, d: u64) -> Result<()> {
    if d <= 1 || n as u64 % d != 0 {
        return Err(Error::Precondition(format!(
            "need 1 != d | n, got d = {d}, n = {n}"
        )));
    }
    Ok(())
}

/// `b_d = b_1(M, C_ρ)` for the equimonodromical character of denominator `d`.
pub fn twisted_betti_equimonodromic_of(a: &Arrangement, d: u64) -> Result<usize> {
    check_divisor(a.n(), d)?;
    Ok(h1_decomposition_of(a)?.exponent(d))
}

pub fn twisted_betti_equimonodromic(g: &SignedGraph, d: u64) -> Result<usize> {
    twisted_betti_equimonodromic_of(&build_arrangement(g)?, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SharpnessReport {
    pub beta: usize,
    pub b: usize,
    pub equal: bool,
}

/// Compare the modular bound `β_p` with the twisted Betti number `b_p`.
pub fn sharpness_report_of(a: &Arrangement, p: u64) -> Result<SharpnessReport> {
    check_divisor(a.n(), p)?;
    let beta = beta_p(a, p)?;
    let b = twisted_betti_equimonodromic_of(a, p)?;
    if beta != b {
        return Err(violation(format!(
            "modular bound β_{p} = {beta} differs from b_{p} = {b}"
        )));
    }
    Ok(SharpnessReport {
        beta,
        b,
        equal: true,
    })
}

pub fn sharpness_report(g: &SignedGraph, p: u64) -> Result<SharpnessReport> {
    sharpness_report_of(&build_arrangement(g)?, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::pencil;
    use crate::graph::families::looped_double_edge as pencil_graph;

    fn k4_minus_edge() -> SignedGraph {
        SignedGraph::new(
            4,
            [],
            [
                (1, 2, Sign::Minus),
                (1, 3, Sign::Minus),
                (1, 4, Sign::Minus),
                (2, 3, Sign::Minus),
                (2, 4, Sign::Minus),
            ],
        )
        .unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_exceptional(&coxeter_d(3)).unwrap(),
            ExceptionalClass::D3Class
        );
        assert_eq!(
            classify_exceptional(&complete_unsigned(4)).unwrap(),
            ExceptionalClass::D3Class
        );
        assert_eq!(
            classify_exceptional(&coxeter_d(4)).unwrap(),
            ExceptionalClass::D4Class
        );
        assert_eq!(
            classify_exceptional(&k4_minus_edge()).unwrap(),
            ExceptionalClass::NotExceptional
        );
        assert!(classify_exceptional(&pencil_graph()).is_err());
    }

    #[test]
    fn patterns_agree_with_beta3() {
        for (name, g, class) in exceptional_patterns() {
            assert_eq!(classify_exceptional_checked(&g).unwrap(), class, "{name}");
        }
        assert_eq!(
            classify_exceptional_checked(&k4_minus_edge()).unwrap(),
            ExceptionalClass::NotExceptional
        );
    }

    #[test]
    fn decompositions() {
        let d3 = h1_decomposition(&coxeter_d(3)).unwrap();
        assert_eq!(d3.exponents(), &BTreeMap::from([(1, 5), (3, 1)]));
        assert_eq!(d3.total_dimension(), 7);
        assert_eq!(d3.formula(), "(t-1)^5 ⊕ Φ2^0 ⊕ Φ4^0 ⊕ Φ3^1 ⊕ Φ5^0");
        let k4m = h1_decomposition(&k4_minus_edge()).unwrap();
        assert_eq!(k4m.exponents(), &BTreeMap::from([(1, 4)]));
        let pen = h1_decomposition(&pencil_graph()).unwrap();
        assert_eq!(pen.exponents(), &BTreeMap::from([(1, 3), (2, 2), (4, 2)]));
        assert_eq!(pen.formula(), "(t-1)^3 ⊕ Φ2^2 ⊕ Φ4^2");
        let line = h1_decomposition(&SignedGraph::new(1, [1], []).unwrap()).unwrap();
        assert_eq!(line.exponents(), &BTreeMap::from([(1, 0)]));
    }

    #[test]
    fn twisted_betti_examples() {
        assert_eq!(twisted_betti_equimonodromic(&coxeter_d(3), 3).unwrap(), 1);
        assert_eq!(twisted_betti_equimonodromic(&coxeter_d(3), 2).unwrap(), 0);
        assert_eq!(twisted_betti_equimonodromic(&pencil_graph(), 4).unwrap(), 2);
        assert!(twisted_betti_equimonodromic(&coxeter_d(3), 4).is_err());
        assert!(twisted_betti_equimonodromic(&coxeter_d(3), 1).is_err());
    }

    #[test]
    fn sharpness_examples() {
        let r = sharpness_report(&coxeter_d(3), 3).unwrap();
        assert_eq!(
            r,
            SharpnessReport {
                beta: 1,
                b: 1,
                equal: true
            }
        );
        let r = sharpness_report(&coxeter_d(3), 2).unwrap();
        assert_eq!(
            r,
            SharpnessReport {
                beta: 0,
                b: 0,
                equal: true
            }
        );
        let r = sharpness_report(&complete_unsigned(3), 3).unwrap();
        assert_eq!(
            r,
            SharpnessReport {
                beta: 1,
                b: 1,
                equal: true
            }
        );
        assert!(sharpness_report(&coxeter_d(3), 5).is_err());
        for n in 3..=8 {
            let a = pencil(n);
            for p in [2u64, 3, 5, 7].into_iter().filter(|p| n as u64 % p == 0) {
                assert!(sharpness_report_of(&a, p).unwrap().equal);
            }
        }
    }

    #[test]
    fn totient() {
        let phis: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(phis, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
