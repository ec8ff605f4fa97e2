//! Nonresonance tests for rational weights, vanishing certificates for the
//! equimonodromical twisted Betti numbers, and the bounded admissibility search.

use crate::aomoto::{beta1, sigma, Scalar, WeightVector};
use crate::arrangement::{build_arrangement, Arrangement, Flat};
use crate::error::{Error, Result};
use crate::field::{is_negative_integer, is_positive_integer};
use crate::graph::families::coxeter_d;
use crate::graph::Edge;
use num::{BigRational, Zero};
use std::collections::BTreeSet;

fn rational_sigma(a: &Arrangement, w: &WeightVector, x: &Flat) -> Result<BigRational> {
    match sigma(a, w, x)? {
        Scalar::Rational(q) => Ok(q),
        Scalar::Modular(_) => Err(Error::FieldMismatch(
            "nonresonance needs rational weights".into(),
        )),
    }
}

/// `Σ_X w ∉ Z_{>0}` on every dense flat and `Σ_C w ∉ Z_{<0}`.
pub fn is_nonresonant(a: &Arrangement, w: &WeightVector) -> Result<bool> {
    for x in a.full_lattice()? {
        if a.is_dense(&x)? && is_positive_integer(&rational_sigma(a, w, &x)?) {
            return Ok(false);
        }
    }
    Ok(!is_negative_integer(&rational_sigma(a, w, &a.center())?))
}

/// `Σ_X w ∉ Z_{>0}` on dense flats of rank `<= k + 1`, and `Σ_C w = 0`.
pub fn is_k_nonresonant(a: &Arrangement, w: &WeightVector, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if !rational_sigma(a, w, &a.center())?.is_zero() {
        return Ok(false);
    }
    for x in a.dense_flats((k + 1).min(a.rank()))? {
        if is_positive_integer(&rational_sigma(a, w, &x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_certificate_pre(a: &Arrangement, d: u64, k: usize) -> Result<()> {
    let r = a.rank();
    if r < 3 {
        return Err(Error::Precondition(format!("rank {r} < 3")));
    }
    if k < 1 || k + 1 >= r {
        return Err(Error::Precondition(format!(
            "need 1 <= k < rank - 1, got k = {k}, rank = {r}"
        )));
    }
    if d == 1 {
        return Err(Error::Precondition("d must differ from 1".into()));
    }
    if d == 0 || a.n() as u64 % d != 0 {
        return Err(Error::Precondition(format!(
            "d = {d} does not divide n = {}",
            a.n()
        )));
    }
    Ok(())
}

/// First hyperplane `K` (by index) such that `d` divides no multiplicity of
/// a dense flat of rank `2..=k+1` outside `K`. Such a `K` forces
/// `b_{q,d} = 0` for all `q <= k`.
pub fn vanishing_certificate(a: &Arrangement, d: u64, k: usize) -> Result<Option<usize>> {
    check_certificate_pre(a, d, k)?;
    let dense: Vec<Flat> = a
        .dense_flats(k + 1)?
        .into_iter()
        .filter(|x| x.rank >= 2)
        .collect();
    Ok((0..a.n()).find(|&h| {
        dense
            .iter()
            .filter(|x| !x.contains(h))
            .all(|x| x.multiplicity() as u64 % d != 0)
    }))
}

/// The weight `1/d - (n/d) e_K` built from a certificate `K`.
pub fn certificate_weight(a: &Arrangement, d: u64, k_hyperplane: usize) -> WeightVector {
    let n = a.n() as i64;
    let d = d as i64;
    let mut w = vec![BigRational::new(1.into(), d.into()); a.n()];
    w[k_hyperplane] -= BigRational::new(n.into(), d.into());
    WeightVector::Rational(w)
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n % d == 0)
}

/// All `d | n`, `d != 1`, with a rank-2 vanishing certificate.
pub fn certified_vanishing_divisors(a: &Arrangement) -> Result<BTreeSet<u64>> {
    if a.rank() < 3 {
        return Err(Error::Precondition(format!("rank {} < 3", a.rank())));
    }
    let mut out = BTreeSet::new();
    for d in divisors(a.n() as u64).skip(1) {
        if vanishing_certificate(a, d, 1)?.is_some() {
            out.insert(d);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftSign {
    /// `1/d + alpha`
    Plus,
    /// `1/d - alpha`
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Found { alpha: Vec<i64>, sign: ShiftSign },
    NotFoundWithinBound,
}

impl Admissibility {
    /// The shifted weight `1/d ± alpha`, if one was found.
    pub fn weight(&self, d: u64) -> Option<WeightVector> {
        let Admissibility::Found { alpha, sign } = self else {
            return None;
        };
        Some(shifted_weight(d, alpha, *sign))
    }
}

pub fn shifted_weight(d: u64, alpha: &[i64], sign: ShiftSign) -> WeightVector {
    let s = match sign {
        ShiftSign::Plus => 1,
        ShiftSign::Minus => -1,
    };
    WeightVector::Rational(
        alpha
            .iter()
            .map(|&x| {
                BigRational::new(1.into(), (d as i64).into())
                    + BigRational::from_integer((s * x).into())
            })
            .collect(),
    )
}

/// Integer-arithmetic version of the k-nonresonance test for `1/d + s alpha`.
/// `Σ_X w = (m_X + s d Σ_X alpha) / d`.
struct ShiftSearch<'a> {
    d: i64,
    sign: i64,
    bound: i64,
    /// dense flats of rank <= k+1, grouped by their largest member
    by_last: Vec<Vec<&'a Flat>>,
    /// target for `s d Σ_C alpha`
    center_target: i64,
}

impl ShiftSearch<'_> {
    fn flat_ok(&self, x: &Flat, alpha: &[i64]) -> bool {
        let num = x.multiplicity() as i64
            + self.sign * self.d * x.members.iter().map(|&h| alpha[h]).sum::<i64>();
        !(num > 0 && num % self.d == 0)
    }

    fn walk(&self, pos: usize, alpha: &mut Vec<i64>, partial: i64) -> bool {
        let n = alpha.len();
        // remaining coordinates can move s d Σ alpha by at most d * bound each
        let slack = (n - pos) as i64 * self.d * self.bound;
        if (self.center_target - partial).abs() > slack {
            return false;
        }
        if pos == n {
            return partial == self.center_target;
        }
        for v in -self.bound..=self.bound {
            alpha[pos] = v;
            if self.by_last[pos].iter().all(|x| self.flat_ok(x, alpha))
                && self.walk(pos + 1, alpha, partial + self.sign * self.d * v)
            {
                return true;
            }
        }
        alpha[pos] = 0;
        false
    }
}

/// Bounded search for an integer shift making `1/d ± alpha` k-nonresonant.
/// Tries single spikes `alpha_K = n/d` first, then every `alpha` in
/// `[-bound, bound]^n` in lexicographic order. A negative answer proves nothing.
pub fn admissibility_search(
    a: &Arrangement,
    d: u64,
    k: usize,
    bound: u64,
) -> Result<Admissibility> {
    if d < 2 || bound < 1 || k < 1 {
        return Err(Error::Precondition(format!(
            "need d >= 2, k >= 1, bound >= 1; got d = {d}, k = {k}, bound = {bound}"
        )));
    }
    let n = a.n();
    let accept = |alpha: Vec<i64>, sign: ShiftSign| -> Result<Option<Admissibility>> {
        Ok(is_k_nonresonant(a, &shifted_weight(d, &alpha, sign), k)?
            .then_some(Admissibility::Found { alpha, sign }))
    };
    if n as u64 % d == 0 {
        for sign in [ShiftSign::Minus, ShiftSign::Plus] {
            for h in 0..n {
                let mut alpha = vec![0; n];
                alpha[h] = (n as u64 / d) as i64;
                if let Some(found) = accept(alpha, sign)? {
                    return Ok(found);
                }
            }
        }
    } else {
        // Σ_C w = n/d + integer is never zero
        return Ok(Admissibility::NotFoundWithinBound);
    }
    let dense = a.dense_flats((k + 1).min(a.rank()))?;
    let mut by_last: Vec<Vec<&Flat>> = vec![Vec::new(); n];
    for x in &dense {
        by_last[*x.members.last().unwrap()].push(x);
    }
    for sign in [ShiftSign::Plus, ShiftSign::Minus] {
        let s = if sign == ShiftSign::Plus { 1 } else { -1 };
        let search = ShiftSearch {
            d: d as i64,
            sign: s,
            bound: bound as i64,
            by_last: by_last.clone(),
            center_target: -(n as i64),
        };
        let mut alpha = vec![0; n];
        if search.walk(0, &mut alpha, 0) {
            if let Some(found) = accept(alpha, sign)? {
                return Ok(found);
            }
            return Err(Error::TheoremViolation(
                "search result failed the nonresonance check".into(),
            ));
        }
    }
    Ok(Admissibility::NotFoundWithinBound)
}

/// Integer shift on `D_v` with `alpha_12 = alpha_34 = a`, `alpha_13 = alpha_24 = b`,
/// `alpha_23 = alpha_14 = c` on both signs of each pair.
pub fn deligne_shift(edges: impl Iterator<Item = Edge>, (a, b, c): (i64, i64, i64)) -> Vec<i64> {
    edges
        .map(|e| match (e.i, e.j) {
            (1, 2) | (3, 4) => a,
            (1, 3) | (2, 4) => b,
            (2, 3) | (1, 4) => c,
            _ => unreachable!("D_v with v <= 4"),
        })
        .collect()
}

/// `b_3(D_v)` for `v ∈ {3, 4}` through a 1-nonresonant shift of `1/3`.
pub fn deligne_b3_coxeter_d(v: usize) -> Result<usize> {
    deligne_b3_coxeter_d_with(v, (1, 1, -3))
}

pub fn deligne_b3_coxeter_d_with(v: usize, abc: (i64, i64, i64)) -> Result<usize> {
    if !(3..=4).contains(&v) {
        return Err(Error::Precondition(format!("v must be 3 or 4, got {v}")));
    }
    if abc.0 + abc.1 + abc.2 != -1 {
        return Err(Error::Precondition(format!(
            "a + b + c must be -1, got {abc:?}"
        )));
    }
    let g = coxeter_d(v);
    let arr = build_arrangement(&g)?;
    let alpha = deligne_shift(g.edges().iter().copied(), abc);
    let w = shifted_weight(3, &alpha, ShiftSign::Plus);
    if !is_k_nonresonant(&arr, &w, 1)? {
        return Err(Error::TheoremViolation(format!(
            "1/3 + alpha is not 1-nonresonant on D{v} for {abc:?}"
        )));
    }
    beta1(&arr, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::SignedGraph;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn d3() -> Arrangement {
        build_arrangement(&coxeter_d(3)).unwrap()
    }

    #[test]
    fn nonresonance_examples() {
        let a = d3();
        assert!(!is_nonresonant(&a, &WeightVector::rational(vec![q(1, 3); 6])).unwrap());
        assert!(!is_nonresonant(&a, &WeightVector::rational(vec![q(-1, 6); 6])).unwrap());
        let mut w = vec![q(1, 2); 6];
        w[0] -= q(3, 1);
        let w = WeightVector::rational(w);
        assert!(is_nonresonant(&a, &w).unwrap());
        assert!(is_k_nonresonant(&a, &w, 1).unwrap());
    }

    #[test]
    fn k_nonresonance_examples() {
        let a = d3();
        let third = WeightVector::rational(vec![q(1, 3); 6]);
        assert!(!is_k_nonresonant(&a, &third, 1).unwrap());
        let alpha = deligne_shift(coxeter_d(3).edges().iter().copied(), (1, 1, -3));
        assert!(is_k_nonresonant(&a, &shifted_weight(3, &alpha, ShiftSign::Plus), 1).unwrap());
        assert!(matches!(
            is_k_nonresonant(&a, &WeightVector::ones_mod(3, 6).unwrap(), 1),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn certificates_d3() {
        let a = d3();
        assert_eq!(vanishing_certificate(&a, 2, 1).unwrap(), Some(0));
        assert_eq!(vanishing_certificate(&a, 3, 1).unwrap(), None);
        assert_eq!(vanishing_certificate(&a, 6, 1).unwrap(), Some(0));
        assert_eq!(
            certified_vanishing_divisors(&a).unwrap(),
            BTreeSet::from([2, 6])
        );
        let k4 = build_arrangement(&complete_unsigned(4)).unwrap();
        assert_eq!(
            certified_vanishing_divisors(&k4).unwrap(),
            BTreeSet::from([2, 6])
        );
    }

    #[test]
    fn certificate_preconditions() {
        let a = d3();
        assert!(vanishing_certificate(&a, 4, 1).is_err());
        assert!(vanishing_certificate(&a, 1, 1).is_err());
        assert!(vanishing_certificate(&a, 2, 2).is_err());
        assert!(vanishing_certificate(&a, 2, 0).is_err());
        let rank2 = build_arrangement(&looped_double_edge()).unwrap();
        assert!(vanishing_certificate(&rank2, 2, 1).is_err());
        assert!(certified_vanishing_divisors(&rank2).is_err());
    }

    #[test]
    fn certificate_weight_is_nonresonant() {
        let a = build_arrangement(&coxeter_b(3)).unwrap();
        for d in certified_vanishing_divisors(&a).unwrap() {
            let k = vanishing_certificate(&a, d, 1).unwrap().unwrap();
            assert!(is_k_nonresonant(&a, &certificate_weight(&a, d, k), 1).unwrap());
        }
    }

    #[test]
    fn admissibility_d3() {
        let a = d3();
        let found3 = admissibility_search(&a, 3, 1, 3).unwrap();
        assert!(matches!(found3, Admissibility::Found { .. }));
        assert!(is_k_nonresonant(&a, &found3.weight(3).unwrap(), 1).unwrap());
        let found2 = admissibility_search(&a, 2, 1, 1).unwrap();
        assert_eq!(
            found2,
            Admissibility::Found {
                alpha: vec![3, 0, 0, 0, 0, 0],
                sign: ShiftSign::Minus
            }
        );
    }

    #[test]
    fn admissibility_needs_divisibility() {
        let a = d3();
        assert_eq!(
            admissibility_search(&a, 4, 1, 2).unwrap(),
            Admissibility::NotFoundWithinBound
        );
    }

    #[test]
    fn deligne_values() {
        assert_eq!(deligne_b3_coxeter_d(3).unwrap(), 1);
        assert_eq!(deligne_b3_coxeter_d(4).unwrap(), 1);
        assert!(deligne_b3_coxeter_d(5).is_err());
        assert!(deligne_b3_coxeter_d_with(3, (0, 0, 0)).is_err());
    }

    #[test]
    fn loops_only_arrangement_has_no_dense_rank2() {
        let a = build_arrangement(&SignedGraph::new(3, [1, 2, 3], []).unwrap()).unwrap();
        assert_eq!(
            certified_vanishing_divisors(&a).unwrap(),
            BTreeSet::from([3])
        );
    }
}
