//! Degree-one cohomology of Aomoto complexes `(A*, w ·)` over `F_p` and `Q`.
//!
//! `A^2` splits as a direct sum over rank-2 flats, so `eta · w = 0` holds iff
//! for every rank-2 flat `X` and every member `H`:
//!
//! ```text
//! (Σ_X w) eta_H - (Σ_X eta) w_H = 0
//! ```
//!
//! The coboundary of `1 ∈ A^0` is `w` itself, hence `beta1 = dim Z^1 - 1`.

use crate::arrangement::{Arrangement, Flat, FULL_LATTICE_CAP};
use crate::error::{Error, Result};
use crate::field::{self, is_prime, Field, PrimeField, Rationals};
use num::BigRational;
use std::collections::HashMap;
use std::fmt;

/// Brute-force enumeration refuses spaces larger than this.
pub const BRUTE_FORCE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Prime(u64),
    Rationals,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Prime(p) => write!(f, "F_{p}"),
            FieldTag::Rationals => f.write_str("Q"),
        }
    }
}

/// One scalar per hyperplane, in arrangement order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightVector {
    Modular { p: u64, coeffs: Vec<u64> },
    Rational(Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Modular(u64),
    Rational(BigRational),
}

impl WeightVector {
    pub fn modular(p: u64, coeffs: impl IntoIterator<Item = i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let f = PrimeField::new(p);
        Ok(WeightVector::Modular {
            p,
            coeffs: coeffs.into_iter().map(|c| f.reduce(c)).collect(),
        })
    }

    /// The distinguished element `Σ a_H` over `F_p`.
    pub fn ones_mod(p: u64, n: usize) -> Result<Self> {
        Self::modular(p, std::iter::repeat_n(1, n))
    }

    pub fn ones_rational(n: usize) -> Self {
        WeightVector::Rational(vec![BigRational::from_integer(1.into()); n])
    }

    pub fn rational(coeffs: Vec<BigRational>) -> Self {
        WeightVector::Rational(coeffs)
    }

    pub fn field(&self) -> FieldTag {
        match self {
            WeightVector::Modular { p, .. } => FieldTag::Prime(*p),
            WeightVector::Rational(_) => FieldTag::Rationals,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            WeightVector::Modular { coeffs, .. } => coeffs.len(),
            WeightVector::Rational(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        match self {
            WeightVector::Modular { coeffs, .. } => coeffs.iter().all(|&c| c == 0),
            WeightVector::Rational(c) => c.iter().all(num::Zero::is_zero),
        }
    }

    fn check(&self, a: &Arrangement) -> Result<()> {
        if self.len() != a.n() {
            return Err(Error::LengthMismatch {
                expected: a.n(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

pub fn sigma(a: &Arrangement, w: &WeightVector, x: &Flat) -> Result<Scalar> {
    w.check(a)?;
    if let Some(&h) = x.members.iter().find(|&&h| h >= a.n()) {
        return Err(Error::Precondition(format!("flat member {h} out of range")));
    }
    Ok(match w {
        WeightVector::Modular { p, coeffs } => {
            let f = PrimeField::new(*p);
            Scalar::Modular(x.members.iter().fold(0, |acc, &h| f.add(&acc, &coeffs[h])))
        }
        WeightVector::Rational(c) => Scalar::Rational(x.members.iter().map(|&h| &c[h]).sum()),
    })
}

/// Linear conditions on `eta`, one row per (rank-2 flat, member).
fn cocycle_conditions<F: Field>(f: &F, a: &Arrangement, w: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let mut rows = Vec::new();
    for x in a.rank2_flats() {
        let s = x
            .members
            .iter()
            .fold(f.zero(), |acc, &h| f.add(&acc, &w[h]));
        for &h in &x.members {
            let mut row = vec![f.zero(); a.n()];
            row[h] = s.clone();
            for &k in &x.members {
                row[k] = f.sub(&row[k], &w[h]);
            }
            rows.push(row);
        }
    }
    rows
}

pub fn cocycle_space(a: &Arrangement, w: &WeightVector) -> Result<Vec<WeightVector>> {
    w.check(a)?;
    if w.is_zero() {
        return Err(Error::ZeroWeight);
    }
    Ok(match w {
        WeightVector::Modular { p, coeffs } => {
            let f = PrimeField::new(*p);
            let rows = cocycle_conditions(&f, a, coeffs);
            field::nullspace(&f, &rows, a.n())
                .into_iter()
                .map(|coeffs| WeightVector::Modular { p: *p, coeffs })
                .collect()
        }
        WeightVector::Rational(c) => {
            let rows = cocycle_conditions(&Rationals, a, c);
            field::nullspace(&Rationals, &rows, a.n())
                .into_iter()
                .map(WeightVector::Rational)
                .collect()
        }
    })
}

pub fn beta1(a: &Arrangement, w: &WeightVector) -> Result<usize> {
    Ok(cocycle_space(a, w)?.len() - 1)
}

/// `beta1` of the all-ones weight over `F_p`.
pub fn beta_p(a: &Arrangement, p: u64) -> Result<usize> {
    beta1(a, &WeightVector::ones_mod(p, a.n())?)
}

/// Column of `mu_w` for each generator, written in the basis
/// `{a_min(X) a_H : X rank-2 flat, H in X, H != min(X)}` of `A^2`.
fn os2_matrix<F: Field>(f: &F, a: &Arrangement, w: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let flats = a.rank2_flats();
    let mut basis: HashMap<(usize, usize), usize> = HashMap::new();
    let mut anchor_of_pair: HashMap<(usize, usize), usize> = HashMap::new();
    for x in &flats {
        let anchor = x.members[0];
        for &h in &x.members[1..] {
            let idx = basis.len();
            basis.insert((anchor, h), idx);
        }
        for (i, &h) in x.members.iter().enumerate() {
            for &k in &x.members[i + 1..] {
                anchor_of_pair.insert((h, k), anchor);
            }
        }
    }
    let dim = basis.len();
    // rows of the returned matrix are indexed by basis elements of A^2
    let mut m = vec![vec![f.zero(); a.n()]; dim];
    let mut add = |row: usize, col: usize, v: &F::Elem, sign: i64| {
        let v = if sign > 0 { v.clone() } else { f.neg(v) };
        m[row][col] = f.add(&m[row][col], &v);
    };
    for col in 0..a.n() {
        for k in (0..a.n()).filter(|&k| k != col) {
            if f.is_zero(&w[k]) {
                continue;
            }
            // w_k a_k a_col, rewritten with a_h a_k = a_m a_k - a_m a_h
            let (lo, hi, sign) = if k < col { (k, col, 1) } else { (col, k, -1) };
            let anchor = anchor_of_pair[&(lo, hi)];
            if lo == anchor {
                add(basis[&(anchor, hi)], col, &w[k], sign);
            } else {
                add(basis[&(anchor, hi)], col, &w[k], sign);
                add(basis[&(anchor, lo)], col, &w[k], -sign);
            }
        }
    }
    m
}

/// `beta1` through an explicit matrix of `mu_w: A^1 -> A^2` in an NBC basis.
pub fn os2_matrix_beta(a: &Arrangement, w: &WeightVector) -> Result<usize> {
    w.check(a)?;
    if w.is_zero() {
        return Err(Error::ZeroWeight);
    }
    if a.n() > FULL_LATTICE_CAP {
        return Err(Error::CapExceeded(format!(
            "os2 matrix needs n <= {FULL_LATTICE_CAP}"
        )));
    }
    let rank = match w {
        WeightVector::Modular { p, coeffs } => {
            let f = PrimeField::new(*p);
            field::rank(&f, &os2_matrix(&f, a, coeffs), a.n())
        }
        WeightVector::Rational(c) => field::rank(&Rationals, &os2_matrix(&Rationals, a, c), a.n()),
    };
    Ok(a.n() - rank - 1)
}

enum Condition {
    /// `eta_a == eta_b`; checked once both are assigned.
    Equal(usize, usize),
    /// `Σ eta = 0` over the members.
    ZeroSum(Vec<usize>),
}

impl Condition {
    fn last_index(&self) -> usize {
        match self {
            Condition::Equal(a, b) => *a.max(b),
            Condition::ZeroSum(m) => *m.iter().max().unwrap(),
        }
    }

    fn holds(&self, eta: &[u64], p: u64) -> bool {
        match self {
            Condition::Equal(a, b) => eta[*a] == eta[*b],
            Condition::ZeroSum(m) => m.iter().map(|&h| eta[h]).sum::<u64>() % p == 0,
        }
    }
}

/// Count of all `eta ∈ F_p^n` satisfying the mod-p flat conditions: a zero
/// sum on flats with `p | m_X`, equal weights on all other rank-2 flats.
/// Exhaustive over the product space; a partial assignment is abandoned as
/// soon as a condition whose variables are all assigned fails.
pub fn brute_force_count(a: &Arrangement, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = a.n();
    let space = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > BRUTE_FORCE_CAP as u128 {
        return Err(Error::CapExceeded(format!("{p}^{n} > {BRUTE_FORCE_CAP}")));
    }
    let mut by_last: Vec<Vec<Condition>> = (0..n).map(|_| Vec::new()).collect();
    for x in a.rank2_flats() {
        let m = x.multiplicity() as u64;
        if m % p == 0 {
            let c = Condition::ZeroSum(x.members.clone());
            by_last[c.last_index()].push(c);
        } else {
            for w in x.members.windows(2) {
                by_last[w[1]].push(Condition::Equal(w[0], w[1]));
            }
        }
    }
    fn walk(pos: usize, eta: &mut [u64], p: u64, by_last: &[Vec<Condition>]) -> u64 {
        if pos == eta.len() {
            return 1;
        }
        let mut count = 0;
        for v in 0..p {
            eta[pos] = v;
            if by_last[pos].iter().all(|c| c.holds(eta, p)) {
                count += walk(pos + 1, eta, p, by_last);
            }
        }
        count
    }
    Ok(walk(0, &mut vec![0; n], p, &by_last))
}

/// `log_p(count) - 1` for the count of [`brute_force_count`].
pub fn brute_force_beta_p(a: &Arrangement, p: u64) -> Result<usize> {
    let count = brute_force_count(a, p)?;
    let mut dim: usize = 0;
    let mut c = count;
    while c % p == 0 && c > 1 {
        c /= p;
        dim += 1;
    }
    if c != 1 {
        return Err(Error::TheoremViolation(format!(
            "cocycle count {count} is not a power of {p}"
        )));
    }
    dim.checked_sub(1)
        .ok_or_else(|| Error::TheoremViolation("constant weights must be cocycles".into()))
}
