//! Cyclotomic classes, cyclotomic numbers and Gaussian periods.
//!
//! Periods are computed exactly in Z[ζ_p]: for each class we tally how often
//! the absolute trace takes each value c ∈ GF(p), giving Σ_c n_c ζ_p^c. No
//! floating point is involved anywhere. The closed formulas for the solvable
//! cases live in [`closed`], the quadratic-form helpers they need in
//! [`quadratic`].

pub mod closed;
pub mod quadratic;

pub use closed::{detect_variant, order_two_cyclotomic_numbers, periods_closed_form, ClosedFormParams, ClosedFormPeriods, PeriodVariant};
pub use quadratic::{class_number_imag_quadratic, solve_index2_ab};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};
use std::fmt;

fn check_divides(tower: &FieldTower, order: u64) -> Result<()> {
    if order == 0 || !(tower.r() - 1).is_multiple_of(order) {
        return Err(Error::NotADivisor { divisor: order, order_minus_one: tower.r() - 1 });
    }
    Ok(())
}

/// Cyclotomic classes C_i = γ^i <γ^L> of order L.
#[derive(Debug, Clone)]
pub struct CyclotomicClassTable {
    order: u64,
    class_size: u64,
    /// class index per packed element; u32::MAX at zero
    index: Vec<u32>,
}

impl CyclotomicClassTable {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// (r - 1) / L
    pub fn class_size(&self) -> u64 {
        self.class_size
    }

    pub fn class_of(&self, x: Elem) -> Option<u64> {
        match self.index[x.raw() as usize] {
            u32::MAX => None,
            i => Some(i as u64),
        }
    }

    /// Members of class i, in increasing discrete-log order.
    pub fn members<'a>(&'a self, tower: &'a FieldTower, i: u64) -> impl Iterator<Item = Elem> + 'a {
        (0..self.class_size).map(move |j| tower.gamma_pow(i + j * self.order))
    }
}

pub fn build_classes(tower: &FieldTower, order: u64) -> Result<CyclotomicClassTable> {
    check_divides(tower, order)?;
    let index = tower
        .elements()
        .map(|x| tower.dlog(x).map_or(u32::MAX, |k| (k % order) as u32))
        .collect();
    Ok(CyclotomicClassTable { order, class_size: (tower.r() - 1) / order, index })
}

/// The L×L matrix of cyclotomic numbers (i, j) = |(C_i + 1) ∩ C_j|.
pub fn cyclotomic_numbers(tower: &FieldTower, order: u64) -> Result<Vec<Vec<u64>>> {
    let classes = build_classes(tower, order)?;
    let l = order as usize;
    let mut matrix = vec![vec![0u64; l]; l];
    for x in tower.elements().skip(1) {
        let shifted = tower.add(x, tower.one());
        if let (Some(i), Some(j)) = (classes.class_of(x), classes.class_of(shifted)) {
            matrix[i as usize][j as usize] += 1;
        }
    }
    Ok(matrix)
}

/// An element Σ_c counts[c]·ζ_p^c of Z[ζ_p].
///
/// The representation is unique up to adding the same integer to every count
/// (because Σ_c ζ_p^c = 0); equality and hashing use the canonical form with
/// the last count zeroed.
#[derive(Debug, Clone)]
pub struct CyclotomicInteger {
    counts: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(p: u32) -> Self {
        CyclotomicInteger { counts: vec![0; p as usize] }
    }

    pub fn from_integer(p: u32, value: i64) -> Self {
        let mut z = Self::zero(p);
        z.counts[0] = value;
        z
    }

    pub fn from_counts(counts: Vec<i64>) -> Self {
        assert!(!counts.is_empty());
        CyclotomicInteger { counts }
    }

    /// The raw trace tally.
    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    fn canonical(&self) -> impl Iterator<Item = i64> + '_ {
        let last = *self.counts.last().unwrap();
        self.counts.iter().map(move |&c| c - last)
    }

    /// Rational value when c_1 = ... = c_{p-1}, namely c_0 - c_1.
    pub fn as_integer(&self) -> Option<i64> {
        let c1 = *self.counts.get(1)?;
        self.counts[1..].iter().all(|&c| c == c1).then(|| self.counts[0] - c1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let counts = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        CyclotomicInteger { counts }
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicInteger { counts: self.counts.iter().map(|c| c * k).collect() }
    }
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        self.counts.len() == other.counts.len() && self.canonical().eq(other.canonical())
    }
}

impl Eq for CyclotomicInteger {}

impl std::hash::Hash for CyclotomicInteger {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for c in self.canonical() {
            c.hash(state);
        }
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let terms: Vec<String> = self
            .canonical()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| if k == 0 { c.to_string() } else { format!("{c}*z^{k}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Gaussian periods η_0, ..., η_{L-1} of order L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianPeriodSet {
    order: u64,
    class_size: u64,
    values: Vec<CyclotomicInteger>,
}

impl GaussianPeriodSet {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn values(&self) -> &[CyclotomicInteger] {
        &self.values
    }

    /// All periods as integers, if every one of them is rational.
    pub fn rational_values(&self) -> Option<Vec<i64>> {
        self.values.iter().map(CyclotomicInteger::as_integer).collect()
    }

    /// η̄ at zero, (r - 1) / L.
    pub fn modified_zero(&self) -> u64 {
        self.class_size
    }

    /// η̄_v: (r - 1)/L at v = 0, otherwise the period of v's class.
    pub fn modified_period(&self, tower: &FieldTower, v: Elem) -> CyclotomicInteger {
        match tower.dlog(v) {
            None => CyclotomicInteger::from_integer(tower.p(), self.class_size as i64),
            Some(k) => self.values[(k % self.order) as usize].clone(),
        }
    }

    /// Groups classes by period value. Fails if some period is irrational.
    pub fn distinct(&self) -> Result<DistinctPeriodMultiset> {
        let values = self.rational_values().ok_or_else(|| {
            Error::HypothesisNotMet(format!("Gaussian periods of order {} are not all rational", self.order))
        })?;
        Ok(DistinctPeriodMultiset::from_values(&values))
    }
}

/// Distinct period values η_j with the number τ_j of classes attaining each,
/// sorted by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctPeriodMultiset {
    entries: Vec<(i64, u64)>,
}

impl DistinctPeriodMultiset {
    pub fn from_values(values: &[i64]) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for &v in values {
            *map.entry(v).or_insert(0u64) += 1;
        }
        DistinctPeriodMultiset { entries: map.into_iter().collect() }
    }

    /// μ
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// (η_j, τ_j) pairs.
    pub fn entries(&self) -> &[(i64, u64)] {
        &self.entries
    }

    /// Σ τ_j = L
    pub fn total_classes(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }
}

/// Periods from trace-value tallies over each class.
pub fn periods_exact(tower: &FieldTower, order: u64) -> Result<GaussianPeriodSet> {
    check_divides(tower, order)?;
    let p = tower.p() as usize;
    let mut tallies = vec![vec![0i64; p]; order as usize];
    for k in 0..tower.r() - 1 {
        let tr = tower.absolute_trace(tower.gamma_pow(k)) as usize;
        tallies[(k % order) as usize][tr] += 1;
    }
    Ok(GaussianPeriodSet {
        order,
        class_size: (tower.r() - 1) / order,
        values: tallies.into_iter().map(CyclotomicInteger::from_counts).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u32, m: u32) -> FieldTower {
        FieldTower::build(p, 1, m, None).unwrap()
    }

    #[test]
    fn class_tables() {
        let t = tower(3, 3);
        let c = build_classes(&t, 1).unwrap();
        assert_eq!(c.class_size(), 26);
        let t49 = tower(7, 2);
        assert_eq!(build_classes(&t49, 2).unwrap().class_size(), 24);
        let t64 = FieldTower::build(2, 1, 6, Some(&[1, 1, 0, 1, 1, 0, 1])).unwrap();
        let c7 = build_classes(&t64, 7).unwrap();
        assert_eq!(c7.class_size(), 9);
        for i in 0..7 {
            assert!(c7.members(&t64, i).all(|x| c7.class_of(x) == Some(i)));
        }
        assert!(matches!(build_classes(&t64, 5), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn cyclotomic_numbers_order_two() {
        let m9 = cyclotomic_numbers(&tower(3, 2), 2).unwrap();
        assert_eq!(m9, vec![vec![1, 2], vec![2, 2]]);
        let m27 = cyclotomic_numbers(&tower(3, 3), 2).unwrap();
        assert_eq!(m27, vec![vec![6, 7], vec![6, 6]]);
        let m1 = cyclotomic_numbers(&tower(5, 2), 1).unwrap();
        assert_eq!(m1, vec![vec![23]]);
    }

    #[test]
    fn exact_periods() {
        let t27 = tower(3, 3);
        let one = periods_exact(&t27, 1).unwrap();
        assert_eq!(one.rational_values(), Some(vec![-1]));
        let t49 = tower(7, 2);
        let two = periods_exact(&t49, 2).unwrap();
        let mut v = two.rational_values().unwrap();
        v.sort();
        assert_eq!(v, vec![-4, 3]);
        let t64 = FieldTower::build(2, 1, 6, Some(&[1, 1, 0, 1, 1, 0, 1])).unwrap();
        let seven = periods_exact(&t64, 7).unwrap();
        let mut v = seven.rational_values().unwrap();
        v.sort();
        assert_eq!(v, vec![-3, -3, -3, 1, 1, 1, 5]);
        assert_eq!(seven.distinct().unwrap().entries(), &[(-3, 3), (1, 3), (5, 1)]);
    }

    #[test]
    fn periods_sum_to_minus_one() {
        for (p, m) in [(2, 8), (3, 4), (5, 3), (7, 2), (13, 2)] {
            let t = tower(p, m);
            for order in crate::nt::divisors(t.r() - 1).into_iter().take(8) {
                let set = periods_exact(&t, order).unwrap();
                let total = set.values().iter().fold(CyclotomicInteger::zero(p), |acc, v| acc.add(v));
                assert_eq!(total.as_integer(), Some(-1), "p={p} m={m} L={order}");
            }
        }
    }

    #[test]
    fn irrational_periods_are_reported() {
        // order 3 over GF(7): p ≡ 1 mod 3 but 3 ∤ sm, so periods are cubic irrationals
        let t = tower(7, 1);
        let set = periods_exact(&t, 3).unwrap();
        assert!(set.rational_values().is_none());
        assert!(set.distinct().is_err());
    }

    #[test]
    fn modified_periods() {
        let t = tower(7, 2);
        let set = periods_exact(&t, 2).unwrap();
        assert_eq!(set.modified_period(&t, Elem::ZERO).as_integer(), Some(24));
        let eta = set.rational_values().unwrap();
        assert_eq!(set.modified_period(&t, t.gamma()).as_integer(), Some(eta[1]));
        assert_eq!(set.modified_period(&t, t.gamma_pow(2)).as_integer(), Some(eta[0]));
    }

    #[test]
    fn cyclotomic_integer_canonical_equality() {
        let a = CyclotomicInteger::from_counts(vec![5, 2, 2]);
        let b = CyclotomicInteger::from_counts(vec![3, 0, 0]);
        assert_eq!(a, b);
        assert_eq!(a.as_integer(), Some(3));
        let c = CyclotomicInteger::from_counts(vec![0, 1, 0]);
        assert!(c.as_integer().is_none());
        assert_ne!(a, c);
    }
}
