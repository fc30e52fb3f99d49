//! Closed-form Gaussian periods in the solvable cases: order 2, order 3,
//! the semiprimitive case, and the index-2 (quadratic residue) case.
//!
//! Values are exact rationals. Labels of the non-principal classes depend on
//! the choice of γ in the order-3 and index-2 cases; there the labeling is
//! aligned with the trace-tally periods, and only the value multiset is
//! γ-independent.

use super::{check_divides, periods_exact, quadratic, DistinctPeriodMultiset};
use crate::error::{Error, Result};
use crate::gf::FieldTower;
use crate::nt;
use num_rational::Ratio;
use num_traits::One;
use std::fmt;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeriodVariant {
    /// L = 2
    Quadratic,
    /// L = 3, p ≡ 1 (mod 3), 3 | sm
    Cubic,
    /// p^j ≡ -1 (mod L)
    Semiprimitive,
    /// L ≡ 3 (mod 4) prime, p of order (L-1)/2 mod L
    Index2,
}

impl fmt::Display for PeriodVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeriodVariant::Quadratic => "order-2",
            PeriodVariant::Cubic => "order-3",
            PeriodVariant::Semiprimitive => "semiprimitive",
            PeriodVariant::Index2 => "index-2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedFormParams {
    Quadratic {
        sqrt_r: u64,
    },
    /// 4 p^(sm/3) = c1² + 27 d1²
    Cubic {
        c1: i64,
        d1: i64,
        cube_root_r: u64,
    },
    /// p^j ≡ -1 (mod L) with j least, r = p^(2jv)
    Semiprimitive {
        j: u32,
        v: u32,
        /// v, p and (p^j + 1)/L all odd
        exceptional: bool,
    },
    Index2 {
        class_number: u64,
        a: i64,
        b: i64,
        k: u32,
        p_k: Rational,
        a_k: Rational,
        b_k: Rational,
        /// whether the residue/non-residue labels were exchanged to match γ
        swapped: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormPeriods {
    pub variant: PeriodVariant,
    pub order: u64,
    /// η_0, ..., η_{L-1}
    pub values: Vec<Rational>,
    pub params: ClosedFormParams,
}

impl ClosedFormPeriods {
    /// The periods as integers (they are algebraic integers, so rational ones are integral).
    pub fn integer_values(&self) -> Result<Vec<i64>> {
        self.values
            .iter()
            .map(|v| {
                v.is_integer()
                    .then(|| v.to_integer() as i64)
                    .ok_or_else(|| Error::NoDiophantineSolution(format!("non-integral period {v}")))
            })
            .collect()
    }

    pub fn distinct(&self) -> Result<DistinctPeriodMultiset> {
        Ok(DistinctPeriodMultiset::from_values(&self.integer_values()?))
    }
}

/// Least j ≥ 1 with p^j ≡ -1 (mod L), if any.
pub fn semiprimitive_exponent(p: u64, order: u64) -> Option<u32> {
    if order < 2 || nt::gcd(p, order) != 1 {
        return None;
    }
    let target = order - 1;
    let mut x = p % order;
    for j in 1..=order as u32 {
        if x == target {
            return Some(j);
        }
        x = x * (p % order) % order;
    }
    None
}

/// The most specific closed form whose hypotheses hold for (tower, L).
pub fn detect_variant(tower: &FieldTower, order: u64) -> Option<PeriodVariant> {
    [
        PeriodVariant::Quadratic,
        PeriodVariant::Semiprimitive,
        PeriodVariant::Cubic,
        PeriodVariant::Index2,
    ]
    .into_iter()
    .find(|&v| hypotheses(v, tower, order).is_ok())
}

fn hypotheses(variant: PeriodVariant, tower: &FieldTower, order: u64) -> Result<()> {
    check_divides(tower, order)?;
    let p = tower.p() as u64;
    let sm = tower.degree() as u64;
    let fail = |msg: String| Err(Error::HypothesisNotMet(msg));
    match variant {
        PeriodVariant::Quadratic => {
            if order != 2 {
                return fail(format!("order-2 formula needs L = 2, got {order}"));
            }
            if !sm.is_multiple_of(2) {
                return fail(format!("sm = {sm} is odd, so the order-2 periods are irrational"));
            }
        }
        PeriodVariant::Cubic => {
            if order != 3 {
                return fail(format!("order-3 formula needs L = 3, got {order}"));
            }
            if p % 3 != 1 {
                return fail(format!("p = {p} is not 1 mod 3"));
            }
            if !sm.is_multiple_of(3) {
                return fail(format!("sm = {sm} is not divisible by 3"));
            }
        }
        PeriodVariant::Semiprimitive => {
            if order <= 2 {
                return fail("semiprimitive formula needs L > 2".into());
            }
            let Some(j) = semiprimitive_exponent(p, order) else {
                return fail(format!("no j with {p}^j ≡ -1 mod {order}"));
            };
            if !sm.is_multiple_of(2 * j as u64) {
                return fail(format!("sm = {sm} is not a multiple of 2j = {}", 2 * j));
            }
        }
        PeriodVariant::Index2 => {
            if order == 3 || order % 4 != 3 || !nt::is_prime(order) {
                return fail(format!("L = {order} is not a prime ≡ 3 mod 4 other than 3"));
            }
            if nt::mult_order(p, order) != Some((order - 1) / 2) {
                return fail(format!("p = {p} does not generate the squares mod {order}"));
            }
            if !sm.is_multiple_of((order - 1) / 2) {
                return fail(format!("(L-1)/2 = {} does not divide sm = {sm}", (order - 1) / 2));
            }
        }
    }
    Ok(())
}

/// Cyclotomic numbers of order 2 for odd r, indexed [i][j].
pub fn order_two_cyclotomic_numbers(r: u64) -> Result<[[u64; 2]; 2]> {
    match r % 4 {
        1 => {
            let (a, b) = ((r - 5) / 4, (r - 1) / 4);
            Ok([[a, b], [b, b]])
        }
        3 => {
            let (a, b) = ((r - 3) / 4, (r + 1) / 4);
            Ok([[a, b], [a, a]])
        }
        _ => Err(Error::HypothesisNotMet(format!("r = {r} is even"))),
    }
}

fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Closed-form periods of order L for the given variant.
pub fn periods_closed_form(variant: PeriodVariant, tower: &FieldTower, order: u64) -> Result<ClosedFormPeriods> {
    hypotheses(variant, tower, order)?;
    let p = tower.p() as u64;
    let sm = tower.degree();
    let l = order as i128;
    let (values, params) = match variant {
        PeriodVariant::Quadratic => {
            let sqrt_r = p.pow(sm / 2) as i128;
            let sign_sm = if (sm - 1).is_multiple_of(2) { 1 } else { -1 };
            let eta0 = if p % 4 == 1 {
                (rat(-1) + rat(sign_sm * sqrt_r)) / rat(2)
            } else {
                // (sqrt(-1))^sm is real because sm is even
                let i_pow = if (sm / 2).is_multiple_of(2) { 1 } else { -1 };
                (rat(-1) + rat(sign_sm * i_pow * sqrt_r)) / rat(2)
            };
            let eta1 = rat(-1) - eta0;
            (vec![eta0, eta1], ClosedFormParams::Quadratic { sqrt_r: sqrt_r as u64 })
        }
        PeriodVariant::Cubic => cubic(tower)?,
        PeriodVariant::Semiprimitive => {
            let j = semiprimitive_exponent(p, order).expect("checked by hypotheses");
            let v = sm / (2 * j);
            let sqrt_r = p.pow(j * v) as i128;
            let exceptional = v % 2 == 1 && p % 2 == 1 && ((p.pow(j) + 1) / order) % 2 == 1;
            let values = if exceptional {
                let special = (rat((l - 1) * sqrt_r) - rat(1)) / rat(l);
                let other = -(rat(sqrt_r) + rat(1)) / rat(l);
                (0..order).map(|k| if k == order / 2 { special } else { other }).collect()
            } else {
                let sign = if v.is_multiple_of(2) { 1 } else { -1 };
                let first = (rat(-sign * (l - 1) * sqrt_r) - rat(1)) / rat(l);
                let other = (rat(sign * sqrt_r) - rat(1)) / rat(l);
                (0..order).map(|k| if k == 0 { first } else { other }).collect()
            };
            (values, ClosedFormParams::Semiprimitive { j, v, exceptional })
        }
        PeriodVariant::Index2 => index2(tower, order)?,
    };
    Ok(ClosedFormPeriods { variant, order, values, params })
}

fn cubic(tower: &FieldTower) -> Result<(Vec<Rational>, ClosedFormParams)> {
    let p = tower.p() as u64;
    let root = p.pow(tower.degree() / 3);
    let four_root = 4 * root;
    // all (|c1|, |d1|) with c1² + 27 d1² = 4 p^(sm/3) and gcd(c1, p) = 1
    let mut reps = Vec::new();
    let mut d = 0u64;
    while 27 * d * d <= four_root {
        if let Some(c) = nt::exact_sqrt(four_root - 27 * d * d) {
            if nt::gcd(c, p) == 1 {
                reps.push((c as i64, d as i64));
            }
        }
        d += 1;
    }
    if reps.is_empty() {
        return Err(Error::NoDiophantineSolution(format!("4*{root} = c1^2 + 27 d1^2")));
    }
    let root_r = rat(root as i128);
    let formula = |c1: i64, d1: i64| -> Vec<Rational> {
        let (c1, d1) = (rat(c1 as i128), rat(d1 as i128));
        let half = Rational::new(1, 2);
        vec![
            (rat(-1) - c1 * root_r) / rat(3),
            (rat(-1) + half * (c1 + rat(9) * d1) * root_r) / rat(3),
            (rat(-1) + half * (c1 - rat(9) * d1) * root_r) / rat(3),
        ]
    };
    // The sign of c1 is forced by integrality of η_0; the sign of d1 only
    // exchanges η_1 and η_2 and is fixed by comparison with the trace tallies.
    let exact = periods_exact(tower, 3)?.rational_values();
    let mut fallback = None;
    for &(c, d) in &reps {
        for (c1, d1) in [(c, d), (-c, d), (c, -d), (-c, -d)] {
            let values = formula(c1, d1);
            if !values.iter().all(Ratio::is_integer) {
                continue;
            }
            let params = ClosedFormParams::Cubic { c1, d1, cube_root_r: root };
            let ints: Vec<i64> = values.iter().map(|v| v.to_integer() as i64).collect();
            if exact.as_deref() == Some(ints.as_slice()) {
                return Ok((values, params));
            }
            fallback.get_or_insert((values, params));
        }
    }
    fallback.ok_or_else(|| Error::NoDiophantineSolution("no integral sign choice for (c1, d1)".into()))
}

fn index2(tower: &FieldTower, order: u64) -> Result<(Vec<Rational>, ClosedFormParams)> {
    let p = tower.p() as u64;
    let sm = tower.degree() as u64;
    let l = order as i128;
    let h = quadratic::class_number_imag_quadratic(order)?;
    let (a, b) = quadratic::solve_index2_ab(order, p, h)?;
    let k = (2 * sm / (order - 1)) as u32;

    // P = (-1)^(k-1) p^(k(L-1-2h)/4)
    let exp_num = k as i64 * (order as i64 - 1 - 2 * h as i64);
    debug_assert_eq!(exp_num % 4, 0);
    let magnitude = rat(p as i128).pow((exp_num / 4) as i32);
    let p_k = if (k - 1).is_multiple_of(2) { magnitude } else { -magnitude };

    // (a + b√-L)^k = X + Y√-L
    let (mut x, mut y) = (1i128, 0i128);
    for _ in 0..k {
        let nx = x * a as i128 - l * y * b as i128;
        let ny = x * b as i128 + y * a as i128;
        x = nx;
        y = ny;
    }
    let scale = rat(1i128 << k);
    let a_k = rat(x) / scale;
    let b_k = rat(y) / scale;

    let eta0 = (p_k * a_k * rat(l - 1) - Rational::one()) / rat(l);
    let eta_res = -(p_k * a_k + p_k * b_k * rat(l) + Rational::one()) / rat(l);
    let eta_non = -(p_k * a_k - p_k * b_k * rat(l) + Rational::one()) / rat(l);
    let label = |swapped: bool| -> Vec<Rational> {
        (0..order)
            .map(|u| match nt::legendre(u as i64, order) {
                0 => eta0,
                1 if !swapped => eta_res,
                -1 if swapped => eta_res,
                _ => eta_non,
            })
            .collect()
    };
    let exact = periods_exact(tower, order)?.rational_values();
    let straight = label(false);
    let matches = |vals: &[Rational]| {
        exact.as_ref().is_some_and(|ex| {
            ex.iter().zip(vals).all(|(&e, v)| v.is_integer() && v.to_integer() == e as i128)
        })
    };
    let swapped = !matches(&straight) && matches(&label(true));
    let values = if swapped { label(true) } else { straight };
    Ok((
        values,
        ClosedFormParams::Index2 { class_number: h, a, b, k, p_k, a_k, b_k, swapped },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<i64>) -> Vec<i64> {
        v.sort();
        v
    }

    #[test]
    fn quadratic_r49() {
        let t = FieldTower::build(7, 1, 2, None).unwrap();
        let cf = periods_closed_form(PeriodVariant::Quadratic, &t, 2).unwrap();
        assert_eq!(cf.integer_values().unwrap(), vec![3, -4]);
        let exact = periods_exact(&t, 2).unwrap().rational_values().unwrap();
        assert_eq!(cf.integer_values().unwrap(), exact);
    }

    #[test]
    fn cubic_r343() {
        let t = FieldTower::build(7, 1, 3, Some(&[4, 0, 6, 1])).unwrap();
        let cf = periods_closed_form(PeriodVariant::Cubic, &t, 3).unwrap();
        assert_eq!(sorted(cf.integer_values().unwrap()), vec![-12, 2, 9]);
        match cf.params {
            ClosedFormParams::Cubic { c1, d1, cube_root_r } => {
                assert_eq!((c1.abs(), d1.abs(), cube_root_r), (1, 1, 7));
            }
            _ => panic!("wrong params"),
        }
    }

    #[test]
    fn index2_r64() {
        let t = FieldTower::build(2, 1, 6, Some(&[1, 1, 0, 1, 1, 0, 1])).unwrap();
        let cf = periods_closed_form(PeriodVariant::Index2, &t, 7).unwrap();
        let ints = cf.integer_values().unwrap();
        assert_eq!(ints[0], 5);
        assert_eq!(sorted(ints), vec![-3, -3, -3, 1, 1, 1, 5]);
        match cf.params {
            ClosedFormParams::Index2 { class_number, a, b, k, p_k, a_k, b_k, .. } => {
                assert_eq!((class_number, a, b, k), (1, -1, 1, 2));
                assert_eq!(p_k, rat(-4));
                assert_eq!(a_k, Rational::new(-3, 2));
                assert_eq!(b_k, Rational::new(-1, 2));
            }
            _ => panic!("wrong params"),
        }
    }

    #[test]
    fn semiprimitive_r25_order3() {
        let t = FieldTower::build(5, 1, 2, None).unwrap();
        let cf = periods_closed_form(PeriodVariant::Semiprimitive, &t, 3).unwrap();
        assert_eq!(cf.integer_values().unwrap(), vec![3, -2, -2]);
        assert_eq!(cf.integer_values().unwrap(), periods_exact(&t, 3).unwrap().rational_values().unwrap());
    }

    #[test]
    fn hypothesis_failures() {
        let t = FieldTower::build(7, 1, 1, None).unwrap();
        assert!(matches!(
            periods_closed_form(PeriodVariant::Cubic, &t, 3),
            Err(Error::HypothesisNotMet(_))
        ));
        let t27 = FieldTower::build(3, 1, 3, None).unwrap();
        assert!(matches!(
            periods_closed_form(PeriodVariant::Quadratic, &t27, 2),
            Err(Error::HypothesisNotMet(_))
        ));
        assert!(matches!(
            periods_closed_form(PeriodVariant::Semiprimitive, &t27, 4),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn variant_detection() {
        let t64 = FieldTower::build(2, 1, 6, None).unwrap();
        assert_eq!(detect_variant(&t64, 7), Some(PeriodVariant::Index2));
        assert_eq!(detect_variant(&t64, 3), Some(PeriodVariant::Semiprimitive));
        assert_eq!(detect_variant(&t64, 9), Some(PeriodVariant::Semiprimitive));
        let t343 = FieldTower::build(7, 1, 3, None).unwrap();
        assert_eq!(detect_variant(&t343, 3), Some(PeriodVariant::Cubic));
        assert_eq!(detect_variant(&t343, 19), None);
    }
}
