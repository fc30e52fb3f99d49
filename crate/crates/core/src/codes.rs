//! The code family: parameters, the three structural conditions, parity-check and
//! generator polynomials, and codewords.

use crate::cyclotomy::GaussianPeriodSet;
use crate::error::{Error, Result};
use crate::gf::{self, min_poly, Elem, FieldTower, Subfield, SubfieldPolynomial};
use crate::nt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// User-facing parameters (p, s, m, e, t, a, Δ) plus an optional modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    pub e: u64,
    pub t: u64,
    pub a: u64,
    pub deltas: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl CodeSpec {
    /// Spec with Δ = (0, 1, ..., t-1) and the default modulus.
    pub fn consecutive(p: u32, s: u32, m: u32, e: u64, t: u64, a: u64) -> Self {
        CodeSpec { p, s, m, e, t, a, deltas: (0..t).collect(), modulus: None }
    }

    pub fn with_modulus(mut self, modulus: &[u32]) -> Self {
        self.modulus = Some(modulus.to_vec());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub q: u64,
    pub r: u64,
    /// a_i = a + (r-1)Δ_i/e mod r-1
    pub a_i: Vec<u64>,
    /// gcd(r-1, a_1, ..., a_t)
    pub delta: u64,
    /// (r-1)/δ
    pub n: u64,
    /// gcd((r-1)/(q-1), a·e)
    #[serde(rename = "N")]
    pub big_n: u64,
    /// log of g = γ^a
    pub g_exponent: u64,
    /// logs of β_τ = γ^((r-1)Δ_τ/e)
    pub beta_exponents: Vec<u64>,
}

/// Checks shapes, then computes all derived quantities. Does not build the field.
pub fn derive_params(spec: &CodeSpec) -> Result<DerivedParams> {
    if !nt::is_prime(spec.p as u64) {
        return Err(Error::NotPrime(spec.p as u64));
    }
    if spec.s == 0 || spec.m == 0 {
        return Err(Error::InvalidField("s and m must be at least 1".into()));
    }
    if spec.e < 2 || spec.t < 2 || spec.t > spec.e {
        return Err(Error::InvalidSpec(format!("need e >= t >= 2, got e = {}, t = {}", spec.e, spec.t)));
    }
    if spec.deltas.len() as u64 != spec.t {
        return Err(Error::InvalidSpec(format!("{} deltas given for t = {}", spec.deltas.len(), spec.t)));
    }
    let overflow = || Error::InvalidField("field order overflows 64 bits".into());
    let q = nt::checked_pow(spec.p as u64, spec.s).ok_or_else(overflow)?;
    let r = nt::checked_pow(q, spec.m).ok_or_else(overflow)?;
    let ord = r - 1;
    if ord % spec.e != 0 {
        return Err(Error::EDoesNotDivide { e: spec.e, order_minus_one: ord });
    }
    let step = ord / spec.e;
    let a = spec.a % ord;
    let beta_exponents: Vec<u64> = spec
        .deltas
        .iter()
        .map(|&d| ((d % spec.e) as u128 * step as u128 % ord as u128) as u64)
        .collect();
    let a_i: Vec<u64> = beta_exponents.iter().map(|&b| (a + b) % ord).collect();
    let delta = a_i.iter().fold(ord, |g, &x| nt::gcd(g, x));
    let sub = ord / (q - 1);
    let ae = (a as u128 * spec.e as u128 % sub as u128) as u64;
    Ok(DerivedParams {
        q,
        r,
        a_i,
        delta,
        n: ord / delta,
        big_n: nt::gcd(sub, ae),
        g_exponent: a,
        beta_exponents,
    })
}

/// Which sufficient criterion settled condition iii before the direct check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FastCriterion {
    /// N ≤ √r
    SmallN,
    /// (r-1)/(q^ℓ-1) ∤ N for every proper divisor ℓ of m
    NoSubfieldDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    /// a ≢ 0 (mod r-1) and e | r-1
    pub condition_i: bool,
    /// Δ distinct mod e and gcd(Δ_2-Δ_1, ..., Δ_t-Δ_1, e) = 1
    pub condition_ii: bool,
    /// every h_{a_i} has degree m and they are pairwise distinct (direct coset check)
    pub condition_iii: bool,
    pub fast_criterion: Option<FastCriterion>,
    pub failures: Vec<String>,
}

impl AssumptionReport {
    pub fn all_hold(&self) -> bool {
        self.condition_i && self.condition_ii && self.condition_iii
    }
}

/// Evaluates the three conditions. Condition iii is always decided by the
/// coset computation; the fast criterion is only recorded.
pub fn validate_assumptions(spec: &CodeSpec, params: &DerivedParams) -> AssumptionReport {
    let ord = params.r - 1;
    let mut failures = Vec::new();

    let condition_i = !spec.a.is_multiple_of(ord);
    if !condition_i {
        failures.push(format!("a = {} is divisible by r-1 = {ord}", spec.a));
    }

    let reduced: Vec<u64> = spec.deltas.iter().map(|d| d % spec.e).collect();
    let distinct = reduced.iter().collect::<BTreeSet<_>>().len() == reduced.len();
    if !distinct {
        failures.push(format!("deltas {:?} are not distinct mod e = {}", spec.deltas, spec.e));
    }
    let g = reduced[1..]
        .iter()
        .fold(spec.e, |g, &d| nt::gcd(g, (d + spec.e - reduced[0]) % spec.e));
    if g != 1 {
        failures.push(format!("gcd of delta differences with e is {g}, not 1"));
    }
    let condition_ii = distinct && g == 1;

    let fast_criterion = lemma_fast_path(params, spec.m);
    let mut reps = BTreeSet::new();
    let mut condition_iii = true;
    for (i, &ai) in params.a_i.iter().enumerate() {
        let coset = gf::cyclotomic_coset((ord - ai % ord) % ord, params.q, params.r);
        if coset.len() as u32 != spec.m {
            condition_iii = false;
            failures.push(format!("h_a{} has degree {} instead of m = {}", i + 1, coset.len(), spec.m));
        }
        if !reps.insert(coset[0]) {
            condition_iii = false;
            failures.push(format!("h_a{} coincides with an earlier h_aj", i + 1));
        }
    }
    AssumptionReport { condition_i, condition_ii, condition_iii, fast_criterion, failures }
}

fn lemma_fast_path(params: &DerivedParams, m: u32) -> Option<FastCriterion> {
    let n = params.big_n as u128;
    if n * n <= params.r as u128 {
        return Some(FastCriterion::SmallN);
    }
    let ord = params.r - 1;
    let blocked = nt::divisors(m as u64)
        .into_iter()
        .filter(|&l| l < m as u64)
        .any(|l| params.big_n.is_multiple_of(ord / (params.q.pow(l as u32) - 1)));
    (!blocked).then_some(FastCriterion::NoSubfieldDivisor)
}

/// h_{a_i}, their product h and g = (x^n - 1)/h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodePolynomials {
    pub h_i: Vec<SubfieldPolynomial>,
    pub h: SubfieldPolynomial,
    pub g: SubfieldPolynomial,
}

/// A code instance: the field tower, the spec and its derived parameters.
#[derive(Debug, Clone)]
pub struct Code {
    tower: FieldTower,
    spec: CodeSpec,
    params: DerivedParams,
}

impl Code {
    pub fn new(spec: CodeSpec) -> Result<Code> {
        let params = derive_params(&spec)?;
        let tower = FieldTower::build(spec.p, spec.s, spec.m, spec.modulus.as_deref())?;
        Ok(Code { tower, spec, params })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn params(&self) -> &DerivedParams {
        &self.params
    }

    pub fn n(&self) -> u64 {
        self.params.n
    }

    /// κ = t·m
    pub fn dimension(&self) -> u64 {
        self.spec.t * self.spec.m as u64
    }

    pub fn e(&self) -> u64 {
        self.spec.e
    }

    pub fn t(&self) -> u64 {
        self.spec.t
    }

    pub fn assumptions(&self) -> AssumptionReport {
        validate_assumptions(&self.spec, &self.params)
    }

    fn require_assumptions(&self) -> Result<()> {
        let report = self.assumptions();
        if report.all_hold() {
            Ok(())
        } else {
            Err(Error::AssumptionViolated(report.failures.join("; ")))
        }
    }

    /// β_τ^h for the e×t matrix B.
    fn b_entry(&self, h: u64, tau: usize) -> Elem {
        let ord = self.params.r - 1;
        self.tower
            .gamma_pow((self.params.beta_exponents[tau] as u128 * h as u128 % ord as u128) as u64)
    }

    /// First set of t rows of B that is singular over GF(r), if any.
    pub fn singular_minor(&self) -> Option<Vec<u64>> {
        let t = self.spec.t as usize;
        let e = self.spec.e;
        let mut rows: Vec<u64> = (0..t as u64).collect();
        loop {
            let matrix: Vec<Vec<Elem>> =
                rows.iter().map(|&h| (0..t).map(|tau| self.b_entry(h, tau)).collect()).collect();
            if determinant(&self.tower, matrix).is_zero() {
                return Some(rows);
            }
            // next t-subset of 0..e in lexicographic order
            let mut i = t;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if rows[i] < e - (t - i) as u64 {
                    rows[i] += 1;
                    for j in i + 1..t {
                        rows[j] = rows[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Every t rows of B are linearly independent.
    pub fn check_b_independence(&self) -> bool {
        self.singular_minor().is_none()
    }

    pub fn build_polynomials(&self) -> Result<CodePolynomials> {
        self.require_assumptions()?;
        let t = &self.tower;
        let ord = self.params.r - 1;
        let h_i: Vec<SubfieldPolynomial> = self
            .params
            .a_i
            .iter()
            .map(|&ai| min_poly(t, t.gamma_pow((ord - ai % ord) % ord)))
            .collect();
        let h = h_i.iter().fold(SubfieldPolynomial::one(t), |acc, f| acc.mul(f, t));
        let g = SubfieldPolynomial::x_pow_minus_one(t, self.params.n as usize).div_exact(&h, t)?;
        Ok(CodePolynomials { h_i, h, g })
    }

    fn check_len(&self, xs: &[Elem]) -> Result<()> {
        if xs.len() as u64 != self.spec.t {
            return Err(Error::InvalidSpec(format!("expected {} field elements, got {}", self.spec.t, xs.len())));
        }
        Ok(())
    }

    /// Σ_j x_j γ^(a_j i)
    fn inner_sum(&self, xs: &[Elem], i: u64) -> Elem {
        let ord = self.params.r - 1;
        xs.iter().zip(&self.params.a_i).fold(Elem::ZERO, |acc, (&x, &aj)| {
            let power = self.tower.gamma_pow((aj as u128 * i as u128 % ord as u128) as u64);
            self.tower.add(acc, self.tower.mul(x, power))
        })
    }

    /// The length-n word (Tr_{r/q}(Σ_j x_j γ^(a_j i)))_i.
    pub fn codeword(&self, xs: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(xs)?;
        Ok((0..self.params.n)
            .map(|i| self.tower.trace(self.inner_sum(xs, i), Subfield::Base))
            .collect())
    }

    /// Hamming weight by counting nonzero symbols.
    pub fn weight_naive(&self, xs: &[Elem]) -> Result<u64> {
        Ok(self.codeword(xs)?.iter().filter(|c| !c.is_zero()).count() as u64)
    }

    /// The e arguments g^h Σ_τ x_τ β_τ^h, h = 0..e-1.
    pub fn t_arguments(&self, xs: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(xs)?;
        // g^h β_τ^h = γ^(a_τ h)
        Ok((0..self.spec.e).map(|h| self.inner_sum(xs, h)).collect())
    }

    /// How many arguments are zero and how many fall in each class of order N.
    pub fn t_profile(&self, xs: &[Elem]) -> Result<TProfile> {
        let big_n = self.params.big_n;
        let mut profile = TProfile { zero: 0, classes: vec![0; big_n as usize] };
        for v in self.t_arguments(xs)? {
            match self.tower.dlog(v) {
                None => profile.zero += 1,
                Some(k) => profile.classes[(k % big_n) as usize] += 1,
            }
        }
        Ok(profile)
    }

    /// T(x) = Σ_h η̄_{arg_h}, exactly.
    pub fn t_value(&self, periods: &GaussianPeriodSet, xs: &[Elem]) -> Result<i64> {
        if periods.order() != self.params.big_n {
            return Err(Error::InvalidSpec(format!(
                "periods of order {} supplied, N = {}",
                periods.order(),
                self.params.big_n
            )));
        }
        let profile = self.t_profile(xs)?;
        let values = periods
            .rational_values()
            .ok_or_else(|| Error::NonIntegralWeight("periods of order N are irrational".into()))?;
        Ok(profile.zero as i64 * periods.modified_zero() as i64
            + profile.classes.iter().zip(&values).map(|(&c, &v)| c as i64 * v).sum::<i64>())
    }

    /// w = [(r-1)(q-1)e - N(q-1)T] / (e q δ), checked to be an integer in [0, n].
    pub fn weight_from_t(&self, t_value: i128) -> Result<u64> {
        let p = &self.params;
        let (r, q, e, n_big) = (p.r as i128, p.q as i128, self.spec.e as i128, p.big_n as i128);
        let num = (r - 1) * (q - 1) * e - n_big * (q - 1) * t_value;
        let den = e * q * p.delta as i128;
        if num % den != 0 || num < 0 || num / den > p.n as i128 {
            return Err(Error::NonIntegralWeight(format!("T = {t_value} gives {num}/{den}")));
        }
        Ok((num / den) as u64)
    }

    /// Hamming weight through the Gaussian-period formula.
    pub fn weight_via_t(&self, periods: &GaussianPeriodSet, xs: &[Elem]) -> Result<u64> {
        self.weight_from_t(self.t_value(periods, xs)? as i128)
    }
}

/// Zero count and class counts of the e arguments of T.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TProfile {
    pub zero: u64,
    pub classes: Vec<u64>,
}

/// Determinant over GF(r) by Gaussian elimination.
fn determinant(tower: &FieldTower, mut m: Vec<Vec<Elem>>) -> Elem {
    let size = m.len();
    let mut det = tower.one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Elem::ZERO;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = tower.neg(det);
        }
        det = tower.mul(det, m[col][col]);
        let inv = tower.inv(m[col][col]).expect("nonzero pivot");
        for row in col + 1..size {
            let factor = tower.mul(m[row][col], inv);
            if factor.is_zero() {
                continue;
            }
            for k in col..size {
                let sub = tower.mul(factor, m[col][k]);
                m[row][k] = tower.sub(m[row][k], sub);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomy::periods_exact;

    fn example1() -> Code {
        Code::new(CodeSpec::consecutive(3, 1, 3, 2, 2, 1).with_modulus(&[1, 2, 0, 1])).unwrap()
    }

    #[test]
    fn derived_parameters() {
        let p = derive_params(&CodeSpec::consecutive(3, 1, 3, 2, 2, 1)).unwrap();
        assert_eq!((p.a_i.clone(), p.delta, p.n, p.big_n), (vec![1, 14], 1, 26, 1));
        let p = derive_params(&CodeSpec::consecutive(7, 1, 2, 3, 2, 2)).unwrap();
        assert_eq!((p.a_i.clone(), p.delta, p.n, p.big_n), (vec![2, 18], 2, 24, 2));
        let p = derive_params(&CodeSpec::consecutive(2, 1, 6, 7, 7, 1)).unwrap();
        assert_eq!(p.a_i, vec![1, 10, 19, 28, 37, 46, 55]);
        assert_eq!((p.delta, p.n, p.big_n), (1, 63, 7));
    }

    #[test]
    fn derive_errors() {
        assert!(matches!(
            derive_params(&CodeSpec::consecutive(3, 1, 3, 4, 2, 1)),
            Err(Error::EDoesNotDivide { e: 4, order_minus_one: 26 })
        ));
        assert!(matches!(derive_params(&CodeSpec::consecutive(3, 1, 3, 2, 3, 1)), Err(Error::InvalidSpec(_))));
        let mut spec = CodeSpec::consecutive(3, 1, 3, 2, 2, 1);
        spec.deltas = vec![0];
        assert!(matches!(derive_params(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn assumption_checks() {
        let code = example1();
        let report = code.assumptions();
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(report.fast_criterion, Some(FastCriterion::SmallN));

        let zero_a = CodeSpec::consecutive(3, 1, 3, 2, 2, 0);
        let report = validate_assumptions(&zero_a, &derive_params(&zero_a).unwrap());
        assert!(!report.condition_i);

        let mut repeated = CodeSpec::consecutive(3, 1, 3, 2, 2, 1);
        repeated.deltas = vec![0, 0];
        let report = validate_assumptions(&repeated, &derive_params(&repeated).unwrap());
        assert!(!report.condition_ii);

        // a = 13 over GF(27): γ^-13 = -1 lies in GF(3), so h has degree 1
        let small = CodeSpec::consecutive(3, 1, 3, 2, 2, 13);
        let report = validate_assumptions(&small, &derive_params(&small).unwrap());
        assert!(!report.condition_iii);
    }

    #[test]
    fn fast_criterion_never_contradicts_direct_check() {
        for (p, m) in [(2u32, 4u32), (2, 6), (3, 4), (5, 2), (2, 8), (3, 2)] {
            let r = (p as u64).pow(m);
            for e in nt::divisors(r - 1).into_iter().filter(|&e| (2..=5).contains(&e)) {
                for a in 1..40u64 {
                    let spec = CodeSpec::consecutive(p, 1, m, e, 2, a);
                    let params = derive_params(&spec).unwrap();
                    let report = validate_assumptions(&spec, &params);
                    if report.fast_criterion.is_some() {
                        assert!(report.condition_iii, "{spec:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn b_independence() {
        let code = Code::new(CodeSpec::consecutive(5, 1, 3, 4, 3, 1)).unwrap();
        assert!(code.check_b_independence());
        let mut spec = CodeSpec::consecutive(5, 1, 3, 4, 2, 1);
        spec.deltas = vec![0, 2];
        let code = Code::new(spec).unwrap();
        assert_eq!(code.singular_minor(), Some(vec![0, 2]));
        let square = Code::new(CodeSpec::consecutive(5, 1, 2, 3, 3, 1)).unwrap();
        assert!(square.check_b_independence());
    }

    #[test]
    fn polynomials_of_first_example() {
        let code = example1();
        let polys = code.build_polynomials().unwrap();
        let t = code.tower();
        assert_eq!(polys.h_i[0].display(t), "x^3 + 2x^2 + 1");
        assert_eq!(polys.h_i[1].display(t), "x^3 + x^2 + 2");
        assert_eq!(polys.h.display(t), "x^6 + 2x^4 + 2x^2 + 2");
        assert_eq!(polys.h.mul(&polys.g, t), SubfieldPolynomial::x_pow_minus_one(t, 26));
    }

    #[test]
    fn polynomials_require_assumptions() {
        let code = Code::new(CodeSpec::consecutive(3, 1, 3, 2, 2, 13)).unwrap();
        assert!(matches!(code.build_polynomials(), Err(Error::AssumptionViolated(_))));
    }

    #[test]
    fn codewords_and_weights() {
        let code = example1();
        let t = code.tower();
        let zero = code.codeword(&[Elem::ZERO, Elem::ZERO]).unwrap();
        assert!(zero.iter().all(|c| c.is_zero()));
        assert_eq!(code.weight_naive(&[t.one(), Elem::ZERO]).unwrap(), 18);
        let periods = periods_exact(t, 1).unwrap();
        assert_eq!(code.weight_via_t(&periods, &[t.one(), Elem::ZERO]).unwrap(), 18);
        assert_eq!(code.t_value(&periods, &[Elem::ZERO, Elem::ZERO]).unwrap(), 2 * 26);
        assert_eq!(code.weight_via_t(&periods, &[Elem::ZERO, Elem::ZERO]).unwrap(), 0);
        assert!(code.codeword(&[t.one()]).is_err());
    }

    #[test]
    fn cyclic_shift_stays_in_code() {
        // shifting c(x) left by one is c(x'), x'_j = x_j γ^(a_j)
        let code = example1();
        let t = code.tower();
        let xs = [t.gamma_pow(5), t.gamma_pow(17)];
        let word = code.codeword(&xs).unwrap();
        let shifted_xs: Vec<Elem> =
            xs.iter().zip(&code.params().a_i).map(|(&x, &a)| t.mul(x, t.gamma_pow(a))).collect();
        let mut rotated = word.clone();
        rotated.rotate_left(1);
        assert_eq!(code.codeword(&shifted_xs).unwrap(), rotated);
    }

    #[test]
    fn delta_divisibility() {
        for spec in [
            CodeSpec::consecutive(3, 1, 3, 2, 2, 1),
            CodeSpec::consecutive(7, 1, 2, 3, 2, 2),
            CodeSpec::consecutive(2, 1, 6, 7, 7, 1),
            CodeSpec::consecutive(5, 1, 2, 3, 3, 1),
            CodeSpec::consecutive(2, 2, 3, 3, 2, 5),
        ] {
            let p = derive_params(&spec).unwrap();
            assert_eq!((p.big_n * (p.q - 1)) % (spec.e * p.delta), 0, "{spec:?}");
        }
    }
}
