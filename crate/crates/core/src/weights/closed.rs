//! Closed-form weight tables.

use super::{Case, CaseClassification, WeightDistribution};
use crate::codes::Code;
use crate::cyclotomy::{order_two_cyclotomic_numbers, periods_closed_form, periods_exact, DistinctPeriodMultiset, PeriodVariant};
use crate::error::{Error, Result};
use crate::nt;
use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Signed};

/// Number of tuples visited before the t = e table gives up.
const MAX_TUPLES: u128 = 20_000_000;

/// C(e, u)(r-1)^u
pub fn thm1_frequency(e: u64, u: u64, r: u64) -> BigUint {
    nt::binomial(e, u) * BigUint::from(r - 1).pow(u as u32)
}

/// C(e, t-u) Σ_{k<u} (-1)^k C(e-t+u, k)(r^(u-k) - 1) for 1 ≤ u ≤ t, and 1 for u = 0.
pub fn thm3_frequency(e: u64, t: u64, u: u64, r: u64) -> BigUint {
    if u == 0 {
        return BigUint::from(1u8);
    }
    let r = BigInt::from(r);
    let sum: BigInt = (0..u)
        .map(|k| {
            let power: BigInt = Pow::pow(&r, (u - k) as u32);
            let term: BigInt = BigInt::from(nt::binomial(e - t + u, k)) * (power - 1);
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    debug_assert!(!sum.is_negative());
    nt::binomial(e, t - u) * sum.to_biguint().expect("inclusion-exclusion count is nonnegative")
}

fn exact_weight(code: &Code, num: i128, den: i128) -> Result<u64> {
    if den == 0 || num % den != 0 || num < 0 || num / den > code.n() as i128 {
        return Err(Error::NonIntegralWeight(format!("{num}/{den}")));
    }
    Ok((num / den) as u64)
}

/// (q-1)/(δeq)
fn scale_den(code: &Code) -> i128 {
    let p = code.params();
    p.delta as i128 * code.e() as i128 * p.q as i128
}

fn thm1_table(code: &Code) -> Result<WeightDistribution> {
    let p = code.params();
    let e = code.e();
    let entries = (0..=e)
        .map(|u| {
            let w = exact_weight(code, (p.q as i128 - 1) * p.r as i128 * u as i128, scale_den(code))?;
            Ok((w, thm1_frequency(e, u, p.r)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightDistribution::from_counts(code.n(), code.dimension(), entries))
}

/// The t = e table for the given distinct period values, summed over every
/// (u_0, ..., u_μ) with Σ u_j = e; equal weights from different tuples are merged.
pub fn thm2_table(code: &Code, periods: &DistinctPeriodMultiset) -> Result<WeightDistribution> {
    let p = code.params();
    let e = code.e();
    let mu = periods.len() as u64;
    if periods.total_classes() != p.big_n {
        return Err(Error::InvalidSpec(format!(
            "period multiset covers {} classes, N = {}",
            periods.total_classes(),
            p.big_n
        )));
    }
    let tuples = nt::binomial(e + mu, mu);
    if tuples > BigUint::from(MAX_TUPLES) {
        return Err(Error::CapExceeded { size: MAX_TUPLES + 1, cap: MAX_TUPLES as u64 });
    }
    let class_size = BigUint::from((p.r - 1) / p.big_n);
    let e_fact = nt::factorial(e);
    let mut entries = Vec::new();
    let mut u = vec![0u64; mu as usize + 1];
    compositions(e, &mut u, 0, &mut |u| {
        let weight_num: i128 = periods
            .entries()
            .iter()
            .zip(&u[1..])
            .map(|(&(eta, _), &uj)| uj as i128 * (p.r as i128 - 1 - p.big_n as i128 * eta as i128))
            .sum::<i128>()
            * (p.q as i128 - 1);
        let w = exact_weight(code, weight_num, scale_den(code))?;
        let denom: BigUint = u.iter().map(|&x| nt::factorial(x)).product();
        let mut freq = &e_fact / denom * class_size.clone().pow((e - u[0]) as u32);
        for (&(_, tau), &uj) in periods.entries().iter().zip(&u[1..]) {
            freq *= BigUint::from(tau).pow(uj as u32);
        }
        entries.push((w, freq));
        Ok(())
    })?;
    Ok(WeightDistribution::from_counts(code.n(), code.dimension(), entries))
}

fn compositions<F>(remaining: u64, u: &mut [u64], index: usize, visit: &mut F) -> Result<()>
where
    F: FnMut(&[u64]) -> Result<()>,
{
    if index + 1 == u.len() {
        u[index] = remaining;
        return visit(u);
    }
    for take in 0..=remaining {
        u[index] = take;
        compositions(remaining - take, u, index + 1, visit)?;
    }
    Ok(())
}

fn thm3_table(code: &Code) -> Result<WeightDistribution> {
    let p = code.params();
    if p.big_n != 1 {
        return Err(Error::Unsupported(format!("t < e table needs N = 1, got {}", p.big_n)));
    }
    if let Some(rows) = code.singular_minor() {
        return Err(Error::IndependenceFails(format!("rows {rows:?} of B are dependent")));
    }
    let (e, t) = (code.e(), code.t());
    let mut entries = vec![(0, BigUint::from(1u8))];
    for u in 1..=t {
        let num = (p.q as i128 - 1) * p.r as i128 * (e - t + u) as i128;
        entries.push((exact_weight(code, num, scale_den(code))?, thm3_frequency(e, t, u, p.r)));
    }
    Ok(WeightDistribution::from_counts(code.n(), code.dimension(), entries))
}

fn thm4_table(code: &Code) -> Result<WeightDistribution> {
    let p = code.params();
    if (code.e(), code.t(), p.big_n) != (3, 2, 2) {
        return Err(Error::Unsupported("the e = 3, t = 2 table needs N = 2".into()));
    }
    let cf = periods_closed_form(PeriodVariant::Quadratic, code.tower(), 2)?;
    let eta = cf.integer_values()?;
    let (eta0, eta1) = (eta[0] as i128, eta[1] as i128);
    let cyc = order_two_cyclotomic_numbers(p.r)?;
    let half = BigUint::from((p.r - 1) / 2);
    let bar0 = ((p.r - 1) / 2) as i128;
    let mixed = cyc[0][1] + cyc[1][0] + cyc[1][1];
    let rows: [(i128, BigUint); 7] = [
        (3 * bar0, BigUint::from(1u8)),
        (3 * eta0, &half * cyc[0][0]),
        (3 * eta1, &half * cyc[0][0]),
        (2 * eta0 + eta1, &half * mixed),
        (eta0 + 2 * eta1, &half * mixed),
        (bar0 + 2 * eta0, &half * 3u8),
        (bar0 + 2 * eta1, &half * 3u8),
    ];
    let entries = rows
        .into_iter()
        .map(|(t_value, freq)| Ok((code.weight_from_t(t_value)?, freq)))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightDistribution::from_counts(code.n(), code.dimension(), entries))
}

/// Evaluates the table selected by `classification`.
pub fn wd_closed(code: &Code, classification: &CaseClassification) -> Result<WeightDistribution> {
    match &classification.case {
        Case::Thm1 => thm1_table(code),
        Case::Thm2(source) => {
            let big_n = code.params().big_n;
            let multiset = match source.variant() {
                Some(variant) => periods_closed_form(variant, code.tower(), big_n)?.distinct()?,
                None => periods_exact(code.tower(), big_n)?.distinct()?,
            };
            thm2_table(code, &multiset)
        }
        Case::Thm3 => thm3_table(code),
        Case::Thm4 => thm4_table(code),
        Case::Unsupported(reason) => Err(Error::Unsupported(reason.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeSpec;
    use crate::weights::{classify, parse_enumerator};

    fn closed(spec: CodeSpec) -> WeightDistribution {
        let code = Code::new(spec).unwrap();
        wd_closed(&code, &classify(&code)).unwrap()
    }

    fn expect(spec: CodeSpec, text: &str) {
        assert_eq!(closed(spec).entries(), parse_enumerator(text).unwrap().as_slice());
    }

    #[test]
    fn t_less_than_e_table() {
        expect(
            CodeSpec::consecutive(5, 1, 3, 4, 3, 1).with_modulus(&[3, 3, 0, 1]),
            "1 + 744z^50 + 61008z^75 + 1891372z^100",
        );
    }

    #[test]
    fn order_two_table() {
        expect(
            CodeSpec::consecutive(7, 1, 2, 2, 2, 1).with_modulus(&[3, 6, 1]),
            "1 + 48z^18 + 48z^24 + 576z^36 + 1152z^42 + 576z^48",
        );
    }

    #[test]
    fn semiprimitive_table_merges_tuples() {
        expect(
            CodeSpec::consecutive(5, 1, 2, 3, 3, 1).with_modulus(&[2, 4, 1]),
            "1 + 24z^4 + 240z^8 + 1280z^12 + 3840z^16 + 6144z^20 + 4096z^24",
        );
    }

    #[test]
    fn e3_t2_table() {
        expect(
            CodeSpec::consecutive(7, 1, 2, 3, 2, 2).with_modulus(&[3, 6, 1]),
            "1 + 72z^12 + 72z^16 + 264z^18 + 864z^20 + 864z^22 + 264z^24",
        );
    }

    #[test]
    fn remark_identity_small() {
        for e in 2..=6 {
            for u in 0..=e {
                assert_eq!(thm3_frequency(e, e, u, 9), thm1_frequency(e, u, 9));
            }
        }
    }

    #[test]
    fn unsupported_and_dependent_rows() {
        let code = Code::new(CodeSpec::consecutive(3, 1, 3, 2, 2, 13)).unwrap();
        assert!(matches!(wd_closed(&code, &classify(&code)), Err(Error::Unsupported(_))));
        let mut spec = CodeSpec::consecutive(5, 1, 3, 4, 2, 1);
        spec.deltas = vec![0, 2];
        let code = Code::new(spec).unwrap();
        let forced = CaseClassification { case: Case::Thm3, trace: vec![] };
        assert!(matches!(wd_closed(&code, &forced), Err(Error::IndependenceFails(_))));
    }
}
