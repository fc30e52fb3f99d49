//! Exhaustive and sampled evaluation of codeword weights.
//!
//! Inputs x = (x_1, ..., x_t) are visited in lexicographic order of their
//! log-zero encoding (zero, γ^0, γ^1, ...). The outer coordinate x_1 is the unit
//! of parallel work; inner coordinates reuse partial sums, so each word costs one
//! addition and one scaling per output position.

use super::{input_space, WeightDistribution};
use crate::codes::Code;
use crate::cyclotomy::{periods_exact, GaussianPeriodSet};
use crate::error::{Error, Result};
use crate::exec::{fold_range, Execution};
use crate::gf::FieldTower;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// exps[j][i] = a_j · i mod (r-1) for i < len.
fn exponent_table(code: &Code, len: u64) -> Vec<Vec<u32>> {
    let ord = code.params().r - 1;
    code.params()
        .a_i
        .iter()
        .map(|&a| (0..len).map(|i| (a as u128 * i as u128 % ord as u128) as u32).collect())
        .collect()
}

fn check_cap(code: &Code, cap: u64) -> Result<u64> {
    let size = input_space(code);
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(size as u64)
}

/// Runs `leaf` on Σ_j x_j γ^(exps[j][i]) for every x ∈ GF(r)^t and tallies the
/// returned keys.
fn nested_tally<L>(tower: &FieldTower, exps: &[Vec<u32>], key_space: usize, exec: Execution, leaf: L) -> Vec<u64>
where
    L: Fn(&[u32]) -> usize + Sync + Send,
{
    let r = tower.r();
    let len = exps[0].len();
    let depth = exps.len();
    fold_range(
        exec,
        0..r,
        || vec![0u64; key_space],
        |mut acc, x1| {
            let mut bufs = vec![vec![0u32; len]; depth];
            for (slot, &e) in bufs[0].iter_mut().zip(&exps[0]) {
                *slot = tower.lz_scale(x1 as u32, e);
            }
            if depth == 1 {
                acc[leaf(&bufs[0])] += 1;
            } else {
                descend(tower, exps, 1, &mut bufs, &mut acc, &leaf);
            }
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

fn descend<L>(tower: &FieldTower, exps: &[Vec<u32>], level: usize, bufs: &mut [Vec<u32>], acc: &mut [u64], leaf: &L)
where
    L: Fn(&[u32]) -> usize,
{
    let last = level + 1 == exps.len();
    for x in 0..tower.r() as u32 {
        {
            let (done, rest) = bufs.split_at_mut(level);
            for ((slot, &p), &e) in rest[0].iter_mut().zip(&done[level - 1]).zip(&exps[level]) {
                *slot = tower.lz_add(p, tower.lz_scale(x, e));
            }
        }
        if last {
            acc[leaf(&bufs[level])] += 1;
        } else {
            descend(tower, exps, level + 1, bufs, acc, leaf);
        }
    }
}

/// Weight distribution by computing every codeword.
pub fn wd_naive(code: &Code, cap: u64, exec: Execution) -> Result<WeightDistribution> {
    check_cap(code, cap)?;
    let n = code.n();
    let exps = exponent_table(code, n);
    let tower = code.tower();
    let tally = nested_tally(tower, &exps, n as usize + 1, exec, |sums| {
        sums.iter().filter(|&&v| tower.lz_trace_base_nonzero(v)).count()
    });
    Ok(WeightDistribution::from_counts(
        n,
        code.dimension(),
        tally.into_iter().enumerate().map(|(w, c)| (w as u64, BigUint::from(c))),
    ))
}

/// Maps log-zero encoded arguments of T to tally keys and back to T values.
struct ProfileCoder {
    /// key contribution per log-zero value
    table: Vec<u64>,
    key_space: usize,
    /// key -> T
    decode: Box<dyn Fn(usize) -> i64 + Sync + Send>,
}

impl ProfileCoder {
    fn new(code: &Code, periods: &GaussianPeriodSet) -> Result<Self> {
        let values = periods
            .rational_values()
            .ok_or_else(|| Error::NonIntegralWeight("periods of order N are irrational".into()))?;
        let tower = code.tower();
        let big_n = periods.order();
        let e = code.e();
        let zero_value = periods.modified_zero() as i64;
        // categories: 0 for the zero argument, then one per distinct period value
        let mut distinct: Vec<i64> = values.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let category_of_class: Vec<usize> =
            values.iter().map(|v| 1 + distinct.binary_search(v).unwrap()).collect();
        let category_value: Vec<i64> = std::iter::once(zero_value).chain(distinct.iter().copied()).collect();
        let base = e + 1;
        let categories = category_value.len() as u32;
        let lz_class = |lz: u32| -> Option<usize> { (lz != 0).then(|| ((lz - 1) as u64 % big_n) as usize) };
        let r = tower.r() as usize;

        match base.checked_pow(categories).filter(|&k| k <= 1 << 18) {
            Some(key_space) => {
                let table = (0..r as u32)
                    .map(|lz| base.pow(lz_class(lz).map_or(0, |c| category_of_class[c]) as u32))
                    .collect();
                let decode = move |mut key: usize| {
                    let mut t = 0i64;
                    for v in &category_value {
                        t += (key as u64 % base) as i64 * v;
                        key /= base as usize;
                    }
                    t
                };
                Ok(ProfileCoder { table, key_space: key_space as usize, decode: Box::new(decode) })
            }
            None => {
                // too many categories for a dense profile code: key on T directly
                let min = *category_value.iter().min().unwrap();
                let max = *category_value.iter().max().unwrap();
                let table = (0..r as u32)
                    .map(|lz| {
                        let v = lz_class(lz).map_or(zero_value, |c| values[c]);
                        (v - min) as u64
                    })
                    .collect();
                let key_space = (e as i64 * (max - min) + 1) as usize;
                let decode = move |key: usize| key as i64 + e as i64 * min;
                Ok(ProfileCoder { table, key_space, decode: Box::new(decode) })
            }
        }
    }
}

/// Weight distribution by tallying the class profile of the e arguments of T.
pub fn wd_tsum(code: &Code, periods: &GaussianPeriodSet, cap: u64, exec: Execution) -> Result<WeightDistribution> {
    check_cap(code, cap)?;
    if periods.order() != code.params().big_n {
        return Err(Error::InvalidSpec(format!(
            "periods of order {} supplied, N = {}",
            periods.order(),
            code.params().big_n
        )));
    }
    let coder = ProfileCoder::new(code, periods)?;
    let exps = exponent_table(code, code.e());
    let tally = nested_tally(code.tower(), &exps, coder.key_space, exec, |args| {
        args.iter().map(|&v| coder.table[v as usize]).sum::<u64>() as usize
    });
    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    for (key, c) in tally.into_iter().enumerate().filter(|&(_, c)| c > 0) {
        let w = code.weight_from_t((coder.decode)(key) as i128)?;
        *counts.entry(w).or_default() += c;
    }
    Ok(WeightDistribution::from_counts(code.n(), code.dimension(), counts))
}

/// Tally of zero patterns: entry `mask` counts nonzero x whose linear forms
/// L_h(x) = Σ_τ x_τ β_τ^h vanish exactly for h in `mask`.
pub fn vanishing_pattern_tally(code: &Code, cap: u64, exec: Execution) -> Result<Vec<u64>> {
    check_cap(code, cap)?;
    let e = code.e();
    if e > 20 {
        return Err(Error::InvalidSpec(format!("e = {e} is too large for a pattern tally")));
    }
    let exps = exponent_table(code, e);
    let mut tally = nested_tally(code.tower(), &exps, 1 << e, exec, |args| {
        args.iter().enumerate().filter(|(_, &v)| v == 0).fold(0usize, |m, (h, _)| m | 1 << h)
    });
    // drop x = 0, which vanishes everywhere
    tally[(1 << e) - 1] -= 1;
    Ok(tally)
}

/// Number of nonzero x vanishing on exactly the forms indexed by `subset`.
pub fn count_vanishing_patterns(code: &Code, subset: &[u64], cap: u64, exec: Execution) -> Result<u64> {
    let mask = subset.iter().try_fold(0usize, |m, &h| {
        if h >= code.e() {
            Err(Error::InvalidSpec(format!("index {h} outside 0..{}", code.e())))
        } else {
            Ok(m | 1 << h)
        }
    })?;
    Ok(vanishing_pattern_tally(code, cap, exec)?[mask])
}

const SAMPLE_CHUNK: u64 = 1 << 14;

/// Weights of `samples` uniformly random inputs, computed through T. The
/// sample stream depends only on `seed` (chunk k uses ChaCha stream k), so
/// sequential and parallel runs agree.
pub fn sample_weights(code: &Code, samples: u64, seed: u64, exec: Execution) -> Result<BTreeMap<u64, u64>> {
    let periods = periods_exact(code.tower(), code.params().big_n)?;
    let values = periods
        .rational_values()
        .ok_or_else(|| Error::NonIntegralWeight("periods of order N are irrational".into()))?;
    let big_n = code.params().big_n;
    let tower = code.tower();
    let r = tower.r();
    let eta_bar: Vec<i64> = (0..r as u32)
        .map(|lz| if lz == 0 { periods.modified_zero() as i64 } else { values[((lz - 1) as u64 % big_n) as usize] })
        .collect();
    let exps = exponent_table(code, code.e());
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let tally = fold_range(
        exec,
        0..chunks,
        BTreeMap::<i64, u64>::new,
        |mut acc, chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = SAMPLE_CHUNK.min(samples - chunk * SAMPLE_CHUNK);
            let mut xs = vec![0u32; exps.len()];
            for _ in 0..count {
                xs.iter_mut().for_each(|x| *x = rng.gen_range(0..r as u32));
                let t: i64 = (0..exps[0].len())
                    .map(|h| {
                        let arg = xs
                            .iter()
                            .zip(&exps)
                            .fold(0u32, |s, (&x, row)| tower.lz_add(s, tower.lz_scale(x, row[h])));
                        eta_bar[arg as usize]
                    })
                    .sum();
                *acc.entry(t).or_default() += 1;
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    let mut weights = BTreeMap::new();
    for (t, c) in tally {
        *weights.entry(code.weight_from_t(t as i128)?).or_default() += c;
    }
    Ok(weights)
}
