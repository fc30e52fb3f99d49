use super::{classify, sample_weights, wd_closed, wd_naive, wd_tsum, Case, CaseClassification};
use super::{Caps, WeightDistribution};
use crate::codes::Code;
use crate::cyclotomy::periods_exact;
use crate::error::Result;
use crate::exec::Execution;
use crate::nt;
use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};

/// Pinned statistical tolerance for sampled weight frequencies.
pub const SIGMA_TOLERANCE: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MethodOutcome {
    Computed(WeightDistribution),
    Skipped(String),
    Failed(String),
}

impl MethodOutcome {
    fn from_result(result: Result<WeightDistribution>) -> Self {
        match result {
            Ok(wd) => MethodOutcome::Computed(wd),
            Err(crate::Error::CapExceeded { size, cap }) => {
                MethodOutcome::Skipped(format!("{size} inputs exceed cap {cap}"))
            }
            Err(e) => MethodOutcome::Failed(e.to_string()),
        }
    }

    pub fn distribution(&self) -> Option<&WeightDistribution> {
        match self {
            MethodOutcome::Computed(wd) => Some(wd),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Per-weight comparison of sampled frequencies with a reference distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingReport {
    pub samples: u64,
    pub seed: u64,
    /// sampled weights absent from the reference distribution
    pub outside_support: Vec<u64>,
    /// (weight, observed, expected, |observed - expected| / σ)
    pub classes: Vec<(u64, u64, f64, f64)>,
    pub max_deviation_sigma: f64,
    pub error: Option<String>,
}

impl SamplingReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.outside_support.is_empty() && self.max_deviation_sigma <= SIGMA_TOLERANCE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub classification: CaseClassification,
    pub naive: MethodOutcome,
    pub tsum: MethodOutcome,
    pub closed: MethodOutcome,
    /// at least one method ran and all that ran agree
    pub agreed: bool,
    pub first_difference: Option<String>,
    pub invariants: Vec<InvariantCheck>,
    pub sampling: Option<SamplingReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.agreed
            && self.invariants.iter().all(|c| c.passed)
            && self.sampling.as_ref().is_none_or(SamplingReport::passed)
            && ![&self.naive, &self.tsum, &self.closed].iter().any(|m| matches!(m, MethodOutcome::Failed(_)))
    }

    /// The first available distribution, preferring the closed form.
    pub fn reference(&self) -> Option<&WeightDistribution> {
        [&self.closed, &self.tsum, &self.naive].into_iter().find_map(MethodOutcome::distribution)
    }
}

/// Claimed minimum distance of the applicable table, where one is stated.
pub fn claimed_min_distance(code: &Code, case: &Case) -> Option<u64> {
    let p = code.params();
    let (q, r, e, t) = (p.q as u128, p.r as u128, code.e() as u128, code.t() as u128);
    let den = p.delta as u128 * e * q;
    let value = match case {
        Case::Thm1 => (q - 1) * r,
        Case::Thm3 => (q - 1) * r * (e - t + 1),
        Case::Thm4 => {
            let sqrt_r = nt::exact_sqrt(p.r)? as u128;
            // 2(q-1)(r - √r)/(3qδ) with e = 3
            2 * (q - 1) * (r - sqrt_r)
        }
        _ => return None,
    };
    (value % den == 0).then(|| (value / den) as u64)
}

/// Upper bound C(μ+e, e) - 1 on the number of nonzero weights for t = e.
pub fn weight_count_bound(code: &Code) -> Option<BigUint> {
    if code.t() != code.e() {
        return None;
    }
    let mu = periods_exact(code.tower(), code.params().big_n).ok()?.distinct().ok()?.len() as u64;
    Some(nt::binomial(mu + code.e(), code.e()) - 1u8)
}

/// Exact identities every distribution of the code must satisfy.
pub fn check_invariants(code: &Code, case: &Case, wd: &WeightDistribution) -> Vec<InvariantCheck> {
    let p = code.params();
    let inputs = BigUint::from(p.r).pow(code.t() as u32);
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(InvariantCheck { name: name.to_string(), passed, detail })
    };
    push("total", wd.total() == inputs, format!("sum of frequencies {} vs r^t = {inputs}", wd.total()));
    let a0 = wd.frequency(0);
    push("zero word", a0 == BigUint::from(1u8), format!("A_0 = {a0}"));
    let moment = BigUint::from(p.n) * &inputs * (p.q - 1) / p.q;
    push(
        "first moment",
        wd.first_moment() == moment,
        format!("sum w*A_w = {} vs n*r^t*(q-1)/q = {moment}", wd.first_moment()),
    );
    if let Some(d) = claimed_min_distance(code, case) {
        push("minimum distance", wd.min_distance() == Some(d), format!("d = {:?}, claimed {d}", wd.min_distance()));
    }
    if let Some(bound) = weight_count_bound(code) {
        let count = BigUint::from(wd.nonzero_weight_count());
        push("weight count bound", count <= bound, format!("{count} nonzero weights, bound {bound}"));
    }
    checks
}

/// Compares sampled weights with `reference`.
pub fn sampling_check(code: &Code, reference: &WeightDistribution, samples: u64, seed: u64, exec: Execution) -> Result<SamplingReport> {
    let observed = sample_weights(code, samples, seed, exec)?;
    let total = reference.total().to_f64().unwrap_or(f64::INFINITY);
    let outside_support = observed.keys().copied().filter(|&w| reference.frequency(w) == BigUint::default()).collect();
    let mut classes = Vec::new();
    let mut max_dev = 0.0f64;
    for (w, freq) in reference.entries() {
        let prob = freq.to_f64().unwrap_or(0.0) / total;
        let expected = prob * samples as f64;
        let sigma = (samples as f64 * prob * (1.0 - prob)).sqrt();
        let got = observed.get(w).copied().unwrap_or(0);
        let diff = (got as f64 - expected).abs();
        let dev = if sigma > 0.0 {
            diff / sigma
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        max_dev = max_dev.max(dev);
        classes.push((*w, got, expected, dev));
    }
    Ok(SamplingReport { samples, seed, outside_support, classes, max_deviation_sigma: max_dev, error: None })
}

/// Runs every method allowed by `caps`, compares them exactly and checks the
/// invariants. When no enumeration fits the caps, the closed form is
/// spot-checked against `caps.samples` random codewords.
pub fn cross_verify(code: &Code, caps: &Caps, exec: Execution) -> VerificationReport {
    let classification = classify(code);
    let naive = MethodOutcome::from_result(wd_naive(code, caps.naive, exec));
    let tsum = MethodOutcome::from_result(
        periods_exact(code.tower(), code.params().big_n).and_then(|periods| wd_tsum(code, &periods, caps.tsum, exec)),
    );
    let closed = if classification.case.is_supported() {
        MethodOutcome::from_result(wd_closed(code, &classification))
    } else {
        MethodOutcome::Skipped(classification.to_string())
    };

    let computed: Vec<&WeightDistribution> =
        [&closed, &tsum, &naive].into_iter().filter_map(MethodOutcome::distribution).collect();
    let first_difference = computed.windows(2).find_map(|w| w[0].first_difference(w[1]));
    let agreed = !computed.is_empty() && first_difference.is_none();

    let invariants = computed
        .iter()
        .take(1)
        .flat_map(|wd| check_invariants(code, &classification.case, wd))
        .collect();

    let enumerated = naive.distribution().is_some() || tsum.distribution().is_some();
    let sampling = match (enumerated, closed.distribution()) {
        (false, Some(reference)) if caps.samples > 0 => Some(
            sampling_check(code, reference, caps.samples, caps.seed, exec).unwrap_or_else(|e| SamplingReport {
                samples: 0,
                seed: caps.seed,
                outside_support: vec![],
                classes: vec![],
                max_deviation_sigma: f64::INFINITY,
                error: Some(e.to_string()),
            }),
        ),
        _ => None,
    };
    VerificationReport { classification, naive, tsum, closed, agreed, first_difference, invariants, sampling }
}
