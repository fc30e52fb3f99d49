//! Weight distributions: brute-force enumeration, T-sum tallies, closed-form
//! tables, and cross-verification of the three.

mod closed;
mod enumerate;
mod verify;

pub use closed::{thm1_frequency, thm2_table, thm3_frequency, wd_closed};
pub use enumerate::{count_vanishing_patterns, sample_weights, vanishing_pattern_tally, wd_naive, wd_tsum};
pub use verify::{
    check_invariants, claimed_min_distance, cross_verify, sampling_check, weight_count_bound, InvariantCheck,
    MethodOutcome, SamplingReport, VerificationReport, SIGMA_TOLERANCE,
};

use crate::codes::Code;
use crate::cyclotomy::{detect_variant, PeriodVariant};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Enumeration limits and sampling configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Max r^t for naive enumeration.
    pub naive: u64,
    /// Max r^t for T-sum enumeration.
    pub tsum: u64,
    /// Random codewords drawn when enumeration is infeasible.
    pub samples: u64,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { naive: 10_000_000, tsum: 100_000_000, samples: 1_000_000, seed: 0 }
    }
}

impl Caps {
    /// Both enumeration caps set to `limit`.
    pub fn with_enumeration_limit(self, limit: u64) -> Self {
        Caps { naive: limit, tsum: limit, ..self }
    }
}

/// Sorted (weight, frequency) pairs of a code of length n and dimension κ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: u64,
    dimension: u64,
    entries: Vec<(u64, BigUint)>,
}

impl WeightDistribution {
    /// Merges equal weights and drops zero frequencies.
    pub fn from_counts<I>(n: u64, dimension: u64, counts: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigUint)>,
    {
        let mut merged: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (w, c) in counts {
            *merged.entry(w).or_default() += c;
        }
        let entries = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        WeightDistribution { n, dimension, entries }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// κ
    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    pub fn entries(&self) -> &[(u64, BigUint)] {
        &self.entries
    }

    pub fn frequency(&self, weight: u64) -> BigUint {
        self.entries
            .iter()
            .find(|(w, _)| *w == weight)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Least nonzero weight.
    pub fn min_distance(&self) -> Option<u64> {
        self.entries.iter().map(|e| e.0).find(|&w| w > 0)
    }

    pub fn nonzero_weight_count(&self) -> usize {
        self.entries.iter().filter(|e| e.0 > 0).count()
    }

    /// Σ A_w
    pub fn total(&self) -> BigUint {
        self.entries.iter().map(|e| &e.1).sum()
    }

    /// Σ w·A_w
    pub fn first_moment(&self) -> BigUint {
        self.entries.iter().map(|(w, c)| c * *w).sum()
    }

    /// `[n, κ, d]`
    pub fn summary(&self) -> String {
        match self.min_distance() {
            Some(d) => format!("[{}, {}, {}]", self.n, self.dimension, d),
            None => format!("[{}, {}, -]", self.n, self.dimension),
        }
    }

    /// `1 + 52z^9 + 676z^18`
    pub fn enumerator(&self) -> String {
        format_enumerator(&self.entries)
    }

    /// First entry where the two distributions differ, as a readable message.
    pub fn first_difference(&self, other: &WeightDistribution) -> Option<String> {
        if self.n != other.n {
            return Some(format!("lengths differ: {} vs {}", self.n, other.n));
        }
        let weights: std::collections::BTreeSet<u64> =
            self.entries.iter().chain(&other.entries).map(|e| e.0).collect();
        weights.into_iter().find_map(|w| {
            let (a, b) = (self.frequency(w), other.frequency(w));
            (a != b).then(|| format!("A_{w}: {a} vs {b}"))
        })
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.enumerator())
    }
}

pub fn format_enumerator(entries: &[(u64, BigUint)]) -> String {
    entries
        .iter()
        .map(|(w, c)| match *w {
            0 => c.to_string(),
            1 if c == &BigUint::from(1u8) => "z".to_string(),
            1 => format!("{c}z"),
            _ if c == &BigUint::from(1u8) => format!("z^{w}"),
            _ => format!("{c}z^{w}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parses `1 + 52z^9 + 676z^18` (spaces optional) into sorted, merged pairs.
pub fn parse_enumerator(text: &str) -> Result<Vec<(u64, BigUint)>> {
    let bad = |term: &str| Error::InvalidSpec(format!("cannot parse enumerator term {term:?}"));
    let mut out: BTreeMap<u64, BigUint> = BTreeMap::new();
    for raw in text.split('+') {
        let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if term.is_empty() {
            return Err(bad(raw));
        }
        let (coef, weight) = match term.split_once('z') {
            None => (term.as_str(), 0),
            Some((c, rest)) => {
                let w = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').and_then(|x| x.parse().ok()).ok_or_else(|| bad(raw))?
                };
                (c, w)
            }
        };
        let coef = if coef.is_empty() { BigUint::from(1u8) } else { coef.parse().map_err(|_| bad(raw))? };
        *out.entry(weight).or_default() += coef;
    }
    Ok(out.into_iter().collect())
}

/// Source of the Gaussian periods used with the t = e table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PeriodSource {
    Exact,
    Order2,
    Semiprimitive,
    Order3,
    Index2,
}

impl PeriodSource {
    pub fn variant(self) -> Option<PeriodVariant> {
        match self {
            PeriodSource::Exact => None,
            PeriodSource::Order2 => Some(PeriodVariant::Quadratic),
            PeriodSource::Semiprimitive => Some(PeriodVariant::Semiprimitive),
            PeriodSource::Order3 => Some(PeriodVariant::Cubic),
            PeriodSource::Index2 => Some(PeriodVariant::Index2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// t = e, N = 1
    Thm1,
    /// t = e, N ≥ 2
    Thm2(PeriodSource),
    /// t ≤ e, N = 1, every t rows of B independent
    Thm3,
    /// e = 3, t = 2, N = 2
    Thm4,
    Unsupported(String),
}

impl Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Case::Thm1 => "thm1",
            Case::Thm2(PeriodSource::Exact) => "thm2-exact",
            Case::Thm2(PeriodSource::Order2) => "thm2-cor1-order2",
            Case::Thm2(PeriodSource::Semiprimitive) => "thm2-cor2-semiprimitive",
            Case::Thm2(PeriodSource::Order3) => "thm2-cor3-order3",
            Case::Thm2(PeriodSource::Index2) => "thm2-cor4-index2",
            Case::Thm3 => "thm3",
            Case::Thm4 => "thm4",
            Case::Unsupported(_) => "unsupported",
        }
    }

    pub fn is_supported(&self) -> bool {
        !matches!(self, Case::Unsupported(_))
    }
}

/// Which closed form applies, with the reasoning that led there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseClassification {
    pub case: Case,
    pub trace: Vec<String>,
}

impl fmt::Display for CaseClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.case {
            Case::Unsupported(reason) => write!(f, "unsupported ({reason})"),
            case => f.write_str(case.tag()),
        }
    }
}

/// Picks the most specific closed form for a code.
pub fn classify(code: &Code) -> CaseClassification {
    let mut trace = Vec::new();
    let unsupported = |trace: Vec<String>, reason: String| CaseClassification { case: Case::Unsupported(reason), trace };
    let report = code.assumptions();
    if !report.all_hold() {
        return unsupported(trace, format!("main assumptions fail: {}", report.failures.join("; ")));
    }
    trace.push("main assumptions hold".into());
    let (e, t, big_n) = (code.e(), code.t(), code.params().big_n);
    trace.push(format!("e = {e}, t = {t}, N = {big_n}"));
    let case = if t == e {
        if big_n == 1 {
            Case::Thm1
        } else {
            let source = match detect_variant(code.tower(), big_n) {
                Some(PeriodVariant::Quadratic) => PeriodSource::Order2,
                Some(PeriodVariant::Semiprimitive) => PeriodSource::Semiprimitive,
                Some(PeriodVariant::Cubic) => PeriodSource::Order3,
                Some(PeriodVariant::Index2) => PeriodSource::Index2,
                None => {
                    trace.push(format!("no closed form for periods of order {big_n}; using exact periods"));
                    PeriodSource::Exact
                }
            };
            Case::Thm2(source)
        }
    } else if big_n == 1 {
        match code.singular_minor() {
            None => {
                trace.push("every t rows of B are independent".into());
                Case::Thm3
            }
            Some(rows) => return unsupported(trace, format!("rows {rows:?} of B are dependent")),
        }
    } else if e == 3 && t == 2 && big_n == 2 {
        Case::Thm4
    } else {
        return unsupported(trace, format!("t < e with N = {big_n} is covered only for e = 3, t = 2, N = 2"));
    };
    CaseClassification { case, trace }
}

/// r^t as u128, saturating.
pub(crate) fn input_space(code: &Code) -> u128 {
    (code.params().r as u128).checked_pow(code.t() as u32).unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeSpec;

    #[test]
    fn enumerator_round_trip() {
        let parsed = parse_enumerator("1+52z^9+676z^18").unwrap();
        let wd = WeightDistribution::from_counts(26, 6, parsed.clone());
        assert_eq!(wd.enumerator(), "1 + 52z^9 + 676z^18");
        assert_eq!(parse_enumerator(&wd.enumerator()).unwrap(), parsed);
        assert_eq!(wd.summary(), "[26, 6, 9]");
        assert_eq!(wd.total(), BigUint::from(729u32));
        assert_eq!(parse_enumerator("1 + z + 3z^2").unwrap()[1], (1, BigUint::from(1u8)));
        assert!(parse_enumerator("1 + 5y^3").is_err());
        assert!(parse_enumerator("1 + ").is_err());
    }

    #[test]
    fn merging_and_differences() {
        let a = WeightDistribution::from_counts(
            10,
            2,
            [(4, BigUint::from(3u8)), (0, BigUint::from(1u8)), (4, BigUint::from(2u8)), (7, BigUint::zero())],
        );
        assert_eq!(a.entries(), &[(0, BigUint::from(1u8)), (4, BigUint::from(5u8))]);
        let b = WeightDistribution::from_counts(10, 2, [(0, BigUint::from(1u8)), (4, BigUint::from(4u8))]);
        assert_eq!(a.first_difference(&b).unwrap(), "A_4: 5 vs 4");
        assert_eq!(a.first_difference(&a), None);
    }

    #[test]
    fn classification_of_reference_codes() {
        let cases = [
            (CodeSpec::consecutive(3, 1, 3, 2, 2, 1), "thm1"),
            (CodeSpec::consecutive(7, 1, 2, 2, 2, 1), "thm2-cor1-order2"),
            (CodeSpec::consecutive(5, 1, 2, 3, 3, 1), "thm2-cor2-semiprimitive"),
            (CodeSpec::consecutive(7, 1, 3, 3, 3, 1), "thm2-cor3-order3"),
            (CodeSpec::consecutive(2, 1, 6, 7, 7, 1), "thm2-cor4-index2"),
            (CodeSpec::consecutive(7, 1, 2, 3, 2, 2), "thm4"),
            (CodeSpec::consecutive(5, 1, 3, 4, 3, 1), "thm3"),
        ];
        for (spec, tag) in cases {
            let code = Code::new(spec.clone()).unwrap();
            assert_eq!(classify(&code).case.tag(), tag, "{spec:?}");
        }
        let bad = Code::new(CodeSpec::consecutive(3, 1, 3, 2, 2, 13)).unwrap();
        assert!(!classify(&bad).case.is_supported());
    }
}
