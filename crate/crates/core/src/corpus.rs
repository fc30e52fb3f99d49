//! Reference codes with fully known parameters, polynomials and weight
//! enumerators, and a runner that rebuilds and checks each of them.

use crate::codes::{Code, CodeSpec};
use crate::cyclotomy::periods_exact;
use crate::error::Result;
use crate::exec::Execution;
use crate::weights::{
    classify, parse_enumerator, sampling_check, wd_closed, wd_naive, wd_tsum, Caps, WeightDistribution,
};
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenExample {
    pub name: &'static str,
    pub spec: CodeSpec,
    pub a_i: Vec<u64>,
    pub delta: u64,
    pub n: u64,
    pub big_n: u64,
    /// h_{a_i}(x), highest degree first
    pub h_i: Vec<&'static str>,
    pub h: &'static str,
    /// (n, κ, d)
    pub parameters: (u64, u64, u64),
    pub enumerator: &'static str,
    pub classification: &'static str,
}

pub fn golden_examples() -> Vec<GoldenExample> {
    vec![
        GoldenExample {
            name: "ternary-26",
            spec: CodeSpec::consecutive(3, 1, 3, 2, 2, 1).with_modulus(&[1, 2, 0, 1]),
            a_i: vec![1, 14],
            delta: 1,
            n: 26,
            big_n: 1,
            h_i: vec!["x^3 + 2x^2 + 1", "x^3 + x^2 + 2"],
            h: "x^6 + 2x^4 + 2x^2 + 2",
            parameters: (26, 6, 9),
            enumerator: "1 + 52z^9 + 676z^18",
            classification: "thm1",
        },
        GoldenExample {
            name: "gf7-48",
            spec: CodeSpec::consecutive(7, 1, 2, 2, 2, 1).with_modulus(&[3, 6, 1]),
            a_i: vec![1, 25],
            delta: 1,
            n: 48,
            big_n: 2,
            h_i: vec!["x^2 + 2x + 5", "x^2 + 5x + 5"],
            h: "x^4 + 6x^2 + 4",
            parameters: (48, 4, 18),
            enumerator: "1 + 48z^18 + 48z^24 + 576z^36 + 1152z^42 + 576z^48",
            classification: "thm2-cor1-order2",
        },
        GoldenExample {
            name: "gf5-24",
            spec: CodeSpec::consecutive(5, 1, 2, 3, 3, 1).with_modulus(&[2, 4, 1]),
            a_i: vec![1, 9, 17],
            delta: 1,
            n: 24,
            big_n: 3,
            h_i: vec!["x^2 + 2x + 3", "x^2 + 3", "x^2 + 3x + 3"],
            h: "x^6 + 2",
            parameters: (24, 6, 4),
            enumerator: "1 + 24z^4 + 240z^8 + 1280z^12 + 3840z^16 + 6144z^20 + 4096z^24",
            classification: "thm2-cor2-semiprimitive",
        },
        GoldenExample {
            name: "gf7-342",
            spec: CodeSpec::consecutive(7, 1, 3, 3, 3, 1).with_modulus(&[4, 0, 6, 1]),
            a_i: vec![1, 115, 229],
            delta: 1,
            n: 342,
            big_n: 3,
            h_i: vec!["x^3 + 5x + 2", "x^3 + 3x + 2", "x^3 + 6x + 2"],
            h: "x^9 + 6x^6 + 4x^3 + 1",
            parameters: (342, 9, 90),
            enumerator: "1 + 342z^90 + 342z^96 + 342z^108 + 38988z^180 + 77976z^186 + 38988z^192 \
                + 77976z^198 + 77976z^204 + 38988z^216 + 1481544z^270 + 4444632z^276 + 4444632z^282 \
                + 5926176z^288 + 8889264z^294 + 4444632z^300 + 4444632z^306 + 4444632z^312 + 1481544z^324",
            classification: "thm2-cor3-order3",
        },
        GoldenExample {
            name: "binary-63",
            spec: CodeSpec::consecutive(2, 1, 6, 7, 7, 1).with_modulus(&[1, 1, 0, 1, 1, 0, 1]),
            a_i: vec![1, 10, 19, 28, 37, 46, 55],
            delta: 1,
            n: 63,
            big_n: 7,
            h_i: vec![
                "x^6 + x^5 + x^3 + x^2 + 1",
                "x^6 + x^5 + 1",
                "x^6 + x^5 + x^2 + x + 1",
                "x^6 + x^3 + 1",
                "x^6 + x^5 + x^4 + x + 1",
                "x^6 + x + 1",
                "x^6 + x^4 + x^3 + x + 1",
            ],
            h: "x^42 + x^21 + 1",
            parameters: (63, 42, 2),
            enumerator: "1 + 63z^2 + 1890z^4 + 35910z^6 + 484785z^8 + 4944807z^10 + 39558456z^12 \
                + 254304360z^14 + 1335097890z^16 + 5785424190z^18 + 20827527084z^20 + 62482581252z^22 \
                + 156206453130z^24 + 324428787270z^26 + 556163635320z^28 + 778629089448z^30 \
                + 875957725629z^32 + 772903875555z^34 + 515269250370z^36 + 244074908070z^38 \
                + 73222472421z^40 + 10460353203z^42",
            classification: "thm2-cor4-index2",
        },
        GoldenExample {
            name: "gf7-24",
            spec: CodeSpec::consecutive(7, 1, 2, 3, 2, 2).with_modulus(&[3, 6, 1]),
            a_i: vec![2, 18],
            delta: 2,
            n: 24,
            big_n: 2,
            h_i: vec!["x^2 + 6x + 4", "x^2 + 3x + 1"],
            h: "x^4 + 2x^3 + 2x^2 + 4x + 4",
            parameters: (24, 4, 12),
            enumerator: "1 + 72z^12 + 72z^16 + 264z^18 + 864z^20 + 864z^22 + 264z^24",
            classification: "thm4",
        },
    ]
}

/// One compared field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub name: String,
    pub passed: bool,
    /// methods whose distribution was compared with the expected enumerator
    pub methods: Vec<String>,
    pub checks: Vec<FieldCheck>,
}

impl ExampleReport {
    pub fn failures(&self) -> impl Iterator<Item = &FieldCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub examples: Vec<ExampleReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.examples.iter().all(|e| e.passed)
    }

    pub fn pass_count(&self) -> usize {
        self.examples.iter().filter(|e| e.passed).count()
    }
}

struct Checker(Vec<FieldCheck>);

impl Checker {
    fn check(&mut self, field: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let passed = expected == actual;
        self.0.push(FieldCheck { field: field.into(), expected, actual, passed });
    }

    fn fail(&mut self, field: impl Into<String>, expected: impl ToString, error: impl ToString) {
        self.0.push(FieldCheck {
            field: field.into(),
            expected: expected.to_string(),
            actual: format!("error: {}", error.to_string()),
            passed: false,
        });
    }

    fn distribution(&mut self, method: &str, expected: &WeightDistribution, actual: Result<WeightDistribution>) {
        match actual {
            Ok(wd) => {
                let detail = wd.first_difference(expected).unwrap_or_else(|| "identical".into());
                self.0.push(FieldCheck {
                    field: format!("{method} enumerator"),
                    expected: expected.enumerator(),
                    actual: if detail == "identical" { wd.enumerator() } else { format!("{} ({detail})", wd.enumerator()) },
                    passed: wd == *expected,
                });
            }
            Err(e) => self.fail(format!("{method} enumerator"), expected.enumerator(), e),
        }
    }
}

/// Rebuilds one example and compares every expected field.
pub fn run_example(example: &GoldenExample, caps: &Caps, exec: Execution) -> ExampleReport {
    let mut c = Checker(Vec::new());
    let mut methods = Vec::new();
    let code = match Code::new(example.spec.clone()) {
        Ok(code) => code,
        Err(e) => {
            c.fail("construction", "a valid code", e);
            return ExampleReport { name: example.name.into(), passed: false, methods, checks: c.0 };
        }
    };
    let p = code.params();
    c.check("a_i", format!("{:?}", example.a_i), format!("{:?}", p.a_i));
    c.check("delta", example.delta, p.delta);
    c.check("n", example.n, p.n);
    c.check("N", example.big_n, p.big_n);
    match code.build_polynomials() {
        Ok(polys) => {
            for (i, expected) in example.h_i.iter().enumerate() {
                let actual = polys.h_i.get(i).map(|f| f.display(code.tower())).unwrap_or_default();
                c.check(format!("h_a{}", i + 1), expected, actual);
            }
            c.check("h", example.h, polys.h.display(code.tower()));
        }
        Err(e) => c.fail("polynomials", example.h, e),
    }
    let classification = classify(&code);
    c.check("classification", example.classification, classification.case.tag());

    let expected = match parse_enumerator(example.enumerator) {
        Ok(entries) => WeightDistribution::from_counts(example.parameters.0, example.parameters.1, entries),
        Err(e) => {
            c.fail("enumerator", example.enumerator, e);
            return ExampleReport { name: example.name.into(), passed: false, methods, checks: c.0 };
        }
    };
    c.check(
        "[n, k, d]",
        format!("[{}, {}, {}]", example.parameters.0, example.parameters.1, example.parameters.2),
        expected.summary(),
    );
    c.check("dimension", example.parameters.1, code.dimension());
    c.check("total frequency", BigUint::from(p.r).pow(code.t() as u32), expected.total());

    let closed = wd_closed(&code, &classification);
    if let Ok(wd) = &closed {
        c.check("[n, k, d] (closed form)", expected.summary(), wd.summary());
    }
    c.distribution("closed", &expected, closed);
    methods.push("closed".to_string());

    let size = (p.r as u128).pow(code.t() as u32);
    if size <= caps.tsum as u128 {
        let tsum = periods_exact(code.tower(), p.big_n).and_then(|periods| wd_tsum(&code, &periods, caps.tsum, exec));
        c.distribution("tsum", &expected, tsum);
        methods.push("tsum".to_string());
    }
    if size <= caps.naive as u128 {
        c.distribution("naive", &expected, wd_naive(&code, caps.naive, exec));
        methods.push("naive".to_string());
    }
    if size > caps.naive.max(caps.tsum) as u128 && caps.samples > 0 {
        match sampling_check(&code, &expected, caps.samples, caps.seed, exec) {
            Ok(report) => {
                c.check("sampled weights outside support", "[]", format!("{:?}", report.outside_support));
                c.check(
                    "sampled frequencies within tolerance",
                    true,
                    report.max_deviation_sigma <= crate::weights::SIGMA_TOLERANCE,
                );
                methods.push(format!("sampling({})", caps.samples));
            }
            Err(e) => c.fail("sampling", "a sample", e),
        }
    }
    let passed = c.0.iter().all(|f| f.passed);
    ExampleReport { name: example.name.into(), passed, methods, checks: c.0 }
}

/// Runs every golden example.
pub fn run_corpus(caps: &Caps, exec: Execution) -> CorpusReport {
    CorpusReport { examples: golden_examples().iter().map(|ex| run_example(ex, caps, exec)).collect() }
}
