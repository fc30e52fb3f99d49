use cyclotome::corpus::{golden_examples, run_corpus, run_example};
use cyclotome::weights::Caps;
use cyclotome::Execution;

#[test]
fn default_caps_check_each_example_as_often_as_affordable() {
    let report = run_corpus(&Caps::default(), Execution::Parallel);
    assert_eq!(report.pass_count(), 6, "{:#?}", report.examples.iter().filter(|e| !e.passed).collect::<Vec<_>>());
    let methods: Vec<Vec<String>> = report.examples.iter().map(|e| e.methods.clone()).collect();
    let triple = vec!["closed".to_string(), "tsum".into(), "naive".into()];
    assert_eq!(methods[0], triple);
    assert_eq!(methods[1], triple);
    assert_eq!(methods[2], triple);
    assert_eq!(methods[3], vec!["closed".to_string(), "tsum".into()]);
    assert_eq!(methods[4], vec!["closed".to_string(), "sampling(1000000)".into()]);
    assert_eq!(methods[5], triple);
}

#[test]
fn wrong_polynomial_is_reported() {
    let mut ex = golden_examples().remove(1);
    ex.h = "x^4 + 6x^2 + 3";
    let report = run_example(&ex, &Caps::default().with_enumeration_limit(0), Execution::Sequential);
    let failures: Vec<_> = report.failures().collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].field, "h");
    assert_eq!(failures[0].actual, "x^4 + 6x^2 + 4");
}

#[test]
fn auto_selected_modulus_keeps_the_enumerator() {
    // the enumerator does not depend on the choice of primitive element
    for mut ex in golden_examples() {
        ex.spec.modulus = None;
        let report = run_example(&ex, &Caps { samples: 0, ..Caps::default().with_enumeration_limit(0) }, Execution::Parallel);
        let closed = report.checks.iter().find(|c| c.field == "closed enumerator").unwrap();
        assert!(closed.passed, "{}: {}", ex.name, closed.actual);
    }
}
