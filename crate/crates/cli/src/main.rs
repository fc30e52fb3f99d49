mod args;
mod report;

use args::{Cli, CodeArgs, Command, FieldArgs, Method, OrderArgs, PeriodArgs, VerifyArgs, WeightArgs};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use cyclotome::corpus::run_corpus;
use cyclotome::cyclotomy::{cyclotomic_numbers, detect_variant, order_two_cyclotomic_numbers, periods_closed_form, periods_exact};
use cyclotome::weights::{classify, cross_verify, wd_closed, wd_naive, wd_tsum};
use cyclotome::{Caps, Code, CodeSpec, Error, Execution, FieldTower, WeightDistribution};
use serde_json::{json, Value};
use std::process::ExitCode;

/// Outcome of a subcommand: what to print and whether it counts as success.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    validate(&cli.command);
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values always serialize"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Flag checks that need no field arithmetic; failures are usage errors.
fn validate(command: &Command) {
    let code = match command {
        Command::Params(code) => Some(code),
        Command::Weights(w) => Some(&w.code),
        Command::Verify(v) => Some(&v.code),
        _ => None,
    };
    if let Some(code) = code {
        if let Some(deltas) = &code.delta {
            if deltas.len() as u64 != code.t {
                Cli::command()
                    .error(
                        ErrorKind::ValueValidation,
                        format!("--delta has {} entries but --t is {}", deltas.len(), code.t),
                    )
                    .exit();
            }
        }
        if code.t < 1 || code.t > code.e {
            Cli::command()
                .error(ErrorKind::ValueValidation, format!("need 1 <= t <= e, got t = {}, e = {}", code.t, code.e))
                .exit();
        }
    }
    if let Command::Periods(PeriodArgs { order, .. }) | Command::Cyclonum(order) = command {
        if order.order == 0 {
            Cli::command().error(ErrorKind::ValueValidation, "--L must be positive").exit();
        }
    }
}

fn run(command: &Command) -> Result<Output, Error> {
    match command {
        Command::Params(code) => params(code),
        Command::Periods(args) => periods(args),
        Command::Cyclonum(args) => cyclonum(args),
        Command::Weights(args) => weights(args),
        Command::Verify(args) => verify(args),
        Command::Corpus(caps) => corpus(&caps.caps()),
    }
}

fn spec_of(args: &CodeArgs) -> CodeSpec {
    let f = &args.field;
    CodeSpec {
        p: f.p,
        s: f.s,
        m: f.m,
        e: args.e,
        t: args.t,
        a: args.a,
        deltas: args.delta.clone().unwrap_or_else(|| (0..args.t).collect()),
        modulus: f.modulus.clone(),
    }
}

fn tower_of(f: &FieldArgs) -> Result<FieldTower, Error> {
    FieldTower::build(f.p, f.s, f.m, f.modulus.as_deref())
}

fn params(args: &CodeArgs) -> Result<Output, Error> {
    let code = Code::new(spec_of(args))?;
    let tower = code.tower();
    let p = code.params();
    let report = code.assumptions();
    let polys = code.build_polynomials();

    let mut text = format!(
        "GF({}) over GF({}), modulus {}\n",
        p.r,
        p.q,
        cyclotome::gf::format_coefficients(tower.modulus())
    );
    text += &format!("a_i = {:?}\ndelta = {}\nn = {}\nN = {}\ndimension = {}\n", p.a_i, p.delta, p.n, p.big_n, code.dimension());
    text += &report::assumptions_text(&report);
    let mut json = json!({
        "spec": report::resolved_spec(&code),
        "q": p.q,
        "r": p.r,
        "a_i": p.a_i,
        "delta": p.delta,
        "n": p.n,
        "N": p.big_n,
        "k": code.dimension(),
        "assumptions": serde_json::to_value(&report).expect("report serializes"),
    });
    let ok = match &polys {
        Ok(polys) => {
            for (i, h) in polys.h_i.iter().enumerate() {
                text += &format!("h_a{}(x) = {}\n", i + 1, h.display(tower));
            }
            text += &format!("h(x) = {}\ng(x) = {}\n", polys.h.display(tower), polys.g.display(tower));
            json["h_i"] = polys.h_i.iter().map(|h| h.to_coefficient_string(tower)).collect();
            json["h"] = polys.h.to_coefficient_string(tower).into();
            json["g"] = polys.g.to_coefficient_string(tower).into();
            true
        }
        Err(e) => {
            text += &format!("polynomials: {e}\n");
            json["h_i"] = Value::Null;
            json["h"] = Value::Null;
            json["g"] = Value::Null;
            false
        }
    };
    Ok(Output { text, json, ok })
}

fn periods(args: &PeriodArgs) -> Result<Output, Error> {
    let OrderArgs { field, order } = &args.order;
    let tower = tower_of(field)?;
    let exact = periods_exact(&tower, *order)?;
    let mut text = format!("Gaussian periods of order {order} in GF({})\n", tower.r());
    for (i, v) in exact.values().iter().enumerate() {
        text += &format!("eta_{i} = {v}\n");
    }
    text += &format!("modified zero = {}\n", exact.modified_zero());
    let closed = detect_variant(&tower, *order).map(|variant| periods_closed_form(variant, &tower, *order));
    let closed_json = match &closed {
        Some(Ok(cf)) => {
            text += &format!("closed form ({}): {}\n", cf.variant, report::closed_params_text(&cf.params));
            let values: Vec<String> = cf.values.iter().map(ToString::to_string).collect();
            text += &format!("closed-form values = [{}]\n", values.join(", "));
            json!({ "variant": cf.variant.to_string(), "params": report::closed_params_json(&cf.params) })
        }
        Some(Err(e)) => {
            text += &format!("closed form: {e}\n");
            Value::Null
        }
        None => {
            text += "closed form: none applies\n";
            Value::Null
        }
    };
    let mut json = json!({
        "L": order,
        "values": exact.values().iter().map(report::cyclotomic_json).collect::<Vec<_>>(),
        "modified_zero": exact.modified_zero(),
        "closed_form": closed_json,
    });
    if args.tallies {
        text += "trace tallies (count of each trace value 0..p-1 per class):\n";
        for (i, v) in exact.values().iter().enumerate() {
            text += &format!("class {i}: {:?}\n", v.counts());
        }
        json["tallies"] = exact.values().iter().map(|v| json!(v.counts())).collect();
    }
    Ok(Output { text, json, ok: true })
}

fn cyclonum(args: &OrderArgs) -> Result<Output, Error> {
    let tower = tower_of(&args.field)?;
    let numbers = cyclotomic_numbers(&tower, args.order)?;
    let mut text = format!("cyclotomic numbers (i, j) of order {} in GF({})\n", args.order, tower.r());
    for row in &numbers {
        text += &row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t");
        text.push('\n');
    }
    let closed = if args.order == 2 {
        let closed = order_two_cyclotomic_numbers(tower.r())?;
        let agrees = closed.iter().zip(&numbers).all(|(a, b)| a.as_slice() == b.as_slice());
        text += &format!("order-2 closed form {closed:?}: {}\n", if agrees { "agrees" } else { "DIFFERS" });
        json!({ "numbers": closed, "agrees": agrees })
    } else {
        Value::Null
    };
    let ok = closed.get("agrees").and_then(Value::as_bool).unwrap_or(true);
    let json = json!({ "L": args.order, "r": tower.r(), "numbers": numbers, "closed_form": closed });
    Ok(Output { text, json, ok })
}

fn input_space(code: &Code) -> u128 {
    (code.params().r as u128).checked_pow(code.t() as u32).unwrap_or(u128::MAX)
}

fn compute(code: &Code, method: Method, caps: &Caps) -> Result<(Method, WeightDistribution), Error> {
    let exec = Execution::Parallel;
    let tsum = || periods_exact(code.tower(), code.params().big_n).and_then(|pr| wd_tsum(code, &pr, caps.tsum, exec));
    match method {
        Method::Naive => Ok((method, wd_naive(code, caps.naive, exec)?)),
        Method::Tsum => Ok((method, tsum()?)),
        Method::Closed => Ok((method, wd_closed(code, &classify(code))?)),
        Method::Auto => {
            let classification = classify(code);
            let size = input_space(code);
            if classification.case.is_supported() {
                Ok((Method::Closed, wd_closed(code, &classification)?))
            } else if size <= caps.tsum as u128 {
                Ok((Method::Tsum, tsum()?))
            } else if size <= caps.naive as u128 {
                Ok((Method::Naive, wd_naive(code, caps.naive, exec)?))
            } else {
                Err(Error::Unsupported(format!(
                    "{classification}; enumerating {size} inputs exceeds the caps, \
                     raise --max-enum (or CYCLOTOME_MAX_ENUM) to enumerate anyway"
                )))
            }
        }
    }
}

fn weights(args: &WeightArgs) -> Result<Output, Error> {
    let code = Code::new(spec_of(&args.code))?;
    let caps = args.caps.caps();
    let (used, wd) = compute(&code, args.method, &caps)?;
    let classification = classify(&code);
    let method = report::method_name(used);
    let text = format!(
        "{} code over GF({}), {} (method: {method})\n{}\n",
        wd.summary(),
        code.params().q,
        classification.case.tag(),
        wd.enumerator()
    );
    let mut json = report::weights_json(&code, &classification, &wd, true);
    json["methods"] = json!([method]);
    Ok(Output { text, json, ok: true })
}

fn verify(args: &VerifyArgs) -> Result<Output, Error> {
    let code = Code::new(spec_of(&args.code))?;
    let report = cross_verify(&code, &args.caps.caps(), Execution::Parallel);
    let text = report::verification_text(&report);
    let json = match report.reference() {
        Some(wd) => {
            let mut json = report::weights_json(&code, &report.classification, wd, report.agreed);
            json["verification"] = report::verification_json(&report);
            json
        }
        None => json!({
            "spec": report::resolved_spec(&code),
            "classification": report.classification.case.tag(),
            "methods_agreed": false,
            "verification": report::verification_json(&report),
        }),
    };
    Ok(Output { text, json, ok: report.passed() })
}

fn corpus(caps: &Caps) -> Result<Output, Error> {
    let report = run_corpus(caps, Execution::Parallel);
    let mut text = String::new();
    for ex in &report.examples {
        let status = if ex.passed { "PASS" } else { "FAIL" };
        text += &format!("{status} {} ({})\n", ex.name, ex.methods.join(", "));
        for f in ex.failures() {
            text += &format!("  {}: expected {}, got {}\n", f.field, f.expected, f.actual);
        }
    }
    text += &format!("{}/{} examples passed\n", report.pass_count(), report.examples.len());
    let json = json!({
        "passed": report.passed(),
        "examples": serde_json::to_value(&report.examples).expect("report serializes"),
    });
    Ok(Output { text, json, ok: report.passed() })
}
