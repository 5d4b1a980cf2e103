use num_bigint::BigUint;
use parkfiber::enumerator::{self, OracleOptions};
use parkfiber::fibers::pref_counts;
use parkfiber::par::Jobs;
use parkfiber::perm::factorial;
use parkfiber::types::lengths_from_signed;
use parkfiber::{
    fiber, fiber_table, generate_lengths, identity_fiber_sequence, outcome, ps_total_product,
    simulate, total_sum, validate, Budget, CarLengths, FamilySpec, ParkingOrder, ParkingResult,
    Rule,
};
use serde_json::{json, Value};

use crate::output::Output;
use crate::{CliError, Method};

pub type CmdResult = Result<(Output, Status), CliError>;

/// Non-error outcomes that still set a nonzero exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ParkingFailed,
    Mismatch,
}

fn joined<T: ToString>(values: impl IntoIterator<Item = T>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_order(lengths: &CarLengths, sigma: &[usize]) -> Result<ParkingOrder, CliError> {
    let order = ParkingOrder::new(sigma.to_vec())?;
    if order.len() != lengths.len() {
        return Err(CliError::Invalid(format!(
            "sigma has {} entries but there are {} cars",
            order.len(),
            lengths.len()
        )));
    }
    Ok(order)
}

fn check_orders_budget(n: usize, budget: Budget) -> Result<(), CliError> {
    let needed = factorial(n);
    if needed > BigUint::from(budget.0) {
        return Err(parkfiber::Error::BudgetExceeded {
            required: needed,
            cap: budget.0,
        }
        .into());
    }
    Ok(())
}

pub fn simulate_cmd(lengths: &[i64], prefs: &[i64], rule: Rule) -> CmdResult {
    let (y, x) = validate(lengths, prefs)?;
    let input = json!({ "lengths": y.as_slice(), "prefs": x.as_slice(), "rule": rule.as_str() });
    match simulate(&y, &x, rule) {
        ParkingResult::Parked(assignment) => {
            let order = outcome(&y, &assignment)?;
            let cars: Vec<Value> = (1..=y.len())
                .map(|c| json!({ "car": c, "length": y.length(c), "start": assignment.start(c) }))
                .collect();
            let result = json!({
                "status": "parked",
                "assignment": cars,
                "outcome": order.as_slice(),
            });
            let mut out = Output::new("simulate", input, result);
            out.csv_header = vec!["car", "length", "preference", "start", "position"];
            let position =
                |car: usize| order.as_slice().iter().position(|&c| c == car).unwrap() + 1;
            out.csv_rows = (1..=y.len())
                .map(|c| {
                    vec![
                        c.to_string(),
                        y.length(c).to_string(),
                        x.pref(c).to_string(),
                        assignment.start(c).to_string(),
                        position(c).to_string(),
                    ]
                })
                .collect();
            out.plain = (1..=y.len())
                .map(|c| {
                    format!(
                        "car {c} (length {}) -> spot {}",
                        y.length(c),
                        assignment.start(c)
                    )
                })
                .collect();
            out.plain.push(format!("outcome: {order}"));
            Ok((out, Status::Ok))
        }
        ParkingResult::Failed { car, reason } => {
            let result = json!({ "status": "failed", "car": car, "reason": reason.as_str() });
            let mut out = Output::new("simulate", input, result);
            out.csv_header = vec!["car", "reason"];
            out.csv_rows = vec![vec![car.to_string(), reason.to_string()]];
            out.plain = vec![format!("failure: car {car}, {reason}")];
            Ok((out, Status::ParkingFailed))
        }
    }
}

pub fn fiber_cmd(lengths: &[i64], sigma: &[usize], rule: Rule) -> CmdResult {
    let y = lengths_from_signed(lengths)?;
    let order = parse_order(&y, sigma)?;
    let per = pref_counts(&y, &order, rule)?;
    let total = fiber(&y, &order, rule)?;
    let input =
        json!({ "lengths": y.as_slice(), "sigma": order.as_slice(), "rule": rule.as_str() });
    let result = json!({
        "pref_counts": per.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "fiber": total.to_string(),
    });
    let mut out = Output::new("fiber", input, result);
    out.csv_header = vec!["position", "car", "pref_count"];
    out.csv_rows = per
        .iter()
        .enumerate()
        .map(|(k, c)| {
            vec![
                (k + 1).to_string(),
                order.at(k + 1).to_string(),
                c.to_string(),
            ]
        })
        .collect();
    out.csv_rows
        .push(vec!["product".into(), String::new(), total.to_string()]);
    out.plain = vec![
        format!("per-car: {}", joined(&per)),
        format!("fiber: {total}"),
    ];
    Ok((out, Status::Ok))
}

pub fn total_cmd(
    lengths: &[i64],
    rule: Rule,
    method: Method,
    budget: Budget,
    jobs: Jobs,
) -> CmdResult {
    let y = lengths_from_signed(lengths)?;
    let total = match (method, rule) {
        (Method::Product, Rule::Sequence) => ps_total_product(&y),
        (Method::Product, Rule::Assortment) => {
            return Err(CliError::Invalid(
                "no product formula exists for parking assortments; use --method sum".into(),
            ))
        }
        (Method::Sum, _) => {
            check_orders_budget(y.len(), budget)?;
            total_sum(&y, rule, jobs)
        }
    };
    let method_name = match method {
        Method::Product => "product",
        Method::Sum => "sum",
    };
    let input = json!({ "lengths": y.as_slice(), "rule": rule.as_str(), "method": method_name });
    let mut out = Output::new("total", input, json!({ "total": total.to_string() }));
    out.csv_header = vec!["rule", "method", "total"];
    out.csv_rows = vec![vec![
        rule.to_string(),
        method_name.into(),
        total.to_string(),
    ]];
    out.plain = vec![format!("total: {total}")];
    Ok((out, Status::Ok))
}

pub fn table_cmd(lengths: &[i64], budget: Budget) -> CmdResult {
    let y = lengths_from_signed(lengths)?;
    check_orders_budget(y.len(), budget)?;
    let ps = fiber_table(&y, Rule::Sequence);
    let pa = fiber_table(&y, Rule::Assortment);
    let (ps_total, pa_total) = (ps.total(), pa.total());

    let rows: Vec<(String, String, String)> = ps
        .entries
        .iter()
        .map(|(order, c)| (order.to_string(), c.to_string(), pa.get(order).to_string()))
        .collect();
    let result = json!({
        "rows": rows
            .iter()
            .map(|(s, p, a)| json!({ "sigma": s, "ps_fiber": p, "pa_fiber": a }))
            .collect::<Vec<_>>(),
        "totals": { "ps": ps_total.to_string(), "pa": pa_total.to_string() },
    });
    let mut out = Output::new("table", json!({ "lengths": y.as_slice() }), result);
    out.csv_header = vec!["sigma", "ps_fiber", "pa_fiber"];
    out.csv_rows = rows
        .iter()
        .map(|(s, p, a)| vec![s.clone(), p.clone(), a.clone()])
        .collect();
    out.csv_rows.push(vec![
        "total".into(),
        ps_total.to_string(),
        pa_total.to_string(),
    ]);

    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(5);
    out.plain.push(format!(
        "{:<width$}  {:>12}  {:>12}",
        "sigma", "ps_fiber", "pa_fiber"
    ));
    for (s, p, a) in &rows {
        out.plain.push(format!("{s:<width$}  {p:>12}  {a:>12}"));
    }
    out.plain.push(format!(
        "{:<width$}  {ps_total:>12}  {pa_total:>12}",
        "total"
    ));
    Ok((out, Status::Ok))
}

pub fn oracle_cmd(
    lengths: &[i64],
    rule: Rule,
    sigma: Option<&[usize]>,
    list_witnesses: bool,
    budget: Budget,
    jobs: Jobs,
) -> CmdResult {
    let y = lengths_from_signed(lengths)?;
    match sigma {
        Some(sigma) => oracle_witnesses(&y, rule, sigma, list_witnesses, budget, jobs),
        None => oracle_full(&y, rule, budget, jobs),
    }
}

fn verdict_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn oracle_full(y: &CarLengths, rule: Rule, budget: Budget, jobs: Jobs) -> CmdResult {
    let opts = OracleOptions {
        collect_witnesses: false,
        budget,
        jobs,
    };
    let report = enumerator::brute_force(y, rule, opts)?;
    let formula = fiber_table(y, rule);
    let verdict = enumerator::compare(&formula, &report);
    let pass = verdict.passed();

    let fibers: Vec<Value> = report
        .fibers
        .entries
        .iter()
        .map(|(order, c)| {
            json!({
                "sigma": order.to_string(),
                "oracle": c.to_string(),
                "formula": formula.get(order).to_string(),
            })
        })
        .collect();
    let mismatches: Vec<Value> = verdict
        .mismatches
        .iter()
        .map(|m| {
            json!({
                "sigma": m.order.to_string(),
                "oracle": m.oracle.to_string(),
                "formula": m.formula.to_string(),
            })
        })
        .collect();
    let input = json!({ "lengths": y.as_slice(), "rule": rule.as_str() });
    let result = json!({
        "verdict": verdict_word(pass),
        "total": report.total.to_string(),
        "formula_total": verdict.formula_total.to_string(),
        "simulations": report.simulations,
        "checked": verdict.checked,
        "fibers": fibers,
        "mismatches": mismatches,
    });
    let mut out = Output::new("oracle", input, result);
    out.csv_header = vec!["sigma", "oracle", "formula", "match"];
    out.csv_rows = report
        .fibers
        .entries
        .iter()
        .map(|(order, c)| {
            let f = formula.get(order);
            vec![
                order.to_string(),
                c.to_string(),
                f.to_string(),
                (f == *c).to_string(),
            ]
        })
        .collect();
    out.csv_rows.push(vec![
        "total".into(),
        report.total.to_string(),
        verdict.formula_total.to_string(),
        pass.to_string(),
    ]);
    out.plain = vec![
        format!(
            "{}: oracle agrees with formulas on {}/{} orders",
            verdict_word(pass),
            verdict.checked - verdict.mismatches.len(),
            verdict.checked
        ),
        format!("total: {}", report.total),
        format!("simulations: {}", report.simulations),
    ];
    for m in &verdict.mismatches {
        out.plain.push(format!(
            "mismatch at {}: oracle {}, formula {}",
            m.order, m.oracle, m.formula
        ));
    }
    Ok((out, if pass { Status::Ok } else { Status::Mismatch }))
}

fn oracle_witnesses(
    y: &CarLengths,
    rule: Rule,
    sigma: &[usize],
    list: bool,
    budget: Budget,
    jobs: Jobs,
) -> CmdResult {
    let order = parse_order(y, sigma)?;
    let witnesses = enumerator::fiber_witnesses(y, &order, rule, budget, jobs)?;
    let formula = fiber(y, &order, rule)?;
    let count = BigUint::from(witnesses.len());
    let pass = count == formula;

    let input =
        json!({ "lengths": y.as_slice(), "rule": rule.as_str(), "sigma": order.as_slice() });
    let mut result = json!({
        "verdict": verdict_word(pass),
        "witness_count": witnesses.len(),
        "formula": formula.to_string(),
    });
    if list {
        result["witnesses"] = json!(witnesses.iter().map(|x| x.as_slice()).collect::<Vec<_>>());
    }
    let mut out = Output::new("oracle", input, result);
    out.csv_header = vec!["sigma", "witness_count", "formula", "match"];
    out.csv_rows = vec![vec![
        order.to_string(),
        witnesses.len().to_string(),
        formula.to_string(),
        pass.to_string(),
    ]];
    out.plain = vec![
        format!("{}: sigma {order}", verdict_word(pass)),
        format!("witness count: {}", witnesses.len()),
        format!("formula: {formula}"),
    ];
    if list {
        out.plain.extend(witnesses.iter().map(|x| x.to_string()));
    }
    Ok((out, if pass { Status::Ok } else { Status::Mismatch }))
}

pub fn sequence_cmd(family: &str, max_n: usize) -> CmdResult {
    let spec: FamilySpec = family.parse()?;
    if max_n == 0 {
        return Err(CliError::Invalid("--max-n must be at least 1".into()));
    }
    let fibers = identity_fiber_sequence(&spec, max_n)?;
    let rows: Vec<(usize, CarLengths, String)> = fibers
        .iter()
        .enumerate()
        .map(|(k, f)| Ok((k + 1, generate_lengths(&spec, k + 1)?, f.to_string())))
        .collect::<Result<_, parkfiber::Error>>()?;

    let input = json!({ "family": spec.name(), "max_n": max_n });
    let result = json!({
        "rows": rows
            .iter()
            .map(|(n, y, f)| json!({ "n": n, "lengths": y.as_slice(), "identity_fiber": f }))
            .collect::<Vec<_>>(),
    });
    let mut out = Output::new("sequence", input, result);
    out.csv_header = vec!["n", "lengths", "identity_fiber"];
    out.csv_rows = rows
        .iter()
        .map(|(n, y, f)| vec![n.to_string(), y.to_string(), f.clone()])
        .collect();
    out.plain = rows
        .iter()
        .map(|(n, y, f)| format!("n={n} lengths={y} identity_fiber={f}"))
        .collect();
    out.plain
        .push(format!("sequence: {}", joined(rows.iter().map(|r| &r.2))));
    Ok((out, Status::Ok))
}
