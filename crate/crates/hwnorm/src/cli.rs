//! Command-line front end.
//!
//! Subcommands: decompose, ratio, cnorm, unitary, filtration, scan, check,
//! table. Identical invocations produce byte-identical output. Exit
//! status: 0 ok, 1 failed checks, 2 usage/parse errors, 3 conjectural
//! content requested without --conjecture.

use std::collections::BTreeMap;

use hwnorm_core::analysis::{
    filtration, ratio_table, reducible, reducible_scan_table, subquotient_report,
    unitary_scan_table, unitary_set, AnalysisError, ScanOutcome,
};
use hwnorm_core::arith::{parse_rat, Eval, FactoredFn, Rat};
use hwnorm_core::catalog::{FiberSpec, GroupSpec};
use hwnorm_core::decomp::{decompose_upto, ktype_dim, KIndex, KType};
use hwnorm_core::norms::{kernel_coeff, norm_ratio, normalizing_const, NormsError};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::json as jsonv;
use crate::oracle;

pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> CliOutput {
        CliOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(status: i32, msg: String) -> CliOutput {
        CliOutput {
            status,
            stdout: String::new(),
            stderr: msg + "\n",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

struct Request {
    command: String,
    group: Option<String>,
    fiber: Option<String>,
    lambda: Option<Rat>,
    degree: Option<u32>,
    ktype: Option<String>,
    format: Format,
    conjecture: bool,
    eval: bool,
    suite: Option<String>,
}

const USAGE: &str = "usage: hwnorm <command> [flags]
commands:
  decompose   --group G --fiber F [--degree N] [--format text|json|csv]
  ratio       --group G --fiber F --ktype SEL [--lambda L] [--conjecture] [--eval]
  cnorm       --group G --fiber F [--lambda L] [--eval]
  unitary     --group G --fiber F [--format text|json]
  filtration  --group G --fiber F --lambda L [--format text|json]
  scan        --group G --fiber F --lambda L [--degree N] [--conjecture]
  check       [--suite graded|twoform|e6|su11|embedding|gamma|cnorm|all]
  table       --group G --fiber F [--degree N] [--conjecture]
groups: sp:r=2  su:q=2,s=3  sostar:s=5  spin:n=6  e6  e7
fibers: k=1 | k=(2,1) | dual:k=2 | det:k=2 | k=1/2,sign=+ | scalar
K-type selectors: semicolon/comma-separated filters, e.g. m=(1,0);kappa=(1,0) or n=3
environment: HWNORM_MAX_DEGREE caps enumeration (default 12)";

fn parse_args(args: &[String]) -> Result<Request, String> {
    if args.is_empty() {
        return Err(String::from(USAGE));
    }
    let mut req = Request {
        command: args[0].clone(),
        group: None,
        fiber: None,
        lambda: None,
        degree: None,
        ktype: None,
        format: Format::Text,
        conjecture: false,
        eval: false,
        suite: None,
    };
    let mut i = 1;
    while i < args.len() {
        let arg = &args[i];
        let (name, inline) = match arg.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (arg.as_str(), None),
        };
        let mut take = |inline: Option<String>| -> Result<String, String> {
            if let Some(v) = inline {
                return Ok(v);
            }
            i += 1;
            args.get(i)
                .cloned()
                .ok_or_else(|| format!("flag {name} needs a value"))
        };
        match name {
            "--group" => req.group = Some(take(inline)?),
            "--fiber" => req.fiber = Some(take(inline)?),
            "--lambda" => req.lambda = Some(parse_rat(&take(inline)?)?),
            "--degree" => {
                req.degree = Some(
                    take(inline)?
                        .parse()
                        .map_err(|_| String::from("--degree needs a nonnegative integer"))?,
                )
            }
            "--ktype" => req.ktype = Some(take(inline)?),
            "--suite" => req.suite = Some(take(inline)?),
            "--format" => {
                req.format = match take(inline)?.as_str() {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    other => return Err(format!("unknown format \"{other}\"")),
                }
            }
            "--conjecture" => req.conjecture = true,
            "--eval" => req.eval = true,
            other => return Err(format!("unknown flag \"{other}\"\n{USAGE}")),
        }
        i += 1;
    }
    Ok(req)
}

fn max_degree_env() -> u32 {
    std::env::var("HWNORM_MAX_DEGREE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(12)
}

fn group_fiber(req: &Request) -> Result<(GroupSpec, FiberSpec), String> {
    let gtxt = req.group.as_deref().ok_or("missing --group")?;
    let g = GroupSpec::parse(gtxt).map_err(|e| e.to_string())?;
    let ftxt = req.fiber.as_deref().ok_or("missing --fiber")?;
    let f = FiberSpec::parse(&g, ftxt).map_err(|e| e.to_string())?;
    Ok((g, f))
}

fn status_of_norms(e: &NormsError) -> i32 {
    match e {
        NormsError::Conjectural { .. } => 3,
        _ => 2,
    }
}

fn status_of_analysis(e: &AnalysisError) -> i32 {
    match e {
        AnalysisError::Norms(n) => status_of_norms(n),
        _ => 2,
    }
}

/// K-type selector: `m=(1,0);kappa=(1,0)`, `n=3`, `l=1/2` and similar,
/// matched against the enumerated decomposition.
fn select_ktype(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    selector: &str,
    cap: u32,
) -> Result<KType, String> {
    let mut filters: BTreeMap<String, Vec<String>> = BTreeMap::new();
    // split on ';' and on ',' outside parentheses
    let mut parts: Vec<String> = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in selector.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ';' | ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    parts.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        parts.push(cur.trim().to_string());
    }
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("selector \"{part}\": expected key=value"))?;
        let v = v.trim().trim_start_matches('(').trim_end_matches(')');
        let items: Vec<String> = v.split(',').map(|x| x.trim().to_string()).collect();
        filters.insert(k.trim().to_string(), items);
    }
    let matches_vec = |want: &[String], have: &[i64]| -> bool {
        want.len() == have.len()
            && want
                .iter()
                .zip(have)
                .all(|(w, h)| w.parse::<i64>().map(|x| x == *h).unwrap_or(false))
    };
    let kts = decompose_upto(spec, fiber, cap).map_err(|e| e.to_string())?;
    let mut found: Vec<KType> = Vec::new();
    'next: for kt in kts {
        for (key, want) in &filters {
            let ok = match (key.as_str(), &kt.index) {
                ("m", KIndex::Cone { m })
                | ("m", KIndex::Sp { m, .. })
                | ("m", KIndex::SoStar { m, .. })
                | ("m", KIndex::Su { m, .. }) => matches_vec(want, m),
                ("m", KIndex::Spin { m, .. }) => matches_vec(want, &m[..]),
                ("m", KIndex::E6 { m, .. }) => matches_vec(want, &m[..]),
                ("kappa", KIndex::Sp { kappa, .. }) | ("kappa", KIndex::SoStar { kappa, .. }) => {
                    matches_vec(want, kappa)
                }
                ("kappa", KIndex::E6 { kappa, .. }) => matches_vec(want, &kappa[..]),
                ("n", KIndex::Su { n, .. }) => matches_vec(want, n),
                ("l", KIndex::Spin { l, .. }) => {
                    want.len() == 1
                        && hwnorm_core::arith::Half::parse(&want[0])
                            .map(|x| x == *l)
                            .unwrap_or(false)
                }
                _ => false,
            };
            if !ok {
                continue 'next;
            }
        }
        found.push(kt);
    }
    match found.len() {
        1 => Ok(found.pop().expect("len checked")),
        0 => Err(format!(
            "no K-type of degree ≤ {cap} matches \"{selector}\""
        )),
        n => Err(format!(
            "{n} K-types of degree ≤ {cap} match \"{selector}\"; add more filters"
        )),
    }
}

fn append_eval(out: &mut String, f: &FactoredFn, lambda: &Rat, eval: bool) {
    match f.evaluate(lambda) {
        Eval::Value(v) => {
            out.push_str(&format!("at λ={lambda}: {v}"));
            if eval {
                out.push_str(&format!(" ≈ {}", v.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Eval::Zero => out.push_str(&format!("at λ={lambda}: 0")),
        Eval::Pole => out.push_str(&format!("at λ={lambda}: pole")),
    }
    out.push('\n');
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn run(args: &[String]) -> CliOutput {
    let req = match parse_args(args) {
        Ok(r) => r,
        Err(e) => return CliOutput::err(2, e),
    };
    match req.command.as_str() {
        "decompose" => cmd_decompose(&req),
        "ratio" => cmd_ratio(&req),
        "cnorm" => cmd_cnorm(&req),
        "unitary" => cmd_unitary(&req),
        "filtration" => cmd_filtration(&req),
        "scan" => cmd_scan(&req),
        "check" => cmd_check(&req),
        "table" => cmd_table(&req),
        other => CliOutput::err(2, format!("unknown command \"{other}\"\n{USAGE}")),
    }
}

fn cmd_decompose(req: &Request) -> CliOutput {
    let (g, f) = match group_fiber(req) {
        Ok(x) => x,
        Err(e) => return CliOutput::err(2, e),
    };
    let cap = req.degree.unwrap_or_else(max_degree_env);
    let kts = match decompose_upto(&g, &f, cap) {
        Ok(k) => k,
        Err(e) => return CliOutput::err(2, e.to_string()),
    };
    match req.format {
        Format::Json => {
            let arr = Value::Array(kts.iter().map(|kt| jsonv::ktype_json(&g, kt)).collect());
            CliOutput::ok(json_line(&arr))
        }
        Format::Csv => {
            let mut out = String::from("degree,signature,index,multiplicity,dim\n");
            for kt in &kts {
                let idx = serde_json::to_string(&jsonv::index_json(&kt.index)).expect("json");
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    kt.degree,
                    csv_field(&jsonv::signature_text(&kt.signature)),
                    csv_field(&idx),
                    kt.multiplicity,
                    ktype_dim(&g, kt)
                ));
            }
            CliOutput::ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for kt in &kts {
                out.push_str(&format!(
                    "deg {:<3} mult {:<3} dim {:<8} {}\n",
                    kt.degree,
                    kt.multiplicity,
                    ktype_dim(&g, kt),
                    jsonv::signature_text(&kt.signature)
                ));
            }
            CliOutput::ok(out)
        }
    }
}

fn cmd_ratio(req: &Request) -> CliOutput {
    let (g, f) = match group_fiber(req) {
        Ok(x) => x,
        Err(e) => return CliOutput::err(2, e),
    };
    let Some(selector) = req.ktype.as_deref() else {
        return CliOutput::err(2, String::from("ratio needs --ktype"));
    };
    let kt = match select_ktype(&g, &f, selector, max_degree_env()) {
        Ok(kt) => kt,
        Err(e) => return CliOutput::err(2, e),
    };
    let rr = match norm_ratio(&g, &f, &kt, req.conjecture) {
        Ok(rr) => rr,
        Err(e) => return CliOutput::err(status_of_norms(&e), e.to_string()),
    };
    match req.format {
        Format::Json => {
            let mut v = json!({
                "ktype": jsonv::ktype_json(&g, &kt),
                "ratio": jsonv::factored_json(&rr.ratio),
                "form_a": jsonv::factored_json(&rr.form_a),
                "form_b": jsonv::factored_json(&rr.form_b),
                "conjectural": rr.conjectural,
            });
            if let Some(lam) = &req.lambda {
                let val = match rr.ratio.evaluate(lam) {
                    Eval::Value(x) => Value::String(x.to_string()),
                    Eval::Zero => Value::String(String::from("0")),
                    Eval::Pole => Value::String(String::from("pole")),
                };
                v["lambda"] = Value::String(lam.to_string());
                v["value"] = val;
            }
            CliOutput::ok(json_line(&v))
        }
        _ => {
            let mut out = format!("{}\n", rr.ratio);
            if rr.conjectural {
                out.push_str("(conjectural)\n");
            }
            if let Some(lam) = &req.lambda {
                append_eval(&mut out, &rr.ratio, lam, req.eval);
            }
            CliOutput::ok(out)
        }
    }
}

fn cmd_cnorm(req: &Request) -> CliOutput {
    let (g, f) = match group_fiber(req) {
        Ok(x) => x,
        Err(e) => return CliOutput::err(2, e),
    };
    let c = match normalizing_const(&g, &f) {
        Ok(c) => c,
        Err(e) => return CliOutput::err(status_of_norms(&e), e.to_string()),
    };
    match req.format {
        Format::Json => {
            let mut v = json!({ "c_lambda": jsonv::factored_json(&c) });
            if let Some(lam) = &req.lambda {
                v["lambda"] = Value::String(lam.to_string());
                v["value"] = match c.evaluate(lam) {
                    Eval::Value(x) => Value::String(x.to_string()),
                    Eval::Zero => Value::String(String::from("0")),
                    Eval::Pole => Value::String(String::from("pole")),
                };
            }
            CliOutput::ok(json_line(&v))
        }
        _ => {
            let mut out = format!("{c}\n");
            if let Some(lam) = &req.lambda {
                append_eval(&mut out, &c, lam, req.eval);
            }
            CliOutput::ok(out)
        }
    }
}

fn cmd_unitary(req: &Request) -> CliOutput {
    let (g, f) = match group_fiber(req) {
        Ok(x) => x,
        Err(e) => return CliOutput::err(2, e),
    };
    let u = match unitary_set(&g, &f) {
        Ok(u) => u,
        Err(e) => return CliOutput::err(status_of_analysis(&e), e.to_string()),
    };
    match req.format {
        Format::Json => CliOutput::ok(json_line(&jsonv::unitary_json(&u))),
        _ => {
            let pts: Vec<String> = u.discrete.iter().map(|x| x.to_string()).collect();
            CliOutput::ok(format!(
                "discrete: {{{}}}; continuous: ({}, ∞)\n",
                pts.join(", "),
                u.continuous_min
            ))
        }
    }
}

fn cmd_filtration(req: &Request) -> CliOutput {
    let (g, f) = match group_fiber(req) {
        Ok(x) => x,
        Err(e) => return CliOutput::err(2, e),
    };
    let Some(lam) = req.lambda.clone() else {
        return CliOutput::err(2, String::from("filtration needs --lambda"));
    };
    let red = match reducible(&g, &f, &lam) {
        Ok(r) => r,
        Err(e) => return CliOutput::err(status_of_analysis(&e), e.to_string()),
    };
    if !red {
        return match req.format {
            Format::Json => CliOutput::ok(json_line(&jsonv::filtration_json(&lam, None, None, false))),
            _ => CliOutput::ok(format!("λ={lam}: irreducible\n")),
        };
    }
    let filt = filtration(&g, &f, &lam).expect("reducible checked");
    let report = subquotient_report(&g, &f, &lam).expect("reducible checked");
    match req.format {
        Format::Json => CliOutput::ok(json_line(&jsonv::filtration_json(
            &lam,
            Some(&filt),
            Some(&report),
            false,
        ))),
        _ => {
            let mut out = format!("λ={lam}: reducible; chain 0");
            for level in &filt.levels {
                out.push_str(&format!(" ⊂ M_{}", level.j));
            }
            out.push_str(" ⊂ P\n");
            for (level, info) in filt.levels.iter().zip(report.iter()) {
                out.push_str(&format!(
                    "  M_{}: {}; GK dim {}{}{}\n",
                    level.j,
                    level.predicate,
                    info.gk_dim,
                    if level.unitary { "; unitary" } else { "" },
                    if info.irreducible_known {
                        "; irreducible"
                    } else {
                        ""
                    }
                ));
            }
            let top = report.last().expect("has quotient");
            out.push_str(&format!(
                "  quotient: GK dim {}{}\n",
                top.gk_dim,
                if top.unitary { "; unitary" } else { "" }
            ));
            CliOutput::ok(out)
        }
    }
}

fn cmd_scan(req: &Request) -> CliOutput {
    let (g, f) = match group_fiber(req) {
        Ok(x) => x,
        Err(e) => return CliOutput::err(2, e),
    };
    let Some(lam) = req.lambda.clone() else {
        return CliOutput::err(2, String::from("scan needs --lambda"));
    };
    let cap = req.degree.unwrap_or(8);
    let table = match ratio_table(&g, &f, cap, req.conjecture) {
        Ok(t) => t,
        Err(e) => return CliOutput::err(status_of_analysis(&e), e.to_string()),
    };
    let outcome = unitary_scan_table(&table, &lam);
    let red = reducible_scan_table(&table, &lam);
    match req.format {
        Format::Json => {
            let mut v = json!({
                "lambda": lam.to_string(),
                "degree": cap,
                "unitary_scan": match &outcome {
                    ScanOutcome::Compatible => "compatible",
                    ScanOutcome::NegativeFound(_) => "negative_found",
                },
                "reducible_scan": red,
                "conjectural": table.conjectural,
            });
            if let ScanOutcome::NegativeFound(kt) = &outcome {
                v["witness"] = jsonv::ktype_json(&g, kt);
            }
            CliOutput::ok(json_line(&v))
        }
        _ => {
            let mut out = format!("λ={lam}, degrees ≤ {cap}: ");
            match &outcome {
                ScanOutcome::Compatible => out.push_str("all kernel coefficients nonnegative"),
                ScanOutcome::NegativeFound(kt) => out.push_str(&format!(
                    "negative coefficient at {}",
                    jsonv::signature_text(&kt.signature)
                )),
            }
            out.push_str(&format!(
                "; pole witness: {}\n",
                if red { "reducible" } else { "none" }
            ));
            CliOutput::ok(out)
        }
    }
}

fn cmd_check(req: &Request) -> CliOutput {
    let suite = req.suite.as_deref().unwrap_or("all");
    let reports = match oracle::run_suite(suite) {
        Ok(r) => r,
        Err(e) => return CliOutput::err(2, e),
    };
    let failed = reports.iter().filter(|r| !r.passed).count();
    let body = match req.format {
        Format::Json => json_line(&jsonv::reports_json(&reports)),
        _ => {
            let mut out = String::new();
            for r in &reports {
                if r.passed {
                    out.push_str(&format!("ok   {}\n", r.name));
                } else {
                    out.push_str(&format!("FAIL {}\n", r.name));
                    for w in &r.witnesses {
                        out.push_str(&format!("     {w}\n"));
                    }
                }
            }
            out.push_str(&format!(
                "{} checks, {} failed\n",
                reports.len(),
                failed
            ));
            out
        }
    };
    CliOutput {
        status: if failed > 0 { 1 } else { 0 },
        stdout: body,
        stderr: String::new(),
    }
}

fn cmd_table(req: &Request) -> CliOutput {
    let (g, f) = match group_fiber(req) {
        Ok(x) => x,
        Err(e) => return CliOutput::err(2, e),
    };
    let cap = req.degree.unwrap_or_else(max_degree_env);
    let kts = match decompose_upto(&g, &f, cap) {
        Ok(k) => k,
        Err(e) => return CliOutput::err(2, e.to_string()),
    };
    let mut out = String::from("degree,signature,multiplicity,ratio_numerator,ratio_denominator\n");
    for kt in &kts {
        let rr = match kernel_coeff(&g, &f, kt, req.conjecture) {
            Ok(_) => norm_ratio(&g, &f, kt, req.conjecture).expect("kernel computed"),
            Err(e) => return CliOutput::err(status_of_norms(&e), e.to_string()),
        };
        let (num, den) = jsonv::factor_strings(&rr.ratio);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            kt.degree,
            csv_field(&jsonv::signature_text(&kt.signature)),
            kt.multiplicity,
            csv_field(&num),
            csv_field(&den)
        ));
    }
    CliOutput::ok(out)
}
