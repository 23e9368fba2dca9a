//! JSON views of the core types. Signatures serialize as arrays of strings
//! "p" or "p/2"; rationals as strings; everything else as plain objects.
//! Output is deterministic (object keys are emitted sorted).

use hwnorm_core::arith::{parse_rat, FactoredFn, Half, Rat};
use hwnorm_core::catalog::GroupSpec;
use hwnorm_core::decomp::{ktype_dim, KIndex, KSignature, KType};
use hwnorm_core::analysis::{Filtration, SubquotientInfo, UnitarySet};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::oracle::CheckReport;

pub fn half_sig_json(v: &[Half]) -> Value {
    Value::Array(v.iter().map(|h| Value::String(h.to_string())).collect())
}

pub fn int_sig_json(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn parse_sig_halves(v: &Value) -> Result<Vec<Half>, String> {
    let arr = v.as_array().ok_or("expected an array signature")?;
    arr.iter()
        .map(|e| {
            e.as_str()
                .ok_or_else(|| String::from("signature entries are strings"))
                .and_then(Half::parse)
        })
        .collect()
}

fn parse_sig_ints(v: &Value) -> Result<Vec<i64>, String> {
    let arr = v.as_array().ok_or("expected an array signature")?;
    arr.iter()
        .map(|e| {
            e.as_str()
                .ok_or_else(|| String::from("signature entries are strings"))?
                .parse::<i64>()
                .map_err(|e| e.to_string())
        })
        .collect()
}

pub fn signature_json(sig: &KSignature) -> Value {
    match sig {
        KSignature::Gl(v) => json!({ "gl": half_sig_json(v) }),
        KSignature::GlPair(m, n) => json!({ "m": int_sig_json(m), "n": int_sig_json(n) }),
        KSignature::SoPair { m0, v } => {
            json!({ "m0": m0.to_string(), "v": half_sig_json(v) })
        }
        KSignature::Cone(m) => json!({ "m": int_sig_json(m) }),
    }
}

pub fn index_json(index: &KIndex) -> Value {
    match index {
        KIndex::Cone { m } => json!({ "m": int_sig_json(m) }),
        KIndex::Sp { m, kappa } | KIndex::SoStar { m, kappa } => {
            json!({ "m": int_sig_json(m), "kappa": int_sig_json(kappa) })
        }
        KIndex::Su { m, n } => json!({ "m": int_sig_json(m), "n": int_sig_json(n) }),
        KIndex::Spin { m, l } => {
            json!({ "m": int_sig_json(&m[..]), "l": l.to_string() })
        }
        KIndex::E6 { m, kappa } => {
            json!({ "m": int_sig_json(&m[..]), "kappa": int_sig_json(&kappa[..]) })
        }
    }
}

pub fn ktype_json(spec: &GroupSpec, kt: &KType) -> Value {
    json!({
        "family": spec.family.name(),
        "degree": kt.degree,
        "signature": signature_json(&kt.signature),
        "index": index_json(&kt.index),
        "multiplicity": kt.multiplicity,
        "dim": ktype_dim(spec, kt).to_u64().expect("desk-scale dimension"),
    })
}

/// Inverse of [`ktype_json`] up to the derived `dim` field.
pub fn ktype_from_json(v: &Value) -> Result<KType, String> {
    let obj = v.as_object().ok_or("expected a K-type object")?;
    let family = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or("missing family")?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or("missing degree")? as u32;
    let multiplicity = obj
        .get("multiplicity")
        .and_then(Value::as_u64)
        .ok_or("missing multiplicity")?;
    let idx = obj.get("index").ok_or("missing index")?;
    let sig = obj.get("signature").ok_or("missing signature")?;
    let geti = |o: &Value, k: &str| -> Result<Vec<i64>, String> {
        parse_sig_ints(o.get(k).ok_or_else(|| format!("missing {k}"))?)
    };
    let index = match family {
        "e7" => KIndex::Cone { m: geti(idx, "m")? },
        "sp" => KIndex::Sp {
            m: geti(idx, "m")?,
            kappa: geti(idx, "kappa")?,
        },
        "sostar" => KIndex::SoStar {
            m: geti(idx, "m")?,
            kappa: geti(idx, "kappa")?,
        },
        "su" => KIndex::Su {
            m: geti(idx, "m")?,
            n: geti(idx, "n")?,
        },
        "spin" => {
            let m = geti(idx, "m")?;
            let l = Half::parse(
                idx.get("l")
                    .and_then(Value::as_str)
                    .ok_or("missing spin index l")?,
            )?;
            KIndex::Spin {
                m: [m[0], m[1]],
                l,
            }
        }
        "e6" => {
            let m = geti(idx, "m")?;
            let kappa = geti(idx, "kappa")?;
            KIndex::E6 {
                m: [m[0], m[1]],
                kappa: [kappa[0], kappa[1], kappa[2], kappa[3]],
            }
        }
        other => return Err(format!("unknown family \"{other}\"")),
    };
    let signature = match family {
        "e7" => KSignature::Cone(geti(sig, "m")?),
        "sp" | "sostar" => KSignature::Gl(parse_sig_halves(
            sig.get("gl").ok_or("missing gl signature")?,
        )?),
        "su" => KSignature::GlPair(geti(sig, "m")?, geti(sig, "n")?),
        "spin" | "e6" => {
            let m0 = parse_rat(
                sig.get("m0")
                    .and_then(Value::as_str)
                    .ok_or("missing m0")?,
            )?;
            let v = parse_sig_halves(sig.get("v").ok_or("missing v")?)?;
            KSignature::SoPair { m0, v }
        }
        _ => unreachable!(),
    };
    Ok(KType {
        degree,
        index,
        signature,
        multiplicity,
    })
}

pub fn factored_json(f: &FactoredFn) -> Value {
    let side = |it: &mut dyn Iterator<Item = (&Rat, u32)>| -> Value {
        Value::Array(
            it.map(|(s, e)| json!({ "shift": s.to_string(), "exp": e }))
                .collect(),
        )
    };
    json!({
        "constant": f.constant_part().to_string(),
        "num": side(&mut f.num_factors()),
        "den": side(&mut f.den_factors()),
    })
}

pub fn unitary_json(u: &UnitarySet) -> Value {
    json!({
        "continuous_min": u.continuous_min.to_string(),
        "discrete": Value::Array(
            u.discrete.iter().map(|x| Value::String(x.to_string())).collect()
        ),
    })
}

pub fn filtration_json(
    lambda: &Rat,
    filt: Option<&Filtration>,
    report: Option<&[SubquotientInfo]>,
    conjectural: bool,
) -> Value {
    let mut obj = Map::new();
    obj.insert("lambda".into(), Value::String(lambda.to_string()));
    obj.insert("reducible".into(), Value::Bool(filt.is_some()));
    obj.insert("conjectural".into(), Value::Bool(conjectural));
    if let (Some(filt), Some(report)) = (filt, report) {
        let mut chain = Vec::new();
        for (level, info) in filt.levels.iter().zip(report.iter()) {
            chain.push(json!({
                "j": level.j,
                "predicate": level.predicate.to_string(),
                "gk_dim": info.gk_dim,
                "unitary": level.unitary,
                "label": if info.irreducible_known {
                    "submodule (irreducible)"
                } else {
                    "subquotient (irreducibility unknown)"
                },
            }));
        }
        obj.insert("chain".into(), Value::Array(chain));
        let top = report.last().expect("report includes the quotient");
        obj.insert(
            "quotient".into(),
            json!({ "gk_dim": top.gk_dim, "unitary": top.unitary }),
        );
    }
    Value::Object(obj)
}

pub fn reports_json(reports: &[CheckReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "passed": r.passed,
                    "witnesses": r.witnesses,
                })
            })
            .collect(),
    )
}

/// Compact one-cell text for a signature, used by the CSV table.
pub fn signature_text(sig: &KSignature) -> String {
    let halves = |v: &[Half]| -> String {
        v.iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let ints = |v: &[i64]| -> String {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match sig {
        KSignature::Gl(v) => format!("({})", halves(v)),
        KSignature::GlPair(m, n) => format!("({})x({})", ints(m), ints(n)),
        KSignature::SoPair { m0, v } => format!("({m0};{})", halves(v)),
        KSignature::Cone(m) => format!("({})", ints(m)),
    }
}

/// The numerator / denominator factor strings of a factored function.
pub fn factor_strings(f: &FactoredFn) -> (String, String) {
    let fmt_side = |factors: Vec<(&Rat, u32)>, constant: Option<&Rat>| -> String {
        let mut s = String::new();
        if let Some(c) = constant {
            use num_traits::One;
            if !c.is_one() || factors.is_empty() {
                s.push_str(&c.to_string());
                if !factors.is_empty() {
                    s.push('·');
                }
            }
        } else if factors.is_empty() {
            s.push('1');
        }
        for (shift, e) in factors {
            let tok = hwnorm_core::arith::LinearFactor {
                shift: shift.clone(),
            };
            s.push_str(&tok.to_string());
            if e > 1 {
                s.push('^');
                s.push_str(&e.to_string());
            }
        }
        s
    };
    let num = fmt_side(f.num_factors().collect(), Some(f.constant_part()));
    let den = fmt_side(f.den_factors().collect(), None);
    (num, den)
}
