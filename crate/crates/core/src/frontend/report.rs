use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::splitting::{FanoReport, GradedHypersurface, Membership, SplittingProfile};
use crate::toric::{FanData, ToricAlphaReport};

/// Limit of `a_e / q^3` for the diagonal cubic surface over `F_5`.
pub fn known_cubic_signature_limit() -> BigRational {
    BigRational::new(BigInt::from(15), BigInt::from(124))
}

/// `"num/den"`, always with an explicit denominator.
pub fn rational_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn approx(x: &BigRational) -> Value {
    x.to_f64().map_or(Value::Null, |f| json!(f))
}

fn put_rational(obj: &mut Map<String, Value>, key: &str, x: Option<&BigRational>) {
    match x {
        Some(x) => {
            obj.insert(key.into(), json!(rational_str(x)));
            obj.insert(format!("{key}_approx"), approx(x));
        }
        None => {
            obj.insert(key.into(), Value::Null);
            obj.insert(format!("{key}_approx"), Value::Null);
        }
    }
}

/// One row of the CSV rendering.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CsvRow {
    pub e: u32,
    pub m: u64,
    #[serde(rename = "dimRm")]
    pub dim_rm: u64,
    pub b: u64,
    #[serde(rename = "dimIe")]
    pub dim_ie: u64,
}

/// A machine-readable record with sorted keys.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    value: Value,
    rows: Vec<CsvRow>,
}

impl Report {
    fn new(kind: &str, input: Value, p: Option<u64>, results: Vec<Value>, checks: Value) -> Self {
        let value = json!({
            "kind": kind,
            "input": input,
            "p": p,
            "results": results,
            "checks": checks,
            "version": crate::VERSION,
            "elapsed_ms": 0,
        });
        Report {
            value,
            rows: Vec::new(),
        }
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn set_elapsed_ms(&mut self, ms: u64) {
        self.value["elapsed_ms"] = json!(ms);
    }

    /// Compact JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.value).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    pub fn csv_rows(&self) -> &[CsvRow] {
        &self.rows
    }

    /// One row per `(e, m)`; only splitting reports carry rows.
    pub fn to_csv(&self) -> Result<String> {
        if self.rows.is_empty() {
            return Err(Error::Input(format!(
                "CSV output is only available for splitting profiles, not '{}'",
                self.value["kind"].as_str().unwrap_or("")
            )));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)
                .map_err(|e| Error::InternalCheck(format!("csv: {e}")))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InternalCheck(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// What was asked for, echoed into the report.
#[derive(Clone, Debug)]
pub struct HypersurfaceInput<'a> {
    pub ring: &'a GradedHypersurface,
    pub raw: &'a str,
    pub e_lo: u32,
    pub e_hi: u32,
    pub duality_advisory: bool,
    pub warnings: &'a [String],
}

fn is_diagonal_cubic_surface_mod5(ring: &GradedHypersurface) -> bool {
    GradedHypersurface::diagonal(5, 4, 3)
        .is_ok_and(|d| d.polynomial() == ring.polynomial())
}

fn input_json(inp: &HypersurfaceInput) -> Value {
    let mut obj = Map::new();
    obj.insert("raw".into(), json!(inp.raw));
    obj.insert("poly".into(), json!(inp.ring.display_polynomial()));
    obj.insert("vars".into(), json!(inp.ring.names()));
    obj.insert("v".into(), json!(inp.ring.nvars()));
    obj.insert("degree".into(), json!(inp.ring.degree()));
    obj.insert("e".into(), json!(format!("{}..{}", inp.e_lo, inp.e_hi)));
    obj.insert("warnings".into(), json!(inp.warnings));
    if is_diagonal_cubic_surface_mod5(inp.ring) {
        obj.insert(
            "known_s_limit".into(),
            json!(rational_str(&known_cubic_signature_limit())),
        );
    }
    Value::Object(obj)
}

/// JSON object for one level.
pub fn profile_json(p: &SplittingProfile) -> Value {
    let mut obj = Map::new();
    obj.insert("e".into(), json!(p.e));
    obj.insert("q".into(), json!(p.q));
    obj.insert("b".into(), json!(p.b));
    obj.insert("dimRm".into(), json!(p.dim_r));
    let dim_ie: Vec<u64> = p.b.iter().zip(&p.dim_r).map(|(b, r)| r - b).collect();
    obj.insert("dimIe".into(), json!(dim_ie));
    obj.insert("M_e".into(), json!(p.pivot_degree));
    obj.insert("m_e".into(), json!(p.threshold.degree()));
    obj.insert("f_split".into(), json!(p.f_split()));
    obj.insert(
        "status".into(),
        json!(if p.f_split() { "F-split" } else { "not-F-split" }),
    );
    put_rational(&mut obj, "alpha_e", p.alpha_e.as_ref());
    put_rational(&mut obj, "alpha_upper", p.alpha_upper.as_ref());
    put_rational(&mut obj, "alpha_plus_inverse_q", p.alpha_plus_inverse_q().as_ref());
    obj.insert("a_e".into(), json!(p.free_rank));
    put_rational(&mut obj, "s_raw", p.s_raw.as_ref());
    obj.insert("method".into(), json!(p.method));
    Value::Object(obj)
}

fn profile_rows(profiles: &[SplittingProfile]) -> Vec<CsvRow> {
    profiles
        .iter()
        .flat_map(|p| {
            p.b.iter().zip(&p.dim_r).enumerate().map(|(m, (&b, &r))| CsvRow {
                e: p.e,
                m: m as u64,
                dim_rm: r,
                b,
                dim_ie: r - b,
            })
        })
        .collect()
}

fn profile_checks(profiles: &[SplittingProfile], duality_advisory: bool) -> Value {
    let failures: Vec<Value> = profiles
        .iter()
        .flat_map(|p| {
            p.duality_failures()
                .into_iter()
                .map(move |m| json!({"e": p.e, "m": m}))
        })
        .collect();
    let duality_ok = profiles
        .iter()
        .all(|p| p.duality_ok || !p.f_split() || p.pivot_degree.is_none());
    let monotone: Vec<bool> = profiles.iter().filter_map(|p| p.monotone_ok).collect();
    json!({
        "duality": {
            "ok": duality_ok,
            "advisory": duality_advisory,
            "failures": failures,
        },
        "monotonicity": {
            "ok": monotone.iter().all(|&b| b),
            "levels_compared": monotone.len(),
        },
        "scan_monotone": profiles.iter().all(|p| p.scan_monotone_ok),
        "fedder_consistent": profiles.iter().all(|p| p.fedder_consistent),
        "normal_asserted": profiles.iter().all(|p| p.normal_asserted),
    })
}

pub fn split_report(inp: &HypersurfaceInput, profiles: &[SplittingProfile]) -> Report {
    let results = profiles.iter().map(profile_json).collect();
    let mut rep = Report::new(
        "split",
        input_json(inp),
        Some(inp.ring.p()),
        results,
        profile_checks(profiles, inp.duality_advisory),
    );
    rep.rows = profile_rows(profiles);
    rep
}

pub fn fano_json(inp: &HypersurfaceInput, report: &FanoReport) -> Report {
    let levels: Vec<Value> = report
        .levels
        .iter()
        .zip(&report.profiles)
        .map(|(l, p)| {
            let mut obj = profile_json(p).as_object().cloned().unwrap_or_default();
            put_rational(&mut obj, "alpha_estimate", Some(&l.alpha_estimate));
            put_rational(&mut obj, "alpha_upper_normalized", Some(&l.alpha_upper));
            put_rational(&mut obj, "s_estimate", Some(&l.s_estimate));
            put_rational(&mut obj, "s_halved", l.s_halved.as_ref());
            put_rational(&mut obj, "slack", Some(&l.slack));
            obj.insert("certifies_below_half".into(), json!(l.certifies_below_half));
            obj.insert("advisory".into(), json!({
                "estimate_within_half": l.estimate_within_half,
                "sandwich_lower": l.sandwich_lower_ok,
                "sandwich_upper": l.sandwich_upper_ok,
                "signature_bound": l.signature_bound_ok,
                "cone_lower": l.cone_lower_ok,
            }));
            Value::Object(obj)
        })
        .collect();
    let mut summary = Map::new();
    summary.insert("coindex".into(), json!(report.coindex));
    summary.insert("dim".into(), json!(report.dim));
    put_rational(&mut summary, "volume", Some(&report.volume));
    put_rational(&mut summary, "bound", Some(&report.bound));
    put_rational(&mut summary, "best_upper", report.best_upper());
    summary.insert("levels".into(), Value::Array(levels));
    let mut rep = Report::new(
        "fano",
        input_json(inp),
        Some(inp.ring.p()),
        vec![Value::Object(summary)],
        profile_checks(&report.profiles, inp.duality_advisory),
    );
    rep.rows = profile_rows(&report.profiles);
    rep
}

pub fn toric_json(source: &str, fan: &FanData, rep: &ToricAlphaReport) -> Report {
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(rep.dim));
    obj.insert("r".into(), json!(rep.r));
    put_rational(&mut obj, "alpha", Some(&rep.alpha));
    put_rational(&mut obj, "alpha_doubled", Some(&rep.alpha_doubled));
    obj.insert("witness_u".into(), json!(rep.witness_u));
    obj.insert("witness_ray".into(), json!(rep.witness_ray));
    obj.insert("witness_c".into(), json!(rep.witness_c));
    obj.insert("witness_is_vertex".into(), json!(rep.witness_is_vertex));
    obj.insert("lattice_points".into(), json!(rep.lattice_points));
    put_rational(&mut obj, "volume", Some(&rep.volume));
    put_rational(&mut obj, "bound", Some(&rep.bound));
    let vertices: Vec<Vec<String>> = rep
        .vertices
        .iter()
        .map(|w| w.iter().map(rational_str).collect())
        .collect();
    obj.insert("vertices".into(), json!(vertices));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let input = json!({
        "source": source,
        "dim": fan.dim(),
        "rays": fan.rays(),
        "cones": fan.cones(),
    });
    Report::new(
        "toric-alpha",
        input,
        None,
        vec![Value::Object(obj)],
        json!({
            "alpha_le_half": rep.alpha <= half,
            "dilation_stable": rep.dilation_stable(),
        }),
    )
}

pub fn membership_json(
    ring: &GradedHypersurface,
    raw_poly: &str,
    element: &str,
    element_display: &str,
    e: u32,
    result: Membership,
) -> Report {
    let input = json!({
        "raw": raw_poly,
        "poly": ring.display_polynomial(),
        "vars": ring.names(),
        "element": element,
        "e": e,
    });
    Report::new(
        "membership",
        input,
        Some(ring.p()),
        vec![json!({
            "e": e,
            "q": ring.p().pow(e),
            "element": element_display,
            "member": result.member,
            "in_defining_ideal": result.in_defining_ideal,
        })],
        json!({}),
    )
}

pub fn verify_json(results: &[super::verify::CriterionResult], deep: bool) -> Report {
    let rows: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "budget_ms": r.budget.as_millis() as u64,
            })
        })
        .collect();
    Report::new(
        "verify",
        json!({"deep": deep}),
        None,
        rows,
        json!({"all_passed": results.iter().all(|r| r.passed)}),
    )
}
