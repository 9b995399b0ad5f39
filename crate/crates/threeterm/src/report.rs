//! Report documents and serialization.
//!
//! Everything here is plain text (JSON, CSV, SVG) and deterministic given
//! identical inputs: keys are emitted sorted, floats use Rust's
//! shortest-round-trip formatting, and nothing time- or thread-dependent
//! lands in a document unless explicitly requested. Files are written
//! atomically (temp file, then rename).

use std::path::Path;

use num::complex::Complex64;
use serde::Serialize;

use crate::algebraic::AlgebraicNumber;
use crate::criterion::{
    ConditionDetail, ConditionReport, SupportEndpoint, SupportInterval, SweepOutcome, Verdict,
    Witness,
};
use crate::error::Result;
use crate::levels::LevelZeros;
use crate::numeric::ComplexRootSet;
use crate::rat::big_ratio;
use crate::recurrence::RecurrencePair;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct AlgebraicJson {
    pub approx: f64,
    pub defining: String,
    pub interval: [String; 2],
    pub exact: Option<String>,
}

fn algebraic_json(a: &AlgebraicNumber) -> AlgebraicJson {
    let display = a.refined_to_width(&big_ratio(1, 10_000_000_000i64));
    AlgebraicJson {
        approx: a.approx_f64(),
        defining: a.defining().to_string(),
        interval: [display.lo().to_string(), display.hi().to_string()],
        exact: a.rational_value().map(|r| r.to_string()),
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessJson {
    RepeatedFactor {
        factor: String,
    },
    NonrealRoots {
        poly: String,
        real_count: usize,
        expected: usize,
    },
    CriticalValueInWindow {
        point: AlgebraicJson,
        value_approx: f64,
    },
    NegativeQ2AtRoot {
        root: AlgebraicJson,
        q2_exact: Option<String>,
        q2_approx: f64,
    },
    SweepDeficit {
        s: String,
        real_count: usize,
        expected: usize,
    },
    DisjointOval {
        min_abs_im: f64,
        sample_point: [f64; 2],
    },
}

fn witness_json(w: &Witness) -> WitnessJson {
    match w {
        Witness::RepeatedFactor { factor } => WitnessJson::RepeatedFactor {
            factor: factor.to_string(),
        },
        Witness::NonrealRoots {
            poly,
            real_count,
            expected,
        } => WitnessJson::NonrealRoots {
            poly: poly.to_string(),
            real_count: *real_count,
            expected: *expected,
        },
        Witness::CriticalValueInWindow {
            point,
            value_approx,
            ..
        } => WitnessJson::CriticalValueInWindow {
            point: algebraic_json(point),
            value_approx: *value_approx,
        },
        Witness::NegativeQ2AtRoot {
            root,
            q2_exact,
            q2_approx,
            ..
        } => WitnessJson::NegativeQ2AtRoot {
            root: algebraic_json(root),
            q2_exact: q2_exact.as_ref().map(|v| v.to_string()),
            q2_approx: *q2_approx,
        },
        Witness::SweepDeficit {
            s,
            real_count,
            expected,
        } => WitnessJson::SweepDeficit {
            s: s.to_string(),
            real_count: *real_count,
            expected: *expected,
        },
        Witness::DisjointOval {
            min_abs_im,
            sample_point,
        } => WitnessJson::DisjointOval {
            min_abs_im: *min_abs_im,
            sample_point: [sample_point.0, sample_point.1],
        },
    }
}

#[derive(Serialize)]
pub struct CriticalPointJson {
    pub point: AlgebraicJson,
    pub value_approx: f64,
    pub q1_sign: i8,
    pub q2_sign: i8,
    pub d_sign: i8,
    pub value_in_window: bool,
}

#[derive(Serialize)]
pub struct SweepSampleJson {
    pub s: String,
    pub s_approx: f64,
    pub real_count: usize,
    pub expected: usize,
    pub full: bool,
}

#[derive(Serialize)]
pub struct SweepJson {
    pub cut_points: Vec<String>,
    pub samples: Vec<SweepSampleJson>,
    pub certified: bool,
    pub all_full: bool,
    pub notes: Vec<String>,
}

pub fn sweep_json(sweep: &SweepOutcome) -> SweepJson {
    SweepJson {
        cut_points: sweep.cut_points.iter().map(|c| c.to_string()).collect(),
        samples: sweep
            .samples
            .iter()
            .map(|s| SweepSampleJson {
                s: s.s.to_string(),
                s_approx: crate::rat::rat_to_f64(&s.s),
                real_count: s.real_count,
                expected: s.expected,
                full: s.full(),
            })
            .collect(),
        certified: sweep.certified,
        all_full: sweep.all_full(),
        notes: sweep.notes.clone(),
    }
}

#[derive(Serialize)]
pub struct Q2SignJson {
    pub root: AlgebraicJson,
    pub q2_sign: i8,
    pub q2_exact: Option<String>,
    pub q2_approx: f64,
}

#[derive(Serialize)]
pub struct ConditionJson {
    pub id: String,
    pub summary: String,
    pub status: String,
    pub note: String,
    pub witness: Option<WitnessJson>,
    pub root_count: Option<[usize; 2]>,
    pub critical_points: Option<Vec<CriticalPointJson>>,
    pub sweep: Option<SweepJson>,
    pub q2_signs: Option<Vec<Q2SignJson>>,
}

fn condition_json(report: &ConditionReport) -> ConditionJson {
    let mut out = ConditionJson {
        id: report.id.as_str().into(),
        summary: report.id.summary().into(),
        status: report.status.as_str().into(),
        note: report.note.clone(),
        witness: report.witness.as_ref().map(witness_json),
        root_count: None,
        critical_points: None,
        sweep: None,
        q2_signs: None,
    };
    match &report.detail {
        ConditionDetail::RootCount { real, expected } => {
            out.root_count = Some([*real, *expected]);
        }
        ConditionDetail::CriticalPoints(cps) => {
            out.critical_points = Some(
                cps.iter()
                    .map(|cp| CriticalPointJson {
                        point: algebraic_json(&cp.point),
                        value_approx: cp.value_approx,
                        q1_sign: cp.q1_sign,
                        q2_sign: cp.q2_sign,
                        d_sign: cp.d_sign,
                        value_in_window: cp.value_in_window,
                    })
                    .collect(),
            );
        }
        ConditionDetail::Sweep(sweep) => {
            out.sweep = Some(sweep_json(sweep));
        }
        ConditionDetail::Q2Signs(infos) => {
            out.q2_signs = Some(
                infos
                    .iter()
                    .map(|i| Q2SignJson {
                        root: algebraic_json(&i.root),
                        q2_sign: i.q2_sign,
                        q2_exact: i.q2_exact.as_ref().map(|v| v.to_string()),
                        q2_approx: i.q2_approx,
                    })
                    .collect(),
            );
        }
        ConditionDetail::None => {}
    }
    out
}

#[derive(Serialize)]
pub struct EndpointJson {
    pub kind: String,
    pub value: Option<AlgebraicJson>,
}

fn endpoint_json(e: &SupportEndpoint) -> EndpointJson {
    match e {
        SupportEndpoint::NegInf => EndpointJson {
            kind: "-inf".into(),
            value: None,
        },
        SupportEndpoint::PosInf => EndpointJson {
            kind: "+inf".into(),
            value: None,
        },
        SupportEndpoint::Point(a) => EndpointJson {
            kind: "point".into(),
            value: Some(algebraic_json(a)),
        },
    }
}

/// Decimal rendering of an endpoint for the human-readable support string.
pub fn endpoint_text(e: &SupportEndpoint) -> String {
    match e {
        SupportEndpoint::NegInf => "-inf".into(),
        SupportEndpoint::PosInf => "+inf".into(),
        SupportEndpoint::Point(a) => match a.rational_value() {
            Some(r) => r.to_string(),
            None => format!("{:.10}", a.approx_f64()),
        },
    }
}

pub fn support_text(support: &[SupportInterval]) -> String {
    support
        .iter()
        .map(|iv| format!("[{}, {}]", endpoint_text(&iv.lo), endpoint_text(&iv.hi)))
        .collect::<Vec<_>>()
        .join(" U ")
}

#[derive(Serialize)]
pub struct SupportJson {
    pub lo: EndpointJson,
    pub hi: EndpointJson,
}

#[derive(Serialize)]
pub struct InputJson {
    pub q1: String,
    pub q2: String,
    pub discriminant: String,
}

fn input_json(pair: &RecurrencePair) -> InputJson {
    InputJson {
        q1: pair.q1().to_string(),
        q2: pair.q2().to_string(),
        discriminant: pair.discriminant().to_string(),
    }
}

#[derive(Serialize)]
pub struct CheckDocument {
    pub schema_version: u32,
    pub input: InputJson,
    pub conditions: Vec<ConditionJson>,
    pub overall: String,
    pub support: Option<Vec<SupportJson>>,
    pub support_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, f64)>>,
}

pub fn check_document(pair: &RecurrencePair, verdict: &Verdict) -> CheckDocument {
    CheckDocument {
        schema_version: SCHEMA_VERSION,
        input: input_json(pair),
        conditions: verdict.reports.iter().map(condition_json).collect(),
        overall: if verdict.overall { "pass" } else { "fail" }.into(),
        support: verdict
            .support
            .as_ref()
            .map(|s| s.iter().map(|iv| SupportJson {
                lo: endpoint_json(&iv.lo),
                hi: endpoint_json(&iv.hi),
            }).collect()),
        support_text: verdict.support.as_ref().map(|s| support_text(s)),
        timings_ms: None,
    }
}

#[derive(Serialize)]
pub struct ZerosDocument {
    pub schema_version: u32,
    pub input: InputJson,
    pub n: usize,
    pub method: String,
    pub roots: Vec<[f64; 2]>,
    pub max_imag_deviation: f64,
    pub roots_at_infinity: usize,
    pub converged: bool,
}

pub fn zeros_document_levels(pair: &RecurrencePair, zeros: &LevelZeros) -> ZerosDocument {
    ZerosDocument {
        schema_version: SCHEMA_VERSION,
        input: input_json(pair),
        n: zeros.n,
        method: "levels".into(),
        roots: zeros.roots.iter().map(|z| [z.re, z.im]).collect(),
        max_imag_deviation: zeros.max_imag_deviation(),
        roots_at_infinity: zeros.roots_at_infinity,
        converged: zeros.converged,
    }
}

pub fn zeros_document_expand(pair: &RecurrencePair, n: usize, roots: &ComplexRootSet) -> ZerosDocument {
    ZerosDocument {
        schema_version: SCHEMA_VERSION,
        input: input_json(pair),
        n,
        method: "expand".into(),
        roots: roots.roots.iter().map(|z| [z.re, z.im]).collect(),
        max_imag_deviation: roots.max_imag_deviation(),
        roots_at_infinity: 0,
        converged: roots.converged,
    }
}

pub fn zeros_csv(roots: &[Complex64]) -> String {
    let mut out = String::from("re,im\n");
    for z in roots {
        out.push_str(&format!("{},{}\n", z.re, z.im));
    }
    out
}

#[derive(Serialize)]
pub struct VerifyRow {
    pub n: usize,
    pub degree: usize,
    pub max_imag_deviation: f64,
}

#[derive(Serialize)]
pub struct VerifyDocument {
    pub schema_version: u32,
    pub input: InputJson,
    pub n_max: usize,
    pub rows: Vec<VerifyRow>,
    pub empirically_real: bool,
    pub verdict_overall: String,
    pub consistent: bool,
}

#[derive(Serialize)]
pub struct SweepDocument {
    pub schema_version: u32,
    pub input: InputJson,
    pub sweep: SweepJson,
}

#[derive(Serialize)]
pub struct GenDocument {
    pub schema_version: u32,
    pub order: usize,
    pub qs: Vec<String>,
    pub n: usize,
    /// `P_0 ... P_n` in canonical text.
    pub polynomials: Vec<String>,
    /// Exact coefficients, low to high, as rational strings.
    pub coefficients: Vec<Vec<String>>,
}

/// Serialize any document with sorted keys and a trailing newline.
///
/// Round-tripping through `serde_json::Value` sorts object keys (the default
/// map is ordered), which keeps byte-identical output independent of struct
/// field order.
pub fn to_json_string<T: Serialize>(doc: &T) -> Result<String> {
    let value = serde_json::to_value(doc)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

/// Write a file atomically: temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::full_verdict;
    use crate::poly::RatPoly;

    #[test]
    fn check_document_is_deterministic_and_sorted() {
        let pair = RecurrencePair::new(
            RatPoly::from_ints(&[-5, -2, 1]),
            RatPoly::from_ints(&[0, 0, 1]),
        )
        .unwrap();
        let verdict = full_verdict(&pair).unwrap();
        let doc1 = to_json_string(&check_document(&pair, &verdict)).unwrap();
        let verdict2 = full_verdict(&pair).unwrap();
        let doc2 = to_json_string(&check_document(&pair, &verdict2)).unwrap();
        assert_eq!(doc1, doc2);
        // keys sorted: "conditions" precedes "input" precedes "overall"
        let ci = doc1.find("\"conditions\"").unwrap();
        let ii = doc1.find("\"input\"").unwrap();
        let oi = doc1.find("\"overall\"").unwrap();
        assert!(ci < ii && ii < oi);
        assert!(doc1.contains("\"support_text\""));
    }

    #[test]
    fn atomic_write_roundtrip() {
        let dir = std::env::temp_dir().join("threeterm-report-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.json");
        atomic_write(&path, b"{}\n").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"{}\n");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
