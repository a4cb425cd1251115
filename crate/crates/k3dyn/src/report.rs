//! Machine-readable reports. JSON output has a fixed key order and renders
//! every exact value as a string, so identical inputs produce identical
//! bytes; timestamps only appear when a stamp is requested, outside the
//! canonical report object.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::exactla::Poly;

/// Exact rational rendered as `p` or `p/q`.
pub fn rat_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact decimal expansion truncated toward zero at `digits` places.
pub fn decimal_string(r: &BigRational, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = if r.is_negative() { -r.clone() } else { r.clone() };
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (abs * BigRational::from_integer(scale.clone()))
        .floor()
        .to_integer();
    let (int_part, frac) = scaled.div_rem(&scale);
    format!("{sign}{int_part}.{frac:0>width$}", width = digits as usize)
}

pub fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format_version: u64,
    pub scenario: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSummary>,
    pub fibrations: Vec<FibrationRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dynamics: Option<DynamicsRecord>,
    pub certificates: Vec<CertificateRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub salem: Option<SalemRecord>,
    pub assertions: Vec<AssertionRecord>,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(scenario: impl Into<String>) -> Self {
        Report {
            format_version: crate::config::FORMAT_VERSION,
            scenario: scenario.into(),
            lattice: None,
            fibrations: Vec::new(),
            dynamics: None,
            certificates: Vec::new(),
            salem: None,
            assertions: Vec::new(),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSummary {
    pub name: String,
    pub curves: usize,
    pub rank: usize,
    pub signature: [usize; 2],
    pub discriminant: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FibrationRecord {
    pub divisor: BTreeMap<String, String>,
    pub kodaira_type: String,
    pub sections: Vec<String>,
    /// ADE decomposition of the full vertical root system of the pencil,
    /// not only of the configured divisor.
    pub vertical_roots: Vec<String>,
    pub vertical_root_rank: usize,
    pub mw_rank: usize,
    pub component_group: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translation: Option<TranslationRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslationRecord {
    pub generator: String,
    pub origin: String,
    pub section: String,
    /// Smallest n with E(F, n phi) integral on every curve class.
    pub power: u32,
    /// Order of phi(P) against the class lattice.
    pub class_order: u32,
    pub construction: String,
    pub height: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DynamicsRecord {
    pub generators: Vec<String>,
    pub fixed_isotropic: Vec<FixedIsotropicRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_word: Option<WordRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_check: Option<FreeCheckRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedIsotropicRecord {
    pub generator: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_bound: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WordRecord {
    pub word: String,
    pub length: usize,
    pub explored: usize,
    pub classification: String,
    pub lambda: [String; 2],
    pub lambda_decimal: [String; 2],
    pub entropy_log: [String; 2],
    pub char_poly: Vec<String>,
    pub cyclotomic_factors: Vec<(u64, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub salem_factor: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeCheckRecord {
    pub depth: usize,
    pub free_up_to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relator: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateRecord {
    pub subject: String,
    pub curve: String,
    pub method: String,
    pub verdict: String,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moved: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SalemRecord {
    pub poly: Vec<String>,
    pub degree: usize,
    pub lambda: [String; 2],
    pub lambda_decimal: [String; 2],
    pub interior_trace_roots: usize,
    pub irreducibility: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssertionRecord {
    pub id: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Serialize)]
struct Stamped<'a> {
    stamp: &'a str,
    report: &'a Report,
}

/// Canonical JSON bytes; a stamp wraps the report without altering it.
pub fn emit_json(report: &Report, stamp: Option<&str>) -> Vec<u8> {
    let mut bytes = match stamp {
        None => serde_json::to_vec_pretty(report).expect("report serializes"),
        Some(s) => serde_json::to_vec_pretty(&Stamped { stamp: s, report }).expect("report serializes"),
    };
    bytes.push(b'\n');
    bytes
}

fn divisor_line(divisor: &BTreeMap<String, String>) -> String {
    divisor
        .iter()
        .map(|(name, mult)| {
            if mult == "1" {
                name.clone()
            } else {
                format!("{mult}*{name}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Human summary of the same content, one claim per line.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("scenario: {}", report.scenario));
    if let Some(lat) = &report.lattice {
        line(format!(
            "lattice {}: {} curves, rank {}, signature ({},{}), discriminant {}",
            lat.name, lat.curves, lat.rank, lat.signature[0], lat.signature[1], lat.discriminant
        ));
    }
    for (i, f) in report.fibrations.iter().enumerate() {
        line(format!(
            "fibration {}: type {}, divisor {}",
            i + 1,
            f.kodaira_type,
            divisor_line(&f.divisor)
        ));
        line(format!(
            "  sections: {}; vertical roots {} (rank {}); mw rank {}; component group [{}]",
            f.sections.join(" "),
            f.vertical_roots.join(" + "),
            f.vertical_root_rank,
            f.mw_rank,
            f.component_group
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ));
        if let Some(t) = &f.translation {
            line(format!(
                "  translation {}: {} [{} -> {}], power {}, class order {}, height {}",
                t.generator, t.construction, t.origin, t.section, t.power, t.class_order, t.height
            ));
        }
    }
    if let Some(dyn_rec) = &report.dynamics {
        line(format!("generators: {}", dyn_rec.generators.join(" ")));
        for fx in &dyn_rec.fixed_isotropic {
            let detail = match (&fx.vector, fx.height_bound) {
                (Some(v), _) => format!(" [{}]", v.join(", ")),
                (None, Some(h)) => format!(" up to height {h}"),
                _ => String::new(),
            };
            line(format!(
                "fixed isotropic for {}: {}{}",
                fx.generator, fx.outcome, detail
            ));
        }
        if let Some(w) = &dyn_rec.best_word {
            line(format!(
                "best word: {} (length {}, explored {}, {})",
                w.word, w.length, w.explored, w.classification
            ));
            line(format!(
                "lambda \u{2208} [{}, {}]",
                w.lambda_decimal[0], w.lambda_decimal[1]
            ));
            line(format!(
                "entropy log lambda \u{2208} [{}, {}]",
                w.entropy_log[0], w.entropy_log[1]
            ));
        }
        if let Some(fc) = &dyn_rec.free_check {
            match &fc.relator {
                None => line(format!("free check: no relator up to length {}", fc.depth)),
                Some(r) => line(format!(
                    "free check: relator {} at length {}",
                    r,
                    fc.free_up_to + 1
                )),
            }
        }
    }
    for c in &report.certificates {
        let detail = if !c.witnesses.is_empty() {
            format!(", witnesses {}", c.witnesses.join(" "))
        } else if let Some([from, to]) = &c.moved {
            format!(", moves {from} -> {to}")
        } else if let Some(reason) = &c.reason {
            format!(", {reason}")
        } else {
            String::new()
        };
        line(format!(
            "certificate [{} on {}]: {}{} ({})",
            c.subject, c.curve, c.verdict, detail, c.method
        ));
    }
    if let Some(s) = &report.salem {
        line(format!(
            "salem: degree {}, irreducibility {}, {} interior trace roots",
            s.degree, s.irreducibility, s.interior_trace_roots
        ));
        line(format!(
            "lambda \u{2208} [{}, {}]",
            s.lambda_decimal[0], s.lambda_decimal[1]
        ));
    }
    for a in &report.assertions {
        line(format!(
            "assert {}: {} ({})",
            if a.holds { "ok" } else { "FAIL" },
            a.id,
            a.statement
        ));
    }
    if report.failures.is_empty() {
        line("failures: none".to_string());
    } else {
        line(format!("failures: {}", report.failures.join(" ")));
    }
    for n in &report.notes {
        line(format!("note: {n}"));
    }
    out
}
