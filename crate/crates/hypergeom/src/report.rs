//! Machine-readable results: verification records and evaluation rows,
//! with JSON and CSV writers that agree to the last bit.

use serde::{Deserialize, Serialize};

use crate::scalar::C64;

/// One verification record, one per named invariant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// Human-readable parameter summary of the run.
    pub params: String,
    /// Number of sampled points/cases behind the residual.
    pub samples: usize,
    /// Worst (or otherwise aggregated) residual observed.
    pub residual: f64,
    /// Pass threshold the residual was compared against.
    pub threshold: f64,
    pub pass: bool,
    /// Extra context (fallback routes, condition numbers); empty when
    /// there is nothing to say.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckRecord {
    pub fn new(
        check_id: &str,
        params: impl Into<String>,
        samples: usize,
        residual: f64,
        threshold: f64,
    ) -> Self {
        Self {
            check_id: check_id.to_string(),
            params: params.into(),
            samples,
            residual,
            threshold,
            pass: residual < threshold && residual.is_finite(),
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Record a check that failed to even run.
    pub fn errored(check_id: &str, err: &crate::error::Error) -> Self {
        Self {
            check_id: check_id.to_string(),
            params: String::new(),
            samples: 0,
            residual: f64::INFINITY,
            threshold: 0.0,
            pass: false,
            note: format!("error: {err}"),
        }
    }
}

/// A full verification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::error::Result<Self> {
        serde_json::from_str(s)
            .map_err(|e| crate::error::Error::Invalid(format!("bad report JSON: {e}")))
    }

    /// CSV with one line per record (the record-level schema).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,params,samples,residual,threshold,pass\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.check_id,
                csv_quote(&r.params),
                r.samples,
                fmt17(r.residual),
                fmt17(r.threshold),
                r.pass
            ));
        }
        out
    }
}

/// One evaluated point of an `eval`-style job.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalRow {
    pub check_id: String,
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub value_re: f64,
    pub value_im: f64,
    /// Series truncation bound (or other residual) for the value.
    pub residual: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub est_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms_used: Option<usize>,
}

impl EvalRow {
    pub fn new(check_id: &str, lambda: C64, value: C64, residual: f64, pass: bool) -> Self {
        Self {
            check_id: check_id.to_string(),
            lambda_re: lambda.re,
            lambda_im: lambda.im,
            value_re: value.re,
            value_im: value.im,
            residual,
            pass,
            est_error: None,
            terms_used: None,
        }
    }
}

/// 17 significant digits: enough to reproduce any f64 exactly.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV for evaluation rows: the fixed column schema shared with JSON.
pub fn eval_rows_to_csv(rows: &[EvalRow]) -> String {
    let mut out = String::from("check_id,lambda_re,lambda_im,value_re,value_im,residual,pass\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.check_id,
            fmt17(r.lambda_re),
            fmt17(r.lambda_im),
            fmt17(r.value_re),
            fmt17(r.value_im),
            fmt17(r.residual),
            r.pass
        ));
    }
    out
}

pub fn eval_rows_to_json(rows: &[EvalRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}
