//! Verification records shared by every check.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `{re, im}` serialization for complex numbers.
pub mod cjson {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = ReIm::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }

    pub fn value(z: Complex64) -> serde_json::Value {
        serde_json::json!({ "re": z.re, "im": z.im })
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
            z.map(|z| ReIm { re: z.re, im: z.im }).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
            Ok(Option::<ReIm>::deserialize(d)?.map(|r| Complex64::new(r.re, r.im)))
        }
    }
}

/// One evaluation point of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub label: String,
    #[serde(with = "cjson")]
    pub lhs: Complex64,
    #[serde(with = "cjson")]
    pub rhs: Complex64,
    pub abs_residual: f64,
    pub rel_residual: f64,
}

/// Scale below which relative residuals degrade to absolute ones.
pub const RELATIVE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    /// Name of the identity being verified.
    pub paper_anchor: String,
    pub params: BTreeMap<String, Value>,
    pub grid: Vec<GridPoint>,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: u64,
    /// `rel = abs / (scale_floor + |rhs|)`.
    pub scale_floor: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check_name: &str, paper_anchor: &str, tolerance: f64) -> Self {
        Self {
            check_name: check_name.into(),
            paper_anchor: paper_anchor.into(),
            params: BTreeMap::new(),
            grid: Vec::new(),
            max_abs_residual: 0.0,
            max_rel_residual: 0.0,
            tolerance,
            pass: true,
            runtime_ms: 0,
            scale_floor: 1.0,
            notes: Vec::new(),
        }
    }

    /// Residuals are taken relative to `|rhs|`, floored at [`RELATIVE_FLOOR`].
    pub fn relative(mut self) -> Self {
        self.scale_floor = RELATIVE_FLOOR;
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.into(), value.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn push(&mut self, label: impl Into<String>, lhs: Complex64, rhs: Complex64) {
        let abs = (lhs - rhs).norm();
        let denom = self.scale_floor + rhs.norm();
        let rel = if abs == 0.0 {
            0.0
        } else if denom > 0.0 {
            abs / denom
        } else {
            f64::INFINITY
        };
        let rel = if rel.is_nan() { f64::INFINITY } else { rel };
        self.max_abs_residual = self.max_abs_residual.max(abs);
        self.max_rel_residual = self.max_rel_residual.max(rel);
        self.pass = self.max_rel_residual <= self.tolerance;
        self.grid.push(GridPoint { label: label.into(), lhs, rhs, abs_residual: abs, rel_residual: rel });
    }

    /// Marks the report failed regardless of residuals.
    pub fn fail(&mut self, why: impl Into<String>) {
        self.pass = false;
        self.notes.push(why.into());
    }

    pub fn finish(mut self, started: Instant) -> Self {
        self.runtime_ms = started.elapsed().as_millis() as u64;
        self.pass = self.pass && self.max_rel_residual <= self.tolerance && !self.notes_have_failure();
        self
    }

    fn notes_have_failure(&self) -> bool {
        self.notes.iter().any(|n| n.starts_with("FAIL"))
    }

    /// Appends the grid points and notes of `other`, re-scoring them here.
    pub fn absorb(&mut self, other: CheckReport) {
        for p in other.grid {
            self.push(p.label, p.lhs, p.rhs);
        }
        for n in other.notes {
            if n.starts_with("FAIL") {
                self.fail(n);
            } else {
                self.note(n);
            }
        }
    }

    /// Combines several reports into one summary; passes iff all pass.
    pub fn merge(name: &str, reports: &[CheckReport]) -> CheckReport {
        let mut out = CheckReport::new(name, "merged", reports.iter().map(|r| r.tolerance).fold(0.0, f64::max));
        for r in reports {
            out.params.insert(r.check_name.clone(), Value::Bool(r.pass));
            out.max_abs_residual = out.max_abs_residual.max(r.max_abs_residual);
            out.max_rel_residual = out.max_rel_residual.max(r.max_rel_residual);
            out.runtime_ms += r.runtime_ms;
        }
        out.pass = reports.iter().all(|r| r.pass);
        out
    }

    /// CSV of per-point residuals: `label,abs_residual,rel_residual`.
    pub fn residual_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "abs_residual", "rel_residual"]).expect("in-memory write");
        for p in &self.grid {
            w.write_record([p.label.clone(), format!("{:e}", p.abs_residual), format!("{:e}", p.rel_residual)])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

pub fn format_point(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_bookkeeping() {
        let mut r = CheckReport::new("demo", "demo identity", 1e-6);
        r.push("a", Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        r.push("b", Complex64::new(2.0, 0.0), Complex64::new(2.0 + 1e-7, 0.0));
        assert!(r.pass);
        assert!((r.max_rel_residual - 1e-7 / 3.0).abs() < 1e-12);
        r.push("c", Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        assert!(!r.pass);
        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(r.residual_csv().starts_with("label,abs_residual,rel_residual\n"));
    }

    #[test]
    fn relative_mode_and_merge() {
        let mut r = CheckReport::new("rel", "x", 1e-3).relative();
        r.push("tiny", Complex64::new(1e-9, 0.0), Complex64::new(2e-9, 0.0));
        assert!(!r.pass);
        let ok = CheckReport::new("ok", "y", 1e-3);
        let m = CheckReport::merge("all", &[r, ok]);
        assert!(!m.pass);
        assert_eq!(m.params["ok"], Value::Bool(true));
    }
}
