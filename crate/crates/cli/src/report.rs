//! Report schemas and their JSON/CSV encodings.

use hombias::Rational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = concat!("hombias ", env!("CARGO_PKG_VERSION"));

/// `"p/q"`, also for integers.
pub fn ratio_string(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Summary of the gap between the constructions and the spectral bound on `A_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub version: String,
    pub group: String,
    pub order: usize,
    pub d_min: usize,
    pub upper_bound_thm1: f64,
    pub upper_bound_thm2: String,
    pub upper_bound_thm2_f64: f64,
    pub thm3_bound: String,
    pub thm3_bound_f64: f64,
    /// Present when the weakened involution premise holds.
    pub thm4_bound: Option<String>,
    pub thm4_bound_f64: Option<f64>,
    #[serde(rename = "exact_mean_T")]
    pub exact_mean_t: String,
    #[serde(rename = "exact_mean_T_f64")]
    pub exact_mean_t_f64: f64,
    #[serde(rename = "mc_mean_T", default, skip_serializing_if = "Option::is_none")]
    pub mc_mean_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc_std: Option<f64>,
    pub trials: usize,
    pub best_search_bias: String,
    pub best_search_bias_f64: f64,
    pub search_evidence: String,
    pub seed: u64,
    pub runtime_ms: u64,
}

pub fn emit(value: &Value, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => emit_csv(value),
    }
}

/// One header row and one data row; nested values become compact JSON cells.
fn emit_csv(value: &Value) -> Result<String, String> {
    let obj = value.as_object().ok_or("CSV output needs a JSON object")?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(obj.keys()).map_err(|e| e.to_string())?;
    let cells: Vec<String> = obj
        .values()
        .map(|v| match v {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    w.write_record(&cells).map_err(|e| e.to_string())?;
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GapReport {
        GapReport {
            version: VERSION.into(),
            group: "A5".into(),
            order: 60,
            d_min: 3,
            upper_bound_thm1: 0.7886751345948129,
            upper_bound_thm2: "2/3".into(),
            upper_bound_thm2_f64: 2.0 / 3.0,
            thm3_bound: "1/20".into(),
            thm3_bound_f64: 0.05,
            thm4_bound: Some("1/10".into()),
            thm4_bound_f64: Some(0.1),
            exact_mean_t: "1/5".into(),
            exact_mean_t_f64: 0.2,
            mc_mean_t: Some(0.2),
            mc_std: Some(0.05),
            trials: 10,
            best_search_bias: "3/4".into(),
            best_search_bias_f64: 0.75,
            search_evidence: "empirical".into(),
            seed: 7,
            runtime_ms: 1,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = emit(&serde_json::to_value(&r).unwrap(), Format::Json).unwrap();
        let back: GapReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"mc_mean_T\""));
    }

    #[test]
    fn mc_fields_absent_without_trials() {
        let mut r = sample();
        r.trials = 0;
        r.mc_mean_t = None;
        r.mc_std = None;
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.get("mc_mean_T").is_none());
        assert!(v.get("mc_std").is_none());
        let back: GapReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_has_header_and_one_row() {
        let text = emit(&serde_json::to_value(sample()).unwrap(), Format::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("version,group,order,d_min"));
        assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio_string(Rational::from_integer(1)), "1/1");
        assert_eq!(ratio_string(Rational::new(2, 4)), "1/2");
        assert_eq!(ratio_f64(Rational::new(1, 4)), 0.25);
    }
}
