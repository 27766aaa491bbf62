use serde::Serialize;
use serde_json::Value;

/// Outcome of one `solve` run. Absent fields do not apply to the algorithm.
#[derive(Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub instance: String,
    pub algo: &'static str,
    pub n: usize,
    pub m: usize,
    pub max_cut_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr_width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cert_alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cert_beta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cert_delta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub configurations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_bound_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight_vectors: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight_bound_violations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_entries: Option<u64>,
    pub elapsed_ms: f64,
    /// `pass`, or `n/a` when the algorithm returns no cut.
    pub cut_check: &'static str,
    /// `pass`, `fail` or `skipped`.
    pub oracle_check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_max_cut_size: Option<usize>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One `key=value` line per field, in declaration order.
    pub fn to_lines(&self) -> String {
        let Value::Object(map) = serde_json::to_value(self).expect("report serializes") else {
            unreachable!("a struct serializes to an object")
        };
        let mut out = String::new();
        for (k, v) in map {
            let v = match v {
                Value::String(s) => s,
                Value::Array(xs) => xs.iter().map(Value::to_string).collect::<Vec<_>>().join(","),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_follow_field_order_and_skip_absent_fields() {
        let r = RunReport {
            instance: "k4.txt".into(),
            algo: "oracle",
            n: 4,
            m: 6,
            max_cut_size: 4,
            cut: Some(vec![1, 2]),
            cut_check: "pass",
            oracle_check: "skipped",
            ..Default::default()
        };
        assert_eq!(
            r.to_lines(),
            "instance=k4.txt\nalgo=oracle\nn=4\nm=6\nmaxCutSize=4\ncut=1,2\nelapsedMs=0.0\ncutCheck=pass\noracleCheck=skipped\n"
        );
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["maxCutSize"], 4);
        assert!(v.get("alpha").is_none());
    }
}
