use std::io::Write;

use serde::Serialize;
use serde_json::value::RawValue;

/// One checked identity at one parameter set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub identity: String,
    pub params: String,
    #[serde(serialize_with = "ser_f64")]
    pub max_error: f64,
    #[serde(serialize_with = "ser_f64")]
    pub tolerance: f64,
    pub pass: bool,
    /// Record-only rows (false) are reported but do not decide the outcome.
    pub gating: bool,
}

impl Row {
    /// A gating row; NaN errors fail.
    pub fn new(identity: impl Into<String>, params: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Self {
            identity: identity.into(),
            params: params.into(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
            gating: true,
        }
    }

    /// A row kept for the record only.
    pub fn record(identity: impl Into<String>, params: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Self { gating: false, ..Self::new(identity, params, max_error, tolerance) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub pass: usize,
    pub fail: usize,
    /// Failing rows that count against the outcome.
    pub gating_fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format '{s}' (expected json or csv)")),
        }
    }
}

/// 17 significant digits; non-finite values have no JSON number form.
pub(crate) fn fmt_f64(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

fn ser_f64<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    match fmt_f64(*x) {
        Some(text) => RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s),
        None => s.serialize_none(),
    }
}

impl VerifyReport {
    /// Sorts rows by (identity, params) and tallies the summary.
    pub fn new(suite: impl Into<String>, seed: u64, mut rows: Vec<Row>) -> Self {
        rows.sort_by(|a, b| (&a.identity, &a.params).cmp(&(&b.identity, &b.params)));
        let pass = rows.iter().filter(|r| r.pass).count();
        let gating_fail = rows.iter().filter(|r| r.gating && !r.pass).count();
        let summary = Summary { rows: rows.len(), pass, fail: rows.len() - pass, gating_fail };
        Self { suite: suite.into(), seed, rows, summary }
    }

    /// True when every gating row passes.
    pub fn passed(&self) -> bool {
        self.summary.gating_fail == 0
    }

    pub fn rows_for<'a>(&'a self, identity: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.identity == identity)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["identity", "params", "max_error", "tolerance", "pass", "gating"])?;
        for r in &self.rows {
            let num = |x: f64| fmt_f64(x).unwrap_or_else(|| "NaN".into());
            w.write_record([
                r.identity.as_str(),
                r.params.as_str(),
                &num(r.max_error),
                &num(r.tolerance),
                if r.pass { "true" } else { "false" },
                if r.gating { "true" } else { "false" },
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerifyReport {
        VerifyReport::new(
            "demo",
            3,
            vec![
                Row::new("b", "x=1", 2e-12, 1e-10),
                Row::new("a", "x=2", f64::NAN, 1e-10),
                Row::record("a", "x=1", 0.5, 1e-9),
            ],
        )
    }

    #[test]
    fn sorted_and_counted() {
        let r = sample();
        let keys: Vec<_> = r.rows.iter().map(|r| (r.identity.as_str(), r.params.as_str())).collect();
        assert_eq!(keys, [("a", "x=1"), ("a", "x=2"), ("b", "x=1")]);
        assert_eq!(r.summary, Summary { rows: 3, pass: 1, fail: 2, gating_fail: 1 });
        assert!(!r.passed());
    }

    #[test]
    fn json_numbers_round_trip() {
        let r = VerifyReport::new("demo", 0, vec![Row::new("a", "p", 0.1 + 0.2, 1e-10)]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["rows"][0]["max_error"].as_f64().unwrap(), 0.1 + 0.2);
        assert!(r.to_json().contains("3.0000000000000004e-1"));
        let v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert!(v["rows"][1]["max_error"].is_null());
        assert_eq!(v["summary"]["gating_fail"], 1);
    }

    #[test]
    fn csv_layout() {
        let text = sample().to_csv();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "identity,params,max_error,tolerance,pass,gating");
        assert_eq!(lines.next().unwrap(), "a,x=1,5.0000000000000000e-1,1.0000000000000001e-9,false,false");
        assert_eq!(text.lines().count(), 4);
    }
}
