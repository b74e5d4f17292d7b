use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// One checked statement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub id: String,
    pub inputs: Value,
    pub observed: Value,
    pub expected: Value,
    pub pass: bool,
}

impl Entry {
    pub fn new(id: impl Into<String>, inputs: Value, observed: Value, expected: Value, pass: bool) -> Self {
        Entry { id: id.into(), inputs, observed, expected, pass }
    }

    /// A computed value with nothing to compare against.
    pub fn computed(id: impl Into<String>, inputs: Value, observed: Value) -> Self {
        Entry::new(id, inputs, observed, Value::Null, true)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub command: Vec<String>,
    pub parameters: Value,
    pub entries: Vec<Entry>,
    pub pass: bool,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: Vec<String>, parameters: Value, entries: Vec<Entry>) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        Report {
            schema: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            parameters,
            entries,
            pass,
            timing_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A flat scan table for CSV export.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub table: Option<Table>,
}

/// `value` with any top-level `timing_ms` removed, for comparing runs.
pub fn without_timing(json: &str) -> Result<Value, serde_json::Error> {
    let mut v: Value = serde_json::from_str(json)?;
    if let Value::Object(map) = &mut v {
        map.remove("timing_ms");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn pass_summary_follows_entries() {
        let ok = Entry::computed("a", json!({}), json!(1));
        let bad = Entry::new("b", json!({}), json!(1), json!(2), false);
        assert!(Report::new(vec![], json!({}), vec![ok.clone()]).pass);
        assert!(!Report::new(vec![], json!({}), vec![ok, bad]).pass);
    }

    #[test]
    fn csv_quotes_fields() {
        let mut t = Table::new(&["n", "value"]);
        t.push(vec!["1".into(), "a,b".into()]);
        assert_eq!(t.to_csv().unwrap(), "n,value\n1,\"a,b\"\n");
    }

    #[test]
    fn timing_is_stripped() {
        let mut r = Report::new(vec!["x".into()], json!({}), vec![]);
        r.timing_ms = 17;
        let v = without_timing(&r.to_json()).unwrap();
        assert!(v.get("timing_ms").is_none());
        assert_eq!(v["schema"], json!(1));
    }
}
