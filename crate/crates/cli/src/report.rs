//! Reports: ordered key/value lists printed as `key: value` lines or as a
//! JSON object with the same key order.

use bdtriple_core::Rational;
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::Value;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn rational(self, key: &str, x: &Rational) -> Self {
        self.with(key, x.to_string())
    }

    pub fn rationals(self, key: &str, xs: &[Rational]) -> Self {
        let list: Vec<Value> = xs.iter().map(|x| Value::String(x.to_string())).collect();
        self.with(key, list)
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&plain(v));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Strings without quotes, lists in brackets.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => {
            let items: Vec<String> = xs.iter().map(plain).collect();
            format!("[{}]", items.join(", "))
        }
        other => other.to_string(),
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (k, v) in &self.entries {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bdtriple_core::exactlinalg::frac;

    #[test]
    fn key_order_is_kept() {
        let r = Report::new()
            .with("zeta", true)
            .rationals("alpha", &[frac(1, 2), frac(-3, 1)])
            .with("dim", 4);
        assert_eq!(r.to_human(), "zeta: true\nalpha: [1/2, -3]\ndim: 4\n");
        assert_eq!(
            r.to_json(),
            "{\"zeta\":true,\"alpha\":[\"1/2\",\"-3\"],\"dim\":4}\n"
        );
    }
}
