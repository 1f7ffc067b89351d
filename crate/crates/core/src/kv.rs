//! Line-oriented `key = value` records. Blank lines and lines starting with
//! `#` are ignored. Floats are written with Rust's shortest round-trip
//! formatting so parse-back is exact.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub(crate) struct KvWriter {
    out: String,
}

impl KvWriter {
    pub fn new() -> Self {
        KvWriter::default()
    }

    pub fn comment(&mut self, text: &str) -> &mut Self {
        self.out.push_str("# ");
        self.out.push_str(text);
        self.out.push('\n');
        self
    }

    pub fn entry(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.out.push_str(&format!("{key} = {value}\n"));
        self
    }

    pub fn list(&mut self, key: &str, values: &[f64]) -> &mut Self {
        let joined: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        self.entry(key, joined.join(","))
    }

    pub fn finish(self) -> String {
        self.out
    }
}

#[derive(Debug, Clone)]
pub(crate) struct KvRecord {
    context: String,
    entries: BTreeMap<String, String>,
    order: Vec<String>,
}

impl KvRecord {
    pub fn parse(text: &str, context: &str) -> Result<Self> {
        Self::parse_lines(text.lines(), context)
    }

    pub fn parse_lines<'a>(lines: impl Iterator<Item = &'a str>, context: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut order = Vec::new();
        for (n, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::format(context, format!("line {}: expected `key = value`", n + 1))
            })?;
            let k = k.trim().to_string();
            if entries.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(Error::format(context, format!("duplicate key `{k}`")));
            }
            order.push(k);
        }
        Ok(KvRecord {
            context: context.to_string(),
            entries,
            order,
        })
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn require_str(&self, key: &str) -> Result<&str> {
        self.get_str(key)
            .ok_or_else(|| Error::format(&self.context, format!("missing key `{key}`")))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get_str(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::format(&self.context, format!("bad value for `{key}`: {v}")))
            })
            .transpose()
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| Error::format(&self.context, format!("missing key `{key}`")))
    }

    pub fn list(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self.require_str(key)?;
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::format(&self.context, format!("bad number in `{key}`: {s}")))
            })
            .collect()
    }

    /// Keys in file order.
    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_parse() {
        let mut w = KvWriter::new();
        w.comment("hello")
            .entry("a", 0.1 + 0.2)
            .entry("name", "x y")
            .list("vals", &[1.5, -2.0, 1e-300]);
        let rec = KvRecord::parse(&w.finish(), "test").unwrap();
        assert_eq!(rec.require::<f64>("a").unwrap(), 0.1 + 0.2);
        assert_eq!(rec.require_str("name").unwrap(), "x y");
        assert_eq!(rec.list("vals").unwrap(), vec![1.5, -2.0, 1e-300]);
        assert_eq!(rec.keys().collect::<Vec<_>>(), vec!["a", "name", "vals"]);
        assert!(rec.require::<f64>("missing").is_err());
        assert!(rec.require::<f64>("name").is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(KvRecord::parse("just text\n", "t").is_err());
        assert!(KvRecord::parse("a = 1\na = 2\n", "t").is_err());
    }
}
