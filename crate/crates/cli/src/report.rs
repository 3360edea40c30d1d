//! Report assembly and the two output encodings.

use std::io::{self, Write};

use anosovlab::report::Check;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Result items for the CSV encoding: fixed columns, one row per item.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub items: Vec<Value>,
}

impl Table {
    pub fn new(columns: &[&'static str], items: Vec<Value>) -> Table {
        Table { columns: columns.to_vec(), items }
    }
}

/// Everything a subcommand produces before encoding.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub results: Value,
    pub table: Table,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl Report {
    pub fn new(command: String, params: Value, outcome: &Outcome, wall_time_secs: Option<f64>) -> Report {
        Report {
            command,
            params,
            results: outcome.results.clone(),
            pass: outcome.checks.iter().all(|c| c.pass),
            checks: outcome.checks.clone(),
            wall_time_secs,
        }
    }
}

/// Pretty JSON with every float written as `{:.16e}` (17 significant digits).
struct SciFormatter(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for SciFormatter {
    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }

    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", sci(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Bool(b)) => b.to_string(),
        Some(Value::Number(n)) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => i.to_string(),
            (_, Some(u), _) => u.to_string(),
            (_, _, Some(f)) => sci(f),
            _ => n.to_string(),
        },
        Some(other) => String::from_utf8(to_compact(other)).unwrap_or_default(),
    }
}

fn to_compact(v: &Value) -> Vec<u8> {
    struct Compact;
    impl Formatter for Compact {
        fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
            write!(w, "{}", sci(value))
        }
    }
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Compact);
    v.serialize(&mut ser).expect("values always serialise");
    out
}

pub fn to_csv(table: &Table) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for item in &table.items {
        w.write_record(table.columns.iter().map(|c| cell(item.get(*c))))?;
    }
    Ok(w.into_inner().map_err(|e| anyhow::anyhow!("csv flush: {e}"))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_carry_seventeen_digits() {
        let bytes = to_json(&json!({"x": 0.1, "n": 3, "bad": f64::NAN})).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.contains("\"x\": 1.0000000000000001e-1"), "{text}");
        assert!(text.contains("\"n\": 3"));
        assert!(text.contains("\"bad\": null"));
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
    }

    #[test]
    fn csv_has_header_and_one_row_per_item() {
        let t = Table::new(&["a", "b"], vec![json!({"a": 1, "b": 0.5}), json!({"a": -2, "b": [1, 2]})]);
        let text = String::from_utf8(to_csv(&t).unwrap()).unwrap();
        assert_eq!(text, "a,b\n1,5.0000000000000000e-1\n-2,\"[1,2]\"\n");
        let empty = Table::new(&["a"], vec![]);
        assert_eq!(String::from_utf8(to_csv(&empty).unwrap()).unwrap(), "a\n");
    }
}
