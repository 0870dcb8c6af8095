//! CSV in, CSV or JSON out.

use std::io::Write;
use std::path::Path;

use dfc_core::{GridFunction, Scalar};
use serde_json::{Map, Value};

use crate::args::Format;
use crate::CliError;

/// Reads a `t,value` CSV into a grid function. The `t` column must run
/// `base, base+1, base+2, ...`; `base` defaults to the first `t`.
pub fn read_grid<S: Scalar>(
    path: &Path,
    base: Option<&S>,
    n: Option<usize>,
) -> Result<GridFunction<S>, CliError> {
    let data = |msg: String| CliError::Data(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| data(e.to_string()))?;
    let headers = reader.headers().map_err(|e| data(e.to_string()))?;
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
        return Err(data(format!(
            "expected header \"t,value\", found {:?}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut start: Option<S> = base.cloned();
    let mut samples = Vec::new();
    for (j, record) in reader.records().enumerate() {
        let line = j + 2;
        let record = record.map_err(|e| data(e.to_string()))?;
        if record.len() != 2 {
            return Err(data(format!("line {line}: expected 2 fields")));
        }
        let parse = |text: &str| {
            S::parse(text).map_err(|e| data(format!("line {line}: {e}")))
        };
        let t = parse(&record[0])?;
        let value = parse(&record[1])?;
        let start = start.get_or_insert_with(|| t.clone());
        let expected = start.clone() + S::from_i64(j as i64);
        if t != expected {
            return Err(data(format!(
                "line {line}: t = {t} but unit spacing from {start} requires {expected}"
            )));
        }
        samples.push(value);
    }
    let start = start.ok_or_else(|| data("no data rows".into()))?;
    if let Some(n) = n {
        if n > samples.len() {
            return Err(data(format!("--n {n} exceeds the {} rows", samples.len())));
        }
        samples.truncate(n);
    }
    Ok(GridFunction::new(start, samples)?)
}

/// One output cell in both of its renderings.
pub struct Cell {
    text: String,
    json: Value,
}

impl Cell {
    pub fn scalar<S: Scalar>(value: &S) -> Self {
        Cell {
            text: value.to_string(),
            json: value
                .serialize_value(serde_json::value::Serializer)
                .expect("scalars serialize to json"),
        }
    }

    pub fn index(j: usize) -> Self {
        Cell {
            text: j.to_string(),
            json: Value::from(j),
        }
    }
}

pub fn write_table(
    out: &mut dyn Write,
    format: Format,
    headers: [&str; 2],
    rows: impl IntoIterator<Item = [Cell; 2]>,
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            let io = |e: csv::Error| CliError::Data(e.to_string());
            writer.write_record(headers).map_err(io)?;
            for [a, b] in rows {
                writer.write_record([a.text, b.text]).map_err(io)?;
            }
            writer.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|[a, b]| {
                    let mut obj = Map::new();
                    obj.insert(headers[0].to_owned(), a.json);
                    obj.insert(headers[1].to_owned(), b.json);
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_writer(&mut *out, &rows).map_err(|e| CliError::Data(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}
