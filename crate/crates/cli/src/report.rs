use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Newline-delimited JSON or CSV records, to stdout or a file.
///
/// CSV columns come from the first record; nested values are written as
/// compact JSON inside one cell.
pub struct Report {
    format: Format,
    out: Box<dyn Write>,
    csv_rows: Vec<Value>,
}

impl Report {
    pub fn new(format: Format, path: Option<&Path>) -> anyhow::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Self {
            format,
            out,
            csv_rows: Vec::new(),
        })
    }

    pub fn emit<T: Serialize>(&mut self, record: &T) -> anyhow::Result<()> {
        let v = serde_json::to_value(record)?;
        match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(&v)?)?,
            Format::Csv => self.csv_rows.push(v),
        }
        Ok(())
    }

    pub fn finish(mut self) -> anyhow::Result<()> {
        if self.format == Format::Csv {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(&mut self.out);
            let mut header: Option<Vec<String>> = None;
            for row in &self.csv_rows {
                let Value::Object(map) = row else {
                    w.write_record([cell(row)])?;
                    continue;
                };
                let keys: Vec<String> = map.keys().cloned().collect();
                if header.as_ref() != Some(&keys) {
                    w.write_record(&keys)?;
                    header = Some(keys);
                }
                w.write_record(map.values().map(cell))?;
            }
            w.flush()?;
        }
        self.out.flush()?;
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
