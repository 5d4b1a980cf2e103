use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Everything a command prints, in all three formats.
pub struct Output {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub plain: Vec<String>,
}

impl Output {
    pub fn new(command: &'static str, input: Value, result: Value) -> Self {
        Self {
            command,
            input,
            result,
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            plain: Vec::new(),
        }
    }

    pub fn document(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input,
            "result": self.result,
        })
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.document())?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.csv_header)?;
                for row in &self.csv_rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            Format::Plain => {
                for line in &self.plain {
                    writeln!(out, "{line}")?;
                }
                Ok(())
            }
        }
    }
}
