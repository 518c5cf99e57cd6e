use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::json;

use semicanon::format::{to_bit_rows, to_compact};
use semicanon::{BinaryMatrix, CountTable};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

/// text: `k(n,i) = v` per line; csv: `n,i,count` rows; json: one object.
pub fn write_counts(
    out: &mut dyn Write,
    table: &CountTable,
    kind: &str,
    format: OutputFormat,
) -> io::Result<()> {
    let n = table.n();
    match format {
        OutputFormat::Text => {
            for (i, v) in table.counts().iter().enumerate() {
                writeln!(out, "k({n},{i}) = {v}")?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "n,i,count")?;
            for (i, v) in table.counts().iter().enumerate() {
                writeln!(out, "{n},{i},{v}")?;
            }
        }
        OutputFormat::Json => {
            let value = json!({
                "n": n,
                "kind": kind,
                "counts": table.counts(),
                "total": table.total(),
            });
            writeln!(out, "{value}")?;
        }
    }
    Ok(())
}

/// One matrix per line.
pub fn write_list_item(out: &mut dyn Write, a: &BinaryMatrix, format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Text => writeln!(out, "{}", to_compact(a)),
        OutputFormat::Csv => {
            let mut fields = vec![a.n().to_string(), a.m().to_string()];
            fields.extend(a.rows().iter().map(u64::to_string));
            writeln!(out, "{}", fields.join(","))
        }
        OutputFormat::Json => writeln!(out, "{}", matrix_json(a)),
    }
}

pub fn write_matrix(out: &mut dyn Write, a: &BinaryMatrix, format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Text => write!(out, "{}", to_bit_rows(a)),
        OutputFormat::Csv => {
            for i in 0..a.n() {
                let cells: Vec<&str> = (0..a.m())
                    .map(|j| if a.get(i, j) { "1" } else { "0" })
                    .collect();
                writeln!(out, "{}", cells.join(","))?;
            }
            Ok(())
        }
        OutputFormat::Json => writeln!(out, "{}", matrix_json(a)),
    }
}

fn matrix_json(a: &BinaryMatrix) -> serde_json::Value {
    json!({ "n": a.n(), "m": a.m(), "rows": a.rows() })
}
