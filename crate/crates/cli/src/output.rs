//! Output rendering: numeric tables as CSV or JSON, reports as JSON or
//! flattened key,value CSV.  All formatting goes through Rust's default
//! float formatting (shortest round-trip representation, '.' decimal,
//! no locale dependence) and every line ends in '\n'.

use crate::args::OutputFormat;
use crate::error::CliError;
use serde_json::Value;
use std::io::Write;
use std::path::Path;

/// A rectangular numeric table with named columns.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn render(&self, format: OutputFormat) -> Vec<u8> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> Vec<u8> {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out.into_bytes()
    }

    fn to_json(&self) -> Vec<u8> {
        let value = serde_json::json!({
            "columns": self.columns,
            "rows": self.rows,
        });
        render_json(&value)
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json(value: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("JSON serialisation");
    bytes.push(b'\n');
    bytes
}

/// A report rendered either as JSON or as key,value CSV rows with nested
/// objects flattened into dotted keys.
pub fn render_report(value: &Value, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => render_json(value),
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            flatten_into("", value, &mut rows);
            let mut out = String::from("key,value\n");
            for (key, cell) in rows {
                out.push_str(&format!("{key},{cell}\n"));
            }
            out.into_bytes()
        }
    }
}

fn flatten_into(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (key, sub) in map {
                let child = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten_into(&child, sub, rows);
            }
        }
        Value::Array(items) => {
            for (i, sub) in items.iter().enumerate() {
                flatten_into(&format!("{prefix}.{i}"), sub, rows);
            }
        }
        Value::Null => rows.push((prefix.to_owned(), String::new())),
        Value::String(s) => rows.push((prefix.to_owned(), csv_escape(s))),
        other => rows.push((prefix.to_owned(), other.to_string())),
    }
}

/// Quotes a string cell when it contains a comma, quote or newline.
fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_owned()
    }
}

/// Writes rendered bytes to the requested file, or to stdout when no
/// path was given.
pub fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)
            .map_err(|e| CliError::Numerical(format!("writing {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_tables_have_header_unix_newlines_and_dot_decimals() {
        let table = Table {
            columns: vec!["t", "pdf"],
            rows: vec![vec![0.0, 1.0], vec![0.5, 0.25]],
        };
        let text = String::from_utf8(table.render(OutputFormat::Csv)).unwrap();
        assert_eq!(text, "t,pdf\n0,1\n0.5,0.25\n");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_tables_carry_columns_and_rows() {
        let table = Table {
            columns: vec!["a"],
            rows: vec![vec![2.0]],
        };
        let parsed: Value =
            serde_json::from_slice(&table.render(OutputFormat::Json)).unwrap();
        assert_eq!(parsed["columns"][0], "a");
        assert_eq!(parsed["rows"][0][0], 2.0);
    }

    #[test]
    fn reports_flatten_to_dotted_csv_keys() {
        let value = serde_json::json!({
            "scheme": 1,
            "tail": {"amplitude": 2.5, "note": null},
        });
        let text =
            String::from_utf8(render_report(&value, OutputFormat::Csv)).unwrap();
        assert!(text.starts_with("key,value\n"));
        assert!(text.contains("scheme,1\n"));
        assert!(text.contains("tail.amplitude,2.5\n"));
        assert!(text.contains("tail.note,\n"));
    }

    #[test]
    fn string_cells_with_commas_are_quoted() {
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("plain"), "plain");
        assert_eq!(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
