use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A table of decimal strings plus metadata; CSV drops everything but the table.
pub struct Document {
    pub meta: Map<String, Value>,
    pub extra: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Document {
    pub fn new(columns: &[&str]) -> Self {
        Document {
            meta: Map::new(),
            extra: Map::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn extra(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.extra.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.into_inner().map_err(|e| e.into_error())
            }
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("meta".into(), Value::Object(self.meta.clone()));
                for (k, v) in &self.extra {
                    doc.insert(k.clone(), v.clone());
                }
                let rows = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| {
                                let v = if v.is_empty() {
                                    Value::Null
                                } else {
                                    Value::String(v.clone())
                                };
                                (c.clone(), v)
                            })
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                doc.insert("rows".into(), Value::Array(rows));
                let mut out = serde_json::to_vec_pretty(&Value::Object(doc))?;
                out.push(b'\n');
                Ok(out)
            }
        }
    }
}

/// Writes to standard output, or atomically to `path` (temp file in the same
/// directory, then rename).
pub fn emit(bytes: &[u8], path: Option<&Path>) -> io::Result<()> {
    match path {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
                _ => Path::new(".").to_path_buf(),
            };
            fs::create_dir_all(&dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
