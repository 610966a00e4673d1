use serde::Serialize;

use crate::{Failure, Format};

/// Rendered output and whether the run counts as a success.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

/// Accumulates TSV lines or one JSON document.
pub struct Report {
    format: Format,
    lines: Vec<String>,
    json: serde_json::Map<String, serde_json::Value>,
    ok: bool,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Self { format, lines: Vec::new(), json: serde_json::Map::new(), ok: true }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let cells: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        self.lines.push(cells.join("\t"));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn field<T: Serialize>(&mut self, key: &str, value: &T) -> Result<(), Failure> {
        let v = serde_json::to_value(value).map_err(|e| Failure::Internal(format!("serializing {key}: {e}")))?;
        self.json.insert(key.to_string(), v);
        Ok(())
    }

    pub fn fail(&mut self) {
        self.ok = false;
    }

    pub fn finish(mut self) -> Result<Output, Failure> {
        let text = match self.format {
            Format::Tsv => {
                let mut t = self.lines.join("\n");
                t.push('\n');
                t
            }
            Format::Json => {
                self.json.insert("ok".into(), serde_json::Value::Bool(self.ok));
                let mut t = serde_json::to_string_pretty(&serde_json::Value::Object(self.json))
                    .map_err(|e| Failure::Internal(format!("serializing output: {e}")))?;
                t.push('\n');
                t
            }
        };
        Ok(Output { text, ok: self.ok })
    }
}
