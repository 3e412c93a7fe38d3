//! Report emission: one key/value stream rendered as aligned human text,
//! tab-separated rows, or `key = value` records.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Tsv,
    Records,
}

pub struct Report {
    rows: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report { rows: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl std::fmt::Display) {
        self.rows.push((key.into(), value.to_string()));
    }

    pub fn push_f64(&mut self, key: impl Into<String>, value: f64) {
        // fixed scientific formatting keeps reports byte-identical
        self.rows.push((key.into(), format!("{value:.12e}")));
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Human => {
                let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.rows {
                    out.push_str(&format!("{k:<width$}  {v}\n"));
                }
            }
            Format::Tsv => {
                for (k, v) in &self.rows {
                    out.push_str(&format!("{k}\t{v}\n"));
                }
            }
            Format::Records => {
                for (k, v) in &self.rows {
                    out.push_str(&format!("{k} = {v}\n"));
                }
            }
        }
        out
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}
