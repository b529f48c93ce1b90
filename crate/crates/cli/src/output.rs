use clap::ValueEnum;
use serde_json::Value;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// What a command prints, in both formats, and whether it succeeded.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    /// Key and one or more value lines, printed as an aligned table.
    pub rows: Vec<(String, Vec<String>)>,
    pub passed: bool,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            json,
            rows: Vec::new(),
            passed: true,
        }
    }

    pub fn row(mut self, key: &str, value: impl Into<String>) -> Self {
        self.rows.push((key.to_owned(), vec![value.into()]));
        self
    }

    pub fn rows(mut self, key: &str, values: Vec<String>) -> Self {
        self.rows.push((key.to_owned(), values));
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (key, values) in &self.rows {
            let values: &[String] = if values.is_empty() {
                &[String::new()]
            } else {
                values
            };
            for (i, v) in values.iter().enumerate() {
                let label = if i == 0 { key.as_str() } else { "" };
                let line = format!("{label:<width$}  {v}");
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        out
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => print!("{}", self.render_text()),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&self.json).expect("serializable report")
            ),
        }
    }
}
