use serde::Serialize;

use crate::Format;

/// One command result in all three output formats.
pub struct Output {
    json: String,
    table: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(value: &impl Serialize) -> Self {
        Output {
            json: serde_json::to_string_pretty(value).expect("report types serialize") + "\n",
            table: String::new(),
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Sets the CSV columns; the table defaults to the same rows, aligned.
    pub fn rows(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    /// Replaces the table form with preformatted text.
    pub fn table(mut self, text: impl Into<String>) -> Self {
        self.table = text.into();
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.clone(),
            Format::Csv => self.csv(),
            Format::Table if !self.table.is_empty() => self.table.clone(),
            Format::Table => aligned(&self.header, &self.rows),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory csv");
        for row in &self.rows {
            w.write_record(row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }
}

/// Right-aligned columns under a dashed rule.
pub fn aligned<H: AsRef<str>>(header: &[H], rows: &[Vec<String>]) -> String {
    let header: Vec<String> = header.iter().map(|h| h.as_ref().to_string()).collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(&header);
    out.push_str(&line(
        &widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>(),
    ));
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// `key: value` lines for single-record tables.
pub fn fields(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// Residue vector as `(a,b,c)`.
pub fn vector(v: &[u32]) -> String {
    format!("({})", join(v, ","))
}
