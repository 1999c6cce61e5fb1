use std::io::Write;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(&'static str),
}

impl Cell {
    /// Scientific notation with 17 significant digits, so every double round-trips.
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => (*s).to_owned(),
        }
    }
}

/// Header plus rows, in emission order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|&h| h == name)
    }

    /// Writes comma-separated values with LF line endings.
    pub fn write_csv<W: Write>(&self, out: W, label: &str) -> Result<()> {
        let to_io = |e: csv::Error| CliError::io(label, e.into());
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header).map_err(to_io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(to_io)?;
        }
        w.flush().map_err(|e| CliError::io(label, e))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, "<memory>").expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}
