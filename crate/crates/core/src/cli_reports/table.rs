use crate::error::{Error, Result};

/// A numeric or text field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

/// 17 significant digits; `nan`, `inf`, `-inf` for the non-finite values.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Text(_) => None,
        }
    }
}

/// Rectangular table with a mandatory header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(header: Vec<String>) -> Self {
        CsvTable { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::numerical(format!(
                "row has {} fields, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::numerical(format!("csv: {e}"));
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::numerical(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::numerical(format!("csv: {e}")))
    }

    /// Parses CSV text written by [`CsvTable::to_csv`]. Fields that parse
    /// as floats come back numeric.
    pub fn from_csv(text: &str) -> Result<CsvTable> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let io = |e: csv::Error| Error::Usage(format!("csv: {e}"));
        let header: Vec<String> = r.headers().map_err(io)?.iter().map(String::from).collect();
        let mut table = CsvTable::new(header);
        for record in r.records() {
            let record = record.map_err(io)?;
            let row = record
                .iter()
                .map(|f| match f.parse::<f64>() {
                    Ok(x) => Cell::Num(x),
                    Err(_) => Cell::Text(f.to_string()),
                })
                .collect();
            table.push(row)?;
        }
        Ok(table)
    }
}
