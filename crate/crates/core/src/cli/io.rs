use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::dataset::Dataset;
use crate::error::{DeaError, Result};

/// Table 1 of the worked nonnegative example: two inputs, one output.
pub const EXAMPLE_NONNEGATIVE: &str = include_str!("../../data/example41.csv");
/// The mixed-sign example: one input, one output.
pub const EXAMPLE_NEGATIVE: &str = include_str!("../../data/example42.csv");

/// Bundled dataset by its example number (`4.1` or `4.2`).
pub fn bundled_example(id: &str) -> Result<Dataset> {
    match id {
        "4.1" => parse_csv(EXAMPLE_NONNEGATIVE.as_bytes()),
        "4.2" => parse_csv(EXAMPLE_NEGATIVE.as_bytes()),
        other => Err(DeaError::InvalidDataset(format!(
            "unknown bundled example `{other}` (expected 4.1 or 4.2)"
        ))),
    }
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    parse_csv(File::open(path)?)
}

fn parse_error(row: usize, column: impl Into<String>, message: impl Into<String>) -> DeaError {
    DeaError::Parse {
        row,
        column: column.into(),
        message: message.into(),
    }
}

/// Which block a header belongs to and its 1-based position within it.
fn classify_header(name: &str) -> Option<(bool, usize)> {
    let lower = name.to_ascii_lowercase();
    let (output, digits) = match lower.as_bytes().first()? {
        b'x' => (false, &lower[1..]),
        b'y' => (true, &lower[1..]),
        _ => return None,
    };
    match digits.parse::<usize>() {
        Ok(k) if k >= 1 && !digits.starts_with('0') => Some((output, k)),
        _ => None,
    }
}

/// Parses `dmu,x1..xm,y1..ys`. Rows are reported by file line number.
pub fn parse_csv(reader: impl Read) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = match records.next() {
        None => return Err(parse_error(1, "dmu", "missing header row")),
        Some(h) => h.map_err(|e| parse_error(1, "", e.to_string()))?,
    };
    if !header.get(0).is_some_and(|h| h.eq_ignore_ascii_case("dmu")) {
        return Err(parse_error(
            1,
            header.get(0).unwrap_or(""),
            "first column must be `dmu`",
        ));
    }

    let mut seen_x = Vec::new();
    let mut seen_y = Vec::new();
    let mut layout = Vec::new();
    for name in header.iter().skip(1) {
        let (output, k) = classify_header(name)
            .ok_or_else(|| parse_error(1, name, "expected a column named x<k> or y<k>"))?;
        if !output && !seen_y.is_empty() {
            return Err(parse_error(1, name, "input columns must precede output columns"));
        }
        let seen = if output { &mut seen_y } else { &mut seen_x };
        if seen.contains(&k) {
            return Err(parse_error(1, name, "duplicate column"));
        }
        seen.push(k);
        layout.push((output, k - 1));
    }
    for (label, seen) in [("x", &seen_x), ("y", &seen_y)] {
        if seen.is_empty() {
            return Err(parse_error(1, format!("{label}1"), "missing column"));
        }
        if let Some(k) = (1..=seen.len()).find(|k| !seen.contains(k)) {
            return Err(parse_error(1, format!("{label}{k}"), "missing column"));
        }
    }
    let (m, s) = (seen_x.len(), seen_y.len());

    let mut names = Vec::new();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for record in records {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_error(line, "", e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != header.len() {
            return Err(parse_error(
                line,
                header.get(record.len().min(header.len() - 1)).unwrap_or(""),
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        let mut x = vec![0.0; m];
        let mut y = vec![0.0; s];
        for ((field, column), &(output, k)) in record.iter().zip(&header).skip(1).zip(&layout) {
            let value: f64 = field
                .parse()
                .map_err(|_| parse_error(line, column, format!("`{field}` is not a number")))?;
            if !value.is_finite() {
                return Err(parse_error(line, column, format!("`{field}` is not finite")));
            }
            if output {
                y[k] = value;
            } else {
                x[k] = value;
            }
        }
        names.push(record[0].to_string());
        inputs.push(x);
        outputs.push(y);
    }
    Dataset::new(names, inputs, outputs)
}

/// Writes the dataset in the format read by [`parse_csv`]. Values use the
/// shortest representation that parses back to the same float.
pub fn write_csv(ds: &Dataset, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let to_io = |e: csv::Error| DeaError::Io(e.into());
    let mut header = vec!["dmu".to_string()];
    header.extend((1..=ds.m()).map(|i| format!("x{i}")));
    header.extend((1..=ds.s()).map(|r| format!("y{r}")));
    w.write_record(&header).map_err(to_io)?;
    for j in 0..ds.n() {
        let mut row = vec![ds.name(j).to_string()];
        row.extend(ds.x(j).iter().chain(ds.y(j)).map(|v| format!("{v}")));
        w.write_record(&row).map_err(to_io)?;
    }
    w.flush()?;
    Ok(())
}
