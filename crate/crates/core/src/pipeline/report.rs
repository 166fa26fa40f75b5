use std::io::Write;
use std::str::FromStr;

use super::{PipelineError, ScanRecord};
use crate::algebras::LEVELS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(PipelineError::InvalidArgument(format!(
                "unknown format {other}"
            ))),
        }
    }
}

const CSV_HEADER: [&str; 20] = [
    "graph6",
    "n",
    "base_vertex",
    "orbit_size",
    "d0",
    "d1",
    "d2",
    "d3",
    "d4",
    "t0_eq_t1",
    "t1_eq_t2",
    "t2_eq_t3",
    "t3_eq_t4",
    "type0",
    "type1",
    "type2",
    "type3",
    "type4",
    "status",
    "message",
];

const TABLE_HEADER: [&str; 7] = ["graph6", "n", "base", "orbit", "chain", "status", "types"];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), T::to_string)
}

fn csv_fields(r: &ScanRecord) -> Vec<String> {
    let mut f = vec![
        r.graph6.clone(),
        r.n.to_string(),
        r.base_vertex.to_string(),
        r.orbit_size.to_string(),
    ];
    f.extend(r.dims.iter().map(opt));
    f.extend(r.flags.iter().map(opt));
    for l in 0..LEVELS {
        f.push(r.types.as_ref().map_or(String::new(), |t| opt(&t[l])));
    }
    f.push(r.status.as_str().to_string());
    f.push(opt(&r.message));
    f
}

/// Dims joined by `<` or `=` according to the flags, e.g. `3<11<21=21<29`.
fn chain(r: &ScanRecord) -> String {
    let mut s = opt(&r.dims[0]);
    for l in 0..LEVELS - 1 {
        s.push_str(match r.flags[l] {
            Some(true) => "=",
            Some(false) => "<",
            None => " ",
        });
        s.push_str(&r.dims[l + 1].map_or("?".to_string(), |d| d.to_string()));
    }
    s
}

fn table_fields(r: &ScanRecord) -> Vec<String> {
    let types = r.types.as_ref().map_or(String::new(), |t| {
        t.iter()
            .enumerate()
            .filter_map(|(l, ty)| ty.as_ref().map(|ty| format!("T{l}={ty}")))
            .collect::<Vec<_>>()
            .join("  ")
    });
    vec![
        r.graph6.clone(),
        r.n.to_string(),
        r.base_vertex.to_string(),
        r.orbit_size.to_string(),
        chain(r),
        r.status.as_str().to_string(),
        types,
    ]
}

/// Streams records in one format. JSONL and CSV are written row by row; the
/// aligned table needs every row for its widths and is written by
/// [`ReportWriter::finish`].
pub struct ReportWriter<W: Write> {
    format: Format,
    out: W,
    started: bool,
    rows: Vec<Vec<String>>,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        ReportWriter {
            format,
            out,
            started: false,
            rows: Vec::new(),
        }
    }

    fn csv_line(&mut self, fields: &[String]) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(fields).map_err(std::io::Error::other)?;
        let bytes = w
            .into_inner()
            .map_err(|e| std::io::Error::other(e.to_string()))?;
        self.out.write_all(&bytes)
    }

    fn start(&mut self) -> std::io::Result<()> {
        if !self.started && self.format == Format::Csv {
            let header: Vec<String> = CSV_HEADER.iter().map(|s| s.to_string()).collect();
            self.csv_line(&header)?;
        }
        self.started = true;
        Ok(())
    }

    pub fn write(&mut self, r: &ScanRecord) -> std::io::Result<()> {
        self.start()?;
        match self.format {
            Format::Jsonl => {
                serde_json::to_writer(&mut self.out, r)?;
                self.out.write_all(b"\n")
            }
            Format::Csv => self.csv_line(&csv_fields(r)),
            Format::Table => {
                self.rows.push(table_fields(r));
                Ok(())
            }
        }
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        self.start()?;
        if self.format == Format::Table {
            let mut rows = vec![TABLE_HEADER
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()];
            rows.append(&mut self.rows);
            let mut widths = [0usize; TABLE_HEADER.len()];
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            for row in &rows {
                let cells: Vec<String> = row
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(self.out, "{}", cells.join("  ").trim_end())?;
            }
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Renders records in one go.
pub fn emit_report(records: &[ScanRecord], format: Format) -> Vec<u8> {
    let mut w = ReportWriter::new(format, Vec::new());
    for r in records {
        w.write(r).expect("writing to memory");
    }
    w.finish().expect("writing to memory")
}
