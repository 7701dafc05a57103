//! CSV output for sweep results.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::sweep::SweepResult;
use crate::error::Result;
use crate::metrics::BerRecord;

pub const CSV_HEADER: [&str; 11] = [
    "n",
    "N",
    "m",
    "C",
    "probability",
    "iterations",
    "ber",
    "total_inversions",
    "avg_inversions",
    "undecided",
    "ties",
];

/// Write the header and one row per record, in the order given.
pub fn write_records<'a, W, I>(writer: W, records: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a BerRecord>,
{
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    out.write_record(CSV_HEADER)?;
    for record in records {
        out.serialize(record)?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_csv_string(result: &SweepResult) -> Result<String> {
    let mut buf = Vec::new();
    write_records(&mut buf, result.records())?;
    Ok(String::from_utf8(buf).expect("csv output is ASCII"))
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_records(File::create(path)?, result.records())
}

pub fn parse_records<R: Read>(reader: R) -> Result<Vec<BerRecord>> {
    csv::Reader::from_reader(reader)
        .deserialize()
        .map(|r| r.map_err(Into::into))
        .collect()
}
