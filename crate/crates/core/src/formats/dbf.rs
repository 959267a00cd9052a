//! dBase III attribute tables.
//!
//! Character fields become strings with trailing blanks removed and Numeric
//! fields become numbers (blank means null). Every other field type is kept
//! as its raw trimmed text. Text is decoded as Latin-1.

use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbfField {
    pub name: String,
    pub kind: u8,
    pub length: usize,
    pub decimals: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DbfTable {
    pub fields: Vec<DbfField>,
    /// One attribute map per record; deleted records are empty.
    pub records: Vec<Map<String, Value>>,
}

pub fn read_dbf(path: impl AsRef<Path>) -> Result<DbfTable> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_dbf(&bytes)
}

fn latin1(bytes: &[u8]) -> String {
    bytes.iter().map(|&b| b as char).collect()
}

pub(crate) fn parse_dbf(bytes: &[u8]) -> Result<DbfTable> {
    if bytes.len() < 32 {
        return Err(Error::Dbf("file shorter than its 32-byte header".into()));
    }
    let nrecords = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let header_len = u16::from_le_bytes(bytes[8..10].try_into().unwrap()) as usize;
    let record_len = u16::from_le_bytes(bytes[10..12].try_into().unwrap()) as usize;
    if header_len > bytes.len() {
        return Err(Error::Dbf("truncated field descriptors".into()));
    }

    let mut fields = Vec::new();
    let mut off = 32;
    while off < header_len && bytes[off] != 0x0D {
        if off + 32 > header_len {
            return Err(Error::Dbf("truncated field descriptor".into()));
        }
        let d = &bytes[off..off + 32];
        let name_end = d[..11].iter().position(|&b| b == 0).unwrap_or(11);
        fields.push(DbfField {
            name: latin1(&d[..name_end]).trim().to_owned(),
            kind: d[11],
            length: d[16] as usize,
            decimals: d[17],
        });
        off += 32;
    }
    let used: usize = 1 + fields.iter().map(|f| f.length).sum::<usize>();
    if used > record_len {
        return Err(Error::Dbf(format!(
            "fields need {used} bytes but records are {record_len} bytes"
        )));
    }
    if header_len + nrecords * record_len > bytes.len() {
        return Err(Error::Dbf(format!(
            "truncated: header promises {nrecords} records of {record_len} bytes"
        )));
    }

    let mut records = Vec::with_capacity(nrecords);
    for r in 0..nrecords {
        let rec = &bytes[header_len + r * record_len..header_len + (r + 1) * record_len];
        let mut map = Map::new();
        if rec[0] == b'*' {
            records.push(map);
            continue;
        }
        let mut pos = 1;
        for f in &fields {
            let raw = latin1(&rec[pos..pos + f.length]);
            pos += f.length;
            map.insert(f.name.clone(), field_value(f, &raw));
        }
        records.push(map);
    }
    Ok(DbfTable { fields, records })
}

fn field_value(field: &DbfField, raw: &str) -> Value {
    match field.kind {
        b'C' => Value::String(raw.trim_end().to_owned()),
        b'N' | b'F' => {
            let t = raw.trim();
            if t.is_empty() || t.chars().all(|c| c == '*') {
                return Value::Null;
            }
            if field.decimals == 0 {
                if let Ok(i) = t.parse::<i64>() {
                    return Value::Number(i.into());
                }
            }
            match t.parse::<f64>().ok().and_then(Number::from_f64) {
                Some(n) => Value::Number(n),
                None => Value::String(t.to_owned()),
            }
        }
        _ => Value::String(raw.trim().to_owned()),
    }
}
