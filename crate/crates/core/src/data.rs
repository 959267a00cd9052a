//! Columnar sample tables and CSV ingestion.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::{Error, Result};

/// A single column. Numeric cells that were empty in the source are NaN.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Float(Vec<f64>),
    Text(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Float(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_float(&self) -> Option<&[f64]> {
        match self {
            Column::Float(v) => Some(v),
            Column::Text(_) => None,
        }
    }

    fn select(&self, rows: &[usize]) -> Column {
        match self {
            Column::Float(v) => Column::Float(rows.iter().map(|&i| v[i]).collect()),
            Column::Text(v) => Column::Text(rows.iter().map(|&i| v[i].clone()).collect()),
        }
    }

    fn value(&self, row: usize) -> Value<'_> {
        match self {
            Column::Float(v) => Value::Number(v[row]),
            Column::Text(v) => Value::Text(&v[row]),
        }
    }
}

impl From<Vec<f64>> for Column {
    fn from(v: Vec<f64>) -> Self {
        Column::Float(v)
    }
}

impl From<Vec<String>> for Column {
    fn from(v: Vec<String>) -> Self {
        Column::Text(v)
    }
}

impl From<Vec<&str>> for Column {
    fn from(v: Vec<&str>) -> Self {
        Column::Text(v.into_iter().map(str::to_owned).collect())
    }
}

/// A borrowed cell value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value<'a> {
    Number(f64),
    Text(&'a str),
}

impl fmt::Display for Value<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(x) => write!(f, "{x}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

/// Key of a `group_by` partition. Numbers are ordered by `f64::total_cmp`.
#[derive(Debug, Clone)]
pub enum GroupKey {
    Number(f64),
    Text(String),
}

impl PartialEq for GroupKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for GroupKey {}

impl PartialOrd for GroupKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupKey::Number(a), GroupKey::Number(b)) => a.total_cmp(b),
            (GroupKey::Text(a), GroupKey::Text(b)) => a.cmp(b),
            (GroupKey::Number(_), GroupKey::Text(_)) => Ordering::Less,
            (GroupKey::Text(_), GroupKey::Number(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKey::Number(x) => write!(f, "{x}"),
            GroupKey::Text(s) => f.write_str(s),
        }
    }
}

/// An immutable table with one column per field and one row per sample.
///
/// Columns are reference counted, so renaming, dropping and cloning tables
/// does not copy data.
#[derive(Debug, Clone, Default)]
pub struct DataTable {
    columns: IndexMap<String, Arc<Column>>,
    nrows: usize,
}

impl DataTable {
    /// Builds a table from in-memory columns. All columns must have the same
    /// length and names must be unique.
    pub fn from_columns<I, S, C>(columns: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, C)>,
        S: Into<String>,
        C: Into<Column>,
    {
        let mut map = IndexMap::new();
        let mut nrows = None;
        for (name, col) in columns {
            let name = name.into();
            let col = col.into();
            match nrows {
                None => nrows = Some(col.len()),
                Some(n) if n != col.len() => {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: col.len(),
                        what: format!("column '{name}'"),
                    })
                }
                Some(_) => {}
            }
            if map.contains_key(&name) {
                return Err(Error::DuplicateColumn(name));
            }
            map.insert(name, Arc::new(col));
        }
        Ok(DataTable {
            columns: map,
            nrows: nrows.unwrap_or(0),
        })
    }

    /// Reads a comma separated file whose first row is a header.
    ///
    /// A column is numeric when every non-empty cell parses as a number;
    /// empty numeric cells become NaN. Otherwise the whole column is text.
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv_from(file)
    }

    pub fn read_csv_from<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(false)
            .from_reader(reader);
        let headers: Vec<String> = rdr
            .headers()
            .map_err(csv_error)?
            .iter()
            .map(str::to_owned)
            .collect();
        let mut cells: Vec<Vec<String>> = vec![Vec::new(); headers.len()];
        for record in rdr.records() {
            let record = record.map_err(csv_error)?;
            for (col, cell) in cells.iter_mut().zip(record.iter()) {
                col.push(cell.to_owned());
            }
        }
        let columns = headers
            .into_iter()
            .zip(cells)
            .map(|(name, raw)| (name, infer_column(raw)));
        Self::from_columns(columns)
    }

    /// Writes the table as CSV. Numbers use the shortest representation that
    /// parses back to the same `f64`; NaN is written as an empty cell.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv_to(file)
            .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))
    }

    pub fn write_csv_to<W: std::io::Write>(&self, writer: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(self.columns.keys())?;
        let mut row = Vec::with_capacity(self.columns.len());
        for i in 0..self.nrows {
            row.clear();
            for col in self.columns.values() {
                row.push(match col.as_ref() {
                    Column::Float(v) if v[i].is_nan() => String::new(),
                    Column::Float(v) => format!("{:?}", v[i]),
                    Column::Text(v) => v[i].clone(),
                });
            }
            wtr.write_record(&row)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.keys().map(String::as_str)
    }

    pub fn has_column(&self, name: &str) -> bool {
        self.columns.contains_key(name)
    }

    pub fn column(&self, name: &str) -> Result<&Column> {
        self.columns
            .get(name)
            .map(Arc::as_ref)
            .ok_or_else(|| Error::UnknownColumn(name.to_owned()))
    }

    pub fn numeric(&self, name: &str) -> Result<&[f64]> {
        self.column(name)?
            .as_float()
            .ok_or_else(|| Error::NotNumeric(name.to_owned()))
    }

    /// Latitude and longitude columns, checked for range. NaN entries are
    /// allowed and are skipped by layers.
    pub fn coordinates(&self, lat: &str, lon: &str) -> Result<(&[f64], &[f64])> {
        let lats = self.numeric(lat)?;
        let lons = self.numeric(lon)?;
        if let Some(v) = lats.iter().find(|v| v.abs() > 90.0) {
            return Err(Error::InvalidArgument(format!(
                "latitude {v} in column '{lat}' is outside [-90, 90]"
            )));
        }
        if let Some(v) = lons.iter().find(|v| v.abs() > 180.0) {
            return Err(Error::InvalidArgument(format!(
                "longitude {v} in column '{lon}' is outside [-180, 180]"
            )));
        }
        Ok((lats, lons))
    }

    /// The `lat` / `lon` columns.
    pub fn latlon(&self) -> Result<(&[f64], &[f64])> {
        self.coordinates("lat", "lon")
    }

    pub fn row(&self, index: usize) -> Row<'_> {
        assert!(index < self.nrows, "row {index} out of range");
        Row { table: self, index }
    }

    /// Keeps the rows whose mask entry is true, in their original order.
    pub fn filter(&self, mask: &[bool]) -> Result<DataTable> {
        if mask.len() != self.nrows {
            return Err(Error::LengthMismatch {
                expected: self.nrows,
                found: mask.len(),
                what: "filter mask".into(),
            });
        }
        let rows: Vec<usize> = (0..self.nrows).filter(|&i| mask[i]).collect();
        Ok(self.select_rows(&rows))
    }

    pub fn select_rows(&self, rows: &[usize]) -> DataTable {
        DataTable {
            columns: self
                .columns
                .iter()
                .map(|(k, c)| (k.clone(), Arc::new(c.select(rows))))
                .collect(),
            nrows: rows.len(),
        }
    }

    /// Partitions rows by the distinct values of `column`.
    pub fn group_by(&self, column: &str) -> Result<BTreeMap<GroupKey, DataTable>> {
        let col = self.column(column)?;
        let mut groups: BTreeMap<GroupKey, Vec<usize>> = BTreeMap::new();
        for i in 0..self.nrows {
            let key = match col {
                Column::Float(v) => GroupKey::Number(v[i]),
                Column::Text(v) => GroupKey::Text(v[i].clone()),
            };
            groups.entry(key).or_default().push(i);
        }
        Ok(groups
            .into_iter()
            .map(|(k, rows)| (k, self.select_rows(&rows)))
            .collect())
    }

    pub fn rename(&self, old: &str, new: &str) -> Result<DataTable> {
        if !self.columns.contains_key(old) {
            return Err(Error::UnknownColumn(old.to_owned()));
        }
        if old != new && self.columns.contains_key(new) {
            return Err(Error::DuplicateColumn(new.to_owned()));
        }
        let columns = self
            .columns
            .iter()
            .map(|(k, c)| {
                let k = if k == old { new.to_owned() } else { k.clone() };
                (k, Arc::clone(c))
            })
            .collect();
        Ok(DataTable {
            columns,
            nrows: self.nrows,
        })
    }

    pub fn drop_column(&self, name: &str) -> Result<DataTable> {
        if !self.columns.contains_key(name) {
            return Err(Error::UnknownColumn(name.to_owned()));
        }
        let mut columns = self.columns.clone();
        columns.shift_remove(name);
        Ok(DataTable {
            columns,
            nrows: self.nrows,
        })
    }

    /// Appends the rows of `other`, which must have the same column layout.
    pub fn concat(&self, other: &DataTable) -> Result<DataTable> {
        if self.ncols() == 0 {
            return Ok(other.clone());
        }
        let mut columns = IndexMap::new();
        for (name, col) in &self.columns {
            let rhs = other.column(name)?;
            let merged = match (col.as_ref(), rhs) {
                (Column::Float(a), Column::Float(b)) => {
                    Column::Float(a.iter().chain(b).copied().collect())
                }
                (Column::Text(a), Column::Text(b)) => {
                    Column::Text(a.iter().chain(b).cloned().collect())
                }
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "column '{name}' has different types"
                    )))
                }
            };
            columns.insert(name.clone(), Arc::new(merged));
        }
        if other.ncols() != self.ncols() {
            return Err(Error::InvalidArgument("column sets differ".into()));
        }
        Ok(DataTable {
            columns,
            nrows: self.nrows + other.nrows,
        })
    }
}

impl PartialEq for DataTable {
    fn eq(&self, other: &Self) -> bool {
        // NaN cells compare equal to each other.
        self.nrows == other.nrows
            && self.columns.len() == other.columns.len()
            && self.columns.iter().zip(&other.columns).all(|((ka, a), (kb, b))| {
                ka == kb
                    && match (a.as_ref(), b.as_ref()) {
                        (Column::Float(x), Column::Float(y)) => x
                            .iter()
                            .zip(y)
                            .all(|(p, q)| p == q || (p.is_nan() && q.is_nan())),
                        (x, y) => x == y,
                    }
            })
    }
}

/// A view of one table row, handed to tooltip callbacks.
#[derive(Debug, Clone, Copy)]
pub struct Row<'a> {
    table: &'a DataTable,
    index: usize,
}

impl<'a> Row<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn get(&self, column: &str) -> Option<Value<'a>> {
        self.table
            .columns
            .get(column)
            .map(|c| c.value(self.index))
    }
}

impl std::ops::Index<&str> for Row<'_> {
    type Output = str;

    /// Text cells by name; panics on unknown or numeric columns.
    fn index(&self, column: &str) -> &str {
        match self.table.columns.get(column).map(Arc::as_ref) {
            Some(Column::Text(v)) => &v[self.index],
            Some(Column::Float(_)) => panic!("column '{column}' is numeric"),
            None => panic!("unknown column '{column}'"),
        }
    }
}

fn infer_column(raw: Vec<String>) -> Column {
    let mut parsed = Vec::with_capacity(raw.len());
    for cell in &raw {
        let cell = cell.trim();
        if cell.is_empty() {
            parsed.push(f64::NAN);
        } else if let Ok(x) = cell.parse::<f64>() {
            parsed.push(x);
        } else {
            return Column::Text(raw);
        }
    }
    Column::Float(parsed)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    let message = match e.kind() {
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => format!("row has {len} fields, header has {expected_len}"),
        _ => e.to_string(),
    };
    Error::Csv { line, message }
}
