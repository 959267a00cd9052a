use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv parse error at line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("duplicate column name '{0}'")]
    DuplicateColumn(String),

    #[error("unknown column '{0}'")]
    UnknownColumn(String),

    #[error("column '{0}' is not numeric")]
    NotNumeric(String),

    #[error("length mismatch: expected {expected} values, got {found} ({what})")]
    LengthMismatch {
        expected: usize,
        found: usize,
        what: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid tile template '{0}': must contain {{z}}, {{x}} and {{y}} exactly once")]
    TileTemplate(String),

    #[error("shapefile: {0}")]
    Shapefile(String),

    #[error("dbf: {0}")]
    Dbf(String),

    #[error("geojson: {0}")]
    GeoJson(String),

    #[error("image: {0}")]
    Image(#[from] image::ImageError),

    #[error("window: {0}")]
    Window(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by user input (bad files, columns, arguments).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Window(_))
    }
}
