//! Matrix Market interchange.
//!
//! The writer emits coordinate complex general files with 17 significant
//! digits, enough to reproduce every f64 bit on read-back. The reader is
//! wider: coordinate and array formats, real/integer/complex fields, and the
//! general/symmetric/hermitian/skew-symmetric symmetry classes.

use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::CMat;

#[derive(Debug, Error)]
pub enum MmError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("matrix market parse: {0}")]
    Parse(String),
}

fn bad(msg: impl Into<String>) -> MmError {
    MmError::Parse(msg.into())
}

/// Writes `m` in coordinate complex general form. Exact zeros are dropped
/// from the entry list; the dimensions always survive in the size line.
pub fn write_matrix(path: &Path, m: &CMat) -> Result<(), MmError> {
    std::fs::write(path, render_matrix(m))?;
    Ok(())
}

pub fn render_matrix(m: &CMat) -> String {
    let entries: Vec<(usize, usize, Complex64)> = m
        .indexed_iter()
        .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
        .map(|((i, j), z)| (i, j, *z))
        .collect();
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix coordinate complex general\n");
    out.push_str(&format!("{} {} {}\n", m.nrows(), m.ncols(), entries.len()));
    for (i, j, z) in entries {
        out.push_str(&format!("{} {} {:.16e} {:.16e}\n", i + 1, j + 1, z.re, z.im));
    }
    out
}

pub fn read_matrix(path: &Path) -> Result<CMat, MmError> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text).map_err(|e| match e {
        MmError::Parse(msg) => bad(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Coordinate,
    Array,
}

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Integer,
    Complex,
}

#[derive(Clone, Copy, PartialEq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    Skew,
}

impl Symmetry {
    fn mirror(self, z: Complex64) -> Complex64 {
        match self {
            Symmetry::General | Symmetry::Symmetric => z,
            Symmetry::Hermitian => z.conj(),
            Symmetry::Skew => -z,
        }
    }
}

struct Tokens<'a> {
    items: Vec<&'a str>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str, MmError> {
        let token = self
            .items
            .get(self.pos)
            .ok_or_else(|| bad(format!("unexpected end of file, expected {what}")))?;
        self.pos += 1;
        Ok(token)
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, MmError> {
        let token = self.next(what)?;
        token
            .parse()
            .map_err(|_| bad(format!("cannot parse {token:?} as {what}")))
    }

    fn value(&mut self, field: Field) -> Result<Complex64, MmError> {
        let re: f64 = self.number("a value")?;
        let im = match field {
            Field::Complex => self.number("an imaginary part")?,
            Field::Real | Field::Integer => 0.0,
        };
        Ok(Complex64::new(re, im))
    }

    fn leftover(&self) -> Option<&'a str> {
        self.items.get(self.pos).copied()
    }
}

pub fn parse_matrix(text: &str) -> Result<CMat, MmError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let (format, field, symmetry) = parse_header(header)?;

    // Everything after the header, minus comment lines, as one token stream;
    // the format decides how many tokens each record takes.
    let mut tokens = Tokens {
        items: lines
            .filter(|l| !l.trim_start().starts_with('%'))
            .flat_map(str::split_whitespace)
            .collect(),
        pos: 0,
    };

    let rows: usize = tokens.number("row count")?;
    let cols: usize = tokens.number("column count")?;
    if rows == 0 || cols == 0 {
        return Err(bad("zero dimension"));
    }
    if symmetry != Symmetry::General && rows != cols {
        return Err(bad(format!(
            "{rows}x{cols} is not square but the symmetry class needs it"
        )));
    }

    let mut m = CMat::zeros((rows, cols));
    match format {
        Format::Coordinate => {
            let nnz: usize = tokens.number("entry count")?;
            for _ in 0..nnz {
                let i: usize = tokens.number("a row index")?;
                let j: usize = tokens.number("a column index")?;
                if i == 0 || j == 0 || i > rows || j > cols {
                    return Err(bad(format!("entry ({i}, {j}) outside {rows}x{cols}")));
                }
                let z = tokens.value(field)?;
                m[[i - 1, j - 1]] = z;
                if symmetry != Symmetry::General && i != j {
                    m[[j - 1, i - 1]] = symmetry.mirror(z);
                }
            }
        }
        Format::Array => {
            // Column-major; the symmetric classes list the lower triangle
            // only, and the skew class drops the diagonal as well.
            for j in 0..cols {
                let start = match symmetry {
                    Symmetry::General => 0,
                    Symmetry::Symmetric | Symmetry::Hermitian => j,
                    Symmetry::Skew => j + 1,
                };
                for i in start..rows {
                    let z = tokens.value(field)?;
                    m[[i, j]] = z;
                    if symmetry != Symmetry::General && i != j {
                        m[[j, i]] = symmetry.mirror(z);
                    }
                }
            }
        }
    }
    if let Some(extra) = tokens.leftover() {
        return Err(bad(format!("trailing data starting at {extra:?}")));
    }
    Ok(m)
}

fn parse_header(line: &str) -> Result<(Format, Field, Symmetry), MmError> {
    let lower = line.to_ascii_lowercase();
    let mut words = lower.split_whitespace();
    if words.next() != Some("%%matrixmarket") {
        return Err(bad("missing %%MatrixMarket banner"));
    }
    if words.next() != Some("matrix") {
        return Err(bad("only the matrix object is supported"));
    }
    let format = match words.next() {
        Some("coordinate") => Format::Coordinate,
        Some("array") => Format::Array,
        other => return Err(bad(format!("unknown format {other:?}"))),
    };
    let field = match words.next() {
        Some("real") => Field::Real,
        Some("integer") => Field::Integer,
        Some("complex") => Field::Complex,
        Some("pattern") => return Err(bad("pattern matrices carry no values")),
        other => return Err(bad(format!("unknown field {other:?}"))),
    };
    let symmetry = match words.next() {
        Some("general") => Symmetry::General,
        Some("symmetric") => Symmetry::Symmetric,
        Some("hermitian") => Symmetry::Hermitian,
        Some("skew-symmetric") => Symmetry::Skew,
        other => return Err(bad(format!("unknown symmetry {other:?}"))),
    };
    Ok((format, field, symmetry))
}
