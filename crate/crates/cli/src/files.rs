//! JSON frame and density-matrix files.
//!
//! Frames: `{"d": .., "n": .., "vectors": [[[re, im], ..], ..]}`.
//! Density matrices: `{"d": .., "matrix": [[[re, im], ..], ..]}`, with
//! `"dA"`/`"dB"` for bipartite states. Numbers are written with 17
//! significant digits.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use etf_core::numerics::{ComplexMatrix, ComplexVector, DensityMatrix};
use etf_core::witness::BipartiteDensityMatrix;
use etf_core::{Complex, Frame64};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
struct FrameFile {
    d: usize,
    n: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Deserialize)]
struct DensityFile {
    d: usize,
    matrix: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "dA")]
    d_a: Option<usize>,
    #[serde(rename = "dB")]
    d_b: Option<usize>,
}

/// A state file, bipartite when it carries `dA`/`dB`.
#[derive(Debug, Clone)]
pub enum StateFile {
    Single(DensityMatrix<f64>),
    Bipartite(BipartiteDensityMatrix<f64>),
}

impl StateFile {
    pub fn density(&self) -> &DensityMatrix<f64> {
        match self {
            Self::Single(rho) => rho,
            Self::Bipartite(rho) => rho.density(),
        }
    }

    /// Bipartite view; a plain state of dimension `d²` is split as `d ⊗ d`.
    pub fn bipartite(self, d: usize) -> CliResult<BipartiteDensityMatrix<f64>> {
        match self {
            Self::Bipartite(rho) => Ok(rho),
            Self::Single(rho) if rho.dim() == d * d => Ok(BipartiteDensityMatrix::new(d, d, rho)?),
            Self::Single(rho) => {
                Err(CliError::usage(format!("state of dimension {} is not bipartite over d={d}", rho.dim())))
            }
        }
    }
}

fn read_to_string(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn complex(pair: [f64; 2]) -> Complex<f64> {
    Complex::new(pair[0], pair[1])
}

pub fn parse_frame(text: &str, tol: f64) -> CliResult<Frame64> {
    let file: FrameFile = serde_json::from_str(text)?;
    if file.vectors.len() != file.n {
        return Err(CliError::usage(format!("frame declares n={} but lists {} vectors", file.n, file.vectors.len())));
    }
    let vectors = file
        .vectors
        .into_iter()
        .map(|row| {
            if row.len() != file.d {
                return Err(CliError::usage(format!("frame vector of length {} with d={}", row.len(), file.d)));
            }
            Ok(ComplexVector::new(row.into_iter().map(complex).collect())?)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Frame64::with_tol(vectors, tol)?)
}

pub fn read_frame(path: &Path, tol: f64) -> CliResult<Frame64> {
    parse_frame(&read_to_string(path)?, tol)
        .map_err(|e| CliError { code: e.code, message: format!("{}: {}", path.display(), e.message) })
}

pub fn parse_state(text: &str, tol: f64) -> CliResult<StateFile> {
    let file: DensityFile = serde_json::from_str(text)?;
    let d = file.d;
    if file.matrix.len() != d || file.matrix.iter().any(|row| row.len() != d) {
        return Err(CliError::usage(format!("density matrix is not {d}×{d}")));
    }
    let data = file.matrix.into_iter().flatten().map(complex).collect();
    let rho = DensityMatrix::with_tol(ComplexMatrix::new(d, d, data)?, tol)?;
    match (file.d_a, file.d_b) {
        (Some(a), Some(b)) => Ok(StateFile::Bipartite(BipartiteDensityMatrix::new(a, b, rho)?)),
        (None, None) => Ok(StateFile::Single(rho)),
        _ => Err(CliError::usage("bipartite state needs both dA and dB")),
    }
}

pub fn read_state(path: &Path, tol: f64) -> CliResult<StateFile> {
    parse_state(&read_to_string(path)?, tol)
        .map_err(|e| CliError { code: e.code, message: format!("{}: {}", path.display(), e.message) })
}

fn number(out: &mut String, x: f64) {
    if x == 0.0 {
        out.push('0');
    } else {
        write!(out, "{x:.16e}").expect("write to string");
    }
}

fn pair(out: &mut String, z: &Complex<f64>) {
    out.push('[');
    number(out, z.re);
    out.push_str(", ");
    number(out, z.im);
    out.push(']');
}

fn rows<'a>(out: &mut String, rows: impl Iterator<Item = &'a [Complex<f64>]>) {
    out.push_str("[\n");
    let mut first = true;
    for row in rows {
        if !first {
            out.push_str(",\n");
        }
        first = false;
        out.push_str("    [");
        for (k, z) in row.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            pair(out, z);
        }
        out.push(']');
    }
    out.push_str("\n  ]");
}

pub fn frame_json(frame: &Frame64, seed: Option<u64>) -> String {
    let mut out = format!("{{\n  \"d\": {},\n  \"n\": {},\n", frame.d(), frame.n());
    if let Some(seed) = seed {
        writeln!(out, "  \"seed\": {seed},").expect("write to string");
    }
    out.push_str("  \"vectors\": ");
    rows(&mut out, frame.vectors().iter().map(|v| v.entries()));
    out.push_str("\n}\n");
    out
}

pub fn density_json(rho: &DensityMatrix<f64>, parts: Option<(usize, usize)>, seed: Option<u64>) -> String {
    let m = rho.matrix();
    let mut out = format!("{{\n  \"d\": {},\n", rho.dim());
    if let Some((a, b)) = parts {
        writeln!(out, "  \"dA\": {a},\n  \"dB\": {b},").expect("write to string");
    }
    if let Some(seed) = seed {
        writeln!(out, "  \"seed\": {seed},").expect("write to string");
    }
    out.push_str("  \"matrix\": ");
    rows(&mut out, (0..m.rows()).map(|i| m.row(i)));
    out.push_str("\n}\n");
    out
}

/// Writes to `path`, or to `stdout` when the path is `-`.
pub fn write_output(path: &str, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    if path == "-" {
        stdout.write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    }
    Ok(())
}
