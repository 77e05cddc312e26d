//! Binary grid files.
//!
//! Layout, all little-endian:
//!
//! | offset | size | field                                     |
//! |--------|------|-------------------------------------------|
//! | 0      | 8    | magic `STRZGRID` (ASCII)                  |
//! | 8      | 8    | n, spatial dimension (u64)                |
//! | 16     | 8    | N, points per axis (u64, even)            |
//! | 24     | 8    | L, half width of the box [−L, L)^n (f64)  |
//! | 32     | 16·N^n | samples as (re, im) f64 pairs          |
//!
//! Samples are row-major with the last axis fastest; sample (j₁, …, j_n)
//! sits at x = (−L + j₁h, …, −L + j_n h), h = 2L/N.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex;

use crate::domain::grid::GridFunction;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAGIC: &[u8; 8] = b"STRZGRID";
pub const HEADER_LEN: usize = 32;

/// Largest sample count accepted on read (2^28 samples, 4 GiB).
const MAX_SAMPLES: u64 = 1 << 28;

pub fn write_grid<T: Scalar, W: Write>(grid: &GridFunction<T>, mut w: W) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&(grid.dim() as u64).to_le_bytes())?;
    w.write_all(&(grid.points() as u64).to_le_bytes())?;
    w.write_all(&grid.half_width().to_f64_lossy().to_le_bytes())?;
    for z in grid.samples() {
        w.write_all(&z.re.to_f64_lossy().to_le_bytes())?;
        w.write_all(&z.im.to_f64_lossy().to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(|_| Error::InvalidInput("truncated grid header".into()))?;
    Ok(u64::from_le_bytes(b))
}

pub fn read_grid<T: Scalar, R: Read>(mut r: R) -> Result<GridFunction<T>> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(|_| Error::InvalidInput("truncated grid header".into()))?;
    if &magic != MAGIC {
        return Err(Error::InvalidInput("not a grid file (bad magic)".into()));
    }
    let n = read_u64(&mut r)?;
    let points = read_u64(&mut r)?;
    let half_width = f64::from_bits(read_u64(&mut r)?);
    if n == 0 || points == 0 {
        return Err(Error::InvalidInput(format!("grid header has n = {n}, N = {points}")));
    }
    let len = u32::try_from(n)
        .ok()
        .and_then(|n| points.checked_pow(n))
        .filter(|&len| len <= MAX_SAMPLES)
        .ok_or_else(|| Error::InvalidInput(format!("grid of {points}^{n} samples is too large")))?;
    let mut bytes = vec![0u8; len as usize * 16];
    r.read_exact(&mut bytes).map_err(|_| Error::InvalidInput(format!("grid file holds fewer than {len} samples")))?;
    if r.read(&mut [0u8; 1])? != 0 {
        return Err(Error::InvalidInput("trailing bytes after grid samples".into()));
    }
    let f = |c: &[u8]| T::lit(f64::from_le_bytes(c.try_into().expect("8-byte chunk")));
    let samples = bytes.chunks_exact(16).map(|c| Complex::new(f(&c[..8]), f(&c[8..]))).collect();
    GridFunction::new(n as usize, T::lit(half_width), points as usize, samples)
}

/// Writes through a temporary sibling and renames, so a failed write
/// never leaves a partial file at `path`.
pub fn save_grid<T: Scalar>(grid: &GridFunction<T>, path: &Path) -> Result<()> {
    let tmp = path.with_extension("strzgrid.tmp");
    let result = File::create(&tmp).map_err(Error::from).and_then(|f| write_grid(grid, BufWriter::new(f)));
    match result {
        Ok(()) => std::fs::rename(&tmp, path).map_err(Error::from),
        Err(e) => {
            let _ = std::fs::remove_file(&tmp);
            Err(e)
        }
    }
}

pub fn load_grid<T: Scalar>(path: &Path) -> Result<GridFunction<T>> {
    read_grid(BufReader::new(File::open(path)?))
}
