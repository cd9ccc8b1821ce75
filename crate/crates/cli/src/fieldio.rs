//! Flat binary container for sampled fields.
//!
//! Layout, little-endian throughout:
//!
//! ```text
//! magic   [u8; 4] = b"AMFD"
//! version u16     = 1
//! dtype   u8        0 = complex64, 1 = complex128
//! layout  u8        0 = row-major
//! dim     u32
//! n       u64       samples per axis
//! l       f64       half-period
//! data    n^dim interleaved (re, im) pairs of f32 or f64
//! ```

use alphamod_core::field::SampledField;
use alphamod_core::{Complex64, GridSpec};
use std::io::{self, Read, Write};

pub const MAGIC: [u8; 4] = *b"AMFD";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dtype {
    Complex64,
    Complex128,
}

fn bad(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.to_string())
}

pub fn write_field<W: Write>(w: &mut W, f: &SampledField, dtype: Dtype) -> io::Result<()> {
    let grid = f.grid();
    w.write_all(&MAGIC)?;
    w.write_all(&1u16.to_le_bytes())?;
    w.write_all(&[match dtype {
        Dtype::Complex64 => 0u8,
        Dtype::Complex128 => 1u8,
    }])?;
    w.write_all(&[0u8])?;
    w.write_all(&(grid.dim as u32).to_le_bytes())?;
    w.write_all(&(grid.samples_per_axis as u64).to_le_bytes())?;
    w.write_all(&grid.half_period.to_le_bytes())?;
    match dtype {
        Dtype::Complex64 => {
            for v in f.values() {
                w.write_all(&(v.re as f32).to_le_bytes())?;
                w.write_all(&(v.im as f32).to_le_bytes())?;
            }
        }
        Dtype::Complex128 => {
            for v in f.values() {
                w.write_all(&v.re.to_le_bytes())?;
                w.write_all(&v.im.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn read_field<R: Read>(r: &mut R) -> io::Result<SampledField> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(bad("not a field container (bad magic)"));
    }
    let mut b2 = [0u8; 2];
    r.read_exact(&mut b2)?;
    if u16::from_le_bytes(b2) != 1 {
        return Err(bad("unsupported container version"));
    }
    let mut b1 = [0u8; 1];
    r.read_exact(&mut b1)?;
    let dtype = match b1[0] {
        0 => Dtype::Complex64,
        1 => Dtype::Complex128,
        _ => return Err(bad("unknown dtype")),
    };
    r.read_exact(&mut b1)?;
    if b1[0] != 0 {
        return Err(bad("unknown layout"));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let dim = u32::from_le_bytes(b4) as usize;
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let n = u64::from_le_bytes(b8) as usize;
    r.read_exact(&mut b8)?;
    let l = f64::from_le_bytes(b8);
    let grid = GridSpec::new(dim, l, n).map_err(|e| bad(&e.to_string()))?;
    let total = grid.len();
    let mut values = Vec::with_capacity(total);
    match dtype {
        Dtype::Complex64 => {
            let mut buf = vec![0u8; total * 8];
            r.read_exact(&mut buf)?;
            for c in buf.chunks_exact(8) {
                let re = f32::from_le_bytes(c[0..4].try_into().unwrap()) as f64;
                let im = f32::from_le_bytes(c[4..8].try_into().unwrap()) as f64;
                values.push(Complex64::new(re, im));
            }
        }
        Dtype::Complex128 => {
            let mut buf = vec![0u8; total * 16];
            r.read_exact(&mut buf)?;
            for c in buf.chunks_exact(16) {
                let re = f64::from_le_bytes(c[0..8].try_into().unwrap());
                let im = f64::from_le_bytes(c[8..16].try_into().unwrap());
                values.push(Complex64::new(re, im));
            }
        }
    }
    Ok(SampledField::from_values(grid, values))
}
