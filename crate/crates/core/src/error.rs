use alloc::string::String;

/// Errors surfaced by covering construction, transforms and experiments.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The un-normalized window sum vanished at a frequency that was asked
    /// for, i.e. the covering constants leave a hole in frequency space.
    CoveringGap { xi: [f64; 2], dim: usize },
    /// A dilation would push spectral content past what the grid resolves.
    Aliasing { lambda: f64, detail: &'static str },
    /// A field construction needs frequencies beyond Nyquist or structure
    /// below one lattice cell.
    Unresolvable(&'static str),
    /// Parameter outside its admissible range.
    InvalidParam(String),
    /// A computation has no meaningful answer for these inputs
    /// (e.g. a power-law fit through non-positive data, or scaling slopes
    /// at `s = -s_c` where the growth is logarithmic).
    Degenerate(&'static str),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::CoveringGap { xi, dim } => {
                write!(
                    f,
                    "covering gap: window sum vanishes at xi={:?}",
                    &xi[..*dim]
                )
            }
            Error::Aliasing { lambda, detail } => {
                write!(f, "aliasing at lambda={lambda}: {detail}")
            }
            Error::Unresolvable(what) => write!(f, "unresolvable construction: {what}"),
            Error::InvalidParam(what) => write!(f, "invalid parameter: {what}"),
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
