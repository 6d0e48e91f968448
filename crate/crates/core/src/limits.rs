use crate::error::{Error, Result};

/// Resource caps for enumeration and grid verification.
///
/// The defaults are deliberately small; callers raise them explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest binary word any brute-force or enumeration path will touch.
    pub max_word_len: usize,
    /// Longest ascent sequence that will be generated.
    pub max_ascseq_len: usize,
    /// Most items a single materialized family may hold.
    pub max_items: u64,
    /// Most cells a single identity grid may contain.
    pub max_cells: u64,
    /// Largest letter accepted in a general word.
    pub max_letter: u32,
    /// Largest row index for triangle construction.
    pub max_rows: usize,
}

pub const MAX_CELLS_ENV: &str = "RASCAL_MAX_CELLS";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_word_len: 20,
            max_ascseq_len: 12,
            max_items: 1 << 20,
            max_cells: 1 << 20,
            max_letter: 1 << 16,
            max_rows: 4096,
        }
    }
}

impl Limits {
    /// Defaults, with `RASCAL_MAX_CELLS` (when set) overriding the cell and item caps.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MAX_CELLS_ENV) {
            let cap: u64 = raw.trim().parse().map_err(|_| Error::Parse {
                input: raw.clone(),
                reason: format!("{MAX_CELLS_ENV} must be a nonnegative integer"),
            })?;
            limits.max_cells = cap;
            limits.max_items = cap;
        }
        Ok(limits)
    }

    pub fn check_word_len(&self, n: usize) -> Result<()> {
        if n > self.max_word_len {
            return Err(Error::limit("word length", n, self.max_word_len));
        }
        Ok(())
    }

    pub fn check_ascseq_len(&self, n: usize) -> Result<()> {
        if n > self.max_ascseq_len {
            return Err(Error::limit("ascent sequence length", n, self.max_ascseq_len));
        }
        Ok(())
    }

    pub fn check_cells(&self, cells: u64) -> Result<()> {
        if cells > self.max_cells {
            return Err(Error::limit("grid cells", cells, self.max_cells));
        }
        Ok(())
    }

    pub fn check_rows(&self, n_max: usize) -> Result<()> {
        if n_max > self.max_rows {
            return Err(Error::limit("triangle rows", n_max, self.max_rows));
        }
        Ok(())
    }
}
