use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

/// Write a finished document to `path`, or to standard output. Documents are
/// built completely before this is called, so a failed run leaves no file.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
