//! Group file format: the first non-comment line is the degree, each further
//! non-empty line one generator in 0-based disjoint-cycle notation (`()` is
//! the identity). Lines starting with `#` are comments.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// Degrees beyond this are rejected when reading files.
pub const MAX_FILE_DEGREE: usize = 1 << 16;

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        match degree {
            None => {
                let d: usize = line
                    .parse()
                    .map_err(|_| err(format!("expected a degree, found `{line}`")))?;
                if d == 0 || d > MAX_FILE_DEGREE {
                    return Err(err(format!(
                        "degree {d} out of range 1..={MAX_FILE_DEGREE}"
                    )));
                }
                degree = Some(d);
            }
            Some(d) => {
                let p = Permutation::parse(d, line).map_err(|e| err(e.to_string()))?;
                gens.push(p);
            }
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: 0,
        message: "missing degree line".into(),
    })?;
    // a file with no generator lines is the trivial group of that degree
    FiniteGroup::from_generators(degree, gens)
}

pub fn format_group(g: &FiniteGroup) -> String {
    let mut out = String::new();
    writeln!(out, "# order {}", g.order()).unwrap();
    writeln!(out, "{}", g.degree()).unwrap();
    for x in g.generators() {
        writeln!(out, "{x}").unwrap();
    }
    out
}

pub fn load_group(path: impl AsRef<Path>) -> Result<FiniteGroup> {
    parse_group(&std::fs::read_to_string(path)?)
}

pub fn save_group(g: &FiniteGroup, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_group(g))?;
    Ok(())
}
