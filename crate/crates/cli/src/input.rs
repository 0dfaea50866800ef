use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use navnet::io::{points_from_csv, space_from_json};
use navnet::MetricSpace;

use crate::SpaceArgs;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Reads `-` as stdin is not supported; every input is a file.
pub fn load_space(args: &SpaceArgs) -> Result<MetricSpace> {
    let text = read_text(&args.points)?;
    let is_csv = args
        .points
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let space = if is_csv {
        points_from_csv(&text, args.scale)?.into()
    } else {
        space_from_json(&text, !args.no_validate)?
    };
    Ok(space)
}

/// Writes to the file, or to stdout without one.
pub fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
