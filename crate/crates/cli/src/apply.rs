//! Headless replay of recorded annotations.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use trimask_core::{apply_record, parse_annotations, RecordError};

use crate::exit;

/// Regenerates one mask per record in `annotations`.
///
/// Records are independent and processed in parallel; reports are written
/// in file order. Successful records are saved even when others fail.
pub fn run(
    annotations: &Path,
    images_root: &Path,
    out_dir: &Path,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::io::Result<i32> {
    let text = match fs::read_to_string(annotations) {
        Ok(t) => t,
        Err(e) => {
            writeln!(stderr, "error: cannot read {}: {e}", annotations.display())?;
            return Ok(exit::FAILURE);
        }
    };
    if let Err(e) = fs::create_dir_all(out_dir) {
        writeln!(stderr, "error: cannot create {}: {e}", out_dir.display())?;
        return Ok(exit::FAILURE);
    }

    let parsed = parse_annotations(&text);
    let results: Vec<_> = parsed
        .into_par_iter()
        .map(|p| {
            let image = p.record.as_ref().map(|r| r.image.clone()).ok();
            let outcome = p
                .record
                .and_then(|r| apply_record(&r, images_root, out_dir));
            (p.line, image, outcome)
        })
        .collect();

    let total = results.len();
    let mut failed = 0;
    for (line, image, outcome) in &results {
        match (image, outcome) {
            (Some(image), Ok(path)) => {
                writeln!(stdout, "ok\t{image}\t{}", path.display())?;
            }
            (image, Err(e)) => {
                failed += 1;
                writeln!(stdout, "failed\t{}", image.as_deref().unwrap_or("-"))?;
                write_failure(stderr, *line, image.as_deref(), e)?;
            }
            (None, Ok(_)) => unreachable!("records without an image are parse errors"),
        }
    }
    writeln!(
        stdout,
        "{} of {total} masks written, {failed} failed",
        total - failed
    )?;
    Ok(if failed == 0 {
        exit::OK
    } else {
        exit::RECORD_FAILED
    })
}

fn write_failure(
    stderr: &mut dyn Write,
    line: usize,
    image: Option<&str>,
    err: &RecordError,
) -> std::io::Result<()> {
    match image {
        Some(image) => writeln!(stderr, "error: line {line} ({image}): {err}"),
        None => writeln!(stderr, "error: line {line}: {err}"),
    }
}
