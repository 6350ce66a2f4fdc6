//! Mask-set comparison.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use trimask_core::io::list_images;
use trimask_core::{decode_png, eval_pairs, BinaryMask, NamedPair};

use crate::exit;

fn png_files(dir: &Path) -> std::io::Result<BTreeMap<String, PathBuf>> {
    Ok(list_images(dir)?
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("png")))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), p))
        .collect())
}

/// Compares every mask in `pred_dir` with the same-named mask in `ref_dir`.
///
/// stdout: one `name<TAB>iou` line per pair, then `miou=<v> accuracy=<v>`.
pub fn run(
    pred_dir: &Path,
    ref_dir: &Path,
    threshold: Option<u8>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::io::Result<i32> {
    let (pred, reference) = match (png_files(pred_dir), png_files(ref_dir)) {
        (Ok(p), Ok(r)) => (p, r),
        (Err(e), _) | (_, Err(e)) => {
            writeln!(stderr, "error: {e}")?;
            return Ok(exit::FAILURE);
        }
    };

    let mut unpaired: Vec<&String> = pred
        .keys()
        .filter(|k| !reference.contains_key(*k))
        .collect();
    unpaired.extend(reference.keys().filter(|k| !pred.contains_key(*k)));
    if !unpaired.is_empty() {
        for name in unpaired {
            writeln!(stderr, "error: unpaired mask: {name}")?;
        }
        return Ok(exit::UNPAIRED);
    }

    let load = |path: &Path| -> Result<BinaryMask, String> {
        let bytes = fs::read(path).map_err(|e| e.to_string())?;
        decode_png(&bytes, threshold).map_err(|e| e.to_string())
    };
    let mut masks = Vec::with_capacity(pred.len());
    for (name, p) in &pred {
        match (load(p), load(&reference[name])) {
            (Ok(a), Ok(b)) => masks.push((name.as_str(), a, b)),
            (Err(e), _) | (_, Err(e)) => {
                writeln!(stderr, "error: {name}: {e}")?;
                return Ok(exit::FAILURE);
            }
        }
    }

    let report = eval_pairs(masks.iter().map(|(name, a, b)| NamedPair {
        name,
        pred: a,
        reference: b,
    }));
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            writeln!(stderr, "error: {e}")?;
            return Ok(exit::UNPAIRED);
        }
    };

    writeln!(
        stderr,
        "# iou: foreground per image; miou: mean over images of two-class mIoU; accuracy: over all pixels"
    )?;
    if report.empty {
        writeln!(
            stderr,
            "warning: no mask pairs found; aggregates are vacuous"
        )?;
    }
    for s in &report.per_image {
        writeln!(stdout, "{}\t{:.6}", s.name, s.iou)?;
    }
    writeln!(
        stdout,
        "miou={:.6} accuracy={:.6}",
        report.miou, report.pixel_accuracy
    )?;
    Ok(exit::OK)
}
