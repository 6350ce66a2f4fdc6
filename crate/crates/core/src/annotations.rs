//! Recorded annotations: one JSON object per line, each holding an image
//! name and its three clicks.
//!
//! ```text
//! {"image": "a.png", "points": [[x1,y1],[x2,y2],[x3,y3]]}
//! ```

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::GeometryError;
use crate::io::{image_dimensions, save_mask};
use crate::raster::{mask_from_clicks, RasterError};

/// File name interactive sessions append their triples to.
pub const ANNOTATIONS_FILE: &str = "annotations.jsonl";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub image: String,
    pub points: [[i64; 2]; 3],
}

impl AnnotationRecord {
    pub fn clicks(&self) -> [(i64, i64); 3] {
        self.points.map(|[x, y]| (x, y))
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("invalid record: {0}")]
    Parse(String),
    #[error("image not found: {0}")]
    MissingImage(String),
    #[error("unreadable image {0}: {1}")]
    Image(String, String),
    #[error("degenerate triangle (collinear points)")]
    Degenerate,
    #[error("point out of bounds for {width}x{height} image")]
    OutOfBounds { width: u32, height: u32 },
    #[error("could not write mask: {0}")]
    Io(#[from] io::Error),
}

/// A parsed line of an annotations file. `line` is 1-based.
#[derive(Debug)]
pub struct ParsedLine {
    pub line: usize,
    pub record: Result<AnnotationRecord, RecordError>,
}

/// Parses every non-blank line; bad lines are kept as errors so callers can
/// report them alongside the good ones.
pub fn parse_annotations(text: &str) -> Vec<ParsedLine> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| ParsedLine {
            line: i + 1,
            record: serde_json::from_str::<AnnotationRecord>(l)
                .map_err(|e| RecordError::Parse(e.to_string()))
                .and_then(|r| {
                    if r.image.is_empty() {
                        Err(RecordError::Parse("empty image name".into()))
                    } else {
                        Ok(r)
                    }
                }),
        })
        .collect()
}

pub fn append_record(path: &Path, record: &AnnotationRecord) -> io::Result<()> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{}", record.to_line())
}

/// Regenerates and saves the mask for one record.
pub fn apply_record(
    record: &AnnotationRecord,
    images_root: &Path,
    out_dir: &Path,
) -> Result<PathBuf, RecordError> {
    let path = images_root.join(&record.image);
    if !path.is_file() {
        return Err(RecordError::MissingImage(record.image.clone()));
    }
    let (width, height) = image_dimensions(&path)
        .map_err(|e| RecordError::Image(record.image.clone(), e.to_string()))?;
    let mask = mask_from_clicks(record.clicks(), width, height).map_err(|e| match e {
        RasterError::Geometry(GeometryError::OutOfBounds { .. }) => {
            RecordError::OutOfBounds { width, height }
        }
        RasterError::Geometry(_) => RecordError::Degenerate,
        other => RecordError::Image(record.image.clone(), other.to_string()),
    })?;
    Ok(save_mask(out_dir, &record.image, &mask)?)
}
