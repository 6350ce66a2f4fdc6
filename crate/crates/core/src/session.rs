//! The annotation loop for a queue of images.
//!
//! ```text
//!                 add_point (1st, 2nd)      add_point (3rd, valid)
//!  AwaitingPoints ─────────────────────▶ ⟲  ──────────────────────▶ MaskReady
//!        ▲                                                             │
//!        └─────────────── advance (more images) ◀──────────────────────┤
//!                                                                      ▼
//!   any state ── terminate ──▶ Finished ◀── advance (queue exhausted)
//! ```
//!
//! The mask is written to disk as soon as the third point is accepted, so
//! it already exists when the caller sees `MaskGenerated`. Only the header
//! of the current image is read; pixel data is never held by the session.

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::annotations::{append_record, AnnotationRecord, ANNOTATIONS_FILE};
use crate::io::{ensure_writable_dir, image_dimensions, is_supported_image, list_images, save_mask};
use crate::mask::BinaryMask;
use crate::raster::mask_from_clicks;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SessionState {
    AwaitingPoints,
    MaskReady,
    Finished,
}

impl fmt::Display for SessionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    OutOfBounds,
    Degenerate,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::OutOfBounds => "out_of_bounds",
            RejectReason::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SessionEvent {
    PointAccepted { pending: usize },
    PointRejected { reason: RejectReason },
    MaskGenerated { mask: BinaryMask, path: PathBuf },
    Advanced { cursor: usize },
    Finished,
}

impl SessionEvent {
    pub fn kind(&self) -> &'static str {
        match self {
            SessionEvent::PointAccepted { .. } => "PointAccepted",
            SessionEvent::PointRejected { .. } => "PointRejected",
            SessionEvent::MaskGenerated { .. } => "MaskGenerated",
            SessionEvent::Advanced { .. } => "Advanced",
            SessionEvent::Finished => "Finished",
        }
    }
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("input not found: {0}")]
    InputNotFound(PathBuf),
    #[error("no images found in {0}")]
    NoImagesFound(PathBuf),
    #[error("output directory {0} is not writable: {1}")]
    OutputNotWritable(PathBuf, io::Error),
    #[error("operation not allowed in state {0}")]
    WrongState(SessionState),
    #[error("no points to undo")]
    NothingToUndo,
    #[error("cannot read image {0}: {1}")]
    Image(PathBuf, String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug)]
pub struct Session {
    images: Vec<PathBuf>,
    cursor: usize,
    pending: Vec<(i64, i64)>,
    output_dir: PathBuf,
    state: SessionState,
    dims: Option<(u32, u32)>,
    last_mask: Option<BinaryMask>,
    record_log: Option<PathBuf>,
    masks_written: usize,
}

impl Session {
    /// Opens a session over a single image or a directory of images.
    pub fn start(input: &Path, output_dir: &Path) -> Result<Self, SessionError> {
        let images = if input.is_dir() {
            list_images(input)?
        } else if input.is_file() {
            if is_supported_image(input) {
                vec![input.to_path_buf()]
            } else {
                Vec::new()
            }
        } else {
            return Err(SessionError::InputNotFound(input.to_path_buf()));
        };
        if images.is_empty() {
            return Err(SessionError::NoImagesFound(input.to_path_buf()));
        }
        ensure_writable_dir(output_dir)
            .map_err(|e| SessionError::OutputNotWritable(output_dir.to_path_buf(), e))?;
        let mut session = Session {
            images,
            cursor: 0,
            pending: Vec::with_capacity(3),
            output_dir: output_dir.to_path_buf(),
            state: SessionState::AwaitingPoints,
            dims: None,
            last_mask: None,
            record_log: None,
            masks_written: 0,
        };
        session.load_current()?;
        Ok(session)
    }

    /// Appends every completed triple to `annotations.jsonl` in the output
    /// directory, so the session can be replayed headlessly.
    pub fn record_annotations(mut self, enabled: bool) -> Self {
        self.record_log = enabled.then(|| self.output_dir.join(ANNOTATIONS_FILE));
        self
    }

    fn load_current(&mut self) -> Result<(), SessionError> {
        let path = &self.images[self.cursor];
        let dims = image_dimensions(path).map_err(|e| SessionError::Image(path.clone(), e.to_string()))?;
        self.dims = Some(dims);
        Ok(())
    }

    pub fn state(&self) -> SessionState {
        self.state
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn images(&self) -> &[PathBuf] {
        &self.images
    }

    pub fn pending(&self) -> &[(i64, i64)] {
        &self.pending
    }

    pub fn output_dir(&self) -> &Path {
        &self.output_dir
    }

    pub fn masks_written(&self) -> usize {
        self.masks_written
    }

    /// Path of the image being annotated, or `None` once finished.
    pub fn current_image(&self) -> Option<&Path> {
        match self.state {
            SessionState::Finished => None,
            _ => self.images.get(self.cursor).map(PathBuf::as_path),
        }
    }

    pub fn current_name(&self) -> Option<String> {
        self.current_image()
            .and_then(|p| p.file_name())
            .map(|n| n.to_string_lossy().into_owned())
    }

    pub fn current_dimensions(&self) -> Option<(u32, u32)> {
        self.current_image().and(self.dims)
    }

    /// The mask generated for the current image, while in `MaskReady`.
    pub fn ready_mask(&self) -> Option<&BinaryMask> {
        match self.state {
            SessionState::MaskReady => self.last_mask.as_ref(),
            _ => None,
        }
    }

    fn require(&self, state: SessionState) -> Result<(), SessionError> {
        if self.state != state {
            return Err(SessionError::WrongState(self.state));
        }
        Ok(())
    }

    pub fn add_point(&mut self, x: i64, y: i64) -> Result<SessionEvent, SessionError> {
        self.require(SessionState::AwaitingPoints)?;
        let (width, height) = self.dims.expect("dimensions loaded while awaiting points");
        if x < 0 || y < 0 || x >= i64::from(width) || y >= i64::from(height) {
            return Ok(SessionEvent::PointRejected {
                reason: RejectReason::OutOfBounds,
            });
        }
        self.pending.push((x, y));
        if self.pending.len() < 3 {
            return Ok(SessionEvent::PointAccepted {
                pending: self.pending.len(),
            });
        }

        let clicks = [self.pending[0], self.pending[1], self.pending[2]];
        self.pending.clear();
        let Ok(mask) = mask_from_clicks(clicks, width, height) else {
            return Ok(SessionEvent::PointRejected {
                reason: RejectReason::Degenerate,
            });
        };
        let name = self.current_name().expect("current image while awaiting points");
        let path = save_mask(&self.output_dir, &name, &mask)?;
        if let Some(log) = &self.record_log {
            append_record(
                log,
                &AnnotationRecord {
                    image: name,
                    points: clicks.map(|(x, y)| [x, y]),
                },
            )?;
        }
        self.masks_written += 1;
        self.state = SessionState::MaskReady;
        self.last_mask = Some(mask.clone());
        Ok(SessionEvent::MaskGenerated { mask, path })
    }

    pub fn undo_point(&mut self) -> Result<SessionEvent, SessionError> {
        self.require(SessionState::AwaitingPoints)?;
        if self.pending.pop().is_none() {
            return Err(SessionError::NothingToUndo);
        }
        Ok(SessionEvent::PointAccepted {
            pending: self.pending.len(),
        })
    }

    pub fn advance(&mut self) -> Result<SessionEvent, SessionError> {
        self.require(SessionState::MaskReady)?;
        self.cursor += 1;
        self.pending.clear();
        self.last_mask = None;
        if self.cursor == self.images.len() {
            self.state = SessionState::Finished;
            self.dims = None;
            return Ok(SessionEvent::Finished);
        }
        self.state = SessionState::AwaitingPoints;
        self.load_current()?;
        Ok(SessionEvent::Advanced {
            cursor: self.cursor,
        })
    }

    /// Stops the session. Masks already written stay on disk; pending
    /// points are dropped.
    pub fn terminate(&mut self) -> SessionEvent {
        self.state = SessionState::Finished;
        self.pending.clear();
        self.last_mask = None;
        self.dims = None;
        SessionEvent::Finished
    }
}
