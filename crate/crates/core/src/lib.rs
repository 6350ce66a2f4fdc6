//! Three-point triangle annotation for binary segmentation masks.
//!
//! An annotator clicks three pixels on an image; the triangle they span is
//! rasterized into a white-on-black mask of the image's size and written to
//! disk as `<stem>_mask.png`. The crate contains the geometry, the scanline
//! rasterizer (with a per-pixel reference implementation), the mask type and
//! its PNG encoding, the per-image annotation state machine, headless replay
//! of recorded clicks, and IoU / accuracy / mIoU metrics for comparing masks.

pub mod annotations;
pub mod geometry;
pub mod io;
pub mod mask;
pub mod metrics;
pub mod raster;
pub mod session;

pub use annotations::{apply_record, parse_annotations, AnnotationRecord, RecordError};
pub use geometry::{
    signed_area, validate_triangle, BarycentricCoords, GeometryError, Point2, Triangle,
    DEFAULT_EPS,
};
pub use mask::{
    decode_png, encode_png, mask_file_name, overlay_preview, BinaryMask, MaskArtifact, MaskError,
};
pub use metrics::{eval_pairs, iou, miou, pixel_accuracy, MaskReport, NamedPair};
pub use raster::{mask_from_clicks, rasterize_oracle, rasterize_scanline, RasterConfig, RasterError};
pub use session::{RejectReason, Session, SessionError, SessionEvent, SessionState};
