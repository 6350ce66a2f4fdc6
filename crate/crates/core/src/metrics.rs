//! Mask agreement metrics: foreground IoU, pixel accuracy and two-class mIoU.

use serde::Serialize;

use crate::mask::{BinaryMask, MaskError};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Confusion {
    tp: u64,
    fp: u64,
    fn_: u64,
    tn: u64,
}

impl Confusion {
    fn of(pred: &BinaryMask, reference: &BinaryMask) -> Result<Self, MaskError> {
        if pred.dimensions() != reference.dimensions() {
            let (a, b) = pred.dimensions();
            let (c, d) = reference.dimensions();
            return Err(MaskError::DimensionMismatch(a, b, c, d));
        }
        let mut m = Confusion::default();
        for (&p, &r) in pred.as_slice().iter().zip(reference.as_slice()) {
            match (p, r) {
                (1, 1) => m.tp += 1,
                (1, _) => m.fp += 1,
                (_, 1) => m.fn_ += 1,
                _ => m.tn += 1,
            }
        }
        Ok(m)
    }

    fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    fn agree(&self) -> u64 {
        self.tp + self.tn
    }

    fn fg_iou(&self) -> f64 {
        ratio_or_one(self.tp, self.tp + self.fp + self.fn_)
    }

    fn bg_iou(&self) -> f64 {
        ratio_or_one(self.tn, self.tn + self.fp + self.fn_)
    }
}

/// `num / den`, with an empty union counted as perfect agreement.
fn ratio_or_one(num: u64, den: u64) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Foreground intersection over union; 1.0 when both masks are empty.
pub fn iou(a: &BinaryMask, b: &BinaryMask) -> Result<f64, MaskError> {
    Ok(Confusion::of(a, b)?.fg_iou())
}

/// Fraction of pixels on which the two masks agree.
pub fn pixel_accuracy(a: &BinaryMask, b: &BinaryMask) -> Result<f64, MaskError> {
    let c = Confusion::of(a, b)?;
    Ok(c.agree() as f64 / c.total() as f64)
}

/// Mean of foreground and background IoU.
pub fn miou(a: &BinaryMask, b: &BinaryMask) -> Result<f64, MaskError> {
    let c = Confusion::of(a, b)?;
    Ok(0.5 * (c.fg_iou() + c.bg_iou()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageScore {
    pub name: String,
    pub iou: f64,
    pub miou: f64,
    pub accuracy: f64,
}

/// Aggregate over a set of (prediction, reference) pairs.
///
/// `pixel_accuracy` is micro-averaged over every pixel of every image;
/// `miou` is the macro mean of per-image mIoU.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaskReport {
    pub per_image: Vec<ImageScore>,
    pub pixel_accuracy: f64,
    pub miou: f64,
    pub image_count: usize,
    /// Set when there was nothing to compare and the aggregates are vacuous.
    pub empty: bool,
}

#[derive(Debug, thiserror::Error)]
#[error("{name}: {source}")]
pub struct PairError {
    pub name: String,
    #[source]
    pub source: MaskError,
}

pub struct NamedPair<'a> {
    pub name: &'a str,
    pub pred: &'a BinaryMask,
    pub reference: &'a BinaryMask,
}

pub fn eval_pairs<'a, I>(pairs: I) -> Result<MaskReport, PairError>
where
    I: IntoIterator<Item = NamedPair<'a>>,
{
    let mut per_image = Vec::new();
    let (mut agree, mut total) = (0u64, 0u64);
    for pair in pairs {
        let c = Confusion::of(pair.pred, pair.reference).map_err(|source| PairError {
            name: pair.name.to_string(),
            source,
        })?;
        agree += c.agree();
        total += c.total();
        per_image.push(ImageScore {
            name: pair.name.to_string(),
            iou: c.fg_iou(),
            miou: 0.5 * (c.fg_iou() + c.bg_iou()),
            accuracy: c.agree() as f64 / c.total() as f64,
        });
    }
    let image_count = per_image.len();
    let miou = if image_count == 0 {
        1.0
    } else {
        per_image.iter().map(|s| s.miou).sum::<f64>() / image_count as f64
    };
    Ok(MaskReport {
        pixel_accuracy: ratio_or_one(agree, total),
        miou,
        image_count,
        empty: image_count == 0,
        per_image,
    })
}
