//! Triangle to binary-mask rasterization.
//!
//! Pixel `(i, j)` is foreground iff its center `(i + 0.5, j + 0.5)` lies in
//! the triangle, boundary included up to `eps` in barycentric units.
//! [`rasterize_scanline`] is the production path; [`rasterize_oracle`]
//! tests every pixel center and exists to check it.

use thiserror::Error;

use crate::geometry::{validate_triangle, GeometryError, Point2, Triangle, DEFAULT_EPS};
use crate::mask::{check_dims, BinaryMask, MaskError};

#[derive(Debug, Error)]
pub enum RasterError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Mask(#[from] MaskError),
    #[error("eps must be finite and non-negative, got {0}")]
    BadEps(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterConfig {
    width: u32,
    height: u32,
    eps: f64,
}

impl RasterConfig {
    pub fn new(width: u32, height: u32) -> Result<Self, RasterError> {
        Self::with_eps(width, height, DEFAULT_EPS)
    }

    pub fn with_eps(width: u32, height: u32, eps: f64) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        if !(eps.is_finite() && eps >= 0.0) {
            return Err(RasterError::BadEps(eps));
        }
        Ok(RasterConfig { width, height, eps })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// Barycentric weights restricted to one scan row, each as `a * u + k` with
/// `u = x - p1.x`.
struct RowWeights {
    p1: Point2,
    b: Point2,
    c: Point2,
    det: f64,
}

impl RowWeights {
    fn new(tri: &Triangle) -> Self {
        let [p1, p2, p3] = tri.vertices();
        let b = Point2::new(p2.x - p1.x, p2.y - p1.y);
        let c = Point2::new(p3.x - p1.x, p3.y - p1.y);
        RowWeights {
            p1,
            b,
            c,
            det: b.x * c.y - b.y * c.x,
        }
    }

    /// Closed x-interval where all three weights are `>= -eps` on the
    /// horizontal line at `y`, or `None` if it is empty.
    fn span(&self, y: f64, eps: f64) -> Option<(f64, f64)> {
        let v = y - self.p1.y;
        let (b, c, d) = (self.b, self.c, self.det);
        // beta  = ( c.y u - c.x v) / d
        // gamma = (-b.y u + b.x v) / d
        // alpha = 1 - beta - gamma
        let terms = [
            ((b.y - c.y) / d, 1.0 - (b.x - c.x) * v / d),
            (c.y / d, -c.x * v / d),
            (-b.y / d, b.x * v / d),
        ];
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (a, k) in terms {
            if a > 0.0 {
                lo = lo.max((-eps - k) / a);
            } else if a < 0.0 {
                hi = hi.min((-eps - k) / a);
            } else if k < -eps {
                return None;
            }
        }
        (lo <= hi).then_some((self.p1.x + lo, self.p1.x + hi))
    }
}

/// Fills the triangle row by row.
///
/// For every row whose center line can meet the triangle, the covered
/// x-interval is solved in closed form from the three edge constraints and
/// the pixel centers inside it are set.
pub fn rasterize_scanline(tri: &Triangle, cfg: &RasterConfig) -> BinaryMask {
    let mut mask = BinaryMask::new(cfg.width, cfg.height).expect("dimensions checked by config");
    let weights = RowWeights::new(tri);
    let (min, max) = tri.bounds();
    let last_row = f64::from(cfg.height - 1);
    let last_col = f64::from(cfg.width - 1);

    let first = (min.y - 0.5).floor().max(0.0);
    let last = (max.y - 0.5).ceil().min(last_row);
    if first > last {
        return mask;
    }
    for j in first as u32..=last as u32 {
        let Some((x_lo, x_hi)) = weights.span(f64::from(j) + 0.5, cfg.eps) else {
            continue;
        };
        let i_lo = (x_lo - 0.5).ceil().max(0.0);
        let i_hi = (x_hi - 0.5).floor().min(last_col);
        if i_lo > i_hi {
            continue;
        }
        mask.row_mut(j)[i_lo as usize..=i_hi as usize].fill(1);
    }
    mask
}

/// Reference rasterizer: tests every pixel center with [`Triangle::contains`].
pub fn rasterize_oracle(tri: &Triangle, cfg: &RasterConfig) -> BinaryMask {
    let mut mask = BinaryMask::new(cfg.width, cfg.height).expect("dimensions checked by config");
    for j in 0..cfg.height {
        for i in 0..cfg.width {
            let center = Point2::new(f64::from(i) + 0.5, f64::from(j) + 0.5);
            if tri.contains(center, cfg.eps) {
                mask.set(i, j, true);
            }
        }
    }
    mask
}

/// Builds the mask for three integer clicks on a `width x height` image.
///
/// Each click is mapped to the center of the clicked pixel before
/// validation, so the clicked pixels are always foreground.
pub fn mask_from_clicks(
    clicks: [(i64, i64); 3],
    width: u32,
    height: u32,
) -> Result<BinaryMask, RasterError> {
    let cfg = RasterConfig::new(width, height)?;
    let [a, b, c] = clicks.map(|(x, y)| Point2::from_click(x, y));
    let tri = validate_triangle(a, b, c, width, height)?;
    Ok(rasterize_scanline(&tri, &cfg))
}
