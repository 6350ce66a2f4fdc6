//! Binary masks and their on-disk PNG form.
//!
//! On disk a mask is an 8-bit single-channel grayscale PNG: foreground is
//! 255 (white), background 0 (black).

use std::io::Cursor;
use std::time::SystemTime;

use image::codecs::png::{CompressionType, FilterType, PngEncoder};
use image::{ExtendedColorType, ImageEncoder, ImageFormat, RgbImage};
use thiserror::Error;

pub const FOREGROUND: u8 = 255;
pub const BACKGROUND: u8 = 0;

#[derive(Debug, Error)]
pub enum MaskError {
    #[error("mask dimensions {0}x{1} are empty or too large")]
    BadDimensions(u32, u32),
    #[error("mask data has {got} cells, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cell value {0} is not 0 or 1")]
    NotZeroOne(u8),
    #[error("pixel ({x}, {y}) has value {value}, not 0 or 255")]
    NotBinary { x: u32, y: u32, value: u8 },
    #[error("malformed image: {0}")]
    MalformedImage(String),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
    #[error("alpha {0} outside [0, 1]")]
    BadAlpha(f64),
}

/// Row-major grid of `{0, 1}` cells.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl std::fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryMask")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("foreground", &self.count_foreground())
            .finish()
    }
}

/// Largest number of cells a mask may hold.
pub const MAX_CELLS: u64 = 1 << 31;

pub(crate) fn check_dims(width: u32, height: u32) -> Result<usize, MaskError> {
    let cells = u64::from(width) * u64::from(height);
    if width == 0 || height == 0 || cells > MAX_CELLS {
        return Err(MaskError::BadDimensions(width, height));
    }
    Ok(cells as usize)
}

impl BinaryMask {
    /// An all-background mask.
    pub fn new(width: u32, height: u32) -> Result<Self, MaskError> {
        let len = check_dims(width, height)?;
        Ok(BinaryMask {
            width,
            height,
            data: vec![0; len],
        })
    }

    pub fn from_vec(width: u32, height: u32, data: Vec<u8>) -> Result<Self, MaskError> {
        let len = check_dims(width, height)?;
        if data.len() != len {
            return Err(MaskError::LengthMismatch {
                expected: len,
                got: data.len(),
            });
        }
        if let Some(&v) = data.iter().find(|&&v| v > 1) {
            return Err(MaskError::NotZeroOne(v));
        }
        Ok(BinaryMask {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        self.data[self.index(x, y)] == 1
    }

    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        let i = self.index(x, y);
        self.data[i] = u8::from(value);
    }

    fn index(&self, x: u32, y: u32) -> usize {
        assert!(x < self.width && y < self.height, "({x}, {y}) out of range");
        y as usize * self.width as usize + x as usize
    }

    /// Mutable view of one row.
    pub(crate) fn row_mut(&mut self, y: u32) -> &mut [u8] {
        let w = self.width as usize;
        let start = y as usize * w;
        &mut self.data[start..start + w]
    }

    pub fn count_foreground(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }

    pub fn invert(&self) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|v| 1 - v).collect(),
        }
    }

    fn same_dims(&self, other_w: u32, other_h: u32) -> Result<(), MaskError> {
        if (self.width, self.height) != (other_w, other_h) {
            return Err(MaskError::DimensionMismatch(
                self.width,
                self.height,
                other_w,
                other_h,
            ));
        }
        Ok(())
    }
}

/// A mask together with where it came from.
#[derive(Debug, Clone)]
pub struct MaskArtifact {
    pub source_image_name: String,
    pub mask: BinaryMask,
    pub created_at: SystemTime,
}

impl MaskArtifact {
    pub fn new(source_image_name: impl Into<String>, mask: BinaryMask) -> Option<Self> {
        let source_image_name = source_image_name.into();
        if source_image_name.is_empty() {
            return None;
        }
        Some(MaskArtifact {
            source_image_name,
            mask,
            created_at: SystemTime::now(),
        })
    }

    /// `<stem>_mask.png`
    pub fn file_name(&self) -> String {
        mask_file_name(&self.source_image_name)
    }
}

/// Output file name for the mask of `source` (a file name or path).
pub fn mask_file_name(source: &str) -> String {
    let stem = std::path::Path::new(source)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(source);
    format!("{stem}_mask.png")
}

/// Encodes a mask as an 8-bit grayscale PNG with fixed settings, so equal
/// masks always produce equal bytes.
pub fn encode_png(mask: &BinaryMask) -> Vec<u8> {
    let pixels: Vec<u8> = mask
        .data
        .iter()
        .map(|&v| if v == 1 { FOREGROUND } else { BACKGROUND })
        .collect();
    let mut out = Vec::new();
    PngEncoder::new_with_quality(&mut out, CompressionType::Fast, FilterType::Sub)
        .write_image(&pixels, mask.width, mask.height, ExtendedColorType::L8)
        .expect("in-memory PNG encoding of a valid mask");
    out
}

/// Decodes a grayscale (or grayscale-convertible) PNG into a mask.
///
/// Without a threshold every pixel must be exactly 0 or 255. With
/// `Some(t)`, pixels with value `> t` become foreground.
pub fn decode_png(bytes: &[u8], threshold: Option<u8>) -> Result<BinaryMask, MaskError> {
    let img = image::load_from_memory_with_format(bytes, ImageFormat::Png)
        .map_err(|e| MaskError::MalformedImage(e.to_string()))?
        .into_luma8();
    let (width, height) = img.dimensions();
    check_dims(width, height)?;
    let mut data = Vec::with_capacity(width as usize * height as usize);
    for (x, y, px) in img.enumerate_pixels() {
        let v = px.0[0];
        let bit = match threshold {
            Some(t) => v > t,
            None => match v {
                FOREGROUND => true,
                BACKGROUND => false,
                value => return Err(MaskError::NotBinary { x, y, value }),
            },
        };
        data.push(u8::from(bit));
    }
    Ok(BinaryMask {
        width,
        height,
        data,
    })
}

/// Tints the foreground of `mask` over `image`.
///
/// Foreground channels become `(1 - alpha) * c + alpha * color`, rounded to
/// the nearest integer; background pixels are copied unchanged.
pub fn overlay_preview(
    image: &RgbImage,
    mask: &BinaryMask,
    color: [u8; 3],
    alpha: f64,
) -> Result<RgbImage, MaskError> {
    mask.same_dims(image.width(), image.height())?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(MaskError::BadAlpha(alpha));
    }
    let mut out = image.clone();
    for (px, &m) in out.pixels_mut().zip(mask.data.iter()) {
        if m == 1 {
            for (c, &target) in px.0.iter_mut().zip(color.iter()) {
                let v = (1.0 - alpha) * f64::from(*c) + alpha * f64::from(target);
                *c = v.round().clamp(0.0, 255.0) as u8;
            }
        }
    }
    Ok(out)
}

/// Encodes an RGB raster as PNG (used for overlay previews).
pub fn encode_rgb_png(image: &RgbImage) -> Vec<u8> {
    let mut out = Cursor::new(Vec::new());
    image
        .write_to(&mut out, ImageFormat::Png)
        .expect("in-memory PNG encoding");
    out.into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::{GrayImage, Luma, Rgb};
    use proptest::prelude::*;

    fn gray_png(w: u32, h: u32, values: &[u8]) -> Vec<u8> {
        let img = GrayImage::from_raw(w, h, values.to_vec()).unwrap();
        let mut out = Cursor::new(Vec::new());
        img.write_to(&mut out, ImageFormat::Png).unwrap();
        out.into_inner()
    }

    #[test]
    fn all_foreground_round_trip() {
        let m = BinaryMask::from_vec(2, 2, vec![1; 4]).unwrap();
        let bytes = encode_png(&m);
        let raw = image::load_from_memory(&bytes).unwrap().into_luma8();
        assert_eq!(raw.as_raw(), &vec![255u8; 4]);
        assert_eq!(decode_png(&bytes, None).unwrap(), m);
    }

    #[test]
    fn all_background_round_trip() {
        let m = BinaryMask::new(2, 2).unwrap();
        let raw = image::load_from_memory(&encode_png(&m)).unwrap();
        assert_eq!(raw.color(), image::ColorType::L8);
        assert_eq!(raw.into_luma8().as_raw(), &vec![0u8; 4]);
    }

    #[test]
    fn png_header_dimensions() {
        let m = BinaryMask::new(13, 7).unwrap();
        let bytes = encode_png(&m);
        // IHDR starts at byte 16: width then height, big-endian.
        assert_eq!(u32::from_be_bytes(bytes[16..20].try_into().unwrap()), 13);
        assert_eq!(u32::from_be_bytes(bytes[20..24].try_into().unwrap()), 7);
        // bit depth 8, color type 0 (grayscale)
        assert_eq!(&bytes[24..26], &[8, 0]);
    }

    #[test]
    fn non_binary_pixels() {
        let bytes = gray_png(2, 1, &[0, 128]);
        assert!(matches!(
            decode_png(&bytes, None),
            Err(MaskError::NotBinary { x: 1, y: 0, value: 128 })
        ));
        let m = decode_png(&bytes, Some(100)).unwrap();
        assert_eq!(m.as_slice(), &[0, 1]);
    }

    #[test]
    fn malformed_bytes() {
        assert!(matches!(
            decode_png(b"not a png", None),
            Err(MaskError::MalformedImage(_))
        ));
    }

    #[test]
    fn rgb_png_is_converted() {
        let img = RgbImage::from_fn(2, 1, |x, _| if x == 0 { Rgb([255; 3]) } else { Rgb([0; 3]) });
        let m = decode_png(&encode_rgb_png(&img), None).unwrap();
        assert_eq!(m.as_slice(), &[1, 0]);
    }

    #[test]
    fn from_vec_validates() {
        assert!(matches!(
            BinaryMask::from_vec(2, 2, vec![0, 1, 2, 0]),
            Err(MaskError::NotZeroOne(2))
        ));
        assert!(matches!(
            BinaryMask::from_vec(2, 2, vec![0; 3]),
            Err(MaskError::LengthMismatch { .. })
        ));
        assert!(BinaryMask::new(0, 5).is_err());
        assert!(BinaryMask::new(1 << 16, 1 << 16).is_err());
    }

    #[test]
    fn file_names() {
        assert_eq!(mask_file_name("road_01.jpg"), "road_01_mask.png");
        assert_eq!(mask_file_name("dir/a.b.PNG"), "a.b_mask.png");
        let art = MaskArtifact::new("x.png", BinaryMask::new(1, 1).unwrap()).unwrap();
        assert_eq!(art.file_name(), "x_mask.png");
        assert!(MaskArtifact::new("", BinaryMask::new(1, 1).unwrap()).is_none());
    }

    fn sample_image() -> RgbImage {
        RgbImage::from_fn(4, 3, |x, y| Rgb([(x * 40) as u8, (y * 70) as u8, 200]))
    }

    #[test]
    fn overlay_alpha_zero_is_identity() {
        let img = sample_image();
        let m = BinaryMask::from_vec(4, 3, vec![1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1]).unwrap();
        assert_eq!(overlay_preview(&img, &m, [255, 0, 0], 0.0).unwrap(), img);
    }

    #[test]
    fn overlay_alpha_one_paints_color() {
        let img = sample_image();
        let m = BinaryMask::from_vec(4, 3, vec![1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1]).unwrap();
        let out = overlay_preview(&img, &m, [255, 0, 0], 1.0).unwrap();
        for (x, y, px) in out.enumerate_pixels() {
            if m.get(x, y) {
                assert_eq!(px, &Rgb([255, 0, 0]));
            } else {
                assert_eq!(px, img.get_pixel(x, y));
            }
        }
    }

    #[test]
    fn overlay_empty_mask_and_rounding() {
        let img = sample_image();
        let empty = BinaryMask::new(4, 3).unwrap();
        assert_eq!(overlay_preview(&img, &empty, [9, 9, 9], 0.37).unwrap(), img);

        let one = RgbImage::from_pixel(1, 1, Rgb([100, 0, 255]));
        let full = BinaryMask::from_vec(1, 1, vec![1]).unwrap();
        let out = overlay_preview(&one, &full, [255, 0, 0], 0.4).unwrap();
        // 0.6*100+0.4*255 = 162, 0, 0.6*255 = 153
        assert_eq!(out.get_pixel(0, 0), &Rgb([162, 0, 153]));
    }

    #[test]
    fn overlay_dimension_mismatch() {
        let err = overlay_preview(&sample_image(), &BinaryMask::new(3, 3).unwrap(), [0; 3], 0.5);
        assert!(matches!(err, Err(MaskError::DimensionMismatch(3, 3, 4, 3))));
    }

    #[test]
    fn thresholded_gray_levels() {
        let img = GrayImage::from_fn(3, 1, |x, _| Luma([[10, 100, 101][x as usize]]));
        let mut out = Cursor::new(Vec::new());
        img.write_to(&mut out, ImageFormat::Png).unwrap();
        let m = decode_png(out.get_ref(), Some(100)).unwrap();
        assert_eq!(m.as_slice(), &[0, 0, 1]);
    }

    proptest! {
        #[test]
        fn encode_decode_bijection(w in 1u32..24, h in 1u32..24, seed in any::<u64>()) {
            let mut s = seed;
            let data: Vec<u8> = (0..w * h)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (s >> 63) as u8
                })
                .collect();
            let m = BinaryMask::from_vec(w, h, data).unwrap();
            let bytes = encode_png(&m);
            prop_assert_eq!(&bytes, &encode_png(&m));
            prop_assert_eq!(decode_png(&bytes, None).unwrap(), m);
        }
    }
}
