//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Triangles cross the boundary as six numbers `[x1, y1, x2, y2, x3, y3]` in
//! continuous image coordinates.

use wasm_bindgen::prelude::*;

use trimask_core::{
    iou, miou, pixel_accuracy, rasterize_oracle, rasterize_scanline, BinaryMask, Point2,
    RasterConfig, Triangle, DEFAULT_EPS,
};

fn triangle(coords: &[f64]) -> Result<Triangle, String> {
    let [x1, y1, x2, y2, x3, y3] = coords else {
        return Err(format!("expected 6 coordinates, got {}", coords.len()));
    };
    Triangle::new(
        Point2::new(*x1, *y1),
        Point2::new(*x2, *y2),
        Point2::new(*x3, *y3),
    )
    .map_err(|e| e.to_string())
}

fn raster(
    width: u32,
    height: u32,
    coords: &[f64],
) -> Result<(Triangle, RasterConfig, BinaryMask), String> {
    let cfg = RasterConfig::new(width, height).map_err(|e| e.to_string())?;
    let tri = triangle(coords)?;
    let mask = rasterize_scanline(&tri, &cfg);
    Ok((tri, cfg, mask))
}

/// A rasterized triangle with the numbers the page displays.
#[wasm_bindgen]
pub struct Rendered {
    rgba: Vec<u8>,
    foreground: u32,
    area: f64,
    perimeter: f64,
    oracle_agrees: bool,
}

#[wasm_bindgen]
impl Rendered {
    /// Foreground as opaque white, background transparent.
    pub fn rgba(&self) -> Vec<u8> {
        self.rgba.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn foreground(&self) -> u32 {
        self.foreground
    }

    #[wasm_bindgen(getter)]
    pub fn area(&self) -> f64 {
        self.area
    }

    #[wasm_bindgen(getter)]
    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// Whether the per-pixel reference rasterizer produced the same mask.
    #[wasm_bindgen(getter, js_name = oracleAgrees)]
    pub fn oracle_agrees(&self) -> bool {
        self.oracle_agrees
    }
}

pub fn render_impl(width: u32, height: u32, coords: &[f64]) -> Result<Rendered, String> {
    let (tri, cfg, mask) = raster(width, height, coords)?;
    let oracle_agrees = rasterize_oracle(&tri, &cfg) == mask;
    let rgba = mask
        .as_slice()
        .iter()
        .flat_map(|&v| {
            if v == 1 {
                [255, 255, 255, 255]
            } else {
                [0, 0, 0, 0]
            }
        })
        .collect();
    Ok(Rendered {
        rgba,
        foreground: mask.count_foreground() as u32,
        area: tri.area(),
        perimeter: tri.perimeter(),
        oracle_agrees,
    })
}

/// Rasterizes a triangle onto a `width x height` grid.
#[wasm_bindgen]
pub fn render(width: u32, height: u32, coords: &[f64]) -> Result<Rendered, JsError> {
    render_impl(width, height, coords).map_err(|e| JsError::new(&e))
}

pub fn barycentric_impl(coords: &[f64], x: f64, y: f64) -> Result<Vec<f64>, String> {
    let tri = triangle(coords)?;
    let p = Point2::new(x, y);
    let w = tri.barycentric(p);
    let inside = if tri.contains(p, DEFAULT_EPS) {
        1.0
    } else {
        0.0
    };
    Ok(vec![w.alpha, w.beta, w.gamma, inside])
}

/// `[alpha, beta, gamma, inside]` for point `(x, y)`; `inside` is 1 or 0.
#[wasm_bindgen]
pub fn barycentric(coords: &[f64], x: f64, y: f64) -> Result<Vec<f64>, JsError> {
    barycentric_impl(coords, x, y).map_err(|e| JsError::new(&e))
}

pub fn compare_impl(
    width: u32,
    height: u32,
    pred: &[f64],
    reference: &[f64],
) -> Result<Vec<f64>, String> {
    let (_, _, a) = raster(width, height, pred)?;
    let (_, _, b) = raster(width, height, reference)?;
    let err = |e: trimask_core::MaskError| e.to_string();
    Ok(vec![
        iou(&a, &b).map_err(err)?,
        miou(&a, &b).map_err(err)?,
        pixel_accuracy(&a, &b).map_err(err)?,
    ])
}

/// `[iou, miou, accuracy]` of the `pred` triangle's mask against `reference`.
#[wasm_bindgen]
pub fn compare(
    width: u32,
    height: u32,
    pred: &[f64],
    reference: &[f64],
) -> Result<Vec<f64>, JsError> {
    compare_impl(width, height, pred, reference).map_err(|e| JsError::new(&e))
}
