//! Filesystem helpers: image discovery, header probing and mask output.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use image::RgbImage;

use crate::mask::{encode_png, mask_file_name, BinaryMask};

/// Source image extensions, compared case-insensitively.
pub const IMAGE_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

pub fn is_supported_image(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.iter().any(|x| e.eq_ignore_ascii_case(x)))
}

/// Supported images directly inside `dir`, sorted by file name bytes.
///
/// Subdirectories are not searched.
pub fn list_images(dir: &Path) -> io::Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(io::Error::new(
            io::ErrorKind::NotADirectory,
            format!("{} is not a directory", dir.display()),
        ));
    }
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        let path = entry.path();
        if entry.file_type()?.is_file() && is_supported_image(&path) {
            out.push(path);
        }
    }
    out.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(out)
}

/// Reads only the header of an image to get its size.
pub fn image_dimensions(path: &Path) -> Result<(u32, u32), image::ImageError> {
    image::image_dimensions(path)
}

pub fn load_rgb(path: &Path) -> Result<RgbImage, image::ImageError> {
    Ok(image::open(path)?.into_rgb8())
}

/// Writes `mask` as `<stem>_mask.png` inside `out_dir`, overwriting any
/// previous mask for the same image.
pub fn save_mask(out_dir: &Path, source_name: &str, mask: &BinaryMask) -> io::Result<PathBuf> {
    let path = out_dir.join(mask_file_name(source_name));
    fs::write(&path, encode_png(mask))?;
    Ok(path)
}

/// Creates `dir` if needed and checks that files can be created in it.
pub fn ensure_writable_dir(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let probe = dir.join(".trimask-write-probe");
    fs::write(&probe, b"")?;
    fs::remove_file(probe)
}

pub fn content_type(path: &Path) -> &'static str {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("png") => "image/png",
        Some("jpg" | "jpeg") => "image/jpeg",
        _ => "application/octet-stream",
    }
}
