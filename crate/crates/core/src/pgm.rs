//! Portable graymap reader/writer (ASCII P2, binary P5, 8-bit).

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::ImageBuffer;

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    /// Next whitespace-delimited token, skipping `#` comments to end of line.
    fn token(&mut self) -> Option<&'a [u8]> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        if self.pos >= self.bytes.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        Some(&self.bytes[start..self.pos])
    }

    fn uint(&mut self, what: &str) -> Result<u32> {
        let tok = self
            .token()
            .ok_or_else(|| Error::MalformedHeader(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("invalid {what}")))
    }
}

/// Load a P2/P5 graymap and normalize intensities by its maxval.
pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    parse_pgm(&bytes)
}

pub(crate) fn parse_pgm(bytes: &[u8]) -> Result<ImageBuffer> {
    let mut cur = HeaderCursor::new(bytes);
    let magic = cur
        .token()
        .ok_or_else(|| Error::MalformedHeader("empty file".into()))?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        _ => {
            return Err(Error::MalformedHeader(format!(
                "bad magic {:?}",
                String::from_utf8_lossy(magic)
            )))
        }
    };
    let width = cur.uint("width")? as usize;
    let height = cur.uint("height")? as usize;
    let maxval = cur.uint("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader("zero dimension".into()));
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    let n = width * height;
    let scale = 1.0 / maxval as f64;

    let data: Vec<f64> = if binary {
        // Exactly one whitespace byte separates the maxval from the raster.
        let start = cur.pos + 1;
        if start + n > bytes.len() {
            return Err(Error::MalformedRaster(format!(
                "expected {} raster bytes, found {}",
                n,
                bytes.len().saturating_sub(start)
            )));
        }
        bytes[start..start + n]
            .iter()
            .map(|&b| b as f64 * scale)
            .collect()
    } else {
        let mut vals = Vec::with_capacity(n);
        for i in 0..n {
            let tok = cur
                .token()
                .ok_or_else(|| Error::MalformedRaster(format!("expected {n} samples, found {i}")))?;
            let v = std::str::from_utf8(tok)
                .ok()
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or_else(|| Error::MalformedRaster(format!("invalid sample {i}")))?;
            if v > maxval {
                return Err(Error::MalformedRaster(format!(
                    "sample {v} exceeds maxval {maxval}"
                )));
            }
            vals.push(v as f64 * scale);
        }
        vals
    };
    ImageBuffer::from_vec(width, height, data)
}

/// Write binary P5, maxval 255, pixel = round(clamp(v, 0, 1) * 255).
pub fn save_image(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_p5(img);
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn encode_p5(img: &ImageBuffer) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(
        img.data()
            .iter()
            .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8),
    );
    out
}
