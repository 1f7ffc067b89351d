//! Binary 16-bit PGM (`P5`, maxval 65535, big-endian samples, 1 mm units).
//!
//! Depths are rounded to the nearest millimeter on save. Files with a maxval
//! below 256 (one byte per sample) are accepted on load.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use super::DepthImage;
use crate::error::{Error, Result};

const MAXVAL: u32 = 65535;

pub fn write_depth_image<W: Write>(img: &DepthImage, mut w: W) -> Result<()> {
    let mut buf = Vec::with_capacity(20 + img.data().len() * 2);
    write!(buf, "P5\n{} {}\n{}\n", img.width(), img.height(), MAXVAL).expect("write to Vec");
    for (i, &d) in img.data().iter().enumerate() {
        let mm = d.round();
        if mm > MAXVAL as f64 {
            return Err(Error::format(
                "depth image",
                format!(
                    "depth {d} mm at pixel ({}, {}) exceeds {MAXVAL}",
                    i % img.width(),
                    i / img.width()
                ),
            ));
        }
        buf.extend_from_slice(&(mm as u16).to_be_bytes());
    }
    w.write_all(&buf)
        .map_err(|e| Error::format("depth image", e.to_string()))
}

pub fn save_depth_image(img: &DepthImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_depth_image(img, &mut buf)?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn load_depth_image(path: impl AsRef<Path>) -> Result<DepthImage> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_depth_image(file)
}

pub fn read_depth_image<R: Read>(mut r: R) -> Result<DepthImage> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)
        .map_err(|e| Error::format("depth image", e.to_string()))?;
    parse(&bytes)
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::format("depth image header", format!("bad {what}")))
    }
}

fn parse(bytes: &[u8]) -> Result<DepthImage> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(Error::format("depth image header", "missing P5 magic"));
    }
    let mut h = Header { bytes, pos: 2 };
    let width = h.number("width")? as usize;
    let height = h.number("height")? as usize;
    let maxval = h.number("maxval")?;
    if maxval == 0 || maxval > MAXVAL {
        return Err(Error::format(
            "depth image header",
            format!("maxval {maxval} outside 1..=65535"),
        ));
    }
    // exactly one whitespace byte separates the header from the raster
    if !h.bytes.get(h.pos).is_some_and(|b| b.is_ascii_whitespace()) {
        return Err(Error::format("depth image header", "no separator after maxval"));
    }
    let raster = &bytes[h.pos + 1..];
    let sample_bytes = if maxval < 256 { 1 } else { 2 };
    let n = width * height;
    if raster.len() < n * sample_bytes {
        return Err(Error::format(
            "depth image",
            format!(
                "truncated raster: {} bytes, expected {}",
                raster.len(),
                n * sample_bytes
            ),
        ));
    }
    let data: Vec<f64> = if sample_bytes == 1 {
        raster[..n].iter().map(|&b| b as f64).collect()
    } else {
        raster[..2 * n]
            .chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]) as f64)
            .collect()
    };
    if let Some(bad) = data.iter().find(|&&d| d > maxval as f64) {
        return Err(Error::format(
            "depth image",
            format!("sample {bad} exceeds maxval {maxval}"),
        ));
    }
    DepthImage::new(width, height, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn byte_exact_fixture() {
        let mut file = b"P5\n2 2\n65535\n".to_vec();
        for v in [0u16, 500, 1000, 65535] {
            file.extend_from_slice(&v.to_be_bytes());
        }
        let img = read_depth_image(&file[..]).unwrap();
        assert_eq!(img.width(), 2);
        assert_eq!(img.data(), &[0.0, 500.0, 1000.0, 65535.0]);

        let mut out = Vec::new();
        write_depth_image(&img, &mut out).unwrap();
        assert_eq!(out, file);
    }

    #[test]
    fn header_comments_and_8bit() {
        let file = b"P5 # depth\n# another\n3 1\n255\n\x01\x02\xff".to_vec();
        let img = read_depth_image(&file[..]).unwrap();
        assert_eq!(img.data(), &[1.0, 2.0, 255.0]);
    }

    #[test]
    fn format_errors() {
        assert!(matches!(read_depth_image(&b"P2\n1 1\n65535\n\0\0"[..]), Err(Error::Format { .. })));
        assert!(matches!(read_depth_image(&b""[..]), Err(Error::Format { .. })));
        assert!(matches!(read_depth_image(&b"P5\n2 2\n65535\n\0\0\0"[..]), Err(Error::Format { .. })));
        assert!(matches!(read_depth_image(&b"P5\nx 2\n65535\n"[..]), Err(Error::Format { .. })));
        assert!(matches!(read_depth_image(&b"P5\n1 1\n70000\n\0\0"[..]), Err(Error::Format { .. })));
        assert!(matches!(read_depth_image(&b"P5\n1 1\n1000\n\xff\xff"[..]), Err(Error::Format { .. })));
    }

    #[test]
    fn save_rejects_out_of_range() {
        let img = DepthImage::new(1, 1, vec![65535.6]).unwrap();
        assert!(write_depth_image(&img, Vec::new()).is_err());
        let ok = DepthImage::new(1, 1, vec![65535.4]).unwrap();
        assert!(write_depth_image(&ok, Vec::new()).is_ok());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.pgm");
        let img = DepthImage::new(3, 2, vec![0.0, 1.0, 2.0, 500.0, 65534.0, 65535.0]).unwrap();
        save_depth_image(&img, &path).unwrap();
        assert_eq!(load_depth_image(&path).unwrap(), img);
        assert!(matches!(load_depth_image(dir.path().join("missing.pgm")), Err(Error::Io { .. })));
    }

    proptest! {
        #[test]
        fn integer_depths_round_trip(
            (w, h, data) in (1usize..8, 1usize..8).prop_flat_map(|(w, h)| {
                (Just(w), Just(h), proptest::collection::vec(0u16..=u16::MAX, w * h))
            })
        ) {
            let img = DepthImage::new(w, h, data.into_iter().map(f64::from).collect()).unwrap();
            let mut buf = Vec::new();
            write_depth_image(&img, &mut buf).unwrap();
            prop_assert_eq!(read_depth_image(&buf[..]).unwrap(), img);
        }
    }
}
