//! Bilevel images and the coordinate conventions shared by every stage.
//!
//! Pixels are stored row-major with the top row of the file first. Two
//! coordinate systems address them:
//!
//! * [`PixelCoord`] is the raster position `(column, row)`, row 0 at the top.
//! * [`GridCell`] is the position in the y-up frame used by all geometry:
//!   raster row `r` is `y = height - 1 - r`, and the cell `(x, y)` covers the
//!   unit square with corners `A=(x, y)`, `B=(x+1, y)`, `C=(x+1, y+1)`,
//!   `D=(x, y+1)`.
//!
//! Everything outside the image is black.

use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

/// Raster position of a pixel: `x` is the column, `y` the row (0 = top).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PixelCoord {
    pub x: u32,
    pub y: u32,
}

impl PixelCoord {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

/// Position of a pixel in the y-up frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCell {
    pub x: u32,
    pub y: u32,
}

impl GridCell {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

/// A width × height grid of black/white pixels. `true` is white (object).
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: u32,
    height: u32,
    pixels: Vec<bool>,
}

impl fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryImage {}x{}", self.width, self.height)?;
        for row in self.rows() {
            let line: String = row.iter().map(|&w| if w { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

impl BinaryImage {
    /// Builds an image from row-major pixels, top row first.
    pub fn new(width: u32, height: u32, pixels: Vec<bool>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension { width, height });
        }
        let expected = width as usize * height as usize;
        if pixels.len() != expected {
            return Err(ImageError::DimensionMismatch {
                expected,
                found: pixels.len(),
                at: Location::Unknown,
            });
        }
        Ok(Self { width, height, pixels })
    }

    /// All-black image.
    pub fn black(width: u32, height: u32) -> Result<Self, ImageError> {
        Self::new(width, height, vec![false; width as usize * height as usize])
    }

    /// Builds an image from a closure over raster coordinates.
    pub fn from_fn(
        width: u32,
        height: u32,
        mut f: impl FnMut(PixelCoord) -> bool,
    ) -> Result<Self, ImageError> {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(PixelCoord::new(x, y)));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Row-major pixels, top row first.
    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    /// Raster rows, top first.
    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[bool]> + '_ {
        self.pixels.chunks_exact(self.width as usize)
    }

    /// Raster row `r` (0 = top).
    pub fn row(&self, r: u32) -> &[bool] {
        let w = self.width as usize;
        let start = r as usize * w;
        &self.pixels[start..start + w]
    }

    pub fn white_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    pub fn contains(&self, p: PixelCoord) -> bool {
        p.x < self.width && p.y < self.height
    }

    pub fn pixel_at(&self, p: PixelCoord) -> Result<bool, OutOfBounds> {
        if !self.contains(p) {
            return Err(OutOfBounds {
                coord: p,
                width: self.width,
                height: self.height,
            });
        }
        Ok(self.pixels[p.y as usize * self.width as usize + p.x as usize])
    }

    /// Like [`pixel_at`](Self::pixel_at), but the surroundings of the image
    /// read as black.
    pub fn pixel_at_or_black(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= i64::from(self.width) || y >= i64::from(self.height) {
            return false;
        }
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    /// Converts a raster coordinate to the y-up frame.
    pub fn to_cell(&self, p: PixelCoord) -> GridCell {
        GridCell::new(p.x, self.height - 1 - p.y)
    }

    /// Converts a y-up cell back to raster coordinates.
    pub fn to_pixel(&self, c: GridCell) -> PixelCoord {
        PixelCoord::new(c.x, self.height - 1 - c.y)
    }

    /// Value of the y-up cell `(x, y)`; black outside the image.
    pub fn cell_or_black(&self, x: i64, y: i64) -> bool {
        self.pixel_at_or_black(x, i64::from(self.height) - 1 - y)
    }

    /// Swaps black and white.
    pub fn inverted(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&p| !p).collect(),
        }
    }

    /// Serializes to the grid text format: one line of `0`/`1` per row,
    /// top row first, `1` = white.
    pub fn to_grid_text(&self) -> String {
        let mut out = String::with_capacity(self.pixels.len() + self.height as usize);
        for row in self.rows() {
            out.extend(row.iter().map(|&w| if w { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    /// Serializes to plain PBM (`P1`). Black pixels are written as `1`.
    pub fn to_pbm_ascii(&self) -> String {
        let mut out = format!("P1\n{} {}\n", self.width, self.height);
        for row in self.rows() {
            let line: Vec<&str> = row.iter().map(|&w| if w { "0" } else { "1" }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Serializes to raw PBM (`P4`). Black pixels are set bits, MSB first.
    pub fn to_pbm_binary(&self) -> Vec<u8> {
        let mut out = format!("P4\n{} {}\n", self.width, self.height).into_bytes();
        for row in self.rows() {
            for chunk in row.chunks(8) {
                let mut byte = 0u8;
                for (i, &white) in chunk.iter().enumerate() {
                    if !white {
                        byte |= 0x80 >> i;
                    }
                }
                out.push(byte);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("pixel ({}, {}) is outside the {width}x{height} image", coord.x, coord.y)]
pub struct OutOfBounds {
    pub coord: PixelCoord,
    pub width: u32,
    pub height: u32,
}

/// Input file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    /// `P1` plain PBM.
    PbmAscii,
    /// `P4` raw PBM.
    PbmBinary,
    /// Whitespace-separated rows of `0`/`1`, top row first, `1` = white.
    GridText,
}

/// Where in the input a problem was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Byte(usize),
    Line { line: usize, column: usize },
    Unknown,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Byte(offset) => write!(f, "byte {offset}"),
            Location::Line { line, column } => write!(f, "line {line}, column {column}"),
            Location::Unknown => write!(f, "unknown position"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("cannot read image: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed header at {at}: {detail}")]
    MalformedHeader { at: Location, detail: String },
    #[error("dimension mismatch at {at}: expected {expected} pixels, found {found}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        at: Location,
    },
    #[error("illegal character {found:?} at {at}")]
    IllegalCharacter { found: char, at: Location },
    #[error("image has zero dimension ({width}x{height})")]
    ZeroDimension { width: u32, height: u32 },
}

/// Loads `path` in the given format. PBM `1` bits load as black.
pub fn load_image(path: impl AsRef<Path>, format: ImageFormat) -> Result<BinaryImage, ImageError> {
    let bytes = fs::read(path)?;
    match format {
        ImageFormat::PbmAscii => parse_pbm_ascii(&bytes),
        ImageFormat::PbmBinary => parse_pbm_binary(&bytes),
        ImageFormat::GridText => parse_grid_text(&bytes),
    }
}

/// Parses either PBM flavour, dispatching on the magic number.
pub fn parse_pbm(bytes: &[u8]) -> Result<BinaryImage, ImageError> {
    match bytes.get(..2) {
        Some(b"P4") => parse_pbm_binary(bytes),
        _ => parse_pbm_ascii(bytes),
    }
}

pub fn parse_grid_text(bytes: &[u8]) -> Result<BinaryImage, ImageError> {
    let locate = |offset: usize| line_location(bytes, offset);
    let mut rows: Vec<(usize, Vec<bool>)> = Vec::new();
    let mut current: Option<(usize, Vec<bool>)> = None;
    for (offset, &b) in bytes.iter().enumerate() {
        match b {
            b'0' | b'1' => current
                .get_or_insert_with(|| (offset, Vec::new()))
                .1
                .push(b == b'1'),
            _ if b.is_ascii_whitespace() => {
                if let Some(row) = current.take() {
                    rows.push(row);
                }
            }
            _ => {
                return Err(ImageError::IllegalCharacter {
                    found: char_at(bytes, offset),
                    at: locate(offset),
                })
            }
        }
    }
    rows.extend(current);

    let Some((_, first)) = rows.first() else {
        return Err(ImageError::ZeroDimension { width: 0, height: 0 });
    };
    let width = first.len();
    let mut pixels = Vec::with_capacity(width * rows.len());
    for (offset, row) in &rows {
        if row.len() != width {
            return Err(ImageError::DimensionMismatch {
                expected: width,
                found: row.len(),
                at: locate(*offset),
            });
        }
        pixels.extend_from_slice(row);
    }
    let width = u32::try_from(width).map_err(|_| too_large(locate(0)))?;
    let height = u32::try_from(rows.len()).map_err(|_| too_large(locate(0)))?;
    BinaryImage::new(width, height, pixels)
}

pub fn parse_pbm_ascii(bytes: &[u8]) -> Result<BinaryImage, ImageError> {
    let mut cursor = HeaderCursor::new(bytes);
    cursor.expect_magic(b"P1")?;
    let (width, height) = cursor.dimensions()?;
    let expected = width as usize * height as usize;

    let mut pixels = Vec::with_capacity(expected);
    let mut pos = cursor.pos;
    while pos < bytes.len() {
        match bytes[pos] {
            b'#' => {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            b if b.is_ascii_whitespace() => {}
            b @ (b'0' | b'1') => {
                if pixels.len() == expected {
                    return Err(ImageError::DimensionMismatch {
                        expected,
                        found: expected + 1,
                        at: Location::Byte(pos),
                    });
                }
                // PBM: 1 = black
                pixels.push(b == b'0');
            }
            _ => {
                return Err(ImageError::IllegalCharacter {
                    found: char_at(bytes, pos),
                    at: Location::Byte(pos),
                })
            }
        }
        pos += 1;
    }
    if pixels.len() != expected {
        return Err(ImageError::DimensionMismatch {
            expected,
            found: pixels.len(),
            at: Location::Byte(bytes.len()),
        });
    }
    BinaryImage::new(width, height, pixels)
}

pub fn parse_pbm_binary(bytes: &[u8]) -> Result<BinaryImage, ImageError> {
    let mut cursor = HeaderCursor::new(bytes);
    cursor.expect_magic(b"P4")?;
    let (width, height) = cursor.dimensions()?;
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(cursor.pos) {
        Some(b) if b.is_ascii_whitespace() => cursor.pos += 1,
        Some(_) => {
            return Err(ImageError::MalformedHeader {
                at: Location::Byte(cursor.pos),
                detail: "expected whitespace before raster data".into(),
            })
        }
        None => {}
    }
    let stride = (width as usize).div_ceil(8);
    let data = &bytes[cursor.pos..];
    let needed = stride * height as usize;
    if data.len() < needed {
        return Err(ImageError::DimensionMismatch {
            expected: needed * 8,
            found: data.len() * 8,
            at: Location::Byte(bytes.len()),
        });
    }
    let mut pixels = Vec::with_capacity(width as usize * height as usize);
    for row in data[..needed].chunks_exact(stride) {
        pixels.extend((0..width as usize).map(|x| row[x / 8] & (0x80 >> (x % 8)) == 0));
    }
    BinaryImage::new(width, height, pixels)
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    fn expect_magic(&mut self, magic: &[u8]) -> Result<(), ImageError> {
        if !self.bytes.starts_with(magic) {
            return Err(ImageError::MalformedHeader {
                at: Location::Byte(0),
                detail: format!("expected magic number {}", String::from_utf8_lossy(magic)),
            });
        }
        self.pos = magic.len();
        Ok(())
    }

    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, ImageError> {
        let before = self.pos;
        self.skip_separators();
        if self.pos == before {
            return Err(ImageError::MalformedHeader {
                at: Location::Byte(self.pos),
                detail: format!("expected whitespace before {what}"),
            });
        }
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImageError::MalformedHeader {
                at: Location::Byte(start),
                detail: format!("expected {what}"),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ImageError::MalformedHeader {
                at: Location::Byte(start),
                detail: format!("{what} does not fit in 32 bits"),
            })
    }

    fn dimensions(&mut self) -> Result<(u32, u32), ImageError> {
        let width = self.number("width")?;
        let height = self.number("height")?;
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension { width, height });
        }
        Ok((width, height))
    }
}

fn char_at(bytes: &[u8], offset: usize) -> char {
    std::str::from_utf8(&bytes[offset..])
        .ok()
        .and_then(|s| s.chars().next())
        .unwrap_or(bytes[offset] as char)
}

fn line_location(bytes: &[u8], offset: usize) -> Location {
    let before = &bytes[..offset];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let column = offset - before.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
    Location::Line { line, column }
}

fn too_large(at: Location) -> ImageError {
    ImageError::MalformedHeader {
        at,
        detail: "image dimensions do not fit in 32 bits".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(s: &str) -> BinaryImage {
        parse_grid_text(s.as_bytes()).unwrap()
    }

    #[test]
    fn smallest_grid() {
        let img = grid("1");
        assert_eq!((img.width(), img.height()), (1, 1));
        assert_eq!(img.pixels(), &[true]);
    }

    #[test]
    fn diagonal_grid() {
        let img = grid("10\n01\n");
        assert_eq!(img.pixels(), &[true, false, false, true]);
        assert_eq!(img.pixel_at(PixelCoord::new(1, 0)), Ok(false));
        assert_eq!(img.pixel_at(PixelCoord::new(0, 0)), Ok(true));
    }

    #[test]
    fn pixel_queries() {
        let img = grid("1");
        assert_eq!(img.pixel_at(PixelCoord::new(0, 0)), Ok(true));
        assert!(!img.pixel_at_or_black(1, 0));
        assert!(!img.pixel_at_or_black(-1, 0));
        assert!(img.pixel_at(PixelCoord::new(1, 0)).is_err());
    }

    #[test]
    fn cell_frame_flips_rows() {
        // top row "10", bottom row "01"
        let img = grid("10 01");
        assert_eq!(img.to_cell(PixelCoord::new(0, 0)), GridCell::new(0, 1));
        assert!(img.cell_or_black(0, 1));
        assert!(img.cell_or_black(1, 0));
        assert!(!img.cell_or_black(0, 0));
        assert!(!img.cell_or_black(1, 1));
        assert!(!img.cell_or_black(0, 2));
    }

    #[test]
    fn grid_errors_are_located() {
        match parse_grid_text(b"10\n1x\n") {
            Err(ImageError::IllegalCharacter { found: 'x', at }) => {
                assert_eq!(at, Location::Line { line: 2, column: 2 })
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_grid_text(b"10\n1\n") {
            Err(ImageError::DimensionMismatch { expected: 2, found: 1, at }) => {
                assert_eq!(at, Location::Line { line: 2, column: 1 })
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_grid_text(b" \n\n"),
            Err(ImageError::ZeroDimension { .. })
        ));
    }

    #[test]
    fn pbm_ascii_defaults_to_one_is_black() {
        let img = parse_pbm_ascii(b"P1 2 1 1 1").unwrap();
        assert_eq!((img.width(), img.height()), (2, 1));
        assert_eq!(img.pixels(), &[false, false]);
        assert_eq!(img.inverted().pixels(), &[true, true]);
    }

    #[test]
    fn pbm_ascii_comments_and_packed_digits() {
        let img = parse_pbm_ascii(b"P1\n# a comment\n3 2\n010\n# mid\n101\n").unwrap();
        assert_eq!(img.pixels(), &[true, false, true, false, true, false]);
    }

    #[test]
    fn pbm_ascii_errors() {
        assert!(matches!(
            parse_pbm_ascii(b"P2 1 1 1"),
            Err(ImageError::MalformedHeader { at: Location::Byte(0), .. })
        ));
        assert!(matches!(
            parse_pbm_ascii(b"P1 x 1 1"),
            Err(ImageError::MalformedHeader { at: Location::Byte(3), .. })
        ));
        assert!(matches!(
            parse_pbm_ascii(b"P1 0 1"),
            Err(ImageError::ZeroDimension { width: 0, height: 1 })
        ));
        assert!(matches!(
            parse_pbm_ascii(b"P1 2 1 1"),
            Err(ImageError::DimensionMismatch { expected: 2, found: 1, .. })
        ));
        assert!(matches!(
            parse_pbm_ascii(b"P1 1 1 1 0"),
            Err(ImageError::DimensionMismatch { at: Location::Byte(9), .. })
        ));
        assert!(matches!(
            parse_pbm_ascii(b"P1 1 1 2"),
            Err(ImageError::IllegalCharacter { found: '2', at: Location::Byte(7) })
        ));
    }

    #[test]
    fn pbm_binary_roundtrip_and_truncation() {
        let img = grid("101010101 000000001 111111111");
        let bytes = img.to_pbm_binary();
        assert_eq!(parse_pbm(&bytes).unwrap(), img);
        let truncated = &bytes[..bytes.len() - 1];
        assert!(matches!(
            parse_pbm_binary(truncated),
            Err(ImageError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pbm_ascii_writer_roundtrip() {
        let img = grid("0110 1001");
        assert_eq!(parse_pbm(img.to_pbm_ascii().as_bytes()).unwrap(), img);
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        assert!(matches!(
            BinaryImage::new(0, 3, vec![]),
            Err(ImageError::ZeroDimension { .. })
        ));
        assert!(matches!(
            BinaryImage::new(2, 2, vec![true; 3]),
            Err(ImageError::DimensionMismatch { expected: 4, found: 3, .. })
        ));
    }
}
