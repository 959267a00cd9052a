use font8x8::legacy::BASIC_LEGACY;

pub const GLYPH_SIZE: u32 = 8;

/// Rows of an 8x8 glyph, least significant bit leftmost.
pub fn glyph(ch: char) -> [u8; 8] {
    let code = ch as usize;
    if code < 128 {
        BASIC_LEGACY[code]
    } else {
        BASIC_LEGACY[b'?' as usize]
    }
}

/// Width in pixels of `text` drawn at `scale`.
pub fn text_width(text: &str, scale: u32) -> u32 {
    text.chars().count() as u32 * GLYPH_SIZE * scale.max(1)
}
