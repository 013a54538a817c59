//! Line-oriented text formats.
//!
//! Points are written as comma-joined coordinates (`1,0,0`); readers also
//! accept a point's label. Blank lines and `#` comments are skipped, and
//! every parse error carries its 1-based line number.

mod image;
mod obstruction;
mod script;
mod witness;

pub use image::{read_image, write_image};
pub use obstruction::{read_obstruction, write_obstruction};
pub use script::{read_map, read_script, write_map, write_script, ScriptFile};
pub use witness::{
    read_cat_witness, read_group, read_tc_witness, read_tcn_witness, write_cat_witness,
    write_group, write_tc_witness, write_tcn_witness,
};

use crate::error::{parse_err, Result};
use crate::grid::DigitalImage;

/// Numbered lines with comments removed.
pub(crate) fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap().trim();
            (!l.is_empty()).then_some((i + 1, l))
        })
        .collect()
}

pub(crate) fn point_token(x: &DigitalImage, tok: &str, line: usize) -> Result<usize> {
    let numeric = tok
        .chars()
        .all(|c| c.is_ascii_digit() || c == ',' || c == '-');
    if numeric {
        let coords: std::result::Result<Vec<i64>, _> = tok.split(',').map(str::parse).collect();
        let coords = coords.map_err(|_| parse_err(line, format!("bad point `{tok}`")))?;
        if coords.len() != x.dim() {
            return Err(parse_err(
                line,
                format!(
                    "point `{tok}` has {} coordinates, expected {}",
                    coords.len(),
                    x.dim()
                ),
            ));
        }
        return x
            .index_of(&crate::grid::Point::new(coords))
            .ok_or_else(|| parse_err(line, format!("point `{tok}` is not in the image")));
    }
    x.find_label(tok)
        .ok_or_else(|| parse_err(line, format!("unknown point `{tok}`")))
}

pub(crate) fn point_text(x: &DigitalImage, i: usize) -> String {
    x.point(i).join(",")
}

pub(crate) fn keyword_usize(line: usize, rest: &str, what: &str) -> Result<usize> {
    rest.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{}`", rest.trim())))
}
