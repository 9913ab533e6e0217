//! Plain-text snapshot format for scalar fields.
//!
//! Line 1: `n_x n_y x_min x_max y_min y_max time`; then `n_y` lines of `n_x`
//! space-separated values, row-major, full precision scientific notation
//! (17 significant digits, enough for an exact f64 round trip).

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::grid::{Grid2D, ScalarField};

pub fn write_snapshot(w: &mut impl Write, field: &ScalarField, time: f64) -> std::io::Result<()> {
    let g = field.grid();
    writeln!(
        w,
        "{} {} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
        g.nx, g.ny, g.x_min, g.x_max, g.y_min, g.y_max, time
    )?;
    let mut line = String::with_capacity(g.nx * 24);
    for j in 0..g.ny {
        line.clear();
        for (i, v) in field.row(j).iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&format!("{v:.16e}"));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Parse a snapshot back into a field and its time stamp.
pub fn read_snapshot(r: impl BufRead) -> Result<(ScalarField, f64)> {
    let bad = |msg: &str| Error::InvalidConfig(format!("snapshot: {msg}"));
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad("missing header"))?
        .map_err(|e| bad(&e.to_string()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 7 {
        return Err(bad("header must hold `nx ny x_min x_max y_min y_max time`"));
    }
    let nx: usize = parts[0].parse().map_err(|_| bad("bad nx"))?;
    let ny: usize = parts[1].parse().map_err(|_| bad("bad ny"))?;
    let nums: Vec<f64> = parts[2..]
        .iter()
        .map(|s| s.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad("bad header float"))?;
    let grid = Grid2D::new(nums[0], nums[1], nums[2], nums[3], nx, ny)?;
    let time = nums[4];

    let mut values = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let line = lines
            .next()
            .ok_or_else(|| bad(&format!("missing row {j}")))?
            .map_err(|e| bad(&e.to_string()))?;
        let before = values.len();
        for tok in line.split_whitespace() {
            values.push(
                tok.parse::<f64>()
                    .map_err(|_| bad(&format!("bad value in row {j}")))?,
            );
        }
        if values.len() - before != nx {
            return Err(bad(&format!("row {j} holds {} values, want {nx}", values.len() - before)));
        }
    }
    Ok((ScalarField::from_values(grid, values), time))
}
