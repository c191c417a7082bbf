//! Closed-form Lipschitz constants for the distance-ratio metric under disk
//! automorphisms. Every constant depends on `|a|` only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Factor by which any Möbius map can distort `j` (Gehring–Osgood).
pub const GEHRING_OSGOOD_CONSTANT: f64 = 2.0;

fn check_modulus(abs_a: f64, name: &str) -> Result<()> {
    if (0.0..1.0).contains(&abs_a) {
        Ok(())
    } else {
        Err(Error::argument(format!("{name} = {abs_a} must lie in [0, 1)")))
    }
}

/// Sharp constant for `h : B\{0} → B\{a}`:
/// `C(a) = 1 + log((2+|a|)/(2-|a|)) / log 3`.
pub fn main_constant(abs_a: f64) -> Result<f64> {
    check_modulus(abs_a, "|a|")?;
    // (2+s)/(2-s) = 1 + 2s/(2-s)
    Ok(1.0 + (2.0 * abs_a / (2.0 - abs_a)).ln_1p() / 3f64.ln())
}

/// `2 / (2 - |a|)`, the constant obtained in the image-puncture branches.
pub fn case12_constant(abs_a: f64) -> Result<f64> {
    check_modulus(abs_a, "|a|")?;
    Ok(2.0 / (2.0 - abs_a))
}

/// `1 + |f(0)|`, sharp for automorphisms of the whole disk.
pub fn ball_constant(abs_f0: f64) -> Result<f64> {
    check_modulus(abs_f0, "|f(0)|")?;
    Ok(1.0 + abs_f0)
}

/// `2 / (1 + q)`, the constant granted by the `q`-condition on `(X, Y)`.
pub fn s1_constant(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::argument(format!("q = {q} must lie in [0, 1]")));
    }
    Ok(2.0 / (1.0 + q))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsTable {
    pub abs_a: f64,
    pub c_main: f64,
    pub c_case12: f64,
    pub c_ball: f64,
    pub c_go: f64,
}

/// All constants for one `|a|`, checked against the ordering
/// `c_case12 ≤ c_main ≤ c_ball < c_go`.
pub fn constants_table(abs_a: f64) -> Result<ConstantsTable> {
    let table = ConstantsTable {
        abs_a,
        c_main: main_constant(abs_a)?,
        c_case12: case12_constant(abs_a)?,
        c_ball: ball_constant(abs_a)?,
        c_go: GEHRING_OSGOOD_CONSTANT,
    };
    let ordered = table.c_case12 <= table.c_main
        && table.c_main <= table.c_ball
        && table.c_ball < table.c_go;
    if !ordered {
        return Err(Error::Invariant(format!(
            "constant ordering broken at |a| = {abs_a}: {table:?}"
        )));
    }
    Ok(table)
}
