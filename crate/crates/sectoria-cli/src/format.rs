//! Deterministic numeric formatting: every number is printed with 17
//! significant digits, scientific notation, '.' decimal separator — enough
//! to round-trip any f64 bit pattern, independent of locale.

use num_complex::Complex64;

pub fn g17(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    format!("{x:.16e}")
}

pub fn complex_pair(z: Complex64) -> String {
    format!("{},{}", g17(z.re), g17(z.im))
}
