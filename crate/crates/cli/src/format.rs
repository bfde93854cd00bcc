//! Locale-free number formatting for CSV output.

/// Formats `x` with `digits` significant digits. Values with magnitude in
/// `[1e-4, 1e6)` use fixed notation, everything else scientific notation.
/// Trailing zeros are dropped.
pub fn number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let mag = x.abs();
    if (1e-4..1e6).contains(&mag) {
        let exponent = mag.log10().floor() as i32;
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Rounding can carry into a new leading digit, e.g. 999999.99 -> 1000000.
        if s.trim_start_matches('-').split('.').next().map_or(0, str::len) > 6 {
            return scientific(x, digits);
        }
        trim_fraction(&s)
    } else {
        scientific(x, digits)
    }
}

fn scientific(x: f64, digits: usize) -> String {
    let s = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = s.split_once('e').expect("exponent marker");
    format!("{}e{exponent}", trim_fraction(mantissa))
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn optional(x: Option<f64>, digits: usize) -> String {
    x.map(|v| number(v, digits)).unwrap_or_default()
}
