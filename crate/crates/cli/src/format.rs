//! Locale-independent number formatting for printed and CSV output.

/// Twelve decimals below one in magnitude, twelve significant digits above.
/// Negative zero prints as zero; very large magnitudes switch to exponent form.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let s = if x.abs() < 1.0 {
        format!("{x:.12}")
    } else {
        let sci = format!("{x:.11e}");
        let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
        if exp >= 12 {
            sci
        } else {
            format!("{x:.*}", (11 - exp) as usize)
        }
    };
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}
