use serde_json::value::RawValue;

/// 17 significant digits, `.` separator.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// JSON number with 17 significant digits; non-finite values become strings.
pub fn json_num(x: f64) -> Box<RawValue> {
    let s = if x.is_finite() { num(x) } else { format!("\"{}\"", num(x)) };
    RawValue::from_string(s).expect("valid JSON number")
}
