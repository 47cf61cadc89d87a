//! Number formatting and the JSON run summary shared by every subcommand.

use serde::Serialize;
use serde_json::Value;

/// Formats `x` like C's `%.12g`: 12 significant digits, trailing zeros removed, exponent
/// notation outside `1e-4 <= |x| < 1e12`.
pub fn fmt_g12(x: f64) -> String {
    fmt_g(x, 12)
}

pub fn fmt_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The `{config, results, failures}` object written beside every run's data.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub config: Value,
    pub results: Value,
    pub failures: Vec<Value>,
}

impl RunSummary {
    pub fn new(config: impl Serialize, results: impl Serialize) -> Self {
        RunSummary {
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            results: serde_json::to_value(results).unwrap_or(Value::Null),
            failures: Vec::new(),
        }
    }

    pub fn with_failures<T: Serialize>(mut self, failures: &[T]) -> Self {
        self.failures = failures.iter().filter_map(|f| serde_json::to_value(f).ok()).collect();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_c_printf() {
        // reference strings produced by printf("%.12g")
        let cases = [
            (0.2, "0.2"),
            (1.0 / 3.0, "0.333333333333"),
            (1.0 - 1.0 / 5.0, "0.8"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-2.5, "-2.5"),
            (100.0, "100"),
            (6.02214076e23, "6.02214076e+23"),
            (9.9999999999999e-5, "0.0001"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g12(x), want, "{x}");
        }
        assert_eq!(fmt_g12(f64::NAN), "nan");
        assert_eq!(fmt_g12(0.0), "0");
    }
}
