//! Stable text formatting for emitted tables.

/// Significant digits used in CSV output.
pub const SIGNIFICANT_DIGITS: usize = 12;

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Format like C's `%.12g`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let p = SIGNIFICANT_DIGITS as i32;
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (p - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

/// Optional value as a CSV field: empty when absent.
pub fn format_optional(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(-0.768745), "-0.768745");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(123456789012.0), "123456789012");
        assert_eq!(format_sig(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_sig(1e-5), "1e-05");
        assert_eq!(format_sig(1.5e-4), "0.00015");
        assert_eq!(format_sig(-2.0), "-2");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(9.9999999999999e-1), "1");
    }

    #[test]
    fn optional_fields() {
        assert_eq!(format_optional(None), "");
        assert_eq!(format_optional(Some(0.25)), "0.25");
    }
}
