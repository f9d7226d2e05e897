//! Fixed-precision number rendering shared by the CSV and JSON writers.

/// Significant digits in every printed value.
pub const SIGNIFICANT_DIGITS: usize = 9;

/// Renders `x` with nine significant digits, in the style of C's `%.9g`:
/// plain notation for exponents in `[-5, 9)`, scientific otherwise, trailing
/// zeros removed. Rounding happens once, half-to-even on the exact binary
/// value, so the output is reproducible across platforms. Negative zero
/// prints as `0`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if negative { "-" } else { "" };
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let body = if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        } else {
            let (int, frac) = digits.split_at(exp as usize + 1);
            format!("{int}.{frac}")
        };
        format!("{sign}{}", trim_fraction(&body))
    } else {
        let (lead, rest) = digits.split_at(1);
        let m = trim_fraction(&format!("{lead}.{rest}"));
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{m}e{esign}{:02}", exp.abs())
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}
