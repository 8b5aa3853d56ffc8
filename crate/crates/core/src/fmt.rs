//! Number formatting for the text outputs.

use serde::Serializer;
use serde_json::value::RawValue;

/// Formats `x` like C's `%.17g`: 17 significant digits, trailing zeros dropped.
///
/// Seventeen digits make every finite `f64` round-trip through text.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
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

/// Fixed six-decimal coordinates for SVG output.
pub fn svg6(x: f64) -> String {
    let s = format!("{:.6}", x);
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Serializes an `f64` as a raw JSON number with 17 significant digits.
pub fn serialize_g17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    json_number(*x).serialize_into(s)
}

pub fn serialize_g17_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_g17(v, s),
        None => s.serialize_none(),
    }
}

pub fn serialize_g17_seq<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&json_number(*x))?;
    }
    seq.end()
}

pub fn serialize_g17_pairs<S: Serializer>(xs: &[[f64; 2]], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for p in xs {
        seq.serialize_element(&[json_number(p[0]), json_number(p[1])])?;
    }
    seq.end()
}

/// JSON has no NaN/inf; those become `null`.
fn json_number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { g17(x) } else { "null".into() };
    RawValue::from_string(text).expect("formatted number is valid JSON")
}

trait SerializeInto {
    fn serialize_into<S: Serializer>(self, s: S) -> Result<S::Ok, S::Error>;
}

impl SerializeInto for Box<RawValue> {
    fn serialize_into<S: Serializer>(self, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g17() {
        assert_eq!(g17(2.0), "2");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(1.5), "1.5");
        assert_eq!(g17(-0.25), "-0.25");
        assert_eq!(g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(123456.75), "123456.75");
        assert_eq!(g17(8.0 / 13.0), "0.61538461538461542");
    }

    #[test]
    fn round_trips() {
        for &x in &[0.1, 1.0 / 3.0, 8.0 / 13.0, 1e-300, 6.02214076e23, -2.5e-5] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn svg_six_decimals() {
        assert_eq!(svg6(1.0 / 3.0), "0.333333");
        assert_eq!(svg6(-1e-9), "0.000000");
    }
}
