//! Text output: 15 significant digits, CSV and JSON tables.

use confinv_core::ScalarField;
use serde_json::{json, Value};

/// `%.15g`.
pub fn g15(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Comma-joined row.
pub fn row(values: &[f64]) -> String {
    values.iter().map(|&v| g15(v)).collect::<Vec<_>>().join(",")
}

pub fn field_csv(field: &ScalarField) -> String {
    let mut out = String::from("x,y,inside,value\n");
    for (x, y, inside, value) in field.rows() {
        out.push_str(&format!("{},{},{},{}\n", g15(x), g15(y), inside as u8, g15(value)));
    }
    out
}

/// Masked values come out as `null`.
pub fn field_json(field: &ScalarField) -> Value {
    let rows: Vec<Value> = field
        .rows()
        .map(|(x, y, inside, value)| json!({"x": x, "y": y, "inside": inside, "value": finite(value)}))
        .collect();
    json!({"nx": field.nx(), "ny": field.ny(), "rows": rows})
}

pub fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (9.66456147776192, "9.66456147776192"),
            (0.25, "0.25"),
            (1.0, "1"),
            (-3.5, "-3.5"),
            (1e-7, "1e-07"),
            (1.5e-7, "1.5e-07"),
            (1.23456789012345e20, "1.23456789012345e+20"),
            (123456.0, "123456"),
            (0.0001, "0.0001"),
            (std::f64::consts::PI, "3.14159265358979"),
            (2f64.sqrt(), "1.4142135623731"),
            (1e15, "1e+15"),
            (999999999999999.0, "999999999999999"),
            (9.999999999999999e14, "1e+15"),
        ];
        for (x, want) in cases {
            assert_eq!(g15(x), want, "{x:e}");
        }
        assert_eq!(g15(f64::NAN), "nan");
        assert_eq!(g15(0.0), "0");
    }

    #[test]
    fn rows_join_with_commas() {
        assert_eq!(row(&[1.0, 0.5, f64::NAN]), "1,0.5,nan");
    }
}
