//! Minimal deterministic JSON and number formatting.
//!
//! Output bytes are part of the CLI contract: floats print with 17
//! significant digits (full round-trip precision), keys keep insertion
//! order, and nothing here depends on hash iteration order. Non-finite
//! values have no JSON number form and are emitted as the strings
//! "inf", "-inf", and "nan".

/// A double rendered with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn f64_json(x: f64) -> String {
    if x.is_finite() {
        fmt_f64(x)
    } else {
        format!("\"{}\"", fmt_f64(x))
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Insertion-ordered JSON object builder.
#[derive(Default)]
pub struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, key: &str, value: f64) -> Self {
        self.fields.push((key.to_string(), f64_json(value)));
        self
    }

    pub fn int(mut self, key: &str, value: usize) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn str(mut self, key: &str, value: &str) -> Self {
        self.fields
            .push((key.to_string(), format!("\"{}\"", escape(value))));
        self
    }

    pub fn num_array(mut self, key: &str, values: &[f64]) -> Self {
        let inner: Vec<String> = values.iter().map(|&v| f64_json(v)).collect();
        self.fields
            .push((key.to_string(), format!("[{}]", inner.join(","))));
        self
    }

    pub fn num_matrix(mut self, key: &str, rows: &[Vec<f64>]) -> Self {
        let rendered: Vec<String> = rows
            .iter()
            .map(|row| {
                let inner: Vec<String> = row.iter().map(|&v| f64_json(v)).collect();
                format!("[{}]", inner.join(","))
            })
            .collect();
        self.fields
            .push((key.to_string(), format!("[{}]", rendered.join(","))));
        self
    }

    /// One line of JSON with a trailing newline.
    pub fn render(&self) -> String {
        let inner: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("\"{}\":{}", escape(k), v))
            .collect();
        format!("{{{}}}\n", inner.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_render_with_17_significant_digits() {
        assert_eq!(fmt_f64(0.75), "7.5000000000000000e-1");
        assert_eq!(fmt_f64(-0.25), "-2.5000000000000000e-1");
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn rendered_floats_round_trip() {
        for &x in &[0.1, -1.0 / 3.0, 1e-300, 2.5e17, f64::MIN_POSITIVE] {
            let back: f64 = fmt_f64(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn object_renders_in_insertion_order() {
        let obj = JsonObject::new()
            .int("n", 3)
            .num("s2", 1.0)
            .str("class", "Zero")
            .num_array("xs", &[1.0, f64::INFINITY]);
        assert_eq!(
            obj.render(),
            "{\"n\":3,\"s2\":1.0000000000000000e0,\"class\":\"Zero\",\
             \"xs\":[1.0000000000000000e0,\"inf\"]}\n"
        );
    }
}
