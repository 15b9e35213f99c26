//! JSON formatting helpers: rationals as `"num/den"` strings and floats
//! rounded to 15 significant digits, so reports are byte-stable.

use serde::{Serialize, Serializer};

use crate::Q;

/// A rational serialized as `"num/den"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

/// A float serialized with 15 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F15(pub f64);

pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

impl Serialize for F15 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(round15(self.0))
    }
}

impl std::fmt::Display for F15 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", round15(self.0))
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(
            serde_json::to_string(&QStr(Q::new(4, 2))).unwrap(),
            "\"2/1\""
        );
        assert_eq!(
            serde_json::to_string(&QStr(Q::new(1, 3))).unwrap(),
            "\"1/3\""
        );
        let pi = serde_json::to_string(&F15(std::f64::consts::PI)).unwrap();
        assert_eq!(pi, "3.14159265358979");
        assert_eq!(serde_json::to_string(&F15(20.0)).unwrap(), "20.0");
    }
}
