//! Output records.
//!
//! Every number is written with 17 significant digits in scientific notation
//! (`{:.16e}`), so identical computations give byte-identical documents.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::nilmanifold::EtaEvaluation;
use crate::tilde_eta::TildeEtaPoint;

/// 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// A real number serialized with [`format_number`]; non-finite values become
/// `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed(pub f64);

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format_number(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexRecord {
    pub re: Fixed,
    pub im: Fixed,
}

impl From<Complex64> for ComplexRecord {
    fn from(z: Complex64) -> Self {
        ComplexRecord {
            re: Fixed(z.re),
            im: Fixed(z.im),
        }
    }
}

/// `{"s", "value", "is_pole", "residue", "tail_bound"}` in that order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaRecord {
    pub s: ComplexRecord,
    pub value: Option<ComplexRecord>,
    pub is_pole: bool,
    pub residue: Fixed,
    pub tail_bound: Option<Fixed>,
}

impl From<&EtaEvaluation> for EtaRecord {
    fn from(e: &EtaEvaluation) -> Self {
        EtaRecord {
            s: e.s.into(),
            value: Some(e.value.into()),
            is_pole: e.is_pole,
            residue: Fixed(e.residue),
            tail_bound: e.tail_bound.map(Fixed),
        }
    }
}

impl From<&TildeEtaPoint> for EtaRecord {
    fn from(p: &TildeEtaPoint) -> Self {
        EtaRecord {
            s: p.s.into(),
            value: p.value.map(Into::into),
            is_pole: p.is_pole,
            residue: Fixed(p.residue),
            tail_bound: None,
        }
    }
}

impl EtaRecord {
    /// Record for an entire function evaluated at a regular point.
    pub fn regular(s: Complex64, value: Complex64) -> Self {
        EtaRecord {
            s: s.into(),
            value: Some(value.into()),
            is_pole: false,
            residue: Fixed(0.0),
            tail_bound: None,
        }
    }
}

/// Pretty-printed JSON followed by a newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("records always serialize");
    out.push('\n');
    out
}

/// CSV with header `index,eigenvalue`, rows in the given order.
pub fn spectrum_csv(eigenvalues: &[f64]) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, x) in eigenvalues.iter().enumerate() {
        out.push_str(&format!("{i},{}\n", format_number(*x)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_number(0.1), "1.0000000000000001e-1");
        assert_eq!(format_number(-2.0), "-2.0000000000000000e0");
        assert_eq!(format_number(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn record_layout() {
        let r = EtaRecord::regular(Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.0));
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            "{\"s\":{\"re\":5.0000000000000000e-1,\"im\":-1.0000000000000000e0},\
             \"value\":{\"re\":2.0000000000000000e0,\"im\":0.0000000000000000e0},\
             \"is_pole\":false,\"residue\":0.0000000000000000e0,\"tail_bound\":null}"
        );
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["value"]["re"], 2.0);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            spectrum_csv(&[-1.5, 3.0]),
            "index,eigenvalue\n0,-1.5000000000000000e0\n1,3.0000000000000000e0\n"
        );
    }
}
