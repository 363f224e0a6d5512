//! Line-delimited JSON records for machine-readable output.
//!
//! Polynomial coefficients are written as plain JSON integers of any size.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::MotiveResult;
use crate::verify::CaseReport;

/// One `[M(v, w)]` result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotiveRecord {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub v: Vec<u32>,
    pub w: Vec<u32>,
    pub d_shift: i64,
    /// Ascending coefficients of the class in `L`.
    #[serde(with = "integer_list")]
    pub class_polynomial: Vec<BigInt>,
}

impl From<&MotiveResult> for MotiveRecord {
    fn from(r: &MotiveResult) -> Self {
        Self {
            vertices: r.quiver.vertex_count(),
            edges: r.quiver.arrows().iter().map(|&(s, t)| [s, t]).collect(),
            v: r.v.entries().to_vec(),
            w: r.w.entries().to_vec(),
            d_shift: r.d_shift,
            class_polynomial: r.class_polynomial.clone(),
        }
    }
}

impl MotiveRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn parse_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

/// One verification case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub suite: String,
    pub case: String,
    pub status: String,
    pub detail: String,
}

impl From<&CaseReport> for CaseRecord {
    fn from(r: &CaseReport) -> Self {
        Self {
            suite: r.suite.to_string(),
            case: r.case.clone(),
            status: r.status.to_string(),
            detail: r.detail.clone(),
        }
    }
}

impl CaseRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

mod integer_list {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<Number> = xs
            .iter()
            .map(|x| Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
            .collect();
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Number>::deserialize(d)?
            .iter()
            .map(|n| {
                BigInt::from_str(&n.to_string()).map_err(|_| D::Error::custom(format!("expected an integer, got {n}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::motive_class;
    use crate::quiver::{DimVector, Quiver};
    use proptest::prelude::*;

    #[test]
    fn motive_record_line() {
        let r = motive_class(&Quiver::jordan(), &DimVector(vec![1]), &DimVector(vec![1])).unwrap();
        let line = MotiveRecord::from(&r).to_line();
        assert_eq!(
            line,
            r#"{"vertices":1,"edges":[[0,0]],"v":[1],"w":[1],"d_shift":-1,"class_polynomial":[0,0,1]}"#
        );
        assert_eq!(MotiveRecord::parse_line(&line).unwrap(), MotiveRecord::from(&r));
    }

    #[test]
    fn rejects_fractional_coefficients() {
        let line = r#"{"vertices":1,"edges":[],"v":[1],"w":[1],"d_shift":0,"class_polynomial":[1.5]}"#;
        assert!(MotiveRecord::parse_line(line).is_err());
    }

    proptest! {
        #[test]
        fn large_coefficients_roundtrip(digits in "-?[1-9][0-9]{0,60}", d in -50i64..50) {
            let rec = MotiveRecord {
                vertices: 2,
                edges: vec![[0, 1]],
                v: vec![1, 2],
                w: vec![0, 1],
                d_shift: d,
                class_polynomial: vec![BigInt::from(0), digits.parse().unwrap()],
            };
            prop_assert_eq!(MotiveRecord::parse_line(&rec.to_line()).unwrap(), rec);
        }
    }
}
