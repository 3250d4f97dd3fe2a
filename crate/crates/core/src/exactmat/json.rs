//! JSON form of fields and matrices:
//! `{"field": {"kind": "Q"} | {"kind": "Fp", "p": 7}, "rows": [["1/2", "-3"], ...]}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{FieldSpec, PrimeModulus};
use super::mat::Mat;

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum FieldRepr {
    Q,
    Fp { p: u64 },
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Rationals => FieldRepr::Q,
            FieldSpec::Prime(p) => FieldRepr::Fp { p: p.get() },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match FieldRepr::deserialize(d)? {
            FieldRepr::Q => Ok(FieldSpec::Rationals),
            FieldRepr::Fp { p } => PrimeModulus::new(p).map(FieldSpec::Prime).map_err(D::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatRepr {
    field: FieldSpec,
    rows: Vec<Vec<String>>,
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = (0..self.nrows())
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        MatRepr { field: self.field(), rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatRepr::deserialize(d)?;
        let rows = repr
            .rows
            .iter()
            .map(|r| r.iter().map(|e| repr.field.parse_scalar(e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Mat::from_rows(repr.field, &rows).map_err(D::Error::custom)
    }
}
