use std::str::FromStr;

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub(crate) fn big_number(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integer literal")
}

pub(crate) fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&big_number(x))?;
    }
    seq.end()
}
