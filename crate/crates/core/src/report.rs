//! Serde helpers: exact values serialize as their canonical text.

use serde::ser::{SerializeSeq, Serializer};

use crate::arith::{PolyXY, QPoly, Q};
use crate::parse::print;

pub fn ser_q<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&print::rational(v))
}

pub fn ser_opt_q<S: Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&print::rational(q)),
        None => s.serialize_none(),
    }
}

pub fn ser_poly<S: Serializer>(v: &PolyXY, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&print::poly_to_string(v))
}

pub fn ser_ypoly<S: Serializer>(v: &QPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&print::ypoly_to_string(v))
}

pub fn ser_parts<S: Serializer>(v: &[(PolyXY, u32)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, m) in v {
        seq.serialize_element(&(print::poly_to_string(p), m))?;
    }
    seq.end()
}
