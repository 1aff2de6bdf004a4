use num_bigint::BigUint;
use serde::Serializer;

/// Big integers are written as decimal strings.
pub(crate) fn biguint_str<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A sequence written as the list of its items' display strings.
pub(crate) fn display_seq<T: std::fmt::Display, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
