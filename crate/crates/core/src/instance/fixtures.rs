//! Embedded benchmark instances.
//!
//! `garn9` is the nine-node two-salesman example; the rest are TSPLIB
//! instances (`bays29` is an explicit street-distance matrix).

use super::{parse_tsplib_with, Instance, InstanceError, Rounding};
use crate::scalar::Scalar;

const FILES: &[(&str, &str)] = &[
    ("garn9", include_str!("../../data/garn9.tsp")),
    ("bays29", include_str!("../../data/bays29.tsp")),
    ("eil51", include_str!("../../data/eil51.tsp")),
    ("berlin52", include_str!("../../data/berlin52.tsp")),
    ("eil76", include_str!("../../data/eil76.tsp")),
    ("eil101", include_str!("../../data/eil101.tsp")),
    ("kroA100", include_str!("../../data/kroA100.tsp")),
    ("kroA200", include_str!("../../data/kroA200.tsp")),
];

/// Names of every embedded instance.
pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// Raw TSPLIB text of an embedded instance.
pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Loads an embedded instance with real-valued distances.
pub fn load<T: Scalar>(name: &str) -> Option<Instance<T>> {
    load_with(name, Rounding::None).map(|r| r.expect("embedded fixtures parse"))
}

pub fn load_with<T: Scalar>(name: &str, rounding: Rounding) -> Option<Result<Instance<T>, InstanceError>> {
    source(name).map(|text| parse_tsplib_with(text, rounding))
}

pub fn garn9<T: Scalar>() -> Instance<T> {
    load("garn9").expect("garn9 embedded")
}
