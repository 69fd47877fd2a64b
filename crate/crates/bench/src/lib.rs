//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use traceideal::parse::parse_polynomial;
use traceideal::{Field, PolyRing, Polynomial};

pub fn ring(vars: &[&str], field: Field) -> Arc<PolyRing> {
    PolyRing::new(vars.iter().copied(), field)
}

pub fn polys(ring: &Arc<PolyRing>, items: &[&str]) -> Vec<Polynomial> {
    items
        .iter()
        .map(|s| parse_polynomial(s, ring).expect("fixture polynomial"))
        .collect()
}
