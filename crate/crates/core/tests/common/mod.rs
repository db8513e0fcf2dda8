#![allow(dead_code)]

use std::sync::Arc;

use orecode::eval::{enumerate_characters, Cocycle, EvalPoint};
use orecode::field::FieldCtx;
use orecode::lattice::TwistVector;
use orecode::ore::OreRing;

pub fn ring(p: u32, a: u32, r: u32, e: &[i64]) -> Arc<OreRing> {
    let ctx = Arc::new(FieldCtx::new(p, a, r).unwrap());
    OreRing::new(ctx, TwistVector::new(e.to_vec(), r).unwrap()).unwrap()
}

/// All characters of the default lattice basis with canonical prolongations.
pub fn points(ring: &Arc<OreRing>) -> Vec<EvalPoint> {
    let basis = ring.default_lattice_basis().unwrap();
    enumerate_characters(&basis, ring.ctx())
        .into_iter()
        .map(|ch| EvalPoint::Character(Cocycle::canonical(ring.ctx(), ring.twist(), ring.adapted().unwrap(), ch).unwrap()))
        .collect()
}

/// `(p, a, r, e)` for the small rings exercised by the property tests.
pub const RINGS: &[(u32, u32, u32, &[i64])] = &[
    (3, 1, 2, &[0, 1]),
    (3, 1, 2, &[1, 1]),
    (2, 2, 2, &[1, 0]),
    (2, 2, 3, &[1, 2]),
    (3, 1, 3, &[2, 1]),
    (5, 1, 2, &[1, 1]),
];
