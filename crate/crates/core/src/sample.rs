//! Random elements for property tests and sampled distance estimates.

use std::sync::Arc;

use rand::Rng;

use crate::field::{Elem, Gf};
use crate::lattice::ExpVec;
use crate::ore::{OrePoly, OreRing};

pub fn random_elem<R: Rng + ?Sized>(f: &Gf, rng: &mut R) -> Elem {
    Elem(rng.gen_range(0..f.order()))
}

pub fn random_nonzero<R: Rng + ?Sized>(f: &Gf, rng: &mut R) -> Elem {
    Elem(rng.gen_range(1..f.order()))
}

/// A vector of `k` elements of `f`, not all zero.
pub fn random_message<R: Rng + ?Sized>(f: &Gf, k: usize, rng: &mut R) -> Vec<Elem> {
    loop {
        let msg: Vec<Elem> = (0..k).map(|_| random_elem(f, rng)).collect();
        if k == 0 || msg.iter().any(|x| !x.is_zero()) {
            return msg;
        }
    }
}

/// Exponent vectors `u ≥ 0` with `|u| ≤ d`, graded-lex.
pub fn total_degree_monomials(m: usize, d: u32) -> Vec<ExpVec> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; m];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<ExpVec>) {
        if i == cur.len() {
            out.push(ExpVec(cur.clone()));
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d as i64, &mut cur, &mut out);
    out.sort();
    out
}

/// A polynomial with up to `terms` monomials drawn from `support`.
pub fn random_supported<R: Rng + ?Sized>(ring: &Arc<OreRing>, support: &[ExpVec], terms: usize, rng: &mut R) -> OrePoly {
    let l = ring.ctx().l();
    OrePoly::from_terms(
        ring,
        (0..terms).map(|_| (support[rng.gen_range(0..support.len())].clone(), random_nonzero(l, rng))),
    )
}

/// A polynomial with nonnegative exponents of total degree at most `d`.
pub fn random_poly<R: Rng + ?Sized>(ring: &Arc<OreRing>, d: u32, terms: usize, rng: &mut R) -> OrePoly {
    random_supported(ring, &total_degree_monomials(ring.m(), d), terms, rng)
}

/// A Laurent polynomial with exponents in `[-bound, bound]^m`.
pub fn random_laurent<R: Rng + ?Sized>(ring: &Arc<OreRing>, bound: i64, terms: usize, rng: &mut R) -> OrePoly {
    let l = ring.ctx().l();
    let m = ring.m();
    OrePoly::from_terms(
        ring,
        (0..terms).map(|_| {
            let u = ExpVec((0..m).map(|_| rng.gen_range(-bound..=bound)).collect());
            (u, random_nonzero(l, rng))
        }),
    )
}
