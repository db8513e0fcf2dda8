mod common;

use std::sync::{Arc, LazyLock};

use orecode::field::Elem;
use orecode::lattice::ExpVec;
use orecode::ore::{CentralPoly, OrePoly, OreRing};
use orecode::sample::{random_laurent, random_nonzero, random_poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static RINGS: LazyLock<Vec<Arc<OreRing>>> =
    LazyLock::new(|| common::RINGS.iter().map(|&(p, a, r, e)| common::ring(p, a, r, e)).collect());

fn pick(seed: u64) -> (Arc<OreRing>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = RINGS[rng.gen_range(0..RINGS.len())].clone();
    (ring, rng)
}

#[test]
fn commutation_rule() {
    for ring in RINGS.iter() {
        let ctx = ring.ctx();
        let a = ctx.generator();
        for i in 0..ring.m() {
            let lhs = &OrePoly::var(ring, i) * &OrePoly::constant(ring, a);
            let rhs = OrePoly::monomial(ring, ctx.frobenius(a, ring.twist().e()[i]), ExpVec::unit(ring.m(), i));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn hand_expansion_in_f9() {
    // F_9 = F_3[z]/(z^2 + 1), m = 1, e = (1): X·(zX) = (−z)X²
    let ring = common::ring(3, 1, 2, &[1]);
    let l = ring.ctx().l();
    let z = Elem(3);
    let x = OrePoly::var(&ring, 0);
    let zx = OrePoly::monomial(&ring, z, ExpVec(vec![1]));
    assert_eq!(&x * &zx, OrePoly::monomial(&ring, l.neg(z), ExpVec(vec![2])));
}

#[test]
fn centre_examples() {
    let ring = common::ring(5, 1, 4, &[3, 2]);
    let ctx = ring.ctx();
    assert!(OrePoly::monomial(&ring, Elem::ONE, ExpVec(vec![4, 0])).is_central());
    assert!(!OrePoly::monomial(&ring, Elem::ONE, ExpVec(vec![1, 1])).is_central());
    assert!(OrePoly::constant(&ring, ctx.embed(Elem(3))).is_central());
    assert!(!OrePoly::constant(&ring, ctx.generator()).is_central());
    assert!(!OrePoly::monomial(&ring, ctx.generator(), ExpVec(vec![4, 0])).is_central());
}

#[test]
fn degrees_and_support() {
    let ring = common::ring(3, 1, 2, &[0, 1]);
    let f = OrePoly::monomial(&ring, Elem::ONE, ExpVec(vec![2, 1]));
    assert_eq!(f.total_degree().unwrap(), Some(3));
    assert!(OrePoly::zero(&ring).support().is_empty());
    assert_eq!(OrePoly::zero(&ring).total_degree().unwrap(), None);
    assert!(OrePoly::monomial(&ring, Elem::ONE, ExpVec(vec![-1, 0])).total_degree().is_err());
}

#[test]
fn mismatched_rings_are_rejected() {
    let a = common::ring(3, 1, 2, &[0, 1]);
    let b = common::ring(3, 1, 2, &[1, 1]);
    assert!(OrePoly::one(&a).checked_mul(&OrePoly::one(&b)).is_err());
    assert!(OrePoly::one(&a).checked_add(&OrePoly::one(&b)).is_err());
}

#[test]
fn export_import_round_trip() {
    let ring = common::ring(2, 2, 3, &[1, 2]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_laurent(&ring, 3, 6, &mut rng);
    let json = serde_json::to_string(&f.export()).unwrap();
    let back = OrePoly::import(&ring, &serde_json::from_str::<Vec<_>>(&json).unwrap()).unwrap();
    assert_eq!(back, f);
}

// commutators with every generator of the algebra: the X_i^{±1} and a primitive element
fn commutes_with_generators(f: &OrePoly) -> bool {
    let ring = f.ring();
    let g = OrePoly::constant(ring, ring.ctx().generator());
    let mut gens = vec![g];
    for i in 0..ring.m() {
        gens.push(OrePoly::var(ring, i));
        gens.push(OrePoly::monomial(ring, Elem::ONE, ExpVec::unit(ring.m(), i).scale(-1)));
    }
    gens.iter().all(|x| x * f == f * x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (ring, mut rng) = pick(seed);
        let f = random_laurent(&ring, 2, 4, &mut rng);
        let g = random_laurent(&ring, 2, 4, &mut rng);
        let h = random_laurent(&ring, 2, 3, &mut rng);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f + &OrePoly::zero(&ring), f.clone());
        prop_assert!((&f + &(-&f)).is_zero());
        prop_assert_eq!(&OrePoly::one(&ring) * &f, f.clone());
        prop_assert_eq!(&f * &OrePoly::one(&ring), f.clone());
        let c = random_nonzero(ring.ctx().l(), &mut rng);
        prop_assert_eq!(f.scale(c), &OrePoly::constant(&ring, c) * &f);
    }

    #[test]
    fn degree_is_additive(seed in any::<u64>()) {
        let (ring, mut rng) = pick(seed);
        let f = random_poly(&ring, 3, 3, &mut rng);
        let g = random_poly(&ring, 3, 3, &mut rng);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (df, dg) = (f.total_degree().unwrap().unwrap(), g.total_degree().unwrap().unwrap());
        prop_assert_eq!((&f * &g).total_degree().unwrap(), Some(df + dg));
    }

    #[test]
    fn centre_characterization(seed in any::<u64>()) {
        let (ring, mut rng) = pick(seed);
        let ctx = ring.ctx();
        // half the time build a central element, half the time perturb one
        let lattice: Vec<ExpVec> = (0..4)
            .map(|_| {
                let u = ExpVec((0..ring.m()).map(|_| rng.gen_range(-2i64..3)).collect());
                let k = ring.twist().residue(&u) as i64;
                // push u into the lattice along the last adapted vector
                u.sub(&ring.adapted().unwrap().last().scale(k))
            })
            .collect();
        let mut f = OrePoly::from_terms(
            &ring,
            lattice.iter().map(|u| (u.clone(), ctx.embed(random_nonzero(ctx.fq(), &mut rng)))),
        );
        if rng.gen_bool(0.5) {
            f = &f + &random_laurent(&ring, 2, 1, &mut rng);
        }
        prop_assert_eq!(f.is_central(), commutes_with_generators(&f));
        if f.is_central() {
            let c = CentralPoly::from_ore(&f).unwrap();
            prop_assert_eq!(c.to_ore(&ring), f);
        }
    }
}
