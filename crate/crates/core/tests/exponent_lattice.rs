use num_rational::Ratio;
use orecode::lattice::{binomial, ehrhart_poly, ehrhart_upper_bound, AdaptedBasis, ExpVec, LatticeBasis, Simplex, TwistVector};
use proptest::prelude::*;

fn ev(v: &[i64]) -> ExpVec {
    ExpVec(v.to_vec())
}

fn basis(e: &[i64], r: u32, w: &[&[i64]]) -> LatticeBasis {
    let t = TwistVector::new(e.to_vec(), r).unwrap();
    LatticeBasis::new(&t, w.iter().map(|v| ev(v)).collect()).unwrap()
}

#[test]
fn membership_examples() {
    let t = TwistVector::new(vec![3, 2], 4).unwrap();
    assert!(t.lattice_member(&ev(&[4, 0])));
    assert!(t.lattice_member(&ev(&[2, 1])));
    assert!(!t.lattice_member(&ev(&[1, 0])));
    assert!(t.lattice_member(&ev(&[0, 0])));
    let ac = TwistVector::almost_commutative(3, 5);
    for u in [[1, 2, 5], [0, 0, 3], [7, -1, -10]] {
        assert_eq!(ac.lattice_member(&ev(&u)), u[2] % 5 == 0);
    }
    assert!(TwistVector::new(vec![2, 4], 4).is_err());
}

#[test]
fn adapted_basis_against_brute_force() {
    let t = TwistVector::new(vec![3, 2], 4).unwrap();
    let a = AdaptedBasis::compute(&t).unwrap();
    assert_eq!(t.pairing(a.last()).rem_euclid(4), 1);
    let lb = a.lattice_basis(&t);
    // every lattice point of the box is an integer combination, and nothing else is
    for x in -8..=8 {
        for y in -8..=8 {
            let u = ev(&[x, y]);
            assert_eq!(lb.coords(&u).is_some(), t.lattice_member(&u), "{u:?}");
        }
    }
    let one = AdaptedBasis::compute(&TwistVector::new(vec![1], 7).unwrap()).unwrap();
    assert_eq!(one.vectors(), &[ev(&[1])]);
    let ac = AdaptedBasis::compute(&TwistVector::almost_commutative(3, 4)).unwrap();
    assert_eq!(ac.vectors(), &[ev(&[1, 0, 0]), ev(&[0, 1, 0]), ev(&[0, 0, 1])]);
}

#[test]
fn worked_example_counts_and_ehrhart() {
    let c1 = basis(&[3, 2], 4, &[&[4, 0], &[2, 1]]);
    let c2 = basis(&[3, 2], 4, &[&[0, 2], &[2, 1]]);
    assert_eq!(Simplex::new(c1.clone(), 1).count(), 6);
    assert_eq!(Simplex::new(c2.clone(), 1).count(), 5);
    assert_eq!(Simplex::new(c1.clone(), 0).points(), vec![ev(&[0, 0])]);
    assert_eq!(ehrhart_poly(&c1).unwrap().to_string(), "2x^2 + 3x + 1");
    assert_eq!(ehrhart_poly(&c2).unwrap().to_string(), "2x^2 + 2x + 1");
    let t = TwistVector::new(vec![3, 2], 4).unwrap();
    let fam = LatticeBasis::family(&t, vec![ev(&[4, 0]), ev(&[0, 2])]).unwrap();
    assert!(fam.is_experimental());
    for d in 0..4 {
        assert_eq!(Simplex::new(fam.clone(), d).count() as i64, (2 * d as i64 + 1).pow(2));
    }
}

#[test]
fn univariate_ehrhart() {
    for r in 1..6 {
        let b = basis(&[1], r, &[&[r as i64]]);
        let p = ehrhart_poly(&b).unwrap();
        assert_eq!(p.coeffs, vec![Ratio::from_integer(1), Ratio::from_integer(r as i64)]);
    }
}

#[test]
fn almost_commutative_dimension_closed_form() {
    for m in 1..4usize {
        for r in 1..4u32 {
            let t = TwistVector::almost_commutative(m, r);
            let mut w: Vec<ExpVec> = (0..m).map(|i| ExpVec::unit(m, i)).collect();
            w[m - 1] = w[m - 1].scale(r as i64);
            let b = LatticeBasis::new(&t, w).unwrap();
            for d in 0..4u32 {
                let (d64, m64) = (d as u64, m as u64);
                let closed = binomial(m64 + d64, m64) + (r as u64 - 1) * if d > 0 { binomial(m64 + d64 - 1, m64) } else { 0 };
                assert_eq!(Simplex::new(b.clone(), d).count() as u64, closed, "m={m} r={r} d={d}");
                assert_eq!(closed, ehrhart_upper_bound(m, r, d));
            }
        }
    }
}

#[test]
fn non_bases_are_rejected() {
    let t = TwistVector::new(vec![3, 2], 4).unwrap();
    assert!(LatticeBasis::new(&t, vec![ev(&[4, 0]), ev(&[0, 2])]).is_err());
    assert!(LatticeBasis::new(&t, vec![ev(&[1, 0]), ev(&[2, 1])]).is_err());
    assert!(LatticeBasis::family(&t, vec![ev(&[1, 0]), ev(&[2, 1])]).is_err());
}

fn twist() -> impl Strategy<Value = TwistVector> {
    (1u32..6, prop::collection::vec(-6i64..7, 1..4))
        .prop_filter_map("coprime", |(r, e)| TwistVector::new(e, r).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adapted_basis_invariants(t in twist()) {
        let Ok(a) = AdaptedBasis::compute(&t) else {
            // only the univariate case can fail, and only for e ≢ ±1
            prop_assert_eq!(t.m(), 1);
            let e = t.e()[0].rem_euclid(t.r() as i64);
            prop_assert!(e != 1 % t.r() as i64 && e != (t.r() as i64 - 1));
            return Ok(());
        };
        let r = t.r() as i64;
        prop_assert_eq!(t.pairing(a.last()).rem_euclid(r), 1 % r);
        for v in &a.vectors()[..t.m() - 1] {
            prop_assert!(t.lattice_member(v));
        }
        let lb = a.lattice_basis(&t);
        prop_assert_eq!(lb.det().abs(), r);
        // coordinates reconstruct the vector
        let u = ExpVec((0..t.m() as i64).map(|i| 3 * i - 2).collect());
        let c = a.coords(&u);
        let back = a.vectors().iter().zip(&c).fold(ExpVec::zero(t.m()), |acc, (v, &k)| acc.add(&v.scale(k)));
        prop_assert_eq!(back, u);
    }

    #[test]
    fn hermite_ehrhart_matches_counts(t in twist(), d in 0u32..4) {
        prop_assume!(t.m() <= 3);
        let h = LatticeBasis::hermite(&t).unwrap();
        let p = ehrhart_poly(&h).unwrap();
        prop_assert_eq!(p.eval(d as i64), Ratio::from_integer(Simplex::new(h.clone(), d).count() as i64));
        let fact: i64 = (1..=t.m() as i64).product();
        prop_assert_eq!(p.leading(), Ratio::new(t.r() as i64, fact));
        prop_assert!(p.eval(d as i64) <= Ratio::from_integer(ehrhart_upper_bound(t.m(), t.r(), d) as i64));
    }

    #[test]
    fn simplex_points_are_members(t in twist(), d in 0u32..3) {
        prop_assume!(t.m() <= 3);
        let s = Simplex::new(LatticeBasis::hermite(&t).unwrap(), d);
        let pts = s.points();
        prop_assert!(pts.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(pts.iter().all(|u| s.contains(u)));
    }
}
