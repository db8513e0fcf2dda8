use orecode::field::{Elem, FieldCtx, Gf};
use proptest::prelude::*;
use std::sync::LazyLock;

static F64: LazyLock<Gf> = LazyLock::new(|| Gf::new(2, 6).unwrap());
static L625: LazyLock<FieldCtx> = LazyLock::new(|| FieldCtx::new(5, 1, 4).unwrap());
static L256: LazyLock<FieldCtx> = LazyLock::new(|| FieldCtx::new(2, 4, 2).unwrap());
static L729: LazyLock<FieldCtx> = LazyLock::new(|| FieldCtx::new(3, 2, 3).unwrap());

fn f9() -> FieldCtx {
    FieldCtx::new(3, 1, 2).unwrap()
}

// z is the class of the variable: digits (0, 1)
const Z: Elem = Elem(3);

#[test]
fn f9_frobenius_norm_and_preimage() {
    let ctx = f9();
    let l = ctx.l();
    assert_eq!(l.modulus(), &[1, 0, 1]);
    assert_eq!(ctx.frobenius(Z, 1), l.neg(Z));
    let z1 = l.add(Z, Elem::ONE);
    assert_eq!(ctx.norm(z1), Elem(2));
    // oracle: the naive product (z+1)(z+1)^3
    assert_eq!(l.mul(z1, l.mul(z1, l.mul(z1, z1))), Elem(2));
    assert_eq!(ctx.norm_preimage(Elem(2)).unwrap(), z1);
    assert_eq!(ctx.norm(Elem::ZERO), Elem::ZERO);
    assert_eq!(ctx.trace(Elem::ZERO), Elem::ZERO);
}

#[test]
fn norm_preimage_is_deterministic_and_correct() {
    for (p, a, r) in [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 3), (7, 1, 2), (3, 2, 2)] {
        let ctx = FieldCtx::new(p, a, r).unwrap();
        for t in ctx.fq().elements().skip(1) {
            let x = ctx.norm_preimage(t).unwrap();
            assert_eq!(ctx.norm(x), t);
            assert_eq!(ctx.norm_preimage(t).unwrap(), x);
        }
        assert!(ctx.norm_preimage(Elem::ZERO).is_err());
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(FieldCtx::new(4, 1, 2).is_err());
    assert!(FieldCtx::new(3, 1, 0).is_err());
    assert!(Gf::new(2, 40).is_err());
}

#[test]
fn coordinates_round_trip() {
    let ctx = FieldCtx::new(2, 2, 3).unwrap();
    for x in ctx.l().elements() {
        assert_eq!(ctx.from_coords(&ctx.coords(x)), x);
    }
    for (j, &b) in ctx.basis().iter().enumerate() {
        let c = ctx.coords(b);
        assert!(c.iter().enumerate().all(|(i, &v)| v == if i == j { Elem::ONE } else { Elem::ZERO }));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms(a in 0u32..64, b in 0u32..64, c in 0u32..64) {
        let f = &*F64;
        let (a, b, c) = (Elem(a), Elem(b), Elem(c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(x in 0u32..625, y in 0u32..625, i in -6i64..6) {
        let ctx = &*L625;
        let l = ctx.l();
        let (x, y) = (Elem(x), Elem(y));
        prop_assert_eq!(ctx.frobenius(l.mul(x, y), i), l.mul(ctx.frobenius(x, i), ctx.frobenius(y, i)));
        prop_assert_eq!(ctx.frobenius(l.add(x, y), i), l.add(ctx.frobenius(x, i), ctx.frobenius(y, i)));
        prop_assert_eq!(ctx.frobenius(x, 4), x);
    }

    #[test]
    fn embedding_commutes_with_arithmetic(a in 0u32..16, b in 0u32..16) {
        let ctx = &*L256;
        let (fq, l) = (ctx.fq(), ctx.l());
        let (a, b) = (Elem(a), Elem(b));
        prop_assert_eq!(ctx.embed(fq.mul(a, b)), l.mul(ctx.embed(a), ctx.embed(b)));
        prop_assert_eq!(ctx.embed(fq.add(a, b)), l.add(ctx.embed(a), ctx.embed(b)));
        prop_assert_eq!(ctx.frobenius(ctx.embed(a), 1), ctx.embed(a));
        prop_assert_eq!(ctx.norm(ctx.embed(a)), fq.pow(a, 2));
    }

    #[test]
    fn norm_is_multiplicative_and_trace_additive(x in 0u32..729, y in 0u32..729) {
        let ctx = &*L729;
        let l = ctx.l();
        let fq = ctx.fq();
        let (x, y) = (Elem(x), Elem(y));
        prop_assert_eq!(ctx.norm(l.mul(x, y)), fq.mul(ctx.norm(x), ctx.norm(y)));
        prop_assert_eq!(ctx.trace(l.add(x, y)), fq.add(ctx.trace(x), ctx.trace(y)));
    }
}
