//! Multivariate Ore Laurent polynomials `L[X^{±1}; θ]` with
//! `X^u · a = Φ^{e·u}(a) · X^u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, Gf};
use crate::lattice::{AdaptedBasis, ExpVec, LatticeBasis, Simplex, TwistVector};
use crate::poly::LaurentPoly;

/// The ring `L[X_1^{±1}, …, X_m^{±1}; θ]` with `θ_i = Φ^{e_i}`.
pub struct OreRing {
    ctx: Arc<FieldCtx>,
    twist: TwistVector,
    adapted: Result<AdaptedBasis, String>,
}

impl fmt::Debug for OreRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OreRing(q={}, r={}, e={:?})", self.ctx.q(), self.ctx.r(), self.twist.e())
    }
}

impl PartialEq for OreRing {
    fn eq(&self, o: &Self) -> bool {
        self.twist == o.twist && (Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx.descriptor() == o.ctx.descriptor())
    }
}

impl OreRing {
    pub fn new(ctx: Arc<FieldCtx>, twist: TwistVector) -> Result<Arc<Self>> {
        if twist.r() != ctx.r() {
            return Err(Error::InvalidField(format!("twist is modulo {} but [L : F_q] = {}", twist.r(), ctx.r())));
        }
        let adapted = AdaptedBasis::compute(&twist).map_err(|e| e.to_string());
        Ok(Arc::new(OreRing { ctx, twist, adapted }))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn twist(&self) -> &TwistVector {
        &self.twist
    }

    pub fn m(&self) -> usize {
        self.twist.m()
    }

    pub fn r(&self) -> u32 {
        self.twist.r()
    }

    pub fn adapted(&self) -> Result<&AdaptedBasis> {
        self.adapted.as_ref().map_err(|e| Error::NoAdaptedBasis(e.clone()))
    }

    /// `(v_1, …, v_{m-1}, r·v_m)` from the adapted basis.
    pub fn default_lattice_basis(&self) -> Result<LatticeBasis> {
        Ok(self.adapted()?.lattice_basis(&self.twist))
    }
}

/// One term of the JSON form of an [`OrePoly`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponent: Vec<i64>,
    pub coefficient: Vec<u32>,
}

/// A sparse Ore Laurent polynomial; zero coefficients are never stored.
#[derive(Clone)]
pub struct OrePoly {
    ring: Arc<OreRing>,
    terms: BTreeMap<ExpVec, Elem>,
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms.iter().map(|(u, c)| (c.0, &u.0)).collect();
        write!(f, "OrePoly{terms:?}")
    }
}

impl PartialEq for OrePoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && self.ring == o.ring
    }
}

impl Eq for OrePoly {}

impl OrePoly {
    pub fn zero(ring: &Arc<OreRing>) -> Self {
        OrePoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<OreRing>) -> Self {
        Self::constant(ring, Elem::ONE)
    }

    pub fn constant(ring: &Arc<OreRing>, c: Elem) -> Self {
        Self::monomial(ring, c, ExpVec::zero(ring.m()))
    }

    /// `c · X^u`.
    pub fn monomial(ring: &Arc<OreRing>, c: Elem, u: ExpVec) -> Self {
        assert_eq!(u.dim(), ring.m(), "exponent has the wrong length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(u, c);
        }
        OrePoly { ring: ring.clone(), terms }
    }

    /// The variable `X_i` (0-based).
    pub fn var(ring: &Arc<OreRing>, i: usize) -> Self {
        Self::monomial(ring, Elem::ONE, ExpVec::unit(ring.m(), i))
    }

    pub fn from_terms(ring: &Arc<OreRing>, terms: impl IntoIterator<Item = (ExpVec, Elem)>) -> Self {
        let mut p = Self::zero(ring);
        for (u, c) in terms {
            p.add_term(u, c);
        }
        p
    }

    fn add_term(&mut self, u: ExpVec, c: Elem) {
        if c.is_zero() {
            return;
        }
        let l = self.ring.ctx.l();
        let s = self.terms.get(&u).map_or(c, |&a| l.add(a, c));
        if s.is_zero() {
            self.terms.remove(&u);
        } else {
            self.terms.insert(u, s);
        }
    }

    pub fn ring(&self) -> &Arc<OreRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, Elem> {
        &self.terms
    }

    pub fn coeff(&self, u: &ExpVec) -> Elem {
        self.terms.get(u).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponents with nonzero coefficient, in graded-lex order.
    pub fn support(&self) -> Vec<ExpVec> {
        self.terms.keys().cloned().collect()
    }

    fn same_ring(&self, o: &OrePoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, o: &OrePoly) -> Result<OrePoly> {
        self.same_ring(o)?;
        let mut out = self.clone();
        for (u, &c) in &o.terms {
            out.add_term(u.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &OrePoly) -> Result<OrePoly> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> OrePoly {
        let l = self.ring.ctx.l();
        OrePoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(u, &c)| (u.clone(), l.neg(c))).collect() }
    }

    /// Left scalar multiplication `c · f`.
    pub fn scale(&self, c: Elem) -> OrePoly {
        let l = self.ring.ctx.l();
        Self::from_terms(&self.ring, self.terms.iter().map(|(u, &a)| (u.clone(), l.mul(c, a))))
    }

    /// Bilinear extension of `(a X^u)(b X^v) = a Φ^{e·u}(b) X^{u+v}`.
    pub fn checked_mul(&self, o: &OrePoly) -> Result<OrePoly> {
        self.same_ring(o)?;
        let ctx = &self.ring.ctx;
        let l = ctx.l();
        let mut out = Self::zero(&self.ring);
        for (u, &a) in &self.terms {
            let s = self.ring.twist.pairing(u);
            for (v, &b) in &o.terms {
                out.add_term(u.add(v), l.mul(a, ctx.frobenius(b, s)));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> OrePoly {
        (0..k).fold(Self::one(&self.ring), |acc, _| &acc * self)
    }

    /// Total degree of a polynomial with nonnegative support; `None` for zero.
    pub fn total_degree(&self) -> Result<Option<u32>> {
        if let Some(u) = self.terms.keys().find(|u| !u.is_nonnegative()) {
            return Err(Error::NegativeExponent(u.0.clone()));
        }
        Ok(self.terms.keys().map(|u| u.degree() as u32).max())
    }

    pub fn supported_in(&self, s: &Simplex) -> bool {
        self.terms.keys().all(|u| s.contains(u))
    }

    /// Support in the lattice and coefficients in `F_q`.
    pub fn is_central(&self) -> bool {
        let ctx = &self.ring.ctx;
        self.terms.iter().all(|(u, &c)| self.ring.twist.lattice_member(u) && ctx.in_base(c))
    }

    pub fn to_central(&self) -> Result<CentralPoly> {
        CentralPoly::from_ore(self)
    }

    pub fn export(&self) -> Vec<TermRecord> {
        let l = self.ring.ctx.l();
        self.terms.iter().map(|(u, &c)| TermRecord { exponent: u.0.clone(), coefficient: l.digits(c) }).collect()
    }

    pub fn import(ring: &Arc<OreRing>, records: &[TermRecord]) -> Result<OrePoly> {
        let l = ring.ctx.l();
        let mut terms = Vec::with_capacity(records.len());
        for t in records {
            if t.exponent.len() != ring.m() {
                return Err(Error::DimensionMismatch { expected: ring.m(), got: t.exponent.len() });
            }
            terms.push((ExpVec(t.exponent.clone()), l.from_digits(&t.coefficient)?));
        }
        Ok(Self::from_terms(ring, terms))
    }
}

impl Add for &OrePoly {
    type Output = OrePoly;

    fn add(self, o: &OrePoly) -> OrePoly {
        self.checked_add(o).expect("ring mismatch")
    }
}

impl Sub for &OrePoly {
    type Output = OrePoly;

    fn sub(self, o: &OrePoly) -> OrePoly {
        self.checked_sub(o).expect("ring mismatch")
    }
}

impl Mul for &OrePoly {
    type Output = OrePoly;

    fn mul(self, o: &OrePoly) -> OrePoly {
        self.checked_mul(o).expect("ring mismatch")
    }
}

impl Neg for &OrePoly {
    type Output = OrePoly;

    fn neg(self) -> OrePoly {
        OrePoly::neg(self)
    }
}

/// An element of the centre `F_q[X^L]`: a Laurent polynomial over `F_q`
/// supported on the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralPoly {
    twist: TwistVector,
    poly: LaurentPoly,
}

impl CentralPoly {
    /// Checks lattice support; coefficients are `F_q` elements.
    pub fn new(twist: TwistVector, poly: LaurentPoly) -> Result<Self> {
        if let Some(u) = poly.terms().keys().find(|u| !twist.lattice_member(u)) {
            return Err(Error::NotCentral(format!("exponent {:?} is not in the lattice", u.0)));
        }
        Ok(CentralPoly { twist, poly })
    }

    pub fn from_ore(f: &OrePoly) -> Result<Self> {
        let ctx = f.ring.ctx();
        let mut terms = Vec::with_capacity(f.terms.len());
        for (u, &c) in &f.terms {
            let b = ctx.restrict(c).ok_or_else(|| Error::NotCentral(format!("coefficient of {:?} is not in F_q", u.0)))?;
            terms.push((u.clone(), b));
        }
        Self::new(f.ring.twist.clone(), LaurentPoly::from_terms(f.ring.m(), terms, ctx.fq()))
    }

    pub fn to_ore(&self, ring: &Arc<OreRing>) -> OrePoly {
        let ctx = ring.ctx();
        OrePoly::from_terms(ring, self.poly.terms().iter().map(|(u, &c)| (u.clone(), ctx.embed(c))))
    }

    pub fn twist(&self) -> &TwistVector {
        &self.twist
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, o: &CentralPoly, ctx: &FieldCtx) -> CentralPoly {
        CentralPoly { twist: self.twist.clone(), poly: self.poly.mul(&o.poly, ctx.fq()) }
    }

    pub fn pow(&self, k: u32, ctx: &FieldCtx) -> CentralPoly {
        CentralPoly { twist: self.twist.clone(), poly: self.poly.pow(k, ctx.fq()) }
    }

    /// Total degree for nonnegative support.
    pub fn total_degree(&self) -> Result<Option<u32>> {
        if let Some(u) = self.poly.terms().keys().find(|u| !u.is_nonnegative()) {
            return Err(Error::NegativeExponent(u.0.clone()));
        }
        Ok(self.poly.max_degree().map(|d| d as u32))
    }

    /// The same polynomial in the variables `Z_i = X^{w_i}`.
    pub fn in_basis(&self, basis: &LatticeBasis, fq: &Gf) -> Result<LaurentPoly> {
        let mut terms = Vec::with_capacity(self.poly.len());
        for (u, &c) in self.poly.terms() {
            let z = basis.coords(u).ok_or_else(|| Error::NotLatticeBasis(format!("{:?} has no integer coordinates", u.0)))?;
            terms.push((ExpVec(z), c));
        }
        Ok(LaurentPoly::from_terms(self.poly.nvars(), terms, fq))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, a: u32, r: u32, e: &[i64]) -> Arc<OreRing> {
        let ctx = Arc::new(FieldCtx::new(p, a, r).unwrap());
        OreRing::new(ctx, TwistVector::new(e.to_vec(), r).unwrap()).unwrap()
    }

    fn ev(v: &[i64]) -> ExpVec {
        ExpVec(v.to_vec())
    }

    #[test]
    fn commutation_rule() {
        let rg = ring(3, 1, 2, &[1]);
        let z = Elem(3);
        let x = OrePoly::var(&rg, 0);
        let zx = OrePoly::monomial(&rg, z, ev(&[1]));
        let prod = &x * &zx;
        let l = rg.ctx().l();
        assert_eq!(prod, OrePoly::monomial(&rg, l.neg(z), ev(&[2])));
        let a = OrePoly::constant(&rg, z);
        assert_eq!(&x * &a, OrePoly::monomial(&rg, rg.ctx().frobenius(z, 1), ev(&[1])));
        let one = OrePoly::one(&rg);
        assert_eq!(&one * &zx, zx);
        assert_eq!(&zx * &one, zx);
    }

    #[test]
    fn add_and_cancel() {
        let rg = ring(2, 1, 3, &[1, 2]);
        let f = OrePoly::from_terms(&rg, [(ev(&[1, 0]), Elem(3)), (ev(&[-1, 2]), Elem(5))]);
        assert_eq!(&f + &OrePoly::zero(&rg), f);
        assert!((&f + &f.neg()).is_zero());
        assert_eq!(f.scale(Elem(1)), f);
        assert!(f.total_degree().is_err());
        assert_eq!(OrePoly::zero(&rg).total_degree().unwrap(), None);
    }

    #[test]
    fn centrality_examples() {
        let rg = ring(3, 1, 4, &[3, 2]);
        assert!(OrePoly::constant(&rg, rg.ctx().embed(Elem(2))).is_central());
        assert!(OrePoly::monomial(&rg, Elem::ONE, ev(&[4, 0])).is_central());
        assert!(!OrePoly::monomial(&rg, Elem::ONE, ev(&[1, 1])).is_central());
        let non_fq = rg.ctx().generator();
        assert!(!OrePoly::monomial(&rg, non_fq, ev(&[4, 0])).is_central());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ring(3, 1, 2, &[1]);
        let b = ring(3, 1, 2, &[1, 1]);
        let r = OrePoly::one(&a).checked_mul(&OrePoly::one(&b));
        assert!(matches!(r, Err(Error::RingMismatch)));
        // structurally equal rings are compatible
        let c = ring(3, 1, 2, &[1]);
        assert!(OrePoly::one(&a).checked_add(&OrePoly::one(&c)).is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let rg = ring(2, 2, 2, &[0, 1]);
        let f = OrePoly::from_terms(&rg, [(ev(&[1, 0]), Elem(7)), (ev(&[0, 3]), Elem(2))]);
        let s = serde_json::to_string(&f.export()).unwrap();
        let back: Vec<TermRecord> = serde_json::from_str(&s).unwrap();
        assert_eq!(OrePoly::import(&rg, &back).unwrap(), f);
    }
}
