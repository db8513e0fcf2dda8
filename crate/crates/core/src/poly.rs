//! Commutative polynomials over a [`Gf`]: sparse multivariate Laurent
//! polynomials and dense univariate polynomials.

use std::collections::BTreeMap;

use crate::field::{Elem, Gf};
use crate::lattice::ExpVec;

/// A Laurent polynomial in `m` commuting variables; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    m: usize,
    terms: BTreeMap<ExpVec, Elem>,
}

impl LaurentPoly {
    pub fn zero(m: usize) -> Self {
        LaurentPoly { m, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, c: Elem) -> Self {
        Self::monomial(c, ExpVec::zero(m))
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Elem::ONE)
    }

    pub fn monomial(c: Elem, u: ExpVec) -> Self {
        let mut p = Self::zero(u.dim());
        if !c.is_zero() {
            p.terms.insert(u, c);
        }
        p
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (ExpVec, Elem)>, f: &Gf) -> Self {
        let mut p = Self::zero(m);
        for (u, c) in terms {
            p.add_term(u, c, f);
        }
        p
    }

    pub fn add_term(&mut self, u: ExpVec, c: Elem, f: &Gf) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(u.dim(), self.m);
        let entry = self.terms.entry(u);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &ExpVec) -> Elem {
        self.terms.get(u).copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, o: &LaurentPoly, f: &Gf) -> LaurentPoly {
        let mut out = self.clone();
        for (u, &c) in &o.terms {
            out.add_term(u.clone(), c, f);
        }
        out
    }

    pub fn neg(&self, f: &Gf) -> LaurentPoly {
        LaurentPoly { m: self.m, terms: self.terms.iter().map(|(u, &c)| (u.clone(), f.neg(c))).collect() }
    }

    pub fn sub(&self, o: &LaurentPoly, f: &Gf) -> LaurentPoly {
        self.add(&o.neg(f), f)
    }

    pub fn scale(&self, c: Elem, f: &Gf) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        LaurentPoly { m: self.m, terms: self.terms.iter().map(|(u, &a)| (u.clone(), f.mul(c, a))).collect() }
    }

    pub fn mul(&self, o: &LaurentPoly, f: &Gf) -> LaurentPoly {
        let mut out = Self::zero(self.m);
        for (u, &a) in &self.terms {
            for (v, &b) in &o.terms {
                out.add_term(u.add(v), f.mul(a, b), f);
            }
        }
        out
    }

    pub fn pow(&self, k: u32, f: &Gf) -> LaurentPoly {
        (0..k).fold(Self::one(self.m), |acc, _| acc.mul(self, f))
    }

    /// Multiplies by the monomial `X^u`.
    pub fn shift(&self, u: &ExpVec) -> LaurentPoly {
        LaurentPoly { m: self.m, terms: self.terms.iter().map(|(v, &c)| (v.add(u), c)).collect() }
    }

    pub fn map_coeffs(&self, mut g: impl FnMut(Elem) -> Elem) -> LaurentPoly {
        let terms = self.terms.iter().map(|(u, &c)| (u.clone(), g(c))).filter(|(_, c)| !c.is_zero()).collect();
        LaurentPoly { m: self.m, terms }
    }

    /// Largest coordinate sum of a term; `None` for zero.
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|u| u.degree()).max()
    }

    /// Coordinatewise minimum of the exponents (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> ExpVec {
        let mut lo = vec![i64::MAX; self.m];
        for u in self.terms.keys() {
            for (l, &x) in lo.iter_mut().zip(&u.0) {
                *l = (*l).min(x);
            }
        }
        if self.terms.is_empty() {
            lo.iter_mut().for_each(|l| *l = 0);
        }
        ExpVec(lo)
    }

    /// Value at a point with nonzero coordinates (or any point if all
    /// exponents are nonnegative).
    pub fn eval(&self, point: &[Elem], f: &Gf) -> Elem {
        f.sum(self.terms.iter().map(|(u, &c)| {
            u.0.iter().zip(point).fold(c, |acc, (&k, &x)| f.mul(acc, f.pow(x, k)))
        }))
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * crate::lattice::binomial(ni, ki) % p;
        n /= p;
        k /= p;
    }
    acc as u32
}

/// Order of vanishing at `point` (all coordinates nonzero) of a Laurent
/// polynomial, i.e. the lowest total degree surviving the Taylor shift
/// `Z_i ↦ Z_i + point_i` after clearing negative exponents. `None` for zero.
pub fn order_at(g: &LaurentPoly, point: &[Elem], f: &Gf) -> Option<u32> {
    if g.is_zero() {
        return None;
    }
    assert!(point.iter().all(|c| !c.is_zero()), "order_at needs a point in the torus");
    let m = g.nvars();
    let g = g.shift(&g.min_exponents().scale(-1));
    let p = f.characteristic();
    let mut shifted = LaurentPoly::zero(m);
    for (u, &c) in g.terms() {
        let mut partial = vec![(vec![0i64; m], c)];
        for i in 0..m {
            let n = u.0[i] as u64;
            let mut next = Vec::with_capacity(partial.len() * (n as usize + 1));
            for (exp, c0) in &partial {
                for k in 0..=n {
                    let b = binomial_mod(n, k, p);
                    if b == 0 {
                        continue;
                    }
                    let coef = f.mul(f.mul(*c0, f.from_int(b as i64)), f.pow(point[i], (n - k) as i64));
                    if coef.is_zero() {
                        continue;
                    }
                    let mut e = exp.clone();
                    e[i] = k as i64;
                    next.push((e, coef));
                }
            }
            partial = next;
        }
        for (e, c0) in partial {
            shifted.add_term(ExpVec(e), c0, f);
        }
    }
    shifted.terms().keys().map(|u| u.degree() as u32).min()
}

/// A dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Elem>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Elem::ONE)
    }

    /// `Y - a`.
    pub fn linear(a: Elem, f: &Gf) -> Self {
        Self::new(vec![f.neg(a), Elem::ONE])
    }

    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut v = vec![Elem::ZERO; k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, o: &UPoly, f: &Gf) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &UPoly, f: &Gf) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem, f: &Gf) -> UPoly {
        Self::new(self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    pub fn mul(&self, o: &UPoly, f: &Gf) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32, f: &Gf) -> UPoly {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self, f))
    }

    pub fn eval(&self, x: Elem, f: &Gf) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &Gf) -> UPoly {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect())
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &UPoly, f: &Gf) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.leading()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::ZERO; r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = f.mul(*r.last().unwrap(), inv);
            q[k] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, b));
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &UPoly, f: &Gf) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, f).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = f.inv(a.leading()).unwrap();
        a.scale(inv, f)
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: Elem, f: &Gf) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = Self::linear(a, f);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(&lin, f);
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    pub fn map_coeffs(&self, g: impl FnMut(&Elem) -> Elem) -> UPoly {
        Self::new(self.coeffs.iter().map(g).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExpVec {
        ExpVec(v.to_vec())
    }

    #[test]
    fn laurent_arithmetic() {
        let f = Gf::new(3, 1).unwrap();
        let x = LaurentPoly::monomial(Elem::ONE, ev(&[1, 0]));
        let y_inv = LaurentPoly::monomial(Elem(2), ev(&[0, -1]));
        let s = x.add(&y_inv, &f);
        let sq = s.mul(&s, &f);
        // (x + 2/y)^2 = x^2 + 4x/y + 4/y^2 = x^2 + x/y + 1/y^2 over F_3
        assert_eq!(sq.coeff(&ev(&[2, 0])), Elem(1));
        assert_eq!(sq.coeff(&ev(&[1, -1])), Elem(1));
        assert_eq!(sq.coeff(&ev(&[0, -2])), Elem(1));
        assert_eq!(sq.len(), 3);
        assert!(s.sub(&s, &f).is_zero());
        assert_eq!(sq.min_exponents(), ev(&[0, -2]));
    }

    #[test]
    fn lucas_binomials() {
        for p in [2u32, 3, 5, 7] {
            for n in 0..30u64 {
                for k in 0..=n {
                    assert_eq!(binomial_mod(n, k, p) as u64, (crate::lattice::binomial(n, k) % p as u64), "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn order_examples() {
        let f = Gf::new(5, 1).unwrap();
        let c = Elem(3);
        let z_minus_c = LaurentPoly::from_terms(2, [(ev(&[1, 0]), Elem::ONE), (ev(&[0, 0]), f.neg(c))], &f);
        let sq = z_minus_c.mul(&z_minus_c, &f);
        assert_eq!(order_at(&sq, &[c, Elem(1)], &f), Some(2));
        assert_eq!(order_at(&sq, &[Elem(2), Elem(1)], &f), Some(0));
        assert_eq!(order_at(&LaurentPoly::constant(2, Elem(4)), &[c, c], &f), Some(0));
        assert_eq!(order_at(&LaurentPoly::zero(2), &[c, c], &f), None);
        // a unit monomial factor does not change the order
        let shifted = sq.shift(&ev(&[-3, 2]));
        assert_eq!(order_at(&shifted, &[c, Elem(2)], &f), Some(2));
    }

    #[test]
    fn order_in_characteristic_dividing_exponent() {
        // Z^3 - 1 = (Z - 1)^3 over F_3
        let f = Gf::new(3, 1).unwrap();
        let g = LaurentPoly::from_terms(1, [(ev(&[3]), Elem::ONE), (ev(&[0]), Elem(2))], &f);
        assert_eq!(order_at(&g, &[Elem(1)], &f), Some(3));
        assert_eq!(order_at(&g, &[Elem(2)], &f), Some(0));
    }

    #[test]
    fn univariate_division_and_gcd() {
        let f = Gf::new(7, 1).unwrap();
        let a = UPoly::linear(Elem(2), &f);
        let b = UPoly::linear(Elem(5), &f);
        let ab = a.mul(&b, &f);
        let aab = ab.mul(&a, &f);
        let (q, r) = aab.div_rem(&ab, &f);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(aab.gcd(&a.mul(&UPoly::linear(Elem(1), &f), &f), &f), a);
        assert_eq!(aab.root_multiplicity(Elem(2), &f), 2);
        assert_eq!(aab.root_multiplicity(Elem(5), &f), 1);
        assert_eq!(aab.root_multiplicity(Elem(0), &f), 0);
        assert_eq!(aab.eval(Elem(2), &f), Elem::ZERO);
        assert_eq!(ab.derivative(&f), a.add(&b, &f));
    }
}
