//! Embedding of simplex LRM codes into linearized Algebraic Geometry codes.
//!
//! The centre `F_q[X^L] ≅ F_q[Z^{±1}]` is sent into `F_{q^n}(Y)` by
//! `Z_i ↦ B_i(Y)`, where `B_i` interpolates the trace form `β_i` on the
//! subspace `E ⊂ F_{q^n}`. The monomial `X^v` (with `e·v ≡ 1 mod r`) goes to
//! the variable `T` of `L_n(Y)[T; θ] / (T^r − P(Y))`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::{DegreeSpec, LrmCode};
use crate::error::{Error, Result};
use crate::eval::{evaluate, kernel_dim, EvalPoint};
use crate::field::{Elem, FieldCtx, Gf, Tower};
use crate::lattice::{gcd, ExpVec, LatticeBasis, TwistVector};
use crate::linalg::Matrix;
use crate::ore::OrePoly;
use crate::poly::UPoly;
use crate::sample::random_message;

/// The smallest `n` in `[m, m + r]` coprime to `r`.
pub fn choose_n(m: usize, r: u32) -> u32 {
    (m as u32..=m as u32 + r).find(|&n| gcd(n as i64, r as i64) == 1).expect("m + 1 or m is coprime to r")
}

/// `F_q ⊂ L`, `F_q ⊂ F_{q^n}` and `L, F_{q^n} ⊂ L_n` with compatible embeddings.
#[derive(Clone, Debug)]
pub struct BigFieldCtx {
    ctx: Arc<FieldCtx>,
    n: u32,
    n_inv: u32,
    // F_q ⊂ F_{q^n}, basis b_1..b_n
    fqn: Tower,
    // L ⊂ L_n
    l_in_ln: Tower,
    // F_{q^n} ⊂ L_n, basis = images of the F_q-basis of L
    fqn_in_ln: Tower,
}

impl BigFieldCtx {
    pub fn new(ctx: Arc<FieldCtx>, n: u32) -> Result<Self> {
        let r = ctx.r();
        if n == 0 || gcd(n as i64, r as i64) != 1 {
            return Err(Error::InvalidLag(format!("n = {n} must be positive and coprime to r = {r}")));
        }
        let (p, a) = (ctx.p(), ctx.a());
        let fqn_gf = Arc::new(Gf::new(p, a * n)?);
        let ln_gf = Arc::new(Gf::new(p, a * r * n)?);
        let l_in_ln = Tower::new(ctx.tower().ext().clone(), ln_gf.clone())?;
        let basis_ln: Vec<Elem> = ctx.basis().iter().map(|&b| l_in_ln.embed(b)).collect();
        let fqn_in_ln = Tower::new(fqn_gf.clone(), ln_gf)?.with_basis(basis_ln)?;
        // send the generator class of F_q where L_n sees it
        let fq = ctx.tower().base().clone();
        let root = if a > 1 {
            let x = l_in_ln.embed(ctx.embed(Elem(p)));
            fqn_in_ln.restrict(x).ok_or_else(|| Error::InvalidLag("F_q does not land in F_{q^n}".into()))?
        } else {
            // F_p: the modulus is linear, its root is the field's own
            (0..p).map(Elem).find(|&x| fqn_gf.eval_fp_poly(fq.modulus(), x).is_zero()).expect("linear modulus has a root")
        };
        let g = fqn_gf.primitive();
        let b = (0..n as i64).map(|i| fqn_gf.pow(g, i)).collect();
        let fqn = Tower::with_root(fq, fqn_gf, root, b)?;
        let n_inv = crate::lattice::mod_inverse(n as i64, r as i64).unwrap_or(0) as u32;
        Ok(BigFieldCtx { ctx, n, n_inv, fqn, l_in_ln, fqn_in_ln })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `n'` with `n·n' ≡ 1 mod r`.
    pub fn n_inv(&self) -> u32 {
        self.n_inv
    }

    pub fn fqn(&self) -> &Gf {
        self.fqn.ext()
    }

    pub fn ln(&self) -> &Gf {
        self.l_in_ln.ext()
    }

    /// `F_q ⊂ F_{q^n}` with the basis `b_1, …, b_n`.
    pub fn fq_tower(&self) -> &Tower {
        &self.fqn
    }

    /// `F_{q^n} ⊂ L_n` with the basis coming from `L`.
    pub fn ln_tower(&self) -> &Tower {
        &self.fqn_in_ln
    }

    pub fn embed_fq(&self, x: Elem) -> Elem {
        self.fqn.embed(x)
    }

    pub fn embed_l(&self, x: Elem) -> Elem {
        self.l_in_ln.embed(x)
    }

    pub fn embed_fqn(&self, x: Elem) -> Elem {
        self.fqn_in_ln.embed(x)
    }

    /// `θ = Φ_n^{n'}`: identity on `F_{q^n}`, `x ↦ x^q` on `L`.
    pub fn theta(&self, x: Elem, i: i64) -> Elem {
        self.fqn_in_ln.frobenius(x, i * self.n_inv as i64)
    }

    /// `x ↦ x^q` on `F_{q^n}`.
    pub fn phi(&self, x: Elem, i: i64) -> Elem {
        self.fqn.frobenius(x, i)
    }
}

/// An element of `F_{q^n}[U; Φ]` with `U·c = Φ(c)·U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniOrePoly {
    coeffs: Vec<Elem>,
}

impl UniOrePoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniOrePoly { coeffs }
    }

    pub fn zero() -> Self {
        UniOrePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniOrePoly { coeffs: vec![Elem::ONE] }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &UniOrePoly, f: &Gf) -> UniOrePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[Elem], i: usize| v.get(i).copied().unwrap_or(Elem::ZERO);
        UniOrePoly::new((0..n).map(|i| f.add(get(&self.coeffs, i), get(&o.coeffs, i))).collect())
    }

    pub fn sub(&self, o: &UniOrePoly, f: &Gf) -> UniOrePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[Elem], i: usize| v.get(i).copied().unwrap_or(Elem::ZERO);
        UniOrePoly::new((0..n).map(|i| f.sub(get(&self.coeffs, i), get(&o.coeffs, i))).collect())
    }

    pub fn mul(&self, o: &UniOrePoly, big: &BigFieldCtx) -> UniOrePoly {
        let f = big.fqn();
        if self.is_zero() || o.is_zero() {
            return UniOrePoly::zero();
        }
        let mut c = vec![Elem::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, big.phi(b, i as i64)));
            }
        }
        UniOrePoly::new(c)
    }

    /// `(q, rem)` with `self = q·g + rem` and `deg rem < deg g`.
    pub fn rdiv(&self, g: &UniOrePoly, big: &BigFieldCtx) -> Result<(UniOrePoly, UniOrePoly)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = big.fqn();
        let lg = *g.coeffs.last().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![Elem::ZERO; self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree().filter(|&d| d >= dg) {
            let k = dr - dg;
            let c = f.div(*rem.coeffs.last().unwrap(), big.phi(lg, k as i64));
            quot[k] = c;
            let mut term = vec![Elem::ZERO; k + 1];
            term[k] = c;
            rem = rem.sub(&UniOrePoly::new(term).mul(g, big), f);
        }
        Ok((UniOrePoly::new(quot), rem))
    }

    /// Monic generator of the left ideal generated by the inputs.
    pub fn rgcd(polys: &[UniOrePoly], big: &BigFieldCtx) -> UniOrePoly {
        let f = big.fqn();
        let mut acc = UniOrePoly::zero();
        for p in polys {
            let (mut a, mut b) = (p.clone(), acc);
            while !b.is_zero() {
                let (_, rem) = a.rdiv(&b, big).expect("nonzero divisor");
                a = b;
                b = rem;
            }
            acc = a;
        }
        match acc.coeffs.last() {
            None => acc,
            Some(&lc) => {
                let inv = f.inv(lc).expect("leading coefficient is nonzero");
                UniOrePoly::new(acc.coeffs.iter().map(|&c| f.mul(inv, c)).collect())
            }
        }
    }

    /// `Σ c_j Φ^j(y)`.
    pub fn apply(&self, y: Elem, big: &BigFieldCtx) -> Elem {
        let f = big.fqn();
        f.sum(self.coeffs.iter().enumerate().map(|(j, &c)| f.mul(c, big.phi(y, j as i64))))
    }

    /// The linearized polynomial `Σ c_j Y^{q^j}`.
    pub fn linearized(&self, q: u64) -> UPoly {
        let Some(deg) = self.degree() else {
            return UPoly::zero();
        };
        let mut c = vec![Elem::ZERO; q.pow(deg as u32) as usize + 1];
        for (j, &x) in self.coeffs.iter().enumerate() {
            c[q.pow(j as u32) as usize] = x;
        }
        UPoly::new(c)
    }
}

/// The trace forms `β_i(y) = Tr(b_i y)` and the polynomials `B_i`.
#[derive(Clone, Debug)]
pub struct TraceFormData {
    m: usize,
    // β(y) for each code y of F_{q^n}
    beta: Vec<Vec<Elem>>,
    beta_inv: HashMap<Vec<Elem>, Elem>,
    t_gt: UniOrePoly,
    b_tilde: Vec<UniOrePoly>,
    b: Vec<UPoly>,
}

impl TraceFormData {
    pub fn compute(big: &BigFieldCtx, m: usize) -> Result<Self> {
        let n = big.n() as usize;
        if n < m {
            return Err(Error::InvalidLag(format!("n = {n} is smaller than m = {m}")));
        }
        let fqn = big.fqn();
        let tower = big.fq_tower();
        let mut beta = Vec::with_capacity(fqn.order() as usize);
        let mut beta_inv = HashMap::new();
        for y in fqn.elements() {
            let v: Vec<Elem> = tower.basis().iter().map(|&b| tower.trace(fqn.mul(b, y))).collect();
            beta_inv.insert(v.clone(), y);
            beta.push(v);
        }
        if beta_inv.len() != fqn.order() as usize {
            return Err(Error::Invariant("the trace forms are not a bijection".into()));
        }
        let t: Vec<UniOrePoly> =
            tower.basis().iter().map(|&b| UniOrePoly::new((0..n as i64).map(|j| big.phi(b, j)).collect())).collect();
        // U^n − 1 kills all of F_{q^n}; it makes the gcd right when n = m
        let mut top = vec![Elem::ZERO; n + 1];
        top[0] = fqn.neg(Elem::ONE);
        top[n] = Elem::ONE;
        let mut vanish = vec![UniOrePoly::new(top)];
        vanish.extend(t[m..].iter().cloned());
        let t_gt = UniOrePoly::rgcd(&vanish, big);
        if t_gt.degree() != Some(m) {
            return Err(Error::Invariant(format!("right gcd has degree {:?}, expected {m}", t_gt.degree())));
        }
        let b_tilde = t[..m].iter().map(|ti| ti.rdiv(&t_gt, big).map(|(_, rem)| rem)).collect::<Result<Vec<_>>>()?;
        let q = big.ctx().q();
        let b = b_tilde.iter().map(|bt| bt.linearized(q)).collect();
        Ok(TraceFormData { m, beta, beta_inv, t_gt, b_tilde, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(β_1(y), …, β_n(y))`.
    pub fn beta(&self, y: Elem) -> &[Elem] {
        &self.beta[y.0 as usize]
    }

    pub fn beta_inverse(&self, v: &[Elem]) -> Option<Elem> {
        self.beta_inv.get(v).copied()
    }

    /// `β_{≤m}^{-1}(x)` inside `E`.
    pub fn point_of(&self, x: &[Elem]) -> Option<Elem> {
        let n = self.beta[0].len();
        let mut v = x.to_vec();
        v.resize(n, Elem::ZERO);
        self.beta_inverse(&v)
    }

    /// The `q^m` points of `E`, lexicographic in `β_{≤m}`.
    pub fn subspace_e(&self, fq: &Gf) -> Vec<Elem> {
        let q = fq.order() as u64;
        (0..q.pow(self.m as u32))
            .map(|mut idx| {
                let mut x = vec![Elem::ZERO; self.m];
                for i in (0..self.m).rev() {
                    x[i] = Elem((idx % q) as u32);
                    idx /= q;
                }
                self.point_of(&x).expect("β is onto")
            })
            .collect()
    }

    /// `rgcd(U^n − 1, T_{m+1}, …, T_n)`.
    pub fn t_gt(&self) -> &UniOrePoly {
        &self.t_gt
    }

    pub fn b_tilde(&self) -> &[UniOrePoly] {
        &self.b_tilde
    }

    pub fn b(&self) -> &[UPoly] {
        &self.b
    }

    /// Exact degree, separability, nonzero linear term and agreement with `β_i` on `E`.
    pub fn verify(&self, big: &BigFieldCtx) -> Result<()> {
        let fqn = big.fqn();
        let q = big.ctx().q();
        let expected = q.pow(self.m as u32 - 1) as usize;
        let e = self.subspace_e(big.ctx().fq());
        for (i, bi) in self.b.iter().enumerate() {
            if bi.degree() != Some(expected) {
                return Err(Error::Invariant(format!("B_{} has degree {:?}, expected {expected}", i + 1, bi.degree())));
            }
            if bi.coeff(1).is_zero() || bi.gcd(&bi.derivative(fqn), fqn).degree() != Some(0) {
                return Err(Error::Invariant(format!("B_{} is not separable", i + 1)));
            }
            for &y in &e {
                if bi.eval(y, fqn) != big.embed_fq(self.beta(y)[i]) {
                    return Err(Error::Invariant(format!("B_{} differs from β_{} at {}", i + 1, i + 1, y.0)));
                }
            }
        }
        Ok(())
    }
}

/// `B^{-κ} · Σ u_i(Y) T^i` with `u_i ∈ L_n[Y]` and `B^κ = B_1^{κ_1} ⋯ B_m^{κ_m}`.
///
/// The `B_i` have coefficients in `F_{q^n}`, so `B^κ` is central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagElement {
    pub coeffs: Vec<UPoly>,
    pub den: Vec<u32>,
}

impl LagElement {
    pub fn zero(r: u32, m: usize) -> Self {
        LagElement { coeffs: vec![UPoly::zero(); r as usize], den: vec![0; m] }
    }

    pub fn one(r: u32, m: usize) -> Self {
        let mut x = Self::zero(r, m);
        x.coeffs[0] = UPoly::one();
        x
    }

    /// `c · T^i`.
    pub fn monomial(r: u32, m: usize, c: Elem, i: usize) -> Self {
        let mut x = Self::zero(r, m);
        x.coeffs[i] = UPoly::constant(c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(UPoly::is_zero)
    }

    pub fn has_denominator(&self) -> bool {
        self.den.iter().any(|&k| k > 0)
    }
}

/// Everything needed to map a simplex code into `Λ_P` and evaluate there.
#[derive(Clone, Debug)]
pub struct LagContext {
    big: BigFieldCtx,
    twist: TwistVector,
    basis: LatticeBasis,
    forms: TraceFormData,
    v: ExpVec,
    mu: Vec<i64>,
    // P over F_{q^n} and over L_n
    p: UPoly,
    p_ln: UPoly,
    // B_i over L_n
    b_ln: Vec<UPoly>,
    points: Vec<Elem>,
}

impl LagContext {
    pub fn new(code: &LrmCode, n: u32) -> Result<Self> {
        let DegreeSpec::Simplex { basis, experimental: false, .. } = code.spec() else {
            return Err(Error::InvalidLag("the embedding needs a simplex code on a lattice basis".into()));
        };
        let twist = code.ring().twist().clone();
        let basis = LatticeBasis::new(&twist, basis.iter().cloned().map(ExpVec).collect())?;
        let m = twist.m();
        let r = twist.r() as i64;
        if (n as usize) < m {
            return Err(Error::InvalidLag(format!("n = {n} is smaller than m = {m}")));
        }
        let big = BigFieldCtx::new(code.ring().ctx().clone(), n)?;
        let forms = TraceFormData::compute(&big, m)?;
        forms.verify(&big)?;

        let v0 = unit_pairing_vector(&twist);
        let raw = basis.coords(&v0.scale(r)).expect("r·v lies in the lattice");
        let mu: Vec<i64> = raw.iter().map(|x| x.rem_euclid(r)).collect();
        let shift: Vec<i64> = raw.iter().zip(&mu).map(|(x, y)| (x - y) / r).collect();
        let v = v0.sub(&basis.combine(&shift));
        debug_assert_eq!(basis.combine(&mu), v.scale(r));

        let fqn = big.fqn();
        let p = forms.b.iter().zip(&mu).fold(UPoly::one(), |acc, (b, &k)| acc.mul(&b.pow(k as u32, fqn), fqn));
        let to_ln = |u: &UPoly| u.map_coeffs(|&c| big.embed_fqn(c));
        let p_ln = to_ln(&p);
        let b_ln = forms.b.iter().map(to_ln).collect();
        let points = code
            .points()
            .iter()
            .map(|pt| {
                let ch = pt.cocycle().character();
                let vals: Vec<Elem> = basis.vectors().iter().map(|w| ch.value(w, code.ctx())).collect::<Result<_>>()?;
                forms.point_of(&vals).ok_or_else(|| Error::InvalidLag("β is not onto".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LagContext { big, twist, basis, forms, v, mu, p, p_ln, b_ln, points })
    }

    pub fn big(&self) -> &BigFieldCtx {
        &self.big
    }

    pub fn forms(&self) -> &TraceFormData {
        &self.forms
    }

    pub fn v(&self) -> &ExpVec {
        &self.v
    }

    /// Coordinates of `r·v` in the lattice basis.
    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn p(&self) -> &UPoly {
        &self.p
    }

    pub fn deg_p(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }

    /// The point `y` of each evaluation point of the code, in order.
    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    /// `q^{m-1}·r·d`.
    pub fn bound(&self, d: u32) -> u64 {
        let q = self.big.ctx().q();
        q.pow(self.twist.m() as u32 - 1) * self.twist.r() as u64 * d as u64
    }

    /// `y_i = β_{≤m}^{-1}(1, …, 1, 0, 1, …, 1)` with the zero in position `i`.
    pub fn witness(&self, i: usize) -> Elem {
        let mut x = vec![Elem::ONE; self.twist.m()];
        x[i] = Elem::ZERO;
        self.forms.point_of(&x).expect("β is onto")
    }

    /// Orders of vanishing of `P` at the witnesses.
    pub fn witness_orders(&self) -> Vec<u32> {
        (0..self.twist.m()).map(|i| self.p.root_multiplicity(self.witness(i), self.big.fqn())).collect()
    }

    /// The gcd of `r` and all orders of vanishing of `P` on `F_{q^n}`; the
    /// algebra is a division algebra when this is `1`.
    pub fn division_gcd(&self) -> i64 {
        let fqn = self.big.fqn();
        let g = fqn
            .elements()
            .filter(|&y| self.p.eval(y, fqn).is_zero())
            .fold(0i64, |acc, y| gcd(acc, self.p.root_multiplicity(y, fqn) as i64));
        gcd(g, self.twist.r() as i64)
    }

    fn b_power(&self, k: &[u32]) -> UPoly {
        let ln = self.big.ln();
        self.b_ln.iter().zip(k).fold(UPoly::one(), |acc, (b, &e)| acc.mul(&b.pow(e, ln), ln))
    }

    /// Rewrites `x` over the denominator `B^κ` (componentwise at least `x.den`).
    fn lift(&self, x: &LagElement, den: &[u32]) -> Vec<UPoly> {
        let ln = self.big.ln();
        let extra: Vec<u32> = den.iter().zip(&x.den).map(|(a, b)| a - b).collect();
        let f = self.b_power(&extra);
        x.coeffs.iter().map(|u| u.mul(&f, ln)).collect()
    }

    pub fn add(&self, x: &LagElement, y: &LagElement) -> LagElement {
        let ln = self.big.ln();
        let den: Vec<u32> = x.den.iter().zip(&y.den).map(|(&a, &b)| a.max(b)).collect();
        let (a, b) = (self.lift(x, &den), self.lift(y, &den));
        LagElement { coeffs: a.iter().zip(&b).map(|(u, v)| u.add(v, ln)).collect(), den }
    }

    /// Equality in `Λ_P[1/B]`.
    pub fn same(&self, x: &LagElement, y: &LagElement) -> bool {
        let den: Vec<u32> = x.den.iter().zip(&y.den).map(|(&a, &b)| a.max(b)).collect();
        self.lift(x, &den) == self.lift(y, &den)
    }

    /// `ι(a X^u) = a · B_1^{λ_1} ⋯ B_m^{λ_m} · T^λ` with `u = Σ λ_i w_i + λ v`.
    ///
    /// Negative `λ_i` become denominators.
    pub fn iota(&self, f: &OrePoly) -> Result<LagElement> {
        if f.ring().twist() != &self.twist {
            return Err(Error::RingMismatch);
        }
        let m = self.twist.m();
        let r = self.twist.r();
        let mut out = LagElement::zero(r, m);
        for (u, &a) in f.terms() {
            let lam = self.twist.residue(u) as usize;
            let w = u.sub(&self.v.scale(lam as i64));
            let lams = self.basis.coords(&w).expect("u − λv lies in the lattice");
            let num: Vec<u32> = lams.iter().map(|&k| k.max(0) as u32).collect();
            let den: Vec<u32> = lams.iter().map(|&k| (-k).max(0) as u32).collect();
            let mut term = LagElement::zero(r, m);
            term.coeffs[lam] = self.b_power(&num).scale(self.big.embed_l(a), self.big.ln());
            term.den = den;
            out = self.add(&out, &term);
        }
        Ok(out)
    }

    /// Product under `T·c = θ(c)·T` and `T^r = P(Y)`.
    pub fn mul(&self, x: &LagElement, y: &LagElement) -> LagElement {
        let ln = self.big.ln();
        let r = self.twist.r() as usize;
        let mut out = LagElement::zero(r as u32, self.twist.m());
        out.den = x.den.iter().zip(&y.den).map(|(a, b)| a + b).collect();
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let tb = b.map_coeffs(|&c| self.big.theta(c, i as i64));
                let mut prod = a.mul(&tb, ln);
                let k = i + j;
                if k >= r {
                    prod = prod.mul(&self.p_ln, ln);
                }
                let slot = &mut out.coeffs[k % r];
                *slot = slot.add(&prod, ln);
            }
        }
        out
    }

    /// The numerators, if `x` is a polynomial in `Y` (its denominator divides out).
    pub fn polynomial_part(&self, x: &LagElement) -> Option<Vec<UPoly>> {
        if !x.has_denominator() {
            return Some(x.coeffs.clone());
        }
        let ln = self.big.ln();
        let d = self.b_power(&x.den);
        x.coeffs
            .iter()
            .map(|u| {
                let (q, rem) = u.div_rem(&d, ln);
                rem.is_zero().then_some(q)
            })
            .collect()
    }

    /// Membership in `Λ̃_P(bound)`: `x` is polynomial in `Y` and
    /// `r·deg u_i + i·deg P ≤ bound` for every nonzero `u_i`.
    pub fn lambda_membership(&self, x: &LagElement, bound: u64) -> bool {
        let r = self.twist.r() as u64;
        let dp = self.deg_p() as u64;
        let Some(coeffs) = self.polynomial_part(x) else {
            return false;
        };
        coeffs.iter().enumerate().all(|(i, u)| u.degree().is_none_or(|d| r * d as u64 + i as u64 * dp <= bound))
    }

    /// Membership in `Λ_P(bound)`: writing the `T^i` coefficient as
    /// `u_i / v_i` in lowest terms, `v_i^r` divides `P^i` and
    /// `r·(deg u_i − deg v_i) + i·deg P ≤ bound`.
    pub fn riemann_roch_membership(&self, x: &LagElement, bound: u64) -> bool {
        let ln = self.big.ln();
        let r = self.twist.r();
        let dp = self.deg_p() as i64;
        let d = self.b_power(&x.den);
        x.coeffs.iter().enumerate().all(|(i, u)| {
            if u.is_zero() {
                return true;
            }
            let g = u.gcd(&d, ln);
            let (num, _) = u.div_rem(&g, ln);
            let (den, _) = d.div_rem(&g, ln);
            let pi = self.p_ln.pow(i as u32, ln);
            if !pi.div_rem(&den.pow(r, ln), ln).1.is_zero() {
                return false;
            }
            let deg = |p: &UPoly| p.degree().unwrap_or(0) as i64;
            r as i64 * (deg(&num) - deg(&den)) + i as i64 * dp <= bound as i64
        })
    }

    /// `α_y` with `α_y θ(α_y) ⋯ θ^{r-1}(α_y) = P(y)`.
    pub fn alpha_y(&self, y: Elem) -> Result<Elem> {
        let py = self.p.eval(y, self.big.fqn());
        if py.is_zero() {
            return Err(Error::BadPoint(format!("P vanishes at {}", y.0)));
        }
        self.big.ln_tower().norm_preimage(py)
    }

    /// Matrix over `F_{q^n}` of `Σ u_i(y) (α_y θ)^i`.
    pub fn eta(&self, x: &LagElement, y: Elem) -> Result<Matrix> {
        let fqn = self.big.fqn();
        if self.forms.b.iter().any(|b| b.eval(y, fqn).is_zero()) {
            return Err(Error::BadPoint(format!("B vanishes at {}", y.0)));
        }
        let alpha = self.alpha_y(y)?;
        let ln = self.big.ln();
        let tower = self.big.ln_tower();
        let yl = self.big.embed_fqn(y);
        let scale = ln.inv(self.b_power(&x.den).eval(yl, ln)).expect("B(y) is nonzero");
        let vals: Vec<Elem> = x.coeffs.iter().map(|u| ln.mul(scale, u.eval(yl, ln))).collect();
        // α θ(α) ⋯ θ^{i-1}(α)
        let mut partial = vec![Elem::ONE];
        for i in 1..x.coeffs.len() {
            let prev = partial[i - 1];
            partial.push(ln.mul(prev, self.big.theta(alpha, i as i64 - 1)));
        }
        let columns: Vec<Vec<Elem>> = tower
            .basis()
            .iter()
            .map(|&z| {
                let img = ln.sum(
                    vals.iter()
                        .enumerate()
                        .map(|(i, &c)| ln.mul(c, ln.mul(partial[i], self.big.theta(z, i as i64)))),
                );
                tower.coords(img)
            })
            .collect();
        Ok(Matrix::from_columns(&columns))
    }
}

// some v with e·v ≡ 1 mod r
fn unit_pairing_vector(twist: &TwistVector) -> ExpVec {
    let r = twist.r() as i64;
    let m = twist.m();
    // g = Σ c_i e_i + c_r r, built one coordinate at a time
    let mut g = r;
    let mut c = vec![0i64; m];
    for (i, &e) in twist.e().iter().enumerate() {
        let (d, s, t) = crate::lattice::ext_gcd(g, e.rem_euclid(r));
        // d = s·g + t·e
        for x in c.iter_mut() {
            *x *= s;
        }
        c[i] += t;
        g = d;
    }
    debug_assert_eq!(g, 1);
    ExpVec(c.into_iter().map(|x| x.rem_euclid(r)).collect())
}

/// Designed distances of the code and of the ambient LAG codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignedComparison {
    pub lrm: i64,
    pub lag: i64,
    pub extended_lag: i64,
}

/// `(q-1)^m r − (q-1)^{m-1} r d`, `s r − v` with `s = (q-1)^m`, `v = q^{m-1} r d`,
/// and `s̃ r − v` with `s̃ = q^{m-1}(q-1)`.
pub fn designed_distance_comparison(q: u64, r: u32, m: usize, d: u32) -> DesignedComparison {
    let (q, r, m, d) = (q as i64, r as i64, m as u32, d as i64);
    let s = (q - 1).pow(m);
    let v = q.pow(m - 1) * r * d;
    DesignedComparison {
        lrm: s * r - (q - 1).pow(m - 1) * r * d,
        lag: s * r - v,
        extended_lag: q.pow(m - 1) * (q - 1) * r - v,
    }
}

/// Per-sample outcome of [`embed_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedSample {
    pub lrm_weight: usize,
    pub lag_weight: usize,
    pub in_riemann_roch: bool,
    /// Whether `ι(f)` lies in the polynomial subspace `Λ̃_P`.
    pub polynomial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub n: u32,
    pub deg_b: Vec<usize>,
    pub deg_p: usize,
    pub mu: Vec<i64>,
    pub v: Vec<i64>,
    pub points: usize,
    pub bound: u64,
    pub witness_orders: Vec<u32>,
    pub division_gcd: i64,
    pub designed: DesignedComparison,
    pub samples: usize,
    pub seed: u64,
    pub weights: Vec<EmbedSample>,
    pub pass: bool,
}

/// Kernel dimensions of `ε_γ̃(f)` and `η_y(ι(f))` at one point.
pub fn kernel_pair(code: &LrmCode, lag: &LagContext, f: &OrePoly, idx: usize) -> Result<(usize, usize)> {
    let point: &EvalPoint = &code.points()[idx];
    let k1 = kernel_dim(&evaluate(f, point)?, code.ctx());
    let k2 = lag.eta(&lag.iota(f)?, lag.points()[idx])?.kernel_dim(lag.big().fqn());
    Ok((k1, k2))
}

/// Samples codewords and compares block kernels on both sides of the embedding.
pub fn embed_check(code: &LrmCode, lag: &LagContext, samples: usize, seed: u64) -> Result<EmbedReport> {
    let d = code.spec().d();
    let bound = lag.bound(d);
    let r = code.ctx().r() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = Vec::with_capacity(samples);
    for s in 0..samples {
        let msg = random_message(code.ctx().l(), code.dimension(), &mut rng);
        let f = code.message_poly(&msg)?;
        let image = lag.iota(&f)?;
        let in_rr = lag.riemann_roch_membership(&image, bound);
        if !in_rr {
            return Err(Error::BoundViolation(format!("sample {s}: ι(f) is outside Λ_P({bound})")));
        }
        let polynomial = lag.lambda_membership(&image, bound);
        let (mut w1, mut w2) = (0, 0);
        for idx in 0..code.points().len() {
            let (k1, k2) = kernel_pair(code, lag, &f, idx)?;
            if k1 != k2 {
                return Err(Error::Invariant(format!(
                    "sample {s}, point {idx}: kernel dimension {k1} over F_q vs {k2} over F_q^n"
                )));
            }
            w1 += r - k1;
            w2 += r - k2;
        }
        weights.push(EmbedSample { lrm_weight: w1, lag_weight: w2, in_riemann_roch: in_rr, polynomial });
    }
    let division_gcd = lag.division_gcd();
    let witness_orders = lag.witness_orders();
    let pass = division_gcd == 1 && witness_orders.iter().zip(lag.mu()).all(|(&o, &m)| o as i64 == m);
    Ok(EmbedReport {
        n: lag.big().n(),
        deg_b: lag.forms().b().iter().map(|b| b.degree().unwrap_or(0)).collect(),
        deg_p: lag.deg_p(),
        mu: lag.mu().to_vec(),
        v: lag.v().0.clone(),
        points: lag.points().len(),
        bound,
        witness_orders,
        division_gcd,
        designed: designed_distance_comparison(code.ctx().q(), code.ctx().r(), code.ring().m(), d),
        samples,
        seed,
        weights,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{AlphaChoice, DegreeSpec};
    use crate::ore::OreRing;

    fn ac_code(p: u32, a: u32, r: u32, d: u32) -> LrmCode {
        let ctx = Arc::new(FieldCtx::new(p, a, r).unwrap());
        let ring = OreRing::new(ctx, TwistVector::new(vec![0, 1], r).unwrap()).unwrap();
        let spec = DegreeSpec::Simplex { d, basis: vec![vec![1, 0], vec![0, r as i64]], experimental: false };
        LrmCode::build(&ring, spec, AlphaChoice::Canonical).unwrap()
    }

    #[test]
    fn n_choice() {
        assert_eq!(choose_n(2, 2), 3);
        assert_eq!(choose_n(2, 3), 2);
        assert_eq!(choose_n(3, 4), 3);
        assert_eq!(choose_n(1, 1), 1);
    }

    #[test]
    fn field_compatibility() {
        let ctx = Arc::new(FieldCtx::new(2, 2, 3).unwrap());
        let big = BigFieldCtx::new(ctx.clone(), 2).unwrap();
        for x in ctx.fq().elements() {
            assert_eq!(big.embed_l(ctx.embed(x)), big.embed_fqn(big.embed_fq(x)));
        }
        for x in ctx.l().elements() {
            let y = big.embed_l(x);
            assert_eq!(big.theta(y, 1), big.embed_l(ctx.frobenius(x, 1)));
        }
        for x in big.fqn().elements() {
            let y = big.embed_fqn(x);
            assert_eq!(big.theta(y, 1), y);
        }
    }

    #[test]
    fn uni_ore_division() {
        let ctx = Arc::new(FieldCtx::new(3, 1, 2).unwrap());
        let big = BigFieldCtx::new(ctx, 3).unwrap();
        let f = UniOrePoly::new(vec![Elem(5), Elem(1), Elem(7), Elem(2)]);
        let g = UniOrePoly::new(vec![Elem(3), Elem(4)]);
        let (q, r) = f.rdiv(&f, &big).unwrap();
        assert_eq!((q, r), (UniOrePoly::one(), UniOrePoly::zero()));
        let (q, r) = f.rdiv(&g, &big).unwrap();
        assert!(r.degree().is_none_or(|d| d < 1));
        assert_eq!(q.mul(&g, &big).add(&r, big.fqn()), f);
        assert_eq!(UniOrePoly::rgcd(&[f.clone(), UniOrePoly::one()], &big), UniOrePoly::one());
    }

    #[test]
    fn embedding_small_instance() {
        let code = ac_code(3, 1, 2, 1);
        let lag = LagContext::new(&code, 3).unwrap();
        assert_eq!(lag.mu(), &[0, 1]);
        assert!(lag.forms().b().iter().all(|b| b.degree() == Some(3)));
        assert_eq!(lag.deg_p(), 3);
        assert_eq!(lag.bound(1), 6);
        assert_eq!(lag.witness_orders(), vec![0, 1]);
        assert_eq!(lag.division_gcd(), 1);
        let rep = embed_check(&code, &lag, 50, 7).unwrap();
        assert!(rep.pass);
        assert!(rep.weights.iter().all(|w| w.lrm_weight == w.lag_weight && w.lrm_weight >= 4));
    }

    #[test]
    fn iota_and_eta_are_multiplicative() {
        let code = ac_code(3, 1, 2, 1);
        let lag = LagContext::new(&code, 3).unwrap();
        let ring = code.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fqn = lag.big().fqn();
        for _ in 0..20 {
            let f = code.message_poly(&random_message(ring.ctx().l(), code.dimension(), &mut rng)).unwrap();
            let g = code.message_poly(&random_message(ring.ctx().l(), code.dimension(), &mut rng)).unwrap();
            let (a, b) = (lag.iota(&f).unwrap(), lag.iota(&g).unwrap());
            let ab = lag.mul(&a, &b);
            assert!(lag.same(&lag.iota(&(&f * &g)).unwrap(), &ab));
            for &y in lag.points() {
                let lhs = lag.eta(&ab, y).unwrap();
                assert_eq!(lhs, lag.eta(&a, y).unwrap().mul(&lag.eta(&b, y).unwrap(), fqn));
            }
        }
        let one = LagElement::one(2, 2);
        let y = lag.points()[0];
        assert_eq!(lag.eta(&one, y).unwrap(), Matrix::identity(2));
        let t = LagElement::monomial(2, 2, Elem::ONE, 1);
        let tm = lag.eta(&t, y).unwrap();
        let py = lag.p().eval(y, fqn);
        assert_eq!(tm.mul(&tm, fqn), Matrix::scalar(2, py));
    }

    #[test]
    fn designed_pair() {
        let c = designed_distance_comparison(3, 2, 2, 1);
        assert_eq!((c.lrm, c.lag, c.extended_lag), (4, 2, 6));
        let z = designed_distance_comparison(5, 3, 2, 0);
        assert_eq!((z.lrm, z.lag), (48, 48));
    }

    #[test]
    fn embedding_with_denominators() {
        // u = (0, 1) has λ = 2 and lattice part −w_2: ι needs B_2^{-1}
        let ctx = Arc::new(FieldCtx::new(2, 2, 3).unwrap());
        let twist = TwistVector::new(vec![1, 2], 3).unwrap();
        let ring = OreRing::new(ctx, twist.clone()).unwrap();
        let basis = LatticeBasis::hermite(&twist).unwrap();
        let code = LrmCode::simplex(&ring, &basis, 1).unwrap();
        let lag = LagContext::new(&code, 2).unwrap();
        assert_eq!(lag.mu(), &[0, 2]);
        let x = lag.iota(&OrePoly::var(&ring, 1)).unwrap();
        assert_eq!(x.den, vec![0, 1]);
        assert!(!lag.lambda_membership(&x, lag.bound(1)));
        assert!(lag.riemann_roch_membership(&x, lag.bound(1)));
        let rep = embed_check(&code, &lag, 20, 5).unwrap();
        assert!(rep.pass);
    }
}
