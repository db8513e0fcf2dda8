//! Reduced norm `Nrd : L[X^{±1}; θ] → F_q[X^L]`, computed over either of the
//! commutative subrings `C₁ = F_q[X^{±1}]` and `C₂ = L[X^L]`, together with
//! vanishing orders at characters and the kernel-dimension bounds.

use crate::error::{Error, Result};
use crate::eval::{evaluate, kernel_dim, Character, EvalPoint};
use crate::field::{Elem, FieldCtx, Gf};
use crate::ore::{CentralPoly, OrePoly};
use crate::poly::{order_at, LaurentPoly};

/// Determinant of a square matrix over a commutative Laurent polynomial ring,
/// by division-free expansion over column subsets.
pub fn laurent_det(mat: &[Vec<LaurentPoly>], m: usize, f: &Gf) -> LaurentPoly {
    let n = mat.len();
    // minors[S] = det of rows 0..|S| restricted to the columns in S
    let mut minors: Vec<LaurentPoly> = vec![LaurentPoly::zero(m); 1 << n];
    minors[0] = LaurentPoly::one(m);
    for set in 1usize..(1 << n) {
        let row = set.count_ones() as usize - 1;
        let mut acc = LaurentPoly::zero(m);
        for j in 0..n {
            if set & (1 << j) == 0 || mat[row][j].is_zero() {
                continue;
            }
            let rest = set & !(1 << j);
            if minors[rest].is_zero() {
                continue;
            }
            let above = (set >> (j + 1)).count_ones();
            let term = mat[row][j].mul(&minors[rest], f);
            acc = if above % 2 == 0 { acc.add(&term, f) } else { acc.sub(&term, f) };
        }
        minors[set] = acc;
    }
    minors.pop().unwrap()
}

/// `Nrd(f)` as the determinant of right multiplication by `f` on the free
/// `C₁`-module with basis `β_1, …, β_r`.
pub fn nrd_c1(f: &OrePoly) -> Result<CentralPoly> {
    let ring = f.ring();
    let ctx = ring.ctx();
    let (l, fq) = (ctx.l(), ctx.fq());
    let r = ctx.r() as usize;
    let m = ring.m();
    let basis = ctx.basis();
    // entry (i, j): Σ_u c_{ij,u} X^u where Φ^{-e·u}(β_j a_u) = Σ_i c_{ij,u} β_i
    let mut mat = vec![vec![LaurentPoly::zero(m); r]; r];
    for (u, &a) in f.terms() {
        let s = ring.twist().pairing(u);
        for (j, &bj) in basis.iter().enumerate() {
            let c = ctx.coords(ctx.frobenius(l.mul(bj, a), -s));
            for (i, &ci) in c.iter().enumerate() {
                mat[i][j].add_term(u.clone(), ci, fq);
            }
        }
    }
    let det = laurent_det(&mat, m, fq);
    CentralPoly::new(ring.twist().clone(), det)
        .map_err(|e| Error::Invariant(format!("N₁ is not central: {e}")))
}

/// `Nrd(f)` as the determinant of right multiplication by `f` on the free
/// `C₂`-module with basis `1, X^v, …, X^{(r-1)v}`.
pub fn nrd_c2(f: &OrePoly) -> Result<CentralPoly> {
    let ring = f.ring();
    let ctx = ring.ctx();
    let l = ctx.l();
    let r = ctx.r() as usize;
    let m = ring.m();
    let twist = ring.twist();
    let v = ring.adapted()?.last().clone();
    let mut mat = vec![vec![LaurentPoly::zero(m); r]; r];
    for j in 0..r {
        let jv = v.scale(j as i64);
        // X^{jv} a_u X^u = Φ^j(a_u) X^{jv+u} = Φ^j(a_u) X^w · X^{λv}
        for (u, &a) in f.terms() {
            let e = jv.add(u);
            let lambda = twist.residue(&e) as usize;
            let w = e.sub(&v.scale(lambda as i64));
            mat[lambda][j].add_term(w, ctx.frobenius(a, j as i64), l);
        }
    }
    let det = laurent_det(&mat, m, l);
    let mut terms = Vec::with_capacity(det.len());
    for (u, &c) in det.terms() {
        let b = ctx.restrict(c).ok_or_else(|| Error::Invariant(format!("N₂ has a coefficient outside F_q at {:?}", u.0)))?;
        terms.push((u.clone(), b));
    }
    CentralPoly::new(twist.clone(), LaurentPoly::from_terms(m, terms, ctx.fq()))
        .map_err(|e| Error::Invariant(format!("N₂ is not central: {e}")))
}

/// `Nrd(f)`, computed over `C₁`.
pub fn nrd(f: &OrePoly) -> Result<CentralPoly> {
    nrd_c1(f)
}

/// `ord_γ(g)`: the order of vanishing at the maximal ideal of `γ`, written in
/// the variables `Z_i = X^{w_i}` of the character's basis. `None` means `+∞`.
pub fn ord_at_character(g: &CentralPoly, chi: &Character, ctx: &FieldCtx) -> Result<Option<u32>> {
    let z = g.in_basis(chi.basis(), ctx.fq())?;
    Ok(order_at(&z, chi.values(), ctx.fq()))
}

/// `(dim ker ε_γ̃(f), ord_γ(Nrd f))`, checking the first is at most the second.
pub fn check_dimker(f: &OrePoly, point: &EvalPoint) -> Result<(usize, Option<u32>)> {
    let ctx = f.ring().ctx();
    let chi = match point {
        EvalPoint::Character(c) => c.character(),
        EvalPoint::Affine { .. } => return Err(Error::BadPoint("kernel bound needs a character point".into())),
    };
    let k = kernel_dim(&evaluate(f, point)?, ctx);
    let ord = ord_at_character(&nrd(f)?, chi, ctx)?;
    if let Some(o) = ord {
        if k as u32 > o {
            return Err(Error::Invariant(format!("dim ker = {k} exceeds ord_γ(Nrd f) = {o}")));
        }
    }
    Ok((k, ord))
}

/// `r · d · (q-1)^{m-1}`.
pub fn zero_sum_bound(ctx: &FieldCtx, m: usize, d: u32) -> u64 {
    ctx.r() as u64 * d as u64 * (ctx.q() - 1).pow(m as u32 - 1)
}

/// The sharper bound `r₂ · d · (q-1)` for `m = 2`, `e = (r₁, r₂)` with
/// `r₁ < r₂`, `r₁ r₂ = r` and `gcd(r₁, r₂) = 1`, when it applies.
pub fn refined_zero_sum_bound(ctx: &FieldCtx, e: &[i64], d: u32) -> Option<u64> {
    let [r1, r2] = e else { return None };
    let (r1, r2) = (*r1, *r2);
    let ok = r1 > 0 && r1 < r2 && r1 * r2 == ctx.r() as i64 && crate::lattice::gcd(r1, r2) == 1;
    ok.then(|| r2 as u64 * d as u64 * (ctx.q() - 1))
}

/// `Σ_γ dim ker ε_γ̃(f)` over the given character points, checked against
/// `r · deg(f) · (q-1)^{m-1}`.
pub fn zero_sum(f: &OrePoly, points: &[EvalPoint]) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.total_degree()?.unwrap_or(0);
    let ctx = f.ring().ctx();
    let mut total = 0u64;
    for p in points {
        total += kernel_dim(&evaluate(f, p)?, ctx) as u64;
    }
    let bound = zero_sum_bound(ctx, f.ring().m(), d);
    if total > bound {
        return Err(Error::BoundViolation(format!("zero sum {total} exceeds r·d·(q-1)^(m-1) = {bound}")));
    }
    Ok(total)
}

/// `Σ_{a ∈ (F_q^×)^m} ord_a(g)` for a nonzero polynomial over `F_q`, checked
/// against `deg(g) · (q-1)^{m-1}`.
pub fn classical_zero_sum(g: &LaurentPoly, fq: &Gf) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(u) = g.terms().keys().find(|u| !u.is_nonnegative()) {
        return Err(Error::NegativeExponent(u.0.clone()));
    }
    let m = g.nvars();
    let n = fq.order() as u64 - 1;
    let mut total = 0u64;
    for mut idx in 0..n.pow(m as u32) {
        let mut point = vec![Elem::ZERO; m];
        for c in point.iter_mut().rev() {
            *c = fq.exp(idx % n);
            idx /= n;
        }
        total += order_at(g, &point, fq).unwrap() as u64;
    }
    let d = g.max_degree().unwrap() as u64;
    let bound = d * n.pow(m as u32 - 1);
    if total > bound {
        return Err(Error::BoundViolation(format!("classical zero sum {total} exceeds {bound}")));
    }
    Ok(total)
}

/// Checks `deg Nrd(f) ≤ r · deg f` for nonnegative support.
pub fn check_degree_bound(f: &OrePoly, n: &CentralPoly) -> Result<()> {
    let d = f.total_degree()?.unwrap_or(0);
    let nd = n.total_degree()?.unwrap_or(0);
    let bound = f.ring().r() * d;
    if nd > bound {
        return Err(Error::BoundViolation(format!("deg Nrd(f) = {nd} exceeds r·deg f = {bound}")));
    }
    Ok(())
}

/// `f^r` for a central `f`, as a central polynomial.
pub fn central_power(f: &OrePoly) -> Result<CentralPoly> {
    let c = f.to_central()?;
    Ok(c.pow(f.ring().r(), f.ring().ctx()))
}
