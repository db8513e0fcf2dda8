//! Characters `γ : L → F_q^×`, their cocycle prolongations `γ̃ : Z^m → L^×`,
//! and evaluation of Ore polynomials as `F_q`-linear endomorphisms of `L`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::lattice::{AdaptedBasis, ExpVec, LatticeBasis, TwistVector};
use crate::linalg::Matrix;
use crate::ore::OrePoly;

/// An `F_q`-linear endomorphism of `L`, as the `r × r` matrix over `F_q`
/// whose `j`-th column holds the coordinates of the image of `β_j`.
pub type Endo = Matrix;

/// A group morphism `L → F_q^×`, given by its values on a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    basis: LatticeBasis,
    values: Vec<Elem>,
}

impl Character {
    pub fn new(basis: LatticeBasis, values: Vec<Elem>) -> Result<Self> {
        if values.len() != basis.m() {
            return Err(Error::DimensionMismatch { expected: basis.m(), got: values.len() });
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidCocycle("character values must be nonzero".into()));
        }
        Ok(Character { basis, values })
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    /// `γ(w_1), …, γ(w_m)`.
    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// `γ(u)` for `u` in the lattice spanned by the basis.
    pub fn value(&self, u: &ExpVec, ctx: &FieldCtx) -> Result<Elem> {
        let c = self
            .basis
            .coords(u)
            .ok_or_else(|| Error::InvalidCocycle(format!("{:?} is outside the lattice", u.0)))?;
        let fq = ctx.fq();
        Ok(c.iter().zip(&self.values).fold(Elem::ONE, |acc, (&k, &g)| fq.mul(acc, fq.pow(g, k))))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == Elem::ONE)
    }
}

/// All `(q-1)^m` characters, lexicographic in the discrete logarithms of
/// `γ(w_i)` with respect to the primitive element of `F_q`.
pub fn enumerate_characters(basis: &LatticeBasis, ctx: &FieldCtx) -> Vec<Character> {
    let m = basis.m();
    let n = ctx.q() - 1;
    let total = n.pow(m as u32);
    let fq = ctx.fq();
    (0..total)
        .map(|mut idx| {
            let mut logs = vec![0u64; m];
            for i in (0..m).rev() {
                logs[i] = idx % n;
                idx /= n;
            }
            let values = logs.iter().map(|&k| fq.exp(k)).collect();
            Character { basis: basis.clone(), values }
        })
        .collect()
}

/// A prolongation `γ̃` of a character, determined by `α ∈ L` with
/// `N(α) = γ(r·v_m)`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    twist: TwistVector,
    adapted: AdaptedBasis,
    character: Character,
    alpha: Elem,
    // γ(v_1), …, γ(v_{m-1}), γ(r v_m) in F_q
    lattice_values: Vec<Elem>,
    // α Φ(α) ⋯ Φ^{k-1}(α) for k = 0..=r
    partial_norms: Vec<Elem>,
}

impl Cocycle {
    pub fn new(ctx: &FieldCtx, twist: &TwistVector, adapted: &AdaptedBasis, character: Character, alpha: Elem) -> Result<Self> {
        let m = twist.m();
        let r = twist.r() as i64;
        let mut lattice_values = Vec::with_capacity(m);
        for v in &adapted.vectors()[..m - 1] {
            lattice_values.push(character.value(v, ctx)?);
        }
        let g_rv = character.value(&adapted.last().scale(r), ctx)?;
        lattice_values.push(g_rv);
        if alpha.is_zero() || ctx.norm(alpha) != g_rv {
            return Err(Error::InvalidCocycle(format!("N(α) must equal γ(r·v_m) = {}", g_rv.0)));
        }
        let l = ctx.l();
        let mut partial_norms = vec![Elem::ONE];
        for k in 0..r {
            let prev = *partial_norms.last().unwrap();
            partial_norms.push(l.mul(prev, ctx.frobenius(alpha, k)));
        }
        Ok(Cocycle { twist: twist.clone(), adapted: adapted.clone(), character, alpha, lattice_values, partial_norms })
    }

    /// The prolongation with `α = norm_preimage(γ(r·v_m))`.
    pub fn canonical(ctx: &FieldCtx, twist: &TwistVector, adapted: &AdaptedBasis, character: Character) -> Result<Self> {
        let g_rv = character.value(&adapted.last().scale(twist.r() as i64), ctx)?;
        let alpha = ctx.norm_preimage(g_rv)?;
        Self::new(ctx, twist, adapted, character, alpha)
    }

    /// Same character, `α` replaced by `α·g^{k(q-1)}` (also of norm `γ(r·v_m)`).
    pub fn shifted(&self, ctx: &FieldCtx, k: u64) -> Result<Self> {
        let l = ctx.l();
        let unit = l.pow_u128(ctx.generator(), (k as u128) * (ctx.q() as u128 - 1));
        Self::new(ctx, &self.twist, &self.adapted, self.character.clone(), l.mul(self.alpha, unit))
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn twist(&self) -> &TwistVector {
        &self.twist
    }

    /// `γ̃(u) = γ(v_1)^{a_1}⋯γ(v_{m-1})^{a_{m-1}} · γ(r v_m)^{q_m} · α Φ(α) ⋯ Φ^{r_m - 1}(α)`
    /// where `u = Σ a_i v_i` and `a_m = q_m r + r_m` with `1 ≤ r_m ≤ r`.
    pub fn value(&self, u: &ExpVec, ctx: &FieldCtx) -> Elem {
        let a = self.adapted.coords(u);
        let m = a.len();
        let r = self.twist.r() as i64;
        let rm = (a[m - 1] - 1).rem_euclid(r) + 1;
        let qm = (a[m - 1] - rm) / r;
        let fq = ctx.fq();
        let mut central = fq.pow(self.lattice_values[m - 1], qm);
        for i in 0..m - 1 {
            central = fq.mul(central, fq.pow(self.lattice_values[i], a[i]));
        }
        ctx.l().mul(ctx.embed(central), self.partial_norms[rm as usize])
    }
}

/// A point at which Ore polynomials are evaluated.
#[derive(Clone, Debug)]
pub enum EvalPoint {
    /// A character of the lattice with its prolongation.
    Character(Cocycle),
    /// For the twist `(0, …, 0, 1)`: a point of `F_q^{m-1}` for the commuting
    /// variables (zero allowed) and a prolongation over `Z` with `e = (1)` for the
    /// last variable.
    Affine { prefix: Vec<Elem>, last: Cocycle },
}

impl EvalPoint {
    /// The image of `X^u` as `(c, s)`, meaning the endomorphism `c · Φ^s`.
    pub fn monomial(&self, u: &ExpVec, ctx: &FieldCtx) -> Result<(Elem, i64)> {
        match self {
            EvalPoint::Character(c) => Ok((c.value(u, ctx), c.twist.pairing(u))),
            EvalPoint::Affine { prefix, last } => {
                let m = prefix.len() + 1;
                if u.dim() != m {
                    return Err(Error::DimensionMismatch { expected: m, got: u.dim() });
                }
                let fq = ctx.fq();
                let mut s = Elem::ONE;
                for (&a, &k) in prefix.iter().zip(&u.0) {
                    if a.is_zero() && k < 0 {
                        return Err(Error::BadPoint("negative power of a zero coordinate".into()));
                    }
                    s = fq.mul(s, fq.pow(a, k));
                }
                let k = u.0[m - 1];
                Ok((ctx.l().mul(ctx.embed(s), last.value(&ExpVec(vec![k]), ctx)), k))
            }
        }
    }

    pub fn cocycle(&self) -> &Cocycle {
        match self {
            EvalPoint::Character(c) => c,
            EvalPoint::Affine { last, .. } => last,
        }
    }
}

/// Coefficients `c_s` of `Σ_s c_s Φ^s`, the image of `f` at `point`.
pub fn linearized_image(f: &OrePoly, point: &EvalPoint) -> Result<Vec<Elem>> {
    let ctx = f.ring().ctx();
    let l = ctx.l();
    let r = ctx.r() as i64;
    let mut c = vec![Elem::ZERO; r as usize];
    for (u, &a) in f.terms() {
        let (g, s) = point.monomial(u, ctx)?;
        let s = s.rem_euclid(r) as usize;
        c[s] = l.add(c[s], l.mul(a, g));
    }
    Ok(c)
}

/// Matrix of `x ↦ Σ_s c_s Φ^s(x)` in the fixed basis.
pub fn linearized_matrix(c: &[Elem], ctx: &FieldCtx) -> Endo {
    let l = ctx.l();
    let columns: Vec<Vec<Elem>> = ctx
        .basis()
        .iter()
        .map(|&b| {
            let img = l.sum(c.iter().enumerate().map(|(s, &cs)| l.mul(cs, ctx.frobenius(b, s as i64))));
            ctx.coords(img)
        })
        .collect();
    Matrix::from_columns(&columns)
}

/// Matrix of `Σ_u a_u γ̃(u) Φ^{e·u}`.
pub fn evaluate(f: &OrePoly, point: &EvalPoint) -> Result<Endo> {
    Ok(linearized_matrix(&linearized_image(f, point)?, f.ring().ctx()))
}

/// A codeword: one endomorphism per evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SumRankVector {
    pub blocks: Vec<Endo>,
}

impl SumRankVector {
    pub fn weight(&self, ctx: &FieldCtx) -> usize {
        self.blocks.iter().map(|b| b.rank(ctx.fq())).sum()
    }

    pub fn block_ranks(&self, ctx: &FieldCtx) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rank(ctx.fq())).collect()
    }

    /// Row-major `F_q` codes of every block.
    pub fn to_rows(&self) -> Vec<Vec<Vec<u32>>> {
        self.blocks.iter().map(|b| b.to_rows().into_iter().map(|row| row.into_iter().map(|e| e.0).collect()).collect()).collect()
    }
}

pub fn multi_evaluate(f: &OrePoly, points: &[EvalPoint]) -> Result<SumRankVector> {
    let blocks = points.iter().map(|p| evaluate(f, p)).collect::<Result<_>>()?;
    Ok(SumRankVector { blocks })
}

pub fn sum_rank_weight(v: &SumRankVector, ctx: &FieldCtx) -> usize {
    v.weight(ctx)
}

pub fn kernel_dim(e: &Endo, ctx: &FieldCtx) -> usize {
    e.kernel_dim(ctx.fq())
}

/// Rank over `F_q` of `r` symbols of `L` (the `F_q`-span of their coordinates).
pub fn symbol_rank(symbols: &[Elem], ctx: &FieldCtx) -> usize {
    let r = ctx.r() as usize;
    let mut data = Vec::with_capacity(symbols.len() * r);
    for &x in symbols {
        data.extend(ctx.coord_codes(x).iter().map(|&c| Elem(c)));
    }
    // rows are symbols; the row rank equals the column rank
    Matrix::from_data(symbols.len(), r, data).echelonize(ctx.fq())
}

/// Sum-rank weight of a flattened codeword (blocks of `r` consecutive symbols).
pub fn flat_weight(word: &[Elem], ctx: &FieldCtx) -> usize {
    word.chunks(ctx.r() as usize).map(|b| symbol_rank(b, ctx)).sum()
}

/// The images `φ(β_1), …, φ(β_r)` of the basis under an endomorphism.
pub fn flatten_endo(e: &Endo, ctx: &FieldCtx) -> Vec<Elem> {
    let r = ctx.r() as usize;
    (0..r).map(|j| ctx.from_coords(&(0..r).map(|i| e.get(i, j)).collect::<Vec<_>>())).collect()
}
