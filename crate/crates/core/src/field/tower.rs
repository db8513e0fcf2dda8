use std::sync::{Arc, OnceLock};

use super::gf::{Elem, Gf};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A relative extension `K ⊂ E` of degree `r`, with a fixed embedding of
/// `K` into `E`, a fixed `K`-basis of `E` and the `q`-Frobenius of `E/K`
/// (where `q = |K|`).
#[derive(Clone)]
pub struct Tower {
    base: Arc<Gf>,
    ext: Arc<Gf>,
    degree: u32,
    embed: Vec<Elem>,
    restrict: Vec<u32>,
    basis: Vec<Elem>,
    coords: Arc<OnceLock<Vec<u32>>>,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tower({:?} ⊂ {:?})", self.base, self.ext)
    }
}

impl Tower {
    /// Embeds `base` through the smallest root of its modulus in `ext`, and uses
    /// the power basis of the primitive element of `ext`.
    pub fn new(base: Arc<Gf>, ext: Arc<Gf>) -> Result<Self> {
        if base.characteristic() != ext.characteristic() || !ext.degree().is_multiple_of(base.degree()) {
            return Err(Error::InvalidField(format!("{base:?} is not a subfield of {ext:?}")));
        }
        let root = ext
            .elements()
            .find(|&x| ext.eval_fp_poly(base.modulus(), x).is_zero())
            .ok_or_else(|| Error::InvalidField("base modulus has no root in extension".into()))?;
        let r = ext.degree() / base.degree();
        let g = ext.primitive();
        let basis = (0..r as i64).map(|i| ext.pow(g, i)).collect();
        Self::with_root(base, ext, root, basis)
    }

    /// Tower whose embedding sends the class of `x` in `base` to `root`.
    pub fn with_root(base: Arc<Gf>, ext: Arc<Gf>, root: Elem, basis: Vec<Elem>) -> Result<Self> {
        if !ext.eval_fp_poly(base.modulus(), root).is_zero() {
            return Err(Error::InvalidField("embedding image is not a root of the base modulus".into()));
        }
        let r = ext.degree() / base.degree();
        let embed: Vec<Elem> = base
            .elements()
            .map(|b| {
                let digits = base.digits(b);
                ext.sum(digits.iter().enumerate().map(|(i, &c)| ext.mul(Elem(c), ext.pow(root, i as i64))))
            })
            .collect();
        let mut restrict = vec![u32::MAX; ext.order() as usize];
        for (b, &x) in embed.iter().enumerate() {
            restrict[x.0 as usize] = b as u32;
        }
        let tower = Tower { base, ext, degree: r, embed, restrict, basis, coords: Arc::new(OnceLock::new()) };
        tower.check_basis()?;
        Ok(tower)
    }

    /// Replaces the `K`-basis of `E`.
    pub fn with_basis(&self, basis: Vec<Elem>) -> Result<Self> {
        let t = Tower { basis, coords: Arc::new(OnceLock::new()), ..self.clone() };
        t.check_basis()?;
        Ok(t)
    }

    // The K-span of the basis is the F_p-span of {t_k * beta_j}, where t_k runs over an
    // F_p-basis of K; independence is a rank condition on digit vectors.
    fn check_basis(&self) -> Result<()> {
        if self.basis.len() != self.degree as usize {
            return Err(Error::InvalidField(format!("basis has {} elements, expected {}", self.basis.len(), self.degree)));
        }
        let p = self.ext.characteristic();
        let fp = Gf::new(p, 1)?;
        let n = self.ext.degree() as usize;
        let mut m = Matrix::zeros(n, n);
        let mut row = 0;
        for k in 0..self.base.degree() {
            let t = self.embed(Elem(p.pow(k)));
            for &b in &self.basis {
                for (c, d) in self.ext.digits(self.ext.mul(t, b)).into_iter().enumerate() {
                    m.set(row, c, Elem(d));
                }
                row += 1;
            }
        }
        if m.rank(&fp) != n {
            return Err(Error::InvalidField("basis is not linearly independent over the base field".into()));
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<Gf> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<Gf> {
        &self.ext
    }

    /// Relative degree `[E : K]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `|K|`.
    pub fn q(&self) -> u64 {
        self.base.order() as u64
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn embed(&self, b: Elem) -> Elem {
        self.embed[b.0 as usize]
    }

    /// The preimage of `x` under the embedding, if `x` lies in `K`.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        let b = self.restrict[x.0 as usize];
        (b != u32::MAX).then_some(Elem(b))
    }

    pub fn in_base(&self, x: Elem) -> bool {
        self.restrict[x.0 as usize] != u32::MAX
    }

    /// `x^(q^(i mod r))`.
    pub fn frobenius(&self, x: Elem, i: i64) -> Elem {
        let k = i.rem_euclid(self.degree as i64) as u32;
        self.ext.pow_u128(x, (self.q() as u128).pow(k))
    }

    /// `x · Φ(x) ⋯ Φ^{r-1}(x)`, as an element of `K`.
    pub fn norm(&self, x: Elem) -> Elem {
        let n = (0..self.degree as i64).fold(Elem::ONE, |acc, i| self.ext.mul(acc, self.frobenius(x, i)));
        self.restrict(n).expect("norm lands in the base field")
    }

    /// `x + Φ(x) + ... + Φ^{r-1}(x)`, as an element of `K`.
    pub fn trace(&self, x: Elem) -> Elem {
        let t = self.ext.sum((0..self.degree as i64).map(|i| self.frobenius(x, i)));
        self.restrict(t).expect("trace lands in the base field")
    }

    /// A deterministic `α` with `norm(α) = t`: `g^k` where `g` is the primitive
    /// element of `E` and `k` is the discrete log of `t` to the base `norm(g)`.
    pub fn norm_preimage(&self, t: Elem) -> Result<Elem> {
        if t.is_zero() {
            return Err(Error::ZeroNorm);
        }
        let g = self.ext.primitive();
        let h = self.embed(self.norm(g));
        let target = self.embed(t);
        let mut acc = Elem::ONE;
        for k in 0..self.q() - 1 {
            if acc == target {
                return Ok(self.ext.exp(k));
            }
            acc = self.ext.mul(acc, h);
        }
        unreachable!("the norm of a primitive element generates the base multiplicative group")
    }

    fn coord_table(&self) -> &[u32] {
        self.coords.get_or_init(|| {
            let r = self.degree as usize;
            let q = self.q();
            let mut table = vec![u32::MAX; self.ext.order() as usize * r];
            let total = q.pow(r as u32);
            for code in 0..total {
                let mut c = code;
                let mut x = Elem::ZERO;
                let mut digits = Vec::with_capacity(r);
                for &b in &self.basis {
                    let d = (c % q) as u32;
                    c /= q;
                    digits.push(d);
                    x = self.ext.add(x, self.ext.mul(self.embed(Elem(d)), b));
                }
                table[x.0 as usize * r..(x.0 as usize + 1) * r].copy_from_slice(&digits);
            }
            table
        })
    }

    /// Coordinates of `x` in the fixed basis, as elements of `K`.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        let r = self.degree as usize;
        self.coord_table()[x.0 as usize * r..(x.0 as usize + 1) * r].iter().map(|&c| Elem(c)).collect()
    }

    /// Coordinates of `x` as raw codes of `K`, without allocating.
    pub fn coord_codes(&self, x: Elem) -> &[u32] {
        let r = self.degree as usize;
        &self.coord_table()[x.0 as usize * r..(x.0 as usize + 1) * r]
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        self.ext.sum(c.iter().zip(&self.basis).map(|(&ci, &b)| self.ext.mul(self.embed(ci), b)))
    }
}
