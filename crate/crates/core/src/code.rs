//! Linearized Reed–Muller codes: evaluation of Ore polynomials with
//! prescribed support at every prolonged character.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{enumerate_characters, flat_weight, symbol_rank, Character, Cocycle, EvalPoint, SumRankVector};
use crate::field::{Elem, FieldCtx};
use crate::lattice::{binomial, AdaptedBasis, ExpVec, LatticeBasis, Simplex, TwistVector};
use crate::linalg::Matrix;
use crate::ore::{OrePoly, OreRing};
use crate::sample::{random_message, total_degree_monomials};

pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Which monomials span the message space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeSpec {
    /// `u ≥ 0`, `|u| ≤ d`.
    Total { d: u32 },
    /// Integer points of `d·conv(0, w_1, …, w_m)`.
    Simplex {
        d: u32,
        basis: Vec<Vec<i64>>,
        #[serde(default)]
        experimental: bool,
    },
    /// Twist `(0, …, 0, 1)`: integer points of `d·S` for the basis
    /// `b_1, …, b_{m-1}, r·b_m`, evaluated on `F_q^{m-1} × F_q^×`.
    ExtendedAc { d: u32 },
}

impl DegreeSpec {
    pub fn d(&self) -> u32 {
        match self {
            DegreeSpec::Total { d } | DegreeSpec::Simplex { d, .. } | DegreeSpec::ExtendedAc { d } => *d,
        }
    }

    pub fn label(&self) -> String {
        match self {
            DegreeSpec::Total { d } => format!("total:{d}"),
            DegreeSpec::Simplex { d, .. } => format!("simplex:{d}"),
            DegreeSpec::ExtendedAc { d } => format!("ac:{d}"),
        }
    }
}

/// How the `α` of each prolongation is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaChoice {
    Canonical,
    /// `α · g^{k(q-1)}` instead of the canonical `α`.
    Shifted(u64),
    /// One `α` per prolongation, in order.
    Explicit(Vec<Elem>),
}

/// Length, dimension and designed distance, computed without building the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    /// Number of evaluation points.
    pub blocks: u64,
    /// Length over `L`: `r` symbols per point.
    pub n: u64,
    pub k: u64,
    pub designed: Option<u64>,
}

fn check_degree(q: u64, d: u32) -> Result<()> {
    let max = q.saturating_sub(2) as u32;
    if d > max {
        return Err(Error::DegreeOutOfRange { d, max });
    }
    Ok(())
}

fn ac_basis(twist: &TwistVector) -> Result<LatticeBasis> {
    let m = twist.m();
    let e = twist.e();
    if e[m - 1].rem_euclid(twist.r() as i64) != 1 % twist.r() as i64
        || e[..m - 1].iter().any(|&x| x.rem_euclid(twist.r() as i64) != 0)
    {
        return Err(Error::BadPoint(format!("extended AC codes need the twist (0, …, 0, 1), got {e:?}")));
    }
    let vectors = (0..m)
        .map(|i| {
            let u = ExpVec::unit(m, i);
            if i == m - 1 {
                u.scale(twist.r() as i64)
            } else {
                u
            }
        })
        .collect();
    LatticeBasis::new(twist, vectors)
}

fn simplex_basis(twist: &TwistVector, basis: &[Vec<i64>], experimental: bool) -> Result<LatticeBasis> {
    let vectors: Vec<ExpVec> = basis.iter().cloned().map(ExpVec).collect();
    if experimental {
        LatticeBasis::family(twist, vectors)
    } else {
        LatticeBasis::new(twist, vectors)
    }
}

/// The monomials spanning the message space, graded-lex for total degree and
/// lexicographic for simplices.
pub fn message_monomials(twist: &TwistVector, spec: &DegreeSpec) -> Result<Vec<ExpVec>> {
    Ok(match spec {
        DegreeSpec::Total { d } => total_degree_monomials(twist.m(), *d),
        DegreeSpec::Simplex { d, basis, experimental } => {
            Simplex::new(simplex_basis(twist, basis, *experimental)?, *d).points()
        }
        DegreeSpec::ExtendedAc { d } => Simplex::new(ac_basis(twist)?, *d).points(),
    })
}

/// The designed distance, when the family has a proven one.
pub fn designed_distance(q: u64, twist: &TwistVector, spec: &DegreeSpec) -> Option<u64> {
    let r = twist.r() as u64;
    let m = twist.m() as u32;
    let d = spec.d() as u64;
    if d + 2 > q {
        return None;
    }
    match spec {
        DegreeSpec::Total { .. } => Some(r * (q - 1).pow(m - 1) * (q - 1 - d)),
        DegreeSpec::Simplex { experimental: true, .. } => None,
        DegreeSpec::Simplex { .. } => Some(r * (q - 1).pow(m - 1) * (q - 1 - d)),
        DegreeSpec::ExtendedAc { .. } => Some(r * q.pow(m - 1) * (q - 1 - d)),
    }
}

pub fn params(q: u64, twist: &TwistVector, spec: &DegreeSpec) -> Result<CodeParams> {
    check_degree(q, spec.d())?;
    let m = twist.m() as u32;
    let r = twist.r() as u64;
    let blocks = match spec {
        DegreeSpec::ExtendedAc { .. } => {
            ac_basis(twist)?;
            q.pow(m - 1) * (q - 1)
        }
        _ => (q - 1).pow(m),
    };
    let k = match spec {
        DegreeSpec::Total { d } => binomial(*d as u64 + m as u64, m as u64),
        _ => message_monomials(twist, spec)?.len() as u64,
    };
    Ok(CodeParams { blocks, n: blocks * r, k, designed: designed_distance(q, twist, spec) })
}

/// Result of a minimum-distance computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub measured: u64,
    pub designed: Option<u64>,
    pub codewords: u64,
    pub exhaustive: bool,
}

impl DistanceReport {
    pub fn passes(&self) -> bool {
        self.designed.is_none_or(|d| self.measured >= d)
    }

    pub fn check(&self) -> Result<()> {
        if self.passes() {
            Ok(())
        } else {
            Err(Error::BoundViolation(format!(
                "minimum weight {} below designed distance {}",
                self.measured,
                self.designed.unwrap_or(0)
            )))
        }
    }
}

/// Serialized form of an [`LrmCode`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub q: FieldSize,
    pub r: u32,
    pub m: usize,
    pub e: Vec<i64>,
    #[serde(rename = "degreeSpec")]
    pub degree_spec: DegreeSpec,
    pub seed: Option<u64>,
    /// `α` of each prolongation, as codes of `L`.
    pub alphas: Vec<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSize {
    pub p: u32,
    pub a: u32,
}

/// A linearized Reed–Muller code over `L`, viewed as a sum-rank code with
/// one `r × r` block over `F_q` per evaluation point.
#[derive(Clone, Debug)]
pub struct LrmCode {
    ring: Arc<OreRing>,
    spec: DegreeSpec,
    seed: Option<u64>,
    monomials: Vec<ExpVec>,
    cocycles: Vec<Cocycle>,
    points: Vec<EvalPoint>,
    // k rows of length n = r·|points|; entry (i, (t, j)) is X^{u_i} at point t applied to β_j
    generator: Vec<Vec<Elem>>,
}

impl LrmCode {
    pub fn build(ring: &Arc<OreRing>, spec: DegreeSpec, alpha: AlphaChoice) -> Result<Self> {
        let ctx = ring.ctx();
        check_degree(ctx.q(), spec.d())?;
        let twist = ring.twist();
        let monomials = message_monomials(twist, &spec)?;
        let (cocycles, layout) = match &spec {
            DegreeSpec::ExtendedAc { .. } => {
                ac_basis(twist)?;
                let unit = TwistVector::new(vec![1], twist.r())?;
                let adapted = AdaptedBasis::compute(&unit)?;
                let basis = adapted.lattice_basis(&unit);
                let base = enumerate_characters(&basis, ctx)
                    .into_iter()
                    .map(|ch| Cocycle::canonical(ctx, &unit, &adapted, ch))
                    .collect::<Result<Vec<_>>>()?;
                (base, Layout::Affine)
            }
            DegreeSpec::Simplex { basis, experimental: false, .. } => {
                let basis = LatticeBasis::new(twist, basis.iter().cloned().map(ExpVec).collect())?;
                (character_cocycles(ring, &basis)?, Layout::Character)
            }
            _ => (character_cocycles(ring, &ring.default_lattice_basis()?)?, Layout::Character),
        };
        let cocycles = apply_alpha(ctx, cocycles, alpha)?;
        let points = match layout {
            Layout::Character => cocycles.iter().cloned().map(EvalPoint::Character).collect(),
            Layout::Affine => affine_points(ctx, twist.m(), &cocycles),
        };
        let mut code = LrmCode { ring: ring.clone(), spec, seed: None, monomials, cocycles, points, generator: Vec::new() };
        code.generator = code.monomials.iter().map(|u| code.monomial_row(u)).collect::<Result<_>>()?;
        Ok(code)
    }

    pub fn total_degree(ring: &Arc<OreRing>, d: u32) -> Result<Self> {
        Self::build(ring, DegreeSpec::Total { d }, AlphaChoice::Canonical)
    }

    pub fn simplex(ring: &Arc<OreRing>, basis: &LatticeBasis, d: u32) -> Result<Self> {
        let spec = DegreeSpec::Simplex {
            d,
            basis: basis.vectors().iter().map(|v| v.0.clone()).collect(),
            experimental: basis.is_experimental(),
        };
        Self::build(ring, spec, AlphaChoice::Canonical)
    }

    pub fn extended_ac(ring: &Arc<OreRing>, d: u32) -> Result<Self> {
        Self::build(ring, DegreeSpec::ExtendedAc { d }, AlphaChoice::Canonical)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn monomial_row(&self, u: &ExpVec) -> Result<Vec<Elem>> {
        let ctx = self.ctx();
        let l = ctx.l();
        let mut row = Vec::with_capacity(self.len());
        for p in &self.points {
            let (c, s) = p.monomial(u, ctx)?;
            row.extend(ctx.basis().iter().map(|&b| l.mul(c, ctx.frobenius(b, s))));
        }
        Ok(row)
    }

    pub fn ring(&self) -> &Arc<OreRing> {
        &self.ring
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ring.ctx()
    }

    pub fn spec(&self) -> &DegreeSpec {
        &self.spec
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn monomials(&self) -> &[ExpVec] {
        &self.monomials
    }

    pub fn points(&self) -> &[EvalPoint] {
        &self.points
    }

    pub fn cocycles(&self) -> &[Cocycle] {
        &self.cocycles
    }

    /// Length over `L`.
    pub fn len(&self) -> usize {
        self.points.len() * self.ctx().r() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    /// Rank over `L` of the generator matrix.
    pub fn generator_rank(&self) -> usize {
        Matrix::from_rows(self.generator.clone()).rank(self.ctx().l())
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            blocks: self.points.len() as u64,
            n: self.len() as u64,
            k: self.dimension() as u64,
            designed: self.designed_distance(),
        }
    }

    pub fn designed_distance(&self) -> Option<u64> {
        designed_distance(self.ctx().q(), self.ring.twist(), &self.spec)
    }

    pub fn message_poly(&self, msg: &[Elem]) -> Result<OrePoly> {
        if msg.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: msg.len() });
        }
        Ok(OrePoly::from_terms(&self.ring, self.monomials.iter().cloned().zip(msg.iter().copied())))
    }

    /// `msg · G`.
    pub fn encode_flat(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: msg.len() });
        }
        let l = self.ctx().l();
        let mut word = vec![Elem::ZERO; self.len()];
        for (row, &c) in self.generator.iter().zip(msg) {
            if !c.is_zero() {
                for (w, &g) in word.iter_mut().zip(row) {
                    *w = l.add(*w, l.mul(c, g));
                }
            }
        }
        Ok(word)
    }

    /// The codeword as one endomorphism per point.
    pub fn encode(&self, msg: &[Elem]) -> Result<SumRankVector> {
        crate::eval::multi_evaluate(&self.message_poly(msg)?, &self.points)
    }

    pub fn weight(&self, word: &[Elem]) -> usize {
        flat_weight(word, self.ctx())
    }

    pub fn block_ranks(&self, word: &[Elem]) -> Vec<usize> {
        word.chunks(self.ctx().r() as usize).map(|b| symbol_rank(b, self.ctx())).collect()
    }

    /// Minimum sum-rank weight over all nonzero codewords, up to scalars.
    pub fn min_distance_exhaustive(&self, budget: u128) -> Result<DistanceReport> {
        let qq = self.ctx().l().order() as u128;
        let k = self.dimension() as u32;
        let required = qq.checked_pow(k).unwrap_or(u128::MAX);
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let l = self.ctx().l();
        let qq = qq as u64;
        let k = k as usize;
        let mut best = u64::MAX;
        let mut count = 0u64;
        for lead in 0..k {
            let tail = k - 1 - lead;
            let total = qq.pow(tail as u32);
            let w = (0..total)
                .into_par_iter()
                .map(|mut idx| {
                    let mut word = self.generator[lead].clone();
                    for row in &self.generator[lead + 1..] {
                        let c = Elem((idx % qq) as u32);
                        idx /= qq;
                        if !c.is_zero() {
                            for (x, &g) in word.iter_mut().zip(row) {
                                *x = l.add(*x, l.mul(c, g));
                            }
                        }
                    }
                    self.weight(&word) as u64
                })
                .min()
                .unwrap_or(u64::MAX);
            best = best.min(w);
            count += total;
        }
        Ok(DistanceReport { measured: best, designed: self.designed_distance(), codewords: count, exhaustive: true })
    }

    /// Weights of `trials` random nonzero codewords drawn from a seeded stream.
    pub fn sampled_weights(&self, trials: usize, seed: u64) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials)
            .map(|_| {
                let msg = random_message(self.ctx().l(), self.dimension(), &mut rng);
                self.weight(&self.encode_flat(&msg).expect("message length matches")) as u64
            })
            .collect()
    }

    /// Upper estimate of the minimum distance from random codewords.
    pub fn min_distance_sampled(&self, trials: usize, seed: u64) -> DistanceReport {
        let measured = self.sampled_weights(trials, seed).into_iter().min().unwrap_or(u64::MAX);
        DistanceReport { measured, designed: self.designed_distance(), codewords: trials as u64, exhaustive: false }
    }

    /// Checks that `other` (same monomials, other prolongations) assigns the
    /// same rank to every block of every sampled codeword.
    pub fn compare_block_ranks(&self, other: &LrmCode, trials: usize, seed: u64) -> Result<usize> {
        if self.monomials != other.monomials || self.points.len() != other.points.len() {
            return Err(Error::Invariant("codes differ in shape".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..trials {
            let msg = random_message(self.ctx().l(), self.dimension(), &mut rng);
            let a = self.block_ranks(&self.encode_flat(&msg)?);
            let b = other.block_ranks(&other.encode_flat(&msg)?);
            if a != b {
                return Err(Error::Invariant(format!("block ranks differ on sample {t}: {a:?} vs {b:?}")));
            }
        }
        Ok(trials)
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        let ctx = self.ctx();
        CodeDescriptor {
            q: FieldSize { p: ctx.p(), a: ctx.a() },
            r: ctx.r(),
            m: self.ring.m(),
            e: self.ring.twist().e().to_vec(),
            degree_spec: self.spec.clone(),
            seed: self.seed,
            alphas: self.cocycles.iter().map(|c| c.alpha().0).collect(),
        }
    }

    pub fn from_descriptor(d: &CodeDescriptor) -> Result<Self> {
        if d.e.len() != d.m {
            return Err(Error::DimensionMismatch { expected: d.m, got: d.e.len() });
        }
        let ctx = Arc::new(FieldCtx::new(d.q.p, d.q.a, d.r)?);
        let ring = OreRing::new(ctx, TwistVector::new(d.e.clone(), d.r)?)?;
        let alphas = d.alphas.iter().map(|&a| ring.ctx().l().elem(a)).collect::<Result<Vec<_>>>()?;
        let code = Self::build(&ring, d.degree_spec.clone(), AlphaChoice::Explicit(alphas))?;
        Ok(match d.seed {
            Some(s) => code.with_seed(s),
            None => code,
        })
    }

    /// Generator rows, each entry an `F_p` digit vector of an element of `L`.
    pub fn export_generator(&self) -> Vec<Vec<Vec<u32>>> {
        let l = self.ctx().l();
        self.generator.iter().map(|row| row.iter().map(|&x| l.digits(x)).collect()).collect()
    }

    pub fn import_generator(&self, rows: &[Vec<Vec<u32>>]) -> Result<Vec<Vec<Elem>>> {
        let l = self.ctx().l();
        rows.iter().map(|row| row.iter().map(|d| l.from_digits(d)).collect()).collect()
    }
}

enum Layout {
    Character,
    Affine,
}

fn character_cocycles(ring: &Arc<OreRing>, basis: &LatticeBasis) -> Result<Vec<Cocycle>> {
    let ctx = ring.ctx();
    let adapted = ring.adapted()?;
    enumerate_characters(basis, ctx)
        .into_iter()
        .map(|ch: Character| Cocycle::canonical(ctx, ring.twist(), adapted, ch))
        .collect()
}

fn apply_alpha(ctx: &FieldCtx, cocycles: Vec<Cocycle>, alpha: AlphaChoice) -> Result<Vec<Cocycle>> {
    match alpha {
        AlphaChoice::Canonical => Ok(cocycles),
        AlphaChoice::Shifted(k) => cocycles.iter().map(|c| c.shifted(ctx, k)).collect(),
        AlphaChoice::Explicit(alphas) => {
            if alphas.len() != cocycles.len() {
                return Err(Error::DimensionMismatch { expected: cocycles.len(), got: alphas.len() });
            }
            cocycles
                .into_iter()
                .zip(alphas)
                .map(|(c, a)| {
                    let adapted = AdaptedBasis::compute(c.twist())?;
                    Cocycle::new(ctx, c.twist(), &adapted, c.character().clone(), a)
                })
                .collect()
        }
    }
}

// prefixes lexicographic in F_q codes (first coordinate most significant), last
// coordinate in the order of the prolongations
fn affine_points(ctx: &FieldCtx, m: usize, last: &[Cocycle]) -> Vec<EvalPoint> {
    let q = ctx.q();
    let total = q.pow(m as u32 - 1);
    let mut out = Vec::with_capacity(total as usize * last.len());
    for mut idx in 0..total {
        let mut prefix = vec![Elem::ZERO; m - 1];
        for i in (0..m - 1).rev() {
            prefix[i] = Elem((idx % q) as u32);
            idx /= q;
        }
        for c in last {
            out.push(EvalPoint::Affine { prefix: prefix.clone(), last: c.clone() });
        }
    }
    out
}
