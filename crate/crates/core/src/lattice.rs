//! Exponent vectors, the lattice `L = {u : e·u ≡ 0 mod r}`, adapted bases,
//! lattice simplices and their Ehrhart polynomials.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent vector in `Z^m`.
///
/// Ordered graded-lexicographically: by coordinate sum, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn zero(m: usize) -> Self {
        ExpVec(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, o: &[i64]) -> i64 {
        self.0.iter().zip(o).map(|(a, b)| a * b).sum()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i64>> for ExpVec {
    fn from(v: Vec<i64>) -> Self {
        ExpVec(v)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Modular inverse of `a` modulo `m > 0`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// The twist `e ∈ Z^m` together with `r`, subject to `gcd(e_1, …, e_m, r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistVector {
    e: Vec<i64>,
    r: u32,
}

impl TwistVector {
    pub fn new(e: Vec<i64>, r: u32) -> Result<Self> {
        if e.is_empty() || r == 0 {
            return Err(Error::TwistNotCoprime { e, r });
        }
        let g = e.iter().fold(r as i64, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::TwistNotCoprime { e, r });
        }
        Ok(TwistVector { e, r })
    }

    pub fn e(&self) -> &[i64] {
        &self.e
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> usize {
        self.e.len()
    }

    /// `e·u`.
    pub fn pairing(&self, u: &ExpVec) -> i64 {
        u.dot(&self.e)
    }

    /// `e·u mod r` in `0..r`.
    pub fn residue(&self, u: &ExpVec) -> u32 {
        self.pairing(u).rem_euclid(self.r as i64) as u32
    }

    /// Whether `u ∈ L`.
    pub fn lattice_member(&self, u: &ExpVec) -> bool {
        self.residue(u) == 0
    }

    /// The almost-commutative twist `(0, …, 0, 1)`.
    pub fn almost_commutative(m: usize, r: u32) -> Self {
        let mut e = vec![0; m];
        e[m - 1] = 1;
        TwistVector { e, r }
    }
}

/// Small dense integer matrices; `cols[j]` is the `j`-th column.
pub(crate) mod intmat {
    pub fn det(cols: &[Vec<i64>]) -> i64 {
        let n = cols.len();
        if n == 0 {
            return 1;
        }
        // Bareiss on the transpose (same determinant)
        let mut a: Vec<Vec<i128>> = cols.iter().map(|c| c.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    /// `adj` (as rows) with `adj · M = det(M) · I`, where `M` has columns `cols`.
    pub fn adjugate_rows(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = cols.len();
        if n == 1 {
            return vec![vec![1]];
        }
        // M[i][j] = cols[j][i]; adj[i][j] = (-1)^{i+j} det(M without row j, col i)
        let mut adj = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&c| c != i)
                    .map(|c| (0..n).filter(|&rr| rr != j).map(|rr| cols[c][rr]).collect())
                    .collect();
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[i][j] = s * det(&minor);
            }
        }
        adj
    }

    pub fn apply_rows(rows: &[Vec<i64>], u: &[i64]) -> Vec<i64> {
        rows.iter().map(|row| row.iter().zip(u).map(|(a, b)| a * b).sum()).collect()
    }
}

/// A basis `(v_1, …, v_m)` of `Z^m` such that `(v_1, …, v_{m-1}, r·v_m)` is a
/// basis of `L` and `e·v_m ≡ 1 (mod r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedBasis {
    vectors: Vec<ExpVec>,
    #[serde(skip)]
    inverse: Vec<Vec<i64>>,
}

impl AdaptedBasis {
    /// Deterministic construction by unimodular column operations on `e`.
    pub fn compute(twist: &TwistVector) -> Result<Self> {
        let m = twist.m();
        let r = twist.r() as i64;
        let mut cols: Vec<Vec<i64>> = (0..m).map(|i| ExpVec::unit(m, i).0).collect();
        let mut cur = twist.e().to_vec();
        // e·U = (0, …, 0, g)
        for i in 0..m.saturating_sub(1) {
            let (a, b) = (cur[i], cur[m - 1]);
            if a == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a, b);
            let (ci, cl) = (cols[i].clone(), cols[m - 1].clone());
            cols[m - 1] = ci.iter().zip(&cl).map(|(p, q)| x * p + y * q).collect();
            cols[i] = ci.iter().zip(&cl).map(|(p, q)| (b / g) * p - (a / g) * q).collect();
            cur[i] = 0;
            cur[m - 1] = g;
        }
        if cur[m - 1] < 0 {
            cur[m - 1] = -cur[m - 1];
            cols[m - 1] = cols[m - 1].iter().map(|x| -x).collect();
        }
        let g = cur[m - 1];
        let one = 1 % r;
        let vectors: Vec<Vec<i64>> = if g.rem_euclid(r) == one {
            cols
        } else if (-g).rem_euclid(r) == one {
            cols[m - 1] = cols[m - 1].iter().map(|x| -x).collect();
            cols
        } else if m == 1 {
            return Err(Error::NoAdaptedBasis(format!(
                "for m = 1 the generator ±1 of Z pairs to ±{g}, which is not ≡ 1 mod {r}"
            )));
        } else {
            let gi = mod_inverse(g, r).expect("gcd(e, r) = 1");
            // columns (U_m, U_2, …, U_{m-1}, U_1 + g⁻¹ U_m) are unimodular and the
            // last one pairs to g·g⁻¹ ≡ 1
            let mut v = Vec::with_capacity(m);
            v.push(cols[m - 1].clone());
            v.extend(cols[1..m - 1].iter().cloned());
            v.push(cols[0].iter().zip(&cols[m - 1]).map(|(a, b)| a + gi * b).collect());
            v
        };
        let mut vectors: Vec<ExpVec> = vectors.into_iter().map(ExpVec).collect();
        let vm = vectors[m - 1].clone();
        for vi in vectors.iter_mut().take(m - 1) {
            let k = twist.residue(vi) as i64;
            if k != 0 {
                *vi = vi.sub(&vm.scale(k));
            }
        }
        Self::from_vectors(twist, vectors)
    }

    /// Validates the three invariants.
    pub fn from_vectors(twist: &TwistVector, vectors: Vec<ExpVec>) -> Result<Self> {
        let m = twist.m();
        if vectors.len() != m || vectors.iter().any(|v| v.dim() != m) {
            return Err(Error::NoAdaptedBasis("wrong number of vectors".into()));
        }
        let cols: Vec<Vec<i64>> = vectors.iter().map(|v| v.0.clone()).collect();
        let det = intmat::det(&cols);
        if det.abs() != 1 {
            return Err(Error::NoAdaptedBasis(format!("determinant {det} is not ±1")));
        }
        if vectors[..m - 1].iter().any(|v| !twist.lattice_member(v)) {
            return Err(Error::NoAdaptedBasis("v_1, …, v_{m-1} must lie in L".into()));
        }
        if twist.residue(&vectors[m - 1]) != 1 % twist.r() {
            return Err(Error::NoAdaptedBasis("e·v_m must be ≡ 1 mod r".into()));
        }
        let inverse = intmat::adjugate_rows(&cols).into_iter().map(|row| row.into_iter().map(|x| x * det).collect()).collect();
        Ok(AdaptedBasis { vectors, inverse })
    }

    pub fn vectors(&self) -> &[ExpVec] {
        &self.vectors
    }

    /// The distinguished vector `v_m` with `e·v_m ≡ 1 mod r`.
    pub fn last(&self) -> &ExpVec {
        self.vectors.last().unwrap()
    }

    /// Integer coordinates of `u` in this basis of `Z^m`.
    pub fn coords(&self, u: &ExpVec) -> Vec<i64> {
        intmat::apply_rows(&self.inverse, &u.0)
    }

    /// `(v_1, …, v_{m-1}, r·v_m)`.
    pub fn lattice_basis(&self, twist: &TwistVector) -> LatticeBasis {
        let m = self.vectors.len();
        let mut w: Vec<ExpVec> = self.vectors[..m - 1].to_vec();
        w.push(self.last().scale(twist.r() as i64));
        LatticeBasis::new(twist, w).expect("adapted basis yields a lattice basis")
    }
}

/// A family `(w_1, …, w_m)` of vectors of `L`, normally a basis of `L`.
///
/// Families that are not bases are only built through [`LatticeBasis::family`]
/// and carry the `experimental` flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    twist: TwistVector,
    vectors: Vec<ExpVec>,
    det: i64,
    adj: Vec<Vec<i64>>,
    experimental: bool,
}

impl LatticeBasis {
    pub fn new(twist: &TwistVector, vectors: Vec<ExpVec>) -> Result<Self> {
        let b = Self::family(twist, vectors)?;
        if let Some(v) = b.vectors.iter().find(|v| !twist.lattice_member(v)) {
            return Err(Error::NotLatticeBasis(format!("{:?} is not in L", v.0)));
        }
        if b.det.abs() != twist.r() as i64 {
            return Err(Error::NotLatticeBasis(format!("|det| = {} but the index of L is {}", b.det.abs(), twist.r())));
        }
        Ok(LatticeBasis { experimental: false, ..b })
    }

    /// Any nonsingular family of `m` lattice vectors (flagged experimental).
    pub fn family(twist: &TwistVector, vectors: Vec<ExpVec>) -> Result<Self> {
        let m = twist.m();
        if vectors.len() != m || vectors.iter().any(|v| v.dim() != m) {
            return Err(Error::DimensionMismatch { expected: m, got: vectors.len() });
        }
        if let Some(v) = vectors.iter().find(|v| !twist.lattice_member(v)) {
            return Err(Error::NotLatticeBasis(format!("{:?} is not in the lattice", v.0)));
        }
        let cols: Vec<Vec<i64>> = vectors.iter().map(|v| v.0.clone()).collect();
        let det = intmat::det(&cols);
        if det == 0 {
            return Err(Error::NotLatticeBasis("family is linearly dependent".into()));
        }
        let adj = intmat::adjugate_rows(&cols);
        Ok(LatticeBasis { twist: twist.clone(), vectors, det, adj, experimental: true })
    }

    /// The basis in row Hermite normal form (upper triangular, positive pivots,
    /// reduced entries above pivots), derived from the adapted basis.
    pub fn hermite(twist: &TwistVector) -> Result<Self> {
        if twist.m() == 1 {
            return Self::new(twist, vec![ExpVec(vec![twist.r() as i64])]);
        }
        let adapted = AdaptedBasis::compute(twist)?;
        let base = adapted.lattice_basis(twist);
        let m = twist.m();
        let mut h: Vec<Vec<i64>> = base.vectors.iter().map(|v| v.0.clone()).collect();
        for c in 0..m {
            for i in c + 1..m {
                if h[i][c] == 0 {
                    continue;
                }
                let (a, b) = (h[c][c], h[i][c]);
                let (g, x, y) = ext_gcd(a, b);
                let (rc, ri) = (h[c].clone(), h[i].clone());
                h[c] = rc.iter().zip(&ri).map(|(p, q)| x * p + y * q).collect();
                h[i] = rc.iter().zip(&ri).map(|(p, q)| (a / g) * q - (b / g) * p).collect();
            }
            if h[c][c] < 0 {
                h[c] = h[c].iter().map(|x| -x).collect();
            }
            for k in 0..c {
                let f = h[k][c].div_euclid(h[c][c]);
                if f != 0 {
                    let rc = h[c].clone();
                    h[k] = h[k].iter().zip(&rc).map(|(p, q)| p - f * q).collect();
                }
            }
        }
        Self::new(twist, h.into_iter().map(ExpVec).collect())
    }

    pub fn twist(&self) -> &TwistVector {
        &self.twist
    }

    pub fn vectors(&self) -> &[ExpVec] {
        &self.vectors
    }

    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn is_experimental(&self) -> bool {
        self.experimental
    }

    /// `det · λ` where `λ` are the rational coordinates of `u`.
    pub fn scaled_coords(&self, u: &ExpVec) -> Vec<i64> {
        intmat::apply_rows(&self.adj, &u.0)
    }

    /// Integer coordinates of `u`, if `u` lies in the span over `Z`.
    pub fn coords(&self, u: &ExpVec) -> Option<Vec<i64>> {
        self.scaled_coords(u)
            .into_iter()
            .map(|x| (x % self.det == 0).then(|| x / self.det))
            .collect()
    }

    /// `Σ λ_i w_i`.
    pub fn combine(&self, lambda: &[i64]) -> ExpVec {
        let m = self.m();
        let mut out = ExpVec::zero(m);
        for (w, &l) in self.vectors.iter().zip(lambda) {
            out = out.add(&w.scale(l));
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.vectors.iter().map(|v| v.0.clone()).collect()
    }
}

/// The dilated simplex `d·S_w = {Σ λ_i w_i : λ_i ≥ 0, Σ λ_i ≤ d}`.
#[derive(Clone, Debug)]
pub struct Simplex {
    pub basis: LatticeBasis,
    pub d: u32,
}

impl Simplex {
    pub fn new(basis: LatticeBasis, d: u32) -> Self {
        Simplex { basis, d }
    }

    pub fn contains(&self, u: &ExpVec) -> bool {
        let s = self.basis.det.signum();
        let lam = self.basis.scaled_coords(u);
        lam.iter().all(|&x| s * x >= 0) && s * lam.iter().sum::<i64>() <= self.d as i64 * self.basis.det.abs()
    }

    /// All integer points, in lexicographic order.
    pub fn points(&self) -> Vec<ExpVec> {
        let m = self.basis.m();
        let d = self.d as i64;
        let mut lo = vec![0i64; m];
        let mut hi = vec![0i64; m];
        for w in &self.basis.vectors {
            for i in 0..m {
                lo[i] = lo[i].min(d * w.0[i]);
                hi[i] = hi[i].max(d * w.0[i]);
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let u = ExpVec(cur.clone());
            if self.contains(&u) {
                out.push(u);
            }
            // odometer, last coordinate fastest
            let mut i = m;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..m].copy_from_slice(&lo[i + 1..m]);
                    break;
                }
            }
        }
    }

    pub fn count(&self) -> usize {
        self.points().len()
    }
}

/// A polynomial with rational coefficients, ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPoly {
    pub coeffs: Vec<Ratio<i64>>,
}

impl EhrhartPoly {
    pub fn eval(&self, x: i64) -> Ratio<i64> {
        self.coeffs.iter().rev().fold(Ratio::from_integer(0), |acc, c| acc * x + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Ratio<i64> {
        *self.coeffs.last().unwrap()
    }
}

impl fmt::Display for EhrhartPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c.numer() == 0 {
                continue;
            }
            let neg = *c.numer() < 0;
            let a = if neg { -c } else { *c };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if a.is_integer() { a.numer().to_string() } else { format!("({a})") };
            match i {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !(a.is_integer() && *a.numer() == 1) {
                        write!(f, "{coef}")?;
                    }
                    write!(f, "x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// The Ehrhart polynomial of `S_w`, interpolated from the counts at `d = 0, …, m`
/// and checked at `d = m + 1`.
pub fn ehrhart_poly(basis: &LatticeBasis) -> Result<EhrhartPoly> {
    let m = basis.m();
    let counts: Vec<i64> = (0..=m + 1).map(|d| Simplex::new(basis.clone(), d as u32).count() as i64).collect();
    // Lagrange interpolation on x = 0..=m
    let mut coeffs = vec![Ratio::from_integer(0i64); m + 1];
    for j in 0..=m {
        let mut basis_poly = vec![Ratio::from_integer(1i64)];
        let mut denom = 1i64;
        for k in (0..=m).filter(|&k| k != j) {
            // multiply by (x - k)
            let mut next = vec![Ratio::from_integer(0i64); basis_poly.len() + 1];
            for (i, c) in basis_poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * k as i64;
            }
            basis_poly = next;
            denom *= j as i64 - k as i64;
        }
        for (i, c) in basis_poly.iter().enumerate() {
            coeffs[i] += c * Ratio::new(counts[j], denom);
        }
    }
    let poly = EhrhartPoly { coeffs };
    if poly.eval(m as i64 + 1) != Ratio::from_integer(counts[m + 1]) {
        return Err(Error::Ehrhart(format!(
            "interpolant predicts {} points at d = {}, counted {}",
            poly.eval(m as i64 + 1),
            m + 1,
            counts[m + 1]
        )));
    }
    let volume = Ratio::new(basis.det().abs(), factorial(m));
    if poly.leading() != volume {
        return Err(Error::Ehrhart(format!("leading coefficient {} differs from the volume {volume}", poly.leading())));
    }
    let expected = Ratio::new(basis.twist().r() as i64, factorial(m));
    if !basis.is_experimental() && poly.leading() != expected {
        return Err(Error::Ehrhart(format!("leading coefficient {} differs from r/m! = {expected}", poly.leading())));
    }
    Ok(poly)
}

/// `(d+1)⋯(d+m-1)(rd+m)/m!`, the upper bound on `|dS_w ∩ Z^m|` attained by
/// almost-commutative codes.
pub fn ehrhart_upper_bound(m: usize, r: u32, d: u32) -> u64 {
    let d = d as u64;
    let num: u64 = (1..m as u64).map(|i| d + i).product::<u64>() * (r as u64 * d + m as u64);
    num / factorial(m) as u64
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
