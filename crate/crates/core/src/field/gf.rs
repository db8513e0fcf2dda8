//! Table-driven arithmetic in a single finite field `F_{p^N}`.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{N-1} p^{N-1}`
//! where `c_i` are the coefficients in the power basis of the defining
//! modulus. Multiplication goes through discrete-log tables, so the field
//! must stay small (the order is capped at `MAX_ORDER`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`Gf`].
pub const MAX_ORDER: u64 = 1 << 22;

/// Fields up to this order precompute full addition tables.
const ADD_TABLE_LIMIT: u32 = 1024;

/// An element of some [`Gf`], in its base-`p` integer encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Polynomials over `F_p` as little-endian coefficient vectors.
pub(crate) mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (k, &mk) in m.iter().enumerate() {
                let sub = (lead as u64 * mk as u64) % p as u64;
                r[shift + k] = ((r[shift + k] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    /// Digits of `code` in base `p`, `len` of them.
    pub fn from_code(mut code: u64, p: u32, len: usize) -> Vec<u32> {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push((code % p as u64) as u32);
            code /= p as u64;
        }
        v
    }

    pub fn to_code(v: &[u32], p: u32) -> u64 {
        v.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        for dd in 1..=deg / 2 {
            let count = (p as u64).pow(dd as u32);
            for low in 0..count {
                let mut g = from_code(low, p, dd);
                g.push(1);
                if rem_monic(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// The finite field `F_{p^N}` with fixed modulus and discrete-log tables.
#[derive(Clone)]
pub struct Gf {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
}

impl std::fmt::Debug for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p, self.degree, self.modulus)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Gf {
    /// `F_{p^degree}` defined by the smallest monic irreducible of that degree,
    /// ordered by integer encoding (highest non-leading coefficient first).
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        Self::check_size(p, degree)?;
        let count = (p as u64).pow(degree);
        for low in 0..count {
            let mut f = fp_poly::from_code(low, p, degree as usize);
            f.push(1);
            if fp_poly::is_irreducible(&f, p) {
                return Self::build(p, f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Field defined by an explicit monic modulus (little-endian coefficients).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is not a monic polynomial over F_{p}")));
        }
        Self::check_size(p, modulus.len() as u32 - 1)?;
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Self::build(p, modulus)
    }

    fn check_size(p: u32, degree: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        match (p as u64).checked_pow(degree) {
            Some(q) if q <= MAX_ORDER => Ok(()),
            _ => Err(Error::InvalidField(format!("field of order {p}^{degree} exceeds the supported size"))),
        }
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let degree = modulus.len() as u32 - 1;
        let order = p.pow(degree);
        let n = degree as usize;
        let mul_slow = |a: u32, b: u32| -> u32 {
            let prod = fp_poly::mul(&fp_poly::from_code(a as u64, p, n), &fp_poly::from_code(b as u64, p, n), p);
            fp_poly::to_code(&fp_poly::rem_monic(&prod, &modulus, p), p) as u32
        };
        // smallest primitive element by encoding
        let mut exp = Vec::new();
        for g in 1..order {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = mul_slow(x, g);
                if x == 1 || exp.len() >= order as usize {
                    break;
                }
            }
            if exp.len() == order as usize - 1 {
                break;
            }
        }
        debug_assert_eq!(exp.len(), order as usize - 1);
        let mut log = vec![u32::MAX; order as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        let neg_table = (0..order)
            .map(|a| {
                let d = fp_poly::from_code(a as u64, p, n);
                let nd: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
                fp_poly::to_code(&nd, p) as u32
            })
            .collect();
        let mut gf = Gf { p, degree, order, modulus, exp, log, add_table: None, neg_table };
        if order <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = gf.add_digits(a, b);
                }
            }
            gf.add_table = Some(t);
        }
        Ok(gf)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element (smallest encoding of multiplicative order `order - 1`).
    pub fn primitive(&self) -> Elem {
        Elem(self.exp.get(1).copied().unwrap_or(1))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() > self.degree as usize || digits.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement(format!("{digits:?} is not an element of {self:?}")));
        }
        Ok(Elem(fp_poly::to_code(digits, self.p) as u32))
    }

    pub fn digits(&self, x: Elem) -> Vec<u32> {
        fp_poly::from_code(x.0 as u64, self.p, self.degree as usize)
    }

    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.order {
            Ok(Elem(code))
        } else {
            Err(Error::InvalidElement(format!("code {code} out of range for {self:?}")))
        }
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y, mut pw, mut out) = (a, b, 1u32, 0u32);
        for _ in 0..self.degree {
            out += ((x % self.p + y % self.p) % self.p) * pw;
            x /= self.p;
            y /= self.p;
            pw = pw.wrapping_mul(self.p);
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => Elem(t[(a.0 * self.order + b.0) as usize]),
            None => Elem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Elem(self.exp[(s % (self.order as u64 - 1)) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize];
        let n = self.order - 1;
        Some(Elem(self.exp[((n - l) % n) as usize]))
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero in finite field"))
    }

    /// `a^k` for any integer `k` (negative exponents need `a != 0`).
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        if a.0 == 0 {
            assert!(k >= 0, "zero raised to a negative power");
            return if k == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let n = (self.order - 1) as i128;
        let e = (self.log[a.0 as usize] as i128 * k as i128).rem_euclid(n);
        Elem(self.exp[e as usize])
    }

    /// `a^k` with the exponent given modulo `order - 1` (for huge powers such as `q^i`).
    pub fn pow_u128(&self, a: Elem, k: u128) -> Elem {
        if a.0 == 0 {
            return if k == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let n = (self.order - 1) as u128;
        let e = (self.log[a.0 as usize] as u128 * (k % n)) % n;
        Elem(self.exp[e as usize])
    }

    /// Discrete logarithm to the base [`Gf::primitive`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// `primitive^k`.
    pub fn exp(&self, k: u64) -> Elem {
        Elem(self.exp[(k % (self.order as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.order as u64 - 1;
        Some(n / gcd_u64(l, n))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Embed a prime-field integer.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    /// Evaluate a polynomial with `F_p` coefficients at `x`.
    pub fn eval_fp_poly(&self, coeffs: &[u32], x: Elem) -> Elem {
        coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), Elem(c)))
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}
