//! Prime-power finite fields `F_{p^k}` with table-driven arithmetic.
//!
//! Elements are stored as their coefficient vector over `F_p` packed into a
//! single integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` (coefficients of the
//! residue of `y` modulo the defining polynomial). Multiplication goes through
//! discrete-log tables and addition through Zech logarithms, so every
//! operation is a couple of table lookups.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of some [`FiniteField`]. Only meaningful together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Packed base-`p` value of the coefficient vector.
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    log: Vec<u32>,
    /// `exp[i] = g^i`, doubled in length so sums of two logs need no reduction.
    exp: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, or `NO_LOG` when `1 + g^n = 0`.
    zech: Vec<u32>,
    neg: Vec<u32>,
    /// `p^(k-1) mod (q-1)`: the exponent inverting Frobenius.
    root_exp: u64,
}

/// The finite field `F_p[y]/(modulus)`. Cheap to clone (shared tables).
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Tables>,
}

impl FiniteField {
    /// `F_{p^k}` with the lexicographically least monic irreducible modulus,
    /// comparing coefficient vectors from `y^{k-1}` down to the constant term.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidExtensionDegree);
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(k)))?;
        let tail_count = q; // p^k choices for the non-leading coefficients
        for idx in 0..tail_count {
            let mut modulus = digits(idx as u32, p, k);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return Self::build(p, k, q as u32, modulus);
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// A field with an explicitly chosen monic modulus (low degree first).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        check_prime(p)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus);
        }
        let k = (modulus.len() - 1) as u32;
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(k)))?;
        if !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        Self::build(p, k, q as u32, modulus.to_vec())
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Result<Self> {
        let order = (q - 1) as u64;
        let g = find_generator(p, k, q, &modulus)?;
        let mut log = vec![NO_LOG; q as usize];
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let gd = digits(g, p, k);
        let mut cur = digits(1, p, k);
        for i in 0..(q - 1) as usize {
            let v = undigits(&cur, p);
            exp[i] = v;
            log[v as usize] = i as u32;
            cur = mulmod(&cur, &gd, &modulus, p);
        }
        for i in 0..(q - 1) as usize {
            exp[i + q as usize - 1] = exp[i];
        }
        let neg: Vec<u32> = (0..q)
            .map(|v| {
                let d: Vec<u32> = digits(v, p, k).into_iter().map(|c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let zech: Vec<u32> = (0..(q - 1) as usize)
            .map(|n| {
                let v = exp[n];
                let c0 = v % p;
                let w = v - c0 + (c0 + 1) % p;
                if w == 0 {
                    NO_LOG
                } else {
                    log[w as usize]
                }
            })
            .collect();
        let root_exp = if order == 0 { 0 } else { mod_pow(p as u64, (k - 1) as u64, order) };
        Ok(FiniteField {
            inner: Arc::new(Tables { p, k, q, modulus, log, exp, zech, neg, root_exp }),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Element from its packed value; rejects values outside `[0, q)`.
    pub fn element(&self, value: u32) -> Result<Fe> {
        if value < self.inner.q {
            Ok(Fe(value))
        } else {
            Err(Error::InvalidElement(value.to_string()))
        }
    }

    /// The residue class of `y`, a field generator over `F_p` when `k > 1`.
    pub fn gen(&self) -> Fe {
        if self.inner.k == 1 {
            Fe(self.inner.modulus[0].wrapping_neg().wrapping_add(self.inner.p) % self.inner.p)
        } else {
            Fe(self.inner.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.inner.q).map(Fe)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.inner.q))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let t = &*self.inner;
        let la = t.log[a.0 as usize];
        let lb = t.log[b.0 as usize];
        let ord = t.q - 1;
        let mut n = lb + ord - la;
        if n >= ord {
            n -= ord;
        }
        let z = t.zech[n as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            Fe(t.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let t = &*self.inner;
        Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn checked_inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let t = &*self.inner;
        let l = t.log[a.0 as usize];
        let ord = t.q - 1;
        Some(Fe(t.exp[((ord - l) % ord) as usize]))
    }

    /// Multiplicative inverse.
    ///
    /// Panics on zero; use [`FiniteField::checked_inv`] when zero is possible.
    pub fn inv(&self, a: Fe) -> Fe {
        self.checked_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let t = &*self.inner;
        let ord = (t.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64;
        Fe(t.exp[((l * (n % ord)) % ord) as usize])
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.inner.p as u64)
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        self.pow(a, self.inner.root_exp)
    }

    /// Text form: plain integer when `k = 1`, otherwise `k` base-`p` digits
    /// with the `y^{k-1}` coefficient first.
    pub fn format(&self, a: Fe) -> String {
        let t = &*self.inner;
        if t.k == 1 {
            return a.0.to_string();
        }
        let ds = digits(a.0, t.p, t.k);
        if t.p <= 36 {
            ds.iter()
                .rev()
                .map(|&d| std::char::from_digit(d, 36).unwrap())
                .collect()
        } else {
            ds.iter().rev().map(|d| d.to_string()).collect::<Vec<_>>().join(":")
        }
    }

    pub fn parse(&self, s: &str) -> Result<Fe> {
        let t = &*self.inner;
        let s = s.trim();
        let bad = || Error::InvalidElement(s.to_string());
        if t.k == 1 {
            let n: i128 = s.parse().map_err(|_| bad())?;
            return Ok(Fe(n.rem_euclid(t.p as i128) as u32));
        }
        let ds: Vec<u32> = if s.contains(':') {
            s.split(':')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(36).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if ds.len() != t.k as usize || ds.iter().any(|&d| d >= t.p) {
            return Err(bad());
        }
        let low_first: Vec<u32> = ds.into_iter().rev().collect();
        Ok(Fe(undigits(&low_first, t.p)))
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.k)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidCharacteristic(p as u64));
    }
    Ok(())
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

// Small dense F_p[y] helpers used only while building tables.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, (p - 2) as u64, p as u64) as u32
}

fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lc_inv % p as u64;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = c * mi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn mul_raw(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut v);
    v
}

/// Product of two residues, returned as a length-`k` digit vector.
fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut r = rem(&mul_raw(a, b, p), m, p);
    r.resize(k, 0);
    r
}

fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut result = vec![0u32; k];
    result[0] = 1;
    let mut b = base.to_vec();
    b.resize(k, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn gcd_raw(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Root-free and coprime to `y^{p^j} - y` for every `1 <= j <= k/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    // roots in F_p
    for a in 0..p as u64 {
        let v = m.iter().rev().fold(0u64, |acc, &c| (acc * a + c as u64) % p as u64);
        if v == 0 {
            return false;
        }
    }
    let mut y = vec![0u32; k];
    y[1] = 1;
    let mut h = y.clone();
    for _ in 1..=k / 2 {
        h = powmod(&h, p as u64, m, p);
        let mut diff = h.clone();
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        let g = gcd_raw(m, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn find_generator(p: u32, k: u32, q: u32, m: &[u32]) -> Result<u32> {
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let one = digits(1, p, k);
    for v in 1..q {
        let d = digits(v, p, k);
        if factors.iter().all(|&r| powmod(&d, order / r, m, p) != one) {
            return Ok(v);
        }
    }
    Err(Error::Internal("no multiplicative generator found".into()))
}
