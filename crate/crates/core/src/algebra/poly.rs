//! Dense univariate polynomials over a [`FiniteField`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::field::{Fe, FiniteField};
use crate::error::{Error, Result};

/// Polynomial with coefficients stored low degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<Fe>,
}

/// Which ring operation [`Poly::apply`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
}

/// Result of [`Poly::apply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOutcome {
    Single(Poly),
    QuotRem(Poly, Poly),
}

impl Poly {
    pub fn zero(field: &FiniteField) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::constant(field, Fe::ONE)
    }

    pub fn constant(field: &FiniteField, c: Fe) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `c x^n`.
    pub fn monomial(field: &FiniteField, c: Fe, n: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    pub fn x(field: &FiniteField) -> Self {
        Self::monomial(field, Fe::ONE, 1)
    }

    /// `x - a`.
    pub fn linear(field: &FiniteField, a: Fe) -> Self {
        Self::new(field, vec![field.neg(a), Fe::ONE])
    }

    pub fn new(field: &FiniteField, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Coefficients given as integers, reduced into the prime field.
    pub fn from_ints(field: &FiniteField, ints: &[i64]) -> Self {
        Self::new(field, ints.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, a: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Checked ring arithmetic in one entry point.
    pub fn apply(&self, op: PolyOp, rhs: &Poly) -> Result<PolyOutcome> {
        self.same_field(rhs)?;
        Ok(match op {
            PolyOp::Add => PolyOutcome::Single(self.add_raw(rhs)),
            PolyOp::Sub => PolyOutcome::Single(self.sub_raw(rhs)),
            PolyOp::Mul => PolyOutcome::Single(self.mul_raw(rhs)),
            PolyOp::DivRem => {
                let (q, r) = self.divrem(rhs)?;
                PolyOutcome::QuotRem(q, r)
            }
        })
    }

    pub fn try_add(&self, rhs: &Poly) -> Result<Poly> {
        self.same_field(rhs)?;
        Ok(self.add_raw(rhs))
    }

    pub fn try_sub(&self, rhs: &Poly) -> Result<Poly> {
        self.same_field(rhs)?;
        Ok(self.sub_raw(rhs))
    }

    pub fn try_mul(&self, rhs: &Poly) -> Result<Poly> {
        self.same_field(rhs)?;
        Ok(self.mul_raw(rhs))
    }

    fn add_raw(&self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    fn sub_raw(&self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    fn mul_raw(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..n {
            acc = acc.mul_raw(self);
        }
        acc
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(self.field.inv(lc)),
            None => self.clone(),
        }
    }

    /// Euclidean division `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(rhs)?;
        let db = rhs.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(rhs.coeffs[db]);
        let mut q = vec![Fe::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = f.mul(r[top], lc_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - db;
            q[shift] = c;
            for (i, &b) in rhs.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, b));
            }
        }
        r.truncate(db);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact polynomial division".into()))
        }
    }

    pub fn gcd(&self, rhs: &Poly) -> Result<Poly> {
        Ok(self.gcd_bezout(rhs)?.0)
    }

    /// Extended Euclid: `(g, u, v)` with `g` monic, `g = gcd`, `u*self + v*rhs = g`.
    pub fn gcd_bezout(&self, rhs: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.same_field(rhs)?;
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub_raw(&q.mul_raw(&s1));
            let t = t0.sub_raw(&q.mul_raw(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc_inv = f.inv(r0.leading().expect("nonzero gcd"));
        Ok((r0.scale(lc_inv), s0.scale(lc_inv), t0.scale(lc_inv)))
    }

    /// Largest `m` with `(x - a)^m` dividing `self`.
    pub fn valuation(&self, a: Fe) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = &self.field;
        let mut cur = self.coeffs.clone();
        let mut m = 0;
        loop {
            // synthetic division by (x - a)
            let n = cur.len();
            let mut quot = vec![Fe::ZERO; n - 1];
            let mut acc = Fe::ZERO;
            for i in (0..n).rev() {
                acc = f.add(f.mul(acc, a), cur[i]);
                if i > 0 {
                    quot[i - 1] = acc;
                }
            }
            if !acc.is_zero() || n == 1 {
                return Ok(m);
            }
            m += 1;
            cur = quot;
        }
    }

    /// Number of low-order zero coefficients (valuation at `x = 0`).
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Poly {
        self.hasse_derivative(1)
    }

    /// `j`-th Hasse derivative: `x^i -> C(i, j) x^{i-j}`.
    pub fn hasse_derivative(&self, j: usize) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let coeffs = (j..self.coeffs.len())
            .map(|i| f.mul(self.coeffs[i], f.from_int(binomial_mod(i as u64, j as u64, p) as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    /// True iff the formal derivative vanishes (constants included).
    pub fn is_inseparable(&self) -> bool {
        self.derivative().is_zero()
    }

    /// `g` with `g^p = self`, defined when only exponents divisible by `p` occur.
    pub fn pth_root(&self) -> Result<Poly> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        if self.coeffs.iter().enumerate().any(|(i, c)| i % p != 0 && !c.is_zero()) {
            return Err(Error::NotPthPower);
        }
        let coeffs = self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect();
        Ok(Poly::new(f, coeffs))
    }

    /// `self^p`, i.e. `x -> x^p` together with Frobenius on the coefficients.
    pub fn frobenius_lift(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = f.frobenius(c);
        }
        Poly::new(f, coeffs)
    }

    /// Coefficients of `x^n self(1/x)`; requires `n >= deg`.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut coeffs: Vec<Fe> = (0..=n).map(|i| self.coeff(i)).collect();
        coeffs.reverse();
        Poly::new(&self.field, coeffs)
    }

    /// Roots in the coefficient field with multiplicities, plus the degree of
    /// the part with no roots in the field.
    pub fn rational_roots(&self) -> Result<(Vec<(Fe, u32)>, usize)> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut roots = Vec::new();
        let mut rest = self.clone();
        let mut found = 0usize;
        if deg > 0 {
            for a in self.field.elements() {
                if rest.degree() == Some(0) {
                    break;
                }
                if rest.eval(a).is_zero() {
                    let m = rest.valuation(a)?;
                    rest = rest.div_exact(&Poly::linear(&self.field, a).pow(m))?;
                    roots.push((a, m));
                    found += m as usize;
                }
            }
        }
        Ok((roots, deg - found))
    }

    /// Comma-separated coefficients, low degree first; the zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|&c| self.field.format(c)).collect::<Vec<_>>().join(",")
    }

    pub fn parse(field: &FiniteField, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(Poly::zero(field));
        }
        let coeffs = s.split(',').map(|c| field.parse(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut result = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..ki {
            c = c * ((ni - i) % p) % p;
        }
        let mut den = 1u64;
        for i in 1..=ki {
            den = den * i % p;
        }
        c = c * pow_mod(den, p - 2, p) % p;
        result = result * c % p;
        n /= p;
        k /= p;
    }
    result
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
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

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator forms panic on a field mismatch; the `try_*` methods report it.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}
