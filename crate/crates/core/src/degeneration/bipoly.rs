use std::fmt;

use crate::algebra::{Fe, FiniteField, Poly};
use crate::error::{Error, Result};

/// A polynomial in `x` whose coefficients are polynomials in `t`.
/// `coeffs[i]` is the coefficient of `x^i`; no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: FiniteField,
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<Poly>) -> BiPoly {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FiniteField) -> BiPoly {
        BiPoly::new(field, vec![])
    }

    /// A polynomial in `x` with coefficients constant in `t`.
    pub fn from_x_poly(f: &Poly) -> BiPoly {
        let k = f.field();
        BiPoly::new(k, f.coeffs().iter().map(|&c| Poly::constant(k, c)).collect())
    }

    /// A polynomial in `t` placed in `x`-degree 0.
    pub fn from_t_poly(f: &Poly) -> BiPoly {
        BiPoly::new(f.field(), vec![f.clone()])
    }

    /// From nested integer coefficients: `rows[i]` lists the `t`-coefficients of `x^i`.
    pub fn from_ints(field: &FiniteField, rows: &[&[i64]]) -> BiPoly {
        BiPoly::new(field, rows.iter().map(|r| Poly::from_ints(field, r)).collect())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x` over `k(t)`.
    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale_t(&self, c: &Poly) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn x_derivative(&self) -> BiPoly {
        let k = &self.field;
        BiPoly::new(
            k,
            self.coeffs.iter().enumerate().skip(1).map(|(i, a)| a.scale(k.from_int(i as i64))).collect(),
        )
    }

    /// Substitutes `t = c`.
    pub fn specialize(&self, c: Fe) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a.eval(c)).collect())
    }

    pub fn special_fiber(&self) -> Poly {
        self.specialize(Fe::ZERO)
    }

    /// Largest `s` with `t^s` dividing every coefficient; `None` for zero.
    pub fn t_valuation(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|a| a.low_degree()).min().map(|v| v as u32)
    }

    pub fn div_t_pow(&self, s: u32) -> BiPoly {
        let k = &self.field;
        BiPoly::new(
            k,
            self.coeffs
                .iter()
                .map(|a| Poly::new(k, a.coeffs().iter().skip(s as usize).copied().collect()))
                .collect(),
        )
    }

    /// Value at `x = P(t)`, a polynomial in `t`.
    pub fn eval_x(&self, pt: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * pt) + a;
        }
        acc
    }

    /// `self(P(t) + y)` as a polynomial in `y`.
    pub fn taylor_shift(&self, pt: &Poly) -> BiPoly {
        let k = &self.field;
        let lin = BiPoly::new(k, vec![pt.clone(), Poly::one(k)]);
        let mut acc = BiPoly::zero(k);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &BiPoly::from_t_poly(a);
        }
        acc
    }

    /// Lowest `x`-degree with a nonzero coefficient.
    pub fn x_low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|a| !a.is_zero())
    }

    /// `x^n self(1/x)`; requires `n >= x_degree`.
    pub fn reversed(&self, n: usize) -> BiPoly {
        let mut c: Vec<Poly> = (0..=n).map(|i| self.coeff(i)).collect();
        c.reverse();
        BiPoly::new(&self.field, c)
    }

    /// Gcd of all coefficients, monic (zero for the zero polynomial).
    pub fn content(&self) -> Result<Poly> {
        let mut g = Poly::zero(&self.field);
        for a in self.coeffs.iter().filter(|a| !a.is_zero()) {
            g = if g.is_zero() { a.monic() } else { g.gcd(a)? };
        }
        Ok(g)
    }

    pub fn primitive_part(&self) -> Result<BiPoly> {
        let c = self.content()?;
        if c.is_zero() {
            return Ok(self.clone());
        }
        Ok(BiPoly::new(&self.field, self.coeffs.iter().map(|a| a.div_exact(&c)).collect::<Result<_>>()?))
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b` in `k[t][x]`.
    pub fn pseudo_rem(&self, b: &BiPoly) -> Result<BiPoly> {
        let db = b.x_degree().ok_or(Error::DivisionByZero)?;
        let lb = b.coeffs[db].clone();
        let mut r = self.clone();
        while let Some(dr) = r.x_degree() {
            if dr < db {
                break;
            }
            let lr = r.coeffs[dr].clone();
            let shifted = BiPoly::new(
                &self.field,
                std::iter::repeat_n(Poly::zero(&self.field), dr - db).chain(b.coeffs.iter().map(|c| c * &lr)).collect(),
            );
            r = &r.scale_t(&lb) - &shifted;
        }
        Ok(r)
    }

    /// Degree in `x` of the gcd over `k(t)`, by a primitive remainder sequence.
    pub fn generic_gcd_degree(&self, other: &BiPoly) -> Result<usize> {
        let (mut a, mut b) = (self.primitive_part()?, other.primitive_part()?);
        if a.x_degree() < b.x_degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b)?.primitive_part()?;
            a = b;
            b = r;
        }
        Ok(a.x_degree().unwrap())
    }

    /// `[(c00,c01,...),(c10,...),...]`: one `t`-polynomial per power of `x`.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "[(0)]".into();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|a| format!("({})", a.to_text())).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn parse(field: &FiniteField, s: &str) -> Result<BiPoly> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [...], got {s:?}")))?;
        let mut coeffs = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed '(' in {s:?}")))?;
            coeffs.push(Poly::parse(field, &body[..close])?);
            rest = body[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("expected ',' in {s:?}")));
            }
        }
        Ok(BiPoly::new(field, coeffs))
    }
}

fn zip_with(a: &BiPoly, b: &BiPoly, op: impl Fn(&Poly, &Poly) -> Poly) -> BiPoly {
    assert!(a.field == b.field, "field mismatch");
    let n = a.coeffs.len().max(b.coeffs.len());
    BiPoly::new(&a.field, (0..n).map(|i| op(&a.coeff(i), &b.coeff(i))).collect())
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        assert!(self.field == rhs.field, "field mismatch");
        let k = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(k);
        }
        let mut out = vec![Poly::zero(k); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(k, out)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly{}", self.to_text())
    }
}
