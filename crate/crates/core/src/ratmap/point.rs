use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::algebra::{Fe, FiniteField};
use crate::error::{Error, Result};

/// A point of the projective line over a finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    Finite(Fe),
    Infinity,
}

impl ProjPoint {
    pub fn is_infinity(self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(self) -> Option<Fe> {
        match self {
            ProjPoint::Finite(a) => Some(a),
            ProjPoint::Infinity => None,
        }
    }

    /// `inf` or the field element's text form.
    pub fn format(self, field: &FiniteField) -> String {
        match self {
            ProjPoint::Finite(a) => field.format(a),
            ProjPoint::Infinity => "inf".to_string(),
        }
    }

    pub fn parse(field: &FiniteField, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            Ok(ProjPoint::Infinity)
        } else {
            field.parse(s).map(ProjPoint::Finite)
        }
    }

    /// All `q + 1` points, finite ones first.
    pub fn all(field: &FiniteField) -> impl Iterator<Item = ProjPoint> {
        field.elements().map(ProjPoint::Finite).chain(std::iter::once(ProjPoint::Infinity))
    }
}

/// An invertible 2x2 matrix acting on the projective line by
/// `x -> (a x + b) / (c x + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Mobius {
    pub fn new(field: &FiniteField, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det(field).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mobius { a: Fe::ONE, b: Fe::ZERO, c: Fe::ZERO, d: Fe::ONE }
    }

    /// Rows swapped: `x -> 1/x`.
    pub fn swap() -> Self {
        Mobius { a: Fe::ZERO, b: Fe::ONE, c: Fe::ONE, d: Fe::ZERO }
    }

    pub fn det(&self, field: &FiniteField) -> Fe {
        field.sub(field.mul(self.a, self.d), field.mul(self.b, self.c))
    }

    pub fn inverse(&self, field: &FiniteField) -> Self {
        Mobius { a: self.d, b: field.neg(self.b), c: field.neg(self.c), d: self.a }
    }

    pub fn apply(&self, field: &FiniteField, pt: ProjPoint) -> ProjPoint {
        let (num, den) = match pt {
            ProjPoint::Finite(x) => (
                field.add(field.mul(self.a, x), self.b),
                field.add(field.mul(self.c, x), self.d),
            ),
            ProjPoint::Infinity => (self.a, self.c),
        };
        if den.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(field.div(num, den))
        }
    }
}

/// A finitely supported effective divisor. Points not rational over the
/// working field are only tracked through their total degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    points: BTreeMap<ProjPoint, u32>,
    residual: u32,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_point(&mut self, pt: ProjPoint, mult: u32) {
        if mult > 0 {
            *self.points.entry(pt).or_insert(0) += mult;
        }
    }

    pub fn add_residual(&mut self, degree: u32) {
        self.residual += degree;
    }

    pub fn multiplicity(&self, pt: ProjPoint) -> u32 {
        self.points.get(&pt).copied().unwrap_or(0)
    }

    pub fn points(&self) -> &BTreeMap<ProjPoint, u32> {
        &self.points
    }

    /// Degree of the part supported on non-rational points.
    pub fn residual(&self) -> u32 {
        self.residual
    }

    pub fn degree(&self) -> u32 {
        self.points.values().sum::<u32>() + self.residual
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.residual == 0
    }

    /// `{point: multiplicity}` with `inf` for infinity; a `residual` key is
    /// added only when some support is not rational over the field.
    pub fn to_json(&self, field: &FiniteField) -> Value {
        let mut m = Map::new();
        for (pt, &mult) in &self.points {
            m.insert(pt.format(field), Value::from(mult));
        }
        if self.residual > 0 {
            m.insert("residual".into(), Value::from(self.residual));
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_round_trip() {
        let k = FiniteField::prime(7).unwrap();
        let m = Mobius::new(&k, k.from_int(2), k.from_int(4), k.from_int(1), k.from_int(5)).unwrap();
        let inv = m.inverse(&k);
        for pt in ProjPoint::all(&k) {
            assert_eq!(inv.apply(&k, m.apply(&k, pt)), pt);
        }
        assert_eq!(
            Mobius::new(&k, Fe::ONE, Fe::ONE, Fe::ONE, Fe::ONE).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn divisor_json() {
        let k = FiniteField::prime(5).unwrap();
        let mut d = Divisor::new();
        d.add_point(ProjPoint::Infinity, 1);
        d.add_point(ProjPoint::Finite(Fe::ZERO), 1);
        assert_eq!(d.to_json(&k).to_string(), r#"{"0":1,"inf":1}"#);
        assert_eq!(d.degree(), 2);
    }
}
