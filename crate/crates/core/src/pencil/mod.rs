//! Pencils of polynomials of degree at most `d`, i.e. points of `G(1, d)`,
//! and brute-force verification of counts by enumerating them over `F_q`.

mod census;
mod enumerate;
pub(crate) mod linalg;
mod sample;
mod three_point;

pub use census::{count_maps_bruteforce, genericity_sweep, CensusReport, SweepReport, MAX_WITNESSES};
pub use enumerate::{enumerate_pencils, gaussian_binomial, PencilIter, DEFAULT_BUDGET};
pub use sample::{sample_general_points, sample_points_in_subfield, SAMPLE_ATTEMPTS};
pub use three_point::{solve_three_point, ThreePointSolution};

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::algebra::{binomial_mod, Fe, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::ratmap::{Divisor, ProjPoint, RatMap};

/// A two-dimensional subspace of polynomials of degree `<= d`, stored as its
/// reduced row echelon basis (columns in increasing degree).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pencil {
    field: FiniteField,
    rows: [Vec<Fe>; 2],
}

impl Pencil {
    pub fn from_polys(f: &Poly, g: &Poly, d: usize) -> Result<Pencil> {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        let too_big = |p: &Poly| p.degree().is_some_and(|n| n > d);
        if too_big(f) || too_big(g) {
            return Err(Error::Precondition(format!("polynomial degree exceeds {d}")));
        }
        let pad = |p: &Poly| (0..=d).map(|i| p.coeff(i)).collect::<Vec<_>>();
        Self::from_rows(f.field(), pad(f), pad(g))
    }

    /// Row-reduces two coefficient vectors of equal length `d + 1`.
    pub fn from_rows(field: &FiniteField, a: Vec<Fe>, b: Vec<Fe>) -> Result<Pencil> {
        if a.len() != b.len() || a.len() < 2 {
            return Err(Error::Precondition("rows must have equal length d + 1 >= 2".into()));
        }
        let rows = linalg::rref2(field, a, b)
            .ok_or_else(|| Error::Precondition("rows do not span a pencil".into()))?;
        Ok(Pencil { field: field.clone(), rows })
    }

    /// Trusts that `rows` is already in reduced echelon form.
    pub(crate) fn from_echelon(field: &FiniteField, rows: [Vec<Fe>; 2]) -> Pencil {
        Pencil { field: field.clone(), rows }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn rows(&self) -> &[Vec<Fe>; 2] {
        &self.rows
    }

    /// Pivot columns of the two rows.
    pub fn pivots(&self) -> (usize, usize) {
        let piv = |r: &Vec<Fe>| r.iter().position(|c| !c.is_zero()).unwrap();
        (piv(&self.rows[0]), piv(&self.rows[1]))
    }

    pub fn polys(&self) -> (Poly, Poly) {
        (
            Poly::new(&self.field, self.rows[0].clone()),
            Poly::new(&self.field, self.rows[1].clone()),
        )
    }

    /// Common zeros of the pencil, including at infinity (where the order is
    /// `d` minus the largest degree).
    pub fn base_divisor(&self) -> Result<Divisor> {
        let (f, g) = self.polys();
        let mut div = Divisor::new();
        let gcd = f.gcd(&g)?;
        let (roots, residual) = gcd.rational_roots()?;
        for (a, m) in roots {
            div.add_point(ProjPoint::Finite(a), m);
        }
        div.add_residual(residual as u32);
        let top = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
        div.add_point(ProjPoint::Infinity, (self.d() - top) as u32);
        Ok(div)
    }

    /// The induced map after cancelling base points, with the cancelled divisor.
    pub fn to_ratmap(&self) -> Result<(RatMap, Divisor)> {
        let base = self.base_divisor()?;
        let (f, g) = self.polys();
        let (map, _) = RatMap::new(f, g)?;
        Ok((map, base))
    }

    /// Whether some nonzero member vanishes to order `>= e` at `pt`.
    pub fn schubert_condition(&self, pt: ProjPoint, e: usize) -> bool {
        let cond = Condition::new(&self.field, self.d(), pt, e);
        cond.holds(&self.field, &self.rows)
    }

    pub fn to_json(&self) -> Value {
        let fmt_row = |r: &Vec<Fe>| r.iter().map(|&c| self.field.format(c)).collect::<Vec<_>>().join(",");
        let map = self.to_ratmap().map(|(m, _)| m.to_text()).ok();
        json!({
            "rows": [fmt_row(&self.rows[0]), fmt_row(&self.rows[1])],
            "map": map,
        })
    }
}

impl Ord for Pencil {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows.cmp(&other.rows)
    }
}

impl PartialOrd for Pencil {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Pencil {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, b) = self.polys();
        write!(f, "Pencil<{} ; {}>", a.to_text(), b.to_text())
    }
}

/// A ramification condition of order `e` at a point, as `e` linear
/// functionals on coefficient vectors: Hasse derivatives at a finite point,
/// top coefficients at infinity.
pub(crate) struct Condition {
    pub e: usize,
    functionals: Vec<Vec<Fe>>,
}

impl Condition {
    pub fn new(field: &FiniteField, d: usize, pt: ProjPoint, e: usize) -> Condition {
        let p = field.characteristic() as u64;
        let functionals = (0..e.min(d + 1))
            .map(|k| {
                (0..=d)
                    .map(|i| match pt {
                        ProjPoint::Infinity => {
                            if i == d - k {
                                Fe::ONE
                            } else {
                                Fe::ZERO
                            }
                        }
                        ProjPoint::Finite(a) if i >= k => {
                            let c = binomial_mod(i as u64, k as u64, p);
                            field.mul(field.from_int(c as i64), field.pow(a, (i - k) as u64))
                        }
                        ProjPoint::Finite(_) => Fe::ZERO,
                    })
                    .collect()
            })
            .collect();
        Condition { e, functionals }
    }

    /// Rank of the `2 x e` evaluation matrix is at most one.
    pub fn holds(&self, field: &FiniteField, rows: &[Vec<Fe>; 2]) -> bool {
        let dot = |l: &[Fe], r: &[Fe]| l.iter().zip(r).fold(Fe::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
        let mut pivot: Option<(Fe, Fe)> = None;
        for l in &self.functionals {
            let u = dot(l, &rows[0]);
            let v = dot(l, &rows[1]);
            match pivot {
                None => {
                    if !u.is_zero() || !v.is_zero() {
                        pivot = Some((u, v));
                    }
                }
                Some((pu, pv)) => {
                    if field.mul(pu, v) != field.mul(pv, u) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
