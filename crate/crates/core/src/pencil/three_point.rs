use crate::algebra::{binomial_mod, Fe, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::ratmap::RatMap;

use super::linalg::nullspace;
use super::Pencil;

/// Result of the linear three-point solver at `0, inf, 1`.
#[derive(Clone, Debug)]
pub struct ThreePointSolution {
    /// Projective dimension of the solution space.
    pub m: usize,
    /// The unique pencil when `m = 0` and the solution spans one.
    pub pencil: Option<Pencil>,
    /// The induced map of that pencil.
    pub map: Option<RatMap>,
    pub separable: bool,
}

/// Solves for `F` vanishing to order `e1` at 0, `G` of degree `<= d - e2`
/// (so `F/G` has a pole of order `>= e2` at infinity), and `(x-1)^{e3} | F - G`.
pub fn solve_three_point(d: usize, e1: usize, e2: usize, e3: usize, field: &FiniteField) -> Result<ThreePointSolution> {
    let es = [e1, e2, e3];
    if es.iter().any(|&e| e == 0 || e > d) {
        return Err(Error::InvalidProfile(format!("orders {es:?} must lie in [1, {d}]")));
    }
    if e1 + e2 + e3 != 2 * d + 1 {
        return Err(Error::InvalidProfile(format!("orders {es:?} do not give degree {d}")));
    }
    let p = field.characteristic() as u64;
    let nf = d - e1 + 1;
    let ng = d - e2 + 1;
    let rows: Vec<Vec<Fe>> = (0..e3)
        .map(|k| {
            let c = |i: usize| field.from_int(binomial_mod(i as u64, k as u64, p) as i64);
            let mut row: Vec<Fe> = (e1..=d).map(c).collect();
            row.extend((0..ng).map(|i| field.neg(c(i))));
            row
        })
        .collect();
    let basis = nullspace(field, rows, nf + ng);
    let m = basis.len() - 1;
    let split = |v: &Vec<Fe>| {
        let mut f = vec![Fe::ZERO; e1];
        f.extend_from_slice(&v[..nf]);
        (Poly::new(field, f), Poly::new(field, v[nf..].to_vec()))
    };
    if m > 0 {
        let mut total = vec![Fe::ZERO; nf + ng];
        for v in &basis {
            for (t, &x) in total.iter_mut().zip(v) {
                *t = field.add(*t, x);
            }
        }
        let separable = basis.iter().chain(std::iter::once(&total)).any(|v| {
            let (f, g) = split(v);
            RatMap::new(f, g).map(|(r, _)| r.is_separable()).unwrap_or(false)
        });
        return Ok(ThreePointSolution { m, pencil: None, map: None, separable });
    }
    let (f, g) = split(&basis[0]);
    let pencil = Pencil::from_polys(&f, &g, d).ok();
    let map = RatMap::new(f, g).ok().map(|(r, _)| r);
    let separable = map.as_ref().is_some_and(|r| r.is_separable());
    Ok(ThreePointSolution { m, pencil, map, separable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::ProjPoint;

    #[test]
    fn cubic_over_f5() {
        let k = FiniteField::prime(5).unwrap();
        let s = solve_three_point(3, 2, 2, 3, &k).unwrap();
        assert_eq!(s.m, 0);
        assert!(s.separable);
        let expected = RatMap::coprime(Poly::from_ints(&k, &[0, 0, 2, 1]), Poly::from_ints(&k, &[1, 2])).unwrap();
        assert_eq!(s.map.as_ref().unwrap(), &expected);
        let f = s.map.unwrap();
        assert_eq!(f.ram_index(ProjPoint::Finite(Fe::ZERO)), 2);
        assert_eq!(f.ram_index(ProjPoint::Infinity), 2);
        assert_eq!(f.ram_index(ProjPoint::Finite(Fe::ONE)), 3);
    }

    #[test]
    fn frobenius_over_f3() {
        let k = FiniteField::prime(3).unwrap();
        let s = solve_three_point(3, 2, 2, 3, &k).unwrap();
        assert_eq!(s.m, 0);
        assert!(!s.separable);
        assert_eq!(s.map.unwrap(), RatMap::polynomial(Poly::from_ints(&k, &[0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn degenerate_square() {
        let k = FiniteField::prime(5).unwrap();
        let s = solve_three_point(2, 1, 2, 2, &k).unwrap();
        assert_eq!(s.m, 0);
        assert!(s.separable);
        assert_eq!(s.map.unwrap().degree(), 2);
    }

    #[test]
    fn invalid_profiles() {
        let k = FiniteField::prime(5).unwrap();
        assert!(matches!(solve_three_point(3, 2, 2, 2, &k), Err(Error::InvalidProfile(_))));
        assert!(matches!(solve_three_point(3, 4, 2, 1, &k), Err(Error::InvalidProfile(_))));
    }
}
