//! Ready-made families used by tests, benchmarks and the command line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BiPoly, MapFamily, Section, SectionPoint};
use crate::algebra::{Fe, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::ratmap::ProjPoint;

/// `sum_i c_i (a y + b)^i (c y + d)^(n - i)` for `P = sum_i c_i x^i`.
pub fn precompose(bp: &BiPoly, m: [Fe; 4], n: usize) -> BiPoly {
    let k = bp.field();
    let top = BiPoly::from_x_poly(&Poly::new(k, vec![m[1], m[0]]));
    let bot = BiPoly::from_x_poly(&Poly::new(k, vec![m[3], m[2]]));
    let pow = |b: &BiPoly, e: usize| (0..e).fold(BiPoly::from_x_poly(&Poly::one(k)), |acc, _| &acc * b);
    let mut acc = BiPoly::zero(k);
    for (i, c) in bp.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &(&pow(&top, i) * &pow(&bot, n - i)).scale_t(c);
        acc = &acc + term;
    }
    acc
}

/// Degree-3 maps simply ramified at `0, 1, inf, lambda(t)` in characteristic 3,
/// written in the coordinate `y = 1/(x - s)` with `1/(lambda - s) = mu(t)`,
/// `mu = -1/(1 + s) + tail(t)`. At `t = 0` the cross-ratio becomes `-1` and
/// the member degenerates to a Frobenius pullback.
pub fn four_point_family(field: &FiniteField, s: Fe, tail: &Poly) -> Result<MapFamily> {
    if field.characteristic() != 3 {
        return Err(Error::Precondition("the four-point family lives in characteristic 3".into()));
    }
    if field.pow(s, 3) == s {
        return Err(Error::Precondition("s must lie outside the prime field".into()));
    }
    if !tail.eval(Fe::ZERO).is_zero() || tail.is_zero() {
        return Err(Error::Precondition("tail must be a nonzero multiple of t".into()));
    }
    let k = field;
    let one = Poly::one(k);
    let s1 = k.add(Fe::ONE, s);
    let mu = &Poly::constant(k, k.neg(k.inv(s1))) + tail;
    let a2 = &mu.scale(s1) + &one;
    let b0 = &mu.scale(s) + &one;
    let zero = Poly::zero(k);
    let f_x = BiPoly::new(k, vec![zero.clone(), zero.clone(), a2.clone(), mu.clone()]);
    let g_x = BiPoly::new(k, vec![b0, a2]);
    let m = [s, Fe::ONE, Fe::ONE, Fe::ZERO];
    let num = precompose(&f_x, m, 3);
    let den = precompose(&g_x, m, 3);
    let pt = |a: Fe| Section::constant(k, ProjPoint::Finite(a), 2);
    let sections = vec![
        pt(k.neg(k.inv(s))),
        pt(Fe::ZERO),
        pt(k.inv(k.sub(Fe::ONE, s))),
        Section { point: SectionPoint::Finite(mu), order: 2 },
    ];
    MapFamily::new(num, den, sections)
}

/// `(x^3 + t x^2) / (t x + t - 1)` over a field of characteristic 3: simple
/// ramification at `0, inf, 1, t - 1`, inseparable special fiber `-x^3`.
pub fn cross_ratio_family(field: &FiniteField) -> Result<MapFamily> {
    if field.characteristic() != 3 {
        return Err(Error::Precondition("the cross-ratio family lives in characteristic 3".into()));
    }
    let num = BiPoly::from_ints(field, &[&[], &[], &[0, 1], &[1]]);
    let den = BiPoly::from_ints(field, &[&[-1, 1], &[0, 1]]);
    let c = |a: i64| Section::constant(field, ProjPoint::Finite(field.from_int(a)), 2);
    let sections = vec![
        c(0),
        Section { point: SectionPoint::Infinity, order: 2 },
        c(1),
        Section { point: SectionPoint::Finite(Poly::from_ints(field, &[-1, 1])), order: 2 },
    ];
    MapFamily::new(num, den, sections)
}

/// `x^p + t x^(p+1)`.
pub fn frobenius_unit_family(field: &FiniteField) -> Result<MapFamily> {
    let p = field.characteristic() as usize;
    let mut rows: Vec<Poly> = vec![Poly::zero(field); p + 2];
    rows[p] = Poly::one(field);
    rows[p + 1] = Poly::x(field);
    MapFamily::new(BiPoly::new(field, rows), BiPoly::from_x_poly(&Poly::one(field)), vec![])
}

fn random_poly<R: Rng>(field: &FiniteField, deg: usize, rng: &mut R) -> Poly {
    Poly::new(field, (0..=deg).map(|_| field.random(rng)).collect())
}

/// `(u^p + t h) / (v^p + t k)` with `deg u = r` and `deg h, deg k <= p r`,
/// chosen at random until the generic fiber is separable and base-point free.
pub fn random_inseparable_family(field: &FiniteField, r: usize, seed: u64) -> Result<MapFamily> {
    let p = field.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let u = random_poly(field, r, &mut rng);
        let v = random_poly(field, r, &mut rng);
        let h = random_poly(field, p as usize * r, &mut rng);
        let g = random_poly(field, p as usize * r, &mut rng);
        if u.degree() != Some(r) || !u.gcd(&v)?.is_constant() || v.is_zero() {
            continue;
        }
        let t = Poly::x(field);
        let lift = |a: &Poly| BiPoly::from_x_poly(&a.pow(p));
        let num = &lift(&u) + &BiPoly::from_x_poly(&h).scale_t(&t);
        let den = &lift(&v) + &BiPoly::from_x_poly(&g).scale_t(&t);
        let Ok(fam) = MapFamily::new(num, den, vec![]) else { continue };
        if fam.wronskian().is_zero() || fam.special_fiber_separable() {
            continue;
        }
        return Ok(fam);
    }
    Err(Error::SamplingExhausted("no separable family found".into()))
}
