use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteField;
use crate::error::{Error, Result};
use crate::ratmap::ProjPoint;

/// Rejection attempts before giving up on a configuration.
pub const SAMPLE_ATTEMPTS: usize = 10_000;

/// `n` distinct seeded random points of `P^1(F_q)`, avoiding every
/// configuration rejected by `forbidden`.
///
/// `min_order` defaults to `4n`; fields smaller than it are refused.
pub fn sample_general_points(
    n: usize,
    field: &FiniteField,
    seed: u64,
    min_order: Option<u64>,
    forbidden: &dyn Fn(&[ProjPoint]) -> bool,
) -> Result<Vec<ProjPoint>> {
    sample_points_in_subfield(n, field, field.degree(), seed, min_order, forbidden)
}

/// As `sample_general_points`, with the points drawn from the subfield of
/// degree `j` over the prime field (`j` must divide the field degree).
pub fn sample_points_in_subfield(
    n: usize,
    field: &FiniteField,
    j: u32,
    seed: u64,
    min_order: Option<u64>,
    forbidden: &dyn Fn(&[ProjPoint]) -> bool,
) -> Result<Vec<ProjPoint>> {
    if j == 0 || field.degree() % j != 0 {
        return Err(Error::Precondition(format!("no subfield of degree {j} in a field of degree {}", field.degree())));
    }
    let sub = (field.characteristic() as u64).pow(j);
    let pool: Vec<ProjPoint> = field
        .elements()
        .filter(|&a| field.pow(a, sub) == a)
        .map(ProjPoint::Finite)
        .chain(std::iter::once(ProjPoint::Infinity))
        .collect();
    let q = pool.len() as u64 - 1;
    let min = min_order.unwrap_or(4 * n as u64);
    if q < min {
        return Err(Error::SamplingExhausted(format!("field of order {q} below minimum {min}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let mut pts: Vec<ProjPoint> = Vec::with_capacity(n);
        while pts.len() < n {
            if pts.len() > pool.len() {
                break;
            }
            let pt = pool[rng.gen_range(0..pool.len())];
            if !pts.contains(&pt) {
                pts.push(pt);
            }
        }
        if pts.len() == n && !forbidden(&pts) {
            return Ok(pts);
        }
    }
    Err(Error::SamplingExhausted(format!("no admissible configuration of {n} points in {SAMPLE_ATTEMPTS} attempts")))
}
