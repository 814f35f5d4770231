use crate::algebra::{Fe, FiniteField};
use crate::error::{Error, Result};

use super::Pencil;

/// Default cap on the number of pencils a single enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Number of 2-dimensional subspaces of `F_q^{d+1}`, or `None` on overflow.
pub fn gaussian_binomial(d: usize, q: u64) -> Option<u128> {
    let q = q as u128;
    let qd = q.checked_pow(d as u32)?;
    let num = qd.checked_mul(q)?.checked_sub(1)?.checked_mul(qd.checked_sub(1)?)?;
    Some(num / ((q * q - 1) * (q - 1)))
}

/// Walks one echelon stratum (pivots `i < j`) in odometer order. The first
/// `prefix.len()` free entries are held fixed, which is how strata are split
/// into independent jobs.
pub(crate) struct StratumWalker<'a> {
    elems: &'a [Fe],
    free: Vec<(usize, usize)>,
    fixed: usize,
    digits: Vec<usize>,
    rows: [Vec<Fe>; 2],
    started: bool,
}

impl<'a> StratumWalker<'a> {
    pub fn new(elems: &'a [Fe], d: usize, i: usize, j: usize, prefix: &[usize]) -> Self {
        let mut rows = [vec![Fe::ZERO; d + 1], vec![Fe::ZERO; d + 1]];
        rows[0][i] = Fe::ONE;
        rows[1][j] = Fe::ONE;
        let free = free_positions(d, i, j);
        let fixed = prefix.len().min(free.len());
        let mut digits = vec![0; free.len()];
        digits[..fixed].copy_from_slice(&prefix[..fixed]);
        for (&(r, c), &dg) in free.iter().zip(&digits) {
            rows[r][c] = elems[dg];
        }
        StratumWalker { elems, free, fixed, digits, rows, started: false }
    }

    pub fn next_rows(&mut self) -> Option<&[Vec<Fe>; 2]> {
        if !self.started {
            self.started = true;
            return Some(&self.rows);
        }
        let q = self.elems.len();
        let mut pos = self.free.len();
        while pos > self.fixed {
            pos -= 1;
            let (r, c) = self.free[pos];
            self.digits[pos] += 1;
            if self.digits[pos] < q {
                self.rows[r][c] = self.elems[self.digits[pos]];
                return Some(&self.rows);
            }
            self.digits[pos] = 0;
            self.rows[r][c] = self.elems[0];
        }
        None
    }
}

pub(crate) fn free_positions(d: usize, i: usize, j: usize) -> Vec<(usize, usize)> {
    let mut free: Vec<(usize, usize)> = (i + 1..=d).filter(|&c| c != j).map(|c| (0, c)).collect();
    free.extend((j + 1..=d).map(|c| (1, c)));
    free
}

/// Pivot pairs of all echelon strata, in lexicographic order.
pub(crate) fn strata(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=d).flat_map(move |i| (i + 1..=d).map(move |j| (i, j)))
}

pub(crate) fn check_budget(d: usize, field: &FiniteField, budget: u128) -> Result<u128> {
    if d == 0 {
        return Err(Error::Precondition("pencils need d >= 1".into()));
    }
    let needed = gaussian_binomial(d, field.order() as u64).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// Every pencil in `G(1, d)(F_q)` exactly once, stratum by stratum.
pub fn enumerate_pencils(d: usize, field: &FiniteField, budget: u128) -> Result<PencilIter> {
    check_budget(d, field, budget)?;
    Ok(PencilIter {
        field: field.clone(),
        elems: field.elements().collect(),
        d,
        strata: strata(d).collect(),
        next_stratum: 0,
        current: None,
    })
}

pub struct PencilIter {
    field: FiniteField,
    elems: Vec<Fe>,
    d: usize,
    strata: Vec<(usize, usize)>,
    next_stratum: usize,
    current: Option<(Vec<usize>, bool)>,
}

impl Iterator for PencilIter {
    type Item = Pencil;

    fn next(&mut self) -> Option<Pencil> {
        loop {
            if self.current.is_none() {
                let &(i, j) = self.strata.get(self.next_stratum)?;
                self.next_stratum += 1;
                self.current = Some((vec![0; free_positions(self.d, i, j).len()], false));
            }
            let (i, j) = self.strata[self.next_stratum - 1];
            let (digits, started) = self.current.as_mut().unwrap();
            if *started && !advance(digits, self.elems.len()) {
                self.current = None;
                continue;
            }
            *started = true;
            let mut rows = [vec![Fe::ZERO; self.d + 1], vec![Fe::ZERO; self.d + 1]];
            rows[0][i] = Fe::ONE;
            rows[1][j] = Fe::ONE;
            for (&(r, c), &dg) in free_positions(self.d, i, j).iter().zip(digits.iter()) {
                rows[r][c] = self.elems[dg];
            }
            return Some(Pencil::from_echelon(&self.field, rows));
        }
    }
}

fn advance(digits: &mut [usize], q: usize) -> bool {
    for dg in digits.iter_mut().rev() {
        *dg += 1;
        if *dg < q {
            return true;
        }
        *dg = 0;
    }
    false
}
