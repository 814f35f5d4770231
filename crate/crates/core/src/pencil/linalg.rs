use crate::algebra::{Fe, FiniteField};

/// Basis of the right kernel of `rows` (each of length `ncols`).
pub(crate) fn nullspace(field: &FiniteField, mut rows: Vec<Vec<Fe>>, ncols: usize) -> Vec<Vec<Fe>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for col in 0..ncols {
                    let t = field.mul(f, rows[r][col]);
                    rows[i][col] = field.sub(rows[i][col], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Fe::ZERO; ncols];
        v[free] = Fe::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(rows[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Reduced row echelon form of two rows; `None` when they are dependent.
pub(crate) fn rref2(field: &FiniteField, mut a: Vec<Fe>, mut b: Vec<Fe>) -> Option<[Vec<Fe>; 2]> {
    let n = a.len();
    let c1 = (0..n).find(|&c| !a[c].is_zero() || !b[c].is_zero())?;
    if a[c1].is_zero() {
        std::mem::swap(&mut a, &mut b);
    }
    scale_row(field, &mut a, c1);
    eliminate(field, &mut b, &a, c1);
    let c2 = (0..n).find(|&c| !b[c].is_zero())?;
    scale_row(field, &mut b, c2);
    eliminate(field, &mut a, &b, c2);
    Some([a, b])
}

fn scale_row(field: &FiniteField, row: &mut [Fe], pivot: usize) {
    let inv = field.inv(row[pivot]);
    for x in row.iter_mut() {
        *x = field.mul(*x, inv);
    }
}

fn eliminate(field: &FiniteField, row: &mut [Fe], by: &[Fe], pivot: usize) {
    let f = row[pivot];
    if f.is_zero() {
        return;
    }
    for (x, &y) in row.iter_mut().zip(by) {
        *x = field.sub(*x, field.mul(f, y));
    }
}
