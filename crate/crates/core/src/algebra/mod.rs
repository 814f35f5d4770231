//! Exact arithmetic: finite fields and univariate polynomials over them.

mod field;
mod poly;

pub use field::{Fe, FiniteField, MAX_FIELD_ORDER};
pub(crate) use field::is_prime;
pub use poly::{binomial_mod, Poly, PolyOp, PolyOutcome};

use crate::error::{Error, Result};

/// Bezout data for coprime inseparable `a`, `b`: returns `(h1, h2)`, both in
/// `k[x^p]`, with `a*h2 - b*h1 = 1`.
///
/// Works on the `p`-th roots with ordinary extended Euclid and raises the
/// cofactors back to the `p`-th power.
pub fn bezout_inseparable(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let ra = a.pth_root()?;
    let rb = b.pth_root()?;
    let (g, u, v) = ra.gcd_bezout(&rb)?;
    if g.degree() != Some(0) {
        return Err(Error::NotCoprime);
    }
    // u*ra + v*rb = 1  =>  u^p a + v^p b = 1
    let h2 = u.frobenius_lift();
    let h1 = -&v.frobenius_lift();
    Ok((h1, h2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_with_constant() {
        let k = FiniteField::prime(3).unwrap();
        let a = Poly::from_ints(&k, &[0, 0, 0, 1]);
        let b = Poly::one(&k);
        let (h1, h2) = bezout_inseparable(&a, &b).unwrap();
        assert_eq!(&(&a * &h2) - &(&b * &h1), Poly::one(&k));
        assert_eq!(h1, Poly::from_ints(&k, &[-1]));
        assert!(h2.is_zero());
    }

    #[test]
    fn bezout_cubes() {
        let k = FiniteField::prime(3).unwrap();
        let a = Poly::from_ints(&k, &[0, 0, 0, 1]);
        let b = Poly::from_ints(&k, &[1, 0, 0, 1]);
        let (h1, h2) = bezout_inseparable(&a, &b).unwrap();
        assert_eq!(&(&a * &h2) - &(&b * &h1), Poly::one(&k));
        assert!(h1.is_inseparable() && h2.is_inseparable());
        assert!(h1.degree().unwrap_or(0) < 3);
        assert!(h2.degree().unwrap_or(0) < 3);
    }

    #[test]
    fn bezout_rejects_common_factor_and_separable() {
        let k = FiniteField::prime(3).unwrap();
        let a = Poly::from_ints(&k, &[0, 0, 0, 1]);
        assert_eq!(bezout_inseparable(&a, &a).unwrap_err(), Error::NotCoprime);
        let s = Poly::from_ints(&k, &[0, 1]);
        assert_eq!(bezout_inseparable(&a, &s).unwrap_err(), Error::NotPthPower);
    }
}
