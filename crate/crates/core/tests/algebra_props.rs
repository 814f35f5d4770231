use proptest::prelude::*;

use ramcount_core::algebra::bezout_inseparable;
use ramcount_core::{Fe, FiniteField, Poly};

fn fields() -> Vec<FiniteField> {
    [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2), (11, 1)]
        .iter()
        .map(|&(p, k)| FiniteField::new(p, k).unwrap())
        .collect()
}

fn field_strategy() -> impl Strategy<Value = FiniteField> {
    (0..fields().len()).prop_map(|i| fields()[i].clone())
}

fn elem(k: &FiniteField, v: u32) -> Fe {
    k.element(v % k.order()).unwrap()
}

fn poly(k: &FiniteField, vals: &[u32]) -> Poly {
    Poly::new(k, vals.iter().map(|&v| elem(k, v)).collect())
}

proptest! {
    #[test]
    fn field_axioms(k in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (elem(&k, a), elem(&k, b), elem(&k, c));
        prop_assert_eq!(k.add(a, b), k.add(b, a));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a)), Fe::ONE);
        }
        prop_assert_eq!(k.pow(a, k.order() as u64), a);
        prop_assert_eq!(k.pth_root(k.frobenius(a)), a);
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.parse(&k.format(a)).unwrap(), a);
    }

    #[test]
    fn division_with_remainder(k in field_strategy(), a in prop::collection::vec(any::<u32>(), 0..10), b in prop::collection::vec(any::<u32>(), 1..6)) {
        let (a, b) = (poly(&k, &a), poly(&k, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn extended_gcd(k in field_strategy(), a in prop::collection::vec(any::<u32>(), 1..8), b in prop::collection::vec(any::<u32>(), 1..8)) {
        let (a, b) = (poly(&k, &a), poly(&k, &b));
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, u, v) = a.gcd_bezout(&b).unwrap();
        prop_assert_eq!(&(&u * &a) + &(&v * &b), g.clone());
        prop_assert_eq!(g.leading(), Some(Fe::ONE));
        prop_assert!(a.divrem(&g).unwrap().1.is_zero());
        prop_assert!(b.divrem(&g).unwrap().1.is_zero());
    }

    #[test]
    fn frobenius_lift_round_trip(k in field_strategy(), a in prop::collection::vec(any::<u32>(), 0..6)) {
        let a = poly(&k, &a);
        let lifted = a.frobenius_lift();
        prop_assert_eq!(lifted.clone(), a.pow(k.characteristic()));
        prop_assert!(lifted.is_inseparable());
        prop_assert_eq!(lifted.pth_root().unwrap(), a);
    }

    #[test]
    fn hasse_leibniz(k in field_strategy(), a in prop::collection::vec(any::<u32>(), 1..6), b in prop::collection::vec(any::<u32>(), 1..6), j in 0usize..6) {
        let (a, b) = (poly(&k, &a), poly(&k, &b));
        let mut rhs = Poly::zero(&k);
        for i in 0..=j {
            rhs = &rhs + &(&a.hasse_derivative(i) * &b.hasse_derivative(j - i));
        }
        prop_assert_eq!((&a * &b).hasse_derivative(j), rhs);
    }

    #[test]
    fn inseparable_bezout(k in field_strategy(), a in prop::collection::vec(any::<u32>(), 1..4), b in prop::collection::vec(any::<u32>(), 1..4)) {
        let (ra, rb) = (poly(&k, &a), poly(&k, &b));
        prop_assume!(!ra.is_zero() && !rb.is_zero());
        prop_assume!(ra.gcd(&rb).unwrap().degree() == Some(0));
        let (a, b) = (ra.frobenius_lift(), rb.frobenius_lift());
        let (h1, h2) = bezout_inseparable(&a, &b).unwrap();
        prop_assert!(h1.is_inseparable() && h2.is_inseparable());
        prop_assert_eq!(&(&a * &h2) - &(&b * &h1), Poly::one(&k));
    }

    #[test]
    fn root_multiplicities_account_for_degree(k in field_strategy(), roots in prop::collection::vec((any::<u32>(), 1u32..4), 0..4), extra in prop::collection::vec(any::<u32>(), 1..4)) {
        let mut f = poly(&k, &extra);
        prop_assume!(!f.is_zero());
        for &(r, m) in &roots {
            f = &f * &Poly::new(&k, vec![k.neg(elem(&k, r)), Fe::ONE]).pow(m);
        }
        let (found, residual) = f.rational_roots().unwrap();
        let total: usize = found.iter().map(|&(_, m)| m as usize).sum();
        prop_assert_eq!(total + residual, f.degree().unwrap());
        for (a, m) in found {
            prop_assert_eq!(f.valuation(a).unwrap(), m);
        }
    }
}

#[test]
fn text_round_trip_for_polys() {
    for k in fields() {
        let f = Poly::new(&k, k.elements().take(5).collect());
        assert_eq!(Poly::parse(&k, &f.to_text()).unwrap(), f);
        assert_eq!(Poly::parse(&k, &Poly::zero(&k).to_text()).unwrap(), Poly::zero(&k));
    }
}
