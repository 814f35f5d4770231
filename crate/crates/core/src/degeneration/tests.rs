use super::fixtures::*;
use super::*;

fn f3() -> FiniteField {
    FiniteField::prime(3).unwrap()
}

fn f9() -> FiniteField {
    FiniteField::new(3, 2).unwrap()
}

fn poly(k: &FiniteField, c: &[i64]) -> Poly {
    Poly::from_ints(k, c)
}

#[test]
fn family_text_round_trip() {
    let k = f3();
    let fam = cross_ratio_family(&k).unwrap();
    let back = MapFamily::parse(&k, &fam.to_text()).unwrap();
    assert_eq!(back, fam);
    assert!(MapFamily::parse(&k, "[(1)]/[(1)]").is_err());
    assert!(matches!(MapFamily::parse(&k, "[(0),(0,1)]/[(0),(1)]"), Err(Error::NotCoprime)));
}

#[test]
fn generic_indices_along_sections() {
    let k = f3();
    let fam = cross_ratio_family(&k).unwrap();
    for s in fam.sections() {
        assert_eq!(fam.generic_ram_index(&s.point).unwrap(), 2, "{s:?}");
    }
    let k = f9();
    let s = k.gen();
    let fam = four_point_family(&k, s, &poly(&k, &[0, 1])).unwrap();
    for sec in fam.sections() {
        assert_eq!(fam.generic_ram_index(&sec.point).unwrap(), 2);
    }
    assert!(check_hypotheses(&fam).unwrap().is_empty());
}

#[test]
fn cross_ratio_step() {
    let k = f3();
    let fam = cross_ratio_family(&k).unwrap();
    assert!(!fam.special_fiber_separable());
    let step = insep_limit_step(&fam).unwrap();
    assert!(step.valuation_after < step.valuation_before);
    let next = step.family;
    assert!(next.special_fiber_separable());
    let (f0, g0) = next.special_fiber();
    let (limit, _) = RatMap::new(f0, g0).unwrap();
    assert_eq!(limit.degree(), 4);
    for a in [0, 1, 2] {
        assert_eq!(limit.ram_index(ProjPoint::Finite(k.from_int(a))), 2);
    }
}

#[test]
fn frobenius_unit_limit() {
    let k = f3();
    let fam = frobenius_unit_family(&k).unwrap();
    let next = insep_limit_transform(&fam).unwrap();
    let (f0, g0) = next.special_fiber();
    let (m, _) = RatMap::new(f0, g0).unwrap();
    assert!(m.equivalent(&RatMap::polynomial(poly(&k, &[0, 0, 0, 0, 1])).unwrap()));
}

#[test]
fn separable_special_fiber_is_rejected() {
    let k = f3();
    let fam = MapFamily::new(
        BiPoly::from_ints(&k, &[&[0, 1], &[], &[1]]),
        BiPoly::from_ints(&k, &[&[1]]),
        vec![],
    )
    .unwrap();
    assert!(matches!(insep_limit_step(&fam), Err(Error::SpecialFiberSeparable)));
    let rep = analyze_limit(&fam).unwrap();
    assert!(rep.separable_limit);
    assert_eq!(rep.iterations, 0);
}

#[test]
fn four_point_limit_identities() {
    let k = f9();
    let t = poly(&k, &[0, 1]);
    let mut checked = 0;
    for s in k.elements().filter(|&s| k.pow(s, 3) != s) {
        for tail in [t.clone(), t.scale(k.from_int(2)), poly(&k, &[0, 0, 1]), poly(&k, &[0, 1, 1])] {
            let fam = four_point_family(&k, s, &tail).unwrap();
            let rep = analyze_limit(&fam).unwrap();
            assert!(rep.hypotheses_hold, "{:?}", rep.warnings);
            assert_eq!((rep.m, rep.e_infinity, rep.d_tilde, rep.d0), (3, 5, 5, 0), "{rep:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 24);
}

#[test]
fn tame_reduction_at_infinity() {
    let k = f3();
    // x^6 + x^4 + x^2 + x has index 6 at infinity; subtracting x^6 leaves index 4
    let f = poly(&k, &[0, 1, 1, 0, 1, 0, 1]);
    let one = Poly::one(&k);
    let (rf, rg) = tame_at_infinity_reduce(&f, &one).unwrap();
    assert_eq!(rf, poly(&k, &[0, 1, 1, 0, 1]));
    assert_eq!(rg, one);
    // index 2 already tame
    let f = poly(&k, &[1, 0, 1]);
    assert_eq!(tame_at_infinity_reduce(&f, &one).unwrap().0, f);
    // mirrored: f(inf) = 0 with index 3
    let (rf, rg) = tame_at_infinity_reduce(&poly(&k, &[1, 1]), &poly(&k, &[0, 0, 0, 0, 1])).unwrap();
    assert_eq!(rf, poly(&k, &[1, 1]));
    assert_eq!(rg, poly(&k, &[0, 0, 0, 2]));
    assert!(matches!(tame_at_infinity_reduce(&poly(&k, &[0, 0, 0, 1]), &one), Err(Error::Inseparable)));
}

#[test]
fn wild_different_exceeds_bound() {
    let k = f3();
    let m = RatMap::polynomial(poly(&k, &[0, 1, 1, 0, 1, 0, 1])).unwrap();
    let audit = wild_different_audit(&m, ProjPoint::Infinity).unwrap();
    assert_eq!((audit.index, audit.m, audit.different, audit.bound), (6, 2, 7, 6));
    assert!(audit.exceeds_bound());
    assert_eq!((audit.reduced_degree, audit.reduced_index), (4, 4));
    // same map moved so the wild point sits at 1
    let moved = m.mobius_act(&Mobius::new(&k, Fe::ZERO, Fe::ONE, Fe::ONE, k.from_int(-1)).unwrap(), Side::Domain).unwrap();
    assert_eq!(moved.ram_index(ProjPoint::Finite(Fe::ONE)), 6);
    let again = wild_different_audit(&moved, ProjPoint::Finite(Fe::ONE)).unwrap();
    assert_eq!(again.different, 7);
    assert!(wild_different_audit(&m, ProjPoint::Finite(Fe::ZERO)).is_err());
}

#[test]
fn pathology_members_share_ramification() {
    let k = f9();
    let fam = pathology_family(&poly(&k, &[0, 1, 0, 0, 0, 1]), &Poly::one(&k)).unwrap();
    let mut pencils = Vec::new();
    let mut diffs = Vec::new();
    for c in k.elements() {
        let (m, base) = fam.member(c).unwrap();
        assert!(base.is_empty());
        diffs.push(m.different_divisor().unwrap());
        pencils.push(m.pencil());
    }
    assert!(diffs.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(diffs[0].multiplicity(ProjPoint::Infinity), 4);
    pencils.sort();
    pencils.dedup();
    assert_eq!(pencils.len(), 9);
    assert!(pathology_family(&poly(&k, &[0, 1, 0, 1]), &Poly::one(&k)).is_err());
    assert!(pathology_family(&poly(&k, &[0, 0, 0, 0, 0, 0, 1, 1]), &Poly::one(&k)).is_err());
}

#[test]
fn random_families_transform_cleanly() {
    for (k, r) in [(f3(), 1), (f3(), 2), (FiniteField::prime(5).unwrap(), 1), (f9(), 1)] {
        for seed in 0..5 {
            let fam = random_inseparable_family(&k, r, seed).unwrap();
            let rep = analyze_limit(&fam).unwrap();
            assert!(rep.iterations >= 1);
            assert_eq!(rep.valuations.last(), Some(&0));
            assert!(rep.valuations.windows(2).all(|w| w[0] > w[1]));
        }
    }
}
