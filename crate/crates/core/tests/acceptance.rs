//! End-to-end acceptance checks, one line per criterion.
//!
//! Run with `cargo test -p ramcount-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramcount_core::counting::{
    enumerate_profiles, involution_reduce, n_four_closed, n_gen_recursive, n_three, validate_profile, CharClass,
};
use ramcount_core::degeneration::fixtures::{
    cross_ratio_family, four_point_family, frobenius_unit_family, random_inseparable_family,
};
use ramcount_core::degeneration::{analyze_limit, check_hypotheses, insep_limit_step, pathology_family, MapFamily};
use ramcount_core::pencil::{count_maps_bruteforce, genericity_sweep, solve_three_point, DEFAULT_BUDGET};
use ramcount_core::schubert::intersection_number;
use ramcount_core::{Characteristic, Count, Fe, FiniteField, Pencil, Poly, ProjPoint, RatMap};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(p: u32, k: u32) -> FiniteField {
    FiniteField::new(p, k).expect("field")
}

const PRIMES: [u32; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

fn three_point_law() -> Outcome {
    let mut checked = 0;
    let mut low_unknown = 0;
    let mut low_separable = 0;
    for p in [3, 5, 7, 11, 13] {
        let k = field(p, 2);
        let ch = Characteristic::Finite(p);
        for d in 1..=6u32 {
            for e1 in 1..=d {
                for e2 in 1..=d {
                    let Some(e3) = (2 * d + 1).checked_sub(e1 + e2) else { continue };
                    if e3 == 0 || e3 > d || [e1, e2, e3].iter().any(|e| e % p == 0) {
                        continue;
                    }
                    let n = n_three(e1, e2, e3, ch).map_err(|e| e.to_string())?;
                    let sol = solve_three_point(d as usize, e1 as usize, e2 as usize, e3 as usize, &k)
                        .map_err(|e| e.to_string())?;
                    ensure!(sol.m == 0 || !sol.separable, "({e1},{e2},{e3}) p={p}: positive-dimensional solution with a separable member");
                    let separable = sol.m == 0 && sol.separable && sol.map.as_ref().is_some_and(|m| m.degree() == d as usize);
                    match n.value {
                        Count::Unknown => {
                            ensure!(n.char_class == CharClass::Low, "unknown outside low characteristic");
                            low_unknown += 1;
                            low_separable += u32::from(separable);
                        }
                        Count::Value(v) => {
                            ensure!(v == u64::from(p > d), "({e1},{e2},{e3}) p={p}: n_three = {v}");
                            ensure!(
                                separable == (v == 1),
                                "({e1},{e2},{e3}) p={p}: solver m={} separable={} but count {v}",
                                sol.m,
                                sol.separable
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checked} profiles agree; {low_unknown} low-characteristic profiles with fewer than two orders below p reported unknown ({low_separable} of them have a separable solution)"
    ))
}

fn example_census(k: &FiniteField, lambda: Fe) -> Result<ramcount_core::pencil::CensusReport, String> {
    let pts = [
        (ProjPoint::Finite(Fe::ZERO), 2),
        (ProjPoint::Infinity, 2),
        (ProjPoint::Finite(Fe::ONE), 2),
        (ProjPoint::Finite(lambda), 2),
    ];
    count_maps_bruteforce(3, &pts, k, DEFAULT_BUDGET).map_err(|e| e.to_string())
}

fn cross_ratio_census() -> Outcome {
    let k9 = field(3, 2);
    let mut n9 = 0;
    for lambda in k9.elements().filter(|&l| k9.pow(l, 3) != l) {
        let rep = example_census(&k9, lambda)?;
        ensure!(rep.separable == 1, "F9 lambda={}: {}", k9.format(lambda), rep.separable);
        let a = k9.add(Fe::ONE, lambda);
        let f = Poly::new(&k9, vec![Fe::ZERO, Fe::ZERO, a, Fe::ONE]);
        let g = Poly::new(&k9, vec![lambda, a]);
        let expected = Pencil::from_polys(&f, &g, 3).map_err(|e| e.to_string())?;
        ensure!(rep.witnesses == vec![expected], "F9 lambda={}: witness mismatch", k9.format(lambda));
        n9 += 1;
    }
    let mut lines = vec![format!("F9: {n9} values of lambda give 1")];
    for (p, two, one) in [(5u32, vec![2, 3, 4], vec![]), (7, vec![2, 4, 6], vec![3, 5])] {
        let kp = field(p, 1);
        let kp2 = field(p, 2);
        for &l in &two {
            let base = example_census(&kp, kp.from_int(l))?.separable;
            let ext = example_census(&kp2, kp2.from_int(l))?.separable;
            ensure!(base == 0 && ext == 2, "p={p} lambda={l}: F_p {base}, F_p^2 {ext}");
        }
        for &l in &one {
            let base = example_census(&kp, kp.from_int(l))?.separable;
            let ext = example_census(&kp2, kp2.from_int(l))?.separable;
            ensure!(base == 1 && ext == 1, "p={p} lambda={l}: F_p {base}, F_p^2 {ext}");
        }
        lines.push(format!("p={p}: lambda {two:?} give 2 over F_{{p^2}} (0 rational), {one:?} give 1"));
    }
    Ok(lines.join("; "))
}

fn formula_triangle() -> Outcome {
    let mut four = 0;
    for d in 1..=12 {
        for orders in enumerate_profiles(4, d, 1) {
            for &p in &PRIMES {
                let ch = Characteristic::Finite(p);
                let prof = validate_profile(&orders, ch).map_err(|e| e.to_string())?;
                if prof.class() == CharClass::Low || !prof.is_valid() {
                    continue;
                }
                let rec = n_gen_recursive(&prof).map_err(|e| e.to_string())?.value;
                let closed = n_four_closed([orders[0], orders[1], orders[2], orders[3]], ch).map_err(|e| e.to_string())?;
                ensure!(rec == closed && rec != Count::Unknown, "{orders:?} p={p}: recursion {rec}, closed form {closed}");
                four += 1;
            }
        }
    }
    let mut schub = 0;
    for d in 1..=8 {
        for n in 1..=6 {
            for orders in enumerate_profiles(n, d, 1) {
                let prof = validate_profile(&orders, Characteristic::Infinity).map_err(|e| e.to_string())?;
                let rec = n_gen_recursive(&prof).map_err(|e| e.to_string())?.value;
                let s = intersection_number(d, &orders).map_err(|e| e.to_string())?;
                ensure!(rec == Count::Value(s), "{orders:?}: recursion {rec}, Schubert {s}");
                schub += 1;
            }
        }
    }
    Ok(format!("{four} four-point (profile, p) pairs match the closed form; {schub} profiles match Pieri at p=inf"))
}

fn involution_invariance() -> Outcome {
    let mut pairs = 0;
    let mut profiles = 0;
    let mut sweep: Vec<(Vec<u32>, u32)> = Vec::new();
    for d in 1..=12 {
        for orders in enumerate_profiles(4, d, 1) {
            sweep.extend(PRIMES.iter().map(|&p| (orders.clone(), p)));
        }
    }
    for d in 1..=8 {
        for n in [3, 5, 6] {
            for orders in enumerate_profiles(n, d, 1) {
                sweep.extend(PRIMES.iter().map(|&p| (orders.clone(), p)));
            }
        }
    }
    for (orders, p) in sweep {
        let prof = validate_profile(&orders, Characteristic::Finite(p)).map_err(|e| e.to_string())?;
        if prof.class() == CharClass::Low || !prof.is_valid() {
            continue;
        }
        profiles += 1;
        let base = n_gen_recursive(&prof).map_err(|e| e.to_string())?.value;
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                let other = involution_reduce(&prof, i, j).map_err(|e| e.to_string())?;
                let v = n_gen_recursive(&other).map_err(|e| e.to_string())?.value;
                ensure!(v == base, "{orders:?} p={p} ({i},{j}) -> {:?}: {base} vs {v}", other.orders());
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pair replacements over {profiles} profiles leave the count unchanged"))
}

fn pathology() -> Outcome {
    let k = field(3, 2);
    let f = Poly::from_ints(&k, &[0, 1, 0, 0, 0, 1]);
    let fam = pathology_family(&f, &Poly::one(&k)).map_err(|e| e.to_string())?;
    let mut pencils = BTreeSet::new();
    let mut divisors = Vec::new();
    for c in k.elements() {
        let (m, base) = fam.member(c).map_err(|e| e.to_string())?;
        ensure!(base.is_empty() && m.degree() == 5, "member {} degenerates", k.format(c));
        ensure!(m.ram_index(ProjPoint::Infinity) == 5, "member {}: index at infinity", k.format(c));
        let div = m.different_divisor().map_err(|e| e.to_string())?;
        let simple: Vec<_> = div.points().iter().filter(|(pt, _)| !pt.is_infinity()).collect();
        ensure!(
            simple.len() == 4 && simple.iter().all(|(_, &n)| n == 1) && div.residual() == 0,
            "member {}: different {:?}",
            k.format(c),
            div.to_json(&k)
        );
        divisors.push(div);
        pencils.insert(m.pencil());
    }
    ensure!(divisors.windows(2).all(|w| w[0] == w[1]), "ramification varies along the family");
    ensure!(pencils.len() == 9, "{} distinct pencils", pencils.len());
    Ok(format!("9 distinct pencils share the different {}", divisors[0].to_json(&k)))
}

fn transform_audit() -> Outcome {
    let k3 = field(3, 1);
    let k9 = field(3, 2);
    let mut suite: Vec<(String, MapFamily)> = Vec::new();
    let t = Poly::from_ints(&k9, &[0, 1]);
    for s in k9.elements().filter(|&s| k9.pow(s, 3) != s) {
        for tail in [t.clone(), t.scale(k9.from_int(2)), Poly::from_ints(&k9, &[0, 0, 1]), Poly::from_ints(&k9, &[0, 1, 1])] {
            let fam = four_point_family(&k9, s, &tail).map_err(|e| e.to_string())?;
            suite.push((format!("four-point s={} tail={}", k9.format(s), tail.to_text()), fam));
        }
    }
    suite.push(("cross-ratio".into(), cross_ratio_family(&k3).map_err(|e| e.to_string())?));
    for k in [field(3, 1), field(5, 1), field(7, 1), field(3, 2)] {
        suite.push((format!("frobenius unit q={}", k.order()), frobenius_unit_family(&k).map_err(|e| e.to_string())?));
    }
    for (k, r) in [(field(3, 1), 1), (field(3, 1), 2), (field(5, 1), 1), (field(5, 1), 2), (field(7, 1), 1), (field(3, 2), 2)] {
        for seed in 0..10 {
            let fam = random_inseparable_family(&k, r, seed).map_err(|e| e.to_string())?;
            suite.push((format!("random q={} r={r} seed={seed}", k.order()), fam));
        }
    }
    let mut steps = 0;
    let mut with_hyp = 0;
    for (name, fam) in &suite {
        let mut cur = fam.normalized();
        let start = cur.wronskian().t_valuation().ok_or(format!("{name}: inseparable generic fiber"))?;
        ensure!(!cur.special_fiber_separable(), "{name}: limit already separable");
        let mut n = 0;
        while !cur.special_fiber_separable() {
            let step = insep_limit_step(&cur).map_err(|e| format!("{name}: {e}"))?;
            ensure!(step.valuation_after < step.valuation_before, "{name}: valuation did not drop");
            cur = step.family.normalized();
            n += 1;
            steps += 1;
            ensure!(n <= start, "{name}: more than {start} steps");
        }
        let hyp = check_hypotheses(fam).map_err(|e| e.to_string())?;
        let rep = analyze_limit(fam).map_err(|e| format!("{name}: {e}"))?;
        ensure!(rep.iterations == n, "{name}: analysis took {} steps, audit {n}", rep.iterations);
        if hyp.is_empty() {
            let p = fam.field().characteristic() as i64;
            ensure!(rep.e_infinity as i64 == 2 * rep.m - 1, "{name}: e_inf {} with m {}", rep.e_infinity, rep.m);
            ensure!(p <= rep.m && rep.m <= rep.d as i64, "{name}: m = {} outside [p, d]", rep.m);
            ensure!(rep.d_tilde as i64 == rep.d as i64 + rep.m - 1 - rep.b as i64, "{name}: degree identity");
            with_hyp += 1;
        }
    }
    ensure!(with_hyp > 0, "no family satisfies the hypotheses");
    Ok(format!("{} families, {steps} steps, identities checked on {with_hyp} families meeting the hypotheses", suite.len()))
}

fn random_poly(k: &FiniteField, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(k, (0..=deg).map(|_| k.random(rng)).collect())
}

/// A random map, sometimes with a forced ramification point of random order.
fn random_map(k: &FiniteField, rng: &mut ChaCha8Rng) -> Option<RatMap> {
    let d = rng.gen_range(1..=8usize);
    let mut f = random_poly(k, d, rng);
    let g = random_poly(k, rng.gen_range(0..=d), rng);
    if rng.gen_bool(0.5) {
        let e = rng.gen_range(2..=d.max(2));
        let a = k.random(rng);
        let lin = Poly::new(k, vec![k.neg(a), Fe::ONE]).pow(e as u32);
        f = &(&lin * &random_poly(k, d.saturating_sub(e), rng)) + &g.scale(k.random(rng));
    }
    RatMap::new(f, g).ok().map(|(m, _)| m)
}

/// Index at a finite point from the first nonvanishing Hasse derivative of `F - f(a) G`.
fn index_by_hasse(m: &RatMap, a: Fe) -> u32 {
    let (f, g) = (m.num(), m.den());
    let h = if g.eval(a).is_zero() { g.clone() } else { &f.scale(g.eval(a)) - &g.scale(f.eval(a)) };
    let top = h.degree().expect("nonconstant map");
    (1..=top).find(|&j| !h.hasse_derivative(j).eval(a).is_zero()).expect("vanishing to full order") as u32
}

fn riemann_hurwitz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut per_p = Vec::new();
    for p in [3u32, 5, 7] {
        let fields = [field(p, 1), field(p, 2)];
        let mut accepted = 0;
        let mut attempts = 0;
        while accepted < 1000 {
            attempts += 1;
            ensure!(attempts < 1_000_000, "p={p}: too few tame maps");
            let k = &fields[attempts % 2];
            let Some(m) = random_map(k, &mut rng) else { continue };
            if !m.is_separable() {
                continue;
            }
            // every multiplicity of W at most p - 1 forces tameness at all points
            let w = m.wronskian();
            let mut high = w.clone();
            for j in 1..p as usize {
                high = high.gcd(&w.hasse_derivative(j)).map_err(|e| e.to_string())?;
            }
            let at_inf = 2 * m.degree() - 2 - w.degree().unwrap();
            if high.degree() != Some(0) || at_inf >= p as usize || m.ram_index(ProjPoint::Infinity) % p == 0 {
                continue;
            }
            let div = m.different_divisor().map_err(|e| format!("{}: {e}", m.to_text()))?;
            ensure!(div.degree() as usize == 2 * m.degree() - 2, "{}: total {}", m.to_text(), div.degree());
            for a in k.elements() {
                let e = index_by_hasse(&m, a);
                ensure!(div.multiplicity(ProjPoint::Finite(a)) == e - 1, "{} at {}: index {e}", m.to_text(), k.format(a));
            }
            let e_inf = m.ram_index(ProjPoint::Infinity);
            ensure!(div.multiplicity(ProjPoint::Infinity) == e_inf - 1, "{} at inf", m.to_text());
            accepted += 1;
        }
        per_p.push(format!("p={p}: 1000 maps"));
    }
    let mut triples = 0;
    let mut nontrivial = 0;
    while triples < 1000 {
        let k = field([3, 5, 7][triples % 3], 1 + (triples % 2) as u32);
        let (Some(f), Some(g)) = (random_map(&k, &mut rng), random_map(&k, &mut rng)) else { continue };
        let a = k.random(&mut rng);
        if f.den().eval(a).is_zero() || g.den().eval(a).is_zero() {
            continue;
        }
        let Ok(s) = f.sum(&g) else { continue };
        let pt = ProjPoint::Finite(a);
        let (ef, eg, es) = (f.ram_index(pt), g.ram_index(pt), s.ram_index(pt));
        ensure!((es >= ef) == (eg >= ef), "f={} g={} at {}: {ef} {eg} {es}", f.to_text(), g.to_text(), k.format(a));
        nontrivial += u32::from(ef > 1 || eg > 1);
        triples += 1;
    }
    per_p.push(format!("1000 sum triples ({nontrivial} with a ramified summand)"));
    Ok(per_p.join("; "))
}

fn genericity() -> Outcome {
    // (orders, p, census field degree, point subfield degree, min field order);
    // with two solutions the points come from F_p and the census runs over
    // F_{p^2}, where both conjugate maps are defined
    let cases: [(&[u32], u32, u32, Option<u32>, Option<u64>); 7] = [
        (&[2, 2, 3], 5, 2, None, None),
        (&[2, 2, 3], 11, 1, None, Some(11)),
        (&[2, 2, 3], 13, 1, None, None),
        (&[2, 2, 2, 2], 3, 3, None, None),
        (&[2, 2, 2, 2], 3, 2, None, Some(9)),
        (&[2, 2, 2, 2], 5, 2, Some(1), Some(5)),
        (&[2, 2, 4, 4], 5, 1, None, Some(5)),
    ];
    let mut lines = Vec::new();
    for (orders, p, k, sub, min) in cases {
        let kf = field(p, k);
        let prof = validate_profile(orders, Characteristic::Finite(p)).map_err(|e| e.to_string())?;
        ensure!(prof.class() != CharClass::Low, "{orders:?} is low");
        let expected = n_gen_recursive(&prof).map_err(|e| e.to_string())?.value.value().unwrap();
        let rep = genericity_sweep(orders, &kf, 0..20, min, sub, 1_000_000).map_err(|e| format!("{orders:?} q={}: {e}", kf.order()))?;
        ensure!(
            rep.modal == expected,
            "{orders:?} q={}: modal {} vs {expected}, distribution {:?}",
            kf.order(),
            rep.modal,
            rep.distribution
        );
        ensure!(rep.modal_distinct_images, "{orders:?} q={}: modal witnesses share images", kf.order());
        lines.push(format!("{orders:?}@F{}={expected}", kf.order()));
    }
    Ok(lines.join(" "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("three-point law", three_point_law),
        ("cross-ratio census", cross_ratio_census),
        ("formula triangle", formula_triangle),
        ("involution invariance", involution_invariance),
        ("constant-ramification family", pathology),
        ("inseparable-limit transform", transform_audit),
        ("Riemann-Hurwitz and index sums", riemann_hurwitz),
        ("census genericity", genericity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} [{ms} ms]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name} [{ms} ms]: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
