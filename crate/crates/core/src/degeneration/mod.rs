//! One-parameter families of maps over `k[t]`: the inseparable-limit
//! transformation, tame reduction at infinity, limit analysis, pathological
//! constant-ramification families and the wild different audit.

mod bipoly;
pub mod fixtures;

pub use bipoly::BiPoly;

use serde_json::{json, Value};

use crate::algebra::{bezout_inseparable, Fe, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::ratmap::{Divisor, Mobius, ProjPoint, RatMap, Side};

/// Position of a marked section: a polynomial in `t`, or the constant section at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionPoint {
    Finite(Poly),
    Infinity,
}

impl SectionPoint {
    /// Limit at `t = 0`.
    pub fn limit(&self) -> ProjPoint {
        match self {
            SectionPoint::Finite(p) => ProjPoint::Finite(p.eval(Fe::ZERO)),
            SectionPoint::Infinity => ProjPoint::Infinity,
        }
    }

    pub fn at(&self, c: Fe) -> ProjPoint {
        match self {
            SectionPoint::Finite(p) => ProjPoint::Finite(p.eval(c)),
            SectionPoint::Infinity => ProjPoint::Infinity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub point: SectionPoint,
    pub order: u32,
}

impl Section {
    pub fn constant(field: &FiniteField, pt: ProjPoint, order: u32) -> Section {
        let point = match pt {
            ProjPoint::Finite(a) => SectionPoint::Finite(Poly::constant(field, a)),
            ProjPoint::Infinity => SectionPoint::Infinity,
        };
        Section { point, order }
    }
}

/// A family `F(x, t) / G(x, t)` with marked ramification sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFamily {
    num: BiPoly,
    den: BiPoly,
    sections: Vec<Section>,
}

impl MapFamily {
    /// Requires a nonconstant generic fiber with `F`, `G` coprime over `k(t)`.
    pub fn new(num: BiPoly, den: BiPoly, sections: Vec<Section>) -> Result<MapFamily> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if num.is_zero() && den.is_zero() {
            return Err(Error::ConstantMap("zero pair".into()));
        }
        if num.generic_gcd_degree(&den)? != 0 {
            return Err(Error::NotCoprime);
        }
        if num.x_degree().unwrap_or(0) == 0 && den.x_degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantMap("generic fiber is constant".into()));
        }
        Ok(MapFamily { num, den, sections })
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn field(&self) -> &FiniteField {
        self.num.field()
    }

    /// Degree of the generic fiber.
    pub fn degree(&self) -> usize {
        self.num.x_degree().unwrap_or(0).max(self.den.x_degree().unwrap_or(0))
    }

    pub fn wronskian(&self) -> BiPoly {
        &(&self.num.x_derivative() * &self.den) - &(&self.num * &self.den.x_derivative())
    }

    /// Both coordinates divided by the largest common power of `t`.
    pub fn normalized(&self) -> MapFamily {
        let v = [self.num.t_valuation(), self.den.t_valuation()].into_iter().flatten().min().unwrap_or(0);
        MapFamily { num: self.num.div_t_pow(v), den: self.den.div_t_pow(v), sections: self.sections.clone() }
    }

    /// `(F_0, G_0)` of the normalized family.
    pub fn special_fiber(&self) -> (Poly, Poly) {
        let n = self.normalized();
        (n.num.special_fiber(), n.den.special_fiber())
    }

    pub fn special_fiber_separable(&self) -> bool {
        !self.normalized().wronskian().special_fiber().is_zero()
    }

    /// Member at `t = c` with its base points cancelled.
    pub fn member(&self, c: Fe) -> Result<(RatMap, Divisor)> {
        RatMap::new(self.num.specialize(c), self.den.specialize(c))
    }

    /// Ramification index of the generic fiber along a section.
    pub fn generic_ram_index(&self, pt: &SectionPoint) -> Result<u32> {
        match pt {
            SectionPoint::Finite(p) => Ok(pair_index(&self.num, &self.den, p)),
            SectionPoint::Infinity => {
                let d = self.degree();
                let zero = Poly::zero(self.field());
                Ok(pair_index(&self.num.reversed(d), &self.den.reversed(d), &zero))
            }
        }
    }

    /// First line `F/G` in the nested format, then one `<t-poly|inf> <order>`
    /// line per section.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}/{}\n", self.num.to_text(), self.den.to_text());
        for s in &self.sections {
            let pt = match &s.point {
                SectionPoint::Finite(p) => p.to_text(),
                SectionPoint::Infinity => "inf".into(),
            };
            out.push_str(&format!("{pt} {}\n", s.order));
        }
        out
    }

    pub fn parse(field: &FiniteField, text: &str) -> Result<MapFamily> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty family description".into()))?;
        let (f, g) = head.split_once("]/[").ok_or_else(|| Error::Parse("expected [..]/[..]".into()))?;
        let num = BiPoly::parse(field, &format!("{f}]"))?;
        let den = BiPoly::parse(field, &format!("[{g}"))?;
        let mut sections = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let (Some(pt), Some(order), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("bad section line {line:?}")));
            };
            let point = if pt.eq_ignore_ascii_case("inf") {
                SectionPoint::Infinity
            } else {
                SectionPoint::Finite(Poly::parse(field, pt)?)
            };
            let order = order.parse().map_err(|_| Error::Parse(format!("bad order in {line:?}")))?;
            sections.push(Section { point, order });
        }
        MapFamily::new(num, den, sections)
    }
}

fn pair_index(num: &BiPoly, den: &BiPoly, pt: &Poly) -> u32 {
    let gp = den.eval_x(pt);
    let h = if gp.is_zero() {
        den.taylor_shift(pt)
    } else {
        let fp = num.eval_x(pt);
        &num.taylor_shift(pt).scale_t(&gp) - &den.taylor_shift(pt).scale_t(&fp)
    };
    h.x_low_degree().expect("nonconstant generic fiber") as u32
}

fn wronskian(f: &Poly, g: &Poly) -> Poly {
    &(&f.derivative() * g) - &(f * &g.derivative())
}

/// Data of one transformation step.
#[derive(Clone, Debug)]
pub struct TransformStep {
    pub family: MapFamily,
    /// Power of `t` removed from the first coordinate.
    pub removed: u32,
    pub valuation_before: u32,
    pub valuation_after: u32,
}

/// One step of the inseparable-limit transformation:
/// `F~ = nu(F G0' - G F0')`, `G~ = F H2 - G H1` with `F0', G0'` the special
/// fiber with common factors removed and `F0' H2 - G0' H1 = 1`.
pub fn insep_limit_step(fam: &MapFamily) -> Result<TransformStep> {
    let fam = fam.normalized();
    let k = fam.field().clone();
    let w = fam.wronskian();
    let valuation_before = w
        .t_valuation()
        .ok_or_else(|| Error::Precondition("generic fiber is inseparable".into()))?;
    if valuation_before == 0 {
        return Err(Error::SpecialFiberSeparable);
    }
    let f0 = fam.num.special_fiber();
    let g0 = fam.den.special_fiber();
    let c = f0.gcd(&g0)?;
    let fb = f0.div_exact(&c)?;
    let gb = g0.div_exact(&c)?;
    let (h1, h2) = bezout_inseparable(&fb, &gb)?;
    let lift = BiPoly::from_x_poly;
    let raw = &(&fam.num * &lift(&gb)) - &(&fam.den * &lift(&fb));
    let removed = raw
        .t_valuation()
        .ok_or_else(|| Error::Internal("transform annihilated the first coordinate".into()))?;
    if removed == 0 {
        return Err(Error::Internal("no power of t to remove".into()));
    }
    let num = raw.div_t_pow(removed);
    let den = &(&fam.num * &lift(&h2)) - &(&fam.den * &lift(&h1));
    let next = MapFamily::new(num, den, fam.sections.clone())
        .map_err(|e| Error::Internal(format!("transformed pair is degenerate: {e}")))?;
    let w_next = next.wronskian();
    let t_pow = Poly::monomial(&k, Fe::ONE, removed as usize);
    if w_next.scale_t(&t_pow) != w {
        return Err(Error::Internal("wronskian changed by more than a power of t".into()));
    }
    let valuation_after = w_next.t_valuation().unwrap_or(0);
    if valuation_after >= valuation_before {
        return Err(Error::Internal("wronskian valuation did not drop".into()));
    }
    Ok(TransformStep { family: next, removed, valuation_before, valuation_after })
}

pub fn insep_limit_transform(fam: &MapFamily) -> Result<MapFamily> {
    insep_limit_step(fam).map(|s| s.family)
}

/// Removes wild ramification at infinity by subtracting `c x^e G` from `F`
/// (or the mirror image when `f(inf) = 0`), leaving the Wronskian unchanged.
pub fn tame_at_infinity_reduce(f0: &Poly, g0: &Poly) -> Result<(Poly, Poly)> {
    let k = f0.field().clone();
    let p = k.characteristic() as usize;
    let w = wronskian(f0, g0);
    if w.is_zero() {
        return Err(Error::Inseparable);
    }
    let (mut f, mut g) = (f0.clone(), g0.clone());
    loop {
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        let ratio = |a: &Poly, b: &Poly| k.div(a.leading().unwrap(), b.leading().unwrap());
        if df > dg {
            let e = df - dg;
            if e % p != 0 {
                break;
            }
            f = &f - &(&Poly::monomial(&k, ratio(&f, &g), e) * &g);
        } else if df < dg {
            let e = dg - df;
            if e % p != 0 {
                break;
            }
            g = &g - &(&Poly::monomial(&k, ratio(&g, &f), e) * &f);
        } else {
            let r = &f - &g.scale(ratio(&f, &g));
            let e = df - r.degree().unwrap();
            if e % p != 0 {
                break;
            }
            f = r;
        }
    }
    if wronskian(&f, &g) != w {
        return Err(Error::Internal("tame reduction changed the wronskian".into()));
    }
    Ok((f, g))
}

/// Outcome of driving a family to a separable limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    /// The input already had a separable special fiber.
    pub separable_limit: bool,
    pub iterations: u32,
    /// `t`-valuation of the Wronskian before each step and at the end.
    pub valuations: Vec<u32>,
    pub d: usize,
    /// `d - d0`.
    pub m: i64,
    /// Common factors of the limit pair at the colliding point.
    pub b: u32,
    pub d_tilde: usize,
    pub d0: usize,
    pub e_infinity: u32,
    /// Degree of the limit map after cancelling all base points.
    pub reduced_degree: usize,
    /// `reduced_degree - (d + m - 1 - b)`.
    pub epsilon: i64,
    pub hypotheses_hold: bool,
    pub warnings: Vec<String>,
    pub limit_num: Poly,
    pub limit_den: Poly,
}

impl LimitReport {
    pub fn to_json(&self) -> Value {
        json!({
            "separable_limit": self.separable_limit,
            "iterations": self.iterations,
            "valuations": self.valuations,
            "d": self.d,
            "m": self.m,
            "b": self.b,
            "degrees": [self.d_tilde, self.d0],
            "e_infinity": self.e_infinity,
            "reduced_degree": self.reduced_degree,
            "epsilon": self.epsilon,
            "hypotheses_hold": self.hypotheses_hold,
            "warnings": self.warnings,
            "limit": format!("{}/{}", self.limit_num.to_text(), self.limit_den.to_text()),
        })
    }
}

/// Reasons the family falls outside the setting where the limit identities
/// are guaranteed; empty when they all hold.
pub fn check_hypotheses(fam: &MapFamily) -> Result<Vec<String>> {
    let p = fam.field().characteristic();
    let d = fam.degree();
    let mut out = Vec::new();
    let mut finite: Vec<(&Poly, u32)> = Vec::new();
    for (i, s) in fam.sections.iter().enumerate() {
        let e = fam.generic_ram_index(&s.point)?;
        if e != s.order {
            out.push(format!("section {i} has generic index {e}, declared {}", s.order));
        }
        if s.order >= p {
            out.push(format!("section {i} has order {} >= p", s.order));
        }
        match &s.point {
            SectionPoint::Infinity => out.push(format!("section {i} lies at infinity")),
            SectionPoint::Finite(pt) => finite.push((pt, s.order)),
        }
    }
    let w = fam.wronskian();
    if w.x_degree() != Some(2 * d - 2) {
        out.push("generic fiber ramifies at infinity".into());
    }
    let marked: u32 = fam.sections.iter().map(|s| s.order.saturating_sub(1)).sum();
    if marked as usize != 2 * d - 2 {
        out.push(format!("sections carry different {marked}, expected {}", 2 * d - 2));
    }
    let mut collisions = Vec::new();
    for i in 0..finite.len() {
        for j in i + 1..finite.len() {
            if finite[i].0 == finite[j].0 {
                out.push(format!("sections {i} and {j} coincide"));
            } else if finite[i].0.eval(Fe::ZERO) == finite[j].0.eval(Fe::ZERO) {
                collisions.push((finite[i].1, finite[j].1));
            }
        }
    }
    if collisions.len() > 1 {
        out.push(format!("{} pairs of sections collide", collisions.len()));
    }
    if let Some(&(a, b)) = collisions.first() {
        if a + b >= p {
            out.push(format!("colliding orders {a} + {b} >= p"));
        }
    }
    Ok(out)
}

/// Iterates the transformation to a separable limit, makes it tame at
/// infinity and measures `(m, b, d~, d0, e_inf)`. Under the hypotheses the
/// identities `d~ = d + m - 1`, `e_inf = 2m - 1` and `p <= m <= d` are
/// enforced; otherwise mismatches become warnings.
pub fn analyze_limit(fam: &MapFamily) -> Result<LimitReport> {
    let p = fam.field().characteristic() as i64;
    let mut warnings = check_hypotheses(fam)?;
    let hypotheses_hold = warnings.is_empty();
    let d = fam.degree();
    let separable_limit = fam.special_fiber_separable();
    let mut cur = fam.normalized();
    let mut valuations = Vec::new();
    let mut iterations = 0u32;
    let bound = cur.wronskian().t_valuation().ok_or(Error::Inseparable)?;
    while !cur.special_fiber_separable() {
        if iterations > bound {
            return Err(Error::Internal("transformation failed to terminate".into()));
        }
        let step = insep_limit_step(&cur)?;
        valuations.push(step.valuation_before);
        cur = step.family.normalized();
        iterations += 1;
    }
    valuations.push(cur.wronskian().t_valuation().unwrap_or(0));
    let (f0, g0) = cur.special_fiber();
    let (f0, g0) = tame_at_infinity_reduce(&f0, &g0)?;
    let d_tilde = f0.degree().unwrap().max(g0.degree().unwrap());
    let d0 = g0.degree().unwrap();
    let (limit, _) = RatMap::new(f0.clone(), g0.clone())?;
    let e_infinity = limit.ram_index(ProjPoint::Infinity);
    let m = d as i64 - d0 as i64;

    let common = f0.gcd(&g0)?;
    let mut b = 0;
    let mut collision = None;
    let limits: Vec<ProjPoint> = fam.sections.iter().map(|s| s.point.limit()).collect();
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            if limits[i] == limits[j] && collision.is_none() {
                collision = Some((i, j));
                if let ProjPoint::Finite(a) = limits[i] {
                    b = common.valuation(a)?;
                }
            }
        }
    }
    let reduced_degree = limit.degree();
    let epsilon = reduced_degree as i64 - (d as i64 + m - 1 - b as i64);

    if !separable_limit {
        let mut problems = Vec::new();
        if d_tilde as i64 != d as i64 + m - 1 {
            problems.push(format!("d~ = {d_tilde} but d + m - 1 = {}", d as i64 + m - 1));
        }
        if e_infinity as i64 != 2 * m - 1 {
            problems.push(format!("e_inf = {e_infinity} but 2m - 1 = {}", 2 * m - 1));
        }
        if m < p || m > d as i64 {
            problems.push(format!("m = {m} outside [{p}, {d}]"));
        }
        if 2 * d_tilde as i64 - 2 != 2 * d as i64 - 2 + e_infinity as i64 - 1 {
            problems.push("2d~ - 2 != 2d - 2 + e_inf - 1".into());
        }
        if let Some((i, j)) = collision {
            let (ei, ej) = (fam.sections[i].order, fam.sections[j].order);
            if 2 * b + 1 > ei + ej - 1 {
                problems.push(format!("b = {b} not below ({ei} + {ej} - 1)/2"));
            }
        }
        if hypotheses_hold && !problems.is_empty() {
            return Err(Error::IdentityViolated(problems.join("; ")));
        }
        warnings.extend(problems);
    }

    Ok(LimitReport {
        separable_limit,
        iterations,
        valuations,
        d,
        m: if separable_limit { 0 } else { m },
        b,
        d_tilde,
        d0,
        e_infinity,
        reduced_degree,
        epsilon,
        hypotheses_hold,
        warnings,
        limit_num: f0,
        limit_den: g0,
    })
}

/// The family `F/G - t x^p`, all of whose members share the ramification of
/// `F/G` when the index at infinity exceeds `p` and every finite index is below `p`.
pub fn pathology_family(f: &Poly, g: &Poly) -> Result<MapFamily> {
    let k = f.field().clone();
    let p = k.characteristic();
    let map = RatMap::coprime(f.clone(), g.clone())?;
    let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
    if df <= dg {
        return Err(Error::Precondition("map must send infinity to infinity".into()));
    }
    let e1 = (df - dg) as u32;
    if e1 <= p || e1 % p == 0 {
        return Err(Error::Precondition(format!("index {e1} at infinity must exceed p = {p} and be prime to it")));
    }
    let w = map.wronskian();
    if w.is_zero() {
        return Err(Error::Inseparable);
    }
    // a root of multiplicity >= p - 1 would mean a finite index >= p
    let mut high = w.clone();
    for j in 1..(p as usize - 1) {
        high = high.gcd(&w.hasse_derivative(j))?;
    }
    if high.degree() != Some(0) {
        return Err(Error::Precondition("some finite ramification index reaches p".into()));
    }
    let xp = BiPoly::new(&k, {
        let mut v = vec![Poly::zero(&k); p as usize];
        v.push(Poly::from_ints(&k, &[0, 1]));
        v
    });
    let gb = BiPoly::from_x_poly(g);
    let num = &BiPoly::from_x_poly(f) - &(&xp * &gb);
    let mut sections = vec![Section { point: SectionPoint::Infinity, order: e1 }];
    let (roots, _) = w.rational_roots()?;
    for (a, mult) in roots {
        sections.push(Section::constant(&k, ProjPoint::Finite(a), mult + 1));
    }
    MapFamily::new(num, gb, sections)
}

/// Wild-index bookkeeping at a point with index `e = m p`, `m > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildAudit {
    pub index: u32,
    pub m: u32,
    /// Wronskian valuation at the point.
    pub different: u32,
    /// `2 (m - 1) p`.
    pub bound: u32,
    /// Degree after subtracting powers `x^{e}` until the index is tame.
    pub reduced_degree: usize,
    pub reduced_index: u32,
}

impl WildAudit {
    pub fn exceeds_bound(&self) -> bool {
        self.different > self.bound
    }
}

pub fn wild_different_audit(f: &RatMap, pt: ProjPoint) -> Result<WildAudit> {
    let k = f.field().clone();
    let p = k.characteristic();
    let index = f.ram_index(pt);
    if index % p != 0 || index / p < 2 {
        return Err(Error::Precondition(format!("index {index} is not m p with m > 1")));
    }
    let mut g = match pt {
        ProjPoint::Infinity => f.clone(),
        ProjPoint::Finite(a) => f.mobius_act(&Mobius::new(&k, a, Fe::ONE, Fe::ONE, Fe::ZERO)?, Side::Domain)?,
    };
    if let ProjPoint::Finite(c) = g.eval(ProjPoint::Infinity) {
        g = g.mobius_act(&Mobius::new(&k, Fe::ZERO, Fe::ONE, Fe::ONE, k.neg(c))?, Side::Image)?;
    }
    let different = g.raw_different()?.multiplicity(ProjPoint::Infinity);
    let (rf, rg) = tame_at_infinity_reduce(g.num(), g.den())?;
    let (reduced, _) = RatMap::new(rf, rg)?;
    Ok(WildAudit {
        index,
        m: index / p,
        different,
        bound: 2 * (index / p - 1) * p,
        reduced_degree: reduced.degree(),
        reduced_index: reduced.ram_index(ProjPoint::Infinity),
    })
}

#[cfg(test)]
mod tests;
