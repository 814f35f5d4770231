//! Rational self-maps of the projective line and their ramification.
//!
//! A map is a coprime pair `(F, G)` read as `x -> F(x)/G(x)`, of degree
//! `d = max(deg F, deg G)`. Ramification at infinity and at poles goes through
//! the same valuation code after reversing coefficient vectors.

mod point;

pub use point::{Divisor, Mobius, ProjPoint};

use crate::algebra::{Fe, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::pencil::Pencil;

/// Which side of the map a Möbius transformation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Post-composition: `M ∘ f`.
    Image,
    /// Pre-composition: `f ∘ M`.
    Domain,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMap {
    num: Poly,
    den: Poly,
    degree: usize,
}

impl RatMap {
    /// Cancels common factors of `(num, den)` and returns the reduced map
    /// together with the divisor of cancelled base points.
    pub fn new(num: Poly, den: Poly) -> Result<(RatMap, Divisor)> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if num.is_zero() && den.is_zero() {
            return Err(Error::ConstantMap("zero pair".into()));
        }
        let g = num.gcd(&den)?;
        let mut base = Divisor::new();
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            let (roots, residual) = g.rational_roots()?;
            for (a, m) in roots {
                base.add_point(ProjPoint::Finite(a), m);
            }
            base.add_residual(residual as u32);
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let degree = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        if degree == 0 {
            return Err(Error::ConstantMap(format!("{}/{}", num, den)));
        }
        let lead = if num.degree() == Some(degree) { num.leading() } else { den.leading() };
        let s = num.field().inv(lead.expect("nonzero leading coefficient"));
        Ok((RatMap { num: num.scale(s), den: den.scale(s), degree }, base))
    }

    /// Like [`RatMap::new`] but rejects inputs with common factors.
    pub fn coprime(num: Poly, den: Poly) -> Result<RatMap> {
        let (m, base) = Self::new(num, den)?;
        if !base.is_empty() {
            return Err(Error::NotCoprime);
        }
        Ok(m)
    }

    /// The polynomial map `x -> f(x)`.
    pub fn polynomial(f: Poly) -> Result<RatMap> {
        let one = Poly::one(f.field());
        Self::coprime(f, one)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> &FiniteField {
        self.num.field()
    }

    /// `f(P)`.
    pub fn eval(&self, pt: ProjPoint) -> ProjPoint {
        let k = self.field();
        match pt {
            ProjPoint::Finite(a) => {
                let g = self.den.eval(a);
                if g.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(k.div(self.num.eval(a), g))
                }
            }
            ProjPoint::Infinity => {
                let fd = self.num.coeff(self.degree);
                let gd = self.den.coeff(self.degree);
                if gd.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(k.div(fd, gd))
                }
            }
        }
    }

    /// `F'G - FG'`.
    pub fn wronskian(&self) -> Poly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    pub fn is_separable(&self) -> bool {
        !self.wronskian().is_zero()
    }

    /// True when both coordinates are polynomials in `x^p`.
    pub fn is_frobenius_pullback(&self) -> bool {
        self.num.pth_root().is_ok() && self.den.pth_root().is_ok()
    }

    /// Ramification index at `pt`; 1 at unramified points.
    pub fn ram_index(&self, pt: ProjPoint) -> u32 {
        match pt {
            ProjPoint::Finite(a) => finite_index(&self.num, &self.den, a),
            ProjPoint::Infinity => {
                let fr = self.num.reversed(self.degree);
                let gr = self.den.reversed(self.degree);
                finite_index(&fr, &gr, Fe::ZERO)
            }
        }
    }

    /// Divisor of the Wronskian: `ord_P(F'G - FG')` at finite points and
    /// `2d - 2 - deg` at infinity. No tameness assumption is made.
    pub fn raw_different(&self) -> Result<Divisor> {
        let w = self.wronskian();
        let deg_w = w.degree().ok_or(Error::Inseparable)?;
        let mut div = Divisor::new();
        let (roots, residual) = w.rational_roots()?;
        for (a, m) in roots {
            div.add_point(ProjPoint::Finite(a), m);
        }
        div.add_residual(residual as u32);
        let top = 2 * self.degree - 2;
        if deg_w > top {
            return Err(Error::Internal(format!("wronskian degree {deg_w} exceeds {top}")));
        }
        div.add_point(ProjPoint::Infinity, (top - deg_w) as u32);
        Ok(div)
    }

    /// The different, audited against the tame formula `e_P - 1` at every
    /// rational point of its support and against total degree `2d - 2`.
    pub fn different_divisor(&self) -> Result<Divisor> {
        let div = self.raw_different()?;
        let p = self.field().characteristic();
        let k = self.field();
        for (&pt, &mult) in div.points() {
            let e = self.ram_index(pt);
            if e % p == 0 {
                return Err(Error::WildRamification { point: pt.format(k), index: e, valuation: mult });
            }
            if mult != e - 1 {
                return Err(Error::AuditFailed(format!(
                    "different {mult} at {} but index {e}",
                    pt.format(k)
                )));
            }
        }
        let expected = 2 * self.degree as u32 - 2;
        if div.degree() != expected {
            return Err(Error::AuditFailed(format!("total different {} != {expected}", div.degree())));
        }
        Ok(div)
    }

    pub fn mobius_act(&self, m: &Mobius, side: Side) -> Result<RatMap> {
        let k = self.field();
        if m.det(k).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let (num, den) = match side {
            Side::Image => (
                &self.num.scale(m.a) + &self.den.scale(m.b),
                &self.num.scale(m.c) + &self.den.scale(m.d),
            ),
            Side::Domain => {
                let lin_top = Poly::new(k, vec![m.b, m.a]);
                let lin_bot = Poly::new(k, vec![m.d, m.c]);
                let sub = |f: &Poly| {
                    let mut acc = Poly::zero(k);
                    for i in 0..=self.degree {
                        let c = f.coeff(i);
                        if c.is_zero() {
                            continue;
                        }
                        let term = &lin_top.pow(i as u32) * &lin_bot.pow((self.degree - i) as u32);
                        acc = &acc + &term.scale(c);
                    }
                    acc
                };
                (sub(&self.num), sub(&self.den))
            }
        };
        RatMap::coprime(num, den)
    }

    /// Equality modulo automorphisms of the image: same pencil.
    pub fn equivalent(&self, other: &RatMap) -> bool {
        self.degree == other.degree && self.pencil() == other.pencil()
    }

    pub fn pencil(&self) -> Pencil {
        Pencil::from_polys(&self.num, &self.den, self.degree).expect("coprime pair spans a pencil")
    }

    /// `f + g` over a common denominator.
    pub fn sum(&self, other: &RatMap) -> Result<RatMap> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        Ok(RatMap::new(num, den)?.0)
    }

    /// Replaces the ramification orders `e1, e2 < p` at `p1`, `p2` by
    /// `p - e1`, `p - e2`, keeping every other index.
    ///
    /// When either point is infinite or the map ramifies at infinity, the map
    /// is first pre-composed with a Möbius transformation moving an unramified
    /// point to infinity; the result is conjugated back and the transformation
    /// is returned alongside.
    pub fn involution_transform(&self, p1: ProjPoint, p2: ProjPoint) -> Result<InvolutionOutcome> {
        let k = self.field().clone();
        let p = k.characteristic();
        if p1 == p2 {
            return Err(Error::Precondition("points must be distinct".into()));
        }
        if !self.is_separable() {
            return Err(Error::Inseparable);
        }
        let e1 = self.ram_index(p1);
        let e2 = self.ram_index(p2);
        if e1 >= p || e2 >= p {
            return Err(Error::Precondition(format!("orders {e1}, {e2} must be below p = {p}")));
        }
        if self.eval(p1) == self.eval(p2) {
            return Err(Error::Precondition("points share an image".into()));
        }
        let needs_norm = p1.is_infinity() || p2.is_infinity() || self.ram_index(ProjPoint::Infinity) > 1;
        let (work, a1, a2, norm) = if needs_norm {
            let q = k
                .elements()
                .map(ProjPoint::Finite)
                .find(|&pt| pt != p1 && pt != p2 && self.ram_index(pt) == 1)
                .ok_or_else(|| Error::Precondition("no unramified point to move to infinity".into()))?;
            let m = Mobius::new(&k, q.finite().unwrap(), Fe::ONE, Fe::ONE, Fe::ZERO)?;
            let inv = m.inverse(&k);
            let g = self.mobius_act(&m, Side::Domain)?;
            let a1 = inv.apply(&k, p1).finite().expect("finite after normalization");
            let a2 = inv.apply(&k, p2).finite().expect("finite after normalization");
            (g, a1, a2, Some(m))
        } else {
            (self.clone(), p1.finite().unwrap(), p2.finite().unwrap(), None)
        };
        let vanishing_form = |val: ProjPoint| match val {
            ProjPoint::Finite(u) => &work.num - &work.den.scale(u),
            ProjPoint::Infinity => work.den.clone(),
        };
        let n = vanishing_form(work.eval(ProjPoint::Finite(a1)));
        let d = vanishing_form(work.eval(ProjPoint::Finite(a2)));
        let num = &Poly::linear(&k, a2).pow(p) * &n;
        let den = &Poly::linear(&k, a1).pow(p) * &d;
        let (mut hat, _) = RatMap::new(num, den)?;
        if let Some(m) = &norm {
            hat = hat.mobius_act(&m.inverse(&k), Side::Domain)?;
        }
        let expected_degree = self.degree + p as usize - e1 as usize - e2 as usize;
        if hat.degree != expected_degree || hat.ram_index(p1) != p - e1 || hat.ram_index(p2) != p - e2 {
            return Err(Error::Internal(format!(
                "involution produced degree {} with orders {}, {}",
                hat.degree,
                hat.ram_index(p1),
                hat.ram_index(p2)
            )));
        }
        Ok(InvolutionOutcome { map: hat, normalization: norm })
    }

    /// `F/G` in the polynomial text format.
    pub fn to_text(&self) -> String {
        format!("{}/{}", self.num.to_text(), self.den.to_text())
    }

    pub fn parse(field: &FiniteField, s: &str) -> Result<RatMap> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected F/G, got {s:?}")))?;
        RatMap::coprime(Poly::parse(field, a)?, Poly::parse(field, b)?)
    }
}

impl std::fmt::Debug for RatMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RatMap({})", self.to_text())
    }
}

/// Output of [`RatMap::involution_transform`].
#[derive(Clone, Debug)]
pub struct InvolutionOutcome {
    pub map: RatMap,
    /// Domain transformation applied before (and undone after) the transform.
    pub normalization: Option<Mobius>,
}

fn finite_index(num: &Poly, den: &Poly, a: Fe) -> u32 {
    let g = den.eval(a);
    let h = if g.is_zero() { den.clone() } else { &num.scale(g) - &den.scale(num.eval(a)) };
    h.valuation(a).expect("nonconstant coprime pair")
}
