//! Counts of separable maps with prescribed ramification at general points:
//! characteristic classes, the recursion on the last two orders with its
//! three-point base case, the four-point closed form and pair involutions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde_json::{json, Value};

use crate::algebra::is_prime;
use crate::error::{Error, Result};

/// Characteristic of the ground field; `Infinity` stands for characteristic 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Characteristic {
    Finite(u32),
    Infinity,
}

impl Characteristic {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || !is_prime(p as u64) {
            return Err(Error::InvalidCharacteristic(p as u64));
        }
        Ok(Characteristic::Finite(p))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Characteristic::Finite(p) => Some(p),
            Characteristic::Infinity => None,
        }
    }

    /// `p > n`, with infinity exceeding everything.
    pub fn exceeds(self, n: u32) -> bool {
        self.finite().is_none_or(|p| p > n)
    }

    /// `p` divides `e`; never true for infinity.
    pub fn divides(self, e: u32) -> bool {
        self.finite().is_some_and(|p| e % p == 0)
    }

    pub fn to_json(self) -> Value {
        match self {
            Characteristic::Finite(p) => Value::from(p),
            Characteristic::Infinity => Value::from("inf"),
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Finite(p) => write!(f, "{p}"),
            Characteristic::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Characteristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" || s == "0" {
            return Ok(Characteristic::Infinity);
        }
        let p: u64 = s.parse().map_err(|_| Error::Parse(format!("bad characteristic {s:?}")))?;
        let p32 = u32::try_from(p).map_err(|_| Error::InvalidCharacteristic(p))?;
        Characteristic::new(p32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharClass {
    High,
    Mid,
    Low,
}

impl CharClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CharClass::High => "HIGH",
            CharClass::Mid => "MID",
            CharClass::Low => "LOW",
        }
    }
}

/// Ramification orders with their characteristic and derived degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RamProfile {
    p: Characteristic,
    orders: Vec<u32>,
    d: u32,
}

impl RamProfile {
    pub fn p(&self) -> Characteristic {
        self.p
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn class(&self) -> CharClass {
        classify(self.p, &self.orders, self.d)
    }

    /// Some order is divisible by `p`, so no tame map exists.
    pub fn is_wild(&self) -> bool {
        self.orders.iter().any(|&e| self.p.divides(e))
    }

    /// Some order exceeds the degree.
    pub fn is_oversized(&self) -> bool {
        self.orders.iter().any(|&e| e > self.d)
    }

    pub fn is_valid(&self) -> bool {
        !self.is_wild() && !self.is_oversized()
    }

    /// Why the count is forced to zero, if it is.
    pub fn invalid_reason(&self) -> Option<&'static str> {
        if self.is_wild() {
            Some("wild excluded")
        } else if self.is_oversized() {
            Some("order exceeds degree")
        } else {
            None
        }
    }
}

fn classify(p: Characteristic, orders: &[u32], d: u32) -> CharClass {
    if p.exceeds(d) {
        CharClass::High
    } else if orders.iter().all(|&e| p.exceeds(e)) {
        CharClass::Mid
    } else {
        CharClass::Low
    }
}

fn degree_of(orders: &[u32]) -> Result<u32> {
    if orders.is_empty() {
        return Err(Error::InvalidProfile("no orders".into()));
    }
    if orders.contains(&0) {
        return Err(Error::InvalidProfile("orders must be at least 1".into()));
    }
    let total: u64 = orders.iter().map(|&e| e as u64 - 1).sum();
    if total % 2 != 0 {
        return Err(Error::InvalidProfile(format!("sum of (e_i - 1) = {total} is odd")));
    }
    u32::try_from(1 + total / 2).map_err(|_| Error::Overflow)
}

pub fn validate_profile(orders: &[u32], p: Characteristic) -> Result<RamProfile> {
    if let Characteristic::Finite(q) = p {
        Characteristic::new(q)?;
    }
    let d = degree_of(orders)?;
    Ok(RamProfile { p, orders: orders.to_vec(), d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Value(u64),
    Unknown,
}

impl Count {
    pub fn value(self) -> Option<u64> {
        match self {
            Count::Value(n) => Some(n),
            Count::Unknown => None,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Count::Value(n) => Value::from(n),
            Count::Unknown => Value::from("unknown"),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Value(n) => write!(f, "{n}"),
            Count::Unknown => f.write_str("unknown"),
        }
    }
}

/// One summand of the recursion: intermediate degree and merged order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub dprime: u32,
    pub e: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub profile: RamProfile,
    pub value: Count,
    pub char_class: CharClass,
    /// Top-level summands, empty for three or fewer points.
    pub trace: Vec<TraceStep>,
    pub reason: Option<String>,
}

impl CountResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "orders": self.profile.orders,
            "p": self.profile.p.to_json(),
            "d": self.profile.d,
            "class": self.char_class.as_str(),
            "count": self.value.to_json(),
            "trace": self.trace.iter().map(|s| json!({"dprime": s.dprime, "e": s.e})).collect::<Vec<_>>(),
        });
        if let Some(r) = &self.reason {
            v["reason"] = Value::from(r.as_str());
        }
        v
    }
}

/// The three-point count: 1 exactly when the profile is valid and `p > d`;
/// `Unknown` in low characteristic unless two orders are below `p`.
pub fn n_three(e1: u32, e2: u32, e3: u32, p: Characteristic) -> Result<CountResult> {
    let profile = validate_profile(&[e1, e2, e3], p)?;
    let char_class = profile.class();
    let reason = profile.invalid_reason().map(str::to_string);
    let below_p = profile.orders.iter().filter(|&&e| p.exceeds(e)).count();
    if profile.is_valid() && char_class == CharClass::Low && below_p < 2 {
        // x^n already shows the law fails with fewer than two orders below p
        let reason = Some("low characteristic".to_string());
        return Ok(CountResult { profile, value: Count::Unknown, char_class, trace: vec![], reason });
    }
    let value = if profile.is_valid() && p.exceeds(profile.d) { 1 } else { 0 };
    Ok(CountResult { profile, value: Count::Value(value), char_class, trace: vec![], reason })
}

type MemoKey = (Vec<u32>, Characteristic);

fn memo() -> &'static RwLock<HashMap<MemoKey, u64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, u64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Recursive count for MID and HIGH profiles; `Unknown` for LOW.
pub fn n_gen_recursive(profile: &RamProfile) -> Result<CountResult> {
    run_recursive(profile, true)
}

/// Count for any profile: 0 with a reason when some order is wild or exceeds
/// the degree, `Unknown` in low characteristic, the recursion otherwise.
pub fn n_gen(profile: &RamProfile) -> Result<CountResult> {
    if let Some(reason) = profile.invalid_reason() {
        return Ok(CountResult {
            profile: profile.clone(),
            value: Count::Value(0),
            char_class: profile.class(),
            trace: vec![],
            reason: Some(reason.to_string()),
        });
    }
    n_gen_recursive(profile)
}

/// Same recursion without the shared memo and without sorting the orders,
/// so the summation really privileges the given last two entries.
pub fn n_gen_uncached(profile: &RamProfile) -> Result<CountResult> {
    run_recursive(profile, false)
}

fn run_recursive(profile: &RamProfile, cached: bool) -> Result<CountResult> {
    let char_class = profile.class();
    if char_class == CharClass::Low {
        return Ok(CountResult {
            profile: profile.clone(),
            value: Count::Unknown,
            char_class,
            trace: vec![],
            reason: Some(profile.invalid_reason().unwrap_or("low characteristic").to_string()),
        });
    }
    let reason = profile.invalid_reason().map(str::to_string);
    let orders = padded(&profile.orders);
    if orders.len() == 3 {
        let value = count_orders(&orders, profile.d, profile.p, cached)?;
        return Ok(CountResult { profile: profile.clone(), value: Count::Value(value), char_class, trace: vec![], reason });
    }
    let mut trace = Vec::new();
    let mut total = 0u64;
    for (dprime, sub) in summands(&orders, profile.d, profile.p) {
        check_range(&sub, dprime, profile.p)?;
        let count = count_orders(&sub, dprime, profile.p, cached)?;
        trace.push(TraceStep { dprime, e: *sub.last().unwrap(), count });
        total = total.checked_add(count).ok_or(Error::Overflow)?;
    }
    Ok(CountResult { profile: profile.clone(), value: Count::Value(total), char_class, trace, reason })
}

fn padded(orders: &[u32]) -> Vec<u32> {
    let mut v = orders.to_vec();
    while v.len() < 3 {
        v.push(1);
    }
    v
}

/// `(d', orders of the merged profile)` for each summand.
fn summands(orders: &[u32], d: u32, p: Characteristic) -> Vec<(u32, Vec<u32>)> {
    let n = orders.len();
    let (a, b) = (orders[n - 2] as i64, orders[n - 1] as i64);
    let d = d as i64;
    let lo = (d - a + 1).max(d - b + 1).max(1);
    let hi = match p {
        Characteristic::Finite(p) => d.min(p as i64 + d - a - b),
        Characteristic::Infinity => d,
    };
    (lo..=hi)
        .map(|dp| {
            let e = 2 * dp - 2 * d + a + b - 1;
            let mut sub = orders[..n - 2].to_vec();
            sub.push(e as u32);
            (dp as u32, sub)
        })
        .collect()
}

fn check_range(sub: &[u32], dprime: u32, p: Characteristic) -> Result<()> {
    if classify(p, sub, dprime) == CharClass::Low {
        return Err(Error::RangeNotPreserved(format!("{sub:?} at p = {p}")));
    }
    Ok(())
}

fn count_orders(orders: &[u32], d: u32, p: Characteristic, cached: bool) -> Result<u64> {
    if orders.iter().any(|&e| e > d || e == 0 || p.divides(e)) {
        return Ok(0);
    }
    if orders.len() == 3 {
        return Ok(u64::from(p.exceeds(d)));
    }
    let key = if cached {
        let mut k = orders.to_vec();
        k.sort_unstable();
        let key = (k, p);
        if let Some(&v) = memo().read().unwrap().get(&key) {
            return Ok(v);
        }
        Some(key)
    } else {
        None
    };
    let mut total = 0u64;
    for (dprime, sub) in summands(orders, d, p) {
        check_range(&sub, dprime, p)?;
        total = total.checked_add(count_orders(&sub, dprime, p, cached)?).ok_or(Error::Overflow)?;
    }
    if let Some(key) = key {
        memo().write().unwrap().insert(key, total);
    }
    Ok(total)
}

/// `max(0, min_i{e_i, d+1-e_i} - max(0, d+1-p))`, or `Unknown` when some
/// order reaches `p`.
pub fn n_four_closed(orders: [u32; 4], p: Characteristic) -> Result<Count> {
    let profile = validate_profile(&orders, p)?;
    if orders.iter().any(|&e| !p.exceeds(e)) {
        return Ok(Count::Unknown);
    }
    let d = profile.d as i64;
    let m = orders.iter().map(|&e| (e as i64).min(d + 1 - e as i64)).min().unwrap();
    let shift = match p {
        Characteristic::Finite(p) => (d + 1 - p as i64).max(0),
        Characteristic::Infinity => 0,
    };
    Ok(Count::Value((m - shift).max(0) as u64))
}

/// Replaces the orders at (0-based) positions `i`, `j` by `p - e_i`, `p - e_j`.
pub fn involution_reduce(profile: &RamProfile, i: usize, j: usize) -> Result<RamProfile> {
    let p = profile
        .p
        .finite()
        .ok_or_else(|| Error::Precondition("involution needs a finite characteristic".into()))?;
    let n = profile.orders.len();
    if i >= n || j >= n || i == j {
        return Err(Error::IndexOutOfRange(format!("positions {i}, {j} for {n} orders")));
    }
    if profile.class() == CharClass::Low {
        return Err(Error::Precondition("profile is in low characteristic".into()));
    }
    let (ei, ej) = (profile.orders[i], profile.orders[j]);
    if ei >= p || ej >= p {
        return Err(Error::Precondition(format!("orders {ei}, {ej} must be below p = {p}")));
    }
    let mut orders = profile.orders.clone();
    orders[i] = p - ei;
    orders[j] = p - ej;
    validate_profile(&orders, profile.p)
}

/// Nondecreasing order sequences of length `n` in `[min_e, d]` with
/// `sum(e_i - 1) = 2d - 2`.
pub fn enumerate_profiles(n: usize, d: u32, min_e: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, lo: u32, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (n - cur.len()) as u32;
        for e in lo..=d {
            let used = e - 1;
            if used > remaining || (e - 1) * slots > remaining {
                break;
            }
            if (d - 1) * slots < remaining {
                return;
            }
            cur.push(e);
            rec(n, d, e, remaining - used, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 1 && n >= 1 {
        rec(n, d, min_e.max(1), 2 * d - 2, &mut Vec::new(), &mut out);
    }
    out
}
