//! Intersection numbers of special Schubert classes on `G(1, d)` by the Pieri
//! rule on two-row partitions in the `2 x (d-1)` box.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// The class indexed by the partition `(a, b)`, `d - 1 >= a >= b >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchubertClass {
    pub a: u32,
    pub b: u32,
}

/// An integer combination of Schubert classes of `G(1, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSum {
    d: u32,
    terms: BTreeMap<SchubertClass, u64>,
}

impl ClassSum {
    /// The fundamental class `(0, 0)`.
    pub fn identity(d: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(SchubertClass { a: 0, b: 0 }, 1);
        ClassSum { d, terms }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn coefficient(&self, a: u32, b: u32) -> u64 {
        self.terms.get(&SchubertClass { a, b }).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (SchubertClass, u64)> + '_ {
        self.terms.iter().map(|(&c, &n)| (c, n))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms().map(|(c, n)| json!({"a": c.a, "b": c.b, "coeff": n})).collect())
    }
}

/// Multiplies by the special class `(e - 1, 0)`.
pub fn pieri_multiply(s: &ClassSum, e: u32) -> Result<ClassSum> {
    let d = s.d;
    if e == 0 || e > d {
        return Err(Error::InvalidProfile(format!("order {e} outside [1, {d}]")));
    }
    let k = e - 1;
    let top = d - 1;
    let mut terms: BTreeMap<SchubertClass, u64> = BTreeMap::new();
    for (&SchubertClass { a, b }, &coeff) in &s.terms {
        let total = a + b + k;
        for b2 in b..=a {
            let Some(a2) = total.checked_sub(b2) else { break };
            if a2 < a || a2 > top {
                continue;
            }
            let slot = terms.entry(SchubertClass { a: a2, b: b2 }).or_insert(0);
            *slot = slot.checked_add(coeff).ok_or(Error::Overflow)?;
        }
    }
    Ok(ClassSum { d, terms })
}

/// Coefficient of the point class `(d-1, d-1)` in the product of the special
/// classes of the given orders, together with the partial products.
pub fn intersection_expansion(d: u32, orders: &[u32]) -> Result<(u64, Vec<ClassSum>)> {
    if d == 0 {
        return Err(Error::InvalidProfile("degree must be positive".into()));
    }
    let codim: u64 = orders.iter().map(|&e| (e as u64).saturating_sub(1)).sum();
    if codim != 2 * (d as u64 - 1) {
        return Err(Error::InvalidProfile(format!(
            "total codimension {codim} differs from dim G(1, {d}) = {}",
            2 * (d - 1)
        )));
    }
    let mut s = ClassSum::identity(d);
    let mut steps = Vec::with_capacity(orders.len());
    for &e in orders {
        s = pieri_multiply(&s, e)?;
        steps.push(s.clone());
    }
    Ok((s.coefficient(d - 1, d - 1), steps))
}

pub fn intersection_number(d: u32, orders: &[u32]) -> Result<u64> {
    intersection_expansion(d, orders).map(|(n, _)| n)
}
