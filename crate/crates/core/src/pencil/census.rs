use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Fe, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::ratmap::{ProjPoint, RatMap};

use super::enumerate::{check_budget, free_positions, strata, StratumWalker};
use super::sample::sample_points_in_subfield;
use super::{Condition, Pencil};

/// Witness lists are truncated to this many smallest pencils.
pub const MAX_WITNESSES: usize = 64;

/// Classification of the pencils meeting every Schubert condition.
///
/// `matched = separable + inseparable + with_base_points + audit_failures`;
/// `separable` counts only base-point-free separable pencils whose map has
/// exactly the prescribed orders, i.e. the maps actually being counted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusReport {
    pub total: u128,
    pub matched: u64,
    pub separable: u64,
    pub inseparable: u64,
    /// Separable pencils with a base point.
    pub with_base_points: u64,
    /// Separable base-point-free pencils whose orders are not exactly the
    /// prescribed ones; expected to stay zero.
    pub audit_failures: u64,
    /// Separable witnesses sending two assigned points to the same image.
    pub shared_images: u64,
    pub witnesses: Vec<Pencil>,
}

impl CensusReport {
    fn merge(mut self, other: CensusReport) -> CensusReport {
        self.total += other.total;
        self.matched += other.matched;
        self.separable += other.separable;
        self.inseparable += other.inseparable;
        self.with_base_points += other.with_base_points;
        self.audit_failures += other.audit_failures;
        self.shared_images += other.shared_images;
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort();
        self.witnesses.truncate(MAX_WITNESSES);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": u64::try_from(self.total).map(Value::from).unwrap_or_else(|_| Value::from(self.total.to_string())),
            "matched": self.matched,
            "separable": self.separable,
            "inseparable": self.inseparable,
            "with_base_points": self.with_base_points,
            "audit_failures": self.audit_failures,
            "shared_images": self.shared_images,
            "witnesses": self.witnesses.iter().map(|w| {
                w.to_ratmap().map(|(m, _)| Value::from(m.to_text())).unwrap_or(Value::Null)
            }).collect::<Vec<_>>(),
        })
    }
}

/// Enumerates `G(1, d)(F_q)` and classifies every pencil with a member of
/// order `>= e` at each assigned point.
pub fn count_maps_bruteforce(
    d: usize,
    assignments: &[(ProjPoint, u32)],
    field: &FiniteField,
    budget: u128,
) -> Result<CensusReport> {
    if d == 0 {
        return Err(Error::Precondition("pencils need d >= 1".into()));
    }
    for (i, (pt, _)) in assignments.iter().enumerate() {
        if assignments[..i].iter().any(|(q, _)| q == pt) {
            return Err(Error::RepeatedPoint(pt.format(field)));
        }
    }
    if let Some((_, e)) = assignments.iter().find(|(_, e)| *e == 0 || *e as usize > d) {
        return Err(Error::InvalidProfile(format!("order {e} outside [1, {d}]")));
    }
    let codim: usize = assignments.iter().map(|(_, e)| *e as usize - 1).sum();
    if codim != 2 * d - 2 {
        return Err(Error::InvalidProfile(format!("orders sum to codimension {codim}, expected {}", 2 * d - 2)));
    }
    let total = check_budget(d, field, budget)?;

    let mut conds: Vec<(ProjPoint, Condition)> = assignments
        .iter()
        .filter(|(_, e)| *e > 1)
        .map(|&(pt, e)| (pt, Condition::new(field, d, pt, e as usize)))
        .collect();
    conds.sort_by(|a, b| b.1.e.cmp(&a.1.e));

    let elems: Vec<Fe> = field.elements().collect();
    let q = elems.len();
    let jobs: Vec<(usize, usize, Option<usize>)> = strata(d)
        .flat_map(|(i, j)| {
            if free_positions(d, i, j).is_empty() {
                vec![(i, j, None)]
            } else {
                (0..q).map(|v| (i, j, Some(v))).collect()
            }
        })
        .collect();

    let report = jobs
        .par_iter()
        .map(|&(i, j, first)| {
            let prefix: Vec<usize> = first.into_iter().collect();
            let mut walker = StratumWalker::new(&elems, d, i, j, &prefix);
            let mut rep = CensusReport::default();
            while let Some(rows) = walker.next_rows() {
                if conds.iter().all(|(_, c)| c.holds(field, rows)) {
                    classify(field, d, rows, assignments, &mut rep);
                }
            }
            rep.witnesses.sort();
            rep.witnesses.truncate(MAX_WITNESSES);
            rep
        })
        .reduce(CensusReport::default, CensusReport::merge);
    Ok(CensusReport { total, ..report })
}

fn classify(field: &FiniteField, d: usize, rows: &[Vec<Fe>; 2], assignments: &[(ProjPoint, u32)], rep: &mut CensusReport) {
    rep.matched += 1;
    let f = Poly::new(field, rows[0].clone());
    let g = Poly::new(field, rows[1].clone());
    let w = &(&f.derivative() * &g) - &(&f * &g.derivative());
    if w.is_zero() {
        rep.inseparable += 1;
        return;
    }
    let top = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
    let coprime = f.gcd(&g).map(|c| c.degree() == Some(0)).unwrap_or(false);
    if top < d || !coprime {
        rep.with_base_points += 1;
        return;
    }
    let map = match RatMap::coprime(f, g) {
        Ok(m) => m,
        Err(_) => {
            rep.audit_failures += 1;
            return;
        }
    };
    let exact = map.different_divisor().is_ok()
        && assignments.iter().all(|&(pt, e)| map.ram_index(pt) == e);
    if !exact {
        rep.audit_failures += 1;
        return;
    }
    rep.separable += 1;
    let mut images: Vec<ProjPoint> = assignments.iter().map(|&(pt, _)| map.eval(pt)).collect();
    images.sort();
    if images.windows(2).any(|w| w[0] == w[1]) {
        rep.shared_images += 1;
    }
    rep.witnesses.push(Pencil::from_echelon(field, rows.clone()));
}

/// Census counts over many seeded point configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    /// `(seed, separable count, witnesses with shared images)` per seed.
    pub per_seed: Vec<(u64, u64, u64)>,
    pub distribution: BTreeMap<u64, usize>,
    /// Most frequent count; ties go to the smaller value.
    pub modal: u64,
    /// Every seed attaining the modal count had pairwise distinct images.
    pub modal_distinct_images: bool,
}

impl SweepReport {
    pub fn to_json(&self) -> Value {
        json!({
            "per_seed": self.per_seed.iter().map(|&(s, c, sh)| json!({"seed": s, "separable": c, "shared_images": sh})).collect::<Vec<_>>(),
            "distribution": self.distribution.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect::<serde_json::Map<_, _>>(),
            "modal": self.modal,
            "modal_distinct_images": self.modal_distinct_images,
        })
    }
}

/// Runs the census for each seed at random points drawn from the subfield
/// of degree `point_subfield` (the whole field by default). Counting over an
/// extension of the points' field picks up maps that are only defined there.
pub fn genericity_sweep(
    orders: &[u32],
    field: &FiniteField,
    seeds: impl IntoIterator<Item = u64>,
    min_order: Option<u64>,
    point_subfield: Option<u32>,
    budget: u128,
) -> Result<SweepReport> {
    let codim: u32 = orders.iter().map(|e| e.saturating_sub(1)).sum();
    if codim % 2 != 0 {
        return Err(Error::InvalidProfile("odd total ramification".into()));
    }
    let d = 1 + codim as usize / 2;
    let mut per_seed = Vec::new();
    for seed in seeds {
        let j = point_subfield.unwrap_or(field.degree());
        let pts = sample_points_in_subfield(orders.len(), field, j, seed, min_order, &|_| false)?;
        let assignments: Vec<(ProjPoint, u32)> = pts.into_iter().zip(orders.iter().copied()).collect();
        let rep = count_maps_bruteforce(d, &assignments, field, budget)?;
        per_seed.push((seed, rep.separable, rep.shared_images));
    }
    let mut distribution = BTreeMap::new();
    for &(_, c, _) in &per_seed {
        *distribution.entry(c).or_insert(0usize) += 1;
    }
    let modal = distribution
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&c, _)| c)
        .unwrap_or(0);
    let modal_distinct_images = per_seed.iter().filter(|s| s.1 == modal).all(|s| s.2 == 0);
    Ok(SweepReport { per_seed, distribution, modal, modal_distinct_images })
}
