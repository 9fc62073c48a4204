//! Scheduling q-independent sets, full power-controlled scheduling and the
//! noise lift.
//!
//! [`schedule_independent`] groups links into length classes `[2^(i-1), 2^i)`
//! times the shortest length, spreads the classes over buckets so that
//! classes within a bucket are more than `n^2` apart in length, refines every
//! class to a strong signal level under uniform power, then merges the s-th
//! slot of every class in a bucket and splits the union by first-fit so that
//! no slot pairs a short link with a much longer link that is close to it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::hochbaum_color;
use crate::error::{Error, Result};
use crate::geometry::{LinkId, LinkInstance, ModelKind};
use crate::independence::{self, build_conflict_graph, Criterion};
use crate::interference::{Interference, PowerAssignment};
use crate::refinement::{refine, Schedule};

/// Length class index (from 1) of every member of `set`.
pub fn partition_equilength(inst: &LinkInstance, set: &[usize]) -> BTreeMap<u32, Vec<usize>> {
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let Some(l_min) = set.iter().map(|&v| inst.length(v)).min_by(f64::total_cmp) else {
        return classes;
    };
    for &v in set {
        classes.entry(length_class(inst.length(v), l_min)).or_default().push(v);
    }
    classes
}

fn length_class(l: f64, l_min: f64) -> u32 {
    let mut i = ((l / l_min).log2().floor().max(0.0) as u32) + 1;
    // log2 is not exact; settle the boundaries with exact power-of-two products
    while l >= l_min * 2f64.powi(i as i32) {
        i += 1;
    }
    while i > 1 && l < l_min * 2f64.powi(i as i32 - 1) {
        i -= 1;
    }
    i
}

/// Number of bucket residues for universe size `n`: `2 * ceil(log2 n) + 1`.
///
/// Two classes sharing a bucket are at least this many indices apart, which
/// makes their lengths differ by a factor strictly greater than
/// `2^(2 * ceil(log2 n)) >= n^2`.
pub fn bucket_width(n: usize) -> u32 {
    let ceil_log2 = if n <= 1 { 0 } else { usize::BITS - (n - 1).leading_zeros() };
    2 * ceil_log2 + 1
}

/// Bucket index (from 1) to the class indices it holds; empty buckets omitted.
pub fn bucketize<T>(classes: &BTreeMap<u32, T>, width: u32) -> BTreeMap<u32, Vec<u32>> {
    let mut buckets: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &c in classes.keys() {
        buckets.entry((c - 1) % width + 1).or_default().push(c);
    }
    buckets
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTrace {
    /// Links merged from the s-th slots of the bucket's classes.
    pub merged: usize,
    pub slots_opened: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucketTrace {
    pub index: u32,
    pub classes: Vec<u32>,
    /// Slots of each class after refinement, in `classes` order.
    pub class_slots: Vec<usize>,
    pub rounds: Vec<RoundTrace>,
    pub slots: Vec<Vec<LinkId>>,
}

/// Record of one [`schedule_independent`] run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependentTrace {
    pub q: f64,
    /// Universe size driving the `n^2` and `1/(2n)` thresholds.
    pub n: usize,
    pub l_min: f64,
    pub bucket_width: u32,
    /// Target level of the per-class refinement, `2^(alpha/2 + 1)`.
    pub class_signal: f64,
    pub classes: BTreeMap<u32, Vec<LinkId>>,
    pub buckets: Vec<BucketTrace>,
    pub boundedness: usize,
    pub max_class_slots: usize,
    pub slot_count: usize,
}

impl IndependentTrace {
    /// `(boundedness + 1) * nonempty buckets * max class slots`.
    pub fn budget(&self) -> usize {
        (self.boundedness + 1) * self.buckets.len() * self.max_class_slots
    }

    pub fn within_budget(&self) -> bool {
        self.slot_count <= self.budget()
    }
}

/// Schedules a `q`-independent set with universe size `|set|`.
pub fn schedule_independent(inst: &LinkInstance, set: &[usize], q: f64) -> Result<(Schedule, IndependentTrace)> {
    schedule_independent_in(inst, set, q, set.len())
}

/// Schedules a `q`-independent set under mean power with universe size `n`.
pub fn schedule_independent_in(
    inst: &LinkInstance,
    set: &[usize],
    q: f64,
    n: usize,
) -> Result<(Schedule, IndependentTrace)> {
    if set.is_empty() {
        return Err(Error::InvalidParameter("cannot schedule an empty set".into()));
    }
    if !(q >= 1.0) {
        return Err(Error::InvalidParameter(format!("independence parameter must be at least 1, got {q}")));
    }
    if n < set.len() {
        return Err(Error::InvalidParameter(format!("universe size {n} is smaller than the set ({})", set.len())));
    }
    if let Some((v, w)) = independence::dependent_pair(inst, set, q, Criterion::for_model(inst.model)) {
        return Err(Error::NotIndependent(inst.id(v), inst.id(w), q));
    }

    let classes = partition_equilength(inst, set);
    let width = bucket_width(n);
    let buckets = bucketize(&classes, width);
    let class_signal = 2f64.powf(inst.alpha / 2.0 + 1.0);
    let mean = independence::mean_interference(inst);
    let nf = n as f64;
    let (long_factor, tau) = (nf * nf, 1.0 / (2.0 * nf));
    let conflicts = |u: usize, k: usize| {
        inst.length(u) > long_factor * inst.length(k) && independence::tau_close_with(&mean, k, u, tau)
    };

    let mut slots = Vec::new();
    let mut bucket_traces = Vec::with_capacity(buckets.len());
    let mut max_class_slots = 0;
    for (&index, class_ids) in &buckets {
        let mut refined = Vec::with_capacity(class_ids.len());
        for c in class_ids {
            let class = Schedule { slots: vec![classes[c].clone()], power: PowerAssignment::uniform(1.0) };
            refined.push(refine(inst, &class, class_signal)?.slots);
        }
        let class_slots: Vec<usize> = refined.iter().map(Vec::len).collect();
        let round_count = class_slots.iter().copied().max().unwrap_or(0);
        max_class_slots = max_class_slots.max(round_count);

        let mut rounds = Vec::with_capacity(round_count);
        let mut bucket_slots = Vec::new();
        for s in 0..round_count {
            let mut merged: Vec<usize> = refined.iter().filter_map(|r| r.get(s)).flatten().copied().collect();
            merged.sort_by(|&a, &b| inst.length(b).total_cmp(&inst.length(a)).then(inst.id(a).cmp(&inst.id(b))));
            let mut pool: Vec<Vec<usize>> = Vec::new();
            for &k in &merged {
                match pool.iter_mut().find(|t| !t.iter().any(|&u| conflicts(u, k))) {
                    Some(t) => t.push(k),
                    None => pool.push(vec![k]),
                }
            }
            rounds.push(RoundTrace { merged: merged.len(), slots_opened: pool.len() });
            bucket_slots.extend(pool);
        }
        bucket_traces.push(BucketTrace {
            index,
            classes: class_ids.clone(),
            class_slots,
            rounds,
            slots: bucket_slots.iter().map(|s| inst.ids(s)).collect(),
        });
        slots.extend(bucket_slots);
    }

    let trace = IndependentTrace {
        q,
        n,
        l_min: set.iter().map(|&v| inst.length(v)).fold(f64::INFINITY, f64::min),
        bucket_width: width,
        class_signal,
        classes: classes.iter().map(|(&c, m)| (c, inst.ids(m))).collect(),
        buckets: bucket_traces,
        boundedness: independence::boundedness(inst, set, n),
        max_class_slots,
        slot_count: slots.len(),
    };
    Ok((Schedule { slots, power: PowerAssignment::mean(1.0) }, trace))
}

/// Independence parameter of the conflict graph used for `model`.
pub fn pc_independence(model: ModelKind) -> f64 {
    match model {
        ModelKind::Directed => 3.0,
        ModelKind::Bidirectional => 2.0,
    }
}

/// Record of one [`schedule_pc`] run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PcTrace {
    pub q: f64,
    pub colors: usize,
    pub degeneracy: usize,
    pub classes: Vec<IndependentTrace>,
    /// Links pulled from their color class into their own slot.
    pub isolated: Vec<LinkId>,
    /// Signal level the merged schedule was refined to when `beta > 1`.
    pub beta_refined: Option<f64>,
}

/// Zero-noise power-controlled schedule of all links under mean power.
pub fn schedule_pc(inst: &LinkInstance) -> Result<(Schedule, PcTrace)> {
    let q = pc_independence(inst.model);
    let graph = build_conflict_graph(inst, q).graph;
    let coloring = hochbaum_color(&graph);
    let (_, degeneracy) = crate::coloring::degeneracy_order(&graph);
    let mean = independence::mean_interference(inst);

    let mut slots = Vec::new();
    let mut traces = Vec::new();
    let mut isolated = Vec::new();
    for class in coloring.classes() {
        let (keep, drop): (Vec<usize>, Vec<usize>) = class.iter().partition(|&&v| {
            class.iter().all(|&w| w == v || (mean.affectance(w, v).is_finite() && mean.affectance(v, w).is_finite()))
        });
        isolated.extend(drop);
        if keep.is_empty() {
            continue;
        }
        let (sched, trace) = schedule_independent_in(inst, &keep, q, inst.len())?;
        slots.extend(sched.slots);
        traces.push(trace);
    }
    slots.extend(isolated.iter().map(|&v| vec![v]));

    let mut sched = Schedule { slots, power: PowerAssignment::mean(1.0) };
    let mut beta_refined = None;
    if inst.beta > 1.0 {
        sched = refine(inst, &sched, inst.beta)?;
        beta_refined = Some(inst.beta);
    }
    let trace = PcTrace {
        q,
        colors: coloring.num_colors,
        degeneracy,
        classes: traces,
        isolated: inst.ids(&isolated),
        beta_refined,
    };
    Ok((sched, trace))
}

/// Smallest mean-power scale meeting `P_v / l_v^alpha >= 2 beta N` for all links.
pub fn noise_scale(inst: &LinkInstance) -> f64 {
    let max = inst.lengths().iter().map(|l| l.powf(inst.alpha / 2.0)).fold(0.0, f64::max);
    let mut c = 2.0 * inst.beta * inst.noise * max;
    if c == 0.0 {
        return 1.0;
    }
    // step up through rounding in the power formula
    while !Interference::new(inst, &PowerAssignment::mean(c)).map(|f| f.noise_power_ok()).unwrap_or(false) {
        c = c.next_up();
    }
    c
}

/// Turns a zero-noise schedule into one feasible under the instance's noise.
///
/// The zero-noise schedule is refined to signal level `2 beta`, then the mean
/// power scale is raised until every link clears twice the noise floor. When
/// `zero_noise` is `None` it is computed with [`schedule_pc`].
pub fn noise_lift(inst: &LinkInstance, zero_noise: Option<&Schedule>) -> Result<Schedule> {
    let computed;
    let zero = match zero_noise {
        Some(s) => s,
        None => {
            computed = schedule_pc(inst)?.0;
            &computed
        }
    };
    if inst.noise == 0.0 {
        return Ok(zero.clone());
    }
    let base = Schedule { slots: zero.slots.clone(), power: PowerAssignment::mean(1.0) };
    let refined = refine(inst, &base, 2.0 * inst.beta)?;
    Ok(Schedule { slots: refined.slots, power: PowerAssignment::mean(noise_scale(inst)) })
}

/// Full pipeline: [`schedule_pc`], followed by [`noise_lift`] when `N > 0`.
pub fn schedule(inst: &LinkInstance) -> Result<(Schedule, PcTrace)> {
    let (zero, trace) = schedule_pc(inst)?;
    let sched = noise_lift(inst, Some(&zero))?;
    Ok((sched, trace))
}
