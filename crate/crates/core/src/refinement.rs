//! Schedules and signal strengthening.
//!
//! [`refine`] turns a `p`-signal schedule into a `p'`-signal one. Each slot is
//! split twice by first-fit on incoming affectance: once taking links longest
//! first, once (inside every resulting group) shortest first, each time with
//! the threshold `1/(2p')`. A link then collects less than `1/(2p')` from the
//! members that preceded it in either order, so less than `1/p'` in total.
//! Each pass opens at most `ceil(2p'/p)` groups, because a link rejected by
//! `k` groups already carries `k/(2p')` of its at most `1/p` affectance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{LinkId, LinkInstance};
use crate::interference::{Interference, PowerAssignment};

/// Ordered partition of a set of links into slots, by link index.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub slots: Vec<Vec<usize>>,
    pub power: PowerAssignment,
}

/// Wire form of a [`Schedule`], with link ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub power: PowerAssignment,
    pub slots: Vec<Vec<LinkId>>,
}

impl Schedule {
    /// Checks that slots are nonempty, disjoint and in range.
    pub fn new(inst: &LinkInstance, slots: Vec<Vec<usize>>, power: PowerAssignment) -> Result<Self> {
        let mut seen = vec![false; inst.len()];
        for slot in &slots {
            if slot.is_empty() {
                return Err(Error::EmptySlot);
            }
            for &v in slot {
                if v >= inst.len() {
                    return Err(Error::InvalidParameter(format!("link index {v} out of range")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::OverlappingSlots(inst.id(v)));
                }
            }
        }
        Ok(Schedule { slots, power })
    }

    pub fn from_file(inst: &LinkInstance, file: &ScheduleFile) -> Result<Self> {
        let slots = file.slots.iter().map(|s| inst.indices(s)).collect::<Result<Vec<_>>>()?;
        Schedule::new(inst, slots, file.power.clone())
    }

    pub fn to_file(&self, inst: &LinkInstance) -> ScheduleFile {
        ScheduleFile { power: self.power.clone(), slots: self.slots.iter().map(|s| inst.ids(s)).collect() }
    }

    pub fn from_json(inst: &LinkInstance, text: &str) -> Result<Self> {
        Schedule::from_file(inst, &serde_json::from_str(text)?)
    }

    pub fn to_json(&self, inst: &LinkInstance) -> String {
        serde_json::to_string_pretty(&self.to_file(inst)).expect("schedule serialization is infallible")
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Scheduled link indices, ascending.
    pub fn covered(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.slots.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn covers_all(&self, inst: &LinkInstance) -> bool {
        self.covered().len() == inst.len()
    }
}

/// Slot multiplier guaranteed when moving from level `from` to level `to`.
pub fn growth_bound(from: f64, to: f64) -> usize {
    let p = from.min(to);
    let k = (2.0 * to / p).ceil() as usize;
    k * k
}

/// Refines `sched` into a `p_target`-signal schedule under its own powers.
pub fn refine(inst: &LinkInstance, sched: &Schedule, p_target: f64) -> Result<Schedule> {
    if !(p_target > 0.0 && p_target.is_finite()) {
        return Err(Error::InvalidParameter(format!("target signal level must be positive, got {p_target}")));
    }
    let f = Interference::new(inst, &sched.power)?;
    let mut out = Vec::with_capacity(sched.len());
    for slot in &sched.slots {
        if f.is_p_signal(std::slice::from_ref(slot), p_target) {
            out.push(slot.clone());
            continue;
        }
        if let Some((v, w)) = infinite_pair(&f, slot) {
            return Err(Error::InfiniteAffectance(inst.id(v), inst.id(w)));
        }
        out.extend(split_slot(&f, slot, p_target));
    }
    Ok(Schedule { slots: out, power: sched.power.clone() })
}

fn infinite_pair(f: &Interference<'_>, slot: &[usize]) -> Option<(usize, usize)> {
    slot.iter().find_map(|&v| slot.iter().find(|&&w| w != v && f.affectance(w, v).is_infinite()).map(|&w| (v, w)))
}

fn first_fit(f: &Interference<'_>, order: impl Iterator<Item = usize>, threshold: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match groups.iter_mut().find(|g| f.slot_affectance(g, v) < threshold) {
            Some(g) => g.push(v),
            None => groups.push(vec![v]),
        }
    }
    groups
}

fn split_slot(f: &Interference<'_>, slot: &[usize], p_target: f64) -> Vec<Vec<usize>> {
    let inst = f.instance();
    let threshold = 1.0 / (2.0 * p_target);
    let mut order = slot.to_vec();
    order.sort_by(|&a, &b| inst.length(b).total_cmp(&inst.length(a)).then(inst.id(a).cmp(&inst.id(b))));

    let mut out = Vec::new();
    for group in first_fit(f, order.iter().copied(), threshold) {
        // `group` keeps the longest-first order, so reversing it gives the
        // exact complement order for the second pass.
        for mut sub in first_fit(f, group.iter().rev().copied(), threshold) {
            let mut spill = Vec::new();
            // Rounding can only break the bound in knife-edge cases.
            loop {
                let worst = sub
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (i, f.slot_affectance(&sub, v)))
                    .max_by(|a, b| a.1.total_cmp(&b.1));
                match worst {
                    Some((i, a)) if a >= 1.0 / p_target => spill.push(sub.remove(i)),
                    _ => break,
                }
            }
            sub.sort_unstable();
            out.push(sub);
            out.extend(spill.into_iter().map(|v| vec![v]));
        }
    }
    out
}
