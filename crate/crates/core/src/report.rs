//! Independent verification of schedules.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{LinkId, LinkInstance};
use crate::independence::boundedness;
use crate::interference::Interference;
use crate::refinement::Schedule;
use crate::scheduler::PcTrace;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleReport {
    pub slot_count: usize,
    pub link_count: usize,
    pub covers_all: bool,
    /// Every link is scheduled and every slot meets the SINR condition with
    /// the instance's noise.
    pub feasible: bool,
    /// Links failing the SINR condition, ascending by id.
    pub infeasible_links: Vec<LinkId>,
    /// Zero-noise signal level; `None` when no slot has interference.
    pub signal_level: Option<f64>,
    pub worst_link: Option<LinkId>,
    pub noise_power_ok: bool,
    pub lambda: f64,
    pub slot_boundedness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_boundedness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_vs_fixed_opt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_vs_pc_opt: Option<f64>,
}

impl ScheduleReport {
    pub fn with_trace(mut self, trace: &PcTrace) -> Self {
        self.class_boundedness = Some(trace.classes.iter().map(|c| c.boundedness).collect());
        self
    }

    pub fn with_optima(mut self, opt_fixed: Option<usize>, opt_pc: Option<usize>) -> Self {
        let ratio = |opt: usize| self.slot_count as f64 / opt as f64;
        self.ratio_vs_fixed_opt = opt_fixed.map(ratio);
        self.ratio_vs_pc_opt = opt_pc.map(ratio);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

pub fn verify(inst: &LinkInstance, sched: &Schedule) -> Result<ScheduleReport> {
    let checker = Interference::new(inst, &sched.power)?;
    let mut infeasible: Vec<LinkId> =
        sched.slots.iter().flat_map(|s| checker.infeasible_links(s)).map(|v| inst.id(v)).collect();
    infeasible.sort_unstable();
    let covers_all = sched.covers_all(inst);
    let signal = checker.signal_level(&sched.slots);
    let n = inst.len();
    Ok(ScheduleReport {
        slot_count: sched.len(),
        link_count: n,
        covers_all,
        feasible: covers_all && infeasible.is_empty(),
        infeasible_links: infeasible,
        signal_level: signal.signal_level.is_finite().then_some(signal.signal_level),
        worst_link: signal.worst_link,
        noise_power_ok: checker.noise_power_ok(),
        lambda: inst.length_diversity(),
        slot_boundedness: sched.slots.iter().map(|s| boundedness(inst, s, n)).collect(),
        class_boundedness: None,
        ratio_vs_fixed_opt: None,
        ratio_vs_pc_opt: None,
    })
}
