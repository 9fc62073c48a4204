//! Power assignments, affectance and SINR feasibility.
//!
//! Affectance of `v` caused by `w` is `(P_w / P_v) * (l_v / d_wv)^alpha`, the
//! share of `v`'s received signal that `w`'s transmission contributes as
//! interference. It is additive over disjoint sets and a set is SINR-feasible
//! (zero noise, `beta = 1`) exactly when every member's affectance is below 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{LinkId, LinkInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    /// `P_v = c`
    Uniform,
    /// `P_v = c * l_v^(alpha/2)`
    Mean,
    /// `P_v = c * l_v^alpha`
    Linear,
    /// Per-link powers supplied by the caller.
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerAssignment {
    pub kind: PowerKind,
    pub c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub powers: Option<BTreeMap<LinkId, f64>>,
}

impl PowerAssignment {
    pub fn uniform(c: f64) -> Self {
        PowerAssignment { kind: PowerKind::Uniform, c, powers: None }
    }

    pub fn mean(c: f64) -> Self {
        PowerAssignment { kind: PowerKind::Mean, c, powers: None }
    }

    pub fn linear(c: f64) -> Self {
        PowerAssignment { kind: PowerKind::Linear, c, powers: None }
    }

    pub fn explicit(powers: BTreeMap<LinkId, f64>) -> Self {
        PowerAssignment { kind: PowerKind::Explicit, c: 1.0, powers: Some(powers) }
    }

    /// Same assignment with every power multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        match &self.powers {
            Some(p) if self.kind == PowerKind::Explicit => {
                PowerAssignment::explicit(p.iter().map(|(&k, &v)| (k, v * s)).collect())
            }
            _ => PowerAssignment { c: self.c * s, ..self.clone() },
        }
    }

    pub fn power_of(&self, id: LinkId, length: f64, alpha: f64) -> Result<f64> {
        match self.kind {
            PowerKind::Uniform => Ok(self.c),
            PowerKind::Mean => Ok(self.c * length.powf(alpha / 2.0)),
            PowerKind::Linear => Ok(self.c * length.powf(alpha)),
            PowerKind::Explicit => {
                self.powers.as_ref().and_then(|p| p.get(&id).copied()).ok_or(Error::MissingPower(id))
            }
        }
    }

    /// Per-link powers for `inst`, indexed like `inst.links()`.
    pub fn resolve(&self, inst: &LinkInstance) -> Result<Vec<f64>> {
        if self.kind != PowerKind::Explicit && !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidPower(format!("scale must be positive, got {}", self.c)));
        }
        (0..inst.len())
            .map(|i| {
                let p = self.power_of(inst.id(i), inst.length(i), inst.alpha)?;
                if p > 0.0 && p.is_finite() {
                    Ok(p)
                } else {
                    Err(Error::InvalidPower(format!("power of link {} must be positive, got {p}", inst.id(i))))
                }
            })
            .collect()
    }
}

/// Worst in-slot affectance over a schedule and its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignalReport {
    pub worst_affectance: f64,
    pub signal_level: f64,
    pub worst_link: Option<LinkId>,
}

/// An instance paired with resolved powers.
#[derive(Debug, Clone)]
pub struct Interference<'a> {
    inst: &'a LinkInstance,
    powers: Vec<f64>,
}

impl<'a> Interference<'a> {
    pub fn new(inst: &'a LinkInstance, pa: &PowerAssignment) -> Result<Self> {
        Ok(Interference { inst, powers: pa.resolve(inst)? })
    }

    pub fn instance(&self) -> &'a LinkInstance {
        self.inst
    }

    pub fn power(&self, v: usize) -> f64 {
        self.powers[v]
    }

    /// Affectance of `v` caused by `w`; `+inf` when `d_wv = 0`.
    pub fn affectance(&self, w: usize, v: usize) -> f64 {
        let d = self.inst.asym_distance(w, v);
        if d == 0.0 {
            return f64::INFINITY;
        }
        let a = self.inst.alpha;
        (self.powers[w] / self.powers[v]) * (self.inst.length(v) / d).powf(a)
    }

    /// Sum of affectances on `v` from every other member of `slot`.
    pub fn slot_affectance(&self, slot: &[usize], v: usize) -> f64 {
        slot.iter().filter(|&&w| w != v).map(|&w| self.affectance(w, v)).sum()
    }

    fn sinr_ok(&self, slot: &[usize], v: usize) -> bool {
        let inst = self.inst;
        let signal = self.powers[v] / inst.length(v).powf(inst.alpha);
        let mut total = inst.noise;
        for &w in slot.iter().filter(|&&w| w != v) {
            let d = inst.asym_distance(w, v);
            if d == 0.0 {
                return false;
            }
            total += self.powers[w] / d.powf(inst.alpha);
        }
        if total == 0.0 {
            return true;
        }
        let sinr = signal / total;
        if inst.noise == 0.0 && inst.beta == 1.0 {
            sinr > inst.beta
        } else {
            sinr >= inst.beta
        }
    }

    /// Links of `slot` whose SINR condition fails, with the instance's noise.
    pub fn infeasible_links(&self, slot: &[usize]) -> Vec<usize> {
        slot.iter().copied().filter(|&v| !self.sinr_ok(slot, v)).collect()
    }

    pub fn is_sinr_feasible(&self, slot: &[usize]) -> bool {
        slot.iter().all(|&v| self.sinr_ok(slot, v))
    }

    /// Zero-noise signal level of a schedule: `1 / max affectance`.
    pub fn signal_level(&self, slots: &[Vec<usize>]) -> SignalReport {
        let mut worst = 0.0f64;
        let mut worst_link = None;
        for slot in slots {
            for &v in slot {
                let a = self.slot_affectance(slot, v);
                if worst_link.is_none() || a > worst {
                    worst = a;
                    worst_link = Some(self.inst.id(v));
                }
            }
        }
        SignalReport { worst_affectance: worst, signal_level: level_of(worst), worst_link }
    }

    /// Every link's in-slot affectance is strictly below `1/p`.
    pub fn is_p_signal(&self, slots: &[Vec<usize>], p: f64) -> bool {
        let bound = 1.0 / p;
        slots.iter().all(|slot| slot.iter().all(|&v| self.slot_affectance(slot, v) < bound))
    }

    /// Every link reaches its receiver with at least twice the noise floor.
    pub fn noise_power_ok(&self) -> bool {
        let inst = self.inst;
        let floor = 2.0 * inst.beta * inst.noise;
        (0..inst.len()).all(|v| self.powers[v] / inst.length(v).powf(inst.alpha) >= floor)
    }
}

/// Reciprocal with the `0 -> inf`, `inf -> 0` conventions.
pub fn level_of(affectance: f64) -> f64 {
    if affectance == 0.0 {
        f64::INFINITY
    } else if affectance.is_infinite() {
        0.0
    } else {
        1.0 / affectance
    }
}
