//! Exhaustive ground truth for small instances.
//!
//! Power-controlled feasibility uses the classical characterization: with
//! zero noise a set admits powers meeting every SINR constraint iff the
//! normalized gain matrix `M[v][w] = beta * l_v^alpha / d_wv^alpha` has
//! spectral radius below 1.

use crate::coloring::{hochbaum_color, Graph};
use crate::error::{Error, Result};
use crate::geometry::LinkInstance;
use crate::interference::PowerAssignment;

pub const ENUMERATE_CAP: usize = 16;
pub const OPT_CAP: usize = 12;
pub const CHROMATIC_CAP: usize = 12;

const POWER_TOLERANCE: f64 = 1e-10;
const POWER_ITERATIONS: usize = 10_000;

fn check_cap(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::TooLarge { n, max })
    } else {
        Ok(())
    }
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask >> b & 1 == 1)
}

/// Feasibility of every subset of an instance, indexed by bitmask.
#[derive(Debug, Clone)]
pub struct FeasibleFamily {
    n: usize,
    feasible: Vec<bool>,
}

impl FeasibleFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_feasible(&self, mask: u32) -> bool {
        self.feasible[mask as usize]
    }

    /// Nonempty feasible subsets as bitmasks, ascending.
    pub fn masks(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.feasible.len() as u32).filter(|&m| self.feasible[m as usize])
    }

    /// Nonempty feasible subsets as index lists.
    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.masks().map(|m| members(m).collect()).collect()
    }

    /// Removing any single member of a feasible set keeps it feasible.
    pub fn is_downward_closed(&self) -> bool {
        self.masks().all(|m| {
            members(m).all(|b| {
                let sub = m & !(1 << b);
                sub == 0 || self.feasible[sub as usize]
            })
        })
    }

    /// Fewest feasible sets partitioning all `n` links, `None` if some link is
    /// infeasible on its own.
    pub fn min_partition(&self) -> Option<usize> {
        min_partition(self.n, &self.feasible)
    }
}

fn min_partition(n: usize, feasible: &[bool]) -> Option<usize> {
    let full = (1usize << n) - 1;
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        // every submask of `rest`, each joined with the lowest member
        let mut sub = rest;
        loop {
            let part = sub | low;
            if feasible[part] && best[mask ^ part] != usize::MAX {
                best[mask] = best[mask].min(best[mask ^ part] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    (best[full] != usize::MAX).then_some(best[full])
}

/// Every SINR-feasible subset under fixed powers, checked from received
/// powers directly.
pub fn enumerate_feasible(inst: &LinkInstance, pa: &PowerAssignment, max_n: usize) -> Result<FeasibleFamily> {
    let n = inst.len();
    check_cap(n, max_n.min(31))?;
    let powers = pa.resolve(inst)?;
    let alpha = inst.alpha;
    let signal: Vec<f64> = (0..n).map(|v| powers[v] / inst.length(v).powf(alpha)).collect();
    // received[w][v]: power of w arriving at v
    let received: Vec<Vec<f64>> = (0..n)
        .map(|w| {
            (0..n)
                .map(|v| {
                    let d = inst.asym_distance(w, v);
                    if d == 0.0 {
                        f64::INFINITY
                    } else {
                        powers[w] / d.powf(alpha)
                    }
                })
                .collect()
        })
        .collect();
    let strict = inst.noise == 0.0 && inst.beta == 1.0;
    let ok = |mask: u32| {
        members(mask).all(|v| {
            let mut total = inst.noise;
            for w in members(mask) {
                if w != v {
                    total += received[w][v];
                }
            }
            if total == 0.0 {
                return true;
            }
            let sinr = signal[v] / total;
            if strict {
                sinr > inst.beta
            } else {
                sinr >= inst.beta
            }
        })
    };
    let mut feasible = vec![false; 1 << n];
    for mask in 1..(1u32 << n) {
        // fixed-power feasibility is downward closed
        let parents_ok = members(mask).all(|b| {
            let sub = mask & !(1 << b);
            sub == 0 || feasible[sub as usize]
        });
        feasible[mask as usize] = parents_ok && ok(mask);
    }
    Ok(FeasibleFamily { n, feasible })
}

/// Minimum number of feasible slots under fixed powers.
pub fn optimal_schedule_fixed(inst: &LinkInstance, pa: &PowerAssignment, max_n: usize) -> Result<usize> {
    check_cap(inst.len(), max_n)?;
    let family = enumerate_feasible(inst, pa, max_n)?;
    family.min_partition().ok_or_else(|| Error::InvalidParameter("some link is infeasible even alone".into()))
}

/// Row-major `beta * l_v^alpha / d_wv^alpha` over a subset, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct GainMatrix {
    n: usize,
    data: Vec<f64>,
}

impl GainMatrix {
    /// `None` when some pair has `d_wv = 0`.
    pub fn new(inst: &LinkInstance, set: &[usize]) -> Option<Self> {
        let n = set.len();
        let mut data = vec![0.0; n * n];
        for (i, &v) in set.iter().enumerate() {
            for (j, &w) in set.iter().enumerate() {
                if i != j {
                    let d = inst.asym_distance(w, v);
                    if d == 0.0 {
                        return None;
                    }
                    data[i * n + j] = inst.beta * (inst.length(v) / d).powf(inst.alpha);
                }
            }
        }
        Some(GainMatrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "gain matrix must be square");
        GainMatrix { n, data: rows.concat() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

/// Perron root bracket `[lower, upper]` from Collatz-Wielandt ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusBounds {
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

impl RadiusBounds {
    pub fn estimate(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Shifted power iteration on a nonnegative matrix. `stop` sees the current
/// bracket and ends the iteration early when it returns `true`.
fn power_iterate(m: &GainMatrix, mut stop: impl FnMut(&RadiusBounds) -> bool) -> Result<RadiusBounds> {
    let n = m.n;
    let rows: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).sum()).collect();
    let (min_row, max_row) = rows.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    if n == 0 || max_row == 0.0 {
        return Ok(RadiusBounds { lower: 0.0, upper: 0.0, iterations: 0 });
    }
    // The Perron root lies between the extreme row sums.
    let mut bounds = RadiusBounds { lower: min_row, upper: max_row, iterations: 0 };
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    for it in 1..=POWER_ITERATIONS {
        // shift by the current estimate; M and M + sI share eigenvectors
        let shift = bounds.estimate().max(f64::MIN_POSITIVE);
        for i in 0..n {
            y[i] = shift * x[i] + (0..n).map(|j| m.get(i, j) * x[j]).sum::<f64>();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        bounds = RadiusBounds {
            lower: (lo - shift).max(bounds.lower).max(0.0),
            upper: (hi - shift).min(bounds.upper),
            iterations: it,
        };
        if stop(&bounds) || bounds.upper - bounds.lower <= POWER_TOLERANCE * bounds.upper {
            return Ok(bounds);
        }
        let top = y.iter().copied().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / top;
        }
    }
    Err(Error::NoConvergence(POWER_ITERATIONS))
}

/// Perron root of `m` to relative tolerance 1e-10.
pub fn spectral_radius(m: &GainMatrix) -> Result<RadiusBounds> {
    power_iterate(m, |_| false)
}

/// Some power assignment makes `set` SINR-feasible with zero noise.
pub fn pc_feasible(inst: &LinkInstance, set: &[usize]) -> Result<bool> {
    if inst.noise != 0.0 {
        return Err(Error::NoiseUnsupported);
    }
    check_cap(set.len(), ENUMERATE_CAP)?;
    let Some(m) = GainMatrix::new(inst, set) else {
        return Ok(false);
    };
    let b = power_iterate(&m, |b| b.upper < 1.0 || b.lower >= 1.0)?;
    Ok(if b.upper < 1.0 {
        true
    } else if b.lower >= 1.0 {
        false
    } else {
        b.estimate() < 1.0
    })
}

/// Power-controlled feasibility of every subset.
pub fn enumerate_pc_feasible(inst: &LinkInstance, max_n: usize) -> Result<FeasibleFamily> {
    if inst.noise != 0.0 {
        return Err(Error::NoiseUnsupported);
    }
    let n = inst.len();
    check_cap(n, max_n.min(31))?;
    let mut feasible = vec![false; 1 << n];
    let mut set = Vec::with_capacity(n);
    for mask in 1..(1u32 << n) {
        // the Perron root of a principal submatrix never exceeds the whole
        let parents_ok = members(mask).all(|b| {
            let sub = mask & !(1 << b);
            sub == 0 || feasible[sub as usize]
        });
        if parents_ok {
            set.clear();
            set.extend(members(mask));
            feasible[mask as usize] = pc_feasible(inst, &set)?;
        }
    }
    Ok(FeasibleFamily { n, feasible })
}

/// Minimum schedule length when powers may be chosen per slot.
pub fn optimal_schedule_pc(inst: &LinkInstance, max_n: usize) -> Result<usize> {
    check_cap(inst.len(), max_n)?;
    let family = enumerate_pc_feasible(inst, max_n)?;
    Ok(family.min_partition().expect("singletons are always power-control feasible"))
}

/// Exact chromatic number by backtracking over colorings of increasing size.
pub fn chromatic_exact(g: &Graph, max_n: usize) -> Result<usize> {
    let n = g.vertex_count();
    check_cap(n, max_n)?;
    if n == 0 {
        return Ok(0);
    }
    let upper = hochbaum_color(g).num_colors;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    for k in lower..upper {
        let mut colors = vec![usize::MAX; n];
        if color_with(g, &order, 0, k, 0, &mut colors) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn color_with(g: &Graph, order: &[usize], pos: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // a fresh color is interchangeable with any other fresh one
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&w| colors[w] != c) {
            colors[v] = c;
            if color_with(g, order, pos + 1, k, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}
