//! Pairwise independence, closeness, boundedness and conflict graphs.

use crate::coloring::Graph;
use crate::geometry::{LinkInstance, ModelKind};
use crate::interference::{Interference, PowerAssignment};

/// Which pairwise independence test applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// `d_vw * d_wv > q^2 * l_v * l_w`
    General,
    /// Both directed distances exceed `q * sqrt(l_v * l_w)`.
    MeanPower,
}

impl Criterion {
    /// The criterion whose violation defines the conflict graph for `model`.
    pub fn for_model(model: ModelKind) -> Self {
        match model {
            ModelKind::Directed => Criterion::MeanPower,
            ModelKind::Bidirectional => Criterion::General,
        }
    }
}

pub fn q_independent_pair(inst: &LinkInstance, v: usize, w: usize, q: f64) -> bool {
    inst.asym_distance(v, w) * inst.asym_distance(w, v) > q * q * inst.length(v) * inst.length(w)
}

pub fn q_independent_mean(inst: &LinkInstance, v: usize, w: usize, q: f64) -> bool {
    let bound = q * (inst.length(v) * inst.length(w)).sqrt();
    inst.asym_distance(v, w) > bound && inst.asym_distance(w, v) > bound
}

pub fn q_independent(inst: &LinkInstance, v: usize, w: usize, q: f64, criterion: Criterion) -> bool {
    match criterion {
        Criterion::General => q_independent_pair(inst, v, w, q),
        Criterion::MeanPower => q_independent_mean(inst, v, w, q),
    }
}

/// First pair of `set` failing the criterion, if any.
pub fn dependent_pair(inst: &LinkInstance, set: &[usize], q: f64, criterion: Criterion) -> Option<(usize, usize)> {
    set.iter()
        .enumerate()
        .find_map(|(i, &v)| set[i + 1..].iter().find(|&&w| !q_independent(inst, v, w, q, criterion)).map(|&w| (v, w)))
}

pub fn is_q_independent_set(inst: &LinkInstance, set: &[usize], q: f64, criterion: Criterion) -> bool {
    dependent_pair(inst, set, q, criterion).is_none()
}

/// Mean-power affectance evaluator used for closeness tests. The scale of the
/// mean assignment cancels out of every affectance.
pub fn mean_interference(inst: &LinkInstance) -> Interference<'_> {
    Interference::new(inst, &PowerAssignment::mean(1.0)).expect("mean power with c = 1 is always valid")
}

/// One of `v`, `w` affects the other by at least `tau` under mean power.
pub fn tau_close_with(mean: &Interference<'_>, v: usize, w: usize, tau: f64) -> bool {
    mean.affectance(v, w).max(mean.affectance(w, v)) >= tau
}

pub fn tau_close(inst: &LinkInstance, v: usize, w: usize, tau: f64) -> bool {
    tau_close_with(&mean_interference(inst), v, w, tau)
}

/// Smallest `p` for which `set` is `p`-bounded with universe size `n`: the
/// largest number of members at least `n^2` times longer than some link of
/// the instance and `1/(2n)`-close to it.
pub fn boundedness(inst: &LinkInstance, set: &[usize], n: usize) -> usize {
    let mean = mean_interference(inst);
    let n = n as f64;
    let tau = 1.0 / (2.0 * n);
    (0..inst.len())
        .map(|v| {
            let lv = inst.length(v);
            set.iter().filter(|&&w| w != v && inst.length(w) >= n * n * lv && tau_close_with(&mean, v, w, tau)).count()
        })
        .max()
        .unwrap_or(0)
}

/// Every pairwise length ratio lies in `[1, 2]` or `[n^2, inf)`.
pub fn is_well_separated(inst: &LinkInstance, set: &[usize], n: usize) -> bool {
    let n2 = (n * n) as f64;
    set.iter().enumerate().all(|(i, &v)| {
        set[i + 1..].iter().all(|&w| {
            let (a, b) = (inst.length(v), inst.length(w));
            let r = a.max(b) / a.min(b);
            r <= 2.0 || r >= n2
        })
    })
}

/// Links are vertices; edges join pairs that are not `q`-independent under
/// the criterion of `model` (`D_q` for directed, `B_q` for bidirectional).
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictGraph {
    pub graph: Graph,
    pub q: f64,
    pub model: ModelKind,
}

impl ConflictGraph {
    pub fn to_edge_list(&self) -> String {
        self.graph.to_edge_list(Some(&format!("q={} model={}", self.q, self.model)))
    }
}

pub fn build_conflict_graph(inst: &LinkInstance, q: f64) -> ConflictGraph {
    let criterion = Criterion::for_model(inst.model);
    let n = inst.len();
    let edges =
        (0..n).flat_map(|v| (v + 1..n).map(move |w| (v, w))).filter(|&(v, w)| !q_independent(inst, v, w, q, criterion));
    let labels = inst.links().iter().map(|l| l.id).collect();
    let graph = Graph::from_edges(labels, edges.collect::<Vec<_>>()).expect("pairs are distinct and in range");
    ConflictGraph { graph, q, model: inst.model }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Link, Point};

    fn inst(links: &[(f64, f64, f64, f64)], model: ModelKind) -> LinkInstance {
        let links = links
            .iter()
            .enumerate()
            .map(|(i, &(sx, sy, rx, ry))| Link::new(i as u64, Point::new(sx, sy), Point::new(rx, ry)))
            .collect();
        LinkInstance::new(links, model, 3.0, 1.0, 0.0).unwrap()
    }

    fn far_pair(model: ModelKind) -> LinkInstance {
        inst(&[(0.0, 0.0, 1.0, 0.0), (10.0, 0.0, 11.0, 0.0)], model)
    }

    fn three_on_line() -> LinkInstance {
        inst(&[(0.0, 0.0, 1.0, 0.0), (10.0, 0.0, 11.0, 0.0), (20.0, 0.0, 21.0, 0.0)], ModelKind::Directed)
    }

    #[test]
    fn pair_examples() {
        assert!(q_independent_pair(&far_pair(ModelKind::Directed), 0, 1, 2.0));
        assert!(q_independent_pair(&far_pair(ModelKind::Bidirectional), 0, 1, 2.0));
        let touching = inst(&[(0.0, 0.0, 1.0, 0.0), (1.0, 0.0, 2.0, 0.0)], ModelKind::Directed);
        assert!(!q_independent_pair(&touching, 0, 1, 1.0));
        assert!(!q_independent_mean(&touching, 0, 1, 1.0));
    }

    #[test]
    fn mean_examples() {
        assert!(q_independent_mean(&far_pair(ModelKind::Directed), 0, 1, 2.0));
        // collinear unit links: d_vw = d(s_v, r_w) = 3, d_wv = d(s_w, r_v) = 1
        let skew = inst(&[(0.0, 0.0, 1.0, 0.0), (2.0, 0.0, 3.0, 0.0)], ModelKind::Directed);
        assert_eq!(skew.asym_distance(0, 1), 3.0);
        assert_eq!(skew.asym_distance(1, 0), 1.0);
        assert!(!q_independent_mean(&skew, 0, 1, 2.0));
        // the product form still passes: 3 * 1 > 1^2 * 1 * 1
        assert!(q_independent_pair(&skew, 0, 1, 1.0));
        assert!(!q_independent_mean(&skew, 0, 1, 1.0));

        let b = far_pair(ModelKind::Bidirectional);
        for q in [1.0, 2.0, 8.0, 9.0, 10.0] {
            assert_eq!(q_independent_mean(&b, 0, 1, q), q_independent_pair(&b, 0, 1, q));
        }
    }

    #[test]
    fn set_examples() {
        let i = three_on_line();
        assert!(is_q_independent_set(&i, &[], 2.0, Criterion::General));
        assert!(is_q_independent_set(&i, &[1], 2.0, Criterion::MeanPower));
        assert!(is_q_independent_set(&i, &[0, 1, 2], 2.0, Criterion::General));
        assert!(is_q_independent_set(&i, &[0, 1, 2], 2.0, Criterion::MeanPower));
        let touching = inst(&[(0.0, 0.0, 1.0, 0.0), (5.0, 0.0, 6.0, 0.0), (1.0, 0.0, 2.0, 0.0)], ModelKind::Directed);
        assert!(!is_q_independent_set(&touching, &[0, 1, 2], 1.0, Criterion::General));
        assert_eq!(dependent_pair(&touching, &[0, 1, 2], 1.0, Criterion::MeanPower), Some((0, 2)));
    }

    #[test]
    fn tau_close_examples() {
        let touching = inst(&[(0.0, 0.0, 1.0, 0.0), (1.0, 0.0, 2.0, 0.0)], ModelKind::Directed);
        assert!(tau_close(&touching, 0, 1, 1e300));
        let i = far_pair(ModelKind::Directed);
        assert!(!tau_close(&i, 0, 1, 0.5));
        assert!(tau_close(&i, 0, 1, 1.0 / 1000.0));
    }

    #[test]
    fn boundedness_examples() {
        let i = three_on_line();
        assert_eq!(boundedness(&i, &[0, 1, 2], 3), 0);
        assert_eq!(boundedness(&i, &[], 3), 0);

        // n = 2: tiny v of length 1e-2, w of length n^2 * 1e-2 = 4e-2.
        // d_wv = sqrt(l_v l_w) = 2e-2 makes a_w(v) = 1.
        let lv: f64 = 1e-2;
        let lw = 4.0 * lv;
        let d = (lv * lw).sqrt();
        let links = vec![
            Link::new(0, Point::new(0.0, 0.0), Point::new(lv, 0.0)),
            Link::new(1, Point::new(lv + d, 0.0), Point::new(lv + d + lw, 0.0)),
        ];
        let i = LinkInstance::new(links, ModelKind::Directed, 3.0, 1.0, 0.0).unwrap();
        assert!((i.asym_distance(1, 0) - d).abs() < 1e-15);
        assert!(mean_interference(&i).affectance(1, 0) >= 1.0 - 1e-12);
        assert!(i.length(1) >= 4.0 * i.length(0));
        assert_eq!(boundedness(&i, &[1], 2), 1);
        assert_eq!(boundedness(&i, &[0], 2), 0);
    }

    #[test]
    fn well_separated_examples() {
        let lens = |ls: &[f64]| {
            let links: Vec<_> =
                ls.iter().enumerate().map(|(k, &l)| (1000.0 * k as f64, 0.0, 1000.0 * k as f64 + l, 0.0)).collect();
            inst(&links, ModelKind::Directed)
        };
        assert!(is_well_separated(&lens(&[1.0, 2.0]), &[0, 1], 2));
        assert!(!is_well_separated(&lens(&[1.0, 3.0]), &[0, 1], 2));
        assert!(is_well_separated(&lens(&[1.0, 4.0]), &[0, 1], 2));
        assert!(is_well_separated(&lens(&[1.0, 9.0, 18.0]), &[0, 1, 2], 3));
        assert!(!is_well_separated(&lens(&[1.0, 9.0, 5.0]), &[0, 1, 2], 3));
    }

    #[test]
    fn conflict_graph_examples() {
        let stacked = inst(&[(0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 1.0, 0.0)], ModelKind::Directed);
        assert_eq!(build_conflict_graph(&stacked, 1.0).graph.edge_count(), 3);

        assert_eq!(build_conflict_graph(&three_on_line(), 2.0).graph.edge_count(), 0);

        // d_vw = d_wv = 1.5 with unit links: parallel, offset vertically
        let close = inst(&[(0.0, 0.0, 1.0, 0.0), (0.0, 1.5, 1.0, 1.5)], ModelKind::Bidirectional);
        assert_eq!(close.asym_distance(0, 1), 1.5);
        let g = build_conflict_graph(&close, 2.0);
        assert_eq!(g.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(g.to_edge_list().starts_with("# q=2 model=bidirectional\nvertices 0 1\n"));
    }
}
