use nalgebra::DMatrix;
use proptest::prelude::*;
use sinr_sched::generate::{generate, GeneratorSpec, LengthDist};
use sinr_sched::interference::PowerAssignment;
use sinr_sched::oracle::{
    chromatic_exact, enumerate_feasible, enumerate_pc_feasible, optimal_schedule_fixed, optimal_schedule_pc,
    spectral_radius, GainMatrix, CHROMATIC_CAP, OPT_CAP,
};
use sinr_sched::{Graph, ModelKind};

fn eigen_radius(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    m.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn power_iteration_matches_eigenvalues(
        n in 2usize..8,
        entries in proptest::collection::vec(1e-4f64..10.0, 64),
        scale in -6i32..3,
    ) {
        let s = 10f64.powi(scale);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { s * entries[i * 8 + j] }).collect())
            .collect();
        let expected = eigen_radius(&rows);
        let got = spectral_radius(&GainMatrix::from_rows(&rows)).unwrap();
        prop_assert!(got.lower <= expected * (1.0 + 1e-9) && got.upper >= expected * (1.0 - 1e-9), "{got:?} vs {expected}");
        prop_assert!((got.estimate() - expected).abs() <= 1e-8 * expected);
    }
}

#[test]
fn instance_gain_matrix_radius() {
    for seed in 0..40 {
        let spec = GeneratorSpec::new(6, seed, 20.0, LengthDist::Uniform { min: 0.5, max: 3.0 });
        let inst = generate(&spec).unwrap();
        let set: Vec<usize> = (0..inst.len()).collect();
        let m = GainMatrix::new(&inst, &set).unwrap();
        let rows: Vec<Vec<f64>> = (0..6).map(|i| (0..6).map(|j| m.get(i, j)).collect()).collect();
        let expected = eigen_radius(&rows);
        let got = spectral_radius(&m).unwrap().estimate();
        assert!((got - expected).abs() <= 1e-8 * expected.max(1e-300), "seed {seed}: {got} vs {expected}");
    }
}

#[test]
fn pc_dominates_fixed() {
    for seed in 0..30 {
        for model in [ModelKind::Directed, ModelKind::Bidirectional] {
            let spec = GeneratorSpec::new(7, seed, 8.0, LengthDist::Uniform { min: 0.5, max: 4.0 }).with_model(model);
            let inst = generate(&spec).unwrap();
            for pa in [PowerAssignment::uniform(1.0), PowerAssignment::mean(1.0), PowerAssignment::linear(1.0)] {
                let fixed = enumerate_feasible(&inst, &pa, OPT_CAP).unwrap();
                let pc = enumerate_pc_feasible(&inst, OPT_CAP).unwrap();
                assert!(fixed.is_downward_closed() && pc.is_downward_closed());
                // what any fixed assignment can do, power control can do
                assert!(fixed.masks().all(|m| pc.is_feasible(m)), "seed {seed}");
                assert!(
                    optimal_schedule_pc(&inst, OPT_CAP).unwrap()
                        <= optimal_schedule_fixed(&inst, &pa, OPT_CAP).unwrap()
                );
            }
        }
    }
}

fn brute_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    (1..=n.max(1))
        .find(|&k| {
            let mut colors = vec![0usize; n];
            loop {
                if g.edges().all(|(a, b)| colors[a] != colors[b]) {
                    return true;
                }
                let mut i = 0;
                while i < n {
                    colors[i] += 1;
                    if colors[i] < k {
                        break;
                    }
                    colors[i] = 0;
                    i += 1;
                }
                if i == n {
                    return false;
                }
            }
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chromatic_matches_brute_force(n in 1usize..8, bits in proptest::collection::vec(any::<bool>(), 28)) {
        let mut edges = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if bits[k] {
                    edges.push((a, b));
                }
                k += 1;
            }
        }
        let g = Graph::from_edges((0..n as u64).collect(), edges).unwrap();
        prop_assert_eq!(chromatic_exact(&g, CHROMATIC_CAP).unwrap(), brute_chromatic(&g));
    }
}
