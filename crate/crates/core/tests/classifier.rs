use qdist_core::circuit::build_experiment_circuit;
use qdist_core::classifier::{
    acceptance_probability, classical_classify, interfere_and_read, interfere_and_sample,
    interference_score, prepare_state, RegisterLayout, TrainingSet,
};
use qdist_core::data::Label;
use qdist_core::seeding::task_rng;
use rand::Rng;

fn on_circle(angle: f64) -> Vec<f64> {
    vec![angle.cos(), angle.sin()]
}

fn random_unit(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// Post-Hadamard readout written out from the amplitude formula:
/// accepted amplitudes are (x~_i + x^m_i) / (2 sqrt(M)).
fn oracle_readout(train: &[Vec<f64>], labels: &[Label], x: &[f64]) -> (f64, f64) {
    let m = train.len() as f64;
    let mut total = 0.0;
    let mut minus = 0.0;
    for (xm, y) in train.iter().zip(labels) {
        let mass: f64 = xm.iter().zip(x).map(|(a, b)| (a + b).powi(2)).sum::<f64>() / (4.0 * m);
        total += mass;
        if *y == Label::Minus {
            minus += mass;
        }
    }
    (total, minus / total)
}

#[test]
fn three_paths_agree_on_two_point_problems() {
    let mut rng = task_rng(2024, 0);
    let layout = RegisterLayout::for_problem(2, 2);
    let mut compared = 0;
    for _ in 0..200 {
        let x = on_circle(rng.random_range(0.0..std::f64::consts::TAU));
        let x0 = on_circle(rng.random_range(0.0..std::f64::consts::TAU));
        let x1 = on_circle(rng.random_range(0.0..std::f64::consts::TAU));
        let train = TrainingSet::new(
            vec![x0.clone(), x1.clone()],
            vec![Label::Minus, Label::Plus],
        )
        .unwrap();

        let gate_level = build_experiment_circuit(&x, &x0, &x1)
            .unwrap()
            .simulate()
            .unwrap()
            .with_layout(layout)
            .unwrap();
        let (via_gates, direct) = match (
            interfere_and_read(&gate_level),
            interfere_and_read(&prepare_state(&train, &x).unwrap()),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(_), Err(_)) => continue,
            other => panic!("paths disagree on failure: {other:?}"),
        };
        assert!((via_gates.p_acc - direct.p_acc).abs() < 1e-10);
        assert!((via_gates.p_class_minus - direct.p_class_minus).abs() < 1e-10);
        if direct.p_acc <= 1e-6 {
            continue;
        }
        let (_, classical) = classical_classify(&train, &x).unwrap();
        assert_eq!(via_gates.predicted, direct.predicted);
        assert_eq!(direct.predicted, classical, "x={x:?} x0={x0:?} x1={x1:?}");
        compared += 1;
    }
    assert!(compared >= 190);
}

#[test]
fn readout_matches_amplitude_formula() {
    let mut rng = task_rng(7, 0);
    for _ in 0..100 {
        let m = rng.random_range(1..=6);
        let n = rng.random_range(1..=5);
        let vectors: Vec<Vec<f64>> = (0..m).map(|_| random_unit(&mut rng, n)).collect();
        let labels: Vec<Label> = (0..m)
            .map(|_| {
                if rng.random::<bool>() {
                    Label::Plus
                } else {
                    Label::Minus
                }
            })
            .collect();
        let x = random_unit(&mut rng, n);
        let train = TrainingSet::new(vectors.clone(), labels.clone()).unwrap();
        let Ok(out) = interfere_and_read(&prepare_state(&train, &x).unwrap()) else {
            continue;
        };
        let (p_acc, p_minus) = oracle_readout(&vectors, &labels, &x);
        assert!((out.p_acc - p_acc).abs() < 1e-10);
        assert!((out.p_acc - acceptance_probability(&train, &x).unwrap()).abs() < 1e-12);
        assert!((out.p_class_minus - p_minus).abs() < 1e-10);
        assert!((out.p_class_minus + out.p_class_plus - 1.0).abs() < 1e-12);

        // the vote the readout performs, for any label balance
        let score = interference_score(&train, &x).unwrap();
        let diff = out.p_class_plus - out.p_class_minus;
        assert!((diff - score / (m as f64 * out.p_acc)).abs() < 1e-9);
    }
}

#[test]
fn balanced_training_sets_agree_with_the_kernel_vote() {
    let mut rng = task_rng(8, 0);
    for _ in 0..100 {
        let half = rng.random_range(1..=3);
        let n = rng.random_range(2..=4);
        let vectors: Vec<Vec<f64>> = (0..2 * half).map(|_| random_unit(&mut rng, n)).collect();
        let labels: Vec<Label> = (0..2 * half)
            .map(|k| {
                if k % 2 == 0 {
                    Label::Minus
                } else {
                    Label::Plus
                }
            })
            .collect();
        let x = random_unit(&mut rng, n);
        let train = TrainingSet::new(vectors, labels).unwrap();
        let out = interfere_and_read(&prepare_state(&train, &x).unwrap()).unwrap();
        let (score, label) = classical_classify(&train, &x).unwrap();
        if score.abs() > 1e-9 {
            assert_eq!(out.predicted, label);
        }
    }
}

#[test]
fn table_one_theory() {
    let unit = |a: f64, b: f64| {
        let n = a.hypot(b);
        vec![a / n, b / n]
    };
    let train = TrainingSet::new(
        vec![vec![0.0, 1.0], unit(0.789, 0.615)],
        vec![Label::Minus, Label::Plus],
    )
    .unwrap();
    for (x, p_acc, p0) in [
        (unit(-0.549, 0.836), 0.729, 0.629),
        (unit(0.053, 0.999), 0.913, 0.547),
    ] {
        let out = interfere_and_read(&prepare_state(&train, &x).unwrap()).unwrap();
        assert!((out.p_acc - p_acc).abs() <= 1e-3);
        assert!((out.p_class_minus - p0).abs() <= 1e-3);
        assert_eq!(out.predicted, Label::Minus);

        let sampled = interfere_and_sample(&prepare_state(&train, &x).unwrap(), 8192, 1).unwrap();
        assert!((sampled.p_acc - p_acc).abs() <= 0.02);
        assert!((sampled.p_class_minus - p0).abs() <= 0.02);
    }
}

#[test]
fn shot_error_shrinks_as_inverse_square_root() {
    let train = TrainingSet::new(
        vec![vec![0.0, 1.0], vec![0.6, 0.8]],
        vec![Label::Minus, Label::Plus],
    )
    .unwrap();
    let state = prepare_state(&train, &[0.8, -0.6]).unwrap();
    let exact = interfere_and_read(&state).unwrap().p_acc;
    let budgets = [256u64, 1024, 4096, 16384, 65536];
    let mut points = Vec::new();
    for &shots in &budgets {
        let trials = 60;
        let rms = ((0..trials)
            .map(|s| (interfere_and_sample(&state, shots, s).unwrap().p_acc - exact).powi(2))
            .sum::<f64>()
            / trials as f64)
            .sqrt();
        points.push(((shots as f64).ln(), rms.ln()));
    }
    let n = points.len() as f64;
    let (mx, my) = (
        points.iter().map(|p| p.0).sum::<f64>() / n,
        points.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let slope = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / points.iter().map(|(x, _)| (x - mx).powi(2)).sum::<f64>();
    assert!((slope + 0.5).abs() <= 0.1, "slope {slope}");
}
