//! Discretization and scheduling checks for the simulated accumulators: the
//! dt-halving convergence of the first-passage stepper, and thread-count
//! independence of seeded batches.

use percept_fusion::accumulators::{ddm_mean_rt, ddm_simulate_batch, DdmParams};

/// Mean-RT discretization error shrinks as the step size drops: the
/// bridge-corrected stepper has O(dt) bias, so quartering dt from 0.16 to
/// 0.04 to 0.01 must bring the Monte-Carlo mean toward the closed form.
#[test]
fn dt_halving_convergence() {
    let p = DdmParams::new(1.0, 1.0, 1.0).unwrap();
    let analytic = ddm_mean_rt(&p);
    let n = 200_000u64;
    let error_at = |dt: f64, seed: u64| -> f64 {
        let mean: f64 = ddm_simulate_batch(&p, dt, seed, n)
            .unwrap()
            .iter()
            .map(|d| d.rt_ms)
            .sum::<f64>()
            / n as f64;
        (mean - analytic).abs() / analytic
    };
    let coarse = error_at(0.16, 1_600);
    let medium = error_at(0.04, 400);
    let fine = error_at(0.01, 100);
    // Monte-Carlo scatter at this n is ~0.2% relative; the coarse-grid bias
    // dominates it by an order of magnitude.
    assert!(
        medium < coarse && fine < coarse,
        "no convergence: {coarse:.4} -> {medium:.4} -> {fine:.4}"
    );
    assert!(fine < 0.01, "fine-grid error {fine:.4}");
}

#[test]
fn batches_are_schedule_independent() {
    let p = DdmParams::new(0.8, 1.0, 1.2).unwrap();
    let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = pool1.install(|| ddm_simulate_batch(&p, 0.02, 55, 20_000).unwrap());
    let b = pool4.install(|| ddm_simulate_batch(&p, 0.02, 55, 20_000).unwrap());
    assert_eq!(a, b);
}
