use kerpair::behavior::{admissible, codeword_consistency, simulate, AdmissibleInputQuery, Boundary, SystemPair};
use kerpair::{Element, Matrix, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_system(rng: &mut ChaCha8Rng, p: u64) -> SystemPair {
    let ring = RingSpec::prime_field(p).unwrap();
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    let mut draw = |len: usize| (0..len).map(|_| rng.gen_range(0..p) as i64).collect::<Vec<_>>();
    let a = Matrix::from_ints(&ring, n, n, &draw(n * n)).unwrap();
    let b = Matrix::from_ints(&ring, n, m, &draw(n * m)).unwrap();
    SystemPair::new(a, b).unwrap()
}

#[test]
fn random_systems_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for k in 0..100 {
        let sys = random_system(&mut rng, [2, 3][k % 2]);
        let report = codeword_consistency(&sys, 4).unwrap_or_else(|e| panic!("system {k}: {e}"));
        assert_eq!(report.pencil_kernel_rank, 0);
        assert_eq!(report.pair_rank, report.bar_rank);
        assert!(report.checked >= report.bounded_dim);
    }
}

#[test]
fn simulated_trajectories_are_admissible_from_their_start() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for k in 0..100 {
        let p = [2, 3, 5][k % 3];
        let sys = random_system(&mut rng, p);
        let ring = sys.ring().clone();
        let steps = rng.gen_range(0..6);
        let inputs: Vec<Vec<Element>> = (0..steps)
            .map(|_| (0..sys.inputs()).map(|_| ring.from_int(rng.gen_range(0..p) as i64)).collect())
            .collect();
        let x0: Vec<Element> = (0..sys.states()).map(|_| ring.from_int(rng.gen_range(0..p) as i64)).collect();
        let traj = simulate(&sys, &x0, &inputs).unwrap();
        traj.verify(&sys).unwrap();
        assert_eq!(traj.horizon(), steps);
        let fixed = AdmissibleInputQuery { inputs: inputs.clone(), boundary: Boundary::FixedInitial(x0.clone()) };
        assert_eq!(admissible(&sys, &fixed).unwrap(), Some(traj.clone()));
        let periodic = AdmissibleInputQuery { inputs, boundary: Boundary::PeriodicT };
        if let Some(t) = admissible(&sys, &periodic).unwrap() {
            t.verify(&sys).unwrap();
            assert_eq!(t.states.first(), t.states.last());
        }
    }
}
