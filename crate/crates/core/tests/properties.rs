use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tplines::arith::{q, MatQ, Rational, Scalar};
use tplines::curves::{tangent_config, CurveSpec};
use tplines::totalpos::{
    check_tp_config, lw_compose, lw_factor, random_params, random_positive_det, random_tp_instance,
    ConfigBlocks,
};
use tplines::transversal::{
    discriminant_from_minors, oracle_plucker_solve, plucker_quadric, same_line_pair,
    solve_transversals,
};

fn sorted_ts(raw: [u32; 4]) -> Option<[Rational; 4]> {
    let mut v = raw.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() < 4 {
        return None;
    }
    Some(std::array::from_fn(|k| q(v[k] as i64, 1000)))
}

/// Totally positive 2x2 matrix `[[1, b], [c, bc + e]]`; mixing the two
/// columns of one block with it keeps every maximal minor positive.
fn tp2(seed: u64) -> MatQ {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = || q(rng.gen_range(1..=9), rng.gen_range(1..=9));
    let (b, c, e) = (r(), r(), r());
    let d = &b * &c + e;
    MatQ::from_rows(vec![vec![q(1, 1), b], vec![c, d]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solution_invariants(seed in any::<u64>()) {
        let (_, blocks) = random_tp_instance(seed, 6).unwrap();
        let sol = solve_transversals(&blocks).unwrap();
        prop_assert!(sol.quadratic.d.is_positive());
        prop_assert!(sol.warnings.is_empty());
        prop_assert_eq!(sol.lines.len(), 2);
        for line in &sol.lines {
            prop_assert!(plucker_quadric(line.plucker()).vanishes());
        }
        for row in &sol.incidence {
            prop_assert!(row.iter().all(Scalar::vanishes));
        }
        prop_assert_eq!(&sol.lines[1], &sol.lines[0].conj());
        prop_assert_eq!(
            discriminant_from_minors(&sol.canonical.x).unwrap(),
            sol.quadratic.d.clone()
        );
        let oracle = oracle_plucker_solve(&blocks).unwrap();
        prop_assert!(same_line_pair(&sol.lines, &oracle));
    }

    #[test]
    fn solution_is_equivariant(seed in any::<u64>(), hseed in any::<u64>()) {
        let (_, blocks) = random_tp_instance(seed, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(hseed);
        let h = random_positive_det(&mut rng);
        let moved = blocks.transform(&h).unwrap();
        let a = solve_transversals(&blocks).unwrap();
        let b = solve_transversals(&moved).unwrap();
        let mapped: Vec<_> = a.lines.iter().map(|l| l.transform(&h).unwrap()).collect();
        prop_assert!(same_line_pair(&mapped, &b.lines));
    }

    #[test]
    fn positivity_survives_block_column_operations(seed in any::<u64>(), hs in any::<[u64; 4]>()) {
        let (_, blocks) = random_tp_instance(seed, 6).unwrap();
        let moved = ConfigBlocks::new(std::array::from_fn(|k| {
            blocks.block(k).mul(&tp2(hs[k])).unwrap()
        }))
        .unwrap();
        prop_assert!(check_tp_config(&moved).unwrap().ok);
        let a = solve_transversals(&blocks).unwrap();
        let b = solve_transversals(&moved).unwrap();
        prop_assert!(same_line_pair(&a.lines, &b.lines));
    }

    #[test]
    fn orientation_reversal_breaks_positivity(seed in any::<u64>()) {
        let (_, blocks) = random_tp_instance(seed, 6).unwrap();
        let flip = MatQ::diag(&[q(-1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        let report = check_tp_config(&blocks.transform(&flip).unwrap()).unwrap();
        prop_assert!(!report.ok);
    }

    #[test]
    fn factorization_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_params(&mut rng, 12);
        let x = lw_compose(&p);
        prop_assert_eq!(lw_factor(&x).unwrap(), p);
        prop_assert!(discriminant_from_minors(&x).unwrap().is_positive());
    }

    #[test]
    fn moment_curve_tangents_have_two_real_transversals(raw in any::<[u32; 4]>()) {
        let raw = raw.map(|r| 1 + r % 998);
        if let Some(ts) = sorted_ts(raw) {
            let blocks = tangent_config(&CurveSpec::moment(), &ts).unwrap();
            let sol = solve_transversals(&blocks).unwrap();
            prop_assert_eq!(sol.lines.len(), 2);
            prop_assert!(!sol.lines[0].same_line(&sol.lines[1]));
            let oracle = oracle_plucker_solve(&blocks).unwrap();
            prop_assert!(same_line_pair(&sol.lines, &oracle));
        }
    }
}

#[test]
fn oracle_on_tangents_at_integer_points() {
    // tangent lines of (1, t, t², t³) at t = 0, 1, 2, 3, outside the unit
    // interval so built directly from value and derivative
    let block = |t: i64| {
        MatQ::from_i64(&[&[1, 0], &[t, 1], &[t * t, 2 * t], &[t * t * t, 3 * t * t]]).unwrap()
    };
    let blocks = ConfigBlocks::new([block(0), block(1), block(2), block(3)]).unwrap();
    let oracle = oracle_plucker_solve(&blocks).unwrap();
    assert_eq!(oracle.len(), 2);
    let sol = solve_transversals(&blocks).unwrap();
    assert!(same_line_pair(&sol.lines, &oracle));
}
