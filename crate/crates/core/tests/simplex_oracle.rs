mod common;

use common::{dot, q, r, random_system, vertices};
use discrete_farkas::{maximize, solve_feasibility, EqualitySystem, LpOutcome, Rational};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn assert_ray(sys: &EqualitySystem, objective: &[Rational], ray: &[Rational]) {
    assert!(ray.iter().all(|v| !v.is_negative()), "ray has a negative entry");
    assert!(sys.apply(ray).iter().all(Zero::is_zero), "ray leaves the affine hull");
    assert!(dot(objective, ray).is_positive(), "ray does not improve the objective");
}

/// Checks the solver against the vertex oracle and re-verifies its evidence.
fn agree(sys: &EqualitySystem, objective: &[Rational]) {
    let verts = vertices(sys);
    match maximize(objective, sys, &[]) {
        LpOutcome::Infeasible { multipliers } => {
            assert!(verts.is_empty(), "solver says infeasible, oracle found {verts:?}");
            assert!(sys.certifies_infeasible(&multipliers));
        }
        LpOutcome::Feasible { point, objective: value } => {
            assert!(sys.is_satisfied_by(&point));
            assert_eq!(dot(objective, &point), value);
            let best = verts.iter().map(|v| dot(objective, v)).max().expect("oracle has a vertex");
            assert_eq!(value, best);
        }
        LpOutcome::Unbounded { point, ray } => {
            assert!(!verts.is_empty());
            assert!(sys.is_satisfied_by(&point));
            assert_ray(sys, objective, &ray);
        }
    }
    match solve_feasibility(sys) {
        LpOutcome::Feasible { point, .. } => {
            assert!(!verts.is_empty());
            assert!(sys.is_satisfied_by(&point));
        }
        LpOutcome::Infeasible { multipliers } => {
            assert!(verts.is_empty());
            assert!(sys.certifies_infeasible(&multipliers));
        }
        LpOutcome::Unbounded { .. } => panic!("feasibility has no objective"),
    }
}

#[test]
fn random_systems_match_vertex_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    let (mut feasible, mut infeasible) = (0, 0);
    for _ in 0..400 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let sys = random_system(&mut rng, rows, cols);
        let objective: Vec<Rational> = (0..cols).map(|_| r(rng.gen_range(-3..=3))).collect();
        agree(&sys, &objective);
        if vertices(&sys).is_empty() {
            infeasible += 1;
        } else {
            feasible += 1;
        }
    }
    assert!(feasible > 50 && infeasible > 50, "{feasible} feasible, {infeasible} infeasible");
}

/// Upper bounds `y <= u` compared against the oracle on the slack form.
#[test]
fn bounded_maximize_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..150 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let sys = random_system(&mut rng, rows, cols);
        let upper: Vec<Rational> = (0..cols).map(|_| r(rng.gen_range(1..=3))).collect();
        let objective: Vec<Rational> = (0..cols).map(|_| r(rng.gen_range(-3..=3))).collect();

        let mut slack = EqualitySystem::new(sys.rhs().iter().cloned().chain(upper.iter().cloned()).collect());
        for j in 0..cols {
            let mut col = sys.column(j).to_vec();
            col.push((rows + j, r(1)));
            slack.add_column(col);
        }
        for j in 0..cols {
            slack.add_column(vec![(rows + j, r(1))]);
        }
        let verts = vertices(&slack);
        let caps: Vec<Option<Rational>> = upper.iter().cloned().map(Some).collect();
        match maximize(&objective, &sys, &caps) {
            LpOutcome::Feasible { point, objective: value } => {
                assert!(sys.is_satisfied_by(&point));
                assert!(point.iter().zip(&upper).all(|(y, u)| !y.is_negative() && y <= u));
                let best = verts.iter().map(|v| dot(&objective, &v[..cols])).max().unwrap();
                assert_eq!(value, best);
            }
            LpOutcome::Infeasible { .. } => assert!(verts.is_empty()),
            LpOutcome::Unbounded { .. } => panic!("box-bounded problem reported unbounded"),
        }
    }
}

/// Beale's example: minimize `-3/4 x4 + 20 x5 - 1/2 x6 + 6 x7` subject to
/// three degenerate rows. Textbook pivoting rules cycle on it.
fn beale() -> (EqualitySystem, Vec<Rational>) {
    let rows = vec![
        vec![r(1), r(0), r(0), q(1, 4), r(-8), r(-1), r(9)],
        vec![r(0), r(1), r(0), q(1, 2), r(-12), q(-1, 2), r(3)],
        vec![r(0), r(0), r(1), r(0), r(0), r(1), r(0)],
    ];
    let sys = EqualitySystem::from_dense(&rows, vec![r(0), r(0), r(1)]);
    // maximize the negated cost
    let objective = vec![r(0), r(0), r(0), q(3, 4), r(-20), q(1, 2), r(-6)];
    (sys, objective)
}

#[test]
fn beale_cycling_example_terminates_at_oracle_optimum() {
    let (sys, objective) = beale();
    let verts = vertices(&sys);
    let best = verts.iter().map(|v| dot(&objective, v)).max().unwrap();
    match maximize(&objective, &sys, &[]) {
        LpOutcome::Feasible { point, objective: value } => {
            assert!(sys.is_satisfied_by(&point));
            assert_eq!(value, best);
        }
        other => panic!("unexpected outcome {other:?}"),
    }
    agree(&sys, &objective);
}

/// Kuhn's degenerate example, also known to cycle without an anti-cycling rule.
#[test]
fn kuhn_cycling_example_terminates() {
    let rows = vec![
        vec![r(-2), r(-9), r(1), r(9), r(1), r(0), r(0)],
        vec![q(1, 3), r(1), q(-1, 3), r(-2), r(0), r(1), r(0)],
        vec![r(2), r(3), r(-1), r(-12), r(0), r(0), r(1)],
    ];
    let sys = EqualitySystem::from_dense(&rows, vec![r(0), r(0), r(2)]);
    let objective = vec![r(2), r(3), r(-1), r(-12), r(0), r(0), r(0)];
    agree(&sys, &objective);
}

/// Many zero right-hand sides and repeated columns: every basis is degenerate.
#[test]
fn degenerate_suite_terminates() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..200 {
        let rows = rng.gen_range(2..=5);
        let cols = rng.gen_range(2..=6);
        let mut dense: Vec<Vec<Rational>> =
            (0..rows).map(|_| (0..cols).map(|_| r(rng.gen_range(-2..=2))).collect()).collect();
        // duplicate a row and a column to force ties in the ratio test
        let dup = dense[0].clone();
        dense[rows - 1] = dup;
        for row in dense.iter_mut() {
            let v = row[0].clone();
            row[cols - 1] = v;
        }
        let rhs = (0..rows).map(|i| if i == 1 { r(1) } else { r(0) }).collect();
        let sys = EqualitySystem::from_dense(&dense, rhs);
        let objective: Vec<Rational> = (0..cols).map(|_| r(rng.gen_range(-2..=2))).collect();
        agree(&sys, &objective);
    }
}
