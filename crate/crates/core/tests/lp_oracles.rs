mod support;

use aasen::lpcert::simplex::LpStatus;
use aasen::{build_program, min_delta, solve_lp, tnn_upper_bound};
use support::{enumerate_vertices, verified_dual_bound};

#[test]
fn simplex_matches_vertex_enumeration() {
    for n in 3..=8 {
        let prog = build_program(n).unwrap();
        let sol = solve_lp(&prog);
        assert_eq!(sol.status, LpStatus::Optimal, "n={n}");
        assert!(prog.is_feasible(&sol.point, 1e-9), "n={n}");
        let (brute, _) = enumerate_vertices(&prog).expect("feasible polytope");
        assert!(
            (sol.objective_value - brute).abs() <= 1e-9,
            "n={n}: {} vs {brute}",
            sol.objective_value
        );
    }
}

#[test]
fn dual_certificate_confirms_optimum() {
    for n in 3..=12 {
        let prog = build_program(n).unwrap();
        let sol = solve_lp(&prog);
        assert!(prog.is_feasible(&sol.point, 1e-9));
        let primal: f64 = sol.point.iter().sum();
        let dual = verified_dual_bound(&prog).unwrap();
        assert!(dual <= primal + 1e-8, "weak duality n={n}");
        assert!(primal - dual <= 1e-8, "gap n={n}: {primal} vs {dual}");
    }
}

#[test]
fn bound_is_not_tight_from_six() {
    for n in 6..=10 {
        let d = min_delta(n).unwrap();
        assert!(d > 1e-9, "n={n}");
        assert!(tnn_upper_bound(n).unwrap() < 2f64.powi(n as i32 - 1));
    }
    for n in 3..=5 {
        assert!(min_delta(n).unwrap().abs() <= 1e-9);
    }
}
