mod common;

use harmless::ilp::{maximize, IlpModel, IlpOutcome};
use proptest::prelude::*;

fn model() -> impl Strategy<Value = IlpModel> {
    (1usize..=4, 0usize..=5).prop_flat_map(|(nv, nc)| {
        let vars = proptest::collection::vec((0i64..=6, 0i64..=6), nv);
        let cons =
            proptest::collection::vec((proptest::collection::vec(-3i64..=3, nv), -6i64..=15), nc);
        let obj = proptest::collection::vec(-2i64..=3, nv);
        (vars, cons, obj).prop_map(|(vars, cons, obj)| {
            let mut m = IlpModel::new();
            for (i, (a, b)) in vars.into_iter().enumerate() {
                m.add_var(format!("x{i}"), a.min(b), a.max(b));
            }
            for (coeffs, rhs) in cons {
                let terms: Vec<(usize, i64)> = coeffs.into_iter().enumerate().collect();
                m.add_le(&terms, rhs);
            }
            for (i, c) in obj.into_iter().enumerate() {
                m.set_objective(i, c);
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn agrees_with_lattice(m in model()) {
        let best = common::lattice(&m).into_iter().filter(|x| m.is_feasible(x)).map(|x| m.objective_value(&x)).max();
        match maximize(&m).unwrap() {
            IlpOutcome::Optimal(sol) => {
                prop_assert_eq!(Some(sol.objective_value), best);
                prop_assert!(m.is_feasible(&sol.assignment));
                prop_assert_eq!(m.objective_value(&sol.assignment), sol.objective_value);
            }
            IlpOutcome::Infeasible => prop_assert_eq!(best, None),
        }
    }

    #[test]
    fn repeated_calls_agree(m in model()) {
        prop_assert_eq!(maximize(&m).unwrap(), maximize(&m).unwrap());
    }
}

#[test]
fn ties_take_the_greatest_assignment() {
    let mut m = IlpModel::new();
    let x = m.add_var("x", 0, 3);
    let y = m.add_var("y", 0, 3);
    m.add_le(&[(x, 1), (y, 1)], 3);
    m.set_objective(x, 1);
    m.set_objective(y, 1);
    let sol = maximize(&m).unwrap();
    assert_eq!(sol.solution().unwrap().assignment, vec![3, 0]);
}
