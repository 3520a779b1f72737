//! Small bounded integer programs: maximize `c·x` subject to `A x <= b` with
//! `lo <= x <= hi`.
//!
//! Depth-first search over the variables in index order with bound
//! propagation at every node. No relaxation is solved; the models produced by
//! the structural solvers have few variables and narrow domains.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntVar {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

/// `coeffs · x <= rhs`, one coefficient per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IlpModel {
    pub vars: Vec<IntVar>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSolution {
    pub assignment: Vec<i64>,
    pub objective_value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlpOutcome {
    Optimal(IlpSolution),
    Infeasible,
}

impl IlpOutcome {
    pub fn solution(&self) -> Option<&IlpSolution> {
        match self {
            IlpOutcome::Optimal(s) => Some(s),
            IlpOutcome::Infeasible => None,
        }
    }
}

impl IlpModel {
    pub fn new() -> Self {
        IlpModel::default()
    }

    /// Adds a variable with objective coefficient 0; existing constraints
    /// and the objective are padded with a zero coefficient.
    pub fn add_var(&mut self, name: impl Into<String>, lo: i64, hi: i64) -> usize {
        self.vars.push(IntVar {
            name: name.into(),
            lo,
            hi,
        });
        for c in &mut self.constraints {
            c.coeffs.push(0);
        }
        self.objective.push(0);
        self.vars.len() - 1
    }

    /// `Σ coeff·x[var] <= rhs` over the listed terms; repeated variables add up.
    pub fn add_le(&mut self, terms: &[(usize, i64)], rhs: i64) {
        let mut coeffs = vec![0; self.vars.len()];
        for &(v, a) in terms {
            coeffs[v] += a;
        }
        self.constraints.push(Constraint { coeffs, rhs });
    }

    /// `Σ coeff·x[var] >= rhs`, stored negated.
    pub fn add_ge(&mut self, terms: &[(usize, i64)], rhs: i64) {
        let negated: Vec<(usize, i64)> = terms.iter().map(|&(v, a)| (v, -a)).collect();
        self.add_le(&negated, -rhs);
    }

    pub fn set_objective(&mut self, var: usize, coeff: i64) {
        self.objective[var] = coeff;
    }

    fn check(&self) -> Result<()> {
        let n = self.vars.len();
        if self.objective.len() != n {
            return Err(Error::MalformedModel(format!(
                "objective has {} entries for {} variables",
                self.objective.len(),
                n
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::MalformedModel(format!(
                    "constraint {} has {} coefficients for {} variables",
                    i,
                    c.coeffs.len(),
                    n
                )));
            }
        }
        for v in &self.vars {
            if v.lo > v.hi {
                return Err(Error::MalformedModel(format!(
                    "variable {} has empty range",
                    v.name
                )));
            }
        }
        Ok(())
    }

    /// Whether `x` lies in the bounds and satisfies every constraint.
    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.vars.len()
            && self
                .vars
                .iter()
                .zip(x)
                .all(|(v, &xi)| v.lo <= xi && xi <= v.hi)
            && self.constraints.iter().all(|c| dot(&c.coeffs, x) <= c.rhs)
    }

    pub fn objective_value(&self, x: &[i64]) -> i64 {
        dot(&self.objective, x)
    }
}

fn dot(a: &[i64], x: &[i64]) -> i64 {
    a.iter().zip(x).map(|(a, x)| a * x).sum()
}

/// Returns an optimal point, breaking ties towards the lexicographically
/// greatest assignment, or `Infeasible`.
pub fn maximize(model: &IlpModel) -> Result<IlpOutcome> {
    model.check()?;
    let mut search = Search {
        model,
        best: None,
        nodes: 0,
    };
    let lo: Vec<i64> = model.vars.iter().map(|v| v.lo).collect();
    let hi: Vec<i64> = model.vars.iter().map(|v| v.hi).collect();
    search.branch(lo, hi);
    Ok(match search.best {
        Some((assignment, objective_value)) => IlpOutcome::Optimal(IlpSolution {
            assignment,
            objective_value,
        }),
        None => IlpOutcome::Infeasible,
    })
}

struct Search<'a> {
    model: &'a IlpModel,
    best: Option<(Vec<i64>, i64)>,
    nodes: u64,
}

impl Search<'_> {
    /// Tightens `lo`/`hi` against every constraint until nothing changes.
    /// Returns false when some constraint cannot be met.
    fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
        loop {
            let mut changed = false;
            for c in &self.model.constraints {
                let term_min = |j: usize, lo: &[i64], hi: &[i64]| {
                    let a = c.coeffs[j];
                    if a >= 0 {
                        a * lo[j]
                    } else {
                        a * hi[j]
                    }
                };
                let min_activity: i64 = (0..lo.len()).map(|j| term_min(j, lo, hi)).sum();
                if min_activity > c.rhs {
                    return false;
                }
                for j in 0..lo.len() {
                    let a = c.coeffs[j];
                    if a == 0 {
                        continue;
                    }
                    let slack = c.rhs - (min_activity - term_min(j, lo, hi));
                    if a > 0 {
                        let cap = slack.div_euclid(a);
                        if cap < hi[j] {
                            hi[j] = cap;
                            changed = true;
                        }
                    } else {
                        let floor = -slack.div_euclid(-a);
                        if floor > lo[j] {
                            lo[j] = floor;
                            changed = true;
                        }
                    }
                    if lo[j] > hi[j] {
                        return false;
                    }
                }
                if changed {
                    break;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch(&mut self, mut lo: Vec<i64>, mut hi: Vec<i64>) {
        self.nodes += 1;
        if !self.propagate(&mut lo, &mut hi) {
            return;
        }
        let obj = &self.model.objective;
        let upper: i64 = (0..lo.len())
            .map(|j| (obj[j] * lo[j]).max(obj[j] * hi[j]))
            .sum();
        if matches!(self.best, Some((_, b)) if upper <= b) {
            return;
        }
        let Some(j) = (0..lo.len()).find(|&j| lo[j] < hi[j]) else {
            // Propagation left every constraint satisfiable at a single
            // point, so the point is feasible.
            debug_assert!(self.model.is_feasible(&lo));
            self.best = Some((lo.clone(), upper));
            return;
        };
        for value in (lo[j]..=hi[j]).rev() {
            let mut lo2 = lo.clone();
            let mut hi2 = hi.clone();
            lo2[j] = value;
            hi2[j] = value;
            self.branch(lo2, hi2);
        }
    }
}
