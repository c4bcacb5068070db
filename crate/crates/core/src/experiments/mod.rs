//! Reproduction drivers: branch-point sweeps, disjoint additivity, the
//! self-similar counterexample, joint parametrizations and the
//! `λ = α²·μ` check. Each driver returns typed rows, a CSV rendering and a
//! list of asserted bounds.

use serde::Serialize;

mod branch;
mod counterexample;
mod joint;

pub use branch::{branch_sweep, disjoint_sum_check, DisjointRow, SweepResult, SweepRow};
pub use counterexample::{
    build_selfsimilar_slit, counterexample_capacity_table, CapacityRow, CapacityTable, CounterexampleReport,
};
pub use joint::{
    alpha_mu_lambda_check, joint_parametrization, kinked_reparam_demo, JointParam, KinkReport, LambdaCheck,
    LambdaRow,
};

/// One asserted bound of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, bound: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), value, bound: bound.into(), pass }
    }
}

/// Pass/fail summary of an experiment run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub experiment: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Summary {
    pub fn new(experiment: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Summary { experiment: experiment.into(), checks, pass }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// CSV text from a header and rows of numbers.
pub(crate) fn csv(header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    use std::fmt::Write as _;
    let mut out = format!("{header}\n");
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(crate::numeric::fmt12).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}
