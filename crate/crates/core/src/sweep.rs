//! Epsilon grids for the parameterized bounds.
//!
//! Both parameterized bounds need `eps` in an open interval `(0, U)`. The
//! grid `eps_k = k U / (grid + 1)`, `k = 1..=grid`, never touches either end.

use alloc::vec::Vec;

use crate::bnekrasov::{gp_bnekrasov_bound, gp_bnekrasov_epsilon_upper, new_bnekrasov_bound};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::nekrasov::{gp_nekrasov_bound, gp_nekrasov_epsilon_upper, new_nekrasov_bound};
use crate::report::{BoundReport, Inapplicable, Theorem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    /// `None` when the parameterized bound does not apply at this epsilon.
    pub gp_bound: Option<f64>,
    pub new_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    /// The parameterized bound being swept.
    pub theorem: Theorem,
    /// The parameter-free bound it is compared against.
    pub reference: Theorem,
    /// Upper end of the open epsilon interval.
    pub upper: f64,
    pub rows: Vec<SweepRow>,
}

/// Reasons that depend on epsilon; any other rejection rules a theorem out
/// for the whole interval.
fn epsilon_dependent(r: &BoundReport) -> bool {
    matches!(
        r.reason(),
        None | Some(Inapplicable::DegenerateS | Inapplicable::BbarNotSddZ)
    )
}

type GpFn = fn(&Matrix, f64) -> BoundReport;

/// Picks the parameterized theorem for `m`: the Nekrasov one when it
/// applies, otherwise the B-Nekrasov one.
fn select(m: &Matrix) -> Option<(Theorem, GpFn, f64, BoundReport)> {
    if let Some(upper) = gp_nekrasov_epsilon_upper(m) {
        if epsilon_dependent(&gp_nekrasov_bound(m, upper / 2.0)) {
            return Some((Theorem::GpNekrasov, gp_nekrasov_bound, upper, new_nekrasov_bound(m)));
        }
    }
    if let Some(upper) = gp_bnekrasov_epsilon_upper(m) {
        if epsilon_dependent(&gp_bnekrasov_bound(m, upper / 2.0)) {
            return Some((Theorem::GpBNekrasov, gp_bnekrasov_bound, upper, new_bnekrasov_bound(m)));
        }
    }
    None
}

/// Evaluates the applicable parameterized bound on `grid` interior points
/// of its epsilon interval, next to the matching parameter-free bound.
pub fn epsilon_sweep(m: &Matrix, grid: usize) -> Result<Sweep> {
    if grid < 2 {
        return Err(Error::InvalidGrid(grid));
    }
    let (theorem, gp, upper, reference) = select(m).ok_or(Error::NoParameterizedBound)?;
    let new_bound = reference.value().ok_or(Error::NoParameterizedBound)?;
    let rows = (1..=grid)
        .map(|k| {
            let epsilon = k as f64 * upper / (grid + 1) as f64;
            SweepRow {
                epsilon,
                gp_bound: gp(m, epsilon).value(),
                new_bound,
            }
        })
        .collect();
    Ok(Sweep {
        theorem,
        reference: reference.theorem,
        upper,
        rows,
    })
}
