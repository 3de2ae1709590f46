//! `discrete`: thermodynamic tables over a discrete spectrum.
//!
//! The grid can run over μ directly or over target particle numbers (solved
//! through the μ < ε_min branch). Inadmissible or analytic-continuation rows
//! stay in the output, flagged in the `status` column, so sweeps remain
//! rectangular.

use crate::config::{GridVar, RunConfig};
use crate::table::{Cell, Table};
use anyhow::Result;
use qgas_core::exchange_algebra::{grand_trace_exact, TraceWeighting};
use qgas_core::thermo_discrete::{
    admissible_mu, occupation, report, solve_mu, GrandPoint, Spectrum, ThermoError,
};

const EXACT_CHECK_NMAX: u32 = 60;

pub fn run(
    config: RunConfig,
    spec: &Spectrum,
    beta: f64,
    delta: f64,
    grid: &[f64],
    grid_over: GridVar,
    exact_check: bool,
) -> Result<Table> {
    let mut columns: Vec<String> = Vec::new();
    match grid_over {
        GridVar::Mu => columns.push("mu".into()),
        GridVar::N => {
            columns.push("n_target".into());
            columns.push("mu".into());
        }
    }
    columns.extend(
        ["status", "ln_xi", "omega", "pv", "n_total", "internal_energy", "entropy"]
            .iter()
            .map(|s| s.to_string()),
    );
    for i in 0..spec.len() {
        columns.push(format!("occ_{i}"));
    }
    if exact_check {
        columns.push("xi_closed_form".into());
        columns.push("trace_factorized".into());
        columns.push("trace_operator_exact".into());
    }
    let col_refs: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();
    let mut table = Table::new(config, &col_refs);

    let domain = admissible_mu(spec, beta, delta)?;
    for &g in grid {
        let mut row: Vec<Cell> = Vec::with_capacity(columns.len());
        let mu = match grid_over {
            GridVar::Mu => {
                row.push(Cell::Float(g));
                Some(g)
            }
            GridVar::N => {
                row.push(Cell::Float(g));
                match solve_mu(spec, beta, delta, g) {
                    Ok(mu) => {
                        row.push(Cell::Float(mu));
                        Some(mu)
                    }
                    Err(err) => {
                        row.push(Cell::Missing);
                        row.push(Cell::Text(flag_for(&err)));
                        pad(&mut row, columns.len());
                        table.push_row(row);
                        continue;
                    }
                }
            }
        };
        let mu = mu.expect("set above");
        let point = match GrandPoint::new(beta, mu, delta) {
            Ok(p) => p,
            Err(err) => {
                row.push(Cell::Text(flag_for(&err)));
                pad(&mut row, columns.len());
                table.push_row(row);
                continue;
            }
        };

        if !domain.contains(mu) {
            row.push(Cell::Text("inadmissible(forbidden-band)".into()));
            push_occupations_only(&mut row, spec, &point, columns.len());
            table.push_row(row);
            continue;
        }
        match report(spec, &point) {
            Ok(r) => {
                row.push(Cell::Text("ok".into()));
                row.push(Cell::Float(r.log_partition));
                row.push(Cell::Float(r.omega));
                row.push(Cell::Float(r.pressure_volume));
                row.push(Cell::Float(r.total_number));
                row.push(Cell::Float(r.internal_energy));
                row.push(Cell::Float(r.entropy));
                for &n in &r.occupations {
                    row.push(Cell::Float(n));
                }
                if exact_check {
                    push_exact_check(&mut row, spec, &point, r.log_partition);
                }
                table.push_row(row);
            }
            Err(err @ ThermoError::SeriesDivergent { .. }) => {
                // Admissible high-μ branch: occupation is fine, the series
                // form of lnΞ is not.
                let _ = err;
                row.push(Cell::Text("analytic-continuation-only".into()));
                push_occupations_only(&mut row, spec, &point, columns.len());
                table.push_row(row);
            }
            Err(err) => {
                row.push(Cell::Text(flag_for(&err)));
                pad(&mut row, columns.len());
                table.push_row(row);
            }
        }
    }
    Ok(table)
}

fn flag_for(err: &impl std::fmt::Display) -> String {
    let mut s = err.to_string().replace([',', '\n'], ";");
    if let Some(cut) = s.find(':') {
        s.truncate(cut);
    }
    format!("error({s})")
}

fn pad(row: &mut Vec<Cell>, width: usize) {
    while row.len() < width {
        row.push(Cell::Missing);
    }
}

/// Thermo cells stay empty; the occupation formula itself is still defined.
fn push_occupations_only(row: &mut Vec<Cell>, spec: &Spectrum, point: &GrandPoint, width: usize) {
    for _ in 0..6 {
        row.push(Cell::Missing);
    }
    for &(e, _) in spec.levels() {
        match occupation(e, point) {
            Ok(n) => row.push(Cell::Float(n)),
            Err(_) => row.push(Cell::Missing),
        }
    }
    pad(row, width);
}

fn push_exact_check(row: &mut Vec<Cell>, spec: &Spectrum, point: &GrandPoint, log_xi: f64) {
    row.push(Cell::Float(log_xi.exp()));
    let modes = spec.expand_modes();
    for weighting in [TraceWeighting::Factorized, TraceWeighting::OperatorExact] {
        match grand_trace_exact(
            &modes,
            point.beta,
            point.mu,
            &point.internal_state(),
            EXACT_CHECK_NMAX,
            weighting,
        ) {
            Ok(v) => row.push(Cell::Float(v)),
            Err(_) => row.push(Cell::Missing), // enumeration over the cap
        }
    }
}
