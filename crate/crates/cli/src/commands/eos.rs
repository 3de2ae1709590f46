//! `eos`: equation-of-state sweep over the degeneracy parameter nλ³.
//!
//! Rows in the condensation regime are emitted with a distinguished status
//! carrying the critical density rather than aborting the sweep. SI mode adds
//! a pressure column in pascal via the λ and kT of the configured gas.

use crate::config::RunConfig;
use crate::table::{Cell, Table};
use anyhow::Result;
use qgas_core::thermo_continuum::{isotherm, ContinuumError, GasParams, GroundStateMode};

pub fn run(
    config: RunConfig,
    delta: f64,
    grid: &[f64],
    mode: GroundStateMode,
    si_gas: Option<&GasParams>,
) -> Result<Table> {
    let mut columns = vec![
        "n_lambda3",
        "fugacity",
        "pv_over_nkt",
        "p_lambda3",
        "excited_fraction",
        "ground_fraction",
        "critical_n_lambda3",
        "status",
    ];
    if si_gas.is_some() {
        columns.insert(6, "pressure_pa");
    }
    let mut table = Table::new(config, &columns);

    for point in isotherm(delta, grid, mode) {
        match point.result {
            Ok(p) => {
                let mut row = vec![
                    Cell::Float(p.n_lambda3),
                    Cell::Float(p.fugacity),
                    Cell::Float(p.pressure_ratio),
                    Cell::Float(p.p_lambda3),
                    Cell::Float(p.excited_number / p.n_lambda3),
                    Cell::Float(p.ground_state_number / p.n_lambda3),
                ];
                if let Some(gas) = si_gas {
                    row.push(Cell::Float(p.p_lambda3 * gas.pressure_scale()));
                }
                row.push(Cell::Missing);
                row.push(Cell::Text("ok".into()));
                table.push_row(row);
            }
            Err(ContinuumError::Condensation { critical, .. }) => {
                let mut row = vec![
                    Cell::Float(point.n_lambda3),
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                ];
                if si_gas.is_some() {
                    row.push(Cell::Missing);
                }
                row.push(Cell::Float(critical));
                row.push(Cell::Text("condensation-regime".into()));
                table.push_row(row);
            }
            Err(other) => {
                let mut row = vec![
                    Cell::Float(point.n_lambda3),
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                ];
                if si_gas.is_some() {
                    row.push(Cell::Missing);
                }
                row.push(Cell::Missing);
                let mut s = other.to_string().replace([',', '\n'], ";");
                if let Some(cut) = s.find(':') {
                    s.truncate(cut);
                }
                row.push(Cell::Text(format!("error({s})")));
                table.push_row(row);
            }
        }
    }
    Ok(table)
}
