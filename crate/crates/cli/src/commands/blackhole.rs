//! `blackhole-preset`: a parameterization of the virial/eos commands for a
//! dilute gas of neutral, noninteracting particles sharing one internal
//! state, where the only interaction left is statistical.
//!
//! The regime line is annotated with its clustering reading: for δ ≤ 1/2 the
//! gas sits in the (possibly third-order) attraction regime, so a dilute
//! ensemble tends to cluster; above 1/2 statistics push it apart.

use crate::config::RunConfig;
use crate::table::{Cell, Table};
use anyhow::Result;
use qgas_core::thermo_continuum::{
    isotherm, log_grid, virial_coefficients, GroundStateMode, Regime,
};

pub fn run(config: RunConfig, delta: f64) -> Result<Table> {
    let v = virial_coefficients(delta).map_err(|e| anyhow::anyhow!("{e}"))?;
    let interpretation = match v.regime {
        Regime::Attraction => "statistical attraction; dilute ensemble tends to cluster",
        Regime::WeakAttractionThirdOrder => {
            "second virial coefficient vanishes; weak third-order attraction still favors clustering"
        }
        Regime::Repulsion => "statistical repulsion; no clustering tendency",
    };
    let mut table = Table::new(
        config,
        &[
            "delta",
            "a2",
            "a3",
            "regime",
            "interpretation",
            "n_lambda3",
            "pv_over_nkt",
            "pressure_deficit",
        ],
    );
    let grid = log_grid(1e-4, 1e-2, 7);
    for point in isotherm(delta, &grid, GroundStateMode::ThermodynamicLimit) {
        let p = point.result.map_err(|e| anyhow::anyhow!("{e}"))?;
        table.push_row(vec![
            Cell::Float(delta),
            Cell::Float(v.a2),
            Cell::Float(v.a3),
            Cell::Text(v.regime.to_string()),
            Cell::Text(interpretation.replace(',', ";")),
            Cell::Float(p.n_lambda3),
            Cell::Float(p.pressure_ratio),
            Cell::Float(1.0 - p.pressure_ratio),
        ]);
    }
    Ok(table)
}
