//! `occupation`: the level-occupation curve n(ε) at fixed (β, μ, δ).

use crate::config::RunConfig;
use crate::table::{Cell, Table};
use anyhow::Result;
use qgas_core::thermo_discrete::{occupation, GrandPoint};

pub fn run(config: RunConfig, beta: f64, mu: f64, delta: f64, grid: &[f64]) -> Result<Table> {
    let point = GrandPoint::new(beta, mu, delta).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut table = Table::new(config, &["epsilon", "x", "occupation", "status"]);
    for &epsilon in grid {
        let x = beta * (epsilon - mu);
        match occupation(epsilon, &point) {
            Ok(n) => table.push_row(vec![
                Cell::Float(epsilon),
                Cell::Float(x),
                Cell::Float(n),
                Cell::Text("ok".into()),
            ]),
            Err(_) => table.push_row(vec![
                Cell::Float(epsilon),
                Cell::Float(x),
                Cell::Missing,
                Cell::Text("error(divergence point)".into()),
            ]),
        }
    }
    Ok(table)
}
