//! Report envelope and emission helpers.
//!
//! Every report carries the tool version and the resolved tolerances and
//! budgets, and struct field order is fixed, so identical configurations
//! produce byte-identical JSON.

use serde::Serialize;

use chebsturm::tolerances as tol;

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub version: &'static str,
    pub tolerances: Resolved,
    #[serde(flatten)]
    pub payload: T,
}

/// The tolerance and budget values a run actually used.
#[derive(Serialize, Clone, Copy)]
pub struct Resolved {
    pub sign_tol: f64,
    pub det_tol_factor: f64,
    pub eigen_rel: f64,
    pub gap_route_rel: f64,
    pub subset_budget: usize,
    pub oracle_budget: usize,
    pub seed: Option<u64>,
}

impl Default for Resolved {
    fn default() -> Self {
        Self {
            sign_tol: tol::SIGN_TOL_DEFAULT,
            det_tol_factor: tol::DET_TOL_FACTOR,
            eigen_rel: tol::EIGEN_REL,
            gap_route_rel: tol::GAP_ROUTE_REL,
            subset_budget: tol::SUBSET_BUDGET,
            oracle_budget: tol::ORACLE_BUDGET,
            seed: None,
        }
    }
}

pub fn emit_json<T: Serialize>(payload: T, resolved: Resolved) -> chebsturm::Result<()> {
    let envelope = Envelope {
        version: env!("CARGO_PKG_VERSION"),
        tolerances: resolved,
        payload,
    };
    println!("{}", serde_json::to_string_pretty(&envelope)?);
    Ok(())
}

/// A CSV table: header plus rows of floats with an index column.
pub fn emit_csv(header: &[&str], rows: impl Iterator<Item = Vec<f64>>) {
    println!("{}", header.join(","));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        println!("{}", cells.join(","));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
