//! JSON input schemas for recurrence systems, function tables, and grid
//! functions (the formats the command-line tool accepts).

use serde::Deserialize;

use crate::chebsys::{monomial_table, SystemTable};
use crate::error::{Error, Result};
use crate::minimax::t0_counterexample_table;
use crate::oscillation::DiscreteFunction;
use crate::recurrence::{Family, RecurrenceSystem};
use crate::spectrum::compute_spectrum;

/// A recurrence system: either explicit coefficient tables
/// `{"q":, "alpha": [..], "beta": [..], "gamma": [..], "rho": [..], "eta":}`
/// or a built-in family selector
/// `{"family": "chebyshev-t", "params": {..}, "q":, "eta":}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SystemInput {
    Family(FamilyDocument),
    Table(TableDocument),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub family: String,
    #[serde(default)]
    pub params: Option<JacobiParams>,
    pub q: usize,
    #[serde(default)]
    pub eta: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub q: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub rho: Vec<f64>,
    #[serde(default)]
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
    #[serde(default)]
    pub normalized: bool,
}

/// Resolve a family name (used both by JSON inputs and CLI flags).
pub fn parse_family(name: &str, params: Option<JacobiParams>) -> Result<Family> {
    match (name, params) {
        ("chebyshev-t", None) => Ok(Family::ChebyshevT),
        ("chebyshev-u", None) => Ok(Family::ChebyshevU),
        ("chebyshev-u-normalized", None) | ("appendix-iii", None) => Ok(Family::Jacobi {
            a: 0.5,
            b: 0.5,
            normalized: true,
        }),
        ("legendre", None) => Ok(Family::Legendre),
        ("appendix-i", None) => Ok(Family::ChebyshevT),
        ("appendix-ii", None) => Ok(Family::Jacobi {
            a: -0.5,
            b: 0.5,
            normalized: true,
        }),
        ("appendix-iv", None) => Ok(Family::Jacobi {
            a: 0.5,
            b: -0.5,
            normalized: true,
        }),
        ("jacobi", Some(p)) => Ok(Family::Jacobi {
            a: p.alpha,
            b: p.beta,
            normalized: p.normalized,
        }),
        ("jacobi", None) => Err(Error::Input(
            "family \"jacobi\" needs params {alpha, beta}".into(),
        )),
        (other, Some(_)) => Err(Error::Input(format!(
            "family \"{other}\" takes no params"
        ))),
        (other, None) => Err(Error::Input(format!("unknown family \"{other}\""))),
    }
}

impl SystemInput {
    pub fn build(&self) -> Result<RecurrenceSystem<f64>> {
        match self {
            SystemInput::Family(doc) => parse_family(&doc.family, doc.params)?.system(doc.q, doc.eta),
            SystemInput::Table(doc) => RecurrenceSystem::new(
                doc.q,
                doc.alpha.clone(),
                doc.beta.clone(),
                doc.gamma.clone(),
                doc.rho.clone(),
                doc.eta,
            ),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A function table: explicit rows, eigenfunction rows of a system, monomial
/// rows, or the closed-form T_0 example.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TableInput {
    Explicit {
        table: Vec<Vec<f64>>,
    },
    Psi {
        psi: PsiSelector,
    },
    Monomial {
        monomial: MonomialSelector,
    },
    T0Counterexample {
        t0_counterexample: ExampleSelector,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiSelector {
    pub family: String,
    #[serde(default)]
    pub params: Option<JacobiParams>,
    pub q: usize,
    #[serde(default)]
    pub eta: f64,
    /// Number of leading eigenfunction rows.
    pub n: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSelector {
    pub n: usize,
    pub q: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleSelector {
    pub q: usize,
}

impl TableInput {
    pub fn build(&self) -> Result<SystemTable<f64>> {
        match self {
            TableInput::Explicit { table } => SystemTable::new(table.clone()),
            TableInput::Psi { psi } => {
                let family = parse_family(&psi.family, psi.params)?;
                let sys = family.system(psi.q, psi.eta)?;
                let spectrum = compute_spectrum(&sys)?;
                if psi.n == 0 || psi.n > psi.q + 1 {
                    return Err(Error::OutOfRange {
                        value: psi.n,
                        min: 1,
                        max: psi.q + 1,
                    });
                }
                SystemTable::new(spectrum.eigenfunctions()[..psi.n].to_vec())
            }
            TableInput::Monomial { monomial } => monomial_table(monomial.n, monomial.q),
            TableInput::T0Counterexample { t0_counterexample } => t0_counterexample_table(t0_counterexample.q),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A grid function: a bare array of values, or the `k`-th eigenfunction of a
/// system (`{"psi_k": {"family":, "q":, "eta":, "k":}}`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionInput {
    Values(Vec<f64>),
    PsiK { psi_k: PsiKSelector },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiKSelector {
    pub family: String,
    #[serde(default)]
    pub params: Option<JacobiParams>,
    pub q: usize,
    #[serde(default)]
    pub eta: f64,
    /// 1-based eigenfunction index.
    pub k: usize,
}

impl FunctionInput {
    pub fn build(&self, sign_tol: Option<f64>) -> Result<DiscreteFunction<f64>> {
        let values = match self {
            FunctionInput::Values(values) => values.clone(),
            FunctionInput::PsiK { psi_k } => {
                let family = parse_family(&psi_k.family, psi_k.params)?;
                let sys = family.system(psi_k.q, psi_k.eta)?;
                let spectrum = compute_spectrum(&sys)?;
                if psi_k.k == 0 || psi_k.k > psi_k.q + 1 {
                    return Err(Error::OutOfRange {
                        value: psi_k.k,
                        min: 1,
                        max: psi_k.q + 1,
                    });
                }
                spectrum.eigenfunctions()[psi_k.k - 1].clone()
            }
        };
        match sign_tol {
            Some(tol) => DiscreteFunction::with_tol(values, tol),
            None => DiscreteFunction::new(values),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
