//! One entry point over the four dispersion models.
//!
//! The two relativistic models evolve the full state. The non-relativistic
//! models (Schrödinger and the truncated `1/m` expansion) evolve only the
//! large component `φ₊ = e^{imt}ψ₊` starting from `ψ₊(0)`; their `ψ₋` is
//! reported as zero.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dynamics::{
    evolve_two_component, kg_oracle_evolve, schrodinger_evolve, truncated_evolve, Truncated,
};
use crate::error::{Error, Result};
use crate::fields::{from_kg_data, kg_initial_data, strip_rest_phase, TwoComponentField};
use crate::grid::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    TwoComponent,
    KgOracle,
    Schrodinger,
    /// Dispersion truncated after `N ≥ 1` terms.
    Expansion(usize),
}

impl Model {
    pub fn is_relativistic(self) -> bool {
        matches!(self, Self::TwoComponent | Self::KgOracle)
    }

    /// Parses a model name; a bare `expansion` takes its order from
    /// `truncation`.
    pub fn parse_with_truncation(name: &str, truncation: Option<usize>) -> Result<Self> {
        if name == "expansion" {
            return match truncation {
                Some(0) => Err(Error::InvalidOrder(0)),
                Some(n) => Ok(Self::Expansion(n)),
                None => Err(Error::InvalidArgument(
                    "model 'expansion' needs a truncation order".into(),
                )),
            };
        }
        name.parse()
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TwoComponent => f.write_str("two-component"),
            Self::KgOracle => f.write_str("kg-oracle"),
            Self::Schrodinger => f.write_str("schrodinger"),
            Self::Expansion(n) => write!(f, "expansion-{n}"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-component" => Ok(Self::TwoComponent),
            "kg-oracle" => Ok(Self::KgOracle),
            "schrodinger" => Ok(Self::Schrodinger),
            other => {
                let order = other
                    .strip_prefix("expansion-")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown model '{other}'")))?;
                if order == 0 {
                    Err(Error::InvalidOrder(0))
                } else {
                    Ok(Self::Expansion(order))
                }
            }
        }
    }
}

/// State of `model` at time `t`, started from `initial` at `t = 0`.
pub fn evolve_model(
    initial: &TwoComponentField,
    model: Model,
    t: f64,
) -> Result<Truncated<TwoComponentField>> {
    let mass = initial.mass();
    let exact = |state| Truncated {
        value: state,
        beyond_radius: false,
    };
    let from_large = |phi: Field| {
        let rest = Complex64::from_polar(1.0, -mass * t);
        let zero = Field::zeros(phi.grid());
        TwoComponentField::new(mass, phi.scaled(rest), zero)
    };
    match model {
        Model::TwoComponent => Ok(exact(evolve_two_component(initial, t)?)),
        Model::KgOracle => {
            let (psi5, rate) = kg_initial_data(initial);
            let (psi5, rate) = kg_oracle_evolve(&psi5, &rate, mass, t)?;
            Ok(exact(from_kg_data(&psi5, &rate, mass)?))
        }
        Model::Schrodinger => {
            let phi = schrodinger_evolve(initial.psi_plus(), mass, t)?;
            Ok(exact(from_large(phi)?))
        }
        Model::Expansion(order) => {
            let run = truncated_evolve(initial.psi_plus(), mass, t, order)?;
            Ok(Truncated {
                value: from_large(run.value)?,
                beyond_radius: run.beyond_radius,
            })
        }
    }
}

/// Phase-stripped large component `φ₊(t)` of `model`.
pub fn large_component(
    initial: &TwoComponentField,
    model: Model,
    t: f64,
) -> Result<Truncated<Field>> {
    let run = evolve_model(initial, model, t)?;
    let (phi_plus, _) = strip_rest_phase(&run.value, t).into_components();
    Ok(Truncated {
        value: phi_plus,
        beyond_radius: run.beyond_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_names_round_trip() {
        for m in [
            Model::TwoComponent,
            Model::KgOracle,
            Model::Schrodinger,
            Model::Expansion(3),
        ] {
            assert_eq!(m.to_string().parse::<Model>().unwrap(), m);
        }
        assert!("expansion-0".parse::<Model>().is_err());
        assert!("dirac".parse::<Model>().is_err());
        assert_eq!(
            Model::parse_with_truncation("expansion", Some(2)).unwrap(),
            Model::Expansion(2)
        );
        assert!(Model::parse_with_truncation("expansion", None).is_err());
        assert!(Model::parse_with_truncation("expansion", Some(0)).is_err());
    }
}
