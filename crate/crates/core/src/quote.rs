use serde::{Deserialize, Serialize};

/// Where a price came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm { formula: String },
    MonteCarlo { std_error: f64, n_paths: usize },
    Pde { n_x: usize, n_t: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceQuote {
    pub price: f64,
    pub provenance: Provenance,
}

impl PriceQuote {
    pub fn closed_form(price: f64, formula: &str) -> Self {
        Self {
            price,
            provenance: Provenance::ClosedForm {
                formula: formula.to_string(),
            },
        }
    }

    pub fn std_error(&self) -> Option<f64> {
        match self.provenance {
            Provenance::MonteCarlo { std_error, .. } => Some(std_error),
            _ => None,
        }
    }
}
