//! Named residuals with tolerances.

use serde::{Deserialize, Serialize};

use crate::twolevel::SystemParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    /// Stable identifier, `family.name`.
    pub id: String,
    pub description: String,
    /// The relation being checked, written out.
    pub relation: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckEntry {
    pub fn family(&self) -> &str {
        self.id.split('.').next().unwrap_or(&self.id)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
    pub params_echo: SystemParams,
}

impl CheckReport {
    pub fn new(params: SystemParams) -> Self {
        Self {
            entries: Vec::new(),
            params_echo: params,
        }
    }

    /// Records `residual <= tol`. A NaN residual fails.
    pub fn push(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        relation: impl Into<String>,
        residual: f64,
        tol: f64,
    ) {
        self.entries.push(CheckEntry {
            id: id.into(),
            description: description.into(),
            relation: relation.into(),
            residual,
            tol,
            pass: residual <= tol,
        });
    }

    /// Records that `deviation` is at least `separation`. The stored residual
    /// is the shortfall `max(0, separation - deviation)` with tolerance 0.
    pub fn push_separated(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        relation: impl Into<String>,
        deviation: f64,
        separation: f64,
    ) {
        let shortfall = if deviation.is_nan() {
            f64::INFINITY
        } else {
            (separation - deviation).max(0.0)
        };
        self.push(id, description, relation, shortfall, 0.0);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Worst residual per family, in first-seen family order.
    pub fn family_maxima(&self) -> Vec<(String, f64, bool)> {
        let mut out: Vec<(String, f64, bool)> = Vec::new();
        for e in &self.entries {
            match out.iter_mut().find(|(f, _, _)| f == e.family()) {
                Some(slot) => {
                    slot.1 = slot.1.max(e.residual);
                    slot.2 &= e.pass;
                }
                None => out.push((e.family().to_string(), e.residual, e.pass)),
            }
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, e| acc.max(e.residual))
    }
}
