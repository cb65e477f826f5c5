//! Reference tables: embedded golden values, regeneration on the same
//! `(λ, n)` grids, and per-cell deviation reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy_momentum::{entropy_momentum, uncertainty_check, UncertaintyReport};
use crate::entropy_position::entropy_position_nd;
use crate::error::{domain, Result};
use crate::model::{energy, frequency, ModelParams, QuantumNumbers};
use crate::transform::TransformSpec;

pub const TABLE_IDS: [u8; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Energy,
    Frequency,
    PositionEntropy,
    MomentumEntropy,
    TotalEntropy,
}

/// One rectangular block of golden values.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub quantity: Quantity,
    pub dim: usize,
    pub lambdas: Vec<f64>,
    pub ns: Vec<usize>,
    /// `values[i][j]` at `lambdas[i]`, `ns[j]`.
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenTable {
    pub id: u8,
    pub tolerance: f64,
    pub panels: Vec<Panel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub quantity: Quantity,
    pub dim: usize,
    pub lambda: f64,
    pub n: usize,
    pub golden: f64,
    pub computed: f64,
    pub deviation: f64,
    pub err_est: f64,
    /// Present for total-entropy cells.
    pub uncertainty: Option<UncertaintyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub id: u8,
    pub tolerance: f64,
    pub cells: Vec<Cell>,
}

impl TableReport {
    pub fn max_deviation(&self) -> f64 {
        self.cells.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> Vec<&Cell> {
        self.cells.iter().filter(|c| !(c.deviation <= self.tolerance)).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Machine-readable rows at full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("table,quantity,dim,lambda,n,computed,golden,deviation,err_est\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{:?},{},{:?},{:?},{:?},{:?}\n",
                self.id,
                quantity_name(c.quantity),
                c.dim,
                c.lambda,
                c.n,
                c.computed,
                c.golden,
                c.deviation,
                c.err_est
            ));
        }
        out
    }

    /// Human-readable summary with display rounding.
    pub fn diff_report(&self) -> String {
        let failures = self.failures();
        let mut out = format!(
            "table {}: {} cells, max |dev| = {:.2e}, tolerance {:.1e}: {}\n",
            self.id,
            self.cells.len(),
            self.max_deviation(),
            self.tolerance,
            if failures.is_empty() { "ok" } else { "FAILED" }
        );
        for c in failures {
            out.push_str(&format!(
                "  {} lambda={} n={}: computed {:.4} golden {} |dev| {:.2e}\n",
                quantity_name(c.quantity),
                c.lambda,
                c.n,
                c.computed,
                c.golden,
                c.deviation
            ));
        }
        out
    }
}

pub fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Energy => "energy",
        Quantity::Frequency => "frequency",
        Quantity::PositionEntropy => "position_entropy",
        Quantity::MomentumEntropy => "momentum_entropy",
        Quantity::TotalEntropy => "total_entropy",
    }
}

fn parse_panel(text: &str, quantity: Quantity, dim: usize) -> Panel {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers().expect("golden table header");
    let ns = header.iter().skip(1).map(|s| s.trim().parse().expect("column index")).collect();
    let mut lambdas = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.expect("golden row");
        let mut fields = record.iter().map(|s| s.trim().parse::<f64>().expect("golden value"));
        lambdas.push(fields.next().expect("lambda"));
        values.push(fields.collect());
    }
    Panel { quantity, dim, lambdas, ns, values }
}

/// The embedded golden table `id ∈ 1..=8`.
pub fn golden(id: u8) -> Result<GoldenTable> {
    use Quantity::*;
    let (tolerance, panels) = match id {
        1 => (
            5e-4,
            vec![
                parse_panel(include_str!("../data/table1_energy.csv"), Energy, 1),
                parse_panel(include_str!("../data/table1_frequency.csv"), Frequency, 1),
            ],
        ),
        2 => (1.5e-3, vec![parse_panel(include_str!("../data/table2.csv"), PositionEntropy, 1)]),
        3 => (2e-3, vec![parse_panel(include_str!("../data/table3.csv"), MomentumEntropy, 1)]),
        4 => (2e-3, vec![parse_panel(include_str!("../data/table4.csv"), TotalEntropy, 1)]),
        5 => (2e-3, vec![parse_panel(include_str!("../data/table5.csv"), TotalEntropy, 1)]),
        6 => (2e-3, vec![parse_panel(include_str!("../data/table6.csv"), PositionEntropy, 3)]),
        7 => (2e-3, vec![parse_panel(include_str!("../data/table7.csv"), MomentumEntropy, 3)]),
        8 => (2e-3, vec![parse_panel(include_str!("../data/table8.csv"), TotalEntropy, 3)]),
        _ => return domain(format!("table id must be in 1..=8, got {id}")),
    };
    Ok(GoldenTable { id, tolerance, panels })
}

/// Evaluate one quantity for the `l = 0` state `n`.
pub fn compute_cell(
    quantity: Quantity,
    dim: usize,
    lambda: f64,
    n: usize,
    tspec: &TransformSpec,
) -> Result<(f64, f64, Option<UncertaintyReport>)> {
    let params = ModelParams::unit(lambda, dim)?;
    let q = QuantumNumbers::s_state(n, dim);
    Ok(match quantity {
        Quantity::Energy => (energy(&params, &q)?, 0.0, None),
        Quantity::Frequency => (frequency(&params, &q)?, 0.0, None),
        Quantity::PositionEntropy => {
            let r = entropy_position_nd(&params, &q, &tspec.quad)?;
            (r.entropy, r.err_est, None)
        }
        Quantity::MomentumEntropy => {
            let r = entropy_momentum(&params, &q, tspec)?;
            (r.entropy, r.err_est, None)
        }
        Quantity::TotalEntropy => {
            let r = uncertainty_check(&params, &q, tspec)?;
            (r.total, r.err_est, Some(r))
        }
    })
}

impl GoldenTable {
    pub fn grid(&self) -> Vec<(Quantity, usize, f64, usize, f64)> {
        let mut out = Vec::new();
        for p in &self.panels {
            for (i, &lambda) in p.lambdas.iter().enumerate() {
                for (j, &n) in p.ns.iter().enumerate() {
                    out.push((p.quantity, p.dim, lambda, n, p.values[i][j]));
                }
            }
        }
        out
    }

    /// Recompute every cell, in parallel across cells.
    pub fn regenerate(&self, tspec: &TransformSpec) -> Result<TableReport> {
        let cells = self
            .grid()
            .into_par_iter()
            .map(|(quantity, dim, lambda, n, golden)| {
                let (computed, err_est, uncertainty) = compute_cell(quantity, dim, lambda, n, tspec)?;
                Ok(Cell { quantity, dim, lambda, n, golden, computed, deviation: (computed - golden).abs(), err_est, uncertainty })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableReport { id: self.id, tolerance: self.tolerance, cells })
    }
}

/// Regenerate table `id` and compare with its golden values.
pub fn regenerate(id: u8, tspec: &TransformSpec) -> Result<TableReport> {
    golden(id)?.regenerate(tspec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_shapes() {
        let shapes = [(1, 100), (2, 80), (3, 80), (4, 80), (5, 15), (6, 50), (7, 50), (8, 50)];
        for (id, cells) in shapes {
            assert_eq!(golden(id).unwrap().grid().len(), cells, "table {id}");
        }
        assert!(golden(9).is_err());
        let t = golden(5).unwrap();
        assert_eq!(t.panels[0].lambdas, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(t.panels[0].values[4][0], 2.199);
    }

    #[test]
    fn spectrum_table_regenerates() {
        let r = regenerate(1, &TransformSpec::default()).unwrap();
        assert!(r.passed(), "{}", r.diff_report());
        assert!(r.to_csv().lines().count() == 101);
    }
}
