use std::sync::Arc;

use super::grid::{LevelGrid, DEFAULT_GRID_SIZE};
use super::{resample, Distribution, DistributionError};

/// `N` objects × `P` distributional variables.
///
/// Columns are normalized on construction: a column that is entirely
/// analytic stays analytic; otherwise every cell is put on one shared grid
/// (the cells' own grid if they already agree, the default midpoint grid if
/// not).
#[derive(Debug, Clone)]
pub struct DistributionalTable {
    rows: Vec<Vec<Distribution>>,
    variable_names: Vec<String>,
    object_names: Vec<String>,
}

impl DistributionalTable {
    pub fn new(
        rows: Vec<Vec<Distribution>>,
        variable_names: Vec<String>,
        object_names: Vec<String>,
    ) -> Result<Self, DistributionError> {
        let p = variable_names.len();
        if rows.is_empty() || p == 0 {
            return Err(DistributionError::InvalidTable(
                "table needs at least one object and one variable".into(),
            ));
        }
        if object_names.len() != rows.len() {
            return Err(DistributionError::InvalidTable(format!(
                "{} object names for {} rows",
                object_names.len(),
                rows.len()
            )));
        }
        if let Some(k) = rows.iter().position(|r| r.len() != p) {
            return Err(DistributionError::InvalidTable(format!(
                "row {k} has {} cells, expected {p}",
                rows[k].len()
            )));
        }
        let mut rows = rows;
        for j in 0..p {
            normalize_column(&mut rows, j)?;
        }
        Ok(Self {
            rows,
            variable_names,
            object_names,
        })
    }

    /// Table with generated labels `obj{k}` / `var{j}`.
    pub fn from_rows(rows: Vec<Vec<Distribution>>) -> Result<Self, DistributionError> {
        let p = rows.first().map_or(0, Vec::len);
        let vars = (1..=p).map(|j| format!("var{j}")).collect();
        let objs = (1..=rows.len()).map(|k| format!("obj{k}")).collect();
        Self::new(rows, vars, objs)
    }

    pub fn n_objects(&self) -> usize {
        self.rows.len()
    }

    pub fn n_variables(&self) -> usize {
        self.variable_names.len()
    }

    pub fn cell(&self, k: usize, j: usize) -> &Distribution {
        &self.rows[k][j]
    }

    pub fn row(&self, k: usize) -> &[Distribution] {
        &self.rows[k]
    }

    pub fn rows(&self) -> &[Vec<Distribution>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Distribution> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    /// Returns a copy with variable `j` transformed cell by cell.
    pub fn map_variable(
        &self,
        j: usize,
        f: impl Fn(&Distribution) -> Distribution,
    ) -> Result<Self, DistributionError> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r[j] = f(&r[j]);
                r
            })
            .collect();
        Self::new(rows, self.variable_names.clone(), self.object_names.clone())
    }
}

fn normalize_column(rows: &mut [Vec<Distribution>], j: usize) -> Result<(), DistributionError> {
    let grids: Vec<&Arc<LevelGrid>> = rows.iter().filter_map(|r| r[j].grid()).collect();
    let Some(first) = grids.first() else {
        return Ok(());
    };
    let shared = grids
        .iter()
        .all(|g| Arc::ptr_eq(g, first) || g.levels() == first.levels());
    let all_grid = grids.len() == rows.len();
    if shared && all_grid && grids.iter().all(|g| Arc::ptr_eq(g, first)) {
        return Ok(());
    }
    // Analytic cells can only be rasterized strictly inside (0, 1).
    let interior = first.levels().iter().all(|t| *t > 0.0 && *t < 1.0);
    let target = if shared && (all_grid || interior) {
        Arc::clone(first)
    } else {
        Arc::new(LevelGrid::midpoint(DEFAULT_GRID_SIZE))
    };
    for r in rows.iter_mut() {
        let q = resample(&r[j], &target)?;
        r[j] = Distribution::Grid(q);
    }
    Ok(())
}
