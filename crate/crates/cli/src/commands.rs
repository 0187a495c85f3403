use std::path::{Path, PathBuf};

use wfcm_core::clustering::{fit as fit_table, ClusteringConfig, Convergence, Scheme};
use wfcm_core::distributional::DistributionalTable;
use wfcm_core::synthgen::{generate_scenario, sse_report, LabeledTable, ScenarioSpec};
use wfcm_core::validity::{fuzzy_external, IndexReport};

use crate::formats::{
    read_labels, read_table, write_dispersion, write_external, write_internal, write_json,
    write_labels, write_memberships, write_scan, ResultFile, TableFile,
};
use crate::CliError;

/// Where scenario parameters come from.
#[derive(Debug, Clone)]
pub enum ScenarioSource {
    Preset(usize),
    Spec(PathBuf),
}

impl ScenarioSource {
    pub fn load(&self) -> Result<ScenarioSpec, CliError> {
        match self {
            ScenarioSource::Preset(k) => Ok(ScenarioSpec::preset(*k)?),
            ScenarioSource::Spec(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                Ok(ScenarioSpec::from_json(&text)?)
            }
        }
    }

    pub fn generate(&self, seed: u64) -> Result<LabeledTable, CliError> {
        Ok(generate_scenario(&self.load()?, seed)?)
    }
}

/// A table on disk, or one generated on the fly.
#[derive(Debug, Clone)]
pub enum TableSource {
    File(PathBuf),
    Scenario { source: ScenarioSource, seed: u64 },
}

impl TableSource {
    pub fn load(&self) -> Result<DistributionalTable, CliError> {
        match self {
            TableSource::File(path) => read_table(path),
            TableSource::Scenario { source, seed } => Ok(source.generate(*seed)?.table),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub scheme: Scheme,
    pub clusters: usize,
    pub fuzzifier: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl SolverOptions {
    pub fn config(&self, clusters: usize) -> ClusteringConfig {
        ClusteringConfig {
            clusters,
            fuzzifier: self.fuzzifier,
            epsilon: self.epsilon,
            max_iter: self.max_iter,
            restarts: self.restarts,
            seed: self.seed,
            scheme: self.scheme,
            convergence: Convergence::Absolute,
        }
    }
}

/// Writes `table.json`, `labels.csv` and `sse_report.csv` into `out`.
pub fn generate(source: &ScenarioSource, seed: u64, out: &Path) -> Result<(), CliError> {
    let lt = source.generate(seed)?;
    write_json(&out.join("table.json"), &TableFile::from_table(&lt.table))?;
    write_labels(&out.join("labels.csv"), lt.table.object_names(), &lt.labels)?;
    let report = sse_report(&lt.table, &lt.labels)?;
    write_dispersion(&out.join("sse_report.csv"), &report)
}

/// Writes `result.json` and `memberships.csv` into `out`.
pub fn fit(table: &TableSource, opts: &SolverOptions, out: &Path) -> Result<ResultFile, CliError> {
    let table = table.load()?;
    let result = fit_table(&table, &opts.config(opts.clusters))?;
    let file = ResultFile::new(&table, &result);
    write_json(&out.join("result.json"), &file)?;
    write_memberships(
        &out.join("memberships.csv"),
        table.object_names(),
        &result.partition,
    )?;
    Ok(file)
}

/// Writes `internal.csv` and `dispersion.csv`, plus `external.csv` when
/// reference labels are given.
pub fn validate(
    table: &TableSource,
    result: &Path,
    labels: Option<&Path>,
    out: &Path,
) -> Result<(), CliError> {
    let table = table.load()?;
    let text = std::fs::read_to_string(result).map_err(|e| CliError::io(result, e))?;
    let file: ResultFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", result.display())))?;
    let result = file.to_result(&table)?;
    let internal = IndexReport::compute(&table, &result)?;
    write_internal(&out.join("internal.csv"), &internal)?;
    write_dispersion(&out.join("dispersion.csv"), &internal.dispersion)?;
    if let Some(path) = labels {
        let reference = read_labels(path, &table)?;
        let external = fuzzy_external(&result.partition, &reference)?;
        write_external(&out.join("external.csv"), &external)?;
    }
    Ok(())
}

/// Parses an inclusive range `lo..hi` (also `lo..=hi` or `lo-hi`).
pub fn parse_c_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("invalid cluster range `{s}` (expected e.g. 2..8)"));
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Fits every `c` in `lo..=hi` and writes `scan.csv`.
pub fn scan(
    table: &TableSource,
    range: (usize, usize),
    opts: &SolverOptions,
    out: &Path,
) -> Result<(), CliError> {
    let table = table.load()?;
    let (lo, hi) = range;
    let n = table.n_objects();
    if lo < 2 || hi + 1 > n {
        return Err(CliError::Usage(format!(
            "cluster range {lo}..{hi} must lie within 2..{}",
            n.saturating_sub(1)
        )));
    }
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for c in lo..=hi {
        let result = fit_table(&table, &opts.config(c))?;
        let report = IndexReport::compute(&table, &result)?;
        rows.push((c, result.objective(), report));
    }
    write_scan(&out.join("scan.csv"), &rows)
}
