//! On-disk formats: table JSON, histogram CSV, label CSV, result JSON and
//! CSV reports. Every write goes to a temporary file in the target
//! directory and is renamed into place.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wfcm_core::clustering::{
    ClusteringResult, FuzzyPartition, PrototypeSet, RelevanceWeights, RestartSummary, Scheme,
};
use wfcm_core::distributional::{
    from_histogram, Distribution, DistributionalTable, GridQuantile, SkewLogistic,
};
use wfcm_core::validity::{DispersionTable, ExternalReport, IndexReport};

use crate::CliError;

/// One cell: analytic skew-logistic parameters or quantile knots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellRecord {
    Analytic {
        family: Family,
        gamma: f64,
        eta: f64,
        delta: f64,
    },
    Knots {
        levels: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Skewlogistic,
}

impl From<&Distribution> for CellRecord {
    fn from(d: &Distribution) -> Self {
        match d {
            Distribution::SkewLogistic(s) => CellRecord::Analytic {
                family: Family::Skewlogistic,
                gamma: s.gamma(),
                eta: s.eta(),
                delta: s.delta(),
            },
            Distribution::Grid(q) => CellRecord::Knots {
                levels: q.levels().to_vec(),
                values: q.values().to_vec(),
            },
        }
    }
}

impl CellRecord {
    pub fn to_distribution(&self) -> Result<Distribution, CliError> {
        Ok(match self {
            CellRecord::Analytic {
                gamma, eta, delta, ..
            } => SkewLogistic::new(*gamma, *eta, *delta)?.into(),
            CellRecord::Knots { levels, values } => {
                GridQuantile::from_levels(levels.clone(), values.clone())?.into()
            }
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectRecord {
    pub name: String,
    pub cells: Vec<CellRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub variables: Vec<String>,
    pub objects: Vec<ObjectRecord>,
}

impl TableFile {
    pub fn from_table(t: &DistributionalTable) -> Self {
        Self {
            variables: t.variable_names().to_vec(),
            objects: t
                .object_names()
                .iter()
                .zip(t.rows())
                .map(|(name, row)| ObjectRecord {
                    name: name.clone(),
                    cells: row.iter().map(CellRecord::from).collect(),
                })
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<DistributionalTable, CliError> {
        let rows = self
            .objects
            .iter()
            .map(|o| o.cells.iter().map(CellRecord::to_distribution).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let names = self.objects.iter().map(|o| o.name.clone()).collect();
        Ok(DistributionalTable::new(
            rows,
            self.variables.clone(),
            names,
        )?)
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Reads a table: `.csv` as histogram rows, anything else as table JSON.
pub fn read_table(path: &Path) -> Result<DistributionalTable, CliError> {
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        return read_histogram_csv(path);
    }
    let file: TableFile = serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    file.to_table()
}

#[derive(Debug, Deserialize)]
struct HistogramRow {
    object: String,
    variable: String,
    edges: String,
    probs: String,
}

fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(';')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Data(format!("bad number `{x}`: {e}")))
        })
        .collect()
}

/// Histogram CSV with columns `object,variable,edges,probs`; lists are
/// `;`-separated. Objects and variables keep first-seen order and every
/// object needs every variable exactly once.
pub fn read_histogram_csv(path: &Path) -> Result<DistributionalTable, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Data(e.to_string()))?;
    let mut objects: Vec<String> = Vec::new();
    let mut variables: Vec<String> = Vec::new();
    let mut cells: HashMap<(usize, usize), Distribution> = HashMap::new();
    for row in reader.deserialize::<HistogramRow>() {
        let row = row.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let k = index_of(&mut objects, &row.object);
        let j = index_of(&mut variables, &row.variable);
        let q = from_histogram(&parse_list(&row.edges)?, &parse_list(&row.probs)?)?;
        if cells.insert((k, j), q.into()).is_some() {
            return Err(CliError::Data(format!(
                "duplicate cell for object `{}`, variable `{}`",
                row.object, row.variable
            )));
        }
    }
    let mut rows = Vec::with_capacity(objects.len());
    for (k, name) in objects.iter().enumerate() {
        let mut row = Vec::with_capacity(variables.len());
        for (j, var) in variables.iter().enumerate() {
            let cell = cells.remove(&(k, j)).ok_or_else(|| {
                CliError::Data(format!("object `{name}` has no histogram for `{var}`"))
            })?;
            row.push(cell);
        }
        rows.push(row);
    }
    Ok(DistributionalTable::new(rows, variables, objects)?)
}

fn index_of(names: &mut Vec<String>, name: &str) -> usize {
    names.iter().position(|n| n == name).unwrap_or_else(|| {
        names.push(name.to_string());
        names.len() - 1
    })
}

/// Reads `object,label` rows. Labels are arbitrary strings mapped to
/// `0..c` by first appearance; rows may come in any order but must cover
/// exactly the table's objects.
pub fn read_labels(path: &Path, table: &DistributionalTable) -> Result<Vec<usize>, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Data(e.to_string()))?;
    let position: HashMap<&str, usize> = table
        .object_names()
        .iter()
        .enumerate()
        .map(|(k, n)| (n.as_str(), k))
        .collect();
    let mut classes: Vec<String> = Vec::new();
    let mut labels: Vec<Option<usize>> = vec![None; table.n_objects()];
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let (Some(obj), Some(lab)) = (rec.get(0), rec.get(1)) else {
            return Err(CliError::Data(format!(
                "{}: expected `object,label` rows",
                path.display()
            )));
        };
        let k = *position
            .get(obj)
            .ok_or_else(|| CliError::Data(format!("label for unknown object `{obj}`")))?;
        if labels[k].replace(index_of(&mut classes, lab)).is_some() {
            return Err(CliError::Data(format!("object `{obj}` labelled twice")));
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(k, l)| {
            l.ok_or_else(|| {
                CliError::Data(format!("object `{}` has no label", table.object_names()[k]))
            })
        })
        .collect()
}

/// Relevance weights as written in result files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightsRecord {
    /// Row `r` applies as described by `row_labels[r]`; columns are
    /// variables.
    pub row_labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

fn weight_row_labels(scheme: Scheme, c: usize) -> Vec<String> {
    match scheme {
        Scheme::Fcm => Vec::new(),
        Scheme::GlobalVariable => vec!["all".into()],
        Scheme::GlobalComponent | Scheme::GlobalJoint => {
            vec!["position".into(), "dispersion".into()]
        }
        Scheme::ClusterVariable => (1..=c).map(|i| format!("cluster {i}")).collect(),
        Scheme::ClusterComponent | Scheme::ClusterJoint => (1..=c)
            .flat_map(|i| {
                [
                    format!("cluster {i} position"),
                    format!("cluster {i} dispersion"),
                ]
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RestartRecord {
    pub objective: Option<f64>,
    pub iterations: usize,
    pub error: Option<String>,
}

/// Machine-readable fit result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultFile {
    pub scheme: Scheme,
    pub criterion: String,
    pub clusters: usize,
    pub fuzzifier: f64,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub restart_index: usize,
    pub floored_denominators: usize,
    pub objects: Vec<String>,
    pub variables: Vec<String>,
    pub memberships: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weights: Option<WeightsRecord>,
    pub prototypes: Vec<Vec<CellRecord>>,
    pub objective_trace: Vec<f64>,
    pub restarts: Vec<RestartRecord>,
}

impl ResultFile {
    pub fn new(table: &DistributionalTable, r: &ClusteringResult) -> Self {
        let c = r.partition.n_clusters();
        Self {
            scheme: r.scheme,
            criterion: r.scheme.criterion().to_string(),
            clusters: c,
            fuzzifier: r.fuzzifier,
            objective: r.objective(),
            iterations: r.iterations,
            converged: r.converged,
            restart_index: r.restart_index,
            floored_denominators: r.floored_denominators,
            objects: table.object_names().to_vec(),
            variables: table.variable_names().to_vec(),
            memberships: r.partition.rows().map(<[f64]>::to_vec).collect(),
            labels: r.labels().into_iter().map(|l| l + 1).collect(),
            weights: r.weights.as_ref().map(|w| WeightsRecord {
                row_labels: weight_row_labels(r.scheme, c),
                values: w.matrix(),
            }),
            prototypes: r
                .prototypes
                .clusters()
                .iter()
                .map(|row| row.iter().map(CellRecord::from).collect())
                .collect(),
            objective_trace: r.objective_trace.clone(),
            restarts: r
                .restarts
                .iter()
                .map(|s| RestartRecord {
                    objective: s.objective,
                    iterations: s.iterations,
                    error: s.error.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds the clustering result against `table`.
    pub fn to_result(&self, table: &DistributionalTable) -> Result<ClusteringResult, CliError> {
        if self.objects.as_slice() != table.object_names()
            || self.variables.as_slice() != table.variable_names()
        {
            return Err(CliError::Data(
                "result objects/variables do not match the table".into(),
            ));
        }
        let c = self.clusters;
        let partition = FuzzyPartition::new(self.memberships.clone())?;
        if partition.n_clusters() != c || self.prototypes.len() != c {
            return Err(CliError::Data(
                "result cluster count is inconsistent".into(),
            ));
        }
        let prototypes = self
            .prototypes
            .iter()
            .map(|row| {
                if row.len() != table.n_variables() {
                    return Err(CliError::Data("prototype has wrong variable count".into()));
                }
                row.iter().map(CellRecord::to_distribution).collect()
            })
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let weights = match (&self.weights, self.scheme.is_adaptive()) {
            (Some(w), true) => Some(RelevanceWeights::from_matrix(
                self.scheme,
                c,
                w.values.clone(),
            )?),
            (None, false) => None,
            _ => {
                return Err(CliError::Data(format!(
                    "weights block does not fit scheme {}",
                    self.scheme
                )))
            }
        };
        let max_constraint_violation = weights
            .as_ref()
            .map_or(0.0, RelevanceWeights::max_constraint_violation);
        Ok(ClusteringResult {
            scheme: self.scheme,
            fuzzifier: self.fuzzifier,
            partition,
            prototypes: PrototypeSet::new(prototypes),
            weights,
            objective_trace: self.objective_trace.clone(),
            iterations: self.iterations,
            converged: self.converged,
            restart_index: self.restart_index,
            floored_denominators: self.floored_denominators,
            max_constraint_violation,
            restarts: self
                .restarts
                .iter()
                .map(|s| RestartSummary {
                    objective: s.objective,
                    iterations: s.iterations,
                    error: s.error.clone(),
                })
                .collect(),
        })
    }
}

/// Writes `bytes` to `path` through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Data(format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let written = std::fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|()| f.sync_all()))
        .and_then(|()| std::fs::rename(&tmp, path));
    if let Err(e) = written {
        let _ = std::fs::remove_file(&tmp);
        return Err(CliError::io(path, e));
    }
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Data(format!("serializing {}: {e}", path.display())))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| CliError::Data(e.to_string()))?;
    for r in rows {
        w.write_record(r)
            .map_err(|e| CliError::Data(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Data(e.to_string()))?;
    write_atomic(path, &bytes)
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        String::new()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, num)
}

/// `object,label` with 1-based labels.
pub fn write_labels(path: &Path, objects: &[String], labels: &[usize]) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = objects
        .iter()
        .zip(labels)
        .map(|(o, l)| vec![o.clone(), (l + 1).to_string()])
        .collect();
    write_csv(path, &["object".into(), "label".into()], &rows)
}

/// `object,u1..uc,label`.
pub fn write_memberships(
    path: &Path,
    objects: &[String],
    u: &FuzzyPartition,
) -> Result<(), CliError> {
    let mut header = vec!["object".to_string()];
    header.extend((1..=u.n_clusters()).map(|i| format!("u{i}")));
    header.push("label".into());
    let labels = u.harden();
    let rows: Vec<Vec<String>> = objects
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let mut r = vec![o.clone()];
            r.extend(u.row(k).iter().map(|v| format!("{v:.6}")));
            r.push((labels[k] + 1).to_string());
            r
        })
        .collect();
    write_csv(path, &header, &rows)
}

/// Dispersion table: one row per cluster, then `WSSE`, `TSSE`, `QPI`;
/// three columns (`SSE_j`, `SSE_j_m`, `SSE_j_d`) per variable.
pub fn write_dispersion(path: &Path, d: &DispersionTable) -> Result<(), CliError> {
    let mut header = vec!["row".to_string()];
    for j in 1..=d.n_variables() {
        header.extend([
            format!("SSE_{j}"),
            format!("SSE_{j}_m"),
            format!("SSE_{j}_d"),
        ]);
    }
    let triple = |x: &wfcm_core::distributional::Decomposition| {
        [num(x.total()), num(x.position), num(x.dispersion)]
    };
    let mut rows = Vec::new();
    for (i, cl) in d.clusters.iter().enumerate() {
        let mut r = vec![format!("Cl. {}", i + 1)];
        r.extend(cl.iter().flat_map(triple));
        rows.push(r);
    }
    for (name, v) in [("WSSE", &d.within), ("TSSE", &d.total)] {
        let mut r = vec![name.to_string()];
        r.extend(v.iter().flat_map(triple));
        rows.push(r);
    }
    let mut r = vec!["QPI".to_string()];
    for j in 0..d.n_variables() {
        r.extend([
            opt(d.qpi_variable(j)),
            opt(d.qpi_position(j)),
            opt(d.qpi_dispersion(j)),
        ]);
    }
    rows.push(r);
    write_csv(path, &header, &rows)
}

pub const INTERNAL_HEADER: [&str; 6] = ["PC", "PE", "MPC", "XB", "Sil", "QPI"];

pub fn internal_row(r: &IndexReport) -> Vec<String> {
    [r.pc, r.pe, r.mpc, r.xb, r.fuzzy_silhouette, r.qpi]
        .into_iter()
        .map(num)
        .collect()
}

pub fn write_internal(path: &Path, r: &IndexReport) -> Result<(), CliError> {
    let header: Vec<String> = INTERNAL_HEADER.iter().map(|s| s.to_string()).collect();
    write_csv(path, &header, &[internal_row(r)])
}

/// Rows `fuzzy` and `crisp`; columns Rand, ARI, Jaccard, FM, Hubert.
pub fn write_external(path: &Path, r: &ExternalReport) -> Result<(), CliError> {
    let header: Vec<String> = ["partition", "Rand", "ARI", "Jacc", "FM", "Hub"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<String>> = [("fuzzy", r.fuzzy), ("crisp", r.crisp)]
        .into_iter()
        .map(|(name, x)| {
            let mut row = vec![name.to_string()];
            row.extend([x.rand, x.ari, x.jaccard, x.fm, x.hubert].map(num));
            row
        })
        .collect();
    write_csv(path, &header, &rows)
}

/// One row per cluster count.
pub fn write_scan(path: &Path, rows: &[(usize, f64, IndexReport)]) -> Result<(), CliError> {
    let mut header = vec!["c".to_string(), "objective".to_string()];
    header.extend(INTERNAL_HEADER[..5].iter().map(|s| s.to_string()));
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|(c, j, r)| {
            let mut row = vec![c.to_string(), num(*j)];
            row.extend(internal_row(r).into_iter().take(5));
            row
        })
        .collect();
    write_csv(path, &header, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_records_round_trip() {
        let s = Distribution::from(SkewLogistic::new(0.1, 2.0, -0.3).unwrap());
        let g = Distribution::from(
            GridQuantile::from_levels(vec![0.0, 0.5, 1.0], vec![1.0, 2.0, 4.0]).unwrap(),
        );
        for d in [s, g] {
            let text = serde_json::to_string(&CellRecord::from(&d)).unwrap();
            let back: CellRecord = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_distribution().unwrap(), d);
        }
        let parsed: CellRecord =
            serde_json::from_str(r#"{"family":"skewlogistic","gamma":0,"eta":1,"delta":0}"#)
                .unwrap();
        assert!(matches!(parsed, CellRecord::Analytic { .. }));
        assert!(serde_json::from_str::<CellRecord>(r#"{"family":"normal","mu":0}"#).is_err());
    }

    #[test]
    fn weight_labels_match_rows() {
        for s in Scheme::ALL {
            assert_eq!(weight_row_labels(s, 3).len(), s.weight_rows(3), "{s}");
        }
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("1; 2;3.5").unwrap(), vec![1.0, 2.0, 3.5]);
        assert!(parse_list("1;x").is_err());
    }
}
