//! Dataset ingestion, synthetic circular tasks, splitting, and metrics.
//!
//! CSV files are described by a line-oriented schema, one column per line:
//!
//! ```text
//! # name: type [unit] [range a b] [label]
//! hour:  angle fraction
//! wind:  scalar range 0 25
//! temp:  scalar label
//! ```
//!
//! Column types are `scalar`, `angle` (with unit `radians`, `degrees`, or
//! `fraction` of a full cycle), and `symbol`. Exactly one column carries the
//! `label` flag. Rows with missing cells (empty, `NA`, or `NaN`) are dropped
//! and counted rather than imputed.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::hv::Hypervector;
use crate::learn::{classify, predict, ClassificationModel, RegressionModel};
use crate::rng::child_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleUnit {
    Radians,
    Degrees,
    FractionOfCycle,
}

impl AngleUnit {
    fn to_radians(self, value: f64) -> f64 {
        let radians = match self {
            AngleUnit::Radians => value,
            AngleUnit::Degrees => value * PI / 180.0,
            AngleUnit::FractionOfCycle => value * TAU,
        };
        radians.rem_euclid(TAU)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ColumnType {
    Scalar { range: Option<(f64, f64)> },
    Angle { unit: AngleUnit },
    Symbol,
}

#[derive(Clone, Debug)]
pub struct ColumnSpec {
    pub name: String,
    pub ty: ColumnType,
    pub label: bool,
}

#[derive(Clone, Debug)]
pub struct Schema {
    pub columns: Vec<ColumnSpec>,
}

impl Schema {
    /// Parses the line-oriented schema text described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut columns = Vec::new();
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, rest) = line.split_once(':').ok_or_else(|| {
                Error::Schema(format!("line {}: expected `name: type ...`", line_no + 1))
            })?;
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(Error::Schema(format!("line {}: empty column name", line_no + 1)));
            }
            let mut tokens = rest.split_whitespace().peekable();
            let ty_token = tokens
                .next()
                .ok_or_else(|| Error::Schema(format!("line {}: missing column type", line_no + 1)))?;
            let mut ty = match ty_token {
                "scalar" => ColumnType::Scalar { range: None },
                "angle" => ColumnType::Angle { unit: AngleUnit::Radians },
                "symbol" => ColumnType::Symbol,
                other => {
                    return Err(Error::Schema(format!(
                        "line {}: unknown column type {other:?}",
                        line_no + 1
                    )))
                }
            };
            let mut label = false;
            while let Some(token) = tokens.next() {
                match token {
                    "radians" | "degrees" | "fraction" => {
                        let unit = match token {
                            "radians" => AngleUnit::Radians,
                            "degrees" => AngleUnit::Degrees,
                            _ => AngleUnit::FractionOfCycle,
                        };
                        match &mut ty {
                            ColumnType::Angle { unit: u } => *u = unit,
                            _ => {
                                return Err(Error::Schema(format!(
                                    "line {}: unit {token:?} on a non-angle column",
                                    line_no + 1
                                )))
                            }
                        }
                    }
                    "range" => {
                        let a = parse_schema_number(&mut tokens, line_no)?;
                        let b = parse_schema_number(&mut tokens, line_no)?;
                        match &mut ty {
                            ColumnType::Scalar { range } => *range = Some((a, b)),
                            _ => {
                                return Err(Error::Schema(format!(
                                    "line {}: range on a non-scalar column",
                                    line_no + 1
                                )))
                            }
                        }
                    }
                    "label" => label = true,
                    other => {
                        return Err(Error::Schema(format!(
                            "line {}: unexpected token {other:?}",
                            line_no + 1
                        )))
                    }
                }
            }
            if label && matches!(ty, ColumnType::Angle { .. }) {
                return Err(Error::Schema(format!(
                    "line {}: angle columns cannot be labels",
                    line_no + 1
                )));
            }
            columns.push(ColumnSpec { name, ty, label });
        }
        let labels = columns.iter().filter(|c| c.label).count();
        if labels != 1 {
            return Err(Error::Schema(format!(
                "schema must mark exactly one label column, found {labels}"
            )));
        }
        if columns.len() < 2 {
            return Err(Error::Schema("schema needs at least one feature column".into()));
        }
        Ok(Self { columns })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

fn parse_schema_number(
    tokens: &mut std::iter::Peekable<std::str::SplitWhitespace<'_>>,
    line_no: usize,
) -> Result<f64> {
    let token = tokens
        .next()
        .ok_or_else(|| Error::Schema(format!("line {}: range needs two numbers", line_no + 1)))?;
    token
        .parse::<f64>()
        .map_err(|_| Error::Schema(format!("line {}: bad range number {token:?}", line_no + 1)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeatureValue {
    /// Scalar or angle value; angles are stored in radians in [0, 2 pi).
    Real(f64),
    Symbol(String),
}

impl FeatureValue {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            FeatureValue::Real(v) => Some(*v),
            FeatureValue::Symbol(_) => None,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            FeatureValue::Real(_) => None,
            FeatureValue::Symbol(s) => Some(s),
        }
    }
}

#[derive(Clone, Debug)]
pub enum LabelColumn {
    Real(Vec<f64>),
    /// Class indices into a fixed, sorted name list shared by every split
    /// of one dataset.
    Class { names: Vec<String>, indices: Vec<usize> },
}

impl LabelColumn {
    pub fn len(&self) -> usize {
        match self {
            LabelColumn::Real(v) => v.len(),
            LabelColumn::Class { indices, .. } => indices.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Feature rows plus one label column, all rows the same arity, no missing
/// values after ingestion.
#[derive(Clone, Debug)]
pub struct TabularDataset {
    features: Vec<ColumnSpec>,
    rows: Vec<Vec<FeatureValue>>,
    labels: LabelColumn,
    dropped_rows: usize,
}

impl TabularDataset {
    fn new(
        features: Vec<ColumnSpec>,
        rows: Vec<Vec<FeatureValue>>,
        labels: LabelColumn,
        dropped_rows: usize,
    ) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == features.len()));
        debug_assert_eq!(rows.len(), labels.len());
        Self { features, rows, labels, dropped_rows }
    }

    pub fn feature_columns(&self) -> &[ColumnSpec] {
        &self.features
    }

    pub fn rows(&self) -> &[Vec<FeatureValue>] {
        &self.rows
    }

    pub fn labels(&self) -> &LabelColumn {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows dropped at ingestion because of missing cells.
    pub fn dropped_rows(&self) -> usize {
        self.dropped_rows
    }
}

fn is_missing(cell: &str) -> bool {
    let trimmed = cell.trim();
    trimmed.is_empty() || trimmed.eq_ignore_ascii_case("nan") || trimmed.eq_ignore_ascii_case("na")
}

fn parse_real_cell(cell: &str, row: usize, column: &str) -> Result<Option<f64>> {
    if is_missing(cell) {
        return Ok(None);
    }
    let value: f64 = cell.trim().parse().map_err(|_| Error::CellParse {
        row,
        column: column.to_string(),
        value: cell.to_string(),
    })?;
    if !value.is_finite() {
        return Err(Error::CellParse {
            row,
            column: column.to_string(),
            value: cell.to_string(),
        });
    }
    Ok(Some(value))
}

/// Loads a headered CSV file under `schema`. Angle columns are converted to
/// radians, rows with missing cells are dropped and counted.
pub fn load_csv(path: impl AsRef<Path>, schema: &Schema) -> Result<TabularDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path.as_ref())?;
    let headers = reader.headers()?.clone();
    let mut positions = Vec::with_capacity(schema.columns.len());
    for column in &schema.columns {
        let pos = headers
            .iter()
            .position(|h| h == column.name)
            .ok_or_else(|| Error::MissingColumn(column.name.clone()))?;
        positions.push(pos);
    }

    let feature_specs: Vec<ColumnSpec> =
        schema.columns.iter().filter(|c| !c.label).cloned().collect();
    let label_spec = schema.columns.iter().find(|c| c.label).expect("schema has a label");

    let mut rows = Vec::new();
    let mut raw_labels: Vec<FeatureValue> = Vec::new();
    let mut dropped = 0usize;

    for (record_index, record) in reader.records().enumerate() {
        let record = record?;
        let row_no = record_index + 1;
        let mut row = Vec::with_capacity(feature_specs.len());
        let mut label_value = None;
        let mut missing = false;
        for (column, &pos) in schema.columns.iter().zip(&positions) {
            let cell = record.get(pos).unwrap_or("");
            let parsed = match &column.ty {
                ColumnType::Scalar { .. } => {
                    parse_real_cell(cell, row_no, &column.name)?.map(FeatureValue::Real)
                }
                ColumnType::Angle { unit } => parse_real_cell(cell, row_no, &column.name)?
                    .map(|v| FeatureValue::Real(unit.to_radians(v))),
                ColumnType::Symbol => {
                    if is_missing(cell) {
                        None
                    } else {
                        Some(FeatureValue::Symbol(cell.trim().to_string()))
                    }
                }
            };
            match parsed {
                None => {
                    missing = true;
                    break;
                }
                Some(value) => {
                    if column.label {
                        label_value = Some(value);
                    } else {
                        row.push(value);
                    }
                }
            }
        }
        if missing {
            dropped += 1;
            continue;
        }
        rows.push(row);
        raw_labels.push(label_value.expect("label column parsed"));
    }

    let labels = match &label_spec.ty {
        ColumnType::Symbol => {
            let names: Vec<String> = raw_labels
                .iter()
                .map(|v| v.as_symbol().unwrap().to_string())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let indices = raw_labels
                .iter()
                .map(|v| {
                    let s = v.as_symbol().unwrap();
                    names.binary_search_by(|n| n.as_str().cmp(s)).unwrap()
                })
                .collect();
            LabelColumn::Class { names, indices }
        }
        _ => LabelColumn::Real(raw_labels.iter().map(|v| v.as_real().unwrap()).collect()),
    };

    Ok(TabularDataset::new(feature_specs, rows, labels, dropped))
}

/// Synthetic regression task on the circle: angles drawn uniformly from
/// [0, 2 pi), labels cos(theta) plus Gaussian noise. One angle column named
/// `theta`, real label `y`.
pub fn synth_circular_regression(n: usize, noise_sd: f64, seed: u64) -> Result<TabularDataset> {
    if n == 0 {
        return Err(Error::SetTooSmall { min: 1, got: 0 });
    }
    if !(noise_sd >= 0.0) || !noise_sd.is_finite() {
        return Err(Error::NonFinite { what: "noise_sd", value: noise_sd });
    }
    let mut rng = child_rng(seed, "synth/regression");
    let noise = Normal::new(0.0, noise_sd)
        .map_err(|_| Error::NonFinite { what: "noise_sd", value: noise_sd })?;
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let theta = rng.gen::<f64>() * TAU;
        let y = theta.cos() + noise.sample(&mut rng);
        rows.push(vec![FeatureValue::Real(theta)]);
        labels.push(y);
    }
    Ok(TabularDataset::new(
        vec![ColumnSpec {
            name: "theta".into(),
            ty: ColumnType::Angle { unit: AngleUnit::Radians },
            label: false,
        }],
        rows,
        LabelColumn::Real(labels),
        0,
    ))
}

/// Synthetic classification task on the circle: class `c` of `k` owns the
/// arc [c 2 pi / k, (c + 1) 2 pi / k); samples are arc-uniform angles plus
/// wrapped Gaussian noise, labeled by the generating arc.
pub fn synth_circular_classification(
    n: usize,
    k: usize,
    noise_sd: f64,
    seed: u64,
) -> Result<TabularDataset> {
    if n == 0 {
        return Err(Error::SetTooSmall { min: 1, got: 0 });
    }
    if k < 2 {
        return Err(Error::SetTooSmall { min: 2, got: k });
    }
    if !(noise_sd >= 0.0) || !noise_sd.is_finite() {
        return Err(Error::NonFinite { what: "noise_sd", value: noise_sd });
    }
    let mut rng = child_rng(seed, "synth/classification");
    let noise = Normal::new(0.0, noise_sd)
        .map_err(|_| Error::NonFinite { what: "noise_sd", value: noise_sd })?;
    let arc = TAU / k as f64;
    let mut rows = Vec::with_capacity(n);
    let mut indices = Vec::with_capacity(n);
    for _ in 0..n {
        let class = rng.gen_range(0..k);
        let within = rng.gen::<f64>() * arc;
        let theta = (class as f64 * arc + within + noise.sample(&mut rng)).rem_euclid(TAU);
        rows.push(vec![FeatureValue::Real(theta)]);
        indices.push(class);
    }
    Ok(TabularDataset::new(
        vec![ColumnSpec {
            name: "theta".into(),
            ty: ColumnType::Angle { unit: AngleUnit::Radians },
            label: false,
        }],
        rows,
        LabelColumn::Class { names: (0..k).map(|c| c.to_string()).collect(), indices },
        0,
    ))
}

/// Bayes-optimal accuracy of the synthetic classification task, by numeric
/// integration of the wrapped Gaussian: the probability that noise keeps a
/// sample inside its generating arc.
pub fn bayes_accuracy_circular(k: usize, noise_sd: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::SetTooSmall { min: 2, got: k });
    }
    if !(noise_sd >= 0.0) || !noise_sd.is_finite() {
        return Err(Error::NonFinite { what: "noise_sd", value: noise_sd });
    }
    if noise_sd == 0.0 {
        return Ok(1.0);
    }
    let arc = TAU / k as f64;
    let std_cdf = |z: f64| 0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2));
    let stay_probability = |u: f64| -> f64 {
        (-3..=3)
            .map(|j| {
                let hi = (arc - u + TAU * j as f64) / noise_sd;
                let lo = (-u + TAU * j as f64) / noise_sd;
                std_cdf(hi) - std_cdf(lo)
            })
            .sum()
    };
    // Simpson's rule over the position inside the arc.
    let intervals = 2000usize;
    let h = arc / intervals as f64;
    let mut total = stay_probability(0.0) + stay_probability(arc);
    for i in 1..intervals {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        total += weight * stay_probability(i as f64 * h);
    }
    Ok(total * h / 3.0 / arc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitMode {
    Chronological,
    Random,
}

/// Splits into disjoint, exhaustive train and test sets. Chronological keeps
/// row order and cuts at floor(n * fraction); random shuffles indices with a
/// stream derived from `seed`.
pub fn split(
    dataset: &TabularDataset,
    train_fraction: f64,
    mode: SplitMode,
    seed: u64,
) -> Result<(TabularDataset, TabularDataset)> {
    if !train_fraction.is_finite() || train_fraction <= 0.0 || train_fraction >= 1.0 {
        return Err(Error::FractionOutOfRange(train_fraction));
    }
    let n = dataset.len();
    let n_train = (n as f64 * train_fraction).floor() as usize;
    let order: Vec<usize> = match mode {
        SplitMode::Chronological => (0..n).collect(),
        SplitMode::Random => {
            let mut indices: Vec<usize> = (0..n).collect();
            indices.shuffle(&mut child_rng(seed, "split"));
            indices
        }
    };
    let take = |selection: &[usize]| -> TabularDataset {
        let rows = selection.iter().map(|&i| dataset.rows[i].clone()).collect();
        let labels = match &dataset.labels {
            LabelColumn::Real(values) => {
                LabelColumn::Real(selection.iter().map(|&i| values[i]).collect())
            }
            LabelColumn::Class { names, indices } => LabelColumn::Class {
                names: names.clone(),
                indices: selection.iter().map(|&i| indices[i]).collect(),
            },
        };
        TabularDataset::new(dataset.features.clone(), rows, labels, 0)
    };
    Ok((take(&order[..n_train]), take(&order[n_train..])))
}

/// Evaluation results. `normalized_error` is filled by
/// [`Metrics::normalize_against`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Metrics {
    pub accuracy: Option<f64>,
    pub mse: Option<f64>,
    pub normalized_error: Option<f64>,
}

impl Metrics {
    /// The raw error this run is judged by: one minus accuracy for
    /// classification, mean squared error for regression.
    pub fn error(&self) -> f64 {
        if let Some(accuracy) = self.accuracy {
            1.0 - accuracy
        } else {
            self.mse.unwrap_or(f64::NAN)
        }
    }

    /// Divides this run's error by the reference run's error. A reference
    /// with zero error yields 1 when this error is zero too, else infinity.
    pub fn normalize_against(&mut self, reference: &Metrics) {
        let own = self.error();
        let base = reference.error();
        self.normalized_error = Some(if base == 0.0 {
            if own == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            own / base
        });
    }

    /// CSV of the populated fields, header `metric,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        if let Some(a) = self.accuracy {
            out.push_str(&format!("accuracy,{a}\n"));
        }
        if let Some(m) = self.mse {
            out.push_str(&format!("mse,{m}\n"));
        }
        if let Some(n) = self.normalized_error {
            out.push_str(&format!("normalized_error,{n}\n"));
        }
        out
    }
}

pub fn classification_metrics(predicted: &[usize], truth: &[usize]) -> Result<Metrics> {
    if truth.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    if predicted.len() != truth.len() {
        return Err(Error::DimensionMismatch { expected: truth.len(), got: predicted.len() });
    }
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(Metrics {
        accuracy: Some(hits as f64 / truth.len() as f64),
        ..Metrics::default()
    })
}

pub fn regression_metrics(predicted: &[f64], truth: &[f64]) -> Result<Metrics> {
    if truth.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    if predicted.len() != truth.len() {
        return Err(Error::DimensionMismatch { expected: truth.len(), got: predicted.len() });
    }
    let mse = predicted
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t) * (p - t))
        .sum::<f64>()
        / truth.len() as f64;
    Ok(Metrics { mse: Some(mse), ..Metrics::default() })
}

/// Accuracy of a trained classifier on encoded test samples.
pub fn evaluate_classification(
    model: &ClassificationModel,
    samples: &[(Hypervector, usize)],
) -> Result<Metrics> {
    if samples.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    let predicted: Vec<usize> = samples
        .iter()
        .map(|(encoded, _)| classify(model, encoded))
        .collect::<Result<_>>()?;
    let truth: Vec<usize> = samples.iter().map(|(_, label)| *label).collect();
    classification_metrics(&predicted, &truth)
}

/// Mean squared error of a trained regressor on encoded test samples.
pub fn evaluate_regression(
    model: &RegressionModel,
    samples: &[(Hypervector, f64)],
) -> Result<Metrics> {
    if samples.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    let predicted: Vec<f64> = samples
        .iter()
        .map(|(encoded, _)| predict(model, encoded))
        .collect::<Result<_>>()?;
    let truth: Vec<f64> = samples.iter().map(|(_, label)| *label).collect();
    regression_metrics(&predicted, &truth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const SCHEMA: &str = "\
# toy schema
theta: angle fraction
speed: scalar range 0 10
y: scalar label
";

    #[test]
    fn schema_parses_types_units_ranges_and_label() {
        let schema = Schema::parse(SCHEMA).unwrap();
        assert_eq!(schema.columns.len(), 3);
        assert_eq!(schema.columns[0].ty, ColumnType::Angle { unit: AngleUnit::FractionOfCycle });
        assert_eq!(schema.columns[1].ty, ColumnType::Scalar { range: Some((0.0, 10.0)) });
        assert!(schema.columns[2].label);
    }

    #[test]
    fn schema_rejects_malformed_input() {
        assert!(Schema::parse("x scalar label").is_err());
        assert!(Schema::parse("x: vector label").is_err());
        assert!(Schema::parse("x: scalar degrees label").is_err());
        assert!(Schema::parse("x: scalar\ny: scalar").is_err());
        assert!(Schema::parse("x: scalar label\ny: scalar label\nz: scalar").is_err());
        assert!(Schema::parse("x: angle label").is_err());
    }

    #[test]
    fn load_csv_parses_and_converts_units() {
        let csv_file = write_temp("theta,speed,y\n0.5,1.5,2.0\n0.25,2.0,3.0\n0,0,0\n");
        let schema = Schema::parse(SCHEMA).unwrap();
        let data = load_csv(csv_file.path(), &schema).unwrap();
        assert_eq!(data.len(), 3);
        assert_eq!(data.dropped_rows(), 0);
        // 0.5 of a cycle is pi radians.
        assert!((data.rows()[0][0].as_real().unwrap() - PI).abs() < 1e-12);
        match data.labels() {
            LabelColumn::Real(ys) => assert_eq!(ys, &vec![2.0, 3.0, 0.0]),
            _ => panic!("expected real labels"),
        }
    }

    #[test]
    fn load_csv_drops_missing_rows_and_counts_them() {
        let csv_file = write_temp("theta,speed,y\n0.5,NaN,2.0\n0.25,2.0,3.0\n,1.0,1.0\n");
        let schema = Schema::parse(SCHEMA).unwrap();
        let data = load_csv(csv_file.path(), &schema).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data.dropped_rows(), 2);
    }

    #[test]
    fn load_csv_reports_missing_columns_and_bad_cells() {
        let schema = Schema::parse(SCHEMA).unwrap();
        let wrong_header = write_temp("theta,y\n0.5,2.0\n");
        match load_csv(wrong_header.path(), &schema) {
            Err(Error::MissingColumn(name)) => assert_eq!(name, "speed"),
            other => panic!("expected missing column, got {other:?}"),
        }
        let garbage = write_temp("theta,speed,y\n0.5,fast,2.0\n");
        match load_csv(garbage.path(), &schema) {
            Err(Error::CellParse { row, column, value }) => {
                assert_eq!(row, 1);
                assert_eq!(column, "speed");
                assert_eq!(value, "fast");
            }
            other => panic!("expected cell parse error, got {other:?}"),
        }
    }

    #[test]
    fn load_csv_builds_sorted_class_labels() {
        let schema = Schema::parse("x: scalar\nc: symbol label\n").unwrap();
        let csv_file = write_temp("x,c\n1,red\n2,blue\n3,red\n");
        let data = load_csv(csv_file.path(), &schema).unwrap();
        match data.labels() {
            LabelColumn::Class { names, indices } => {
                assert_eq!(names, &vec!["blue".to_string(), "red".to_string()]);
                assert_eq!(indices, &vec![1, 0, 1]);
            }
            _ => panic!("expected class labels"),
        }
    }

    #[test]
    fn synth_regression_endpoints_without_noise() {
        let data = synth_circular_regression(200, 0.0, 3).unwrap();
        match data.labels() {
            LabelColumn::Real(ys) => {
                for (row, y) in data.rows().iter().zip(ys) {
                    let theta = row[0].as_real().unwrap();
                    assert!((y - theta.cos()).abs() < 1e-12);
                }
            }
            _ => panic!("expected real labels"),
        }
    }

    #[test]
    fn synth_regression_label_mean_near_zero() {
        let data = synth_circular_regression(10_000, 0.1, 5).unwrap();
        match data.labels() {
            LabelColumn::Real(ys) => {
                let mean = ys.iter().sum::<f64>() / ys.len() as f64;
                assert!(mean.abs() < 0.02, "label mean {mean}");
            }
            _ => panic!("expected real labels"),
        }
    }

    #[test]
    fn synth_generators_are_seed_deterministic() {
        let a = synth_circular_regression(50, 0.2, 9).unwrap();
        let b = synth_circular_regression(50, 0.2, 9).unwrap();
        assert_eq!(a.rows(), b.rows());
        let c = synth_circular_classification(50, 4, 0.2, 9).unwrap();
        let d = synth_circular_classification(50, 4, 0.2, 9).unwrap();
        assert_eq!(c.rows(), d.rows());
    }

    #[test]
    fn synth_classification_without_noise_stays_in_arc() {
        let k = 4;
        let data = synth_circular_classification(500, k, 0.0, 7).unwrap();
        let arc = TAU / k as f64;
        match data.labels() {
            LabelColumn::Class { indices, .. } => {
                for (row, &class) in data.rows().iter().zip(indices) {
                    let theta = row[0].as_real().unwrap();
                    assert_eq!((theta / arc).floor() as usize, class);
                }
            }
            _ => panic!("expected class labels"),
        }
    }

    #[test]
    fn synth_classification_matches_bayes_rate() {
        // Empirical in-arc frequency against the integral, k = 4, sd = 0.3.
        let k = 4;
        let data = synth_circular_classification(100_000, k, 0.3, 11).unwrap();
        let arc = TAU / k as f64;
        let mut stays = 0usize;
        match data.labels() {
            LabelColumn::Class { indices, .. } => {
                for (row, &class) in data.rows().iter().zip(indices) {
                    let theta = row[0].as_real().unwrap();
                    if (theta / arc).floor() as usize == class {
                        stays += 1;
                    }
                }
            }
            _ => panic!("expected class labels"),
        }
        let empirical = stays as f64 / data.len() as f64;
        let bayes = bayes_accuracy_circular(k, 0.3).unwrap();
        assert!((empirical - bayes).abs() < 0.005, "{empirical} vs {bayes}");
        assert_eq!(bayes_accuracy_circular(5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn synth_angle_distribution_is_uniform() {
        // Chi-square goodness of fit at n = 10000, well above p = 0.001.
        let data = synth_circular_regression(10_000, 0.1, 13).unwrap();
        let bins = 20usize;
        let mut counts = vec![0usize; bins];
        for row in data.rows() {
            let theta = row[0].as_real().unwrap();
            counts[((theta / TAU) * bins as f64) as usize % bins] += 1;
        }
        let expected = 10_000.0 / bins as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let diff = c as f64 - expected;
                diff * diff / expected
            })
            .sum();
        // 0.999 quantile of chi-square with 19 degrees of freedom.
        let critical = statrs::distribution::ChiSquared::new((bins - 1) as f64)
            .map(|dist| statrs::distribution::ContinuousCDF::inverse_cdf(&dist, 0.999))
            .unwrap();
        assert!(chi2 < critical, "chi2 {chi2} above critical {critical}");
    }

    #[test]
    fn chronological_split_cuts_in_order() {
        let data = synth_circular_regression(10, 0.0, 1).unwrap();
        let (train, test) = split(&data, 0.7, SplitMode::Chronological, 0).unwrap();
        assert_eq!(train.len(), 7);
        assert_eq!(test.len(), 3);
        assert_eq!(train.rows()[0], data.rows()[0]);
        assert_eq!(test.rows()[0], data.rows()[7]);
    }

    #[test]
    fn random_split_is_deterministic_and_exhaustive() {
        let data = synth_circular_regression(100, 0.1, 2).unwrap();
        let (train_a, test_a) = split(&data, 0.7, SplitMode::Random, 5).unwrap();
        let (train_b, test_b) = split(&data, 0.7, SplitMode::Random, 5).unwrap();
        assert_eq!(train_a.rows(), train_b.rows());
        assert_eq!(test_a.rows(), test_b.rows());

        let mut seen: Vec<f64> = train_a
            .rows()
            .iter()
            .chain(test_a.rows())
            .map(|r| r[0].as_real().unwrap())
            .collect();
        let mut all: Vec<f64> = data.rows().iter().map(|r| r[0].as_real().unwrap()).collect();
        seen.sort_by(f64::total_cmp);
        all.sort_by(f64::total_cmp);
        assert_eq!(seen, all);
    }

    #[test]
    fn split_rejects_bad_fractions() {
        let data = synth_circular_regression(10, 0.0, 1).unwrap();
        for f in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(split(&data, f, SplitMode::Random, 0).is_err());
        }
    }

    #[test]
    fn metrics_definitions() {
        let perfect = classification_metrics(&[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(perfect.accuracy, Some(1.0));
        assert_eq!(perfect.error(), 0.0);

        let m = regression_metrics(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(m.mse, Some(0.0));

        // Matching the reference accuracy normalizes to exactly one.
        let mut run = classification_metrics(&[0, 0, 1, 1], &[0, 1, 1, 0]).unwrap();
        let reference = classification_metrics(&[0, 1, 1, 0], &[0, 0, 1, 1]).unwrap();
        run.normalize_against(&reference);
        assert_eq!(run.normalized_error, Some(1.0));

        let mut zero_over_zero = regression_metrics(&[1.0], &[1.0]).unwrap();
        zero_over_zero.normalize_against(&regression_metrics(&[2.0], &[2.0]).unwrap());
        assert_eq!(zero_over_zero.normalized_error, Some(1.0));

        assert!(classification_metrics(&[], &[]).is_err());
    }

    #[test]
    fn constant_predictor_mse_equals_label_variance() {
        let data = synth_circular_regression(20_000, 0.1, 17).unwrap();
        let ys = match data.labels() {
            LabelColumn::Real(ys) => ys.clone(),
            _ => unreachable!(),
        };
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        let variance = ys.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>() / ys.len() as f64;
        let constant: Vec<f64> = vec![mean; ys.len()];
        let metrics = regression_metrics(&constant, &ys).unwrap();
        let mse = metrics.mse.unwrap();
        assert!((mse - variance).abs() / variance < 0.01);
    }

    #[test]
    fn metrics_csv_lists_populated_fields() {
        let mut m = regression_metrics(&[1.0, 2.0], &[1.5, 2.0]).unwrap();
        m.normalize_against(&regression_metrics(&[0.0, 0.0], &[1.0, 1.0]).unwrap());
        let csv = m.to_csv();
        assert!(csv.starts_with("metric,value\n"));
        assert!(csv.contains("mse,0.125"));
        assert!(csv.contains("normalized_error,0.125"));
    }
}
