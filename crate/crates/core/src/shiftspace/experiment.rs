use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::TAU_ANG;
use crate::polygon::{PolygonSpec, VertexSpec};
use crate::sftlab::{Property, PropertyVerdict, Truth};
use crate::symdyn::forbidden_set;

use super::{
    remark_triangle, sft_approximation, subshift_hausdorff, three_symbol_approximant, DyadicDistance, EvenFamily,
    ShiftspaceError, SubshiftHandle, DEFAULT_BUDGET,
};

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    /// Sequence index, or `limit`.
    pub n: String,
    pub distance_exponent: Option<usize>,
    pub distance: f64,
    pub transitive: Truth,
    pub mixing: Truth,
    pub chain_transitive: Truth,
    pub entropy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub rows: Vec<ConvergenceRow>,
    pub limit: ConvergenceRow,
    /// All dynamical verdicts for the limit, bounded at `depth` when it is
    /// not an SFT.
    pub limit_verdicts: Vec<PropertyVerdict>,
    pub depth: usize,
}

impl LimitReport {
    /// Whether the distance column never increases.
    pub fn distances_non_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].distance <= w[0].distance)
    }

    pub fn verdict(&self, p: Property) -> Option<&PropertyVerdict> {
        self.limit_verdicts.iter().find(|v| v.property == p)
    }
}

fn row(
    n: String,
    x: &SubshiftHandle,
    d: Option<&DyadicDistance>,
    depth: usize,
    budget: usize,
) -> Result<ConvergenceRow, ShiftspaceError> {
    Ok(ConvergenceRow {
        n,
        distance_exponent: d.and_then(|d| d.exponent),
        distance: d.map_or(0.0, |d| d.value()),
        transitive: x.property(Property::Transitive, depth, budget)?.value,
        mixing: x.property(Property::Mixing, depth, budget)?.value,
        chain_transitive: x.property(Property::ChainTransitive, depth, budget)?.value,
        entropy: x.entropy()?,
    })
}

/// Distances from each element of `sequence` to `limit`, with verdicts.
/// Rows are numbered from 1.
pub fn limit_experiment(
    sequence: &[SubshiftHandle],
    limit: &SubshiftHandle,
    depth: usize,
    max_m: usize,
    budget: usize,
) -> Result<LimitReport, ShiftspaceError> {
    let mut rows = Vec::with_capacity(sequence.len());
    for (i, x) in sequence.iter().enumerate() {
        let d = subshift_hausdorff(x, limit, max_m, budget)?;
        rows.push(row((i + 1).to_string(), x, Some(&d), depth, budget)?);
    }
    let limit_verdicts = Property::DYNAMICAL
        .iter()
        .map(|&p| limit.property(p, depth, budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LimitReport {
        rows,
        limit: row("limit".into(), limit, None, depth, budget)?,
        limit_verdicts,
        depth,
    })
}

/// One row of a polygon-convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonRow {
    pub n: usize,
    /// `λ` per vertex, `ideal` for ideal vertices.
    pub vertices: String,
    /// Closure forbidden words present here but not in the limit's list.
    pub extra_forbidden: Vec<String>,
    /// Limit forbidden words missing here.
    pub missing_forbidden: Vec<String>,
    pub distance_exponent: Option<usize>,
    pub distance: f64,
}

fn vertex_summary(p: &PolygonSpec) -> String {
    p.vertices
        .iter()
        .map(|v| match v {
            VertexSpec::Ideal { .. } => "ideal".to_string(),
            v => v.lambda().map_or("?".into(), |l| l.to_string()),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Distances of the closure SFTs of `sequence` to that of `limit`.
pub fn polygon_convergence(
    sequence: &[PolygonSpec],
    limit: &PolygonSpec,
    max_m: usize,
    budget: usize,
) -> Result<Vec<PolygonRow>, ShiftspaceError> {
    let target = forbidden_set(limit)?;
    let target_words: BTreeSet<String> = target.closure.to_strings().into_iter().collect();
    let y = SubshiftHandle::sft("limit", target);
    let mut rows = Vec::with_capacity(sequence.len());
    for (i, p) in sequence.iter().enumerate() {
        if p.k() != limit.k() {
            return Err(ShiftspaceError::AlphabetMismatch(p.k() as u8, limit.k() as u8));
        }
        let s = forbidden_set(p)?;
        let words: BTreeSet<String> = s.closure.to_strings().into_iter().collect();
        let x = SubshiftHandle::sft(format!("polygon[{}]", i + 1), s);
        let d = subshift_hausdorff(&x, &y, max_m, budget)?;
        rows.push(PolygonRow {
            n: i + 1,
            vertices: vertex_summary(p),
            extra_forbidden: words.difference(&target_words).cloned().collect(),
            missing_forbidden: target_words.difference(&words).cloned().collect(),
            distance_exponent: d.exponent,
            distance: d.value(),
        });
    }
    Ok(rows)
}

/// Built-in experiment families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Approximants forbidding the first `n` words `2 1^{odd} 2`.
    EvenShift,
    /// The three-symbol family and its non-transitive limit.
    Ttoct,
    /// Polygons converging to a limit polygon; when `polygons` is empty the
    /// triangles with two ideal vertices and third angle `π/(n + 2)` are
    /// used, converging to the ideal triangle.
    PolygonSequence {
        #[serde(default)]
        polygons: Vec<serde_json::Value>,
        #[serde(default)]
        limit: Option<serde_json::Value>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default = "default_max_m")]
    pub max_m: usize,
    #[serde(default = "default_budget")]
    pub budget: usize,
}

fn default_n_max() -> usize {
    12
}
fn default_depth() -> usize {
    8
}
fn default_max_m() -> usize {
    24
}
fn default_budget() -> usize {
    DEFAULT_BUDGET
}

/// Runs a configured experiment and returns its table rows.
pub fn run_experiment(c: &ExperimentConfig) -> Result<Vec<ConvergenceRow>, ShiftspaceError> {
    match &c.family {
        Family::EvenShift => {
            let seq: Vec<SubshiftHandle> = (1..=c.n_max).map(|j| sft_approximation(&EvenFamily, j)).collect();
            let r = limit_experiment(&seq, &SubshiftHandle::even_shift(), c.depth, c.max_m, c.budget)?;
            Ok(r.rows.into_iter().chain(std::iter::once(r.limit)).collect())
        }
        Family::Ttoct => {
            let seq: Vec<SubshiftHandle> = (1..=c.n_max).map(three_symbol_approximant).collect();
            let r = limit_experiment(&seq, &SubshiftHandle::three_symbol_limit(), c.depth, c.max_m, c.budget)?;
            Ok(r.rows.into_iter().chain(std::iter::once(r.limit)).collect())
        }
        Family::PolygonSequence { polygons, limit } => {
            let seq: Vec<PolygonSpec> = if polygons.is_empty() {
                (1..=c.n_max)
                    .map(|n| remark_triangle(n, TAU_ANG))
                    .collect::<Result<_, _>>()?
            } else {
                polygons
                    .iter()
                    .map(|v| PolygonSpec::from_value(v.clone()))
                    .collect::<Result<_, _>>()?
            };
            let limit = match limit {
                Some(v) => PolygonSpec::from_value(v.clone())?,
                None => PolygonSpec::ideal(3),
            };
            let table = polygon_convergence(&seq, &limit, c.max_m, c.budget)?;
            let mut rows = Vec::with_capacity(table.len());
            for (r, p) in table.into_iter().zip(&seq) {
                let x = SubshiftHandle::sft("polygon", forbidden_set(p)?);
                let mut cr = row(r.n.to_string(), &x, None, c.depth, c.budget)?;
                cr.distance_exponent = r.distance_exponent;
                cr.distance = r.distance;
                rows.push(cr);
            }
            Ok(rows)
        }
    }
}

/// The convergence table as CSV.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n",
        "distance_exponent",
        "distance",
        "transitive",
        "mixing",
        "chain_transitive",
        "entropy",
    ])?;
    for r in rows {
        w.write_record([
            r.n.clone(),
            r.distance_exponent.map_or(String::new(), |m| m.to_string()),
            r.distance.to_string(),
            truth(r.transitive).into(),
            truth(r.mixing).into(),
            truth(r.chain_transitive).into(),
            format!("{:.12}", r.entropy),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn truth(t: Truth) -> &'static str {
    match t {
        Truth::True => "true",
        Truth::False => "false",
        Truth::Unknown => "unknown",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_symbol_limit_experiment() {
        let seq: Vec<SubshiftHandle> = (1..=5).map(three_symbol_approximant).collect();
        let r = limit_experiment(&seq, &SubshiftHandle::three_symbol_limit(), 8, 16, DEFAULT_BUDGET).unwrap();
        assert!(r.rows.iter().all(|row| row.transitive == Truth::True));
        assert!(r.distances_non_increasing());
        assert_eq!(r.limit.transitive, Truth::False);
        assert_eq!(r.verdict(Property::ChainTransitive).unwrap().value, Truth::True);
        let t = r.verdict(Property::Transitive).unwrap();
        assert_eq!(t.witness.len(), 2);
    }

    #[test]
    fn constant_sequence_is_at_distance_zero() {
        let x = sft_approximation(&EvenFamily, 3);
        let r = limit_experiment(&[x.clone(), x.clone()], &x, 4, 10, DEFAULT_BUDGET).unwrap();
        assert!(r
            .rows
            .iter()
            .all(|row| row.distance == 0.0 && row.distance_exponent.is_none()));
    }

    #[test]
    fn config_parsing_and_csv() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"family": "even_shift", "n_max": 3}"#).unwrap();
        let rows = run_experiment(&c).unwrap();
        assert_eq!(rows.len(), 4);
        let text = convergence_csv(&rows).unwrap();
        assert!(text.starts_with("n,distance_exponent,distance,transitive,mixing,chain_transitive,entropy\n"));
        assert!(text.contains("\n1,2,0.25,true,true,true,"));
        let c: ExperimentConfig =
            serde_json::from_str(r#"{"family": "polygon_sequence", "n_max": 2, "max_m": 8}"#).unwrap();
        assert_eq!(run_experiment(&c).unwrap().len(), 2);
    }
}
