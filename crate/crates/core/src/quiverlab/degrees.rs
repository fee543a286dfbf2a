use serde::{Deserialize, Serialize};

use super::dsl::{Quiver, QuiverSpec};
use super::QuiverError;

/// A count observed at one family bound (`None` when the spec has no family
/// parameter).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub bound: Option<usize>,
    pub count: usize,
}

/// Three or more samples, each strictly larger than the previous one.
pub fn witnessed_growth<T: PartialOrd>(values: &[T]) -> bool {
    values.len() >= 3 && values.windows(2).all(|w| w[0] < w[1])
}

pub(crate) fn counts(samples: &[Sample]) -> Vec<usize> {
    samples.iter().map(|s| s.count).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDegrees {
    pub vertex: String,
    pub arrows_in: usize,
    pub arrows_out: usize,
    pub in_samples: Vec<Sample>,
    pub out_samples: Vec<Sample>,
    pub in_grows: bool,
    pub out_grows: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMultiplicity {
    pub source: String,
    pub target: String,
    pub count: usize,
    pub samples: Vec<Sample>,
    pub grows: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTables {
    pub bound: Option<usize>,
    pub vertices: Vec<VertexDegrees>,
    pub pairs: Vec<PairMultiplicity>,
}

/// Instances at `N`, `N+1`, `N+2`, or the single instance of a spec
/// without a family parameter.
pub(crate) fn sample_instances(spec: &QuiverSpec, n: Option<usize>) -> Result<Vec<(Option<usize>, Quiver)>, QuiverError> {
    if spec.family_param().is_none() {
        return Ok(vec![(None, spec.instantiate(None)?)]);
    }
    let base = match n {
        Some(0) => return Err(QuiverError::InvalidBound("family bound must be at least 1".into())),
        Some(b) => b,
        None => spec.default_bound().unwrap_or(1).max(1) as usize,
    };
    (base..=base + 2).map(|b| Ok((Some(b), spec.instantiate(Some(b))?))).collect()
}

pub(crate) fn sample(instances: &[(Option<usize>, Quiver)], f: impl Fn(&Quiver) -> usize) -> Vec<Sample> {
    instances.iter().map(|(bound, q)| Sample { bound: *bound, count: f(q) }).collect()
}

/// Arrow counts per vertex and per ordered vertex pair at bound `n`, with a
/// growth flag for each count obtained by re-instantiating at `n+1`, `n+2`.
pub fn degree_tables(spec: &QuiverSpec, n: Option<usize>) -> Result<DegreeTables, QuiverError> {
    let instances = sample_instances(spec, n)?;
    let (bound, first) = &instances[0];
    let vertices = first
        .vertices
        .iter()
        .map(|v| {
            let label = v.label.as_str();
            let in_samples = sample(&instances, |q| q.vertex(label).map_or(0, |i| q.in_degree(i)));
            let out_samples = sample(&instances, |q| q.vertex(label).map_or(0, |i| q.out_degree(i)));
            VertexDegrees {
                vertex: v.label.clone(),
                arrows_in: in_samples[0].count,
                arrows_out: out_samples[0].count,
                in_grows: witnessed_growth(&counts(&in_samples)),
                out_grows: witnessed_growth(&counts(&out_samples)),
                in_samples,
                out_samples,
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for (u, uv) in first.vertices.iter().enumerate() {
        for (w, wv) in first.vertices.iter().enumerate() {
            if first.arrows_between(u, w) == 0 {
                continue;
            }
            let samples = sample(&instances, |q| match (q.vertex(&uv.label), q.vertex(&wv.label)) {
                (Some(a), Some(b)) => q.arrows_between(a, b),
                _ => 0,
            });
            pairs.push(PairMultiplicity {
                source: uv.label.clone(),
                target: wv.label.clone(),
                count: samples[0].count,
                grows: witnessed_growth(&counts(&samples)),
                samples,
            });
        }
    }
    Ok(DegreeTables { bound: *bound, vertices, pairs })
}

impl DegreeTables {
    pub fn vertex(&self, label: &str) -> Option<&VertexDegrees> {
        self.vertices.iter().find(|v| v.vertex == label)
    }
}
