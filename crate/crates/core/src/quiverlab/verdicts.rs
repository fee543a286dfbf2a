use std::fmt;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use petgraph::algo::{has_path_connecting, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comod::{Comodule, Side};

use super::degrees::{counts, degree_tables, sample, sample_instances, witnessed_growth, Sample};
use super::dsl::{PathMode, Quiver, QuiverSpec};
use super::paths::{compile, is_cyclic, paths_of};
use super::QuiverError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undecided => "undecided",
        })
    }
}

/// One row of an F-Noetherian sweep: the simple `S` maximizing
/// `[C/X;S] / [C;S]` at bound `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub bound: usize,
    pub simple: Option<String>,
    pub quotient_multiplicity: usize,
    pub base_multiplicity: usize,
    /// Exact ratio, `n` or `n/d`.
    pub ratio: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Arrow multiplicity between two vertices observed growing.
    VertexPair { source: String, target: String, samples: Vec<Sample> },
    /// Admissible paths into (or out of) a vertex observed growing; `paths`
    /// lists them at the last sample.
    PathFamily { vertex: String, direction: String, samples: Vec<Sample>, paths: Vec<String> },
    /// A cycle through `through` feeds infinitely many paths into (or out of)
    /// `vertex`.
    Cycle { vertex: String, direction: String, through: String },
    GrowthTable { quotient_by: String, side: Side, rows: Vec<GrowthRow> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub criterion: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub rule_chain: Vec<String>,
    pub notes: Vec<String>,
    pub assumptions: Vec<String>,
}

impl VerdictEntry {
    fn new(criterion: impl Into<String>, verdict: Verdict) -> Self {
        VerdictEntry {
            criterion: criterion.into(),
            verdict,
            witness: None,
            rule_chain: Vec::new(),
            notes: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    /// "fails" carries a witness and "holds" carries a rule chain.
    pub fn is_well_formed(&self) -> bool {
        match self.verdict {
            Verdict::Fails => self.witness.is_some(),
            Verdict::Holds => !self.rule_chain.is_empty(),
            Verdict::Undecided => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub side: Side,
    pub quotient_by: String,
    pub rows: Vec<GrowthRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub entries: Vec<VerdictEntry>,
    pub sweeps: Vec<SweepTable>,
}

impl VerdictReport {
    pub fn get(&self, criterion: &str) -> Option<&VerdictEntry> {
        self.entries.iter().find(|e| e.criterion == criterion)
    }

    pub fn verdict(&self, criterion: &str) -> Option<Verdict> {
        self.get(criterion).map(|e| e.verdict)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Family bound used for probes; defaults to the spec's declared value.
    pub bound: Option<usize>,
    /// Path-length bound for compiled truncations.
    pub depth: Option<usize>,
    /// Bounds for the F-Noetherian sweeps; defaults to `bound..=bound+2`.
    pub sweep: Option<RangeInclusive<usize>>,
    /// Vertex `x` of the quotient `C / span{x}`; defaults to the first vertex.
    pub quotient_vertex: Option<String>,
}

fn resolved_bound(spec: &QuiverSpec, n: Option<usize>) -> Option<usize> {
    spec.family_param()?;
    Some(n.unwrap_or_else(|| spec.default_bound().unwrap_or(1).max(1) as usize))
}

fn with_bound(entry: &mut VerdictEntry, spec: &QuiverSpec, n: Option<usize>) {
    if let (Some(p), Some(b)) = (spec.family_param(), n) {
        entry.notes.push(format!("growth sampled at {p} = {b}, {}, {}", b + 1, b + 2));
    }
}

/// Locally finite iff every ordered vertex pair carries a finite, bounded
/// number of arrows. Cross-checked against skew primitives at depths 1 and 2.
pub fn locally_finite_verdict(spec: &QuiverSpec, n: Option<usize>) -> Result<VerdictEntry, QuiverError> {
    let n = resolved_bound(spec, n);
    let tables = degree_tables(spec, n)?;
    cross_check_skew_primitives(spec, n)?;
    let rule = "pointed path coalgebra: locally finite iff each vertex pair carries finitely many arrows".to_string();
    let mut entry = match tables.pairs.iter().find(|p| p.grows) {
        Some(p) => {
            let mut e = VerdictEntry::new("locally_finite", Verdict::Fails);
            e.witness = Some(Witness::VertexPair {
                source: p.source.clone(),
                target: p.target.clone(),
                samples: p.samples.clone(),
            });
            e.rule_chain.push(rule);
            e
        }
        None => {
            let mut e = VerdictEntry::new("locally_finite", Verdict::Holds);
            e.rule_chain.push(rule);
            e.rule_chain.push("no vertex pair shows growing arrow multiplicity".into());
            e
        }
    };
    entry.notes.push("skew-primitive dimensions match arrow counts at depths 1 and 2".into());
    with_bound(&mut entry, spec, n);
    Ok(entry)
}

/// `dim P(u, w) = #arrows(u → w) + [u ≠ w]` at depths 1 and 2.
fn cross_check_skew_primitives(spec: &QuiverSpec, n: Option<usize>) -> Result<(), QuiverError> {
    for depth in [1, 2] {
        let t = compile(spec, n, Some(depth))?;
        let vertices: Vec<(String, usize)> = t
            .quiver
            .vertices
            .iter()
            .map(|v| Ok((v.label.clone(), t.vertex_position(&v.label)?)))
            .collect::<Result<_, QuiverError>>()?;
        for (ui, (u, pu)) in vertices.iter().enumerate() {
            for (wi, (w, pw)) in vertices.iter().enumerate() {
                let found = t.coalgebra.skew_primitives(*pu, *pw)?.dim();
                let expected = t.quiver.arrows_between(ui, wi) + usize::from(ui != wi);
                if found != expected {
                    return Err(QuiverError::Invariant(format!(
                        "skew primitives ({u}, {w}) at depth {depth}: dimension {found}, expected {expected}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn direction(side: Side) -> &'static str {
    match side {
        Side::Right => "into",
        Side::Left => "out of",
    }
}

/// The paths relevant to `side` at vertex `v`: into `v` for right, out of
/// `v` for left.
fn side_paths(basis: &super::PathBasis, side: Side, v: usize) -> Vec<usize> {
    match side {
        Side::Right => basis.ending_at(v),
        Side::Left => basis.starting_at(v),
    }
}

fn graph(q: &Quiver) -> (DiGraph<(), ()>, Vec<NodeIndex>) {
    let mut g = DiGraph::new();
    let nodes: Vec<NodeIndex> = q.vertices.iter().map(|_| g.add_node(())).collect();
    for a in &q.arrows {
        g.add_edge(nodes[a.source], nodes[a.target], ());
    }
    (g, nodes)
}

/// For all-paths mode on a cyclic quiver: a vertex with infinitely many
/// paths on the given side, and a cycle vertex responsible for it.
fn infinite_path_vertex(q: &Quiver, side: Side) -> Option<(usize, usize)> {
    let (g, nodes) = graph(q);
    let on_cycle: Vec<usize> = tarjan_scc(&g)
        .into_iter()
        .filter(|scc| scc.len() > 1 || q.arrows.iter().any(|a| a.source == scc[0].index() && a.target == scc[0].index()))
        .flatten()
        .map(|n| n.index())
        .collect();
    for v in 0..q.vertices.len() {
        for &c in &on_cycle {
            let (from, to) = match side {
                Side::Right => (nodes[c], nodes[v]),
                Side::Left => (nodes[v], nodes[c]),
            };
            if has_path_connecting(&g, from, to, None) {
                return Some((v, c));
            }
        }
    }
    None
}

/// Right semiperfect iff finitely many admissible paths end at each vertex;
/// left semiperfect iff finitely many start at each vertex.
pub fn semiperfect_verdict(spec: &QuiverSpec, side: Side, n: Option<usize>) -> Result<VerdictEntry, QuiverError> {
    let n = resolved_bound(spec, n);
    let criterion = format!("{side}_semiperfect");
    let rule = format!("{side} semiperfect iff finitely many admissible paths run {} each vertex", direction(side));
    let instances = sample_instances(spec, n)?;
    if spec.mode == PathMode::All && instances.iter().any(|(_, q)| is_cyclic(q)) {
        if let Some((v, c)) = instances.iter().find_map(|(_, q)| infinite_path_vertex(q, side).map(|vc| (q, vc))).map(|(q, (v, c))| (q.vertices[v].label.clone(), q.vertices[c].label.clone())) {
            let mut e = VerdictEntry::new(criterion, Verdict::Fails);
            e.witness = Some(Witness::Cycle { vertex: v, direction: direction(side).into(), through: c });
            e.rule_chain.push(rule);
            return Ok(e);
        }
    }
    let bases = instances
        .iter()
        .map(|(b, q)| Ok((*b, q, paths_of(q, None)?)))
        .collect::<Result<Vec<_>, QuiverError>>()?;
    let first = &bases[0].1;
    for vertex in &first.vertices {
        let label = vertex.label.as_str();
        let samples: Vec<Sample> = bases
            .iter()
            .map(|(bound, q, basis)| Sample {
                bound: *bound,
                count: q.vertex(label).map_or(0, |v| side_paths(basis, side, v).len()),
            })
            .collect();
        if witnessed_growth(&counts(&samples)) {
            let (_, q, basis) = bases.last().expect("nonempty");
            let v = q.vertex(label).expect("vertex persists");
            let paths = side_paths(basis, side, v).into_iter().map(|i| basis.paths[i].label.clone()).collect();
            let mut e = VerdictEntry::new(criterion, Verdict::Fails);
            e.witness = Some(Witness::PathFamily { vertex: label.into(), direction: direction(side).into(), samples, paths });
            e.rule_chain.push(rule);
            with_bound(&mut e, spec, n);
            return Ok(e);
        }
    }
    let mut e = VerdictEntry::new(criterion, Verdict::Holds);
    e.rule_chain.push(rule);
    e.rule_chain.push(format!("no vertex shows a growing family of paths {} it", direction(side)));
    with_bound(&mut e, spec, n);
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectiveHull {
    pub vertex: String,
    pub side: Side,
    pub bound: Option<usize>,
    /// Basis of the hull at `bound`.
    pub paths: Vec<String>,
    pub dim: usize,
    pub samples: Vec<Sample>,
    pub growing: bool,
}

/// `E(v)`: for right comodules the paths starting at `v`, for left
/// comodules the paths ending at `v`.
pub fn injective_indecomposable(
    spec: &QuiverSpec,
    vertex: &str,
    side: Side,
    n: Option<usize>,
    depth: Option<usize>,
) -> Result<InjectiveHull, QuiverError> {
    let n = resolved_bound(spec, n);
    let instances = sample_instances(spec, n)?;
    let hull = |q: &Quiver| -> Result<Vec<String>, QuiverError> {
        let basis = paths_of(q, depth)?;
        let v = q.vertex(vertex).ok_or_else(|| QuiverError::UnknownVertex(vertex.to_string()))?;
        let ids = match side {
            Side::Right => basis.starting_at(v),
            Side::Left => basis.ending_at(v),
        };
        Ok(ids.into_iter().map(|i| basis.paths[i].label.clone()).collect())
    };
    let paths = hull(&instances[0].1)?;
    let samples = sample(&instances, |q| hull(q).map_or(0, |p| p.len()));
    Ok(InjectiveHull {
        vertex: vertex.to_string(),
        side,
        bound: instances[0].0,
        dim: paths.len(),
        growing: witnessed_growth(&counts(&samples)),
        paths,
        samples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub table: SweepTable,
    pub entry: VerdictEntry,
}

fn growth_row(spec: &QuiverSpec, x: &str, side: Side, bound: usize, depth: Option<usize>) -> Result<(GrowthRow, Ratio<u64>), QuiverError> {
    let t = compile(spec, Some(bound), depth)?;
    let c = Comodule::regular(t.coalgebra.clone(), side);
    let xs = t.span_of([t.vertex_position(x)?]);
    let quotient = c.quotient(&xs)?;
    let mut best: Option<(GrowthRow, Ratio<u64>)> = None;
    for g in t.coalgebra.grouplikes() {
        let label = t.coalgebra.label(g);
        let base = c.multiplicity(label)?;
        if base == 0 {
            continue;
        }
        let top = quotient.multiplicity(label)?;
        let ratio = Ratio::new(top as u64, base as u64);
        if best.as_ref().is_none_or(|(_, r)| ratio > *r) {
            let row = GrowthRow {
                bound,
                simple: Some(label.to_string()),
                quotient_multiplicity: top,
                base_multiplicity: base,
                ratio: ratio.to_string(),
            };
            best = Some((row, ratio));
        }
    }
    Ok(best.unwrap_or_else(|| {
        let row = GrowthRow { bound, simple: None, quotient_multiplicity: 0, base_multiplicity: 0, ratio: "0".into() };
        (row, Ratio::from_integer(0))
    }))
}

/// Sweeps `max_S [C/X;S]/[C;S]` with `X = span{x}` over the family bounds in
/// `sweep`. Strict growth across at least three bounds refutes
/// F-Noetherianity on `side`; otherwise the entry stays undecided.
pub fn fnoetherian_witness(
    spec: &QuiverSpec,
    x: &str,
    side: Side,
    sweep: RangeInclusive<usize>,
    depth: Option<usize>,
) -> Result<SweepResult, QuiverError> {
    if sweep.is_empty() {
        return Err(QuiverError::InvalidBound("empty sweep".into()));
    }
    if *sweep.start() == 0 {
        return Err(QuiverError::InvalidBound("family bound must be at least 1".into()));
    }
    let bounds: Vec<usize> = sweep.clone().collect();
    let results = bounds
        .par_iter()
        .map(|&b| growth_row(spec, x, side, b, depth))
        .collect::<Result<Vec<_>, _>>()?;
    let ratios: Vec<Ratio<u64>> = results.iter().map(|(_, r)| *r).collect();
    let rows: Vec<GrowthRow> = results.into_iter().map(|(row, _)| row).collect();
    let table = SweepTable { side, quotient_by: x.to_string(), rows };
    let criterion = format!("{side}_fnoetherian");
    let entry = if witnessed_growth(&ratios) {
        let mut e = VerdictEntry::new(criterion, Verdict::Fails);
        e.witness = Some(Witness::GrowthTable { quotient_by: x.to_string(), side, rows: table.rows.clone() });
        e.rule_chain.push(format!(
            "sweep: max over simples S of [C/X;S]/[C;S] with X = span{{{x}}} grows strictly across {}..{} ⇒ not {side} F-Noetherian",
            sweep.start(),
            sweep.end()
        ));
        e
    } else {
        let mut e = VerdictEntry::new(criterion, Verdict::Undecided);
        e.notes.push(format!(
            "no growth of [C/X;S]/[C;S] with X = span{{{x}}} over {}..{}; absence of growth proves nothing",
            sweep.start(),
            sweep.end()
        ));
        e
    };
    Ok(SweepResult { table, entry })
}

struct Facts {
    lf: VerdictEntry,
    right_sp: VerdictEntry,
    left_sp: VerdictEntry,
    in_bounded: Result<(), String>,
    out_bounded: Result<(), String>,
}

impl Facts {
    fn lf_holds(&self) -> bool {
        self.lf.verdict == Verdict::Holds
    }

    /// The degree bound R2 needs for `side`: arrows into each vertex for
    /// left, arrows out of each vertex for right.
    fn degree_bound(&self, side: Side) -> &Result<(), String> {
        match side {
            Side::Left => &self.in_bounded,
            Side::Right => &self.out_bounded,
        }
    }

    /// The semiperfect side that R1 feeds into `side`.
    fn dual_sp(&self, side: Side) -> &VerdictEntry {
        match side {
            Side::Left => &self.right_sp,
            Side::Right => &self.left_sp,
        }
    }
}

fn r2_label(side: Side) -> &'static str {
    match side {
        Side::Left => "into",
        Side::Right => "out of",
    }
}

fn fnoetherian_entry(facts: &Facts, side: Side, sweep: SweepResult) -> Result<VerdictEntry, QuiverError> {
    let mut reasons = Vec::new();
    let mut gaps = Vec::new();
    let dual = side.opposite();
    if facts.dual_sp(side).verdict == Verdict::Holds {
        reasons.push(format!("R1: {dual} semiperfect ⇒ {side} F-Noetherian"));
    } else {
        gaps.push(format!("R1 needs {dual} semiperfect, which {}", facts.dual_sp(side).verdict));
    }
    match (facts.lf_holds(), facts.degree_bound(side)) {
        (true, Ok(())) => reasons.push(format!(
            "R2: locally finite with boundedly many arrows {} each vertex ⇒ {side} F-Noetherian",
            r2_label(side)
        )),
        (false, _) => gaps.push("R2 needs locally finite, which fails".into()),
        (true, Err(why)) => gaps.push(format!("R2 needs boundedly many arrows {} each vertex: {why}", r2_label(side))),
    }
    let swept = sweep.entry;
    if !reasons.is_empty() {
        if swept.verdict == Verdict::Fails {
            return Err(QuiverError::Invariant(format!(
                "{side} F-Noetherian holds by rule but the sweep refutes it"
            )));
        }
        let mut e = VerdictEntry::new(swept.criterion, Verdict::Holds);
        e.rule_chain = reasons;
        e.notes = swept.notes;
        return Ok(e);
    }
    let mut e = swept;
    e.notes.extend(gaps);
    Ok(e)
}

fn torsion_entry(facts: &Facts, side: Side) -> Result<VerdictEntry, QuiverError> {
    let criterion = format!("{side}_torsion_rat");
    let mut reasons = Vec::new();
    let mut gaps = Vec::new();
    for sp_side in [Side::Right, Side::Left] {
        let sp = match sp_side {
            Side::Right => &facts.right_sp,
            Side::Left => &facts.left_sp,
        };
        if sp.verdict == Verdict::Holds {
            reasons.push(format!("R1: {sp_side} semiperfect ⇒ torsion Rat functor on both sides"));
        } else {
            gaps.push(format!("R1 needs a semiperfect side; {sp_side} semiperfect {}", sp.verdict));
        }
    }
    match (facts.lf_holds(), facts.degree_bound(side)) {
        (true, Ok(())) => reasons.push(format!(
            "R2: locally finite with boundedly many arrows {} each vertex ⇒ {side} torsion Rat functor",
            r2_label(side)
        )),
        (true, Err(why)) => gaps.push(format!("R2 needs boundedly many arrows {} each vertex: {why}", r2_label(side))),
        (false, _) => {}
    }
    if !facts.lf_holds() {
        if !reasons.is_empty() {
            return Err(QuiverError::Invariant(format!("{side} torsion Rat both holds and fails by rule")));
        }
        let mut e = VerdictEntry::new(criterion, Verdict::Fails);
        e.witness = facts.lf.witness.clone();
        e.rule_chain.push("R3: not locally finite ⇒ finite-dimensional rational modules are not closed under extensions ⇒ no torsion Rat functor".into());
        return Ok(e);
    }
    if reasons.is_empty() {
        let mut e = VerdictEntry::new(criterion, Verdict::Undecided);
        e.notes = gaps;
        return Ok(e);
    }
    let mut e = VerdictEntry::new(criterion, Verdict::Holds);
    e.rule_chain = reasons;
    Ok(e)
}

fn coreflexive_entry(spec: &QuiverSpec, facts: &Facts, n: Option<usize>, depth: Option<usize>) -> Result<VerdictEntry, QuiverError> {
    if facts.lf_holds() {
        // The wedge of truncated coradical terms must agree with the ideal
        // product in the dual before anything is read off the truncation.
        let t = compile(spec, n, depth)?;
        let c = &t.coalgebra;
        let dual = c.dual_algebra()?;
        let (c0, c1) = (t.vertex_span(), t.length_span(1));
        for (u, w) in [(&c0, &c0), (&c0, &c1), (&c1, &c0)] {
            let via_dual = dual.ideal_product(&u.perp(), &w.perp())?.perp();
            if c.wedge(u, w)? != via_dual {
                return Err(QuiverError::Invariant("wedge and ideal product disagree on a compiled truncation".into()));
            }
        }
        let mut e = VerdictEntry::new("coreflexive", Verdict::Holds);
        e.rule_chain.push("R4: locally finite ⇒ finite-dimensional rational modules closed under extensions ⇒ coreflexive once C₀ is".into());
        e.assumptions.push("C₀ is coreflexive: the vertex set has non-measurable cardinality".into());
        return Ok(e);
    }
    let mut e = VerdictEntry::new("coreflexive", Verdict::Fails);
    e.witness = facts.lf.witness.clone();
    e.rule_chain.push("R3: not locally finite ⇒ finite-dimensional rational modules are not closed under extensions".into());
    e.rule_chain.push("R4: coreflexivity needs that closure".into());
    Ok(e)
}

fn first_growing(tables: &super::DegreeTables, incoming: bool) -> Result<(), String> {
    let hit = tables.vertices.iter().find(|v| if incoming { v.in_grows } else { v.out_grows });
    match hit {
        None => Ok(()),
        Some(v) => Err(format!("the number at {} grows with the family bound", v.vertex)),
    }
}

/// Runs every criterion and applies the rules R1–R4 in order.
pub fn torsion_rat_verdict(spec: &QuiverSpec, opts: &AnalysisOptions) -> Result<VerdictReport, QuiverError> {
    let n = resolved_bound(spec, opts.bound);
    let tables = degree_tables(spec, n)?;
    let facts = Facts {
        lf: locally_finite_verdict(spec, n)?,
        right_sp: semiperfect_verdict(spec, Side::Right, n)?,
        left_sp: semiperfect_verdict(spec, Side::Left, n)?,
        in_bounded: first_growing(&tables, true),
        out_bounded: first_growing(&tables, false),
    };
    let start = n.unwrap_or(1);
    let sweep = opts.sweep.clone().unwrap_or(start..=start + 2);
    let x = match &opts.quotient_vertex {
        Some(x) => x.clone(),
        None => spec.instantiate(Some(*sweep.start()))?.vertices[0].label.clone(),
    };
    let left_sweep = fnoetherian_witness(spec, &x, Side::Left, sweep.clone(), opts.depth)?;
    let right_sweep = fnoetherian_witness(spec, &x, Side::Right, sweep, opts.depth)?;
    let sweeps = vec![left_sweep.table.clone(), right_sweep.table.clone()];
    let entries = vec![
        facts.lf.clone(),
        facts.right_sp.clone(),
        facts.left_sp.clone(),
        fnoetherian_entry(&facts, Side::Left, left_sweep)?,
        fnoetherian_entry(&facts, Side::Right, right_sweep)?,
        torsion_entry(&facts, Side::Left)?,
        torsion_entry(&facts, Side::Right)?,
        coreflexive_entry(spec, &facts, n, opts.depth)?,
    ];
    if let Some(bad) = entries.iter().find(|e| !e.is_well_formed()) {
        return Err(QuiverError::Invariant(format!("verdict `{}` lacks its witness or rule chain", bad.criterion)));
    }
    Ok(VerdictReport { entries, sweeps })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::{builtin, parse_spec};
    use super::*;

    fn spec(text: &str) -> QuiverSpec {
        parse_spec(text, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn locally_finite_examples() {
        assert_eq!(locally_finite_verdict(&spec(builtin::EX1), Some(2)).unwrap().verdict, Verdict::Holds);
        assert_eq!(locally_finite_verdict(&spec(builtin::EX2), Some(3)).unwrap().verdict, Verdict::Holds);
        let e = locally_finite_verdict(&spec(builtin::UNBOUNDED_PAIR), Some(1)).unwrap();
        assert_eq!(e.verdict, Verdict::Fails);
        match e.witness {
            Some(Witness::VertexPair { source, target, .. }) => assert_eq!((source.as_str(), target.as_str()), ("a", "b")),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn semiperfect_examples() {
        let ex2 = spec(builtin::EX2);
        assert_eq!(semiperfect_verdict(&ex2, Side::Right, Some(3)).unwrap().verdict, Verdict::Holds);
        let left = semiperfect_verdict(&ex2, Side::Left, Some(3)).unwrap();
        assert_eq!(left.verdict, Verdict::Fails);
        assert!(matches!(left.witness, Some(Witness::PathFamily { ref vertex, .. }) if vertex == "a"));
        let ex1 = spec(builtin::EX1);
        for side in [Side::Left, Side::Right] {
            let e = semiperfect_verdict(&ex1, side, Some(2)).unwrap();
            assert!(matches!(e.witness, Some(Witness::PathFamily { ref vertex, .. }) if vertex == "a"));
        }
        let single = spec(builtin::SINGLE_VERTEX);
        for side in [Side::Left, Side::Right] {
            assert_eq!(semiperfect_verdict(&single, side, None).unwrap().verdict, Verdict::Holds);
        }
    }

    #[test]
    fn cyclic_all_mode_semiperfect() {
        let s = spec("mode all\nvertex a\nvertex b\nvertex c\narrow l: a -> a\narrow x: a -> b\narrow y: c -> a\n");
        let right = semiperfect_verdict(&s, Side::Right, None).unwrap();
        assert!(matches!(right.witness, Some(Witness::Cycle { ref vertex, .. }) if vertex == "a"));
        let left = semiperfect_verdict(&s, Side::Left, None).unwrap();
        assert!(matches!(left.witness, Some(Witness::Cycle { ref vertex, .. }) if vertex == "a"));
    }

    #[test]
    fn injective_hulls() {
        let ex2 = spec(builtin::EX2);
        let h = injective_indecomposable(&ex2, "b2", Side::Left, Some(3), None).unwrap();
        assert_eq!(h.paths, ["b2", "x2_1", "x2_2"]);
        assert!(!h.growing);
        let h = injective_indecomposable(&ex2, "a", Side::Right, Some(3), None).unwrap();
        assert_eq!(h.dim, 7);
        assert!(h.growing);
        let single = spec(builtin::SINGLE_VERTEX);
        assert_eq!(injective_indecomposable(&single, "a", Side::Right, None, None).unwrap().dim, 1);
        assert!(matches!(
            injective_indecomposable(&ex2, "q", Side::Right, Some(3), None),
            Err(QuiverError::UnknownVertex(_))
        ));
    }

    #[test]
    fn hulls_are_subcomodules() {
        let ex1 = spec(builtin::EX1);
        let t = compile(&ex1, Some(2), None).unwrap();
        for side in [Side::Left, Side::Right] {
            let c = Comodule::regular(t.coalgebra.clone(), side);
            for v in ["a", "b1", "b2"] {
                let h = injective_indecomposable(&ex1, v, side, Some(2), None).unwrap();
                let span = t.span_of_labels(&h.paths).unwrap();
                assert!(c.is_subcomodule(&span).unwrap());
                let sub = c.subcomodule(&span).unwrap();
                assert_eq!(sub.socle().unwrap().dim(), 1);
            }
        }
    }

    #[test]
    fn ex2_sweep_grows_on_the_right_only() {
        let ex2 = spec(builtin::EX2);
        let right = fnoetherian_witness(&ex2, "a", Side::Right, 1..=4, None).unwrap();
        let values: Vec<usize> = right.table.rows.iter().map(|r| r.quotient_multiplicity).collect();
        assert_eq!(values, vec![2, 3, 4, 5]);
        assert_eq!(right.entry.verdict, Verdict::Fails);
        let left = fnoetherian_witness(&ex2, "a", Side::Left, 1..=4, None).unwrap();
        assert!(left.table.rows.iter().all(|r| r.ratio == "1"));
        assert_eq!(left.entry.verdict, Verdict::Undecided);
    }

    #[test]
    fn short_sweeps_never_refute() {
        let ex2 = spec(builtin::EX2);
        let r = fnoetherian_witness(&ex2, "a", Side::Right, 1..=2, None).unwrap();
        assert_eq!(r.entry.verdict, Verdict::Undecided);
    }

    fn vector(report: &VerdictReport) -> Vec<(String, Verdict)> {
        report.entries.iter().map(|e| (e.criterion.clone(), e.verdict)).collect()
    }

    #[test]
    fn single_vertex_is_trivial() {
        let r = torsion_rat_verdict(&spec(builtin::SINGLE_VERTEX), &AnalysisOptions::default()).unwrap();
        assert!(r.entries.iter().all(|e| e.verdict == Verdict::Holds), "{:?}", vector(&r));
    }

    #[test]
    fn ex1_leaves_the_noetherian_sides_open() {
        let opts = AnalysisOptions { bound: Some(1), ..Default::default() };
        let r = torsion_rat_verdict(&spec(builtin::EX1), &opts).unwrap();
        assert_eq!(r.verdict("locally_finite"), Some(Verdict::Holds));
        for c in ["right_semiperfect", "left_semiperfect"] {
            assert_eq!(r.verdict(c), Some(Verdict::Fails));
        }
        for c in ["left_fnoetherian", "right_fnoetherian", "left_torsion_rat", "right_torsion_rat"] {
            assert_eq!(r.verdict(c), Some(Verdict::Undecided), "{c}");
            assert!(!r.get(c).unwrap().notes.is_empty());
        }
        assert_eq!(r.verdict("coreflexive"), Some(Verdict::Holds));
    }

    #[test]
    fn unbounded_pair_fails_torsion_by_r3() {
        let opts = AnalysisOptions { bound: Some(1), ..Default::default() };
        let r = torsion_rat_verdict(&spec(builtin::UNBOUNDED_PAIR), &opts).unwrap();
        for c in ["locally_finite", "left_torsion_rat", "right_torsion_rat", "coreflexive", "right_fnoetherian"] {
            assert_eq!(r.verdict(c), Some(Verdict::Fails), "{c}");
        }
        assert!(r.get("left_torsion_rat").unwrap().rule_chain[0].starts_with("R3"));
    }
}
