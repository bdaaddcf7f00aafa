use std::collections::BTreeMap;
use std::io::Write;

use quintic_lines::arrangement::{
    adjacency_rank, conflict_graph, independent_set, ConflictGraph, IndependentSetMode, Ranks,
};
use quintic_lines::io::LineRecord;
use quintic_lines::search::TropicalLine;
use quintic_lines::tropical::QuinticCurveSet;
use quintic_lines::Rat;
use serde::Serialize;

use crate::config::{Provenance, RunConfig};

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Family {
    pub size: usize,
    /// Members of multiplicity 1 and 2.
    pub s3: usize,
    pub rp3: usize,
    /// Census indices.
    pub ids: Vec<usize>,
}

impl Family {
    fn new(ids: Vec<usize>, records: &[LineRecord]) -> Self {
        Family {
            size: ids.len(),
            s3: ids.iter().filter(|&&i| records[i].mult == 1).count(),
            rp3: ids.iter().filter(|&&i| records[i].mult == 2).count(),
            ids,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactFamily {
    pub limit: usize,
    pub components: usize,
    pub largest_component: usize,
    /// Present when every component is within the limit.
    pub family: Option<Family>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct AdmissibleReport {
    pub lines: usize,
    pub mult_counts: BTreeMap<u64, usize>,
    pub edges: usize,
    /// Edges from an admissible line to a line of another facet.
    pub cross_facet_edges: usize,
    pub greedy: Family,
    pub exact: Option<ExactFamily>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Analysis {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub config: RunConfig,
    pub nodes: usize,
    pub edges: usize,
    pub same_facet_edges: usize,
    pub cross_facet_edges: usize,
    /// `[facet_a, facet_b, edges]` for `facet_a < facet_b`.
    pub cross_facet_by_pair: Vec<[usize; 3]>,
    pub isolated: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub ranks: Ranks,
    pub full_rank_rational: bool,
    pub full_rank_gf2: bool,
    pub admissible: AdmissibleReport,
}

fn components(g: &ConflictGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for s in 0..g.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            for &w in g.neighbors(comp[k]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

// Maximum independent set component by component.
fn exact_family(g: &ConflictGraph, limit: usize) -> quintic_lines::Result<(ExactFamily, Option<Vec<usize>>)> {
    let comps = components(g);
    let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
    let report = ExactFamily { limit, components: comps.len(), largest_component: largest, family: None };
    if largest > limit {
        return Ok((report, None));
    }
    let mut set = Vec::new();
    for comp in &comps {
        let sub = independent_set(&g.induced(comp), IndependentSetMode::Exact { limit })?;
        set.extend(sub.into_iter().map(|i| comp[i]));
    }
    set.sort_unstable();
    Ok((report, Some(set)))
}

pub struct Analyzed {
    pub graph: ConflictGraph,
    pub report: Analysis,
}

pub fn analyze(
    config: &RunConfig,
    provenance: Provenance,
    lines: &[TropicalLine<Rat>],
    records: &[LineRecord],
    curves: &QuinticCurveSet<Rat>,
) -> quintic_lines::Result<Analyzed> {
    let g = conflict_graph(lines, curves);
    let cross = |a: usize, b: usize| lines[a].facet != lines[b].facet;
    let mut by_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, b) in g.edges().filter(|&(a, b)| cross(a, b)) {
        let (fa, fb) = (lines[a].facet.min(lines[b].facet), lines[a].facet.max(lines[b].facet));
        *by_pair.entry((fa, fb)).or_insert(0) += 1;
    }
    let cross_facet_edges: usize = by_pair.values().sum();
    let ranks = adjacency_rank(&g);

    let adm: Vec<usize> = (0..records.len()).filter(|&i| records[i].admissible).collect();
    let sub = g.induced(&adm);
    let lift = |set: Vec<usize>| set.into_iter().map(|i| adm[i]).collect::<Vec<_>>();
    let mut mult_counts = BTreeMap::new();
    for &i in &adm {
        *mult_counts.entry(records[i].mult).or_insert(0) += 1;
    }
    let greedy = Family::new(lift(independent_set(&sub, IndependentSetMode::Greedy)?), records);
    let exact = if adm.is_empty() {
        None
    } else {
        let (mut report, set) = exact_family(&sub, config.exact_limit)?;
        report.family = set.map(|s| Family::new(lift(s), records));
        Some(report)
    };
    let admissible = AdmissibleReport {
        lines: adm.len(),
        mult_counts,
        edges: sub.edge_count(),
        cross_facet_edges: g
            .edges()
            .filter(|&(a, b)| cross(a, b) && (records[a].admissible || records[b].admissible))
            .count(),
        greedy,
        exact,
    };
    let report = Analysis {
        provenance,
        config: config.clone(),
        nodes: g.len(),
        edges: g.edge_count(),
        same_facet_edges: g.edge_count() - cross_facet_edges,
        cross_facet_edges,
        cross_facet_by_pair: by_pair.into_iter().map(|((a, b), n)| [a, b, n]).collect(),
        isolated: g.isolated(),
        min_degree: (0..g.len()).map(|v| g.degree(v)).min().unwrap_or(0),
        max_degree: (0..g.len()).map(|v| g.degree(v)).max().unwrap_or(0),
        full_rank_rational: ranks.full_rational(),
        full_rank_gf2: ranks.full_gf2(),
        ranks,
        admissible,
    };
    Ok(Analyzed { graph: g, report })
}

/// `id_a,id_b` rows after a `#` provenance line.
pub fn write_edge_csv(w: impl Write, g: &ConflictGraph, provenance: &Provenance) -> anyhow::Result<()> {
    let mut w = w;
    writeln!(w, "# {}", provenance.comment())?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["id_a", "id_b"])?;
    for (a, b) in g.edges() {
        csv.serialize((a, b))?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_edge_csv(r: impl std::io::Read) -> anyhow::Result<Vec<(usize, usize)>> {
    let mut csv = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    Ok(csv.deserialize().collect::<Result<_, _>>()?)
}
