use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use quintic_lines::io::{HeightEntry, HeightsFile, LineRecord};
use quintic_lines::search::{enumerate_facet, FacetCensus, TropicalLine, TypeAccounting, CURVE_EDGES};
use quintic_lines::tropical::{build_curve_set, QuinticCurveSet};
use quintic_lines::{Heights, Rat};
use serde::{Deserialize, Serialize};

use crate::config::{Provenance, RunConfig};

/// `(tuple, type)` pairs per combinatorial type in one facet.
pub const TUPLES_PER_TYPE: u64 = (CURVE_EDGES as u64).pow(4);

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FacetSummary {
    pub facet: usize,
    pub lines: usize,
    pub weighted: u64,
    pub mult_counts: BTreeMap<u64, usize>,
    pub admissible: usize,
    pub admissible_mult_counts: BTreeMap<u64, usize>,
    /// Geometrically identical lines found from distinct tuples.
    pub collisions: usize,
    /// No classification changes under an infinitesimal change of heights.
    pub generic: bool,
    pub ties: u64,
    pub classified: u64,
    pub expected_classified: u64,
    pub accounting: Vec<AccountingRow>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AccountingRow {
    #[serde(rename = "type")]
    pub ctype: String,
    pub pruned: u64,
    pub none: u64,
    pub family: u64,
    pub outside: u64,
    pub bad_orientation: u64,
    pub degenerate: u64,
    pub special: u64,
    pub lines: u64,
    pub ties: u64,
    pub total: u64,
}

impl From<&TypeAccounting> for AccountingRow {
    fn from(a: &TypeAccounting) -> Self {
        AccountingRow {
            ctype: a.ctype.clone(),
            pruned: a.pruned,
            none: a.none,
            family: a.family,
            outside: a.outside,
            bad_orientation: a.bad_orientation,
            degenerate: a.degenerate,
            special: a.special,
            lines: a.lines,
            ties: a.ties,
            total: a.total(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusSummary {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub config: RunConfig,
    pub threads: usize,
    pub facets: Vec<FacetSummary>,
    pub lines: usize,
    pub weighted_total: u64,
    pub mult_counts: BTreeMap<u64, usize>,
    pub admissible: usize,
    pub admissible_mult_counts: BTreeMap<u64, usize>,
    pub generic: bool,
    pub runtime_ms: u64,
}

pub struct Census {
    pub heights: Heights,
    pub curves: QuinticCurveSet<Rat>,
    pub runs: Vec<FacetCensus<Rat>>,
    /// All lines, facet by facet.
    pub lines: Vec<TropicalLine<Rat>>,
    pub records: Vec<LineRecord>,
    pub summary: CensusSummary,
}

fn counts<'a>(records: impl Iterator<Item = &'a LineRecord>) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.mult).or_insert(0) += 1;
    }
    out
}

/// Curves, lines, multiplicities and accounting for `config.facets`.
pub fn run_census(config: &RunConfig, heights: Heights) -> anyhow::Result<Census> {
    let start = Instant::now();
    let curves = build_curve_set(&heights)?;
    let mut runs = Vec::new();
    let mut facets = Vec::new();
    let mut lines = Vec::new();
    let mut records = Vec::new();
    for &f in &config.facets {
        let t = Instant::now();
        let run = enumerate_facet(f, &curves)?;
        let recs: Vec<LineRecord> = run.lines.iter().map(|l| LineRecord::new(l, &curves)).collect::<Result<_, _>>()?;
        facets.push(FacetSummary {
            facet: f,
            lines: recs.len(),
            weighted: recs.iter().map(|r| r.mult).sum(),
            mult_counts: counts(recs.iter()),
            admissible: recs.iter().filter(|r| r.admissible).count(),
            admissible_mult_counts: counts(recs.iter().filter(|r| r.admissible)),
            collisions: run.collisions,
            generic: run.is_generic(),
            ties: run.accounting.iter().map(|a| a.ties).sum(),
            classified: run.accounting.iter().map(TypeAccounting::total).sum(),
            expected_classified: 3 * TUPLES_PER_TYPE,
            accounting: run.accounting.iter().map(AccountingRow::from).collect(),
            runtime_ms: t.elapsed().as_millis() as u64,
        });
        eprintln!(
            "facet {f}: {} lines, weighted {} ({:.1?})",
            recs.len(),
            facets.last().unwrap().weighted,
            t.elapsed()
        );
        lines.extend(run.lines.iter().cloned());
        records.extend(recs);
        runs.push(run);
    }
    let summary = CensusSummary {
        provenance: Provenance::of(&heights),
        config: config.clone(),
        threads: rayon::current_num_threads(),
        lines: records.len(),
        weighted_total: records.iter().map(|r| r.mult).sum(),
        mult_counts: counts(records.iter()),
        admissible: records.iter().filter(|r| r.admissible).count(),
        admissible_mult_counts: counts(records.iter().filter(|r| r.admissible)),
        generic: facets.iter().all(|f| f.generic),
        facets,
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    Ok(Census { heights, curves, runs, lines, records, summary })
}

/// First line of a census JSONL file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusHeader {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub config: RunConfig,
    pub heights: Vec<HeightEntry>,
}

impl CensusHeader {
    pub fn new(config: &RunConfig, h: &Heights) -> Self {
        CensusHeader { provenance: Provenance::of(h), config: config.clone(), heights: HeightsFile::new(h).entries }
    }

    pub fn heights(&self) -> quintic_lines::Result<Heights> {
        HeightsFile {
            seed: self.provenance.seed,
            magnitude: self.provenance.magnitude.clone(),
            version: self.provenance.version.clone(),
            entries: self.heights.clone(),
        }
        .heights()
    }
}

pub fn write_jsonl(w: &mut impl Write, header: &CensusHeader, records: &[LineRecord]) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *w, header)?;
    writeln!(w)?;
    for r in records {
        serde_json::to_writer(&mut *w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_jsonl(r: impl BufRead, name: &str) -> anyhow::Result<(CensusHeader, Vec<LineRecord>)> {
    let mut lines = r.lines();
    let first = lines.next().with_context(|| format!("{name}: empty census file"))??;
    let header: CensusHeader = serde_json::from_str(&first).with_context(|| format!("{name}:1: bad header"))?;
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line).with_context(|| format!("{name}:{}: bad line record", i + 2))?);
    }
    Ok((header, records))
}

/// A census read back from one or more JSONL files, with the curves of its
/// heights rebuilt.
pub struct LoadedCensus {
    pub header: CensusHeader,
    pub heights: Heights,
    pub curves: QuinticCurveSet<Rat>,
    pub records: Vec<LineRecord>,
    pub lines: Vec<TropicalLine<Rat>>,
}

/// Files from runs over disjoint facet sets with equal heights merge into
/// one census, ordered by facet.
pub fn load_census(paths: &[impl AsRef<Path>]) -> anyhow::Result<LoadedCensus> {
    let mut header: Option<CensusHeader> = None;
    let mut records: Vec<LineRecord> = Vec::new();
    for path in paths {
        let path = path.as_ref();
        let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let (h, recs) = read_jsonl(std::io::BufReader::new(file), &path.display().to_string())?;
        match &mut header {
            None => header = Some(h),
            Some(acc) => {
                anyhow::ensure!(
                    acc.heights == h.heights,
                    "{}: heights differ from the first census file",
                    path.display()
                );
                if let Some(f) = h.config.facets.iter().find(|f| acc.config.facets.contains(f)) {
                    anyhow::bail!("{}: facet {f} appears in more than one census file", path.display());
                }
                acc.config.facets.extend(&h.config.facets);
                acc.config.facets.sort_unstable();
            }
        }
        records.extend(recs);
    }
    let header = header.context("no census files given")?;
    records.sort_by_key(|r| r.facet);
    let heights = header.heights()?;
    let curves = build_curve_set(&heights)?;
    let lines = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            anyhow::ensure!(
                r.matches_curves(&curves),
                "record {i}: legs do not match the curves of the header heights"
            );
            Ok(r.line::<Rat>()?)
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(LoadedCensus { header, heights, curves, records, lines })
}
