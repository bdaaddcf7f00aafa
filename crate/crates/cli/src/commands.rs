use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::Context;
use quintic_lines::io::{matrix_market, CurvesFile, HeightsFile};
use quintic_lines::Heights;
use serde::Serialize;

use crate::analyze::{analyze, write_edge_csv};
use crate::census::{load_census, run_census, write_jsonl, CensusHeader, LoadedCensus};
use crate::config::{Provenance, RunConfig};
use crate::verify::{verify, FACET_WEIGHTED};
use crate::viz::export_viz;

/// Output of one subcommand: whether its invariants passed and the files it
/// wrote.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub files: Vec<PathBuf>,
}

fn write_json(path: &Path, value: &impl Serialize) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn out_dir(config: &RunConfig) -> anyhow::Result<&Path> {
    std::fs::create_dir_all(&config.out).with_context(|| format!("creating {}", config.out.display()))?;
    Ok(&config.out)
}

/// Heights from a file, or from the seed and magnitude of `config`. With a
/// file, `config` takes its seed and magnitude.
pub fn load_heights(config: &mut RunConfig, path: Option<&Path>) -> anyhow::Result<Heights> {
    let Some(path) = path else { return Ok(config.heights()?) };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let h: Heights = HeightsFile::from_json(&text)
        .and_then(|f| f.heights())
        .with_context(|| format!("parsing {}", path.display()))?;
    let p = Provenance::of(&h);
    config.seed = p.seed;
    config.magnitude = p.magnitude;
    Ok(h)
}

pub fn generate(config: &RunConfig) -> anyhow::Result<Outcome> {
    let h = config.heights()?;
    let path = out_dir(config)?.join("heights.json");
    std::fs::write(&path, HeightsFile::new(&h).to_json() + "\n")?;
    Ok(Outcome { passed: true, files: vec![path] })
}

pub fn census(config: &RunConfig, heights: Option<&Path>) -> anyhow::Result<Outcome> {
    let mut config = config.clone();
    let h = load_heights(&mut config, heights)?;
    let dir = out_dir(&config)?.to_path_buf();
    let census = config.install(|| run_census(&config, h))??;
    let lines = dir.join("lines.jsonl");
    let mut w = BufWriter::new(std::fs::File::create(&lines)?);
    write_jsonl(&mut w, &CensusHeader::new(&config, &census.heights), &census.records)?;
    drop(w);
    let summary = dir.join("summary.json");
    write_json(&summary, &census.summary)?;
    let curves = dir.join("curves.json");
    write_json(&curves, &CurvesFile::new(&census.heights, &census.curves))?;
    let s = &census.summary;
    println!(
        "lines {} weighted {} multiplicities {:?} admissible {}",
        s.lines, s.weighted_total, s.mult_counts, s.admissible
    );
    for f in &s.facets {
        println!("  facet {}: {} lines, weighted {}, generic {}", f.facet, f.lines, f.weighted, f.generic);
    }
    let passed = s.facets.iter().all(|f| f.generic && f.weighted == FACET_WEIGHTED);
    if !passed {
        eprintln!("some facet is not certified generic or misses the weighted count {FACET_WEIGHTED}");
    }
    Ok(Outcome { passed, files: vec![lines, summary, curves] })
}

// The census settings of the input, with the output options of `cli`.
fn census_config(loaded: &LoadedCensus, cli: &RunConfig) -> RunConfig {
    RunConfig {
        threads: cli.threads,
        out: cli.out.clone(),
        radius: cli.radius.clone(),
        exact_limit: cli.exact_limit,
        full: cli.full,
        ..loaded.header.config.clone()
    }
}

pub fn analyze_cmd(cli: &RunConfig, inputs: &[PathBuf]) -> anyhow::Result<Outcome> {
    let loaded = load_census(inputs)?;
    let config = census_config(&loaded, cli);
    let provenance = loaded.header.provenance.clone();
    let dir = out_dir(&config)?.to_path_buf();
    let analyzed =
        config.install(|| analyze(&config, provenance.clone(), &loaded.lines, &loaded.records, &loaded.curves))??;
    let csv = dir.join("graph.csv");
    write_edge_csv(BufWriter::new(std::fs::File::create(&csv)?), &analyzed.graph, &provenance)?;
    let mtx = dir.join("graph.mtx");
    std::fs::write(&mtx, matrix_market(&analyzed.graph, &[provenance.comment()]))?;
    let report = dir.join("analysis.json");
    write_json(&report, &analyzed.report)?;
    let r = &analyzed.report;
    println!(
        "graph {} nodes, {} edges ({} cross-facet), isolated {}",
        r.nodes,
        r.edges,
        r.cross_facet_edges,
        r.isolated.len()
    );
    println!(
        "rank over Q {}{} / {}, over GF(2) {}",
        r.ranks.rational,
        if r.ranks.rational_exact { "" } else { " (lower bound)" },
        r.nodes,
        r.ranks.gf2
    );
    let a = &r.admissible;
    println!(
        "admissible {} {:?}; greedy disjoint family {} = {} S3 + {} RP3",
        a.lines, a.mult_counts, a.greedy.size, a.greedy.s3, a.greedy.rp3
    );
    Ok(Outcome { passed: r.isolated.is_empty(), files: vec![csv, mtx, report] })
}

pub fn export_viz_cmd(cli: &RunConfig, inputs: &[PathBuf]) -> anyhow::Result<Outcome> {
    let loaded = load_census(inputs)?;
    let config = census_config(&loaded, cli);
    let files = export_viz(&config, &loaded.header.provenance, &loaded.curves, &loaded.lines, out_dir(&config)?)?;
    for f in &files {
        println!(
            "{}: {} lines, {} vertices (expected {}), {} elements (expected {})",
            f.path.display(),
            f.lines,
            f.vertices,
            f.expected_vertices,
            f.elements,
            f.expected_elements
        );
    }
    Ok(Outcome { passed: files.iter().all(|f| f.reconciled()), files: files.into_iter().map(|f| f.path).collect() })
}

pub fn verify_cmd(config: &RunConfig, heights: Option<&Path>) -> anyhow::Result<Outcome> {
    let mut config = config.clone();
    let h = load_heights(&mut config, heights)?;
    let report = config.install(|| verify(&config, h))??;
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    for c in &report.informational {
        println!("INFO {}: {}", c.name, c.detail);
    }
    let path = out_dir(&config)?.join("verify.json");
    write_json(&path, &report)?;
    Ok(Outcome { passed: report.passed, files: vec![path] })
}
