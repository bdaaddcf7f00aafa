use std::path::PathBuf;

use quintic_lines::scalar::{format_ratio, parse_ratio};
use quintic_lines::{Rat, Scalar};
use serde::{Deserialize, Serialize};

/// Environment variable for the default output directory.
pub const OUT_ENV: &str = "QUINTIC_LINES_OUT";

pub const DEFAULT_MAGNITUDE: &str = "1/100";

/// Everything that determines the content of an output file. The thread
/// count and output directory do not, and are not serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub magnitude: String,
    pub facets: Vec<usize>,
    #[serde(skip)]
    pub threads: usize,
    #[serde(skip)]
    pub out: PathBuf,
    /// Leg truncation radius for OBJ export; chosen from the data if unset.
    pub radius: Option<String>,
    /// Largest component solved exactly by the independent set search.
    pub exact_limit: usize,
    /// Whether `verify` also runs the census-level checks.
    pub full: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            magnitude: DEFAULT_MAGNITUDE.into(),
            facets: vec![1, 2, 3, 4, 5],
            threads: 0,
            out: PathBuf::from("out"),
            radius: None,
            exact_limit: 128,
            full: false,
        }
    }
}

impl RunConfig {
    pub fn magnitude(&self) -> quintic_lines::Result<Rat> {
        parse_ratio(&self.magnitude)
    }

    /// Canonical form: magnitude as reduced `p/q`, facets sorted and
    /// deduplicated.
    pub fn normalized(mut self) -> anyhow::Result<Self> {
        self.magnitude = format_ratio(&self.magnitude()?);
        self.facets.sort_unstable();
        self.facets.dedup();
        if let Some(&f) = self.facets.iter().find(|&&f| !(1..=5).contains(&f)) {
            anyhow::bail!("facet {f} out of range 1..=5");
        }
        if let Some(r) = &self.radius {
            let r: Rat = parse_ratio(r)?;
            anyhow::ensure!(r > Rat::from_i64(0), "radius must be positive");
        }
        Ok(self)
    }

    pub fn heights(&self) -> quintic_lines::Result<quintic_lines::Heights> {
        quintic_lines::polytope::make_heights(self.seed, &self.magnitude()?)
    }

    /// Runs `f` on a pool with `threads` workers, or the default pool.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
        if self.threads == 0 {
            return Ok(f());
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(self.threads).build()?;
        Ok(pool.install(f))
    }
}

/// `{seed, magnitude, version}` written into every output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub magnitude: String,
    pub version: String,
}

impl Provenance {
    pub fn of(h: &quintic_lines::Heights) -> Self {
        Provenance {
            seed: h.seed,
            magnitude: format_ratio(&h.magnitude),
            version: quintic_lines::io::ARTIFACT_VERSION.into(),
        }
    }

    pub fn comment(&self) -> String {
        format!("seed={} magnitude={} version={}", self.seed, self.magnitude, self.version)
    }
}
