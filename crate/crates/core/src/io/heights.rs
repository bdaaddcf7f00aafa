use serde::{Deserialize, Serialize};

use super::ARTIFACT_VERSION;
use crate::polytope::{HeightFunction, LatticePoint, LatticeSimplexConfig};
use crate::scalar::{format_ratio, parse_ratio};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightEntry {
    pub m: LatticePoint,
    pub a: String,
}

/// `{seed, magnitude, version, entries: [{m, a}]}` with entries in
/// lexicographic order of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightsFile {
    pub seed: u64,
    pub magnitude: String,
    pub version: String,
    pub entries: Vec<HeightEntry>,
}

impl HeightsFile {
    pub fn new<S: Scalar>(h: &HeightFunction<S>) -> Self {
        let entries = LatticeSimplexConfig::get()
            .points()
            .iter()
            .zip(h.values())
            .map(|(m, a)| HeightEntry { m: *m, a: format_ratio(a) })
            .collect();
        HeightsFile {
            seed: h.seed,
            magnitude: format_ratio(&h.magnitude),
            version: ARTIFACT_VERSION.to_string(),
            entries,
        }
    }

    /// Entries may come in any order but must cover every boundary point
    /// exactly once.
    pub fn heights<S: Scalar>(&self) -> Result<HeightFunction<S>> {
        let cfg = LatticeSimplexConfig::get();
        let magnitude: S = parse_ratio(&self.magnitude).map_err(|e| Error::Parse(format!("magnitude: {e}")))?;
        let mut values: Vec<Option<S>> = vec![None; cfg.points().len()];
        for (i, e) in self.entries.iter().enumerate() {
            let idx = cfg
                .index_of(&e.m)
                .ok_or_else(|| Error::Parse(format!("entries[{i}].m: {:?} is not a boundary point", e.m)))?;
            if values[idx].is_some() {
                return Err(Error::Parse(format!("entries[{i}].m: {:?} repeated", e.m)));
            }
            values[idx] = Some(parse_ratio(&e.a).map_err(|err| Error::Parse(format!("entries[{i}].a: {err}")))?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Parse(format!("missing height for {:?}", cfg.points()[i]))))
            .collect::<Result<Vec<S>>>()?;
        HeightFunction::from_values(self.seed, magnitude, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("heights serialize")
    }

    /// Syntax errors carry their line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::make_heights;
    use crate::Rat;

    #[test]
    fn round_trip() {
        let h = make_heights::<Rat>(5, &Rat::new(1.into(), 100.into())).unwrap();
        let file = HeightsFile::new(&h);
        assert_eq!(file.entries.len(), 125);
        let back = HeightsFile::from_json(&file.to_json()).unwrap().heights::<Rat>().unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn errors_are_located() {
        let err = HeightsFile::from_json("{\"seed\": 1,\n \"magnitude\": }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let h = make_heights::<Rat>(5, &Rat::new(1.into(), 100.into())).unwrap();
        let mut file = HeightsFile::new(&h);
        file.entries[3].a = "1/0".into();
        assert!(file.heights::<Rat>().unwrap_err().to_string().contains("entries[3].a"));
        let mut file = HeightsFile::new(&h);
        file.entries[7].m = [0, 0, 0, 0];
        assert!(file.heights::<Rat>().unwrap_err().to_string().contains("entries[7].m"));
        let mut file = HeightsFile::new(&h);
        file.entries.pop();
        assert!(file.heights::<Rat>().is_err());
    }
}
