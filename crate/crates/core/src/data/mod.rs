//! Preference profiles: synthetic generation and file formats.

mod mallows;
pub mod preflib;

use std::io::{Read, Write};
use std::path::Path;

pub use mallows::{
    contaminate, mallows_normalizer, mallows_pmf, mallows_sample, sample_mallows, uniform_permutation,
    ContaminationKind, ContaminationSpec, MallowsModel,
};

use crate::error::{Error, Result};
use crate::ranking::{PairwiseMatrix, PartialRanking, Permutation, Ranking};

/// The ballots of `n` voters over a common set of `m` items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    m: usize,
    voters: Vec<Ranking>,
    /// Where the profile came from (file name, generator description).
    pub source: String,
    /// Display names of items `1..=m`.
    pub labels: Vec<String>,
}

impl PreferenceProfile {
    pub fn new(voters: Vec<Ranking>) -> Result<Self> {
        let m = crate::consensus::uniform_m(&voters)?;
        Ok(Self {
            m,
            voters,
            source: String::new(),
            labels: (1..=m).map(|i| i.to_string()).collect(),
        })
    }

    pub fn from_permutations(voters: Vec<Permutation>) -> Result<Self> {
        Self::new(voters.into_iter().map(Ranking::from).collect())
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.voters.len()
    }

    pub fn voters(&self) -> &[Ranking] {
        &self.voters
    }

    pub fn voters_mut(&mut self) -> &mut [Ranking] {
        &mut self.voters
    }

    pub fn has_partial(&self) -> bool {
        self.voters.iter().any(Ranking::is_partial)
    }

    /// All ballots as permutations, or `None` if any ballot is partial.
    pub fn complete(&self) -> Option<Vec<Permutation>> {
        self.voters.iter().map(|r| r.as_complete().cloned()).collect()
    }

    pub fn pairwise(&self) -> Result<PairwiseMatrix> {
        PairwiseMatrix::from_profile(&self.voters)
    }

    /// Writes `voter,item,rank` rows (voter zero-based, item and rank
    /// one-based, empty rank for unranked items).
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Config(format!("csv write: {e}"));
        out.write_record(["voter", "item", "rank"]).map_err(io)?;
        for (v, r) in self.voters.iter().enumerate() {
            for i in 0..self.m {
                let rank = match r {
                    Ranking::Complete(p) => p.rank(i).to_string(),
                    Ranking::Partial(p) => p.rank(i).map(|x| x.to_string()).unwrap_or_default(),
                };
                out.write_record([v.to_string(), (i + 1).to_string(), rank])
                    .map_err(io)?;
            }
        }
        out.flush().map_err(|e| Error::io("<csv>", e))
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
        let mut reader = csv::Reader::from_reader(r);
        for (line, rec) in reader.records().enumerate() {
            let bad = |msg: String| Error::Parse {
                path: "<profile csv>".into(),
                line: line + 2,
                msg,
            };
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            if rec.len() != 3 {
                return Err(bad(format!("expected 3 fields, got {}", rec.len())));
            }
            let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(format!("bad number `{s}`")));
            let (v, item) = (num(&rec[0])?, num(&rec[1])?);
            let rank = if rec[2].trim().is_empty() {
                None
            } else {
                Some(num(&rec[2])?)
            };
            if v > rows.len() {
                return Err(bad(format!("voter {v} out of sequence")));
            }
            if v == rows.len() {
                rows.push(Vec::new());
            }
            if item != rows[v].len() + 1 {
                return Err(bad(format!("item {item} out of sequence for voter {v}")));
            }
            rows[v].push(rank);
        }
        let voters = rows
            .into_iter()
            .map(|ranks| {
                if ranks.iter().all(Option::is_some) {
                    Permutation::new(ranks.into_iter().flatten().collect()).map(Ranking::from)
                } else {
                    PartialRanking::new(ranks).map(Ranking::from)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(voters)
    }

    /// Loads a profile, picking the format from the extension (`.soc`, `.soi`, `.csv`).
    pub fn load(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("")
            .to_ascii_lowercase();
        match ext.as_str() {
            "soc" | "soi" => preflib::parse_file(path),
            "csv" => {
                let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
                Ok(Self::read_csv(f)?.with_source(path.display().to_string()))
            }
            other => Err(Error::Unknown {
                kind: "profile format",
                name: other.to_string(),
            }),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("")
            .to_ascii_lowercase();
        let body = match ext.as_str() {
            "soc" | "soi" => {
                preflib::to_string(self, &path.file_name().unwrap_or_default().to_string_lossy()).into_bytes()
            }
            "csv" => {
                let mut buf = Vec::new();
                self.write_csv(&mut buf)?;
                buf
            }
            other => {
                return Err(Error::Unknown {
                    kind: "profile format",
                    name: other.to_string(),
                })
            }
        };
        std::fs::write(path, body).map_err(|e| Error::io(path, e))
    }
}
