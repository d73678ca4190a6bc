//! PrefLib `.soc` (strict complete) and `.soi` (strict incomplete) orders.
//!
//! ```text
//! # NUMBER ALTERNATIVES: 3
//! # NUMBER VOTERS: 3
//! # ALTERNATIVE NAME 1: apple
//! 2: 1,3,2
//! 1: 2,1
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::PreferenceProfile;
use crate::error::{Error, Result};
use crate::ranking::{PartialRanking, Permutation, Ranking};

pub fn parse_file(path: &Path) -> Result<PreferenceProfile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_str(&text, path)
}

/// Parses PrefLib text; `path` is only used in diagnostics and provenance.
pub fn parse_str(text: &str, path: &Path) -> Result<PreferenceProfile> {
    let err = |line: usize, msg: String| Error::Parse {
        path: PathBuf::from(path),
        line,
        msg,
    };
    let mut declared_m: Option<usize> = None;
    let mut declared_n: Option<usize> = None;
    let mut data_type: Option<String> = None;
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    let mut body: Vec<(usize, usize, Vec<usize>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let Some((key, value)) = meta.split_once(':') else {
                continue;
            };
            let (key, value) = (key.trim().to_ascii_uppercase(), value.trim());
            let number = |v: &str| v.parse::<usize>().map_err(|_| err(ln, format!("bad number `{v}`")));
            match key.as_str() {
                "NUMBER ALTERNATIVES" => declared_m = Some(number(value)?),
                "NUMBER VOTERS" => declared_n = Some(number(value)?),
                "DATA TYPE" => data_type = Some(value.to_ascii_lowercase()),
                k => {
                    if let Some(id) = k.strip_prefix("ALTERNATIVE NAME") {
                        names.insert(number(id.trim())?, value.to_string());
                    }
                }
            }
            continue;
        }
        if line.contains('{') || line.contains('}') {
            return Err(err(
                ln,
                "tie groups `{...}` are not supported (only strict .soc/.soi orders)".into(),
            ));
        }
        let (count, order) = line
            .split_once(':')
            .ok_or_else(|| err(ln, format!("expected `count: a,b,...`, got `{line}`")))?;
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|_| err(ln, format!("bad count `{}`", count.trim())))?;
        let items = order
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| err(ln, format!("bad item id `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        body.push((ln, count, items));
    }

    let m = declared_m
        .or_else(|| (!names.is_empty()).then_some(names.len()))
        .ok_or_else(|| err(1, "missing `# NUMBER ALTERNATIVES`".into()))?;
    if m == 0 {
        return Err(err(1, "no alternatives".into()));
    }
    if !names.is_empty() && names.len() != m {
        return Err(err(
            1,
            format!("{} alternative names for {m} alternatives", names.len()),
        ));
    }
    // Declared ids are renumbered to 1..=m in increasing order.
    let ids: Vec<usize> = if names.is_empty() {
        (1..=m).collect()
    } else {
        names.keys().copied().collect()
    };
    let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i + 1)).collect();
    let strict_complete = data_type.as_deref() == Some("soc");

    let mut voters = Vec::new();
    for (ln, count, items) in body {
        let mut top = Vec::with_capacity(items.len());
        let mut seen = vec![false; m];
        for id in items {
            let item = *index.get(&id).ok_or_else(|| err(ln, format!("unknown item id {id}")))?;
            if std::mem::replace(&mut seen[item - 1], true) {
                return Err(err(ln, format!("item id {id} listed twice")));
            }
            top.push(item);
        }
        let ballot = if top.len() == m {
            let mut ranks = vec![0; m];
            for (pos, &item) in top.iter().enumerate() {
                ranks[item - 1] = pos + 1;
            }
            Ranking::Complete(Permutation::new(ranks).map_err(|e| err(ln, e.to_string()))?)
        } else {
            if strict_complete {
                return Err(err(ln, format!("soc file has an order of length {} < {m}", top.len())));
            }
            Ranking::Partial(PartialRanking::from_top(m, &top).map_err(|e| err(ln, e.to_string()))?)
        };
        voters.extend(std::iter::repeat_n(ballot, count));
    }
    if let Some(n) = declared_n {
        if n != voters.len() {
            return Err(err(
                0,
                format!("declared {n} voters but order lines sum to {}", voters.len()),
            ));
        }
    }
    if voters.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let mut profile = PreferenceProfile::new(voters)?.with_source(path.display().to_string());
    profile.labels = ids
        .iter()
        .map(|id| names.get(id).cloned().unwrap_or_else(|| id.to_string()))
        .collect();
    Ok(profile)
}

/// Serializes a profile in PrefLib form. Consecutive identical ballots share a
/// line, so reparsing reproduces the voter order exactly.
pub fn to_string(profile: &PreferenceProfile, file_name: &str) -> String {
    let kind = if profile.has_partial() { "soi" } else { "soc" };
    let mut runs: Vec<(usize, &Ranking)> = Vec::new();
    for r in profile.voters() {
        match runs.last_mut() {
            Some((count, last)) if *last == r => *count += 1,
            _ => runs.push((1, r)),
        }
    }
    let distinct: std::collections::HashSet<&Ranking> = profile.voters().iter().collect();
    let mut s = String::new();
    let _ = writeln!(s, "# FILE NAME: {file_name}");
    let _ = writeln!(s, "# TITLE: {}", profile.source);
    let _ = writeln!(s, "# DATA TYPE: {kind}");
    let _ = writeln!(s, "# NUMBER ALTERNATIVES: {}", profile.m());
    let _ = writeln!(s, "# NUMBER VOTERS: {}", profile.n());
    let _ = writeln!(s, "# NUMBER UNIQUE ORDERS: {}", distinct.len());
    for (i, label) in profile.labels.iter().enumerate() {
        let _ = writeln!(s, "# ALTERNATIVE NAME {}: {label}", i + 1);
    }
    for (count, r) in runs {
        let top = match r {
            Ranking::Complete(p) => p.to_ordering().items().to_vec(),
            Ranking::Partial(p) => p.top_items(),
        };
        let list: Vec<String> = top.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{count}: {}", list.join(","));
    }
    s
}
