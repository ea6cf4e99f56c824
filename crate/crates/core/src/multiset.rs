//! Labeled multisets and the textual multiset grammar.
//!
//! ```text
//! multiset := item (',' item)*   |  <empty>
//! item     := LABEL ['^' MULT]   |  MULT        (bare form, all items)
//! MULT     := positive decimal   |  'inf'
//! ```
//!
//! A list made only of bare multiplicities is read as a primary
//! specification and gets synthesized labels `e1..en`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spec::PrimarySpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Unbounded,
}

impl Multiplicity {
    pub fn is_unbounded(self) -> bool {
        matches!(self, Multiplicity::Unbounded)
    }
}

impl Ord for Multiplicity {
    fn cmp(&self, other: &Self) -> Ordering {
        use Multiplicity::*;
        match (self, other) {
            (Unbounded, Unbounded) => Ordering::Equal,
            (Unbounded, Finite(_)) => Ordering::Greater,
            (Finite(_), Unbounded) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Multiplicity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Entry {
    pub label: String,
    pub multiplicity: Multiplicity,
}

/// A finite multiset in canonical order: unbounded entries first, then by
/// non-increasing multiplicity, ties broken by label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multiset {
    entries: Vec<Entry>,
}

impl Multiset {
    /// Builds a canonical multiset. Zero multiplicities are dropped.
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Multiplicity)>,
        S: Into<String>,
    {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (label, multiplicity) in entries {
            let label = label.into();
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            if multiplicity != Multiplicity::Finite(0) {
                out.push(Entry {
                    label,
                    multiplicity,
                });
            }
        }
        out.sort_by(|a, b| {
            b.multiplicity
                .cmp(&a.multiplicity)
                .then_with(|| a.label.cmp(&b.label))
        });
        Ok(Multiset { entries: out })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Number of distinct elements (the size of the base).
    pub fn base_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_unbounded(&self) -> bool {
        self.entries.iter().any(|e| e.multiplicity.is_unbounded())
    }

    /// The primary specification. Unbounded entries are replaced by
    /// `clamp_at`, which is exact for any count of size `m <= clamp_at`.
    pub fn primary_spec(&self, clamp_at: Option<u64>) -> Result<PrimarySpec> {
        let mut parts = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            match (e.multiplicity, clamp_at) {
                (Multiplicity::Finite(k), _) => parts.push(k),
                (Multiplicity::Unbounded, Some(c)) => parts.push(c),
                (Multiplicity::Unbounded, None) => {
                    return Err(Error::UnboundedWithoutClamp(e.label.clone()))
                }
            }
        }
        Ok(PrimarySpec::new(parts))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}^{}", e.label, e.multiplicity)?;
        }
        f.write_str("}")
    }
}

/// Result of parsing: the multiset plus the labels of any zero-multiplicity
/// entries that were dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub multiset: Multiset,
    pub stripped: Vec<String>,
}

enum Item<'a> {
    Bare(&'a str),
    Labeled(&'a str, Option<&'a str>),
}

pub fn parse_multiset(text: &str) -> Result<Parsed> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Parsed {
            multiset: Multiset::default(),
            stripped: Vec::new(),
        });
    }

    let mut items = Vec::new();
    for (idx, raw) in text.split(',').enumerate() {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(syntax(idx, "empty item"));
        }
        let item = match raw.split_once('^') {
            Some((label, mult)) => Item::Labeled(label.trim(), Some(mult.trim())),
            None if looks_like_mult(raw) => Item::Bare(raw),
            None => Item::Labeled(raw, None),
        };
        items.push(item);
    }

    let bare = items.iter().filter(|i| matches!(i, Item::Bare(_))).count();
    if bare != 0 && bare != items.len() {
        return Err(syntax(
            0,
            "cannot mix bare multiplicities with labeled items",
        ));
    }

    let mut entries = Vec::with_capacity(items.len());
    for (idx, item) in items.into_iter().enumerate() {
        let (label, mult) = match item {
            Item::Bare(m) => (format!("e{}", idx + 1), Some(m)),
            Item::Labeled(label, mult) => {
                if !is_label(label) {
                    return Err(syntax(idx, &format!("invalid label `{label}`")));
                }
                (label.to_string(), mult)
            }
        };
        let multiplicity = match mult {
            None => Multiplicity::Finite(1),
            Some(m) => parse_mult(&label, m)?,
        };
        entries.push((label, multiplicity));
    }

    let stripped = entries
        .iter()
        .filter(|(_, m)| *m == Multiplicity::Finite(0))
        .map(|(l, _)| l.clone())
        .collect();
    Ok(Parsed {
        multiset: Multiset::new(entries)?,
        stripped,
    })
}

impl FromStr for Multiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_multiset(s).map(|p| p.multiset)
    }
}

fn syntax(item: usize, reason: &str) -> Error {
    Error::Syntax {
        item: item + 1,
        reason: reason.to_string(),
    }
}

fn looks_like_mult(s: &str) -> bool {
    s.eq_ignore_ascii_case("inf")
        || s.strip_prefix(['-', '+'])
            .unwrap_or(s)
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit())
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && !s.eq_ignore_ascii_case("inf")
}

fn parse_mult(label: &str, m: &str) -> Result<Multiplicity> {
    if m.eq_ignore_ascii_case("inf") {
        return Ok(Multiplicity::Unbounded);
    }
    // Zero is accepted here and stripped later; negatives are rejected.
    if m.starts_with('-') {
        return Err(Error::BadMultiplicity {
            label: label.to_string(),
            mult: m.to_string(),
        });
    }
    m.parse::<u64>()
        .map(Multiplicity::Finite)
        .map_err(|_| Error::BadMultiplicity {
            label: label.to_string(),
            mult: m.to_string(),
        })
}
