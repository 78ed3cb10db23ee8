//! Ordered, self-describing lists of invariant values.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Invariant family within a theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    I,
    Ii,
    Iii,
    Iv,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::I => "i",
            Family::Ii => "ii",
            Family::Iii => "iii",
            Family::Iv => "iv",
        }
    }
}

/// Exponent attached to an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Power {
    Alpha(usize),
    Beta(usize),
    /// Determinant entries carry no exponent.
    Det,
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Power::Alpha(a) => write!(f, "alpha={a}"),
            Power::Beta(b) => write!(f, "beta={b}"),
            Power::Det => f.write_str("det"),
        }
    }
}

/// Structured name of one invariant.
///
/// Renders as `T<theorem>.<family>[.<tag>].<power>`, e.g. `T1.iii.beta=1`
/// or `T2.i.S1RT23.alpha=0`. Ordering is theorem, family, tag, power.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantKey {
    pub theorem: u8,
    pub family: Family,
    pub tag: String,
    pub power: Power,
}

impl InvariantKey {
    pub fn new(theorem: u8, family: Family, tag: impl Into<String>, power: Power) -> Self {
        InvariantKey {
            theorem,
            family,
            tag: tag.into(),
            power,
        }
    }

    /// `T<theorem>.<family>`, used to aggregate orbit statistics.
    pub fn family_label(&self) -> String {
        format!("T{}.{}", self.theorem, self.family.as_str())
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}.{}", self.theorem, self.family.as_str())?;
        if !self.tag.is_empty() {
            write!(f, ".{}", self.tag)?;
        }
        write!(f, ".{}", self.power)
    }
}

impl Serialize for InvariantKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Power-range overrides. `None` selects the default bound of each family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct InvariantSettings {
    pub max_alpha: Option<usize>,
    pub max_beta: Option<usize>,
}

impl InvariantSettings {
    /// Range record for an alpha family with default bound `default` given by `rule`.
    pub fn alpha_range(&self, family: &str, default: usize, rule: &str) -> PowerRange {
        PowerRange {
            family: family.to_string(),
            power: "alpha",
            first: 0,
            last: self.alpha_or(default),
            rule: if self.max_alpha.is_some() {
                "max_alpha setting".into()
            } else {
                rule.into()
            },
        }
    }

    /// Range record for a beta family with default bound `default` given by `rule`.
    pub fn beta_range(&self, family: &str, default: usize, rule: &str) -> PowerRange {
        PowerRange {
            family: family.to_string(),
            power: "beta",
            first: 1,
            last: self.beta_or(default),
            rule: if self.max_beta.is_some() {
                "max_beta setting".into()
            } else {
                rule.into()
            },
        }
    }

    pub fn alpha_or(&self, default: usize) -> usize {
        self.max_alpha.unwrap_or(default)
    }

    pub fn beta_or(&self, default: usize) -> usize {
        self.max_beta.unwrap_or(default)
    }
}

/// Power range actually evaluated for one sub-family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerRange {
    pub family: String,
    pub power: &'static str,
    pub first: usize,
    pub last: usize,
    /// How `last` was chosen: the default bound formula or an override.
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FingerprintMetadata {
    pub dims: Vec<usize>,
    pub convention: String,
    pub settings: InvariantSettings,
    pub ranges: Vec<PowerRange>,
    /// Keys of families that do not apply to these dimensions.
    pub not_applicable: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantFingerprint {
    pub metadata: FingerprintMetadata,
    entries: Vec<(InvariantKey, f64)>,
}

impl InvariantFingerprint {
    /// Sorts entries into canonical order. Panics on duplicate keys.
    pub fn new(metadata: FingerprintMetadata, mut entries: Vec<(InvariantKey, f64)>) -> Self {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in entries.windows(2) {
            assert!(
                pair[0].0 != pair[1].0,
                "duplicate invariant key {}",
                pair[0].0
            );
        }
        InvariantFingerprint { metadata, entries }
    }

    pub fn entries(&self) -> &[(InvariantKey, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Looks an entry up by its rendered key.
    pub fn get(&self, key: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(k, _)| k.to_string() == key)
            .map(|&(_, v)| v)
    }
}

#[derive(Serialize)]
struct EntryView<'a> {
    key: &'a InvariantKey,
    value: f64,
}

impl Serialize for InvariantFingerprint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<EntryView<'_>> = self
            .entries
            .iter()
            .map(|(key, value)| EntryView { key, value: *value })
            .collect();
        let mut st = serializer.serialize_struct("InvariantFingerprint", 2)?;
        st.serialize_field("metadata", &self.metadata)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}
