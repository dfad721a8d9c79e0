use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Cycle length to multiplicity. Lengths with zero multiplicity are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Spectrum(BTreeMap<u64, u64>);

/// One `(length, count)` row of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub length: u64,
    pub count: u64,
}

impl Spectrum {
    pub fn new() -> Self {
        Spectrum(BTreeMap::new())
    }

    pub fn add(&mut self, length: u64, count: u64) {
        if count > 0 {
            *self.0.entry(length).or_insert(0) += count;
        }
    }

    pub fn get(&self, length: u64) -> u64 {
        self.0.get(&length).copied().unwrap_or(0)
    }

    pub fn lengths(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&l, &c)| (l, c))
    }

    pub fn distinct_lengths(&self) -> usize {
        self.0.len()
    }

    pub fn total_cycles(&self) -> u64 {
        self.0.values().sum()
    }

    /// Sum of `length * count`: the number of states the cycles cover.
    pub fn state_count(&self) -> u128 {
        self.0.iter().map(|(&l, &c)| l as u128 * c as u128).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> Vec<SpectrumEntry> {
        self.iter()
            .map(|(length, count)| SpectrumEntry { length, count })
            .collect()
    }
}

impl FromIterator<(u64, u64)> for Spectrum {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut s = Spectrum::new();
        for (l, c) in iter {
            s.add(l, c);
        }
        s
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (l, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}:{c}")?;
        }
        write!(f, "}}")
    }
}

// Serialized as `[{"length": .., "count": ..}, ...]` sorted by length.
impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<SpectrumEntry>::deserialize(deserializer)?;
        Ok(entries.into_iter().map(|e| (e.length, e.count)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_counts_dropped() {
        let s: Spectrum = [(1, 1), (5, 0), (3, 2)].into_iter().collect();
        assert_eq!(s.distinct_lengths(), 2);
        assert_eq!(s.to_string(), "{1:1, 3:2}");
        assert_eq!(s.state_count(), 7);
    }

    #[test]
    fn json_shape() {
        let s: Spectrum = [(6, 2), (1, 1), (3, 1)].into_iter().collect();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"[{"length":1,"count":1},{"length":3,"count":1},{"length":6,"count":2}]"#
        );
    }

    proptest! {
        #[test]
        fn json_round_trip(pairs in prop::collection::btree_map(1u64..10_000, 1u64..1_000_000, 0..20)) {
            let s: Spectrum = pairs.into_iter().collect();
            let back: Spectrum = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
