//! Feature sets: which of the optional constructors (inverse roles, nominals,
//! qualified number restrictions, the universal role, local reflexivity) a
//! language admits.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One optional language feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    /// Inverse roles `R⁻`.
    Inverse,
    /// Nominals `{a}`.
    Nominal,
    /// Qualified number restrictions `≥ n R.C` / `≤ n R.C`.
    Counting,
    /// The universal role `U`.
    Universal,
    /// Local reflexivity `∃r.Self`.
    SelfLoop,
}

impl Feature {
    pub const ALL: [Feature; 5] = [
        Feature::Inverse,
        Feature::Nominal,
        Feature::Counting,
        Feature::Universal,
        Feature::SelfLoop,
    ];

    fn bit(self) -> u8 {
        match self {
            Feature::Inverse => 1,
            Feature::Nominal => 2,
            Feature::Counting => 4,
            Feature::Universal => 8,
            Feature::SelfLoop => 16,
        }
    }

    /// The letter used in feature strings such as `"IOQ"`.
    pub fn letter(self) -> char {
        match self {
            Feature::Inverse => 'I',
            Feature::Nominal => 'O',
            Feature::Counting => 'Q',
            Feature::Universal => 'U',
            Feature::SelfLoop => 'S',
        }
    }
}

/// A subset of {I, O, Q, U, Self}. All 32 subsets are valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FeatureSet(u8);

impl FeatureSet {
    pub const EMPTY: FeatureSet = FeatureSet(0);
    pub const FULL: FeatureSet = FeatureSet(31);
    /// `{I, O, U}`: the features without counting or local reflexivity.
    pub const IOU: FeatureSet = FeatureSet(1 | 2 | 8);

    pub fn from_bits(bits: u8) -> Option<FeatureSet> {
        (bits <= 31).then_some(FeatureSet(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, f: Feature) -> bool {
        self.0 & f.bit() != 0
    }

    pub fn with(self, f: Feature) -> FeatureSet {
        FeatureSet(self.0 | f.bit())
    }

    pub fn without(self, f: Feature) -> FeatureSet {
        FeatureSet(self.0 & !f.bit())
    }

    pub fn is_subset(self, other: FeatureSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn inverse(self) -> bool {
        self.contains(Feature::Inverse)
    }
    pub fn nominal(self) -> bool {
        self.contains(Feature::Nominal)
    }
    pub fn counting(self) -> bool {
        self.contains(Feature::Counting)
    }
    pub fn universal(self) -> bool {
        self.contains(Feature::Universal)
    }
    pub fn self_loop(self) -> bool {
        self.contains(Feature::SelfLoop)
    }

    /// Every feature set, in increasing bit order.
    pub fn all() -> impl Iterator<Item = FeatureSet> {
        (0u8..32).map(FeatureSet)
    }

    /// Every subset of `self`.
    pub fn subsets(self) -> impl Iterator<Item = FeatureSet> {
        FeatureSet::all().filter(move |s| s.is_subset(self))
    }

    pub fn iter(self) -> impl Iterator<Item = Feature> {
        Feature::ALL.into_iter().filter(move |f| self.contains(*f))
    }
}

impl FromIterator<Feature> for FeatureSet {
    fn from_iter<T: IntoIterator<Item = Feature>>(iter: T) -> Self {
        iter.into_iter().fold(FeatureSet::EMPTY, FeatureSet::with)
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for feat in self.iter() {
            write!(f, "{}", feat.letter())?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown feature letter {0:?} (expected some of \"IOQUS\")")]
pub struct FeatureParseError(pub char);

impl FromStr for FeatureSet {
    type Err = FeatureParseError;

    /// Parses letters over `IOQUS`; `S` may also be written `Self`.
    /// Whitespace and commas are ignored, so `""`, `"IQ"`, `"I, Q"` and
    /// `"I Self"` are all accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = FeatureSet::EMPTY;
        let s = s.replace("Self", "S").replace("self", "S");
        for c in s.chars() {
            let f = match c.to_ascii_uppercase() {
                'I' => Feature::Inverse,
                'O' => Feature::Nominal,
                'Q' => Feature::Counting,
                'U' => Feature::Universal,
                'S' => Feature::SelfLoop,
                c if c.is_whitespace() || c == ',' => continue,
                _ => return Err(FeatureParseError(c)),
            };
            set = set.with(f);
        }
        Ok(set)
    }
}
