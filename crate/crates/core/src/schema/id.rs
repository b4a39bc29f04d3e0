use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Stable identifiers for every postulate of the calculus.
///
/// `Lp*` are the fifteen propositional postulates of the leveled system,
/// `Q*` the quantifier postulates, `E*` the equality postulates and `Comp`
/// the comprehension schema. The four `Lp1*`/`EXIIReflexive` variants are the
/// single-level system's postulates where they differ from the leveled ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SchemaId {
    Lp1,
    Lp2,
    Lp3,
    Lp4,
    Lp5,
    Lp6,
    Lp7,
    Lp8,
    Lp9,
    Lp10,
    Lp11,
    Lp12,
    Lp13,
    Lp14,
    Lp15,
    QI,
    QII,
    QIII,
    QIV,
    QV,
    QVI,
    QVII,
    QVIII,
    EIX,
    EX,
    EXI,
    EXII,
    EXIII,
    EXIV,
    EXV,
    Comp,
    /// `A ∨ ¬A` if `A ∉ V`.
    Lp1Excluded,
    /// `B → (¬B → A)` if `B ∉ V`.
    Lp1Explosion,
    /// `A ∨ ¬A ∨ (A ∧ ¬A)`, unconditional.
    Lp1ExcludedFourth,
    /// `∀x(x ≠s x → x =w x)`.
    EXIIReflexive,
}

use SchemaId::*;

impl SchemaId {
    pub const ALL: [SchemaId; 35] = [
        Lp1,
        Lp2,
        Lp3,
        Lp4,
        Lp5,
        Lp6,
        Lp7,
        Lp8,
        Lp9,
        Lp10,
        Lp11,
        Lp12,
        Lp13,
        Lp14,
        Lp15,
        QI,
        QII,
        QIII,
        QIV,
        QV,
        QVI,
        QVII,
        QVIII,
        EIX,
        EX,
        EXI,
        EXII,
        EXIII,
        EXIV,
        EXV,
        Comp,
        Lp1Excluded,
        Lp1Explosion,
        Lp1ExcludedFourth,
        EXIIReflexive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Lp1 => "LP1",
            Lp2 => "LP2",
            Lp3 => "LP3",
            Lp4 => "LP4",
            Lp5 => "LP5",
            Lp6 => "LP6",
            Lp7 => "LP7",
            Lp8 => "LP8",
            Lp9 => "LP9",
            Lp10 => "LP10",
            Lp11 => "LP11",
            Lp12 => "LP12",
            Lp13 => "LP13",
            Lp14 => "LP14",
            Lp15 => "LP15",
            QI => "QI",
            QII => "QII",
            QIII => "QIII",
            QIV => "QIV",
            QV => "QV",
            QVI => "QVI",
            QVII => "QVII",
            QVIII => "QVIII",
            EIX => "EIX",
            EX => "EX",
            EXI => "EXI",
            EXII => "EXII",
            EXIII => "EXIII",
            EXIV => "EXIV",
            EXV => "EXV",
            Comp => "COMP",
            Lp1Excluded => "LP1_10",
            Lp1Explosion => "LP1_11",
            Lp1ExcludedFourth => "LP1_12",
            EXIIReflexive => "EXII_1",
        }
    }

    /// Postulates that are inference rules rather than axiom schemata. The
    /// checker handles them through dedicated justifications.
    pub fn is_rule(self) -> bool {
        matches!(self, QI | QIV | EX)
    }

    /// Schemata whose instances let an arbitrary formula follow from a
    /// contradiction.
    pub fn is_explosive(self) -> bool {
        matches!(self, Lp15 | Lp1Explosion | EX)
    }

    /// Schemata carrying a level parameter `n`.
    pub fn has_level(self) -> bool {
        matches!(self, Lp11 | Lp14 | QV | QVI | QVII | QVIII | EXIII | EXV)
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown schema identifier `{0}`")]
pub struct UnknownSchema(pub String);

impl FromStr for SchemaId {
    type Err = UnknownSchema;

    /// Accepts the canonical names plus the bare postulate numbers `1`–`15`
    /// and Roman numerals `I`–`XV`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(id) = SchemaId::ALL.iter().find(|id| id.as_str().eq_ignore_ascii_case(s)) {
            return Ok(*id);
        }
        if let Ok(n) = s.parse::<usize>() {
            if (1..=15).contains(&n) {
                return Ok(SchemaId::ALL[n - 1]);
            }
        }
        let roman = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV", "XV"];
        if let Some(i) = roman.iter().position(|r| *r == s) {
            return Ok(SchemaId::ALL[15 + i]);
        }
        Err(UnknownSchema(s.to_string()))
    }
}

impl From<SchemaId> for String {
    fn from(id: SchemaId) -> String {
        id.as_str().to_string()
    }
}

impl TryFrom<String> for SchemaId {
    type Error = UnknownSchema;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in SchemaId::ALL {
            assert_eq!(id.as_str().parse::<SchemaId>().unwrap(), id);
        }
    }

    #[test]
    fn aliases() {
        assert_eq!("1".parse::<SchemaId>().unwrap(), Lp1);
        assert_eq!("15".parse::<SchemaId>().unwrap(), Lp15);
        assert_eq!("II".parse::<SchemaId>().unwrap(), QII);
        assert_eq!("X".parse::<SchemaId>().unwrap(), EX);
        assert_eq!("XV".parse::<SchemaId>().unwrap(), EXV);
        assert_eq!("comp".parse::<SchemaId>().unwrap(), Comp);
        assert!("LP16".parse::<SchemaId>().is_err());
    }

    #[test]
    fn rules_are_marked() {
        let rules: Vec<_> = SchemaId::ALL.iter().filter(|s| s.is_rule()).collect();
        assert_eq!(rules, vec![&QI, &QIV, &EX]);
    }
}
