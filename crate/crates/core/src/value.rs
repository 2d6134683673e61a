//! Extended real numbers used as filtration values and edge weights.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real number extended by explicit `-inf` / `+inf` sentinels.
///
/// Finite values never hold NaN or an IEEE infinity; the sentinels are
/// separate variants so that comparisons and negation are total and
/// visible in the code that relies on them.
#[derive(Debug, Clone, Copy)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Builds a value from an `f64`, mapping IEEE infinities onto the
    /// sentinels. Returns `None` for NaN.
    pub fn from_f64(x: f64) -> Option<ExtReal> {
        if x.is_nan() {
            None
        } else if x == f64::INFINITY {
            Some(ExtReal::PosInf)
        } else if x == f64::NEG_INFINITY {
            Some(ExtReal::NegInf)
        } else {
            Some(ExtReal::Finite(x))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// IEEE view of the value; sentinels become `±f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(x) => x,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    /// `|self - other|`, where two equal sentinels are at distance zero and
    /// a sentinel is infinitely far from anything else.
    pub fn abs_diff(self, other: ExtReal) -> f64 {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs(),
            (ExtReal::NegInf, ExtReal::NegInf) | (ExtReal::PosInf, ExtReal::PosInf) => 0.0,
            _ => f64::INFINITY,
        }
    }

    fn rank(self) -> u8 {
        match self {
            ExtReal::NegInf => 0,
            ExtReal::Finite(_) => 1,
            ExtReal::PosInf => 2,
        }
    }
}

impl From<f64> for ExtReal {
    /// Panics on NaN.
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x).expect("NaN is not an extended real")
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            // -0.0 and 0.0 compare equal; NaN cannot occur.
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b).unwrap(),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl std::hash::Hash for ExtReal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        if let ExtReal::Finite(x) = self {
            // normalize -0.0
            (x + 0.0).to_bits().hash(state);
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Finite(x) => ExtReal::Finite(-x),
            ExtReal::PosInf => ExtReal::NegInf,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseExtRealError(pub String);

impl fmt::Display for ParseExtRealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid extended real {:?}", self.0)
    }
}

impl std::error::Error for ParseExtRealError {}

impl FromStr for ExtReal {
    type Err = ParseExtRealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtReal::PosInf),
            "-inf" => Ok(ExtReal::NegInf),
            t => t
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(ExtReal::Finite)
                .ok_or_else(|| ParseExtRealError(s.to_string())),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::NegInf => serializer.serialize_str("-inf"),
            ExtReal::Finite(x) => serializer.serialize_f64(*x),
            ExtReal::PosInf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtRealVisitor;

        impl Visitor<'_> for ExtRealVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a finite number or one of \"inf\", \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                if v.is_finite() {
                    Ok(ExtReal::Finite(v))
                } else {
                    Err(E::custom("non-finite number"))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                Ok(ExtReal::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                Ok(ExtReal::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExtRealVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinels_order_totally() {
        let mut xs = vec![
            ExtReal::PosInf,
            ExtReal::Finite(3.0),
            ExtReal::NegInf,
            ExtReal::Finite(-1e300),
        ];
        xs.sort();
        assert_eq!(
            xs,
            vec![
                ExtReal::NegInf,
                ExtReal::Finite(-1e300),
                ExtReal::Finite(3.0),
                ExtReal::PosInf
            ]
        );
        assert_eq!(ExtReal::Finite(0.0), ExtReal::Finite(-0.0));
    }

    #[test]
    fn negation_swaps_sentinels() {
        assert_eq!(-ExtReal::PosInf, ExtReal::NegInf);
        assert_eq!(-ExtReal::Finite(2.5), ExtReal::Finite(-2.5));
    }

    #[test]
    fn json_uses_string_sentinels() {
        let xs = vec![ExtReal::NegInf, ExtReal::Finite(1.5), ExtReal::PosInf];
        let s = serde_json::to_string(&xs).unwrap();
        assert_eq!(s, r#"["-inf",1.5,"inf"]"#);
        let back: Vec<ExtReal> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, xs);
        assert!(serde_json::from_str::<ExtReal>("\"nan\"").is_err());
    }

    #[test]
    fn abs_diff_of_sentinels() {
        assert_eq!(ExtReal::NegInf.abs_diff(ExtReal::NegInf), 0.0);
        assert_eq!(ExtReal::NegInf.abs_diff(ExtReal::Finite(0.0)), f64::INFINITY);
        assert_eq!(ExtReal::Finite(1.0).abs_diff(ExtReal::Finite(-2.0)), 3.0);
    }
}
