//! Fixed-point quantities used for rates, weights and scores.
//!
//! Percentages are held in hundredths (75.00% is `7500`) and weighted scores
//! as exact ratios, so pass/fail boundaries never depend on float rounding.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CoreError;

/// A percentage with two decimal places, `0.00..=100.00`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Percent(u32);

impl Percent {
    pub const ZERO: Percent = Percent(0);
    pub const HUNDRED: Percent = Percent(10_000);

    pub fn from_hundredths(hundredths: u32) -> Result<Self, CoreError> {
        if hundredths > 10_000 {
            return Err(CoreError::InvalidPercent(format!(
                "{}.{:02}",
                hundredths / 100,
                hundredths % 100
            )));
        }
        Ok(Self(hundredths))
    }

    pub fn whole(pct: u32) -> Self {
        Self::from_hundredths(pct.saturating_mul(100)).expect("whole percent above 100")
    }

    pub fn hundredths(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Parses a finite float, rejecting values with more than two decimals.
    pub fn from_f64(value: f64) -> Result<Self, CoreError> {
        if !value.is_finite() || value < 0.0 {
            return Err(CoreError::InvalidPercent(value.to_string()));
        }
        let scaled = value * 100.0;
        let rounded = scaled.round();
        if (scaled - rounded).abs() > 1e-6 || rounded > 10_000.0 {
            return Err(CoreError::InvalidPercent(value.to_string()));
        }
        Self::from_hundredths(rounded as u32)
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 100.0
    }

    pub(crate) fn checked_sum<I: IntoIterator<Item = Percent>>(iter: I) -> u64 {
        iter.into_iter().map(|p| u64::from(p.0)).sum()
    }
}

impl fmt::Display for Percent {
    /// Trailing zeros are trimmed: `75`, `75.5`, `75.25`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (whole, frac) = (self.0 / 100, self.0 % 100);
        match frac {
            0 => write!(f, "{whole}"),
            f2 if f2 % 10 == 0 => write!(f, "{whole}.{}", f2 / 10),
            f2 => write!(f, "{whole}.{f2:02}"),
        }
    }
}

impl FromStr for Percent {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_end_matches('%');
        let bad = || CoreError::InvalidPercent(s.to_string());
        let (whole, frac) = match s.split_once('.') {
            Some((w, f)) => (w, f),
            None => (s, ""),
        };
        if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 2 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: u32 = whole.parse().map_err(|_| bad())?;
        let frac: u32 = format!("{frac:0<2}").parse().map_err(|_| bad())?;
        Self::from_hundredths(whole.checked_mul(100).ok_or_else(bad)? + frac)
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Percent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PercentVisitor;

        impl Visitor<'_> for PercentVisitor {
            type Value = Percent;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a percentage between 0 and 100 with at most two decimals")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Percent, E> {
                Percent::from_f64(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Percent, E> {
                let v = u32::try_from(v).map_err(E::custom)?;
                Percent::from_hundredths(v.saturating_mul(100)).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Percent, E> {
                let v = u64::try_from(v).map_err(E::custom)?;
                self.visit_u64(v)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Percent, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(PercentVisitor)
    }
}

/// Score points with one decimal place, stored as tenths (`13.5` is `135`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Points(u32);

impl Points {
    pub const ZERO: Points = Points(0);

    pub fn from_tenths(tenths: u32) -> Self {
        Self(tenths)
    }

    pub fn tenths(self) -> u32 {
        self.0
    }

    /// True when these points reach `threshold` percent-points.
    pub fn reaches(self, threshold: Percent) -> bool {
        u64::from(self.0) * 10 >= u64::from(threshold.hundredths())
    }
}

impl std::ops::Add for Points {
    type Output = Points;

    fn add(self, rhs: Points) -> Points {
        Points(self.0 + rhs.0)
    }
}

impl std::iter::Sum for Points {
    fn sum<I: Iterator<Item = Points>>(iter: I) -> Points {
        iter.fold(Points::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Points {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.0 / 10, self.0 % 10)
    }
}

impl Serialize for Points {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(f64::from(self.0) / 10.0)
    }
}

impl<'de> Deserialize<'de> for Points {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        if !v.is_finite() || v < 0.0 {
            return Err(de::Error::custom("points must be a non-negative number"));
        }
        Ok(Points((v * 10.0).round() as u32))
    }
}

/// The exact value `raw / total * weight`, in percent-points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedScore {
    raw: u32,
    total: u32,
    weight: Percent,
}

impl WeightedScore {
    pub(crate) fn new(raw: u32, total: u32, weight: Percent) -> Self {
        debug_assert!(total > 0 && raw <= total);
        Self { raw, total, weight }
    }

    pub fn weight(&self) -> Percent {
        self.weight
    }

    /// Exact value as a reduced-free ratio `(numerator, denominator)` in
    /// hundredths of a point.
    pub fn ratio(&self) -> (u64, u64) {
        (
            u64::from(self.raw) * u64::from(self.weight.hundredths()),
            u64::from(self.total),
        )
    }

    /// Rounded to one decimal, half-up.
    pub fn rounded(&self) -> Points {
        let (num, den) = self.ratio();
        // value in tenths = num / (den * 10); half-up = floor((2 num + 10 den) / (20 den))
        let tenths = (2 * num + 10 * den) / (20 * den);
        Points(u32::try_from(tenths).expect("weighted score fits in u32"))
    }

    /// `"13.5 of 15%"`
    pub fn display_of_weight(&self) -> String {
        format!("{} of {}%", self.rounded(), self.weight)
    }
}

impl fmt::Display for WeightedScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rounded().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_parsing_and_display() {
        assert_eq!("75.00".parse::<Percent>().unwrap(), Percent::whole(75));
        assert_eq!("20".parse::<Percent>().unwrap().to_string(), "20");
        assert_eq!("75.5".parse::<Percent>().unwrap().to_string(), "75.5");
        assert_eq!("12.25%".parse::<Percent>().unwrap().hundredths(), 1225);
        assert!("100.01".parse::<Percent>().is_err());
        assert!("7.123".parse::<Percent>().is_err());
        assert!("-3".parse::<Percent>().is_err());
        assert!("".parse::<Percent>().is_err());
    }

    #[test]
    fn percent_json_accepts_numbers_and_strings() {
        let p: Percent = serde_json::from_str("75").unwrap();
        assert_eq!(p, Percent::whole(75));
        let p: Percent = serde_json::from_str("20.5").unwrap();
        assert_eq!(p.hundredths(), 2050);
        let p: Percent = serde_json::from_str("\"15.00\"").unwrap();
        assert_eq!(p, Percent::whole(15));
        assert!(serde_json::from_str::<Percent>("101").is_err());
        assert!(serde_json::from_str::<Percent>("0.001").is_err());
        assert_eq!(serde_json::to_string(&Percent::whole(15)).unwrap(), "15.0");
    }

    #[test]
    fn rounding_is_half_up() {
        // 1/8 * 1 = 0.125 points -> 0.1 ; 3/8 * 1 = 0.375 -> 0.4 ; 1/4 * 1 = 0.25 -> 0.3
        assert_eq!(
            WeightedScore::new(1, 8, Percent::whole(1)).rounded(),
            Points(1)
        );
        assert_eq!(
            WeightedScore::new(3, 8, Percent::whole(1)).rounded(),
            Points(4)
        );
        assert_eq!(
            WeightedScore::new(1, 4, Percent::whole(1)).rounded(),
            Points(3)
        );
        assert_eq!(
            WeightedScore::new(1, 3, Percent::whole(20)).rounded(),
            Points(67)
        );
    }

    #[test]
    fn points_threshold() {
        assert!(Points(750).reaches(Percent::whole(75)));
        assert!(!Points(749).reaches(Percent::whole(75)));
        assert!(Points(0).reaches(Percent::ZERO));
    }
}
