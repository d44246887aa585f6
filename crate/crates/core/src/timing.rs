use chrono::{DateTime, Duration, Utc};

use crate::CoreError;

/// Whole seconds left before `started_at + duration_minutes`, clamped at 0.
pub fn remaining_seconds(
    now: DateTime<Utc>,
    started_at: DateTime<Utc>,
    duration_minutes: u32,
) -> Result<u64, CoreError> {
    if now < started_at {
        return Err(CoreError::ClockSkew);
    }
    let deadline = started_at + Duration::minutes(i64::from(duration_minutes));
    let left = (deadline - now).num_seconds();
    Ok(u64::try_from(left).unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use chrono::TimeZone;

    use super::*;

    fn at(h: u32, m: u32, s: u32) -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2018, 11, 21, h, m, s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(remaining_seconds(at(14, 30, 0), at(14, 0, 0), 60), Ok(1800));
        assert_eq!(remaining_seconds(at(15, 0, 0), at(14, 0, 0), 60), Ok(0));
        assert_eq!(remaining_seconds(at(16, 0, 0), at(14, 0, 0), 60), Ok(0));
        assert_eq!(
            remaining_seconds(at(13, 59, 59), at(14, 0, 0), 60),
            Err(CoreError::ClockSkew)
        );
    }

    #[test]
    fn sub_second_remainder_truncates() {
        let now = at(14, 59, 59) + Duration::milliseconds(500);
        assert_eq!(remaining_seconds(now, at(14, 0, 0), 60), Ok(0));
    }
}
