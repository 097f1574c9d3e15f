//! Durations, rate conversion, annualized failure rates, and the nines scale.
//!
//! Everything downstream works in a single canonical unit (seconds). The
//! calendar conversions are fixed constants: 1 min = 60 s, 1 h = 3600 s,
//! 1 day = 86400 s, 1 month = 30 days, 1 year = 365 days.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const SECONDS_PER_MINUTE: f64 = 60.0;
pub const SECONDS_PER_HOUR: f64 = 3_600.0;
pub const SECONDS_PER_DAY: f64 = 86_400.0;
pub const SECONDS_PER_MONTH: f64 = 30.0 * SECONDS_PER_DAY;
pub const SECONDS_PER_YEAR: f64 = 365.0 * SECONDS_PER_DAY;

/// Availabilities this close to 1 are reported as the capped sentinel
/// [`NINES_CAP`]; beyond this, `-log10(1 - a)` is float noise.
pub const NINES_OUTAGE_FLOOR: f64 = 1e-12;

/// Largest nines count ever reported.
pub const NINES_CAP: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeUnit {
    Second,
    Minute,
    Hour,
    Day,
    Month,
    Year,
}

impl TimeUnit {
    /// Exact conversion factor to seconds.
    pub fn seconds(self) -> f64 {
        match self {
            TimeUnit::Second => 1.0,
            TimeUnit::Minute => SECONDS_PER_MINUTE,
            TimeUnit::Hour => SECONDS_PER_HOUR,
            TimeUnit::Day => SECONDS_PER_DAY,
            TimeUnit::Month => SECONDS_PER_MONTH,
            TimeUnit::Year => SECONDS_PER_YEAR,
        }
    }

    /// Accepted unit tokens: `s`, `min`, `h`, `hours`, `d`, `days`,
    /// `months`, `years`. Case-sensitive; nothing else parses.
    pub fn from_token(token: &str) -> Option<TimeUnit> {
        match token {
            "s" => Some(TimeUnit::Second),
            "min" => Some(TimeUnit::Minute),
            "h" | "hours" => Some(TimeUnit::Hour),
            "d" | "days" => Some(TimeUnit::Day),
            "months" => Some(TimeUnit::Month),
            "years" => Some(TimeUnit::Year),
            _ => None,
        }
    }

    fn token(self) -> &'static str {
        match self {
            TimeUnit::Second => "s",
            TimeUnit::Minute => "min",
            TimeUnit::Hour => "h",
            TimeUnit::Day => "d",
            TimeUnit::Month => "months",
            TimeUnit::Year => "years",
        }
    }
}

/// A non-negative span of time tagged with the unit it was written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Duration {
    value: f64,
    unit: TimeUnit,
}

impl Duration {
    pub fn new(value: f64, unit: TimeUnit) -> Result<Duration, Error> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::validation(
                "duration",
                format!("value must be finite and non-negative, got {value}"),
            ));
        }
        Ok(Duration { value, unit })
    }

    pub fn seconds(value: f64) -> Result<Duration, Error> {
        Duration::new(value, TimeUnit::Second)
    }

    pub fn minutes(value: f64) -> Result<Duration, Error> {
        Duration::new(value, TimeUnit::Minute)
    }

    pub fn hours(value: f64) -> Result<Duration, Error> {
        Duration::new(value, TimeUnit::Hour)
    }

    pub fn days(value: f64) -> Result<Duration, Error> {
        Duration::new(value, TimeUnit::Day)
    }

    pub fn months(value: f64) -> Result<Duration, Error> {
        Duration::new(value, TimeUnit::Month)
    }

    pub fn years(value: f64) -> Result<Duration, Error> {
        Duration::new(value, TimeUnit::Year)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn unit(&self) -> TimeUnit {
        self.unit
    }

    /// Canonical magnitude in seconds.
    pub fn as_seconds(&self) -> f64 {
        self.value * self.unit.seconds()
    }

    /// Events per second for a mean inter-event time of `self`.
    pub fn to_rate(&self) -> Result<f64, Error> {
        let secs = self.as_seconds();
        if secs <= 0.0 {
            return Err(Error::validation(
                "duration",
                "rate conversion needs a strictly positive duration",
            ));
        }
        Ok(1.0 / secs)
    }

    /// Mean inter-event time for a rate in events per second.
    pub fn from_rate(rate: f64) -> Result<Duration, Error> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::validation(
                "rate",
                format!("must be finite and positive, got {rate}"),
            ));
        }
        Duration::seconds(1.0 / rate)
    }
}

impl fmt::Display for Duration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.unit.token())
    }
}

/// Grammar: `<number><unit>` with optional whitespace before the unit
/// token. The number is anything Rust's `f64` parser accepts.
impl FromStr for Duration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Duration, Error> {
        let s = s.trim();
        let split = s
            .rfind(|c: char| c.is_ascii_digit() || c == '.')
            .map(|i| i + 1)
            .ok_or_else(|| Error::validation("duration", format!("no numeric part in `{s}`")))?;
        let number = s[..split].trim();
        let token = s[split..].trim();
        let value: f64 = number
            .parse()
            .map_err(|_| Error::validation("duration", format!("`{number}` is not a number")))?;
        let unit = TimeUnit::from_token(token).ok_or_else(|| {
            Error::validation(
                "duration",
                format!(
                    "unknown unit `{token}` (expected s, min, h, hours, d, days, months, years)"
                ),
            )
        })?;
        Duration::new(value, unit)
    }
}

/// Converts an annualized failure rate (fraction of a fleet failing per
/// year) to the mean time to failure it implies: MTTF = 1/AFR years.
///
/// Domain is (0, 1]; 100% maps to exactly one year.
pub fn afr_to_mttf(afr: f64) -> Result<Duration, Error> {
    if !afr.is_finite() || afr <= 0.0 || afr > 1.0 {
        return Err(Error::validation(
            "afr",
            format!("annualized failure rate must be in (0, 1], got {afr}"),
        ));
    }
    Duration::years(1.0 / afr)
}

/// Inverse of [`afr_to_mttf`].
pub fn mttf_to_afr(mttf: &Duration) -> Result<f64, Error> {
    let secs = mttf.as_seconds();
    if secs <= 0.0 {
        return Err(Error::validation("mttf", "must be strictly positive"));
    }
    Ok(SECONDS_PER_YEAR / secs)
}

/// Counts whole nines of availability: floor(-log10(1 - a)).
///
/// k nines means availability in [1 - 10^-k, 1 - 10^-(k+1)). Availabilities
/// within [`NINES_OUTAGE_FLOOR`] of 1 report the cap. The decade boundaries
/// carry a 1e-4 relative tolerance so that availabilities written as
/// `1 - 10^-k` land on k despite binary representation rounding (writing
/// `1 - 1e-12` in an f64 perturbs the outage by up to ~6e-5 relative).
pub fn nines(availability: f64) -> Result<u32, Error> {
    if !availability.is_finite() || !(0.0..=1.0).contains(&availability) {
        return Err(Error::validation(
            "availability",
            format!("must be in [0, 1], got {availability}"),
        ));
    }
    let outage = 1.0 - availability;
    if outage < NINES_OUTAGE_FLOOR {
        return Ok(NINES_CAP);
    }
    let mut count = 0;
    for k in 1..=NINES_CAP {
        if outage <= 10f64.powi(-(k as i32)) * (1.0 + 1e-4) {
            count = k;
        } else {
            break;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Duration {
        s.parse().unwrap()
    }

    #[test]
    fn rate_conversions() {
        assert_eq!(parse("1h").to_rate().unwrap(), 1.0 / 3600.0);
        assert_eq!(
            parse("10years").to_rate().unwrap(),
            1.0 / (10.0 * 365.0 * 86400.0)
        );
        assert_eq!(parse("30min").to_rate().unwrap(), 1.0 / 1800.0);
        assert!(Duration::seconds(0.0).unwrap().to_rate().is_err());
        assert!(Duration::new(-1.0, TimeUnit::Second).is_err());
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(parse("90 min").as_seconds(), 5400.0);
        assert_eq!(parse("10 hours").as_seconds(), 36000.0);
        assert_eq!(parse("17d").as_seconds(), 17.0 * 86400.0);
        assert_eq!(parse("2months").as_seconds(), 2.0 * 30.0 * 86400.0);
        assert_eq!(parse("0.5s").as_seconds(), 0.5);
        assert_eq!(parse("1e3s").as_seconds(), 1000.0);
        assert!("10m".parse::<Duration>().is_err()); // ambiguous token rejected
        assert!("ten s".parse::<Duration>().is_err());
        assert!("10".parse::<Duration>().is_err());
    }

    #[test]
    fn display_reparses() {
        for s in ["90min", "1.5h", "5184000s", "35years"] {
            let d = parse(s);
            assert_eq!(d, parse(&d.to_string()));
        }
    }

    #[test]
    fn afr_examples() {
        let d = afr_to_mttf(0.03).unwrap();
        assert!((d.value() - 33.333333333333336).abs() < 1e-12);
        assert_eq!(d.unit(), TimeUnit::Year);
        assert_eq!(afr_to_mttf(0.08).unwrap().value(), 12.5);
        assert_eq!(afr_to_mttf(1.0).unwrap().value(), 1.0);
        assert!(afr_to_mttf(0.0).is_err());
        assert!(afr_to_mttf(1.2).is_err());
        assert!(afr_to_mttf(-0.1).is_err());
    }

    #[test]
    fn afr_round_trip() {
        for afr in [0.03, 0.05, 0.08, 0.5, 1.0] {
            let mttf = afr_to_mttf(afr).unwrap();
            let back = mttf_to_afr(&mttf).unwrap();
            assert!((back - afr).abs() / afr < 1e-12, "{afr} -> {back}");
        }
    }

    #[test]
    fn rate_round_trip_within_ulp() {
        for r in [1e-9, 2.7e-5, 1.0 / 3600.0, 0.123, 1.0, 17.0] {
            let back = Duration::from_rate(r).unwrap().to_rate().unwrap();
            let ulp = f64::EPSILON * r;
            assert!((back - r).abs() <= ulp, "{r} -> {back}");
        }
    }

    #[test]
    fn nines_examples() {
        assert_eq!(nines(0.9999995).unwrap(), 6);
        assert_eq!(nines(0.5).unwrap(), 0);
        assert_eq!(nines(0.99999999665).unwrap(), 8);
        assert_eq!(nines(0.0).unwrap(), 0);
        assert_eq!(nines(1.0).unwrap(), 12);
        assert!(nines(1.5).is_err());
        assert!(nines(-0.1).is_err());
        assert!(nines(f64::NAN).is_err());
    }

    #[test]
    fn nines_exact_on_boundaries() {
        for k in 1..=12u32 {
            let a = 1.0 - 10f64.powi(-(k as i32));
            assert_eq!(nines(a).unwrap(), k, "boundary k={k}");
        }
    }

    #[test]
    fn nines_monotone() {
        let mut last = 0;
        for i in 0..=10_000 {
            let a = i as f64 / 10_000.0;
            let n = nines(a).unwrap();
            assert!(n >= last);
            last = n;
        }
        assert_eq!(nines(1.0 - 1e-13).unwrap(), 12);
    }
}
