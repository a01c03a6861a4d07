//! Month-resolution timestamps.
//!
//! All series in this crate are monthly; days only appear transiently while
//! parsing price files and are dropped by the monthly resampler.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A calendar month, ordered chronologically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthStamp {
    year: i32,
    month: u8,
}

impl MonthStamp {
    pub fn new(year: i32, month: u8) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidMonth { year, month });
        }
        Ok(Self { year, month })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    /// The next calendar month; December rolls into January of the next year.
    pub fn successor(&self) -> Self {
        self.add_months(1)
    }

    /// This month advanced by `k` months.
    pub fn add_months(&self, k: u32) -> Self {
        let total = self.year as i64 * 12 + (self.month as i64 - 1) + k as i64;
        Self {
            year: total.div_euclid(12) as i32,
            month: (total.rem_euclid(12) + 1) as u8,
        }
    }

    /// Signed number of months from `other` to `self`.
    pub fn months_since(&self, other: &MonthStamp) -> i64 {
        (self.year as i64 * 12 + self.month as i64) - (other.year as i64 * 12 + other.month as i64)
    }

    /// True when `self` is exactly the month after `other`.
    pub fn follows(&self, other: &MonthStamp) -> bool {
        self.months_since(other) == 1
    }
}

impl fmt::Display for MonthStamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// Parses `YYYY-MM`; a trailing `-DD` is accepted and ignored.
impl FromStr for MonthStamp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDate { text: s.to_string() };
        let mut parts = s.splitn(3, '-');
        let year: i32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let month: u8 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if let Some(day) = parts.next() {
            let _: u8 = day.parse().map_err(|_| bad())?;
        }
        MonthStamp::new(year, month).map_err(|_| bad())
    }
}

/// A calendar day, used only between price parsing and monthly resampling.
///
/// Day-of-month is validated to 1..=31 only; this crate does no calendar
/// arithmetic at day resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DayStamp {
    month: MonthStamp,
    day: u8,
}

impl DayStamp {
    pub fn new(year: i32, month: u8, day: u8) -> Result<Self> {
        if !(1..=31).contains(&day) {
            return Err(Error::InvalidDate {
                text: format!("{:04}-{:02}-{:02}", year, month, day),
            });
        }
        Ok(Self {
            month: MonthStamp::new(year, month)?,
            day,
        })
    }

    pub fn month_stamp(&self) -> MonthStamp {
        self.month
    }

    pub fn day(&self) -> u8 {
        self.day
    }
}

impl fmt::Display for DayStamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{:02}", self.month, self.day)
    }
}

/// Parses `YYYY-MM-DD`.
impl FromStr for DayStamp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDate { text: s.to_string() };
        let mut parts = s.splitn(3, '-');
        let year: i32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let month: u8 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let day: u8 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        DayStamp::new(year, month, day).map_err(|_| bad())
    }
}
