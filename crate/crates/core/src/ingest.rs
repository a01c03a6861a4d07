//! Local CSV ingestion: FRED-style two-column exports, price exports with an
//! adjusted close, monthly resampling, simple returns, and the manifest that
//! assembles the raw dataset. All reading is local; no code path touches the
//! network.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::month::{DayStamp, MonthStamp};
use crate::series::Series;

/// What each input file feeds in the factor construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    /// Industrial production index.
    Ip,
    /// Consumer price index.
    Cpi,
    /// Treasury bill yield, decimal units.
    Tb,
    /// Producer price index, crude petroleum.
    PpiCrude,
    /// Long-term government bond return series.
    LgbReturn,
    /// Low-grade ("Baa-rated and under") bond return series.
    LowgradeReturn,
    /// Price index the response returns are computed from.
    PriceIndex,
}

impl Role {
    pub const ALL: [Role; 7] = [
        Role::Ip,
        Role::Cpi,
        Role::Tb,
        Role::PpiCrude,
        Role::LgbReturn,
        Role::LowgradeReturn,
        Role::PriceIndex,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Role::Ip => "IP",
            Role::Cpi => "CPI",
            Role::Tb => "TB",
            Role::PpiCrude => "PPI_CRUDE",
            Role::LgbReturn => "LGB_RETURN",
            Role::LowgradeReturn => "LOWGRADE_RETURN",
            Role::PriceIndex => "PRICE_INDEX",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "IP" => Ok(Role::Ip),
            "CPI" => Ok(Role::Cpi),
            "TB" => Ok(Role::Tb),
            "PPI_CRUDE" => Ok(Role::PpiCrude),
            "LGB_RETURN" => Ok(Role::LgbReturn),
            "LOWGRADE_RETURN" => Ok(Role::LowgradeReturn),
            "PRICE_INDEX" => Ok(Role::PriceIndex),
            other => Err(Error::DomainError {
                what: format!("unknown role '{}'", other),
            }),
        }
    }
}

/// File format of a manifest entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    /// Two columns, header then `YYYY-MM-DD,value`; `.` marks missing.
    FredCsv,
    /// Header containing a date column and an adjusted-close column.
    PriceCsv,
}

/// One input file: role, series id, path, format, optional unit scale and
/// (for price files) column-name overrides.
#[derive(Debug, Clone)]
pub struct ManifestEntry {
    pub role: Role,
    pub series_id: String,
    pub path: PathBuf,
    pub format: FileFormat,
    /// Multiplier applied after parsing (e.g. 0.01 converts percent yields
    /// to decimals). Default 1.
    pub scale: f64,
    pub date_column: String,
    pub value_column: String,
    /// Within-month resampling for day-resolution files.
    pub monthly_rule: MonthlyRule,
}

impl ManifestEntry {
    pub fn new(role: Role, series_id: impl Into<String>, path: impl Into<PathBuf>, format: FileFormat) -> Self {
        Self {
            role,
            series_id: series_id.into(),
            path: path.into(),
            format,
            scale: 1.0,
            date_column: "Date".to_string(),
            value_column: "Adj Close".to_string(),
            monthly_rule: MonthlyRule::Last,
        }
    }
}

/// The full data catalog plus the clip window.
#[derive(Debug, Clone)]
pub struct DataManifest {
    pub entries: Vec<ManifestEntry>,
    pub start: MonthStamp,
    pub end: MonthStamp,
}

impl DataManifest {
    /// Checks that every role appears exactly once and the window is ordered.
    pub fn validate(&self) -> Result<()> {
        if self.start > self.end {
            return Err(Error::WindowOrder {
                start: self.start,
                end: self.end,
            });
        }
        for role in Role::ALL {
            let count = self.entries.iter().filter(|e| e.role == role).count();
            if count != 1 {
                return Err(Error::DomainError {
                    what: format!("role {} appears {} times in manifest, need exactly 1", role, count),
                });
            }
        }
        Ok(())
    }

    pub fn entry(&self, role: Role) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.role == role)
    }
}

/// Day-resolution observations, the transient carrier between price parsing
/// and monthly resampling.
#[derive(Debug, Clone, PartialEq)]
pub struct DaySeries {
    pub id: String,
    pub points: Vec<(DayStamp, f64)>,
}

/// Warnings collected while parsing one file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParseReport {
    /// Rows that appeared before an earlier-dated row and were re-sorted.
    pub out_of_order_rows: usize,
    /// Rows skipped because the value was the missing marker.
    pub missing_rows: usize,
}

/// Parses a FRED-style export: header line, then `YYYY-MM-DD,value` rows with
/// `.` for missing observations. Day-of-month is discarded.
pub fn parse_fred_csv(text: &str, id: &str) -> Result<(Series<f64>, ParseReport)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::MalformedRow {
            id: id.to_string(),
            line: 1,
            reason: e.to_string(),
        })?
        .clone();
    if headers.len() < 2 {
        return Err(Error::MalformedRow {
            id: id.to_string(),
            line: 1,
            reason: format!("expected two columns in header, found {}", headers.len()),
        });
    }

    let mut report = ParseReport::default();
    let mut points: Vec<(MonthStamp, f64)> = Vec::new();
    let mut seen: BTreeMap<MonthStamp, ()> = BTreeMap::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2;
        let record = record.map_err(|e| Error::MalformedRow {
            id: id.to_string(),
            line,
            reason: e.to_string(),
        })?;
        let date = record.get(0).unwrap_or("").trim();
        let value = record.get(1).unwrap_or("").trim();
        if date.is_empty() && value.is_empty() {
            continue;
        }
        if value == "." {
            report.missing_rows += 1;
            continue;
        }
        let month: MonthStamp = date.parse().map_err(|_| Error::MalformedRow {
            id: id.to_string(),
            line,
            reason: format!("unparseable date '{}'", date),
        })?;
        let v: f64 = value.parse().map_err(|_| Error::MalformedRow {
            id: id.to_string(),
            line,
            reason: format!("unparseable value '{}'", value),
        })?;
        if seen.insert(month, ()).is_some() {
            return Err(Error::DuplicateMonth {
                id: id.to_string(),
                month,
            });
        }
        if let Some((last, _)) = points.last() {
            if month < *last {
                report.out_of_order_rows += 1;
            }
        }
        points.push((month, v));
    }
    if points.is_empty() {
        return Err(Error::EmptyFile { id: id.to_string() });
    }
    Ok((Series::new(id, "level", points)?, report))
}

/// Renders a monthly series back to the FRED export shape (`DATE,VALUE`,
/// dates stamped on the first of the month). Parsing the output reproduces
/// the series.
pub fn to_fred_csv(series: &Series<f64>) -> String {
    let mut out = String::from("DATE,VALUE\n");
    for (month, value) in series.points() {
        out.push_str(&format!("{}-01,{}\n", month, value));
    }
    out
}

/// Parses a price export (Yahoo-style) keeping day resolution. Rows out of
/// date order are accepted, sorted, and counted in the report.
pub fn parse_price_csv(
    text: &str,
    id: &str,
    date_column: &str,
    value_column: &str,
) -> Result<(DaySeries, ParseReport)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::MalformedRow {
            id: id.to_string(),
            line: 1,
            reason: e.to_string(),
        })?
        .clone();
    let find = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::MissingColumn { name: name.to_string() })
    };
    let date_idx = find(date_column)?;
    let value_idx = find(value_column)?;

    let mut report = ParseReport::default();
    let mut points: Vec<(DayStamp, f64)> = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2;
        let record = record.map_err(|e| Error::MalformedRow {
            id: id.to_string(),
            line,
            reason: e.to_string(),
        })?;
        let date = record.get(date_idx).unwrap_or("").trim();
        let value = record.get(value_idx).unwrap_or("").trim();
        if date.is_empty() && value.is_empty() {
            continue;
        }
        if value == "." || value.eq_ignore_ascii_case("null") {
            report.missing_rows += 1;
            continue;
        }
        let day: DayStamp = date.parse().map_err(|_| Error::MalformedRow {
            id: id.to_string(),
            line,
            reason: format!("unparseable date '{}'", date),
        })?;
        let v: f64 = value.parse().map_err(|_| Error::MalformedRow {
            id: id.to_string(),
            line,
            reason: format!("unparseable value '{}'", value),
        })?;
        if let Some((last, _)) = points.last() {
            if day < *last {
                report.out_of_order_rows += 1;
            }
        }
        points.push((day, v));
    }
    if points.is_empty() {
        return Err(Error::EmptyFile { id: id.to_string() });
    }
    points.sort_by_key(|(d, _)| *d);
    Ok((
        DaySeries {
            id: id.to_string(),
            points,
        },
        report,
    ))
}

/// Within-month aggregation rule for day-resolution data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonthlyRule {
    /// Keep each month's final observation (prices).
    Last,
    /// Average the month's observations (rates).
    Mean,
}

/// Collapses day-resolution observations to one per month.
pub fn to_monthly(s: &DaySeries, rule: MonthlyRule) -> Result<Series<f64>> {
    if s.points.is_empty() {
        return Err(Error::EmptyFile { id: s.id.clone() });
    }
    let mut by_month: BTreeMap<MonthStamp, Vec<(DayStamp, f64)>> = BTreeMap::new();
    for &(day, v) in &s.points {
        by_month.entry(day.month_stamp()).or_default().push((day, v));
    }
    let points = by_month
        .into_iter()
        .map(|(month, obs)| {
            let value = match rule {
                MonthlyRule::Last => obs.iter().max_by_key(|(d, _)| *d).expect("nonempty").1,
                MonthlyRule::Mean => {
                    obs.iter().map(|(_, v)| v).sum::<f64>() / obs.len() as f64
                }
            };
            (month, value)
        })
        .collect();
    Series::new(s.id.clone(), "level", points)
}

/// Simple returns r_t = P_t/P_{t−1} − 1 between month-adjacent prices.
pub fn simple_returns(prices: &Series<f64>) -> Result<Series<f64>> {
    returns(prices, ReturnKind::Simple)
}

/// Response return convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnKind {
    Simple,
    Log,
}

/// Month-over-month returns, simple or log, never bridging gaps.
pub fn returns(prices: &Series<f64>, kind: ReturnKind) -> Result<Series<f64>> {
    if prices.len() < 2 {
        return Err(Error::TooShort {
            id: prices.id().to_string(),
            needed: 2,
            actual: prices.len(),
        });
    }
    if let Some(&(month, value)) = prices.points().iter().find(|(_, v)| *v <= 0.0) {
        return Err(Error::NonPositiveValue {
            id: prices.id().to_string(),
            month,
            value,
        });
    }
    let points = prices
        .points()
        .windows(2)
        .filter(|w| w[1].0.follows(&w[0].0))
        .map(|w| {
            let r = match kind {
                ReturnKind::Simple => w[1].1 / w[0].1 - 1.0,
                ReturnKind::Log => (w[1].1 / w[0].1).ln(),
            };
            (w[1].0, r)
        })
        .collect();
    Series::new(format!("ret({})", prices.id()), "return", points)
}

/// Per-series load summary printed by the CLI.
#[derive(Debug, Clone)]
pub struct LoadedSeries {
    pub role: Role,
    pub id: String,
    pub points: usize,
    pub first: MonthStamp,
    pub last: MonthStamp,
    pub out_of_order_rows: usize,
    pub missing_rows: usize,
}

/// Everything `assemble` produced: one monthly series per role, the response
/// returns, and the load report.
#[derive(Debug, Clone)]
pub struct RawDataset {
    pub ip: Series<f64>,
    pub cpi: Series<f64>,
    pub tb: Series<f64>,
    pub ppi_crude: Series<f64>,
    pub lgb_return: Series<f64>,
    pub lowgrade_return: Series<f64>,
    pub prices: Series<f64>,
    /// Returns of the price index, per the manifest's return convention.
    pub index_returns: Series<f64>,
    pub report: Vec<LoadedSeries>,
}

/// Parses every manifest entry, resamples to monthly, clips to the window,
/// and computes the response returns.
pub fn assemble(manifest: &DataManifest, return_kind: ReturnKind) -> Result<RawDataset> {
    manifest.validate()?;
    let mut series: BTreeMap<Role, Series<f64>> = BTreeMap::new();
    let mut report = Vec::new();

    for entry in &manifest.entries {
        let (monthly, parse_report) = load_entry(entry)?;
        let scaled = if entry.scale != 1.0 {
            let points = monthly
                .points()
                .iter()
                .map(|(m, v)| (*m, v * entry.scale))
                .collect();
            Series::new(monthly.id().to_string(), monthly.units(), points)
                .map_err(|e| e.for_role(entry.role.as_str(), &entry.path.display().to_string()))?
        } else {
            monthly
        };
        let clipped = scaled.clip(manifest.start, manifest.end);
        if clipped.is_empty() {
            return Err(Error::EmptyAfterClip {
                role: entry.role.as_str().to_string(),
                start: manifest.start,
                end: manifest.end,
            });
        }
        report.push(LoadedSeries {
            role: entry.role,
            id: entry.series_id.clone(),
            points: clipped.len(),
            first: clipped.first_month().expect("nonempty"),
            last: clipped.last_month().expect("nonempty"),
            out_of_order_rows: parse_report.out_of_order_rows,
            missing_rows: parse_report.missing_rows,
        });
        series.insert(entry.role, clipped);
    }

    let prices = series.remove(&Role::PriceIndex).expect("validated manifest");
    let index_returns = returns(&prices, return_kind)
        .map_err(|e| e.for_role(Role::PriceIndex.as_str(), "computed returns"))?;

    Ok(RawDataset {
        ip: series.remove(&Role::Ip).expect("validated manifest"),
        cpi: series.remove(&Role::Cpi).expect("validated manifest"),
        tb: series.remove(&Role::Tb).expect("validated manifest"),
        ppi_crude: series.remove(&Role::PpiCrude).expect("validated manifest"),
        lgb_return: series.remove(&Role::LgbReturn).expect("validated manifest"),
        lowgrade_return: series.remove(&Role::LowgradeReturn).expect("validated manifest"),
        prices,
        index_returns,
        report,
    })
}

fn load_entry(entry: &ManifestEntry) -> Result<(Series<f64>, ParseReport)> {
    let role = entry.role.as_str();
    let path_str = entry.path.display().to_string();
    let text = read_file(&entry.path)
        .map_err(|e| e.for_role(role, &path_str))?;
    match entry.format {
        FileFormat::FredCsv => {
            parse_fred_csv(&text, &entry.series_id).map_err(|e| e.for_role(role, &path_str))
        }
        FileFormat::PriceCsv => {
            let (days, report) =
                parse_price_csv(&text, &entry.series_id, &entry.date_column, &entry.value_column)
                    .map_err(|e| e.for_role(role, &path_str))?;
            let monthly = to_monthly(&days, entry.monthly_rule)
                .map_err(|e| e.for_role(role, &path_str))?;
            Ok((monthly, report))
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::MalformedRow {
        id: path.display().to_string(),
        line: 0,
        reason: format!("cannot read file: {}", e),
    })
}
