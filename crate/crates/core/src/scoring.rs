//! Squared-ratio scoring and leaderboard aggregation, in exact rationals.

use std::collections::{BTreeMap, HashMap};
use std::io::Read;

use chrono::{DateTime, Utc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::json;

use crate::exact::round_half_up;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("team value {team_value} exceeds best value {best_value}")]
    ValueExceedsBest { team_value: u64, best_value: u64 },
    #[error("record names unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("bad record on line {line}: {message}")]
    BadRecord { line: u64, message: String },
}

/// `(team / best)^2`, or 0 when nothing was packed at all.
pub fn instance_score(team_value: u64, best_value: u64) -> Result<BigRational, ScoreError> {
    if team_value > best_value {
        return Err(ScoreError::ValueExceedsBest {
            team_value,
            best_value,
        });
    }
    if best_value == 0 {
        return Ok(BigRational::zero());
    }
    let r = BigRational::new(BigInt::from(team_value), BigInt::from(best_value));
    Ok(&r * &r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmissionRecord {
    pub team: String,
    pub instance: String,
    pub value: u64,
    pub timestamp: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamStanding {
    pub rank: usize,
    pub team: String,
    /// Best value per instance, in leaderboard instance order.
    pub values: Vec<u64>,
    pub scores: Vec<BigRational>,
    pub total: BigRational,
    /// First instant at which the team's total reached its final value;
    /// `None` for a zero total.
    pub achieved_at: Option<DateTime<Utc>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaderboard {
    pub instances: Vec<String>,
    pub best: Vec<u64>,
    /// Ranked: higher total first, then earlier achievement, then name.
    pub teams: Vec<TeamStanding>,
}

/// Aggregates verified records. Each team's value on an instance is its best
/// record there; `B(I)` is the best over all teams.
///
/// For the tie-break the running total is measured against the final `B(I)`:
/// it reaches its final value at the latest of the instants at which the team
/// first recorded its final best on each instance with a positive score.
pub fn build_leaderboard(
    records: &[SubmissionRecord],
    instances: &[String],
) -> Result<Leaderboard, ScoreError> {
    let pos: HashMap<&str, usize> = instances
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut per_team: BTreeMap<&str, Vec<Vec<&SubmissionRecord>>> = BTreeMap::new();
    for r in records {
        let &i = pos
            .get(r.instance.as_str())
            .ok_or_else(|| ScoreError::UnknownInstance(r.instance.clone()))?;
        per_team
            .entry(&r.team)
            .or_insert_with(|| vec![Vec::new(); instances.len()])[i]
            .push(r);
    }
    let best: Vec<u64> = (0..instances.len())
        .map(|i| {
            per_team
                .values()
                .flat_map(|recs| recs[i].iter().map(|r| r.value))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut teams = Vec::with_capacity(per_team.len());
    for (team, recs) in per_team {
        let mut values = Vec::with_capacity(instances.len());
        let mut scores = Vec::with_capacity(instances.len());
        let mut total = BigRational::zero();
        let mut achieved_at: Option<DateTime<Utc>> = None;
        for (i, rs) in recs.iter().enumerate() {
            let v = rs.iter().map(|r| r.value).max().unwrap_or(0);
            let s = instance_score(v, best[i])?;
            if !s.is_zero() {
                let first = rs
                    .iter()
                    .filter(|r| r.value == v)
                    .map(|r| r.timestamp)
                    .min()
                    .expect("value came from a record");
                achieved_at = Some(achieved_at.map_or(first, |a| a.max(first)));
            }
            total += &s;
            values.push(v);
            scores.push(s);
        }
        teams.push(TeamStanding {
            rank: 0,
            team: team.to_string(),
            values,
            scores,
            total,
            achieved_at,
        });
    }
    teams.sort_by(|a, b| {
        b.total
            .cmp(&a.total)
            .then_with(|| match (a.achieved_at, b.achieved_at) {
                (Some(x), Some(y)) => x.cmp(&y),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
            .then_with(|| a.team.cmp(&b.team))
    });
    for (k, t) in teams.iter_mut().enumerate() {
        t.rank = k + 1;
    }
    Ok(Leaderboard {
        instances: instances.to_vec(),
        best,
        teams,
    })
}

/// Decimal rendering with `places` digits, rounding halves up.
pub fn format_decimal(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let n = round_half_up(&(x * BigRational::from_integer(scale.clone())));
    let neg = n < BigInt::zero();
    let n = if neg { -n } else { n };
    let (int, frac) = (&n / &scale, &n % &scale);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0>width$}", width = places as usize)
    }
}

fn ratio_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Leaderboard {
    pub fn total_of(&self, team: &str) -> Option<&BigRational> {
        self.teams.iter().find(|t| t.team == team).map(|t| &t.total)
    }

    /// Exact scores as `p/q` strings, with a two-decimal rendering alongside.
    pub fn to_json(&self) -> serde_json::Value {
        let teams: Vec<serde_json::Value> = self
            .teams
            .iter()
            .map(|t| {
                let scores: serde_json::Map<String, serde_json::Value> = self
                    .instances
                    .iter()
                    .zip(&t.scores)
                    .map(|(n, s)| (n.clone(), json!(ratio_string(s))))
                    .collect();
                json!({
                    "rank": t.rank,
                    "team": t.team,
                    "total": format_decimal(&t.total, 2),
                    "total_exact": ratio_string(&t.total),
                    "achieved_at": t.achieved_at.map(|a| a.to_rfc3339()),
                    "scores": scores,
                })
            })
            .collect();
        let best: serde_json::Map<String, serde_json::Value> = self
            .instances
            .iter()
            .zip(&self.best)
            .map(|(n, b)| (n.clone(), json!(b)))
            .collect();
        json!({ "instances": self.instances.len(), "best": best, "teams": teams })
    }

    pub fn render_table(&self) -> String {
        let width = self
            .teams
            .iter()
            .map(|t| t.team.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = format!("{:>4}  {:<width$}  {:>8}\n", "rank", "team", "score");
        for t in &self.teams {
            out += &format!(
                "{:>4}  {:<width$}  {:>8}\n",
                t.rank,
                t.team,
                format_decimal(&t.total, 2)
            );
        }
        out
    }
}

#[derive(Deserialize)]
struct RecordRow {
    team: String,
    instance: String,
    value: u64,
    timestamp: String,
}

/// Reads `team,instance,value,timestamp` rows (with a header line);
/// timestamps are RFC 3339.
pub fn read_records(reader: impl Read) -> Result<Vec<SubmissionRecord>, ScoreError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for row in rdr.deserialize::<RecordRow>() {
        let row = row.map_err(|e| ScoreError::BadRecord {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let timestamp = DateTime::parse_from_rfc3339(&row.timestamp)
            .map_err(|e| ScoreError::BadRecord {
                line: out.len() as u64 + 2,
                message: format!("timestamp {:?}: {e}", row.timestamp),
            })?
            .with_timezone(&Utc);
        out.push(SubmissionRecord {
            team: row.team,
            instance: row.instance,
            value: row.value,
            timestamp,
        });
    }
    Ok(out)
}

pub fn write_records(records: &[SubmissionRecord]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["team", "instance", "value", "timestamp"])
        .expect("in-memory write");
    for r in records {
        w.write_record([
            r.team.as_str(),
            r.instance.as_str(),
            &r.value.to_string(),
            &r.timestamp.to_rfc3339(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory write")
}
