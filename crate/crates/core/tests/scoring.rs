mod common;

use chrono::{DateTime, Duration, TimeZone, Utc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use polypack::scoring::{build_leaderboard, instance_score, ScoreError, SubmissionRecord};
use rand::Rng;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn at(secs: i64) -> DateTime<Utc> {
    Utc.timestamp_opt(1_700_000_000 + secs, 0).unwrap()
}

fn rec(team: &str, inst: &str, value: u64, secs: i64) -> SubmissionRecord {
    SubmissionRecord {
        team: team.into(),
        instance: inst.into(),
        value,
        timestamp: at(secs),
    }
}

#[test]
fn stated_scores() {
    assert_eq!(instance_score(40, 40).unwrap(), BigRational::one());
    assert_eq!(instance_score(20, 40).unwrap(), ratio(1, 4));
    assert_eq!(instance_score(0, 40).unwrap(), BigRational::zero());
    assert_eq!(instance_score(0, 0).unwrap(), BigRational::zero());
    assert_eq!(
        instance_score(41, 40),
        Err(ScoreError::ValueExceedsBest {
            team_value: 41,
            best_value: 40
        })
    );
}

#[test]
fn single_team_scores_one_per_instance() {
    let names: Vec<String> = (0..7).map(|i| format!("i{i}")).collect();
    let recs: Vec<_> = names
        .iter()
        .enumerate()
        .map(|(k, n)| rec("solo", n, 10 + k as u64, k as i64))
        .collect();
    let lb = build_leaderboard(&recs, &names).unwrap();
    assert_eq!(lb.teams[0].total, BigRational::from_integer(7.into()));
}

#[test]
fn half_of_best_everywhere() {
    let names: Vec<String> = (0..180).map(|i| format!("i{i}")).collect();
    let mut recs = Vec::new();
    for n in &names {
        recs.push(rec("best", n, 1000, 0));
        recs.push(rec("half", n, 500, 0));
    }
    let lb = build_leaderboard(&recs, &names).unwrap();
    assert_eq!(
        lb.total_of("half").unwrap(),
        &BigRational::from_integer(45.into())
    );
    assert_eq!(
        lb.total_of("best").unwrap(),
        &BigRational::from_integer(180.into())
    );
    assert!(lb.render_table().contains("45.00"));
}

#[test]
fn tie_goes_to_earlier_team() {
    let names = vec!["a".to_string(), "b".to_string()];
    let recs = vec![
        rec("late", "a", 10, 5),
        rec("late", "b", 10, 50),
        rec("early", "a", 10, 7),
        rec("early", "b", 10, 20),
        // a later submission with the same value does not move the timestamp
        rec("early", "b", 10, 90),
        // an earlier weaker submission does not count either
        rec("late", "b", 3, 1),
    ];
    let lb = build_leaderboard(&recs, &names).unwrap();
    assert_eq!(lb.teams[0].team, "early");
    assert_eq!(lb.teams[0].achieved_at, Some(at(20)));
    assert_eq!(lb.teams[1].achieved_at, Some(at(50)));
    assert_eq!(lb.teams[0].total, lb.teams[1].total);
}

#[test]
fn unknown_instance_rejected() {
    let names = vec!["a".to_string()];
    assert_eq!(
        build_leaderboard(&[rec("t", "zzz", 1, 0)], &names),
        Err(ScoreError::UnknownInstance("zzz".into()))
    );
}

/// Straightforward recomputation: best per (team, instance), best per
/// instance, sum of squared ratios.
fn oracle_totals(
    recs: &[SubmissionRecord],
    names: &[String],
) -> std::collections::BTreeMap<String, BigRational> {
    let mut out = std::collections::BTreeMap::new();
    let teams: std::collections::BTreeSet<&String> = recs.iter().map(|r| &r.team).collect();
    for team in teams {
        let mut total = BigRational::zero();
        for n in names {
            let mine = recs
                .iter()
                .filter(|r| &r.team == team && &r.instance == n)
                .map(|r| r.value)
                .max()
                .unwrap_or(0);
            let best = recs
                .iter()
                .filter(|r| &r.instance == n)
                .map(|r| r.value)
                .max()
                .unwrap_or(0);
            if best > 0 {
                total += BigRational::new(BigInt::from(mine * mine), BigInt::from(best * best));
            }
        }
        out.insert(team.clone(), total);
    }
    out
}

fn random_records(r: &mut impl Rng, names: &[String]) -> Vec<SubmissionRecord> {
    let teams = ["ant", "bee", "cat", "dog"];
    (0..r.gen_range(1..80))
        .map(|_| {
            rec(
                teams[r.gen_range(0..teams.len())],
                &names[r.gen_range(0..names.len())],
                r.gen_range(0..1000),
                r.gen_range(0..10_000),
            )
        })
        .collect()
}

#[test]
fn totals_match_oracle() {
    let names: Vec<String> = (0..9).map(|i| format!("inst{i}")).collect();
    let mut r = common::rng(8);
    for _ in 0..300 {
        let recs = random_records(&mut r, &names);
        let lb = build_leaderboard(&recs, &names).unwrap();
        let oracle = oracle_totals(&recs, &names);
        assert_eq!(lb.teams.len(), oracle.len());
        for t in &lb.teams {
            assert_eq!(&t.total, &oracle[&t.team]);
            assert!(t
                .scores
                .iter()
                .all(|s| s >= &BigRational::zero() && s <= &BigRational::one()));
        }
        assert!(lb.teams.windows(2).all(|w| w[0].total >= w[1].total));
    }
}

#[test]
fn monotone_in_own_value() {
    let names: Vec<String> = (0..5).map(|i| format!("inst{i}")).collect();
    let mut r = common::rng(9);
    for _ in 0..200 {
        let mut recs = random_records(&mut r, &names);
        let before = build_leaderboard(&recs, &names).unwrap();
        let k = r.gen_range(0..recs.len());
        let mut improved = recs[k].clone();
        improved.value += r.gen_range(1..500);
        improved.timestamp += Duration::seconds(1);
        let team = improved.team.clone();
        recs.push(improved);
        let after = build_leaderboard(&recs, &names).unwrap();
        for t in &after.teams {
            let old = before.total_of(&t.team).unwrap();
            if t.team == team {
                assert!(&t.total >= old);
            } else {
                assert!(&t.total <= old);
            }
        }
    }
}

#[test]
fn scale_invariance() {
    let names: Vec<String> = (0..5).map(|i| format!("inst{i}")).collect();
    let mut r = common::rng(10);
    for _ in 0..100 {
        let recs = random_records(&mut r, &names);
        let scaled: Vec<_> = recs
            .iter()
            .map(|x| SubmissionRecord {
                value: x.value * 7,
                ..x.clone()
            })
            .collect();
        let a = build_leaderboard(&recs, &names).unwrap();
        let b = build_leaderboard(&scaled, &names).unwrap();
        for (x, y) in a.teams.iter().zip(&b.teams) {
            assert_eq!(x.scores, y.scores);
        }
    }
}
