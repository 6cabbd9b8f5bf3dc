//! Scores three teams on four instances and prints the leaderboard.

use chrono::{Duration, TimeZone, Utc};
use polypack::scoring::{build_leaderboard, instance_score, SubmissionRecord};

fn main() {
    println!(
        "score at the best value: {}",
        instance_score(800, 800).unwrap()
    );
    println!(
        "score at half the best:  {}",
        instance_score(400, 800).unwrap()
    );

    let instances: Vec<String> = (0..4).map(|i| format!("inst{i}")).collect();
    let start = Utc.with_ymd_and_hms(2024, 1, 15, 12, 0, 0).unwrap();
    let values = [
        ("alpha", [900, 500, 300, 60]),
        ("beta", [1000, 400, 280, 70]),
        ("gamma", [450, 500, 300, 35]),
    ];
    let mut records = Vec::new();
    for (t, (team, vals)) in values.iter().enumerate() {
        for (i, v) in vals.iter().enumerate() {
            records.push(SubmissionRecord {
                team: team.to_string(),
                instance: instances[i].clone(),
                value: *v,
                timestamp: start + Duration::hours((t * 4 + i) as i64),
            });
        }
    }
    let board = build_leaderboard(&records, &instances).unwrap();
    print!("{}", board.render_table());
}
