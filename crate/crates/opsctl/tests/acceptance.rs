//! Acceptance criteria, one PASS/FAIL line each. Runs with a custom
//! harness so the lines are always printed.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chrono::{DateTime, Utc};
use mockboard_core::items::extreme_group_size;
use mockboard_core::{
    difficulty_index, discrimination_index, grade, presentation_order, subject_outcome, Outcome,
    Percent, QuestionId, Response,
};
use mockboard_reporting::build_certificate;
use mockboard_server::{AppState, ManualClock, ServerConfig};
use mockboard_store::{Store, StoreConfig};
use opsctl::simulate::SimReport;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(started: Instant, limit: Duration) -> Check {
    let took = started.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

fn demo_certificate() -> Check {
    let started = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = Store::open(dir.path(), StoreConfig::default()).map_err(|e| e.to_string())?;
    let demo = opsctl::demo::seed_demo(&store, "demo-password").map_err(|e| e.to_string())?;
    let cert = store
        .read(|s| build_certificate(s, demo.examinee_id, Percent::whole(75), Utc::now()))
        .map_err(|e| e.to_string())?;
    let rows: Vec<String> = cert
        .rows
        .iter()
        .map(|r| format!("{} {}", r.score, r.outcome))
        .collect();
    ensure!(
        rows == [
            "0.0 of 20% Failed",
            "6.0 of 20% Failed",
            "13.5 of 15% Passed"
        ],
        "rows {rows:?}"
    );
    ensure!(cert.rating.to_string() == "19.5", "rating {}", cert.rating);
    within(started, Duration::from_secs(1))
}

/// Walks parallel vectors; no maps involved.
fn brute_grade(key: &[u8], answers: &[Option<u8>]) -> u32 {
    key.iter()
        .zip(answers)
        .filter(|(k, a)| **a == Some(**k))
        .count() as u32
}

fn grading_oracle() -> Check {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(10_000);
    for case in 0..10_000 {
        let n = rng.gen_range(0..=12);
        let key: Vec<u8> = (0..n).map(|_| rng.gen_range(0..5)).collect();
        let answers: Vec<Option<u8>> = (0..n)
            .map(|_| rng.gen_bool(0.85).then(|| rng.gen_range(0..5)))
            .collect();
        let ids: Vec<QuestionId> = (0..n).map(|_| QuestionId::new()).collect();
        let key_map: BTreeMap<_, _> = ids.iter().copied().zip(key.iter().copied()).collect();
        let answer_map: BTreeMap<_, _> = ids
            .iter()
            .zip(&answers)
            .filter_map(|(q, a)| a.map(|a| (*q, a)))
            .collect();
        let got = grade(&answer_map, &key_map).map_err(|e| e.to_string())?;
        let want = brute_grade(&key, &answers);
        ensure!(got == want, "case {case}: grade {got}, oracle {want}");
    }
    within(started, Duration::from_secs(5))
}

fn outcome_boundary_sweep() -> Check {
    let started = Instant::now();
    for rate in [20u32, 50, 75, 100] {
        for total in 0..=20u32 {
            for raw in 0..=total {
                let got = subject_outcome(raw, total, Percent::whole(rate));
                if total == 0 {
                    ensure!(got.is_err(), "empty exam accepted");
                    continue;
                }
                // raw / total >= rate / 100, cross-multiplied.
                let pass = u64::from(raw) * 100 >= u64::from(rate) * u64::from(total);
                let want = if pass {
                    Outcome::Passed
                } else {
                    Outcome::Failed
                };
                let got = got.map_err(|e| e.to_string())?;
                ensure!(
                    got == want,
                    "raw {raw}/{total} at {rate}%: {got}, want {want}"
                );
            }
        }
    }
    within(started, Duration::from_secs(1))
}

/// Reference generator and shuffle, written from the published algorithm.
struct Oracle(u64);

impl Oracle {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Rejects the top `2^64 mod n` outputs so every residue is equally likely.
    fn below(&mut self, n: u64) -> u64 {
        let skip = n.wrapping_neg() % n;
        loop {
            let r = self.next();
            if skip == 0 || r < skip.wrapping_neg() {
                return r % n;
            }
        }
    }

    fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
        v
    }
}

fn is_bijection(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter()
        .all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
}

fn shuffle_properties() -> Check {
    let started = Instant::now();
    let golden = presentation_order(&[4; 10], 1);
    ensure!(
        golden.question_order == [4, 2, 8, 1, 9, 3, 0, 6, 7, 5],
        "seed 1 order {:?}",
        golden.question_order
    );
    let golden_choices: [[usize; 4]; 10] = [
        [1, 3, 0, 2],
        [2, 3, 1, 0],
        [2, 1, 0, 3],
        [1, 3, 0, 2],
        [1, 2, 3, 0],
        [0, 2, 1, 3],
        [2, 0, 1, 3],
        [2, 1, 3, 0],
        [1, 2, 3, 0],
        [3, 2, 0, 1],
    ];
    ensure!(
        golden.choice_orders == golden_choices,
        "seed 1 choices {:?}",
        golden.choice_orders
    );
    let mut rng = StdRng::seed_from_u64(1_000);
    for case in 0..1_000 {
        let n = rng.gen_range(0..=60);
        let counts: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=5)).collect();
        let seed: u64 = rng.gen();
        let p = presentation_order(&counts, seed);
        ensure!(
            is_bijection(&p.question_order),
            "case {case}: question order not a bijection"
        );
        for (q, order) in p.choice_orders.iter().enumerate() {
            ensure!(
                order.len() == counts[q] && is_bijection(order),
                "case {case}: choices of {q}"
            );
        }
        ensure!(
            presentation_order(&counts, seed) == p,
            "case {case}: not deterministic"
        );
        let mut oracle = Oracle(seed);
        ensure!(
            oracle.permutation(n) == p.question_order,
            "case {case}: order differs from oracle"
        );
        for (q, &c) in counts.iter().enumerate() {
            ensure!(
                oracle.permutation(c) == p.choice_orders[q],
                "case {case}: choices of {q} differ"
            );
        }
    }
    within(started, Duration::from_secs(1))
}

fn item_analysis_oracle() -> Check {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(500);
    for case in 0..500 {
        let n = rng.gen_range(1..=30usize);
        let cohort: Vec<(u32, u32, bool)> = (0..n)
            .map(|id| (id as u32, rng.gen_range(0..=20), rng.gen_bool(0.55)))
            .collect();
        let responses: Vec<Response> = cohort
            .iter()
            .map(|&(_, _, ok)| Response {
                chosen: Some(if ok { 1 } else { 0 }),
                correct: 1,
            })
            .collect();
        let p = difficulty_index(&responses).map_err(|e| e.to_string())?;
        let p_want = cohort.iter().filter(|c| c.2).count() as f64 / n as f64;
        ensure!((p - p_want).abs() < 1e-9, "case {case}: p {p} vs {p_want}");

        let got = discrimination_index(&cohort);
        if n < 2 {
            ensure!(got.is_err(), "case {case}: single examinee produced D");
            continue;
        }
        let mut ranked = cohort.clone();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let k = ((0.27 * n as f64 + 0.5).floor() as usize).max(1);
        ensure!(k == extreme_group_size(n), "case {case}: group size");
        let upper = ranked[..k].iter().filter(|c| c.2).count() as f64 / k as f64;
        let lower = ranked[n - k..].iter().filter(|c| c.2).count() as f64 / k as f64;
        let d = got.map_err(|e| e.to_string())?;
        ensure!(
            (d - (upper - lower)).abs() < 1e-9,
            "case {case}: D {d} vs {}",
            upper - lower
        );
    }
    within(started, Duration::from_secs(5))
}

async fn in_process_server(
    clock_start: DateTime<Utc>,
) -> Result<(String, Arc<ManualClock>, tempfile::TempDir), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = ServerConfig {
        data_dir: dir.path().to_path_buf(),
        ..ServerConfig::default()
    };
    let store = Arc::new(mockboard_server::open_store(&config).map_err(|e| e.to_string())?);
    opsctl::bootstrap::init_admin(
        &store,
        common::ADMIN,
        common::ADMIN_PASSWORD,
        None,
        clock_start,
    )
    .map_err(|e| e.to_string())?;
    let clock = Arc::new(ManualClock::new(clock_start));
    let state = AppState::new(store, clock.clone(), config);
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0")
        .await
        .map_err(|e| e.to_string())?;
    let url = format!(
        "http://{}",
        listener.local_addr().map_err(|e| e.to_string())?
    );
    tokio::spawn(mockboard_server::serve(
        listener,
        state,
        std::future::pending(),
    ));
    Ok((url, clock, dir))
}

async fn timer_enforcement() -> Check {
    let started = Instant::now();
    let (url, clock, _dir) = in_process_server(Utc::now()).await?;
    let admin = common::admin(&url).await;
    let exam = common::open_exam(&admin, 4, 100, 1).await;
    let course = exam.course_id;
    let mut examinee = mockboard_client::Client::new(&url);
    let reg = registration("timer", "2018-0001", course);
    let account = examinee.register(&reg).await.map_err(|e| e.to_string())?;
    admin
        .verify_account(account.account_id)
        .await
        .map_err(|e| e.to_string())?;
    examinee
        .login("timer", "timer-password")
        .await
        .map_err(|e| e.to_string())?;
    let view = examinee
        .start_attempt(exam.exam_id)
        .await
        .map_err(|e| e.to_string())?;
    let key: BTreeMap<QuestionId, u8> = admin
        .questions(exam.exam_id)
        .await
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|q| (q.question_id, q.correct_index))
        .collect();
    let q: Vec<QuestionId> = view.questions.iter().map(|q| q.question_id).collect();
    let deadline = view.deadline;
    ensure!(
        deadline - view.started_at == chrono::Duration::minutes(1),
        "deadline not one minute out"
    );

    let mut saved = BTreeMap::new();
    for (i, offset) in [(0usize, 29i64), (1, 30)] {
        clock.set(deadline + chrono::Duration::seconds(offset));
        examinee
            .save_answer(view.attempt_id, q[i], key[&q[i]])
            .await
            .map_err(|e| format!("answer at deadline+{offset}s rejected: {e}"))?;
        saved.insert(q[i], key[&q[i]]);
    }
    clock.set(deadline + chrono::Duration::seconds(31));
    let late = examinee
        .save_answer(view.attempt_id, q[2], key[&q[2]])
        .await;
    ensure!(
        late.as_ref().err().and_then(|e| e.code()) == Some("EXPIRED"),
        "answer at deadline+31s: {late:?}"
    );
    let result = examinee
        .result(view.attempt_id)
        .await
        .map_err(|e| e.to_string())?;
    let expected = grade(&saved, &key).map_err(|e| e.to_string())?;
    ensure!(
        result.raw_score == expected,
        "auto-finalized {} vs {expected}",
        result.raw_score
    );
    ensure!(result.answered == 2, "answered {}", result.answered);
    ensure!(
        result.submitted_at == deadline,
        "submitted_at {}",
        result.submitted_at
    );
    within(started, Duration::from_secs(1))
}

fn registration(
    username: &str,
    number: &str,
    course: mockboard_core::CourseId,
) -> mockboard_api::RegisterRequest {
    mockboard_api::RegisterRequest {
        username: username.into(),
        password: format!("{username}-password"),
        student_number: number.into(),
        last_name: "Dela Cruz".into(),
        first_name: "Juan".into(),
        middle_name: String::new(),
        address: "Quezon City".into(),
        contact_number: "09170000000".into(),
        birthdate: chrono::NaiveDate::from_ymd_opt(1996, 4, 2).unwrap(),
        course_id: course,
        major_id: None,
        terms_accepted: true,
    }
}

async fn registration_validation() -> Check {
    let (url, _clock, _dir) = in_process_server(Utc::now()).await?;
    let admin = common::admin(&url).await;
    let exam = common::open_exam(&admin, 1, 100, 60).await;
    let client = mockboard_client::Client::new(&url);
    client
        .register(&registration("accepted", "2018-0001", exam.course_id))
        .await
        .map_err(|e| format!("2018-0001 rejected: {e}"))?;
    for (i, bad) in ["18-001", "2018-00010", "ABCD-0001"]
        .into_iter()
        .enumerate()
    {
        match client
            .register(&registration(&format!("rejected{i}"), bad, exam.course_id))
            .await
        {
            Err(mockboard_client::ClientError::Api { body, .. })
                if body
                    .fields
                    .as_ref()
                    .is_some_and(|f| f.contains_key("student_number")) => {}
            other => return Err(format!("{bad}: {other:?}")),
        }
    }
    Ok(())
}

async fn concurrency_latency() -> Check {
    let started = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    common::init_admin(dir.path());
    let served = common::serve(dir.path());
    let admin = common::admin(&served.url).await;
    let exam = common::open_exam(&admin, 100, 100, 60).await;
    let out = common::opsctl()
        .args([
            "simulate",
            "--server",
            &served.url,
            "--exam",
            &exam.exam_id.to_string(),
        ])
        .args(["--examinees", "40", "--json"])
        .env("MOCKBOARD_ADMIN_PASSWORD", common::ADMIN_PASSWORD)
        .output()
        .map_err(|e| e.to_string())?;
    let report: SimReport = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{e}: {}", String::from_utf8_lossy(&out.stderr)))?;
    ensure!(
        out.status.success(),
        "exit {:?}: {:?}",
        out.status.code(),
        report.failures
    );
    ensure!(report.completed == 40, "completed {}", report.completed);
    ensure!(
        report.mismatches == 0,
        "{} integrity mismatches",
        report.mismatches
    );
    ensure!(
        report.lost_answers == 0,
        "{} lost answers",
        report.lost_answers
    );
    ensure!(
        report.submit_wall_ms < 60_000.0,
        "submit wall {} ms",
        report.submit_wall_ms
    );
    println!(
        "      submit latency max {:.1} ms, mean {:.1} ms, submit wall {:.1} ms",
        report.submit_latency_max_ms, report.submit_latency_mean_ms, report.submit_wall_ms
    );
    within(started, Duration::from_secs(180))
}

async fn crash_durability() -> Check {
    let started = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    common::init_admin(dir.path());
    let mut served = common::serve(dir.path());
    let admin = common::admin(&served.url).await;
    let exam = common::open_exam(&admin, 50, 100, 60).await;
    let mut examinee = mockboard_client::Client::new(&served.url);
    let account = examinee
        .register(&registration("durable", "2018-0050", exam.course_id))
        .await
        .map_err(|e| e.to_string())?;
    admin
        .verify_account(account.account_id)
        .await
        .map_err(|e| e.to_string())?;
    examinee
        .login("durable", "durable-password")
        .await
        .map_err(|e| e.to_string())?;
    let view = examinee
        .start_attempt(exam.exam_id)
        .await
        .map_err(|e| e.to_string())?;

    let mut acknowledged: BTreeMap<QuestionId, u8> = BTreeMap::new();
    for (i, q) in view.questions.iter().enumerate() {
        let choice = (i % q.choice_order.len()) as u8;
        examinee
            .save_answer(view.attempt_id, q.question_id, choice)
            .await
            .map_err(|e| format!("write {i}: {e}"))?;
        acknowledged.insert(q.question_id, choice);

        // SIGKILL: no shutdown hooks, no flush.
        served.kill();
        served = common::serve(dir.path());
        let mut fresh = mockboard_client::Client::new(&served.url);
        fresh
            .login("durable", "durable-password")
            .await
            .map_err(|e| e.to_string())?;
        let after = fresh
            .attempt(view.attempt_id)
            .await
            .map_err(|e| e.to_string())?;
        let restored: BTreeMap<QuestionId, u8> = after
            .questions
            .iter()
            .filter_map(|q| q.selected.map(|s| (q.question_id, s)))
            .collect();
        ensure!(
            restored == acknowledged,
            "after write {i}: {} of {} answers",
            restored.len(),
            acknowledged.len()
        );
        examinee = fresh;
    }
    ensure!(
        acknowledged.len() == 50,
        "only {} writes",
        acknowledged.len()
    );
    drop(served);
    within(started, Duration::from_secs(120))
}

fn main() {
    let runtime = tokio::runtime::Runtime::new().expect("runtime");
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        (
            "demo certificate rows and rating",
            Box::new(demo_certificate),
        ),
        ("grading oracle, 10000 instances", Box::new(grading_oracle)),
        ("outcome boundary sweep", Box::new(outcome_boundary_sweep)),
        (
            "shuffle properties and golden order",
            Box::new(shuffle_properties),
        ),
        (
            "item-analysis oracle, 500 cohorts",
            Box::new(item_analysis_oracle),
        ),
        (
            "timer enforcement at deadline+29/30/31 s",
            Box::new(|| runtime.block_on(timer_enforcement())),
        ),
        (
            "simulate 40 examinees, 100 questions",
            Box::new(|| runtime.block_on(concurrency_latency())),
        ),
        (
            "crash durability, 50 acknowledged writes",
            Box::new(|| runtime.block_on(crash_durability())),
        ),
        (
            "registration student-number validation",
            Box::new(|| runtime.block_on(registration_validation())),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let started = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {name} ({:.2?})", started.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({:.2?}): {why}", started.elapsed());
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
