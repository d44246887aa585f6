//! Concurrent virtual examinees against a running server, with an
//! end-to-end scoring check.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use mockboard_api::RegisterRequest;
use mockboard_client::Client;
use mockboard_core::{AccountId, ExamId, MajorId, QuestionId};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use tokio::task::JoinSet;

use crate::OpsError;

const PASSWORD: &str = "simulated-examinee";

#[derive(Debug, Clone)]
pub struct SimulateOptions {
    pub server: String,
    pub exam_id: ExamId,
    pub examinees: usize,
    pub admin_user: String,
    pub admin_password: String,
    /// Exact number of correct answers per examinee; random when absent.
    pub correct: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub examinees: usize,
    pub completed: usize,
    pub mismatches: usize,
    pub lost_answers: usize,
    pub failures: Vec<String>,
    pub submit_latency_max_ms: f64,
    pub submit_latency_mean_ms: f64,
    /// From the first submit sent to the last result received.
    pub submit_wall_ms: f64,
    pub total_ms: f64,
    /// Score string to number of examinees.
    pub scores: BTreeMap<String, usize>,
}

impl SimReport {
    pub fn exit_code(&self) -> u8 {
        if self.mismatches > 0 || self.lost_answers > 0 {
            crate::EXIT_INTEGRITY
        } else if self.completed < self.examinees {
            crate::EXIT_FAILURE
        } else {
            crate::EXIT_OK
        }
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "examinees {}  completed {}  mismatches {}  lost answers {}\n\
             submit latency max {:.1} ms  mean {:.1} ms  submit wall {:.1} ms  total {:.1} ms\n",
            self.examinees,
            self.completed,
            self.mismatches,
            self.lost_answers,
            self.submit_latency_max_ms,
            self.submit_latency_mean_ms,
            self.submit_wall_ms,
            self.total_ms
        );
        for (score, n) in &self.scores {
            out.push_str(&format!("  {n:>4} x {score}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("  failed: {f}\n"));
        }
        out
    }
}

struct Outcome {
    submit_sent: Instant,
    result_received: Instant,
    mismatch: bool,
    lost: usize,
    score: String,
}

struct Examinee {
    index: usize,
    username: String,
}

/// One virtual examinee: sign in, take the exam, submit, compare.
async fn run_one(
    server: String,
    who: Examinee,
    exam_id: ExamId,
    key: HashMap<QuestionId, u8>,
    correct: Option<usize>,
    seed: u64,
) -> Result<Outcome, String> {
    let fail =
        |stage: &str, e: mockboard_client::ClientError| format!("{} {stage}: {e}", who.username);
    let mut rng =
        StdRng::seed_from_u64(seed ^ (who.index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut client = Client::new(&server);
    client
        .login(&who.username, PASSWORD)
        .await
        .map_err(|e| fail("login", e))?;
    let view = client
        .start_attempt(exam_id)
        .await
        .map_err(|e| fail("start", e))?;

    let mut positions: Vec<usize> = (0..view.questions.len()).collect();
    positions.shuffle(&mut rng);
    let right: Vec<bool> = match correct {
        Some(k) => {
            let mut v = vec![false; positions.len()];
            for &p in positions.iter().take(k) {
                v[p] = true;
            }
            v
        }
        None => vec![false; positions.len()],
    };
    let mut expected = 0u32;
    let mut saved = 0u32;
    for (i, q) in view.questions.iter().enumerate() {
        let answer_key = *key
            .get(&q.question_id)
            .ok_or_else(|| format!("{}: unknown question", who.username))?;
        let n = q.choice_order.len() as u8;
        let choice = match correct {
            Some(_) if right[i] => answer_key,
            Some(_) => (answer_key + 1 + rng.gen_range(0..n - 1)) % n,
            None => rng.gen_range(0..n),
        };
        if choice == answer_key {
            expected += 1;
        }
        client
            .save_answer(view.attempt_id, q.question_id, choice)
            .await
            .map_err(|e| fail("answer", e))?;
        saved += 1;
    }

    let submit_sent = Instant::now();
    let result = client
        .submit(view.attempt_id)
        .await
        .map_err(|e| fail("submit", e))?;
    let result_received = Instant::now();
    Ok(Outcome {
        submit_sent,
        result_received,
        mismatch: result.raw_score != expected,
        lost: saved.saturating_sub(result.answered) as usize,
        score: result.score,
    })
}

fn registration(
    username: &str,
    student_number: String,
    index: usize,
    course: mockboard_core::CourseId,
    major: Option<MajorId>,
) -> RegisterRequest {
    RegisterRequest {
        username: username.into(),
        password: PASSWORD.into(),
        student_number,
        last_name: format!("Examinee{index:03}"),
        first_name: "Virtual".into(),
        middle_name: String::new(),
        address: "Simulation".into(),
        contact_number: "0000000000".into(),
        birthdate: NaiveDate::from_ymd_opt(2000, 1, 1).expect("valid date"),
        course_id: course,
        major_id: major,
        terms_accepted: true,
    }
}

/// Registers and verifies `examinees` accounts through the admin API, runs
/// them concurrently and checks every returned score against the script.
pub async fn simulate(opts: &SimulateOptions) -> Result<SimReport, OpsError> {
    if opts.examinees == 0 || opts.examinees > 9999 {
        return Err(OpsError::Usage(
            "examinees must be between 1 and 9999".into(),
        ));
    }
    let started = Instant::now();
    let mut admin = Client::new(&opts.server);
    admin.login(&opts.admin_user, &opts.admin_password).await?;
    let exam = admin.exam(opts.exam_id).await?;
    let key: HashMap<QuestionId, u8> = admin
        .questions(opts.exam_id)
        .await?
        .into_iter()
        .map(|q| (q.question_id, q.correct_index))
        .collect();
    if let Some(k) = opts.correct {
        if k > exam.question_ids.len() {
            return Err(OpsError::Usage(format!(
                "exam has only {} questions",
                exam.question_ids.len()
            )));
        }
    }
    let course = admin
        .courses()
        .await?
        .into_iter()
        .find(|c| c.course_id == exam.course_id)
        .ok_or_else(|| OpsError::Usage("exam's course is not visible to this admin".into()))?;
    let major = exam
        .major_id
        .or_else(|| course.majors.first().map(|m| m.major_id));

    let mut rng = StdRng::seed_from_u64(opts.seed ^ u64::from(rand::random::<u32>()));
    let run: u32 = rng.gen();
    let year = rng.gen_range(1000..10000);
    let mut report = SimReport {
        examinees: opts.examinees,
        ..SimReport::default()
    };

    let mut registrations = JoinSet::new();
    for index in 0..opts.examinees {
        let username = format!("sim-{run:08x}-{index}");
        let req = registration(
            &username,
            format!("{year}-{index:04}"),
            index,
            exam.course_id,
            major,
        );
        let client = Client::new(&opts.server);
        registrations.spawn(async move {
            let account = client
                .register(&req)
                .await
                .map_err(|e| format!("{username} register: {e}"))?;
            Ok::<(usize, String, AccountId), String>((index, username, account.account_id))
        });
    }
    let mut ready = Vec::new();
    while let Some(joined) = registrations.join_next().await {
        match joined.map_err(|e| e.to_string()).and_then(|r| r) {
            Ok((index, username, id)) => match admin.verify_account(id).await {
                Ok(_) => ready.push(Examinee { index, username }),
                Err(e) => report.failures.push(format!("{username} verify: {e}")),
            },
            Err(e) => report.failures.push(e),
        }
    }

    let mut runs = JoinSet::new();
    for who in ready {
        runs.spawn(run_one(
            opts.server.clone(),
            who,
            opts.exam_id,
            key.clone(),
            opts.correct,
            opts.seed,
        ));
    }
    let mut latencies = Vec::new();
    let mut first_sent: Option<Instant> = None;
    let mut last_received: Option<Instant> = None;
    while let Some(joined) = runs.join_next().await {
        match joined.map_err(|e| e.to_string()).and_then(|r| r) {
            Ok(o) => {
                report.completed += 1;
                report.mismatches += usize::from(o.mismatch);
                report.lost_answers += o.lost;
                *report.scores.entry(o.score).or_default() += 1;
                latencies.push(o.result_received - o.submit_sent);
                first_sent = Some(first_sent.map_or(o.submit_sent, |t| t.min(o.submit_sent)));
                last_received =
                    Some(last_received.map_or(o.result_received, |t| t.max(o.result_received)));
            }
            Err(e) => report.failures.push(e),
        }
    }
    let ms = |d: Duration| d.as_secs_f64() * 1000.0;
    if !latencies.is_empty() {
        report.submit_latency_max_ms = latencies.iter().copied().map(ms).fold(0.0, f64::max);
        report.submit_latency_mean_ms =
            latencies.iter().copied().map(ms).sum::<f64>() / latencies.len() as f64;
    }
    if let (Some(a), Some(b)) = (first_sent, last_received) {
        report.submit_wall_ms = ms(b - a);
    }
    report.total_ms = ms(started.elapsed());
    Ok(report)
}
