#![allow(dead_code)]

use std::io::{BufRead, BufReader};
use std::path::Path;
use std::process::{Child, Command, Output, Stdio};
use std::time::Duration;

use chrono::{NaiveDate, Utc};
use mockboard_api::{CourseRequest, ExamRequest, QuestionRequest};
use mockboard_client::Client;
use mockboard_core::{Exam, Percent};

pub const ADMIN: &str = "admin";
pub const ADMIN_PASSWORD: &str = "admin-password";

pub fn opsctl() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_opsctl"));
    cmd.env("RUST_LOG", "warn")
        .env_remove("MOCKBOARD_ADMIN_PASSWORD");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    opsctl().args(args).output().expect("opsctl runs")
}

pub fn init_admin(data_dir: &Path) {
    let out = run(&[
        "init-admin",
        "--data-dir",
        data_dir.to_str().unwrap(),
        "--username",
        ADMIN,
        "--password",
        ADMIN_PASSWORD,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// A running `opsctl serve` child and its base URL.
pub struct Served {
    pub child: Child,
    pub url: String,
}

impl Served {
    pub fn kill(mut self) {
        self.child.kill().ok();
        self.child.wait().ok();
    }
}

impl Drop for Served {
    fn drop(&mut self) {
        self.child.kill().ok();
        self.child.wait().ok();
    }
}

pub fn serve(data_dir: &Path) -> Served {
    let mut child = opsctl()
        .args([
            "serve",
            "--data-dir",
            data_dir.to_str().unwrap(),
            "--listen",
            "127.0.0.1:0",
        ])
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("serve starts");
    let stdout = child.stdout.take().unwrap();
    let mut line = String::new();
    BufReader::new(stdout).read_line(&mut line).unwrap();
    let url = line
        .trim()
        .strip_prefix("listening on ")
        .unwrap_or_else(|| panic!("unexpected serve output {line:?}"))
        .to_string();
    Served { child, url }
}

pub async fn admin(url: &str) -> Client {
    let mut c = Client::new(url);
    for _ in 0..50 {
        match c.login(ADMIN, ADMIN_PASSWORD).await {
            Ok(_) => return c,
            Err(e) if e.status().is_none() => tokio::time::sleep(Duration::from_millis(20)).await,
            Err(e) => panic!("{e}"),
        }
    }
    panic!("server never came up");
}

pub fn questions(n: usize) -> Vec<QuestionRequest> {
    (0..n)
        .map(|i| QuestionRequest {
            stem: format!("Question {}", i + 1),
            choices: vec![
                "alpha".into(),
                "bravo".into(),
                "charlie".into(),
                "delta".into(),
            ],
            correct_index: (i % 4) as u8,
            category: None,
        })
        .collect()
}

/// Course plus an exam open today with `n` questions.
pub async fn open_exam(admin: &Client, n: usize, weight: u32, duration_minutes: u32) -> Exam {
    let course = admin
        .create_course(&CourseRequest {
            name: "BS Criminology".into(),
            majors: vec![],
        })
        .await
        .unwrap();
    let today: NaiveDate = Utc::now().date_naive() - chrono::Duration::days(1);
    let exam = admin
        .create_exam(&ExamRequest {
            course_id: course.course_id,
            major_id: None,
            name: "Criminalistics".into(),
            instructions: String::new(),
            exam_date: today,
            reexam_date: None,
            duration_minutes,
            passing_rate: Percent::whole(75),
            weight: Some(Percent::whole(weight)),
        })
        .await
        .unwrap()
        .exam;
    if n > 0 {
        admin
            .add_questions(exam.exam_id, questions(n))
            .await
            .unwrap();
    }
    admin.exam(exam.exam_id).await.unwrap()
}
