#![allow(dead_code)]

use std::sync::Arc;

use chrono::{DateTime, NaiveDate, Utc};
use mockboard_api::{CourseRequest, ExamRequest, QuestionRequest, RegisterRequest};
use mockboard_client::Client;
use mockboard_core::{AccountId, CourseId, Exam, Percent};
use mockboard_server::{AppState, ManualClock, ServerConfig};
use mockboard_store::{Account, AccountStatus, PasswordDigest, Role, Store};
use tempfile::TempDir;

pub const ADMIN_PASSWORD: &str = "admin-pass-1";
pub const EXAMINEE_PASSWORD: &str = "examinee-pass-1";

pub fn at(s: &str) -> DateTime<Utc> {
    DateTime::parse_from_rfc3339(s).unwrap().to_utc()
}

pub fn date(s: &str) -> NaiveDate {
    s.parse().unwrap()
}

pub struct Harness {
    pub dir: TempDir,
    pub store: Arc<Store>,
    pub clock: Arc<ManualClock>,
    pub server: String,
    pub admin: Client,
}

impl Harness {
    pub fn client(&self) -> Client {
        Client::new(&self.server)
    }

    pub fn seed_admin(&self, username: &str, scope: Option<CourseId>) -> AccountId {
        let account = Account {
            account_id: AccountId::new(),
            username: username.into(),
            password: PasswordDigest::new(ADMIN_PASSWORD),
            role: Role::Admin,
            status: AccountStatus::Verified,
            scope_course_id: scope,
            profile: None,
            created_at: self.clock_now(),
            updated_at: None,
        };
        self.store.create_account(account).unwrap().account_id
    }

    pub fn clock_now(&self) -> DateTime<Utc> {
        use mockboard_server::Clock;
        self.clock.now()
    }

    pub async fn admin_as(&self, username: &str, scope: Option<CourseId>) -> Client {
        self.seed_admin(username, scope);
        let mut c = self.client();
        c.login(username, ADMIN_PASSWORD).await.unwrap();
        c
    }

    pub async fn course(&self, name: &str) -> CourseId {
        self.admin
            .create_course(&CourseRequest {
                name: name.into(),
                majors: vec![],
            })
            .await
            .unwrap()
            .course_id
    }

    /// Exam on 2018-11-21 with `n` four-choice questions, key `i % 4`.
    pub async fn exam(&self, course: CourseId, name: &str, weight: u32, n: usize) -> Exam {
        let exam = self
            .admin
            .create_exam(&ExamRequest {
                course_id: course,
                major_id: None,
                name: name.into(),
                instructions: "Choose the best answer.".into(),
                exam_date: date("2018-11-21"),
                reexam_date: Some(date("2018-11-28")),
                duration_minutes: 60,
                passing_rate: Percent::whole(75),
                weight: Some(Percent::whole(weight)),
            })
            .await
            .unwrap()
            .exam;
        self.admin
            .add_questions(exam.exam_id, questions(n))
            .await
            .unwrap();
        self.admin.exam(exam.exam_id).await.unwrap()
    }

    /// Registers, verifies and signs in an examinee.
    pub async fn examinee(
        &self,
        username: &str,
        number: &str,
        course: CourseId,
    ) -> (AccountId, Client) {
        let mut c = self.client();
        let account = c
            .register(&registration(username, number, course))
            .await
            .unwrap();
        self.admin.verify_account(account.account_id).await.unwrap();
        c.login(username, EXAMINEE_PASSWORD).await.unwrap();
        (account.account_id, c)
    }
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
            category: Some("general".into()),
        })
        .collect()
}

pub fn registration(username: &str, number: &str, course: CourseId) -> RegisterRequest {
    RegisterRequest {
        username: username.into(),
        password: EXAMINEE_PASSWORD.into(),
        student_number: number.into(),
        last_name: "Dela Cruz".into(),
        first_name: "Juan".into(),
        middle_name: "Santos".into(),
        address: "Quezon City".into(),
        contact_number: "09171234567".into(),
        birthdate: date("1996-04-02"),
        course_id: course,
        major_id: None,
        terms_accepted: true,
    }
}

pub async fn start() -> Harness {
    start_with(ServerConfig::default()).await
}

pub async fn start_with(mut config: ServerConfig) -> Harness {
    let dir = TempDir::new().unwrap();
    config.data_dir = dir.path().to_path_buf();
    let store = Arc::new(mockboard_server::open_store(&config).unwrap());
    let clock = Arc::new(ManualClock::new(at("2018-11-21T08:00:00Z")));
    let state = AppState::new(Arc::clone(&store), clock.clone(), config);
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let server = format!("http://{}", listener.local_addr().unwrap());
    tokio::spawn(mockboard_server::serve(
        listener,
        state,
        std::future::pending(),
    ));
    let mut harness = Harness {
        dir,
        store,
        clock,
        server,
        admin: Client::new("http://unused"),
    };
    harness.admin = harness.admin_as("registrar", None).await;
    harness
}
