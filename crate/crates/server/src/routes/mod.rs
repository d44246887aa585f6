pub mod admin;
pub mod examinee;
pub mod public;

use axum::routing::{get, post, put};
use axum::Router;

use crate::AppState;

pub fn api() -> Router<AppState> {
    Router::new()
        .route("/health", get(public::health))
        .route("/register", post(public::register))
        .route("/registration/courses", get(admin::public_courses))
        .route("/login", post(public::login))
        .route("/logout", post(public::logout))
        .route("/me", get(public::me))
        .route("/dashboard", get(examinee::dashboard))
        .route("/attempts", post(examinee::start_attempt))
        .route("/attempts/{id}", get(examinee::get_attempt))
        .route(
            "/attempts/{id}/answers/{question_id}",
            put(examinee::save_answer),
        )
        .route("/attempts/{id}/submit", post(examinee::submit))
        .route("/attempts/{id}/result", get(examinee::result))
        .route("/certificate", get(examinee::certificate))
        .route(
            "/courses",
            get(admin::list_courses).post(admin::create_course),
        )
        .route(
            "/courses/{id}",
            get(admin::get_course)
                .put(admin::update_course)
                .delete(admin::delete_course),
        )
        .route("/exams", get(admin::list_exams).post(admin::create_exam))
        .route(
            "/exams/{id}",
            get(admin::get_exam)
                .put(admin::update_exam)
                .delete(admin::delete_exam),
        )
        .route(
            "/exams/{id}/questions",
            get(admin::list_questions).post(admin::add_question),
        )
        .route("/exams/{id}/questions/batch", post(admin::add_questions))
        .route(
            "/exams/{id}/questions/{question_id}",
            put(admin::update_question).delete(admin::delete_question),
        )
        .route("/accounts", get(admin::list_accounts))
        .route("/accounts/{id}/verify", post(admin::verify_account))
        .route("/accounts/{id}/disable", post(admin::disable_account))
        .route(
            "/announcements",
            get(admin::list_announcements).post(admin::post_announcement),
        )
        .route(
            "/announcements/{id}",
            axum::routing::delete(admin::delete_announcement),
        )
        .route("/reports/grades/{exam}", get(admin::grades))
        .route("/reports/item-analysis/{exam}", get(admin::item_analysis))
}
