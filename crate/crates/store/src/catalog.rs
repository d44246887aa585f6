//! Courses, exams, questions and announcements.

use chrono::{DateTime, NaiveDate, Utc};
use mockboard_core::model::FieldErrors;
use mockboard_core::{
    AnnouncementId, CourseId, Exam, ExamId, MajorId, Percent, Question, QuestionId,
};
use serde::{Deserialize, Serialize};

use crate::model::{Announcement, Course, Major};
use crate::state::{Change, State};
use crate::store::Store;
use crate::{Result, StoreError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorInput {
    /// Existing major to keep (and possibly rename); `None` adds a new one.
    pub major_id: Option<MajorId>,
    pub name: String,
}

/// Editable exam fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExamDraft {
    pub course_id: CourseId,
    pub major_id: Option<MajorId>,
    pub name: String,
    pub instructions: String,
    pub exam_date: NaiveDate,
    pub reexam_date: Option<NaiveDate>,
    pub duration_minutes: u32,
    pub passing_rate: Percent,
    /// Defaults to 100% when the course has no other exam.
    pub weight: Option<Percent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionDraft {
    pub stem: String,
    pub choices: Vec<String>,
    pub correct_index: u8,
    pub category: Option<String>,
}

fn name_key(name: &str) -> String {
    name.trim().to_lowercase()
}

fn build_majors(existing: &[Major], inputs: &[MajorInput]) -> Result<Vec<Major>> {
    let mut majors = Vec::with_capacity(inputs.len());
    for (i, input) in inputs.iter().enumerate() {
        let name = input.name.trim();
        if name.is_empty() {
            return Err(StoreError::field(
                &format!("majors[{i}].name"),
                "major name is required",
            ));
        }
        if majors
            .iter()
            .any(|m: &Major| name_key(&m.name) == name_key(name))
        {
            return Err(StoreError::DuplicateKey("major name"));
        }
        let major_id = match input.major_id {
            Some(id) if existing.iter().any(|m| m.major_id == id) => id,
            Some(_) => return Err(StoreError::ForeignKeyMissing("major")),
            None => MajorId::new(),
        };
        majors.push(Major {
            major_id,
            name: name.to_string(),
        });
    }
    Ok(majors)
}

fn check_course_name(state: &State, name: &str, except: Option<CourseId>) -> Result<()> {
    if name.trim().is_empty() {
        return Err(StoreError::field("name", "course name is required"));
    }
    let taken = state
        .courses()
        .any(|c| Some(c.course_id) != except && name_key(&c.name) == name_key(name));
    if taken {
        return Err(StoreError::DuplicateKey("course name"));
    }
    Ok(())
}

fn major_in_use(state: &State, course: CourseId, major: MajorId) -> bool {
    state
        .exams()
        .any(|e| e.course_id == course && e.major_id == Some(major))
        || state
            .accounts()
            .filter_map(|a| a.profile.as_ref())
            .any(|p| p.course_id == course && p.major_id == Some(major))
}

fn build_exam(
    state: &State,
    draft: &ExamDraft,
    base: Option<&Exam>,
    now: DateTime<Utc>,
) -> Result<Exam> {
    let course = state
        .course(draft.course_id)
        .ok_or(StoreError::ForeignKeyMissing("course"))?;
    let mut errors = FieldErrors::new();
    if let Some(major) = draft.major_id {
        if !course.has_major(major) {
            errors.insert(
                "major_id".into(),
                "major does not belong to the course".into(),
            );
        }
    }
    let others = state
        .exams()
        .filter(|e| e.course_id == draft.course_id && Some(e.exam_id) != base.map(|b| b.exam_id))
        .count();
    let weight = match (draft.weight, base) {
        (Some(w), _) => w,
        (None, Some(b)) => b.weight,
        (None, None) if others == 0 => Percent::HUNDRED,
        (None, None) => {
            errors.insert(
                "weight".into(),
                "weight is required when the course has other exams".into(),
            );
            Percent::HUNDRED
        }
    };
    let exam = Exam {
        exam_id: base.map_or_else(ExamId::new, |b| b.exam_id),
        course_id: draft.course_id,
        major_id: draft.major_id,
        name: draft.name.trim().to_string(),
        instructions: draft.instructions.clone(),
        exam_date: draft.exam_date,
        reexam_date: draft.reexam_date,
        duration_minutes: draft.duration_minutes,
        passing_rate: draft.passing_rate,
        weight,
        question_ids: base.map(|b| b.question_ids.clone()).unwrap_or_default(),
        created_at: base.map_or(now, |b| b.created_at),
        updated_at: base.map(|_| now),
    };
    errors.extend(exam.validate());
    if !errors.is_empty() {
        return Err(StoreError::Validation(errors));
    }
    Ok(exam)
}

fn weight_warnings(state: &State, exam: &Exam) -> Vec<String> {
    let total: u64 = state
        .exams()
        .filter(|e| e.course_id == exam.course_id && e.exam_id != exam.exam_id)
        .map(|e| u64::from(e.weight.hundredths()))
        .sum::<u64>()
        + u64::from(exam.weight.hundredths());
    if total > 10_000 {
        vec![format!(
            "exam weights for this course total {}.{:02}%, above 100%",
            total / 100,
            total % 100
        )]
    } else {
        vec![]
    }
}

fn build_question(
    exam_id: ExamId,
    question_id: QuestionId,
    draft: &QuestionDraft,
) -> std::result::Result<Question, FieldErrors> {
    let question = Question {
        question_id,
        exam_id,
        stem: draft.stem.trim().to_string(),
        choices: draft.choices.iter().map(|c| c.trim().to_string()).collect(),
        correct_index: draft.correct_index,
        category: draft
            .category
            .as_deref()
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(String::from),
    };
    let errors = question.validate();
    if errors.is_empty() {
        Ok(question)
    } else {
        Err(errors)
    }
}

fn has_attempts(state: &State, exam: ExamId) -> bool {
    state.attempts().any(|a| a.exam_id == exam)
}

impl Store {
    pub fn create_course(
        &self,
        name: &str,
        majors: &[MajorInput],
        created_by: &str,
        now: DateTime<Utc>,
    ) -> Result<Course> {
        self.commit(|state| {
            check_course_name(state, name, None)?;
            let course = Course {
                course_id: CourseId::new(),
                name: name.trim().to_string(),
                majors: build_majors(&[], majors)?,
                created_by: created_by.to_string(),
                created_at: now,
                updated_at: None,
            };
            Ok((vec![Change::PutCourse(course.clone())], course))
        })
    }

    /// Replaces the name and major list. Majors referenced by exams or
    /// examinees cannot be removed.
    pub fn update_course(
        &self,
        id: CourseId,
        name: &str,
        majors: &[MajorInput],
        now: DateTime<Utc>,
    ) -> Result<Course> {
        self.commit(|state| {
            let course = state.course(id).ok_or(StoreError::NotFound("course"))?;
            check_course_name(state, name, Some(id))?;
            let new_majors = build_majors(&course.majors, majors)?;
            for old in &course.majors {
                let kept = new_majors.iter().any(|m| m.major_id == old.major_id);
                if !kept && major_in_use(state, id, old.major_id) {
                    return Err(StoreError::DeleteRestricted(
                        "major is referenced by exams or examinees",
                    ));
                }
            }
            let mut updated = course.clone();
            updated.name = name.trim().to_string();
            updated.majors = new_majors;
            updated.updated_at = Some(now);
            Ok((vec![Change::PutCourse(updated.clone())], updated))
        })
    }

    pub fn delete_course(&self, id: CourseId) -> Result<()> {
        self.commit(|state| {
            state.course(id).ok_or(StoreError::NotFound("course"))?;
            if state.exams().any(|e| e.course_id == id) {
                return Err(StoreError::DeleteRestricted("course has exams"));
            }
            let referenced = state
                .accounts()
                .any(|a| a.course_id() == Some(id) || a.scope_course_id == Some(id));
            if referenced {
                return Err(StoreError::DeleteRestricted("course has accounts"));
            }
            Ok((vec![Change::DeleteCourse(id)], ()))
        })
    }

    pub fn course(&self, id: CourseId) -> Option<Course> {
        self.read(|s| s.course(id).cloned())
    }

    pub fn list_courses(&self) -> Vec<Course> {
        self.read(|s| s.courses().cloned().collect())
    }

    /// Returns the exam and any weight warnings for its course.
    pub fn create_exam(
        &self,
        draft: &ExamDraft,
        now: DateTime<Utc>,
    ) -> Result<(Exam, Vec<String>)> {
        self.commit(|state| {
            let exam = build_exam(state, draft, None, now)?;
            let warnings = weight_warnings(state, &exam);
            Ok((vec![Change::PutExam(exam.clone())], (exam, warnings)))
        })
    }

    pub fn update_exam(
        &self,
        id: ExamId,
        draft: &ExamDraft,
        now: DateTime<Utc>,
    ) -> Result<(Exam, Vec<String>)> {
        self.commit(|state| {
            let base = state.exam(id).ok_or(StoreError::NotFound("exam"))?;
            if base.course_id != draft.course_id && has_attempts(state, id) {
                return Err(StoreError::Conflict(
                    "cannot move an exam with attempts to another course",
                ));
            }
            let exam = build_exam(state, draft, Some(base), now)?;
            let warnings = weight_warnings(state, &exam);
            Ok((vec![Change::PutExam(exam.clone())], (exam, warnings)))
        })
    }

    /// Removes the exam and its questions. Refused once anyone has attempted it.
    pub fn delete_exam(&self, id: ExamId) -> Result<()> {
        self.commit(|state| {
            state.exam(id).ok_or(StoreError::NotFound("exam"))?;
            if has_attempts(state, id) {
                return Err(StoreError::DeleteRestricted("exam has attempts"));
            }
            Ok((vec![Change::DeleteExam(id)], ()))
        })
    }

    pub fn exam(&self, id: ExamId) -> Option<Exam> {
        self.read(|s| s.exam(id).cloned())
    }

    pub fn list_exams(&self, course: Option<CourseId>) -> Vec<Exam> {
        self.read(|s| {
            s.exams()
                .filter(|e| course.is_none_or(|c| e.course_id == c))
                .cloned()
                .collect()
        })
    }

    /// All-or-nothing: any invalid draft rejects the whole batch. Field
    /// errors are keyed `questions[i].field`.
    pub fn add_questions(
        &self,
        exam_id: ExamId,
        drafts: &[QuestionDraft],
    ) -> Result<Vec<Question>> {
        self.commit(|state| {
            state
                .exam(exam_id)
                .ok_or(StoreError::ForeignKeyMissing("exam"))?;
            let mut errors = FieldErrors::new();
            let mut questions = Vec::with_capacity(drafts.len());
            for (i, draft) in drafts.iter().enumerate() {
                match build_question(exam_id, QuestionId::new(), draft) {
                    Ok(q) => questions.push(q),
                    Err(e) => errors.extend(
                        e.into_iter()
                            .map(|(k, v)| (format!("questions[{i}].{k}"), v)),
                    ),
                }
            }
            if !errors.is_empty() {
                return Err(StoreError::Validation(errors));
            }
            if questions.is_empty() {
                return Ok((vec![], questions));
            }
            Ok((vec![Change::PutQuestions(questions.clone())], questions))
        })
    }

    pub fn add_question(&self, exam_id: ExamId, draft: &QuestionDraft) -> Result<Question> {
        self.commit(|state| {
            state
                .exam(exam_id)
                .ok_or(StoreError::ForeignKeyMissing("exam"))?;
            let question = build_question(exam_id, QuestionId::new(), draft)
                .map_err(StoreError::Validation)?;
            Ok((vec![Change::PutQuestions(vec![question.clone()])], question))
        })
    }

    /// Questions are frozen once their exam has attempts.
    pub fn update_question(&self, id: QuestionId, draft: &QuestionDraft) -> Result<Question> {
        self.commit(|state| {
            let old = state.question(id).ok_or(StoreError::NotFound("question"))?;
            if has_attempts(state, old.exam_id) {
                return Err(StoreError::Conflict(
                    "questions of an attempted exam cannot be edited",
                ));
            }
            let question =
                build_question(old.exam_id, id, draft).map_err(StoreError::Validation)?;
            Ok((vec![Change::PutQuestions(vec![question.clone()])], question))
        })
    }

    pub fn delete_question(&self, id: QuestionId) -> Result<()> {
        self.commit(|state| {
            let q = state.question(id).ok_or(StoreError::NotFound("question"))?;
            if has_attempts(state, q.exam_id) {
                return Err(StoreError::DeleteRestricted("exam has attempts"));
            }
            Ok((vec![Change::DeleteQuestion(id)], ()))
        })
    }

    pub fn question(&self, id: QuestionId) -> Option<Question> {
        self.read(|s| s.question(id).cloned())
    }

    pub fn list_questions(&self, exam_id: ExamId) -> Result<Vec<Question>> {
        self.read(|s| {
            let exam = s.exam(exam_id).ok_or(StoreError::NotFound("exam"))?;
            Ok(s.questions_of(exam).into_iter().cloned().collect())
        })
    }

    pub fn post_announcement(
        &self,
        body: &str,
        author: &str,
        now: DateTime<Utc>,
    ) -> Result<Announcement> {
        self.commit(|_| {
            if body.trim().is_empty() {
                return Err(StoreError::field("body", "announcement text is required"));
            }
            let a = Announcement {
                announcement_id: AnnouncementId::new(),
                body: body.trim().to_string(),
                author: author.to_string(),
                created_at: now,
            };
            Ok((vec![Change::PutAnnouncement(a.clone())], a))
        })
    }

    pub fn delete_announcement(&self, id: AnnouncementId) -> Result<()> {
        self.commit(|state| {
            state
                .announcement(id)
                .ok_or(StoreError::NotFound("announcement"))?;
            Ok((vec![Change::DeleteAnnouncement(id)], ()))
        })
    }

    /// Newest first.
    pub fn list_announcements(&self) -> Vec<Announcement> {
        self.read(|s| s.announcements().into_iter().cloned().collect())
    }
}
