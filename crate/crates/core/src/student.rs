/// `YYYY-XXXX`: four ASCII digits, a hyphen, four ASCII digits.
pub fn validate_student_number(s: &str) -> bool {
    let b = s.as_bytes();
    b.len() == 9
        && b[4] == b'-'
        && b[..4].iter().all(u8::is_ascii_digit)
        && b[5..].iter().all(u8::is_ascii_digit)
}
