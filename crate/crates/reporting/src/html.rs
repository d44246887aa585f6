use std::fmt::Write;

use crate::Certificate;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

/// Self-contained printable page; styling beyond print basics is left to
/// the browser client.
pub fn certificate_html(cert: &Certificate) -> String {
    let mut rows = String::new();
    for (i, row) in cert.rows.iter().enumerate() {
        let _ = write!(
            rows,
            "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>\n",
            i + 1,
            escape(&row.exam_name),
            row.submitted_at.format("%B %d, %Y %I:%M:%S %p"),
            escape(&row.score),
            row.outcome,
        );
    }
    let program = match &cert.major {
        Some(major) => format!("{} major in {}", escape(&cert.course), escape(major)),
        None => escape(&cert.course),
    };
    format!(
        r#"<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Examination Progress - {name}</title>
<style>
body {{ font-family: serif; margin: 2em; }}
table {{ border-collapse: collapse; width: 100%; }}
th, td {{ border: 1px solid #000; padding: 4px 8px; text-align: left; }}
@media print {{ .no-print {{ display: none; }} }}
</style>
</head>
<body>
<h1>EXAMINATION PROGRESS</h1>
<p>Name: {name}<br>Student Number: {number}<br>Program: {program}</p>
<table>
<thead><tr><th>#</th><th>Exam</th><th>Date Taken</th><th>Score</th><th>Status</th></tr></thead>
<tbody>
{rows}</tbody>
</table>
<p>Overall rating: {rating} (passing {threshold}) &mdash; {outcome}</p>
<p>Issued {issued}</p>
<button class="no-print" onclick="window.print()">Print</button>
</body>
</html>
"#,
        name = escape(&cert.examinee_name),
        number = escape(&cert.student_number),
        rating = cert.rating,
        threshold = cert.threshold,
        outcome = cert.outcome,
        issued = cert.issued_at.format("%B %d, %Y %I:%M %p"),
    )
}

#[cfg(test)]
mod tests {
    use super::escape;

    #[test]
    fn escapes_markup() {
        assert_eq!(
            escape("<b>\"O'Neil\" & co</b>"),
            "&lt;b&gt;&quot;O&#39;Neil&quot; &amp; co&lt;/b&gt;"
        );
    }
}
