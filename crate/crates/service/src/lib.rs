//! Upload form and coding endpoint. Each request is analysed in isolation
//! with the same pipeline as the command-line tool.

use axum::extract::{DefaultBodyLimit, Multipart};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;

use hsc_core::io::{parse_tsv, write_report, ReportFormat, ReportOptions};
use hsc_core::{analyze, AnalysisConfig, Confidence};

/// Default upload cap, 10 MB.
pub const DEFAULT_UPLOAD_LIMIT: usize = 10 * 1024 * 1024;

const FORM: &str = r#"<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Homogeneous subset coding</title>
<style>body{font-family:sans-serif;margin:2em;max-width:44em}label{display:block;margin:.6em 0}</style>
</head>
<body>
<h1>Homogeneous subset coding</h1>
<p>Upload a tab-separated file: a first line of trait names, then one line
per specimen with the taxon name followed by one value per trait.</p>
<form method="post" action="/code" enctype="multipart/form-data">
<label>Data file <input type="file" name="datafile" required></label>
<label>Report <select name="format"><option value="html">HTML</option><option value="text">plain text</option></select></label>
<label>Confidence <select name="confidence"><option>0.95</option><option>0.99</option></select></label>
<input type="submit" value="Upload">
</form>
</body>
</html>
"#;

/// Router with the form at `/` and the upload endpoint at `/code`.
pub fn app(upload_limit: usize) -> Router {
    Router::new()
        .route("/", get(form))
        .route("/code", post(code))
        .layer(DefaultBodyLimit::max(upload_limit))
        .fallback(not_found)
}

async fn form() -> Html<&'static str> {
    Html(FORM)
}

async fn not_found() -> (StatusCode, &'static str) {
    (StatusCode::NOT_FOUND, "not found\n")
}

fn bad_request(message: impl std::fmt::Display) -> Response {
    (StatusCode::BAD_REQUEST, format!("{message}\n")).into_response()
}

async fn code(mut multipart: Multipart) -> Response {
    let mut data = None;
    let mut format = ReportFormat::Html;
    let mut confidence = Confidence::default();
    loop {
        let field = match multipart.next_field().await {
            Ok(Some(field)) => field,
            Ok(None) => break,
            Err(e) => return (e.status(), format!("{}\n", e.body_text())).into_response(),
        };
        let name = field.name().unwrap_or_default().to_string();
        let bytes = match field.bytes().await {
            Ok(b) => b,
            Err(e) => return (e.status(), format!("{}\n", e.body_text())).into_response(),
        };
        match name.as_str() {
            "datafile" => data = Some(bytes),
            "format" => {
                format = match bytes.as_ref() {
                    b"html" => ReportFormat::Html,
                    b"text" => ReportFormat::Text,
                    other => {
                        return bad_request(format!(
                            "unknown format `{}` (expected html or text)",
                            String::from_utf8_lossy(other)
                        ))
                    }
                }
            }
            "confidence" => {
                confidence = match std::str::from_utf8(&bytes).map(|s| s.trim().parse()) {
                    Ok(Ok(c)) => c,
                    Ok(Err(e)) => return bad_request(e),
                    Err(_) => return bad_request("confidence is not text"),
                }
            }
            _ => {}
        }
    }
    let Some(data) = data else {
        return bad_request("missing `datafile` field");
    };

    let table = match parse_tsv(&data) {
        Ok(t) => t,
        Err(e) => return bad_request(e),
    };
    let analysis = match analyze(&table, &AnalysisConfig::uniform(confidence)) {
        Ok(a) => a,
        Err(e) => return bad_request(e),
    };
    let options = ReportOptions {
        config: analysis.config,
        verbose: false,
    };
    let body = write_report(&analysis.traits, &analysis.matrix, format, &options);
    let content_type = match format {
        ReportFormat::Html => "text/html; charset=utf-8",
        ReportFormat::Text => "text/plain; charset=utf-8",
    };
    ([(header::CONTENT_TYPE, content_type)], body).into_response()
}
