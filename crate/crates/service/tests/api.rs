use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use euclid_core::play::SessionStore;
use euclid_service::router;

fn app() -> Router {
    router(Arc::new(SessionStore::default()), None)
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(
    app: &Router,
    variant: &str,
    a: u64,
    b: u64,
    human_first: bool,
) -> (StatusCode, Value) {
    call(
        app,
        "POST",
        "/sessions",
        Some(json!({"variant": variant, "a": a, "b": b, "human_first": human_first})),
    )
    .await
}

#[tokio::test]
async fn create_and_read_session() {
    let app = app();
    let (status, s) = create(&app, "m", 3, 7, true).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(s["position"], json!({"a": 3, "b": 7}));
    assert_eq!(s["turn"], "human");
    assert_eq!(s["status"], "in_progress");

    let id = s["id"].as_str().unwrap();
    let (status, got) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    let results: Vec<_> = got["legal_moves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["result"].clone())
        .collect();
    assert_eq!(results, [json!({"a": 3, "b": 4}), json!({"a": 3, "b": 1})]);
    assert_eq!(got["analysis"]["grundy"], 2);
    assert_eq!(got["analysis"]["winning_move_exists"], true);
}

#[tokio::test]
async fn engine_first_session() {
    let app = app();
    let (status, s) = create(&app, "meuclid", 3, 7, false).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(s["position"], json!({"a": 3, "b": 1}));
    assert_eq!(s["status"], "engine_won");
    assert_eq!(s["history"][0]["mover"], "engine");
    assert_eq!(s["legal_moves"], json!([]));
}

#[tokio::test]
async fn terminal_or_invalid_start_is_400() {
    let app = app();
    for human_first in [true, false] {
        let (status, body) = create(&app, "g", 4, 4, human_first).await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
        assert!(body["error"].as_str().unwrap().contains("terminal"));
    }
    assert_eq!(
        create(&app, "m", 0, 4, true).await.0,
        StatusCode::BAD_REQUEST
    );
    assert_eq!(
        create(&app, "x", 3, 4, true).await.0,
        StatusCode::BAD_REQUEST
    );
    let (status, _) = call(&app, "POST", "/sessions", Some(json!({"variant": "m"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn human_move_flows() {
    let app = app();

    let (_, s) = create(&app, "m", 3, 7, true).await;
    let uri = format!("/sessions/{}/moves", s["id"].as_str().unwrap());
    let (status, s) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"target_entry": "b", "multiplier": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(s["history"][1]["mover"], "engine");
    assert_eq!(s["history"][1]["move"]["multiplier"], 1);
    assert_eq!(s["position"], json!({"a": 3, "b": 1}));
    assert_eq!(s["status"], "engine_won");
    let (status, _) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"target_entry": "b", "multiplier": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (_, s) = create(&app, "m", 3, 7, true).await;
    let uri = format!("/sessions/{}/moves", s["id"].as_str().unwrap());
    let (_, s) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"target_entry": "b", "multiplier": 2})),
    )
    .await;
    assert_eq!(s["status"], "human_won");
    assert_eq!(s["history"].as_array().unwrap().len(), 1);

    let (_, s) = create(&app, "m", 3, 7, true).await;
    let id = s["id"].as_str().unwrap().to_owned();
    let uri = format!("/sessions/{id}/moves");
    let (status, body) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"target_entry": "b", "multiplier": 3})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].is_string());
    let (status, _) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"target_entry": "a", "multiplier": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (_, s) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(s["position"], json!({"a": 3, "b": 7}));
}

#[tokio::test]
async fn unknown_session_is_404() {
    let app = app();
    let (status, body) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body["error"].as_str().unwrap().contains("nope"));
    let (status, _) = call(
        &app,
        "POST",
        "/sessions/nope/moves",
        Some(json!({"target_entry": "b", "multiplier": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn stateless_analysis() {
    let app = app();
    let (status, r) = call(&app, "GET", "/analyze?variant=m&a=2&b=5&oracle=true", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(r["report"]["value"], 2);
    assert_eq!(r["report"]["method"], "closed_form");
    assert_eq!(r["report"]["index_j"], 0);
    assert_eq!(r["cf"], json!([2, 2]));
    assert_eq!(r["winning_moves"][0]["result"], json!({"a": 2, "b": 1}));
    assert_eq!(r["oracle"], json!({"value": 2, "agrees": true}));

    let (_, r) = call(&app, "GET", "/analyze?variant=e&a=5&b=12", None).await;
    assert_eq!(r["report"]["value"], 2);
    assert_eq!(r["report"]["index_i"], 2);
    assert_eq!(r["oracle"], Value::Null);

    let (_, r) = call(&app, "GET", "/analyze?variant=m&a=3&b=6", None).await;
    assert_eq!(r["terminal"], true);
    assert_eq!(r["report"]["value"], 0);

    // Above the oracle limit the closed form is still served.
    let (status, r) = call(
        &app,
        "GET",
        "/analyze?variant=g&a=3&b=5000&oracle=true",
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(r["oracle"], Value::Null);

    assert_eq!(
        call(&app, "GET", "/analyze?variant=g&a=0&b=5", None)
            .await
            .0,
        StatusCode::BAD_REQUEST
    );
    assert_eq!(
        call(&app, "GET", "/analyze?variant=g&a=1", None).await.0,
        StatusCode::BAD_REQUEST
    );
}

#[tokio::test]
async fn every_listed_move_is_accepted() {
    let app = app();
    for (variant, a, b) in [("e", 4, 11), ("g", 5, 13), ("m", 7, 30)] {
        let (_, s) = create(&app, variant, a, b, true).await;
        for m in s["legal_moves"].as_array().unwrap() {
            let (_, fresh) = create(&app, variant, a, b, true).await;
            let uri = format!("/sessions/{}/moves", fresh["id"].as_str().unwrap());
            let body = json!({"target_entry": m["target_entry"], "multiplier": m["multiplier"]});
            let (status, after) = call(&app, "POST", &uri, Some(body)).await;
            assert_eq!(status, StatusCode::OK, "{variant} ({a},{b}) {m}");
            assert_eq!(after["history"][0]["move"], *m);
        }
    }
}

#[tokio::test]
async fn serves_static_assets() {
    let dir = std::env::temp_dir().join(format!("euclid-static-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("index.html"), "<html>ok</html>").unwrap();
    let app = router(Arc::new(SessionStore::default()), Some(dir.clone()));
    let req = Request::builder()
        .uri("/index.html")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(&bytes[..], b"<html>ok</html>");
    std::fs::remove_dir_all(dir).unwrap();
}
