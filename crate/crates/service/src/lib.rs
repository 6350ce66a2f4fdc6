//! HTTP front end for annotation sessions.
//!
//! Every mutating call on a session takes that session's lock for the
//! whole operation, so concurrent requests against one session are applied
//! one at a time. Sessions live in memory only; the masks and
//! `annotations.jsonl` they write are the only state that survives a
//! restart.
//!
//! Routes:
//!
//! | method | path                              | result                       |
//! |--------|-----------------------------------|------------------------------|
//! | POST   | `/api/sessions`                   | 201 `SessionView`            |
//! | GET    | `/api/sessions/{id}`              | `SessionView`                |
//! | GET    | `/api/sessions/{id}/image`        | current source image bytes   |
//! | POST   | `/api/sessions/{id}/points`       | `PointResponse`              |
//! | GET    | `/api/sessions/{id}/preview`      | PNG overlay of mask on image |
//! | POST   | `/api/sessions/{id}/advance`      | `SessionView`                |
//! | POST   | `/api/sessions/{id}/undo`         | `SessionView`                |
//! | POST   | `/api/sessions/{id}/terminate`    | `SessionView`                |
//!
//! Errors are JSON `{"error": <code>, "reason": <text>}`.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::{Component, Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

use trimask_core::io::{content_type, load_rgb};
use trimask_core::mask::encode_rgb_png;
use trimask_core::{overlay_preview, Session, SessionError, SessionEvent};

const PLACEHOLDER_INDEX: &str = include_str!("index.html");

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Sessions may only read and write below this directory.
    pub root: PathBuf,
    /// Static front-end assets served at `/`.
    pub ui_dir: Option<PathBuf>,
    pub overlay_color: [u8; 3],
    pub overlay_alpha: f64,
}

impl ServiceConfig {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        ServiceConfig {
            root: root.into(),
            ui_dir: None,
            overlay_color: [255, 0, 0],
            overlay_alpha: 0.4,
        }
    }
}

type SharedSession = Arc<Mutex<Session>>;

pub struct AppState {
    root: PathBuf,
    overlay_color: [u8; 3],
    overlay_alpha: f64,
    sessions: RwLock<HashMap<String, SharedSession>>,
}

impl AppState {
    pub fn new(config: &ServiceConfig) -> std::io::Result<Arc<Self>> {
        Ok(Arc::new(AppState {
            root: config.root.canonicalize()?,
            overlay_color: config.overlay_color,
            overlay_alpha: config.overlay_alpha,
            sessions: RwLock::new(HashMap::new()),
        }))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Opens a session directly, with the same sandbox rules as the API.
    pub fn create_session(&self, input: &str, output: &str) -> Result<SessionView, ApiError> {
        let input = self.resolve(input, true)?;
        let output = self.resolve(output, false)?;
        let session = Session::start(&input, &output)?.record_annotations(true);
        let id = uuid::Uuid::new_v4().simple().to_string();
        let view = SessionView::of(&id, &session);
        self.sessions
            .write()
            .expect("session table poisoned")
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn view(&self, id: &str) -> Result<SessionView, ApiError> {
        let session = self.session(id)?;
        let guard = session.lock().expect("session lock poisoned");
        Ok(SessionView::of(id, &guard))
    }

    fn session(&self, id: &str) -> Result<SharedSession, ApiError> {
        self.sessions
            .read()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "UnknownSession", id))
    }

    /// Maps a client path onto the sandbox root. Relative paths are taken
    /// from the root; `..` components are refused outright.
    fn resolve(&self, raw: &str, must_exist: bool) -> Result<PathBuf, ApiError> {
        if raw.is_empty() {
            return Err(ApiError::bad_request("empty path"));
        }
        let path = Path::new(raw);
        let forbidden = || ApiError::new(StatusCode::FORBIDDEN, "Forbidden", "path outside root");
        if path.components().any(|c| c == Component::ParentDir) {
            return Err(forbidden());
        }
        let joined = if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.root.join(path)
        };
        if !joined.starts_with(&self.root) {
            return Err(forbidden());
        }
        if must_exist {
            let real = joined.canonicalize().map_err(|_| {
                ApiError::new(StatusCode::NOT_FOUND, "InputNotFound", raw)
            })?;
            if !real.starts_with(&self.root) {
                return Err(forbidden());
            }
            return Ok(real);
        }
        Ok(joined)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub session_id: String,
    pub total_images: usize,
    pub cursor: usize,
    pub current_image_name: Option<String>,
    pub pending_point_count: usize,
    pub state: String,
}

impl SessionView {
    fn of(id: &str, s: &Session) -> Self {
        SessionView {
            session_id: id.to_string(),
            total_images: s.images().len(),
            cursor: s.cursor(),
            current_image_name: s.current_name(),
            pending_point_count: s.pending().len(),
            state: s.state().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointResponse {
    pub event: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask_preview_url: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask_file: Option<String>,
    pub session: SessionView,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    reason: String,
    extra: Option<serde_json::Value>,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, reason: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            reason: reason.into(),
            extra: None,
        }
    }

    fn bad_request(reason: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "BadRequest", reason)
    }

    pub fn status(&self) -> StatusCode {
        self.status
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", self.status.as_u16(), self.code, self.reason)
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match &e {
            SessionError::InputNotFound(_) | SessionError::NoImagesFound(_) => StatusCode::NOT_FOUND,
            SessionError::WrongState(_) | SessionError::NothingToUndo => StatusCode::CONFLICT,
            SessionError::OutputNotWritable(..) => StatusCode::BAD_REQUEST,
            SessionError::Image(..) | SessionError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let code = match &e {
            SessionError::InputNotFound(_) => "InputNotFound",
            SessionError::NoImagesFound(_) => "NoImagesFound",
            SessionError::OutputNotWritable(..) => "OutputNotWritable",
            SessionError::WrongState(_) => "WrongState",
            SessionError::NothingToUndo => "NothingToUndo",
            SessionError::Image(..) => "ImageError",
            SessionError::Io(_) => "IoError",
        };
        ApiError::new(status, code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = serde_json::json!({ "error": self.code, "reason": self.reason });
        if let (Some(serde_json::Value::Object(extra)), Some(obj)) = (self.extra, body.as_object_mut()) {
            obj.extend(extra);
        }
        (self.status, Json(body)).into_response()
    }
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(e.to_string()))
}

/// Runs `f` on the session under its lock, off the async executor.
async fn with_session<T, F>(state: &AppState, id: &str, f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce(&mut Session) -> Result<T, ApiError> + Send + 'static,
{
    let session = state.session(id)?;
    tokio::task::spawn_blocking(move || {
        let mut guard = session.lock().expect("session lock poisoned");
        f(&mut guard)
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "Internal", e.to_string()))?
}

#[derive(Deserialize)]
struct CreateSession {
    input_dir: String,
    output_dir: String,
}

async fn create_session(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let req: CreateSession = parse_body(&body)?;
    let st = state.clone();
    let view = tokio::task::spawn_blocking(move || st.create_session(&req.input_dir, &req.output_dir))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "Internal", e.to_string()))??;
    log::info!("session {} opened with {} images", view.session_id, view.total_images);
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionView>, ApiError> {
    let sid = id.clone();
    with_session(&state, &id, move |s| Ok(Json(SessionView::of(&sid, s)))).await
}

async fn get_image(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Response, ApiError> {
    with_session(&state, &id, |s| {
        let path = s
            .current_image()
            .ok_or_else(|| ApiError::new(StatusCode::CONFLICT, "WrongState", "session finished"))?
            .to_path_buf();
        let bytes = std::fs::read(&path)
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "IoError", e.to_string()))?;
        Ok(([(header::CONTENT_TYPE, content_type(&path))], bytes).into_response())
    })
    .await
}

#[derive(Deserialize)]
struct PointRequest {
    x: i64,
    y: i64,
}

async fn post_point(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Json<PointResponse>, ApiError> {
    let req: PointRequest = parse_body(&body)?;
    let sid = id.clone();
    with_session(&state, &id, move |s| {
        let event = s.add_point(req.x, req.y)?;
        let mut resp = PointResponse {
            event: event.kind().to_string(),
            mask_preview_url: None,
            mask_file: None,
            session: SessionView::of(&sid, s),
        };
        match event {
            SessionEvent::PointRejected { reason } => {
                let mut err = ApiError::new(
                    StatusCode::UNPROCESSABLE_ENTITY,
                    "PointRejected",
                    reason.to_string(),
                );
                err.extra = Some(serde_json::json!({
                    "event": resp.event,
                    "session": resp.session,
                }));
                Err(err)
            }
            SessionEvent::MaskGenerated { path, .. } => {
                resp.mask_preview_url = Some(format!("/api/sessions/{sid}/preview"));
                resp.mask_file = path.file_name().map(|n| n.to_string_lossy().into_owned());
                Ok(Json(resp))
            }
            _ => Ok(Json(resp)),
        }
    })
    .await
}

async fn get_preview(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Response, ApiError> {
    let (color, alpha) = (state.overlay_color, state.overlay_alpha);
    with_session(&state, &id, move |s| {
        let (Some(mask), Some(path)) = (s.ready_mask(), s.current_image()) else {
            return Err(ApiError::new(StatusCode::CONFLICT, "WrongState", "no mask ready"));
        };
        let internal = |e: String| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "ImageError", e);
        let image = load_rgb(path).map_err(|e| internal(e.to_string()))?;
        let overlay = overlay_preview(&image, mask, color, alpha).map_err(|e| internal(e.to_string()))?;
        Ok(([(header::CONTENT_TYPE, "image/png")], encode_rgb_png(&overlay)).into_response())
    })
    .await
}

async fn transition(
    state: Arc<AppState>,
    id: String,
    op: fn(&mut Session) -> Result<SessionEvent, SessionError>,
) -> Result<Json<SessionView>, ApiError> {
    let sid = id.clone();
    with_session(&state, &id, move |s| {
        op(s)?;
        Ok(Json(SessionView::of(&sid, s)))
    })
    .await
}

async fn post_advance(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionView>, ApiError> {
    transition(state, id, Session::advance).await
}

async fn post_undo(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionView>, ApiError> {
    transition(state, id, Session::undo_point).await
}

async fn post_terminate(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<SessionView>, ApiError> {
    transition(state, id, |s| Ok(s.terminate())).await
}

pub fn router(state: Arc<AppState>, ui_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/image", get(get_image))
        .route("/api/sessions/{id}/points", post(post_point))
        .route("/api/sessions/{id}/preview", get(get_preview))
        .route("/api/sessions/{id}/advance", post(post_advance))
        .route("/api/sessions/{id}/undo", post(post_undo))
        .route("/api/sessions/{id}/terminate", post(post_terminate))
        .with_state(state);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(PLACEHOLDER_INDEX) })),
    }
}

/// A bound server, ready to run.
pub struct Server {
    listener: TcpListener,
    app: Router,
    pub state: Arc<AppState>,
}

impl Server {
    pub async fn bind(addr: SocketAddr, config: &ServiceConfig) -> std::io::Result<Self> {
        let state = AppState::new(config)?;
        let app = router(state.clone(), config.ui_dir.as_deref());
        let listener = TcpListener::bind(addr).await?;
        Ok(Server {
            listener,
            app,
            state,
        })
    }

    pub fn local_addr(&self) -> std::io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    pub async fn run(self) -> std::io::Result<()> {
        axum::serve(self.listener, self.app).await
    }
}
