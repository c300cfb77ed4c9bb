//! HTTP game service.
//!
//! Legality is decided by the engine alone. Each game sits behind its own
//! mutex, so moves on one game are serialized while other games proceed.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use pangalactic::solitaire::{grid_from_rows, Cell, GameState, Move, PlayingCard, StateView};
use parking_lot::{Mutex, RwLock};
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Whether the service finds the target card for the player.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Assist {
    Auto,
    #[default]
    Manual,
}

#[derive(Debug)]
pub struct Session {
    pub state: GameState,
    pub assist: Assist,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct SessionDoc {
    grid: Vec<Vec<PlayingCard>>,
    move_count: u32,
    assist: Assist,
    seed: u64,
}

/// In-memory sessions keyed by game id.
#[derive(Clone, Default)]
pub struct Store {
    games: Arc<RwLock<BTreeMap<String, Arc<Mutex<Session>>>>>,
}

impl Store {
    pub fn insert(&self, session: Session) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        self.games.write().insert(id.clone(), Arc::new(Mutex::new(session)));
        id
    }

    pub fn get(&self, id: &str) -> Option<Arc<Mutex<Session>>> {
        self.games.read().get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.games.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn save(&self, path: &Path) -> Result<(), String> {
        let docs: BTreeMap<String, SessionDoc> = self
            .games
            .read()
            .iter()
            .map(|(id, s)| {
                let s = s.lock();
                let doc = SessionDoc {
                    grid: s.state.grid().iter().map(|r| r.to_vec()).collect(),
                    move_count: s.state.move_count(),
                    assist: s.assist,
                    seed: s.seed,
                };
                (id.clone(), doc)
            })
            .collect();
        let text = serde_json::to_string_pretty(&docs).map_err(|e| e.to_string())?;
        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn load(path: &Path) -> Result<Store, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let docs: BTreeMap<String, SessionDoc> =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut games = BTreeMap::new();
        for (id, d) in docs {
            let grid = grid_from_rows(&d.grid).map_err(|e| format!("game {id}: {e}"))?;
            let state = GameState::restore(grid, d.move_count, None).map_err(|e| format!("game {id}: {e}"))?;
            games.insert(id, Arc::new(Mutex::new(Session { state, assist: d.assist, seed: d.seed })));
        }
        Ok(Store { games: Arc::new(RwLock::new(games)) })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateBody {
    seed: Option<u64>,
    #[serde(default)]
    assist: Assist,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveBody {
    from: Cell,
    to: Option<Cell>,
}

fn error(status: StatusCode, code: &str, detail: impl Into<String>) -> Response {
    (status, Json(json!({ "error": code, "detail": detail.into() }))).into_response()
}

#[allow(clippy::result_large_err)]
fn parse<T: serde::de::DeserializeOwned>(body: &Bytes) -> Result<T, Response> {
    let body: &[u8] = if body.is_empty() { b"{}" } else { body };
    serde_json::from_slice(body).map_err(|e| error(StatusCode::BAD_REQUEST, "bad_request", e.to_string()))
}

fn game_json(id: &str, s: &Session) -> serde_json::Value {
    json!({ "game_id": id, "assist": s.assist, "seed": s.seed, "state": StateView::from(&s.state) })
}

async fn create(State(store): State<Store>, body: Bytes) -> Response {
    let body: CreateBody = match parse(&body) {
        Ok(b) => b,
        Err(r) => return r,
    };
    let seed = body.seed.unwrap_or_else(|| uuid::Uuid::new_v4().as_u64_pair().0);
    let session = Session { state: GameState::deal(seed), assist: body.assist, seed };
    let mut view = game_json("", &session);
    view["game_id"] = json!(store.insert(session));
    (StatusCode::CREATED, Json(view)).into_response()
}

async fn show(State(store): State<Store>, UrlPath(id): UrlPath<String>) -> Response {
    match store.get(&id) {
        Some(s) => Json(game_json(&id, &s.lock())).into_response(),
        None => error(StatusCode::NOT_FOUND, "not_found", format!("no game {id}")),
    }
}

async fn play(State(store): State<Store>, UrlPath(id): UrlPath<String>, body: Bytes) -> Response {
    let Some(game) = store.get(&id) else {
        return error(StatusCode::NOT_FOUND, "not_found", format!("no game {id}"));
    };
    let body: MoveBody = match parse(&body) {
        Ok(b) => b,
        Err(r) => return r,
    };
    let mut s = game.lock();
    let mv = match (s.assist, body.to) {
        (_, Some(to)) => Move { from: body.from, to },
        (Assist::Auto, None) => match s.state.move_from(body.from) {
            Some(mv) => mv,
            None => return error(StatusCode::UNPROCESSABLE_ENTITY, "illegal_move", "that card cannot move"),
        },
        (Assist::Manual, None) => {
            return error(StatusCode::BAD_REQUEST, "bad_request", "manual games need a target cell")
        }
    };
    match s.state.apply_move(mv) {
        Ok(()) => Json(game_json(&id, &s)).into_response(),
        Err(e) => error(StatusCode::UNPROCESSABLE_ENTITY, "illegal_move", e.to_string()),
    }
}

pub fn router(store: Store) -> Router {
    Router::new()
        .route("/api/games", post(create))
        .route("/api/games/{id}", get(show))
        .route("/api/games/{id}/moves", post(play))
        .with_state(store)
}
