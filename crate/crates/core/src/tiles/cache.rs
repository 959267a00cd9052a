use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Condvar, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use crossbeam_channel::{Receiver, Sender};
use image::RgbaImage;

use super::{TileCoord, TileProvider, CACHE_ENV};

/// Result of a non-blocking tile lookup.
#[derive(Debug, Clone)]
pub enum TileHandle {
    Ready(Arc<RgbaImage>),
    Pending,
    Failed,
}

impl TileHandle {
    pub fn is_pending(&self) -> bool {
        matches!(self, TileHandle::Pending)
    }
}

/// How tiles are downloaded.
#[derive(Debug, Clone)]
pub struct FetchPolicy {
    pub workers: usize,
    pub attempts: u32,
    /// Delay before the second attempt; doubled for each further attempt.
    pub backoff: Duration,
    pub timeout: Duration,
    pub user_agent: String,
}

impl Default for FetchPolicy {
    fn default() -> Self {
        FetchPolicy {
            workers: 4,
            attempts: 3,
            backoff: Duration::from_millis(500),
            timeout: Duration::from_secs(20),
            user_agent: concat!("terramap/", env!("CARGO_PKG_VERSION")).to_owned(),
        }
    }
}

/// Cache root: `$TERRAMAP_TILE_CACHE`, else the user cache directory.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(dir).join("terramap").join("tiles");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(home).join(".cache").join("terramap").join("tiles");
    }
    PathBuf::from("terramap-tiles")
}

type TileKey = (String, TileCoord);

enum Entry {
    Ready(Arc<RgbaImage>),
    Pending,
    Failed,
}

struct Shared {
    entries: Mutex<HashMap<TileKey, Entry>>,
    settled: Condvar,
    fetches: AtomicUsize,
}

impl Shared {
    fn settle(&self, key: TileKey, entry: Entry) {
        self.entries.lock().unwrap().insert(key, entry);
        self.settled.notify_all();
    }
}

struct Job {
    key: TileKey,
    url: String,
    path: PathBuf,
}

/// Two-level tile cache: decoded images in memory, PNG/JPEG files on disk at
/// `root/{provider}/{z}/{x}/{y}.png`.
///
/// Lookups never touch the network. Missing tiles are handed to a fixed pool
/// of background workers; at most one request per tile is ever in flight.
/// Entries are never evicted or expired.
pub struct TileCache {
    root: PathBuf,
    shared: Arc<Shared>,
    jobs: Sender<Job>,
}

impl TileCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self::with_policy(root, FetchPolicy::default())
    }

    pub fn with_policy(root: impl Into<PathBuf>, policy: FetchPolicy) -> Self {
        let shared = Arc::new(Shared {
            entries: Mutex::new(HashMap::new()),
            settled: Condvar::new(),
            fetches: AtomicUsize::new(0),
        });
        let (tx, rx) = crossbeam_channel::unbounded::<Job>();
        for i in 0..policy.workers.max(1) {
            let rx = rx.clone();
            let shared = Arc::clone(&shared);
            let policy = policy.clone();
            thread::Builder::new()
                .name(format!("tile-fetch-{i}"))
                .spawn(move || worker(rx, shared, policy))
                .expect("spawn tile worker");
        }
        TileCache {
            root: root.into(),
            shared,
            jobs: tx,
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, provider: &TileProvider, coord: TileCoord) -> PathBuf {
        self.root
            .join(&provider.name)
            .join(coord.z.to_string())
            .join(coord.x.to_string())
            .join(format!("{}.png", coord.y))
    }

    /// Looks a tile up without blocking on the network.
    ///
    /// Tiles on disk are decoded synchronously and promoted to memory.
    /// Otherwise a background fetch is queued (once) and `Pending` returned.
    pub fn request_tile(&self, provider: &TileProvider, coord: TileCoord) -> TileHandle {
        let key = (provider.name.clone(), coord);
        if let Some(h) = self.lookup(&key) {
            return h;
        }
        let path = self.path_for(provider, coord);
        if path.is_file() {
            match decode_file(&path) {
                Ok(img) => {
                    let img = Arc::new(img);
                    self.shared.settle(key, Entry::Ready(Arc::clone(&img)));
                    return TileHandle::Ready(img);
                }
                Err(e) => log::warn!("discarding unreadable cached tile {}: {e}", path.display()),
            }
        }
        let mut entries = self.shared.entries.lock().unwrap();
        if let Some(e) = entries.get(&key) {
            return handle(e);
        }
        entries.insert(key.clone(), Entry::Pending);
        drop(entries);
        let job = Job {
            key,
            url: provider.tile_url(coord),
            path,
        };
        if self.jobs.send(job).is_err() {
            log::error!("tile workers are gone");
        }
        TileHandle::Pending
    }

    fn lookup(&self, key: &TileKey) -> Option<TileHandle> {
        self.shared.entries.lock().unwrap().get(key).map(handle)
    }

    /// Number of HTTP requests issued so far, retries included.
    pub fn fetch_count(&self) -> usize {
        self.shared.fetches.load(Ordering::SeqCst)
    }

    /// Blocks until no request is pending or `timeout` elapses. Returns true
    /// when everything settled.
    pub fn wait_idle(&self, timeout: Duration) -> bool {
        let deadline = Instant::now() + timeout;
        let mut entries = self.shared.entries.lock().unwrap();
        loop {
            if !entries.values().any(|e| matches!(e, Entry::Pending)) {
                return true;
            }
            let now = Instant::now();
            if now >= deadline {
                return false;
            }
            entries = self
                .shared
                .settled
                .wait_timeout(entries, deadline - now)
                .unwrap()
                .0;
        }
    }
}

fn handle(e: &Entry) -> TileHandle {
    match e {
        Entry::Ready(img) => TileHandle::Ready(Arc::clone(img)),
        Entry::Pending => TileHandle::Pending,
        Entry::Failed => TileHandle::Failed,
    }
}

fn decode_file(path: &Path) -> image::ImageResult<RgbaImage> {
    let bytes = std::fs::read(path).map_err(image::ImageError::IoError)?;
    decode(&bytes)
}

/// PNG and JPEG are both accepted; the format is taken from the magic bytes.
fn decode(bytes: &[u8]) -> image::ImageResult<RgbaImage> {
    Ok(image::load_from_memory(bytes)?.to_rgba8())
}

fn worker(jobs: Receiver<Job>, shared: Arc<Shared>, policy: FetchPolicy) {
    let client = match reqwest::blocking::Client::builder()
        .user_agent(policy.user_agent.clone())
        .timeout(policy.timeout)
        .build()
    {
        Ok(c) => c,
        Err(e) => {
            log::error!("cannot build http client: {e}");
            for job in jobs {
                shared.settle(job.key, Entry::Failed);
            }
            return;
        }
    };
    for job in jobs {
        let entry = fetch_with_retry(&client, &job, &shared, &policy);
        shared.settle(job.key, entry);
    }
}

fn fetch_with_retry(
    client: &reqwest::blocking::Client,
    job: &Job,
    shared: &Shared,
    policy: &FetchPolicy,
) -> Entry {
    for attempt in 0..policy.attempts {
        if attempt > 0 {
            thread::sleep(policy.backoff * (1 << (attempt - 1)));
        }
        shared.fetches.fetch_add(1, Ordering::SeqCst);
        let result = fetch(client, &job.url).and_then(|bytes| {
            let img = decode(&bytes).map_err(|e| e.to_string())?;
            write_atomic(&job.path, &bytes).map_err(|e| e.to_string())?;
            Ok(img)
        });
        match result {
            Ok(img) => return Entry::Ready(Arc::new(img)),
            Err(e) => log::warn!(
                "tile {} attempt {}/{} failed: {e}",
                job.url,
                attempt + 1,
                policy.attempts
            ),
        }
    }
    Entry::Failed
}

fn fetch(client: &reqwest::blocking::Client, url: &str) -> Result<Vec<u8>, String> {
    let resp = client.get(url).send().map_err(|e| e.to_string())?;
    let status = resp.status();
    if status.as_u16() >= 400 {
        return Err(format!("HTTP {status}"));
    }
    resp.bytes().map(|b| b.to_vec()).map_err(|e| e.to_string())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().expect("tile path has a parent");
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
