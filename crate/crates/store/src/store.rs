use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use chrono::{DateTime, Duration, FixedOffset, NaiveDate, Utc};
use parking_lot::{Mutex, RwLock};
use serde::{Deserialize, Serialize};

use crate::journal::{sync_dir, Journal, Record};
use crate::state::{Change, State};
use crate::{Result, StoreError};

const JOURNAL_FILE: &str = "journal.log";
const SNAPSHOT_FILE: &str = "snapshot.json";
const LOCK_FILE: &str = "LOCK";

#[derive(Debug, Clone)]
pub struct StoreConfig {
    /// Answers are accepted until `deadline + grace`.
    pub grace: Duration,
    /// Offset used to turn instants into calendar dates for scheduling.
    pub utc_offset: FixedOffset,
    /// Journal records between compacted snapshots.
    pub snapshot_every: u64,
    /// Sync the journal to disk before acknowledging writes.
    pub fsync: bool,
}

impl Default for StoreConfig {
    fn default() -> Self {
        Self {
            grace: Duration::seconds(30),
            utc_offset: FixedOffset::east_opt(0).unwrap(),
            snapshot_every: 10_000,
            fsync: true,
        }
    }
}

struct Inner {
    state: State,
    last_seq: u64,
}

#[derive(Serialize, Deserialize)]
struct Snapshot {
    last_seq: u64,
    state: State,
}

pub struct Store {
    dir: PathBuf,
    config: StoreConfig,
    // Lock order: synced -> inner -> journal.
    inner: RwLock<Inner>,
    journal: Mutex<Journal>,
    synced: Mutex<u64>,
    written: AtomicU64,
    _lock: File,
}

impl Store {
    pub fn open(dir: impl AsRef<Path>, config: StoreConfig) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        std::fs::create_dir_all(&dir)?;
        let lock = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(dir.join(LOCK_FILE))?;
        lock.try_lock().map_err(|_| {
            std::io::Error::new(
                std::io::ErrorKind::WouldBlock,
                format!("{} is in use by another process", dir.display()),
            )
        })?;

        let (mut state, snapshot_seq) = match std::fs::read(dir.join(SNAPSHOT_FILE)) {
            Ok(bytes) => {
                let snap: Snapshot = serde_json::from_slice(&bytes)
                    .map_err(|e| StoreError::Corrupt(format!("snapshot: {e}")))?;
                (snap.state, snap.last_seq)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => (State::default(), 0),
            Err(e) => return Err(e.into()),
        };
        state.rebuild_indexes();

        let (journal, records) = Journal::open(&dir.join(JOURNAL_FILE))?;
        let mut last_seq = snapshot_seq;
        let mut replayed = 0usize;
        for record in records {
            if record.seq <= last_seq {
                continue;
            }
            state.apply(record.change);
            last_seq = record.seq;
            replayed += 1;
        }
        tracing::info!(dir = %dir.display(), snapshot_seq, replayed, "store opened");

        Ok(Self {
            dir,
            config,
            inner: RwLock::new(Inner { state, last_seq }),
            journal: Mutex::new(journal),
            synced: Mutex::new(last_seq),
            written: AtomicU64::new(last_seq),
            _lock: lock,
        })
    }

    pub fn config(&self) -> &StoreConfig {
        &self.config
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Calendar date of `now` in the configured offset.
    pub fn local_date(&self, now: DateTime<Utc>) -> NaiveDate {
        now.with_timezone(&self.config.utc_offset).date_naive()
    }

    /// Runs `f` against a consistent view of the state.
    pub fn read<R>(&self, f: impl FnOnce(&State) -> R) -> R {
        f(&self.inner.read().state)
    }

    pub fn last_seq(&self) -> u64 {
        self.inner.read().last_seq
    }

    /// Validates against the current state, journals the resulting changes,
    /// applies them and returns once they are durable.
    pub(crate) fn commit<T>(
        &self,
        f: impl FnOnce(&State) -> Result<(Vec<Change>, T)>,
    ) -> Result<T> {
        let mut inner = self.inner.write();
        let (changes, out) = f(&inner.state)?;
        if changes.is_empty() {
            let seq = inner.last_seq;
            drop(inner);
            self.sync_to(seq)?;
            return Ok(out);
        }
        let mut journal = self.journal.lock();
        for change in changes {
            let seq = inner.last_seq + 1;
            journal.append(&Record {
                seq,
                change: change.clone(),
            })?;
            inner.state.apply(change);
            inner.last_seq = seq;
        }
        let seq = inner.last_seq;
        self.written.store(seq, Ordering::Release);
        let compact = journal.records() >= self.config.snapshot_every;
        drop(journal);
        drop(inner);

        self.sync_to(seq)?;
        if compact {
            self.compact()?;
        }
        Ok(out)
    }

    /// Group commit: one fsync covers every record written before it starts.
    fn sync_to(&self, seq: u64) -> Result<()> {
        if !self.config.fsync {
            return Ok(());
        }
        let mut synced = self.synced.lock();
        if *synced >= seq {
            return Ok(());
        }
        let (target, handle) = {
            let journal = self.journal.lock();
            (self.written.load(Ordering::Acquire), journal.sync_handle())
        };
        handle.sync_data()?;
        *synced = target;
        Ok(())
    }

    /// Writes a snapshot of the current state and empties the journal.
    pub fn compact(&self) -> Result<()> {
        let mut synced = self.synced.lock();
        let inner = self.inner.write();
        let mut journal = self.journal.lock();

        let snapshot = Snapshot {
            last_seq: inner.last_seq,
            state: inner.state.clone(),
        };
        let bytes = serde_json::to_vec(&snapshot).map_err(std::io::Error::other)?;
        let tmp = self.dir.join(format!("{SNAPSHOT_FILE}.tmp"));
        {
            let mut file = File::create(&tmp)?;
            file.write_all(&bytes)?;
            file.sync_all()?;
        }
        let path = self.dir.join(SNAPSHOT_FILE);
        std::fs::rename(&tmp, &path)?;
        sync_dir(&path)?;
        journal.reset()?;
        *synced = inner.last_seq;
        tracing::info!(
            seq = inner.last_seq,
            bytes = bytes.len(),
            "snapshot written"
        );
        Ok(())
    }
}
