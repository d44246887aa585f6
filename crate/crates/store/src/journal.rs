//! Append-only change journal.
//!
//! Each record is framed as `len: u32 LE | crc32: u32 LE | payload`, where the
//! payload is the JSON encoding of a [`Record`]. Recovery stops at the first
//! short or corrupt frame and truncates the file there; anything past that
//! point was never acknowledged.

use std::fs::{File, OpenOptions};
use std::io::{self, BufReader, ErrorKind, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::state::Change;
use crate::Result;

const HEADER_LEN: usize = 8;
const MAX_RECORD: u32 = 64 << 20;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Record {
    pub seq: u64,
    pub change: Change,
}

pub struct Journal {
    path: PathBuf,
    file: Arc<File>,
    records: u64,
    len: u64,
}

impl Journal {
    /// Opens (or creates) the journal and returns every intact record.
    pub fn open(path: &Path) -> Result<(Self, Vec<Record>)> {
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)?;
        let (records, valid_len) = read_records(&mut file)?;
        let len = file.metadata()?.len();
        if valid_len < len {
            tracing::warn!(path = %path.display(), dropped = len - valid_len, "truncating torn journal tail");
            file.set_len(valid_len)?;
            file.sync_data()?;
        }
        let journal = Self {
            path: path.to_path_buf(),
            file: Arc::new(file),
            records: records.len() as u64,
            len: valid_len,
        };
        Ok((journal, records))
    }

    pub fn append(&mut self, record: &Record) -> Result<()> {
        let payload = serde_json::to_vec(record).map_err(io::Error::other)?;
        let len = u32::try_from(payload.len())
            .ok()
            .filter(|l| *l <= MAX_RECORD)
            .ok_or_else(|| io::Error::new(ErrorKind::InvalidInput, "journal record too large"))?;
        let mut frame = Vec::with_capacity(HEADER_LEN + payload.len());
        frame.extend_from_slice(&len.to_le_bytes());
        frame.extend_from_slice(&crc32fast::hash(&payload).to_le_bytes());
        frame.extend_from_slice(&payload);
        if let Err(e) = (&*self.file).write_all(&frame) {
            // Drop the partial frame so later records stay reachable on replay.
            let _ = self.file.set_len(self.len);
            return Err(e.into());
        }
        self.len += frame.len() as u64;
        self.records += 1;
        Ok(())
    }

    /// Handle used to fsync outside the append lock.
    pub fn sync_handle(&self) -> Arc<File> {
        Arc::clone(&self.file)
    }

    pub fn records(&self) -> u64 {
        self.records
    }

    /// Empties the journal after a snapshot has made its contents redundant.
    pub fn reset(&mut self) -> Result<()> {
        let tmp = self.path.with_extension("log.tmp");
        File::create(&tmp)?.sync_all()?;
        std::fs::rename(&tmp, &self.path)?;
        sync_dir(&self.path)?;
        self.file = Arc::new(
            OpenOptions::new()
                .read(true)
                .append(true)
                .open(&self.path)?,
        );
        self.records = 0;
        self.len = 0;
        Ok(())
    }
}

fn read_records(file: &mut File) -> Result<(Vec<Record>, u64)> {
    file.seek(SeekFrom::Start(0))?;
    let mut reader = BufReader::new(&*file);
    let mut records = Vec::new();
    let mut offset = 0u64;
    loop {
        let mut header = [0u8; HEADER_LEN];
        match read_full(&mut reader, &mut header)? {
            0 => break,
            n if n < HEADER_LEN => break,
            _ => {}
        }
        let len = u32::from_le_bytes(header[..4].try_into().unwrap());
        let crc = u32::from_le_bytes(header[4..].try_into().unwrap());
        if len > MAX_RECORD {
            break;
        }
        let mut payload = vec![0u8; len as usize];
        if read_full(&mut reader, &mut payload)? < payload.len() || crc32fast::hash(&payload) != crc
        {
            break;
        }
        let Ok(record) = serde_json::from_slice::<Record>(&payload) else {
            break;
        };
        records.push(record);
        offset += (HEADER_LEN + payload.len()) as u64;
    }
    Ok((records, offset))
}

fn read_full(reader: &mut impl Read, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match reader.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == ErrorKind::Interrupted => {}
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

pub(crate) fn sync_dir(path: &Path) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        File::open(dir)?.sync_all()?;
    }
    Ok(())
}
