//! Binary table files.
//!
//! ```text
//! offset  size  field
//! 0       8     magic "CUBE2DT\0"
//! 8       4     version (u32 LE) = 1
//! 12      1     metric (0 = quarter-turn)
//! 13      1     kind (0 = full, 1 = orientation PDB, 2 = permutation PDB)
//! 14      4     entry count (u32 LE)
//! 18      n     payload, one byte per entry
//! 18+n    4     CRC32 of payload (u32 LE)
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub const MAGIC: &[u8; 8] = b"CUBE2DT\0";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 18;
const METRIC_QTM: u8 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Full = 0,
    OriPdb = 1,
    PermPdb = 2,
}

impl TableKind {
    fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(TableKind::Full),
            1 => Some(TableKind::OriPdb),
            2 => Some(TableKind::PermPdb),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("not a table file (bad magic)")]
    BadMagic,
    #[error("unsupported table version {0}")]
    BadVersion(u32),
    #[error("unsupported metric tag {0}")]
    BadMetric(u8),
    #[error("unknown table kind {0}")]
    BadKind(u8),
    #[error("expected a {expected:?} table, found {found:?}")]
    WrongKind {
        expected: TableKind,
        found: TableKind,
    },
    #[error("expected {expected} entries, found {found}")]
    WrongEntryCount { expected: usize, found: usize },
    #[error("file is truncated")]
    TruncatedFile,
    #[error("{0} unexpected bytes after the checksum")]
    TrailingData(usize),
    #[error("payload checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("entry {index} holds invalid distance {value}")]
    BadEntry { index: usize, value: u8 },
}

pub fn encode(kind: TableKind, payload: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload.len() + 4);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(METRIC_QTM);
    out.push(kind as u8);
    out.extend_from_slice(&(payload.len() as u32).to_le_bytes());
    out.extend_from_slice(payload);
    out.extend_from_slice(&crc32fast::hash(payload).to_le_bytes());
    out
}

pub fn decode(bytes: &[u8]) -> Result<(TableKind, Vec<u8>), StoreError> {
    if bytes.len() < MAGIC.len() {
        return Err(StoreError::TruncatedFile);
    }
    if &bytes[..8] != MAGIC {
        return Err(StoreError::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(StoreError::TruncatedFile);
    }
    let u32_at = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
    let version = u32_at(8);
    if version != VERSION {
        return Err(StoreError::BadVersion(version));
    }
    if bytes[12] != METRIC_QTM {
        return Err(StoreError::BadMetric(bytes[12]));
    }
    let kind = TableKind::from_byte(bytes[13]).ok_or(StoreError::BadKind(bytes[13]))?;
    let count = u32_at(14) as usize;
    let end = HEADER_LEN + count + 4;
    if bytes.len() < end {
        return Err(StoreError::TruncatedFile);
    }
    if bytes.len() > end {
        return Err(StoreError::TrailingData(bytes.len() - end));
    }
    let payload = &bytes[HEADER_LEN..HEADER_LEN + count];
    let stored = u32_at(HEADER_LEN + count);
    let computed = crc32fast::hash(payload);
    if stored != computed {
        return Err(StoreError::ChecksumMismatch { stored, computed });
    }
    Ok((kind, payload.to_vec()))
}

pub(crate) fn write_file(path: &Path, kind: TableKind, payload: &[u8]) -> Result<(), StoreError> {
    fs::write(path, encode(kind, payload)).map_err(|source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a table of the given kind and size.
pub(crate) fn read_file(
    path: &Path,
    kind: TableKind,
    entries: usize,
) -> Result<Vec<u8>, StoreError> {
    let bytes = fs::read(path).map_err(|source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let (found, payload) = decode(&bytes)?;
    if found != kind {
        return Err(StoreError::WrongKind {
            expected: kind,
            found,
        });
    }
    if payload.len() != entries {
        return Err(StoreError::WrongEntryCount {
            expected: entries,
            found: payload.len(),
        });
    }
    Ok(payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let bytes = encode(TableKind::PermPdb, &[1, 2, 3]);
        assert_eq!(&bytes[..8], b"CUBE2DT\0");
        assert_eq!(&bytes[8..12], &[1, 0, 0, 0]);
        assert_eq!(bytes[12], 0);
        assert_eq!(bytes[13], 2);
        assert_eq!(&bytes[14..18], &[3, 0, 0, 0]);
        assert_eq!(&bytes[18..21], &[1, 2, 3]);
        assert_eq!(bytes.len(), 25);
        assert_eq!(decode(&bytes).unwrap(), (TableKind::PermPdb, vec![1, 2, 3]));
    }

    #[test]
    fn header_errors() {
        let good = encode(TableKind::Full, &[0, 1, 1]);
        let mut b = good.clone();
        b[0] = b'X';
        assert!(matches!(decode(&b), Err(StoreError::BadMagic)));
        let mut b = good.clone();
        b[8] = 2;
        assert!(matches!(decode(&b), Err(StoreError::BadVersion(2))));
        let mut b = good.clone();
        b[12] = 1;
        assert!(matches!(decode(&b), Err(StoreError::BadMetric(1))));
        let mut b = good.clone();
        b[13] = 9;
        assert!(matches!(decode(&b), Err(StoreError::BadKind(9))));
        for cut in [0, 5, 12, 20, good.len() - 1] {
            assert!(
                matches!(decode(&good[..cut]), Err(StoreError::TruncatedFile)),
                "cut {cut}"
            );
        }
        let mut b = good.clone();
        b.push(0);
        assert!(matches!(decode(&b), Err(StoreError::TrailingData(1))));
    }

    #[test]
    fn flipped_payload_byte_fails_checksum() {
        let payload: Vec<u8> = (0..200).map(|i| (i % 15) as u8).collect();
        let good = encode(TableKind::Full, &payload);
        for at in [18, 50, 18 + 199] {
            let mut b = good.clone();
            b[at] ^= 0x01;
            assert!(
                matches!(decode(&b), Err(StoreError::ChecksumMismatch { .. })),
                "byte {at}"
            );
        }
    }
}
