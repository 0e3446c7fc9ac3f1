//! Persistent store for structure constants `b^μ_{λν}`.
//!
//! Layout: the magic `QTREP1`, a little-endian `u16` format version, then
//! append-only records
//!
//! ```text
//! kind: u8 | key_len: u32 | key | value_len: u32 | value | crc32: u32
//! ```
//!
//! where the checksum covers everything from `kind` through `value`. Keys
//! are UTF-8 text (`"λ;ν;μ"` or `"λ;ν"`), values an encoded [`GradedInt`].
//! A constant record carries one `b^μ_{λν}`; a pair is only trusted once a
//! completion record with the matching term count follows it. A bad record
//! invalidates the whole file, which is then rebuilt.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use qtrep::{lr, GradedInt, StrictPartition};

pub const MAGIC: &[u8; 6] = b"QTREP1";
pub const FORMAT_VERSION: u16 = 1;

const KIND_CONSTANT: u8 = 1;
const KIND_PAIR_DONE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {path}: unsupported format version {found} (this build reads version {FORMAT_VERSION})")]
    UnknownVersion { path: PathBuf, found: u16 },
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

type Pair = (StrictPartition, StrictPartition);
type Constants = BTreeMap<StrictPartition, BigInt>;

#[derive(Debug, Default)]
pub struct Contents {
    pub pairs: BTreeMap<Pair, Constants>,
    /// The file was unreadable past the header and must be rewritten.
    pub corrupt: bool,
}

/// An open, exclusively locked cache file.
pub struct Cache {
    path: PathBuf,
    file: File,
    stored: BTreeSet<Pair>,
    rebuild: bool,
    corrupt: bool,
}

fn encode_graded(v: &GradedInt) -> Vec<u8> {
    let mut out = Vec::new();
    for part in [v.one_part(), v.eps_part()] {
        let bytes = part.to_signed_bytes_le();
        out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
        out.extend_from_slice(&bytes);
    }
    out
}

fn decode_graded(mut bytes: &[u8]) -> Option<GradedInt> {
    let mut parts = Vec::new();
    for _ in 0..2 {
        let len = u32::from_le_bytes(bytes.get(..4)?.try_into().ok()?) as usize;
        parts.push(BigInt::from_signed_bytes_le(bytes.get(4..4 + len)?));
        bytes = &bytes[4 + len..];
    }
    if !bytes.is_empty() {
        return None;
    }
    let eps = parts.pop()?;
    Some(GradedInt::new(parts.pop()?, eps))
}

fn encode_record(kind: u8, key: &str, value: &GradedInt) -> Vec<u8> {
    let value = encode_graded(value);
    let mut body = vec![kind];
    body.extend_from_slice(&(key.len() as u32).to_le_bytes());
    body.extend_from_slice(key.as_bytes());
    body.extend_from_slice(&(value.len() as u32).to_le_bytes());
    body.extend_from_slice(&value);
    let crc = crc32fast::hash(&body);
    body.extend_from_slice(&crc.to_le_bytes());
    body
}

struct Record {
    kind: u8,
    key: String,
    value: GradedInt,
}

fn read_record(data: &[u8]) -> Option<(Record, usize)> {
    let kind = *data.first()?;
    let key_len = u32::from_le_bytes(data.get(1..5)?.try_into().ok()?) as usize;
    let key_end = 5 + key_len;
    let key = std::str::from_utf8(data.get(5..key_end)?).ok()?.to_string();
    let value_len = u32::from_le_bytes(data.get(key_end..key_end + 4)?.try_into().ok()?) as usize;
    let value_end = key_end + 4 + value_len;
    let value = decode_graded(data.get(key_end + 4..value_end)?)?;
    let crc = u32::from_le_bytes(data.get(value_end..value_end + 4)?.try_into().ok()?);
    if crc != crc32fast::hash(&data[..value_end]) {
        return None;
    }
    Some((Record { kind, key, value }, value_end + 4))
}

fn parse_key(key: &str) -> Option<Vec<StrictPartition>> {
    key.split(';').map(|p| p.parse().ok()).collect()
}

/// Parses a whole cache image. `Err` only for an unknown version.
pub fn parse(path: &Path, data: &[u8]) -> Result<Contents, CacheError> {
    let corrupt = || Ok(Contents { pairs: BTreeMap::new(), corrupt: true });
    if data.is_empty() {
        return Ok(Contents::default());
    }
    if data.len() < 8 || &data[..6] != MAGIC {
        return corrupt();
    }
    let version = u16::from_le_bytes([data[6], data[7]]);
    if version != FORMAT_VERSION {
        return Err(CacheError::UnknownVersion { path: path.to_path_buf(), found: version });
    }
    let mut pending: BTreeMap<Pair, Constants> = BTreeMap::new();
    let mut pairs = BTreeMap::new();
    let mut at = 8;
    while at < data.len() {
        let Some((record, used)) = read_record(&data[at..]) else { return corrupt() };
        at += used;
        let Some(parts) = parse_key(&record.key) else { return corrupt() };
        match (record.kind, &parts[..]) {
            (KIND_CONSTANT, [l, v, m]) => {
                pending.entry((l.clone(), v.clone())).or_default().insert(m.clone(), record.value.one_part().clone());
            }
            (KIND_PAIR_DONE, [l, v]) => {
                let key = (l.clone(), v.clone());
                let terms = pending.remove(&key).unwrap_or_default();
                if BigInt::from(terms.len()) != *record.value.one_part() {
                    return corrupt();
                }
                pairs.insert(key, terms);
            }
            _ => return corrupt(),
        }
    }
    if !pending.is_empty() {
        return corrupt();
    }
    Ok(Contents { pairs, corrupt: false })
}

impl Cache {
    /// Opens (creating if needed) and locks the cache, then seeds the
    /// structure-constant memo with its contents.
    pub fn open(path: &Path) -> Result<Cache, CacheError> {
        let io_err = |source| CacheError::Io { path: path.to_path_buf(), source };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io_err)?;
        }
        let mut file =
            OpenOptions::new().read(true).write(true).create(true).truncate(false).open(path).map_err(io_err)?;
        file.lock().map_err(io_err)?;
        let mut data = Vec::new();
        file.read_to_end(&mut data).map_err(io_err)?;
        let contents = parse(path, &data)?;
        let corrupt = contents.corrupt;
        let rebuild = corrupt || data.is_empty();
        let stored = contents.pairs.keys().cloned().collect();
        for ((l, v), constants) in contents.pairs {
            lr::preload(l, v, constants);
        }
        Ok(Cache { path: path.to_path_buf(), file, stored, rebuild, corrupt })
    }

    /// The file existed but could not be read; it will be rewritten.
    pub fn was_corrupt(&self) -> bool {
        self.corrupt
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends every memoized pair not yet on disk; rewrites the file when it
    /// was empty or corrupt.
    pub fn flush(mut self) -> Result<(), CacheError> {
        let path = self.path.clone();
        let io_err = |source| CacheError::Io { path: path.clone(), source };
        let mut out = Vec::new();
        if self.rebuild {
            self.stored.clear();
            self.file.set_len(0).map_err(io_err)?;
            out.extend_from_slice(MAGIC);
            out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        }
        for (l, v, constants) in lr::memo_snapshot() {
            if self.stored.contains(&(l.clone(), v.clone())) {
                continue;
            }
            for (m, b) in constants.iter() {
                out.extend(encode_record(KIND_CONSTANT, &format!("{l};{v};{m}"), &GradedInt::from_int(b.clone())));
            }
            let count = GradedInt::from_int(constants.len() as i64);
            out.extend(encode_record(KIND_PAIR_DONE, &format!("{l};{v}"), &count));
        }
        self.file.seek(SeekFrom::End(0)).map_err(io_err)?;
        self.file.write_all(&out).map_err(io_err)?;
        self.file.sync_data().map_err(io_err)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qtrep::partitions::sp;

    fn image(records: &[Vec<u8>]) -> Vec<u8> {
        let mut data = MAGIC.to_vec();
        data.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        for r in records {
            data.extend_from_slice(r);
        }
        data
    }

    #[test]
    fn graded_values_round_trip() {
        for v in [GradedInt::zero(), GradedInt::new(-3, 7), GradedInt::new(BigInt::from(1u64) << 90, 1)] {
            assert_eq!(decode_graded(&encode_graded(&v)), Some(v));
        }
    }

    #[test]
    fn complete_pairs_are_read() {
        let data = image(&[
            encode_record(KIND_CONSTANT, "1;1;2", &GradedInt::from_int(2)),
            encode_record(KIND_PAIR_DONE, "1;1", &GradedInt::from_int(1)),
        ]);
        let contents = parse(Path::new("x"), &data).unwrap();
        assert!(!contents.corrupt);
        assert_eq!(contents.pairs[&(sp(&[1]), sp(&[1]))], BTreeMap::from([(sp(&[2]), BigInt::from(2))]));
    }

    #[test]
    fn damage_is_detected() {
        let good = image(&[
            encode_record(KIND_CONSTANT, "1;1;2", &GradedInt::from_int(2)),
            encode_record(KIND_PAIR_DONE, "1;1", &GradedInt::from_int(1)),
        ]);
        for cut in 9..good.len() {
            assert!(parse(Path::new("x"), &good[..cut]).unwrap().corrupt, "truncated at {cut}");
        }
        let mut flipped = good.clone();
        flipped[12] ^= 0x40;
        assert!(parse(Path::new("x"), &flipped).unwrap().corrupt);
        let missing_marker = image(&[encode_record(KIND_CONSTANT, "1;1;2", &GradedInt::from_int(2))]);
        assert!(parse(Path::new("x"), &missing_marker).unwrap().corrupt);
        assert!(parse(Path::new("x"), b"garbage!").unwrap().corrupt);
    }

    #[test]
    fn other_versions_are_rejected() {
        let mut data = MAGIC.to_vec();
        data.extend_from_slice(&7u16.to_le_bytes());
        assert!(matches!(parse(Path::new("x"), &data), Err(CacheError::UnknownVersion { found: 7, .. })));
    }
}
