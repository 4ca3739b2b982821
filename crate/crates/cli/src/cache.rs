//! On-disk cache of coefficient segments.
//!
//! One file per segment under `<dir>/<key>/`, where `key` hashes the
//! L-function's full local data together with the code version, so a new
//! version never reads old files.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use num_complex::Complex64;
use pnt_core::stream::{CoefficientTerm, SegmentCache};
use pnt_core::LFunctionData;
use sha2::{Digest, Sha256};

const MAGIC: &[u8; 8] = b"PNTSEG01";
const RECORD: usize = 24;

pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn new(root: impl Into<PathBuf>, lf: &LFunctionData) -> std::io::Result<Self> {
        let dir = root.into().join(cache_key(lf));
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    fn path(&self, lo: u64, hi: u64) -> PathBuf {
        self.dir.join(format!("{lo}-{hi}.seg"))
    }
}

pub fn cache_key(lf: &LFunctionData) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(MAGIC);
    h.update(format!("{lf:?}").as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl SegmentCache for FileCache {
    fn load(&self, lo: u64, hi: u64) -> Option<Vec<CoefficientTerm>> {
        let bytes = fs::read(self.path(lo, hi)).ok()?;
        let body = bytes.strip_prefix(MAGIC.as_slice())?;
        if body.len() % RECORD != 0 {
            return None;
        }
        let word = |c: &[u8], i: usize| u64::from_le_bytes(c[8 * i..8 * i + 8].try_into().unwrap());
        let terms: Vec<CoefficientTerm> = body
            .chunks_exact(RECORD)
            .map(|c| CoefficientTerm {
                n: word(c, 0),
                value: Complex64::new(f64::from_bits(word(c, 1)), f64::from_bits(word(c, 2))),
            })
            .collect();
        terms.iter().all(|t| t.n > lo && t.n <= hi).then_some(terms)
    }

    /// Best effort: a failed write only costs a recomputation later.
    fn store(&self, lo: u64, hi: u64, terms: &[CoefficientTerm]) {
        let mut bytes = Vec::with_capacity(MAGIC.len() + RECORD * terms.len());
        bytes.extend_from_slice(MAGIC);
        for t in terms {
            bytes.extend_from_slice(&t.n.to_le_bytes());
            bytes.extend_from_slice(&t.value.re.to_bits().to_le_bytes());
            bytes.extend_from_slice(&t.value.im.to_bits().to_le_bytes());
        }
        let target = self.path(lo, hi);
        let tmp = self.dir.join(format!("{lo}-{hi}.{}.tmp", std::process::id()));
        let written = fs::File::create(&tmp).and_then(|mut f| f.write_all(&bytes));
        if written.is_err() || fs::rename(&tmp, &target).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
