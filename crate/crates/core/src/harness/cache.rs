//! Binary field files and the on-disk reference cache.
//!
//! Layout, all little-endian:
//!
//! ```text
//! "SFNL" | version u32 | N u64 | a f64 | b f64 | alpha f64 | t f64
//!        | N × (re f64, im f64) in FFT-natural order | FNV-1a-64 u64
//! ```
//!
//! The checksum covers every byte before it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::WaveField;
use crate::grid::SpectralGrid;

pub const MAGIC: [u8; 4] = *b"SFNL";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 8 + 4 * 8;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// Contents of one field file. `alpha` is informational (0 for potential
/// tables).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldRecord {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub t: f64,
    pub coeffs: Vec<Complex64>,
}

impl FieldRecord {
    pub fn from_field(field: &WaveField, alpha: f64) -> Self {
        let g = field.grid();
        Self {
            a: g.a(),
            b: g.b(),
            alpha,
            t: field.time(),
            coeffs: field.coeffs().to_vec(),
        }
    }

    pub fn to_field(&self) -> Result<WaveField> {
        let grid = SpectralGrid::new(self.a, self.b, self.coeffs.len())?;
        WaveField::from_coeffs(grid, self.coeffs.clone(), self.t)
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 16 * self.coeffs.len() + 8);
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.coeffs.len() as u64).to_le_bytes());
        for v in [self.a, self.b, self.alpha, self.t] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for c in &self.coeffs {
            out.extend_from_slice(&c.re.to_le_bytes());
            out.extend_from_slice(&c.im.to_le_bytes());
        }
        let sum = fnv1a64(&out);
        out.extend_from_slice(&sum.to_le_bytes());
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN + 8 {
            return Err(Error::Format(format!("{} bytes is shorter than the header", bytes.len())));
        }
        if bytes[..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let n = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let expected = usize::try_from(n)
            .ok()
            .and_then(|n| n.checked_mul(16))
            .and_then(|body| body.checked_add(HEADER_LEN + 8))
            .ok_or_else(|| Error::Format(format!("absurd mode count {n}")))?;
        if bytes.len() != expected {
            return Err(Error::Format(format!(
                "length {} does not match {n} modes ({expected} bytes)",
                bytes.len()
            )));
        }
        let (payload, tail) = bytes.split_at(bytes.len() - 8);
        let stored = u64::from_le_bytes(tail.try_into().unwrap());
        let computed = fnv1a64(payload);
        if stored != computed {
            return Err(Error::Checksum { stored, computed });
        }
        let f = |off: usize| f64::from_le_bytes(payload[off..off + 8].try_into().unwrap());
        let coeffs = (0..n as usize)
            .map(|k| {
                let off = HEADER_LEN + 16 * k;
                Complex64::new(f(off), f(off + 8))
            })
            .collect();
        Ok(Self {
            a: f(16),
            b: f(24),
            alpha: f(32),
            t: f(40),
            coeffs,
        })
    }
}

/// Writes through a temporary file in the same directory, then renames it
/// into place, so readers never observe a partial file.
pub fn write_field(path: &Path, record: &FieldRecord) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(&record.encode()).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn read_field(path: &Path) -> Result<FieldRecord> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    FieldRecord::decode(&bytes)
}

/// Hash of every input that influences a stored trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CacheKey(pub u64);

impl CacheKey {
    /// Hashes `name=value` lines; floats should be passed through
    /// [`CacheKey::float`] so the key sees every bit.
    pub fn from_fields<'a>(fields: impl IntoIterator<Item = (&'a str, String)>) -> Self {
        let mut text = String::new();
        for (name, value) in fields {
            text.push_str(name);
            text.push('=');
            text.push_str(&value);
            text.push('\n');
        }
        CacheKey(fnv1a64(text.as_bytes()))
    }

    pub fn float(v: f64) -> String {
        format!("{:016x}", v.to_bits())
    }

    pub fn hex(&self) -> String {
        format!("{:016x}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// A stored file existed but failed verification.
    Recomputed(String),
}

#[derive(Debug, Clone)]
pub struct ReferenceCache {
    dir: PathBuf,
}

impl ReferenceCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: CacheKey) -> PathBuf {
        self.dir.join(format!("ref-{}.sfnl", key.hex()))
    }

    pub fn store(&self, key: CacheKey, field: &WaveField, alpha: f64) -> Result<PathBuf> {
        let path = self.path_for(key);
        write_field(&path, &FieldRecord::from_field(field, alpha))?;
        Ok(path)
    }

    /// `Ok(None)` when nothing is stored under `key`.
    pub fn load(&self, key: CacheKey) -> Result<Option<WaveField>> {
        let path = self.path_for(key);
        if !path.exists() {
            return Ok(None);
        }
        read_field(&path)?.to_field().map(Some)
    }

    /// Loads the field under `key`, or computes and stores it. Unreadable or
    /// corrupt entries are recomputed and overwritten.
    pub fn get_or_compute(
        &self,
        key: CacheKey,
        alpha: f64,
        compute: impl FnOnce() -> Result<WaveField>,
    ) -> Result<(WaveField, CacheOutcome)> {
        let outcome = match self.load(key) {
            Ok(Some(field)) => return Ok((field, CacheOutcome::Hit)),
            Ok(None) => CacheOutcome::Miss,
            Err(e) => CacheOutcome::Recomputed(e.to_string()),
        };
        let field = compute()?;
        self.store(key, &field, alpha)?;
        Ok((field, outcome))
    }
}
