//! On-disk cache of bases and d1 blocks.
//!
//! One plain-text file per key:
//!
//! ```text
//! mayss-cache <engine version> basis
//! p=5 s=2 t=49 u=all prune=dcv count=2
//! a(0) h(2,0)
//! a(1) h(1,1)
//! ```
//!
//! Matrices replace the monomial lines by a `rows cols` line followed by one
//! line of residues per row. Files are written to a temporary file in the same
//! directory and renamed into place. Anything that fails to parse is a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mayss_core::{parse_monomial, BasisKey, BasisStore, MatrixFp, Monomial, PrimeContext, ENGINE_VERSION};

/// Identity of one cache entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub version: String,
    pub kind: &'static str,
    pub p: u32,
    pub s: u32,
    pub t: String,
    /// A weight, or `all`.
    pub u: String,
    pub prune: String,
}

impl CacheKey {
    pub fn new(kind: &'static str, key: &BasisKey) -> Self {
        CacheKey {
            version: ENGINE_VERSION.to_string(),
            kind,
            p: key.p,
            s: key.s,
            t: key.t.to_string(),
            u: key.u.map_or_else(|| "all".to_string(), |u| u.to_string()),
            prune: key.prune.fingerprint(),
        }
    }

    pub fn file_name(&self) -> String {
        format!(
            "{}-v{}-p{}-s{}-t{}-u{}-{}.txt",
            self.kind, self.version, self.p, self.s, self.t, self.u, self.prune
        )
    }

    fn header(&self) -> String {
        format!("mayss-cache {} {}", self.version, self.kind)
    }

    fn query(&self) -> String {
        format!("p={} s={} t={} u={} prune={}", self.p, self.s, self.t, self.u, self.prune)
    }
}

#[derive(Debug, Clone)]
pub struct FileCache {
    root: PathBuf,
}

impl FileCache {
    pub fn new(root: impl Into<PathBuf>) -> std::io::Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(FileCache { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.root.join(key.file_name())
    }

    /// Text after the expected query prefix, and the remaining lines.
    fn read_entry(&self, key: &CacheKey) -> Option<(String, Vec<String>)> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let mut lines = text.lines();
        if lines.next()? != key.header() {
            return None;
        }
        let tail = lines.next()?.strip_prefix(&key.query())?.to_string();
        Some((tail, lines.map(str::to_string).collect()))
    }

    fn write_atomic(&self, key: &CacheKey, contents: &str) {
        let result = (|| -> std::io::Result<()> {
            let mut tmp = tempfile::NamedTempFile::new_in(&self.root)?;
            tmp.write_all(contents.as_bytes())?;
            tmp.flush()?;
            tmp.persist(self.path(key)).map_err(|e| e.error)?;
            Ok(())
        })();
        if let Err(e) = result {
            log::warn!("cache write for {} failed: {e}", key.file_name());
        }
    }
}

impl BasisStore for FileCache {
    fn load_basis(&self, key: &BasisKey, ctx: &PrimeContext) -> Option<Vec<Monomial>> {
        let ck = CacheKey::new("basis", key);
        let (tail, lines) = self.read_entry(&ck)?;
        let count: usize = tail.strip_prefix(" count=")?.parse().ok()?;
        if lines.len() != count {
            return None;
        }
        let monomials: Option<Vec<Monomial>> = lines.iter().map(|l| parse_monomial(l, ctx).ok()).collect();
        log::debug!("cache hit {}", ck.file_name());
        monomials
    }

    fn save_basis(&self, key: &BasisKey, monomials: &[Monomial]) {
        let ck = CacheKey::new("basis", key);
        let mut s = format!("{}\n{} count={}\n", ck.header(), ck.query(), monomials.len());
        for m in monomials {
            s.push_str(&m.to_string());
            s.push('\n');
        }
        self.write_atomic(&ck, &s);
    }

    fn load_matrix(&self, key: &BasisKey) -> Option<MatrixFp> {
        let ck = CacheKey::new("d1", key);
        let (tail, body) = self.read_entry(&ck)?;
        if !tail.is_empty() {
            return None;
        }
        let (rows, cols) = body.first()?.split_once(' ')?;
        let (rows, cols): (usize, usize) = (rows.parse().ok()?, cols.parse().ok()?);
        let row_lines = body.get(1..1 + rows)?;
        let mut m = MatrixFp::zeros(key.p, rows, cols);
        for (r, line) in row_lines.iter().enumerate() {
            let vals: Vec<u32> = if line.is_empty() {
                Vec::new()
            } else {
                line.split(' ').map(|x| x.parse().ok()).collect::<Option<_>>()?
            };
            if vals.len() != cols || vals.iter().any(|v| *v >= key.p) {
                return None;
            }
            for (c, v) in vals.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Some(m)
    }

    fn save_matrix(&self, key: &BasisKey, matrix: &MatrixFp) {
        let ck = CacheKey::new("d1", key);
        let mut s = format!("{}\n{}\n{} {}\n", ck.header(), ck.query(), matrix.rows(), matrix.cols());
        for r in 0..matrix.rows() {
            let row: Vec<String> = (0..matrix.cols()).map(|c| matrix.get(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        self.write_atomic(&ck, &s);
    }
}
