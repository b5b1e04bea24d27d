//! On-disk cache of canonical basis elements.
//!
//! The first line is a header; every following line is one record
//! `{ctx, basis, y, entries}` with alcoves written as reduced words. Export
//! is sorted, so a file written from the same memo contents is byte-identical.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::affine_weyl::Alcove;
use crate::error::{Error, Result};
use crate::hecke::{Basis, Element, Hecke};
use crate::laurent::Laurent;
use crate::verify::word_string;

pub const FORMAT: &str = "linkage-kl-cache";
pub const VERSION: u32 = 1;
pub const ENV_VAR: &str = "LINKAGE_CACHE";

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Clone, Serialize, Deserialize, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub ctx: String,
    pub basis: String,
    pub y: String,
    pub entries: Vec<(String, Laurent)>,
}

impl Record {
    fn key(&self) -> (String, String, usize, String) {
        let len = if self.y == "e" { 0 } else { self.y.split(',').count() };
        (self.ctx.clone(), self.basis.clone(), len, self.y.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheFile {
    records: BTreeMap<(String, String, usize, String), Record>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CacheStats {
    pub records: usize,
    pub h_records: usize,
    pub n_records: usize,
    pub entries: usize,
    pub contexts: Vec<String>,
}

fn corrupt(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Cache(format!("line {line}: {msg}"))
}

fn basis_of(tag: &str) -> Option<Basis> {
    match tag {
        "H" => Some(Basis::H),
        "N" => Some(Basis::N),
        _ => None,
    }
}

impl CacheFile {
    pub fn parse(text: &str) -> Result<Self> {
        if !text.is_empty() && !text.ends_with('\n') {
            return Err(Error::Cache("file is truncated (no final newline)".into()));
        }
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| Error::Cache("empty cache file".into()))?;
        let header: Header = serde_json::from_str(head).map_err(|e| corrupt(1, e))?;
        if header.format != FORMAT {
            return Err(Error::Cache(format!("unknown format '{}'", header.format)));
        }
        if header.version != VERSION {
            return Err(Error::Cache(format!(
                "cache version {} does not match supported version {VERSION}",
                header.version
            )));
        }
        let mut out = CacheFile::default();
        for (i, line) in lines.enumerate() {
            let rec: Record = serde_json::from_str(line).map_err(|e| corrupt(i + 2, e))?;
            if basis_of(&rec.basis).is_none() {
                return Err(corrupt(i + 2, format!("unknown basis '{}'", rec.basis)));
            }
            if out.records.insert(rec.key(), rec).is_some() {
                return Err(corrupt(i + 2, "duplicate record"));
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string(&Header {
            format: FORMAT.into(),
            version: VERSION,
        })
        .unwrap();
        s.push('\n');
        for rec in self.records.values() {
            s.push_str(&serde_json::to_string(rec).unwrap());
            s.push('\n');
        }
        s
    }

    /// Writes through a temporary file and a rename.
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.render().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| Error::Cache(format!("{}: {}", path.display(), e.error)))?;
        Ok(())
    }

    pub fn stats(&self) -> CacheStats {
        let mut st = CacheStats::default();
        for r in self.records.values() {
            st.records += 1;
            st.entries += r.entries.len();
            match r.basis.as_str() {
                "H" => st.h_records += 1,
                _ => st.n_records += 1,
            }
            if !st.contexts.contains(&r.ctx) {
                st.contexts.push(r.ctx.clone());
            }
        }
        st.contexts.sort();
        st
    }

    /// Decodes and checks every record of `h`'s context without touching the memo.
    pub fn decode(&self, h: &Hecke) -> Result<Vec<(Basis, Alcove, Element)>> {
        let ctx = h.context();
        let mut out = Vec::new();
        for (n, rec) in self.records.values().filter(|r| r.ctx == ctx).enumerate() {
            let at = |m: String| Error::Cache(format!("record {n} (y = {}): {m}", rec.y));
            let basis = basis_of(&rec.basis).unwrap();
            let y = h.aw.parse_word(&rec.y).map_err(|e| at(e.to_string()))?;
            let mut elem = Element::new();
            for (w, p) in &rec.entries {
                let x = h.aw.parse_word(w).map_err(|e| at(e.to_string()))?;
                if p.is_zero() {
                    return Err(at("zero coefficient".into()));
                }
                if elem.insert(x, p.clone()).is_some() {
                    return Err(at("repeated entry".into()));
                }
            }
            check_element(h, basis, &y, &elem).map_err(at)?;
            out.push((basis, y, elem));
        }
        Ok(out)
    }

    /// Validates everything first, then inserts all records at once.
    pub fn import_into(&self, h: &Hecke) -> Result<usize> {
        let decoded = self.decode(h)?;
        let count = decoded.len();
        let (hs, ns): (Vec<_>, Vec<_>) = decoded.into_iter().partition(|(b, _, _)| *b == Basis::H);
        h.memo_insert_all(Basis::H, hs.into_iter().map(|(_, y, e)| (y, e)).collect());
        h.memo_insert_all(Basis::N, ns.into_iter().map(|(_, y, e)| (y, e)).collect());
        Ok(count)
    }

    /// Replaces the records of `h`'s context with its current memo contents.
    pub fn absorb(&mut self, h: &Hecke) {
        let ctx = h.context();
        self.records.retain(|_, r| r.ctx != ctx);
        for basis in [Basis::H, Basis::N] {
            for (y, e) in h.memo_snapshot(basis) {
                let rec = Record {
                    ctx: ctx.clone(),
                    basis: basis.tag().into(),
                    y: word_string(h, &y),
                    entries: e.iter().map(|(x, p)| (word_string(h, x), p.clone())).collect(),
                };
                self.records.insert(rec.key(), rec);
            }
        }
    }

    pub fn from_memo(h: &Hecke) -> Self {
        let mut c = CacheFile::default();
        c.absorb(h);
        c
    }
}

/// Structural checks that catch corrupted polynomials: unit leading term,
/// `vZ[v]` below the diagonal, support in the right set, bar invariance.
fn check_element(h: &Hecke, basis: Basis, y: &Alcove, e: &Element) -> std::result::Result<(), String> {
    if basis == Basis::N && !h.aw.is_dominant(y) {
        return Err("index is not dominant".into());
    }
    if e.get(y) != Some(&Laurent::one()) {
        return Err("diagonal coefficient is not 1".into());
    }
    let ly = h.aw.length(y);
    for (x, p) in e {
        if x == y {
            continue;
        }
        if !p.in_v_zv() {
            return Err(format!("coefficient at {} is not in vZ[v]", word_string(h, x)));
        }
        if h.aw.length(x) >= ly || (basis == Basis::N && !h.aw.is_dominant(x)) {
            return Err(format!("entry {} is outside the allowed support", word_string(h, x)));
        }
    }
    if h.bar_element(basis, e) != *e {
        return Err("element is not bar invariant".into());
    }
    Ok(())
}
