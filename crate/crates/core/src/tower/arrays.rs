//! The fundamental arrays `a(k,m,n)` and `b(k,m,n)`.
//!
//! Row `(k, m)` is the polynomial `Σ_n x(k,m,n) t^n`. Rows with
//! `k ∈ {−1,0,1}`, `m ∈ {0,1,2}` come from the appendix; larger `m` follow
//! from `P_{m} = −(g₀P_{m−3} + g₁P_{m−2} + g₂P_{m−1})` and larger `k` from
//! `P_{k} = −(a₀P_{k−3} + a₁P_{k−2} + a₂P_{k−1})`. Both multipliers have
//! only nonnegative powers of `t`, so truncating every row above degree
//! `cap` loses nothing at or below `cap`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::appendix::{relation, ArrayKind};
use crate::error::{Error, Result};
use crate::poly::TPoly;
use crate::scalar::val3;
use crate::tower::ModEqCoeffs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    AppendixBase,
    KRecurrence,
    MRecurrence,
}

impl Provenance {
    pub fn of(k: i64, m: i64) -> Provenance {
        if k >= 2 {
            Provenance::KRecurrence
        } else if m >= 3 {
            Provenance::MRecurrence
        } else {
            Provenance::AppendixBase
        }
    }
}

/// On-disk form of one row.
#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    array: String,
    k: i64,
    m: i64,
    values: BTreeMap<String, String>,
}

type Key = (ArrayKind, i64, i64);

/// Memoized array rows, all truncated at the same degree cap.
pub struct FundArrays {
    cap: i64,
    eq: ModEqCoeffs,
    rows: RwLock<HashMap<Key, Arc<TPoly>>>,
    violations: Mutex<Vec<String>>,
    cache_dir: Option<PathBuf>,
}

impl FundArrays {
    pub fn new(cap: i64) -> Self {
        FundArrays {
            cap,
            eq: ModEqCoeffs::new(),
            rows: RwLock::new(HashMap::new()),
            violations: Mutex::new(Vec::new()),
            cache_dir: None,
        }
    }

    /// Persist and reuse rows under `dir`.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// Bound violations seen so far, as `a(k,m,n)`-style messages.
    pub fn violations(&self) -> Vec<String> {
        self.violations.lock().expect("violations lock").clone()
    }

    pub fn len(&self) -> usize {
        self.rows.read().expect("rows lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `x(k, m, n)` for `n ≤ cap`.
    pub fn get(&self, kind: ArrayKind, k: i64, m: i64, n: i64) -> Result<BigInt> {
        if n > self.cap {
            return Err(Error::PrecisionShortfall {
                needed: n,
                available: self.cap,
            });
        }
        Ok(self.row(kind, k, m)?.coeff(n))
    }

    pub fn values(&self, kind: ArrayKind, k: i64, m: i64, ns: std::ops::RangeInclusive<i64>) -> Result<Vec<BigInt>> {
        let row = self.row(kind, k, m)?;
        if *ns.end() > self.cap {
            return Err(Error::PrecisionShortfall {
                needed: *ns.end(),
                available: self.cap,
            });
        }
        Ok(ns.map(|n| row.coeff(n)).collect())
    }

    fn lookup(&self, key: Key) -> Option<Arc<TPoly>> {
        self.rows.read().expect("rows lock").get(&key).cloned()
    }

    /// Row `(k, m)` truncated at the cap.
    pub fn row(&self, kind: ArrayKind, k: i64, m: i64) -> Result<Arc<TPoly>> {
        if k < -1 || m < 0 {
            return Err(Error::InvalidArgument(format!(
                "{}({k},{m},.) needs k >= -1 and m >= 0",
                kind.tag()
            )));
        }
        if let Some(p) = self.lookup((kind, k, m)) {
            return Ok(p);
        }
        if k >= 2 {
            // the three base columns are independent
            [-1i64, 0, 1].par_iter().try_for_each(|&kb| self.row(kind, kb, m).map(drop))?;
            for kk in 2..=k {
                if self.lookup((kind, kk, m)).is_none() {
                    let next = self.load_or(kind, kk, m, || self.k_step(kind, kk, m))?;
                    self.insert(kind, kk, m, next);
                }
            }
        } else {
            for mm in 0..=m {
                if self.lookup((kind, k, mm)).is_none() {
                    let next = self.load_or(kind, k, mm, || {
                        if mm <= 2 {
                            let base = relation(kind, k, mm).expect("eighteen base rows");
                            Ok(base.poly().truncated(self.cap))
                        } else {
                            self.m_step(kind, k, mm)
                        }
                    })?;
                    self.insert(kind, k, mm, next);
                }
            }
        }
        Ok(self.lookup((kind, k, m)).expect("just computed"))
    }

    fn k_step(&self, kind: ArrayKind, k: i64, m: i64) -> Result<TPoly> {
        let mut acc = TPoly::zero().truncated(self.cap);
        for (j, aj) in self.eq.a.iter().enumerate() {
            let prev = self.lookup((kind, k - 3 + j as i64, m)).expect("lower k rows present");
            acc = acc.sub(&aj.mul(&prev));
        }
        Ok(acc.truncated(self.cap))
    }

    fn m_step(&self, kind: ArrayKind, k: i64, m: i64) -> Result<TPoly> {
        let mut acc = TPoly::zero().truncated(self.cap);
        for (j, (_, gj)) in self.eq.b_rewrite.iter().enumerate() {
            let prev = self.lookup((kind, k, m - 3 + j as i64)).expect("lower m rows present");
            acc = acc.sub(&gj.mul(&prev));
        }
        Ok(acc.truncated(self.cap))
    }

    fn insert(&self, kind: ArrayKind, k: i64, m: i64, row: TPoly) {
        let mut bad = Vec::new();
        let lo = kind.min_n(k);
        for (n, c) in row.terms() {
            if n < lo {
                bad.push(format!("{}({k},{m},{n}) = {c} is nonzero below n = {lo}", kind.tag()));
            }
            let bound = kind.val_bound(k, n);
            if !val3(c).at_least(bound) {
                bad.push(format!(
                    "{}({k},{m},{n}) = {c} has val3 {} < {bound}",
                    kind.tag(),
                    val3(c)
                ));
            }
        }
        if !bad.is_empty() {
            self.violations.lock().expect("violations lock").extend(bad);
        }
        self.rows.write().expect("rows lock").insert((kind, k, m), Arc::new(row));
    }

    fn cache_path(&self, dir: &Path, kind: ArrayKind, k: i64, m: i64) -> PathBuf {
        dir.join(format!("{}_k{k}_m{m}_n{}.json", kind.tag(), self.cap))
    }

    fn load_or(&self, kind: ArrayKind, k: i64, m: i64, compute: impl FnOnce() -> Result<TPoly>) -> Result<TPoly> {
        if let Some(dir) = &self.cache_dir {
            let path = self.cache_path(dir, kind, k, m);
            if let Ok(text) = fs::read_to_string(&path) {
                if let Some(p) = parse_cache(&text, kind, k, m) {
                    return Ok(p.truncated(self.cap));
                }
            }
        }
        compute()
    }

    /// Write every computed row to the cache directory. Returns the number
    /// of files written.
    pub fn persist(&self) -> Result<usize> {
        let Some(dir) = &self.cache_dir else {
            return Ok(0);
        };
        fs::create_dir_all(dir)?;
        let rows = self.rows.read().expect("rows lock");
        let mut written = 0;
        for (&(kind, k, m), row) in rows.iter() {
            let path = self.cache_path(dir, kind, k, m);
            if path.exists() {
                continue;
            }
            let file = CacheFile {
                array: kind.tag().to_string(),
                k,
                m,
                values: row.terms().map(|(n, c)| (n.to_string(), c.to_string())).collect(),
            };
            let tmp = path.with_extension("json.tmp");
            fs::write(&tmp, serde_json::to_string(&file)?)?;
            fs::rename(&tmp, &path)?;
            written += 1;
        }
        Ok(written)
    }
}

fn parse_cache(text: &str, kind: ArrayKind, k: i64, m: i64) -> Option<TPoly> {
    let file: CacheFile = serde_json::from_str(text).ok()?;
    if file.array != kind.tag() || file.k != k || file.m != m {
        return None;
    }
    let mut terms = Vec::with_capacity(file.values.len());
    for (n, c) in &file.values {
        terms.push((n.parse::<i64>().ok()?, c.parse::<BigInt>().ok()?));
    }
    Some(TPoly::from_terms(terms))
}
