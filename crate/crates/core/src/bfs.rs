//! Exact breadth-first enumeration of balls in the Cayley graph of
//! `BS(p,q)` with respect to `{a, a^-1, t, t^-1}`.
//!
//! Elements are identified by the canonical key of their standard normal
//! form, so deduplication is exact. Keys are kept in one byte arena indexed
//! by an open-addressing table; within a layer they are stored in sorted
//! order, which makes every run reproducible.

use std::fmt;
use std::hash::BuildHasher;
use std::ops::Range;

use hashbrown::HashTable;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use serde::Serialize;
use thiserror::Error;

use crate::letter::{Letter, Word};
use crate::normal_form::{normalize, NormalForm, Variant};
use crate::params::GroupParams;

/// Parent marker of the identity.
const ROOT: u8 = u8::MAX;

#[derive(Debug, Error)]
pub enum BfsError {
    #[error(
        "memory limit of {limit} bytes reached while expanding radius {}; completed radius {completed_radius}",
        completed_radius + 1
    )]
    MemoryLimit {
        limit: u64,
        completed_radius: u32,
        partial: Box<BallTable>,
    },
    #[error("radius {requested} exceeds what was computed ({available})")]
    RadiusUnavailable { requested: u32, available: u32 },
    #[error("fekete bound needs n >= 1")]
    ZeroRadius,
}

/// Knobs for [`ball_with`].
#[derive(Clone, Debug)]
pub struct BallOptions {
    /// Approximate cap on the table's memory use in bytes.
    pub memory_limit: Option<u64>,
    /// Worker threads for layer expansion; `1` runs sequentially.
    pub threads: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            memory_limit: None,
            threads: 1,
        }
    }
}

/// Append-only set of byte strings with stable `u32` ids.
#[derive(Default)]
struct KeyStore {
    bytes: Vec<u8>,
    ends: Vec<u64>,
    table: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl KeyStore {
    fn len(&self) -> usize {
        self.ends.len()
    }

    fn key(&self, id: u32) -> &[u8] {
        key_at(&self.bytes, &self.ends, id)
    }

    fn find(&self, key: &[u8]) -> Option<u32> {
        let hash = self.hasher.hash_one(key);
        self.table.find(hash, |&id| self.key(id) == key).copied()
    }

    /// Inserts a key known to be absent.
    fn push_new(&mut self, key: &[u8]) -> u32 {
        let id = u32::try_from(self.ends.len()).expect("more than 2^32 elements");
        self.bytes.extend_from_slice(key);
        self.ends.push(self.bytes.len() as u64);
        let hash = self.hasher.hash_one(key);
        let (bytes, ends, hasher) = (&self.bytes, &self.ends, &self.hasher);
        self.table.insert_unique(hash, id, |&other| {
            hasher.hash_one(key_at(bytes, ends, other))
        });
        id
    }

    fn approx_bytes(&self) -> u64 {
        (self.bytes.capacity() + self.ends.capacity() * 8 + self.table.capacity() * 5) as u64
    }
}

fn key_at<'a>(bytes: &'a [u8], ends: &[u64], id: u32) -> &'a [u8] {
    let id = id as usize;
    let start = if id == 0 { 0 } else { ends[id - 1] as usize };
    &bytes[start..ends[id] as usize]
}

/// Newly discovered keys of one layer, before deduplication.
#[derive(Default)]
struct Candidates {
    bytes: Vec<u8>,
    /// `(start, len, letter index)`
    entries: Vec<(u64, u32, u8)>,
}

impl Candidates {
    fn key(&self, i: usize) -> &[u8] {
        let (start, len, _) = self.entries[i];
        &self.bytes[start as usize..start as usize + len as usize]
    }

    fn approx_bytes(&self) -> u64 {
        (self.bytes.capacity() + self.entries.capacity() * 16) as u64
    }

    fn append(&mut self, mut other: Candidates) {
        let offset = self.bytes.len() as u64;
        self.bytes.append(&mut other.bytes);
        self.entries.extend(
            other
                .entries
                .into_iter()
                .map(|(s, l, g)| (s + offset, l, g)),
        );
    }
}

/// The ball of some radius around the identity, with exact word lengths.
///
/// Element ids are assigned layer by layer, so the length of an element is
/// the index of the layer its id falls in.
pub struct BallTable {
    params: GroupParams,
    store: KeyStore,
    parents: Vec<u8>,
    layer_starts: Vec<usize>,
}

impl fmt::Debug for BallTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BallTable")
            .field("params", &self.params)
            .field("radius", &self.radius())
            .field("elements", &self.len())
            .finish()
    }
}

impl BallTable {
    /// The ball of radius 0.
    pub fn new(params: GroupParams) -> BallTable {
        let mut store = KeyStore::default();
        store.push_new(&NormalForm::identity(params, Variant::Standard).to_key());
        BallTable {
            params,
            store,
            parents: vec![ROOT],
            layer_starts: vec![0, 1],
        }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn radius(&self) -> u32 {
        (self.layer_starts.len() - 2) as u32
    }

    /// Number of elements in the ball.
    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn layer_range(&self, k: u32) -> Range<usize> {
        self.layer_starts[k as usize]..self.layer_starts[k as usize + 1]
    }

    /// `sphere_sizes()[k]` = number of elements of length exactly `k`.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        self.layer_starts
            .windows(2)
            .map(|w| (w[1] - w[0]) as u64)
            .collect()
    }

    /// `ball_sizes()[k]` = number of elements of length at most `k`.
    pub fn ball_sizes(&self) -> Vec<u64> {
        self.layer_starts[1..].iter().map(|&e| e as u64).collect()
    }

    /// Keys of the sphere of radius `k`, in sorted order.
    pub fn layer_keys(&self, k: u32) -> impl Iterator<Item = &[u8]> + '_ {
        self.layer_range(k).map(move |id| self.store.key(id as u32))
    }

    /// Every element with its length, in breadth-first order.
    pub fn iter(&self) -> impl Iterator<Item = (NormalForm, u32)> + '_ {
        (0..=self.radius())
            .flat_map(move |k| self.layer_keys(k).map(move |key| (self.decode(key), k)))
    }

    fn decode(&self, key: &[u8]) -> NormalForm {
        NormalForm::from_key(self.params, key).expect("stored keys are valid")
    }

    fn length_of_id(&self, id: u32) -> u32 {
        let pos = self.layer_starts.partition_point(|&s| s <= id as usize);
        (pos - 1) as u32
    }

    /// Length of the element with this canonical key, if it is in the ball.
    pub fn length_of_key(&self, key: &[u8]) -> Option<u32> {
        self.store.find(key).map(|id| self.length_of_id(id))
    }

    /// Length of the element, if it is in the ball.
    pub fn length_of(&self, nf: &NormalForm) -> Option<u32> {
        let key = if nf.variant() == Variant::Standard {
            nf.to_key()
        } else {
            nf.to_variant(Variant::Standard).to_key()
        };
        self.length_of_key(&key)
    }

    /// Letter `g` with `parent · g = element` on a shortest path, `None` for
    /// the identity or elements outside the ball.
    pub fn parent_letter(&self, nf: &NormalForm) -> Option<Letter> {
        let key = nf.to_variant(Variant::Standard).to_key();
        let id = self.store.find(&key)?;
        match self.parents[id as usize] {
            ROOT => None,
            g => Some(Letter::ALL[g as usize]),
        }
    }

    /// A geodesic word for the element, rebuilt from parent letters.
    pub fn geodesic(&self, nf: &NormalForm) -> Option<Word> {
        let mut current = nf.to_variant(Variant::Standard);
        let mut letters = Vec::with_capacity(self.length_of(&current)? as usize);
        while let Some(g) = self.parent_letter(&current) {
            letters.push(g);
            current.mul_letter(g.inverse());
        }
        letters.reverse();
        Some(Word(letters))
    }

    /// `sphere(n)^(1/n)`, an upper bound for the growth rate because the
    /// spherical growth sequence is submultiplicative.
    pub fn fekete_bound(&self, n: u32) -> Result<f64, BfsError> {
        if n == 0 {
            return Err(BfsError::ZeroRadius);
        }
        if n > self.radius() {
            return Err(BfsError::RadiusUnavailable {
                requested: n,
                available: self.radius(),
            });
        }
        let s = self.sphere_sizes()[n as usize] as f64;
        Ok(s.powf(1.0 / f64::from(n)))
    }

    pub fn approx_bytes(&self) -> u64 {
        self.store.approx_bytes() + self.parents.capacity() as u64
    }

    /// Adds the next sphere. On hitting the memory limit the table is left
    /// unchanged and `Err(limit)` is returned.
    fn expand(&mut self, opts: &BallOptions) -> Result<(), u64> {
        let frontier = self.layer_range(self.radius());
        let budget = opts
            .memory_limit
            .map(|limit| limit.saturating_sub(self.approx_bytes()));
        let candidates = if opts.threads <= 1 {
            self.collect_candidates(frontier, budget)
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .expect("thread pool");
            pool.install(|| {
                let chunk = (frontier.len() / (opts.threads * 8)).max(1024);
                let starts: Vec<usize> = frontier.clone().step_by(chunk).collect();
                let per_thread = budget.map(|b| b / opts.threads as u64);
                let parts: Vec<Option<Candidates>> = starts
                    .into_par_iter()
                    .map(|s| self.collect_candidates(s..(s + chunk).min(frontier.end), per_thread))
                    .collect();
                let mut all = Candidates::default();
                for part in parts {
                    all.append(part?);
                }
                Some(all)
            })
        };
        let limit = opts.memory_limit.unwrap_or(u64::MAX);
        let candidates = candidates.ok_or(limit)?;

        let mut order: Vec<u32> = (0..candidates.entries.len() as u32).collect();
        let by_key = |&i: &u32, &j: &u32| {
            candidates
                .key(i as usize)
                .cmp(candidates.key(j as usize))
                .then(
                    candidates.entries[i as usize]
                        .2
                        .cmp(&candidates.entries[j as usize].2),
                )
        };
        if opts.threads <= 1 {
            order.sort_unstable_by(by_key);
        } else {
            order.par_sort_unstable_by(by_key);
        }
        order.dedup_by(|a, b| candidates.key(*a as usize) == candidates.key(*b as usize));

        let new_bytes: u64 = order
            .iter()
            .map(|&i| u64::from(candidates.entries[i as usize].1) + 8 + 10)
            .sum();
        if self.approx_bytes() + candidates.approx_bytes() + new_bytes > limit {
            return Err(limit);
        }
        for &i in &order {
            self.store.push_new(candidates.key(i as usize));
            self.parents.push(candidates.entries[i as usize].2);
        }
        self.layer_starts.push(self.store.len());
        Ok(())
    }

    /// Neighbours of `ids` that are not yet in the table. `None` when the
    /// buffer would exceed `budget`.
    fn collect_candidates(&self, ids: Range<usize>, budget: Option<u64>) -> Option<Candidates> {
        let mut out = Candidates::default();
        let mut scratch = NormalForm::identity(self.params, Variant::Standard);
        let mut key = Vec::with_capacity(32);
        for id in ids {
            let x = self.decode(self.store.key(id as u32));
            for g in Letter::ALL {
                scratch.clone_from(&x);
                scratch.mul_letter(g);
                key.clear();
                scratch.write_key(&mut key);
                if self.store.find(&key).is_none() {
                    let start = out.bytes.len() as u64;
                    out.bytes.extend_from_slice(&key);
                    out.entries.push((start, key.len() as u32, g.index() as u8));
                }
            }
            if let Some(b) = budget {
                if out.approx_bytes() > b {
                    return None;
                }
            }
        }
        Some(out)
    }
}

/// Exact ball of the given radius.
pub fn ball(params: GroupParams, radius: u32) -> Result<BallTable, BfsError> {
    ball_with(params, radius, &BallOptions::default())
}

pub fn ball_with(
    params: GroupParams,
    radius: u32,
    opts: &BallOptions,
) -> Result<BallTable, BfsError> {
    let mut table = BallTable::new(params);
    while table.radius() < radius {
        if let Err(limit) = table.expand(opts) {
            return Err(BfsError::MemoryLimit {
                limit,
                completed_radius: table.radius(),
                partial: Box::new(table),
            });
        }
    }
    Ok(table)
}

/// Exact word length of `word`, or `None` if it exceeds `max_radius`.
/// Expansion stops at the first layer containing the element.
pub fn word_length(
    params: GroupParams,
    word: &Word,
    max_radius: u32,
) -> Result<Option<u32>, BfsError> {
    word_length_with(params, word, max_radius, &BallOptions::default())
}

pub fn word_length_with(
    params: GroupParams,
    word: &Word,
    max_radius: u32,
    opts: &BallOptions,
) -> Result<Option<u32>, BfsError> {
    let key = normalize(word, params, Variant::Standard).to_key();
    let mut table = BallTable::new(params);
    loop {
        if let Some(len) = table.length_of_key(&key) {
            return Ok(Some(len));
        }
        if table.radius() >= max_radius {
            return Ok(None);
        }
        if let Err(limit) = table.expand(opts) {
            return Err(BfsError::MemoryLimit {
                limit,
                completed_radius: table.radius(),
                partial: Box::new(table),
            });
        }
    }
}

/// `sphere(n)^(1/n)` from an exact ball of radius `n`.
pub fn fekete_upper_bound(params: GroupParams, n: u32) -> Result<f64, BfsError> {
    if n == 0 {
        return Err(BfsError::ZeroRadius);
    }
    ball(params, n)?.fekete_bound(n)
}

/// One line of `bs sphere` output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphereRow {
    pub radius: u32,
    pub sphere: u64,
    pub ball: u64,
    pub fekete: Option<f64>,
}

impl BallTable {
    pub fn rows(&self) -> Vec<SphereRow> {
        let spheres = self.sphere_sizes();
        let balls = self.ball_sizes();
        (0..=self.radius())
            .map(|k| SphereRow {
                radius: k,
                sphere: spheres[k as usize],
                ball: balls[k as usize],
                fekete: self.fekete_bound(k).ok(),
            })
            .collect()
    }
}
