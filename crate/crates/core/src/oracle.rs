//! Independent brute-force ground truth: error balls, ball intersections,
//! exhaustive sweeps over small parameter grids, and exact independence
//! numbers of tiny confusability graphs.
//!
//! Nothing in this module takes a shortcut through `characterize` or
//! `codebook` for its ground truth; the claims those modules make are the
//! *subjects* of the sweeps here, and the reference values come from direct
//! enumeration over `seqcore` primitives only.
//!
//! Ball conventions mirror the channel definitions exactly: substitution
//! balls are "at most t" substitutions, insertion and deletion balls are
//! "exactly t" edits. This asymmetry is easy to get wrong; it is asserted
//! by the unit tests below.

use crate::budget::Budget;
use crate::characterize::{self, PairStructure};
use crate::report::{Outcome, VerificationReport};
use crate::seqcore::{self, Symbol, Word};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("deletion radius {t} exceeds word length {n}")]
    RadiusTooLarge { t: usize, n: usize },
    #[error(transparent)]
    Seq(#[from] seqcore::SeqError),
    #[error("no pair satisfies the distance requirement; maximum over an empty set")]
    MaxOverEmptySet,
    #[error("budget exceeded: requires {required}, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
}

/// Which error ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallKind {
    /// At most `t` substitutions.
    Substitution,
    /// Exactly `t` insertions.
    Insertion,
    /// Exactly `t` deletions.
    Deletion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallSpec {
    pub kind: BallKind,
    pub radius: usize,
}

/// All words of length n over the alphabet of size q, in lexicographic
/// order.
pub fn all_words(q: Symbol, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(Word::new(q, cur.clone()).expect("valid"));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < q {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn single_substitutions(x: &Word) -> Vec<Word> {
    let q = x.q();
    let mut out = Vec::new();
    for i in 0..x.len() {
        for s in 0..q {
            if s != x.symbols()[i] {
                let mut sy = x.symbols().to_vec();
                sy[i] = s;
                out.push(Word::new(q, sy).expect("valid"));
            }
        }
    }
    out
}

fn single_insertions(x: &Word) -> Vec<Word> {
    let q = x.q();
    let mut out = Vec::new();
    for i in 0..=x.len() {
        for s in 0..q {
            let mut sy = x.symbols().to_vec();
            sy.insert(i, s);
            out.push(Word::new(q, sy).expect("valid"));
        }
    }
    out
}

fn single_deletions(x: &Word) -> Vec<Word> {
    let q = x.q();
    let mut out = Vec::new();
    for i in 0..x.len() {
        let mut sy = x.symbols().to_vec();
        sy.remove(i);
        out.push(Word::new(q, sy).expect("valid"));
    }
    out
}

/// The error ball of `x`: exact set, duplicate-free.
pub fn ball(x: &Word, spec: BallSpec) -> Result<BTreeSet<Word>, OracleError> {
    if spec.kind == BallKind::Deletion && spec.radius > x.len() {
        return Err(OracleError::RadiusTooLarge {
            t: spec.radius,
            n: x.len(),
        });
    }
    let mut set: BTreeSet<Word> = BTreeSet::new();
    set.insert(x.clone());
    for _ in 0..spec.radius {
        let mut next: BTreeSet<Word> = if spec.kind == BallKind::Substitution {
            // "At most t": keep everything reached so far.
            set.clone()
        } else {
            BTreeSet::new()
        };
        for w in &set {
            let step = match spec.kind {
                BallKind::Substitution => single_substitutions(w),
                BallKind::Insertion => single_insertions(w),
                BallKind::Deletion => single_deletions(w),
            };
            next.extend(step);
        }
        set = next;
    }
    Ok(set)
}

/// Exact cardinality of `ball(x) ∩ ball(y)`.
pub fn ball_intersection(x: &Word, y: &Word, spec: BallSpec) -> Result<u64, OracleError> {
    seqcore::check_same_shape(x, y)?;
    let bx = ball(x, spec)?;
    let by = ball(y, spec)?;
    Ok(bx.intersection(&by).count() as u64)
}

// ---------------------------------------------------------------------------
// Maximum ball intersections
// ---------------------------------------------------------------------------

/// Which space a maximum-intersection scan ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// Plain words; pairs qualify by Hamming distance >= d.
    Words,
    /// ℓ-read vectors mapped to rank words over the multiset alphabet;
    /// pairs qualify by read distance >= d and balls are substitution
    /// balls around the rank words.
    ReadVectors { ell: usize },
}

fn encode_base(arr: &[u8], base: u64) -> u64 {
    arr.iter().fold(0u64, |acc, &s| acc * base + s as u64)
}

/// Sorted, encoded substitution ball (radius at most `t`) of a fixed-length
/// array over an alphabet of size `base`.
fn subst_ball_encoded(arr: &[u8], base: u64, t: usize) -> Vec<u64> {
    assert!(
        base <= 256 && base.checked_pow(arr.len() as u32).is_some(),
        "encoded ball elements must fit u64"
    );
    let mut set: BTreeSet<Vec<u8>> = BTreeSet::new();
    set.insert(arr.to_vec());
    for _ in 0..t {
        let snapshot: Vec<Vec<u8>> = set.iter().cloned().collect();
        for w in snapshot {
            for i in 0..w.len() {
                for s in 0..base as u8 {
                    if s != w[i] {
                        let mut nw = w.clone();
                        nw[i] = s;
                        set.insert(nw);
                    }
                }
            }
        }
    }
    set.iter().map(|w| encode_base(w, base)).collect()
}

fn sorted_intersection_count(a: &[u64], b: &[u64]) -> u64 {
    let (mut i, mut j, mut c) = (0usize, 0usize, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// For every exact distance D, the maximum of |S_t(a) ∩ S_t(b)| over pairs
/// whose (read-)distance is exactly D. Index k of the result holds distance
/// k; `None` where no pair attains that distance.
pub fn max_ball_intersection_profile(
    n: usize,
    q: Symbol,
    t: usize,
    space: Space,
    budget: &Budget,
) -> Result<Vec<Option<u64>>, OracleError> {
    let count = budget
        .check_enumeration(q, n)
        .map_err(|required| OracleError::BudgetExceeded {
            required,
            budget: budget.enumeration,
        })?;
    let pair_count = count * count.saturating_sub(1) / 2;
    if pair_count > budget.enumeration {
        return Err(OracleError::BudgetExceeded {
            required: pair_count,
            budget: budget.enumeration,
        });
    }
    let words = all_words(q, n);
    let (arrays, base): (Vec<Vec<u8>>, u64) = match space {
        Space::Words => (
            words
                .iter()
                .map(|w| w.symbols().iter().map(|&s| s as u8).collect())
                .collect(),
            q as u64,
        ),
        Space::ReadVectors { ell } => {
            let base = seqcore::multiset_count(q, ell);
            let arrays = words
                .iter()
                .map(|w| seqcore::read_rank_bytes(w, ell))
                .collect::<Result<Vec<_>, _>>()?;
            (arrays, base)
        }
    };
    let len = arrays.first().map(|a| a.len()).unwrap_or(0);
    let balls: Vec<Vec<u64>> = arrays
        .par_iter()
        .map(|a| subst_ball_encoded(a, base, t))
        .collect();

    let profile = (0..arrays.len())
        .into_par_iter()
        .map(|i| {
            let mut local: Vec<Option<u64>> = vec![None; len + 1];
            for j in i + 1..arrays.len() {
                let d = hamming(&arrays[i], &arrays[j]);
                let inter = sorted_intersection_count(&balls[i], &balls[j]);
                let slot = &mut local[d];
                *slot = Some(slot.map_or(inter, |v| v.max(inter)));
            }
            local
        })
        .reduce(
            || vec![None; len + 1],
            |mut acc, local| {
                for (a, l) in acc.iter_mut().zip(local) {
                    *a = match (*a, l) {
                        (None, v) => v,
                        (v, None) => v,
                        (Some(x), Some(y)) => Some(x.max(y)),
                    };
                }
                acc
            },
        );
    Ok(profile)
}

/// Maximum of |S_t(x) ∩ S_t(y)| over all pairs at (read-)distance >= d.
pub fn max_ball_intersection(
    n: usize,
    q: Symbol,
    t: usize,
    d: usize,
    space: Space,
    budget: &Budget,
) -> Result<u64, OracleError> {
    let profile = max_ball_intersection_profile(n, q, t, space, budget)?;
    profile
        .iter()
        .skip(d)
        .filter_map(|v| *v)
        .max()
        .ok_or(OracleError::MaxOverEmptySet)
}

// ---------------------------------------------------------------------------
// Exact independence number
// ---------------------------------------------------------------------------

/// Exact independence number of the confusability graph on all of Σ_q^n
/// with an edge between x and y whenever their ℓ-read vectors are at
/// Hamming distance exactly 2, by branch and bound.
pub fn independence_number(
    n: usize,
    q: Symbol,
    ell: usize,
    budget: &Budget,
) -> Result<u64, OracleError> {
    let mut vertices: u64 = 1;
    for _ in 0..n {
        vertices = vertices.saturating_mul(q as u64);
    }
    if vertices > budget.graph_vertices {
        return Err(OracleError::BudgetExceeded {
            required: vertices,
            budget: budget.graph_vertices,
        });
    }
    let words = all_words(q, n);
    let arrays: Vec<Vec<u8>> = words
        .iter()
        .map(|w| seqcore::read_rank_bytes(w, ell))
        .collect::<Result<Vec<_>, _>>()?;
    let v = words.len();
    let blocks = v.div_ceil(64);
    let mut adj = vec![vec![0u64; blocks]; v];
    for i in 0..v {
        for j in i + 1..v {
            if hamming(&arrays[i], &arrays[j]) == 2 {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut solver = Mis {
        adj: &adj,
        best: 0,
    };
    let full: Vec<u64> = (0..blocks)
        .map(|b| {
            let lo = b * 64;
            let hi = (lo + 64).min(v);
            if hi - lo == 64 {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            }
        })
        .collect();
    // Seed the bound with a greedy independent set (min degree first).
    solver.best = solver.greedy_lower_bound(&full);
    solver.solve(full, 0);
    Ok(solver.best as u64)
}

struct Mis<'a> {
    adj: &'a [Vec<u64>],
    best: usize,
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|b| b.count_ones() as usize).sum()
}

fn and_not(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & !y).collect()
}

fn clear_bit(bits: &mut [u64], v: usize) {
    bits[v / 64] &= !(1 << (v % 64));
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(blk, &w)| blk * 64 + w.trailing_zeros() as usize)
}

fn iter_bits(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(blk, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(blk * 64 + b)
            }
        })
    })
}

impl Mis<'_> {
    /// Size of the independent set grown by repeatedly taking a vertex of
    /// minimum candidate-degree. Used only as a starting bound.
    fn greedy_lower_bound(&self, cand: &[u64]) -> usize {
        let mut cand = cand.to_vec();
        let mut size = 0usize;
        while popcount(&cand) > 0 {
            let v = iter_bits(&cand)
                .min_by_key(|&v| self.degree_in(v, &cand))
                .expect("nonempty");
            clear_bit(&mut cand, v);
            cand = and_not(&cand, &self.adj[v]);
            size += 1;
        }
        size
    }

    fn degree_in(&self, v: usize, cand: &[u64]) -> usize {
        self.adj[v]
            .iter()
            .zip(cand)
            .map(|(a, c)| (a & c).count_ones() as usize)
            .sum()
    }

    /// Greedy clique cover of the candidate subgraph: its cardinality is an
    /// upper bound on the independence number of the subgraph.
    fn clique_cover_bound(&self, cand: &[u64]) -> usize {
        let mut remaining = cand.to_vec();
        let mut cliques = 0usize;
        while let Some(v) = first_bit(&remaining) {
            cliques += 1;
            clear_bit(&mut remaining, v);
            // Vertices adjacent to every clique member so far.
            let mut common: Vec<u64> = remaining
                .iter()
                .zip(&self.adj[v])
                .map(|(r, a)| r & a)
                .collect();
            while let Some(u) = first_bit(&common) {
                clear_bit(&mut remaining, u);
                common = common
                    .iter()
                    .zip(&self.adj[u])
                    .map(|(c, a)| c & a)
                    .collect();
                clear_bit(&mut common, u);
            }
        }
        cliques
    }

    fn solve(&mut self, mut cand: Vec<u64>, mut size: usize) {
        loop {
            let remaining = popcount(&cand);
            if remaining == 0 {
                self.best = self.best.max(size);
                return;
            }
            if size + remaining <= self.best {
                return;
            }
            // Reductions: a vertex of candidate-degree <= 1 is always in
            // some maximum independent set.
            let mut min_v = usize::MAX;
            let mut min_deg = usize::MAX;
            let mut reduced = false;
            for v in iter_bits(&cand).collect::<Vec<_>>() {
                let deg = self.degree_in(v, &cand);
                if deg <= 1 {
                    clear_bit(&mut cand, v);
                    cand = and_not(&cand, &self.adj[v]);
                    size += 1;
                    reduced = true;
                    break;
                }
                if deg < min_deg {
                    min_deg = deg;
                    min_v = v;
                }
            }
            if reduced {
                continue;
            }
            if size + self.clique_cover_bound(&cand) <= self.best {
                return;
            }
            // Branch over the closed neighborhood of a minimum-degree
            // vertex: every maximum independent set of the subgraph meets
            // N[v], so try "w is the first chosen member of N[v]" for each
            // w, excluding the earlier choices in later branches.
            let mut members: Vec<usize> = vec![min_v];
            members.extend(iter_bits(&cand).filter(|&u| {
                u != min_v && self.adj[min_v][u / 64] >> (u % 64) & 1 == 1
            }));
            // Heaviest neighbors first: they remove the most candidates,
            // and the later branches run under more exclusions.
            members[1..].sort_by_key(|&u| std::cmp::Reverse(self.degree_in(u, &cand)));
            let mut excluded = cand.clone();
            for &w in &members {
                let mut next = and_not(&excluded, &self.adj[w]);
                clear_bit(&mut next, w);
                self.solve(next, size + 1);
                clear_bit(&mut excluded, w);
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Structural shape used by the insertion/deletion equivalences
// ---------------------------------------------------------------------------

/// Does the pair differ exactly on one contiguous block x[f..l] that is an
/// alternating run `α_t(ab)` in x and `α_t(ba)` in y, with t >= min_t?
/// Returns the block length t when so. This is a direct scan, independent
/// of the decomposition in `characterize`.
pub fn swap_shape(x: &Word, y: &Word, min_t: usize) -> Option<usize> {
    if x == y || x.len() != y.len() {
        return None;
    }
    let xs = x.symbols();
    let ys = y.symbols();
    let n = xs.len();
    let f = (0..n).find(|&i| xs[i] != ys[i])?;
    let l = (0..n).rfind(|&i| xs[i] != ys[i])?;
    let a = xs[f];
    let b = ys[f];
    if a == b {
        return None;
    }
    for i in f..=l {
        let (ex, ey) = if (i - f) % 2 == 0 { (a, b) } else { (b, a) };
        if xs[i] != ex || ys[i] != ey {
            return None;
        }
    }
    let t = l - f + 1;
    (t >= min_t).then_some(t)
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Parameter grid for [`sweep`]: word lengths 1..=n_max over alphabet q;
/// `ells` is consulted by the checks that range over read lengths.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub q: Symbol,
    pub n_max: usize,
    pub ells: Vec<usize>,
}

/// Run one named exhaustive check over the grid. Deterministic: identical
/// grids yield identical reports, and a failing report always carries the
/// lexicographically first counterexample pair.
pub fn sweep(check: &str, grid: &SweepGrid, budget: &Budget) -> Result<VerificationReport, OracleError> {
    for n in 0..=grid.n_max {
        budget
            .check_enumeration(grid.q, n)
            .map_err(|required| OracleError::BudgetExceeded {
                required,
                budget: budget.enumeration,
            })?;
    }
    let params = json!({
        "check": check,
        "q": grid.q,
        "n_max": grid.n_max,
        "ells": grid.ells,
    });
    let (pairs, failure) = match check {
        "char2" => sweep_char2(grid),
        "read_min_distance" => sweep_read_min_distance(grid),
        "ins_eq" => sweep_ins_eq(grid),
        "del_eq" => sweep_del_eq(grid),
        "indicator_bound" => sweep_indicator_bound(grid),
        "indicator_binary" => sweep_indicator_binary(grid)?,
        "s1_recon_eq" => sweep_s1_recon_eq(grid),
        "l3_shape" => sweep_l3_shape(grid)?,
        "harness_selftest" => sweep_harness_selftest(grid),
        other => return Err(OracleError::UnknownCheck(other.to_string())),
    };
    let result = match failure {
        None => Outcome::Pass,
        Some((x, y, details)) => Outcome::Fail {
            x: x.to_string(),
            y: y.to_string(),
            details,
        },
    };
    Ok(VerificationReport {
        check: check.to_string(),
        params,
        pairs_examined: pairs,
        result,
    })
}

type Failure = Option<(Word, Word, String)>;

/// Scan all pairs i < j (words are in lexicographic order, so pair order is
/// lexicographic too) and return the first failure plus the pair count.
fn pair_scan<F>(words: &[Word], f: F) -> (u64, Failure)
where
    F: Fn(usize, usize) -> Option<String> + Sync,
{
    let total = words.len() as u64 * (words.len() as u64).saturating_sub(1) / 2;
    let first = (0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            (i + 1..words.len())
                .find_map(|j| f(i, j).map(|details| (i, j, details)))
        })
        .min_by_key(|&(i, j, _)| (i, j));
    (
        total,
        first.map(|(i, j, d)| (words[i].clone(), words[j].clone(), d)),
    )
}

fn rank_arrays(words: &[Word], ell: usize) -> Vec<Vec<u8>> {
    words
        .iter()
        .map(|w| seqcore::read_rank_bytes(w, ell).expect("ell >= 2"))
        .collect()
}

fn sweep_char2(grid: &SweepGrid) -> (u64, Failure) {
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        let arrays = rank_arrays(&words, 2);
        let (p, fail) = pair_scan(&words, |i, j| {
            let ps: PairStructure =
                characterize::decompose_pair(&words[i], &words[j]).expect("distinct");
            let predicted = characterize::predicted_distance(&ps);
            let actual = hamming(&arrays[i], &arrays[j]);
            (predicted != actual).then(|| {
                format!("predicted distance {predicted}, 2-read distance {actual}")
            })
        });
        pairs += p;
        if fail.is_some() {
            return (pairs, fail);
        }
    }
    (pairs, None)
}

fn sweep_read_min_distance(grid: &SweepGrid) -> (u64, Failure) {
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        for &ell in &grid.ells {
            let arrays = rank_arrays(&words, ell);
            let min_seen = AtomicUsize::new(usize::MAX);
            let (p, fail) = pair_scan(&words, |i, j| {
                let d = hamming(&arrays[i], &arrays[j]);
                min_seen.fetch_min(d, Ordering::Relaxed);
                if d < 2 {
                    return Some(format!("read distance {d} < 2 at ℓ={ell}"));
                }
                let dh = hamming_words(&words[i], &words[j]);
                if dh == 1 && d != ell {
                    return Some(format!(
                        "Hamming distance 1 but read distance {d} != ℓ={ell}"
                    ));
                }
                None
            });
            pairs += p;
            if fail.is_some() {
                return (pairs, fail);
            }
            // A transposition pair exists for every n >= 2 and sits at
            // read distance exactly 2, so the floor is attained.
            let min_seen = min_seen.load(Ordering::Relaxed);
            if n >= 2 && min_seen != 2 {
                return (
                    pairs,
                    Some((
                        words[0].clone(),
                        words[0].clone(),
                        format!("minimum read distance at ℓ={ell}, n={n} is {min_seen}, expected exactly 2"),
                    )),
                );
            }
        }
    }
    (pairs, None)
}

fn encoded_ball_list(words: &[Word], spec: BallSpec) -> Vec<Vec<u64>> {
    if let Some(w) = words.first() {
        let max_len = w.len() + spec.radius;
        assert!(
            (w.q() as u64).checked_pow(max_len as u32).is_some(),
            "encoded ball elements must fit u64"
        );
    }
    words
        .par_iter()
        .map(|w| {
            let b = ball(w, spec).expect("radius valid");
            let mut enc: Vec<u64> = b
                .iter()
                .map(|bw| {
                    bw.symbols()
                        .iter()
                        .fold(0u64, |acc, &s| acc * bw.q() as u64 + s as u64)
                })
                .collect();
            enc.sort_unstable();
            enc
        })
        .collect()
}

fn sweep_ins_eq(grid: &SweepGrid) -> (u64, Failure) {
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        let arrays = rank_arrays(&words, 2);
        let balls = encoded_ball_list(
            &words,
            BallSpec {
                kind: BallKind::Insertion,
                radius: 1,
            },
        );
        let (p, fail) = pair_scan(&words, |i, j| {
            let d2 = hamming(&arrays[i], &arrays[j]) == 2;
            let inter = sorted_intersection_count(&balls[i], &balls[j]);
            (d2 != (inter == 2)).then(|| {
                format!(
                    "read distance 2 is {d2} but |I1∩I1| = {inter}"
                )
            })
        });
        pairs += p;
        if fail.is_some() {
            return (pairs, fail);
        }
    }
    (pairs, None)
}

fn sweep_del_eq(grid: &SweepGrid) -> (u64, Failure) {
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        let balls = encoded_ball_list(
            &words,
            BallSpec {
                kind: BallKind::Deletion,
                radius: 1,
            },
        );
        let (p, fail) = pair_scan(&words, |i, j| {
            let shaped = swap_shape(&words[i], &words[j], 2).is_some();
            let inter = sorted_intersection_count(&balls[i], &balls[j]);
            (shaped != (inter == 2)).then(|| {
                format!("t>=2 swap shape is {shaped} but |D1∩D1| = {inter}")
            })
        });
        pairs += p;
        if fail.is_some() {
            return (pairs, fail);
        }
    }
    (pairs, None)
}

fn hamming_words(x: &Word, y: &Word) -> usize {
    x.symbols()
        .iter()
        .zip(y.symbols())
        .filter(|(a, b)| a != b)
        .count()
}

fn sweep_indicator_bound(grid: &SweepGrid) -> (u64, Failure) {
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        let arrays = rank_arrays(&words, 2);
        let indicators: Vec<Word> = words.iter().map(seqcore::indicator).collect();
        let (p, fail) = pair_scan(&words, |i, j| {
            let d = hamming(&arrays[i], &arrays[j]);
            let di = hamming_words(&indicators[i], &indicators[j]);
            (di < 1 || di > d).then(|| {
                format!("indicator distance {di} outside [1, read distance {d}]")
            })
        });
        pairs += p;
        if fail.is_some() {
            return (pairs, fail);
        }
    }
    (pairs, None)
}

/// The binary strengthening: at q = 2 and read distance <= 3 the indicator
/// distance is exactly 2 when the differing window of the pair ends before
/// position n, and exactly 1 when it reaches position n (the second
/// indicator difference would fall at position n+1, which does not exist).
fn sweep_indicator_binary(grid: &SweepGrid) -> Result<(u64, Failure), OracleError> {
    if grid.q != 2 {
        return Err(OracleError::InvalidGrid(
            "indicator_binary is a binary-alphabet check; set q = 2".into(),
        ));
    }
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        let arrays = rank_arrays(&words, 2);
        let indicators: Vec<Word> = words.iter().map(seqcore::indicator).collect();
        let (p, fail) = pair_scan(&words, |i, j| {
            let d = hamming(&arrays[i], &arrays[j]);
            if d > 3 {
                return None;
            }
            let x = &words[i];
            let y = &words[j];
            let last_diff = (0..n)
                .rfind(|&k| x.symbols()[k] != y.symbols()[k])
                .expect("distinct");
            let expected = if last_diff + 1 < n { 2 } else { 1 };
            let di = hamming_words(&indicators[i], &indicators[j]);
            (di != expected).then(|| {
                format!(
                    "read distance {d}: indicator distance {di}, expected {expected} \
                     (last differing position {} of {n})",
                    last_diff + 1
                )
            })
        });
        pairs += p;
        if fail.is_some() {
            return Ok((pairs, fail));
        }
    }
    Ok((pairs, None))
}

fn sweep_s1_recon_eq(grid: &SweepGrid) -> (u64, Failure) {
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        for &ell in &grid.ells {
            let arrays = rank_arrays(&words, ell);
            let base = seqcore::multiset_count(grid.q, ell);
            let balls: Vec<Vec<u64>> = arrays
                .par_iter()
                .map(|a| subst_ball_encoded(a, base, 1))
                .collect();
            let (p, fail) = pair_scan(&words, |i, j| {
                let d3 = hamming(&arrays[i], &arrays[j]) >= 3;
                let inter = sorted_intersection_count(&balls[i], &balls[j]);
                (d3 != (inter <= 1)).then(|| {
                    format!(
                        "read distance >= 3 is {d3} but |S1(R)∩S1(R)| = {inter} at ℓ={ell}"
                    )
                })
            });
            pairs += p;
            if fail.is_some() {
                return (pairs, fail);
            }
        }
    }
    (pairs, None)
}

fn sweep_l3_shape(grid: &SweepGrid) -> Result<(u64, Failure), OracleError> {
    if grid.ells.iter().any(|&e| e < 3) {
        return Err(OracleError::InvalidGrid(
            "l3_shape requires read lengths ℓ >= 3".into(),
        ));
    }
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        for &ell in &grid.ells {
            let arrays = rank_arrays(&words, ell);
            let inversions: Vec<u64> = words.iter().map(seqcore::inversion_number).collect();
            let (p, fail) = pair_scan(&words, |i, j| {
                let confusable = hamming(&arrays[i], &arrays[j]) <= 2;
                let st = characterize::l3_confusable(&words[i], &words[j], ell)
                    .expect("distinct, ell >= 3");
                if confusable != st.is_some() {
                    return Some(format!(
                        "read distance <= 2 is {confusable} but the ℓ ≥ 3 shape is {}",
                        if st.is_some() { "present" } else { "absent" }
                    ));
                }
                if let Some(st) = st {
                    let (hi, lo) = if st.a > st.b { (i, j) } else { (j, i) };
                    if inversions[hi] - inversions[lo] != st.swap_count as u64 {
                        return Some(format!(
                            "inversion difference {} != swap count {}",
                            inversions[hi] - inversions[lo],
                            st.swap_count
                        ));
                    }
                }
                None
            });
            pairs += p;
            if fail.is_some() {
                return Ok((pairs, fail));
            }
        }
    }
    Ok((pairs, None))
}

/// Intentionally false claim (that all distinct pairs sit at 2-read
/// distance 3 or more) used to prove the harness reports failures with
/// the lexicographically first counterexample.
fn sweep_harness_selftest(grid: &SweepGrid) -> (u64, Failure) {
    let mut pairs = 0u64;
    for n in 1..=grid.n_max {
        let words = all_words(grid.q, n);
        let arrays = rank_arrays(&words, 2);
        let (p, fail) = pair_scan(&words, |i, j| {
            let d = hamming(&arrays[i], &arrays[j]);
            (d < 3).then(|| format!("read distance {d} < 3"))
        });
        pairs += p;
        if fail.is_some() {
            return (pairs, fail);
        }
    }
    (pairs, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: Symbol, symbols: &[Symbol]) -> Word {
        Word::new(q, symbols.to_vec()).unwrap()
    }

    #[test]
    fn substitution_ball_size() {
        // |S_1(x)| = 1 + n(q-1) for any x.
        for q in [2u32, 3, 4] {
            for n in 0..=4 {
                let x = Word::new(q, (0..n as u32).map(|i| i % q).collect()).unwrap();
                let b = ball(
                    &x,
                    BallSpec {
                        kind: BallKind::Substitution,
                        radius: 1,
                    },
                )
                .unwrap();
                assert_eq!(b.len() as u64, 1 + n as u64 * (q as u64 - 1));
            }
        }
    }

    #[test]
    fn insertion_ball_of_01() {
        // Direct enumeration: I1(01) = {001, 010, 011, 101}, so the size is
        // 4 = (n+1)(q-1) + 1. (Insertions at the three positions produce
        // six strings with two duplicates.)
        let b = ball(
            &w(2, &[0, 1]),
            BallSpec {
                kind: BallKind::Insertion,
                radius: 1,
            },
        )
        .unwrap();
        let expect: BTreeSet<Word> = [
            w(2, &[0, 0, 1]),
            w(2, &[0, 1, 0]),
            w(2, &[0, 1, 1]),
            w(2, &[1, 0, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(b, expect);
        // The closed form holds for every word.
        for q in [2u32, 3] {
            for x in all_words(q, 3) {
                let b = ball(
                    &x,
                    BallSpec {
                        kind: BallKind::Insertion,
                        radius: 1,
                    },
                )
                .unwrap();
                assert_eq!(b.len() as u64, 4 * (q as u64 - 1) + 1);
            }
        }
    }

    #[test]
    fn deletion_ball_examples() {
        let b = ball(
            &w(2, &[0, 0]),
            BallSpec {
                kind: BallKind::Deletion,
                radius: 1,
            },
        )
        .unwrap();
        assert_eq!(b, [w(2, &[0])].into_iter().collect());
        assert_eq!(
            ball(
                &w(2, &[0, 0]),
                BallSpec {
                    kind: BallKind::Deletion,
                    radius: 3
                }
            ),
            Err(OracleError::RadiusTooLarge { t: 3, n: 2 })
        );
    }

    #[test]
    fn deletion_ball_size_is_run_count() {
        // |D1(x)| equals the number of maximal runs of x, counted directly.
        for q in [2u32, 3] {
            for n in 1..=6 {
                for x in all_words(q, n) {
                    let runs = 1 + x
                        .symbols()
                        .windows(2)
                        .filter(|p| p[0] != p[1])
                        .count();
                    let b = ball(
                        &x,
                        BallSpec {
                            kind: BallKind::Deletion,
                            radius: 1,
                        },
                    )
                    .unwrap();
                    assert_eq!(b.len(), runs);
                }
            }
        }
    }

    #[test]
    fn ball_intersection_examples() {
        let x = w(2, &[0, 1]);
        let y = w(2, &[1, 0]);
        assert_eq!(
            ball_intersection(
                &x,
                &y,
                BallSpec {
                    kind: BallKind::Insertion,
                    radius: 1
                }
            )
            .unwrap(),
            2
        );
        assert_eq!(
            ball_intersection(
                &x,
                &y,
                BallSpec {
                    kind: BallKind::Deletion,
                    radius: 1
                }
            )
            .unwrap(),
            2
        );
        assert_eq!(
            ball_intersection(
                &x,
                &x,
                BallSpec {
                    kind: BallKind::Substitution,
                    radius: 1
                }
            )
            .unwrap(),
            3
        );
    }

    #[test]
    fn swap_shape_scan() {
        assert_eq!(swap_shape(&w(2, &[0, 1]), &w(2, &[1, 0]), 1), Some(2));
        assert_eq!(swap_shape(&w(2, &[0, 1]), &w(2, &[1, 0]), 2), Some(2));
        assert_eq!(swap_shape(&w(2, &[0, 0]), &w(2, &[1, 0]), 2), None);
        assert_eq!(swap_shape(&w(2, &[0, 0]), &w(2, &[1, 1]), 1), None);
        assert_eq!(
            swap_shape(&w(2, &[0, 0, 1, 0, 1, 1]), &w(2, &[0, 1, 0, 1, 0, 1]), 2),
            Some(4)
        );
    }

    #[test]
    fn max_intersection_small() {
        let budget = Budget::default();
        assert_eq!(
            max_ball_intersection(5, 2, 1, 2, Space::Words, &budget).unwrap(),
            2
        );
        assert_eq!(
            max_ball_intersection(5, 2, 2, 2, Space::Words, &budget).unwrap(),
            10
        );
        assert_eq!(
            max_ball_intersection(2, 2, 1, 5, Space::Words, &budget),
            Err(OracleError::MaxOverEmptySet)
        );
        let tiny = Budget {
            enumeration: 10,
            graph_vertices: 10,
        };
        assert!(matches!(
            max_ball_intersection(5, 2, 1, 2, Space::Words, &tiny),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn independence_tiny() {
        let budget = Budget::default();
        // n=1: any two distinct length-1 words are at read distance ℓ = 2,
        // so the graph is complete and α = 1.
        assert_eq!(independence_number(1, 2, 2, &budget).unwrap(), 1);
        assert_eq!(independence_number(1, 3, 2, &budget).unwrap(), 1);
        // Brute-force cross-check over all subsets for n <= 3.
        for n in 1..=3usize {
            let words = all_words(2, n);
            let arrays = rank_arrays(&words, 2);
            let v = words.len();
            let mut best = 0;
            for mask in 0u32..(1 << v) {
                let members: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
                let independent = members.iter().enumerate().all(|(ai, &i)| {
                    members[ai + 1..]
                        .iter()
                        .all(|&j| hamming(&arrays[i], &arrays[j]) != 2)
                });
                if independent {
                    best = best.max(members.len());
                }
            }
            assert_eq!(
                independence_number(n, 2, 2, &budget).unwrap(),
                best as u64,
                "n={n}"
            );
        }
    }

    #[test]
    fn sweep_selftest_fails_with_first_pair() {
        let grid = SweepGrid {
            q: 2,
            n_max: 2,
            ells: vec![2],
        };
        let report = sweep("harness_selftest", &grid, &Budget::default()).unwrap();
        match report.result {
            Outcome::Fail { ref x, ref y, .. } => {
                // Words 0 and 1 of length 1 are at read distance 2: the
                // lexicographically first pair.
                assert_eq!((x.as_str(), y.as_str()), ("0", "1"));
            }
            Outcome::Pass => panic!("selftest must fail"),
        }
    }

    #[test]
    fn sweep_unknown_check() {
        let grid = SweepGrid {
            q: 2,
            n_max: 2,
            ells: vec![2],
        };
        assert!(matches!(
            sweep("no_such_check", &grid, &Budget::default()),
            Err(OracleError::UnknownCheck(_))
        ));
    }

    #[test]
    fn small_sweeps_pass() {
        let budget = Budget::default();
        for q in [2u32, 3] {
            let grid = SweepGrid {
                q,
                n_max: 5,
                ells: vec![2, 3],
            };
            for check in ["char2", "read_min_distance", "ins_eq", "del_eq", "indicator_bound"] {
                let report = sweep(check, &grid, &budget).unwrap();
                assert!(report.passed(), "{}", report.summary());
            }
            let l3 = SweepGrid {
                q,
                n_max: 5,
                ells: vec![3, 4],
            };
            let report = sweep("l3_shape", &l3, &budget).unwrap();
            assert!(report.passed(), "{}", report.summary());
        }
        let bin = SweepGrid {
            q: 2,
            n_max: 6,
            ells: vec![2],
        };
        let report = sweep("indicator_binary", &bin, &budget).unwrap();
        assert!(report.passed(), "{}", report.summary());
        assert!(matches!(
            sweep(
                "indicator_binary",
                &SweepGrid {
                    q: 3,
                    n_max: 3,
                    ells: vec![2]
                },
                &budget
            ),
            Err(OracleError::InvalidGrid(_))
        ));
    }
}
