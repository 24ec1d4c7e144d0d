//! Words, read vectors and per-word functionals.
//!
//! Indexing is 1-based everywhere in this documentation, matching the usual
//! convention for these objects: a word `x` of length `n` has entries
//! `x[1..n]`, and `x[i] = 0` for any `i` outside `[1, n]` (zero padding).
//! Internal storage is ordinary 0-based `Vec`s; the convention never leaks
//! through the public API.

use crate::numutil::{binomial_u64, ceil_guard, log_q, mul_mod, pow_mod};
use num::bigint::BigUint;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Alphabet symbol. Alphabets are `{0, 1, .., q-1}` with `2 <= q <= 2^32-1`;
/// desk-scale instances use tiny q, the width is just headroom.
pub type Symbol = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("alphabet size must be at least 2, got {0}")]
    InvalidAlphabet(Symbol),
    #[error("symbol {symbol} out of range for alphabet of size {q}")]
    InvalidSymbol { symbol: Symbol, q: Symbol },
    #[error("read length must be at least {min}, got {got}")]
    InvalidReadLength { got: usize, min: usize },
    #[error("not the read vector of any word: {0}")]
    NotARealization(String),
    #[error("length or alphabet mismatch: {0}")]
    ShapeMismatch(String),
    #[error("alternating sequence requires two distinct symbols")]
    NotDistinct,
    #[error("operation undefined on the empty word")]
    EmptyWord,
    #[error("rank {rank} out of range, expected < {count}")]
    RankOutOfRange { rank: u64, count: u64 },
    #[error("cannot parse word {text:?} over alphabet of size {q}: {reason}")]
    ParseError {
        text: String,
        q: Symbol,
        reason: String,
    },
}

// ---------------------------------------------------------------------------
// Word
// ---------------------------------------------------------------------------

/// A q-ary word: an ordered sequence of symbols from `{0, .., q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    q: Symbol,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(q: Symbol, symbols: Vec<Symbol>) -> Result<Self, SeqError> {
        if q < 2 {
            return Err(SeqError::InvalidAlphabet(q));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(SeqError::InvalidSymbol { symbol: s, q });
        }
        Ok(Word { q, symbols })
    }

    pub fn empty(q: Symbol) -> Self {
        Word::new(q, Vec::new()).expect("q >= 2")
    }

    pub fn q(&self) -> Symbol {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// 1-based entry access with zero padding: `x[i] = 0` for `i` outside
    /// `[1, n]`. `i` is signed so callers can ask for `x[0]`, `x[-1]`, ...
    pub fn get(&self, i: i64) -> Symbol {
        if i < 1 || i > self.symbols.len() as i64 {
            0
        } else {
            self.symbols[(i - 1) as usize]
        }
    }

    /// Concatenation (same alphabet).
    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.q, other.q);
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word {
            q: self.q,
            symbols,
        }
    }

    /// Parse the word text format: for `q <= 10` a digit string like
    /// `"0101"`, otherwise comma-separated integers like `"10,0,3"`.
    /// The empty string is the empty word in both formats.
    pub fn parse(q: Symbol, text: &str) -> Result<Self, SeqError> {
        if q < 2 {
            return Err(SeqError::InvalidAlphabet(q));
        }
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty(q));
        }
        let symbols: Vec<Symbol> = if q <= 10 {
            text.chars()
                .map(|c| {
                    c.to_digit(10).ok_or_else(|| SeqError::ParseError {
                        text: text.to_string(),
                        q,
                        reason: format!("non-digit character {c:?}"),
                    })
                })
                .collect::<Result<_, _>>()?
        } else {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<Symbol>()
                        .map_err(|e| SeqError::ParseError {
                            text: text.to_string(),
                            q,
                            reason: e.to_string(),
                        })
                })
                .collect::<Result<_, _>>()?
        };
        Word::new(q, symbols)
    }
}

impl fmt::Display for Word {
    /// The word text format (the CLI wire contract): digit string for
    /// `q <= 10`, comma-separated integers otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

// ---------------------------------------------------------------------------
// Multiset and ReadVector
// ---------------------------------------------------------------------------

/// A multiset of ℓ symbols in canonical (non-decreasing) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    q: Symbol,
    elems: Vec<Symbol>,
}

impl Multiset {
    pub fn new(q: Symbol, mut elems: Vec<Symbol>) -> Result<Self, SeqError> {
        if q < 2 {
            return Err(SeqError::InvalidAlphabet(q));
        }
        if let Some(&s) = elems.iter().find(|&&s| s >= q) {
            return Err(SeqError::InvalidSymbol { symbol: s, q });
        }
        elems.sort_unstable();
        Ok(Multiset { q, elems })
    }

    pub fn q(&self) -> Symbol {
        self.q
    }

    /// Elements in non-decreasing order.
    pub fn elems(&self) -> &[Symbol] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

impl fmt::Display for Multiset {
    /// Multiset text format: sorted elements in braces, e.g. `{0,1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The ℓ-read vector of a word of length n: n+ℓ−1 sliding-window multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadVector {
    q: Symbol,
    ell: usize,
    entries: Vec<Multiset>,
}

impl ReadVector {
    /// Build a read vector from raw entries. Validates alphabet agreement,
    /// entry sizes (each must hold exactly ℓ elements) and the minimum
    /// length ℓ−1 (the all-padding vector of the empty word). Consistency
    /// as the image of an actual word is *not* checked here; that is what
    /// [`read_to_word`] decides.
    pub fn new(q: Symbol, ell: usize, entries: Vec<Multiset>) -> Result<Self, SeqError> {
        if q < 2 {
            return Err(SeqError::InvalidAlphabet(q));
        }
        if ell < 2 {
            return Err(SeqError::InvalidReadLength { got: ell, min: 2 });
        }
        if entries.len() + 1 < ell {
            return Err(SeqError::ShapeMismatch(format!(
                "{} entries is below the minimum {} for read length {}",
                entries.len(),
                ell - 1,
                ell
            )));
        }
        for (idx, m) in entries.iter().enumerate() {
            if m.q() != q {
                return Err(SeqError::ShapeMismatch(format!(
                    "entry {} has alphabet {}, expected {}",
                    idx + 1,
                    m.q(),
                    q
                )));
            }
            if m.len() != ell {
                return Err(SeqError::ShapeMismatch(format!(
                    "entry {} has {} elements, expected {}",
                    idx + 1,
                    m.len(),
                    ell
                )));
            }
        }
        Ok(ReadVector { q, ell, entries })
    }

    pub fn q(&self) -> Symbol {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn entries(&self) -> &[Multiset] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Length of the source word (`entries.len() - (ell-1)`).
    pub fn source_len(&self) -> usize {
        self.entries.len() + 1 - self.ell
    }
}

impl fmt::Display for ReadVector {
    /// Read vector text format: array of multisets, e.g. `[{0,0},{0,1}]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

// ---------------------------------------------------------------------------
// Syndromes
// ---------------------------------------------------------------------------

/// One residue of one VT syndrome: VT^(k)(x) ≡ r (mod m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyndromeResidue {
    pub order: u32,
    pub modulus: u64,
    pub residue: u64,
}

/// A vector of VT syndrome residues for one word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyndromeVector {
    pub values: Vec<SyndromeResidue>,
}

impl SyndromeVector {
    /// Evaluate VT^(k)(x) mod m for every (k, m) pair given.
    pub fn of(x: &Word, orders_moduli: &[(u32, u64)]) -> Self {
        let values = orders_moduli
            .iter()
            .map(|&(order, modulus)| SyndromeResidue {
                order,
                modulus,
                residue: vt_syndrome_mod(x, order, modulus),
            })
            .collect();
        SyndromeVector { values }
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// The ℓ-read vector of `x`: entry `i` (1-based, `i ∈ [1, n+ℓ-1]`) is the
/// multiset of `x[i-ℓ+1..i]` under the zero-padding convention.
pub fn read_vector(x: &Word, ell: usize) -> Result<ReadVector, SeqError> {
    if ell < 2 {
        return Err(SeqError::InvalidReadLength { got: ell, min: 2 });
    }
    let n = x.len() as i64;
    let entries = (1..=n + ell as i64 - 1)
        .map(|i| {
            let elems: Vec<Symbol> = (i - ell as i64 + 1..=i).map(|j| x.get(j)).collect();
            Multiset::new(x.q(), elems).expect("symbols already validated")
        })
        .collect();
    Ok(ReadVector {
        q: x.q(),
        ell,
        entries,
    })
}

/// Invert [`read_vector`]: recover the unique word realizing `rv`.
///
/// Recovery runs left to right: entry `i` must contain the already-known
/// multiset `{x[i-ℓ+1..i-1]}` plus one new element, which is `x[i]`. Any
/// inconsistency (including in the ℓ−1 trailing entries, which contain no
/// new symbols) is a [`SeqError::NotARealization`].
pub fn read_to_word(rv: &ReadVector) -> Result<Word, SeqError> {
    let ell = rv.ell;
    if ell < 2 {
        return Err(SeqError::InvalidReadLength { got: ell, min: 2 });
    }
    if rv.entries.len() + 1 < ell {
        return Err(SeqError::NotARealization(format!(
            "length {} is below the minimum {} for read length {}",
            rv.entries.len(),
            ell - 1,
            ell
        )));
    }
    for (idx, m) in rv.entries.iter().enumerate() {
        if m.len() != ell {
            return Err(SeqError::NotARealization(format!(
                "entry {} has {} elements, expected {}",
                idx + 1,
                m.len(),
                ell
            )));
        }
    }
    let n = rv.entries.len() + 1 - ell;
    let mut x = Word::empty(rv.q);
    for i in 1..=rv.entries.len() as i64 {
        // Known window content x[i-ℓ+1 .. i-1] (padded).
        let mut known: Vec<Symbol> = (i - ell as i64 + 1..i)
            .map(|j| if j > n as i64 { 0 } else { x.get(j) })
            .collect();
        known.sort_unstable();
        let entry = &rv.entries[(i - 1) as usize];
        // Remove the known multiset from the entry; exactly one element
        // remains and it is x[i] (or the padding 0 past the end).
        let mut remaining: Vec<Symbol> = entry.elems().to_vec();
        for k in known {
            match remaining.iter().position(|&e| e == k) {
                Some(pos) => {
                    remaining.remove(pos);
                }
                None => {
                    return Err(SeqError::NotARealization(format!(
                        "entry {i} is inconsistent with the recovered prefix"
                    )));
                }
            }
        }
        debug_assert_eq!(remaining.len(), 1);
        let new = remaining[0];
        if i <= n as i64 {
            x.symbols.push(new);
        } else if new != 0 {
            return Err(SeqError::NotARealization(format!(
                "entry {i} implies a nonzero symbol past the end of the word"
            )));
        }
    }
    Ok(x)
}

/// Hamming distance between the ℓ-read vectors of `x` and `y`.
pub fn read_distance(x: &Word, y: &Word, ell: usize) -> Result<usize, SeqError> {
    check_same_shape(x, y)?;
    let rx = read_vector(x, ell)?;
    let ry = read_vector(y, ell)?;
    Ok(rx
        .entries
        .iter()
        .zip(ry.entries.iter())
        .filter(|(a, b)| a != b)
        .count())
}

pub(crate) fn check_same_shape(x: &Word, y: &Word) -> Result<(), SeqError> {
    if x.q() != y.q() {
        return Err(SeqError::ShapeMismatch(format!(
            "alphabets differ: {} vs {}",
            x.q(),
            y.q()
        )));
    }
    if x.len() != y.len() {
        return Err(SeqError::ShapeMismatch(format!(
            "lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// k-th order VT syndrome: `Σ_{i=1..n} i^k · x[i]`, exact (with `0^0 = 1`).
pub fn vt_syndrome(x: &Word, k: u32) -> BigUint {
    let mut acc = BigUint::default();
    for (idx, &s) in x.symbols().iter().enumerate() {
        let i = BigUint::from(idx as u64 + 1);
        acc += i.pow(k) * BigUint::from(s);
    }
    acc
}

/// `vt_syndrome(x, k) mod m`, computed without big integers. Agrees with
/// the exact syndrome for every input (property-tested); used in the hot
/// membership loops.
pub fn vt_syndrome_mod(x: &Word, k: u32, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 0u64;
    for (idx, &s) in x.symbols().iter().enumerate() {
        let i = idx as u64 + 1;
        acc = (acc + mul_mod(pow_mod(i, k as u64, m), s as u64 % m, m)) % m;
    }
    acc
}

/// Inversion number: `|{(i,j) : 1 <= i < j <= n, x[i] > x[j]}|`.
pub fn inversion_number(x: &Word) -> u64 {
    let s = x.symbols();
    let mut count = 0u64;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                count += 1;
            }
        }
    }
    count
}

/// Indicator sequence: `𝟙(x)[i] = x[i] + x[i-1] (mod q)` with `x[0] = 0`.
pub fn indicator(x: &Word) -> Word {
    let q = x.q();
    let symbols = (1..=x.len() as i64)
        .map(|i| (x.get(i) + x.get(i - 1)) % q)
        .collect();
    Word { q, symbols }
}

/// Inverse of [`indicator`]: `x[i] = z[i] - x[i-1] (mod q)`.
pub fn indicator_inverse(z: &Word) -> Word {
    let q = z.q();
    let mut symbols: Vec<Symbol> = Vec::with_capacity(z.len());
    let mut prev = 0u32;
    for i in 1..=z.len() as i64 {
        let v = (z.get(i) + q - prev) % q;
        symbols.push(v);
        prev = v;
    }
    Word { q, symbols }
}

/// Symbols at odd positions (1-based), order preserved; length ⌈n/2⌉.
pub fn odd_subword(x: &Word) -> Word {
    Word {
        q: x.q(),
        symbols: x.symbols().iter().copied().step_by(2).collect(),
    }
}

/// Symbols at even positions (1-based), order preserved; length ⌊n/2⌋.
pub fn even_subword(x: &Word) -> Word {
    Word {
        q: x.q(),
        symbols: x.symbols().iter().copied().skip(1).step_by(2).collect(),
    }
}

/// The alternating word α_n(ab) = (a,b,a,b,...) of length n, `a != b`.
pub fn alternating(n: usize, a: Symbol, b: Symbol, q: Symbol) -> Result<Word, SeqError> {
    if a == b {
        return Err(SeqError::NotDistinct);
    }
    let symbols = (0..n).map(|i| if i % 2 == 0 { a } else { b }).collect();
    Word::new(q, symbols)
}

/// Length of the longest alternating substring of `x` (two distinct symbols
/// in strict alternation; a single symbol counts as a run of length 1).
pub fn max_alternating_run(x: &Word) -> Result<usize, SeqError> {
    let s = x.symbols();
    if s.is_empty() {
        return Err(SeqError::EmptyWord);
    }
    let mut best = 1usize;
    let mut cur = 1usize; // longest alternating substring ending here
    for i in 1..s.len() {
        if s[i] != s[i - 1] {
            cur = if i >= 2 && s[i] == s[i - 2] && cur >= 2 {
                cur + 1
            } else {
                2
            };
        } else {
            cur = 1;
        }
        best = best.max(cur);
    }
    Ok(best)
}

/// Is every alternating substring of `x` of length at most `p`?
/// (`x ∈ ALL(n, p)`.) The empty word qualifies vacuously.
pub fn in_all(x: &Word, p: usize) -> bool {
    if x.is_empty() {
        return true;
    }
    max_alternating_run(x).expect("nonempty") <= p
}

/// Goodness for read length ℓ ≥ 3: `x` is good (for threshold `t_cap`)
/// when no index i starts a stride-ℓ run of `t_cap + 1` identical ordered
/// pairs `(a, b)` with `a != b`; that is, the concatenation
/// `((x[i],x[i+1]), (x[i+ℓ],x[i+ℓ+1]), ..., (x[i+tℓ],x[i+tℓ+1]))` is not an
/// alternating sequence for any `t >= t_cap`. A run of more than
/// `t_cap + 1` pairs contains one of exactly `t_cap + 1`, so only `t = t_cap`
/// needs checking.
pub fn is_good(x: &Word, ell: usize, t_cap: usize) -> Result<bool, SeqError> {
    if ell < 3 {
        return Err(SeqError::InvalidReadLength { got: ell, min: 3 });
    }
    let s = x.symbols();
    let n = s.len();
    let t = t_cap;
    // Need positions i, i+1, .., i+tℓ+1 all within [1, n].
    if t.checked_mul(ell).and_then(|v| v.checked_add(2)) > Some(n) {
        return Ok(true);
    }
    'outer: for i in 0..n - t * ell - 1 {
        let a = s[i];
        let b = s[i + 1];
        if a == b {
            continue;
        }
        for j in 1..=t {
            if s[i + j * ell] != a || s[i + j * ell + 1] != b {
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Default goodness threshold: `⌈(log_q n + log_q log_q n)/2 - 1⌉`,
/// clamped from below to 1 (at tiny n the real-valued formula dips under 1;
/// the clamp keeps the predicate meaningful and is echoed by callers).
pub fn good_threshold(n: usize, q: Symbol) -> usize {
    if n < 2 {
        return 1;
    }
    let lg = log_q(q, n as f64);
    let z = (lg + log_q(q, lg)) / 2.0;
    ceil_guard(z - 1.0).max(1) as usize
}

/// Number of ℓ-element multisets over an alphabet of size q: C(q+ℓ-1, ℓ).
pub fn multiset_count(q: Symbol, ell: usize) -> u64 {
    binomial_u64(q as u64 + ell as u64 - 1, ell as u64)
}

/// Lexicographic rank of a multiset among all canonical (non-decreasing)
/// ℓ-tuples over its alphabet. The rank order is fixed so that ranked
/// outputs are reproducible across runs and platforms.
pub fn multiset_rank(m: &Multiset) -> u64 {
    let q = m.q() as u64;
    let ell = m.len();
    let mut rank = 0u64;
    let mut prev = 0u64;
    for (j, &e) in m.elems().iter().enumerate() {
        let remaining = (ell - 1 - j) as u64;
        for v in prev..e as u64 {
            // Completions: non-decreasing tuples of `remaining` elements
            // with values in [v, q-1].
            rank += binomial_u64(q - v - 1 + remaining, remaining);
        }
        prev = e as u64;
    }
    rank
}

/// Inverse of [`multiset_rank`].
pub fn multiset_unrank(rank: u64, q: Symbol, ell: usize) -> Result<Multiset, SeqError> {
    let count = multiset_count(q, ell);
    if rank >= count {
        return Err(SeqError::RankOutOfRange { rank, count });
    }
    let mut elems = Vec::with_capacity(ell);
    let mut r = rank;
    let mut lo = 0u64;
    for j in 0..ell {
        let remaining = (ell - 1 - j) as u64;
        let mut v = lo;
        loop {
            let block = binomial_u64(q as u64 - v - 1 + remaining, remaining);
            if r < block {
                break;
            }
            r -= block;
            v += 1;
        }
        elems.push(v as Symbol);
        lo = v;
    }
    Multiset::new(q, elems)
}

/// Map a read vector to a word over the alphabet of multiset ranks
/// (size `C(q+ℓ-1, ℓ)`), entrywise. Hamming distance is preserved.
pub fn phi_map(rv: &ReadVector) -> Word {
    let big_q = multiset_count(rv.q(), rv.ell()) as Symbol;
    let symbols = rv
        .entries()
        .iter()
        .map(|m| multiset_rank(m) as Symbol)
        .collect();
    Word::new(big_q.max(2), symbols).expect("ranks are within the rank alphabet")
}

/// Rank array of the ℓ-read vector of `x`: the symbols of
/// `phi_map(read_vector(x, ℓ))` as bytes. Requires `C(q+ℓ-1, ℓ) <= 256`;
/// this is the compact form the exhaustive sweeps compare.
pub fn read_rank_bytes(x: &Word, ell: usize) -> Result<Vec<u8>, SeqError> {
    let rv = read_vector(x, ell)?;
    assert!(
        multiset_count(x.q(), ell) <= 256,
        "rank alphabet exceeds one byte; use phi_map for wide alphabets"
    );
    Ok(rv
        .entries()
        .iter()
        .map(|m| multiset_rank(m) as u8)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(q: Symbol, symbols: &[Symbol]) -> Word {
        Word::new(q, symbols.to_vec()).unwrap()
    }

    fn ms(q: Symbol, elems: &[Symbol]) -> Multiset {
        Multiset::new(q, elems.to_vec()).unwrap()
    }

    /// Independent windowing routine used as an oracle for read_vector:
    /// materialize the padded word then take plain slices.
    fn windowed_oracle(x: &Word, ell: usize) -> Vec<Vec<Symbol>> {
        let n = x.len();
        let mut padded = vec![0u32; ell - 1];
        padded.extend_from_slice(x.symbols());
        padded.extend(vec![0u32; ell - 1]);
        (0..n + ell - 1)
            .map(|i| {
                let mut win: Vec<Symbol> = padded[i..i + ell].to_vec();
                win.sort_unstable();
                win
            })
            .collect()
    }

    fn all_words(q: Symbol, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            out.push(Word::new(q, cur.clone()).unwrap());
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

    #[test]
    fn read_vector_examples() {
        let rv = read_vector(&w(2, &[0, 1, 0]), 2).unwrap();
        assert_eq!(
            rv.entries(),
            &[ms(2, &[0, 0]), ms(2, &[0, 1]), ms(2, &[0, 1]), ms(2, &[0, 0])]
        );
        assert_eq!(rv.to_string(), "[{0,0},{0,1},{0,1},{0,0}]");

        let rv = read_vector(&w(2, &[1, 0]), 3).unwrap();
        assert_eq!(
            rv.entries(),
            &[
                ms(2, &[0, 0, 1]),
                ms(2, &[0, 0, 1]),
                ms(2, &[0, 0, 1]),
                ms(2, &[0, 0, 0])
            ]
        );

        // Derived example, plus the independent windowing oracle.
        let x = w(2, &[0, 0, 1, 1]);
        let rv = read_vector(&x, 2).unwrap();
        assert_eq!(
            rv.entries(),
            &[
                ms(2, &[0, 0]),
                ms(2, &[0, 0]),
                ms(2, &[0, 1]),
                ms(2, &[1, 1]),
                ms(2, &[0, 1])
            ]
        );
        let oracle = windowed_oracle(&x, 2);
        for (e, o) in rv.entries().iter().zip(oracle.iter()) {
            assert_eq!(e.elems(), &o[..]);
        }

        assert_eq!(
            read_vector(&w(2, &[0]), 1),
            Err(SeqError::InvalidReadLength { got: 1, min: 2 })
        );
    }

    #[test]
    fn read_vector_matches_windowing_oracle_exhaustively() {
        for q in [2u32, 3] {
            for n in 0..=6 {
                for x in all_words(q, n) {
                    for ell in 2..=4 {
                        let rv = read_vector(&x, ell).unwrap();
                        let oracle = windowed_oracle(&x, ell);
                        assert_eq!(rv.len(), n + ell - 1);
                        for (e, o) in rv.entries().iter().zip(oracle.iter()) {
                            assert_eq!(e.elems(), &o[..]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn padding_law() {
        // Entry 1 holds ℓ-1 zeros plus x[1]; the last entry ℓ-1 zeros plus x[n].
        for ell in 2..=4 {
            let x = w(3, &[2, 1, 2]);
            let rv = read_vector(&x, ell).unwrap();
            let mut first = vec![0u32; ell - 1];
            first.push(2);
            first.sort_unstable();
            assert_eq!(rv.entries()[0].elems(), &first[..]);
            let mut last = vec![0u32; ell - 1];
            last.push(2);
            last.sort_unstable();
            assert_eq!(rv.entries()[rv.len() - 1].elems(), &last[..]);
        }
    }

    #[test]
    fn read_to_word_examples() {
        let rv = ReadVector::new(
            2,
            2,
            vec![ms(2, &[0, 0]), ms(2, &[0, 1]), ms(2, &[1, 1]), ms(2, &[0, 1])],
        )
        .unwrap();
        assert_eq!(read_to_word(&rv).unwrap(), w(2, &[0, 1, 1]));

        // First entry forces x[1]=1, second forces x[1]=0.
        let bad = ReadVector::new(
            2,
            2,
            vec![ms(2, &[0, 1]), ms(2, &[0, 0]), ms(2, &[0, 0])],
        )
        .unwrap();
        assert!(matches!(
            read_to_word(&bad),
            Err(SeqError::NotARealization(_))
        ));

        // The constructor rejects malformed shapes outright.
        assert!(matches!(
            ReadVector::new(2, 3, vec![ms(2, &[0, 1])]),
            Err(SeqError::ShapeMismatch(_))
        ));
        assert!(matches!(
            ReadVector::new(2, 2, vec![ms(2, &[0, 1, 1]), ms(2, &[0, 0, 0])]),
            Err(SeqError::ShapeMismatch(_))
        ));
        assert!(matches!(
            ReadVector::new(2, 1, vec![ms(2, &[0])]),
            Err(SeqError::InvalidReadLength { .. })
        ));
    }

    #[test]
    fn read_round_trip_exhaustive_small() {
        for q in [2u32, 3] {
            let max_n = if q == 2 { 10 } else { 6 };
            for n in 0..=max_n {
                for x in all_words(q, n) {
                    for ell in [2usize, 3, 4] {
                        let rv = read_vector(&x, ell).unwrap();
                        assert_eq!(read_to_word(&rv).unwrap(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn read_distance_examples() {
        assert_eq!(read_distance(&w(2, &[0, 1]), &w(2, &[1, 0]), 2).unwrap(), 2);
        let x = w(2, &[0, 1, 1]);
        assert_eq!(read_distance(&x, &x, 2).unwrap(), 0);
        assert_eq!(read_distance(&w(2, &[0, 0]), &w(2, &[1, 1]), 2).unwrap(), 3);
        assert!(matches!(
            read_distance(&w(2, &[0]), &w(2, &[0, 1]), 2),
            Err(SeqError::ShapeMismatch(_))
        ));
        assert!(matches!(
            read_distance(&w(2, &[0]), &w(3, &[0]), 2),
            Err(SeqError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn vt_syndrome_examples() {
        use num::ToPrimitive;
        assert_eq!(vt_syndrome(&w(2, &[1, 0, 1]), 0).to_u64(), Some(2));
        assert_eq!(vt_syndrome(&w(2, &[0, 1, 0, 1]), 1).to_u64(), Some(6));
        assert_eq!(vt_syndrome(&w(2, &[1, 0, 1]), 2).to_u64(), Some(10));
        // 0^0 = 1: order 0 counts every position equally.
        assert_eq!(vt_syndrome(&w(3, &[2, 2]), 0).to_u64(), Some(4));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversion_number(&w(2, &[1, 0])), 1);
        assert_eq!(inversion_number(&w(3, &[2, 0, 1])), 2);
        assert_eq!(inversion_number(&w(3, &[0, 0, 1, 2, 2])), 0);
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(indicator(&w(3, &[1, 2, 2])), w(3, &[1, 0, 1]));
        assert_eq!(indicator(&w(2, &[0, 1, 1])), w(2, &[0, 1, 0]));
        assert_eq!(indicator_inverse(&w(3, &[1, 0, 1])), w(3, &[1, 2, 2]));
        assert_eq!(indicator_inverse(&w(2, &[1, 1, 1])), w(2, &[1, 0, 1]));
        assert_eq!(indicator_inverse(&Word::empty(2)), Word::empty(2));
    }

    #[test]
    fn odd_even_examples() {
        let x = w(5, &[1, 2, 3, 4]);
        assert_eq!(odd_subword(&x), w(5, &[1, 3]));
        assert_eq!(even_subword(&x), w(5, &[2, 4]));
        let single = w(5, &[3]);
        assert_eq!(odd_subword(&single), w(5, &[3]));
        assert_eq!(even_subword(&single), Word::empty(5));
        for n in 0..=7 {
            let x = w(2, &vec![1; n]);
            assert_eq!(odd_subword(&x).len() + even_subword(&x).len(), n);
        }
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating(5, 0, 1, 2).unwrap(), w(2, &[0, 1, 0, 1, 0]));
        assert_eq!(alternating(0, 0, 1, 2).unwrap(), Word::empty(2));
        assert_eq!(alternating(1, 2, 0, 3).unwrap(), w(3, &[2]));
        assert_eq!(alternating(3, 1, 1, 2), Err(SeqError::NotDistinct));
    }

    #[test]
    fn alternating_run_examples() {
        assert_eq!(max_alternating_run(&w(2, &[0, 1, 0, 0])).unwrap(), 3);
        assert_eq!(max_alternating_run(&w(3, &[2, 2, 2])).unwrap(), 1);
        assert_eq!(max_alternating_run(&w(2, &[0, 1, 0, 1])).unwrap(), 4);
        assert_eq!(max_alternating_run(&Word::empty(2)), Err(SeqError::EmptyWord));
        for n in 1..=8 {
            let a = alternating(n, 0, 2, 3).unwrap();
            assert_eq!(max_alternating_run(&a).unwrap(), n);
        }
    }

    #[test]
    fn in_all_examples() {
        assert!(!in_all(&w(2, &[0, 1, 0, 1]), 3));
        assert!(in_all(&w(2, &[0, 0, 0, 0]), 1));
        assert!(in_all(&w(2, &[0, 1, 1, 0]), 4));
        assert!(in_all(&Word::empty(2), 1));
    }

    #[test]
    fn goodness_examples() {
        // Pairs (0,1) at i=1 and i=4 form an alternating concatenation.
        assert!(!is_good(&w(2, &[0, 1, 0, 0, 1]), 3, 1).unwrap());
        // Constant pairs can never alternate (a != b required).
        for t in 1..=3 {
            assert!(is_good(&w(2, &[0, 0, 0, 0, 0]), 3, t).unwrap());
        }
        // No window fits: vacuously good.
        assert!(is_good(&w(2, &[0, 1]), 3, 4).unwrap());
        assert!(matches!(
            is_good(&w(2, &[0, 1]), 2, 1),
            Err(SeqError::InvalidReadLength { .. })
        ));
    }

    #[test]
    fn good_threshold_defaults() {
        // q=2, n=12: (log2 12 + log2 log2 12)/2 - 1 ≈ 1.713 → 2.
        assert_eq!(good_threshold(12, 2), 2);
        // Tiny n clamps to 1.
        assert_eq!(good_threshold(2, 2), 1);
        assert_eq!(good_threshold(1, 2), 1);
    }

    #[test]
    fn multiset_rank_examples() {
        assert_eq!(multiset_rank(&ms(2, &[0, 0])), 0);
        assert_eq!(multiset_rank(&ms(2, &[0, 1])), 1);
        assert_eq!(multiset_rank(&ms(2, &[1, 1])), 2);
        assert_eq!(multiset_count(3, 2), 6);
        assert_eq!(multiset_count(2, 3), 4);
        assert!(matches!(
            multiset_unrank(6, 3, 2),
            Err(SeqError::RankOutOfRange { .. })
        ));
        // Ranks enumerate lexicographically.
        for q in [2u32, 3, 4] {
            for ell in 1..=3 {
                let count = multiset_count(q, ell);
                let mut seen = Vec::new();
                for r in 0..count {
                    let m = multiset_unrank(r, q, ell).unwrap();
                    assert_eq!(multiset_rank(&m), r);
                    seen.push(m.elems().to_vec());
                }
                let mut sorted = seen.clone();
                sorted.sort();
                assert_eq!(seen, sorted);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let rv = read_vector(&w(2, &[0, 1]), 2).unwrap();
        let phi = phi_map(&rv);
        assert_eq!(phi.symbols(), &[0, 1, 1]);
        assert_eq!(phi.q(), 3);
        let empty = ReadVector {
            q: 2,
            ell: 2,
            entries: vec![],
        };
        assert!(phi_map(&empty).is_empty());
        // Hamming distance is preserved entrywise.
        for x in all_words(2, 4) {
            for y in all_words(2, 4) {
                let rx = read_vector(&x, 2).unwrap();
                let ry = read_vector(&y, 2).unwrap();
                let d_raw = rx
                    .entries()
                    .iter()
                    .zip(ry.entries())
                    .filter(|(a, b)| a != b)
                    .count();
                let (px, py) = (phi_map(&rx), phi_map(&ry));
                let d_phi = px
                    .symbols()
                    .iter()
                    .zip(py.symbols())
                    .filter(|(a, b)| a != b)
                    .count();
                assert_eq!(d_raw, d_phi);
            }
        }
    }

    #[test]
    fn word_text_format() {
        assert_eq!(w(2, &[0, 1, 0]).to_string(), "010");
        assert_eq!(Word::parse(2, "010").unwrap(), w(2, &[0, 1, 0]));
        assert_eq!(Word::parse(2, "").unwrap(), Word::empty(2));
        let big = Word::new(12, vec![10, 0, 3]).unwrap();
        assert_eq!(big.to_string(), "10,0,3");
        assert_eq!(Word::parse(12, "10,0,3").unwrap(), big);
        assert!(Word::parse(2, "012").is_err());
        assert!(Word::parse(2, "ab").is_err());
    }

    #[test]
    fn syndrome_vector() {
        let x = w(2, &[1, 0, 1]);
        let sv = SyndromeVector::of(&x, &[(0, 3), (1, 5), (2, 7)]);
        assert_eq!(sv.values[0].residue, 2);
        assert_eq!(sv.values[1].residue, 4);
        assert_eq!(sv.values[2].residue, 10 % 7);
    }

    proptest! {
        #[test]
        fn prop_read_round_trip(q in 2u32..=4, ell in 2usize..=4,
                                symbols in proptest::collection::vec(0u32..4, 0..24)) {
            let symbols: Vec<u32> = symbols.into_iter().map(|s| s % q).collect();
            let x = Word::new(q, symbols).unwrap();
            let rv = read_vector(&x, ell).unwrap();
            prop_assert_eq!(read_to_word(&rv).unwrap(), x);
        }

        #[test]
        fn prop_indicator_round_trip(q in 2u32..=5,
                                     symbols in proptest::collection::vec(0u32..5, 0..32)) {
            let symbols: Vec<u32> = symbols.into_iter().map(|s| s % q).collect();
            let x = Word::new(q, symbols).unwrap();
            prop_assert_eq!(indicator_inverse(&indicator(&x)), x);
        }

        #[test]
        fn prop_vt_mod_agrees_with_exact(k in 0u32..=3, m in 1u64..1000,
                                         symbols in proptest::collection::vec(0u32..7, 0..40)) {
            let x = Word::new(7, symbols).unwrap();
            let exact = vt_syndrome(&x, k);
            // Crude ceiling n^k * (q-1) * n; exact arithmetic never wraps.
            let n = x.len() as u64;
            let cap = BigUint::from(n).pow(k) * BigUint::from(6u64) * BigUint::from(n);
            prop_assert!(exact <= cap);
            use num::ToPrimitive;
            let reduced = exact % num::bigint::BigUint::from(m);
            prop_assert_eq!(reduced.to_u64().unwrap(), vt_syndrome_mod(&x, k, m));
        }

        #[test]
        fn prop_multiset_rank_round_trip(q in 2u32..=5, ell in 1usize..=4, seed in 0u64..10_000) {
            let count = multiset_count(q, ell);
            let r = seed % count;
            let m = multiset_unrank(r, q, ell).unwrap();
            prop_assert_eq!(multiset_rank(&m), r);
        }
    }
}
