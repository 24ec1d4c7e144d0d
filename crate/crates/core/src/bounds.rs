//! Bound machinery: the clique-cover construction that lower-bounds the
//! redundancy of 2-read distance-3 codes, the Hamming bound used for
//! distance 5, the exact substitution-ball intersection-size formula, and
//! the reconstruction upper bound for read vectors.

use crate::budget::Budget;
use crate::numutil::{binomial, floor_guard, log_q};
use crate::seqcore::{self, Symbol, Word};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("index {i} out of range [0, {max}]")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("prescribed t is not positive at n={n}, q={q}: {detail}")]
    PrescribedTNonpositive { n: usize, q: Symbol, detail: String },
    #[error("budget exceeded: requires {required}, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error(transparent)]
    Seq(#[from] seqcore::SeqError),
}

/// The block word g_{i,t}: the first `i` symbols of α_{2t}(01) followed by
/// symbols i+1..2t of α_{2t}(10). Always over the symbols {0, 1}, embedded
/// into the alphabet of size q.
pub fn g_sequence(i: usize, t: usize, q: Symbol) -> Result<Word, BoundsError> {
    if t < 1 || i > 2 * t {
        return Err(BoundsError::IndexOutOfRange { i, max: 2 * t });
    }
    let symbols = (1..=2 * t)
        .map(|k| {
            if k <= i {
                // α_{2t}(01): 0 at odd positions, 1 at even.
                if k % 2 == 1 {
                    0
                } else {
                    1
                }
            } else {
                // α_{2t}(10): 1 at odd positions, 0 at even.
                if k % 2 == 1 {
                    1
                } else {
                    0
                }
            }
        })
        .collect();
    Word::new(q, symbols).map_err(Into::into)
}

/// A materialized clique cover of the confusability graph on Σ_q^n with
/// edges at 2-read distance exactly two.
#[derive(Debug, Clone)]
pub struct CliqueCover {
    pub n: usize,
    pub q: Symbol,
    pub t: usize,
    /// Number of 2t-blocks: n = 2mt + n_rem with n_rem < 2t.
    pub m: usize,
    pub n_rem: usize,
    pub cliques: Vec<Vec<Word>>,
}

impl CliqueCover {
    /// Check both invariants directly: every word of Σ_q^n lies in some
    /// clique, and every pair within a non-singleton clique is at 2-read
    /// distance exactly two.
    pub fn validate(&self) -> Result<(), String> {
        let mut covered = vec![false; pow_usize(self.q as usize, self.n)];
        for clique in &self.cliques {
            for word in clique {
                covered[word_index(word)] = true;
            }
            for (a, x) in clique.iter().enumerate() {
                for y in &clique[a + 1..] {
                    let d = seqcore::read_distance(x, y, 2).map_err(|e| e.to_string())?;
                    if d != 2 {
                        return Err(format!(
                            "clique pair ({x}, {y}) at read distance {d}, expected 2"
                        ));
                    }
                }
            }
        }
        if let Some(missing) = covered.iter().position(|&c| !c) {
            return Err(format!("word index {missing} is not covered"));
        }
        Ok(())
    }
}

fn pow_usize(base: usize, exp: usize) -> usize {
    base.pow(exp as u32)
}

fn word_index(w: &Word) -> usize {
    w.symbols()
        .iter()
        .fold(0usize, |acc, &s| acc * w.q() as usize + s as usize)
}

/// Build the clique cover: singletons on blocks that avoid every g_{i,t},
/// plus (2t+1)-cliques that vary a g-block in place.
pub fn build_clique_cover(
    n: usize,
    q: Symbol,
    t: usize,
    budget: &Budget,
) -> Result<CliqueCover, BoundsError> {
    if t < 1 {
        return Err(BoundsError::PreconditionViolated("t must be >= 1".into()));
    }
    budget
        .check_enumeration(q, n)
        .map_err(|required| BoundsError::BudgetExceeded {
            required,
            budget: budget.enumeration,
        })?;
    let m = n / (2 * t);
    let n_rem = n - 2 * t * m;
    let lambda: Vec<Word> = (0..=2 * t)
        .map(|i| g_sequence(i, t, q))
        .collect::<Result<_, _>>()?;
    let lambda_tilde: Vec<Word> = crate::oracle::all_words(q, 2 * t)
        .into_iter()
        .filter(|w| !lambda.contains(w))
        .collect();

    let mut cliques: Vec<Vec<Word>> = Vec::new();
    // First type: singletons over Λ̃^m × Σ_q^{n_rem}.
    for blocks in tuples(&lambda_tilde, m) {
        for tail in crate::oracle::all_words(q, n_rem) {
            let mut word = Word::empty(q);
            for b in &blocks {
                word = word.concat(b);
            }
            cliques.push(vec![word.concat(&tail)]);
        }
    }
    // Second type: prefix in Λ̃^{k-1}, a g-block, then anything.
    for k in 1..=m {
        for prefix_blocks in tuples(&lambda_tilde, k - 1) {
            let mut prefix = Word::empty(q);
            for b in &prefix_blocks {
                prefix = prefix.concat(b);
            }
            for tail in crate::oracle::all_words(q, n - 2 * t * k) {
                let clique = lambda
                    .iter()
                    .map(|g| prefix.concat(g).concat(&tail))
                    .collect();
                cliques.push(clique);
            }
        }
    }
    Ok(CliqueCover {
        n,
        q,
        t,
        m,
        n_rem,
        cliques,
    })
}

/// All length-k tuples over `items`, in lexicographic index order.
fn tuples<'a>(items: &'a [Word], k: usize) -> Box<dyn Iterator<Item = Vec<&'a Word>> + 'a> {
    if k == 0 {
        return Box::new(std::iter::once(Vec::new()));
    }
    Box::new(tuples(items, k - 1).flat_map(move |prefix| {
        items.iter().map(move |item| {
            let mut next = prefix.clone();
            next.push(item);
            next
        })
    }))
}

/// Closed form for the clique-cover size, evaluated in exact rational
/// arithmetic: q^n/(2t+1) · (1 + 2t·(1 − (2t+1)/q^{2t})^m) with n = 2mt + n′.
pub fn clique_cover_size(n: usize, q: Symbol, t: usize) -> BigRational {
    let m = n / (2 * t);
    let q_big = BigInt::from(q);
    let qn = BigRational::from_integer(q_big.pow(n as u32));
    let two_t1 = BigRational::from_integer(BigInt::from(2 * t as u64 + 1));
    let q2t = BigRational::from_integer(BigInt::from(q).pow(2 * t as u32));
    let inner = BigRational::one() - two_t1.clone() / q2t;
    let mut pow = BigRational::one();
    for _ in 0..m {
        pow *= inner.clone();
    }
    qn / two_t1 * (BigRational::one() + BigRational::from_integer(BigInt::from(2 * t as u64)) * pow)
}

/// Lower bound on the redundancy of 2-read distance-3 codes via the clique
/// cover at the prescribed t* = ⌊(log_q n − log_q(2 ln log_q n))/2⌋.
/// Tiny n, where the prescription is nonpositive or undefined, is an error
/// rather than an extrapolation.
pub fn redundancy_lower_bound_d3(n: usize, q: Symbol) -> Result<f64, BoundsError> {
    if n < 2 {
        return Err(BoundsError::PrescribedTNonpositive {
            n,
            q,
            detail: "log_q log_q n is undefined".into(),
        });
    }
    let lg = log_q(q, n as f64);
    if lg <= 1.0 {
        return Err(BoundsError::PrescribedTNonpositive {
            n,
            q,
            detail: "log_q n <= 1, the prescribed t is undefined".into(),
        });
    }
    let t_star = floor_guard((lg - log_q(q, 2.0 * lg.ln())) / 2.0);
    if t_star < 1 {
        return Err(BoundsError::PrescribedTNonpositive {
            n,
            q,
            detail: format!("prescribed t* = {t_star}"),
        });
    }
    let size = clique_cover_size(n, q, t_star as usize);
    let size_f = size.to_f64().unwrap_or(f64::INFINITY);
    Ok(n as f64 - log_q(q, size_f))
}

/// Hamming-bound redundancy floor for 2-read distance-5 codes:
/// log_q((q−1)n + 1).
pub fn hamming_bound_redundancy(n: usize, q: Symbol) -> f64 {
    log_q(q, (q as f64 - 1.0) * n as f64 + 1.0)
}

/// Exact maximum size of the intersection of two radius-t substitution
/// balls around words at Hamming distance at least d in Σ_q^n:
///
/// Σ_{i=0}^{t-⌈d/2⌉} C(n-d, i)(q-1)^i Σ_{k,l=d-t+i}^{t-i} C(d,k)C(d-k,l)(q-2)^{d-k-l}
///
/// with C(n,i) = 0 for i > n or i < 0 and 0^0 = 1.
pub fn levenshtein_n(n: usize, q: u64, t: usize, d: usize) -> Result<BigUint, BoundsError> {
    if d < 1 {
        return Err(BoundsError::PreconditionViolated(
            "d must be at least 1".into(),
        ));
    }
    if t < d.div_ceil(2) {
        return Err(BoundsError::PreconditionViolated(format!(
            "t = {t} must be at least ⌈d/2⌉ = {}",
            d.div_ceil(2)
        )));
    }
    let mut total = BigUint::zero();
    for i in 0..=(t - d.div_ceil(2)) as i64 {
        let outer = binomial(n as i64 - d as i64, i) * BigUint::from(q - 1).pow(i as u32);
        if outer.is_zero() {
            continue;
        }
        let mut inner = BigUint::zero();
        let lo = d as i64 - t as i64 + i;
        let hi = t as i64 - i;
        for k in lo..=hi {
            for l in lo..=hi {
                let c1 = binomial(d as i64, k);
                if c1.is_zero() {
                    continue;
                }
                let c2 = binomial(d as i64 - k, l);
                if c2.is_zero() {
                    continue;
                }
                let e = (d as i64 - k - l) as u32;
                inner += c1 * c2 * BigUint::from(q - 2).pow(e);
            }
        }
        total += outer * inner;
    }
    Ok(total)
}

/// Reconstruction upper bound for read vectors: the maximum intersection of
/// radius-t substitution balls around ℓ-read vectors at Hamming distance at
/// least d is at most levenshtein_n over the rank alphabet of size
/// C(q+ℓ-1, ℓ) and length n+ℓ-1.
pub fn read_recon_upper(
    n: usize,
    ell: usize,
    q: Symbol,
    t: usize,
    d: usize,
) -> Result<BigUint, BoundsError> {
    if ell < 2 {
        return Err(seqcore::SeqError::InvalidReadLength { got: ell, min: 2 }.into());
    }
    let q_ell = seqcore::multiset_count(q, ell);
    levenshtein_n(n + ell - 1, q_ell, t, d)
}

/// One named bound value for report tables.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub n: Option<usize>,
    pub q: Option<Symbol>,
    pub t: Option<usize>,
    pub d: Option<usize>,
    pub value: String,
    pub provenance: String,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "name,n,q,t,d,value,provenance";

    pub fn csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{}",
            self.name,
            opt(&self.n),
            opt(&self.q),
            opt(&self.t),
            opt(&self.d),
            self.value,
            self.provenance
        )
    }

    pub fn rational_value(v: &BigRational) -> String {
        if v.is_integer() {
            v.to_integer().to_string()
        } else {
            format!("{}/{}", v.numer(), v.denom())
        }
    }

    pub fn real_value(v: f64) -> String {
        format!("{v:.6}")
    }
}

/// Count of cliques (exact, from the counting form of the construction):
/// equals `clique_cover_size` and the materialized count.
pub fn clique_cover_count(n: usize, q: Symbol, t: usize) -> BigUint {
    let m = n / (2 * t);
    let n_rem = n - 2 * t * m;
    let q_big = BigUint::from(q);
    let tilde = q_big.pow(2 * t as u32) - BigUint::from(2 * t as u64 + 1);
    let mut total = tilde.pow(m as u32) * q_big.pow(n_rem as u32);
    for k in 1..=m as u32 {
        total += tilde.pow(k - 1) * q_big.pow((n - 2 * t * k as usize) as u32);
    }
    total
}
