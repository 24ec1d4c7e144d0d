//! Code families: membership predicates, enumerators, residue optimizers
//! and exhaustive verification of each family's guarantee.
//!
//! Every family is a conjunction of structural constraints (an alternating
//! run cap, or goodness for ℓ ≥ 3) and VT-style congruences evaluated on
//! the word, its indicator sequence, or its odd subword. Membership is pure
//! arithmetic on syndromes; no enumeration happens inside `is_member`.

use crate::budget::Budget;
use crate::characterize::{self, D4Case};
use crate::numutil::{ceil_guard, floor_guard, log_q, smallest_even_above, smallest_prime_geq, smallest_prime_gt};
use crate::oracle::{self, BallKind, BallSpec};
use crate::report::{Outcome, VerificationReport};
use crate::seqcore::{self, Symbol, Word};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use std::collections::{BTreeSet, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error("residues are not set on this spec")]
    MissingResidues,
    #[error("expected {expected} residues, got {got}")]
    ResidueCount { expected: usize, got: usize },
    #[error("budget exceeded: requires {required}, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error(transparent)]
    Seq(#[from] seqcore::SeqError),
    #[error("oracle failure: {0}")]
    Oracle(String),
}

/// The implemented code families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// ℓ ≥ 3, distance 3: good words plus an inversion congruence.
    C33,
    /// ℓ = 2, distance 3 (equivalently single-insertion reconstruction
    /// with two reads): run cap, VT^0 mod q, inversions mod 1+P/2.
    Cp,
    /// Single-deletion reconstruction with two reads: run cap plus a VT^0
    /// congruence on the odd subword.
    Cdel,
    /// Window code: VT^(0..d-2) congruences forcing Hamming distance >= d
    /// on pairs whose differing window is narrow.
    Bounded,
    /// Binary window code with d = 3 and a plain integer modulus.
    BoundedBin,
    /// 2-read distance 4 via the window code on indicator sequences.
    C24,
    /// Binary 2-read distance 4 via the binary window code.
    C24Bin,
    /// First auxiliary distance-5 ingredient: distance >= 4 and no
    /// three-adjacent-block shape at distance 4.
    Aux1,
    /// Second auxiliary distance-5 ingredient: no separated-block shape at
    /// distance 4.
    Aux2,
    /// 2-read distance 5: intersection of Aux1 and Aux2.
    C25,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::C33,
        Family::Cp,
        Family::Cdel,
        Family::Bounded,
        Family::BoundedBin,
        Family::C24,
        Family::C24Bin,
        Family::Aux1,
        Family::Aux2,
        Family::C25,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::C33 => "c33",
            Family::Cp => "cp",
            Family::Cdel => "cdel",
            Family::Bounded => "bounded",
            Family::BoundedBin => "bounded_bin",
            Family::C24 => "c24",
            Family::C24Bin => "c24_bin",
            Family::Aux1 => "aux1",
            Family::Aux2 => "aux2",
            Family::C25 => "c25",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == s)
    }

    /// Default read length: 3 for the ℓ ≥ 3 family, 2 for everything else.
    pub fn default_ell(&self) -> usize {
        match self {
            Family::C33 => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// What a congruence is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatTarget {
    Word,
    Indicator,
    OddSubword,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatKind {
    /// VT syndrome of the given order.
    Vt(u32),
    /// Inversion number.
    Inversions,
}

/// One congruence `stat(target(x)) ≡ residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceSpec {
    pub label: String,
    pub target: StatTarget,
    pub kind: StatKind,
    pub modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralConstraint {
    /// x ∈ ALL(n, cap): every alternating substring of length at most cap.
    RunCap(usize),
    /// x is good for the given threshold (ℓ ≥ 3 families).
    Good(usize),
}

/// A fully derived code family instance. Serializes with every effective
/// parameter spelled out, so reports are self-describing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeFamilySpec {
    pub family: Family,
    pub n: usize,
    pub q: Symbol,
    pub ell: usize,
    /// The distance-style guarantee this instance carries (read distance
    /// for the read families, Hamming distance for the window families).
    pub d: usize,
    /// The family's P parameter, when it has one (for `Cdel` this is the
    /// effective integer run cap of the real-valued formula).
    pub p_param: Option<u64>,
    pub structural: Vec<StructuralConstraint>,
    pub congruences: Vec<CongruenceSpec>,
    pub residues: Option<Vec<u64>>,
    pub notes: Vec<String>,
}

/// Optional explicit parameters overriding the derived defaults, so tests
/// can exercise non-vacuous regimes at desk scale.
#[derive(Debug, Clone, Default)]
pub struct ParamOverrides {
    pub p: Option<u64>,
    pub d: Option<usize>,
    pub run_cap: Option<usize>,
    pub good_t: Option<usize>,
    /// Replaces the derived moduli entrywise (length must match).
    pub moduli: Option<Vec<u64>>,
}

fn log_sum(n: usize, q: Symbol) -> Result<f64, CodeError> {
    if n < 2 {
        return Err(CodeError::InvalidFamilyParams(format!(
            "n = {n} is too small to evaluate log_q log_q n"
        )));
    }
    let lg = log_q(q, n as f64);
    Ok(lg + log_q(q, lg))
}

fn vt_congruence(label: &str, target: StatTarget, order: u32, modulus: u64) -> CongruenceSpec {
    CongruenceSpec {
        label: label.to_string(),
        target,
        kind: StatKind::Vt(order),
        modulus,
    }
}

/// Derive the effective parameters of a family instance (residues unset).
pub fn derive_params(
    family: Family,
    n: usize,
    q: Symbol,
    ell: usize,
    overrides: &ParamOverrides,
) -> Result<CodeFamilySpec, CodeError> {
    if q < 2 {
        return Err(CodeError::InvalidFamilyParams(format!(
            "alphabet size {q} is below 2"
        )));
    }
    let binary_only = matches!(family, Family::BoundedBin | Family::C24Bin);
    if binary_only && q != 2 {
        return Err(CodeError::InvalidFamilyParams(format!(
            "{family} is a binary family, got q = {q}"
        )));
    }
    if family == Family::C33 {
        if ell < 3 {
            return Err(CodeError::InvalidFamilyParams(format!(
                "c33 requires ℓ >= 3, got {ell} (its distance-2 structure is only available there)"
            )));
        }
    } else if ell != 2 {
        return Err(CodeError::InvalidFamilyParams(format!(
            "{family} is a 2-read family, got ℓ = {ell}"
        )));
    }

    let mut notes: Vec<String> = Vec::new();
    let mut spec = match family {
        Family::C33 => {
            let z = if overrides.good_t.is_some() && overrides.p.is_some() {
                None
            } else {
                Some(log_sum(n, q)? / 2.0)
            };
            let t = match overrides.good_t {
                Some(t) => t,
                None => {
                    let z = z.expect("computed above");
                    if ceil_guard(z - 1.0) < 1 {
                        notes.push("goodness threshold clamped up to 1".into());
                    }
                    ceil_guard(z - 1.0).max(1) as usize
                }
            };
            let p = match overrides.p {
                Some(p) => p,
                None => {
                    let z = z.expect("computed above");
                    if ceil_guard(z) < t as i64 + 1 {
                        notes.push(format!(
                            "inversion modulus raised to T+1 = {} to match the clamped threshold",
                            t + 1
                        ));
                    }
                    ceil_guard(z).max(t as i64 + 1) as u64
                }
            };
            if p < t as u64 + 1 {
                notes.push(format!(
                    "warning: modulus P = {p} below T+1 = {}; the distance guarantee needs P > T",
                    t + 1
                ));
            }
            CodeFamilySpec {
                family,
                n,
                q,
                ell,
                d: 3,
                p_param: Some(p),
                structural: vec![StructuralConstraint::Good(t)],
                congruences: vec![CongruenceSpec {
                    label: format!("Inv(x) mod {p}"),
                    target: StatTarget::Word,
                    kind: StatKind::Inversions,
                    modulus: p,
                }],
                residues: None,
                notes,
            }
        }
        Family::Cp => {
            let p = match overrides.p {
                Some(p) => p,
                None => smallest_even_above(log_sum(n, q)?).max(2) as u64,
            };
            if p < 2 || p % 2 != 0 {
                return Err(CodeError::InvalidFamilyParams(format!(
                    "cp requires an even P >= 2, got {p}"
                )));
            }
            let cap = overrides.run_cap.unwrap_or(p as usize);
            CodeFamilySpec {
                family,
                n,
                q,
                ell,
                d: 3,
                p_param: Some(p),
                structural: vec![StructuralConstraint::RunCap(cap)],
                congruences: vec![
                    vt_congruence(&format!("VT0(x) mod {q}"), StatTarget::Word, 0, q as u64),
                    CongruenceSpec {
                        label: format!("Inv(x) mod {}", 1 + p / 2),
                        target: StatTarget::Word,
                        kind: StatKind::Inversions,
                        modulus: 1 + p / 2,
                    },
                ],
                residues: None,
                notes,
            }
        }
        Family::Cdel => {
            let explicit = overrides.run_cap.or(overrides.p.map(|p| p as usize));
            let (cap, half) = match explicit {
                Some(cap) => (cap, cap.div_ceil(2) as u64),
                None => {
                    let p_real = log_sum(n, q)?;
                    (
                        floor_guard(p_real).max(1) as usize,
                        ceil_guard(p_real / 2.0).max(1) as u64,
                    )
                }
            };
            let p_prime = smallest_prime_gt(half);
            let m = p_prime.min((q as u64 - 1) * half + 1);
            notes.push(format!(
                "half-cap {half}, prime {p_prime}, modulus m = min(p, (q-1)*half+1) = {m}"
            ));
            CodeFamilySpec {
                family,
                n,
                q,
                ell,
                d: 3,
                p_param: Some(cap as u64),
                structural: vec![StructuralConstraint::RunCap(cap)],
                congruences: vec![vt_congruence(
                    &format!("VT0(O(x)) mod {m}"),
                    StatTarget::OddSubword,
                    0,
                    m,
                )],
                residues: None,
                notes,
            }
        }
        Family::Bounded | Family::BoundedBin => {
            let d = overrides.d.unwrap_or(3);
            if family == Family::BoundedBin && d != 3 {
                return Err(CodeError::InvalidFamilyParams(format!(
                    "bounded_bin is fixed at d = 3, got {d}"
                )));
            }
            if d < 2 {
                return Err(CodeError::InvalidFamilyParams(format!(
                    "bounded requires d >= 2, got {d}"
                )));
            }
            let p = match overrides.p {
                Some(p) => p,
                None => {
                    let p_default = (2 * ceil_guard(log_sum(n, q)?).max(1) + 1) as u64;
                    notes.push(format!("window parameter defaulted to P = {p_default}"));
                    p_default
                }
            };
            let congruences = if family == Family::BoundedBin {
                if p < 3 {
                    return Err(CodeError::InvalidFamilyParams(format!(
                        "bounded_bin requires an integer P > q = 2, got {p}"
                    )));
                }
                vec![
                    vt_congruence("VT0(x) mod 3", StatTarget::Word, 0, 3),
                    vt_congruence(&format!("VT1(x) mod {p}"), StatTarget::Word, 1, p),
                ]
            } else {
                let p0 = (d as u64 - 1) * (q as u64 - 1) + 1;
                let prime = smallest_prime_geq(p.max(q as u64));
                let mut list = vec![vt_congruence(
                    &format!("VT0(x) mod {p0}"),
                    StatTarget::Word,
                    0,
                    p0,
                )];
                for i in 1..=(d as u32 - 2) {
                    list.push(vt_congruence(
                        &format!("VT{i}(x) mod {prime}"),
                        StatTarget::Word,
                        i,
                        prime,
                    ));
                }
                list
            };
            CodeFamilySpec {
                family,
                n,
                q,
                ell,
                d,
                p_param: Some(p),
                structural: vec![],
                congruences,
                residues: None,
                notes,
            }
        }
        Family::C24 | Family::C24Bin => {
            let p = match overrides.p {
                Some(p) => p,
                None => (2 * ceil_guard(log_sum(n, q)?).max(1) + 1) as u64,
            };
            if p < 3 || (p - 1) % 2 != 0 {
                return Err(CodeError::InvalidFamilyParams(format!(
                    "{family} requires odd P >= 3 with 2 | (P-1), got {p}"
                )));
            }
            let cap = overrides.run_cap.unwrap_or(((p - 1) / 2) as usize);
            let congruences = if family == Family::C24Bin {
                vec![
                    vt_congruence("VT0(1(x)) mod 3", StatTarget::Indicator, 0, 3),
                    vt_congruence(&format!("VT1(1(x)) mod {p}"), StatTarget::Indicator, 1, p),
                ]
            } else {
                let p0 = 3 * (q as u64 - 1) + 1;
                let prime = smallest_prime_geq(p.max(q as u64));
                vec![
                    vt_congruence(&format!("VT0(1(x)) mod {p0}"), StatTarget::Indicator, 0, p0),
                    vt_congruence(&format!("VT1(1(x)) mod {prime}"), StatTarget::Indicator, 1, prime),
                    vt_congruence(&format!("VT2(1(x)) mod {prime}"), StatTarget::Indicator, 2, prime),
                ]
            };
            CodeFamilySpec {
                family,
                n,
                q,
                ell,
                d: 4,
                p_param: Some(p),
                structural: vec![StructuralConstraint::RunCap(cap)],
                congruences,
                residues: None,
                notes,
            }
        }
        Family::Aux1 | Family::Aux2 | Family::C25 => {
            let p = match overrides.p {
                Some(p) => p,
                None => (3 * ceil_guard(log_sum(n, q)?).max(1) + 1) as u64,
            };
            if (p - 1) % 3 != 0 || p < 4 {
                return Err(CodeError::InvalidFamilyParams(format!(
                    "{family} requires P = 3k+1 >= 4, got {p}"
                )));
            }
            let cap = overrides.run_cap.unwrap_or(((p - 1) / 3) as usize);
            let aux1_congruences = |notes: &mut Vec<String>| {
                let p0 = 4 * (q as u64 - 1) + 1;
                let prime = smallest_prime_geq(p.max(q as u64));
                notes.push(format!("aux1 window prime {prime}"));
                vec![
                    vt_congruence(&format!("VT0(1(x)) mod {p0}"), StatTarget::Indicator, 0, p0),
                    vt_congruence(&format!("VT1(1(x)) mod {prime}"), StatTarget::Indicator, 1, prime),
                    vt_congruence(&format!("VT2(1(x)) mod {prime}"), StatTarget::Indicator, 2, prime),
                    vt_congruence(&format!("VT3(1(x)) mod {prime}"), StatTarget::Indicator, 3, prime),
                ]
            };
            let aux2_congruences = |notes: &mut Vec<String>| {
                let big_prime = smallest_prime_gt(4 * n as u64);
                let m = (q as u64 - 1) * ((p - 1) / 3) + 1;
                notes.push(format!(
                    "aux2 prime p = {big_prime} (> 4n), odd-subword modulus M = {m}"
                ));
                vec![
                    vt_congruence(
                        &format!("VT0(x) mod {}", 2 * q as u64 - 1),
                        StatTarget::Word,
                        0,
                        2 * q as u64 - 1,
                    ),
                    vt_congruence(&format!("VT2(x) mod {big_prime}"), StatTarget::Word, 2, big_prime),
                    vt_congruence(&format!("VT0(O(x)) mod {m}"), StatTarget::OddSubword, 0, m),
                ]
            };
            let (d, congruences) = match family {
                Family::Aux1 => (4, aux1_congruences(&mut notes)),
                Family::Aux2 => (4, aux2_congruences(&mut notes)),
                Family::C25 => {
                    let mut list = aux1_congruences(&mut notes);
                    list.extend(aux2_congruences(&mut notes));
                    notes.push("residues optimized jointly over the aux1 × aux2 product".into());
                    (5, list)
                }
                _ => unreachable!(),
            };
            CodeFamilySpec {
                family,
                n,
                q,
                ell,
                d,
                p_param: Some(p),
                structural: vec![StructuralConstraint::RunCap(cap)],
                congruences,
                residues: None,
                notes,
            }
        }
    };
    if let Some(moduli) = &overrides.moduli {
        if moduli.len() != spec.congruences.len() {
            return Err(CodeError::ResidueCount {
                expected: spec.congruences.len(),
                got: moduli.len(),
            });
        }
        for (c, &m) in spec.congruences.iter_mut().zip(moduli) {
            if m == 0 {
                return Err(CodeError::InvalidFamilyParams("modulus 0".into()));
            }
            c.modulus = m;
            c.label = format!("{} (modulus overridden to {m})", c.label);
        }
        spec.notes.push("moduli overridden".into());
    }
    Ok(spec)
}

impl CodeFamilySpec {
    pub fn moduli(&self) -> Vec<u64> {
        self.congruences.iter().map(|c| c.modulus).collect()
    }

    pub fn with_residues(mut self, residues: Vec<u64>) -> Result<Self, CodeError> {
        if residues.len() != self.congruences.len() {
            return Err(CodeError::ResidueCount {
                expected: self.congruences.len(),
                got: residues.len(),
            });
        }
        for (c, &r) in self.congruences.iter().zip(&residues) {
            if r >= c.modulus {
                return Err(CodeError::InvalidFamilyParams(format!(
                    "residue {r} not below modulus {}",
                    c.modulus
                )));
            }
        }
        self.residues = Some(residues);
        Ok(self)
    }

    /// The residue signature of a word: one stat value per congruence.
    pub fn signature(&self, x: &Word) -> Vec<u64> {
        // Lazily computed transforms, shared across congruences.
        let mut indicator: Option<Word> = None;
        let mut odd: Option<Word> = None;
        self.congruences
            .iter()
            .map(|c| {
                let target: &Word = match c.target {
                    StatTarget::Word => x,
                    StatTarget::Indicator => {
                        indicator.get_or_insert_with(|| seqcore::indicator(x))
                    }
                    StatTarget::OddSubword => odd.get_or_insert_with(|| seqcore::odd_subword(x)),
                };
                match c.kind {
                    StatKind::Vt(k) => seqcore::vt_syndrome_mod(target, k, c.modulus),
                    StatKind::Inversions => seqcore::inversion_number(target) % c.modulus,
                }
            })
            .collect()
    }

    /// Structural constraints only (the "ambient set" membership).
    pub fn in_ambient(&self, x: &Word) -> bool {
        self.structural.iter().all(|s| match *s {
            StructuralConstraint::RunCap(cap) => seqcore::in_all(x, cap),
            StructuralConstraint::Good(t) => {
                seqcore::is_good(x, self.ell, t).expect("ℓ >= 3 validated at derivation")
            }
        })
    }
}

/// Exact membership test: shape, structural constraints, congruences.
pub fn is_member(spec: &CodeFamilySpec, x: &Word) -> Result<bool, CodeError> {
    if x.len() != spec.n || x.q() != spec.q {
        return Err(seqcore::SeqError::ShapeMismatch(format!(
            "word has n = {}, q = {}, spec wants n = {}, q = {}",
            x.len(),
            x.q(),
            spec.n,
            spec.q
        ))
        .into());
    }
    let residues = spec.residues.as_ref().ok_or(CodeError::MissingResidues)?;
    if !spec.in_ambient(x) {
        return Ok(false);
    }
    Ok(spec.signature(x) == *residues)
}

/// A fully enumerated code.
#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedCode {
    pub spec: CodeFamilySpec,
    pub size: u64,
    /// n − log_q(size); `None` for the empty code.
    pub redundancy: Option<f64>,
    pub words: Vec<Word>,
}

fn budget_words(spec: &CodeFamilySpec, budget: &Budget) -> Result<(), CodeError> {
    budget
        .check_enumeration(spec.q, spec.n)
        .map(|_| ())
        .map_err(|required| CodeError::BudgetExceeded {
            required,
            budget: budget.enumeration,
        })
}

/// Enumerate all members, in lexicographic order (deterministic regardless
/// of internal sharding).
pub fn enumerate(spec: &CodeFamilySpec, budget: &Budget) -> Result<EnumeratedCode, CodeError> {
    budget_words(spec, budget)?;
    let residues = spec.residues.as_ref().ok_or(CodeError::MissingResidues)?;
    let words: Vec<Word> = oracle::all_words(spec.q, spec.n)
        .into_par_iter()
        .filter(|x| spec.in_ambient(x) && spec.signature(x) == *residues)
        .collect();
    let size = words.len() as u64;
    let redundancy = if size == 0 {
        None
    } else {
        Some(spec.n as f64 - log_q(spec.q, size as f64))
    };
    Ok(EnumeratedCode {
        spec: spec.clone(),
        size,
        redundancy,
        words,
    })
}

/// Bucket statistics from a residue optimization pass.
#[derive(Debug, Clone, Serialize)]
pub struct ResidueStats {
    /// Number of words passing the structural constraints.
    pub ambient: u64,
    /// Occupied residue signatures (they partition the ambient set).
    pub buckets: u64,
    pub best_size: u64,
}

/// Pick the residue tuple maximizing the code size: one pass over Σ_q^n
/// bucketing ambient words by signature; ties break to the
/// lexicographically smallest residue tuple.
pub fn best_residues(
    spec: &CodeFamilySpec,
    budget: &Budget,
) -> Result<(CodeFamilySpec, ResidueStats), CodeError> {
    budget_words(spec, budget)?;
    let hist: HashMap<Vec<u64>, u64> = oracle::all_words(spec.q, spec.n)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Vec<u64>, u64>, x| {
            if spec.in_ambient(&x) {
                *acc.entry(spec.signature(&x)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let ambient: u64 = hist.values().sum();
    let buckets = hist.len() as u64;
    let (best_sig, best_size) = hist
        .into_iter()
        .map(|(sig, count)| (count, sig))
        .max_by(|(ca, sa), (cb, sb)| ca.cmp(cb).then_with(|| sb.cmp(sa)))
        .map(|(count, sig)| (sig, count))
        .unwrap_or_else(|| (vec![0; spec.congruences.len()], 0));
    let out = spec.clone().with_residues(best_sig)?;
    Ok((
        out,
        ResidueStats {
            ambient,
            buckets,
            best_size,
        },
    ))
}

// ---------------------------------------------------------------------------
// Family verification
// ---------------------------------------------------------------------------

/// Find all unordered pairs of `arrays` at Hamming distance <= max_d,
/// exactly, by segment pigeonhole: split positions into max_d+1 segments;
/// any qualifying pair agrees on at least one whole segment, so grouping
/// by each segment's content and scanning within groups misses nothing.
fn pairs_within_hamming(arrays: &[Vec<u8>], max_d: usize) -> Vec<(usize, usize)> {
    let mut found: BTreeSet<(usize, usize)> = BTreeSet::new();
    let len = arrays.first().map(|a| a.len()).unwrap_or(0);
    let segments = max_d + 1;
    let bounds: Vec<(usize, usize)> = (0..segments)
        .map(|s| (s * len / segments, (s + 1) * len / segments))
        .collect();
    for &(lo, hi) in &bounds {
        let mut groups: HashMap<&[u8], Vec<usize>> = HashMap::new();
        for (i, a) in arrays.iter().enumerate() {
            groups.entry(&a[lo..hi]).or_default().push(i);
        }
        for group in groups.values() {
            for (gi, &i) in group.iter().enumerate() {
                for &j in &group[gi + 1..] {
                    let d = arrays[i]
                        .iter()
                        .zip(&arrays[j])
                        .filter(|(a, b)| a != b)
                        .count();
                    if d <= max_d {
                        found.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

fn pair_count(len: usize) -> u64 {
    let n = len as u64;
    n * n.saturating_sub(1) / 2
}

fn fail_report(
    spec: &CodeFamilySpec,
    strategy: &str,
    pairs: u64,
    failure: Option<(Word, Word, String)>,
) -> VerificationReport {
    let result = match failure {
        None => Outcome::Pass,
        Some((x, y, details)) => Outcome::Fail {
            x: x.to_string(),
            y: y.to_string(),
            details,
        },
    };
    VerificationReport {
        check: format!("family_{}", spec.family),
        params: json!({ "spec": spec, "strategy": strategy }),
        pairs_examined: pairs,
        result,
    }
}

/// Exhaustively check the family's guarantee over all codeword pairs.
///
/// Strategies: pairs at bounded read distance are found exactly by segment
/// pigeonhole over the read-vector rank arrays; the deletion family
/// additionally switches between a direct ball-intersection scan (small
/// codes) and exhaustive alternating-swap neighbor generation, which is
/// complete for the `t >= 2` swap shape.
pub fn verify_family(spec: &CodeFamilySpec, budget: &Budget) -> Result<VerificationReport, CodeError> {
    let code = enumerate(spec, budget)?;
    let words = &code.words;
    let logical_pairs = pair_count(words.len());
    match spec.family {
        Family::C33 => {
            let arrays: Vec<Vec<u8>> = words
                .iter()
                .map(|w| seqcore::read_rank_bytes(w, spec.ell))
                .collect::<Result<_, _>>()?;
            let candidates = pairs_within_hamming(&arrays, 2);
            let failure = candidates.first().map(|&(i, j)| {
                let d = seqcore::read_distance(&words[i], &words[j], spec.ell).expect("same shape");
                (
                    words[i].clone(),
                    words[j].clone(),
                    format!("ℓ-read distance {d} < 3"),
                )
            });
            Ok(fail_report(spec, "segment-filter", logical_pairs, failure))
        }
        Family::Cp => {
            let arrays: Vec<Vec<u8>> = words
                .iter()
                .map(|w| seqcore::read_rank_bytes(w, 2))
                .collect::<Result<_, _>>()?;
            let candidates = pairs_within_hamming(&arrays, 2);
            let mut failure = candidates.first().map(|&(i, j)| {
                let inter = oracle::ball_intersection(
                    &words[i],
                    &words[j],
                    BallSpec {
                        kind: BallKind::Insertion,
                        radius: 1,
                    },
                )
                .expect("same shape");
                (
                    words[i].clone(),
                    words[j].clone(),
                    format!("2-read distance 2, |I1∩I1| = {inter} > 1"),
                )
            });
            // Small codes also get the direct insertion-ball scan, an
            // independent route to the same guarantee.
            let mut strategy = "segment-filter";
            if failure.is_none() && logical_pairs <= budget.enumeration {
                strategy = "segment-filter+direct-balls";
                failure = direct_ball_scan(words, BallKind::Insertion, 1);
            }
            Ok(fail_report(spec, strategy, logical_pairs, failure))
        }
        Family::Cdel => {
            if logical_pairs <= budget.enumeration {
                let failure = direct_ball_scan(words, BallKind::Deletion, 1);
                Ok(fail_report(spec, "direct-balls", logical_pairs, failure))
            } else {
                let failure = swap_neighbor_scan(words);
                Ok(fail_report(spec, "swap-neighbors", logical_pairs, failure))
            }
        }
        Family::Bounded | Family::BoundedBin => {
            let p = spec.p_param.expect("window families carry P") as usize;
            let failure = if logical_pairs <= budget.enumeration {
                window_pair_scan(words, spec.d, p)
            } else {
                window_neighbor_scan(words, spec.d, p)
            };
            Ok(fail_report(spec, "window-property", logical_pairs, failure))
        }
        Family::C24 | Family::C24Bin | Family::Aux1 | Family::Aux2 | Family::C25 => {
            let arrays: Vec<Vec<u8>> = words
                .iter()
                .map(|w| seqcore::read_rank_bytes(w, 2))
                .collect::<Result<_, _>>()?;
            let max_d = 4usize; // all remaining guarantees live at distance <= 4
            let candidates = pairs_within_hamming(&arrays, max_d);
            let mut failure: Option<(Word, Word, String)> = None;
            for (i, j) in candidates {
                let d = arrays[i]
                    .iter()
                    .zip(&arrays[j])
                    .filter(|(a, b)| a != b)
                    .count();
                let bad = match spec.family {
                    Family::C24 | Family::C24Bin => {
                        (d < 4).then(|| format!("2-read distance {d} < 4"))
                    }
                    Family::Aux1 => {
                        if d < 4 {
                            Some(format!("2-read distance {d} < 4"))
                        } else if d == 4 {
                            let shape = characterize::classify_d4(&words[i], &words[j])
                                .map_err(|e| CodeError::Oracle(e.to_string()))?;
                            (shape.tag == D4Case::CaseB)
                                .then(|| "three-adjacent-block shape at distance 4".to_string())
                        } else {
                            None
                        }
                    }
                    Family::Aux2 => {
                        if d == 4 {
                            let shape = characterize::classify_d4(&words[i], &words[j])
                                .map_err(|e| CodeError::Oracle(e.to_string()))?;
                            (shape.tag == D4Case::CaseA)
                                .then(|| "separated-block shape at distance 4".to_string())
                        } else {
                            None
                        }
                    }
                    Family::C25 => (d < 5).then(|| format!("2-read distance {d} < 5")),
                    _ => unreachable!(),
                };
                if let Some(details) = bad {
                    failure = Some((words[i].clone(), words[j].clone(), details));
                    break;
                }
            }
            Ok(fail_report(spec, "segment-filter", logical_pairs, failure))
        }
    }
}

/// Direct pairwise ball-intersection scan: fail on any pair with
/// |B(x) ∩ B(y)| > 1.
fn direct_ball_scan(
    words: &[Word],
    kind: BallKind,
    radius: usize,
) -> Option<(Word, Word, String)> {
    let balls: Vec<BTreeSet<Word>> = words
        .par_iter()
        .map(|w| oracle::ball(w, BallSpec { kind, radius }).expect("radius <= n"))
        .collect();
    (0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            (i + 1..words.len()).find_map(|j| {
                let inter = balls[i].intersection(&balls[j]).count();
                (inter > 1).then_some((i, j, inter))
            })
        })
        .min_by_key(|&(i, j, _)| (i, j))
        .map(|(i, j, inter)| {
            (
                words[i].clone(),
                words[j].clone(),
                format!("ball intersection {inter} > 1"),
            )
        })
}

/// Exhaustive alternating-swap neighbors: for every codeword, swap every
/// alternating substring of length >= 2 and look the result up in the code.
/// By the two-reads deletion structure this finds exactly the pairs with
/// |D1 ∩ D1| = 2.
fn swap_neighbor_scan(words: &[Word]) -> Option<(Word, Word, String)> {
    let set: HashSet<&Word> = words.iter().collect();
    words
        .par_iter()
        .enumerate()
        .filter_map(|(idx, x)| {
            let s = x.symbols();
            let n = s.len();
            let mut best: Option<(Word, Word)> = None;
            for i in 0..n {
                let mut j = i + 1;
                while j < n && s[j] != s[j - 1] && (j < i + 2 || s[j] == s[j - 2]) {
                    // s[i..=j] is alternating over {s[i], s[i+1]}.
                    let mut swapped = s.to_vec();
                    let (a, b) = (s[i], s[i + 1]);
                    for sym in &mut swapped[i..=j] {
                        *sym = if *sym == a { b } else { a };
                    }
                    let y = Word::new(x.q(), swapped).expect("valid symbols");
                    if set.contains(&y) {
                        let pair = if *x < y {
                            (x.clone(), y)
                        } else {
                            (y, x.clone())
                        };
                        if best.as_ref().is_none_or(|b| pair < *b) {
                            best = Some(pair);
                        }
                    }
                    j += 1;
                }
            }
            best.map(|p| (idx, p))
        })
        .min_by_key(|(idx, _)| *idx)
        .map(|(_, (x, y))| {
            let inter = oracle::ball_intersection(
                &x,
                &y,
                BallSpec {
                    kind: BallKind::Deletion,
                    radius: 1,
                },
            )
            .expect("same shape");
            (
                x,
                y,
                format!("alternating-swap pair with |D1∩D1| = {inter} > 1"),
            )
        })
}

/// Pairwise window-property scan: a violation is a distinct pair at
/// Hamming distance < d whose differing indices sit at most P-1 apart.
fn window_pair_scan(words: &[Word], d: usize, p: usize) -> Option<(Word, Word, String)> {
    (0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            (i + 1..words.len()).find_map(|j| {
                let x = words[i].symbols();
                let y = words[j].symbols();
                let mut dist = 0usize;
                let mut first = usize::MAX;
                let mut last = 0usize;
                for k in 0..x.len() {
                    if x[k] != y[k] {
                        dist += 1;
                        first = first.min(k);
                        last = k;
                    }
                }
                (dist < d && last - first < p).then_some((i, j, dist, last - first))
            })
        })
        .min_by_key(|&(i, j, _, _)| (i, j))
        .map(|(i, j, dist, width)| {
            (
                words[i].clone(),
                words[j].clone(),
                format!("Hamming distance {dist} < {d} with differing indices {width} < {p} apart"),
            )
        })
}

/// Windowed-neighbor generation: all words reachable from a codeword by
/// changing 1..d-1 positions whose extremes are less than P apart, looked
/// up in the code. Complete for the window property by construction.
fn window_neighbor_scan(words: &[Word], d: usize, p: usize) -> Option<(Word, Word, String)> {
    let set: HashSet<&Word> = words.iter().collect();
    words
        .par_iter()
        .enumerate()
        .filter_map(|(idx, x)| {
            let mut best: Option<(Word, Word)> = None;
            let mut buf = x.symbols().to_vec();
            let n = buf.len();
            for first in 0..n {
                gen_window_changes(
                    x,
                    &mut buf,
                    first,
                    first,
                    d - 1,
                    p,
                    &set,
                    &mut best,
                );
            }
            best.map(|pair| (idx, pair))
        })
        .min_by_key(|(idx, _)| *idx)
        .map(|(_, (x, y))| {
            let dist = x
                .symbols()
                .iter()
                .zip(y.symbols())
                .filter(|(a, b)| a != b)
                .count();
            (
                x,
                y,
                format!("window pair at Hamming distance {dist} < {d}"),
            )
        })
}

#[allow(clippy::too_many_arguments)]
fn gen_window_changes(
    x: &Word,
    buf: &mut Vec<u32>,
    window_start: usize,
    pos: usize,
    changes_left: usize,
    p: usize,
    set: &HashSet<&Word>,
    best: &mut Option<(Word, Word)>,
) {
    // Change position `pos`, then optionally recurse further right within
    // the window [window_start, window_start + p - 1].
    let original = buf[pos];
    for v in 0..x.q() {
        if v == original {
            continue;
        }
        buf[pos] = v;
        let y = Word::new(x.q(), buf.clone()).expect("valid symbols");
        if set.contains(&y) {
            let pair = if *x < y {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            };
            if best.as_ref().is_none_or(|b| pair < *b) {
                *best = Some(pair);
            }
        }
        if changes_left > 1 {
            let hi = (window_start + p).min(buf.len());
            for next in pos + 1..hi {
                gen_window_changes(x, buf, window_start, next, changes_left - 1, p, set, best);
            }
        }
    }
    buf[pos] = original;
}
