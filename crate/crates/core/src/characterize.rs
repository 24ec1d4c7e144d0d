//! Structural decomposition of word pairs by the Hamming distance between
//! their 2-read vectors, plus the ℓ ≥ 3 distance-2 structure.
//!
//! Two distinct words of the same length always decompose into a common
//! prefix `u`, a sequence of swapped alternating blocks `α_t(ab) / α_t(ba)`
//! separated by common infixes `v_i`, and a common suffix `w`. The distance
//! between the 2-read vectors is then `2(s+1) - #{i in [1,s] : v_i = ∅}`
//! where `s+1` is the number of blocks. The decomposition here is canonical:
//! each block takes the greedy-maximal alternating swap, which also forces
//! the boundary multiset condition between adjacent blocks.

use crate::seqcore::{self, Symbol, Word};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharError {
    #[error("the two words are identical")]
    IdenticalWords,
    #[error(transparent)]
    Seq(#[from] seqcore::SeqError),
    #[error("pair is not at 2-read distance four (distance is {0})")]
    NotDistanceFour(usize),
}

/// One swapped block: `x` carries `α_t(ab)`, `y` carries `α_t(ba)`,
/// followed by the common infix `v` (empty for the final block, whose
/// suffix is the structure's `w`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub a: Symbol,
    pub b: Symbol,
    pub t: usize,
    pub v: Word,
}

/// The alternating-block decomposition of a distinct pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStructure {
    pub u: Word,
    /// `s + 1` blocks; the last block's `v` is always empty (absorbed in `w`).
    pub blocks: Vec<Block>,
    pub w: Word,
    pub s: usize,
}

#[derive(Debug, Clone, Serialize)]
struct BlockJson {
    a: Symbol,
    b: Symbol,
    t: usize,
    v: Word,
}

#[derive(Debug, Clone, Serialize)]
struct PairStructureJson {
    u: Word,
    blocks: Vec<BlockJson>,
    w: Word,
    s: usize,
    predicted_d: usize,
}

impl PairStructure {
    /// Reassemble the original pair from the structure.
    pub fn reassemble(&self) -> (Word, Word) {
        let q = self.u.q();
        let mut x = self.u.clone();
        let mut y = self.u.clone();
        for block in &self.blocks {
            let ab = seqcore::alternating(block.t, block.a, block.b, q).expect("a != b");
            let ba = seqcore::alternating(block.t, block.b, block.a, q).expect("a != b");
            x = x.concat(&ab).concat(&block.v);
            y = y.concat(&ba).concat(&block.v);
        }
        (x.concat(&self.w), y.concat(&self.w))
    }

    /// Check the boundary multiset condition for every empty infix:
    /// `{{α_{t_i}(a_i b_i)[t_i], a_{i+1}}} != {{α_{t_i}(b_i a_i)[t_i], b_{i+1}}}`.
    pub fn boundary_condition_holds(&self) -> bool {
        for i in 0..self.s {
            let cur = &self.blocks[i];
            if !cur.v.is_empty() {
                continue;
            }
            let next = &self.blocks[i + 1];
            // Last symbol of α_t(ab) is a for odd t, b for even t.
            let (last_x, last_y) = if cur.t % 2 == 1 {
                (cur.a, cur.b)
            } else {
                (cur.b, cur.a)
            };
            let mut mx = [last_x, next.a];
            let mut my = [last_y, next.b];
            mx.sort_unstable();
            my.sort_unstable();
            if mx == my {
                return false;
            }
        }
        true
    }

    /// JSON form with fixed field order: `{u, blocks:[{a,b,t,v}], w, s,
    /// predicted_d}`; words render in the word text format.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = PairStructureJson {
            u: self.u.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson {
                    a: b.a,
                    b: b.b,
                    t: b.t,
                    v: b.v.clone(),
                })
                .collect(),
            w: self.w.clone(),
            s: self.s,
            predicted_d: predicted_distance(self),
        };
        serde_json::to_value(doc).expect("serializable")
    }
}

/// Canonical decomposition of a distinct pair: peel the longest common
/// prefix, read off the maximal alternating swap block, repeat on the rest.
pub fn decompose_pair(x: &Word, y: &Word) -> Result<PairStructure, CharError> {
    seqcore::check_same_shape(x, y)?;
    if x == y {
        return Err(CharError::IdenticalWords);
    }
    let xs = x.symbols();
    let ys = y.symbols();
    let n = xs.len();
    let q = x.q();

    let mut pos = 0usize;
    while xs[pos] == ys[pos] {
        pos += 1;
    }
    let u = Word::new(q, xs[..pos].to_vec()).expect("valid symbols");

    let mut blocks: Vec<Block> = Vec::new();
    loop {
        // A swap block starts at `pos`: x follows α(ab), y follows α(ba).
        let a = xs[pos];
        let b = ys[pos];
        debug_assert_ne!(a, b);
        let mut t = 1usize;
        while pos + t < n {
            let expect_x = if t.is_multiple_of(2) { a } else { b };
            let expect_y = if t.is_multiple_of(2) { b } else { a };
            if xs[pos + t] == expect_x && ys[pos + t] == expect_y {
                t += 1;
            } else {
                break;
            }
        }
        pos += t;
        // Common infix up to the next difference (or the end).
        let infix_start = pos;
        while pos < n && xs[pos] == ys[pos] {
            pos += 1;
        }
        if pos == n {
            // Everything after the final block is the common suffix w.
            blocks.push(Block {
                a,
                b,
                t,
                v: Word::empty(q),
            });
            let w = Word::new(q, xs[infix_start..].to_vec()).expect("valid symbols");
            let s = blocks.len() - 1;
            return Ok(PairStructure { u, blocks, w, s });
        }
        let v = Word::new(q, xs[infix_start..pos].to_vec()).expect("valid symbols");
        blocks.push(Block { a, b, t, v });
    }
}

/// Distance predicted by a structure: `2(s+1) - #{i in [1,s] : v_i = ∅}`.
pub fn predicted_distance(ps: &PairStructure) -> usize {
    let empties = ps.blocks[..ps.s].iter().filter(|b| b.v.is_empty()).count();
    2 * (ps.s + 1) - empties
}

/// The two shapes a 2-read distance-4 pair can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum D4Case {
    /// Two blocks separated by a non-empty common infix.
    CaseA,
    /// Three adjacent blocks, both boundary conditions holding.
    CaseB,
}

/// A classified distance-4 pair with its witnessing structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D4Shape {
    pub tag: D4Case,
    pub structure: PairStructure,
}

/// Classify a pair at 2-read distance exactly 4 as Case A or Case B.
/// Derived from the pair structure, so it can never disagree with
/// [`decompose_pair`].
pub fn classify_d4(x: &Word, y: &Word) -> Result<D4Shape, CharError> {
    let ps = decompose_pair(x, y)?;
    let d = predicted_distance(&ps);
    if d != 4 {
        return Err(CharError::NotDistanceFour(d));
    }
    let tag = if ps.s == 1 {
        debug_assert!(!ps.blocks[0].v.is_empty());
        D4Case::CaseA
    } else {
        debug_assert_eq!(ps.s, 2);
        D4Case::CaseB
    };
    Ok(D4Shape { tag, structure: ps })
}

/// The ℓ ≥ 3 distance-2 structure: `x = (u, (a,b,v_1), .., (a,b,v_t), a, b, w)`
/// and `y` the same with each `(a,b)` swapped, every `v_j` of length ℓ−2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L3Structure {
    pub u: Word,
    pub a: Symbol,
    pub b: Symbol,
    /// The `t` common gaps of length ℓ−2 between consecutive swapped pairs.
    pub gaps: Vec<Word>,
    pub w: Word,
    /// Number of swapped `(a,b)` pairs: `t + 1`. Equals `Inv(x) - Inv(y)`
    /// when `a > b`.
    pub swap_count: usize,
}

/// For ℓ ≥ 3: if the ℓ-read distance of the pair is at most 2 (hence
/// exactly 2), return the witnessing structure; otherwise `None`.
pub fn l3_confusable(x: &Word, y: &Word, ell: usize) -> Result<Option<L3Structure>, CharError> {
    if ell < 3 {
        return Err(seqcore::SeqError::InvalidReadLength { got: ell, min: 3 }.into());
    }
    seqcore::check_same_shape(x, y)?;
    if x == y {
        return Err(CharError::IdenticalWords);
    }
    if seqcore::read_distance(x, y, ell)? > 2 {
        return Ok(None);
    }
    // Distance <= 2 guarantees the shape; extract it from the differing
    // positions, which are exactly the swapped pairs at stride ℓ.
    let xs = x.symbols();
    let ys = y.symbols();
    let n = xs.len();
    let q = x.q();
    let first = (0..n).find(|&i| xs[i] != ys[i]).expect("distinct");
    let a = xs[first];
    let b = ys[first];
    let mut pairs = 0usize;
    let mut gaps = Vec::new();
    let mut pos = first;
    loop {
        assert!(pos + 1 < n, "confusable pair does not match the ℓ ≥ 3 shape");
        assert_eq!(xs[pos], a, "confusable pair does not match the ℓ ≥ 3 shape");
        assert_eq!(ys[pos], b, "confusable pair does not match the ℓ ≥ 3 shape");
        assert_eq!(xs[pos + 1], b, "confusable pair does not match the ℓ ≥ 3 shape");
        assert_eq!(ys[pos + 1], a, "confusable pair does not match the ℓ ≥ 3 shape");
        pairs += 1;
        let next = pos + ell;
        if next + 1 < n && xs[next] != ys[next] {
            let gap = Word::new(q, xs[pos + 2..next].to_vec()).expect("valid symbols");
            assert_eq!(xs[pos + 2..next], ys[pos + 2..next], "gap must be common");
            gaps.push(gap);
            pos = next;
        } else {
            break;
        }
    }
    let w = Word::new(q, xs[pos + 2..].to_vec()).expect("valid symbols");
    assert_eq!(
        xs[pos + 2..],
        ys[pos + 2..],
        "suffix after the last swapped pair must be common"
    );
    let u = Word::new(q, xs[..first].to_vec()).expect("valid symbols");
    Ok(Some(L3Structure {
        u,
        a,
        b,
        gaps,
        w,
        swap_count: pairs,
    }))
}

/// Which transform [`window_span`] applies before comparing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Identity,
    Indicator,
}

/// Span of the differing window of a (possibly transformed) distinct pair:
/// `(largest differing index) - (smallest differing index) + 1`.
pub fn window_span(x: &Word, y: &Word, transform: Transform) -> Result<usize, CharError> {
    seqcore::check_same_shape(x, y)?;
    let (tx, ty) = match transform {
        Transform::Identity => (x.clone(), y.clone()),
        Transform::Indicator => (seqcore::indicator(x), seqcore::indicator(y)),
    };
    let diffs: Vec<usize> = tx
        .symbols()
        .iter()
        .zip(ty.symbols())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i)
        .collect();
    match (diffs.first(), diffs.last()) {
        (Some(&lo), Some(&hi)) => Ok(hi - lo + 1),
        _ => Err(CharError::IdenticalWords),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{indicator, read_distance};

    fn w(q: Symbol, symbols: &[Symbol]) -> Word {
        Word::new(q, symbols.to_vec()).unwrap()
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
    fn decompose_examples() {
        let ps = decompose_pair(&w(2, &[0, 0, 1, 1]), &w(2, &[0, 1, 0, 1])).unwrap();
        assert_eq!(ps.u, w(2, &[0]));
        assert_eq!(ps.s, 0);
        assert_eq!(ps.blocks.len(), 1);
        assert_eq!((ps.blocks[0].a, ps.blocks[0].b, ps.blocks[0].t), (0, 1, 2));
        assert_eq!(ps.w, w(2, &[1]));
        assert_eq!(predicted_distance(&ps), 2);

        let ps = decompose_pair(&w(2, &[0, 0]), &w(2, &[1, 1])).unwrap();
        assert_eq!(ps.s, 1);
        assert!(ps.u.is_empty() && ps.w.is_empty());
        assert_eq!((ps.blocks[0].t, ps.blocks[1].t), (1, 1));
        assert!(ps.blocks[0].v.is_empty());
        assert_eq!(predicted_distance(&ps), 3);

        let ps = decompose_pair(&w(2, &[0, 0, 0]), &w(2, &[1, 0, 1])).unwrap();
        assert_eq!(ps.s, 1);
        assert_eq!(ps.blocks[0].v, w(2, &[0]));
        assert_eq!(predicted_distance(&ps), 4);

        assert_eq!(
            decompose_pair(&w(2, &[0, 1]), &w(2, &[0, 1])),
            Err(CharError::IdenticalWords)
        );
    }

    #[test]
    fn predicted_distance_cases() {
        // s=0 -> 2; s=1 with empty/non-empty infix -> 3/4; s=2 both empty -> 4.
        let d = |x: &Word, y: &Word| predicted_distance(&decompose_pair(x, y).unwrap());
        assert_eq!(d(&w(2, &[0, 1]), &w(2, &[1, 0])), 2);
        assert_eq!(d(&w(2, &[0, 0]), &w(2, &[1, 1])), 3);
        assert_eq!(d(&w(2, &[0, 0, 0]), &w(2, &[1, 0, 1])), 4);
        assert_eq!(d(&w(2, &[0, 0, 0]), &w(2, &[1, 1, 1])), 4);
    }

    #[test]
    fn reassembly_and_boundary_hold_exhaustively() {
        for q in [2u32, 3] {
            let max_n = if q == 2 { 7 } else { 5 };
            for n in 1..=max_n {
                let words = all_words(q, n);
                for x in &words {
                    for y in &words {
                        if x == y {
                            continue;
                        }
                        let ps = decompose_pair(x, y).unwrap();
                        assert_eq!(ps.blocks.len(), ps.s + 1);
                        assert!(ps.blocks.last().unwrap().v.is_empty());
                        let (rx, ry) = ps.reassemble();
                        assert_eq!((&rx, &ry), (x, y));
                        assert!(ps.boundary_condition_holds(), "pair {x} {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn characterization_matches_read_distance_smoke() {
        // Small smoke version of the exhaustive acceptance run.
        for q in [2u32, 3] {
            for n in 1..=5 {
                let words = all_words(q, n);
                for x in &words {
                    for y in &words {
                        if x == y {
                            continue;
                        }
                        let ps = decompose_pair(x, y).unwrap();
                        assert_eq!(
                            predicted_distance(&ps),
                            read_distance(x, y, 2).unwrap(),
                            "pair {x} {y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let shape = classify_d4(&w(2, &[0, 0, 0]), &w(2, &[1, 0, 1])).unwrap();
        assert_eq!(shape.tag, D4Case::CaseA);
        let shape = classify_d4(&w(2, &[0, 0, 0]), &w(2, &[1, 1, 1])).unwrap();
        assert_eq!(shape.tag, D4Case::CaseB);
        assert_eq!(
            classify_d4(&w(2, &[0, 1]), &w(2, &[1, 0])),
            Err(CharError::NotDistanceFour(2))
        );
    }

    #[test]
    fn l3_examples() {
        for a in 0..3u32 {
            let x = w(3, &[0, 1, a, 0, 1]);
            let y = w(3, &[1, 0, a, 1, 0]);
            let st = l3_confusable(&x, &y, 3).unwrap().unwrap();
            assert_eq!(st.swap_count, 2);
            assert_eq!(st.gaps, vec![w(3, &[a])]);
            assert_eq!((st.a, st.b), (0, 1));
        }
        assert_eq!(
            l3_confusable(&w(2, &[0, 0, 0]), &w(2, &[1, 1, 1]), 3).unwrap(),
            None
        );
        assert!(matches!(
            l3_confusable(&w(2, &[0, 1]), &w(2, &[1, 0]), 2),
            Err(CharError::Seq(_))
        ));
    }

    #[test]
    fn l3_swap_count_equals_inversion_difference() {
        use crate::seqcore::inversion_number;
        for q in [2u32, 3] {
            for n in 1..=6 {
                let words = all_words(q, n);
                for x in &words {
                    for y in &words {
                        if x == y {
                            continue;
                        }
                        if let Some(st) = l3_confusable(x, y, 3).unwrap() {
                            let (hi, lo) = if st.a > st.b { (x, y) } else { (y, x) };
                            assert_eq!(
                                inversion_number(hi) - inversion_number(lo),
                                st.swap_count as u64
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn window_span_examples() {
        assert_eq!(
            window_span(&w(2, &[0, 1, 0, 0]), &w(2, &[0, 0, 1, 0]), Transform::Identity).unwrap(),
            2
        );
        assert_eq!(
            window_span(&w(2, &[0, 1]), &w(2, &[0, 0]), Transform::Identity).unwrap(),
            1
        );
        assert_eq!(
            window_span(&w(2, &[0, 1]), &w(2, &[0, 1]), Transform::Identity),
            Err(CharError::IdenticalWords)
        );
    }

    proptest::proptest! {
        #[test]
        fn prop_decompose_random_pairs(
            q in 2u32..=4,
            xs in proptest::collection::vec(0u32..4, 1..40),
            ys in proptest::collection::vec(0u32..4, 1..40),
        ) {
            let n = xs.len().min(ys.len());
            let x = Word::new(q, xs[..n].iter().map(|s| s % q).collect()).unwrap();
            let y = Word::new(q, ys[..n].iter().map(|s| s % q).collect()).unwrap();
            proptest::prop_assume!(x != y);
            let ps = decompose_pair(&x, &y).unwrap();
            proptest::prop_assert_eq!(ps.reassemble(), (x.clone(), y.clone()));
            proptest::prop_assert!(ps.boundary_condition_holds());
            proptest::prop_assert_eq!(
                predicted_distance(&ps),
                read_distance(&x, &y, 2).unwrap()
            );
        }
    }

    #[test]
    fn indicator_window_is_bounded_by_run_cap() {
        // For x,y in ALL(n, (P-1)/2) at 2-read distance <= 3 the indicator
        // pair differs inside a window whose extreme indices are at most
        // P-1 apart (so the span is at most P).
        let p = 5usize;
        let cap = (p - 1) / 2;
        for q in [2u32, 3] {
            for n in 2..=6 {
                let words = all_words(q, n);
                for x in &words {
                    if !crate::seqcore::in_all(x, cap) {
                        continue;
                    }
                    for y in &words {
                        if x == y || !crate::seqcore::in_all(y, cap) {
                            continue;
                        }
                        if read_distance(x, y, 2).unwrap() <= 3 {
                            // The indicator transform is a bijection, so the
                            // transformed pair is still distinct.
                            assert_ne!(indicator(x), indicator(y));
                            let span = window_span(x, y, Transform::Indicator).unwrap();
                            assert!(span <= p, "pair {x} {y}: span {span} > {p}");
                        }
                    }
                }
            }
        }
    }
}
