//! Full index-barriers `B(i)`, factor barriers `B(i,j)`, the collapse of a
//! word, and the reach relation on indices below a blocking index `b`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::index_tree::IndexTree;

pub mod bounds;
pub mod properties;

pub use bounds::{barrier_length_bound, max_nested_chain, nested_chain_sum_bound, BarrierLengthBound, ChainBound};
pub use properties::{check_word_properties, EXHAUSTIVE_CAP};

/// A finite sequence of indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Whether `self` occurs as a contiguous factor of `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        is_factor(&self.0, &other.0)
    }
}

pub(crate) fn is_factor(needle: &[usize], hay: &[usize]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// Space-separated letters.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|e| Error::Parse(format!("letter {tok:?}: {e}"))))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Contracts every run of equal consecutive letters to a single letter.
pub fn collapse(word: &[usize]) -> Word {
    let mut out: Vec<usize> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() != Some(&l) {
            out.push(l);
        }
    }
    Word(out)
}

fn expand(t: &IndexTree, i: usize, out: &mut Vec<usize>) {
    match (t.left(i), t.right(i)) {
        (None, None) => out.push(i),
        (Some(l), Some(r)) => {
            out.push(i);
            expand(t, l, out);
            out.push(i);
            expand(t, r, out);
            out.push(i);
            expand(t, l, out);
            out.push(i);
        }
        (Some(c), None) | (None, Some(c)) => {
            debug_assert_eq!(c, i - 1);
            out.push(i);
            expand(t, c, out);
            out.push(i);
        }
    }
}

/// The full index-barrier `B(i)`.
pub fn full_barrier(t: &IndexTree, i: usize) -> Result<Word> {
    if i == 0 || i > t.ell() {
        return Err(Error::IndexOutOfRange { index: i, max: t.ell() });
    }
    let mut out = Vec::new();
    expand(t, i, &mut out);
    Ok(Word(out))
}

/// `B(ell)`, or the empty word for the empty tree.
pub fn root_barrier(t: &IndexTree) -> Word {
    match t.root() {
        Some(r) => full_barrier(t, r).expect("root is in range"),
        None => Word::empty(),
    }
}

/// `|B(i)|` for every index (slot 0 unused), without materializing words.
pub fn barrier_lengths(t: &IndexTree) -> Vec<u64> {
    let mut len = vec![0u64; t.ell() + 1];
    // children carry smaller labels
    for i in 1..=t.ell() {
        len[i] = match (t.left(i), t.right(i)) {
            (None, None) => 1,
            (Some(l), Some(r)) => 2 * len[l] + len[r] + 4,
            (Some(c), None) | (None, Some(c)) => len[c] + 2,
        };
    }
    len
}

/// `B(ell)` together with the first occurrence of every index, from which all
/// factor barriers are sliced.
#[derive(Clone, Debug)]
pub struct BarrierIndex {
    word: Word,
    first: Vec<usize>,
    ell: usize,
}

impl BarrierIndex {
    pub fn new(t: &IndexTree) -> Self {
        let word = root_barrier(t);
        let mut first = vec![usize::MAX; t.ell() + 1];
        for (pos, &l) in word.iter().enumerate() {
            if first[l] == usize::MAX {
                first[l] = pos;
            }
        }
        BarrierIndex { word, first, ell: t.ell() }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `B(ell)`.
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn first_occurrence(&self, i: usize) -> usize {
        self.first[i]
    }

    /// `B(i,j)`: from the first `i` to the first `j` of `B(ell)`, inclusive.
    pub fn factor(&self, i: usize, j: usize) -> Result<&[usize]> {
        for x in [i, j] {
            if x == 0 || x > self.ell {
                return Err(Error::IndexOutOfRange { index: x, max: self.ell });
            }
        }
        if i <= j {
            return Err(Error::BadFactorOrder { i, j });
        }
        Ok(&self.word[self.first[i]..=self.first[j]])
    }

    /// Maximal factors of `B(ell)` avoiding the letter `b`.
    pub fn blocks_avoiding(&self, b: usize) -> impl Iterator<Item = &[usize]> {
        self.word.split(move |&l| l == b).filter(|blk| !blk.is_empty())
    }

    /// Raw reach relation: some factor of `B(ell)` contains `i` and `j` but no `b`.
    pub fn reach_related(&self, b: usize, i: usize, j: usize) -> bool {
        i < b && j < b && self.blocks_avoiding(b).any(|blk| blk.contains(&i) && blk.contains(&j))
    }

    pub fn reach_classes(&self, b: usize) -> Result<ReachClasses> {
        if b == 0 || b > self.ell + 1 {
            return Err(Error::IndexOutOfRange { index: b, max: self.ell + 1 });
        }
        let ground = b.min(self.ell + 1) - 1;
        let mut uf: Vec<usize> = (0..=ground).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let next = uf[y];
                uf[y] = r;
                y = next;
            }
            r
        }
        for blk in self.blocks_avoiding(b) {
            let mut anchor = None;
            for &l in blk.iter().filter(|&&l| l < b) {
                match anchor {
                    None => anchor = Some(l),
                    Some(a) => {
                        let (ra, rl) = (find(&mut uf, a), find(&mut uf, l));
                        uf[ra.max(rl)] = ra.min(rl);
                    }
                }
            }
        }
        let mut class_of = vec![None; ground + 1];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_class = vec![usize::MAX; ground + 1];
        for i in 1..=ground {
            let r = find(&mut uf, i);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[root_class[r]].push(i);
            class_of[i] = Some(root_class[r]);
        }
        Ok(ReachClasses { b, classes, class_of })
    }
}

/// Equivalence classes of the reach relation on `{ i : i < b }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachClasses {
    pub b: usize,
    /// Each class sorted ascending; classes ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<Option<usize>>,
}

impl ReachClasses {
    pub fn class_of(&self, i: usize) -> Option<&[usize]> {
        self.class_of.get(i).copied().flatten().map(|c| self.classes[c].as_slice())
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        match (self.class_of.get(i).copied().flatten(), self.class_of.get(j).copied().flatten()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// `{ j : j ~ i, j > i }`.
    pub fn above(&self, i: usize) -> Result<Vec<usize>> {
        let c = self.class_of(i).ok_or(Error::IndexOutOfRange { index: i, max: self.b.saturating_sub(1) })?;
        Ok(c.iter().copied().filter(|&j| j > i).collect())
    }

    /// `{ j : j ~ i, j < i }`.
    pub fn below(&self, i: usize) -> Result<Vec<usize>> {
        let c = self.class_of(i).ok_or(Error::IndexOutOfRange { index: i, max: self.b.saturating_sub(1) })?;
        Ok(c.iter().copied().filter(|&j| j < i).collect())
    }
}

/// `B(i,j)` for `i > j`.
pub fn factor_barrier(t: &IndexTree, i: usize, j: usize) -> Result<Word> {
    if i <= j {
        return Err(Error::BadFactorOrder { i, j });
    }
    BarrierIndex::new(t).factor(i, j).map(|f| Word(f.to_vec()))
}

pub fn reach_classes(t: &IndexTree, b: usize) -> Result<ReachClasses> {
    BarrierIndex::new(t).reach_classes(b)
}

pub fn reach_above(t: &IndexTree, b: usize, i: usize) -> Result<Vec<usize>> {
    if i >= b {
        return Err(Error::IndexOutOfRange { index: i, max: b.saturating_sub(1) });
    }
    reach_classes(t, b)?.above(i)
}

pub fn reach_below(t: &IndexTree, b: usize, i: usize) -> Result<Vec<usize>> {
    if i >= b {
        return Err(Error::IndexOutOfRange { index: i, max: b.saturating_sub(1) });
    }
    reach_classes(t, b)?.below(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_tree::Alpha;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c7() -> IndexTree {
        IndexTree::build_complete(7).unwrap()
    }

    fn t37() -> IndexTree {
        IndexTree::build_unbalanced(7, Alpha::new(3.0).unwrap()).unwrap()
    }

    #[test]
    fn full_barrier_examples() {
        let b7 = full_barrier(&c7(), 7).unwrap();
        assert_eq!(b7, w("7 6 5 6 4 6 5 6 7 3 2 3 1 3 2 3 7 6 5 6 4 6 5 6 7"));
        assert_eq!(b7.len(), 25);
        for leaf in [1, 2, 4, 5] {
            assert_eq!(full_barrier(&c7(), leaf).unwrap(), Word::new(vec![leaf]));
        }
        let b = full_barrier(&t37(), 7).unwrap();
        assert_eq!(b, w("7 6 5 6 7 4 3 4 2 1 2 4 3 4 7 6 5 6 7"));
        assert_eq!(b.len(), 19);
        assert!(full_barrier(&c7(), 8).is_err());
        assert!(full_barrier(&c7(), 0).is_err());
    }

    #[test]
    fn factor_barrier_examples() {
        let t = c7();
        assert_eq!(factor_barrier(&t, 4, 3).unwrap(), w("4 6 5 6 7 3"));
        assert_eq!(factor_barrier(&t, 6, 1).unwrap(), w("6 5 6 4 6 5 6 7 3 2 3 1"));
        assert_eq!(factor_barrier(&t, 7, 6).unwrap(), w("7 6"));
        assert!(matches!(factor_barrier(&t, 3, 3), Err(Error::BadFactorOrder { .. })));
        assert!(matches!(factor_barrier(&t, 2, 5), Err(Error::BadFactorOrder { .. })));
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse(&[1, 1, 2, 2, 1]), w("1 2 1"));
        assert_eq!(collapse(&[]), Word::empty());
        assert_eq!(collapse(&[7, 7, 6, 6, 6, 7]), w("7 6 7"));
    }

    #[test]
    fn reach_examples() {
        let t = c7();
        let r = reach_classes(&t, 7).unwrap();
        assert_eq!(r.classes, vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(reach_classes(&t, 8).unwrap().classes, vec![(1..=7).collect::<Vec<_>>()]);
        assert_eq!(reach_classes(&t, 4).unwrap().classes, vec![vec![1, 2, 3]]);
        assert_eq!(reach_classes(&t, 1).unwrap().classes, Vec::<Vec<usize>>::new());
        assert!(reach_classes(&t, 0).is_err());
        assert!(reach_classes(&t, 9).is_err());

        assert_eq!(reach_above(&t, 7, 4).unwrap(), vec![5, 6]);
        assert_eq!(reach_above(&t, 7, 6).unwrap(), Vec::<usize>::new());
        assert_eq!(reach_above(&t, 8, 3).unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(reach_below(&t, 7, 6).unwrap(), vec![4, 5]);
        assert!(reach_above(&t, 4, 4).is_err());
    }

    #[test]
    fn length_table_matches_words() {
        for t in [c7(), t37(), IndexTree::build_balanced(12)] {
            let lens = barrier_lengths(&t);
            for i in 1..=t.ell() {
                assert_eq!(lens[i] as usize, full_barrier(&t, i).unwrap().len());
            }
        }
    }

    #[test]
    fn complete_tree_length_recurrence() {
        // L(1) = 1, L(d) = 3 L(d-1) + 4, so L(d) = 3^d - 2. This exceeds
        // ell^{log2 3} for every d >= 2 but stays below (ell + 1)^{log2 3} = 3^d.
        let mut expect = 1u64;
        for d in 1..=10u32 {
            let ell = (1usize << d) - 1;
            let t = IndexTree::build_complete(ell).unwrap();
            let len = barrier_lengths(&t)[ell];
            assert_eq!(len, expect, "depth {d}");
            assert_eq!(len, 3u64.pow(d) - 2);
            assert!((len as f64) <= ((ell + 1) as f64).powf(3f64.log2()) + 1e-9, "depth {d}");
            if d >= 2 {
                assert!((len as f64) > (ell as f64).powf(3f64.log2()), "depth {d}");
            }
            expect = 3 * expect + 4;
        }
    }

    #[test]
    fn word_text_format() {
        let b = full_barrier(&t37(), 4).unwrap();
        assert_eq!(b.to_string(), "4 3 4 2 1 2 4 3 4");
        assert_eq!(b.to_string().parse::<Word>().unwrap(), b);
        assert!("1 x 2".parse::<Word>().is_err());
    }

    proptest! {
        #[test]
        fn collapse_is_idempotent_maximal_subsequence(v in prop::collection::vec(1usize..5, 0..40)) {
            let c = collapse(&v);
            prop_assert_eq!(collapse(&c), c.clone());
            prop_assert!(c.windows(2).all(|p| p[0] != p[1]));
            // c is the sequence of run heads of v
            let mut it = v.iter();
            for l in c.iter() {
                prop_assert!(it.any(|x| x == l));
            }
        }

        #[test]
        fn barrier_length_recurrence(n in 1usize..60) {
            let t = IndexTree::build_balanced(n);
            let len = barrier_lengths(&t);
            for i in 1..=n {
                let expect = match (t.left(i), t.right(i)) {
                    (None, None) => 1,
                    (Some(l), Some(r)) => 2 * len[l] + len[r] + 4,
                    (Some(c), None) | (None, Some(c)) => len[c] + 2,
                };
                prop_assert_eq!(len[i], expect);
            }
        }
    }
}
