//! Traces: words over an independence alphabet, identified up to swaps of
//! adjacent independent letters.
//!
//! An independence alphabet is a finite alphabet with a symmetric,
//! irreflexive relation marking which letters commute. Two words are
//! trace-equivalent when one rewrites to the other by such swaps.
//! [`trace_equiv`] decides this in polynomial time through the classical
//! characterization — equal letter counts and equal projections onto every
//! dependent letter pair — while [`trace_equiv_bfs_oracle`] decides it by
//! brute-force search over swap sequences and exists to keep the fast path
//! honest. A trace evaluates in a monoid once its independent letters are
//! mapped to commuting elements; the value is then the same for every
//! representative of the class.

use core::cmp::Ordering;
use core::fmt::Debug;

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use thiserror::Error;

use crate::monoid::Monoid;
use crate::multiset::Multiset;
use crate::words::{word_concat, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError<L: Debug> {
    /// Independence is irreflexive; no letter commutes with itself.
    #[error("letter {0:?} cannot be declared independent of itself")]
    ReflexivePair(L),
    /// A word or pair used a letter outside the alphabet.
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(L),
    /// Brute-force enumeration over swap sequences refuses long words.
    #[error("word of length {len} exceeds the enumeration bound of {bound}")]
    WordTooLong { len: usize, bound: usize },
    /// Trace evaluation found a letter with no assigned value.
    #[error("no label assigned to letter {0:?}")]
    MissingLabel(L),
    /// Trace evaluation requires independent letters to map to commuting
    /// elements; these two do not.
    #[error("labels of independent letters {0:?} and {1:?} do not commute")]
    NonCommutingLabels(L, L),
}

/// An alphabet together with a symmetric, irreflexive independence
/// relation. Pairs are stored unordered; symmetry is automatic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceAlphabet<L: Ord> {
    letters: BTreeSet<L>,
    independent: BTreeSet<(L, L)>,
}

impl<L: Ord + Clone + Debug> IndependenceAlphabet<L> {
    /// Builds the alphabet, rejecting reflexive pairs and pairs over
    /// unknown letters. Pair order is irrelevant.
    pub fn new<T, P>(letters: T, independent: P) -> Result<Self, TraceError<L>>
    where
        T: IntoIterator<Item = L>,
        P: IntoIterator<Item = (L, L)>,
    {
        let letters: BTreeSet<L> = letters.into_iter().collect();
        let mut canonical = BTreeSet::new();
        for (a, b) in independent {
            if a == b {
                return Err(TraceError::ReflexivePair(a));
            }
            for letter in [&a, &b] {
                if !letters.contains(letter) {
                    return Err(TraceError::UnknownLetter(letter.clone()));
                }
            }
            canonical.insert(if a < b { (a, b) } else { (b, a) });
        }
        Ok(Self { letters, independent: canonical })
    }

    /// The alphabet with an empty independence relation: trace equivalence
    /// degenerates to word equality.
    pub fn discrete<T: IntoIterator<Item = L>>(letters: T) -> Self {
        Self {
            letters: letters.into_iter().collect(),
            independent: BTreeSet::new(),
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = &L> {
        self.letters.iter()
    }

    pub fn contains(&self, letter: &L) -> bool {
        self.letters.contains(letter)
    }

    /// True iff `a` and `b` are distinct and declared independent.
    pub fn independent(&self, a: &L, b: &L) -> bool {
        if a == b {
            return false;
        }
        let key = if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        self.independent.contains(&key)
    }

    /// The declared independent pairs, one per unordered pair.
    pub fn independent_pairs(&self) -> impl Iterator<Item = &(L, L)> {
        self.independent.iter()
    }

    /// All unordered pairs of distinct letters *not* declared independent.
    /// Projections onto these decide trace equivalence.
    pub fn dependent_pairs(&self) -> Vec<(L, L)> {
        let mut pairs = Vec::new();
        for a in &self.letters {
            for b in self.letters.range((
                core::ops::Bound::Excluded(a.clone()),
                core::ops::Bound::Unbounded,
            )) {
                if !self.independent.contains(&(a.clone(), b.clone())) {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
        pairs
    }

    /// Checks that every letter of `word` belongs to the alphabet.
    pub fn check_word(&self, word: &[L]) -> Result<(), TraceError<L>> {
        for letter in word {
            if !self.letters.contains(letter) {
                return Err(TraceError::UnknownLetter(letter.clone()));
            }
        }
        Ok(())
    }
}

fn project<L: PartialEq + Clone>(word: &[L], a: &L, b: &L) -> Vec<L> {
    word.iter()
        .filter(|l| *l == a || *l == b)
        .cloned()
        .collect()
}

/// Decides trace equivalence of `u` and `v` in polynomial time: the words
/// are equivalent iff they have the same letter counts and the same
/// projection onto every dependent pair of distinct letters.
pub fn trace_equiv<L: Ord + Clone + Debug>(
    u: &[L],
    v: &[L],
    alphabet: &IndependenceAlphabet<L>,
) -> Result<bool, TraceError<L>> {
    alphabet.check_word(u)?;
    alphabet.check_word(v)?;
    if u.len() != v.len() {
        return Ok(false);
    }
    let u_counts: Multiset<L> = u.iter().cloned().collect();
    let v_counts: Multiset<L> = v.iter().cloned().collect();
    if u_counts != v_counts {
        return Ok(false);
    }
    for (a, b) in alphabet.dependent_pairs() {
        if project(u, &a, &b) != project(v, &a, &b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ceiling on word length for the brute-force routines [`trace_class`] and
/// [`trace_equiv_bfs_oracle`]; class sizes grow factorially.
pub const TRACE_BFS_BOUND: usize = 10;

fn neighbors<L: Ord + Clone + Debug>(
    word: &[L],
    alphabet: &IndependenceAlphabet<L>,
) -> Vec<Word<L>> {
    let mut out = Vec::new();
    for i in 0..word.len().saturating_sub(1) {
        if alphabet.independent(&word[i], &word[i + 1]) {
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            out.push(swapped);
        }
    }
    out
}

/// Enumerates the whole equivalence class of `word` by breadth-first
/// search over single adjacent swaps of independent letters. Words longer
/// than [`TRACE_BFS_BOUND`] are refused.
pub fn trace_class<L: Ord + Clone + Debug>(
    word: &[L],
    alphabet: &IndependenceAlphabet<L>,
) -> Result<BTreeSet<Word<L>>, TraceError<L>> {
    alphabet.check_word(word)?;
    if word.len() > TRACE_BFS_BOUND {
        return Err(TraceError::WordTooLong {
            len: word.len(),
            bound: TRACE_BFS_BOUND,
        });
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(current) = queue.pop_front() {
        for next in neighbors(&current, alphabet) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Decides trace equivalence by searching swap sequences from `u` toward
/// `v`: the ground-truth oracle for [`trace_equiv`]. Subject to
/// [`TRACE_BFS_BOUND`].
pub fn trace_equiv_bfs_oracle<L: Ord + Clone + Debug>(
    u: &[L],
    v: &[L],
    alphabet: &IndependenceAlphabet<L>,
) -> Result<bool, TraceError<L>> {
    alphabet.check_word(u)?;
    alphabet.check_word(v)?;
    if u.len() != v.len() {
        return Ok(false);
    }
    if u.len() > TRACE_BFS_BOUND {
        return Err(TraceError::WordTooLong {
            len: u.len(),
            bound: TRACE_BFS_BOUND,
        });
    }
    if u == v {
        return Ok(true);
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(u.to_vec());
    queue.push_back(u.to_vec());
    while let Some(current) = queue.pop_front() {
        for next in neighbors(&current, alphabet) {
            if next == v {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// The lexicographically least representative of the trace class of
/// `word`, under the natural order on letters. Computed greedily without
/// enumerating the class, so it is not subject to [`TRACE_BFS_BOUND`]. Two
/// words are trace-equivalent iff their normal forms are equal words.
pub fn normal_form<L: Ord + Clone + Debug>(
    word: &[L],
    alphabet: &IndependenceAlphabet<L>,
) -> Result<Word<L>, TraceError<L>> {
    normal_form_by(word, alphabet, Ord::cmp)
}

/// [`normal_form`] under a caller-supplied total order on letters: the
/// least representative with respect to `compare`.
///
/// Greedy extraction: a letter is available when every letter preceding
/// its first occurrence is independent of it; repeatedly move the least
/// available letter to the output. Availability of the chosen letter is
/// exactly what permits the swaps that bring it to the front.
pub fn normal_form_by<L, C>(
    word: &[L],
    alphabet: &IndependenceAlphabet<L>,
    mut compare: C,
) -> Result<Word<L>, TraceError<L>>
where
    L: Ord + Clone + Debug,
    C: FnMut(&L, &L) -> Ordering,
{
    alphabet.check_word(word)?;
    let mut remaining = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !remaining.is_empty() {
        let mut best: Option<(usize, &L)> = None;
        let mut blocked: BTreeSet<&L> = BTreeSet::new();
        for (pos, letter) in remaining.iter().enumerate() {
            let first_occurrence = !blocked.contains(letter);
            let available = first_occurrence
                && remaining[..pos].iter().all(|prev| alphabet.independent(prev, letter));
            if available && best.is_none_or(|(_, b)| compare(letter, b) == Ordering::Less) {
                best = Some((pos, letter));
            }
            blocked.insert(letter);
        }
        let (pos, _) = best.expect("a nonempty word always has its first letter available");
        out.push(remaining.remove(pos));
    }
    Ok(out)
}

/// Concatenation of traces, computed on representatives. Well defined on
/// classes: swapping within `u` or within `v` stays available inside the
/// concatenation.
pub fn trace_concat<L: Ord + Clone + Debug>(
    u: &[L],
    v: &[L],
    alphabet: &IndependenceAlphabet<L>,
) -> Result<Word<L>, TraceError<L>> {
    alphabet.check_word(u)?;
    alphabet.check_word(v)?;
    Ok(word_concat(u, v))
}

/// The trace monoid over `alphabet`, with classes represented by their
/// normal forms. `op` concatenates and renormalizes; element equality is
/// trace equivalence of the representatives.
///
/// Words handed to this instance must be over the alphabet; foreign
/// letters panic. Validate with [`IndependenceAlphabet::check_word`] first.
pub struct TraceMonoid<'a, L: Ord> {
    pub alphabet: &'a IndependenceAlphabet<L>,
}

impl<L: Ord + Clone + Debug> Monoid for TraceMonoid<'_, L> {
    type Elem = Word<L>;

    fn op(&self, a: &Word<L>, b: &Word<L>) -> Word<L> {
        normal_form(&word_concat(a, b), self.alphabet).expect("words must be over the alphabet")
    }

    fn identity(&self) -> Word<L> {
        Vec::new()
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn elem_eq(&self, a: &Word<L>, b: &Word<L>) -> bool {
        trace_equiv(a, b, self.alphabet).expect("words must be over the alphabet")
    }
}

/// Evaluates the trace of `word` in `monoid` under `assign`, first
/// checking the hypothesis that makes the value representative-independent:
/// the labels of every independent pair must commute in `monoid`. The
/// surrounding monoid itself need not be commutative.
pub fn eval_trace<L, M, F>(
    word: &[L],
    alphabet: &IndependenceAlphabet<L>,
    monoid: &M,
    assign: F,
) -> Result<M::Elem, TraceError<L>>
where
    L: Ord + Clone + Debug,
    M: Monoid,
    F: Fn(&L) -> Option<M::Elem>,
{
    alphabet.check_word(word)?;
    let label = |letter: &L| {
        assign(letter).ok_or_else(|| TraceError::MissingLabel(letter.clone()))
    };
    for (a, b) in alphabet.independent_pairs() {
        let la = label(a)?;
        let lb = label(b)?;
        if !monoid.elem_eq(&monoid.op(&la, &lb), &monoid.op(&lb, &la)) {
            return Err(TraceError::NonCommutingLabels(a.clone(), b.clone()));
        }
    }
    let mut acc = monoid.identity();
    for letter in word {
        acc = monoid.op(&acc, &label(letter)?);
    }
    Ok(acc)
}
