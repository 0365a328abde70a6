//! k-Stirling permutations and ordinary permutation statistics.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::{stirling_count, Limits};
use crate::poly::IntPolynomial;

/// Why a label sequence is not a k-Stirling word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordDefect {
    ZeroMultiplicity,
    ZeroLabel,
    Multiplicity { label: u32, count: usize, k: usize },
    /// `smaller` sits strictly between two copies of `label`.
    Nesting { label: u32, smaller: u32 },
}

impl fmt::Display for WordDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordDefect::ZeroMultiplicity => write!(f, "k must be at least 1"),
            WordDefect::ZeroLabel => write!(f, "labels must be positive"),
            WordDefect::Multiplicity { label, count, k } => {
                write!(f, "label {label} occurs {count} times, expected {k}")
            }
            WordDefect::Nesting { label, smaller } => {
                write!(f, "{smaller} lies between two copies of {label}")
            }
        }
    }
}

/// Checks multiplicities and the Stirling property.
pub fn check_k_stirling(word: &[u32], k: usize) -> std::result::Result<(), WordDefect> {
    if k == 0 {
        return Err(WordDefect::ZeroMultiplicity);
    }
    let mut spans: BTreeMap<u32, (usize, usize, usize)> = BTreeMap::new();
    for (i, &c) in word.iter().enumerate() {
        if c == 0 {
            return Err(WordDefect::ZeroLabel);
        }
        let e = spans.entry(c).or_insert((i, i, 0));
        e.1 = i;
        e.2 += 1;
    }
    for (&label, &(_, _, count)) in &spans {
        if count != k {
            return Err(WordDefect::Multiplicity { label, count, k });
        }
    }
    for (&label, &(first, last, _)) in &spans {
        if let Some(&smaller) = word[first..=last].iter().find(|&&c| c < label) {
            return Err(WordDefect::Nesting { label, smaller });
        }
    }
    Ok(())
}

pub fn is_k_stirling(word: &[u32], k: usize) -> bool {
    check_k_stirling(word, k).is_ok()
}

/// Reads `1221` (one digit per letter) or `10.9.9.10`.
pub fn parse_letters(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    if t.contains('.') {
        let mut out = Vec::new();
        let mut pos = 0;
        for part in t.split('.') {
            let v = part.trim().parse::<u32>().map_err(|e| Error::Parse {
                pos,
                msg: format!("bad letter {part:?}: {e}"),
            })?;
            out.push(v);
            pos += part.len() + 1;
        }
        Ok(out)
    } else {
        t.char_indices()
            .map(|(pos, c)| {
                c.to_digit(10).ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("unexpected character {c:?} in word"),
                })
            })
            .collect()
    }
}

pub fn format_letters(word: &[u32]) -> String {
    if word.iter().all(|&c| c < 10) {
        word.iter().map(|c| c.to_string()).collect()
    } else {
        word.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// A validated k-Stirling permutation over some set of positive labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KStirlingWord {
    k: usize,
    letters: Vec<u32>,
}

impl KStirlingWord {
    pub fn new(letters: Vec<u32>, k: usize) -> Result<Self> {
        check_k_stirling(&letters, k).map_err(Error::InvalidWord)?;
        Ok(KStirlingWord { k, letters })
    }

    pub(crate) fn new_unchecked(letters: Vec<u32>, k: usize) -> Self {
        debug_assert!(is_k_stirling(&letters, k));
        KStirlingWord { k, letters }
    }

    pub fn parse(text: &str, k: usize) -> Result<Self> {
        Self::new(parse_letters(text)?, k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.letters
    }

    /// Sorted distinct labels.
    pub fn labels(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self.letters.to_vec();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// Number of distinct labels.
    pub fn order(&self) -> usize {
        self.letters.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for KStirlingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

fn ap_letters(w: &[u32], k: usize) -> usize {
    if w.len() <= k {
        return 0;
    }
    (0..w.len() - k)
        .filter(|&i| w[i] < w[i + 1] && w[i + 1..=i + k].iter().all(|&c| c == w[i + 1]))
        .count()
}

/// Raw ascent-plateau count; `w` need not be validated.
pub fn ap_of(w: &[u32], k: usize) -> usize {
    ap_letters(w, k)
}

/// Raw left ascent-plateau count.
pub fn lap_of(w: &[u32], k: usize) -> usize {
    let lead = usize::from(w.len() >= k && w[..k].iter().all(|&c| c == w[0]) && w[0] > 0);
    ap_letters(w, k) + lead
}

pub fn stat_ap(w: &KStirlingWord) -> usize {
    ap_letters(&w.letters, w.k)
}

pub fn stat_lap(w: &KStirlingWord) -> usize {
    lap_of(&w.letters, w.k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WordClass {
    pub in_bar: bool,
    pub in_tilde: bool,
    pub starts_with_plateau: bool,
}

/// Class of `w`. The empty word is in none of the classes.
pub fn word_class(w: &KStirlingWord) -> WordClass {
    let l = &w.letters;
    let in_bar = !l.is_empty() && l[..w.k].iter().all(|&c| c == l[0]);
    let in_tilde = l.first().is_some_and(|f| l.iter().all(|c| c >= f));
    // a run of k equal letters is always a longest plateau
    WordClass {
        in_bar,
        in_tilde,
        starts_with_plateau: in_bar,
    }
}

/// Gap-insertion enumeration of `Q_n(k)`: every word of `Q_{n-1}(k)` in
/// order, then each gap of it from right to left.
pub struct KStirlingWords {
    n: usize,
    k: usize,
    digits: Vec<usize>,
    done: bool,
}

impl KStirlingWords {
    fn build(&self) -> Vec<u32> {
        let mut w = Vec::with_capacity(self.n * self.k);
        for (i, &g) in self.digits.iter().enumerate() {
            let at = w.len() - g;
            let block = std::iter::repeat_n(i as u32 + 1, self.k);
            w.splice(at..at, block);
        }
        w
    }
}

impl Iterator for KStirlingWords {
    type Item = KStirlingWord;

    fn next(&mut self) -> Option<KStirlingWord> {
        if self.done {
            return None;
        }
        let w = KStirlingWord::new_unchecked(self.build(), self.k);
        // advance the odometer, last digit fastest
        let mut i = self.n;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.digits[i] < i * self.k {
                self.digits[i] += 1;
                break;
            }
            self.digits[i] = 0;
        }
        Some(w)
    }
}

/// All of `Q_n(k)` over the labels `1..=n`.
pub fn enumerate_k_stirling(n: usize, k: usize, limits: &Limits) -> Result<KStirlingWords> {
    if k == 0 {
        return Err(Error::InvalidWord(WordDefect::ZeroMultiplicity));
    }
    limits.check("k-Stirling permutations", stirling_count(n, k))?;
    Ok(KStirlingWords {
        n,
        k,
        digits: vec![0; n],
        done: false,
    })
}

/// Ordinary permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Precondition(format!(
                    "{one_line:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Permutation { one_line })
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExcCyc {
    pub exc: usize,
    pub cyc: usize,
}

// `p` is 0-based here.
fn exc_cyc_raw(p: &[usize], seen: &mut [bool]) -> ExcCyc {
    let exc = p.iter().enumerate().filter(|&(i, &v)| v > i).count();
    seen.iter_mut().for_each(|s| *s = false);
    let mut cyc = 0;
    for s in 0..p.len() {
        if !seen[s] {
            cyc += 1;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    ExcCyc { exc, cyc }
}

pub fn perm_exc_cyc(p: &Permutation) -> ExcCyc {
    let zero: Vec<usize> = p.one_line.iter().map(|v| v - 1).collect();
    exc_cyc_raw(&zero, &mut vec![false; zero.len()])
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Visits every permutation of `0..n` (0-based), split by first letter
/// across threads, and folds a per-thread table.
fn fold_perms<T, F>(n: usize, init: impl Fn() -> T + Sync, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut T, &[usize]) + Sync,
{
    if n == 0 {
        let mut t = init();
        visit(&mut t, &[]);
        return vec![t];
    }
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut t = init();
            let mut p: Vec<usize> = std::iter::once(first)
                .chain((0..n).filter(|&v| v != first))
                .collect();
            loop {
                visit(&mut t, &p);
                if !next_permutation(&mut p[1..]) {
                    break;
                }
            }
            t
        })
        .collect()
}

/// `sum_{pi in S_n} x^exc(pi) k^(n - cyc(pi))`.
pub fn exc_cyc_polynomial(n: usize, k: usize, limits: &Limits) -> Result<IntPolynomial> {
    limits.check_perm(n)?;
    // table[exc][cyc]
    let tables = fold_perms(
        n,
        || (vec![vec![0u64; n + 1]; n + 1], vec![false; n]),
        |(t, seen), p| {
            let ec = exc_cyc_raw(p, seen);
            t[ec.exc][ec.cyc] += 1;
        },
    );
    let kb = BigInt::from(k);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (t, _) in &tables {
        for (e, row) in t.iter().enumerate() {
            for (c, &cnt) in row.iter().enumerate() {
                if cnt > 0 {
                    let w = num_traits::pow(kb.clone(), n - c);
                    coeffs[e] += w * cnt;
                }
            }
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Classical Eulerian polynomial `sum_{pi in S_n} x^des(pi)`.
pub fn descent_polynomial(n: usize, limits: &Limits) -> Result<IntPolynomial> {
    limits.check_perm(n)?;
    let tables = fold_perms(
        n,
        || vec![0u64; n.max(1)],
        |t, p| {
            let d = p.windows(2).filter(|w| w[0] > w[1]).count();
            t[d] += 1;
        },
    );
    let mut counts = vec![0u64; n.max(1)];
    for t in tables {
        for (c, v) in counts.iter_mut().zip(t) {
            *c += v;
        }
    }
    Ok(IntPolynomial::from_counts(&counts))
}

/// Generating polynomial of `ap` over `Q_n(k)` by direct enumeration.
pub fn ap_polynomial(n: usize, k: usize, limits: &Limits) -> Result<IntPolynomial> {
    let mut counts = vec![0u64; n + 1];
    for w in enumerate_k_stirling(n, k, limits)? {
        counts[stat_ap(&w)] += 1;
    }
    Ok(IntPolynomial::from_counts(&counts))
}

/// `A_n^(k)(1)` as a big integer.
pub fn stirling_count_big(n: usize, k: usize) -> BigInt {
    (0..n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i * k + 1))
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let v = if t.contains(',') {
            t.split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    pos: 0,
                    msg: e.to_string(),
                })?
        } else {
            parse_letters(t)?.into_iter().map(|c| c as usize).collect()
        };
        Permutation::new(v)
    }
}
