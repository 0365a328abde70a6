//! Bijections between k-Stirling permutations and forests or trees.

use crate::error::{Error, Result};
use crate::forest::{validate_forest, validate_tree_alone, Forest, LabeledTree};
use crate::stirling::KStirlingWord;

fn xi_raw(w: &[u32], k: usize) -> Vec<LabeledTree> {
    // right-to-left minima, strict
    let mut cuts = Vec::new();
    let mut min = u32::MAX;
    for i in (0..w.len()).rev() {
        if w[i] < min {
            min = w[i];
            cuts.push(i);
        }
    }
    cuts.reverse();
    let mut trees = Vec::with_capacity(cuts.len());
    let mut start = 0;
    for &end in &cuts {
        trees.push(block_tree(&w[start..=end], w[end], k));
        start = end + 1;
    }
    trees
}

// `seg` is mu_1 b mu_2 b ... mu_k b
fn block_tree(seg: &[u32], b: u32, k: usize) -> LabeledTree {
    let parts: Vec<&[u32]> = seg.split(|&c| c == b).collect();
    // splitting on k copies with the last at the end leaves k+1 pieces
    assert_eq!(parts.len(), k + 1, "block of {b} does not hold k copies");
    debug_assert!(parts[k].is_empty());
    if parts[..k].iter().all(|p| p.is_empty()) {
        return LabeledTree::leaf(b);
    }
    LabeledTree::node(b, parts[..k].iter().map(|p| xi_raw(p, k)).collect())
}

/// Splits at right-to-left minima; `lap` becomes `lleaf`.
pub fn xi(w: &KStirlingWord) -> Forest {
    let f = Forest {
        k: w.k(),
        trees: xi_raw(w.letters(), w.k()),
    };
    debug_assert!(validate_forest(&f).is_empty());
    f
}

fn xi_inv_into(trees: &[LabeledTree], k: usize, out: &mut Vec<u32>) {
    for t in trees {
        match &t.slots {
            None => out.extend(std::iter::repeat_n(t.label, k)),
            Some(slots) => {
                for s in slots {
                    xi_inv_into(s, k, out);
                    out.push(t.label);
                }
            }
        }
    }
}

fn checked(f: &Forest) -> Result<()> {
    let v = validate_forest(f);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidForest(v))
    }
}

pub fn xi_inv(f: &Forest) -> Result<KStirlingWord> {
    checked(f)?;
    let mut out = Vec::with_capacity(f.size() * f.k);
    xi_inv_into(&f.trees, f.k, &mut out);
    Ok(KStirlingWord::new_unchecked(out, f.k))
}

fn chi_raw(w: &[u32], k: usize) -> LabeledTree {
    let a = w[0];
    let parts: Vec<&[u32]> = w[1..].split(|&c| c == a).collect();
    assert_eq!(parts.len(), k, "word does not hold k copies of {a}");
    if parts.iter().all(|p| p.is_empty()) {
        return LabeledTree::leaf(a);
    }
    let slots: Vec<Vec<LabeledTree>> = parts.iter().map(|p| xi_raw(p, k)).collect();
    // xi already emits increasing roots, so no re-sort is needed
    debug_assert!(slots
        .iter()
        .all(|s| s.windows(2).all(|x| x[0].label < x[1].label)));
    LabeledTree::node(a, slots)
}

/// Word starting with its least letter to one tree; `ap` becomes `lleaf`.
pub fn chi(w: &KStirlingWord) -> Result<LabeledTree> {
    let l = w.letters();
    match l.first() {
        Some(&a) if l.iter().all(|&c| c >= a) => Ok(chi_raw(l, w.k())),
        Some(_) => Err(Error::Precondition(format!(
            "chi needs a word starting with its least letter, got {w}"
        ))),
        None => Err(Error::Precondition("chi needs a nonempty word".into())),
    }
}

fn chi_inv_into(t: &LabeledTree, k: usize, out: &mut Vec<u32>) {
    match &t.slots {
        None => out.extend(std::iter::repeat_n(t.label, k)),
        Some(slots) => {
            for s in slots {
                out.push(t.label);
                xi_inv_into(s, k, out);
            }
        }
    }
}

pub fn chi_inv(t: &LabeledTree, k: usize) -> Result<KStirlingWord> {
    let v = validate_tree_alone(t, k);
    if !v.is_empty() {
        return Err(Error::InvalidForest(v));
    }
    let mut out = Vec::with_capacity(t.size() * k);
    chi_inv_into(t, k, &mut out);
    Ok(KStirlingWord::new_unchecked(out, k))
}

/// Splits at left-to-right minima; `ap` becomes `lleaf - si`.
pub fn zeta(w: &KStirlingWord) -> Forest {
    let l = w.letters();
    let k = w.k();
    let mut starts = Vec::new();
    let mut min = u32::MAX;
    for (i, &c) in l.iter().enumerate() {
        if c < min {
            min = c;
            starts.push(i);
        }
    }
    let mut trees = Vec::with_capacity(starts.len());
    for (idx, &s) in starts.iter().enumerate() {
        let e = starts.get(idx + 1).copied().unwrap_or(l.len());
        let seg = &l[s..e];
        if seg.iter().all(|&c| c == seg[0]) {
            trees.push(LabeledTree::leaf(seg[0]));
        } else {
            trees.push(chi_raw(seg, k));
        }
    }
    trees.reverse();
    let f = Forest { k, trees };
    debug_assert!(validate_forest(&f).is_empty());
    f
}

pub fn zeta_inv(f: &Forest) -> Result<KStirlingWord> {
    checked(f)?;
    let mut out = Vec::with_capacity(f.size() * f.k);
    for t in f.trees.iter().rev() {
        chi_inv_into(t, f.k, &mut out);
    }
    Ok(KStirlingWord::new_unchecked(out, f.k))
}
