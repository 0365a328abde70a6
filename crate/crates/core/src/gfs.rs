//! The generalized Foata–Strehl involutions on trees and forests, and the
//! marked-forest correspondences built on them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{
    is_bar, label_sets, parse_forest, removable_labels, shape_stats, tree_classes, Forest,
    LabeledTree, NodeClass,
};

/// What `phi` did at the requested label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhiAction {
    /// An old internal node handed its slots up and became a leaf.
    Collapsed,
    /// A young leaf took the larger grand-sibling subtrees as its slots.
    Expanded,
    /// The label is a root, an old leaf or a young internal node.
    Fixed,
}

/// `Phi_x` on one tree.
pub fn phi(t: &LabeledTree, x: u32) -> Result<(LabeledTree, PhiAction)> {
    let path = t.path_to(x).ok_or(Error::UnknownLabel(x))?;
    let Some((&(j0, pos), up)) = path.split_last() else {
        return Ok((t.clone(), PhiAction::Fixed));
    };
    let gp = t.at(up);
    let old = gp.children().map(|c| c.label).max() == Some(x);
    let v_leaf = gp.slots.as_ref().unwrap()[j0][pos].is_leaf();
    if old == v_leaf {
        return Ok((t.clone(), PhiAction::Fixed));
    }

    let mut out = t.clone();
    let gp = out.at_mut(up);
    let slots = gp.slots.as_mut().unwrap();
    if old {
        let moved = slots[j0][pos].slots.take().unwrap();
        for (dst, src) in slots.iter_mut().zip(moved) {
            dst.extend(src);
            assert!(
                dst.windows(2).all(|w| w[0].label < w[1].label),
                "collapse of {x} broke slot order"
            );
        }
        Ok((out, PhiAction::Collapsed))
    } else {
        let mut taken = Vec::with_capacity(slots.len());
        for slot in slots.iter_mut() {
            let cut = slot.partition_point(|c| c.label <= x);
            taken.push(slot.split_off(cut));
        }
        // relative order is kept; a re-sort would be a no-op
        assert!(
            taken
                .iter()
                .all(|s| s.windows(2).all(|w| w[0].label < w[1].label)),
            "expansion of {x} produced an unsorted slot"
        );
        assert!(taken.iter().any(|s| !s.is_empty()), "young leaf {x} has no larger grand sibling");
        slots[j0][pos].slots = Some(taken);
        Ok((out, PhiAction::Expanded))
    }
}

pub fn phi_tree(t: &LabeledTree, x: u32) -> Result<LabeledTree> {
    phi(t, x).map(|(t, _)| t)
}

/// `Phi_S` applied tree by tree.
pub fn phi_set(f: &Forest, s: &BTreeSet<u32>) -> Result<Forest> {
    let mut out = f.clone();
    for &x in s {
        let i = out.tree_of(x).ok_or(Error::UnknownLabel(x))?;
        out.trees[i] = phi_tree(&out.trees[i], x)?;
    }
    Ok(out)
}

/// Labels where `phi` would act: old internal nodes and young leaves.
pub fn acting_labels(t: &LabeledTree) -> BTreeSet<u32> {
    tree_classes(t)
        .into_iter()
        .filter(|(_, c)| matches!(c, NodeClass::OldInternal | NodeClass::YoungLeaf))
        .map(|(l, _)| l)
        .collect()
}

fn young_leaves(t: &LabeledTree) -> BTreeSet<u32> {
    tree_classes(t)
        .into_iter()
        .filter(|(_, c)| *c == NodeClass::YoungLeaf)
        .map(|(l, _)| l)
        .collect()
}

/// The orbit member without young leaves: `phi` at every young leaf.
pub fn orbit_representative(t: &LabeledTree) -> LabeledTree {
    young_leaves(t)
        .into_iter()
        .fold(t.clone(), |acc, x| phi_tree(&acc, x).expect("label present"))
}

/// Same representative reached one young leaf at a time.
pub fn orbit_representative_fixpoint(t: &LabeledTree) -> LabeledTree {
    let mut cur = t.clone();
    while let Some(&x) = young_leaves(&cur).iter().next() {
        cur = phi_tree(&cur, x).expect("label present");
    }
    cur
}

/// Closure of `{t}` under every `phi_x`, sorted.
pub fn orbit(t: &LabeledTree) -> BTreeSet<LabeledTree> {
    let labels = t.labels();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([t.clone()]);
    seen.insert(t.clone());
    while let Some(cur) = queue.pop_front() {
        for &x in &labels {
            let next = phi_tree(&cur, x).expect("label present");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// A forest with a set of marked labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkedForest {
    pub forest: Forest,
    pub marks: BTreeSet<u32>,
}

impl MarkedForest {
    pub fn new(forest: Forest, marks: impl IntoIterator<Item = u32>) -> Self {
        MarkedForest {
            forest,
            marks: marks.into_iter().collect(),
        }
    }

    pub fn unmarked(forest: Forest) -> Self {
        MarkedForest {
            forest,
            marks: BTreeSet::new(),
        }
    }

    /// `<forest> | {1,3}`; a bare forest has no marks.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let (ftext, mtext) = match text.split_once('|') {
            Some((a, b)) => (a, Some(b)),
            None => (text, None),
        };
        let forest = parse_forest(ftext, k)?;
        let marks = match mtext {
            None => BTreeSet::new(),
            Some(m) => {
                let m = m.trim();
                let inner = m
                    .strip_prefix('{')
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse {
                        pos: ftext.len() + 1,
                        msg: "marks must be written as {a,b,...}".into(),
                    })?;
                parse_label_set(inner)?
            }
        };
        let labels = forest.labels();
        if let Some(&x) = marks.iter().find(|x| labels.binary_search(x).is_err()) {
            return Err(Error::UnknownLabel(x));
        }
        Ok(MarkedForest { forest, marks })
    }
}

/// Comma-separated labels; blank means empty.
pub fn parse_label_set(text: &str) -> Result<BTreeSet<u32>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(BTreeSet::new());
    }
    t.split(',')
        .map(|p| {
            p.trim().parse::<u32>().map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("bad label {p:?}: {e}"),
            })
        })
        .collect()
}

pub fn format_label_set(s: &BTreeSet<u32>) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for MarkedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.forest, format_label_set(&self.marks))
    }
}

/// `yleaf = 0` and `S` inside `Oint ∪ Si*`.
pub fn is_x_type(mf: &MarkedForest) -> bool {
    let ls = label_sets(&mf.forest);
    ls.yleaf.is_empty() && mf.marks.iter().all(|x| ls.oint.contains(x) || ls.si_star.contains(x))
}

/// `S` inside `Si*`.
pub fn is_y_type(mf: &MarkedForest) -> bool {
    let ls = label_sets(&mf.forest);
    mf.marks.is_subset(&ls.si_star)
}

fn is_star(f: &Forest) -> bool {
    shape_stats(f).yleaf == 0 && removable_labels(f).is_empty()
}

pub fn is_x_bar(mf: &MarkedForest) -> bool {
    let f = &mf.forest;
    if !(is_bar(f) && is_star(f)) {
        return false;
    }
    let ls = label_sets(f);
    mf.marks
        .iter()
        .all(|x| ls.oint_star.contains(x) || ls.si_star.contains(x))
}

pub fn is_x_hat(mf: &MarkedForest) -> bool {
    let f = &mf.forest;
    !f.is_empty() && !is_bar(f) && is_star(f) && is_x_type(mf)
}

pub fn is_y_bar(mf: &MarkedForest) -> bool {
    is_bar(&mf.forest) && removable_labels(&mf.forest).is_empty() && is_y_type(mf)
}

pub fn is_y_hat(mf: &MarkedForest) -> bool {
    let f = &mf.forest;
    !f.is_empty() && !is_bar(f) && removable_labels(f).is_empty() && is_y_type(mf)
}

/// `(Phi_{S ∩ Oint}(F), S ∩ Si*)`.
pub fn theta(mf: &MarkedForest) -> Result<MarkedForest> {
    if !is_x_type(mf) {
        return Err(Error::Precondition(format!(
            "theta needs yleaf = 0 and marks inside Oint ∪ Si*: {mf}"
        )));
    }
    let ls = label_sets(&mf.forest);
    let s1: BTreeSet<u32> = mf.marks.intersection(&ls.oint).copied().collect();
    let s2: BTreeSet<u32> = mf.marks.intersection(&ls.si_star).copied().collect();
    Ok(MarkedForest {
        forest: phi_set(&mf.forest, &s1)?,
        marks: s2,
    })
}

/// `(Phi_{Yleaf(F)}(F), S ∪ Yleaf(F))`.
pub fn theta_prime(mf: &MarkedForest) -> Result<MarkedForest> {
    if !is_y_type(mf) {
        return Err(Error::Precondition(format!(
            "theta' needs marks inside Si*: {mf}"
        )));
    }
    let yl = label_sets(&mf.forest).yleaf;
    Ok(MarkedForest {
        forest: phi_set(&mf.forest, &yl)?,
        marks: mf.marks.union(&yl).copied().collect(),
    })
}

/// Every subset of `items`, smallest bitmask first.
pub fn subsets(items: &BTreeSet<u32>) -> Vec<BTreeSet<u32>> {
    let v: Vec<u32> = items.iter().copied().collect();
    (0..1u64 << v.len())
        .map(|m| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{forest_stats, parse_tree, tree_classes};
    use crate::limits::Limits;

    fn t(s: &str, k: usize) -> LabeledTree {
        parse_tree(s, k).unwrap()
    }

    fn mf(s: &str, k: usize) -> MarkedForest {
        MarkedForest::parse(s, k).unwrap()
    }

    #[test]
    fn phi_examples() {
        let a = t("1[3,4[5,10;6[;9;],8;7];;2]", 3);
        let b = t("1[3,4,5,10;6[;9;],8;2,7]", 3);
        let (img, act) = phi(&a, 4).unwrap();
        assert_eq!(img, b);
        assert_eq!(act, PhiAction::Collapsed);
        let (back, act) = phi(&b, 4).unwrap();
        assert_eq!(back, a);
        assert_eq!(act, PhiAction::Expanded);
        assert_eq!(phi(&a, 1).unwrap(), (a.clone(), PhiAction::Fixed));
        assert_eq!(phi(&a, 42), Err(Error::UnknownLabel(42)));
    }

    #[test]
    fn phi_set_example() {
        let f = mf("1[;3[;7;];2] 4[;;5[;6,8;]] 9", 3).forest;
        let s = BTreeSet::from([3, 5]);
        assert_eq!(phi_set(&f, &s).unwrap().to_string(), "1[;3,7;2] 4[;6,8;5] 9");
        assert_eq!(phi_set(&f, &BTreeSet::new()).unwrap(), f);
        let g = mf("1[2[3;];]", 2).forest;
        assert_eq!(
            phi_set(&g, &BTreeSet::from([2])).unwrap().to_string(),
            "1[2,3;]"
        );
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(&t("1[;2,3]", 2));
        let want: BTreeSet<LabeledTree> = [t("1[;2,3]", 2), t("1[;2[;3]]", 2)].into();
        assert_eq!(o, want);
        assert_eq!(orbit_representative(&t("1[;2,3]", 2)), t("1[;2[;3]]", 2));
        let rep = orbit_representative(&t("1[2;3]", 2));
        assert_eq!(rep, t("1[2[;3];]", 2));
        assert_eq!(orbit(&rep).len(), 2);
        let fixed = t("1[2[3;];]", 2);
        assert_eq!(orbit_representative(&fixed), fixed);
    }

    #[test]
    fn theta_examples() {
        let x = mf("1[2[3;];] | {2}", 2);
        let y = theta(&x).unwrap();
        assert_eq!(y.to_string(), "1[2,3;] | {}");
        assert_eq!(theta_prime(&y).unwrap(), x);
        let plain = mf("1[2[3;];]", 2);
        assert_eq!(theta(&plain).unwrap(), plain);
        assert!(theta(&mf("1[;2,3] | {}", 2)).is_err());
        assert!(theta_prime(&mf("1 2 | {2}", 2)).is_err());
    }

    #[test]
    fn marked_text() {
        let m = mf("1 2[;5;] 3 | {1, 3}", 3);
        assert_eq!(m.to_string(), "1 2[;5;] 3 | {1,3}");
        assert_eq!(mf(&m.to_string(), 3), m);
        assert!(MarkedForest::parse("1 2 | {9}", 2).is_err());
        assert!(MarkedForest::parse("1 2 | 1", 2).is_err());
    }

    #[test]
    fn phi_laws_exhaustive_small() {
        let l = Limits::default();
        for k in 1..=3 {
            for n in 1..=5 {
                for tr in crate::forest::enumerate_trees_n(n, k, &l).unwrap() {
                    let before = tree_classes(&tr);
                    for x in tr.labels() {
                        let (img, act) = phi(&tr, x).unwrap();
                        assert_eq!(phi_tree(&img, x).unwrap(), tr);
                        assert!(crate::forest::validate_tree_alone(&img, k).is_empty());
                        let after = tree_classes(&img);
                        for (&y, &c) in &before {
                            let d = after[&y];
                            if y != x || act == PhiAction::Fixed {
                                assert_eq!(c, d);
                            } else if c == NodeClass::OldInternal {
                                assert_eq!(d, NodeClass::YoungLeaf);
                            } else {
                                assert_eq!((c, d), (NodeClass::YoungLeaf, NodeClass::OldInternal));
                            }
                        }
                    }
                    let rep = orbit_representative(&tr);
                    assert_eq!(rep, orbit_representative_fixpoint(&tr));
                    let s = forest_stats(&Forest {
                        k,
                        trees: vec![rep],
                    });
                    assert_eq!(s.yleaf, 0);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use proptest::sample::select;

        fn tree_and_labels() -> impl Strategy<Value = (LabeledTree, u32, u32)> {
            let l = Limits::default();
            let mut all = Vec::new();
            for k in 1..=3 {
                for n in 1..=5 {
                    all.extend(crate::forest::enumerate_trees_n(n, k, &l).unwrap());
                }
            }
            select(all).prop_flat_map(|t| {
                let labels = t.labels();
                (Just(t), select(labels.clone()), select(labels))
            })
        }

        proptest! {
            #[test]
            fn phi_is_an_involution((t, x, _) in tree_and_labels()) {
                let once = phi_tree(&t, x).unwrap();
                prop_assert_eq!(phi_tree(&once, x).unwrap(), t);
            }

            #[test]
            fn phis_commute((t, x, y) in tree_and_labels()) {
                let xy = phi_tree(&phi_tree(&t, x).unwrap(), y).unwrap();
                let yx = phi_tree(&phi_tree(&t, y).unwrap(), x).unwrap();
                prop_assert_eq!(xy, yx);
            }

            #[test]
            fn orbit_size_is_two_to_oint((t, _, _) in tree_and_labels()) {
                let rep = orbit_representative(&t);
                let oint = acting_labels(&rep).len();
                prop_assert_eq!(orbit(&t).len(), 1usize << oint);
            }
        }
    }
}
