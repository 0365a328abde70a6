//! The transformation `Psi_x`, the steps `alpha` and `beta`, and the
//! composite maps built from them.


use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{
    label_sets, removable_labels, removable_old_in, removable_young, shape_stats, Forest,
    LabeledTree,
};
use crate::gfs::{is_x_bar, is_x_hat, theta, MarkedForest};

/// Which rule of `Psi_x` fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PsiCase {
    /// Singleton swallows the trees up to the next singleton.
    AttachToSingleton,
    /// Singleton takes over the root of a non-singleton last tree.
    MergeIntoLast,
    RemovableOld,
    RemovableYoung,
    Identity,
}

pub fn psi(f: &Forest, x: u32) -> Result<(Forest, PsiCase)> {
    let i = f.tree_of(x).ok_or(Error::UnknownLabel(x))?;
    let m = f.trees.len() - 1;
    let k = f.k;
    let ti = &f.trees[i];

    if ti.label == x && ti.is_leaf() {
        if i == m {
            return Ok((f.clone(), PsiCase::Identity));
        }
        let j = (i + 1..=m)
            .find(|&j| j == m || f.trees[j].is_leaf())
            .expect("range ends at m");
        let mut trees = f.trees[..i].to_vec();
        if f.trees[j].is_leaf() {
            let mut slots = vec![Vec::new(); k];
            slots[k - 1] = f.trees[i + 1..=j].to_vec();
            trees.push(LabeledTree::node(x, slots));
            trees.extend_from_slice(&f.trees[j + 1..]);
            return Ok((Forest { k, trees }, PsiCase::AttachToSingleton));
        }
        let mut last = f.trees[m].clone();
        let y = last.label;
        let slots = last.slots.as_mut().expect("last tree is not a singleton");
        let slot = &mut slots[k - 1];
        let incoming: Vec<LabeledTree> = f.trees[i + 1..m]
            .iter()
            .cloned()
            .chain(std::iter::once(LabeledTree::leaf(y)))
            .collect();
        for t in &incoming {
            assert!(
                slot.iter().all(|c| c.label != t.label),
                "label {} already hangs off the last root",
                t.label
            );
        }
        slot.extend(incoming);
        slot.sort_by_key(|t| t.label);
        last.label = x;
        trees.push(last);
        return Ok((Forest { k, trees }, PsiCase::MergeIntoLast));
    }

    let old = removable_old_in(f, i) == Some(x);
    let young = i == m && removable_young(f).contains(&x);
    assert!(!(old && young), "{x} is both removable old and young");

    if old {
        let mut trees = f.trees[..i].to_vec();
        let ejected = ti.slots.as_ref().unwrap()[k - 1].clone();
        trees.push(LabeledTree::leaf(ti.label));
        trees.extend(ejected);
        trees.extend_from_slice(&f.trees[i + 1..]);
        return Ok((Forest { k, trees }, PsiCase::RemovableOld));
    }

    if young {
        let mut last = ti.clone();
        let y = last.label;
        let slot = &mut last.slots.as_mut().unwrap()[k - 1];
        let at = slot
            .iter()
            .position(|c| c.label == x)
            .expect("removable young leaf sits in the last slot");
        let mut rest = slot.split_off(at);
        rest.remove(0);
        let ejected = std::mem::replace(slot, rest);
        last.label = x;
        let mut trees = f.trees[..m].to_vec();
        trees.push(LabeledTree::leaf(y));
        trees.extend(ejected);
        trees.push(last);
        return Ok((Forest { k, trees }, PsiCase::RemovableYoung));
    }

    Ok((f.clone(), PsiCase::Identity))
}

/// Leaves that `Psi_x` would eject as new singletons ahead of a removable
/// young leaf `x`; each one costs an extra unit of `lleaf - si`.
pub fn ejected_leaves(f: &Forest, x: u32) -> usize {
    let Some(last) = f.last() else { return 0 };
    let Some(slots) = &last.slots else { return 0 };
    slots[f.k - 1]
        .iter()
        .take_while(|c| c.label < x)
        .filter(|c| c.is_leaf())
        .count()
}

pub fn psi_forest(f: &Forest, x: u32) -> Result<Forest> {
    psi(f, x).map(|(g, _)| g)
}

/// `Psi` at the largest mark, which is dropped.
pub fn alpha_step(mf: &MarkedForest) -> Result<MarkedForest> {
    let &x = mf
        .marks
        .last()
        .ok_or_else(|| Error::Precondition("alpha needs a nonempty mark set".into()))?;
    let si_star = label_sets(&mf.forest).si_star;
    if let Some(bad) = mf.marks.iter().find(|m| !si_star.contains(m)) {
        return Err(Error::Precondition(format!(
            "alpha needs marks on non-final singletons; {bad} is not one"
        )));
    }
    let mut marks = mf.marks.clone();
    marks.remove(&x);
    Ok(MarkedForest {
        forest: psi_forest(&mf.forest, x)?,
        marks,
    })
}

/// One `beta` move: the least removable label and the root it leaves behind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BetaMove {
    pub x: u32,
    pub y: u32,
}

pub fn beta_move(mf: &MarkedForest) -> Result<(MarkedForest, BetaMove)> {
    let f = &mf.forest;
    let x = removable_labels(f)
        .min()
        .ok_or_else(|| Error::Precondition("beta needs a removable leaf".into()))?;
    let y = f.trees[f.tree_of(x).expect("removable label is present")].label;
    let mut marks = mf.marks.clone();
    marks.insert(y);
    Ok((
        MarkedForest {
            forest: psi_forest(f, x)?,
            marks,
        },
        BetaMove { x, y },
    ))
}

pub fn beta_step(mf: &MarkedForest) -> Result<MarkedForest> {
    beta_move(mf).map(|(m, _)| m)
}

/// Apply `alpha` until no marks remain.
pub fn gamma_map(mf: &MarkedForest) -> Result<Forest> {
    let si_star = label_sets(&mf.forest).si_star;
    if !mf.marks.is_subset(&si_star) {
        return Err(Error::Precondition(format!(
            "gamma needs marks inside Si*: {mf}"
        )));
    }
    let mut cur = mf.clone();
    while !cur.marks.is_empty() {
        cur = alpha_step(&cur)?;
    }
    Ok(cur.forest)
}

/// Apply `beta` from `(F, {})` until nothing is removable, keeping the moves.
pub fn gamma_prime_trajectory(f: &Forest) -> Result<(MarkedForest, Vec<BetaMove>)> {
    let mut cur = MarkedForest::unmarked(f.clone());
    let mut moves = Vec::new();
    // each move lowers lleaf - si by one
    let budget = shape_stats(f).lleaf_minus_si();
    while !removable_labels(&cur.forest).is_empty() {
        if moves.len() > budget {
            return Err(Error::Internal(format!("beta did not terminate on {f}")));
        }
        let (next, mv) = beta_move(&cur)?;
        moves.push(mv);
        cur = next;
    }
    Ok((cur, moves))
}

pub fn gamma_prime_map(f: &Forest) -> Result<MarkedForest> {
    gamma_prime_trajectory(f).map(|(m, _)| m)
}

/// No removable leaf sits in a tree left of the singleton `y`.
pub fn no_removable_left_of(f: &Forest, y: u32) -> bool {
    let Some(pos) = f.trees.iter().position(|t| t.label == y && t.is_leaf()) else {
        return false;
    };
    let r = removable_labels(f);
    r.old
        .iter()
        .chain(&r.young)
        .all(|&x| f.tree_of(x).is_some_and(|i| i > pos))
}

/// `Gamma ∘ Theta` on a barred or hatted X-pair.
pub fn main_bijection(mf: &MarkedForest) -> Result<Forest> {
    if !(is_x_bar(mf) || is_x_hat(mf)) {
        return Err(Error::Precondition(format!(
            "the composite map needs a barred or hatted X-pair: {mf}"
        )));
    }
    gamma_map(&theta(mf)?)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{forest_stats, is_bar, parse_forest};

    fn f(s: &str, k: usize) -> Forest {
        parse_forest(s, k).unwrap()
    }

    fn mf(s: &str, k: usize) -> MarkedForest {
        MarkedForest::parse(s, k).unwrap()
    }

    #[test]
    fn psi_both_ways() {
        let f1 = f("1[3;;7] 2 4[;;6] 5 8", 3);
        let (f2, c) = psi(&f1, 2).unwrap();
        assert_eq!(f2.to_string(), "1[3;;7] 2[;;4[;;6],5] 8");
        assert_eq!(c, PsiCase::AttachToSingleton);
        let (back, c) = psi(&f2, 5).unwrap();
        assert_eq!(back, f1);
        assert_eq!(c, PsiCase::RemovableOld);

        let f3 = f("1[3;;7] 2 4[;;9] 5[;8;6]", 3);
        let (f4, c) = psi(&f3, 2).unwrap();
        assert_eq!(f4.to_string(), "1[3;;7] 2[;8;4[;;9],5,6]");
        assert_eq!(c, PsiCase::MergeIntoLast);
        let (back, c) = psi(&f4, 5).unwrap();
        assert_eq!(back, f3);
        assert_eq!(c, PsiCase::RemovableYoung);
    }

    #[test]
    fn psi_identity_and_unknown() {
        let g = f("1 2 3", 2);
        assert_eq!(psi(&g, 3).unwrap(), (g.clone(), PsiCase::Identity));
        assert_eq!(psi(&g, 9), Err(Error::UnknownLabel(9)));
    }

    #[test]
    fn alpha_example() {
        let a = mf("1 2[;5;] 3 4[;;7] 6 8[;9,10;] | {1,3}", 3);
        let b = alpha_step(&a).unwrap();
        assert_eq!(b.to_string(), "1 2[;5;] 3[;;4[;;7],6] 8[;9,10;] | {1}");
        let c = alpha_step(&b).unwrap();
        assert_eq!(c.to_string(), "1[;9,10;2[;5;],3[;;4[;;7],6],8] | {}");
        assert_eq!(gamma_map(&a).unwrap(), c.forest);
        let d = alpha_step(&mf("1 2 3 | {1}", 2)).unwrap();
        assert_eq!(d.to_string(), "1[;2] 3 | {}");
        assert!(alpha_step(&mf("1 2 3", 2)).is_err());
        assert!(alpha_step(&mf("1[;2] 3 | {3}", 2)).is_err());
    }

    #[test]
    fn beta_example() {
        let a = mf("1[;4,7;2[;5;],3,6[;8;]]", 3);
        let b = beta_step(&a).unwrap();
        assert_eq!(b.to_string(), "1 2[;5;] 3[;4,7;6[;8;]] | {1}");
        assert_eq!(
            beta_step(&mf("1[;2] 3", 2)).unwrap().to_string(),
            "1 2 3 | {1}"
        );
        assert_eq!(
            beta_step(&mf("1 2[;3]", 2)).unwrap().to_string(),
            "1 2 3 | {2}"
        );
        assert!(beta_step(&mf("1 2 3", 2)).is_err());
    }

    #[test]
    fn gamma_prime_examples() {
        assert_eq!(
            gamma_prime_map(&f("1[;2] 3", 2)).unwrap().to_string(),
            "1 2 3 | {1}"
        );
        let fixed = f("1[2[3;];]", 2);
        assert_eq!(gamma_prime_map(&fixed).unwrap(), MarkedForest::unmarked(fixed));
        let tree = f("1[;4,7;2[;5;],3,6[;8;]]", 3);
        let (end, moves) = gamma_prime_trajectory(&tree).unwrap();
        assert_eq!(moves[0], BetaMove { x: 3, y: 1 });
        assert!(removable_labels(&end.forest).is_empty());
        assert_eq!(gamma_map(&end).unwrap(), tree);
    }

    #[test]
    fn main_bijection_examples() {
        assert_eq!(
            main_bijection(&mf("1 2 3 | {1}", 2)).unwrap().to_string(),
            "1[;2] 3"
        );
        assert_eq!(
            main_bijection(&mf("1[2[3;];] | {2}", 2)).unwrap().to_string(),
            "1[2,3;]"
        );
        let g = f("1[;2[;3]]", 2);
        assert_eq!(main_bijection(&MarkedForest::unmarked(g.clone())).unwrap(), g);
        assert!(main_bijection(&mf("1[;2,3]", 2)).is_err());
    }

    #[test]
    fn psi_shift_and_class_exhaustive_small() {
        let l = crate::limits::Limits::default();
        for k in 1..=3 {
            for n in 1..=5 {
                for g in crate::forest::enumerate_forests_n(n, k, &l).unwrap() {
                    let before = forest_stats(&g).lleaf_minus_si() as i64;
                    for x in g.labels() {
                        let (h, c) = psi(&g, x).unwrap();
                        assert!(crate::forest::validate_forest(&h).is_empty(), "{g} @ {x}");
                        assert_eq!(is_bar(&g), is_bar(&h));
                        let after = forest_stats(&h).lleaf_minus_si() as i64;
                        let want = match c {
                            PsiCase::AttachToSingleton | PsiCase::MergeIntoLast => 1,
                            PsiCase::RemovableOld => -1,
                            PsiCase::RemovableYoung => -1 - ejected_leaves(&g, x) as i64,
                            PsiCase::Identity => 0,
                        };
                        assert_eq!(after - before, want, "{g} @ {x}");
                        if removable_labels(&g).min() == Some(x) {
                            assert_eq!(ejected_leaves(&g, x), 0, "{g} @ {x}");
                        }
                    }
                }
            }
        }
    }
}
