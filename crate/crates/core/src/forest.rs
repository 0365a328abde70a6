//! Increasing pruned even k-ary trees and forests.
//!
//! Only the labeled (even-level) nodes are stored. A labeled internal node
//! carries exactly `k` slot-lists; slot `j` holds the subtrees hanging off
//! its `j`-th unlabeled child. A node whose unlabeled children would all be
//! childless is a leaf and has no slots at all.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{stirling_count, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledTree {
    pub label: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slots: Option<Vec<Vec<LabeledTree>>>,
}

impl LabeledTree {
    pub fn leaf(label: u32) -> Self {
        LabeledTree { label, slots: None }
    }

    pub fn node(label: u32, slots: Vec<Vec<LabeledTree>>) -> Self {
        LabeledTree {
            label,
            slots: Some(slots),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.slots.is_none()
    }

    /// Number of labeled nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(LabeledTree::size).sum::<usize>()
    }

    /// Every subtree root in every slot, slot by slot.
    pub fn children(&self) -> impl Iterator<Item = &LabeledTree> {
        self.slots.iter().flatten().flatten()
    }

    pub fn collect_labels(&self, out: &mut Vec<u32>) {
        out.push(self.label);
        for c in self.children() {
            c.collect_labels(out);
        }
    }

    pub fn labels(&self) -> Vec<u32> {
        let mut v = Vec::new();
        self.collect_labels(&mut v);
        v
    }

    /// True when slots `1..k-1` are absent or all empty.
    pub fn leading_slots_empty(&self) -> bool {
        match &self.slots {
            None => true,
            Some(s) => s[..s.len() - 1].iter().all(Vec::is_empty),
        }
    }

    /// Position of `x` as a sequence of `(slot, index)` steps from this node.
    pub fn path_to(&self, x: u32) -> Option<Vec<(usize, usize)>> {
        if self.label == x {
            return Some(Vec::new());
        }
        if x < self.label {
            return None;
        }
        for (j, slot) in self.slots.iter().flatten().enumerate() {
            for (i, t) in slot.iter().enumerate() {
                if let Some(mut p) = t.path_to(x) {
                    p.insert(0, (j, i));
                    return Some(p);
                }
            }
        }
        None
    }

    pub fn at(&self, path: &[(usize, usize)]) -> &LabeledTree {
        path.iter().fold(self, |t, &(j, i)| {
            &t.slots.as_ref().expect("path through a leaf")[j][i]
        })
    }

    pub fn at_mut(&mut self, path: &[(usize, usize)]) -> &mut LabeledTree {
        path.iter().fold(self, |t, &(j, i)| {
            &mut t.slots.as_mut().expect("path through a leaf")[j][i]
        })
    }

    fn relabel(&self, map: &[u32]) -> LabeledTree {
        LabeledTree {
            label: map[self.label as usize - 1],
            slots: self.slots.as_ref().map(|s| {
                s.iter()
                    .map(|slot| slot.iter().map(|t| t.relabel(map)).collect())
                    .collect()
            }),
        }
    }

    fn write_text(&self, out: &mut String) {
        out.push_str(&self.label.to_string());
        if let Some(slots) = &self.slots {
            out.push('[');
            for (j, slot) in slots.iter().enumerate() {
                if j > 0 {
                    out.push(';');
                }
                for (i, t) in slot.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    t.write_text(out);
                }
            }
            out.push(']');
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        self.write_text(&mut s);
        s
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Forest {
    pub k: usize,
    pub trees: Vec<LabeledTree>,
}

impl Forest {
    /// Validates before returning.
    pub fn new(k: usize, trees: Vec<LabeledTree>) -> Result<Self> {
        let f = Forest { k, trees };
        let v = validate_forest(&f);
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::InvalidForest(v))
        }
    }

    pub fn empty(k: usize) -> Self {
        Forest {
            k,
            trees: Vec::new(),
        }
    }

    pub fn parse(text: &str, k: usize) -> Result<Self> {
        parse_forest(text, k)
    }

    pub fn size(&self) -> usize {
        self.trees.iter().map(LabeledTree::size).sum()
    }

    pub fn labels(&self) -> Vec<u32> {
        let mut v = Vec::new();
        for t in &self.trees {
            t.collect_labels(&mut v);
        }
        v.sort_unstable();
        v
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn last(&self) -> Option<&LabeledTree> {
        self.trees.last()
    }

    /// Index of the tree holding `x`.
    pub fn tree_of(&self, x: u32) -> Option<usize> {
        // only trees rooted at or below x can hold it
        let end = self.trees.partition_point(|t| t.label <= x);
        (0..end).find(|&i| self.trees[i].path_to(x).is_some())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&t.to_text())?;
        }
        Ok(())
    }
}

/// One broken structural rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroArity,
    ZeroLabel,
    WrongArity { label: u32, found: usize, k: usize },
    Unpruned { label: u32 },
    PathNotIncreasing { parent: u32, child: u32 },
    SlotNotIncreasing { parent: u32, slot: usize, left: u32, right: u32 },
    RootsNotIncreasing { left: u32, right: u32 },
    DuplicateLabel { label: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroArity => write!(f, "k must be at least 1"),
            Violation::ZeroLabel => write!(f, "labels must be positive"),
            Violation::WrongArity { label, found, k } => {
                write!(f, "node {label} has {found} slots, expected {k}")
            }
            Violation::Unpruned { label } => {
                write!(f, "node {label} has only empty slots and must be a leaf")
            }
            Violation::PathNotIncreasing { parent, child } => {
                write!(f, "{child} sits below {parent}")
            }
            Violation::SlotNotIncreasing {
                parent,
                slot,
                left,
                right,
            } => write!(
                f,
                "slot {} of {parent} is not increasing: {left} before {right}",
                slot + 1
            ),
            Violation::RootsNotIncreasing { left, right } => {
                write!(f, "roots not increasing: {left} before {right}")
            }
            Violation::DuplicateLabel { label } => write!(f, "duplicate label {label}"),
        }
    }
}

fn validate_tree(t: &LabeledTree, k: usize, seen: &mut BTreeSet<u32>, out: &mut Vec<Violation>) {
    if t.label == 0 {
        out.push(Violation::ZeroLabel);
    }
    if !seen.insert(t.label) {
        out.push(Violation::DuplicateLabel { label: t.label });
    }
    let Some(slots) = &t.slots else { return };
    if slots.len() != k {
        out.push(Violation::WrongArity {
            label: t.label,
            found: slots.len(),
            k,
        });
    }
    if slots.iter().all(Vec::is_empty) {
        out.push(Violation::Unpruned { label: t.label });
    }
    for (j, slot) in slots.iter().enumerate() {
        for w in slot.windows(2) {
            if w[0].label >= w[1].label {
                out.push(Violation::SlotNotIncreasing {
                    parent: t.label,
                    slot: j,
                    left: w[0].label,
                    right: w[1].label,
                });
            }
        }
        for c in slot {
            if c.label <= t.label {
                out.push(Violation::PathNotIncreasing {
                    parent: t.label,
                    child: c.label,
                });
            }
            validate_tree(c, k, seen, out);
        }
    }
}

/// Every broken rule, in traversal order; empty when the forest is valid.
pub fn validate_forest(f: &Forest) -> Vec<Violation> {
    let mut out = Vec::new();
    if f.k == 0 {
        out.push(Violation::ZeroArity);
    }
    let mut seen = BTreeSet::new();
    for w in f.trees.windows(2) {
        if w[0].label >= w[1].label {
            out.push(Violation::RootsNotIncreasing {
                left: w[0].label,
                right: w[1].label,
            });
        }
    }
    for t in &f.trees {
        validate_tree(t, f.k, &mut seen, &mut out);
    }
    out
}

/// Validates a single tree as a one-tree forest.
pub fn validate_tree_alone(t: &LabeledTree, k: usize) -> Vec<Violation> {
    validate_forest(&Forest {
        k,
        trees: vec![t.clone()],
    })
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    k: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn label(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a label");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("label out of range")
        })
    }

    fn tree(&mut self) -> Result<LabeledTree> {
        let label = self.label()?;
        if self.peek() != Some(b'[') {
            return Ok(LabeledTree::leaf(label));
        }
        self.pos += 1;
        let mut slots = vec![Vec::new()];
        loop {
            match self.peek() {
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                Some(b';') => {
                    self.pos += 1;
                    slots.push(Vec::new());
                }
                Some(b',') => {
                    if slots.last().unwrap().is_empty() {
                        return self.err("',' must follow a tree");
                    }
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return self.err("expected a tree after ','");
                    }
                    let t = self.tree()?;
                    slots.last_mut().unwrap().push(t);
                }
                Some(c) if c.is_ascii_digit() => {
                    if !slots.last().unwrap().is_empty() {
                        return self.err("trees in a slot are separated by ','");
                    }
                    let t = self.tree()?;
                    slots.last_mut().unwrap().push(t);
                }
                Some(c) => return self.err(format!("unexpected {:?}", c as char)),
                None => return self.err("unterminated '['"),
            }
        }
        if slots.len() != self.k {
            return self.err(format!(
                "node {label} has {} slots, expected {}",
                slots.len(),
                self.k
            ));
        }
        Ok(LabeledTree::node(label, slots))
    }
}

fn parse_trees(text: &str, k: usize) -> Result<Vec<LabeledTree>> {
    if k == 0 {
        return Err(Error::InvalidForest(vec![Violation::ZeroArity]));
    }
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        k,
    };
    let mut trees = Vec::new();
    while p.peek().is_some() {
        trees.push(p.tree()?);
    }
    Ok(trees)
}

/// Parses and validates the text form; the empty string is the empty forest.
pub fn parse_forest(text: &str, k: usize) -> Result<Forest> {
    Forest::new(k, parse_trees(text, k)?)
}

pub fn serialize_forest(f: &Forest) -> String {
    f.to_string()
}

/// Parses exactly one tree.
pub fn parse_tree(text: &str, k: usize) -> Result<LabeledTree> {
    let f = parse_forest(text, k)?;
    match <[LabeledTree; 1]>::try_from(f.trees) {
        Ok([t]) => Ok(t),
        Err(v) => Err(Error::Parse {
            pos: 0,
            msg: format!("expected one tree, found {}", v.len()),
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NodeClass {
    Root,
    OldLeaf,
    YoungLeaf,
    OldInternal,
    YoungInternal,
}

impl NodeClass {
    pub fn is_leaf(self) -> Option<bool> {
        match self {
            NodeClass::Root => None,
            NodeClass::OldLeaf | NodeClass::YoungLeaf => Some(true),
            NodeClass::OldInternal | NodeClass::YoungInternal => Some(false),
        }
    }
}

/// Where a label sits and what it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeInfo {
    pub label: u32,
    pub tree: usize,
    pub grand_parent: Option<u32>,
    pub class: NodeClass,
    pub leaf: bool,
}

fn classify_into(t: &LabeledTree, tree: usize, out: &mut Vec<NodeInfo>) {
    let Some(slots) = &t.slots else { return };
    let old = slots.iter().flatten().map(|c| c.label).max();
    for c in slots.iter().flatten() {
        let is_old = Some(c.label) == old;
        let class = match (is_old, c.is_leaf()) {
            (true, true) => NodeClass::OldLeaf,
            (true, false) => NodeClass::OldInternal,
            (false, true) => NodeClass::YoungLeaf,
            (false, false) => NodeClass::YoungInternal,
        };
        out.push(NodeInfo {
            label: c.label,
            tree,
            grand_parent: Some(t.label),
            class,
            leaf: c.is_leaf(),
        });
        classify_into(c, tree, out);
    }
}

/// One record per label, in tree order then preorder.
pub fn node_infos(f: &Forest) -> Vec<NodeInfo> {
    let mut out = Vec::with_capacity(f.size());
    for (i, t) in f.trees.iter().enumerate() {
        out.push(NodeInfo {
            label: t.label,
            tree: i,
            grand_parent: None,
            class: NodeClass::Root,
            leaf: t.is_leaf(),
        });
        classify_into(t, i, &mut out);
    }
    out
}

/// Node classes of a single tree, keyed by label.
pub fn tree_classes(t: &LabeledTree) -> BTreeMap<u32, NodeClass> {
    let mut out = vec![NodeInfo {
        label: t.label,
        tree: 0,
        grand_parent: None,
        class: NodeClass::Root,
        leaf: t.is_leaf(),
    }];
    classify_into(t, 0, &mut out);
    out.into_iter().map(|n| (n.label, n.class)).collect()
}

pub fn classify_label(f: &Forest, x: u32) -> Result<NodeClass> {
    let i = f.tree_of(x).ok_or(Error::UnknownLabel(x))?;
    let t = &f.trees[i];
    let path = t.path_to(x).expect("tree_of found it");
    if path.is_empty() {
        return Ok(NodeClass::Root);
    }
    let gp = t.at(&path[..path.len() - 1]);
    let old = gp.children().map(|c| c.label).max() == Some(x);
    let leaf = t.at(&path).is_leaf();
    Ok(match (old, leaf) {
        (true, true) => NodeClass::OldLeaf,
        (true, false) => NodeClass::OldInternal,
        (false, true) => NodeClass::YoungLeaf,
        (false, false) => NodeClass::YoungInternal,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ForestStats {
    pub lleaf: usize,
    pub si: usize,
    pub oleaf: usize,
    pub yleaf: usize,
    pub oint: usize,
    pub lint: usize,
    pub rleaf: usize,
}

impl ForestStats {
    /// `lleaf - si`, the statistic matched with `ap`.
    pub fn lleaf_minus_si(&self) -> usize {
        self.lleaf - self.si
    }
}

/// The stats that need no removability test.
pub fn shape_stats(f: &Forest) -> ForestStats {
    let mut s = ForestStats::default();
    for n in node_infos(f) {
        if n.leaf {
            s.lleaf += 1;
        } else {
            s.lint += 1;
        }
        match n.class {
            NodeClass::Root if n.leaf => s.si += 1,
            NodeClass::OldLeaf => s.oleaf += 1,
            NodeClass::YoungLeaf => s.yleaf += 1,
            NodeClass::OldInternal => s.oint += 1,
            _ => {}
        }
    }
    s
}

pub fn forest_stats(f: &Forest) -> ForestStats {
    let mut s = shape_stats(f);
    s.rleaf = removable_labels(f).len();
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LabelSets {
    pub oint: BTreeSet<u32>,
    pub oleaf: BTreeSet<u32>,
    pub yleaf: BTreeSet<u32>,
    pub si: BTreeSet<u32>,
    pub oint_star: BTreeSet<u32>,
    pub si_star: BTreeSet<u32>,
}

pub fn label_sets(f: &Forest) -> LabelSets {
    let mut s = LabelSets::default();
    for n in node_infos(f) {
        match n.class {
            NodeClass::Root if n.leaf => {
                s.si.insert(n.label);
            }
            NodeClass::OldLeaf => {
                s.oleaf.insert(n.label);
            }
            NodeClass::YoungLeaf => {
                s.yleaf.insert(n.label);
            }
            NodeClass::OldInternal => {
                s.oint.insert(n.label);
            }
            _ => {}
        }
    }
    s.oint_star = s.oint.clone();
    s.si_star = s.si.clone();
    if let Some(last) = f.last() {
        if last.is_leaf() {
            s.si_star.remove(&last.label);
        } else if let Some(old) = last.children().map(|c| c.label).max() {
            s.oint_star.remove(&old);
        }
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RemovableLabels {
    pub old: BTreeSet<u32>,
    pub young: BTreeSet<u32>,
}

impl RemovableLabels {
    pub fn len(&self) -> usize {
        self.old.len() + self.young.len()
    }

    pub fn is_empty(&self) -> bool {
        self.old.is_empty() && self.young.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.old.iter().chain(&self.young).min().copied()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.old.contains(&x) || self.young.contains(&x)
    }
}

/// The removable old leaf of tree `i`, if there is one.
pub fn removable_old_in(f: &Forest, i: usize) -> Option<u32> {
    let t = &f.trees[i];
    let slots = t.slots.as_ref()?;
    if !t.leading_slots_empty() {
        return None;
    }
    let gc = slots.last()?;
    let (u, rest) = gc.split_last()?;
    if !u.is_leaf() || rest.iter().any(LabeledTree::is_leaf) {
        return None;
    }
    match f.trees.get(i + 1) {
        Some(next) if u.label > next.label => None,
        _ => Some(u.label),
    }
}

/// Young-leaf grand children `u` of the last root for which `Phi_u` leaves
/// the root's first `k-1` slots empty.
pub fn removable_young(f: &Forest) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    let Some(last) = f.last() else { return out };
    let Some(old) = last.children().map(|c| c.label).max() else {
        return out;
    };
    for u in last.children() {
        if u.label == old || !u.is_leaf() {
            continue;
        }
        let (image, _) = crate::gfs::phi(last, u.label).expect("u is in the tree");
        if image.leading_slots_empty() {
            out.insert(u.label);
        }
    }
    out
}

pub fn removable_labels(f: &Forest) -> RemovableLabels {
    RemovableLabels {
        old: (0..f.trees.len())
            .filter_map(|i| removable_old_in(f, i))
            .collect(),
        young: removable_young(f),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ForestClass {
    pub in_bar: bool,
    pub in_star: bool,
}

/// Barred when the last tree is a singleton or its root's first `k-1`
/// slots are empty. The empty forest is not barred.
pub fn is_bar(f: &Forest) -> bool {
    f.last().is_some_and(LabeledTree::leading_slots_empty)
}

pub fn forest_class(f: &Forest) -> ForestClass {
    let s = forest_stats(f);
    ForestClass {
        in_bar: is_bar(f),
        in_star: s.yleaf == 0 && s.rleaf == 0,
    }
}

/// Trees and forests on `1..=s`, built up by size.
struct Memo {
    k: usize,
    trees: Vec<Vec<LabeledTree>>,
    forests: Vec<Vec<Vec<LabeledTree>>>,
}

impl Memo {
    fn new(k: usize) -> Self {
        Memo {
            k,
            trees: vec![Vec::new(), vec![LabeledTree::leaf(1)]],
            forests: vec![vec![Vec::new()]],
        }
    }

    fn subset(mask: u32, universe: &[u32]) -> Vec<u32> {
        universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &l)| l)
            .collect()
    }

    fn relabel_forest(f: &[LabeledTree], map: &[u32]) -> Vec<LabeledTree> {
        f.iter().map(|t| t.relabel(map)).collect()
    }

    fn ensure(&mut self, s: usize) {
        while self.forests.len() <= s {
            let m = self.forests.len();
            if self.trees.len() <= m {
                let t = self.build_trees(m);
                self.trees.push(t);
            }
            let f = self.build_forests(m);
            self.forests.push(f);
        }
    }

    // trees on 1..=s: root 1, labels 2..=s spread over k slots
    fn build_trees(&mut self, s: usize) -> Vec<LabeledTree> {
        let rest: Vec<u32> = (2..=s as u32).collect();
        let mut out = Vec::new();
        let k = self.k;
        // assignment of each label in `rest` to a slot, as base-k digits
        let total = (k as u64).pow(rest.len() as u32);
        for code in 0..total {
            let mut parts: Vec<Vec<u32>> = vec![Vec::new(); k];
            let mut c = code;
            for &l in rest.iter().rev() {
                parts[(c % k as u64) as usize].push(l);
                c /= k as u64;
            }
            for p in &mut parts {
                p.reverse();
            }
            let mut acc: Vec<Vec<Vec<LabeledTree>>> = vec![Vec::new()];
            for p in &parts {
                let options: Vec<Vec<LabeledTree>> = self.forests[p.len()]
                    .iter()
                    .map(|f| Self::relabel_forest(f, p))
                    .collect();
                let mut next = Vec::with_capacity(acc.len() * options.len());
                for a in &acc {
                    for o in &options {
                        let mut a2 = a.clone();
                        a2.push(o.clone());
                        next.push(a2);
                    }
                }
                acc = next;
            }
            out.extend(acc.into_iter().map(|slots| LabeledTree::node(1, slots)));
        }
        out
    }

    // forests on 1..=s: the block of 1 is a tree, the rest a forest
    fn build_forests(&mut self, s: usize) -> Vec<Vec<LabeledTree>> {
        let others: Vec<u32> = (2..=s as u32).collect();
        let mut out = Vec::new();
        for mask in 0..(1u32 << others.len()) {
            let mut block = vec![1];
            block.extend(Self::subset(mask, &others));
            let rest = Self::subset(!mask & ((1u32 << others.len()) - 1), &others);
            let trees: Vec<LabeledTree> = self.trees[block.len()]
                .iter()
                .map(|t| t.relabel(&block))
                .collect();
            for t in &trees {
                for f in &self.forests[rest.len()] {
                    let mut v = vec![t.clone()];
                    v.extend(Self::relabel_forest(f, &rest));
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Every forest on the label set `m` built straight from the recursive
/// decomposition, without going through words.
pub fn enumerate_forests(m: &[u32], k: usize, limits: &Limits) -> Result<Vec<Forest>> {
    if k == 0 {
        return Err(Error::InvalidForest(vec![Violation::ZeroArity]));
    }
    let mut labels = m.to_vec();
    labels.sort_unstable();
    labels.dedup();
    if labels.first() == Some(&0) {
        return Err(Error::InvalidForest(vec![Violation::ZeroLabel]));
    }
    limits.check("forests", stirling_count(labels.len(), k))?;
    let mut memo = Memo::new(k);
    memo.ensure(labels.len());
    Ok(memo.forests[labels.len()]
        .iter()
        .map(|f| Forest {
            k,
            trees: Memo::relabel_forest(f, &labels),
        })
        .collect())
}

/// Forests on `1..=n`.
pub fn enumerate_forests_n(n: usize, k: usize, limits: &Limits) -> Result<Vec<Forest>> {
    let m: Vec<u32> = (1..=n as u32).collect();
    enumerate_forests(&m, k, limits)
}

/// Single trees on `1..=n`.
pub fn enumerate_trees_n(n: usize, k: usize, limits: &Limits) -> Result<Vec<LabeledTree>> {
    Ok(enumerate_forests_n(n, k, limits)?
        .into_iter()
        .filter(|f| f.trees.len() == 1)
        .map(|mut f| f.trees.pop().unwrap())
        .collect())
}
