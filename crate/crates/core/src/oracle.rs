//! Statistic distributions, gamma censuses and the exhaustive identity
//! suites that tie words, forests and polynomials together.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::bimap::{chi, chi_inv, xi, xi_inv, zeta, zeta_inv};
use crate::error::{Error, Result};
use crate::forest::{
    enumerate_forests_n, enumerate_trees_n, forest_stats, is_bar, label_sets, removable_labels,
    shape_stats, Forest, LabeledTree, NodeClass,
};
use crate::gfs::{
    acting_labels, orbit, orbit_representative, phi, subsets, theta, theta_prime, MarkedForest,
    PhiAction,
};
use crate::limits::{stirling_count, Limits};
use crate::pipeline::{
    alpha_step, beta_move, beta_step, ejected_leaves, gamma_map, gamma_prime_map, gamma_prime_trajectory,
    main_bijection, no_removable_left_of, psi, PsiCase,
};
use crate::poly::{
    egf_one_over_k_eulerian, gamma_compose, gamma_expand, symmetric_decompose, GammaExpansion,
    IntPolynomial,
};
use crate::stirling::{
    descent_polynomial, enumerate_k_stirling, exc_cyc_polynomial, is_k_stirling,
    stirling_count_big, stat_ap, stat_lap, word_class, KStirlingWord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Q,
    QBar,
    QHat,
    QTilde,
    F,
    FBar,
    FHat,
    T,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Q,
        Family::QBar,
        Family::QHat,
        Family::QTilde,
        Family::F,
        Family::FBar,
        Family::FHat,
        Family::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Q => "Q",
            Family::QBar => "Q-bar",
            Family::QHat => "Q-hat",
            Family::QTilde => "Q-tilde",
            Family::F => "F",
            Family::FBar => "F-bar",
            Family::FHat => "F-hat",
            Family::T => "T",
        }
    }

    pub fn is_word_family(self) -> bool {
        matches!(self, Family::Q | Family::QBar | Family::QHat | Family::QTilde)
    }

    fn keeps_word(self, w: &KStirlingWord) -> bool {
        let c = word_class(w);
        match self {
            Family::QBar => c.in_bar,
            Family::QHat => !c.in_bar,
            Family::QTilde => c.in_tilde,
            _ => true,
        }
    }

    fn keeps_forest(self, f: &Forest) -> bool {
        match self {
            Family::FBar => is_bar(f),
            Family::FHat => !is_bar(f),
            Family::T => f.trees.len() == 1,
            _ => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Statistic {
    Ap,
    Lap,
    Lleaf,
    LleafMinusSi,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [
        Statistic::Ap,
        Statistic::Lap,
        Statistic::Lleaf,
        Statistic::LleafMinusSi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Ap => "ap",
            Statistic::Lap => "lap",
            Statistic::Lleaf => "lleaf",
            Statistic::LleafMinusSi => "lleaf-si",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statistic::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown statistic {s:?}")))
    }
}

fn bump(counts: &mut Vec<u64>, i: usize) {
    if counts.len() <= i {
        counts.resize(i + 1, 0);
    }
    counts[i] += 1;
}

/// Generating polynomial of `stat` over `family` on `1..=n`.
pub fn distribution(
    family: Family,
    stat: Statistic,
    n: usize,
    k: usize,
    limits: &Limits,
) -> Result<IntPolynomial> {
    let word_stat = matches!(stat, Statistic::Ap | Statistic::Lap);
    if word_stat != family.is_word_family() {
        return Err(Error::Incompatible {
            family: family.name(),
            statistic: stat.name(),
        });
    }
    let mut counts = Vec::new();
    if word_stat {
        for w in enumerate_k_stirling(n, k, limits)? {
            if family.keeps_word(&w) {
                let v = if stat == Statistic::Ap {
                    stat_ap(&w)
                } else {
                    stat_lap(&w)
                };
                bump(&mut counts, v);
            }
        }
    } else {
        for f in enumerate_forests_n(n, k, limits)? {
            if family.keeps_forest(&f) {
                let s = shape_stats(&f);
                let v = if stat == Statistic::Lleaf {
                    s.lleaf
                } else {
                    s.lleaf_minus_si()
                };
                bump(&mut counts, v);
            }
        }
    }
    Ok(IntPolynomial::from_counts(&counts))
}

fn trimmed(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Counts of star forests by old leaves, split into barred and hatted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaCensus {
    pub gamma_bar: Vec<u64>,
    pub gamma_hat: Vec<u64>,
}

fn census_of(forests: &[Forest]) -> GammaCensus {
    let mut bar = Vec::new();
    let mut hat = Vec::new();
    for f in forests {
        let s = forest_stats(f);
        if s.yleaf == 0 && s.rleaf == 0 {
            bump(if is_bar(f) { &mut bar } else { &mut hat }, s.oleaf);
        }
    }
    GammaCensus {
        gamma_bar: trimmed(bar),
        gamma_hat: trimmed(hat),
    }
}

/// Trailing zeros are dropped.
pub fn gamma_census_bar_hat(n: usize, k: usize, limits: &Limits) -> Result<GammaCensus> {
    Ok(census_of(&enumerate_forests_n(n, k, limits)?))
}

fn tilde_of(trees: &[LabeledTree], k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for t in trees {
        let s = shape_stats(&Forest {
            k,
            trees: vec![t.clone()],
        });
        if s.yleaf == 0 {
            bump(&mut out, s.lleaf);
        }
    }
    trimmed(out)
}

/// Young-leaf-free trees by labeled leaves; needs `n >= 2`.
pub fn gamma_census_tilde(n: usize, k: usize, limits: &Limits) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::Precondition(
            "the tree census needs at least two labels".into(),
        ));
    }
    Ok(tilde_of(&enumerate_trees_n(n, k, limits)?, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub n: usize,
    pub k: usize,
    pub pass: bool,
    pub left: IntPolynomial,
    pub right: IntPolynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl IdentityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Suite {
    Polynomials,
    Bijections,
    Gfs,
    Pipeline,
    Theorems,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Polynomials,
        Suite::Bijections,
        Suite::Gfs,
        Suite::Pipeline,
        Suite::Theorems,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Polynomials => "polynomials",
            Suite::Bijections => "bijections",
            Suite::Gfs => "gfs",
            Suite::Pipeline => "pipeline",
            Suite::Theorems => "theorems",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn constant(v: impl Into<BigInt>) -> IntPolynomial {
    IntPolynomial::constant(v)
}

/// Collects the reports of one cell.
struct Cell {
    suite: Suite,
    n: usize,
    k: usize,
    out: Vec<IdentityReport>,
}

impl Cell {
    fn id(&self, name: &str) -> String {
        format!("{}.{}", self.suite.name(), name)
    }

    fn equal(&mut self, name: &str, left: IntPolynomial, right: IntPolynomial) {
        let pass = left == right;
        let witness = (!pass).then(|| format!("{left} != {right}"));
        let identity = self.id(name);
        self.out.push(IdentityReport {
            identity,
            n: self.n,
            k: self.k,
            pass,
            left,
            right,
            witness,
        });
    }

    fn fallible(&mut self, name: &str, r: Result<(IntPolynomial, IntPolynomial)>) {
        match r {
            Ok((l, r)) => self.equal(name, l, r),
            Err(e) => {
                let identity = self.id(name);
                self.out.push(IdentityReport {
                    identity,
                    n: self.n,
                    k: self.k,
                    pass: false,
                    left: IntPolynomial::zero(),
                    right: IntPolynomial::one(),
                    witness: Some(e.to_string()),
                });
            }
        }
    }

    fn tally(&mut self, name: &str, t: Tally) {
        let identity = self.id(name);
        self.out.push(IdentityReport {
            identity,
            n: self.n,
            k: self.k,
            pass: t.checked == t.passed,
            left: constant(t.checked),
            right: constant(t.passed),
            witness: t.witness,
        });
    }

    /// Left is the target size; right drops duplicates and strays, so the
    /// two agree exactly when the images hit every target once.
    fn image<T: Eq + Hash + fmt::Display>(&mut self, name: &str, images: Vec<T>, target: &HashSet<T>) {
        let total = images.len() as i64;
        let mut witness = None;
        let mut distinct: HashSet<&T> = HashSet::new();
        for x in &images {
            if !distinct.insert(x) && witness.is_none() {
                witness = Some(format!("hit twice: {x}"));
            }
        }
        let inside = distinct.iter().filter(|x| target.contains(**x)).count() as i64;
        let strays = distinct.len() as i64 - inside;
        if witness.is_none() {
            witness = distinct
                .iter()
                .find(|x| !target.contains(**x))
                .map(|x| format!("outside the target: {x}"));
        }
        if witness.is_none() {
            witness = target
                .iter()
                .find(|x| !distinct.contains(x))
                .map(|x| format!("never hit: {x}"));
        }
        let dups = total - distinct.len() as i64;
        let right = inside - dups - strays;
        let left = target.len() as i64;
        let identity = self.id(name);
        self.out.push(IdentityReport {
            identity,
            n: self.n,
            k: self.k,
            pass: left == right,
            left: constant(left),
            right: constant(right),
            witness: if left == right { None } else { witness },
        });
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    passed: u64,
    witness: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }
}

fn words(n: usize, k: usize, limits: &Limits) -> Result<Vec<KStirlingWord>> {
    Ok(enumerate_k_stirling(n, k, limits)?.collect())
}

fn polynomials_cell(c: &mut Cell, limits: &Limits) -> Result<()> {
    let (n, k) = (c.n, c.k);
    let egf = egf_one_over_k_eulerian(k, n)?.swap_remove(n);
    let mut ap = Vec::new();
    let mut lap = Vec::new();
    let mut shift = Tally::default();
    let mut valid = Tally::default();
    let mut seen = HashSet::new();
    for w in enumerate_k_stirling(n, k, limits)? {
        let (a, b) = (stat_ap(&w), stat_lap(&w));
        bump(&mut ap, a);
        bump(&mut lap, b);
        let plateau = word_class(&w).starts_with_plateau;
        shift.check(b == a + usize::from(plateau), || w.to_string());
        let fresh = seen.insert(w.letters().to_vec());
        valid.check(is_k_stirling(w.letters(), k) && fresh, || w.to_string());
    }
    let ap = IntPolynomial::from_counts(&ap);
    c.fallible(
        "egf-vs-exc-cyc",
        exc_cyc_polynomial(n, k, limits).map(|e| (egf.clone(), e)),
    );
    c.equal("egf-vs-ap", egf.clone(), ap.clone());
    c.equal(
        "count",
        constant(egf.eval(&BigInt::one())),
        constant(stirling_count_big(n, k)),
    );
    c.equal(
        "enumeration-count",
        constant(valid.passed),
        constant(stirling_count_big(n, k)),
    );
    c.tally("enumeration-valid", valid);
    c.equal("lap-reciprocity", IntPolynomial::from_counts(&lap), ap.reversed(n));
    c.tally("lap-minus-ap", shift);
    c.fallible(
        "decomposition",
        symmetric_decompose(&egf, n - 1).map(|d| (egf.clone(), d.recombine())),
    );
    if k == 1 {
        c.fallible(
            "descent-symmetry",
            descent_polynomial(n, limits).map(|d| (d.clone(), d.reversed(n - 1))),
        );
    }
    Ok(())
}

fn bijections_cell(c: &mut Cell, limits: &Limits) -> Result<()> {
    let (n, k) = (c.n, c.k);
    let forests: HashSet<Forest> = enumerate_forests_n(n, k, limits)?.into_iter().collect();
    let trees: HashSet<LabeledTree> = forests
        .iter()
        .filter(|f| f.trees.len() == 1)
        .map(|f| f.trees[0].clone())
        .collect();
    let mut xi_rt = Tally::default();
    let mut xi_stat = Tally::default();
    let mut zeta_rt = Tally::default();
    let mut zeta_stat = Tally::default();
    let mut zeta_bar = Tally::default();
    let mut chi_rt = Tally::default();
    let mut chi_stat = Tally::default();
    let mut chi_plateau = Tally::default();
    let mut xi_img = Vec::new();
    let mut zeta_img = Vec::new();
    let mut zeta_bar_img = Vec::new();
    let mut chi_img = Vec::new();
    let mut ap_all = Vec::new();
    let mut ap_bar = Vec::new();
    let mut ap_hat = Vec::new();
    for w in words(n, k, limits)? {
        let x = xi(&w);
        xi_rt.check(xi_inv(&x).ok().as_ref() == Some(&w), || w.to_string());
        xi_stat.check(stat_lap(&w) == shape_stats(&x).lleaf, || w.to_string());
        xi_img.push(x);

        let z = zeta(&w);
        let ap = stat_ap(&w);
        let class = word_class(&w);
        zeta_rt.check(zeta_inv(&z).ok().as_ref() == Some(&w), || w.to_string());
        zeta_stat.check(ap == shape_stats(&z).lleaf_minus_si(), || w.to_string());
        zeta_bar.check(class.in_bar == is_bar(&z), || w.to_string());
        bump(&mut ap_all, ap);
        bump(if class.in_bar { &mut ap_bar } else { &mut ap_hat }, ap);
        if class.in_bar {
            zeta_bar_img.push(z.clone());
        }
        zeta_img.push(z);

        if class.in_tilde && n >= 2 {
            match chi(&w) {
                Ok(t) => {
                    chi_rt.check(chi_inv(&t, k).ok().as_ref() == Some(&w), || w.to_string());
                    let lleaf = shape_stats(&Forest {
                        k,
                        trees: vec![t.clone()],
                    })
                    .lleaf;
                    chi_stat.check(ap == lleaf, || w.to_string());
                    chi_plateau.check(
                        class.starts_with_plateau == t.leading_slots_empty(),
                        || w.to_string(),
                    );
                    chi_img.push(t);
                }
                Err(e) => chi_rt.check(false, || format!("{w}: {e}")),
            }
        }
    }
    c.tally("xi-round-trip", xi_rt);
    c.tally("xi-lap-to-lleaf", xi_stat);
    c.image("xi-onto-forests", xi_img, &forests);
    c.tally("zeta-round-trip", zeta_rt);
    c.tally("zeta-ap-to-lleaf-si", zeta_stat);
    c.tally("zeta-bar-class", zeta_bar);
    c.image("zeta-onto-forests", zeta_img, &forests);
    let bar: HashSet<Forest> = forests.iter().filter(|f| is_bar(f)).cloned().collect();
    c.image("zeta-bar-onto-bar", zeta_bar_img, &bar);
    if n >= 2 {
        c.tally("chi-round-trip", chi_rt);
        c.tally("chi-ap-to-lleaf", chi_stat);
        c.tally("chi-plateau", chi_plateau);
        c.image("chi-onto-trees", chi_img, &trees);
    }
    let mut d_all = Vec::new();
    let mut d_bar = Vec::new();
    let mut d_hat = Vec::new();
    for f in &forests {
        let v = shape_stats(f).lleaf_minus_si();
        bump(&mut d_all, v);
        bump(if is_bar(f) { &mut d_bar } else { &mut d_hat }, v);
    }
    let p = IntPolynomial::from_counts;
    c.equal("ap-transfer", p(&ap_all), p(&d_all));
    c.equal("ap-transfer-bar", p(&ap_bar), p(&d_bar));
    c.equal("ap-transfer-hat", p(&ap_hat), p(&d_hat));
    Ok(())
}

fn classes_of(t: &LabeledTree) -> BTreeMap<u32, NodeClass> {
    crate::forest::tree_classes(t)
}

fn gfs_cell(c: &mut Cell, limits: &Limits) -> Result<()> {
    let (n, k) = (c.n, c.k);
    let trees = enumerate_trees_n(n, k, limits)?;
    let mut inv = Tally::default();
    let mut comm = Tally::default();
    let mut types = Tally::default();
    let mut groups: BTreeMap<LabeledTree, (u64, u64)> = BTreeMap::new();
    let mut lleaf = Vec::new();
    for t in &trees {
        let labels = t.labels();
        let before = classes_of(t);
        let mut images = BTreeMap::new();
        for &x in &labels {
            let (img, act) = phi(t, x)?;
            let back = phi(&img, x)?.0;
            inv.check(back == *t, || format!("{t} @ {x}"));
            let after = classes_of(&img);
            let ok = before.iter().all(|(&y, &cb)| {
                let ca = after[&y];
                if y != x || act == PhiAction::Fixed {
                    ca == cb
                } else {
                    matches!(
                        (cb, ca),
                        (NodeClass::OldInternal, NodeClass::YoungLeaf)
                            | (NodeClass::YoungLeaf, NodeClass::OldInternal)
                    )
                }
            });
            types.check(ok, || format!("{t} @ {x}"));
            images.insert(x, img);
        }
        for (i, &x) in labels.iter().enumerate() {
            for &y in &labels[i + 1..] {
                let xy = phi(&images[&x], y)?.0;
                let yx = phi(&images[&y], x)?.0;
                comm.check(xy == yx, || format!("{t} @ {x},{y}"));
            }
        }
        let s = shape_stats(&Forest {
            k,
            trees: vec![t.clone()],
        });
        bump(&mut lleaf, s.lleaf);
        let e = groups.entry(orbit_representative(t)).or_default();
        e.0 += 1;
        e.1 += u64::from(s.yleaf == 0);
    }
    c.tally("phi-involution", inv);
    c.tally("phi-commute", comm);
    c.tally("phi-types", types);

    let mut unique = Tally::default();
    let mut sizes = Tally::default();
    let mut oint_rel = Tally::default();
    let mut census = IntPolynomial::zero();
    for (rep, &(members, free)) in &groups {
        let s = shape_stats(&Forest {
            k,
            trees: vec![rep.clone()],
        });
        unique.check(free == 1 && s.yleaf == 0, || rep.to_string());
        let oint = acting_labels(rep).len();
        sizes.check(
            members == 1u64 << oint && orbit(rep).len() as u64 == members,
            || rep.to_string(),
        );
        if n >= 2 {
            oint_rel.check(s.oint + 2 * s.oleaf == n, || rep.to_string());
        }
        census = &census
            + &IntPolynomial::one_plus_x_pow(s.oint).shift(s.oleaf);
    }
    c.tally("orbit-unique-representative", unique);
    c.tally("orbit-size", sizes);
    if n >= 2 {
        c.tally("oint-relation", oint_rel);
    }
    // a lone root is a labeled leaf without being an old one
    if n >= 2 {
        c.equal("orbit-census", census, IntPolynomial::from_counts(&lleaf));
    }

    // theta on the marked-forest families
    let forests = enumerate_forests_n(n, k, limits)?;
    let mut x_all = Vec::new();
    let mut y_all = Vec::new();
    let mut x_bar = Vec::new();
    let mut x_hat = Vec::new();
    let mut y_bar = HashSet::new();
    let mut y_hat = HashSet::new();
    for f in &forests {
        let s = forest_stats(f);
        let ls = label_sets(f);
        let bar = is_bar(f);
        for sub in subsets(&ls.si_star) {
            let mf = MarkedForest::new(f.clone(), sub);
            if s.rleaf == 0 {
                if bar {
                    y_bar.insert(mf.clone());
                } else {
                    y_hat.insert(mf.clone());
                }
            }
            y_all.push(mf);
        }
        if s.yleaf == 0 {
            let pool = ls.oint.union(&ls.si_star).copied().collect();
            for sub in subsets(&pool) {
                let mf = MarkedForest::new(f.clone(), sub);
                if s.rleaf == 0 {
                    let fits_bar = mf
                        .marks
                        .iter()
                        .all(|x| ls.oint_star.contains(x) || ls.si_star.contains(x));
                    if bar && fits_bar {
                        x_bar.push(mf.clone());
                    } else if !bar {
                        x_hat.push(mf.clone());
                    }
                }
                x_all.push(mf);
            }
        }
    }
    let mut round = Tally::default();
    for x in &x_all {
        let back = theta(x).and_then(|y| theta_prime(&y));
        round.check(back.as_ref().ok() == Some(x), || x.to_string());
    }
    c.tally("theta-prime-after-theta", round);
    let mut round = Tally::default();
    for y in &y_all {
        let back = theta_prime(y).and_then(|x| theta(&x));
        round.check(back.as_ref().ok() == Some(y), || y.to_string());
    }
    c.tally("theta-after-theta-prime", round);

    let mut lemma = Tally::default();
    let mut img_bar = Vec::new();
    let mut img_hat = Vec::new();
    for (xs, imgs) in [(&x_bar, &mut img_bar), (&x_hat, &mut img_hat)] {
        for x in xs {
            let Ok(y) = theta(x) else {
                lemma.check(false, || x.to_string());
                continue;
            };
            let s1 = x.marks.len() - y.marks.len();
            let before = shape_stats(&x.forest).lleaf_minus_si();
            let after = forest_stats(&y.forest);
            lemma.check(
                after.lleaf_minus_si() == before + s1
                    && after.rleaf == 0
                    && is_bar(&y.forest) == is_bar(&x.forest)
                    && label_sets(&y.forest).si_star == label_sets(&x.forest).si_star,
                || x.to_string(),
            );
            imgs.push(y);
        }
    }
    c.tally("theta-shift", lemma);
    c.image("theta-bar-onto-y-bar", img_bar, &y_bar);
    c.image("theta-hat-onto-y-hat", img_hat, &y_hat);
    Ok(())
}

fn pipeline_cell(c: &mut Cell, limits: &Limits) -> Result<()> {
    let (n, k) = (c.n, c.k);
    let forests = enumerate_forests_n(n, k, limits)?;
    let bar_set: HashSet<Forest> = forests.iter().filter(|f| is_bar(f)).cloned().collect();
    let hat_set: HashSet<Forest> = forests.iter().filter(|f| !is_bar(f)).cloned().collect();

    let mut shift = Tally::default();
    let mut clean = Tally::default();
    let mut class = Tally::default();
    for f in &forests {
        let before = shape_stats(f).lleaf_minus_si() as i64;
        let least = removable_labels(f).min();
        for x in f.labels() {
            let (g, case) = psi(f, x)?;
            let after = shape_stats(&g).lleaf_minus_si() as i64;
            let want = match case {
                PsiCase::AttachToSingleton | PsiCase::MergeIntoLast => 1,
                PsiCase::RemovableOld => -1,
                PsiCase::RemovableYoung => -1 - ejected_leaves(f, x) as i64,
                PsiCase::Identity => 0,
            };
            shift.check(after - before == want, || format!("{f} @ {x}"));
            class.check(is_bar(f) == is_bar(&g), || format!("{f} @ {x}"));
            if least == Some(x) {
                clean.check(after - before == -1, || format!("{f} @ {x}"));
            }
        }
    }
    c.tally("psi-shift", shift);
    c.tally("psi-least-removable-drops-one", clean);
    c.tally("psi-class", class);

    // beta trajectories from every forest
    let mut alpha_inv = Tally::default();
    let mut observe = Tally::default();
    let mut gg = Tally::default();
    let mut lands = Tally::default();
    for f in &forests {
        let mut cur = MarkedForest::unmarked(f.clone());
        while !removable_labels(&cur.forest).is_empty() {
            let (next, mv) = beta_move(&cur)?;
            alpha_inv.check(alpha_step(&next).ok().as_ref() == Some(&cur), || {
                cur.to_string()
            });
            observe.check(no_removable_left_of(&next.forest, mv.y), || {
                format!("{cur} -> {next}")
            });
            cur = next;
        }
        let (end, _) = gamma_prime_trajectory(f)?;
        lands.check(end == cur && gamma_prime_map(f)? == cur, || f.to_string());
        gg.check(gamma_map(&end).ok().as_ref() == Some(f), || f.to_string());
    }
    c.tally("alpha-after-beta", alpha_inv);
    c.tally("observation-no-removable-left", observe);
    c.tally("gamma-prime-trajectory", lands);
    c.tally("gamma-after-gamma-prime", gg);

    // alpha trajectories from every barred or hatted Y-pair
    let mut beta_inv = Tally::default();
    let mut pg = Tally::default();
    let mut img_bar = Vec::new();
    let mut img_hat = Vec::new();
    let mut x_bar_img = Vec::new();
    let mut x_hat_img = Vec::new();
    let mut main_shift = Tally::default();
    for f in &forests {
        let s = forest_stats(f);
        let ls = label_sets(f);
        let bar = is_bar(f);
        if s.rleaf == 0 {
            for sub in subsets(&ls.si_star) {
                let y = MarkedForest::new(f.clone(), sub);
                let mut cur = y.clone();
                while !cur.marks.is_empty() {
                    let next = alpha_step(&cur)?;
                    beta_inv.check(beta_step(&next).ok().as_ref() == Some(&cur), || {
                        cur.to_string()
                    });
                    cur = next;
                }
                let g = gamma_map(&y)?;
                pg.check(gamma_prime_map(&g).ok().as_ref() == Some(&y), || y.to_string());
                if bar {
                    img_bar.push(g);
                } else {
                    img_hat.push(g);
                }
            }
        }
        if s.yleaf == 0 && s.rleaf == 0 {
            let pool = if bar {
                ls.oint_star.union(&ls.si_star).copied().collect()
            } else {
                ls.oint.union(&ls.si_star).copied().collect()
            };
            for sub in subsets(&pool) {
                let x = MarkedForest::new(f.clone(), sub);
                let g = main_bijection(&x)?;
                main_shift.check(
                    shape_stats(&g).lleaf_minus_si() == s.lleaf_minus_si() + x.marks.len()
                        && is_bar(&g) == bar,
                    || x.to_string(),
                );
                if bar {
                    x_bar_img.push(g);
                } else {
                    x_hat_img.push(g);
                }
            }
        }
    }
    c.tally("beta-after-alpha", beta_inv);
    c.tally("gamma-prime-after-gamma", pg);
    c.image("gamma-y-bar-onto-bar", img_bar, &bar_set);
    c.image("gamma-y-hat-onto-hat", img_hat, &hat_set);
    c.tally("main-shift", main_shift);
    c.image("main-x-bar-onto-bar", x_bar_img, &bar_set);
    c.image("main-x-hat-onto-hat", x_hat_img, &hat_set);
    Ok(())
}

fn theorems_cell(c: &mut Cell, limits: &Limits) -> Result<()> {
    let (n, k) = (c.n, c.k);
    let a_n = egf_one_over_k_eulerian(k, n)?.swap_remove(n);
    let dec = symmetric_decompose(&a_n, n - 1)?;
    let forests = enumerate_forests_n(n, k, limits)?;

    let mut d_bar = Vec::new();
    let mut d_hat = Vec::new();
    let mut rel = Tally::default();
    let mut trees = Vec::new();
    let mut t_lleaf = Vec::new();
    for f in &forests {
        let s = forest_stats(f);
        let bar = is_bar(f);
        bump(if bar { &mut d_bar } else { &mut d_hat }, s.lleaf_minus_si());
        let mut ok = s.oleaf + s.yleaf + s.si == s.lleaf;
        if s.yleaf == 0 && s.rleaf == 0 {
            let ls = label_sets(f);
            ok &= if bar {
                ls.oint_star.len() + ls.si_star.len() + 2 * s.oleaf + 1 == n
            } else {
                s.oint + s.si + 2 * s.oleaf == n
            };
        }
        rel.check(ok, || f.to_string());
        if f.trees.len() == 1 {
            bump(&mut t_lleaf, s.lleaf);
            trees.push(f.trees[0].clone());
        }
    }
    let census = census_of(&forests);
    let p = IntPolynomial::from_counts;
    let compose = |center: usize, g: &[u64]| {
        GammaExpansion::from_counts(center, g).map(|e| gamma_compose(&e))
    };
    c.fallible(
        "bar-vs-census",
        compose(n - 1, &census.gamma_bar).map(|r| (p(&d_bar), r)),
    );
    c.fallible(
        "hat-vs-census",
        compose(n, &census.gamma_hat).map(|r| (p(&d_hat), r)),
    );
    c.equal("bar-vs-decomposition", p(&d_bar), dec.a.clone());
    c.equal("hat-vs-decomposition", p(&d_hat), dec.x_b());
    let as_poly = |g: GammaExpansion| IntPolynomial::new(g.gamma);
    c.fallible(
        "gamma-of-a",
        gamma_expand(&dec.a, n - 1).map(|g| (as_poly(g), p(&census.gamma_bar))),
    );
    c.fallible(
        "gamma-of-xb",
        gamma_expand(&dec.x_b(), n).map(|g| (as_poly(g), p(&census.gamma_hat))),
    );
    c.equal(
        "forest-count",
        constant(forests.len() as u64),
        constant(stirling_count_big(n, k)),
    );
    c.tally("forest-relations", rel);

    let mut q_bar = Vec::new();
    let mut q_hat = Vec::new();
    let mut q_tilde = Vec::new();
    for w in enumerate_k_stirling(n, k, limits)? {
        let cl = word_class(&w);
        let ap = stat_ap(&w);
        bump(if cl.in_bar { &mut q_bar } else { &mut q_hat }, ap);
        if cl.in_tilde {
            bump(&mut q_tilde, ap);
        }
    }
    c.equal("words-bar-vs-decomposition", p(&q_bar), dec.a.clone());
    c.equal("words-hat-vs-decomposition", p(&q_hat), dec.x_b());

    if n >= 2 {
        let tilde = tilde_of(&trees, k);
        c.equal("c-vs-trees", p(&q_tilde), p(&t_lleaf));
        c.fallible("c-vs-census", compose(n, &tilde).map(|r| (p(&q_tilde), r)));
    }
    if k == 1 {
        let c_next = distribution(Family::QTilde, Statistic::Ap, n + 1, 1, limits)?;
        c.fallible(
            "k1-reduction",
            descent_polynomial(n, limits).map(|d| (c_next, d.shift(1))),
        );
    }
    Ok(())
}

fn run_cell(suite: Suite, n: usize, k: usize, limits: &Limits) -> Vec<IdentityReport> {
    let mut c = Cell {
        suite,
        n,
        k,
        out: Vec::new(),
    };
    let r = match suite {
        Suite::Polynomials => polynomials_cell(&mut c, limits),
        Suite::Bijections => bijections_cell(&mut c, limits),
        Suite::Gfs => gfs_cell(&mut c, limits),
        Suite::Pipeline => pipeline_cell(&mut c, limits),
        Suite::Theorems => theorems_cell(&mut c, limits),
    };
    if let Err(e) = r {
        c.fallible("cell", Err(e));
    }
    c.out
}

/// Runs the given suites on explicit `(n, k)` cells, in parallel.
pub fn run_cells(
    cells: &[(usize, usize)],
    suites: &[Suite],
    limits: &Limits,
) -> Result<Vec<IdentityReport>> {
    for &(n, k) in cells {
        if n == 0 || k == 0 {
            return Err(Error::Precondition(format!(
                "cells need n, k >= 1, got ({n}, {k})"
            )));
        }
        // the k = 1 reduction looks one size ahead
        let reach = if k == 1 && suites.contains(&Suite::Theorems) {
            n + 1
        } else {
            n
        };
        limits.check("suite cell", stirling_count(reach, k))?;
        if suites.iter().any(|s| matches!(s, Suite::Polynomials | Suite::Theorems)) {
            limits.check_perm(n)?;
        }
    }
    let jobs: Vec<(Suite, usize, usize)> = suites
        .iter()
        .flat_map(|&s| cells.iter().map(move |&(n, k)| (s, n, k)))
        .collect();
    let mut out: Vec<IdentityReport> = jobs
        .par_iter()
        .flat_map_iter(|&(s, n, k)| run_cell(s, n, k, limits))
        .collect();
    out.sort_by(|a, b| (&a.identity, a.n, a.k).cmp(&(&b.identity, b.n, b.k)));
    Ok(out)
}

/// Every cell with `1 <= n <= n_max`, `1 <= k <= k_max`.
pub fn run_suite(
    n_max: usize,
    k_max: usize,
    suites: &[Suite],
    limits: &Limits,
) -> Result<Vec<IdentityReport>> {
    let cells: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=k_max).map(move |k| (n, k)))
        .collect();
    run_cells(&cells, suites, limits)
}

/// Plain-text table, one line per report.
pub fn summary_table(reports: &[IdentityReport]) -> String {
    let width = reports.iter().map(|r| r.identity.len()).max().unwrap_or(8);
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "{:<4} {:<width$} n={:<2} k={:<2} {} {}\n",
            if r.pass { "ok" } else { "FAIL" },
            r.identity,
            r.n,
            r.k,
            r.left,
            r.right,
        ));
        if let Some(w) = &r.witness {
            s.push_str(&format!("     witness: {w}\n"));
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    s.push_str(&format!("{} reports, {} failed\n", reports.len(), failed));
    s
}
