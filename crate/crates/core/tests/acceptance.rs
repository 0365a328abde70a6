//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kstirling::*;

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn e<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Every report whose identity passes `keep` must pass, and there must be some.
fn all_pass(reports: &[IdentityReport], keep: impl Fn(&IdentityReport) -> bool) -> Check {
    let picked: Vec<&IdentityReport> = reports.iter().filter(|r| keep(r)).collect();
    ensure(!picked.is_empty(), || "no reports selected".into())?;
    match picked.iter().find(|r| !r.pass) {
        None => Ok(()),
        Some(r) => Err(format!(
            "{} failed at n={} k={}: {}",
            r.identity,
            r.n,
            r.k,
            r.witness.as_deref().unwrap_or("")
        )),
    }
}

fn has(reports: &[IdentityReport], names: &[&str]) -> Check {
    for name in names {
        ensure(reports.iter().any(|r| r.identity == *name), || {
            format!("missing report {name}")
        })?;
    }
    Ok(())
}

fn grid(n_for_k: impl Fn(usize) -> usize, ks: &[usize]) -> Vec<(usize, usize)> {
    ks.iter()
        .flat_map(|&k| (1..=n_for_k(k)).map(move |n| (n, k)))
        .collect()
}

fn criterion_1() -> Check {
    let l = Limits::default();
    let c = e(gamma_census_bar_hat(3, 2, &l))?;
    same("gamma_bar", c.gamma_bar, vec![1, 5])?;
    same("gamma_hat", c.gamma_hat, vec![0, 3])?;
    let a = e(exc_cyc_polynomial(3, 2, &l))?;
    let d = e(symmetric_decompose(&a, 2))?;
    same("a", d.a, p(&[1, 7, 1]))?;
    same("b", d.b, p(&[3, 3]))
}

fn criterion_2() -> Check {
    let l = Limits::default();
    let cases: [(usize, &[i64], &[u64]); 3] = [
        (2, &[0, 3], &[0, 3]),
        (3, &[0, 9, 9], &[0, 9]),
        (4, &[0, 27, 108, 27], &[0, 27, 54]),
    ];
    for (n, c, g) in cases {
        let got = e(distribution(Family::QTilde, Statistic::Ap, n, 3, &l))?;
        same(&format!("c at n={n}"), got, p(c))?;
        same(
            &format!("tilde census at n={n}"),
            e(gamma_census_tilde(n, 3, &l))?,
            g.to_vec(),
        )?;
    }
    Ok(())
}

const BARRED_N3: [&str; 9] = [
    "1 2 3",
    "1[2;] 3",
    "1[3;] 2",
    "1[;3] 2",
    "1[;2[3;]]",
    "1[;2[;3]]",
    "1[;2] 3",
    "1 2[;3]",
    "1[;2,3]",
];
const HATTED_N3: [&str; 6] = [
    "1 2[3;]",
    "1[2[3;];]",
    "1[2[;3];]",
    "1[2,3;]",
    "1[2;3]",
    "1[3;2]",
];

fn text_forest(s: &str, k: usize) -> std::result::Result<Forest, String> {
    e(parse_forest(s, k))
}

fn marked(s: &str, k: usize) -> std::result::Result<MarkedForest, String> {
    e(MarkedForest::parse(s, k))
}

fn criterion_3() -> Check {
    let l = Limits::default();
    let all = e(enumerate_forests_n(3, 2, &l))?;
    let bar: BTreeSet<String> = all.iter().filter(|f| is_bar(f)).map(|f| f.to_string()).collect();
    let hat: BTreeSet<String> = all.iter().filter(|f| !is_bar(f)).map(|f| f.to_string()).collect();
    same("|F-bar_3(2)|", bar.len(), 9)?;
    same("|F-hat_3(2)|", hat.len(), 6)?;
    same("F-bar_3(2)", bar, BARRED_N3.iter().map(|s| s.to_string()).collect())?;
    same("F-hat_3(2)", hat, HATTED_N3.iter().map(|s| s.to_string()).collect())?;

    // sample forest with classes and removable leaves
    let sample = text_forest("1[10;;9] 2[;;3] 4[5[;6;],8;;7]", 3)?;
    same("sample text", sample.to_string(), "1[10;;9] 2[;;3] 4[5[;6;],8;;7]".into())?;
    for (x, c) in [
        (6, NodeClass::OldLeaf),
        (8, NodeClass::OldLeaf),
        (5, NodeClass::YoungInternal),
        (7, NodeClass::YoungLeaf),
        (4, NodeClass::Root),
    ] {
        same(&format!("class of {x}"), e(classify_label(&sample, x))?, c)?;
    }
    let r = removable_labels(&sample);
    same("removable old", r.old, BTreeSet::from([3]))?;
    ensure(r.young.is_empty(), || "sample has no removable young leaf".into())?;

    // word to forest transports
    let w = e(KStirlingWord::parse("133377711446664225552888", 3))?;
    same("xi", xi(&w).to_string(), "1[;3,7;] 2[4[;;6];;5] 8".into())?;
    let w = e(KStirlingWord::parse("888244666422555113337771", 3))?;
    let z = zeta(&w);
    same("zeta", z.to_string(), "1[;3,7;] 2[4[;;6];;5] 8".into())?;
    let s = forest_stats(&z);
    same("lleaf, si", (s.lleaf, s.si), (5, 1))?;
    same("ap", stat_ap(&w), 4)?;

    // the group action
    let t = e(parse_tree("1[3,4[5,10;6[;9;],8;7];;2]", 3))?;
    let (u, _) = e(phi(&t, 4))?;
    same("phi_4", u.to_string(), "1[3,4,5,10;6[;9;],8;2,7]".into())?;
    same("phi_4 twice", e(phi(&u, 4))?.0, t)?;
    let f = text_forest("1[;3[;7;];2] 4[;;5[;6,8;]] 9", 3)?;
    same(
        "phi_{3,5}",
        e(phi_set(&f, &BTreeSet::from([3, 5])))?.to_string(),
        "1[;3,7;2] 4[;6,8;5] 9".into(),
    )?;

    // Psi, both directions
    let f1 = text_forest("1[3;;7] 2 4[;;6] 5 8", 3)?;
    let f2 = e(psi(&f1, 2))?.0;
    same("psi_2 (singleton run)", f2.to_string(), "1[3;;7] 2[;;4[;;6],5] 8".into())?;
    same("psi_5 back", e(psi(&f2, 5))?.0, f1)?;
    let f3 = text_forest("1[3;;7] 2 4[;;9] 5[;8;6]", 3)?;
    let f4 = e(psi(&f3, 2))?.0;
    same("psi_2 (last tree)", f4.to_string(), "1[3;;7] 2[;8;4[;;9],5,6]".into())?;
    same("psi_5 back", e(psi(&f4, 5))?.0, f3)?;

    // alpha, Gamma and beta
    let start = marked("1 2[;5;] 3 4[;;7] 6 8[;9,10;] | {1,3}", 3)?;
    let one = e(alpha_step(&start))?;
    same(
        "alpha once",
        one.to_string(),
        "1 2[;5;] 3[;;4[;;7],6] 8[;9,10;] | {1}".into(),
    )?;
    let two = e(alpha_step(&one))?;
    same(
        "alpha twice",
        two.to_string(),
        "1[;9,10;2[;5;],3[;;4[;;7],6],8] | {}".into(),
    )?;
    same("gamma", e(gamma_map(&start))?, two.forest.clone())?;
    let tree = text_forest("1[;4,7;2[;5;],3,6[;8;]]", 3)?;
    let b = e(beta_step(&MarkedForest::unmarked(tree.clone())))?;
    same("beta", b.to_string(), "1 2[;5;] 3[;4,7;6[;8;]] | {1}".into())?;
    let end = e(gamma_prime_map(&tree))?;
    same("gamma after gamma prime", e(gamma_map(&end))?, tree)
}

fn criterion_4() -> Check {
    let l = Limits::default();
    let r = e(run_suite(6, 3, &[Suite::Polynomials], &l))?;
    has(
        &r,
        &[
            "polynomials.egf-vs-exc-cyc",
            "polynomials.egf-vs-ap",
            "polynomials.count",
        ],
    )?;
    all_pass(&r, |_| true)?;
    for k in 1..=3usize {
        for n in 1..=6usize {
            let prod: i64 = (1..n as i64).map(|i| i * k as i64 + 1).product();
            let a = e(ap_polynomial(n, k, &l))?;
            same(
                &format!("A({n},{k})(1)"),
                a.eval(&1.into()),
                prod.into(),
            )?;
        }
    }
    Ok(())
}

fn ap_polynomial(n: usize, k: usize, l: &Limits) -> kstirling::Result<IntPolynomial> {
    kstirling::stirling::ap_polynomial(n, k, l)
}

fn theorem_cells() -> Vec<(usize, usize)> {
    grid(|k| if k <= 2 { 7 } else { 6 }, &[1, 2, 3])
}

fn criterion_5(r: &[IdentityReport]) -> Check {
    let names = [
        "theorems.bar-vs-census",
        "theorems.hat-vs-census",
        "theorems.bar-vs-decomposition",
        "theorems.hat-vs-decomposition",
        "theorems.gamma-of-a",
        "theorems.gamma-of-xb",
        "theorems.words-bar-vs-decomposition",
        "theorems.words-hat-vs-decomposition",
    ];
    has(r, &names)?;
    all_pass(r, |x| names.contains(&x.identity.as_str()))?;
    let big = r
        .iter()
        .any(|x| x.identity == names[0] && (x.n, x.k) == (7, 2));
    ensure(big, || "the (7, 2) cell did not run".into())
}

fn criterion_6(r: &[IdentityReport]) -> Check {
    let names = ["theorems.c-vs-trees", "theorems.c-vs-census"];
    has(r, &names)?;
    all_pass(r, |x| names.contains(&x.identity.as_str()))?;
    let k1: Vec<usize> = r
        .iter()
        .filter(|x| x.identity == "theorems.k1-reduction")
        .map(|x| x.n)
        .collect();
    same("k=1 reduction sizes", k1, (1..=7).collect())?;
    all_pass(r, |x| x.identity == "theorems.k1-reduction")
}

fn criterion_7() -> Check {
    let r = e(run_suite(6, 3, &[Suite::Bijections], &Limits::default()))?;
    has(
        &r,
        &[
            "bijections.xi-round-trip",
            "bijections.xi-lap-to-lleaf",
            "bijections.chi-round-trip",
            "bijections.chi-ap-to-lleaf",
            "bijections.zeta-round-trip",
            "bijections.zeta-ap-to-lleaf-si",
            "bijections.zeta-bar-onto-bar",
        ],
    )?;
    all_pass(&r, |_| true)
}

fn criterion_8() -> Check {
    let r = e(run_suite(5, 3, &[Suite::Gfs], &Limits::default()))?;
    has(
        &r,
        &[
            "gfs.phi-involution",
            "gfs.phi-commute",
            "gfs.phi-types",
            "gfs.orbit-unique-representative",
            "gfs.orbit-census",
        ],
    )?;
    all_pass(&r, |_| true)
}

fn criterion_9() -> Check {
    let r = e(run_suite(5, 3, &[Suite::Pipeline], &Limits::default()))?;
    has(
        &r,
        &[
            "pipeline.alpha-after-beta",
            "pipeline.beta-after-alpha",
            "pipeline.gamma-after-gamma-prime",
            "pipeline.gamma-prime-after-gamma",
            "pipeline.observation-no-removable-left",
            "pipeline.main-x-bar-onto-bar",
            "pipeline.main-x-hat-onto-hat",
            "pipeline.main-shift",
        ],
    )?;
    all_pass(&r, |_| true)
}

fn criterion_10(r: &[IdentityReport]) -> Check {
    has(r, &["theorems.forest-relations"])?;
    all_pass(r, |x| x.identity == "theorems.forest-relations")
}

fn run(id: usize, what: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let t = Instant::now();
    let out = f();
    let took = t.elapsed();
    let late = limit.is_some_and(|l| took > l);
    let ok = out.is_ok() && !late;
    let bound = limit.map_or(String::new(), |l| format!(", limit {l:?}"));
    println!(
        "{} criterion {id}: {what} ({took:.2?}{bound})",
        if ok { "PASS" } else { "FAIL" }
    );
    if let Err(m) = out {
        println!("    {m}");
    } else if late {
        println!("    over the time limit");
    }
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= run(1, "census and decomposition at (3,2)", Some(secs(1)), criterion_1);
    ok &= run(2, "tree polynomials c at k=3", Some(secs(1)), criterion_2);
    ok &= run(3, "forest totals and golden fixtures", None, criterion_3);
    ok &= run(4, "three routes to A_n^(k), n<=6, k<=3", Some(secs(30)), criterion_4);

    let mut theorems = Vec::new();
    ok &= run(5, "bar/hat gamma expansions and decomposition", Some(secs(300)), || {
        theorems = e(run_cells(&theorem_cells(), &[Suite::Theorems], &Limits::default()))?;
        criterion_5(&theorems)
    });
    ok &= run(6, "tree theorem and the k=1 reduction", None, || criterion_6(&theorems));
    ok &= run(7, "xi, chi, zeta round trips and transport", None, criterion_7);
    ok &= run(8, "action laws and orbit census, n<=5, k<=3", None, criterion_8);
    ok &= run(9, "alpha/beta/Gamma pipeline, n<=5, k<=3", Some(secs(120)), criterion_9);
    ok &= run(10, "forest counting relations", None, || criterion_10(&theorems));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
