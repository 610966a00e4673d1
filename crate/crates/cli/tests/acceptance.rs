//! Acceptance criteria, one test per criterion. Each test prints a single PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use repchar::charmap::{check_cocyclic_naturality, check_triangle_degree0};
use repchar::crossedcat::suites::{run_all, SuiteConfig};
use repchar::crossedcat::DeltaSMorphism;
use repchar::cychom::{hc_dims, CyclicModule};
use repchar::exactlin::IntegerMatrix;
use repchar::fincat::{random_shapiro_instance, shapiro_check, FinCategory, ModuleFunctor, SetValuedFunctor, Variance};
use repchar::groupkit::{milnor_model, CellModel, FiniteGroup, ReducedSimplicialSet, SimplicialGroupModel};
use repchar::rephom::{hr_bruteforce_window, hr_derived_abelianization};

fn report(n: usize, what: &str, ok: bool, detail: String) {
    println!("criterion {n} [{}] {what}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_1_worked_combinatorics() {
    let p = |s: &str| DeltaSMorphism::parse(s).unwrap();
    let composite = p("1|x0|1|x3x2x1").compose(&p("x2x1|x4|1|x0x3")).unwrap();
    let f = p("x1x0|x3x4|1|x2");
    let matrix = f.abelianize_psi_sym();
    let expect = IntegerMatrix::from_rows(&[
        vec![1, 0, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, 0, 1],
        vec![0, 1, 0, 0],
        vec![0, 1, 0, 0],
    ]);
    let fac = f.factorize();
    let ok = composite.to_string() == "1|x2x1|1|x0x3x4"
        && matrix == expect
        && fac.g == [0, 0, 1, 1, 3]
        && fac.sigma == [1, 0, 4, 2, 3];
    report(
        1,
        "composite, abelianized matrix and factorization",
        ok,
        format!("composite {composite}, g {:?}, sigma {:?}", fac.g, fac.sigma),
    );
}

#[test]
fn criterion_2_crossed_category_suites() {
    let cfg = SuiteConfig { exhaustive_bound: 3, random_bound: 6, samples: 2000, seed: 2024 };
    let reports = run_all(&cfg);
    let detail = reports
        .iter()
        .map(|r| format!("{} {} checks, {} failures", r.name, r.checked, r.failures.len()))
        .collect::<Vec<_>>()
        .join(", ");
    let ok = reports.len() == 6 && reports.iter().all(|r| r.passed() && r.checked > 0);
    report(2, "crossed-category suites", ok, detail);
}

#[test]
fn criterion_3_shapiro() {
    let g = FiniteGroup::cyclic(2);
    let bz2 = FinCategory::one_object_group(&g);
    let x = ModuleFunctor::constant(&bz2, Variance::Contravariant);
    let regular = shapiro_check(&bz2, &SetValuedFunctor::regular(&g, &bz2), &x, 3).unwrap();
    let regular_ok = regular.holds && regular.elements_side == [1, 0, 0, 0] && regular.base_side == [1, 0, 0, 0];

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut held = 0;
    let total = 200;
    for _ in 0..total {
        let (c, f, x) = random_shapiro_instance(&mut rng, 6, 5);
        assert!(c.num_objects() <= 6);
        if shapiro_check(&c, &f, &x, 3).unwrap().holds {
            held += 1;
        }
    }
    report(
        3,
        "Tor over the category of elements",
        regular_ok && held == total,
        format!("regular B(Z/2) {:?} vs {:?}, random {held}/{total}", regular.elements_side, regular.base_side),
    );
}

/// Number of conjugacy classes by orbit enumeration straight from the multiplication table.
fn class_count(g: &FiniteGroup) -> usize {
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for a in 0..g.order() {
        if seen.insert(a) {
            classes += 1;
            for h in 0..g.order() {
                seen.insert(g.mul(g.mul(h, a), g.inv(h)));
            }
        }
    }
    // Burnside: the number of orbits is the average centralizer size.
    let centralizers: usize =
        (0..g.order()).map(|a| (0..g.order()).filter(|&h| g.mul(h, a) == g.mul(a, h)).count()).sum();
    assert_eq!(centralizers, classes * g.order());
    classes
}

#[test]
fn criterion_4_cyclic_homology() {
    let groups = [
        ("Z/2", FiniteGroup::cyclic(2)),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("Z/4", FiniteGroup::cyclic(4)),
        ("S3", FiniteGroup::symmetric(3)),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, g) in &groups {
        let c = class_count(g);
        let dims = hc_dims(g, 4).unwrap().dims();
        let identities = CyclicModule::build(g, 4).check_identities();
        ok &= dims == vec![c, 0, c, 0, c] && identities.is_ok();
        detail.push(format!("{name} {dims:?}"));
    }
    report(4, "HC_* of group algebras", ok, detail.join(", "));
}

/// Dimensions of the free graded-commutative algebra on `ranks[q - 1]` generators in
/// degree `q`, up to degree `top`, as a power series product.
fn graded_commutative_oracle(ranks: &[usize], top: usize) -> Vec<usize> {
    let mut series = vec![0usize; top + 1];
    series[0] = 1;
    for (i, &r) in ranks.iter().enumerate() {
        let q = i + 1;
        for _ in 0..r {
            if q % 2 == 1 {
                for d in (q..=top).rev() {
                    series[d] += series[d - q];
                }
            } else {
                for d in q..=top {
                    series[d] += series[d - q];
                }
            }
        }
    }
    series
}

fn compare_model(name: &str, m: &SimplicialGroupModel, n: usize, bound: i64, pi_ranks: &[usize], weights: usize) -> (bool, String) {
    let expected = graded_commutative_oracle(pi_ranks, n);
    let derived = hr_derived_abelianization(m, n).unwrap();
    let window = hr_bruteforce_window(m, n, bound).unwrap();
    let ok = derived.per_weight == expected
        && window.is_stable()
        && window.disagreements(&derived).is_empty()
        && window.at_bound.len() == weights
        && window.at_bound.values().all(|d| *d == expected);
    (ok, format!("{name} per weight {expected:?} over {} weights", window.at_bound.len()))
}

#[test]
fn criterion_5_derived_equals_window() {
    let n = 3;
    let constant = SimplicialGroupModel::constant_free(1, n + 2);
    let sphere = milnor_model(&ReducedSimplicialSet::circle(), n + 2).unwrap();
    let torus = CellModel::torus().build(n + 2).unwrap();
    let cases = [
        compare_model("constant F_1", &constant, n, 2, &[0, 0, 0], 5),
        compare_model("Milnor S^1", &sphere, n, 2, &[1, 0, 0], 1),
        compare_model("T^2", &torus, n, 1, &[1, 0, 0], 9),
    ];
    report(
        5,
        "derived HR against windowed brute force",
        cases.iter().all(|c| c.0),
        cases.iter().map(|c| c.1.clone()).collect::<Vec<_>>().join("; "),
    );
}

/// |Γ_ab| from the closure of the commutators.
fn abelianization_order(g: &FiniteGroup) -> usize {
    let mut sub: BTreeSet<usize> = BTreeSet::from([g.identity()]);
    for a in 0..g.order() {
        for b in 0..g.order() {
            sub.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
    }
    loop {
        let next: BTreeSet<usize> = sub.iter().flat_map(|&a| sub.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
        if next == sub {
            break;
        }
        sub = next;
    }
    g.order() / sub.len()
}

#[test]
fn criterion_6_character_triangle() {
    let groups = [
        ("trivial", FiniteGroup::trivial()),
        ("Z/2", FiniteGroup::cyclic(2)),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("S3", FiniteGroup::symmetric(3)),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, g) in &groups {
        let t = check_triangle_degree0(g).unwrap();
        let ab = abelianization_order(g);
        ok &= t.holds() && t.character_rank == ab && t.hr0_dim == ab;
        detail.push(format!("{name} rank {}/{ab}", t.character_rank));
    }
    report(6, "degree-0 character triangle", ok, detail.join(", "));
}

#[test]
fn criterion_7_cocyclic_naturality() {
    let r = check_cocyclic_naturality(4);
    report(
        7,
        "cocyclic naturality up to level 4",
        r.passed(),
        format!("{} generators checked, {} failures", r.generators_checked, r.failures.len()),
    );
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli_suite(seed: &str) -> Vec<u8> {
    let jobs: Vec<Vec<String>> = vec![
        vec!["hc".into(), "--group".into(), data("s3.json")],
        vec!["hr".into(), "--model".into(), data("torus_cells.json"), "--window".into(), "1".into()],
        vec!["hr0".into(), "--presentation".into(), data("torus_presentation.json"), "--gln".into(), "2".into()],
        vec!["char".into(), "--group".into(), data("s3.json")],
        vec!["triangle-check".into(), "--group".into(), data("s3.json")],
        vec!["shapiro-check".into()],
        vec!["--format".into(), "json".into(), "cat-check".into()],
        vec!["validate".into(), data("broken_identity.json")],
    ];
    let mut out = Vec::new();
    for args in jobs {
        let o = Command::new(env!("CARGO_BIN_EXE_repchar")).arg("--seed").arg(seed).args(&args).output().unwrap();
        out.extend_from_slice(&o.stdout);
        out.extend_from_slice(&o.stderr);
        out.push(o.status.code().unwrap_or(-1) as u8);
    }
    out
}

#[test]
fn criterion_8_cli_determinism() {
    let a = cli_suite("11");
    let b = cli_suite("11");
    report(8, "byte-identical CLI runs", a == b && !a.is_empty(), format!("{} bytes per run", a.len()));
}
