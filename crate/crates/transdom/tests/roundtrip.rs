use proptest::prelude::*;
use tempfile::TempDir;
use transdom::cli::run;
use transdom::format::{
    parse_colored, parse_orders, parse_permutation, parse_points, parse_tournament, write_colored,
    write_orders, write_permutation, write_points, write_tournament,
};
use transdom::gen;

fn payload(args: &[String]) -> String {
    let out = run(std::iter::once("transdom".to_string()).chain(args.iter().cloned()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    serde_json::to_string(&report["result"]).unwrap()
}

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tournaments_round_trip(seed: u64, n in 0usize..25) {
        let t = gen::random_tournament(&mut gen::rng(seed), n);
        prop_assert_eq!(parse_tournament(&write_tournament(&t)).unwrap(), t);
    }

    #[test]
    fn colored_tournaments_round_trip(seed: u64, n in 2usize..16) {
        let ct = gen::random_transitive_coloring(&mut gen::rng(seed), n);
        prop_assert_eq!(parse_colored(&write_colored(&ct)).unwrap(), ct);
    }

    #[test]
    fn points_round_trip(seed: u64, n in 1usize..40, d in 1usize..5) {
        let s = gen::random_points(&mut gen::rng(seed), n, d);
        prop_assert_eq!(parse_points(&write_points(&s), false).unwrap(), s);
    }

    #[test]
    fn fractional_points_round_trip(raw in prop::collection::vec((-1000i64..1000, 1i64..50), 1..20)) {
        // distinct x values keep the set in general position along axis 1
        let mut seen = std::collections::BTreeSet::new();
        let text: String = raw
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| seen.insert((p * 1_000_000) / q))
            .map(|(i, &(p, q))| format!("{p}/{q} {}.5\n", i))
            .collect();
        let s = parse_points(&text, false).unwrap();
        prop_assert_eq!(parse_points(&write_points(&s), false).unwrap(), s);
    }

    #[test]
    fn permutations_and_orders_round_trip(seed: u64, n in 0usize..30) {
        let mut r = gen::rng(seed);
        let p = gen::random_permutation(&mut r, n);
        prop_assert_eq!(parse_permutation(&write_permutation(&p)).unwrap(), p);
        let orders: Vec<Vec<usize>> = (0..3).map(|_| gen::random_order(&mut r, n)).collect();
        if n > 0 {
            prop_assert_eq!(parse_orders(&write_orders(&orders)).unwrap(), orders);
        }
    }
}

#[test]
fn generator_outputs_reparse() {
    let dir = TempDir::new().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    for q in [3u64, 7, 11, 19] {
        let f = path(&format!("pt{q}.txt"));
        payload(&args(&["paley", "--q", &q.to_string(), "--out", &f]));
        let t = parse_tournament(&std::fs::read_to_string(&f).unwrap()).unwrap();
        assert_eq!(t, transdom_core::paley::paley_tournament(q).unwrap());
    }

    for d in 1..=3 {
        let f = path(&format!("ext{d}.txt"));
        payload(&args(&["extremal", "--d", &d.to_string(), "--out", &f]));
        let s = parse_points(&std::fs::read_to_string(&f).unwrap(), false).unwrap();
        assert_eq!(s, transdom_core::geometry::extremal_pointset(d).unwrap());
    }

    let perm = path("perm.txt");
    std::fs::write(&perm, "5 3 1 4 2\n").unwrap();
    let ct = path("ct.txt");
    payload(&args(&["permutation", &perm, "--out", &ct]));
    let colored = parse_colored(&std::fs::read_to_string(&ct).unwrap()).unwrap();
    let back = path("back.txt");
    payload(&args(&["recover", &ct, "--out", &back]));
    assert_eq!(std::fs::read_to_string(&back).unwrap(), "5 3 1 4 2\n");

    let scrambled = path("scr.txt");
    payload(&args(&[
        "scramble", &ct, "--colors", "1", "--out", &scrambled,
    ]));
    let s = parse_colored(&std::fs::read_to_string(&scrambled).unwrap()).unwrap();
    let mask = transdom_core::ScramblingMask::from_colors(2, &[1]).unwrap();
    assert_eq!(s, colored.scramble(&mask));

    let orders = path("orders.txt");
    std::fs::write(&orders, "0 1 2 3\n3 2 1 0\n1 3 0 2\n").unwrap();
    let maj = path("maj.txt");
    payload(&args(&["majority", &orders, "--out", &maj]));
    let m = parse_colored(&std::fs::read_to_string(&maj).unwrap()).unwrap();
    assert!(m.is_transitively_colored());

    let c3 = path("c3.txt");
    std::fs::write(&c3, "3\n0 1\n1 2\n2 0\n").unwrap();
    let col = path("col.txt");
    payload(&args(&["colorsearch", &c3, "--k", "3", "--out", &col]));
    let found = parse_colored(&std::fs::read_to_string(&col).unwrap()).unwrap();
    assert!(found.is_transitively_colored());
    assert_eq!(found.base(), &transdom_core::Tournament::cyclic_triangle());
}

#[test]
fn seeded_payloads_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let c3 = dir.path().join("c3.txt");
    std::fs::write(&c3, "3\n0 1\n1 2\n2 0\n").unwrap();
    let c3 = c3.to_str().unwrap();
    let runs = [
        args(&["--seed", "9", "boxcover", "--random", "60", "--dim", "3"]),
        args(&[
            "--seed", "9", "boxcover", "--random", "40", "--dim", "2", "--method", "greedy",
        ]),
        args(&[
            "--seed", "3", "epsnet", c3, "--a", "2", "--b", "2", "--trials", "500",
        ]),
        args(&[
            "--seed", "3", "epsnet", "--q", "11", "--a", "5", "--b", "4", "--trials", "300",
        ]),
        args(&[
            "--seed",
            "5",
            "vc",
            "--q",
            "11",
            "--shatter",
            "6",
            "--sampled",
            "200",
        ]),
        args(&["--seed", "8", "extremal", "--d", "2", "--search", "4"]),
        args(&[
            "appendix",
            "--scan",
            "--max-a",
            "20",
            "--max-b",
            "20",
            "--variant",
            "halved",
        ]),
    ];
    for a in &runs {
        let first = payload(a);
        assert_eq!(first, payload(a), "{a:?}");
    }
    let other = payload(&args(&[
        "--seed", "10", "boxcover", "--random", "60", "--dim", "3",
    ]));
    assert_ne!(payload(&runs[0]), other);
}

#[test]
fn reports_record_seed_and_digest() {
    let out = run([
        "transdom", "--seed", "4", "boxcover", "--random", "20", "--dim", "2",
    ]);
    let r: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r["command"], "boxcover");
    assert_eq!(r["seed"], 4);
    assert_eq!(r["inputs"].as_str().unwrap().len(), 64);
    let again = run([
        "transdom", "--seed", "4", "boxcover", "--random", "20", "--dim", "2",
    ]);
    let s: serde_json::Value = serde_json::from_str(&again.stdout).unwrap();
    assert_eq!(r["inputs"], s["inputs"]);
    let det = run(["transdom", "appendix", "--a", "3", "--b", "3"]);
    let d: serde_json::Value = serde_json::from_str(&det.stdout).unwrap();
    assert_eq!(d["seed"], serde_json::Value::Null);
}
