use localic::category::build_tbg_site;
use localic::group::FiniteGroup;
use localic::report::{Report, Verdict};
use localic_cli::run;
use std::path::PathBuf;
use std::sync::Arc;

fn localic(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("localic").chain(args.iter().copied()));
    (out.code, out.output)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn transposition_cosets_are_not_galois() {
    let (code, out) = localic(&["galois", "check", "--group", "S3", "--subgroup", "(1 2)"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("not Galois, |Aut|=1"), "{out}");
}

#[test]
fn six_bijections() {
    let (code, out) = localic(&["locale", "points", "--kind", "bij", "--x", "3", "--y", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("6 points"), "{out}");
}

#[test]
fn z4_site_is_atomic() {
    let (code, out) = localic(&["site", "verify-atomic", "--group", "Z4", "--json"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdict(), Verdict::Pass);
    for axiom in ["(i)", "(ii)", "(iii)", "(iv)"] {
        assert!(r.checks.iter().any(|c| c.name.starts_with(axiom)), "{axiom}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(localic(&["locale", "verify-laws", "--corrupt"]).0, 2);
    assert_eq!(localic(&["enrich", "transitivity", "--group", "S3", "--engine", "lazy", "--budget", "10"]).0, 3);
    assert_eq!(localic(&["galois", "fundamental", "--group", "S3", "--subgroup", "(1 2)"]).0, 2);
    assert_eq!(localic(&["galois", "check", "--group", "S3", "--subgroup", "(1 2"]).0, 1);
    assert_eq!(localic(&["nonsense"]).0, 1);
    assert_eq!(localic(&["--help"]).0, 0);
}

#[test]
fn malformed_files_name_the_location() {
    let p = scratch("bad_group.json", r#"{"permutations": [["(1 2)", "(1 2 3"], 3]}"#);
    let (code, out) = localic(&["group", "define", "--group", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("permutations[0][1]"), "{out}");
    let p = scratch("truncated.json", r#"{"stages": [{"name": "Z2""#);
    let (code, out) = localic(&["chain", "verify", "--chain", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("line 1"), "{out}");
}

#[test]
fn reports_are_byte_stable() {
    let args = ["galois", "split", "--group", "S3", "--cover", "(1 2)", "--json"];
    let (a, b) = (localic(&args), localic(&args));
    assert_eq!(a, b);
    let (_, timed) = localic(&["galois", "check", "--group", "S3", "--timing"]);
    assert!(timed.contains("wall time"));
}

#[test]
fn emitted_groups_reload() {
    for name in ["S3", "Q8", "Z2xZ4"] {
        let (_, first) = localic(&["group", "define", "--group", name, "--emit"]);
        let p = scratch(&format!("{name}.json"), &first);
        let (code, second) = localic(&["group", "define", "--group", p.to_str().unwrap(), "--emit"]);
        assert_eq!(code, 0);
        assert_eq!(first, second);
        let (_, report) = localic(&["group", "define", "--group", p.to_str().unwrap()]);
        assert!(report.contains(&format!("order {}", FiniteGroup::builtin(name).unwrap().order())), "{report}");
    }
}

#[test]
fn gset_file() {
    let group = serde_json::to_string(&FiniteGroup::builtin("S3").unwrap().to_json()).unwrap();
    let body = format!(r#"{{"group": {group}, "points": 4, "generators": [["(1 2)", [1, 0, 2, 3]], ["(1 2 3)", [1, 2, 0, 3]]]}}"#);
    let p = scratch("gset.json", &body);
    let (code, out) = localic(&["gset", "orbits", "--group", "S3", "--file", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("2 orbits on 4 points"), "{out}");
    let bad = body.replace("[1, 2, 0, 3]", "[0, 2, 1, 3]");
    let p = scratch("bad_gset.json", &bad);
    assert_eq!(localic(&["gset", "orbits", "--group", "S3", "--file", p.to_str().unwrap()]).0, 1);
}

#[test]
fn functor_files() {
    let site = build_tbg_site(&Arc::new(FiniteGroup::builtin("Z2").unwrap()), 24).unwrap();
    let doc = serde_json::to_string(&site.functor.to_json(&site.category)).unwrap();
    let p = scratch("z2_functor.json", &doc);
    let f = p.to_str().unwrap();
    assert_eq!(localic(&["site", "verify-atomic", "--functor", f]).0, 0);
    assert_eq!(localic(&["yoneda", "verify", "--functor", f]).0, 0);
    let (code, out) = localic(&["enrich", "points", "--functor", f, "--kind", "bij"]);
    assert_eq!(code, 0);
    assert!(out.contains("2 points"), "{out}");
    assert_eq!(localic(&["enrich", "lifting", "--functor", f]).0, 0);
}

#[test]
fn chains() {
    let (code, out) = localic(&["chain", "factor", "--cyclic", "2,4,8", "--subgroup", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("factors through stage 2"), "{out}");
    assert_eq!(localic(&["chain", "verify", "--cyclic", "2,4,8"]).0, 0);
    let (_, out) = localic(&["chain", "colimit-site", "--cyclic", "2,4,8"]);
    assert!(out.contains("class 3"), "{out}");
    assert!(!out.contains("class 4"), "{out}");
}

#[test]
fn sampled_yoneda_is_seeded() {
    let a = localic(&["yoneda", "verify", "--samples", "3", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, localic(&["yoneda", "verify", "--samples", "3", "--seed", "7"]));
}

#[test]
fn site_file_points() {
    let p = scratch("site.json", r#"{"base": {"elements": ["a","b","c"], "leq": [[0,1]]}, "covers": [{"target": [], "family": [[0],[2]]}]}"#);
    let (code, out) = localic(&["locale", "points", "--site", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("4 points"), "{out}");
}
