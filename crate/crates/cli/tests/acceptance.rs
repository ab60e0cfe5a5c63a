//! One line per acceptance criterion; run with `cargo test --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

use arrangetop::arrangement::catalog::{ceva3, test_catalog};
use arrangetop::braid::{braid_monodromy, decone};
use arrangetop::cover::orbit_count;
use arrangetop::cyclo::{CycNumber, MultiPoly};
use arrangetop::milnorfiber::{milnor_spectrum, spectrum_crosscheck};
use arrangetop::pencil::{lift_pencil, milnor_algebra, pencil_from_blocks, UV};

const BIN: &str = env!("CARGO_BIN_EXE_arrangetop");
const CEVA_PENCIL: &str = "[[1,2,3],[7,8,9],[4,5,6]]";

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or(Value::Null)
    }
}

fn cli(args: &[&str]) -> Run {
    let t = Instant::now();
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        elapsed: t.elapsed(),
    }
}

fn report(results: &mut Vec<bool>, n: usize, name: &str, outcome: Result<String, String>) {
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("[{tag}] {n}. {name}: {detail}");
    results.push(outcome.is_ok());
}

fn check(cond: bool, ok: String, bad: String) -> Result<String, String> {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn ceva_dims_ok(v: &Value) -> bool {
    let want = [8, 0, 0, 2, 0, 0, 2, 0, 0];
    (0..9).all(|e| v["dims"][e.to_string()] == want[e]) && v["b1F"] == 12 && v["d"] == 9
}

fn lattice() -> Result<String, String> {
    let r = cli(&["lattice", "--builtin", "ceva3", "--format", "json"]);
    let v = r.json();
    let (m3, m2) = (&v["counts"]["3"], &v["counts"]["2"]);
    check(
        r.code == 0 && *m3 == 12 && *m2 == 0 && r.elapsed < Duration::from_secs(1),
        format!("{m3} triple points, {m2} double points in {:.2?}", r.elapsed),
        format!("exit {}, counts {}, {:.2?}", r.code, v["counts"], r.elapsed),
    )
}

fn spectrum() -> Result<String, String> {
    let r = cli(&["spectrum", "--builtin", "ceva3", "--format", "json"]);
    let v = r.json();
    check(
        r.code == 0 && ceva_dims_ok(&v) && r.elapsed < Duration::from_secs(60),
        format!("dims {} b1F {} in {:.2?}", v["dims"], v["b1F"], r.elapsed),
        format!("exit {}, output {}", r.code, r.stdout.trim()),
    )
}

fn deconing() -> Result<String, String> {
    let bad: Vec<usize> = (1..=9)
        .filter(|i| {
            let r = cli(&["spectrum", "--builtin", "ceva3", "--format", "json", "--infinity", &i.to_string()]);
            r.code != 0 || !ceva_dims_ok(&r.json())
        })
        .collect();
    check(bad.is_empty(), "identical spectrum for all 9 lines at infinity".into(), format!("differs for lines {bad:?}"))
}

fn cubes(i: usize, j: usize) -> MultiPoly {
    let xyz = ["x", "y", "z"];
    MultiPoly::var(&xyz, i).pow(3).sub(&MultiPoly::var(&xyz, j).pow(3))
}

fn lifted_curve() -> Result<String, String> {
    let r = cli(&["pencil", "--builtin", "ceva3", "--blocks", CEVA_PENCIL, "--format", "json"]);
    let v = r.json();
    let a = ceva3();
    let f = MultiPoly::product(&["x", "y", "z"], &[cubes(0, 1), cubes(1, 2), cubes(0, 2)]);
    let (u, w) = (MultiPoly::var(&UV, 0), MultiPoly::var(&UV, 1));
    let g = u.mul(&w).mul(&u.add(&w));
    let identity = g.compose(&[cubes(0, 1), cubes(1, 2)]) == f && a.defining_polynomial() == f;
    let lib = pencil_from_blocks(&a, &[vec![(0, 1), (1, 1), (2, 1)], vec![(6, 1), (7, 1), (8, 1)], vec![(3, 1), (4, 1), (5, 1)]])
        .and_then(|p| lift_pencil(&a, &p))
        .map(|c| c.certified && c.g == g)
        .unwrap_or(false);
    check(
        r.code == 0 && v["lifted_equation"] == "u^2*v + u*v^2 = 1" && v["certified"] == true && identity && lib,
        format!("{} certified; g(x^3-y^3, y^3-z^3) = f", v["lifted_equation"]),
        format!("exit {}, output {}", r.code, r.stdout.trim()),
    )
}

fn curve_invariants() -> Result<String, String> {
    let r = cli(&["pencil", "--builtin", "ceva3", "--blocks", CEVA_PENCIL, "--format", "json"]);
    let v = r.json();
    let (u, w) = (MultiPoly::var(&UV, 0), MultiPoly::var(&UV, 1));
    let g = u.mul(&w).mul(&u.add(&w));
    let two = CycNumber::from_int(2);
    let m = milnor_algebra(&g).map_err(|e| e.to_string())?;
    let ideal = [u.pow(2).add(&u.mul(&w).scale(&two)), w.pow(2).add(&u.mul(&w).scale(&two))];
    let ideal_ok = ideal.iter().all(|h| m.generators.contains(h));
    let e = &v["E_dims"];
    check(
        v["chi"] == -3 && v["genus"] == 1 && e["e11"] == 2 && e["e10"] == 1 && e["e01"] == 1 && ideal_ok && m.graded_dims[..3] == [1, 2, 1],
        "chi -3, genus 1, M graded (1,2,1), E = (2,1,1)".to_string(),
        format!("chi {}, genus {}, E {}, graded {:?}", v["chi"], v["genus"], e, m.graded_dims),
    )
}

fn cover() -> Result<String, String> {
    let r = cli(&["cover", "--builtin", "central(4)", "--point", "1", "--format", "json"]);
    let c = &r.json()["components"];
    let (a, b) = (orbit_count(9, &[3]), orbit_count(9, &[1]));
    check(
        a == 3 && b == 1 && *c == 4,
        format!("orbit_count(9,{{3}}) = {a}, orbit_count(9,{{1}}) = {b}, central(4) local fiber has {c} components"),
        format!("orbit counts {a}, {b}; central(4) {c}"),
    )
}

fn obstruction() -> Result<String, String> {
    let text = cli(&["report", "--builtin", "ceva3"]);
    let last = text.stdout.lines().last().unwrap_or("").to_string();
    let r = cli(&["report", "--builtin", "ceva3", "--format", "json"]);
    let v = &r.json()["verdict"];
    check(
        text.code == 0
            && r.code == 0
            && last.starts_with("verdict NOT_1_FORMAL")
            && v["verdict"] == "NOT_1_FORMAL"
            && v["witness"]["inequality"] == "2 > 1"
            && v["fiber"]["w1F"] == 4,
        last.clone(),
        format!("exit {}/{}, last line {last:?}, verdict {v}", text.code, r.code),
    )
}

fn field_axioms() -> Result<usize, String> {
    let cases = 1000;
    let mut runner = TestRunner::new(Config { cases: cases as u32, failure_persistence: None, ..Config::default() });
    let strat = prop::sample::select(vec![1u32, 3, 4, 9, 12]).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, n as usize), 3).prop_map(move |v| {
            v.into_iter()
                .map(|c| c.iter().enumerate().fold(CycNumber::zero(n), |acc, (k, &x)| &acc + &(&CycNumber::zeta_pow(n, k as i64) * &CycNumber::from_int(x))))
                .collect::<Vec<_>>()
        })
    });
    runner
        .run(&strat, |v| {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(&(a * b) * c, a * &(b * c));
            prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
            if !a.is_zero() {
                prop_assert!((a * &a.inv().unwrap()).is_one());
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

fn property_suites() -> Result<String, String> {
    let t = Instant::now();
    let mut failures = Vec::new();
    for a in test_catalog() {
        let name = a.label().unwrap_or("?").to_string();
        let d = a.degree();
        let l = a.lattice();
        let pairs: usize = l.points.iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum();
        if pairs != d * (d - 1) / 2 {
            failures.push(format!("{name}: double count"));
        }
        if d >= 2 {
            match decone(&a, d - 1).and_then(|aa| Ok((braid_monodromy(&aa)?, aa))) {
                Ok((md, aa)) => {
                    let want: i64 = aa.points.iter().map(|p| (p.lines.len() * (p.lines.len() - 1)) as i64).sum();
                    if md.total_exponent_sum() != want || !md.events.iter().all(|e| e.braid.is_pure()) {
                        failures.push(format!("{name}: braid identities"));
                    }
                }
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
        match milnor_spectrum(&a) {
            Ok(s) => {
                let dd = d as u32;
                if s.dim(0) + 1 != d || !(1..dd).all(|e| s.dim(e) == s.dim(dd - e)) {
                    failures.push(format!("{name}: spectrum symmetry"));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
        if d <= 6 && !spectrum_crosscheck(&a).unwrap_or(false) {
            failures.push(format!("{name}: crosscheck"));
        }
    }
    let cases = field_axioms().map_err(|e| format!("field axioms: {e}"))?;
    let elapsed = t.elapsed();
    check(
        failures.is_empty() && elapsed < Duration::from_secs(300),
        format!("{} catalog arrangements, {cases} field-axiom cases in {elapsed:.2?}", test_catalog().len()),
        failures.join("; "),
    )
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    println!();
    report(&mut results, 1, "lattice", lattice());
    report(&mut results, 2, "spectrum", spectrum());
    report(&mut results, 3, "deconing independence", deconing());
    report(&mut results, 4, "lifted curve", lifted_curve());
    report(&mut results, 5, "curve invariants", curve_invariants());
    report(&mut results, 6, "cover calculus", cover());
    report(&mut results, 7, "obstruction", obstruction());
    report(&mut results, 8, "property suites", property_suites());
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
