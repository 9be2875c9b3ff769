//! Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use slidetok::caterpillar::mark_locked;
use slidetok::oracle::{
    bfs, caterpillars, crosscheck_exhaustive, gen_instance, independent_sets, is_stuck, tp_reps,
    GenClass, DEFAULT_BUDGET,
};
use slidetok::{
    path_graph, recognize_caterpillar, solve, validate_sequence, Class, ClassChoice,
    IndependentSet, Instance, IntervalRepresentation, Outcome, Structure, Vertex,
};

type Criterion = (&'static str, fn() -> Check);

struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check {
        ok,
        detail: detail.into(),
    }
}

fn sets(inst: &Instance) -> (slidetok::Graph, IndependentSet, IndependentSet) {
    let g = inst.graph();
    let b = IndependentSet::new(&g, inst.blue.iter().copied()).unwrap();
    let r = IndependentSet::new(&g, inst.red.iter().copied()).unwrap();
    (g, b, r)
}

fn swapped(inst: &Instance) -> Instance {
    Instance {
        structure: inst.structure.clone(),
        blue: inst.red.clone(),
        red: inst.blue.clone(),
    }
}

/// Random connected proper instances all solve, and every sequence replays.
fn proper_totality() -> Check {
    let start = Instant::now();
    let (mut done, mut failures, mut seed) = (0usize, Vec::new(), 0u64);
    while done < 10_000 {
        let n = match seed % 49 {
            0 => 1,
            r => r as usize + 2,
        };
        let k = (seed / 49) as usize % (n / 3 + 1);
        seed += 1;
        let Ok(inst) = gen_instance(GenClass::Proper, n, k, seed) else {
            continue;
        };
        done += 1;
        let (g, b, r) = sets(&inst);
        match solve(&inst, ClassChoice::Only(Class::Proper)) {
            Ok((_, Outcome::Yes(seq))) if validate_sequence(&g, &b, &r, &seq).is_ok() => {}
            other => failures.push(format!(
                "{} -> {:?}",
                inst.to_inline(),
                other.map(|o| o.1.moves())
            )),
        }
    }
    let t = start.elapsed();
    check(
        failures.is_empty() && t < Duration::from_secs(60),
        format!(
            "{done} instances, {} failures, {:.1?}{}",
            failures.len(),
            t,
            first(&failures)
        ),
    )
}

fn first(v: &[String]) -> String {
    v.first()
        .map(|s| format!("; first: {s}"))
        .unwrap_or_default()
}

/// Exhaustive solver/oracle equality on small instances.
fn oracle_equality() -> Check {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    let mut sample = String::new();
    for (class, n_max) in [
        (GenClass::Proper, 8),
        (GenClass::Tp, 8),
        (GenClass::Caterpillar, 10),
    ] {
        let r = crosscheck_exhaustive(class, n_max, 3, DEFAULT_BUDGET, 0);
        ok &= r.mismatches.is_empty() && r.checked > 0;
        if let (Some(m), true) = (r.mismatches.first(), sample.is_empty()) {
            sample = format!("; first: {m}");
        }
        parts.push(format!(
            "{class} n<={n_max}: {} pairs, {} mismatches",
            r.checked,
            r.mismatches.len()
        ));
    }
    let t = start.elapsed();
    check(
        ok && t < Duration::from_secs(600),
        format!("{}, {:.1?}{sample}", parts.join("; "), t),
    )
}

fn path_rep(n: usize) -> IntervalRepresentation {
    let iv: Vec<(u64, u64)> = (0..n as u64).map(|i| (2 * i, 2 * i + 3)).collect();
    IntervalRepresentation::from_intervals(&iv)
}

/// Tokens on the first odd vertices of a path of length 8k travel to the
/// last even ones.
fn path_family() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for k in 1..=3usize {
        let n = 8 * k;
        let blue: Vec<Vertex> = (1..=k as u32).map(|i| Vertex::new(2 * i - 1)).collect();
        let red: Vec<Vertex> = (1..=k as u32)
            .map(|i| Vertex::new(6 * k as u32 + 2 * i))
            .collect();
        let want = k * (6 * k + 1);
        let as_rep = Instance {
            structure: Structure::Rep(path_rep(n)),
            blue: blue.clone(),
            red: red.clone(),
        };
        let as_tree = Instance {
            structure: Structure::Edges(path_graph(n)),
            blue,
            red,
        };
        let p = solve(&as_rep, ClassChoice::Only(Class::Proper))
            .ok()
            .and_then(|o| o.1.moves());
        let c = solve(&as_tree, ClassChoice::Only(Class::Caterpillar))
            .ok()
            .and_then(|o| o.1.moves());
        let (g, b, r) = sets(&as_tree);
        let o = bfs(&g, &b, &r, DEFAULT_BUDGET)
            .ok()
            .and_then(|x| x.distance);
        ok &= p == Some(want) && c == Some(want) && o == Some(want);
        notes.push(format!(
            "k={k}: want {want}, proper {p:?}, caterpillar {c:?}, oracle {o:?}"
        ));
    }
    check(ok, notes.join("; "))
}

/// Every trivially perfect YES instance uses at most two slides per token.
fn tp_two_slides() -> Check {
    let (mut yes, mut bad) = (0usize, Vec::new());
    for n in 1..=8 {
        for rep in tp_reps(n) {
            let g = rep.intersection_graph();
            for k in 0..=3 {
                let all = independent_sets(&g, k);
                for b in &all {
                    for r in &all {
                        let inst = Instance {
                            structure: Structure::Rep(rep.clone()),
                            blue: b.vertices().to_vec(),
                            red: r.vertices().to_vec(),
                        };
                        if let Ok((_, Outcome::Yes(seq))) =
                            solve(&inst, ClassChoice::Only(Class::TriviallyPerfect))
                        {
                            yes += 1;
                            if seq.len_moves() > 2 * k {
                                bad.push(format!("{} -> {}", inst.to_inline(), seq.len_moves()));
                            }
                        }
                    }
                }
            }
        }
    }
    check(
        bad.is_empty() && yes > 0,
        format!(
            "{yes} YES instances, {} over the bound{}",
            bad.len(),
            first(&bad)
        ),
    )
}

/// A set is stuck exactly when each token lies on a locked path. The single
/// vertex is left out: its token cannot move, yet it has no leaf pair.
fn stuck_iff_locked() -> Check {
    let (mut checked, mut bad) = (0usize, Vec::new());
    for n in 2..=12 {
        for g in caterpillars(n) {
            let cat = recognize_caterpillar(&g).unwrap();
            for k in 0..=4 {
                for s in independent_sets(&g, k) {
                    checked += 1;
                    let mark = mark_locked(&cat, n, s.vertices());
                    let covered = s.vertices().iter().all(|v| mark.marked[v.index()]);
                    if covered != is_stuck(&g, &s) {
                        bad.push(format!(
                            "n={n} edges={:?} set={s}",
                            g.edges().collect::<Vec<_>>()
                        ));
                    }
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{checked} sets, {} mismatches{}", bad.len(), first(&bad)),
    )
}

/// Reversing blue and red changes neither the shortest length nor the
/// solver's move count.
fn reversibility() -> Check {
    let classes = [GenClass::Proper, GenClass::Tp, GenClass::Caterpillar];
    let (mut done, mut bad, mut seed) = (0usize, Vec::new(), 0u64);
    while done < 1000 {
        let class = classes[(seed % 3) as usize];
        let n = 3 + (seed / 3 % 12) as usize;
        let k = 1 + (seed / 36) as usize % (n / 3);
        seed += 1;
        let Ok(inst) = gen_instance(class, n, k, 1_000_000 + seed) else {
            continue;
        };
        let (g, b, r) = sets(&inst);
        let Ok(fwd) = bfs(&g, &b, &r, DEFAULT_BUDGET) else {
            continue;
        };
        let Some(d) = fwd.distance else {
            continue;
        };
        done += 1;
        let back = bfs(&g, &r, &b, DEFAULT_BUDGET)
            .ok()
            .and_then(|x| x.distance);
        let choice = ClassChoice::Only(class.into());
        let s1 = solve(&inst, choice).ok().and_then(|o| o.1.moves());
        let s2 = solve(&swapped(&inst), choice)
            .ok()
            .and_then(|o| o.1.moves());
        if back != Some(d) || s1.is_none() || s1 != s2 {
            bad.push(format!(
                "{} oracle {d}/{back:?} solver {s1:?}/{s2:?}",
                inst.to_inline()
            ));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{done} YES instances, {} asymmetric{}",
            bad.len(),
            first(&bad)
        ),
    )
}

fn median_decide(inst: &Instance, class: Class) -> Duration {
    let mut ts: Vec<Duration> = (0..5)
        .map(|_| {
            let t = Instant::now();
            let r = slidetok::decide(inst, ClassChoice::Only(class));
            let e = t.elapsed();
            assert!(r.is_ok());
            e
        })
        .collect();
    ts.sort();
    ts[2]
}

/// Decision at n = 10^5 is fast and roughly linear when n doubles.
fn linear_decision() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for class in [GenClass::Tp, GenClass::Caterpillar] {
        let small = gen_instance(class, 100_000, 10_000, 7).unwrap();
        let large = gen_instance(class, 200_000, 20_000, 7).unwrap();
        let t1 = median_decide(&small, class.into());
        let t2 = median_decide(&large, class.into());
        let ratio = t2.as_secs_f64() / t1.as_secs_f64().max(1e-9);
        ok &= t1 < Duration::from_secs(1) && ratio < 3.0;
        notes.push(format!(
            "{class}: {t1:.1?} at 1e5, {t2:.1?} at 2e5, ratio {ratio:.2}"
        ));
    }
    check(ok, notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("proper totality", proper_totality),
        ("oracle equality", oracle_equality),
        ("path family length", path_family),
        ("trivially perfect two slides", tp_two_slides),
        ("stuck iff locked", stuck_iff_locked),
        ("reversibility", reversibility),
        ("linear decision", linear_decision),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let c = run();
        all &= c.ok;
        println!(
            "{} {} {name}: {}",
            if c.ok { "PASS" } else { "FAIL" },
            i + 1,
            c.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
