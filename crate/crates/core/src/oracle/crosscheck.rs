//! Solver against oracle comparison over many instances.

use std::fmt;

use rayon::prelude::*;

use super::{
    bfs, caterpillars, gen_instance, independent_sets, proper_reps, tp_reps, GenClass, Search,
    StateKey,
};
use crate::error::SolveError;
use crate::graph::{validate_sequence, Graph, IndependentSet};
use crate::instance::{Instance, Structure};
use crate::recognize::find_strong_twins;
use crate::solver::{self, Class, ClassChoice, Outcome};

/// What one side said about an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Moves(usize),
    No,
    /// The solver failed or emitted a sequence that does not validate.
    Invalid,
    CapExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Moves(d) => write!(f, "{d}"),
            Verdict::No => f.write_str("NO"),
            Verdict::Invalid => f.write_str("INVALID"),
            Verdict::CapExceeded => f.write_str("CAP"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub instance: Instance,
    pub solver: Verdict,
    pub oracle: Verdict,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MISMATCH {} solver={} oracle={}",
            self.instance.to_inline(),
            self.solver,
            self.oracle
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    fn merge(parts: Vec<Report>) -> Report {
        let mut out = Report::default();
        for p in parts {
            out.checked += p.checked;
            out.mismatches.extend(p.mismatches);
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.mismatches {
            writeln!(f, "{m}")?;
        }
        writeln!(
            f,
            "CHECKED {} MISMATCHES {}",
            self.checked,
            self.mismatches.len()
        )
    }
}

impl From<GenClass> for Class {
    fn from(c: GenClass) -> Class {
        match c {
            GenClass::Proper => Class::Proper,
            GenClass::Tp => Class::TriviallyPerfect,
            GenClass::Caterpillar => Class::Caterpillar,
        }
    }
}

fn sets(g: &Graph, inst: &Instance) -> Option<(IndependentSet, IndependentSet)> {
    let blue = IndependentSet::new(g, inst.blue.iter().copied()).ok()?;
    let red = IndependentSet::new(g, inst.red.iter().copied()).ok()?;
    Some((blue, red))
}

fn judge<F>(
    inst: &Instance,
    g: &Graph,
    blue: &IndependentSet,
    red: &IndependentSet,
    solver: &F,
) -> Verdict
where
    F: Fn(&Instance) -> Result<Outcome, SolveError>,
{
    match solver(inst) {
        Ok(Outcome::Yes(seq)) if validate_sequence(g, blue, red, &seq).is_ok() => {
            Verdict::Moves(seq.len_moves())
        }
        Ok(Outcome::No(_)) => Verdict::No,
        _ => Verdict::Invalid,
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Checks `solver` on every instance against breadth-first search. `jobs = 0`
/// uses one worker per core. Mismatches are listed in input order.
pub fn crosscheck<F>(instances: &[Instance], solver: F, budget: usize, jobs: usize) -> Report
where
    F: Fn(&Instance) -> Result<Outcome, SolveError> + Sync,
{
    let parts = with_pool(jobs, || {
        instances
            .par_iter()
            .map(|inst| {
                let g = inst.graph();
                let Some((blue, red)) = sets(&g, inst) else {
                    return Report::default();
                };
                let oracle = match bfs(&g, &blue, &red, budget) {
                    Ok(r) => r.distance.map_or(Verdict::No, Verdict::Moves),
                    Err(_) => Verdict::CapExceeded,
                };
                let got = judge(inst, &g, &blue, &red, &solver);
                let mismatches = if got == oracle {
                    Vec::new()
                } else {
                    vec![Mismatch {
                        instance: inst.clone(),
                        solver: got,
                        oracle,
                    }]
                };
                Report {
                    checked: 1,
                    mismatches,
                }
            })
            .collect::<Vec<_>>()
    });
    Report::merge(parts)
}

fn structures(class: GenClass, n: usize) -> Vec<Structure> {
    match class {
        GenClass::Proper => proper_reps(n).into_iter().map(Structure::Rep).collect(),
        GenClass::Tp => tp_reps(n).into_iter().map(Structure::Rep).collect(),
        GenClass::Caterpillar => caterpillars(n).into_iter().map(Structure::Edges).collect(),
    }
}

/// Every twin-free structure of the class with `n <= n_max` and every pair of
/// independent sets with `k <= k_max` tokens, solved with that class's solver.
pub fn crosscheck_exhaustive(
    class: GenClass,
    n_max: usize,
    k_max: usize,
    budget: usize,
    jobs: usize,
) -> Report {
    let choice = ClassChoice::Only(class.into());
    let solver = |inst: &Instance| solver::solve(inst, choice).map(|r| r.1);
    // One unit of work per (structure, blue set); the search from blue is
    // shared by every red set.
    let mut groups: Vec<(Structure, Graph, Vec<IndependentSet>)> = Vec::new();
    let mut units: Vec<(usize, usize)> = Vec::new();
    for n in 1..=n_max {
        for s in structures(class, n) {
            let g = match &s {
                Structure::Rep(r) => r.intersection_graph(),
                Structure::Edges(g) => g.clone(),
            };
            if !find_strong_twins(&g).is_empty() {
                continue;
            }
            for k in 0..=k_max.min(n) {
                let all = independent_sets(&g, k);
                units.extend((0..all.len()).map(|b| (groups.len(), b)));
                groups.push((s.clone(), g.clone(), all));
            }
        }
    }
    let parts = with_pool(jobs, || {
        units
            .par_iter()
            .map(|&(gi, bi)| {
                let (s, g, reds) = &groups[gi];
                let blue = &reds[bi];
                let search = Search::all(g, blue, budget);
                let mut rep = Report::default();
                for red in reds {
                    let inst = Instance {
                        structure: s.clone(),
                        blue: blue.vertices().to_vec(),
                        red: red.vertices().to_vec(),
                    };
                    let oracle = match &search {
                        Ok(s) => s
                            .distance(&StateKey::new(g.n(), red))
                            .map_or(Verdict::No, Verdict::Moves),
                        Err(_) => Verdict::CapExceeded,
                    };
                    let got = judge(&inst, g, blue, red, &solver);
                    rep.checked += 1;
                    if got != oracle {
                        rep.mismatches.push(Mismatch {
                            instance: inst,
                            solver: got,
                            oracle,
                        });
                    }
                }
                rep
            })
            .collect::<Vec<_>>()
    });
    Report::merge(parts)
}

/// `count` generated instances with seeds `seed, seed + 1, ...`. Sizes with
/// no valid instance are skipped.
pub fn crosscheck_random(
    class: GenClass,
    n: usize,
    k: usize,
    count: usize,
    seed: u64,
    budget: usize,
    jobs: usize,
) -> Report {
    let instances: Vec<Instance> = (0..count as u64)
        .filter_map(|i| gen_instance(class, n, k, seed.wrapping_add(i)).ok())
        .collect();
    let choice = ClassChoice::Only(class.into());
    crosscheck(
        &instances,
        |inst| solver::solve(inst, choice).map(|r| r.1),
        budget,
        jobs,
    )
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_BUDGET;
    use super::*;
    use crate::graph::{Move, ReconfigSequence, Vertex};

    #[test]
    fn empty_input_gives_empty_report() {
        let r = crosscheck(&[], |_| unreachable!(), DEFAULT_BUDGET, 1);
        assert_eq!(r, Report::default());
        assert_eq!(r.to_string(), "CHECKED 0 MISMATCHES 0\n");
    }

    #[test]
    fn small_exhaustive_runs_clean() {
        for class in [GenClass::Proper, GenClass::Tp, GenClass::Caterpillar] {
            let r = crosscheck_exhaustive(class, 6, 2, DEFAULT_BUDGET, 2);
            assert!(r.checked > 0);
            assert!(r.mismatches.is_empty(), "{class}: {r}");
        }
    }

    #[test]
    fn corrupted_solver_is_caught() {
        let inst: Instance = "n 3\nrep L1 L2 R1 L3 R2 R3\nblue 1\nred 3\n"
            .parse()
            .unwrap();
        // Claims a one-move answer that skips the middle vertex.
        let bad = |i: &Instance| {
            let g = i.graph();
            let blue = IndependentSet::new(&g, i.blue.iter().copied()).unwrap();
            Ok(Outcome::Yes(ReconfigSequence {
                initial: blue,
                moves: vec![Move::new(Vertex::new(1), Vertex::new(3))],
            }))
        };
        let r = crosscheck(&[inst], bad, DEFAULT_BUDGET, 1);
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].solver, Verdict::Invalid);
        assert_eq!(r.mismatches[0].oracle, Verdict::Moves(2));
        assert!(r.to_string().starts_with("MISMATCH n 3 ; rep "));
    }

    #[test]
    fn random_is_deterministic() {
        let a = crosscheck_random(GenClass::Caterpillar, 9, 2, 30, 5, DEFAULT_BUDGET, 3);
        let b = crosscheck_random(GenClass::Caterpillar, 9, 2, 30, 5, DEFAULT_BUDGET, 1);
        assert_eq!(a, b);
        assert_eq!(a.checked, 30);
        assert!(a.mismatches.is_empty(), "{a}");
    }
}
