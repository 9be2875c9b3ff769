//! Larger solver/oracle comparisons than the acceptance run.

use slidetok::oracle::{crosscheck, crosscheck_exhaustive, gen_instance, GenClass, DEFAULT_BUDGET};
use slidetok::{solve, Class, ClassChoice, Instance};

fn only(
    class: Class,
) -> impl Fn(&Instance) -> Result<slidetok::Outcome, slidetok::SolveError> + Sync {
    move |i| solve(i, ClassChoice::Only(class)).map(|r| r.1)
}

#[test]
fn proper_exhaustive_to_twelve() {
    let r = crosscheck_exhaustive(GenClass::Proper, 12, 3, DEFAULT_BUDGET, 0);
    assert!(r.checked > 0);
    assert!(r.mismatches.is_empty(), "{r}");
}

#[test]
fn tp_exhaustive_to_twelve() {
    let r = crosscheck_exhaustive(GenClass::Tp, 12, 3, DEFAULT_BUDGET, 0);
    assert!(r.checked > 0);
    assert!(r.mismatches.is_empty(), "{r}");
}

#[test]
fn proper_random_to_twenty() {
    let instances: Vec<Instance> = (0..1000u64)
        .filter_map(|s| {
            let n = 3 + (s % 18) as usize;
            gen_instance(GenClass::Proper, n, 1 + (s / 18) as usize % (n / 3), s).ok()
        })
        .collect();
    assert_eq!(instances.len(), 1000);
    let r = crosscheck(&instances, only(Class::Proper), DEFAULT_BUDGET, 0);
    assert!(r.mismatches.is_empty(), "{r}");
}

#[test]
fn caterpillar_random_to_fourteen() {
    let instances: Vec<Instance> = (0..2000u64)
        .filter_map(|s| {
            let n = 11 + (s % 4) as usize;
            gen_instance(GenClass::Caterpillar, n, 1 + (s / 4) as usize % 5, s).ok()
        })
        .collect();
    assert!(instances.len() > 1900);
    let r = crosscheck(&instances, only(Class::Caterpillar), DEFAULT_BUDGET, 0);
    assert!(r.mismatches.is_empty(), "{r}");
}
