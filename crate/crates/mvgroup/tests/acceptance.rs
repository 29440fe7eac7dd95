//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use mvgroup::config::{parse_config, Instance};
use mvgroup_core::cayley::{ball, compare_generating_sets, power_table, set_product};
use mvgroup_core::dynamics::{bounds_check, classify_growth, iterate_dynamic, quadratic_bound_check, GrowthVerdict};
use mvgroup_core::groups::monoid_balls;
use mvgroup_core::multiset::flatten;
use mvgroup_core::mvalued::{check_axioms, CosetGroup, MultiValuedGroup, MvGroup, NatGroup};
use mvgroup_core::{Backend, Budget, Element, MultiSet};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const BUDGET: Budget = Budget::DEFAULT;

fn instance(name: &str) -> Instance {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let config = parse_config(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    config.build(BUDGET).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn coset(instance: &Instance) -> &CosetGroup {
    instance.coset().expect("coset instance")
}

fn nat(v: u64) -> Element {
    Element::Nat(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The first `n` elements of the breadth-first order from the unit.
fn bfs_prefix(inst: &Instance, n: usize) -> Vec<Element> {
    let g = &inst.group;
    let t = ball(g, &inst.x_generators, &g.unit(), 8, BUDGET).expect("ball");
    t.spheres.iter().flatten().take(n).cloned().collect()
}

fn criterion_1() -> Outcome {
    let g = NatGroup::new();
    for x in 0..=50u64 {
        let t = ball(&g, &[nat(1)], &nat(x), 50, BUDGET).map_err(err)?;
        for (r, size, _) in t.rows() {
            let expected = 1 + r as u64 + x.min(r as u64);
            ensure(size as u64 == expected, || format!("x={x} r={r}: |B|={size}, expected {expected}"))?;
        }
    }
    Ok("|B(x,r)| = 1+r+min(x,r) for 0<=x,r<=50".into())
}

fn criterion_2() -> Outcome {
    let inst = instance("z_pm1.json");
    let x = coset(&inst);
    let g = NatGroup::new();
    let abs = |e: &Element| match e {
        Element::Vector(v) => nat(v[0].unsigned_abs()),
        other => other.clone(),
    };
    for a in 0..=100i64 {
        for b in 0..=100i64 {
            let lhs = x.mul(&Element::int(a), &Element::int(b)).map_err(err)?.map(abs).map_err(err)?;
            let rhs = g.mul(&nat(a as u64), &nat(b as u64)).map_err(err)?;
            ensure(lhs == rhs, || format!("pi({a})*pi({b}) = {lhs:?}, nat gives {rhs:?}"))?;
        }
    }
    Ok("coset(Z,+-1) = builtin-nat under pi(k) -> |k| for 0<=x,y<=100".into())
}

fn axiom_carriers() -> Vec<(String, MvGroup, Vec<Element>)> {
    let mut out = vec![("builtin-nat".to_string(), MvGroup::Nat(NatGroup::new()), (0..=10).map(nat).collect())];
    for name in ["s3_conj.json", "s3_doublecoset.json"] {
        let inst = instance(name);
        let carrier = inst.group.carrier(BUDGET).expect("carrier").expect("finite");
        out.push((name.to_string(), inst.group.clone(), carrier));
    }
    let inst = instance("z2_pm1.json");
    let sample = bfs_prefix(&inst, 13);
    out.push(("z2_pm1.json".to_string(), inst.group.clone(), sample));
    out
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    for (name, group, sample) in axiom_carriers() {
        let report = check_axioms(&group, &sample).map_err(err)?;
        ensure(report.passed(), || format!("{name}: {report:?}"))?;
        details.push(format!("{name}({})", sample.len()));
    }
    let mutated = check_axioms(&NatGroup::mutated(), &(0..=10).map(nat).collect::<Vec<_>>()).map_err(err)?;
    ensure(!mutated.passed(), || "mutated nat passed the axioms".into())?;
    let witness = mutated.unit_witness.clone().or(mutated.inverse_witness.clone());
    ensure(witness.is_some() || mutated.associativity_witness.is_some(), || "mutated nat failed without witness".into())?;
    // the witness really violates the unit axiom
    if let Some(x) = &mutated.unit_witness {
        let p = NatGroup::mutated().mul(&nat(0), x).map_err(err)?;
        ensure(p != MultiSet::constant(x.clone(), 2).map_err(err)?, || "unit witness does not witness".into())?;
    }
    Ok(format!("pass on {}; mutated control fails with witness", details.join(", ")))
}

fn criterion_4() -> Outcome {
    let cases = [
        ("z_pm1.json", 8),
        ("z2_swap.json", 8),
        ("free2_swap.json", 10),
        ("heis_swap.json", 8),
        ("s3_conj.json", 8),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for (name, r_max) in cases {
        let inst = instance(name);
        let x = coset(&inst);
        let backend = x.backend();
        let g = backend.generator(0).map_err(err)?;
        let pool: Vec<Element> = ball(x, &inst.x_generators, &x.unit(), 3, BUDGET).map_err(err)?.ball(3).into_iter().collect();
        let mut ys = vec![x.unit()];
        ys.extend((0..3).map(|_| pool.choose(&mut rng).cloned().expect("nonempty ball")));
        for y in &ys {
            let report = bounds_check(x, &g, y, r_max, BUDGET).map_err(err)?;
            for row in &report.rows {
                ensure(row.holds(), || format!("{name} y={} r={}: {row:?}", x.render(y), row.r))?;
                checked += 1;
            }
        }
    }
    Ok(format!("(1/n)|S+| <= xi <= |B+| on {checked} (instance, y, r) rows"))
}

/// `Set(x^{*r})` for builtin-nat computed from `x*u = {x+u, |x-u|}` directly.
fn nat_power_supports(x: u64, r_max: usize) -> Vec<BTreeSet<u64>> {
    let mut rows = vec![BTreeSet::from([0u64])];
    for _ in 0..r_max {
        let next = rows.last().unwrap().iter().flat_map(|&u| [u + x, u.abs_diff(x)]).collect();
        rows.push(next);
    }
    rows
}

fn criterion_5() -> Outcome {
    let g = NatGroup::new();
    let sample: Vec<Element> = (0..=50).map(nat).collect();
    for x in [1u64, 2, 3, 5] {
        let report = quadratic_bound_check(&g, &nat(x), &sample, 200, BUDGET).map_err(err)?;
        ensure(report.passed(), || format!("nat x={x} violates r(r+1)"))?;
        let oracle = nat_power_supports(x, 200);
        for row in &report.rows {
            ensure(row.xi == oracle[row.r].len(), || format!("nat x={x} r={}: xi={} oracle={}", row.r, row.xi, oracle[row.r].len()))?;
            if x == 1 {
                ensure(row.xi == row.r / 2 + 1, || format!("xi_1({}) = {}", row.r, row.xi))?;
            }
        }
    }
    let inst = instance("z2_pm1.json");
    let x = coset(&inst);
    let e10 = x.project(&Element::Vector(vec![1, 0])).map_err(err)?;
    let sample = bfs_prefix(&inst, 40);
    let report = quadratic_bound_check(x, &e10, &sample, 12, BUDGET).map_err(err)?;
    ensure(report.passed(), || "coset(Z^2,+-1) violates r(r+1)".into())?;
    Ok("xi_x(r) <= r(r+1) on nat x in {1,2,3,5} r<=200 and Z^2 r<=12; xi_1(r) = floor(r/2)+1".into())
}

fn criterion_6() -> Outcome {
    let inst = instance("z3xF2_example46.json");
    let x = coset(&inst);
    let h = x.backend().generator(0).map_err(err)?;
    let z = x.project(&h).map_err(err)?;
    let table = iterate_dynamic(x, &z, &x.unit(), 20, BUDGET).map_err(err)?;
    let xi = table.xi();
    ensure(xi.iter().all(|&v| v <= 2), || format!("xi = {xi:?}"))?;
    let c = classify_growth(&xi).map_err(err)?;
    ensure(c.verdict == GrowthVerdict::Bounded, || format!("classified {:?}", c.verdict))?;
    Ok(format!("xi_e(r) <= 2 for r <= 20 (max {}), classified bounded", xi.iter().max().unwrap()))
}

fn criterion_7() -> Outcome {
    let inst = instance("free2_swap.json");
    let x = coset(&inst);
    let b = x.backend();
    let g1 = b.generator(0).map_err(err)?;
    let orbit: Vec<Element> = x.orbit(&g1).map_err(err)?.into_iter().collect();
    let monoid = monoid_balls(b, &orbit, 10, BUDGET).map_err(err)?;
    let table = iterate_dynamic(x, &x.project(&g1).map_err(err)?, &x.unit(), 10, BUDGET).map_err(err)?;
    let xi = table.xi();
    for r in 1..=10usize {
        ensure(monoid.sphere_size(r) == 1 << r, || format!("|S+(e,{r})| = {}", monoid.sphere_size(r)))?;
        ensure(xi[r] >= 1 << (r - 1), || format!("xi_e({r}) = {}", xi[r]))?;
    }
    Ok(format!("|S+(e,r)| = 2^r and xi_e(r) >= 2^(r-1) for 1<=r<=10 (xi_e(10) = {})", xi[10]))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tables = Vec::new();
    for (name, group, carrier) in axiom_carriers() {
        for x in &carrier {
            let t = power_table(&group, x, 12, BUDGET).map_err(err)?;
            if let Some(first) = (1..=12).find(|&r| t.spheres[r].is_empty()) {
                ensure(t.spheres[first..].iter().all(BTreeSet::is_empty), || {
                    format!("{name} x={}: S* reappears after radius {first}", group.render(x))
                })?;
            }
            tables.push((name.clone(), group.clone(), t));
        }
    }
    let count = tables.len();
    let mut checked = 0;
    while checked < 200 {
        let (name, group, t) = &tables[rng.random_range(0..tables.len())];
        let k = rng.random_range(1..=3usize);
        let parts: Vec<usize> = (0..k).map(|_| rng.random_range(1..=10usize)).collect();
        let total: usize = parts.iter().sum();
        if total > 10 || parts.iter().any(|&r| t.spheres[r].is_empty()) {
            continue;
        }
        let factors: Vec<BTreeSet<Element>> = parts.iter().map(|&r| t.spheres[r].clone()).collect();
        let product = set_product(group, &factors, BUDGET).map_err(err)?;
        ensure(t.spheres[total].is_subset(&product), || format!("{name} x={} parts={parts:?}", group.render(&t.base)))?;
        checked += 1;
    }
    Ok(format!("(a) on {count} power tables r<=12; (b) on {checked} decompositions"))
}

fn criterion_9() -> Outcome {
    let inst = instance("heis_swap.json");
    let x = coset(&inst);
    let b = x.backend();
    let lifts: Vec<Element> = ["a", "b", "a^-1", "b^-1"].iter().map(|w| inst.lift(w, "S")).collect::<Result<_, _>>().map_err(err)?;
    let order = x.automorphisms().order();
    let ga = Backend::semidirect(b.clone(), x.automorphisms().clone()).map_err(err)?;
    let ga_gens: Vec<Element> = lifts
        .iter()
        .flat_map(|s| (0..order).map(move |a| Element::Pair(Box::new(s.clone()), a as u32)))
        .collect();
    let ga_balls = monoid_balls(&ga, &ga_gens, 5, BUDGET).map_err(err)?;
    let x_gens: Vec<Element> = lifts.iter().map(|s| x.project(s)).collect::<Result<_, _>>().map_err(err)?;
    let x_balls = ball(x, &x_gens, &x.unit(), 5, BUDGET).map_err(err)?;
    for r in 0..=5 {
        ensure(x_balls.ball_sizes[r] <= ga_balls.ball_sizes[r], || {
            format!("r={r}: |B_X|={} > |B_GA|={}", x_balls.ball_sizes[r], ga_balls.ball_sizes[r])
        })?;
    }
    Ok(format!("|B_X(e,r)| <= |B_GA(e,r)| for r<=5 ({:?} vs {:?})", x_balls.ball_sizes, ga_balls.ball_sizes))
}

fn criterion_10() -> Outcome {
    let g = NatGroup::new();
    let report =
        compare_generating_sets(&g, &[nat(1)], &[nat(1), nat(2)], &nat(0), &nat(5), 30, 64, BUDGET).map_err(err)?;
    if let Some(row) = report.first_violation() {
        return Err(format!("l={} violated at {row:?}", report.constant));
    }
    Ok(format!("sandwich holds for r<=30 with computed l={}", report.constant))
}

/// All products `start * w_1 * … * w_m` over words of length `m ≤ r_max`,
/// expanded as full multisets.
fn expanded_ball<X: MultiValuedGroup>(group: &X, gens: &[Element], start: &Element, r_max: usize) -> Vec<BTreeSet<Element>> {
    let mut layer: Vec<MultiSet<Element>> = vec![MultiSet::constant(start.clone(), 1).unwrap()];
    let mut balls = vec![BTreeSet::from([start.clone()])];
    for _ in 0..r_max {
        layer = layer
            .iter()
            .flat_map(|m| {
                gens.iter().map(move |s| {
                    flatten(m.iter().map(|(u, k)| (group.mul(u, s).unwrap(), k)).collect::<Vec<_>>()).unwrap()
                })
            })
            .collect();
        let mut next = balls.last().unwrap().clone();
        for m in &layer {
            next.extend(m.support().cloned());
        }
        balls.push(next);
    }
    balls
}

fn expanded_dynamics<X: MultiValuedGroup>(group: &X, z: &Element, y: &Element, r_max: usize) -> Vec<MultiSet<Element>> {
    let mut rows = vec![MultiSet::constant(y.clone(), 1).unwrap()];
    for _ in 0..r_max {
        let last = rows.last().unwrap();
        let next = flatten(last.iter().map(|(u, k)| (group.mul(u, z).unwrap(), k)).collect::<Vec<_>>()).unwrap();
        rows.push(next);
    }
    rows
}

fn criterion_11() -> Outcome {
    let inst = instance("s3_conj.json");
    let cases: Vec<(&str, MvGroup, Vec<Element>)> = vec![
        ("builtin-nat", MvGroup::Nat(NatGroup::new()), vec![nat(1), nat(2)]),
        ("s3_conj", inst.group.clone(), inst.x_generators.clone()),
    ];
    let mut compared = 0;
    for (name, group, gens) in &cases {
        let carrier: Vec<Element> = match group.carrier(BUDGET).map_err(err)? {
            Some(c) => c,
            None => (0..4).map(nat).collect(),
        };
        let n = group.valence();
        for x in &carrier {
            let t = ball(group, gens, x, 4, BUDGET).map_err(err)?;
            let oracle = expanded_ball(group, gens, x, 4);
            for r in 0..=4 {
                ensure(t.ball(r) == oracle[r], || format!("{name} ball x={} r={r}", group.render(x)))?;
                compared += 1;
            }
            for z in &carrier {
                let d = iterate_dynamic(group, z, x, 4, BUDGET).map_err(err)?;
                let oracle = expanded_dynamics(group, z, x, 4);
                for r in 0..=4 {
                    ensure(oracle[r].total() == n.pow(r as u32), || format!("{name}: expansion size"))?;
                    ensure(d.supports[r] == oracle[r].support_set(), || {
                        format!("{name} dynamics z={} y={} r={r}", group.render(z), group.render(x))
                    })?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("support recursion equals full expansion in {compared} comparisons (r<=4)"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 example closed form", criterion_1),
        ("2 construction equivalence", criterion_2),
        ("3 axiom suites", criterion_3),
        ("4 monoid sandwich", criterion_4),
        ("5 quadratic bound", criterion_5),
        ("6 bounded example dynamics", criterion_6),
        ("7 exponential shift dynamics", criterion_7),
        ("8 power sphere lemma", criterion_8),
        ("9 coset vs semidirect balls", criterion_9),
        ("10 generating-set sandwich", criterion_10),
        ("11 support recursion oracle", criterion_11),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.2}s]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail} [{elapsed:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
