//! Verification suites run by `mvgroup verify`. Each suite checks one growth
//! identity or inequality exactly, radius by radius.

use std::collections::BTreeSet;
use std::fmt;

use mvgroup_core::cayley::{ball, power_table, set_product};
use mvgroup_core::dynamics::{bounds_check, classify_growth, iterate_dynamic, quadratic_bound_check, GrowthVerdict};
use mvgroup_core::groups::monoid_balls;
use mvgroup_core::mvalued::{MultiValuedGroup, MvGroup};
use mvgroup_core::{Backend, Budget, Element, Error as CoreError};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, ElementSpec, Instance};
use crate::output::verdict_name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Example32,
    Thm43,
    Thm48,
    Lemma47,
    Example46,
    Proof34,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Example32 => "example32",
            Suite::Thm43 => "thm43",
            Suite::Thm48 => "thm48",
            Suite::Lemma47 => "lemma47",
            Suite::Example46 => "example46",
            Suite::Proof34 => "proof34",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    pub r: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{verdict} {} r={} {}", self.suite.name(), c.r, c.detail)?;
        }
        Ok(())
    }
}

pub struct SuiteOptions {
    pub radius: usize,
    pub budget: Budget,
    pub seed: u64,
}

pub fn run_suite(instance: &Instance, suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport, ConfigError> {
    let checks = match suite {
        Suite::Example32 => example32(instance, opts)?,
        Suite::Thm43 => thm43(instance, opts)?,
        Suite::Thm48 => thm48(instance, opts)?,
        Suite::Lemma47 => lemma47(instance, opts)?,
        Suite::Example46 => example46(instance, opts)?,
        Suite::Proof34 => proof34(instance, opts)?,
    };
    Ok(SuiteReport { suite, checks })
}

fn not_applicable(suite: Suite, why: &str) -> ConfigError {
    ConfigError::Validation { path: "mv".into(), message: format!("suite {} needs {why}", suite.name()) }
}

/// The first `n` elements met by breadth-first search from the unit.
pub fn bfs_sample(instance: &Instance, n: usize, budget: Budget) -> Result<Vec<Element>, ConfigError> {
    let group = &instance.group;
    let mut out = Vec::new();
    let mut radius = 0;
    loop {
        let table = ball(group, &instance.x_generators, &group.unit(), radius, budget)?;
        if table.ball_sizes[radius] >= n || (radius > 0 && table.sphere_size(radius) == 0) || radius >= 64 {
            for sphere in &table.spheres {
                out.extend(sphere.iter().cloned());
            }
            out.truncate(n);
            return Ok(out);
        }
        radius += 1;
    }
}

/// Underlying group elements for the configured generating set.
fn lifted_generators(instance: &Instance) -> Result<(Backend, Vec<Element>), ConfigError> {
    let backend = instance.backend.clone().ok_or_else(|| not_applicable(Suite::Thm43, "an underlying group"))?;
    let lifts = instance
        .config
        .x_generators
        .iter()
        .map(|spec| match spec {
            ElementSpec::Word(w) => Ok(backend.eval_word(w)?),
            ElementSpec::Nat(_) => Err(not_applicable(Suite::Thm43, "word generators")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((backend, lifts))
}

fn example32(instance: &Instance, opts: &SuiteOptions) -> Result<Vec<Check>, ConfigError> {
    let MvGroup::Nat(g) = &instance.group else {
        return Err(not_applicable(Suite::Example32, "builtin_nat"));
    };
    if g.is_mutated() || instance.x_generators != [Element::Nat(1)] {
        return Err(not_applicable(Suite::Example32, "builtin_nat with X_generators [1]"));
    }
    let n = opts.radius as u64;
    let tables = (0..=n)
        .map(|x| ball(g, &instance.x_generators, &Element::Nat(x), opts.radius, opts.budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((0..=opts.radius)
        .map(|r| {
            let bad: Vec<u64> = (0..=n)
                .filter(|&x| tables[x as usize].ball_sizes[r] as u64 != 1 + r as u64 + x.min(r as u64))
                .collect();
            let detail = match bad.first() {
                None => format!("|B(x,r)|=1+r+min(x,r) for x=0..{n}"),
                Some(x) => format!("x={x} |B|={} expected={}", tables[*x as usize].ball_sizes[r], 1 + r as u64 + x.min(&(r as u64))),
            };
            Check { pass: bad.is_empty(), r, detail }
        })
        .collect())
}

fn thm43(instance: &Instance, opts: &SuiteOptions) -> Result<Vec<Check>, ConfigError> {
    let coset = instance.coset().ok_or_else(|| not_applicable(Suite::Thm43, "a coset group"))?;
    let (_, lifts) = lifted_generators(instance)?;
    let g = &lifts[0];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pool: Vec<Element> = ball(coset, &instance.x_generators, &coset.unit(), 3, opts.budget)?.ball(3).into_iter().collect();
    let mut ys = vec![coset.unit()];
    ys.extend((0..3).map(|_| pool.choose(&mut rng).cloned().unwrap_or_else(|| coset.unit())));
    let reports =
        ys.iter().map(|y| bounds_check(coset, g, y, opts.radius, opts.budget)).collect::<Result<Vec<_>, _>>()?;
    Ok((0..=opts.radius)
        .map(|r| {
            let rows: Vec<_> = reports.iter().map(|rep| rep.rows[r]).collect();
            let failing: Vec<String> = ys
                .iter()
                .zip(&rows)
                .filter(|(_, row)| !row.holds())
                .map(|(y, row)| format!("y={} xi={}", instance.render(y), row.xi))
                .collect();
            let xis: Vec<String> = rows.iter().map(|row| row.xi.to_string()).collect();
            let detail = format!(
                "|S+|={} n={} |B+|={} xi=[{}]{}",
                rows[0].monoid_sphere,
                rows[0].n,
                rows[0].monoid_ball,
                xis.join(","),
                if failing.is_empty() { String::new() } else { format!(" violations: {}", failing.join("; ")) }
            );
            Check { pass: failing.is_empty(), r, detail }
        })
        .collect())
}

fn thm48(instance: &Instance, opts: &SuiteOptions) -> Result<Vec<Check>, ConfigError> {
    let group = &instance.group;
    let sample = match group.carrier(opts.budget)? {
        Some(c) => c,
        None => bfs_sample(instance, 64, opts.budget)?,
    };
    let mut checks = Vec::new();
    for x in &instance.x_generators {
        let report = quadratic_bound_check(group, x, &sample, opts.radius, opts.budget).map_err(|e| match e {
            CoreError::PreconditionViolated(m) => not_applicable(Suite::Thm48, &format!("a 2-valued group with inv = id ({m})")),
            other => other.into(),
        })?;
        let worst = report.rows.iter().min_by_key(|row| row.margin());
        let max_xi = report.rows.iter().map(|row| row.xi).max().unwrap_or(0);
        let detail = match report.rows.iter().find(|row| !row.holds()) {
            None => format!("x={} xi<=r(r+1) max_xi={max_xi} min_margin={}", instance.render(x), worst.map_or(0, |w| w.margin())),
            Some(row) => format!("x={} violation at r={} xi={} bound={}", instance.render(x), row.r, row.xi, row.bound),
        };
        checks.push(Check { pass: report.passed(), r: opts.radius, detail });
    }
    Ok(checks)
}

fn lemma47(instance: &Instance, opts: &SuiteOptions) -> Result<Vec<Check>, ConfigError> {
    let group = &instance.group;
    let elements = match group.carrier(opts.budget)? {
        Some(c) => c,
        None => bfs_sample(instance, 16, opts.budget)?,
    };
    let tables = elements
        .iter()
        .map(|x| power_table(group, x, opts.radius, opts.budget))
        .collect::<Result<Vec<_>, _>>()?;

    let mut vanishing_failures = Vec::new();
    for t in &tables {
        if let Some(first_empty) = (1..=opts.radius).find(|&r| t.spheres[r].is_empty()) {
            if let Some(r) = (first_empty + 1..=opts.radius).find(|&r| !t.spheres[r].is_empty()) {
                vanishing_failures.push(format!("x={} empty at {first_empty}, nonempty at {r}", instance.render(&t.base)));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut tried = 0;
    let mut addition_failures = Vec::new();
    let mut attempts = 0;
    while tried < 200 && attempts < 20_000 {
        attempts += 1;
        let t = &tables[rng.random_range(0..tables.len())];
        let k = rng.random_range(1..=3usize);
        let parts: Vec<usize> = (0..k).map(|_| rng.random_range(1..=opts.radius.max(1))).collect();
        let total: usize = parts.iter().sum();
        if total > opts.radius || parts.iter().any(|&r| t.spheres[r].is_empty()) {
            continue;
        }
        tried += 1;
        let factors: Vec<BTreeSet<Element>> = parts.iter().map(|&r| t.spheres[r].clone()).collect();
        let product = set_product(group, &factors, opts.budget)?;
        if !t.spheres[total].is_subset(&product) {
            addition_failures.push(format!("x={} parts={parts:?}", instance.render(&t.base)));
        }
    }
    Ok(vec![
        Check {
            pass: vanishing_failures.is_empty(),
            r: opts.radius,
            detail: format!(
                "part=a elements={}{}",
                elements.len(),
                vanishing_failures.first().map(|f| format!(" violation: {f}")).unwrap_or_default()
            ),
        },
        Check {
            pass: addition_failures.is_empty() && tried > 0,
            r: opts.radius,
            detail: format!(
                "part=b decompositions={tried}{}",
                addition_failures.first().map(|f| format!(" violation: {f}")).unwrap_or_default()
            ),
        },
    ])
}

fn example46(instance: &Instance, opts: &SuiteOptions) -> Result<Vec<Check>, ConfigError> {
    let group = &instance.group;
    let z = &instance.x_generators[0];
    let table = iterate_dynamic(group, z, &group.unit(), opts.radius, opts.budget)?;
    let xi = table.xi();
    let max_xi = xi.iter().copied().max().unwrap_or(0);
    let mut checks =
        vec![Check { pass: max_xi <= 2, r: opts.radius, detail: format!("z={} max_xi={max_xi} bound=2", instance.render(z)) }];
    let classification = classify_growth(&xi)?;
    checks.push(Check {
        pass: classification.verdict == GrowthVerdict::Bounded,
        r: opts.radius,
        detail: format!("classification={}", verdict_name(&classification.verdict)),
    });
    Ok(checks)
}

fn proof34(instance: &Instance, opts: &SuiteOptions) -> Result<Vec<Check>, ConfigError> {
    let coset = instance.coset().ok_or_else(|| not_applicable(Suite::Proof34, "a coset group"))?;
    let (backend, lifts) = lifted_generators(instance)?;
    let auts = coset.automorphisms().clone();
    let order = auts.order();
    let ga = Backend::semidirect(backend, auts)?;
    let ga_gens: Vec<Element> = lifts
        .iter()
        .flat_map(|s| (0..order).map(move |a| Element::Pair(Box::new(s.clone()), a as u32)))
        .collect();
    let ga_balls = monoid_balls(&ga, &ga_gens, opts.radius, opts.budget)?;
    let x_balls = ball(coset, &instance.x_generators, &coset.unit(), opts.radius, opts.budget)?;
    Ok((0..=opts.radius)
        .map(|r| {
            let (bx, bga) = (x_balls.ball_sizes[r], ga_balls.ball_sizes[r]);
            Check { pass: bx <= bga, r, detail: format!("|B_X|={bx} |B_GA|={bga}") }
        })
        .collect())
}
