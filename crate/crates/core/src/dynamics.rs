//! n-valued dynamics `T_z(y) = y * z` and their growth functions
//! `ξ_y(r) = |Set(T_z^r(y))|`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::groups::monoid_balls;
use crate::mvalued::{CosetGroup, MultiValuedGroup};
use crate::{Budget, Element, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTable {
    pub z: Element,
    pub y: Element,
    /// `Set(T_z^r(y))` for each radius.
    pub supports: Vec<BTreeSet<Element>>,
}

impl DynamicsTable {
    pub fn radius(&self) -> usize {
        self.supports.len() - 1
    }

    pub fn xi(&self) -> Vec<usize> {
        self.supports.iter().map(BTreeSet::len).collect()
    }
}

pub fn iterate_dynamic<X: MultiValuedGroup + ?Sized>(
    group: &X,
    z: &Element,
    y: &Element,
    radius: usize,
    budget: Budget,
) -> Result<DynamicsTable> {
    let mut supports = vec![BTreeSet::from([y.clone()])];
    for _ in 0..radius {
        let mut next = BTreeSet::new();
        for u in supports.last().into_iter().flatten() {
            for v in group.mul(u, z)?.support() {
                if next.insert(v.clone()) {
                    budget.check(next.len())?;
                }
            }
        }
        supports.push(next);
    }
    Ok(DynamicsTable { z: z.clone(), y: y.clone(), supports })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsRow {
    pub r: usize,
    /// `|S⁺(e, r)|`; the lower bound is this divided by `n`.
    pub monoid_sphere: usize,
    pub xi: usize,
    /// `|B⁺(e, r)|`.
    pub monoid_ball: usize,
    pub n: u64,
}

impl BoundsRow {
    pub fn lower_bound(&self) -> f64 {
        self.monoid_sphere as f64 / self.n as f64
    }

    /// `|S⁺|/n ≤ ξ ≤ |B⁺|`, compared in integers as `|S⁺| ≤ n ξ`.
    pub fn holds(&self) -> bool {
        (self.monoid_sphere as u128) <= u128::from(self.n) * self.xi as u128 && self.xi <= self.monoid_ball
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    /// The orbit of `g`, generating the monoid `M`.
    pub monoid_generators: Vec<Element>,
    pub dynamics: DynamicsTable,
    pub rows: Vec<BoundsRow>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(BoundsRow::holds)
    }
}

/// Compares `ξ_y(r)` for `T_{π(g)}` on a coset group against the monoid
/// generated by the orbit of `g`.
pub fn bounds_check(
    group: &CosetGroup,
    g: &Element,
    y: &Element,
    r_max: usize,
    budget: Budget,
) -> Result<BoundsReport> {
    let backend = group.backend();
    let monoid_generators: Vec<Element> = group.orbit(g)?.into_iter().collect();
    let monoid = monoid_balls(backend, &monoid_generators, r_max, budget)?;
    let dynamics = iterate_dynamic(group, &group.project(g)?, &group.project(y)?, r_max, budget)?;
    let n = group.valence();
    let rows = dynamics
        .xi()
        .into_iter()
        .enumerate()
        .map(|(r, xi)| BoundsRow {
            r,
            monoid_sphere: monoid.sphere_size(r),
            xi,
            monoid_ball: monoid.ball_sizes[r],
            n,
        })
        .collect();
    Ok(BoundsReport { monoid_generators, dynamics, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticRow {
    pub r: usize,
    pub xi: usize,
    pub bound: u64,
}

impl QuadraticRow {
    pub fn holds(&self) -> bool {
        self.xi as u64 <= self.bound
    }

    pub fn margin(&self) -> i128 {
        i128::from(self.bound) - self.xi as i128
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticReport {
    pub x: Element,
    pub rows: Vec<QuadraticRow>,
}

impl QuadraticReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(QuadraticRow::holds)
    }
}

/// Checks `ξ_x(r) ≤ r(r + 1)` for `1 ≤ r ≤ r_max`, where `ξ_x(r)` is the
/// support size of `x^{*r}` (the dynamic `T_x` started at the unit).
///
/// The group must be 2-valued with `inv(a) = a` on every element of
/// `sample`.
pub fn quadratic_bound_check<X: MultiValuedGroup + ?Sized>(
    group: &X,
    x: &Element,
    sample: &[Element],
    r_max: usize,
    budget: Budget,
) -> Result<QuadraticReport> {
    if group.valence() != 2 {
        return Err(Error::PreconditionViolated(alloc::format!("group is {}-valued, expected 2", group.valence())));
    }
    if r_max == 0 {
        return Err(Error::PreconditionViolated("radius must be at least 1".into()));
    }
    for a in sample.iter().chain([x]) {
        if &group.inv(a)? != a {
            return Err(Error::PreconditionViolated(alloc::format!("inv({}) differs from it", group.render(a))));
        }
    }
    let table = iterate_dynamic(group, x, &group.unit(), r_max, budget)?;
    let rows = table
        .xi()
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(r, xi)| QuadraticRow { r, xi, bound: (r as u64) * (r as u64 + 1) })
        .collect();
    Ok(QuadraticReport { x: x.clone(), rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthVerdict {
    Bounded,
    Polynomial { degree: f64 },
    Exponential { base: f64 },
    Inconclusive,
}

/// Heuristic reading of a growth table. `caveat` is always set: the verdict
/// describes finitely many rows and proves nothing about asymptotics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthClassification {
    pub verdict: GrowthVerdict,
    /// Log-log least-squares slope over the tail, when defined.
    pub degree: Option<f64>,
    pub r_squared: Option<f64>,
    /// Smallest successive ratio over the last rows.
    pub min_ratio: Option<f64>,
    /// Geometric mean of the same ratios.
    pub base: Option<f64>,
    pub caveat: bool,
}

pub const MIN_ROWS: usize = 6;
pub const RATIO_WINDOW: usize = 5;
pub const EXPONENTIAL_RATIO: f64 = 1.3;
pub const MIN_R_SQUARED: f64 = 0.9;

/// Classifies `values[r]` indexed by radius.
///
/// The tail is the last two-thirds of the rows. A constant tail is bounded;
/// successive ratios all at least 1.3 over the last five rows mean
/// exponential; otherwise the tail's log-log slope is the degree.
pub fn classify_growth(values: &[usize]) -> Result<GrowthClassification> {
    if values.len() < MIN_ROWS {
        return Err(Error::InsufficientData { rows: values.len(), needed: MIN_ROWS });
    }
    let start = values.len() / 3;
    let tail = &values[start..];

    let window = &values[values.len() - RATIO_WINDOW - 1..];
    let ratios: Option<Vec<f64>> =
        window.windows(2).map(|w| (w[0] > 0).then(|| w[1] as f64 / w[0] as f64)).collect();
    let (min_ratio, base) = match &ratios {
        Some(rs) => {
            let min = rs.iter().copied().fold(f64::INFINITY, f64::min);
            let mean_log = rs.iter().map(|&q| libm::log(q)).sum::<f64>() / rs.len() as f64;
            (Some(min), Some(libm::exp(mean_log)))
        }
        None => (None, None),
    };

    let points: Vec<(f64, f64)> = (start..values.len())
        .filter(|&r| r >= 1)
        .map(|r| (r, values[r]))
        .filter(|&(_, v)| v > 0)
        .map(|(r, v)| (libm::log(r as f64), libm::log(v as f64)))
        .collect();
    let fit = if points.len() >= 2 && points.len() == (start.max(1)..values.len()).len() {
        least_squares(&points)
    } else {
        None
    };

    let verdict = if tail.iter().all(|&v| v == tail[0]) {
        GrowthVerdict::Bounded
    } else if min_ratio.is_some_and(|m| m >= EXPONENTIAL_RATIO) {
        GrowthVerdict::Exponential { base: base.unwrap_or(f64::NAN) }
    } else {
        match fit {
            Some((slope, r2)) if r2 >= MIN_R_SQUARED && slope >= 0.0 => GrowthVerdict::Polynomial { degree: slope },
            _ => GrowthVerdict::Inconclusive,
        }
    };
    Ok(GrowthClassification {
        verdict,
        degree: fit.map(|f| f.0),
        r_squared: fit.map(|f| f.1),
        min_ratio,
        base,
        caveat: true,
    })
}

/// Slope and coefficient of determination of the line through `points`.
fn least_squares(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Some((slope, r2))
}
