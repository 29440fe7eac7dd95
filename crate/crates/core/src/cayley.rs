//! Cayley graphs of n-valued groups: balls, spheres, lengths and the
//! cumulative supports of powers.
//!
//! Exploration runs over supports only. An edge `u → v` exists when `v`
//! lies in the support of `u * s` for a generator `s`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::mvalued::MultiValuedGroup;
use crate::{Budget, Element, Error, Result};

/// Balls `B(x, r)` and spheres `S(x, r)` for `r = 0..=radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTable {
    pub center: Element,
    pub generators: Vec<Element>,
    pub spheres: Vec<Vec<Element>>,
    pub ball_sizes: Vec<usize>,
    /// For each element of a nonzero sphere: a predecessor one sphere below
    /// and the index of the generator leading to it.
    pub witnesses: BTreeMap<Element, (Element, usize)>,
}

impl GrowthTable {
    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn sphere_size(&self, r: usize) -> usize {
        self.spheres[r].len()
    }

    /// `(r, |B(x, r)|, |S(x, r)|)` per radius.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.spheres.iter().zip(&self.ball_sizes).enumerate().map(|(r, (s, b))| (r, *b, s.len()))
    }

    pub fn ball(&self, r: usize) -> BTreeSet<Element> {
        self.spheres.iter().take(r + 1).flatten().cloned().collect()
    }
}

struct Explorer<'a, X: ?Sized> {
    group: &'a X,
    generators: &'a [Element],
    seen: BTreeSet<Element>,
    frontier: Vec<Element>,
    budget: Budget,
}

impl<'a, X: MultiValuedGroup + ?Sized> Explorer<'a, X> {
    fn new(group: &'a X, generators: &'a [Element], start: Element, budget: Budget) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::PreconditionViolated("generating set must be nonempty".into()));
        }
        Ok(Explorer { group, generators, seen: BTreeSet::from([start.clone()]), frontier: vec![start], budget })
    }

    /// Moves one layer out, returning the new sphere with witnesses.
    fn advance(&mut self) -> Result<Vec<(Element, (Element, usize))>> {
        let mut next: BTreeMap<Element, (Element, usize)> = BTreeMap::new();
        for u in &self.frontier {
            for (s, g) in self.generators.iter().enumerate() {
                for v in self.group.mul(u, g)?.support() {
                    if !self.seen.contains(v) && !next.contains_key(v) {
                        self.budget.check(self.seen.len() + next.len() + 1)?;
                        next.insert(v.clone(), (u.clone(), s));
                    }
                }
            }
        }
        self.seen.extend(next.keys().cloned());
        self.frontier = next.keys().cloned().collect();
        Ok(next.into_iter().collect())
    }
}

/// Layered breadth-first search from `center`. The empty product counts,
/// so `S(x, 0) = {x}`.
pub fn ball<X: MultiValuedGroup + ?Sized>(
    group: &X,
    generators: &[Element],
    center: &Element,
    radius: usize,
    budget: Budget,
) -> Result<GrowthTable> {
    let mut explorer = Explorer::new(group, generators, center.clone(), budget)?;
    let mut spheres = vec![vec![center.clone()]];
    let mut ball_sizes = vec![1];
    let mut witnesses = BTreeMap::new();
    for _ in 0..radius {
        let layer = explorer.advance()?;
        spheres.push(layer.iter().map(|(v, _)| v.clone()).collect());
        ball_sizes.push(explorer.seen.len());
        witnesses.extend(layer);
    }
    Ok(GrowthTable { center: center.clone(), generators: generators.to_vec(), spheres, ball_sizes, witnesses })
}

/// The least `m` such that `x` lies in the support of some product of `m`
/// generators, starting from the unit.
pub fn length<X: MultiValuedGroup + ?Sized>(
    group: &X,
    generators: &[Element],
    x: &Element,
    cap: usize,
    budget: Budget,
) -> Result<usize> {
    let mut explorer = Explorer::new(group, generators, group.unit(), budget)?;
    if explorer.seen.contains(x) {
        return Ok(0);
    }
    for m in 1..=cap {
        if explorer.advance()?.iter().any(|(v, _)| v == x) {
            return Ok(m);
        }
        if explorer.frontier.is_empty() {
            break;
        }
    }
    Err(Error::NotReachedWithinCap { cap })
}

/// Supports of the powers `x^{*i}` and their cumulative unions.
///
/// Index `i` of each vector refers to radius `i`; index 0 holds the empty
/// set by convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTable {
    pub base: Element,
    /// `Set(x^{*i})`.
    pub powers: Vec<BTreeSet<Element>>,
    /// `S*(x, i) = B*(x, i) \ B*(x, i - 1)`.
    pub spheres: Vec<BTreeSet<Element>>,
    /// `|B*(x, i)|`.
    pub ball_sizes: Vec<usize>,
}

impl PowerTable {
    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.spheres.iter().zip(&self.ball_sizes).enumerate().map(|(r, (s, b))| (r, *b, s.len()))
    }

    pub fn ball(&self, r: usize) -> BTreeSet<Element> {
        self.spheres.iter().take(r + 1).flatten().cloned().collect()
    }
}

pub fn power_table<X: MultiValuedGroup + ?Sized>(
    group: &X,
    x: &Element,
    radius: usize,
    budget: Budget,
) -> Result<PowerTable> {
    let mut powers = vec![BTreeSet::new()];
    let mut spheres = vec![BTreeSet::new()];
    let mut ball_sizes = vec![0];
    let mut ball = BTreeSet::new();
    let mut current = BTreeSet::from([x.clone()]);
    for i in 1..=radius {
        if i > 1 {
            let mut next = BTreeSet::new();
            for u in &current {
                for v in group.mul(u, x)?.support() {
                    if next.insert(v.clone()) {
                        budget.check(next.len())?;
                    }
                }
            }
            current = next;
        }
        let fresh: BTreeSet<Element> = current.difference(&ball).cloned().collect();
        ball.extend(fresh.iter().cloned());
        budget.check(ball.len())?;
        powers.push(current.clone());
        spheres.push(fresh);
        ball_sizes.push(ball.len());
    }
    Ok(PowerTable { base: x.clone(), powers, spheres, ball_sizes })
}

/// Support of the left-to-right product `A₁ * A₂ * … * A_k` of sets.
pub fn set_product<X: MultiValuedGroup + ?Sized>(
    group: &X,
    factors: &[BTreeSet<Element>],
    budget: Budget,
) -> Result<BTreeSet<Element>> {
    let Some((first, rest)) = factors.split_first() else {
        return Ok(BTreeSet::from([group.unit()]));
    };
    let mut acc = first.clone();
    for factor in rest {
        let mut next = BTreeSet::new();
        for u in &acc {
            for v in factor {
                for w in group.mul(u, v)?.support() {
                    if next.insert(w.clone()) {
                        budget.check(next.len())?;
                    }
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Lengths entering the comparison constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossLengths {
    /// `l_S(y)` and `l_S(inv y)`.
    pub center: (usize, usize),
    /// `l_{S'}(y')` and `l_{S'}(inv y')`.
    pub other_center: (usize, usize),
    /// Maximum `S`-length of an element of `S'`.
    pub other_in_s: usize,
    /// Maximum `S'`-length of an element of `S`.
    pub s_in_other: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub r: usize,
    /// `|B(y, ⌊r / l⌋)|`.
    pub lower: usize,
    /// `|B'(y', r)|`.
    pub middle: usize,
    /// `|B(y, l r)|`.
    pub upper: usize,
}

impl ComparisonRow {
    pub fn holds(&self) -> bool {
        self.lower <= self.middle && self.middle <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub constant: usize,
    /// `None` when both generating sets and centers coincide.
    pub cross_lengths: Option<CrossLengths>,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ComparisonRow::holds)
    }

    pub fn first_violation(&self) -> Option<&ComparisonRow> {
        self.rows.iter().find(|row| !row.holds())
    }
}

/// Checks `|B(y, ⌊r/l⌋)| ≤ |B'(y', r)| ≤ |B(y, l r)|` for `r ≤ r_max`, with
/// `l` one more than the largest cross-length. Identical data gives `l = 1`.
#[allow(clippy::too_many_arguments)]
pub fn compare_generating_sets<X: MultiValuedGroup + ?Sized>(
    group: &X,
    s: &[Element],
    s_prime: &[Element],
    y: &Element,
    y_prime: &Element,
    r_max: usize,
    cap: usize,
    budget: Budget,
) -> Result<ComparisonReport> {
    let same_set = s.iter().collect::<BTreeSet<_>>() == s_prime.iter().collect::<BTreeSet<_>>();
    let (constant, cross_lengths) = if same_set && y == y_prime {
        (1, None)
    } else {
        let len = |gens: &[Element], x: &Element| length(group, gens, x, cap, budget);
        let max_len = |gens: &[Element], xs: &[Element]| -> Result<usize> {
            xs.iter().map(|x| len(gens, x)).try_fold(0, |m, l| Ok(m.max(l?)))
        };
        let lengths = CrossLengths {
            center: (len(s, y)?, len(s, &group.inv(y)?)?),
            other_center: (len(s_prime, y_prime)?, len(s_prime, &group.inv(y_prime)?)?),
            other_in_s: max_len(s, s_prime)?,
            s_in_other: max_len(s_prime, s)?,
        };
        let worst = [
            lengths.center.0,
            lengths.center.1,
            lengths.other_center.0,
            lengths.other_center.1,
            lengths.other_in_s,
            lengths.s_in_other,
        ]
        .into_iter()
        .max()
        .unwrap_or(0);
        (1 + worst, Some(lengths))
    };
    let outer_radius = constant.checked_mul(r_max).ok_or(Error::Overflow)?;
    let outer = ball(group, s, y, outer_radius, budget)?;
    let inner = ball(group, s_prime, y_prime, r_max, budget)?;
    let rows = (0..=r_max)
        .map(|r| ComparisonRow {
            r,
            lower: outer.ball_sizes[r / constant],
            middle: inner.ball_sizes[r],
            upper: outer.ball_sizes[constant * r],
        })
        .collect();
    Ok(ComparisonReport { constant, cross_lengths, rows })
}
