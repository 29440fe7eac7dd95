use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{Backend, Element};
use crate::{Budget, Error, Result};

/// Spheres `S⁺(e, i)` and ball sizes `|B⁺(e, i)|` of the submonoid generated
/// by a finite set, for `i = 0..=radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidBallTable {
    pub spheres: Vec<Vec<Element>>,
    pub ball_sizes: Vec<usize>,
    /// For each element of a nonzero sphere: a predecessor `u` one sphere
    /// below and the generator index `s` with `u * gens[s]` equal to it.
    pub witnesses: BTreeMap<Element, (Element, usize)>,
}

impl MonoidBallTable {
    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn sphere_size(&self, r: usize) -> usize {
        self.spheres[r].len()
    }
}

/// Breadth-first search in the submonoid of `backend` generated by `gens`.
pub fn monoid_balls(backend: &Backend, gens: &[Element], radius: usize, budget: Budget) -> Result<MonoidBallTable> {
    if gens.is_empty() {
        return Err(Error::PreconditionViolated("monoid generators must be nonempty".into()));
    }
    let identity = backend.identity();
    let mut ball: BTreeSet<Element> = BTreeSet::from([identity.clone()]);
    let mut spheres = vec![vec![identity]];
    let mut ball_sizes = vec![1];
    let mut witnesses = BTreeMap::new();
    for _ in 0..radius {
        let mut next = BTreeSet::new();
        for u in spheres.last().into_iter().flatten() {
            for (s, g) in gens.iter().enumerate() {
                let v = backend.mul(u, g)?;
                if !ball.contains(&v) && !next.contains(&v) {
                    budget.check(ball.len() + next.len() + 1)?;
                    witnesses.insert(v.clone(), (u.clone(), s));
                    next.insert(v);
                }
            }
        }
        ball.extend(next.iter().cloned());
        ball_sizes.push(ball.len());
        spheres.push(next.into_iter().collect());
    }
    Ok(MonoidBallTable { spheres, ball_sizes, witnesses })
}
