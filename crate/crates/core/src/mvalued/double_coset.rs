use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::MultiValuedGroup;
use crate::{Backend, Budget, Element, Error, MultiSet, Result};

/// The double coset group `H \ G / H` of a finite group `G`, with
/// `n = |H|` and `x * y = [H g₁ h g₂ H : h ∈ H]`.
#[derive(Debug, Clone)]
pub struct DoubleCosetGroup {
    backend: Backend,
    subgroup: Vec<Element>,
    class: BTreeMap<Element, Element>,
}

impl DoubleCosetGroup {
    /// `H` is the subgroup generated by `subgroup_generators`.
    pub fn new(backend: Backend, subgroup_generators: &[Element], budget: Budget) -> Result<Self> {
        if !backend.is_finite() {
            return Err(Error::InfiniteBackendUnsupported);
        }
        if subgroup_generators.iter().any(|g| !backend.contains(g)) {
            return Err(Error::BackendMismatch);
        }
        let mut subgroup = BTreeSet::from([backend.identity()]);
        let mut frontier = Vec::from([backend.identity()]);
        while let Some(x) = frontier.pop() {
            for s in subgroup_generators {
                let y = backend.mul(&x, s)?;
                if subgroup.insert(y.clone()) {
                    budget.check(subgroup.len())?;
                    frontier.push(y);
                }
            }
        }
        let subgroup: Vec<Element> = subgroup.into_iter().collect();
        let mut class = BTreeMap::new();
        for g in backend.elements(budget)? {
            if class.contains_key(&g) {
                continue;
            }
            let mut members = BTreeSet::new();
            for h in &subgroup {
                let hg = backend.mul(h, &g)?;
                for k in &subgroup {
                    members.insert(backend.mul(&hg, k)?);
                }
            }
            let rep = members.first().cloned().unwrap_or_else(|| g.clone());
            for m in members {
                class.insert(m, rep.clone());
            }
        }
        Ok(DoubleCosetGroup { backend, subgroup, class })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn subgroup(&self) -> &[Element] {
        &self.subgroup
    }

    /// The least element of `H g H`.
    pub fn project(&self, g: &Element) -> Result<Element> {
        self.class.get(g).cloned().ok_or(Error::BackendMismatch)
    }
}

impl MultiValuedGroup for DoubleCosetGroup {
    fn valence(&self) -> u64 {
        self.subgroup.len() as u64
    }

    fn unit(&self) -> Element {
        self.backend.identity()
    }

    fn mul(&self, x: &Element, y: &Element) -> Result<MultiSet<Element>> {
        let (x, y) = (self.project(x)?, self.project(y)?);
        let items = self
            .subgroup
            .iter()
            .map(|h| self.project(&self.backend.mul(&self.backend.mul(&x, h)?, &y)?))
            .collect::<Result<Vec<_>>>()?;
        MultiSet::from_items(items)
    }

    fn inv(&self, x: &Element) -> Result<Element> {
        self.project(&self.backend.inv(&self.project(x)?)?)
    }

    fn contains(&self, x: &Element) -> bool {
        self.class.get(x) == Some(x)
    }

    fn carrier(&self, _budget: Budget) -> Result<Option<Vec<Element>>> {
        let reps: BTreeSet<&Element> = self.class.values().collect();
        Ok(Some(reps.into_iter().cloned().collect()))
    }

    fn render(&self, x: &Element) -> String {
        self.backend.render(x)
    }

    fn carrier_kind(&self) -> &'static str {
        "double-coset"
    }
}
