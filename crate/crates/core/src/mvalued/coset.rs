use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::MultiValuedGroup;
use crate::{AutomorphismGroup, Backend, Budget, Element, Error, MultiSet, Result};

/// The coset group `(G, A)`: orbits of a finite automorphism group `A`
/// acting on `G`, with `n = |A|`.
///
/// The product of classes `x`, `y` with representatives `g`, `h` is the
/// family `[π(g · a(h)) : a ∈ A]`, keeping multiplicities.
#[derive(Debug, Clone)]
pub struct CosetGroup {
    backend: Backend,
    automorphisms: AutomorphismGroup,
}

impl CosetGroup {
    pub fn new(backend: Backend, automorphisms: AutomorphismGroup) -> Result<Self> {
        automorphisms.check_backend(&backend)?;
        Ok(CosetGroup { backend, automorphisms })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn automorphisms(&self) -> &AutomorphismGroup {
        &self.automorphisms
    }

    /// The canonical projection `π`: the least element of the orbit.
    pub fn project(&self, g: &Element) -> Result<Element> {
        if !self.backend.contains(g) {
            return Err(Error::BackendMismatch);
        }
        let orbit = self.automorphisms.orbit(&self.backend, g)?;
        Ok(orbit.into_iter().next().unwrap_or_else(|| g.clone()))
    }

    pub fn orbit(&self, g: &Element) -> Result<BTreeSet<Element>> {
        self.automorphisms.orbit(&self.backend, g)
    }

    /// `[π(g · a(h)) : a ∈ A]` for the given lifts, without projecting them
    /// first.
    pub fn product_of_lifts(&self, g: &Element, h: &Element) -> Result<MultiSet<Element>> {
        let items = (0..self.automorphisms.order())
            .map(|a| {
                let ah = self.automorphisms.apply_index(&self.backend, a, h)?;
                self.project(&self.backend.mul(g, &ah)?)
            })
            .collect::<Result<Vec<_>>>()?;
        MultiSet::from_items(items)
    }
}

impl MultiValuedGroup for CosetGroup {
    fn valence(&self) -> u64 {
        self.automorphisms.order() as u64
    }

    fn unit(&self) -> Element {
        self.backend.identity()
    }

    fn mul(&self, x: &Element, y: &Element) -> Result<MultiSet<Element>> {
        self.product_of_lifts(&self.project(x)?, &self.project(y)?)
    }

    fn inv(&self, x: &Element) -> Result<Element> {
        self.project(&self.backend.inv(x)?)
    }

    fn contains(&self, x: &Element) -> bool {
        self.backend.contains(x) && self.project(x).is_ok_and(|p| &p == x)
    }

    fn carrier(&self, budget: Budget) -> Result<Option<Vec<Element>>> {
        if !self.backend.is_finite() {
            return Ok(None);
        }
        let classes: BTreeSet<Element> =
            self.backend.elements(budget)?.iter().map(|g| self.project(g)).collect::<Result<_>>()?;
        Ok(Some(classes.into_iter().collect()))
    }

    fn render(&self, x: &Element) -> String {
        self.backend.render(x)
    }

    fn carrier_kind(&self) -> &'static str {
        "coset"
    }
}
