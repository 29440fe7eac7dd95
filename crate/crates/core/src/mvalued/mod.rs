//! n-valued groups: a carrier with a product valued in n-multisets, a unit
//! and an inverse.
//!
//! Carrier elements are [`Element`]s. For coset and double coset groups an
//! element is the canonical (key-minimal) representative of its class.

mod axioms;
mod coset;
mod double_coset;
mod nat;

use alloc::string::String;
use alloc::vec::Vec;

pub use axioms::{check_axioms, AssociativityWitness, AxiomReport};
pub use coset::CosetGroup;
pub use double_coset::DoubleCosetGroup;
pub use nat::NatGroup;

use crate::{Budget, Element, MultiSet, Result};

pub trait MultiValuedGroup {
    /// The `n` of the n-valued product.
    fn valence(&self) -> u64;

    fn unit(&self) -> Element;

    /// `x * y`, a multiset of total size [`valence`](Self::valence).
    fn mul(&self, x: &Element, y: &Element) -> Result<MultiSet<Element>>;

    fn inv(&self, x: &Element) -> Result<Element>;

    /// Whether `x` is a canonical carrier element.
    fn contains(&self, x: &Element) -> bool;

    /// The whole carrier in ascending order, or `None` when it is infinite.
    fn carrier(&self, budget: Budget) -> Result<Option<Vec<Element>>>;

    fn render(&self, x: &Element) -> String;

    fn carrier_kind(&self) -> &'static str;
}

/// Any of the constructions in this module.
#[derive(Debug, Clone)]
pub enum MvGroup {
    Nat(NatGroup),
    Coset(CosetGroup),
    DoubleCoset(DoubleCosetGroup),
}

macro_rules! dispatch {
    ($self:ident, $g:ident => $body:expr) => {
        match $self {
            MvGroup::Nat($g) => $body,
            MvGroup::Coset($g) => $body,
            MvGroup::DoubleCoset($g) => $body,
        }
    };
}

impl MultiValuedGroup for MvGroup {
    fn valence(&self) -> u64 {
        dispatch!(self, g => g.valence())
    }

    fn unit(&self) -> Element {
        dispatch!(self, g => g.unit())
    }

    fn mul(&self, x: &Element, y: &Element) -> Result<MultiSet<Element>> {
        dispatch!(self, g => g.mul(x, y))
    }

    fn inv(&self, x: &Element) -> Result<Element> {
        dispatch!(self, g => g.inv(x))
    }

    fn contains(&self, x: &Element) -> bool {
        dispatch!(self, g => g.contains(x))
    }

    fn carrier(&self, budget: Budget) -> Result<Option<Vec<Element>>> {
        dispatch!(self, g => g.carrier(budget))
    }

    fn render(&self, x: &Element) -> String {
        dispatch!(self, g => g.render(x))
    }

    fn carrier_kind(&self) -> &'static str {
        dispatch!(self, g => g.carrier_kind())
    }
}

impl From<NatGroup> for MvGroup {
    fn from(g: NatGroup) -> Self {
        MvGroup::Nat(g)
    }
}

impl From<CosetGroup> for MvGroup {
    fn from(g: CosetGroup) -> Self {
        MvGroup::Coset(g)
    }
}

impl From<DoubleCosetGroup> for MvGroup {
    fn from(g: DoubleCosetGroup) -> Self {
        MvGroup::DoubleCoset(g)
    }
}

#[cfg(test)]
mod tests;
