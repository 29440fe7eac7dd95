use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::MultiValuedGroup;
use crate::{Budget, Element, Error, MultiSet, Result};

/// The 2-valued group on `ℕ ∪ {0}` with `x * y = [x + y, |x - y|]`, unit 0
/// and `inv(x) = x`.
///
/// The mutated variant uses `[x + y, x + y + 1]` and is not an n-valued
/// group; it exists as a negative control for the axiom checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NatGroup {
    mutated: bool,
}

impl NatGroup {
    pub fn new() -> Self {
        NatGroup { mutated: false }
    }

    pub fn mutated() -> Self {
        NatGroup { mutated: true }
    }

    pub fn is_mutated(&self) -> bool {
        self.mutated
    }
}

fn value(x: &Element) -> Result<u64> {
    match x {
        Element::Nat(v) => Ok(*v),
        _ => Err(Error::BackendMismatch),
    }
}

impl MultiValuedGroup for NatGroup {
    fn valence(&self) -> u64 {
        2
    }

    fn unit(&self) -> Element {
        Element::Nat(0)
    }

    fn mul(&self, x: &Element, y: &Element) -> Result<MultiSet<Element>> {
        let (x, y) = (value(x)?, value(y)?);
        let sum = x.checked_add(y).ok_or(Error::Overflow)?;
        let other = if self.mutated { sum.checked_add(1).ok_or(Error::Overflow)? } else { x.abs_diff(y) };
        MultiSet::from_items([Element::Nat(sum), Element::Nat(other)])
    }

    fn inv(&self, x: &Element) -> Result<Element> {
        value(x).map(Element::Nat)
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Nat(_))
    }

    fn carrier(&self, _budget: Budget) -> Result<Option<Vec<Element>>> {
        Ok(None)
    }

    fn render(&self, x: &Element) -> String {
        match x {
            Element::Nat(v) => v.to_string(),
            other => alloc::format!("{other:?}"),
        }
    }

    fn carrier_kind(&self) -> &'static str {
        if self.mutated {
            "builtin-nat-mutated"
        } else {
            "builtin-nat"
        }
    }
}
