use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::MultiValuedGroup;
use crate::multiset::flatten;
use crate::{Element, Error, MultiSet, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityWitness {
    pub x: Element,
    pub y: Element,
    pub z: Element,
    /// `(x * y) * z` as an n²-multiset.
    pub left: MultiSet<Element>,
    /// `x * (y * z)` as an n²-multiset.
    pub right: MultiSet<Element>,
}

/// Outcome of [`check_axioms`]; failures carry the first witness found in
/// sample order together with a failure count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub sample_size: usize,
    pub associativity_failures: usize,
    pub associativity_witness: Option<AssociativityWitness>,
    pub unit_failures: usize,
    pub unit_witness: Option<Element>,
    pub inverse_failures: usize,
    pub inverse_witness: Option<Element>,
}

impl AxiomReport {
    pub fn associativity_holds(&self) -> bool {
        self.associativity_failures == 0
    }

    pub fn unit_holds(&self) -> bool {
        self.unit_failures == 0
    }

    pub fn inverse_holds(&self) -> bool {
        self.inverse_failures == 0
    }

    pub fn passed(&self) -> bool {
        self.associativity_holds() && self.unit_holds() && self.inverse_holds()
    }
}

/// Checks associativity on every triple of `sample` and the unit and inverse
/// axioms on every element. The sample must contain the unit.
pub fn check_axioms<X: MultiValuedGroup + ?Sized>(group: &X, sample: &[Element]) -> Result<AxiomReport> {
    let unit = group.unit();
    if !sample.contains(&unit) {
        return Err(Error::PreconditionViolated("axiom sample must contain the unit".into()));
    }
    let n = group.valence();
    let mut products: BTreeMap<(Element, Element), MultiSet<Element>> = BTreeMap::new();
    let mut mul = |a: &Element, b: &Element| -> Result<MultiSet<Element>> {
        let key = (a.clone(), b.clone());
        if let Some(p) = products.get(&key) {
            return Ok(p.clone());
        }
        let p = group.mul(a, b)?;
        if p.total() != n {
            return Err(Error::PreconditionViolated(alloc::format!(
                "product has {} entries, expected {n}",
                p.total()
            )));
        }
        products.insert(key, p.clone());
        Ok(p)
    };

    let mut report = AxiomReport {
        sample_size: sample.len(),
        associativity_failures: 0,
        associativity_witness: None,
        unit_failures: 0,
        unit_witness: None,
        inverse_failures: 0,
        inverse_witness: None,
    };

    for x in sample {
        let constant = MultiSet::constant(x.clone(), n)?;
        if mul(&unit, x)? != constant || mul(x, &unit)? != constant {
            report.unit_failures += 1;
            report.unit_witness.get_or_insert_with(|| x.clone());
        }
        let xi = group.inv(x)?;
        if !mul(x, &xi)?.contains(&unit) || !mul(&xi, x)?.contains(&unit) {
            report.inverse_failures += 1;
            report.inverse_witness.get_or_insert_with(|| x.clone());
        }
    }

    for x in sample {
        for y in sample {
            let xy = mul(x, y)?;
            for z in sample {
                let yz = mul(y, z)?;
                let left = flatten(xy.iter().map(|(u, m)| Ok((mul(u, z)?, m))).collect::<Result<Vec<_>>>()?)?;
                let right = flatten(yz.iter().map(|(v, m)| Ok((mul(x, v)?, m))).collect::<Result<Vec<_>>>()?)?;
                if left != right {
                    report.associativity_failures += 1;
                    if report.associativity_witness.is_none() {
                        report.associativity_witness =
                            Some(AssociativityWitness { x: x.clone(), y: y.clone(), z: z.clone(), left, right });
                    }
                }
            }
        }
    }
    Ok(report)
}
