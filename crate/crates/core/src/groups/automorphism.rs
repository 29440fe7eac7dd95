//! Verified automorphisms and finite automorphism groups.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Backend, Element, Kind};
use crate::word::Word;
use crate::{AutomorphismDefect, Budget, Error, Result};

/// An automorphism, stored as generator images and inverse images.
///
/// Values only come out of [`Automorphism::verify`] (or composition of
/// verified automorphisms), so holding one means the map was checked to be
/// a bijective homomorphism of the backend it was verified against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    name: String,
    images: Vec<Element>,
    inverse_images: Vec<Element>,
}

impl Automorphism {
    pub fn identity(backend: &Backend) -> Self {
        let gens = backend.generators();
        Automorphism { name: "id".into(), images: gens.clone(), inverse_images: gens }
    }

    /// Checks that `images` define an automorphism of `backend`.
    ///
    /// Every defining relator must map to the identity under both the map
    /// and its inverse, and the two must undo each other on generators.
    /// Inverse images may be omitted for finite backends (found by
    /// enumeration) and free abelian ones (integer matrix inverse); other
    /// backends require them.
    pub fn verify(
        backend: &Backend,
        name: &str,
        images: Vec<Element>,
        inverse_images: Option<Vec<Element>>,
    ) -> Result<Self> {
        let defect = |defect| Error::NotAnAutomorphism { name: name.to_string(), defect };
        let rank = backend.rank();
        if images.len() != rank {
            return Err(defect(AutomorphismDefect::WrongImageCount { expected: rank, got: images.len() }));
        }
        if images.iter().any(|g| !backend.contains(g)) {
            return Err(Error::BackendMismatch);
        }
        let relators = backend.relators()?;
        check_relators(backend, &relators, &images).map_err(defect)?;

        let inverse_images = match inverse_images {
            Some(inv) => {
                if inv.len() != rank {
                    return Err(defect(AutomorphismDefect::WrongImageCount { expected: rank, got: inv.len() }));
                }
                if inv.iter().any(|g| !backend.contains(g)) {
                    return Err(Error::BackendMismatch);
                }
                check_relators(backend, &relators, &inv).map_err(defect)?;
                inv
            }
            None if backend.is_finite() => derive_finite_inverse(backend, &images).map_err(|e| match e {
                Error::PreconditionViolated(_) => defect(AutomorphismDefect::NotBijective),
                other => other,
            })?,
            None if matches!(backend.kind, Kind::FreeAbelian) => {
                derive_matrix_inverse(&images, rank)?.ok_or_else(|| defect(AutomorphismDefect::NotBijective))?
            }
            None => return Err(Error::InverseMissing { name: name.to_string() }),
        };

        for (i, gen) in backend.generators().iter().enumerate() {
            let there = backend.hom_image(&inverse_images[i], &images, backend)?;
            let back = backend.hom_image(&images[i], &inverse_images, backend)?;
            if &there != gen || &back != gen {
                return Err(defect(AutomorphismDefect::InverseMismatch { generator: i }));
            }
        }
        Ok(Automorphism { name: name.to_string(), images, inverse_images })
    }

    /// [`Automorphism::verify`] with images given as words in generator names,
    /// keyed by generator name. Every generator needs an image.
    pub fn from_words(
        backend: &Backend,
        name: &str,
        images: &BTreeMap<String, Word>,
        inverse_images: Option<&BTreeMap<String, Word>>,
    ) -> Result<Self> {
        let resolve = |map: &BTreeMap<String, Word>| -> Result<Vec<Element>> {
            for key in map.keys() {
                backend.generator_index(key)?;
            }
            backend
                .generator_names()
                .iter()
                .map(|g| {
                    let word = map.get(g).ok_or_else(|| {
                        Error::PreconditionViolated(format!("automorphism `{name}` has no image for `{g}`"))
                    })?;
                    backend.eval_word(word)
                })
                .collect()
        };
        let images = resolve(images)?;
        let inverse = inverse_images.map(resolve).transpose()?;
        Self::verify(backend, name, images, inverse)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Element] {
        &self.inverse_images
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            name: format!("{}^-1", self.name),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// The automorphism `g ↦ next(self(g))`.
    pub fn then(&self, next: &Automorphism, backend: &Backend) -> Result<Automorphism> {
        if self.images.len() != backend.rank() || next.images.len() != backend.rank() {
            return Err(Error::UnverifiedAutomorphism);
        }
        let images = self.images.iter().map(|g| backend.apply(next, g)).collect::<Result<_>>()?;
        let inverse_images = next
            .inverse_images
            .iter()
            .map(|g| backend.hom_image(g, &self.inverse_images, backend))
            .collect::<Result<_>>()?;
        let name = if self.name == "id" {
            next.name.clone()
        } else if next.name == "id" {
            self.name.clone()
        } else {
            format!("{}*{}", self.name, next.name)
        };
        Ok(Automorphism { name, images, inverse_images })
    }
}

fn check_relators(
    backend: &Backend,
    relators: &[Vec<(usize, i64)>],
    images: &[Element],
) -> core::result::Result<(), AutomorphismDefect> {
    let identity = backend.identity();
    for (index, rel) in relators.iter().enumerate() {
        match backend.eval_letters(rel, images) {
            Ok(v) if v == identity => {}
            _ => return Err(AutomorphismDefect::RelatorNotKilled { index }),
        }
    }
    Ok(())
}

fn derive_finite_inverse(backend: &Backend, images: &[Element]) -> Result<Vec<Element>> {
    let mut preimage = BTreeMap::new();
    for g in backend.elements(Budget::DEFAULT)? {
        let image = backend.hom_image(&g, images, backend)?;
        if preimage.insert(image, g).is_some() {
            return Err(Error::PreconditionViolated("not injective".into()));
        }
    }
    backend
        .generators()
        .iter()
        .map(|gen| preimage.get(gen).cloned().ok_or_else(|| Error::PreconditionViolated("not surjective".into())))
        .collect()
}

/// Inverse of the integer matrix whose columns are the images, when its
/// determinant is ±1.
fn derive_matrix_inverse(images: &[Element], rank: usize) -> Result<Option<Vec<Element>>> {
    let mut m = vec![vec![0i128; rank]; rank];
    for (j, image) in images.iter().enumerate() {
        let Element::Vector(v) = image else {
            return Err(Error::BackendMismatch);
        };
        for i in 0..rank {
            m[i][j] = i128::from(v[i]);
        }
    }
    let det = determinant(&m)?;
    if det != 1 && det != -1 {
        return Ok(None);
    }
    // inverse = adj(m) / det, with adj(m)[i][j] the (j, i) cofactor
    let cofactor = |r: usize, c: usize| -> Result<i64> {
        let minor: Vec<Vec<i128>> = (0..rank)
            .filter(|&i| i != r)
            .map(|i| (0..rank).filter(|&j| j != c).map(|j| m[i][j]).collect())
            .collect();
        let sign = if (r + c).is_multiple_of(2) { 1 } else { -1 };
        i64::try_from(sign * determinant(&minor)? * det).map_err(|_| Error::Overflow)
    };
    (0..rank)
        .map(|j| (0..rank).map(|i| cofactor(j, i)).collect::<Result<Vec<_>>>().map(Element::Vector))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Fraction-free (Bareiss) elimination.
fn determinant(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or(Error::Overflow)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// A finite group of automorphisms closed under composition.
///
/// Element 0 is the identity. `then_index(a, b)` is the index of
/// "apply `a`, then `b`".
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    elements: Vec<Automorphism>,
    then: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

impl AutomorphismGroup {
    pub const DEFAULT_BOUND: usize = 4096;

    pub fn trivial(backend: &Backend) -> Self {
        AutomorphismGroup { elements: vec![Automorphism::identity(backend)], then: vec![vec![0]], inverse: vec![0] }
    }

    /// The subgroup generated by `seeds`, failing once it would exceed
    /// `bound` elements.
    pub fn close(backend: &Backend, seeds: &[Automorphism], bound: usize) -> Result<Self> {
        for seed in seeds {
            if seed.images.len() != backend.rank() || seed.images.iter().any(|g| !backend.contains(g)) {
                return Err(Error::UnverifiedAutomorphism);
            }
        }
        let identity = Automorphism::identity(backend);
        let mut index: BTreeMap<Vec<Element>, usize> = BTreeMap::from([(identity.images.clone(), 0)]);
        let mut elements = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for seed in seeds {
                let y = elements[x].then(seed, backend)?;
                if !index.contains_key(&y.images) {
                    if elements.len() >= bound {
                        return Err(Error::ClosureBudgetExceeded { bound });
                    }
                    index.insert(y.images.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut then = vec![vec![0u32; n]; n];
        for a in 0..n {
            for b in 0..n {
                let c = elements[a].then(&elements[b], backend)?;
                then[a][b] = *index.get(&c.images).ok_or(Error::ClosureBudgetExceeded { bound })? as u32;
            }
        }
        let inverse = (0..n)
            .map(|a| then[a].iter().position(|&c| c == 0).map(|b| b as u32))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::ClosureBudgetExceeded { bound })?;
        Ok(AutomorphismGroup { elements, then, inverse })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn then_index(&self, a: usize, b: usize) -> usize {
        self.then[a][b] as usize
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn apply_index(&self, backend: &Backend, a: usize, g: &Element) -> Result<Element> {
        if a == 0 {
            return Ok(g.clone());
        }
        backend.apply(&self.elements[a], g)
    }

    /// `{ a(g) : a ∈ A }`, sorted.
    pub fn orbit(&self, backend: &Backend, g: &Element) -> Result<BTreeSet<Element>> {
        (0..self.order()).map(|a| self.apply_index(backend, a, g)).collect()
    }

    pub(crate) fn check_backend(&self, backend: &Backend) -> Result<()> {
        if self.elements.iter().all(|a| a.images.len() == backend.rank()) {
            Ok(())
        } else {
            Err(Error::UnverifiedAutomorphism)
        }
    }
}
